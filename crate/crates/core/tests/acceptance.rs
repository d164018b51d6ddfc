//! One pass/fail line per acceptance criterion; exits nonzero if any fails.

use std::f64::consts::FRAC_PI_2;
use std::time::{Duration, Instant};

use biq_core::catalog::{catalog, lookup, CURVATURE_NAMES};
use biq_core::cohomology;
use biq_core::curvature::{
    self, defect, horizontal_space, LieAlgebraPair, MetricConfig, OptimizerConfig,
};
use biq_core::freeness::{self, certify, verify_witness, verify_witness_sp1, FreenessStatus};
use biq_core::hlinalg::{bracket, rotation_point};
use biq_core::intlin::{fmt_ratvec, rat};
use biq_core::report::ReportBundle;
use biq_core::reps::{
    enumerate_sp1, enumerate_sp1xsp1, phi3_algebra, torus_image, Irrep, RepDecomposition,
};
use biq_core::{BiquotientSpec, HMatrix, Quaternion, TorusImage};
use num_integer::Integer;
use rand::{Rng, SeedableRng};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(t: Instant, limit: Duration) -> (bool, String) {
    let e = t.elapsed();
    (e < limit, format!("{:.2}s", e.as_secs_f64()))
}

type Rows = [[i64; 2]; 3];

fn sp1(parts: &[(u32, u32)]) -> RepDecomposition {
    RepDecomposition::new(parts.iter().map(|&(i, m)| (Irrep::sp1(i), m)).collect())
}

fn sp1xsp1(parts: &[(u32, u32, u32)]) -> RepDecomposition {
    RepDecomposition::new(
        parts
            .iter()
            .map(|&(i, j, m)| (Irrep::sp1xsp1(i, j), m))
            .collect(),
    )
}

/// Homomorphisms `Sp(1) -> Sp(3)` with their printed torus exponents.
fn printed_sp1() -> Vec<(RepDecomposition, [i64; 3])> {
    vec![
        (sp1(&[(0, 6)]), [0, 0, 0]),
        (sp1(&[(0, 4), (1, 1)]), [1, 0, 0]),
        (sp1(&[(0, 2), (1, 2)]), [1, 1, 0]),
        (sp1(&[(1, 3)]), [1, 1, 1]),
        (sp1(&[(0, 2), (3, 1)]), [0, 1, 3]),
        (sp1(&[(1, 1), (3, 1)]), [1, 1, 3]),
        (sp1(&[(5, 1)]), [1, 3, 5]),
        (sp1(&[(2, 2)]), [2, -2, 0]),
    ]
}

/// Homomorphisms `Sp(1)^2 -> Sp(3)` with their printed torus rows.
fn printed_sp1xsp1() -> Vec<(RepDecomposition, Rows)> {
    const O: [i64; 2] = [0, 0];
    vec![
        (sp1xsp1(&[(0, 0, 6)]), [O, O, O]),
        (sp1xsp1(&[(0, 0, 4), (1, 0, 1)]), [[1, 0], O, O]),
        (sp1xsp1(&[(0, 0, 4), (0, 1, 1)]), [[0, 1], O, O]),
        (sp1xsp1(&[(0, 0, 2), (1, 0, 2)]), [[1, 0], [1, 0], O]),
        (sp1xsp1(&[(0, 0, 2), (0, 1, 2)]), [[0, 1], [0, 1], O]),
        (
            sp1xsp1(&[(0, 0, 2), (0, 1, 1), (1, 0, 1)]),
            [[1, 0], [0, 1], O],
        ),
        (sp1xsp1(&[(1, 0, 1), (3, 0, 1)]), [[1, 0], [1, 0], [3, 0]]),
        (sp1xsp1(&[(0, 1, 1), (0, 3, 1)]), [[0, 1], [0, 1], [0, 3]]),
        (sp1xsp1(&[(1, 0, 1), (0, 3, 1)]), [[1, 0], [0, 1], [0, 3]]),
        (sp1xsp1(&[(0, 1, 1), (3, 0, 1)]), [[0, 1], [1, 0], [3, 0]]),
        (sp1xsp1(&[(0, 0, 2), (3, 0, 1)]), [[1, 0], [3, 0], O]),
        (sp1xsp1(&[(0, 0, 2), (0, 3, 1)]), [[0, 1], [0, 3], O]),
        (sp1xsp1(&[(2, 0, 2)]), [[2, 0], [-2, 0], O]),
        (sp1xsp1(&[(0, 2, 2)]), [[0, 2], [0, -2], O]),
        (sp1xsp1(&[(1, 0, 3)]), [[1, 0], [1, 0], [1, 0]]),
        (sp1xsp1(&[(0, 1, 3)]), [[0, 1], [0, 1], [0, 1]]),
        (sp1xsp1(&[(1, 0, 2), (0, 1, 1)]), [[1, 0], [1, 0], [0, 1]]),
        (sp1xsp1(&[(0, 1, 2), (1, 0, 1)]), [[0, 1], [0, 1], [1, 0]]),
        (sp1xsp1(&[(5, 0, 1)]), [[1, 0], [3, 0], [5, 0]]),
        (sp1xsp1(&[(0, 5, 1)]), [[0, 1], [0, 3], [0, 5]]),
        (sp1xsp1(&[(1, 2, 1)]), [[1, 2], [1, -2], [1, 0]]),
        (sp1xsp1(&[(2, 1, 1)]), [[2, 1], [-2, 1], [0, 1]]),
    ]
}

fn criterion1() -> Outcome {
    let t = Instant::now();
    let (a, b) = (enumerate_sp1(3), enumerate_sp1xsp1(3));
    let mut mismatches = Vec::new();
    for (rep, exps) in printed_sp1() {
        let ok =
            a.contains(&rep) && torus_image(&rep).ok() == Some(TorusImage::sp1(exps).normalized());
        if !ok {
            mismatches.push(rep.to_string());
        }
    }
    for (rep, rows) in printed_sp1xsp1() {
        let ok =
            b.contains(&rep) && torus_image(&rep).ok() == Some(TorusImage::new(rows).normalized());
        if !ok {
            mismatches.push(rep.to_string());
        }
    }
    let (fast, time) = within(t, Duration::from_secs(1));
    outcome(
        a.len() == 8 && b.len() == 22 && mismatches.is_empty() && fast,
        format!(
            "{} + {} homomorphisms, torus mismatches {:?}, {time}",
            a.len(),
            b.len(),
            mismatches
        ),
    )
}

fn criterion2() -> Outcome {
    let t = Instant::now();
    let printed: Vec<(RepDecomposition, RepDecomposition)> = [
        (&[(0, 4), (1, 1)][..], &[(0, 2), (1, 2)][..]),
        (&[(0, 4), (1, 1)], &[(1, 3)]),
        (&[(0, 4), (1, 1)], &[(1, 1), (3, 1)]),
        (&[(0, 4), (1, 1)], &[(5, 1)]),
        (&[(0, 4), (1, 1)], &[(2, 2)]),
        (&[(1, 3)], &[(0, 2), (1, 2)]),
        (&[(1, 3)], &[(0, 2), (3, 1)]),
        (&[(1, 3)], &[(2, 2)]),
        (&[(1, 1), (3, 1)], &[(0, 2), (3, 1)]),
        (&[(2, 2)], &[(0, 2), (3, 1)]),
    ]
    .iter()
    .map(|(l, r)| (sp1(l), sp1(r)))
    .collect();
    let key = |l: &str, r: &str| {
        let mut v = [l.to_string(), r.to_string()];
        v.sort();
        v
    };
    let mut expected: Vec<_> = printed
        .iter()
        .map(|(l, r)| key(&l.to_string(), &r.to_string()))
        .collect();
    let mut got: Vec<_> = freeness::certify_sp1_pairs()
        .unwrap()
        .iter()
        .map(|p| key(&p.left, &p.right))
        .collect();
    expected.sort();
    got.sort();

    let (le, re) = ([0, 1, 3], [0, 0, 1]);
    let v = freeness::certify_sp1("(2φ₀ + φ₃, 4φ₀ + φ₁)", le, re).unwrap();
    let witness_ok = v.status == FreenessStatus::NotFree
        && !v.witnesses.is_empty()
        && v.witnesses.iter().all(|w| {
            let x = &w.x[0];
            (x * rat(3, 1)).is_integer() && !x.is_integer() && verify_witness_sp1(le, re, &w.x)
        });
    let (fast, time) = within(t, Duration::from_secs(1));
    let shown = v
        .witnesses
        .first()
        .map(|w| fmt_ratvec(&w.x))
        .unwrap_or_default();
    outcome(
        got == expected && witness_ok && fast,
        format!(
            "{} pairs (expected 10), third-root witness {shown}, {time}",
            got.len()
        ),
    )
}

fn criterion3() -> Outcome {
    let t = Instant::now();
    let c = freeness::classify_all().unwrap();
    let matched: Vec<&str> = catalog()
        .iter()
        .filter(|e| c.classes.iter().any(|k| k.spec.equivalent(&e.spec)))
        .map(|e| e.name.as_str())
        .collect();
    let missing: Vec<String> = catalog()
        .iter()
        .filter(|e| !matched.contains(&e.name.as_str()))
        .map(|e| {
            let v = certify(&e.spec).unwrap();
            let w = v
                .witnesses
                .first()
                .map(|w| fmt_ratvec(&w.x))
                .unwrap_or_default();
            format!("{} {} at {w}", e.name, v.status)
        })
        .collect();

    // The three pairs argued to fail, with the points given for them.
    let spec = |l: Rows, r: Rows| BiquotientSpec::new("", TorusImage::new(l), TorusImage::new(r));
    let counterexamples = [
        (
            spec([[1, 0], [0, 0], [0, 0]], [[1, 2], [1, -2], [1, 0]]),
            [rat(1, 2), rat(1, 4)],
        ),
        (
            spec([[1, 0], [3, 0], [0, 0]], [[0, 2], [0, -2], [0, 0]]),
            [rat(1, 4), rat(1, 8)],
        ),
        (
            spec([[1, 0], [3, 0], [0, 0]], [[1, 2], [1, -2], [1, 0]]),
            [rat(1, 5), rat(1, 10)],
        ),
    ];
    let mut rejected_ok = 0;
    for (s, point) in &counterexamples {
        let v = certify(s).unwrap();
        let listed = c.rejected.iter().any(|r| r.spec.equivalent(s));
        let own = v.witnesses.iter().all(|w| verify_witness(s, &w.x));
        if v.status == FreenessStatus::NotFree
            && listed
            && own
            && !v.witnesses.is_empty()
            && verify_witness(s, point)
        {
            rejected_ok += 1;
        }
    }
    let (fast, time) = within(t, Duration::from_secs(10));
    let counts_ok =
        c.classes.len() == 19 && c.homogeneous_count() == 4 && c.inhomogeneous_count() == 15;
    outcome(
        counts_ok && missing.is_empty() && rejected_ok == 3 && fast,
        format!(
            "{} classes ({} homogeneous, {} inhomogeneous), expected 19 (4 + 15); \
             catalog entries found {}/19, not found: {:?}; counterexamples rejected {}/3; {time}",
            c.classes.len(),
            c.homogeneous_count(),
            c.inhomogeneous_count(),
            matched.len(),
            missing,
            rejected_ok
        ),
    )
}

fn criterion4() -> Outcome {
    let t = Instant::now();
    let (checked, conflicts) = freeness::oracle_conflicts(720).unwrap();
    let (fast, time) = within(t, Duration::from_secs(120));
    let names: Vec<&str> = conflicts.iter().map(|c| c.name.as_str()).collect();
    outcome(
        conflicts.is_empty() && fast,
        format!("{checked} candidates sampled on the 720 grid, conflicts {names:?}, {time}"),
    )
}

fn criterion5() -> Outcome {
    let t = Instant::now();
    let (mut s_ok, mut s_total, mut h_ok, mut snf_ok, mut gcd_ok, mut n) = (0, 0, 0, 0, 0, 0);
    let mut notes = Vec::new();
    for e in catalog() {
        let Some(h8) = e.published.h8_order else {
            continue;
        };
        n += 1;
        let r = cohomology::report(&e.spec).unwrap();
        let check = biq_core::report::table5_check(e, &r).unwrap();
        s_total += 2;
        s_ok += usize::from(check.sigma1_matches) + usize::from(check.sigma2_matches);
        if !check.sigma1_matches {
            notes.push(format!("{} σ₁", e.name));
        }
        if !check.sigma2_matches {
            notes.push(format!("{} σ₂", e.name));
        }
        if r.h8_order == h8 {
            h_ok += 1;
        } else {
            notes.push(format!("{} |H⁸| {} vs printed {h8}", e.name, r.h8_order));
        }
        if r.snf_diagonal == vec![1, 1, r.h8_order as i64] {
            snf_ok += 1;
        }
        if r.alpha.gcd(&r.beta) == 1 {
            gcd_ok += 1;
        }
    }
    let (fast, time) = within(t, Duration::from_secs(1));
    outcome(
        s_ok == 32
            && s_total == 32
            && h_ok == 16
            && snf_ok == 16
            && gcd_ok == 16
            && n == 16
            && fast,
        format!(
            "differentials {s_ok}/32, |H⁸| {h_ok}/16, SNF diag(1,1,|H⁸|) {snf_ok}/16, \
             gcd(α,β)=1 {gcd_ok}/16; disagreements {notes:?}; {time}"
        ),
    )
}

fn criterion6() -> Outcome {
    let t = Instant::now();
    let expected_abs = [
        ("M2", 0),
        ("N1", 4),
        ("N4", 12),
        ("N5", 8),
        ("N6", 20),
        ("M1", 4),
        ("N2", 8),
        ("N3", 28),
    ];
    let expected_signed: [(&str, i64); 3] = [("M4", -5), ("O1", 37), ("O2", 7)];
    let p1 = |n: &str| cohomology::p1(&lookup(n).unwrap().spec).unwrap();
    let mut bad = Vec::new();
    for (n, v) in expected_abs {
        if p1(n).abs() != v {
            bad.push(format!("{n}: {}", p1(n)));
        }
    }
    for (n, v) in expected_signed {
        if p1(n).abs() != v.abs() {
            bad.push(format!("{n}: {}", p1(n)));
        }
    }
    let (fast, time) = within(t, Duration::from_secs(1));
    let signs: Vec<String> = expected_signed
        .iter()
        .map(|(n, _)| format!("{n}={}", p1(n)))
        .collect();
    outcome(
        bad.is_empty() && fast,
        format!(
            "11 values checked, mismatches {bad:?}, {}; {time}",
            signs.join(" ")
        ),
    )
}

fn criterion7() -> Outcome {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let mut imag = || {
        Quaternion::imag(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        )
    };
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (a, b) = (imag(), imag());
        let lhs = bracket(&phi3_algebra(a), &phi3_algebra(b));
        worst = worst.max((lhs - phi3_algebra(a * b - b * a)).frobenius());
    }
    outcome(
        worst < 1e-12,
        format!("max error over 100 pairs {worst:.2e}"),
    )
}

fn criterion8() -> Outcome {
    let opt = OptimizerConfig {
        restarts: 64,
        seed: 42,
        ..OptimizerConfig::default()
    };
    let metric = MetricConfig::default();
    let mut ok = true;
    let mut parts = Vec::new();
    let mut slowest = Duration::ZERO;
    let mut run = |name: &str, theta: f64| {
        let t = Instant::now();
        let r = curvature::min_defect(&lookup(name).unwrap().spec, theta, &opt, &metric).unwrap();
        slowest = slowest.max(t.elapsed());
        r
    };
    for n in CURVATURE_NAMES {
        let r = run(n, 0.5);
        ok &= r.min_defect >= 1e-6 && r.horizontal_dim == 15;
        parts.push(format!("{n} {:.2e}", r.min_defect));
    }
    let zero = run("N4", FRAC_PI_2);
    ok &= zero.min_defect <= 1e-10 && zero.horizontal_dim == 15;
    parts.push(format!("N4@π/2 {:.1e}", zero.min_defect));

    let (x, y) = curvature::n4_zero_pair();
    let constructed = defect(&rotation_point(FRAC_PI_2), &x, &y).value;
    ok &= constructed < 1e-24;

    // Entry constraints on 50 random horizontal vectors per spec.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let mut worst = 0.0f64;
    for n in ["N1", "N2", "N3", "N4", "N5", "N6"] {
        let pair = LieAlgebraPair::from_spec(&lookup(n).unwrap().spec).unwrap();
        let trace_free = !matches!(n, "N4" | "N5");
        for _ in 0..50 {
            let p = rotation_point(rng.random_range(-3.0..3.0));
            let h = horizontal_space(&pair, &p).unwrap();
            ok &= h.len() == 15;
            let x = h.iter().fold(HMatrix::zero(), |acc, b| {
                acc + b.scale(rng.random_range(-1.0..1.0))
            });
            let rel = if trace_free {
                x.get(0, 0) + x.get(1, 1)
            } else {
                x.get(0, 0)
            };
            worst = worst.max(x.get(2, 2).max_abs()).max(rel.max_abs());
        }
    }
    ok &= worst < 1e-12 && slowest < Duration::from_secs(60);
    outcome(
        ok,
        format!(
            "min defects [{}]; constructed pair {constructed:.1e}; entry constraints max {worst:.1e}; \
             slowest spec {:.2}s",
            parts.join(", "),
            slowest.as_secs_f64()
        ),
    )
}

fn criterion9() -> Outcome {
    let a = ReportBundle::build(42, 64).unwrap();
    let b = ReportBundle::build(42, 64).unwrap();
    let (ja, jb) = (a.to_json(), b.to_json());
    let same_md = a.markdown_files().unwrap() == b.markdown_files().unwrap();
    outcome(
        ja == jb && same_md,
        format!(
            "bundle of {} bytes, identical: {}",
            ja.len(),
            ja == jb && same_md
        ),
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("enumeration", criterion1),
        ("Sp(1) pairs", criterion2),
        ("classification", criterion3),
        ("sampling oracle", criterion4),
        ("cohomology tables", criterion5),
        ("Pontryagin class", criterion6),
        ("phi_3 homomorphism", criterion7),
        ("curvature", criterion8),
        ("determinism", criterion9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {} [{}] {}: {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {} failed",
        criteria.len() - failed,
        failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

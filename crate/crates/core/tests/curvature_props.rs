use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

use biq_core::catalog::{lookup, CURVATURE_NAMES};
use biq_core::curvature::{
    coordinate_gradient, defect, horizontal_space, n4_zero_pair, GradientMode, LieAlgebraPair,
};
use biq_core::hlinalg::{ad_p, bracket, g0, rotation_point};
use biq_core::{HMatrix, Quaternion};
use proptest::prelude::*;

fn pair(name: &str) -> LieAlgebraPair {
    LieAlgebraPair::from_spec(&lookup(name).unwrap().spec).unwrap()
}

fn combine(basis: &[HMatrix], c: &[f64]) -> HMatrix {
    c.iter()
        .zip(basis)
        .fold(HMatrix::zero(), |acc, (s, h)| acc + h.scale(*s))
}

fn name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(CURVATURE_NAMES.to_vec())
}

fn coeffs() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, 15)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn left_algebra_is_fixed_by_ad_p(n in name(), theta in -3.2..3.2f64) {
        let p = rotation_point(theta);
        for (u1, _) in &pair(n).basis {
            prop_assert!((ad_p(&p, u1) - *u1).max_abs() < 1e-12);
        }
    }

    #[test]
    fn horizontal_space_has_dimension_15(n in name(), theta in -3.2..3.2f64) {
        let p = rotation_point(theta);
        let pr = pair(n);
        let h = horizontal_space(&pr, &p).unwrap();
        prop_assert_eq!(h.len(), 15);
        for x in &h {
            for c in pr.constraints(&p) {
                prop_assert!(g0(x, &c).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn defect_depends_only_on_the_span(
        n in name(),
        theta in -3.2..3.2f64,
        a in coeffs(),
        b in coeffs(),
        m in prop::array::uniform4(-2.0..2.0f64),
    ) {
        let det = m[0] * m[3] - m[1] * m[2];
        prop_assume!(det.abs() > 0.1);
        let p = rotation_point(theta);
        let h = horizontal_space(&pair(n), &p).unwrap();
        let (x, y) = (combine(&h, &a), combine(&h, &b));
        let d = defect(&p, &x, &y);
        prop_assume!(d.is_plane());
        let e = defect(&p, &(x.scale(m[0]) + y.scale(m[1])), &(x.scale(m[2]) + y.scale(m[3])));
        prop_assert!((d.value - e.value).abs() <= 1e-9 * (1.0 + d.value), "{} vs {}", d.value, e.value);
    }

    #[test]
    fn gradient_is_second_order_accurate(n in name(), theta in 0.1..1.4f64, a in coeffs(), b in coeffs()) {
        let p = rotation_point(theta);
        let h = horizontal_space(&pair(n), &p).unwrap();
        let exact = coordinate_gradient(&p, &h, &a, &b, GradientMode::Analytic, 0.0);
        let err = |step: f64| {
            let num = coordinate_gradient(&p, &h, &a, &b, GradientMode::Numerical, step);
            exact.0.iter().zip(&num.0).chain(exact.1.iter().zip(&num.1))
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max)
        };
        let scale = exact.0.iter().chain(&exact.1).map(|x| x.abs()).fold(1.0, f64::max);
        let (e1, e2) = (err(1e-2), err(5e-3));
        // Halving the step cuts the central-difference error by four.
        prop_assert!(e1 < 1e-2 * scale, "e1 {e1}");
        prop_assert!(e2 <= e1 / 3.0 + 1e-9 * scale, "e1 {e1} e2 {e2}");
    }
}

/// Entry constraints on horizontal vectors: `X_33 = 0` always, with
/// `X_11 = -X_22` or `X_11 = 0` depending on the spec.
#[test]
fn horizontal_entry_constraints() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for n in CURVATURE_NAMES {
        let trace_free = ["N1", "N2", "N3", "N6"].contains(&n);
        let zero_corner = ["N4", "N5"].contains(&n);
        if !(trace_free || zero_corner) {
            continue;
        }
        for _ in 0..50 {
            let p = rotation_point(rng.random_range(-3.0..3.0));
            let h = horizontal_space(&pair(n), &p).unwrap();
            let c: Vec<f64> = (0..15).map(|_| rng.random_range(-1.0..1.0)).collect();
            let x = combine(&h, &c);
            assert!(x.get(2, 2).max_abs() < 1e-12, "{n}: X33 = {}", x.get(2, 2));
            let rel = if trace_free {
                x.get(0, 0) + x.get(1, 1)
            } else {
                x.get(0, 0)
            };
            assert!(rel.max_abs() < 1e-12, "{n}: {rel}");
        }
    }
}

#[test]
fn constructed_flat_plane_for_n4() {
    let p = rotation_point(FRAC_PI_2);
    let (x, y) = n4_zero_pair();
    // The entries named in the argument: x4 = X_22, x5 = X_23, y2 = Y_12, y3 = Y_13.
    let (x4, x5, y2, y3) = (x.get(1, 1), x.get(1, 2), y.get(0, 1), y.get(0, 2));
    assert_eq!((y2, x5), (Quaternion::ZERO, Quaternion::ZERO));
    assert!((y2 * x5).max_abs() == 0.0);
    assert!((y2 * x4 - y3 * x5.conj()).max_abs() == 0.0);
    assert!(bracket(&x, &y).max_abs() < 1e-15);
    let pr = pair("N4");
    for c in pr.constraints(&p) {
        assert!(g0(&x, &c).abs() < 1e-15 && g0(&y, &c).abs() < 1e-15);
    }
    assert!(defect(&p, &x, &y).value < 1e-24);
}

#[test]
fn random_planes_are_curved_for_n4_at_pi_over_6() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let p = rotation_point(FRAC_PI_6);
    let h = horizontal_space(&pair("N4"), &p).unwrap();
    for _ in 0..20 {
        let a: Vec<f64> = (0..15).map(|_| rng.random_range(-1.0..1.0)).collect();
        let b: Vec<f64> = (0..15).map(|_| rng.random_range(-1.0..1.0)).collect();
        assert!(defect(&p, &combine(&h, &a), &combine(&h, &b)).value > 0.0);
    }
}

#[test]
fn n7_orthogonality_relations() {
    // The right factor of N7 meets only the lower 2x2 block, with u_1 = 0, so
    // every horizontal X is g0-orthogonal to phi_3(i), phi_3(j), phi_3(k)
    // there. With x4 = X_22, x5 = X_23, x6 = X_33 that reads
    // (x6)_i = 3 (x4)_i, (x6)_j = sqrt3 (x5)_j, (x6)_k = -sqrt3 (x5)_k.
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let s3 = 3f64.sqrt();
    for _ in 0..20 {
        let p = rotation_point(rng.random_range(-3.0..3.0));
        let h = horizontal_space(&pair("N7"), &p).unwrap();
        let c: Vec<f64> = (0..15).map(|_| rng.random_range(-1.0..1.0)).collect();
        let x = combine(&h, &c);
        let (x4, x5, x6) = (x.get(1, 1), x.get(1, 2), x.get(2, 2));
        assert!((x6.i - 3.0 * x4.i).abs() < 1e-12);
        assert!((x6.j - s3 * x5.j).abs() < 1e-12);
        assert!((x6.k + s3 * x5.k).abs() < 1e-12);
    }
}

//! Exact certification of (effectively) free biquotient actions on the torus.
//!
//! Two diagonal elements of `Sp(3)` are conjugate iff their entries agree up
//! to reordering and complex conjugation. For torus data this means: for some
//! permutation `sigma` and signs `eps`, every row `L_i - eps_i R_sigma(i)`
//! evaluates to an integer at `x`. Each of the 48 patterns cuts out a closed
//! subgroup `H` of the torus, and the action is effectively free iff each `H`
//! lies in the centrality set `C` where `f_1(x) = f_2(x) = +-I`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::catalog;
use crate::error::Result;
use crate::intlin::{frac, parse_rational, reduce_mod_one, solve_torus, IntMatrix, RatVec};
use crate::reps::{
    enumerate_sp1, enumerate_sp1xsp1, torus_image, BiquotientSpec, RepDecomposition, Restriction,
};

/// A way for two diagonal matrices to be conjugate: entry `i` of the left
/// matches entry `sigma[i]` of the right, conjugated when `eps[i] = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConjugacyPattern {
    pub sigma: [usize; 3],
    pub eps: [i64; 3],
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

impl ConjugacyPattern {
    /// All 48 patterns in a fixed order.
    pub fn all() -> Vec<ConjugacyPattern> {
        let mut out = Vec::with_capacity(48);
        for sigma in PERMUTATIONS {
            for mask in 0..8 {
                let eps = [0, 1, 2].map(|b| if mask >> b & 1 == 1 { -1 } else { 1 });
                out.push(ConjugacyPattern { sigma, eps });
            }
        }
        out
    }

    /// Rows `L_i - eps_i R_sigma(i)` of the pattern matrix.
    pub fn matrix(&self, left: &[Vec<i64>], right: &[Vec<i64>]) -> IntMatrix {
        let rows: Vec<Vec<i64>> = (0..3)
            .map(|i| {
                left[i]
                    .iter()
                    .zip(&right[self.sigma[i]])
                    .map(|(l, r)| l - self.eps[i] * r)
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(&rows)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FreenessStatus {
    Free,
    EffectivelyFree,
    NotFree,
}

impl FreenessStatus {
    pub fn is_effectively_free(self) -> bool {
        self != FreenessStatus::NotFree
    }
}

impl fmt::Display for FreenessStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FreenessStatus::Free => "free",
            FreenessStatus::EffectivelyFree => "effectively free",
            FreenessStatus::NotFree => "not free",
        })
    }
}

/// A torus point whose two images are conjugate but not equal and central.
/// Evaluations are the diagonal angles in turns, `e^{2 pi i theta}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "rat_strings")]
    pub x: RatVec,
    #[serde(with = "rat_strings")]
    pub left_eval: RatVec,
    #[serde(with = "rat_strings")]
    pub right_eval: RatVec,
}

mod rat_strings {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &RatVec, s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<RatVec, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| {
                parse_rational(s)
                    .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`")))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessVerdict {
    pub name: String,
    pub status: FreenessStatus,
    pub witnesses: Vec<Witness>,
}

/// Exponent data in a width-agnostic form: one row per diagonal entry, one
/// column per torus coordinate.
#[derive(Clone, Debug)]
struct Exponents {
    left: Vec<Vec<i64>>,
    right: Vec<Vec<i64>>,
}

impl Exponents {
    fn of_spec(spec: &BiquotientSpec) -> Self {
        Self {
            left: spec.left.rows.iter().map(|r| r.to_vec()).collect(),
            right: spec.right.rows.iter().map(|r| r.to_vec()).collect(),
        }
    }

    fn of_sp1(left: [i64; 3], right: [i64; 3]) -> Self {
        Self {
            left: left.iter().map(|&a| vec![a]).collect(),
            right: right.iter().map(|&a| vec![a]).collect(),
        }
    }

    fn all_rows(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.left.iter().chain(self.right.iter())
    }

    fn eval(rows: &[Vec<i64>], x: &[BigRational]) -> RatVec {
        rows.iter()
            .map(|r| {
                let s = r.iter().zip(x).fold(BigRational::zero(), |acc, (a, xi)| {
                    acc + xi * BigInt::from(*a)
                });
                frac(&s)
            })
            .collect()
    }

    fn dot(r: &[i64], u: &[BigRational]) -> BigRational {
        r.iter().zip(u).fold(BigRational::zero(), |acc, (a, ui)| {
            acc + ui * BigInt::from(*a)
        })
    }

    /// `Some(c)` when all six angles equal `c` in `{0, 1/2}`.
    fn central_value(&self, x: &[BigRational]) -> Option<Centre> {
        let angles: Vec<BigRational> = self.all_rows().map(|r| frac(&Self::dot(r, x))).collect();
        let half = BigRational::new(1.into(), 2.into());
        if angles.iter().all(Zero::is_zero) {
            Some(Centre::Identity)
        } else if angles.iter().all(|a| *a == half) {
            Some(Centre::MinusIdentity)
        } else {
            None
        }
    }

    fn witness(&self, x: RatVec) -> Witness {
        Witness {
            left_eval: Self::eval(&self.left, &x),
            right_eval: Self::eval(&self.right, &x),
            x,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Centre {
    Identity,
    MinusIdentity,
}

fn certify_exponents(name: &str, exps: &Exponents) -> Result<FreenessVerdict> {
    let mut failures: Vec<RatVec> = Vec::new();
    let mut only_identity = true;
    for pattern in ConjugacyPattern::all() {
        let h = solve_torus(&pattern.matrix(&exps.left, &exps.right))?;
        for rep in &h.torsion_reps {
            let centre = exps.central_value(rep);
            match centre {
                None => failures.push(rep.clone()),
                Some(Centre::MinusIdentity) => only_identity = false,
                Some(Centre::Identity) => {}
            }
            for u in &h.free_directions {
                if let Some(r) = exps.all_rows().find(|r| !Exponents::dot(r, u).is_zero()) {
                    // Moving a quarter period along u shifts r.x off {0, 1/2}.
                    let step = Exponents::dot(r, u).abs() * BigInt::from(4);
                    let x: RatVec = rep.iter().zip(u).map(|(a, b)| a + b / &step).collect();
                    failures.push(reduce_mod_one(&x));
                }
            }
        }
    }
    if let Some(x) = failures.into_iter().min() {
        return Ok(FreenessVerdict {
            name: name.to_string(),
            status: FreenessStatus::NotFree,
            witnesses: vec![exps.witness(x)],
        });
    }
    let status = if only_identity {
        FreenessStatus::Free
    } else {
        FreenessStatus::EffectivelyFree
    };
    Ok(FreenessVerdict {
        name: name.to_string(),
        status,
        witnesses: vec![],
    })
}

/// Certifies an `Sp(1)^2` action.
pub fn certify(spec: &BiquotientSpec) -> Result<FreenessVerdict> {
    certify_exponents(&spec.name, &Exponents::of_spec(spec))
}

/// Certifies an `Sp(1)` action given by `diag(z^a_i)` on each side.
pub fn certify_sp1(name: &str, left: [i64; 3], right: [i64; 3]) -> Result<FreenessVerdict> {
    certify_exponents(name, &Exponents::of_sp1(left, right))
}

/// Exact check that `x` is a genuine obstruction for `spec`: the two
/// evaluated diagonal matrices are conjugate but not equal to a common `+-I`.
pub fn verify_witness(spec: &BiquotientSpec, x: &[BigRational]) -> bool {
    verify_exponents(&Exponents::of_spec(spec), x)
}

pub fn verify_witness_sp1(left: [i64; 3], right: [i64; 3], x: &[BigRational]) -> bool {
    verify_exponents(&Exponents::of_sp1(left, right), x)
}

fn verify_exponents(exps: &Exponents, x: &[BigRational]) -> bool {
    let fold = |v: RatVec| {
        let mut f: Vec<BigRational> = v.into_iter().map(|a| a.clone().min(frac(&-a))).collect();
        f.sort();
        f
    };
    let l = fold(Exponents::eval(&exps.left, x));
    let r = fold(Exponents::eval(&exps.right, x));
    l == r && exps.central_value(x).is_none()
}

/// An effectively free class of the classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedSpec {
    /// Canonical representative, named after the catalog entry it matches
    /// (or after its defining representations when it matches none).
    pub spec: BiquotientSpec,
    pub left_rep: String,
    pub right_rep: String,
    pub homogeneous: bool,
    pub status: FreenessStatus,
}

/// A candidate that survives the restriction filter but is not effectively
/// free, with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedCandidate {
    pub spec: BiquotientSpec,
    pub left_rep: String,
    pub right_rep: String,
    pub verdict: FreenessVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// Ordered pairs of homomorphisms considered.
    pub ordered_pairs: usize,
    /// Distinct canonical classes among them.
    pub canonical_classes: usize,
    /// Classes with finite kernel (both coordinates appear).
    pub finite_kernel_classes: usize,
    /// Inhomogeneous classes whose three one-parameter restrictions are all
    /// effectively free.
    pub restriction_survivors: usize,
    pub classes: Vec<ClassifiedSpec>,
    pub rejected: Vec<RejectedCandidate>,
}

impl Classification {
    pub fn homogeneous_count(&self) -> usize {
        self.classes.iter().filter(|c| c.homogeneous).count()
    }

    pub fn inhomogeneous_count(&self) -> usize {
        self.classes.len() - self.homogeneous_count()
    }
}

/// A canonical candidate with the representations it came from.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub spec: BiquotientSpec,
    pub left_rep: RepDecomposition,
    pub right_rep: RepDecomposition,
}

/// All ordered pairs of `Sp(1)^2 -> Sp(3)` homomorphisms, canonicalized and
/// deduplicated, in a deterministic order. Also returns the pair count.
pub fn candidate_classes() -> Result<(usize, Vec<Candidate>)> {
    let reps = enumerate_sp1xsp1(3);
    let mut seen = std::collections::BTreeMap::new();
    let mut pairs = 0;
    for l in &reps {
        for r in &reps {
            pairs += 1;
            let spec = BiquotientSpec::from_reps(format!("({l}, {r})"), l, r)?;
            let canon = spec.canonicalize();
            let key = serde_json::to_string(&(canon.left, canon.right, canon.z_type, canon.w_type))
                .expect("serializable key");
            seen.entry(key).or_insert(Candidate {
                spec: canon,
                left_rep: l.clone(),
                right_rep: r.clone(),
            });
        }
    }
    Ok((pairs, seen.into_values().collect()))
}

/// The necessary condition that restricting to `w = 1`, `z = 1` and `z = w`
/// gives effectively free `Sp(1)` actions.
pub fn passes_restriction_filter(spec: &BiquotientSpec) -> Result<bool> {
    for which in [
        Restriction::FirstFactor,
        Restriction::SecondFactor,
        Restriction::Diagonal,
    ] {
        let r = spec.restrict(which);
        let col = |t: &crate::reps::TorusImage| t.rows.map(|row| row[0]);
        if !certify_sp1(&r.name, col(&r.left), col(&r.right))?
            .status
            .is_effectively_free()
        {
            return Ok(false);
        }
    }
    Ok(true)
}

fn catalog_name(spec: &BiquotientSpec) -> Option<String> {
    catalog()
        .iter()
        .find(|e| e.spec.equivalent(spec))
        .map(|e| e.name.clone())
}

/// Classifies all effectively free actions of `Sp(1)^2` on `Sp(3)` with
/// finite kernel, up to the symmetries of [`BiquotientSpec::canonicalize`].
pub fn classify_all() -> Result<Classification> {
    let (ordered_pairs, candidates) = candidate_classes()?;
    let canonical_classes = candidates.len();
    let finite: Vec<&Candidate> = candidates
        .iter()
        .filter(|c| c.spec.exponent_rank() == 2)
        .collect();

    let results: Vec<Result<(FreenessVerdict, bool)>> = finite
        .par_iter()
        .map(|c| {
            let verdict = certify(&c.spec)?;
            let filtered = !c.spec.is_homogeneous() && passes_restriction_filter(&c.spec)?;
            Ok((verdict, filtered))
        })
        .collect();

    let mut classes = Vec::new();
    let mut rejected = Vec::new();
    let mut restriction_survivors = 0;
    for (c, res) in finite.iter().zip(results) {
        let (verdict, filtered) = res?;
        if filtered {
            restriction_survivors += 1;
        }
        let mut spec = c.spec.clone();
        spec.name = catalog_name(&spec).unwrap_or_else(|| spec.name.clone());
        if verdict.status.is_effectively_free() {
            classes.push(ClassifiedSpec {
                homogeneous: spec.is_homogeneous(),
                left_rep: c.left_rep.to_string(),
                right_rep: c.right_rep.to_string(),
                status: verdict.status,
                spec,
            });
        } else if filtered {
            let mut verdict = verdict;
            verdict.name = spec.name.clone();
            rejected.push(RejectedCandidate {
                left_rep: c.left_rep.to_string(),
                right_rep: c.right_rep.to_string(),
                spec,
                verdict,
            });
        }
    }
    classes.sort_by_key(|c| catalog_order(&c.spec.name));
    Ok(Classification {
        ordered_pairs,
        canonical_classes,
        finite_kernel_classes: finite.len(),
        restriction_survivors,
        classes,
        rejected,
    })
}

fn catalog_order(name: &str) -> (usize, String) {
    let idx = catalog()
        .iter()
        .position(|e| e.name == name)
        .unwrap_or(usize::MAX);
    (idx, name.to_string())
}

/// An effectively free inhomogeneous `Sp(1)` pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sp1Pair {
    pub left: String,
    pub right: String,
    pub left_exponents: [i64; 3],
    pub right_exponents: [i64; 3],
    pub status: FreenessStatus,
}

/// Verdicts for every unordered pair of distinct nontrivial homomorphisms
/// `Sp(1) -> Sp(3)`, in enumeration order.
pub fn sp1_pair_verdicts() -> Result<Vec<(Sp1Pair, FreenessVerdict)>> {
    let reps: Vec<(RepDecomposition, [i64; 3])> = enumerate_sp1(3)
        .into_iter()
        .map(|r| {
            let t = torus_image(&r)?;
            Ok((r, t.rows.map(|row| row[0])))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, e)| e.iter().any(|&a| a != 0))
        .collect();
    let mut out = Vec::new();
    for (i, (l, le)) in reps.iter().enumerate() {
        for (r, re) in &reps[i + 1..] {
            let name = format!("({l}, {r})");
            let verdict = certify_sp1(&name, *le, *re)?;
            let pair = Sp1Pair {
                left: l.to_string(),
                right: r.to_string(),
                left_exponents: *le,
                right_exponents: *re,
                status: verdict.status,
            };
            out.push((pair, verdict));
        }
    }
    Ok(out)
}

/// The effectively free pairs of distinct nontrivial `Sp(1)` homomorphisms.
pub fn certify_sp1_pairs() -> Result<Vec<Sp1Pair>> {
    Ok(sp1_pair_verdicts()?
        .into_iter()
        .filter(|(p, _)| p.status.is_effectively_free())
        .map(|(p, _)| p)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleVerdict {
    SuspectNonFree,
    NoViolation,
}

/// Result of the grid sampler.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub name: String,
    pub grid_n: usize,
    pub verdict: OracleVerdict,
    /// Grid points flagged as near-conjugate and non-central.
    pub suspects: usize,
    /// Suspects that are exact obstructions.
    pub confirmed: usize,
    /// First flagged point, in turns.
    pub first_suspect: Option<[f64; 2]>,
}

fn fold_turn(t: f64) -> f64 {
    let f = t - t.floor();
    f.min(1.0 - f)
}

fn circ_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).abs().rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Samples the torus on a `grid_n x grid_n` grid of angles and flags points
/// whose images are conjugate within `1/(4 grid_n)` turns but not within that
/// tolerance of a common central value. Each flag is re-checked exactly.
pub fn sample_oracle(spec: &BiquotientSpec, grid_n: usize) -> OracleReport {
    assert!(grid_n >= 8, "grid_n must be at least 8");
    let tol = 1.0 / (4.0 * grid_n as f64);
    let rows: Vec<[i64; 2]> = spec.all_rows().collect();
    let n = grid_n as f64;

    let mut suspects = 0;
    let mut confirmed = 0;
    let mut first = None;
    for k in 0..grid_n {
        let x0 = k as f64 / n;
        for l in 0..grid_n {
            let x1 = l as f64 / n;
            let mut ang = [0.0f64; 6];
            for (a, r) in ang.iter_mut().zip(&rows) {
                *a = r[0] as f64 * x0 + r[1] as f64 * x1;
            }
            let mut lf = [fold_turn(ang[0]), fold_turn(ang[1]), fold_turn(ang[2])];
            let mut rf = [fold_turn(ang[3]), fold_turn(ang[4]), fold_turn(ang[5])];
            lf.sort_by(f64::total_cmp);
            rf.sort_by(f64::total_cmp);
            if (0..3).any(|i| (lf[i] - rf[i]).abs() > tol) {
                continue;
            }
            let central = [0.0, 0.5]
                .iter()
                .any(|c| ang.iter().all(|a| circ_dist(*a, *c) <= tol));
            if central {
                continue;
            }
            suspects += 1;
            if first.is_none() {
                first = Some([x0, x1]);
            }
            if grid_point_is_obstruction(&rows, k as i64, l as i64, grid_n as i64) {
                confirmed += 1;
            }
        }
    }
    OracleReport {
        name: spec.name.clone(),
        grid_n,
        verdict: if suspects > 0 {
            OracleVerdict::SuspectNonFree
        } else {
            OracleVerdict::NoViolation
        },
        suspects,
        confirmed,
        first_suspect: first,
    }
}

/// Exact version of [`verify_witness`] at the grid point `(k/n, l/n)`, in
/// integer arithmetic: angles are numerators modulo `n`.
fn grid_point_is_obstruction(rows: &[[i64; 2]], k: i64, l: i64, n: i64) -> bool {
    let mut num = [0i64; 6];
    for (t, r) in num.iter_mut().zip(rows) {
        *t = (r[0] * k + r[1] * l).rem_euclid(n);
    }
    let fold = |t: i64| t.min(n - t);
    let mut lf = [fold(num[0]), fold(num[1]), fold(num[2])];
    let mut rf = [fold(num[3]), fold(num[4]), fold(num[5])];
    lf.sort_unstable();
    rf.sort_unstable();
    if lf != rf {
        return false;
    }
    let all_zero = num.iter().all(|&t| t == 0);
    let all_half = num.iter().all(|&t| 2 * t == n);
    !(all_zero || all_half)
}

/// Disagreement between the exact certifier and the sampler.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleConflict {
    pub name: String,
    pub status: FreenessStatus,
    pub oracle: OracleReport,
}

/// Runs the sampler on every canonical candidate class and returns the
/// conflicts: a certified obstruction the sampler missed, or an exact
/// obstruction found by the sampler on a certified action.
pub fn oracle_conflicts(grid_n: usize) -> Result<(usize, Vec<OracleConflict>)> {
    let (_, candidates) = candidate_classes()?;
    let checked = candidates.len();
    let results: Vec<Result<Option<OracleConflict>>> = candidates
        .par_iter()
        .map(|c| {
            let verdict = certify(&c.spec)?;
            let report = sample_oracle(&c.spec, grid_n);
            let missed = !verdict.status.is_effectively_free()
                && report.verdict == OracleVerdict::NoViolation;
            let false_free = verdict.status.is_effectively_free() && report.confirmed > 0;
            Ok((missed || false_free).then(|| OracleConflict {
                name: c.spec.name.clone(),
                status: verdict.status,
                oracle: report,
            }))
        })
        .collect();
    let mut conflicts = Vec::new();
    for r in results {
        if let Some(c) = r? {
            conflicts.push(c);
        }
    }
    Ok((checked, conflicts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::rat;
    use crate::reps::TorusImage;

    fn spec(left: [[i64; 2]; 3], right: [[i64; 2]; 3]) -> BiquotientSpec {
        BiquotientSpec::new("t", TorusImage::new(left), TorusImage::new(right))
    }

    #[test]
    fn forty_eight_patterns() {
        let all = ConjugacyPattern::all();
        assert_eq!(all.len(), 48);
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), 48);
    }

    #[test]
    fn effectively_free_example() {
        let s = spec([[1, 0], [0, 0], [0, 0]], [[1, 0], [1, 0], [0, 1]]);
        let v = certify(&s).unwrap();
        assert!(v.status.is_effectively_free(), "{v:?}");
        assert!(v.witnesses.is_empty());
    }

    #[test]
    fn homogeneous_is_free() {
        let s = spec([[1, 0], [1, 0], [1, 0]], [[0, 0]; 3]);
        // Only the w circle is left unconstrained; as an Sp(1) action it is free.
        assert_eq!(
            certify_sp1("h", [1, 1, 1], [0, 0, 0]).unwrap().status,
            FreenessStatus::Free
        );
        assert!(certify(&s).unwrap().status.is_effectively_free());
    }

    #[test]
    fn not_free_example_has_valid_witness() {
        let s = spec([[1, 0], [0, 0], [0, 0]], [[1, 2], [1, -2], [1, 0]]);
        let v = certify(&s).unwrap();
        assert_eq!(v.status, FreenessStatus::NotFree);
        let x = &v.witnesses[0].x;
        assert!(verify_witness(&s, x));
        assert!(verify_witness(&s, &[rat(1, 2), rat(1, 4)]));
    }

    #[test]
    fn sp1_third_root_witness() {
        let v = certify_sp1("p", [0, 1, 3], [1, 0, 0]).unwrap();
        assert_eq!(v.status, FreenessStatus::NotFree);
        let x = &v.witnesses[0].x;
        assert!(x[0] == rat(1, 3) || x[0] == rat(2, 3), "{x:?}");
        assert_eq!(
            certify_sp1("q", [1, 0, 0], [1, 1, 1]).unwrap().status,
            FreenessStatus::Free
        );
    }

    #[test]
    fn witness_json_shape() {
        let s = spec([[1, 0], [0, 0], [0, 0]], [[1, 2], [1, -2], [1, 0]]);
        let v = certify(&s).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["status"], "NotFree");
        assert!(json["witnesses"][0]["x"][0].is_string());
        let back: FreenessVerdict = serde_json::from_value(json).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn oracle_identity_pair_everywhere() {
        let t = TorusImage::new([[1, 0], [0, 1], [1, 1]]);
        let s = BiquotientSpec::new("id", t, t);
        let r = sample_oracle(&s, 16);
        assert_eq!(r.verdict, OracleVerdict::SuspectNonFree);
        assert!(r.suspects > 200);
    }
}

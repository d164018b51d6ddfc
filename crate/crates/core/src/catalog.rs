//! The nineteen effectively free biquotients `Sp(3)//Sp(1)^2`, with their
//! group-level description, torus data exactly as published, and the
//! published invariants used as regression targets.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cohomology::EvenPoly;
use crate::error::{Error, Result};
use crate::reps::{BiquotientSpec, TorusImage};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Homogeneous: one side trivial.
    M,
    /// Inhomogeneous with both factors acting through `Sp(1)`.
    N,
    /// Inhomogeneous with an `SO(3)` factor.
    O,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Published values; `None` where nothing was printed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Published {
    /// `(Bf_1^* - Bf_2^*)(sigma_1)`.
    pub sigma1: Option<EvenPoly>,
    /// `(Bf_1^* - Bf_2^*)(sigma_2)`.
    pub sigma2: Option<EvenPoly>,
    pub h8_order: Option<u64>,
    /// `p_1` up to sign.
    pub p1_abs: Option<u64>,
    /// `p_1` where a sign was printed.
    pub p1_signed: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub family: Family,
    /// Group-level images of `(p, q) in Sp(1)^2`.
    pub group_left: String,
    pub group_right: String,
    /// Torus data with rows in published order.
    pub spec: BiquotientSpec,
    pub published: Published,
}

type Rows = [[i64; 2]; 3];

/// Printed differential terms `(a, b, c)` for `c z̄^{2a} w̄^{2b}`.
type Sigma = &'static [(u32, u32, i64)];

struct Raw {
    name: &'static str,
    family: Family,
    group: (&'static str, &'static str),
    left: Rows,
    right: Rows,
    sigma: Option<(Sigma, Sigma)>,
    h8: Option<u64>,
    p1_abs: Option<u64>,
    p1_signed: Option<i64>,
}

const I: Rows = [[0, 0]; 3];

#[rustfmt::skip]
const RAW: [Raw; 19] = [
    Raw { name: "M1", family: Family::M, group: ("I", "diag(p, p, q)"),
          left: I, right: [[1, 0], [0, 1], [0, 1]],
          sigma: Some((&[(1, 0, -1), (0, 1, -2)], &[(1, 1, -2), (0, 2, -1)])),
          h8: Some(3), p1_abs: Some(4), p1_signed: None },
    Raw { name: "M2", family: Family::M, group: ("I", "diag(p, q, 1)"),
          left: I, right: [[1, 0], [0, 0], [0, 1]],
          sigma: Some((&[(1, 0, -1), (0, 1, -1)], &[(1, 1, -1)])),
          h8: Some(1), p1_abs: Some(0), p1_signed: None },
    Raw { name: "M3", family: Family::M, group: ("I", "diag(p, φ₃(q))"),
          left: I, right: [[1, 0], [3, 0], [0, 1]],
          sigma: Some((&[(1, 0, -10), (0, 1, -1)], &[(2, 0, -9), (1, 1, -10)])),
          h8: Some(91), p1_abs: None, p1_signed: None },
    Raw { name: "M4", family: Family::M, group: ("I", "diag(p, p, p)·q′"),
          left: I, right: [[1, 2], [1, -2], [1, 0]],
          sigma: None, h8: None, p1_abs: Some(5), p1_signed: Some(-5) },
    Raw { name: "N1", family: Family::N, group: ("diag(p, p, 1)", "diag(1, 1, q)"),
          left: [[1, 0], [1, 0], [0, 0]], right: [[0, 0], [0, 0], [0, 1]],
          sigma: Some((&[(1, 0, 2), (0, 1, -1)], &[(2, 0, 1)])),
          h8: Some(1), p1_abs: Some(4), p1_signed: None },
    Raw { name: "N2", family: Family::N, group: ("diag(p, p, p)", "diag(1, 1, q)"),
          left: [[1, 0], [1, 0], [1, 0]], right: [[0, 0], [0, 0], [0, 1]],
          sigma: Some((&[(1, 0, 3), (0, 1, -1)], &[(2, 0, 3)])),
          h8: Some(3), p1_abs: Some(8), p1_signed: None },
    Raw { name: "N3", family: Family::N, group: ("diag(p, p, p)", "diag(q, q, 1)"),
          left: [[1, 0], [1, 0], [1, 0]], right: [[0, 1], [0, 1], [0, 0]],
          sigma: Some((&[(1, 0, 3), (0, 1, -2)], &[(2, 0, 3), (0, 2, -1)])),
          h8: Some(3), p1_abs: Some(28), p1_signed: None },
    Raw { name: "N4", family: Family::N, group: ("diag(p, p, p)", "diag(1, p, q)"),
          left: [[1, 0], [1, 0], [1, 0]], right: [[0, 0], [1, 0], [0, 1]],
          sigma: Some((&[(1, 0, 2), (0, 1, -1)], &[(2, 0, 3), (1, 1, -1)])),
          h8: Some(1), p1_abs: Some(12), p1_signed: None },
    Raw { name: "N5", family: Family::N, group: ("diag(q, q, p)", "diag(1, q, 1)"),
          left: [[0, 1], [0, 1], [1, 0]], right: [[0, 0], [0, 1], [0, 0]],
          sigma: Some((&[(1, 0, 1), (0, 1, 1)], &[(0, 2, 1), (1, 1, 2)])),
          h8: Some(1), p1_abs: Some(8), p1_signed: None },
    Raw { name: "N6", family: Family::N, group: ("diag(p, p, q)", "diag(q, q, 1)"),
          left: [[1, 0], [1, 0], [0, 1]], right: [[0, 1], [0, 1], [0, 0]],
          sigma: Some((&[(1, 0, 2), (0, 1, -1)], &[(2, 0, 1), (1, 1, 2), (0, 2, -1)])),
          h8: Some(1), p1_abs: Some(20), p1_signed: None },
    Raw { name: "N7", family: Family::N, group: ("diag(p, p, p)", "diag(1, φ₃(q))"),
          left: [[1, 0], [1, 0], [1, 0]], right: [[0, 0], [0, 1], [0, 3]],
          sigma: Some((&[(1, 0, 3), (0, 1, -10)], &[(2, 0, 3), (0, 2, -9)])),
          h8: Some(219), p1_abs: None, p1_signed: None },
    Raw { name: "N8", family: Family::N, group: ("diag(1, 1, p)", "diag(q, φ₃(q))"),
          left: [[0, 0], [0, 0], [1, 0]], right: [[0, 1], [0, 1], [0, 3]],
          sigma: Some((&[(0, 1, 1), (1, 0, -11)], &[(2, 0, 19)])),
          h8: Some(19), p1_abs: None, p1_signed: None },
    Raw { name: "N9", family: Family::N, group: ("diag(φ₃(p), 1)", "diag(q, φ₃(q))"),
          left: [[1, 0], [3, 0], [0, 0]], right: [[0, 1], [0, 3], [0, 1]],
          sigma: Some((&[(1, 0, 10), (0, 1, -11)], &[(2, 0, 9), (0, 2, -19)])),
          h8: Some(811), p1_abs: None, p1_signed: None },
    Raw { name: "N10", family: Family::N, group: ("diag(φ₅(p))", "diag(q, 1, 1)"),
          left: [[1, 0], [3, 0], [5, 0]], right: [[0, 1], [0, 0], [0, 0]],
          sigma: Some((&[(1, 0, 35), (0, 1, -1)], &[(2, 0, 259)])),
          h8: Some(259), p1_abs: None, p1_signed: None },
    Raw { name: "N11", family: Family::N, group: ("diag(φ₃(q), 1)", "diag(p, p, p)·q′"),
          left: [[0, 1], [0, 3], [0, 0]], right: [[1, 2], [1, -2], [1, 0]],
          sigma: Some((&[(1, 0, 2), (0, 1, -3)], &[(2, 0, -7), (0, 2, -3)])),
          h8: Some(75), p1_abs: None, p1_signed: None },
    Raw { name: "N12", family: Family::N, group: ("diag(p, 1, 1)", "diag(q, q, q)·p′"),
          left: [[1, 0], [0, 0], [0, 0]], right: [[2, 1], [-2, 1], [0, 1]],
          sigma: Some((&[(1, 0, -7), (0, 1, -3)], &[(0, 2, -3), (2, 0, -16)])),
          h8: Some(291), p1_abs: None, p1_signed: None },
    Raw { name: "N13", family: Family::N, group: ("p′", "diag(p, q, q)"),
          left: [[2, 0], [-2, 0], [0, 0]], right: [[1, 0], [0, 1], [0, 1]],
          sigma: Some((&[(1, 0, 1), (0, 1, -2)], &[(2, 0, -1), (1, 1, -2), (0, 2, -1)])),
          h8: Some(9), p1_abs: None, p1_signed: None },
    Raw { name: "O1", family: Family::O, group: ("p′", "diag(q, q, q)"),
          left: [[2, 0], [-2, 0], [0, 0]], right: [[0, 1], [0, 1], [0, 1]],
          sigma: None, h8: None, p1_abs: Some(37), p1_signed: Some(37) },
    Raw { name: "O2", family: Family::O, group: ("p′", "diag(q, 1, 1)"),
          left: [[2, 0], [-2, 0], [0, 0]], right: [[0, 1], [0, 0], [0, 0]],
          sigma: None, h8: None, p1_abs: Some(7), p1_signed: Some(7) },
];

fn build() -> Vec<CatalogEntry> {
    RAW.iter()
        .map(|r| CatalogEntry {
            name: r.name.to_string(),
            family: r.family,
            group_left: r.group.0.to_string(),
            group_right: r.group.1.to_string(),
            spec: BiquotientSpec::new(r.name, TorusImage::new(r.left), TorusImage::new(r.right)),
            published: Published {
                sigma1: r.sigma.map(|s| EvenPoly::from_terms(s.0)),
                sigma2: r.sigma.map(|s| EvenPoly::from_terms(s.1)),
                h8_order: r.h8,
                p1_abs: r.p1_abs,
                p1_signed: r.p1_signed,
            },
        })
        .collect()
}

/// All nineteen entries in the canonical order `M1..M4, N1..N13, O1, O2`.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

/// Case-insensitive lookup by name.
pub fn lookup(name: &str) -> Result<&'static CatalogEntry> {
    catalog()
        .iter()
        .find(|e| e.name.eq_ignore_ascii_case(name.trim()))
        .ok_or_else(|| Error::UnknownSpec(name.to_string()))
}

/// Names of the specs whose Lie algebra sits inside `k + k`.
pub const CURVATURE_NAMES: [&str; 8] = ["N1", "N2", "N3", "N4", "N5", "N6", "N7", "N8"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::FactorType;

    #[test]
    fn shape() {
        let c = catalog();
        assert_eq!(c.len(), 19);
        assert_eq!(c.iter().filter(|e| e.spec.is_homogeneous()).count(), 4);
        assert!(c.iter().all(|e| e.spec.exponent_rank() == 2));
        assert_eq!(lookup("n6").unwrap().name, "N6");
        assert!(matches!(lookup("BOGUS"), Err(Error::UnknownSpec(_))));
    }

    #[test]
    fn factor_types_follow_group_description() {
        for e in catalog() {
            let so3 = |t: FactorType| t == FactorType::So3;
            let expected = match e.name.as_str() {
                "M4" => (false, true),
                "O1" | "O2" => (true, false),
                _ => (false, false),
            };
            assert_eq!(
                (so3(e.spec.z_type), so3(e.spec.w_type)),
                expected,
                "{}",
                e.name
            );
        }
    }
}

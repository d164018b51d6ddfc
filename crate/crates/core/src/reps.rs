//! Symplectic representations of `Sp(1)` and `Sp(1)^2` of quaternionic
//! dimension 3, their maximal torus data, the Lie algebra map `phi_3`, and the
//! equivalences used to deduplicate biquotient specs.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hlinalg::{HMatrix2, Quaternion};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    /// `Sp(1)` with torus coordinate `z`.
    Sp1,
    /// `Sp(1) x Sp(1)` with torus coordinates `(z, w)`.
    Sp1Squared,
}

/// The irreducible representation `phi_i` of `Sp(1)`, or `phi_ij = phi_i (x) phi_j`
/// of `Sp(1)^2` when `right` is present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Irrep {
    pub left: u32,
    pub right: Option<u32>,
}

impl Irrep {
    pub fn sp1(i: u32) -> Self {
        Self {
            left: i,
            right: None,
        }
    }

    pub fn sp1xsp1(i: u32, j: u32) -> Self {
        Self {
            left: i,
            right: Some(j),
        }
    }

    fn j(&self) -> u32 {
        self.right.unwrap_or(0)
    }

    pub fn complex_dim(&self) -> usize {
        (self.left as usize + 1) * (self.j() as usize + 1)
    }

    /// Orthogonal iff `i + j` is even; otherwise symplectic.
    pub fn is_orthogonal(&self) -> bool {
        (self.left + self.j()).is_multiple_of(2)
    }

    /// All weights `(a, b)` with `a in {i, i-2, .., -i}`, `b in {j, .., -j}`.
    pub fn weights(&self) -> Vec<[i64; 2]> {
        let (i, j) = (self.left as i64, self.j() as i64);
        let mut out = Vec::with_capacity(self.complex_dim());
        for a in (-i..=i).step_by(2) {
            for b in (-j..=j).step_by(2) {
                out.push([a, b]);
            }
        }
        out
    }
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "φ{}", subscript(self.left))?;
        if let Some(j) = self.right {
            write!(f, "{}", subscript(j))?;
        }
        Ok(())
    }
}

fn subscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

/// A representation as a multiset of irreducibles, sorted by irrep.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RepDecomposition {
    pub parts: Vec<(Irrep, u32)>,
}

impl RepDecomposition {
    pub fn new(mut parts: Vec<(Irrep, u32)>) -> Self {
        parts.retain(|(_, m)| *m > 0);
        parts.sort();
        let mut merged: Vec<(Irrep, u32)> = Vec::with_capacity(parts.len());
        for (irrep, m) in parts {
            match merged.last_mut() {
                Some((last, lm)) if *last == irrep => *lm += m,
                _ => merged.push((irrep, m)),
            }
        }
        Self { parts: merged }
    }

    pub fn complex_dim(&self) -> usize {
        self.parts
            .iter()
            .map(|(r, m)| r.complex_dim() * *m as usize)
            .sum()
    }

    /// Symplectic iff every orthogonal irreducible occurs with even multiplicity.
    pub fn is_symplectic(&self) -> bool {
        self.complex_dim().is_multiple_of(2)
            && self
                .parts
                .iter()
                .all(|(r, m)| !r.is_orthogonal() || m % 2 == 0)
    }

    /// Full weight multiset.
    pub fn weights(&self) -> Vec<[i64; 2]> {
        let mut out = Vec::with_capacity(self.complex_dim());
        for (r, m) in &self.parts {
            for _ in 0..*m {
                out.extend(r.weights());
            }
        }
        out.sort();
        out
    }

    /// Whether the torus coordinate `z` (resp. `w`) only enters through even
    /// weights, i.e. `-1` in that `Sp(1)` factor acts trivially.
    pub fn coordinate_is_even(&self, coord: usize) -> bool {
        self.parts.iter().all(|(r, _)| {
            let idx = if coord == 0 { r.left } else { r.j() };
            idx % 2 == 0
        })
    }
}

impl fmt::Display for RepDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (n, (r, m)) in self.parts.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if *m > 1 {
                write!(f, "{m}")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

fn irreps_up_to(group: GroupKind, max_dim: usize) -> Vec<Irrep> {
    let mut out = Vec::new();
    for i in 0..max_dim as u32 {
        match group {
            GroupKind::Sp1 => {
                if (i as usize) < max_dim {
                    out.push(Irrep::sp1(i));
                }
            }
            GroupKind::Sp1Squared => {
                for j in 0..max_dim as u32 {
                    let r = Irrep::sp1xsp1(i, j);
                    if r.complex_dim() <= max_dim {
                        out.push(r);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Every multiset of irreducibles of total complex dimension `complex_dim`,
/// symplectic or not.
pub fn enumerate_all(group: GroupKind, complex_dim: usize) -> Vec<RepDecomposition> {
    fn go(
        irreps: &[Irrep],
        remaining: usize,
        acc: &mut Vec<(Irrep, u32)>,
        out: &mut Vec<RepDecomposition>,
    ) {
        if remaining == 0 {
            out.push(RepDecomposition::new(acc.clone()));
            return;
        }
        let Some((first, rest)) = irreps.split_first() else {
            return;
        };
        let d = first.complex_dim();
        let mut m = 0u32;
        while m as usize * d <= remaining {
            if m > 0 {
                acc.push((*first, m));
            }
            go(rest, remaining - m as usize * d, acc, out);
            if m > 0 {
                acc.pop();
            }
            m += 1;
        }
    }
    let irreps = irreps_up_to(group, complex_dim);
    let mut out = Vec::new();
    go(&irreps, complex_dim, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// Symplectic representations of `Sp(1)` of quaternionic dimension `hdim`.
pub fn enumerate_sp1(hdim: usize) -> Vec<RepDecomposition> {
    enumerate_symplectic(GroupKind::Sp1, hdim)
}

/// Symplectic representations of `Sp(1)^2` of quaternionic dimension `hdim`.
pub fn enumerate_sp1xsp1(hdim: usize) -> Vec<RepDecomposition> {
    enumerate_symplectic(GroupKind::Sp1Squared, hdim)
}

fn enumerate_symplectic(group: GroupKind, hdim: usize) -> Vec<RepDecomposition> {
    enumerate_all(group, 2 * hdim)
        .into_iter()
        .filter(RepDecomposition::is_symplectic)
        .collect()
}

/// Maximal torus image in `Sp(3)`: row `i` is `(a_i, b_i)`, meaning the
/// diagonal entry `z^{a_i} w^{b_i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TorusImage {
    pub rows: [[i64; 2]; 3],
}

impl TorusImage {
    pub const TRIVIAL: TorusImage = TorusImage { rows: [[0, 0]; 3] };

    pub fn new(rows: [[i64; 2]; 3]) -> Self {
        Self { rows }
    }

    /// Single-variable image `diag(z^a1, z^a2, z^a3)`.
    pub fn sp1(exps: [i64; 3]) -> Self {
        Self {
            rows: exps.map(|a| [a, 0]),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.iter().all(|r| *r == [0, 0])
    }

    /// Canonical representative under the Weyl group of `Sp(3)`: each row
    /// made nonnegative-leading, rows sorted by `(|a|, |b|, b)`.
    pub fn normalized(&self) -> Self {
        let mut rows = self.rows.map(|r| {
            let lead = if r[0] != 0 { r[0] } else { r[1] };
            if lead < 0 {
                [-r[0], -r[1]]
            } else {
                r
            }
        });
        rows.sort_by_key(|r| (r[0].abs(), r[1].abs(), r[1]));
        Self { rows }
    }

    pub fn swap_columns(&self) -> Self {
        Self {
            rows: self.rows.map(|r| [r[1], r[0]]),
        }
    }

    pub fn negate_column(&self, col: usize) -> Self {
        let mut rows = self.rows;
        for r in rows.iter_mut() {
            r[col] = -r[col];
        }
        Self { rows }
    }

    /// Apply a Weyl group element: `rows'[i] = sign[i] * rows[perm[i]]`.
    pub fn weyl(&self, perm: [usize; 3], signs: [i64; 3]) -> Self {
        let mut rows = [[0; 2]; 3];
        for i in 0..3 {
            let r = self.rows[perm[i]];
            rows[i] = [signs[i] * r[0], signs[i] * r[1]];
        }
        Self { rows }
    }

    /// Weight multiset with the `+-` pairs restored.
    pub fn weights(&self) -> Vec<[i64; 2]> {
        let mut out: Vec<[i64; 2]> = self
            .rows
            .iter()
            .flat_map(|r| [*r, [-r[0], -r[1]]])
            .collect();
        out.sort();
        out
    }

    /// Restriction to a one-parameter subgroup `(z, w) = (t^cz, t^cw)`.
    pub fn restrict(&self, cz: i64, cw: i64) -> Self {
        Self {
            rows: self.rows.map(|r| [r[0] * cz + r[1] * cw, 0]),
        }
    }

    /// Divide exponents of the given coordinate by 2 (all must be even).
    pub(crate) fn halve_column(&self, col: usize) -> Self {
        let mut rows = self.rows;
        for r in rows.iter_mut() {
            debug_assert!(r[col] % 2 == 0);
            r[col] /= 2;
        }
        Self { rows }
    }

    /// Renders as `diag(z, z^3 w̄, 1)`.
    pub fn display(&self) -> String {
        let entries: Vec<String> = self.rows.iter().map(|r| monomial(r[0], r[1])).collect();
        format!("diag({})", entries.join(", "))
    }
}

fn monomial(a: i64, b: i64) -> String {
    fn var(name: &str, bar: &str, e: i64) -> Option<String> {
        match e {
            0 => None,
            1 => Some(name.to_string()),
            -1 => Some(bar.to_string()),
            e if e > 0 => Some(format!("{name}^{e}")),
            e => Some(format!("{bar}^{}", -e)),
        }
    }
    let parts: Vec<String> = [var("z", "z̄", a), var("w", "w̄", b)]
        .into_iter()
        .flatten()
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

impl fmt::Display for TorusImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// Torus image of a symplectic representation of quaternionic dimension 3:
/// one representative from each `+-` weight pair, Weyl-normalized.
pub fn torus_image(rep: &RepDecomposition) -> Result<TorusImage> {
    if !rep.is_symplectic() {
        return Err(Error::NotSymplectic(rep.to_string()));
    }
    let hdim = rep.complex_dim() / 2;
    if hdim != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            got: hdim,
        });
    }
    let mut weights = rep.weights();
    let mut rows = Vec::with_capacity(3);
    while let Some(w) = weights.pop() {
        let neg = [-w[0], -w[1]];
        let pos = weights
            .iter()
            .position(|x| *x == neg)
            .ok_or_else(|| Error::NotSymplectic(rep.to_string()))?;
        weights.remove(pos);
        rows.push(w);
    }
    let rows: [[i64; 2]; 3] = rows.try_into().expect("three weight pairs");
    Ok(TorusImage::new(rows).normalized())
}

/// Whether an `Sp(1)` factor of `U` acts through `Sp(1)` itself or through
/// `SO(3) = Sp(1)/{+-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FactorType {
    #[serde(rename = "Sp1")]
    Sp1,
    #[serde(rename = "SO3")]
    So3,
}

impl fmt::Display for FactorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorType::Sp1 => "Sp(1)",
            FactorType::So3 => "SO(3)",
        })
    }
}

/// A biquotient action of `Sp(1)^2` on `Sp(3)` through its torus data.
///
/// `z_type` and `w_type` tag the two `Sp(1)` factors of `U` (torus coordinates
/// `z` and `w`); they serialize as `left_type` and `right_type`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiquotientSpec {
    pub name: String,
    pub left: TorusImage,
    pub right: TorusImage,
    #[serde(rename = "left_type")]
    pub z_type: FactorType,
    #[serde(rename = "right_type")]
    pub w_type: FactorType,
}

/// Generators of the finite symmetry group acting on specs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    /// `(f1, f2) -> (f2, f1)`
    SwapFactors,
    /// `z <-> w`
    SwapCoordinates,
    /// `z -> z̄` in both factors.
    ConjugateZ,
    /// `w -> w̄` in both factors.
    ConjugateW,
    /// Weyl group of `Sp(3)` on the left image.
    WeylLeft { perm: [usize; 3], signs: [i64; 3] },
    /// Weyl group of `Sp(3)` on the right image.
    WeylRight { perm: [usize; 3], signs: [i64; 3] },
}

/// One-parameter restrictions of an `Sp(1)^2` action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Restriction {
    /// `w = 1`
    FirstFactor,
    /// `z = 1`
    SecondFactor,
    /// `z = w`
    Diagonal,
}

impl BiquotientSpec {
    /// Builds a spec, reading the factor types off the exponent parities.
    pub fn new(name: impl Into<String>, left: TorusImage, right: TorusImage) -> Self {
        let ty = |col: usize| {
            let exps: Vec<i64> = left
                .rows
                .iter()
                .chain(right.rows.iter())
                .map(|r| r[col])
                .collect();
            if exps.iter().any(|&e| e != 0) && exps.iter().all(|e| e % 2 == 0) {
                FactorType::So3
            } else {
                FactorType::Sp1
            }
        };
        let (z_type, w_type) = (ty(0), ty(1));
        Self {
            name: name.into(),
            left,
            right,
            z_type,
            w_type,
        }
    }

    /// Builds a spec from a pair of representations; a factor is tagged
    /// `SO(3)` when both representations are even in that coordinate.
    pub fn from_reps(
        name: impl Into<String>,
        left: &RepDecomposition,
        right: &RepDecomposition,
    ) -> Result<Self> {
        let (l, r) = (torus_image(left)?, torus_image(right)?);
        let tag = |coord: usize| {
            let appears = l.rows.iter().chain(r.rows.iter()).any(|x| x[coord] != 0);
            if appears && left.coordinate_is_even(coord) && right.coordinate_is_even(coord) {
                FactorType::So3
            } else {
                FactorType::Sp1
            }
        };
        let (z_type, w_type) = (tag(0), tag(1));
        Ok(Self {
            name: name.into(),
            left: l,
            right: r,
            z_type,
            w_type,
        })
    }

    pub fn sp1_pair(name: impl Into<String>, left: [i64; 3], right: [i64; 3]) -> Self {
        Self::new(name, TorusImage::sp1(left), TorusImage::sp1(right))
    }

    /// Homogeneous when one side is trivial.
    pub fn is_homogeneous(&self) -> bool {
        self.left.is_trivial() || self.right.is_trivial()
    }

    /// Rank of the stacked 6x2 exponent matrix: 2 exactly when `U -> G x G`
    /// has finite kernel.
    pub fn exponent_rank(&self) -> usize {
        let rows: Vec<[i64; 2]> = self
            .left
            .rows
            .iter()
            .chain(self.right.rows.iter())
            .copied()
            .collect();
        if rows.iter().all(|r| *r == [0, 0]) {
            return 0;
        }
        let independent = rows
            .iter()
            .any(|a| rows.iter().any(|b| a[0] * b[1] - a[1] * b[0] != 0));
        if independent {
            2
        } else {
            1
        }
    }

    /// All six exponent rows, left then right.
    pub fn all_rows(&self) -> impl Iterator<Item = [i64; 2]> + '_ {
        self.left.rows.iter().chain(self.right.rows.iter()).copied()
    }

    pub fn apply(&self, s: &Symmetry) -> Self {
        let mut out = self.clone();
        match *s {
            Symmetry::SwapFactors => std::mem::swap(&mut out.left, &mut out.right),
            Symmetry::SwapCoordinates => {
                out.left = out.left.swap_columns();
                out.right = out.right.swap_columns();
                std::mem::swap(&mut out.z_type, &mut out.w_type);
            }
            Symmetry::ConjugateZ => {
                out.left = out.left.negate_column(0);
                out.right = out.right.negate_column(0);
            }
            Symmetry::ConjugateW => {
                out.left = out.left.negate_column(1);
                out.right = out.right.negate_column(1);
            }
            Symmetry::WeylLeft { perm, signs } => out.left = out.left.weyl(perm, signs),
            Symmetry::WeylRight { perm, signs } => out.right = out.right.weyl(perm, signs),
        }
        out
    }

    fn key(&self) -> (TorusImage, TorusImage, FactorType, FactorType) {
        (self.left, self.right, self.z_type, self.w_type)
    }

    /// Lexicographically minimal representative of the orbit under factor
    /// swap, `z <-> w`, `z -> z̄`, `w -> w̄` and the Weyl groups of both
    /// factors. Keeps the name.
    pub fn canonicalize(&self) -> Self {
        let mut best: Option<BiquotientSpec> = None;
        for mask in 0..16u8 {
            let mut s = self.clone();
            if mask & 1 != 0 {
                s = s.apply(&Symmetry::SwapFactors);
            }
            if mask & 2 != 0 {
                s = s.apply(&Symmetry::SwapCoordinates);
            }
            if mask & 4 != 0 {
                s = s.apply(&Symmetry::ConjugateZ);
            }
            if mask & 8 != 0 {
                s = s.apply(&Symmetry::ConjugateW);
            }
            s.left = s.left.normalized();
            s.right = s.right.normalized();
            let better = match &best {
                None => true,
                Some(b) => s.key().cmp(&b.key()) == Ordering::Less,
            };
            if better {
                best = Some(s);
            }
        }
        best.expect("nonempty orbit")
    }

    /// Whether two specs lie in the same symmetry orbit.
    pub fn equivalent(&self, other: &BiquotientSpec) -> bool {
        self.canonicalize().key() == other.canonicalize().key()
    }

    /// Restriction to a one-parameter subgroup, as an `Sp(1)` pair.
    pub fn restrict(&self, which: Restriction) -> Self {
        let (cz, cw) = match which {
            Restriction::FirstFactor => (1, 0),
            Restriction::SecondFactor => (0, 1),
            Restriction::Diagonal => (1, 1),
        };
        let name = format!("{}|{:?}", self.name, which);
        Self::new(
            name,
            self.left.restrict(cz, cw),
            self.right.restrict(cz, cw),
        )
    }

    /// Torus data in the coordinates of the effectively acting group: an
    /// `SO(3)` factor is parametrized by its own circle, which halves the
    /// exponents of that coordinate.
    pub fn effective_torus(&self) -> (TorusImage, TorusImage) {
        let (mut l, mut r) = (self.left, self.right);
        if self.z_type == FactorType::So3 {
            l = l.halve_column(0);
            r = r.halve_column(0);
        }
        if self.w_type == FactorType::So3 {
            l = l.halve_column(1);
            r = r.halve_column(1);
        }
        (l, r)
    }
}

impl fmt::Display for BiquotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ({}, {})", self.name, self.left, self.right)
    }
}

/// Lie algebra image of an imaginary quaternion `t = t_i i + t_j j + t_k k`
/// under the irreducible 4-dimensional representation, as a 2x2 quaternionic
/// matrix:
///
/// ```text
/// [ 3 t_i i               sqrt3 (t_j j + t_k k)      ]
/// [ sqrt3 (t_j j + t_k k)  2 (t_k k - t_j j) - t_i i ]
/// ```
pub fn phi3_algebra(t: Quaternion) -> HMatrix2 {
    let s3 = 3f64.sqrt();
    let off = Quaternion::imag(0.0, s3 * t.j, s3 * t.k);
    HMatrix2::from_entries([
        [Quaternion::imag(3.0 * t.i, 0.0, 0.0), off],
        [off, Quaternion::imag(-t.i, -2.0 * t.j, 2.0 * t.k)],
    ])
}

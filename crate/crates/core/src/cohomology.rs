//! Low-degree integral cohomology of `Sp(3)//Sp(1)^2` from the torus
//! data: the transgressions `dx_3`, `dx_7`, `H^4 = Z`, `|H^8|` through the
//! Smith normal form of `A_f`, the first Pontryagin class and `pi_2`.
//!
//! All polynomials live in `H^*(BT_U) = Z[z̄, w̄]`. A coordinate belonging to
//! an `SO(3)` factor is first reparametrized by its own maximal circle, which
//! halves its exponents (see [`BiquotientSpec::effective_torus`]).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlin::{det3, snf, IntMatrix};
use crate::reps::{BiquotientSpec, FactorType, TorusImage};

/// Polynomial in `z̄, w̄` keyed by exponent pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Poly(BTreeMap<(u32, u32), i64>);

impl Poly {
    fn linear(a: i64, b: i64) -> Self {
        let mut p = Poly::default();
        p.add_term((1, 0), a);
        p.add_term((0, 1), b);
        p
    }

    fn one() -> Self {
        let mut p = Poly::default();
        p.add_term((0, 0), 1);
        p
    }

    fn add_term(&mut self, key: (u32, u32), c: i64) {
        if c == 0 {
            return;
        }
        let e = self.0.entry(key).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&key);
        }
    }

    fn add(&self, other: &Poly, sign: i64) -> Poly {
        let mut out = self.clone();
        for (k, c) in &other.0 {
            out.add_term(*k, sign * c);
        }
        out
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for ((a1, b1), c1) in &self.0 {
            for ((a2, b2), c2) in &other.0 {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }

    fn into_even(self) -> Result<EvenPoly> {
        let mut out = EvenPoly::zero();
        for ((a, b), c) in self.0 {
            if a % 2 != 0 || b % 2 != 0 {
                return Err(Error::InvalidArgument(format!(
                    "odd monomial z̄^{a} w̄^{b} in a Weyl-invariant class"
                )));
            }
            out.add_term(a / 2, b / 2, c);
        }
        Ok(out)
    }
}

/// Integer polynomial in `z̄²` and `w̄²`: the key `(a, b)` stands for
/// `z̄^{2a} w̄^{2b}`. Serializes as a list of `[a, b, coeff]` triples.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvenPoly {
    terms: BTreeMap<(u32, u32), i64>,
}

impl EvenPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// From `(a, b, coeff)` triples; repeated monomials add up.
    pub fn from_terms(terms: &[(u32, u32, i64)]) -> Self {
        let mut p = Self::zero();
        for &(a, b, c) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    /// Degree-2 class `s z̄² + t w̄²`.
    pub fn quadratic(s: i64, t: i64) -> Self {
        Self::from_terms(&[(1, 0, s), (0, 1, t)])
    }

    fn add_term(&mut self, a: u32, b: u32, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((a, b)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(a, b));
        }
    }

    pub fn coeff(&self, a: u32, b: u32) -> i64 {
        self.terms.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, i64)> + '_ {
        self.terms.iter().map(|(&(a, b), &c)| (a, b, c))
    }

    pub fn scale(&self, s: i64) -> Self {
        let mut out = Self::zero();
        for (a, b, c) in self.terms() {
            out.add_term(a, b, s * c);
        }
        out
    }

    pub fn mul(&self, other: &EvenPoly) -> Self {
        let mut out = Self::zero();
        for (a1, b1, c1) in self.terms() {
            for (a2, b2, c2) in other.terms() {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    /// Exchange the roles of `z̄` and `w̄`.
    pub fn swap_variables(&self) -> Self {
        let mut out = Self::zero();
        for (a, b, c) in self.terms() {
            out.add_term(b, a, c);
        }
        out
    }

    /// Highest total degree in `(z̄², w̄²)`, or `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    /// Whether every term has total degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|(a, b)| a + b == d)
    }
}

impl std::ops::Add for &EvenPoly {
    type Output = EvenPoly;
    fn add(self, rhs: &EvenPoly) -> EvenPoly {
        let mut out = self.clone();
        for (a, b, c) in rhs.terms() {
            out.add_term(a, b, c);
        }
        out
    }
}

impl std::ops::Sub for &EvenPoly {
    type Output = EvenPoly;
    fn sub(self, rhs: &EvenPoly) -> EvenPoly {
        self + &rhs.scale(-1)
    }
}

impl std::ops::Neg for &EvenPoly {
    type Output = EvenPoly;
    fn neg(self) -> EvenPoly {
        self.scale(-1)
    }
}

impl Serialize for EvenPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let triples: Vec<[i64; 3]> = self
            .terms()
            .map(|(a, b, c)| [a as i64, b as i64, c])
            .collect();
        triples.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EvenPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<[i64; 3]>::deserialize(d)?;
        let mut out = EvenPoly::zero();
        for [a, b, c] in triples {
            if a < 0 || b < 0 {
                return Err(serde::de::Error::custom("negative exponent"));
            }
            out.add_term(a as u32, b as u32, c);
        }
        Ok(out)
    }
}

/// Monomial order used for display: descending in `z̄`.
impl fmt::Display for EvenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<(u32, u32, i64)> = self.terms().collect();
        terms.sort_by_key(|t| std::cmp::Reverse((t.0 + t.1, t.0)));
        for (n, (a, b, c)) in terms.into_iter().enumerate() {
            let mono = match (a, b) {
                (0, 0) => String::new(),
                _ => {
                    let part = |v: &str, e: u32| match e {
                        0 => String::new(),
                        e => format!("{v}^{}", 2 * e),
                    };
                    [part("z̄", a), part("w̄", b)]
                        .into_iter()
                        .filter(|s| !s.is_empty())
                        .collect::<Vec<_>>()
                        .join("")
                }
            };
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag == 1 {
                mono
            } else {
                format!("{mag}{mono}")
            };
            match (n, c < 0) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

fn image_class(image: &TorusImage, k: u32) -> Result<EvenPoly> {
    let squares: Vec<Poly> = image
        .rows
        .iter()
        .map(|r| {
            let l = Poly::linear(r[0], r[1]);
            l.mul(&l)
        })
        .collect();
    let p = match k {
        1 => squares.iter().fold(Poly::default(), |acc, s| acc.add(s, 1)),
        2 => {
            let mut acc = Poly::default();
            for i in 0..3 {
                for j in i + 1..3 {
                    acc = acc.add(&squares[i].mul(&squares[j]), 1);
                }
            }
            acc
        }
        3 => squares.iter().fold(Poly::one(), |acc, s| acc.mul(s)),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "sigma_{k} is not defined for Sp(3)"
            )))
        }
    };
    p.into_even()
}

/// `(Bf_1^* - Bf_2^*)(sigma_k(ȳ²))` for `k` in `{1, 2}`: the image of the
/// `k`-th symmetric polynomial in the squared torus generators.
pub fn bf_diff(spec: &BiquotientSpec, k: u32) -> Result<EvenPoly> {
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidArgument(format!("k must be 1 or 2, got {k}")));
    }
    let (left, right) = spec.effective_torus();
    Ok(&image_class(&left, k)? - &image_class(&right, k)?)
}

/// Coefficients `(alpha, beta)` of `dx_3 = alpha z̄² + beta w̄²`.
pub fn dx3_coeffs(spec: &BiquotientSpec) -> Result<(i64, i64)> {
    let dx3 = bf_diff(spec, 1)?;
    Ok((dx3.coeff(1, 0), dx3.coeff(0, 1)))
}

/// Image of a degree-2 class `s z̄² + t w̄²` in `H^4 = Z`, via
/// `psi(s, t) = -beta s + alpha t`.
pub fn h4_psi(spec: &BiquotientSpec, cls: &EvenPoly) -> Result<i64> {
    if !cls.is_homogeneous_of(1) {
        return Err(Error::InvalidArgument(format!(
            "{cls} is not a degree-4 class"
        )));
    }
    let (alpha, beta) = dx3_coeffs(spec)?;
    if alpha.gcd(&beta) != 1 {
        return Err(Error::H4NotCyclic { alpha, beta });
    }
    Ok(-beta * cls.coeff(1, 0) + alpha * cls.coeff(0, 1))
}

/// The 3x3 matrix whose rows are the `(z̄⁴, w̄⁴, z̄²w̄²)` coefficients of
/// `z̄² dx_3`, `w̄² dx_3` and `dx_7`.
pub fn a_f(spec: &BiquotientSpec) -> Result<IntMatrix> {
    let (alpha, beta) = dx3_coeffs(spec)?;
    let dx7 = bf_diff(spec, 2)?;
    Ok(IntMatrix::from_rows(&[
        [alpha, 0, beta],
        [0, beta, alpha],
        [dx7.coeff(2, 0), dx7.coeff(0, 2), dx7.coeff(1, 1)],
    ]))
}

/// `|H^8| = |det A_f|`; errors when the determinant vanishes.
pub fn h8_order(spec: &BiquotientSpec) -> Result<u64> {
    let d = det3(&a_f(spec)?)?;
    if d == BigInt::from(0) {
        return Err(Error::InfiniteH8(spec.name.clone()));
    }
    d.abs()
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("determinant overflow".into()))
}

/// Sum of the squared positive roots of `U`, with `ū²` in place of `4ū²`
/// for an `SO(3)` coordinate.
pub fn rho_u(spec: &BiquotientSpec) -> EvenPoly {
    let w = |t: FactorType| if t == FactorType::So3 { 1 } else { 4 };
    EvenPoly::quadratic(w(spec.z_type), w(spec.w_type))
}

/// `8 Σ Bf^*(ȳ_i ⊗ 1)²` (`use_right = false`) or `8 Σ Bf^*(1 ⊗ ȳ_i)²`
/// minus the root term, before applying `psi`.
pub fn p1_class(spec: &BiquotientSpec, use_right: bool) -> Result<EvenPoly> {
    let (left, right) = spec.effective_torus();
    let image = if use_right { right } else { left };
    let sum = image_class(&image, 1)?;
    Ok(&sum.scale(8) - &rho_u(spec))
}

/// First Pontryagin class in `H^4 = Z`, sign as produced by `psi`.
pub fn p1(spec: &BiquotientSpec) -> Result<i64> {
    h4_psi(spec, &p1_class(spec, true)?)
}

/// `pi_2 = pi_1(U)`: one `Z/2` per `SO(3)` factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pi2 {
    pub z2_factors: u32,
}

impl Pi2 {
    pub fn is_trivial(&self) -> bool {
        self.z2_factors == 0
    }
}

impl fmt::Display for Pi2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.z2_factors {
            0 => f.write_str("0"),
            n => {
                let parts = vec!["ℤ/2"; n as usize];
                f.write_str(&parts.join(" ⊕ "))
            }
        }
    }
}

pub fn pi2(spec: &BiquotientSpec) -> Pi2 {
    let n = [spec.z_type, spec.w_type]
        .iter()
        .filter(|t| **t == FactorType::So3)
        .count();
    Pi2 {
        z2_factors: n as u32,
    }
}

/// Everything computed for one spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub name: String,
    pub dx3: EvenPoly,
    pub dx7: EvenPoly,
    pub alpha: i64,
    pub beta: i64,
    pub a_f: IntMatrix,
    pub det_a_f: i64,
    pub snf_diagonal: Vec<i64>,
    pub h8_order: u64,
    pub p1: i64,
    pub pi2: Pi2,
}

pub fn report(spec: &BiquotientSpec) -> Result<CohomologyReport> {
    let dx3 = bf_diff(spec, 1)?;
    let dx7 = bf_diff(spec, 2)?;
    let (alpha, beta) = (dx3.coeff(1, 0), dx3.coeff(0, 1));
    let a = a_f(spec)?;
    let det = det3(&a)?.to_i64().expect("small determinant");
    let snf_diagonal = snf(&a)
        .diagonal()
        .iter()
        .map(|d| d.to_i64().expect("small divisor"))
        .collect();
    Ok(CohomologyReport {
        name: spec.name.clone(),
        dx3,
        dx7,
        alpha,
        beta,
        a_f: a,
        det_a_f: det,
        snf_diagonal,
        h8_order: h8_order(spec)?,
        p1: p1(spec)?,
        pi2: pi2(spec),
    })
}

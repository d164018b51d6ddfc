//! Quaternionic linear algebra for `sp(3)` and `Sp(3)`.
//!
//! Matrices are stored entrywise as [`Quaternion`]s in 64-bit floats. The Lie
//! algebra `sp(3)` is the space of 3x3 quaternionic matrices with `X^H = -X`;
//! it carries the bi-invariant inner product `g0(X, Y) = -Re Tr(XY)` and splits
//! as `k + p` for `K = Sp(1) x Sp(2)` embedded block-diagonally (1 + 2).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Dimension of `sp(3)` as a real vector space.
pub const SP3_DIM: usize = 21;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub r: f64,
    pub i: f64,
    pub j: f64,
    pub k: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(r: f64, i: f64, j: f64, k: f64) -> Self {
        Self { r, i, j, k }
    }

    pub const fn real(r: f64) -> Self {
        Self::new(r, 0.0, 0.0, 0.0)
    }

    /// Purely imaginary quaternion `a i + b j + c k`.
    pub const fn imag(a: f64, b: f64, c: f64) -> Self {
        Self::new(0.0, a, b, c)
    }

    pub fn conj(self) -> Self {
        Self::new(self.r, -self.i, -self.j, -self.k)
    }

    pub fn norm_sqr(self) -> f64 {
        self.r * self.r + self.i * self.i + self.j * self.j + self.k * self.k
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.r * s, self.i * s, self.j * s, self.k * s)
    }

    /// The imaginary part as an `(i, j, k)` triple.
    pub fn im(self) -> [f64; 3] {
        [self.i, self.j, self.k]
    }

    pub fn max_abs(self) -> f64 {
        self.r
            .abs()
            .max(self.i.abs())
            .max(self.j.abs())
            .max(self.k.abs())
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.r + o.r, self.i + o.i, self.j + o.j, self.k + o.k)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.r - o.r, self.i - o.i, self.j - o.j, self.k - o.k)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.r, -self.i, -self.j, -self.k)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.r * o.r - self.i * o.i - self.j * o.j - self.k * o.k,
            self.r * o.i + self.i * o.r + self.j * o.k - self.k * o.j,
            self.r * o.j - self.i * o.k + self.j * o.r + self.k * o.i,
            self.r * o.k + self.i * o.j - self.j * o.i + self.k * o.r,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.r, self.i, self.j, self.k)
    }
}

/// An `N x N` quaternionic matrix. `N = 3` unless stated otherwise; the 2x2
/// case only shows up for the `phi_3` block.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HMatrix<const N: usize = 3> {
    pub entries: [[Quaternion; N]; N],
}

pub type HMatrix2 = HMatrix<2>;

impl<const N: usize> Default for HMatrix<N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const N: usize> HMatrix<N> {
    pub fn zero() -> Self {
        Self {
            entries: [[Quaternion::ZERO; N]; N],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for a in 0..N {
            m.entries[a][a] = Quaternion::ONE;
        }
        m
    }

    pub fn from_entries(entries: [[Quaternion; N]; N]) -> Self {
        Self { entries }
    }

    /// `diag(q_1, ..., q_N)`.
    pub fn diag(d: [Quaternion; N]) -> Self {
        let mut m = Self::zero();
        for (a, q) in d.into_iter().enumerate() {
            m.entries[a][a] = q;
        }
        m
    }

    /// The matrix with the single entry `q` at `(row, col)`.
    pub fn unit(row: usize, col: usize, q: Quaternion) -> Self {
        let mut m = Self::zero();
        m.entries[row][col] = q;
        m
    }

    /// The anti-Hermitian matrix with `q` at `(row, col)` and `-conj(q)` at
    /// `(col, row)`. For `row == col` only the imaginary part of `q` is kept.
    pub fn skew(row: usize, col: usize, q: Quaternion) -> Self {
        let mut m = Self::zero();
        if row == col {
            m.entries[row][row] = Quaternion::imag(q.i, q.j, q.k);
        } else {
            m.entries[row][col] = q;
            m.entries[col][row] = -q.conj();
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> Quaternion {
        self.entries[row][col]
    }

    /// Quaternionic conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for a in 0..N {
            for b in 0..N {
                m.entries[a][b] = self.entries[b][a].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        for row in m.entries.iter_mut() {
            for q in row.iter_mut() {
                *q = q.scale(s);
            }
        }
        m
    }

    /// Right scalar multiplication by a quaternion, entrywise `X_ab q`.
    pub fn mul_right(&self, q: Quaternion) -> Self {
        let mut m = *self;
        for row in m.entries.iter_mut() {
            for e in row.iter_mut() {
                *e = *e * q;
            }
        }
        m
    }

    pub fn trace(&self) -> Quaternion {
        let mut t = Quaternion::ZERO;
        for a in 0..N {
            t += self.entries[a][a];
        }
        t
    }

    /// Largest absolute component over all entries.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flat_map(|row| row.iter())
            .map(|q| q.max_abs())
            .fold(0.0, f64::max)
    }

    /// Frobenius norm `sqrt(sum |X_ab|^2)`.
    pub fn frobenius(&self) -> f64 {
        self.entries
            .iter()
            .flat_map(|row| row.iter())
            .map(|q| q.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_anti_hermitian(&self, tol: f64) -> bool {
        (*self + self.adjoint()).max_abs() <= tol
    }

    pub fn is_symplectic(&self, tol: f64) -> bool {
        (self.adjoint() * *self - Self::identity()).max_abs() <= tol
    }

    /// Inverse of a group element (`p^{-1} = p^H`).
    pub fn group_inverse(&self) -> Self {
        self.adjoint()
    }
}

impl<const N: usize> Add for HMatrix<N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut m = self;
        for a in 0..N {
            for b in 0..N {
                m.entries[a][b] += o.entries[a][b];
            }
        }
        m
    }
}

impl<const N: usize> Sub for HMatrix<N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut m = self;
        for a in 0..N {
            for b in 0..N {
                m.entries[a][b] = m.entries[a][b] - o.entries[a][b];
            }
        }
        m
    }
}

impl<const N: usize> Neg for HMatrix<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul for HMatrix<N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut m = Self::zero();
        for a in 0..N {
            for b in 0..N {
                let mut acc = Quaternion::ZERO;
                for c in 0..N {
                    acc += self.entries[a][c] * o.entries[c][b];
                }
                m.entries[a][b] = acc;
            }
        }
        m
    }
}

impl<const N: usize> Mul<f64> for HMatrix<N> {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

/// Bi-invariant inner product `g0(X, Y) = -Re Tr(XY)`.
pub fn g0<const N: usize>(x: &HMatrix<N>, y: &HMatrix<N>) -> f64 {
    let mut acc = 0.0;
    for a in 0..N {
        for c in 0..N {
            acc += (x.entries[a][c] * y.entries[c][a]).r;
        }
    }
    -acc
}

/// `g0(X, X)`.
pub fn g0_norm_sqr<const N: usize>(x: &HMatrix<N>) -> f64 {
    g0(x, x)
}

/// Lie bracket `XY - YX`.
pub fn bracket<const N: usize>(x: &HMatrix<N>, y: &HMatrix<N>) -> HMatrix<N> {
    *x * *y - *y * *x
}

/// `k`/`p` components of an element of `sp(3)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KpSplit {
    pub k_part: HMatrix,
    pub p_part: HMatrix,
}

/// Splits `X` into its `sp(1) + sp(2)` block part and the off-block part.
pub fn kp_split(x: &HMatrix) -> KpSplit {
    let mut k_part = *x;
    let mut p_part = HMatrix::zero();
    for b in 1..3 {
        p_part.entries[0][b] = x.entries[0][b];
        p_part.entries[b][0] = x.entries[b][0];
        k_part.entries[0][b] = Quaternion::ZERO;
        k_part.entries[b][0] = Quaternion::ZERO;
    }
    KpSplit { k_part, p_part }
}

pub fn k_part(x: &HMatrix) -> HMatrix {
    kp_split(x).k_part
}

pub fn p_part(x: &HMatrix) -> HMatrix {
    kp_split(x).p_part
}

/// Adjoint action `Ad_p X = p X p^{-1}`.
pub fn ad_p(p: &HMatrix, x: &HMatrix) -> HMatrix {
    *p * *x * p.group_inverse()
}

/// The rotation by `theta` in the (1,2)-plane,
/// `[[cos, sin, 0], [-sin, cos, 0], [0, 0, 1]]`.
pub fn rotation_point(theta: f64) -> HMatrix {
    let (s, c) = theta.sin_cos();
    let mut m = HMatrix::identity();
    m.entries[0][0] = Quaternion::real(c);
    m.entries[0][1] = Quaternion::real(s);
    m.entries[1][0] = Quaternion::real(-s);
    m.entries[1][1] = Quaternion::real(c);
    m
}

const OFF_DIAG: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];
const IMAG_UNITS: [Quaternion; 3] = [Quaternion::I, Quaternion::J, Quaternion::K];

/// The g0-orthonormal basis of `sp(3)` in its fixed order: `{i,j,k} E_aa` for
/// `a = 1..3`, then for each `a < b` the element `(E_ab - E_ba)` followed by
/// `(E_ab + E_ba){i,j,k}`, the off-diagonal ones scaled by `1/sqrt 2`.
pub fn sp3_basis() -> Vec<HMatrix> {
    let mut basis = Vec::with_capacity(SP3_DIM);
    for a in 0..3 {
        for u in IMAG_UNITS {
            basis.push(HMatrix::skew(a, a, u));
        }
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for (a, b) in OFF_DIAG {
        basis.push(HMatrix::skew(a, b, Quaternion::real(h)));
        for u in IMAG_UNITS {
            basis.push(HMatrix::skew(a, b, u.scale(h)));
        }
    }
    basis
}

/// Coordinates of an anti-Hermitian `X` in [`sp3_basis`].
pub fn to_coords(x: &HMatrix) -> [f64; SP3_DIM] {
    let mut c = [0.0; SP3_DIM];
    for a in 0..3 {
        let q = x.entries[a][a];
        c[3 * a] = q.i;
        c[3 * a + 1] = q.j;
        c[3 * a + 2] = q.k;
    }
    let s = std::f64::consts::SQRT_2;
    for (n, (a, b)) in OFF_DIAG.iter().enumerate() {
        let q = x.entries[*a][*b];
        let base = 9 + 4 * n;
        c[base] = q.r * s;
        c[base + 1] = q.i * s;
        c[base + 2] = q.j * s;
        c[base + 3] = q.k * s;
    }
    c
}

/// Inverse of [`to_coords`].
pub fn from_coords(c: &[f64]) -> HMatrix {
    assert_eq!(c.len(), SP3_DIM, "sp(3) coordinates have length 21");
    let mut x = HMatrix::zero();
    for a in 0..3 {
        x.entries[a][a] = Quaternion::imag(c[3 * a], c[3 * a + 1], c[3 * a + 2]);
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for (n, (a, b)) in OFF_DIAG.iter().enumerate() {
        let base = 9 + 4 * n;
        let q = Quaternion::new(c[base], c[base + 1], c[base + 2], c[base + 3]).scale(h);
        x.entries[*a][*b] = q;
        x.entries[*b][*a] = -q.conj();
    }
    x
}

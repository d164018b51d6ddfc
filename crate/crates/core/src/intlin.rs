//! Exact integer linear algebra: Smith normal form, determinants, and the
//! closed subgroups `{x in R^n / Z^n : M x in Z^m}` of a torus.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rational vector, one entry per torus coordinate.
pub type RatVec = Vec<BigRational>;

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for a in 0..n {
            m[(a, a)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| BigInt::from(v)));
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    /// Entries as `i64` rows, for display and serialization of small matrices.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|v| i64::try_from(v).expect("entry exceeds i64"))
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut m = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += &self[(r, k)] * &other[(k, c)];
                }
                m[(r, c)] = acc;
            }
        }
        m
    }

    /// `M x` for a rational vector `x`.
    pub fn apply(&self, x: &[BigRational]) -> RatVec {
        assert_eq!(self.cols, x.len(), "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + b * a)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[dst] += factor * row[src]`
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = &self[(src, c)] * factor;
            self[(dst, c)] += v;
        }
    }

    /// `col[dst] += factor * col[src]`
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self[(r, src)] * factor;
            self[(r, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_i64_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        if rows.windows(2).any(|w| w[0].len() != w[1].len()) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        Ok(IntMatrix::from_rows(&rows))
    }
}

/// `U A V = D` with `U`, `V` unimodular and `D` diagonal with `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// `U^{-1}`, maintained alongside `U`.
    pub u_inv: IntMatrix,
    /// `V^{-1}`, maintained alongside `V`.
    pub v_inv: IntMatrix,
}

impl SnfResult {
    /// Diagonal of `D` (length `min(rows, cols)`), nonnegative.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|a| self.d[(a, a)].clone())
            .collect()
    }

    /// Number of nonzero elementary divisors.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form. Pivots on the smallest nonzero absolute value in the
/// remaining block, ties broken by lowest (row, column).
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pr, pc)) = smallest_pivot(&d, t) else {
                return SnfResult {
                    u,
                    d,
                    v,
                    u_inv,
                    v_inv,
                };
            };
            if pr != t {
                d.swap_rows(t, pr);
                u.swap_rows(t, pr);
                u_inv.swap_cols(t, pr);
            }
            if pc != t {
                d.swap_cols(t, pc);
                v.swap_cols(t, pc);
                v_inv.swap_rows(t, pc);
            }

            let pivot = d[(t, t)].clone();
            for r in t + 1..m {
                let q = d[(r, t)].div_floor(&pivot);
                if !q.is_zero() {
                    let neg = -&q;
                    d.add_row_multiple(r, t, &neg);
                    u.add_row_multiple(r, t, &neg);
                    u_inv.add_col_multiple(t, r, &q);
                }
            }
            for c in t + 1..n {
                let q = d[(t, c)].div_floor(&pivot);
                if !q.is_zero() {
                    let neg = -&q;
                    d.add_col_multiple(c, t, &neg);
                    v.add_col_multiple(c, t, &neg);
                    v_inv.add_row_multiple(t, c, &q);
                }
            }

            let row_clear = (t + 1..m).all(|r| d[(r, t)].is_zero());
            let col_clear = (t + 1..n).all(|c| d[(t, c)].is_zero());
            if !(row_clear && col_clear) {
                continue;
            }

            // Divisibility: fold an offending row into the pivot row and retry.
            let offender = (t + 1..m)
                .flat_map(|r| (t + 1..n).map(move |c| (r, c)))
                .find(|&(r, c)| !d[(r, c)].is_multiple_of(&pivot));
            match offender {
                Some((r, _)) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, r, &one);
                    u.add_row_multiple(t, r, &one);
                    u_inv.add_col_multiple(r, t, &-one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    SnfResult {
        u,
        d,
        v,
        u_inv,
        v_inv,
    }
}

fn smallest_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..d.rows() {
        for c in t..d.cols() {
            let x = &d[(r, c)];
            if x.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((br, bc)) => x.abs() < d[(br, bc)].abs(),
            };
            if better {
                best = Some((r, c));
            }
        }
    }
    best
}

/// Exact determinant (fraction-free Bareiss elimination).
pub fn det(a: &IntMatrix) -> Result<BigInt> {
    if a.rows() != a.cols() {
        return Err(Error::Dimension(format!(
            "determinant of a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&r| !m[(r, k)].is_zero()) {
                Some(r) => {
                    m.swap_rows(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = v;
            }
        }
        prev = m[(k, k)].clone();
    }
    Ok(sign * &m[(n - 1, n - 1)])
}

/// Determinant of a 3x3 matrix.
pub fn det3(a: &IntMatrix) -> Result<BigInt> {
    if a.rows() != 3 || a.cols() != 3 {
        return Err(Error::Dimension(format!(
            "det3 of a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    det(a)
}

/// The closed subgroup `{x in R^n / Z^n : M x in Z^m}`: an identity component
/// spanned by `free_directions`, and one coset representative per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSubgroup {
    pub defining: IntMatrix,
    /// Primitive integer directions spanning the identity component.
    pub free_directions: Vec<RatVec>,
    /// Component representatives, reduced into `[0, 1)` and sorted.
    pub torsion_reps: Vec<RatVec>,
}

impl TorusSubgroup {
    pub fn dim(&self) -> usize {
        self.free_directions.len()
    }

    /// Exact membership test `M x in Z^m`.
    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.defining.apply(x).iter().all(BigRational::is_integer)
    }
}

/// Solves `M x in Z^rows` over the torus `R^cols / Z^cols`.
pub fn solve_torus(m: &IntMatrix) -> Result<TorusSubgroup> {
    if m.rows() == 0 || m.cols() == 0 {
        return Err(Error::Dimension(
            "solve_torus needs a nonempty matrix".into(),
        ));
    }
    let n = m.cols();
    let res = snf(m);
    let diag = res.diagonal();
    let rank = res.rank();

    // x = V y; y_i in (1/d_i) Z for the nonzero divisors, free otherwise.
    let mut free_directions: Vec<RatVec> = (rank..n)
        .map(|c| {
            let mut dir = res.v.column(c);
            if dir
                .iter()
                .find(|e| !e.is_zero())
                .is_some_and(|e| e.is_negative())
            {
                dir.iter_mut().for_each(|e| *e = -&*e);
            }
            dir.into_iter().map(BigRational::from_integer).collect()
        })
        .collect();
    free_directions.sort();

    let mut reps: Vec<RatVec> = vec![vec![BigRational::zero(); n]];
    for (c, dc) in diag.iter().enumerate().take(rank) {
        if dc.is_one() {
            continue;
        }
        let col: Vec<BigRational> = res
            .v
            .column(c)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let steps: Vec<BigInt> = num_iter(dc);
        let mut next = Vec::with_capacity(reps.len() * steps.len());
        for rep in &reps {
            for t in &steps {
                let s = BigRational::new(t.clone(), dc.clone());
                let x: RatVec = rep.iter().zip(&col).map(|(r, v)| r + &s * v).collect();
                next.push(x);
            }
        }
        reps = next;
    }
    let mut torsion_reps: Vec<RatVec> = reps.into_iter().map(|x| reduce_mod_one(&x)).collect();
    torsion_reps.sort();
    torsion_reps.dedup();

    Ok(TorusSubgroup {
        defining: m.clone(),
        free_directions,
        torsion_reps,
    })
}

fn num_iter(d: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut t = BigInt::zero();
    while &t < d {
        out.push(t.clone());
        t += 1;
    }
    out
}

/// Reduces each coordinate into `[0, 1)`.
pub fn reduce_mod_one(x: &[BigRational]) -> RatVec {
    x.iter().map(frac).collect()
}

/// Fractional part in `[0, 1)`.
pub fn frac(q: &BigRational) -> BigRational {
    q - q.floor()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// `(a, b, ...)` with each entry as `p/q`.
pub fn fmt_ratvec(x: &[BigRational]) -> String {
    let parts: Vec<String> = x.iter().map(|q| q.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divisors(a: &IntMatrix) -> Vec<i64> {
        snf(a)
            .diagonal()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    fn check_snf(a: &IntMatrix) {
        let r = snf(a);
        assert_eq!(r.u.mul(a).mul(&r.v), r.d, "U A V = D for {a}");
        assert_eq!(
            r.u_inv.mul(&r.d).mul(&r.v_inv),
            *a,
            "reconstruction for {a}"
        );
        assert_eq!(r.u.mul(&r.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(r.v.mul(&r.v_inv), IntMatrix::identity(a.cols()));
        for i in 0..r.d.rows() {
            for j in 0..r.d.cols() {
                if i != j {
                    assert!(r.d[(i, j)].is_zero());
                }
            }
        }
        let diag = r.diagonal();
        for w in diag.windows(2) {
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zeros trail in {diag:?}");
            } else {
                assert!(w[1].is_multiple_of(&w[0]), "divisibility chain in {diag:?}");
            }
        }
    }

    #[test]
    fn snf_examples() {
        let n6 = IntMatrix::from_rows(&[[2, 0, -1], [0, -1, 2], [1, -1, 2]]);
        assert_eq!(divisors(&n6), vec![1, 1, 1]);
        check_snf(&n6);
        assert_eq!(divisors(&IntMatrix::identity(3)), vec![1, 1, 1]);
        // gcd of entries is 1 and |det| = 2
        let a = IntMatrix::from_rows(&[[2, 3], [4, 5]]);
        assert_eq!(divisors(&a), vec![1, 2]);
        check_snf(&a);
    }

    #[test]
    fn snf_rectangular_and_degenerate() {
        for a in [
            IntMatrix::from_rows(&[[2, 0], [0, 0], [0, 0]]),
            IntMatrix::from_rows(&[[0, 0], [0, 0]]),
            IntMatrix::from_rows(&[[6, 4, 2], [4, 6, 8]]),
            IntMatrix::from_rows(&[[2, 4], [6, 8], [10, 14]]),
            IntMatrix::from_rows(&[[0, 3], [0, 0], [5, 0]]),
        ] {
            check_snf(&a);
        }
        // gcd of entries 2, gcd of 2x2 minors (20, 40, 20) is 20
        assert_eq!(
            divisors(&IntMatrix::from_rows(&[[6, 4, 2], [4, 6, 8]])),
            vec![2, 10]
        );
        assert_eq!(
            divisors(&IntMatrix::from_rows(&[[0, 3], [0, 0], [5, 0]])),
            vec![1, 15]
        );
    }

    #[test]
    fn det_examples() {
        let n6 = IntMatrix::from_rows(&[[2, 0, -1], [0, -1, 2], [1, -1, 2]]);
        assert_eq!(det3(&n6).unwrap(), BigInt::from(-1));
        assert_eq!(det3(&IntMatrix::identity(3)).unwrap(), BigInt::one());
        let a = IntMatrix::from_rows(&[[0, 1, 0], [1, 0, 0], [0, 0, 5]]);
        assert_eq!(det3(&a).unwrap(), BigInt::from(-5));
        assert!(det3(&IntMatrix::identity(2)).is_err());
    }

    #[test]
    fn solve_torus_examples() {
        let h = solve_torus(&IntMatrix::identity(2)).unwrap();
        assert!(h.free_directions.is_empty());
        assert_eq!(h.torsion_reps, vec![vec![rat(0, 1), rat(0, 1)]]);

        let h = solve_torus(&IntMatrix::from_rows(&[[2, 0]])).unwrap();
        assert_eq!(h.free_directions, vec![vec![rat(0, 1), rat(1, 1)]]);
        assert_eq!(
            h.torsion_reps,
            vec![vec![rat(0, 1), rat(0, 1)], vec![rat(1, 2), rat(0, 1)]]
        );

        let h = solve_torus(&IntMatrix::from_rows(&[[1, -2]])).unwrap();
        assert_eq!(h.free_directions, vec![vec![rat(2, 1), rat(1, 1)]]);
        assert_eq!(h.torsion_reps.len(), 1);

        let h = solve_torus(&IntMatrix::zeros(3, 2)).unwrap();
        assert_eq!(h.dim(), 2);
        assert_eq!(h.torsion_reps.len(), 1);
    }

    #[test]
    fn solve_torus_matches_grid_oracle() {
        // Grid oracle over 720^2 points for M = [[1, -2]]: the solutions are
        // exactly x1 = 2 x2 mod 1, i.e. the line through 0 in direction (2, 1).
        let n = 720i64;
        let m = IntMatrix::from_rows(&[[1, -2]]);
        let h = solve_torus(&m).unwrap();
        let mut count = 0;
        for i in 0..n {
            for j in 0..n {
                if (i - 2 * j).rem_euclid(n) == 0 {
                    count += 1;
                    let x = vec![rat(i, n), rat(j, n)];
                    assert!(h.contains(&x));
                    // x = rep + s * dir with s = x2
                    let dir = &h.free_directions[0];
                    let s = rat(j, n);
                    let back: RatVec = dir.iter().map(|d| d * &s).collect();
                    assert_eq!(reduce_mod_one(&back), x);
                }
            }
        }
        assert_eq!(count, n);
    }

    #[test]
    fn torsion_count_is_divisor_product() {
        let m = IntMatrix::from_rows(&[[3, 1], [1, -2], [0, 5]]);
        let h = solve_torus(&m).unwrap();
        let prod: BigInt = snf(&m).diagonal().iter().filter(|d| !d.is_zero()).product();
        assert_eq!(BigInt::from(h.torsion_reps.len()), prod);
        for x in &h.torsion_reps {
            assert!(h.contains(x));
        }
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("1/2"), Some(rat(1, 2)));
        assert_eq!(parse_rational(" -3 "), Some(rat(-3, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}

//! Zero-curvature planes of the doubled Cheeger metric on `Sp(3)//U`.
//!
//! `Sp(3)` carries the Cheeger deformation `g_1` toward `K = Sp(1) x Sp(2)`,
//! and the biquotient inherits the submersion metric of `(G x G, g_1 + g_1)`.
//! At the point `[p^{-1}]` a plane spanned by horizontal `X, Y` is flat iff
//!
//! * `g0(X, Ad_p u_1 - u_2) = g0(Y, Ad_p u_1 - u_2) = 0` for all `(u_1, u_2)`,
//! * `[X, Y] = [X_k, Y_k] = [X_p, Y_p] = 0`,
//! * the `k` and `p` brackets of `Ad_{p^{-1}} X`, `Ad_{p^{-1}} Y` vanish.
//!
//! The first condition defines the horizontal space; the remaining five
//! brackets are folded into a nonnegative defect whose minimum over
//! orthonormal horizontal pairs vanishes exactly when a flat plane exists.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hlinalg::{
    bracket, from_coords, g0, g0_norm_sqr, k_part, p_part, rotation_point, sp3_basis, to_coords,
    HMatrix, Quaternion, SP3_DIM,
};
use crate::reps::{phi3_algebra, BiquotientSpec};

/// Dimension of `sp(3)` minus that of `u`.
pub const HORIZONTAL_DIM: usize = SP3_DIM - 6;

/// Cheeger parameter and verdict thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricConfig {
    pub t: f64,
    /// Minimum defect counted as positive curvature.
    pub positive_threshold: f64,
    /// Maximum defect counted as a flat plane.
    pub zero_threshold: f64,
}

impl Default for MetricConfig {
    fn default() -> Self {
        Self {
            t: 1.0,
            positive_threshold: 1e-6,
            zero_threshold: 1e-10,
        }
    }
}

impl MetricConfig {
    /// `t / (t + 1)`, the factor applied to `k`-components.
    pub fn phi_scale(&self) -> f64 {
        self.t / (self.t + 1.0)
    }

    /// `Phi(Y) = Y_p + t/(t+1) Y_k`, so that `g_1(X, Y) = g0(X, Phi Y)`.
    pub fn phi(&self, y: &HMatrix) -> HMatrix {
        p_part(y) + k_part(y).scale(self.phi_scale())
    }

    pub fn phi_inv(&self, y: &HMatrix) -> HMatrix {
        p_part(y) + k_part(y).scale(1.0 / self.phi_scale())
    }

    pub fn g1(&self, x: &HMatrix, y: &HMatrix) -> f64 {
        g0(x, &self.phi(y))
    }

    pub fn classify(&self, value: f64) -> CurvatureVerdict {
        if value >= self.positive_threshold {
            CurvatureVerdict::Positive
        } else if value <= self.zero_threshold {
            CurvatureVerdict::ZeroPlane
        } else {
            CurvatureVerdict::Inconclusive
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurvatureVerdict {
    Positive,
    ZeroPlane,
    Inconclusive,
}

impl std::fmt::Display for CurvatureVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CurvatureVerdict::Positive => "positive",
            CurvatureVerdict::ZeroPlane => "zero plane",
            CurvatureVerdict::Inconclusive => "inconclusive",
        })
    }
}

/// How one slot (or pair of slots) of a block-diagonal image is filled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Block {
    Trivial(usize),
    /// Fundamental representation of coordinate `coord` (0 = z, 1 = w).
    Fundamental {
        slot: usize,
        coord: usize,
    },
    /// `phi_3` of coordinate `coord` in slots `(slot, slot + 1)`.
    Phi3 {
        slot: usize,
        coord: usize,
    },
}

fn parse_blocks(name: &str, rows: &[[i64; 2]; 3]) -> Result<Vec<Block>> {
    let unsupported = |reason: String| Error::UnsupportedEmbedding {
        name: name.to_string(),
        reason,
    };
    let mut blocks: Vec<Block> = Vec::new();
    for (slot, r) in rows.iter().enumerate() {
        match (r[0].abs(), r[1].abs()) {
            (0, 0) => blocks.push(Block::Trivial(slot)),
            (1, 0) => blocks.push(Block::Fundamental { slot, coord: 0 }),
            (0, 1) => blocks.push(Block::Fundamental { slot, coord: 1 }),
            (3, 0) | (0, 3) => {
                let coord = usize::from(r[0] == 0);
                match blocks.pop() {
                    Some(Block::Fundamental { slot: s, coord: c }) if c == coord => {
                        blocks.push(Block::Phi3 { slot: s, coord });
                    }
                    _ => {
                        return Err(unsupported(format!(
                            "weight 3 in slot {} is not preceded by its weight-1 partner",
                            slot + 1
                        )))
                    }
                }
            }
            _ => {
                return Err(unsupported(format!(
                    "torus row ({}, {}) is not a sum of phi_1 and phi_3 blocks",
                    r[0], r[1]
                )))
            }
        }
    }
    Ok(blocks)
}

fn block_image(blocks: &[Block], t: [Quaternion; 2]) -> HMatrix {
    let mut m = HMatrix::zero();
    for b in blocks {
        match *b {
            Block::Trivial(_) => {}
            Block::Fundamental { slot, coord } => m.entries[slot][slot] = t[coord],
            Block::Phi3 { slot, coord } => {
                let small = phi3_algebra(t[coord]);
                for a in 0..2 {
                    for c in 0..2 {
                        m.entries[slot + a][slot + c] = small.entries[a][c];
                    }
                }
            }
        }
    }
    m
}

fn block_in_k(blocks: &[Block]) -> bool {
    blocks
        .iter()
        .all(|b| !matches!(b, Block::Phi3 { slot: 0, .. }))
}

/// The Lie algebra `u` of a spec as six pairs `(u_1, u_2)` in `sp(3) + sp(3)`:
/// `{i, j, k}` in the `z` factor, then `{i, j, k}` in the `w` factor.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraPair {
    pub name: String,
    pub basis: Vec<(HMatrix, HMatrix)>,
    /// Whether `u` lies in `k + k`, so that the doubled metric is invariant.
    pub in_k: bool,
}

impl LieAlgebraPair {
    /// Builds `u` from the torus rows: `z^{+-1}`, `w^{+-1}` entries become
    /// fundamental slots and an adjacent weight-1/weight-3 pair in the same
    /// variable becomes a `phi_3` block.
    pub fn from_spec(spec: &BiquotientSpec) -> Result<Self> {
        let left = parse_blocks(&spec.name, &spec.left.rows)?;
        let right = parse_blocks(&spec.name, &spec.right.rows)?;
        let mut basis = Vec::with_capacity(6);
        for coord in 0..2 {
            for u in [Quaternion::I, Quaternion::J, Quaternion::K] {
                let mut t = [Quaternion::ZERO; 2];
                t[coord] = u;
                basis.push((block_image(&left, t), block_image(&right, t)));
            }
        }
        Ok(Self {
            name: spec.name.clone(),
            basis,
            in_k: block_in_k(&left) && block_in_k(&right),
        })
    }

    /// `Ad_p u_1 - u_2` for each basis pair.
    pub fn constraints(&self, p: &HMatrix) -> Vec<HMatrix> {
        self.basis.iter().map(|(u1, u2)| ad(p, u1) - *u2).collect()
    }
}

/// `Ad_p X = p X p^H`.
fn ad(p: &HMatrix, x: &HMatrix) -> HMatrix {
    *p * *x * p.adjoint()
}

/// `Ad_{p^{-1}} X = p^H X p`.
fn ad_inv(p: &HMatrix, x: &HMatrix) -> HMatrix {
    p.adjoint() * *x * *p
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Modified Gram-Schmidt against an orthonormal list; returns the normalized
/// residual when its norm exceeds `tol`.
fn orthonormalize_against(v: &[f64], basis: &[Vec<f64>], tol: f64) -> Option<Vec<f64>> {
    let mut w = v.to_vec();
    for _ in 0..2 {
        for b in basis {
            let c = dot(&w, b);
            w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
    }
    let n = dot(&w, &w).sqrt();
    (n > tol).then(|| w.into_iter().map(|x| x / n).collect())
}

/// g0-orthonormal basis of the horizontal space at `p`: the orthogonal
/// complement of `{Ad_p u_1 - u_2}` in `sp(3)`. Errors if the constraints
/// span fewer than six dimensions.
pub fn horizontal_space(pair: &LieAlgebraPair, p: &HMatrix) -> Result<Vec<HMatrix>> {
    let mut span: Vec<Vec<f64>> = Vec::new();
    for c in pair.constraints(p) {
        if let Some(v) = orthonormalize_against(&to_coords(&c), &span, 1e-10) {
            span.push(v);
        }
    }
    if span.len() < 6 {
        return Err(Error::DegenerateHorizontal {
            dim: SP3_DIM - span.len(),
        });
    }
    let mut all = span.clone();
    let mut out = Vec::with_capacity(HORIZONTAL_DIM);
    for e in 0..SP3_DIM {
        let mut unit = vec![0.0; SP3_DIM];
        unit[e] = 1.0;
        if let Some(v) = orthonormalize_against(&unit, &all, 1e-8) {
            out.push(from_coords(&v));
            all.push(v);
        }
    }
    Ok(out)
}

/// The five brackets whose vanishing characterizes a flat plane.
fn brackets(p: &HMatrix, x: &HMatrix, y: &HMatrix) -> [HMatrix; 5] {
    let (a, b) = (ad_inv(p, x), ad_inv(p, y));
    [
        bracket(x, y),
        bracket(&k_part(x), &k_part(y)),
        bracket(&p_part(x), &p_part(y)),
        bracket(&k_part(&a), &k_part(&b)),
        bracket(&p_part(&a), &p_part(&b)),
    ]
}

/// Sum of the squared g0-norms of the five brackets, without normalization.
pub fn raw_defect(p: &HMatrix, x: &HMatrix, y: &HMatrix) -> f64 {
    brackets(p, x, y).iter().map(g0_norm_sqr).sum()
}

/// Gradient of [`raw_defect`] with respect to `X` and `Y`, as elements of
/// `sp(3)` under g0. Uses `g0([Z, X], Y) = -g0(X, [Z, Y])`.
pub fn raw_defect_gradient(p: &HMatrix, x: &HMatrix, y: &HMatrix) -> (HMatrix, HMatrix) {
    let (a, b) = (ad_inv(p, x), ad_inv(p, y));
    let (xk, xp, yk, yp) = (k_part(x), p_part(x), k_part(y), p_part(y));
    let (ak, ap, bk, bp) = (k_part(&a), p_part(&a), k_part(&b), p_part(&b));
    let t = [
        bracket(x, y),
        bracket(&xk, &yk),
        bracket(&xp, &yp),
        bracket(&ak, &bk),
        bracket(&ap, &bp),
    ];
    let gx = bracket(y, &t[0])
        + k_part(&bracket(&yk, &t[1]))
        + p_part(&bracket(&yp, &t[2]))
        + ad(p, &k_part(&bracket(&bk, &t[3])))
        + ad(p, &p_part(&bracket(&bp, &t[4])));
    let gy = bracket(x, &t[0])
        + k_part(&bracket(&xk, &t[1]))
        + p_part(&bracket(&xp, &t[2]))
        + ad(p, &k_part(&bracket(&ak, &t[3])))
        + ad(p, &p_part(&bracket(&ap, &t[4])));
    (gx.scale(2.0), gy.scale(-2.0))
}

/// A candidate plane and its defect.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroPlaneDefect {
    pub x: HMatrix,
    pub y: HMatrix,
    /// Defect of the g0-orthonormalized pair; `+inf` when `X, Y` are
    /// dependent.
    pub value: f64,
    /// Gram determinant `|X|^2 |Y|^2 - g0(X, Y)^2` of the input pair.
    pub gram_det: f64,
}

impl ZeroPlaneDefect {
    pub fn is_plane(&self) -> bool {
        self.value.is_finite()
    }
}

/// Defect of the plane `span{X, Y}` at `p`, on a g0-orthonormal basis of it.
pub fn defect(p: &HMatrix, x: &HMatrix, y: &HMatrix) -> ZeroPlaneDefect {
    let (xx, yy, xy) = (g0(x, x), g0(y, y), g0(x, y));
    let gram_det = xx * yy - xy * xy;
    let scale = xx.max(yy).max(f64::MIN_POSITIVE);
    if gram_det <= 1e-20 * scale * scale {
        return ZeroPlaneDefect {
            x: *x,
            y: *y,
            value: f64::INFINITY,
            gram_det,
        };
    }
    let e1 = x.scale(1.0 / xx.sqrt());
    let y_perp = *y - e1.scale(g0(y, &e1));
    let e2 = y_perp.scale(1.0 / g0_norm_sqr(&y_perp).sqrt());
    ZeroPlaneDefect {
        x: *x,
        y: *y,
        value: raw_defect(p, &e1, &e2),
        gram_det,
    }
}

/// The constructed flat plane for `N4` at `theta = pi/2`: `X = i E_22`,
/// `Y = j E_13 - j E_31`.
pub fn n4_zero_pair() -> (HMatrix, HMatrix) {
    (
        HMatrix::skew(1, 1, Quaternion::I),
        HMatrix::skew(0, 2, Quaternion::J),
    )
}

/// Gradient evaluation mode for the optimizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GradientMode {
    Analytic,
    /// Central differences with the given step.
    Numerical,
}

/// Optimizer settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub seed: u64,
    pub max_iterations: usize,
    pub relative_tolerance: f64,
    pub gradient: GradientMode,
    pub numerical_step: f64,
    /// Levenberg-Marquardt steps after descent; 0 disables the polish.
    pub polish_iterations: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            seed: 42,
            max_iterations: 5000,
            relative_tolerance: 1e-14,
            gradient: GradientMode::Analytic,
            numerical_step: 1e-6,
            polish_iterations: 50,
        }
    }
}

/// The defect as a function on pairs of horizontal coordinate vectors.
struct Objective<'a> {
    p: HMatrix,
    basis: &'a [HMatrix],
}

impl Objective<'_> {
    fn combine(&self, c: &[f64]) -> HMatrix {
        c.iter()
            .zip(self.basis)
            .fold(HMatrix::zero(), |acc, (s, h)| acc + h.scale(*s))
    }

    /// The five brackets in `sp(3)` coordinates; their squared norm is the
    /// defect since the coordinates are g0-orthonormal.
    fn residuals(&self, x: &HMatrix, y: &HMatrix) -> Vec<f64> {
        brackets(&self.p, x, y).iter().flat_map(to_coords).collect()
    }

    fn value(&self, a: &[f64], b: &[f64]) -> f64 {
        raw_defect(&self.p, &self.combine(a), &self.combine(b))
    }

    fn gradient(&self, a: &[f64], b: &[f64], mode: GradientMode, h: f64) -> (Vec<f64>, Vec<f64>) {
        match mode {
            GradientMode::Analytic => {
                let (gx, gy) = raw_defect_gradient(&self.p, &self.combine(a), &self.combine(b));
                (
                    self.basis.iter().map(|e| g0(&gx, e)).collect(),
                    self.basis.iter().map(|e| g0(&gy, e)).collect(),
                )
            }
            GradientMode::Numerical => {
                let partial = |which: usize, i: usize| {
                    let (mut ap, mut bp) = (a.to_vec(), b.to_vec());
                    let (mut am, mut bm) = (a.to_vec(), b.to_vec());
                    if which == 0 {
                        ap[i] += h;
                        am[i] -= h;
                    } else {
                        bp[i] += h;
                        bm[i] -= h;
                    }
                    (self.value(&ap, &bp) - self.value(&am, &bm)) / (2.0 * h)
                };
                (
                    (0..a.len()).map(|i| partial(0, i)).collect(),
                    (0..b.len()).map(|i| partial(1, i)).collect(),
                )
            }
        }
    }
}

/// Gradient of the defect in horizontal coordinates, exposed for testing.
pub fn coordinate_gradient(
    p: &HMatrix,
    basis: &[HMatrix],
    a: &[f64],
    b: &[f64],
    mode: GradientMode,
    h: f64,
) -> (Vec<f64>, Vec<f64>) {
    Objective { p: *p, basis }.gradient(a, b, mode, h)
}

/// Orthonormalizes two columns in place; false if they are dependent.
fn qr_pair(a: &mut [f64], b: &mut [f64]) -> bool {
    let na = dot(a, a).sqrt();
    if na < 1e-14 {
        return false;
    }
    a.iter_mut().for_each(|x| *x /= na);
    for _ in 0..2 {
        let c = dot(a, b);
        b.iter_mut().zip(a.iter()).for_each(|(y, x)| *y -= c * x);
    }
    let nb = dot(b, b).sqrt();
    if nb < 1e-14 {
        return false;
    }
    b.iter_mut().for_each(|x| *x /= nb);
    true
}

/// Levenberg-Marquardt refinement of an orthonormal pair. The brackets are
/// bilinear, so each Jacobian column is a bracket with a basis element.
/// Steps are re-orthonormalized and kept only when the defect decreases,
/// which converges quadratically onto a flat plane where descent crawls.
fn polish(obj: &Objective<'_>, run: &mut RunResult, iterations: usize) {
    let n = obj.basis.len();
    let mut lambda = 1e-3;
    for _ in 0..iterations {
        if run.value < 1e-30 {
            break;
        }
        let (x, y) = (obj.combine(&run.a), obj.combine(&run.b));
        let r = DVector::from_vec(obj.residuals(&x, &y));
        let mut cols: Vec<Vec<f64>> = Vec::with_capacity(2 * n + 3);
        for h in obj.basis {
            cols.push(obj.residuals(h, &y));
        }
        for h in obj.basis {
            cols.push(obj.residuals(&x, h));
        }
        let mut j = DMatrix::from_fn(r.len() + 3, 2 * n, |row, col| {
            cols[col].get(row).copied().unwrap_or(0.0)
        });
        // Rows penalizing motion off the Stiefel manifold to first order.
        let m = r.len();
        for i in 0..n {
            j[(m, i)] = 2.0 * run.a[i];
            j[(m + 1, n + i)] = 2.0 * run.b[i];
            j[(m + 2, i)] = run.b[i];
            j[(m + 2, n + i)] = run.a[i];
        }
        let r = r.push(0.0).push(0.0).push(0.0);
        let jt = j.transpose();
        let jtj = &jt * &j;
        let g = &jt * &r;
        let mut improved = false;
        while lambda < 1e12 {
            let mut lhs = jtj.clone();
            let shift = lambda * (1.0 + jtj.diagonal().max());
            for i in 0..2 * n {
                lhs[(i, i)] += shift;
            }
            let Some(step) = lhs.cholesky().map(|c| c.solve(&(-&g))) else {
                lambda *= 10.0;
                continue;
            };
            let mut na: Vec<f64> = (0..n).map(|i| run.a[i] + step[i]).collect();
            let mut nb: Vec<f64> = (0..n).map(|i| run.b[i] + step[n + i]).collect();
            if qr_pair(&mut na, &mut nb) {
                let nf = obj.value(&na, &nb);
                if nf < run.value {
                    run.a = na;
                    run.b = nb;
                    run.value = nf;
                    lambda = (lambda * 0.1).max(1e-15);
                    improved = true;
                    break;
                }
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    if run.value < 1e-30 {
        run.converged = true;
    }
}

/// Outcome of one restart.
#[derive(Clone, Debug, PartialEq)]
struct RunResult {
    value: f64,
    a: Vec<f64>,
    b: Vec<f64>,
    iterations: usize,
    converged: bool,
}

fn descend(obj: &Objective<'_>, cfg: &OptimizerConfig, seed: u64, restart: u64) -> RunResult {
    let n = obj.basis.len();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(restart);
    let (mut a, mut b): (Vec<f64>, Vec<f64>) = loop {
        let mut a: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let mut b: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        if qr_pair(&mut a, &mut b) {
            break (a, b);
        }
    };
    let mut f = obj.value(&a, &b);
    let mut step = 1.0;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < cfg.max_iterations {
        iterations += 1;
        if f < 1e-30 {
            converged = true;
            break;
        }
        let (ga, gb) = obj.gradient(&a, &b, cfg.gradient, cfg.numerical_step);
        // Project onto the tangent space of the Stiefel manifold: G - W sym(W^T G).
        let (aa, ab, ba, bb) = (dot(&a, &ga), dot(&a, &gb), dot(&b, &ga), dot(&b, &gb));
        let off = 0.5 * (ab + ba);
        let ra: Vec<f64> = (0..n).map(|i| ga[i] - a[i] * aa - b[i] * off).collect();
        let rb: Vec<f64> = (0..n).map(|i| gb[i] - a[i] * off - b[i] * bb).collect();
        let gnorm2 = dot(&ra, &ra) + dot(&rb, &rb);
        if gnorm2 < 1e-32 {
            converged = true;
            break;
        }
        let mut accepted = None;
        while step > 1e-20 {
            let mut na: Vec<f64> = (0..n).map(|i| a[i] - step * ra[i]).collect();
            let mut nb: Vec<f64> = (0..n).map(|i| b[i] - step * rb[i]).collect();
            if qr_pair(&mut na, &mut nb) {
                let nf = obj.value(&na, &nb);
                if nf <= f - 1e-4 * step * gnorm2 {
                    accepted = Some((na, nb, nf));
                    break;
                }
            }
            step *= 0.5;
        }
        let Some((na, nb, nf)) = accepted else {
            converged = true;
            break;
        };
        let decrease = (f - nf) / f.max(f64::MIN_POSITIVE);
        a = na;
        b = nb;
        f = nf;
        step *= 2.0;
        if decrease < cfg.relative_tolerance {
            converged = true;
            break;
        }
    }
    RunResult {
        value: f,
        a,
        b,
        iterations,
        converged,
    }
}

/// Result of the multi-start minimization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinDefect {
    pub spec: String,
    pub theta: f64,
    pub min_defect: f64,
    pub verdict: CurvatureVerdict,
    pub converged: bool,
    /// Restart that produced the minimum.
    pub best_restart: usize,
    pub iterations: usize,
    pub horizontal_dim: usize,
    /// Gram determinant of the minimizing pair (1 for an orthonormal pair).
    pub gram_det: f64,
    pub argmin: ArgminPair,
}

/// Minimizing pair in the fixed `sp(3)` coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArgminPair {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

/// Minimizes the defect over orthonormal horizontal pairs at `p(theta)`.
/// Restarts run in parallel; the minimum is taken with ties broken by the
/// lower restart index, so the result only depends on the seed.
pub fn min_defect(
    spec: &BiquotientSpec,
    theta: f64,
    opt: &OptimizerConfig,
    metric: &MetricConfig,
) -> Result<MinDefect> {
    if opt.restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be at least 1".into()));
    }
    let pair = LieAlgebraPair::from_spec(spec)?;
    let p = rotation_point(theta);
    let basis = horizontal_space(&pair, &p)?;
    let obj = Objective { p, basis: &basis };
    let runs: Vec<RunResult> = (0..opt.restarts as u64)
        .into_par_iter()
        .map(|r| {
            let mut run = descend(&obj, opt, opt.seed, r);
            polish(&obj, &mut run, opt.polish_iterations);
            run
        })
        .collect();
    let (best_restart, best) = runs
        .iter()
        .enumerate()
        .min_by(|(i, x), (j, y)| x.value.total_cmp(&y.value).then(i.cmp(j)))
        .expect("at least one restart");
    let (x, y) = (obj.combine(&best.a), obj.combine(&best.b));
    let d = defect(&p, &x, &y);
    Ok(MinDefect {
        spec: spec.name.clone(),
        theta,
        min_defect: best.value,
        verdict: metric.classify(best.value),
        converged: best.converged,
        best_restart,
        iterations: best.iterations,
        horizontal_dim: basis.len(),
        gram_det: d.gram_det,
        argmin: ArgminPair {
            x: to_coords(&x).to_vec(),
            y: to_coords(&y).to_vec(),
        },
    })
}

/// `min_defect` at each angle.
pub fn theta_scan(
    spec: &BiquotientSpec,
    thetas: &[f64],
    opt: &OptimizerConfig,
    metric: &MetricConfig,
) -> Result<Vec<MinDefect>> {
    thetas
        .iter()
        .map(|&t| min_defect(spec, t, opt, metric))
        .collect()
}

/// CSV rendering of scan rows: `spec,theta,min_defect,verdict,converged`.
pub fn scan_csv(rows: &[MinDefect]) -> String {
    let mut out = String::from("spec,theta,min_defect,verdict,converged\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{:e},{},{}\n",
            r.spec, r.theta, r.min_defect, r.verdict, r.converged
        ));
    }
    out
}

/// The element of the orthonormal `sp(3)` basis with index `n`, as a helper
/// for callers that work in coordinates.
pub fn basis_element(n: usize) -> HMatrix {
    sp3_basis()[n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use std::f64::consts::FRAC_PI_2;

    fn spec(name: &str) -> BiquotientSpec {
        lookup(name).unwrap().spec.clone()
    }

    #[test]
    fn embeddings_parse_for_curvature_family() {
        for name in crate::catalog::CURVATURE_NAMES {
            let pair = LieAlgebraPair::from_spec(&spec(name)).unwrap();
            assert!(pair.in_k, "{name}");
            assert_eq!(pair.basis.len(), 6);
        }
        assert!(!LieAlgebraPair::from_spec(&spec("N9")).unwrap().in_k);
        assert!(matches!(
            LieAlgebraPair::from_spec(&spec("O1")),
            Err(Error::UnsupportedEmbedding { .. })
        ));
    }

    #[test]
    fn n4_algebra_matches_group_description() {
        let pair = LieAlgebraPair::from_spec(&spec("N4")).unwrap();
        let (u1, u2) = pair.basis[0];
        assert_eq!(u1, HMatrix::diag([Quaternion::I; 3]));
        assert_eq!(
            u2,
            HMatrix::diag([Quaternion::ZERO, Quaternion::I, Quaternion::ZERO])
        );
        let (_, u2) = pair.basis[3];
        assert_eq!(
            u2,
            HMatrix::diag([Quaternion::ZERO, Quaternion::ZERO, Quaternion::I])
        );
    }

    #[test]
    fn n2_horizontal_dimension_at_identity() {
        let pair = LieAlgebraPair::from_spec(&spec("N2")).unwrap();
        let h = horizontal_space(&pair, &HMatrix::identity()).unwrap();
        assert_eq!(h.len(), 15);
        for x in &h {
            for c in pair.constraints(&HMatrix::identity()) {
                assert!(g0(x, &c).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn constructed_zero_plane() {
        let p = rotation_point(FRAC_PI_2);
        let (x, y) = n4_zero_pair();
        let pair = LieAlgebraPair::from_spec(&spec("N4")).unwrap();
        for c in pair.constraints(&p) {
            assert!(g0(&x, &c).abs() < 1e-15);
            assert!(g0(&y, &c).abs() < 1e-15);
        }
        let d = defect(&p, &x, &y);
        assert!(d.value < 1e-24, "{}", d.value);
        assert!(!defect(&p, &x, &x).is_plane());
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let p = rotation_point(0.7);
        let pair = LieAlgebraPair::from_spec(&spec("N6")).unwrap();
        let basis = horizontal_space(&pair, &p).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let a: Vec<f64> = (0..15).map(|_| rng.sample(StandardNormal)).collect();
        let b: Vec<f64> = (0..15).map(|_| rng.sample(StandardNormal)).collect();
        let (ga, gb) = coordinate_gradient(&p, &basis, &a, &b, GradientMode::Analytic, 0.0);
        let (na, nb) = coordinate_gradient(&p, &basis, &a, &b, GradientMode::Numerical, 1e-5);
        let err: f64 = ga
            .iter()
            .zip(&na)
            .chain(gb.iter().zip(&nb))
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        let scale: f64 = ga.iter().chain(&gb).map(|x| x.abs()).fold(0.0, f64::max);
        assert!(err < 1e-6 * scale.max(1.0), "err {err} scale {scale}");
    }

    #[test]
    fn metric_phi_roundtrip() {
        let m = MetricConfig::default();
        assert_eq!(m.phi_scale(), 0.5);
        let x = HMatrix::skew(0, 1, Quaternion::new(1.0, 2.0, 0.0, -1.0))
            + HMatrix::skew(2, 2, Quaternion::K);
        assert!((m.phi_inv(&m.phi(&x)) - x).max_abs() < 1e-15);
        let y = HMatrix::skew(1, 2, Quaternion::J) + HMatrix::skew(0, 2, Quaternion::I);
        assert!((m.g1(&x, &y) - m.g1(&y, &x)).abs() < 1e-15);
    }
}

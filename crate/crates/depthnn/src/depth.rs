//! Statistical depth functions and depth regions.
//!
//! Four depths are provided: halfspace (Tukey), simplicial (Liu),
//! Mahalanobis and projection depth. Halfspace depth is exact for d = 1
//! (order statistics) and d = 2 (angular sweep); for d >= 3 it is
//! approximated by a minimum over a deterministic direction set, which makes
//! the reported value an upper bound on the true depth. Simplicial depth is
//! enumerated exactly while the number of simplices stays within
//! `max_enumeration` and falls back to Monte Carlo over vertex subsets
//! otherwise.

use nalgebra::{DMatrix, DVector};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rng::RngSeed;
use crate::sample::Point;

/// Which depth function to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DepthKind {
    Halfspace,
    Simplicial,
    Mahalanobis,
    Projection,
}

impl std::fmt::Display for DepthKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DepthKind::Halfspace => "halfspace",
            DepthKind::Simplicial => "simplicial",
            DepthKind::Mahalanobis => "mahalanobis",
            DepthKind::Projection => "projection",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for DepthKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "halfspace" => Ok(DepthKind::Halfspace),
            "simplicial" => Ok(DepthKind::Simplicial),
            "mahalanobis" => Ok(DepthKind::Mahalanobis),
            "projection" => Ok(DepthKind::Projection),
            other => Err(Error::InvalidInput(format!("unknown depth kind `{other}`"))),
        }
    }
}

/// A depth function together with its algorithmic parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepthSpec {
    pub kind: DepthKind,
    /// Direction count for the approximate modes (halfspace d >= 3,
    /// projection d >= 2). Must be >= 100 when used.
    pub directions: usize,
    /// Simplicial depth switches from exact enumeration to Monte Carlo when
    /// the number of simplices exceeds this cap; the cap is then also the
    /// Monte Carlo budget.
    pub max_enumeration: usize,
    /// Whether approximate halfspace depth augments the direction set with
    /// the normalized point-to-query vectors. Sharpens one-off evaluations;
    /// bulk orderings may disable it for tractability.
    pub point_directions: bool,
    /// Seed for the simplicial Monte Carlo vertex subsets.
    pub mc_seed: RngSeed,
}

impl DepthSpec {
    pub fn new(kind: DepthKind) -> Self {
        Self {
            kind,
            directions: 500,
            max_enumeration: 20_000,
            point_directions: true,
            mc_seed: RngSeed::new(0x5EED_D0C5, 0),
        }
    }

    pub fn halfspace() -> Self {
        Self::new(DepthKind::Halfspace)
    }

    pub fn simplicial() -> Self {
        Self::new(DepthKind::Simplicial)
    }

    pub fn mahalanobis() -> Self {
        Self::new(DepthKind::Mahalanobis)
    }

    pub fn projection() -> Self {
        Self::new(DepthKind::Projection)
    }

    pub fn with_directions(mut self, directions: usize) -> Self {
        self.directions = directions;
        self
    }

    pub fn with_max_enumeration(mut self, cap: usize) -> Self {
        self.max_enumeration = cap;
        self
    }

    pub fn with_point_directions(mut self, on: bool) -> Self {
        self.point_directions = on;
        self
    }

    fn validate(&self, d: usize) -> Result<()> {
        let needs_directions = match self.kind {
            DepthKind::Halfspace => d >= 3,
            DepthKind::Projection => d >= 2,
            _ => false,
        };
        if needs_directions && self.directions < 100 {
            return Err(Error::InvalidInput(format!(
                "direction count {} is below the minimum of 100",
                self.directions
            )));
        }
        if self.kind == DepthKind::Simplicial && self.max_enumeration < d + 1 {
            return Err(Error::InvalidInput("max_enumeration must be at least d + 1".into()));
        }
        Ok(())
    }
}

/// Upper level set of the sample depth: indices with depth >= `level`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthRegion {
    pub level: f64,
    pub members: Vec<usize>,
}

/// Barycentric sign tolerance for simplex containment.
const CONTAIN_TOL: f64 = 1e-10;

/// Deterministic direction sequence on the unit sphere, fixed given
/// `(d, count)` so approximate depths are reproducible.
pub fn direction_set(d: usize, count: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha12Rng::seed_from_u64(0xD1EC_7105);
    rng.set_stream(d as u64);
    let normal = rand_distr::StandardNormal;
    let mut dirs = Vec::with_capacity(count);
    while dirs.len() < count {
        let v: Vec<f64> = (0..d).map(|_| rand::Rng::sample(&mut rng, normal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            dirs.push(v.iter().map(|x| x / norm).collect());
        }
    }
    dirs
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Binomial coefficient, saturating at `u64::MAX`.
fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// A depth function prepared against a fixed reference cloud. Preparation
/// hoists everything that does not depend on the query point, so evaluating
/// many queries against one cloud (the hot path for orderings) stays cheap.
pub struct PreparedDepth {
    d: usize,
    data: Vec<Vec<f64>>,
    spec: DepthSpec,
    kernel: Kernel,
}

enum Kernel {
    /// d = 1: exact order-statistic halfspace depth.
    Halfspace1d { sorted: Vec<f64> },
    /// d = 2: exact angular sweep, no precomputation required.
    Halfspace2d,
    /// d >= 3: minimum over a fixed direction set, counted against sorted
    /// projections (both signs of every direction are probed).
    HalfspaceProjected { dirs: Vec<Vec<f64>>, sorted_proj: Vec<Vec<f64>> },
    /// Exact enumeration of all (d+1)-subsets.
    SimplicialExact,
    /// Monte Carlo over pre-drawn vertex subsets, shared by all queries.
    SimplicialMonteCarlo { subsets: Vec<Vec<usize>> },
    Mahalanobis { mean: DVector<f64>, sigma_inv: DMatrix<f64> },
    /// d = 1: exact median/MAD projection depth.
    Projection1d { median: f64, mad: f64 },
    /// d >= 2: per-direction median/MAD over the reference projections.
    Projection { dirs: Vec<Vec<f64>>, median: Vec<f64>, mad: Vec<f64> },
}

impl PreparedDepth {
    pub fn new(reference: &[Point], spec: &DepthSpec) -> Result<Self> {
        if reference.is_empty() {
            return Err(Error::InsufficientData("empty reference sample".into()));
        }
        let d = reference[0].dim();
        for p in reference {
            if p.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, got: p.dim() });
            }
        }
        spec.validate(d)?;
        let data: Vec<Vec<f64>> = reference.iter().map(|p| p.coords().to_vec()).collect();
        let n = data.len();
        let kernel = match spec.kind {
            DepthKind::Halfspace => {
                if d == 1 {
                    let mut sorted: Vec<f64> = data.iter().map(|p| p[0]).collect();
                    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
                    Kernel::Halfspace1d { sorted }
                } else if d == 2 {
                    Kernel::Halfspace2d
                } else {
                    let dirs = direction_set(d, spec.directions);
                    let sorted_proj = dirs
                        .iter()
                        .map(|u| {
                            let mut proj: Vec<f64> = data.iter().map(|p| dot(u, p)).collect();
                            proj.sort_by(|a, b| a.partial_cmp(b).unwrap());
                            proj
                        })
                        .collect();
                    Kernel::HalfspaceProjected { dirs, sorted_proj }
                }
            }
            DepthKind::Simplicial => {
                if n < d + 1 {
                    // Depth vanishes; handled at eval time.
                    Kernel::SimplicialExact
                } else if binomial(n, d + 1) <= spec.max_enumeration as u64 {
                    Kernel::SimplicialExact
                } else {
                    let mut rng = spec.mc_seed.rng();
                    let subsets = (0..spec.max_enumeration)
                        .map(|_| {
                            let mut idx = rand::seq::index::sample(&mut rng, n, d + 1).into_vec();
                            idx.sort_unstable();
                            idx
                        })
                        .collect();
                    Kernel::SimplicialMonteCarlo { subsets }
                }
            }
            DepthKind::Mahalanobis => {
                if n < d + 1 {
                    return Err(Error::InsufficientData(format!(
                        "Mahalanobis depth needs n >= d + 1 (n = {n}, d = {d})"
                    )));
                }
                let mean = linalg::mean(reference);
                let cov = linalg::covariance(reference)?;
                let sigma_inv = linalg::spd_inverse(&cov)?;
                Kernel::Mahalanobis { mean, sigma_inv }
            }
            DepthKind::Projection => {
                if n < 2 {
                    return Err(Error::InsufficientData("projection depth needs n >= 2".into()));
                }
                if d == 1 {
                    let vals: Vec<f64> = data.iter().map(|p| p[0]).collect();
                    let median = median_of(&vals);
                    let mad = mad_of(&vals, median);
                    if mad <= 0.0 {
                        return Err(Error::DegenerateScale { direction: 0 });
                    }
                    Kernel::Projection1d { median, mad }
                } else {
                    let dirs = direction_set(d, spec.directions);
                    let mut med = Vec::with_capacity(dirs.len());
                    let mut mad = Vec::with_capacity(dirs.len());
                    for (j, u) in dirs.iter().enumerate() {
                        let proj: Vec<f64> = data.iter().map(|p| dot(u, p)).collect();
                        let m = median_of(&proj);
                        let s = mad_of(&proj, m);
                        if s <= 0.0 {
                            return Err(Error::DegenerateScale { direction: j });
                        }
                        med.push(m);
                        mad.push(s);
                    }
                    Kernel::Projection { dirs, median: med, mad }
                }
            }
        };
        Ok(Self { d, data, spec: *spec, kernel })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Depth of `x` with respect to the reference cloud.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: x.len() });
        }
        let n = self.data.len();
        match &self.kernel {
            Kernel::Halfspace1d { sorted } => {
                let t = x[0];
                let below = sorted.partition_point(|&v| v <= t);
                let above = n - sorted.partition_point(|&v| v < t);
                Ok(below.min(above) as f64 / n as f64)
            }
            Kernel::Halfspace2d => Ok(halfspace_sweep_2d(&self.data, x)),
            Kernel::HalfspaceProjected { dirs, sorted_proj } => {
                let mut min_count = n;
                for (u, proj) in dirs.iter().zip(sorted_proj) {
                    let t = dot(u, x);
                    // #{u'(p - x) >= 0} and the same for -u.
                    let ge = n - proj.partition_point(|&v| v < t);
                    let le = proj.partition_point(|&v| v <= t);
                    min_count = min_count.min(ge).min(le);
                }
                if self.spec.point_directions {
                    for p in &self.data {
                        let u: Vec<f64> = p.iter().zip(x).map(|(a, b)| a - b).collect();
                        if u.iter().all(|&c| c == 0.0) {
                            continue;
                        }
                        let mut ge = 0usize;
                        let mut le = 0usize;
                        for q in &self.data {
                            let s = u
                                .iter()
                                .zip(q.iter().zip(x))
                                .map(|(ui, (qi, xi))| ui * (qi - xi))
                                .sum::<f64>();
                            if s >= 0.0 {
                                ge += 1;
                            }
                            if s <= 0.0 {
                                le += 1;
                            }
                        }
                        min_count = min_count.min(ge).min(le);
                    }
                }
                Ok(min_count as f64 / n as f64)
            }
            Kernel::SimplicialExact => {
                let k = self.d + 1;
                if n < k {
                    return Ok(0.0);
                }
                let mut contained = 0u64;
                let mut total = 0u64;
                let mut combo: Vec<usize> = (0..k).collect();
                loop {
                    total += 1;
                    if self.simplex_contains(&combo, x) {
                        contained += 1;
                    }
                    // next lexicographic combination
                    let mut pos = k;
                    while pos > 0 && combo[pos - 1] == pos - 1 + n - k {
                        pos -= 1;
                    }
                    if pos == 0 {
                        return Ok(contained as f64 / total as f64);
                    }
                    combo[pos - 1] += 1;
                    for j in pos..k {
                        combo[j] = combo[j - 1] + 1;
                    }
                }
            }
            Kernel::SimplicialMonteCarlo { subsets } => {
                let contained =
                    subsets.iter().filter(|s| self.simplex_contains(s, x)).count();
                Ok(contained as f64 / subsets.len() as f64)
            }
            Kernel::Mahalanobis { mean, sigma_inv } => {
                let xv = DVector::from_column_slice(x);
                let d2 = linalg::mahalanobis_sq(&xv, mean, sigma_inv);
                Ok(1.0 / (1.0 + d2))
            }
            Kernel::Projection1d { median, mad } => {
                Ok(1.0 / (1.0 + (x[0] - median).abs() / mad))
            }
            Kernel::Projection { dirs, median, mad } => {
                let mut sup: f64 = 0.0;
                for ((u, m), s) in dirs.iter().zip(median).zip(mad) {
                    sup = sup.max((dot(u, x) - m).abs() / s);
                }
                Ok(1.0 / (1.0 + sup))
            }
        }
    }

    fn simplex_contains(&self, indices: &[usize], x: &[f64]) -> bool {
        let verts: Vec<&[f64]> = indices.iter().map(|&i| self.data[i].as_slice()).collect();
        convex_contains(&verts, x)
    }
}

/// Exact bivariate halfspace depth by angular sweep.
///
/// The count of points in a closed halfplane through `x`, as a function of
/// the halfplane's outward direction, is piecewise constant with breakpoints
/// where the direction is orthogonal to some `X_i - x`; the minimum is
/// always attained strictly between breakpoints, so evaluating mid-arc
/// candidates is exact. Points coincident with `x` belong to every
/// halfplane.
fn halfspace_sweep_2d(data: &[Vec<f64>], x: &[f64]) -> f64 {
    use std::f64::consts::PI;
    let n = data.len();
    let mut coincident = 0usize;
    let mut angles: Vec<f64> = Vec::with_capacity(n);
    for p in data {
        let vx = p[0] - x[0];
        let vy = p[1] - x[1];
        if vx == 0.0 && vy == 0.0 {
            coincident += 1;
        } else {
            let mut a = vy.atan2(vx);
            if a < 0.0 {
                a += 2.0 * PI;
            }
            angles.push(a);
        }
    }
    if angles.is_empty() {
        return 1.0;
    }
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // Breakpoints: directions orthogonal to some point vector.
    let mut breakpoints: Vec<f64> = Vec::with_capacity(2 * angles.len());
    for &a in &angles {
        for off in [0.5 * PI, 1.5 * PI] {
            let mut b = a + off;
            if b >= 2.0 * PI {
                b -= 2.0 * PI;
            }
            breakpoints.push(b);
        }
    }
    breakpoints.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breakpoints.dedup();

    let m = angles.len();
    let count_closed = |lo: f64, hi: f64| -> usize {
        // #{angles in [lo, hi]} with wraparound, 0 <= lo, hi < 2*pi.
        if lo <= hi {
            angles.partition_point(|&v| v <= hi) - angles.partition_point(|&v| v < lo)
        } else {
            m - (angles.partition_point(|&v| v < lo) - angles.partition_point(|&v| v <= hi))
        }
    };

    let wrap = |mut a: f64| {
        if a < 0.0 {
            a += 2.0 * PI;
        } else if a >= 2.0 * PI {
            a -= 2.0 * PI;
        }
        a
    };

    let nb = breakpoints.len();
    let mut min_count = m;
    for i in 0..nb {
        let lo_bp = breakpoints[i];
        let hi_bp = if i + 1 < nb { breakpoints[i + 1] } else { breakpoints[0] + 2.0 * PI };
        let mid = wrap(0.5 * (lo_bp + hi_bp));
        // Closed semicircle of directions centered at `mid`.
        let c = count_closed(wrap(mid - 0.5 * PI), wrap(mid + 0.5 * PI));
        min_count = min_count.min(c);
        if min_count == 0 {
            break;
        }
    }
    (coincident + min_count) as f64 / n as f64
}

/// Closed convex-hull membership for a small vertex set, with barycentric
/// tolerance. Degenerate (affinely dependent) vertex sets fall back to the
/// union of their facets, which is exact for convex hulls by Caratheodory.
fn convex_contains(verts: &[&[f64]], x: &[f64]) -> bool {
    let k = verts.len();
    let d = x.len();
    if k == 1 {
        return crate::sample::euclidean(verts[0], x) <= CONTAIN_TOL;
    }
    if d == 2 && k == 3 {
        return triangle_contains_2d(verts[0], verts[1], verts[2], x);
    }
    if d == 1 {
        let lo = verts.iter().map(|v| v[0]).fold(f64::INFINITY, f64::min);
        let hi = verts.iter().map(|v| v[0]).fold(f64::NEG_INFINITY, f64::max);
        return x[0] >= lo - CONTAIN_TOL && x[0] <= hi + CONTAIN_TOL;
    }
    // General case: least-squares barycentric coordinates in the affine span.
    let v0 = verts[0];
    let mut e = DMatrix::zeros(d, k - 1);
    for (j, v) in verts.iter().skip(1).enumerate() {
        for i in 0..d {
            e[(i, j)] = v[i] - v0[i];
        }
    }
    let rhs = DVector::from_iterator(d, x.iter().zip(v0).map(|(a, b)| a - b));
    let scale = e.iter().fold(1.0_f64, |acc, v| acc.max(v.abs()));
    let svd = e.clone().svd(true, true);
    let rank = svd.singular_values.iter().filter(|&&s| s > scale * 1e-12).count();
    if rank < k - 1 {
        // Affinely dependent: recurse on facets.
        for drop in 0..k {
            let facet: Vec<&[f64]> =
                verts.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, v)| *v).collect();
            if convex_contains(&facet, x) {
                return true;
            }
        }
        return false;
    }
    match svd.solve(&rhs, scale * 1e-14) {
        Ok(lambda) => {
            let residual = (&e * &lambda - &rhs).norm();
            if residual > CONTAIN_TOL * scale.max(1.0) {
                return false;
            }
            let sum: f64 = lambda.iter().sum();
            lambda.iter().all(|&l| l >= -CONTAIN_TOL) && sum <= 1.0 + CONTAIN_TOL
        }
        Err(_) => false,
    }
}

/// Fast closed-triangle membership in the plane.
fn triangle_contains_2d(a: &[f64], b: &[f64], c: &[f64], x: &[f64]) -> bool {
    let det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    let scale = [b[0] - a[0], b[1] - a[1], c[0] - a[0], c[1] - a[1]]
        .iter()
        .fold(1.0_f64, |acc, v| acc.max(v.abs()));
    if det.abs() <= CONTAIN_TOL * scale * scale {
        // Degenerate triangle: union of its three edges.
        return segment_contains_2d(a, b, x)
            || segment_contains_2d(b, c, x)
            || segment_contains_2d(a, c, x);
    }
    let l1 = ((x[0] - a[0]) * (c[1] - a[1]) - (x[1] - a[1]) * (c[0] - a[0])) / det;
    let l2 = ((b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0])) / det;
    l1 >= -CONTAIN_TOL && l2 >= -CONTAIN_TOL && l1 + l2 <= 1.0 + CONTAIN_TOL
}

fn segment_contains_2d(a: &[f64], b: &[f64], x: &[f64]) -> bool {
    let ux = b[0] - a[0];
    let uy = b[1] - a[1];
    let wx = x[0] - a[0];
    let wy = x[1] - a[1];
    let len2 = ux * ux + uy * uy;
    if len2 == 0.0 {
        return crate::sample::euclidean(a, x) <= CONTAIN_TOL;
    }
    let cross = (ux * wy - uy * wx).abs() / len2.sqrt();
    if cross > CONTAIN_TOL {
        return false;
    }
    let t = (ux * wx + uy * wy) / len2;
    (-CONTAIN_TOL..=1.0 + CONTAIN_TOL).contains(&t)
}

fn median_of(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn mad_of(values: &[f64], median: f64) -> f64 {
    let devs: Vec<f64> = values.iter().map(|v| (v - median).abs()).collect();
    median_of(&devs)
}

fn check_query(x: &Point, points: &[Point]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::InsufficientData("empty reference sample".into()));
    }
    if x.dim() != points[0].dim() {
        return Err(Error::DimensionMismatch { expected: points[0].dim(), got: x.dim() });
    }
    Ok(())
}

/// Halfspace (Tukey) depth of `x` with respect to the empirical distribution
/// of `points`.
pub fn halfspace_depth(x: &Point, points: &[Point], spec: &DepthSpec) -> Result<f64> {
    check_query(x, points)?;
    let spec = DepthSpec { kind: DepthKind::Halfspace, ..*spec };
    PreparedDepth::new(points, &spec)?.eval(x.coords())
}

/// Simplicial depth: fraction of closed (d+1)-vertex simplices containing `x`.
pub fn simplicial_depth(x: &Point, points: &[Point], spec: &DepthSpec) -> Result<f64> {
    check_query(x, points)?;
    let spec = DepthSpec { kind: DepthKind::Simplicial, ..*spec };
    PreparedDepth::new(points, &spec)?.eval(x.coords())
}

/// Mahalanobis depth `1 / (1 + d^2)` with sample mean and covariance.
pub fn mahalanobis_depth(x: &Point, points: &[Point]) -> Result<f64> {
    check_query(x, points)?;
    PreparedDepth::new(points, &DepthSpec::mahalanobis())?.eval(x.coords())
}

/// Projection depth with median/MAD location and scale.
pub fn projection_depth(x: &Point, points: &[Point], spec: &DepthSpec) -> Result<f64> {
    check_query(x, points)?;
    let spec = DepthSpec { kind: DepthKind::Projection, ..*spec };
    PreparedDepth::new(points, &spec)?.eval(x.coords())
}

/// Depth of `x` under whichever kind the spec selects.
pub fn depth_of(x: &Point, points: &[Point], spec: &DepthSpec) -> Result<f64> {
    check_query(x, points)?;
    PreparedDepth::new(points, spec)?.eval(x.coords())
}

/// Depths of every query point with respect to the empirical distribution of
/// `reference`. Identical to per-point calls, with shared preparation.
pub fn depth_all(queries: &[Point], reference: &[Point], spec: &DepthSpec) -> Result<Vec<f64>> {
    if reference.is_empty() {
        return Err(Error::InsufficientData("empty reference sample".into()));
    }
    let prepared = PreparedDepth::new(reference, spec)?;
    queries.iter().map(|q| prepared.eval(q.coords())).collect()
}

/// Indices of sample points whose depth (w.r.t. the sample itself) is at
/// least `alpha`.
pub fn region_by_level(points: &[Point], spec: &DepthSpec, alpha: f64) -> Result<DepthRegion> {
    if alpha < 0.0 {
        return Err(Error::InvalidInput("alpha must be >= 0".into()));
    }
    let depths = depth_all(points, points, spec)?;
    let members = depths
        .iter()
        .enumerate()
        .filter(|(_, &dv)| dv >= alpha)
        .map(|(i, _)| i)
        .collect();
    Ok(DepthRegion { level: alpha, members })
}

/// Smallest sample depth region containing at least `ceil(beta * n)` points:
/// the region at the `ceil(beta * n)`-th largest depth value. Ties can make
/// it strictly larger.
pub fn region_by_content(points: &[Point], spec: &DepthSpec, beta: f64) -> Result<DepthRegion> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::InvalidInput("beta must lie in (0, 1]".into()));
    }
    let depths = depth_all(points, points, spec)?;
    let n = points.len();
    let k = ((beta * n as f64).ceil() as usize).clamp(1, n);
    let mut sorted = depths.clone();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let alpha = sorted[k - 1];
    let members = depths
        .iter()
        .enumerate()
        .filter(|(_, &dv)| dv >= alpha)
        .map(|(i, _)| i)
        .collect();
    Ok(DepthRegion { level: alpha, members })
}

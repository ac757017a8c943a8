//! Depth-based nearest-neighbor estimators beyond classification:
//! regression, neighborhood volume, and density estimation.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::depth::{DepthKind, DepthSpec, PreparedDepth};
use crate::error::{Error, Result};
use crate::neighbors::{depth_neighborhood, symmetrize, DepthNeighborhood};
use crate::rng::RngSeed;
use crate::sample::Point;

/// Default number of hit-or-miss draws for Monte Carlo volume estimates.
pub const DEFAULT_VOLUME_DRAWS: usize = 200_000;

/// A regression sample: covariate points with real-valued responses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionSample {
    points: Vec<Point>,
    responses: Vec<f64>,
}

impl RegressionSample {
    pub fn new(points: Vec<Point>, responses: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InsufficientData("empty regression sample".into()));
        }
        if points.len() != responses.len() {
            return Err(Error::InvalidInput(format!(
                "{} points but {} responses",
                points.len(),
                responses.len()
            )));
        }
        let d = points[0].dim();
        for p in &points {
            if p.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, got: p.dim() });
            }
        }
        if responses.iter().any(|r| !r.is_finite()) {
            return Err(Error::Validation("responses must be finite".into()));
        }
        Ok(Self { points, responses })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn responses(&self) -> &[f64] {
        &self.responses
    }
}

/// How neighborhoods are formed for the estimators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum NeighborhoodKind {
    /// Ordinary Euclidean distance neighborhoods.
    Euclidean,
    /// Depth-based neighborhoods from the symmetrized sample.
    Depth(DepthSpec),
}

/// Members of the neighborhood of `x` containing at least `k` sample
/// points, under either neighborhood notion; whole tie groups are kept.
fn neighborhood_members(
    x: &Point,
    points: &[Point],
    kind: &NeighborhoodKind,
    k: usize,
) -> Result<DepthNeighborhood> {
    match kind {
        NeighborhoodKind::Depth(spec) => depth_neighborhood(x, points, spec, k),
        NeighborhoodKind::Euclidean => {
            if k == 0 || k > points.len() {
                return Err(Error::InvalidInput(format!(
                    "k = {k} out of range 1..={}",
                    points.len()
                )));
            }
            let groups = crate::classify::euclidean_groups(x, points)?;
            let mut members = Vec::new();
            for g in &groups {
                if members.len() >= k {
                    break;
                }
                members.extend_from_slice(g);
            }
            members.sort_unstable();
            let realized = members.len();
            Ok(DepthNeighborhood { beta: k as f64 / points.len() as f64, members, realized_count: realized })
        }
    }
}

/// Nearest-neighbor regression: the unweighted mean response over the
/// neighborhood of `x`.
pub fn knn_regress(
    x: &Point,
    sample: &RegressionSample,
    kind: &NeighborhoodKind,
    k: usize,
) -> Result<f64> {
    let nb = neighborhood_members(x, sample.points(), kind, k)?;
    let sum: f64 = nb.members.iter().map(|&i| sample.responses()[i]).sum();
    Ok(sum / nb.realized_count as f64)
}

/// A neighborhood volume with its Monte Carlo standard error (zero when the
/// volume is computed exactly).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeEstimate {
    pub volume: f64,
    pub std_error: f64,
    /// Hit-or-miss draws used; 0 for exact computations.
    pub draws: usize,
}

/// Volume of the unit ball in `d` dimensions.
pub fn unit_ball_volume(d: usize) -> f64 {
    // V_0 = 1, V_1 = 2, V_d = V_{d-2} * 2 pi / d
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(d - 2) * 2.0 * std::f64::consts::PI / d as f64,
    }
}

/// Volume of the neighborhood of `x` containing at least `k` points.
///
/// Euclidean neighborhoods are balls, so the volume is exact. Depth-based
/// neighborhoods with the halfspace depth in dimension 1 are closed
/// intervals with an exact length. All other depth neighborhoods are
/// measured by hit-or-miss Monte Carlo over the bounding box of the
/// symmetrized sample, with a binomial standard error.
pub fn neighborhood_volume(
    x: &Point,
    points: &[Point],
    kind: &NeighborhoodKind,
    k: usize,
    draws: usize,
    seed: RngSeed,
) -> Result<VolumeEstimate> {
    let d = x.dim();
    match kind {
        NeighborhoodKind::Euclidean => {
            let nb = neighborhood_members(x, points, kind, k)?;
            let radius = nb
                .members
                .iter()
                .map(|&i| crate::sample::euclidean(points[i].coords(), x.coords()))
                .fold(0.0f64, f64::max);
            Ok(VolumeEstimate {
                volume: unit_ball_volume(d) * radius.powi(d as i32),
                std_error: 0.0,
                draws: 0,
            })
        }
        NeighborhoodKind::Depth(spec) => {
            let nb = depth_neighborhood(x, points, spec, k)?;
            let sym = symmetrize(x, points)?;
            let cloud = sym.combined();
            let prepared = PreparedDepth::new(&cloud, spec)?;
            // Depth level of the region: the smallest member depth.
            let level = nb
                .members
                .iter()
                .map(|&i| prepared.eval(points[i].coords()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(f64::INFINITY, f64::min);

            if d == 1 && spec.kind == DepthKind::Halfspace {
                // The region {t : depth(t) >= level} is a closed interval
                // between order statistics of the symmetrized cloud.
                let mut vals: Vec<f64> = cloud.iter().map(|p| p.coords()[0]).collect();
                vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let m = vals.len();
                let a = (level * m as f64).round() as usize; // level = a / m
                if a == 0 || a > m {
                    return Err(Error::DegenerateVolume(format!(
                        "region level {level} is out of range for cloud size {m}"
                    )));
                }
                return Ok(VolumeEstimate {
                    volume: vals[m - a] - vals[a - 1],
                    std_error: 0.0,
                    draws: 0,
                });
            }

            if draws == 0 {
                return Err(Error::InvalidInput("Monte Carlo volume needs draws > 0".into()));
            }
            let mut lo = vec![f64::INFINITY; d];
            let mut hi = vec![f64::NEG_INFINITY; d];
            for p in &cloud {
                for (j, &c) in p.coords().iter().enumerate() {
                    lo[j] = lo[j].min(c);
                    hi[j] = hi[j].max(c);
                }
            }
            let box_vol: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
            if box_vol <= 0.0 {
                return Ok(VolumeEstimate { volume: 0.0, std_error: 0.0, draws: 0 });
            }
            let mut rng = seed.rng();
            let mut hits = 0usize;
            let mut draw = vec![0.0f64; d];
            for _ in 0..draws {
                for j in 0..d {
                    draw[j] = rng.gen_range(lo[j]..=hi[j]);
                }
                if prepared.eval(&draw)? >= level {
                    hits += 1;
                }
            }
            let p_hat = hits as f64 / draws as f64;
            Ok(VolumeEstimate {
                volume: box_vol * p_hat,
                std_error: box_vol * (p_hat * (1.0 - p_hat) / draws as f64).sqrt(),
                draws,
            })
        }
    }
}

/// Nearest-neighbor density estimate: realized neighborhood count over `n`
/// times the neighborhood volume. The realized count (which can exceed `k`
/// on ties) is used in the numerator so mass and volume refer to the same
/// region.
pub fn knn_density(
    x: &Point,
    points: &[Point],
    kind: &NeighborhoodKind,
    k: usize,
    draws: usize,
    seed: RngSeed,
) -> Result<f64> {
    let nb = neighborhood_members(x, points, kind, k)?;
    let vol = neighborhood_volume(x, points, kind, k, draws, seed)?;
    if vol.volume <= 0.0 {
        return Err(Error::DegenerateVolume(format!(
            "neighborhood of k = {k} around the query has zero volume"
        )));
    }
    Ok(nb.realized_count as f64 / (points.len() as f64 * vol.volume))
}

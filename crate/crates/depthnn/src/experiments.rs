//! Simulation setups, Bayes-risk computation, the benchmark driver, and
//! leave-one-out cross-validation for choosing the neighborhood size.

use nalgebra::{Cholesky, DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{euclidean_groups, vote_over_groups, whitening_matrix, ClassifierSpec};
use crate::depth::DepthSpec;
use crate::error::{Error, Result};
use crate::neighbors::outward_ordering;
use crate::rng::RngSeed;
use crate::sample::{LabeledSample, Point};

/// The neighborhood fractions benchmarked for each kNN-style classifier.
pub const DEFAULT_BETA_GRID: [f64; 4] = [0.01, 0.05, 0.10, 0.40];

/// The six bivariate two-class sampling models used in the simulation
/// study. Class labels are fair coin flips; each setup defines both class
/// conditional samplers and their exact densities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimulationSetup {
    /// Setup 1: Gaussians with proportional full covariances.
    GaussianScale,
    /// Setup 2: elliptical Cauchy versions of setup 1.
    Cauchy,
    /// Setup 3: Gaussians sharing a strongly anisotropic diagonal covariance.
    GaussianShared,
    /// Setup 4: interlocking uniform half-moons relatable by an affine map.
    HalfMoons,
    /// Setup 5: overlapping uniform rings.
    Rings,
    /// Setup 6: two-component Gaussian mixtures per class.
    Mixtures,
}

const MU0: [f64; 2] = [0.0, 0.0];
const MU1: [f64; 2] = [1.0, 1.0];
const SIGMA0: [[f64; 2]; 2] = [[1.0, 1.0], [1.0, 4.0]];

fn mat2(a: [[f64; 2]; 2]) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[a[0][0], a[0][1], a[1][0], a[1][1]])
}

fn scaled(a: [[f64; 2]; 2], s: f64) -> DMatrix<f64> {
    mat2(a) * s
}

fn gaussian_density(x: &[f64], mu: &[f64; 2], sigma: &DMatrix<f64>) -> f64 {
    let det = sigma[(0, 0)] * sigma[(1, 1)] - sigma[(0, 1)] * sigma[(1, 0)];
    let inv = sigma.clone().try_inverse().expect("setup covariance invertible");
    let dx = DVector::from_column_slice(&[x[0] - mu[0], x[1] - mu[1]]);
    let d2 = (dx.transpose() * inv * &dx)[(0, 0)];
    (-0.5 * d2).exp() / (2.0 * std::f64::consts::PI * det.sqrt())
}

fn cauchy_density(x: &[f64], mu: &[f64; 2], sigma: &DMatrix<f64>) -> f64 {
    let det = sigma[(0, 0)] * sigma[(1, 1)] - sigma[(0, 1)] * sigma[(1, 0)];
    let inv = sigma.clone().try_inverse().expect("setup scatter invertible");
    let dx = DVector::from_column_slice(&[x[0] - mu[0], x[1] - mu[1]]);
    let d2 = (dx.transpose() * inv * &dx)[(0, 0)];
    1.0 / (2.0 * std::f64::consts::PI * det.sqrt() * (1.0 + d2).powf(1.5))
}

fn sample_gaussian(rng: &mut ChaCha12Rng, mu: &[f64; 2], chol: &DMatrix<f64>) -> Point {
    let z = DVector::from_column_slice(&[
        rng.sample::<f64, _>(rand_distr::StandardNormal),
        rng.sample::<f64, _>(rand_distr::StandardNormal),
    ]);
    let v = chol * z;
    Point::new(vec![mu[0] + v[0], mu[1] + v[1]]).expect("finite gaussian draw")
}

fn chol(sigma: &DMatrix<f64>) -> DMatrix<f64> {
    Cholesky::new(sigma.clone()).expect("setup covariance SPD").l()
}

/// Half-moon geometry (setup 4): class 0 lives between the parabolas
/// `1 - u^2` and `2(1 - u^2)` over `u` in `(-1, 1)`; class 1 is its image
/// under `x -> b + A x`.
const HM_SHIFT: [f64; 2] = [-0.5, 2.0];
const HM_MAP: [[f64; 2]; 2] = [[1.0, 0.5], [0.5, -1.0]];
const HM_ABS_DET: f64 = 1.25;

fn halfmoon0_density(x: &[f64]) -> f64 {
    let (u, v) = (x[0], x[1]);
    if u.abs() < 1.0 {
        let base = 1.0 - u * u;
        if v >= base && v <= 2.0 * base {
            // uniform in v over an interval of length (1 - u^2), u uniform
            // with density 1/2
            return 0.5 / base;
        }
    }
    0.0
}

fn halfmoon1_density(x: &[f64]) -> f64 {
    // invert x = b + A y
    let dx = [x[0] - HM_SHIFT[0], x[1] - HM_SHIFT[1]];
    let det = HM_MAP[0][0] * HM_MAP[1][1] - HM_MAP[0][1] * HM_MAP[1][0];
    let y = [
        (HM_MAP[1][1] * dx[0] - HM_MAP[0][1] * dx[1]) / det,
        (-HM_MAP[1][0] * dx[0] + HM_MAP[0][0] * dx[1]) / det,
    ];
    halfmoon0_density(&y) / HM_ABS_DET
}

/// Ring geometry (setup 5): uniform densities on two overlapping annuli.
const RING0: (f64, f64) = (1.0, 2.0);
const RING1: (f64, f64) = (1.75, 2.5);

fn ring_density(x: &[f64], ring: (f64, f64)) -> f64 {
    let r = (x[0] * x[0] + x[1] * x[1]).sqrt();
    if r >= ring.0 && r <= ring.1 {
        1.0 / (std::f64::consts::PI * (ring.1 * ring.1 - ring.0 * ring.0))
    } else {
        0.0
    }
}

fn sample_ring(rng: &mut ChaCha12Rng, ring: (f64, f64)) -> Point {
    let r2 = rng.gen_range(ring.0 * ring.0..ring.1 * ring.1);
    let theta = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
    let r = r2.sqrt();
    Point::new(vec![r * theta.cos(), r * theta.sin()]).expect("finite ring draw")
}

/// Mixture geometry (setup 6): equal-weight two-component Gaussian
/// mixtures.
const MIX0: [([f64; 2], [[f64; 2]; 2], f64); 2] =
    [([0.0, 0.0], SIGMA0, 1.0), ([3.0, 3.0], SIGMA0, 4.0)];
const MIX1: [([f64; 2], [[f64; 2]; 2], f64); 2] = [
    ([1.5, 1.5], [[4.0, 0.0], [0.0, 0.5]], 1.0),
    ([4.5, 4.5], [[0.75, 0.0], [0.0, 5.0]], 1.0),
];

impl SimulationSetup {
    pub fn from_index(index: usize) -> Result<Self> {
        Ok(match index {
            1 => Self::GaussianScale,
            2 => Self::Cauchy,
            3 => Self::GaussianShared,
            4 => Self::HalfMoons,
            5 => Self::Rings,
            6 => Self::Mixtures,
            _ => return Err(Error::InvalidInput(format!("no simulation setup {index}"))),
        })
    }

    pub fn index(&self) -> usize {
        match self {
            Self::GaussianScale => 1,
            Self::Cauchy => 2,
            Self::GaussianShared => 3,
            Self::HalfMoons => 4,
            Self::Rings => 5,
            Self::Mixtures => 6,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::GaussianScale => "gaussian-scale",
            Self::Cauchy => "cauchy",
            Self::GaussianShared => "gaussian-shared",
            Self::HalfMoons => "half-moons",
            Self::Rings => "rings",
            Self::Mixtures => "mixtures",
        }
    }

    /// Draw one observation from the given class conditional.
    pub fn sample_class(&self, label: u8, rng: &mut ChaCha12Rng) -> Point {
        match self {
            Self::GaussianScale => {
                let sigma = if label == 0 { mat2(SIGMA0) } else { scaled(SIGMA0, 4.0) };
                let mu = if label == 0 { &MU0 } else { &MU1 };
                sample_gaussian(rng, mu, &chol(&sigma))
            }
            Self::Cauchy => {
                let sigma = if label == 0 { mat2(SIGMA0) } else { scaled(SIGMA0, 4.0) };
                let mu = if label == 0 { &MU0 } else { &MU1 };
                let g = sample_gaussian(rng, &[0.0, 0.0], &chol(&sigma));
                let w: f64 = rng.sample(rand_distr::StandardNormal);
                let s = w.abs().max(f64::MIN_POSITIVE);
                Point::new(vec![mu[0] + g.coords()[0] / s, mu[1] + g.coords()[1] / s])
                    .expect("finite cauchy draw")
            }
            Self::GaussianShared => {
                let sigma = DMatrix::from_diagonal(&DVector::from_column_slice(&[25.0, 1.0]));
                let mu = if label == 0 { &MU0 } else { &MU1 };
                sample_gaussian(rng, mu, &chol(&sigma))
            }
            Self::HalfMoons => {
                let u = rng.gen_range(-1.0..1.0);
                let base = 1.0 - u * u;
                let v = rng.gen_range(base..2.0 * base);
                if label == 0 {
                    Point::new(vec![u, v]).expect("finite half-moon draw")
                } else {
                    Point::new(vec![
                        HM_SHIFT[0] + HM_MAP[0][0] * u + HM_MAP[0][1] * v,
                        HM_SHIFT[1] + HM_MAP[1][0] * u + HM_MAP[1][1] * v,
                    ])
                    .expect("finite half-moon draw")
                }
            }
            Self::Rings => sample_ring(rng, if label == 0 { RING0 } else { RING1 }),
            Self::Mixtures => {
                let comps = if label == 0 { &MIX0 } else { &MIX1 };
                let (mu, sig, scale) = &comps[usize::from(rng.gen_bool(0.5))];
                sample_gaussian(rng, mu, &chol(&scaled(*sig, *scale)))
            }
        }
    }

    /// Exact class-conditional density at `x`.
    pub fn class_density(&self, label: u8, x: &[f64]) -> f64 {
        match self {
            Self::GaussianScale => {
                let sigma = if label == 0 { mat2(SIGMA0) } else { scaled(SIGMA0, 4.0) };
                gaussian_density(x, if label == 0 { &MU0 } else { &MU1 }, &sigma)
            }
            Self::Cauchy => {
                let sigma = if label == 0 { mat2(SIGMA0) } else { scaled(SIGMA0, 4.0) };
                cauchy_density(x, if label == 0 { &MU0 } else { &MU1 }, &sigma)
            }
            Self::GaussianShared => {
                let sigma = DMatrix::from_diagonal(&DVector::from_column_slice(&[25.0, 1.0]));
                gaussian_density(x, if label == 0 { &MU0 } else { &MU1 }, &sigma)
            }
            Self::HalfMoons => {
                if label == 0 {
                    halfmoon0_density(x)
                } else {
                    halfmoon1_density(x)
                }
            }
            Self::Rings => ring_density(x, if label == 0 { RING0 } else { RING1 }),
            Self::Mixtures => {
                let comps = if label == 0 { &MIX0 } else { &MIX1 };
                comps
                    .iter()
                    .map(|(mu, sig, scale)| 0.5 * gaussian_density(x, mu, &scaled(*sig, *scale)))
                    .sum()
            }
        }
    }

    /// Generate a labeled sample of size `n` with fair-coin labels.
    pub fn generate(&self, n: usize, seed: RngSeed) -> Result<LabeledSample> {
        if n < 2 {
            return Err(Error::InsufficientData("need at least 2 observations".into()));
        }
        let mut rng = seed.rng();
        let mut points = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        for _ in 0..n {
            let label = u8::from(rng.gen_bool(0.5));
            points.push(self.sample_class(label, &mut rng));
            labels.push(label);
        }
        LabeledSample::new(points, labels)
    }

    /// Monte Carlo estimate of the Bayes risk with equal priors:
    /// `E[min(f0, f1) / (f0 + f1)]` under a draw from the equal-weight
    /// mixture equals `integral of min(f0, f1) / 2`.
    pub fn bayes_risk(&self, draws: usize, seed: RngSeed) -> Result<BayesRiskEstimate> {
        if draws == 0 {
            return Err(Error::InvalidInput("Bayes risk needs draws > 0".into()));
        }
        let mut rng = seed.rng();
        let mut sum = 0.0f64;
        let mut sum_sq = 0.0f64;
        for _ in 0..draws {
            let label = u8::from(rng.gen_bool(0.5));
            let x = self.sample_class(label, &mut rng);
            let f0 = self.class_density(0, x.coords());
            let f1 = self.class_density(1, x.coords());
            let total = f0 + f1;
            let v = if total > 0.0 { f0.min(f1) / total } else { 0.0 };
            sum += v;
            sum_sq += v * v;
        }
        let mean = sum / draws as f64;
        let var = (sum_sq / draws as f64 - mean * mean).max(0.0);
        Ok(BayesRiskEstimate {
            risk: mean,
            std_error: (var / draws as f64).sqrt(),
            draws,
        })
    }
}

/// A Monte Carlo Bayes-risk estimate (as a probability, not percent).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BayesRiskEstimate {
    pub risk: f64,
    pub std_error: f64,
    pub draws: usize,
}

/// Convert a fraction grid into neighborhood sizes for a sample of size
/// `n`: `k = ceil(beta n)` clamped to `1..=cap`, deduplicated and sorted.
pub fn beta_grid_to_k(n: usize, betas: &[f64], cap: usize) -> Vec<usize> {
    let mut ks: Vec<usize> = betas
        .iter()
        .map(|b| ((b * n as f64).ceil() as usize).clamp(1, cap))
        .collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}

/// Configuration of one simulation benchmark run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkConfig {
    pub setup: SimulationSetup,
    pub classifiers: Vec<ClassifierSpec>,
    pub n_train: usize,
    pub n_test: usize,
    pub replications: usize,
    pub seed: RngSeed,
}

impl BenchmarkConfig {
    pub fn new(setup: SimulationSetup, classifiers: Vec<ClassifierSpec>) -> Self {
        Self {
            setup,
            classifiers,
            n_train: 200,
            n_test: 100,
            replications: 250,
            seed: RngSeed::default(),
        }
    }
}

/// One classifier's result on one replication.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicationRow {
    pub replication: usize,
    pub classifier: String,
    /// Test misclassification percentage; `NaN` when `failed`.
    pub error_percent: f64,
    pub failed: bool,
    pub message: String,
}

/// Aggregate over completed replications of one classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkSummary {
    pub classifier: String,
    pub mean_error_percent: f64,
    pub std_error_percent: f64,
    pub completed: usize,
    pub failures: usize,
}

/// Full benchmark output: per-replication rows plus per-classifier
/// summaries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub setup: SimulationSetup,
    pub n_train: usize,
    pub n_test: usize,
    pub replications: usize,
    pub rows: Vec<ReplicationRow>,
    pub summaries: Vec<BenchmarkSummary>,
}

impl ExperimentReport {
    /// Write the per-replication rows as CSV.
    pub fn write_rows_csv<W: std::io::Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["replication", "classifier", "error_percent", "failed", "message"])?;
        for r in &self.rows {
            w.write_record([
                r.replication.to_string(),
                r.classifier.clone(),
                if r.error_percent.is_nan() { String::new() } else { r.error_percent.to_string() },
                r.failed.to_string(),
                r.message.clone(),
            ])?;
        }
        w.flush().map_err(Error::Io)?;
        Ok(())
    }
}

/// Run the benchmark: for each replication, draw fresh training and test
/// samples, fit every classifier on the training data, and record the test
/// error. Replications are independent (keyed by the base seed and the
/// replication index) and run in parallel; per-classifier failures are
/// recorded in the rows rather than aborting the run.
pub fn run_benchmark(config: &BenchmarkConfig) -> Result<ExperimentReport> {
    if config.classifiers.is_empty() {
        return Err(Error::InvalidInput("empty classifier roster".into()));
    }
    if config.replications == 0 {
        return Err(Error::InvalidInput("need at least one replication".into()));
    }
    let rep_rows: Vec<Vec<ReplicationRow>> = (0..config.replications)
        .into_par_iter()
        .map(|rep| -> Result<Vec<ReplicationRow>> {
            let base = config.seed.substream(16 * rep as u64 + 1);
            let train = config.setup.generate(config.n_train, base.substream(0))?;
            let test = config.setup.generate(config.n_test, base.substream(1))?;
            let mut rows = Vec::with_capacity(config.classifiers.len());
            for (ci, spec) in config.classifiers.iter().enumerate() {
                let fit_seed = base.substream(2 + 2 * ci as u64);
                let tie_seed = base.substream(3 + 2 * ci as u64);
                let outcome = spec
                    .fit_seeded(&train, fit_seed)
                    .and_then(|model| model.test_error_percent(&test, tie_seed));
                rows.push(match outcome {
                    Ok(err) => ReplicationRow {
                        replication: rep,
                        classifier: spec.name(),
                        error_percent: err,
                        failed: false,
                        message: String::new(),
                    },
                    Err(e) => ReplicationRow {
                        replication: rep,
                        classifier: spec.name(),
                        error_percent: f64::NAN,
                        failed: true,
                        message: e.to_string(),
                    },
                });
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>>>()?;

    let rows: Vec<ReplicationRow> = rep_rows.into_iter().flatten().collect();
    let mut summaries = Vec::with_capacity(config.classifiers.len());
    for spec in &config.classifiers {
        let name = spec.name();
        let errs: Vec<f64> = rows
            .iter()
            .filter(|r| r.classifier == name && !r.failed)
            .map(|r| r.error_percent)
            .collect();
        let failures = rows.iter().filter(|r| r.classifier == name && r.failed).count();
        let completed = errs.len();
        let mean = if completed > 0 {
            errs.iter().sum::<f64>() / completed as f64
        } else {
            f64::NAN
        };
        let se = if completed > 1 {
            let var =
                errs.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>() / (completed - 1) as f64;
            (var / completed as f64).sqrt()
        } else {
            f64::NAN
        };
        summaries.push(BenchmarkSummary {
            classifier: name,
            mean_error_percent: mean,
            std_error_percent: se,
            completed,
            failures,
        });
    }
    Ok(ExperimentReport {
        setup: config.setup,
        n_train: config.n_train,
        n_test: config.n_test,
        replications: config.replications,
        rows,
        summaries,
    })
}

/// Which kNN family leave-one-out cross-validation tunes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum KnnFamily {
    Euclidean,
    Affine,
    Depth(DepthSpec),
}

/// Leave-one-out cross-validation result over a grid of neighborhood
/// sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvResult {
    pub k_grid: Vec<usize>,
    /// Leave-one-out misclassification counts, aligned with `k_grid`.
    pub errors: Vec<usize>,
    /// Smallest `k` attaining the minimum error.
    pub best_k: usize,
}

/// Exact leave-one-out cross-validation: every held-out point is classified
/// by a classifier refit on the remaining `n - 1` observations (orderings
/// and whitenings are recomputed without the held-out point, then reused
/// across the whole `k` grid). Ties in the error curve go to the smallest
/// `k`.
pub fn loocv_select_k(
    training: &LabeledSample,
    family: &KnnFamily,
    k_grid: &[usize],
    tie_seed: RngSeed,
) -> Result<CvResult> {
    let n = training.len();
    if k_grid.is_empty() {
        return Err(Error::InvalidInput("empty k grid".into()));
    }
    for &k in k_grid {
        if k == 0 || k > n - 1 {
            return Err(Error::InvalidInput(format!(
                "k = {k} out of range 1..={} for leave-one-out",
                n - 1
            )));
        }
    }
    let per_point: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|i| -> Result<Vec<bool>> {
            let rest = training.without(i)?;
            let x = training.point(i);
            let groups = match family {
                KnnFamily::Depth(spec) => outward_ordering(x, rest.points(), spec)?.groups,
                KnnFamily::Euclidean => euclidean_groups(x, rest.points())?,
                KnnFamily::Affine => {
                    let w = whitening_matrix(&rest)?;
                    let wx = {
                        let v = &w * x.to_vector();
                        Point::new(v.iter().copied().collect()).expect("whitened point")
                    };
                    let wpts: Vec<Point> = rest
                        .points()
                        .iter()
                        .map(|p| {
                            let v = &w * p.to_vector();
                            Point::new(v.iter().copied().collect()).expect("whitened point")
                        })
                        .collect();
                    euclidean_groups(&wx, &wpts)?
                }
            };
            Ok(k_grid
                .iter()
                .map(|&k| {
                    let pred =
                        vote_over_groups(&groups, rest.labels(), k, tie_seed.substream(i as u64));
                    pred != training.label(i)
                })
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;

    let mut errors = vec![0usize; k_grid.len()];
    for row in &per_point {
        for (j, &miss) in row.iter().enumerate() {
            if miss {
                errors[j] += 1;
            }
        }
    }
    let best_idx = errors
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1).then(k_grid[a.0].cmp(&k_grid[b.0])))
        .map(|(i, _)| i)
        .expect("non-empty k grid");
    Ok(CvResult { k_grid: k_grid.to_vec(), errors: errors.clone(), best_k: k_grid[best_idx] })
}

/// The default cross-validation grid: fractions 0.01 to 0.50 in steps of
/// 0.01, converted to neighborhood sizes.
pub fn default_cv_grid(n: usize) -> Vec<usize> {
    let betas: Vec<f64> = (1..=50).map(|i| i as f64 / 100.0).collect();
    beta_grid_to_k(n, &betas, n.saturating_sub(1).max(1))
}

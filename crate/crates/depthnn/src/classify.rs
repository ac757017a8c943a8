//! Binary classifiers: the depth-based kNN classifier and its competitors
//! (Euclidean kNN, affine-invariant kNN, LDA/QDA, DD-plot classifiers).
//!
//! All nearest-neighbor variants share one tie convention: neighbors at
//! equal rank are kept as whole groups, vote ties are resolved by expanding
//! to the next rank group, and a seeded fair coin decides only when the full
//! sample is exhausted still tied.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::depth::{DepthSpec, PreparedDepth};
use crate::error::{Error, Result};
use crate::linalg;
use crate::neighbors::{neighborhood_from_ordering, outward_ordering, OutwardOrdering};
use crate::rng::RngSeed;
use crate::sample::{LabeledSample, Point};

/// Default cap on enumerated DD candidate polynomials; candidate sets larger
/// than this are uniformly subsampled.
pub const DD_CANDIDATE_CAP: usize = 20_000;

fn check_two_classes(training: &LabeledSample) -> Result<()> {
    if training.class_count(0) == 0 || training.class_count(1) == 0 {
        return Err(Error::InvalidInput("training sample must contain both classes".into()));
    }
    Ok(())
}

/// Majority vote over rank groups: take leading groups until at least `k`
/// observations are in, then expand one group at a time on exact ties. A
/// fair coin from `tie_seed` decides if the whole sample stays tied.
fn grouped_vote(
    groups: &[Vec<usize>],
    labels: &[u8],
    k: usize,
    tie_seed: RngSeed,
) -> u8 {
    let mut c0 = 0usize;
    let mut c1 = 0usize;
    let mut gi = 0usize;
    while gi < groups.len() && c0 + c1 < k {
        for &i in &groups[gi] {
            if labels[i] == 1 {
                c1 += 1;
            } else {
                c0 += 1;
            }
        }
        gi += 1;
    }
    loop {
        if c1 > c0 {
            return 1;
        }
        if c0 > c1 {
            return 0;
        }
        if gi == groups.len() {
            return u8::from(tie_seed.rng().gen_bool(0.5));
        }
        for &i in &groups[gi] {
            if labels[i] == 1 {
                c1 += 1;
            } else {
                c0 += 1;
            }
        }
        gi += 1;
    }
}

/// Depth-based posterior estimate: the class-1 fraction of the depth-based
/// neighborhood, i.e. the plug-in estimate of `P[Y = 1 | X = x]` with
/// weights `1/K` on neighborhood members.
pub fn dknn_posterior(
    x: &Point,
    training: &LabeledSample,
    spec: &DepthSpec,
    k: usize,
) -> Result<f64> {
    let ordering = outward_ordering(x, training.points(), spec)?;
    let nb = neighborhood_from_ordering(&ordering, training.len(), k)?;
    let ones = nb.members.iter().filter(|&&i| training.label(i) == 1).count();
    Ok(ones as f64 / nb.realized_count as f64)
}

/// Classification from an already-computed outward ordering (lets callers
/// reuse one ordering across many values of `k`, e.g. in cross-validation).
pub fn dknn_classify_from_ordering(
    ordering: &OutwardOrdering,
    labels: &[u8],
    k: usize,
    tie_seed: RngSeed,
) -> u8 {
    grouped_vote(&ordering.groups, labels, k, tie_seed)
}

/// The depth-based kNN classifier: majority vote in the smallest depth-based
/// neighborhood containing `k` observations, ties broken on successive depth
/// regions and finally by a seeded coin.
pub fn dknn_classify(
    x: &Point,
    training: &LabeledSample,
    spec: &DepthSpec,
    k: usize,
    tie_seed: RngSeed,
) -> Result<u8> {
    check_two_classes(training)?;
    let ordering = outward_ordering(x, training.points(), spec)?;
    Ok(grouped_vote(&ordering.groups, training.labels(), k, tie_seed))
}

/// Group training indices by exact squared Euclidean distance to `x`,
/// ascending.
fn distance_groups(x: &Point, points: &[Point]) -> Result<Vec<Vec<usize>>> {
    let d = x.dim();
    let mut dist: Vec<(usize, f64)> = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if p.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: p.dim() });
        }
        let d2: f64 = p.coords().iter().zip(x.coords()).map(|(a, b)| (a - b) * (a - b)).sum();
        dist.push((i, d2));
    }
    dist.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut last = f64::NAN;
    for (i, d2) in dist {
        if groups.is_empty() || d2 != last {
            groups.push(vec![i]);
            last = d2;
        } else {
            groups.last_mut().unwrap().push(i);
        }
    }
    Ok(groups)
}

/// Standard Euclidean kNN with the shared group-and-expand tie convention.
pub fn euclidean_knn_classify(
    x: &Point,
    training: &LabeledSample,
    k: usize,
    tie_seed: RngSeed,
) -> Result<u8> {
    check_two_classes(training)?;
    if k == 0 || k > training.len() {
        return Err(Error::InvalidInput(format!("k = {k} out of range")));
    }
    let groups = distance_groups(x, training.points())?;
    Ok(grouped_vote(&groups, training.labels(), k, tie_seed))
}

/// Whitening matrix for the affine-invariant kNN: the inverse square root of
/// the pooled (label-blind) covariance of the training sample.
pub fn whitening_matrix(training: &LabeledSample) -> Result<DMatrix<f64>> {
    let cov = linalg::pooled_covariance(training)?;
    linalg::inverse_sqrt(&cov)
}

fn whiten_point(w: &DMatrix<f64>, p: &Point) -> Point {
    let v = w * p.to_vector();
    Point::new(v.iter().copied().collect()).expect("whitened point")
}

/// Affine-invariant kNN: Euclidean kNN on the whitened sample.
pub fn affine_knn_classify(
    x: &Point,
    training: &LabeledSample,
    k: usize,
    tie_seed: RngSeed,
) -> Result<u8> {
    let w = whitening_matrix(training)?;
    let white = LabeledSample::new(
        training.points().iter().map(|p| whiten_point(&w, p)).collect(),
        training.labels().to_vec(),
    )?;
    euclidean_knn_classify(&whiten_point(&w, x), &white, k, tie_seed)
}

/// Gaussian plug-in discriminant model (shared by LDA and QDA). Stores
/// per-class means, inverse covariances with log-determinants, and empirical
/// priors.
#[derive(Debug, Clone)]
pub struct GaussianModel {
    pub linear: bool,
    pub means: [DVector<f64>; 2],
    pub sigma_invs: [DMatrix<f64>; 2],
    pub log_dets: [f64; 2],
    pub priors: [f64; 2],
}

fn log_det_spd(m: &DMatrix<f64>) -> Result<f64> {
    let eig = ((m + m.transpose()) * 0.5).symmetric_eigen();
    let mut acc = 0.0;
    for &ev in eig.eigenvalues.iter() {
        if ev <= linalg::EIGEN_TOL {
            return Err(Error::Singular { eigenvalue: ev, tolerance: linalg::EIGEN_TOL });
        }
        acc += ev.ln();
    }
    Ok(acc)
}

/// Fit linear discriminant analysis: common within-class pooled covariance,
/// empirical means and class-frequency priors.
pub fn fit_lda(training: &LabeledSample) -> Result<GaussianModel> {
    check_two_classes(training)?;
    let pts0 = training.class_points(0);
    let pts1 = training.class_points(1);
    let pooled = linalg::within_class_covariance(training)?;
    let inv = linalg::spd_inverse(&pooled)?;
    let log_det = log_det_spd(&pooled)?;
    let n = training.len() as f64;
    Ok(GaussianModel {
        linear: true,
        means: [linalg::mean(&pts0), linalg::mean(&pts1)],
        sigma_invs: [inv.clone(), inv],
        log_dets: [log_det, log_det],
        priors: [pts0.len() as f64 / n, pts1.len() as f64 / n],
    })
}

/// Fit quadratic discriminant analysis: per-class covariances.
pub fn fit_qda(training: &LabeledSample) -> Result<GaussianModel> {
    check_two_classes(training)?;
    let d = training.dim();
    let mut means = Vec::with_capacity(2);
    let mut invs = Vec::with_capacity(2);
    let mut log_dets = Vec::with_capacity(2);
    let mut priors = Vec::with_capacity(2);
    for label in [0u8, 1u8] {
        let pts = training.class_points(label);
        if pts.len() < d + 1 {
            return Err(Error::InsufficientData(format!(
                "QDA needs at least d + 1 = {} points in class {label}, got {}",
                d + 1,
                pts.len()
            )));
        }
        let cov = linalg::covariance(&pts)?;
        invs.push(linalg::spd_inverse(&cov)?);
        log_dets.push(log_det_spd(&cov)?);
        means.push(linalg::mean(&pts));
        priors.push(pts.len() as f64 / training.len() as f64);
    }
    Ok(GaussianModel {
        linear: false,
        means: [means.remove(0), means.remove(0)],
        sigma_invs: [invs.remove(0), invs.remove(0)],
        log_dets: [log_dets.remove(0), log_dets.remove(0)],
        priors: [priors[0], priors[1]],
    })
}

/// Gaussian plug-in rule: label 1 iff the class-1 discriminant strictly
/// dominates; exact ties go to class 0.
pub fn classify_gaussian(model: &GaussianModel, x: &Point) -> Result<u8> {
    let xv = x.to_vector();
    if xv.len() != model.means[0].len() {
        return Err(Error::DimensionMismatch { expected: model.means[0].len(), got: xv.len() });
    }
    let mut g = [0.0f64; 2];
    for j in 0..2 {
        let d2 = linalg::mahalanobis_sq(&xv, &model.means[j], &model.sigma_invs[j]);
        g[j] = model.priors[j].ln() - 0.5 * model.log_dets[j] - 0.5 * d2;
    }
    Ok(u8::from(g[1] > g[0]))
}

/// Per-point depths with respect to the two class subsamples (no
/// symmetrization): the coordinates of the DD-plot.
pub fn dd_points(training: &LabeledSample, spec: &DepthSpec) -> Result<Vec<(f64, f64)>> {
    check_two_classes(training)?;
    let class0 = training.class_points(0);
    let class1 = training.class_points(1);
    let p0 = PreparedDepth::new(&class0, spec)?;
    let p1 = PreparedDepth::new(&class1, spec)?;
    training
        .points()
        .iter()
        .map(|p| Ok((p0.eval(p.coords())?, p1.eval(p.coords())?)))
        .collect()
}

/// A fitted DD-plot classifier: a polynomial `r(d) = c_1 d + ... + c_m d^m`
/// through the origin separating the DD-plot, plus the class clouds needed
/// to compute the depths of new queries.
#[derive(Debug, Clone)]
pub struct DdModel {
    pub degree: usize,
    pub coeffs: Vec<f64>,
    pub spec: DepthSpec,
    pub class0: Vec<Point>,
    pub class1: Vec<Point>,
    /// Training misclassification count achieved by `coeffs`.
    pub training_errors: usize,
}

fn poly_eval(coeffs: &[f64], d: f64) -> f64 {
    let mut acc = 0.0;
    let mut pow = d;
    for &c in coeffs {
        acc += c * pow;
        pow *= d;
    }
    acc
}

/// Misclassification count of Eq.-style DD error: class-1 points above the
/// curve in the residual sense count as errors, symmetrically for class 0.
fn dd_errors(coeffs: &[f64], dd: &[(f64, f64)], labels: &[u8]) -> usize {
    dd.iter()
        .zip(labels)
        .filter(|((d0, d1), &y)| {
            let resid = poly_eval(coeffs, *d0) - d1;
            (y == 1 && resid > 0.0) || (y == 0 && -resid > 0.0)
        })
        .count()
}

/// Solve for the degree-`m` polynomial through the origin interpolating the
/// given DD-points; `None` when the Vandermonde system is degenerate.
fn interpolate_through_origin(points: &[(f64, f64)]) -> Option<Vec<f64>> {
    let m = points.len();
    for i in 0..m {
        if points[i].0 == 0.0 {
            return None;
        }
        for j in 0..i {
            if points[i].0 == points[j].0 {
                return None;
            }
        }
    }
    let mut a = DMatrix::zeros(m, m);
    let mut b = DVector::zeros(m);
    for (r, (d0, d1)) in points.iter().enumerate() {
        let mut pow = *d0;
        for c in 0..m {
            a[(r, c)] = pow;
            pow *= d0;
        }
        b[r] = *d1;
    }
    a.lu().solve(&b).map(|v| v.iter().copied().collect())
}

/// Exact DD classifier: enumerate polynomials through the origin and each
/// m-subset of DD-points, keep the one minimizing the training
/// misclassification count (ties to the smallest candidate index). Candidate
/// sets beyond `DD_CANDIDATE_CAP` are uniformly subsampled.
pub fn fit_dd_exact(training: &LabeledSample, spec: &DepthSpec, m: usize) -> Result<DdModel> {
    if !(1..=2).contains(&m) {
        return Err(Error::InvalidInput("exact DD supports degree m in {1, 2}".into()));
    }
    check_two_classes(training)?;
    let dd = dd_points(training, spec)?;
    let labels = training.labels();
    let n = dd.len();

    let mut best: Option<(usize, Vec<f64>)> = None;
    let mut consider = |coeffs: Vec<f64>, errs: usize| {
        if best.as_ref().map_or(true, |(be, _)| errs < *be) {
            best = Some((errs, coeffs));
        }
    };

    if m == 1 {
        let candidates: Vec<usize> = subsample_indices(n, DD_CANDIDATE_CAP);
        for i in candidates {
            if let Some(coeffs) = interpolate_through_origin(&[dd[i]]) {
                let errs = dd_errors(&coeffs, &dd, labels);
                consider(coeffs, errs);
            }
        }
    } else {
        let total = n * (n - 1) / 2;
        let pair_ids = subsample_indices(total, DD_CANDIDATE_CAP);
        for pid in pair_ids {
            let (i, j) = unrank_pair(pid, n);
            if let Some(coeffs) = interpolate_through_origin(&[dd[i], dd[j]]) {
                let errs = dd_errors(&coeffs, &dd, labels);
                consider(coeffs, errs);
            }
        }
    }

    let (training_errors, coeffs) = best.ok_or_else(|| {
        Error::InvalidInput("no admissible DD candidate (all DD-points degenerate)".into())
    })?;
    Ok(DdModel {
        degree: m,
        coeffs,
        spec: *spec,
        class0: training.class_points(0),
        class1: training.class_points(1),
        training_errors,
    })
}

fn subsample_indices(total: usize, cap: usize) -> Vec<usize> {
    if total <= cap {
        (0..total).collect()
    } else {
        let mut rng = RngSeed::new(0xDD5A_11CE, 0).rng();
        let mut idx = rand::seq::index::sample(&mut rng, total, cap).into_vec();
        idx.sort_unstable();
        idx
    }
}

/// Pair `(i, j)`, `i < j`, from its colex rank among all pairs of `0..n`.
fn unrank_pair(rank: usize, _n: usize) -> (usize, usize) {
    // colex: rank = j*(j-1)/2 + i with i < j
    let j = ((((8 * rank + 1) as f64).sqrt() as usize) + 1) / 2;
    let j = if j * (j + 1) / 2 <= rank { j + 1 } else { j };
    let i = rank - j * (j - 1) / 2;
    (i, j)
}

/// Smoothed DD classifier: minimize the logistic surrogate of the training
/// error by gradient descent with backtracking from `starts` random
/// coefficient vectors, returning the visited candidate with minimal exact
/// misclassification count.
pub fn fit_dd_smoothed(
    training: &LabeledSample,
    spec: &DepthSpec,
    m: usize,
    t: f64,
    starts: usize,
    seed: RngSeed,
) -> Result<DdModel> {
    if !(1..=3).contains(&m) {
        return Err(Error::InvalidInput("smoothed DD supports degree m in {1, 2, 3}".into()));
    }
    if t <= 0.0 {
        return Err(Error::InvalidInput("smoothing parameter t must be positive".into()));
    }
    check_two_classes(training)?;
    let dd = dd_points(training, spec)?;
    let labels = training.labels();

    let objective = |c: &[f64]| -> f64 {
        dd.iter()
            .zip(labels)
            .map(|((d0, d1), &y)| {
                let resid = poly_eval(c, *d0) - d1;
                let z = if y == 1 { t * resid } else { -t * resid };
                1.0 / (1.0 + (-z).exp())
            })
            .sum()
    };
    let gradient = |c: &[f64]| -> Vec<f64> {
        let mut g = vec![0.0; m];
        for ((d0, d1), &y) in dd.iter().zip(labels) {
            let resid = poly_eval(c, *d0) - d1;
            let sign = if y == 1 { 1.0 } else { -1.0 };
            let s = 1.0 / (1.0 + (-sign * t * resid).exp());
            let w = sign * t * s * (1.0 - s);
            let mut pow = *d0;
            for gj in g.iter_mut() {
                *gj += w * pow;
                pow *= d0;
            }
        }
        g
    };

    let mut rng = seed.rng();
    let normal = rand_distr::StandardNormal;
    let mut best: Option<(usize, Vec<f64>)> = None;
    let consider = |c: &[f64], best: &mut Option<(usize, Vec<f64>)>| {
        let errs = dd_errors(c, &dd, labels);
        if best.as_ref().map_or(true, |(be, _)| errs < *be) {
            *best = Some((errs, c.to_vec()));
        }
    };

    for _ in 0..starts.max(1) {
        let mut c: Vec<f64> = (0..m).map(|_| rng.sample(normal)).collect();
        let mut f = objective(&c);
        if !f.is_finite() {
            continue;
        }
        consider(&c, &mut best);
        for _ in 0..500 {
            let g = gradient(&c);
            let gnorm: f64 = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            if gnorm < 1e-10 {
                break;
            }
            let mut step = 1.0 / gnorm.max(1.0);
            let mut advanced = false;
            for _ in 0..40 {
                let cand: Vec<f64> =
                    c.iter().zip(&g).map(|(ci, gi)| ci - step * gi).collect();
                let fc = objective(&cand);
                if fc.is_finite() && fc < f {
                    c = cand;
                    f = fc;
                    advanced = true;
                    consider(&c, &mut best);
                    break;
                }
                step *= 0.5;
            }
            if !advanced {
                break;
            }
        }
    }

    let (training_errors, coeffs) = best
        .ok_or_else(|| Error::InvalidInput("smoothed DD: all starts were non-finite".into()))?;
    Ok(DdModel {
        degree: m,
        coeffs,
        spec: *spec,
        class0: training.class_points(0),
        class1: training.class_points(1),
        training_errors,
    })
}

/// Classify with a fitted DD model: label 1 iff `D_1(x) > r(D_0(x))`; ties
/// go to class 0.
pub fn classify_dd(model: &DdModel, x: &Point) -> Result<u8> {
    let p0 = PreparedDepth::new(&model.class0, &model.spec)?;
    let p1 = PreparedDepth::new(&model.class1, &model.spec)?;
    let d0 = p0.eval(x.coords())?;
    let d1 = p1.eval(x.coords())?;
    Ok(u8::from(d1 > poly_eval(&model.coeffs, d0)))
}

/// Configuration of one classifier in a benchmark roster.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ClassifierSpec {
    DepthKnn { spec: DepthSpec, k: usize },
    EuclideanKnn { k: usize },
    AffineKnn { k: usize },
    Lda,
    Qda,
    DdExact { spec: DepthSpec, m: usize },
    DdSmoothed { spec: DepthSpec, m: usize, t: f64, starts: usize },
}

impl ClassifierSpec {
    pub fn name(&self) -> String {
        match self {
            ClassifierSpec::DepthKnn { spec, k } => format!("dknn-{}-k{}", spec.kind, k),
            ClassifierSpec::EuclideanKnn { k } => format!("knn-k{k}"),
            ClassifierSpec::AffineKnn { k } => format!("knnaff-k{k}"),
            ClassifierSpec::Lda => "lda".into(),
            ClassifierSpec::Qda => "qda".into(),
            ClassifierSpec::DdExact { spec, m } => format!("dd-{}-m{}", spec.kind, m),
            ClassifierSpec::DdSmoothed { spec, m, .. } => format!("ddsm-{}-m{}", spec.kind, m),
        }
    }

    pub fn fit(&self, training: &LabeledSample) -> Result<ClassifierModel> {
        self.fit_seeded(training, RngSeed::default())
    }

    /// Fit with an explicit seed for the components that need one (smoothed
    /// DD random starts).
    pub fn fit_seeded(&self, training: &LabeledSample, seed: RngSeed) -> Result<ClassifierModel> {
        check_two_classes(training)?;
        Ok(match self {
            ClassifierSpec::DepthKnn { spec, k } => ClassifierModel::DepthKnn {
                spec: *spec,
                k: *k,
                training: training.clone(),
            },
            ClassifierSpec::EuclideanKnn { k } => {
                ClassifierModel::EuclideanKnn { k: *k, training: training.clone() }
            }
            ClassifierSpec::AffineKnn { k } => {
                let w = whitening_matrix(training)?;
                let white = LabeledSample::new(
                    training.points().iter().map(|p| whiten_point(&w, p)).collect(),
                    training.labels().to_vec(),
                )?;
                ClassifierModel::AffineKnn { k: *k, whitening: w, training: white }
            }
            ClassifierSpec::Lda => ClassifierModel::Gaussian(fit_lda(training)?),
            ClassifierSpec::Qda => ClassifierModel::Gaussian(fit_qda(training)?),
            ClassifierSpec::DdExact { spec, m } => {
                ClassifierModel::Dd(fit_dd_exact(training, spec, *m)?)
            }
            ClassifierSpec::DdSmoothed { spec, m, t, starts } => {
                ClassifierModel::Dd(fit_dd_smoothed(training, spec, *m, *t, *starts, seed)?)
            }
        })
    }
}

/// A fitted classifier, immutable and shareable across threads.
#[derive(Debug, Clone)]
pub enum ClassifierModel {
    DepthKnn { spec: DepthSpec, k: usize, training: LabeledSample },
    EuclideanKnn { k: usize, training: LabeledSample },
    AffineKnn { k: usize, whitening: DMatrix<f64>, training: LabeledSample },
    Gaussian(GaussianModel),
    Dd(DdModel),
}

impl ClassifierModel {
    pub fn predict(&self, x: &Point, tie_seed: RngSeed) -> Result<u8> {
        match self {
            ClassifierModel::DepthKnn { spec, k, training } => {
                dknn_classify(x, training, spec, *k, tie_seed)
            }
            ClassifierModel::EuclideanKnn { k, training } => {
                euclidean_knn_classify(x, training, *k, tie_seed)
            }
            ClassifierModel::AffineKnn { k, whitening, training } => {
                euclidean_knn_classify(&whiten_point(whitening, x), training, *k, tie_seed)
            }
            ClassifierModel::Gaussian(model) => classify_gaussian(model, x),
            ClassifierModel::Dd(model) => classify_dd(model, x),
        }
    }

    /// Misclassification rate (in percent) on a test sample.
    pub fn test_error_percent(&self, test: &LabeledSample, tie_seed: RngSeed) -> Result<f64> {
        let mut errors = 0usize;
        for (i, p) in test.points().iter().enumerate() {
            let pred = self.predict(p, tie_seed.substream(i as u64))?;
            if pred != test.label(i) {
                errors += 1;
            }
        }
        Ok(100.0 * errors as f64 / test.len() as f64)
    }
}

/// Distance groups exposed for reuse by LOOCV (Euclidean and affine kNN).
pub fn euclidean_groups(x: &Point, points: &[Point]) -> Result<Vec<Vec<usize>>> {
    distance_groups(x, points)
}

/// Vote over precomputed groups, exposed for reuse by LOOCV.
pub fn vote_over_groups(
    groups: &[Vec<usize>],
    labels: &[u8],
    k: usize,
    tie_seed: RngSeed,
) -> u8 {
    grouped_vote(groups, labels, k, tie_seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depth::DepthKind;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    fn sample(points: &[&[f64]], labels: &[u8]) -> LabeledSample {
        LabeledSample::new(
            points.iter().map(|c| pt(c)).collect(),
            labels.to_vec(),
        )
        .unwrap()
    }

    const TIE: RngSeed = RngSeed { seed: 99, stream: 0 };

    #[test]
    fn dknn_posterior_counts() {
        // 1-D sample where the 4 nearest of x = 0 are {-1, -2, 1, 2} with
        // labels 1,0,1,0 -> posterior 0.5.
        let tr = sample(&[&[-1.0], &[-2.0], &[1.0], &[2.0], &[10.0]], &[1, 0, 1, 0, 0]);
        let eta = dknn_posterior(&pt(&[0.0]), &tr, &DepthSpec::halfspace(), 4).unwrap();
        assert_eq!(eta, 0.5);
        // all-ones neighborhood
        let tr = sample(&[&[0.1], &[0.2], &[5.0]], &[1, 1, 0]);
        let eta = dknn_posterior(&pt(&[0.0]), &tr, &DepthSpec::halfspace(), 2).unwrap();
        assert_eq!(eta, 1.0);
    }

    #[test]
    fn dknn_majority() {
        let tr = sample(&[&[0.1], &[0.2], &[0.3], &[5.0], &[6.0]], &[1, 1, 1, 0, 0]);
        let label = dknn_classify(&pt(&[0.0]), &tr, &DepthSpec::halfspace(), 4, TIE).unwrap();
        assert_eq!(label, 1);
    }

    #[test]
    fn dknn_tie_resolved_on_next_region() {
        // x = 0: neighborhood {-1, 1} ties 1-1; expanding pulls in the pair
        // {-2, 2} both labeled 1 -> strict class-1 majority.
        let tr = sample(&[&[-1.0], &[1.0], &[-2.0], &[2.0]], &[0, 1, 1, 1]);
        let label = dknn_classify(&pt(&[0.0]), &tr, &DepthSpec::halfspace(), 2, TIE).unwrap();
        assert_eq!(label, 1);
    }

    #[test]
    fn dknn_full_tie_uses_coin_deterministically() {
        let tr = sample(&[&[-1.0], &[1.0]], &[0, 1]);
        let a = dknn_classify(&pt(&[0.0]), &tr, &DepthSpec::halfspace(), 2, TIE).unwrap();
        let b = dknn_classify(&pt(&[0.0]), &tr, &DepthSpec::halfspace(), 2, TIE).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dknn_rejects_single_class() {
        let tr = sample(&[&[0.0], &[1.0]], &[0, 0]);
        assert!(dknn_classify(&pt(&[0.5]), &tr, &DepthSpec::halfspace(), 1, TIE).is_err());
    }

    #[test]
    fn euclidean_basics() {
        let tr = sample(&[&[-1.0, 0.0], &[1.0, 0.0]], &[0, 1]);
        assert_eq!(euclidean_knn_classify(&pt(&[0.5, 0.0]), &tr, 1, TIE).unwrap(), 1);
        assert_eq!(euclidean_knn_classify(&pt(&[-1.0, 0.0]), &tr, 1, TIE).unwrap(), 0);
    }

    #[test]
    fn affine_knn_matches_euclidean_on_isotropic_data() {
        // Perfectly isotropic pooled covariance: whitening is a similarity.
        let tr = sample(
            &[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0], &[0.0, -1.0]],
            &[1, 0, 1, 0],
        );
        for q in [&[0.4, 0.1], &[-0.2, -0.6], &[0.8, 0.9]] {
            let a = affine_knn_classify(&pt(q), &tr, 1, TIE).unwrap();
            let e = euclidean_knn_classify(&pt(q), &tr, 1, TIE).unwrap();
            assert_eq!(a, e);
        }
    }

    #[test]
    fn lda_symmetric_boundary() {
        // Equal spherical classes at (-1, 0) and (1, 0): boundary is the
        // vertical axis.
        let mut points: Vec<&[f64]> = Vec::new();
        let c0: Vec<[f64; 2]> = vec![[-1.0, 0.0], [-2.0, 0.5], [-1.5, -0.5], [-0.5, 0.0], [-1.0, 1.0]];
        let c1: Vec<[f64; 2]> = vec![[1.0, 0.0], [2.0, 0.5], [1.5, -0.5], [0.5, 0.0], [1.0, 1.0]];
        for p in &c0 {
            points.push(p);
        }
        for p in &c1 {
            points.push(p);
        }
        let tr = sample(&points, &[0, 0, 0, 0, 0, 1, 1, 1, 1, 1]);
        let model = fit_lda(&tr).unwrap();
        assert_eq!(classify_gaussian(&model, &pt(&[0.1, 0.25])).unwrap(), 1);
        assert_eq!(classify_gaussian(&model, &pt(&[-0.1, 0.25])).unwrap(), 0);
    }

    #[test]
    fn qda_reduces_to_lda_on_mirror_symmetric_classes() {
        // Class 1 is an exact translate of class 0, so per-class sample
        // covariances coincide with the pooled estimate.
        let c0: Vec<[f64; 2]> = vec![[0.0, 0.0], [1.0, 0.3], [-0.6, 0.9], [0.4, -0.8], [0.2, 0.5]];
        let shift = [5.0, 2.0];
        let mut pts_all: Vec<Vec<f64>> = c0.iter().map(|p| p.to_vec()).collect();
        for p in &c0 {
            pts_all.push(vec![p[0] + shift[0], p[1] + shift[1]]);
        }
        let refs: Vec<&[f64]> = pts_all.iter().map(|v| v.as_slice()).collect();
        let tr = sample(&refs, &[0, 0, 0, 0, 0, 1, 1, 1, 1, 1]);
        let lda = fit_lda(&tr).unwrap();
        let qda = fit_qda(&tr).unwrap();
        for q in [&[0.0, 0.0], &[2.5, 1.0], &[5.0, 2.0], &[1.0, 3.0], &[4.0, -1.0]] {
            assert_eq!(
                classify_gaussian(&lda, &pt(q)).unwrap(),
                classify_gaussian(&qda, &pt(q)).unwrap()
            );
        }
    }

    #[test]
    fn dd_point_symmetries() {
        let tr = sample(
            &[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[5.0, 5.0], &[6.0, 5.0], &[5.0, 6.0]],
            &[0, 0, 0, 1, 1, 1],
        );
        let spec = DepthSpec::halfspace();
        let dd = dd_points(&tr, &spec).unwrap();
        // First point is deep in class 0 and outside class 1's hull.
        assert!(dd[0].0 > 0.0);
        assert_eq!(dd[0].1, 0.0);
        // Swapping labels swaps coordinates.
        let swapped = LabeledSample::new(
            tr.points().to_vec(),
            tr.labels().iter().map(|&l| 1 - l).collect(),
        )
        .unwrap();
        let dd_sw = dd_points(&swapped, &spec).unwrap();
        for (a, b) in dd.iter().zip(&dd_sw) {
            assert_eq!(a.0, b.1);
            assert_eq!(a.1, b.0);
        }
    }

    #[test]
    fn dd_exact_separable_fixture() {
        // Class 1 deep within its own cloud, class 0 in its own: the
        // diagonal separates and training error is zero.
        let tr = sample(
            &[
                &[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[0.3, 0.3],
                &[10.0, 10.0], &[11.0, 10.0], &[10.0, 11.0], &[10.3, 10.3],
            ],
            &[0, 0, 0, 0, 1, 1, 1, 1],
        );
        let model = fit_dd_exact(&tr, &DepthSpec::halfspace(), 1).unwrap();
        assert_eq!(model.training_errors, 0);
    }

    #[test]
    fn dd_slope_one_equals_max_depth_rule() {
        let tr = sample(
            &[
                &[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[0.4, 0.4], &[0.2, 0.1],
                &[2.0, 2.0], &[3.0, 2.0], &[2.0, 3.0], &[2.4, 2.4], &[2.2, 2.1],
            ],
            &[0, 0, 0, 0, 0, 1, 1, 1, 1, 1],
        );
        let spec = DepthSpec::halfspace();
        let dd = dd_points(&tr, &spec).unwrap();
        let errs = dd_errors(&[1.0], &dd, tr.labels());
        // max-depth rule I[D1 > D0]: resid = d0 - d1 > 0 means predict 0.
        let manual = dd
            .iter()
            .zip(tr.labels())
            .filter(|((d0, d1), &y)| {
                let pred = u8::from(d1 > d0);
                // the DD error formula counts strict-side mistakes only
                if d0 == d1 {
                    false
                } else {
                    pred != y
                }
            })
            .count();
        assert_eq!(errs, manual);
    }

    #[test]
    fn dd_exact_matches_brute_force_single_point_candidates() {
        let tr = sample(
            &[
                &[0.0, 0.1], &[1.1, 0.0], &[0.2, 1.0], &[0.5, 0.4], &[0.7, 0.1], &[0.1, 0.6],
                &[1.6, 1.7], &[2.4, 1.9], &[1.8, 2.6], &[2.1, 2.2], &[2.6, 2.0], &[1.9, 1.8],
            ],
            &[0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1],
        );
        let spec = DepthSpec::halfspace();
        let model = fit_dd_exact(&tr, &spec, 1).unwrap();
        let dd = dd_points(&tr, &spec).unwrap();
        let brute = dd
            .iter()
            .filter(|(d0, _)| *d0 != 0.0)
            .map(|(d0, d1)| dd_errors(&[d1 / d0], &dd, tr.labels()))
            .min()
            .unwrap();
        assert_eq!(model.training_errors, brute);
    }

    #[test]
    fn dd_smoothed_tracks_exact_on_separable_data() {
        let tr = sample(
            &[
                &[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[0.3, 0.3],
                &[10.0, 10.0], &[11.0, 10.0], &[10.0, 11.0], &[10.3, 10.3],
            ],
            &[0, 0, 0, 0, 1, 1, 1, 1],
        );
        let spec = DepthSpec::halfspace();
        let model =
            fit_dd_smoothed(&tr, &spec, 1, 100.0, 20, RngSeed::new(3, 0)).unwrap();
        assert_eq!(model.training_errors, 0);
    }

    #[test]
    fn dd_smoothed_large_t_matches_exact_training_error() {
        let tr = sample(
            &[
                &[0.0, 0.1], &[1.1, 0.0], &[0.2, 1.0], &[0.5, 0.4], &[0.7, 0.1], &[0.1, 0.6],
                &[1.1, 1.3], &[1.9, 1.4], &[1.3, 2.1], &[1.6, 1.7], &[2.1, 1.5], &[1.4, 1.3],
            ],
            &[0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1],
        );
        let spec = DepthSpec::halfspace();
        let exact = fit_dd_exact(&tr, &spec, 1).unwrap();
        let smoothed =
            fit_dd_smoothed(&tr, &spec, 1, 1e4, 100, RngSeed::new(11, 0)).unwrap();
        assert_eq!(smoothed.training_errors, exact.training_errors);
    }

    #[test]
    fn classify_dd_outsider_goes_to_class_zero() {
        let tr = sample(
            &[
                &[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[0.3, 0.3],
                &[3.0, 3.0], &[4.0, 3.0], &[3.0, 4.0], &[3.3, 3.3],
            ],
            &[0, 0, 0, 0, 1, 1, 1, 1],
        );
        let model = fit_dd_exact(&tr, &DepthSpec::halfspace(), 1).unwrap();
        // Far outside both hulls: D0 = D1 = 0 -> label 0 for any polynomial
        // through the origin.
        assert_eq!(classify_dd(&model, &pt(&[100.0, -100.0])).unwrap(), 0);
    }

    #[test]
    fn plug_in_identity_without_ties() {
        let tr = sample(
            &[&[0.1], &[0.4], &[0.9], &[5.0], &[5.3], &[5.8], &[6.1]],
            &[0, 0, 1, 1, 1, 0, 1],
        );
        let spec = DepthSpec::mahalanobis();
        for q in [&[0.2], &[5.5], &[3.0], &[6.0]] {
            let x = pt(q);
            let eta = dknn_posterior(&x, &tr, &spec, 3).unwrap();
            if eta != 0.5 {
                let label = dknn_classify(&x, &tr, &spec, 3, TIE).unwrap();
                assert_eq!(label, u8::from(eta > 0.5));
            }
        }
    }

    #[test]
    fn label_swap_flips_predictions() {
        let tr = sample(
            &[&[0.0, 0.3], &[1.0, -0.2], &[2.0, 0.6], &[3.0, 0.1], &[4.0, -0.4], &[5.0, 0.2]],
            &[0, 1, 0, 1, 1, 0],
        );
        let swapped = LabeledSample::new(
            tr.points().to_vec(),
            tr.labels().iter().map(|&l| 1 - l).collect(),
        )
        .unwrap();
        let spec = DepthSpec::halfspace();
        for q in [&[0.5, 0.0], &[3.5, 0.0], &[2.2, 0.4]] {
            let x = pt(q);
            let eta = dknn_posterior(&x, &tr, &spec, 3).unwrap();
            if eta == 0.5 {
                continue; // tie convention differs by design
            }
            let a = dknn_classify(&x, &tr, &spec, 3, TIE).unwrap();
            let b = dknn_classify(&x, &swapped, &spec, 3, TIE).unwrap();
            assert_eq!(a, 1 - b);
        }
    }

    #[test]
    fn unrank_pair_is_a_bijection() {
        let n = 9;
        let mut seen = std::collections::HashSet::new();
        for r in 0..n * (n - 1) / 2 {
            let (i, j) = unrank_pair(r, n);
            assert!(i < j && j < n, "rank {r} gave ({i}, {j})");
            assert!(seen.insert((i, j)));
        }
    }

    #[test]
    fn depth_kind_is_used_in_roster_names() {
        let s = ClassifierSpec::DepthKnn { spec: DepthSpec::new(DepthKind::Halfspace), k: 5 };
        assert_eq!(s.name(), "dknn-halfspace-k5");
    }
}

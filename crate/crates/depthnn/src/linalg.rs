//! Small dense linear-algebra helpers: pooled covariance, symmetric
//! inverse square root and friends. Dimensions here are tiny (d <= ~10).

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::sample::{LabeledSample, Point};

/// Eigenvalue floor below which a matrix is treated as singular.
pub const EIGEN_TOL: f64 = 1e-12;

/// Sample mean of a set of points.
pub fn mean(points: &[Point]) -> DVector<f64> {
    let d = points[0].dim();
    let mut m = DVector::zeros(d);
    for p in points {
        m += p.to_vector();
    }
    m / points.len() as f64
}

/// Sample covariance (divisor `n - 1`) of a set of points.
pub fn covariance(points: &[Point]) -> Result<DMatrix<f64>> {
    let n = points.len();
    if n < 2 {
        return Err(Error::InsufficientData("covariance needs at least 2 points".into()));
    }
    let d = points[0].dim();
    let m = mean(points);
    let mut c = DMatrix::zeros(d, d);
    for p in points {
        let v = p.to_vector() - &m;
        c += &v * v.transpose();
    }
    Ok(c / (n - 1) as f64)
}

/// Covariance of the pooled sample, ignoring labels (divisor `n - 1`).
pub fn pooled_covariance(sample: &LabeledSample) -> Result<DMatrix<f64>> {
    covariance(sample.points())
}

/// Within-class pooled covariance used by LDA: class-centered scatter with
/// divisor `n - 2`.
pub fn within_class_covariance(sample: &LabeledSample) -> Result<DMatrix<f64>> {
    let n = sample.len();
    if n < 3 {
        return Err(Error::InsufficientData("pooled within-class covariance needs n >= 3".into()));
    }
    let d = sample.dim();
    let mut c = DMatrix::zeros(d, d);
    for label in [0u8, 1u8] {
        let pts = sample.class_points(label);
        if pts.is_empty() {
            continue;
        }
        let m = mean(&pts);
        for p in &pts {
            let v = p.to_vector() - &m;
            c += &v * v.transpose();
        }
    }
    Ok(c / (n - 2) as f64)
}

/// Symmetric inverse square root `M` of an SPD matrix, with `M S M = I`.
///
/// Eigenvalues at or below `EIGEN_TOL` are an error rather than being
/// regularized away.
pub fn inverse_sqrt(matrix: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let sym = (matrix + matrix.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let mut inv_sqrt = DVector::zeros(eig.eigenvalues.len());
    for (i, &ev) in eig.eigenvalues.iter().enumerate() {
        if ev <= EIGEN_TOL {
            return Err(Error::Singular { eigenvalue: ev, tolerance: EIGEN_TOL });
        }
        inv_sqrt[i] = 1.0 / ev.sqrt();
    }
    let q = &eig.eigenvectors;
    Ok(q * DMatrix::from_diagonal(&inv_sqrt) * q.transpose())
}

/// Inverse of an SPD matrix via its eigendecomposition, with the same
/// singularity guard as [`inverse_sqrt`].
pub fn spd_inverse(matrix: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let m = inverse_sqrt(matrix)?;
    Ok(&m * &m)
}

/// Squared Mahalanobis distance given a precomputed inverse scatter.
pub fn mahalanobis_sq(x: &DVector<f64>, mu: &DVector<f64>, sigma_inv: &DMatrix<f64>) -> f64 {
    let v = x - mu;
    (v.transpose() * sigma_inv * &v)[(0, 0)]
}

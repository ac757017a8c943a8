//! Core data model: points, labeled samples and affine maps.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in `R^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInput("point must have dimension >= 1".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("point coordinates must be finite".into()));
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn to_vector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.coords)
    }
}

impl std::ops::Index<usize> for Point {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

/// Euclidean distance between two coordinate slices.
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// A binary-labeled training sample: `n` points in a common dimension with
/// labels in `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledSample {
    points: Vec<Point>,
    labels: Vec<u8>,
}

impl LabeledSample {
    pub fn new(points: Vec<Point>, labels: Vec<u8>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InsufficientData("sample must contain at least one point".into()));
        }
        if points.len() != labels.len() {
            return Err(Error::InvalidInput(format!(
                "{} points but {} labels",
                points.len(),
                labels.len()
            )));
        }
        let d = points[0].dim();
        for p in &points {
            if p.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, got: p.dim() });
            }
        }
        if labels.iter().any(|&l| l > 1) {
            return Err(Error::InvalidInput("labels must be 0 or 1".into()));
        }
        Ok(Self { points, labels })
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

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn label(&self, i: usize) -> u8 {
        self.labels[i]
    }

    /// Number of observations carrying the given label.
    pub fn class_count(&self, label: u8) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    /// Points belonging to the given class, in sample order.
    pub fn class_points(&self, label: u8) -> Vec<Point> {
        self.points
            .iter()
            .zip(&self.labels)
            .filter(|(_, &l)| l == label)
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// Sub-sample at the given indices.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let points = indices.iter().map(|&i| self.points[i].clone()).collect();
        let labels = indices.iter().map(|&i| self.labels[i]).collect();
        Self::new(points, labels)
    }

    /// Sample with observation `i` removed.
    pub fn without(&self, i: usize) -> Result<Self> {
        let mut points = self.points.clone();
        let mut labels = self.labels.clone();
        points.remove(i);
        labels.remove(i);
        Self::new(points, labels)
    }
}

/// Determinant tolerance below which an affine map is rejected as singular.
pub const AFFINE_DET_TOL: f64 = 1e-12;

/// An invertible affine transformation `x -> A x + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    matrix: DMatrix<f64>,
    shift: DVector<f64>,
}

impl AffineMap {
    pub fn new(matrix: DMatrix<f64>, shift: DVector<f64>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() != shift.len() {
            return Err(Error::InvalidInput("affine map shapes must agree".into()));
        }
        let det = matrix.clone().determinant();
        if det.abs() < AFFINE_DET_TOL {
            return Err(Error::Singular { eigenvalue: det, tolerance: AFFINE_DET_TOL });
        }
        Ok(Self { matrix, shift })
    }

    pub fn identity(d: usize) -> Self {
        Self { matrix: DMatrix::identity(d, d), shift: DVector::zeros(d) }
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn shift(&self) -> &DVector<f64> {
        &self.shift
    }

    pub fn apply_point(&self, p: &Point) -> Result<Point> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: p.dim() });
        }
        let v = &self.matrix * p.to_vector() + &self.shift;
        Point::new(v.iter().copied().collect())
    }

    /// The inverse map `y -> A^{-1}(y - b)`.
    pub fn inverse(&self) -> Result<Self> {
        let inv = self
            .matrix
            .clone()
            .try_inverse()
            .ok_or(Error::Singular { eigenvalue: 0.0, tolerance: AFFINE_DET_TOL })?;
        let shift = -&inv * &self.shift;
        Ok(Self { matrix: inv, shift })
    }
}

/// Apply an affine map to every point of a sample, keeping the labels.
pub fn apply_affine(map: &AffineMap, sample: &LabeledSample) -> Result<LabeledSample> {
    if sample.dim() != map.dim() {
        return Err(Error::DimensionMismatch { expected: map.dim(), got: sample.dim() });
    }
    let points = sample
        .points()
        .iter()
        .map(|p| map.apply_point(p))
        .collect::<Result<Vec<_>>>()?;
    LabeledSample::new(points, sample.labels().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn point_rejects_non_finite() {
        assert!(Point::new(vec![f64::NAN]).is_err());
        assert!(Point::new(vec![]).is_err());
    }

    #[test]
    fn identity_map_is_a_fixed_point() {
        let s = LabeledSample::new(vec![pt(&[1.0, -1.0]), pt(&[0.5, 2.0])], vec![0, 1]).unwrap();
        let id = AffineMap::identity(2);
        assert_eq!(apply_affine(&id, &s).unwrap(), s);
    }

    #[test]
    fn scaling_map() {
        let map =
            AffineMap::new(DMatrix::from_diagonal_element(2, 2, 2.0), DVector::zeros(2)).unwrap();
        let out = map.apply_point(&pt(&[1.0, -1.0])).unwrap();
        assert_eq!(out.coords(), &[2.0, -2.0]);
    }

    #[test]
    fn swap_and_shift_map() {
        // A = [[0,1],[1,0]], b = (1,0): (3,4) -> (5,3).
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let map = AffineMap::new(a, DVector::from_column_slice(&[1.0, 0.0])).unwrap();
        let out = map.apply_point(&pt(&[3.0, 4.0])).unwrap();
        assert_eq!(out.coords(), &[5.0, 3.0]);
    }

    #[test]
    fn singular_map_rejected() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(AffineMap::new(a, DVector::zeros(2)).is_err());
    }

    #[test]
    fn affine_roundtrip() {
        let a = DMatrix::from_row_slice(2, 2, &[1.5, 0.3, -0.7, 2.0]);
        let map = AffineMap::new(a, DVector::from_column_slice(&[3.0, -1.0])).unwrap();
        let s = LabeledSample::new(vec![pt(&[1.0, 2.0]), pt(&[-4.0, 0.5])], vec![1, 0]).unwrap();
        let back = apply_affine(&map.inverse().unwrap(), &apply_affine(&map, &s).unwrap()).unwrap();
        for (p, q) in s.points().iter().zip(back.points()) {
            for (a, b) in p.coords().iter().zip(q.coords()) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let map = AffineMap::identity(3);
        let s = LabeledSample::new(vec![pt(&[1.0, 2.0])], vec![0]).unwrap();
        assert!(apply_affine(&map, &s).is_err());
    }
}

//! Symmetrization and depth-based neighborhoods.
//!
//! Reflecting the sample through a query point `x` makes `x` the deepest
//! point of the augmented cloud, so the depth of each original observation
//! with respect to the 2n symmetrized points orders the sample outward from
//! `x`. The smallest depth region containing at least `k` originals is the
//! depth-based neighborhood; depth ties are kept as whole groups, so its
//! realized size can exceed `k`.

use serde::{Deserialize, Serialize};

use crate::depth::{DepthSpec, PreparedDepth};
use crate::error::{Error, Result};
use crate::sample::Point;

/// A sample together with its reflections `2x - X_i` through the query.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetrizedSample {
    pub query: Point,
    pub originals: Vec<Point>,
    pub reflected: Vec<Point>,
}

impl SymmetrizedSample {
    /// Originals followed by reflections: the 2n-point cloud.
    pub fn combined(&self) -> Vec<Point> {
        let mut all = self.originals.clone();
        all.extend(self.reflected.iter().cloned());
        all
    }
}

/// The x-outward ordering: original-sample indices grouped by equal
/// symmetrized depth, groups sorted by strictly decreasing depth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutwardOrdering {
    pub groups: Vec<Vec<usize>>,
    pub depths: Vec<f64>,
}

impl OutwardOrdering {
    /// Total number of ordered observations.
    pub fn len(&self) -> usize {
        self.groups.iter().map(|g| g.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

/// A depth-based neighborhood of a query point: the union of the leading
/// whole groups of the outward ordering whose cumulative size reaches `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthNeighborhood {
    pub beta: f64,
    /// Member indices into the original sample, ascending.
    pub members: Vec<usize>,
    /// Realized count `K >= ceil(beta * n)`.
    pub realized_count: usize,
}

/// Reflect every sample point through `x`.
pub fn symmetrize(x: &Point, points: &[Point]) -> Result<SymmetrizedSample> {
    if points.is_empty() {
        return Err(Error::InsufficientData("cannot symmetrize an empty sample".into()));
    }
    let d = x.dim();
    let mut reflected = Vec::with_capacity(points.len());
    for p in points {
        if p.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: p.dim() });
        }
        let coords = x
            .coords()
            .iter()
            .zip(p.coords())
            .map(|(xc, pc)| 2.0 * xc - pc)
            .collect();
        reflected.push(Point::new(coords)?);
    }
    Ok(SymmetrizedSample { query: x.clone(), originals: points.to_vec(), reflected })
}

/// Group original indices by their depths (exact equality), descending.
fn group_by_depth(depths: &[f64]) -> OutwardOrdering {
    let mut order: Vec<usize> = (0..depths.len()).collect();
    order.sort_by(|&a, &b| {
        depths[b].partial_cmp(&depths[a]).unwrap().then(a.cmp(&b))
    });
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_depths: Vec<f64> = Vec::new();
    for idx in order {
        match group_depths.last() {
            Some(&last) if depths[idx] == last => groups.last_mut().unwrap().push(idx),
            _ => {
                groups.push(vec![idx]);
                group_depths.push(depths[idx]);
            }
        }
    }
    OutwardOrdering { groups, depths: group_depths }
}

/// The x-outward ordering of the sample: depths of the ORIGINAL points with
/// respect to the 2n-point symmetrized cloud (the reflections define the
/// ordering but are not ordered themselves).
pub fn outward_ordering(x: &Point, points: &[Point], spec: &DepthSpec) -> Result<OutwardOrdering> {
    let sym = symmetrize(x, points)?;
    let cloud = sym.combined();
    let prepared = PreparedDepth::new(&cloud, spec)?;
    let depths = points
        .iter()
        .map(|p| prepared.eval(p.coords()))
        .collect::<Result<Vec<f64>>>()?;
    Ok(group_by_depth(&depths))
}

/// Neighborhood extracted from an already-computed ordering.
pub fn neighborhood_from_ordering(
    ordering: &OutwardOrdering,
    n: usize,
    k: usize,
) -> Result<DepthNeighborhood> {
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!("k = {k} out of range 1..={n}")));
    }
    let mut members: Vec<usize> = Vec::with_capacity(k);
    for group in &ordering.groups {
        members.extend_from_slice(group);
        if members.len() >= k {
            break;
        }
    }
    members.sort_unstable();
    let realized_count = members.len();
    Ok(DepthNeighborhood { beta: k as f64 / n as f64, members, realized_count })
}

/// The smallest depth-based neighborhood of `x` containing at least `k`
/// original observations.
pub fn depth_neighborhood(
    x: &Point,
    points: &[Point],
    spec: &DepthSpec,
    k: usize,
) -> Result<DepthNeighborhood> {
    let ordering = outward_ordering(x, points, spec)?;
    neighborhood_from_ordering(&ordering, points.len(), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depth::{depth_of, DepthKind};

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    fn pts(coords: &[&[f64]]) -> Vec<Point> {
        coords.iter().map(|c| pt(c)).collect()
    }

    #[test]
    fn symmetrize_reflections() {
        let s = symmetrize(&pt(&[0.0, 0.0]), &pts(&[&[1.0, 2.0]])).unwrap();
        assert_eq!(s.reflected[0].coords(), &[-1.0, -2.0]);
        let s = symmetrize(&pt(&[1.0, 1.0]), &pts(&[&[3.0, 0.0]])).unwrap();
        assert_eq!(s.reflected[0].coords(), &[-1.0, 2.0]);
    }

    #[test]
    fn symmetrize_fixed_point() {
        let x = pt(&[2.0, -1.0]);
        let s = symmetrize(&x, &[x.clone()]).unwrap();
        assert_eq!(s.reflected[0], x);
    }

    #[test]
    fn symmetrize_dimension_mismatch() {
        assert!(symmetrize(&pt(&[0.0]), &pts(&[&[1.0, 2.0]])).is_err());
    }

    #[test]
    fn univariate_ordering_matches_distances() {
        // d = 1, x = 0, points {-3, 1, 2}: ordering by |X_i - x| for every
        // depth kind.
        let points = pts(&[&[-3.0], &[1.0], &[2.0]]);
        let x = pt(&[0.0]);
        for kind in [
            DepthKind::Halfspace,
            DepthKind::Simplicial,
            DepthKind::Mahalanobis,
            DepthKind::Projection,
        ] {
            let spec = DepthSpec::new(kind);
            let ordering = outward_ordering(&x, &points, &spec).unwrap();
            let flat: Vec<usize> = ordering.groups.iter().flatten().copied().collect();
            assert_eq!(flat, vec![1, 2, 0], "kind {kind}");
        }
    }

    #[test]
    fn ordering_groups_match_scalar_depths() {
        let points = pts(&[
            &[0.3, 0.1],
            &[1.0, -0.4],
            &[-0.8, 0.9],
            &[0.0, 0.0],
            &[2.2, 1.3],
            &[-1.5, -0.7],
            &[0.6, 0.6],
        ]);
        let x = pt(&[0.2, 0.2]);
        let spec = DepthSpec::halfspace();
        let ordering = outward_ordering(&x, &points, &spec).unwrap();
        let cloud = symmetrize(&x, &points).unwrap().combined();
        let mut scalar: Vec<(usize, f64)> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (i, depth_of(p, &cloud, &spec).unwrap()))
            .collect();
        scalar.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
        let flat: Vec<usize> = ordering.groups.iter().flatten().copied().collect();
        assert_eq!(flat, scalar.iter().map(|(i, _)| *i).collect::<Vec<_>>());
        // depths strictly decreasing across groups
        for w in ordering.depths.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn neighborhood_whole_sample() {
        let points = pts(&[&[0.0], &[1.0], &[2.0], &[5.0]]);
        let nb = depth_neighborhood(&pt(&[0.5]), &points, &DepthSpec::halfspace(), 4).unwrap();
        assert_eq!(nb.realized_count, 4);
        assert_eq!(nb.members, vec![0, 1, 2, 3]);
    }

    #[test]
    fn neighborhood_distinct_depths_exact_k() {
        let points = pts(&[&[0.0], &[1.0], &[2.0], &[5.0]]);
        let nb = depth_neighborhood(&pt(&[0.1]), &points, &DepthSpec::halfspace(), 2).unwrap();
        assert_eq!(nb.realized_count, 2);
        assert_eq!(nb.members, vec![0, 1]);
    }

    #[test]
    fn neighborhood_tie_overshoots_k() {
        // x = 0, points at -1 and 1 tie in symmetrized depth; k = 1 pulls
        // both in.
        let points = pts(&[&[-1.0], &[1.0], &[4.0]]);
        let nb = depth_neighborhood(&pt(&[0.0]), &points, &DepthSpec::halfspace(), 1).unwrap();
        assert_eq!(nb.realized_count, 2);
        assert_eq!(nb.members, vec![0, 1]);
    }

    #[test]
    fn neighborhood_monotone_in_k() {
        let points = pts(&[
            &[0.0, 0.0],
            &[1.0, 0.2],
            &[-0.3, 0.8],
            &[2.0, -1.0],
            &[0.7, 0.7],
            &[-1.4, -0.2],
        ]);
        let x = pt(&[0.3, 0.1]);
        let spec = DepthSpec::halfspace();
        let ordering = outward_ordering(&x, &points, &spec).unwrap();
        let mut prev: Vec<usize> = Vec::new();
        for k in 1..=points.len() {
            let nb = neighborhood_from_ordering(&ordering, points.len(), k).unwrap();
            for idx in &prev {
                assert!(nb.members.contains(idx));
            }
            prev = nb.members;
        }
    }

    #[test]
    fn k_out_of_range() {
        let points = pts(&[&[0.0], &[1.0]]);
        assert!(depth_neighborhood(&pt(&[0.0]), &points, &DepthSpec::halfspace(), 0).is_err());
        assert!(depth_neighborhood(&pt(&[0.0]), &points, &DepthSpec::halfspace(), 3).is_err());
    }
}

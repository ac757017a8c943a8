//! Shared oracle implementations for the integration tests: independent,
//! deliberately naive re-computations used to validate the optimized
//! library code.
#![allow(dead_code)] // each test target uses a different subset

use depthnn::depth::{DepthKind, DepthSpec};
use depthnn::{LabeledSample, Point, RngSeed};
use rand::Rng;

/// Random points with standard normal coordinates.
pub fn random_points(seed: RngSeed, n: usize, d: usize) -> Vec<Point> {
    let mut rng = seed.rng();
    (0..n)
        .map(|_| {
            Point::new(
                (0..d).map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal)).collect(),
            )
            .unwrap()
        })
        .collect()
}

/// Random labeled sample with fair-coin labels, re-drawn until both classes
/// are present.
pub fn random_sample(seed: RngSeed, n: usize, d: usize) -> LabeledSample {
    let mut offset = 0;
    loop {
        let points = random_points(seed.substream(offset), n, d);
        let mut rng = seed.substream(offset + 1).rng();
        let labels: Vec<u8> = (0..n).map(|_| u8::from(rng.gen_bool(0.5))).collect();
        if labels.iter().any(|&l| l == 0) && labels.iter().any(|&l| l == 1) {
            return LabeledSample::new(points, labels).unwrap();
        }
        offset += 2;
    }
}

/// Brute-force exact bivariate halfspace depth: the count of points in a
/// closed halfplane through `x` is piecewise constant in the normal
/// direction, with breakpoints at directions perpendicular to each
/// `X_i - x`; the minimum is attained strictly between breakpoints, so
/// counting by dot products at every mid-arc direction is exact.
pub fn brute_halfspace_2d(x: &[f64], points: &[Point]) -> f64 {
    let n = points.len();
    let mut diffs = Vec::new();
    let mut coincident = 0usize;
    for p in points {
        let dx = p.coords()[0] - x[0];
        let dy = p.coords()[1] - x[1];
        if dx == 0.0 && dy == 0.0 {
            coincident += 1;
        } else {
            diffs.push((dx, dy));
        }
    }
    if diffs.is_empty() {
        return 1.0;
    }
    let tau = 2.0 * std::f64::consts::PI;
    let mut breakpoints: Vec<f64> = diffs
        .iter()
        .flat_map(|(dx, dy)| {
            let phi = dy.atan2(*dx);
            [phi + tau / 4.0, phi - tau / 4.0]
        })
        .map(|a| a.rem_euclid(tau))
        .collect();
    breakpoints.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut min_count = usize::MAX;
    for w in 0..breakpoints.len() {
        let a = breakpoints[w];
        let b = if w + 1 < breakpoints.len() { breakpoints[w + 1] } else { breakpoints[0] + tau };
        let mid = (a + b) / 2.0;
        let (u0, u1) = (mid.cos(), mid.sin());
        let count = diffs.iter().filter(|(dx, dy)| u0 * dx + u1 * dy >= 0.0).count();
        min_count = min_count.min(count);
    }
    (min_count + coincident) as f64 / n as f64
}

/// Literal simplicial depth in two dimensions: enumerate every triangle of
/// distinct sample indices and test closed containment with exact-sign
/// cross products (suitable for fixtures in general position).
pub fn literal_simplicial_2d(x: &[f64], points: &[Point]) -> f64 {
    let n = points.len();
    assert!(n >= 3);
    let mut contained = 0usize;
    let mut total = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                total += 1;
                if triangle_contains(
                    points[i].coords(),
                    points[j].coords(),
                    points[k].coords(),
                    x,
                ) {
                    contained += 1;
                }
            }
        }
    }
    contained as f64 / total as f64
}

fn cross(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn triangle_contains(a: &[f64], b: &[f64], c: &[f64], x: &[f64]) -> bool {
    let d1 = cross(a, b, x);
    let d2 = cross(b, c, x);
    let d3 = cross(c, a, x);
    let has_neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
    let has_pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
    !(has_neg && has_pos)
}

/// Independent linear-scan kNN vote with the grouped tie convention:
/// expand whole equal-distance groups, resolve exact vote ties on the next
/// group, fall back to a seeded coin.
pub fn linear_scan_knn(
    x: &Point,
    training: &LabeledSample,
    k: usize,
    tie_seed: RngSeed,
) -> u8 {
    let mut order: Vec<(f64, usize)> = training
        .points()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let d2: f64 = p
                .coords()
                .iter()
                .zip(x.coords())
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            (d2, i)
        })
        .collect();
    order.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    let mut idx = 0usize;
    let mut c0 = 0usize;
    let mut c1 = 0usize;
    let take_group = |idx: &mut usize, c0: &mut usize, c1: &mut usize| {
        let group_dist = order[*idx].0;
        while *idx < order.len() && order[*idx].0 == group_dist {
            if training.label(order[*idx].1) == 1 {
                *c1 += 1;
            } else {
                *c0 += 1;
            }
            *idx += 1;
        }
    };
    while idx < order.len() && c0 + c1 < k {
        take_group(&mut idx, &mut c0, &mut c1);
    }
    loop {
        if c1 > c0 {
            return 1;
        }
        if c0 > c1 {
            return 0;
        }
        if idx >= order.len() {
            return u8::from(tie_seed.rng().gen_bool(0.5));
        }
        take_group(&mut idx, &mut c0, &mut c1);
    }
}

/// Depth spec tuned for fast approximate simplicial depth in tests.
pub fn simplicial_mc(subsets: usize) -> DepthSpec {
    DepthSpec::new(DepthKind::Simplicial).with_max_enumeration(subsets)
}

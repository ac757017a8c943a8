//! Python bindings: depth functions, depth-based neighborhoods, the
//! classifier roster, estimators, and the simulation setups.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use depthnn::classify::{ClassifierModel, ClassifierSpec};
use depthnn::depth::{DepthKind, DepthSpec, PreparedDepth};
use depthnn::error::Error as LibError;
use depthnn::estimate::{
    knn_density as lib_knn_density, knn_regress as lib_knn_regress,
    neighborhood_volume as lib_neighborhood_volume, NeighborhoodKind, RegressionSample,
};
use depthnn::experiments::{
    loocv_select_k as lib_loocv, run_benchmark, BenchmarkConfig, KnnFamily, SimulationSetup,
};
use depthnn::neighbors::depth_neighborhood;
use depthnn::{LabeledSample, Point, RngSeed};

fn to_py_err(e: LibError) -> PyErr {
    match e {
        LibError::Singular { .. }
        | LibError::DegenerateScale { .. }
        | LibError::DegenerateVolume(_) => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse_kind(kind: &str) -> PyResult<DepthSpec> {
    let kind: DepthKind = kind
        .parse()
        .map_err(|_| PyValueError::new_err(format!("unknown depth kind {kind:?}")))?;
    Ok(DepthSpec::new(kind))
}

fn to_points(rows: Vec<Vec<f64>>) -> PyResult<Vec<Point>> {
    rows.into_iter().map(|r| Point::new(r).map_err(to_py_err)).collect()
}

fn to_sample(points: Vec<Vec<f64>>, labels: Vec<u8>) -> PyResult<LabeledSample> {
    LabeledSample::new(to_points(points)?, labels).map_err(to_py_err)
}

fn mode_kind(mode: &str, depth: &str) -> PyResult<NeighborhoodKind> {
    match mode {
        "euclidean" => Ok(NeighborhoodKind::Euclidean),
        "depth" => Ok(NeighborhoodKind::Depth(parse_kind(depth)?)),
        other => Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    }
}

/// Depth of a query point with respect to a reference cloud.
#[pyfunction]
#[pyo3(signature = (x, points, kind="halfspace"))]
fn depth(x: Vec<f64>, points: Vec<Vec<f64>>, kind: &str) -> PyResult<f64> {
    let spec = parse_kind(kind)?;
    let reference = to_points(points)?;
    let prepared = PreparedDepth::new(&reference, &spec).map_err(to_py_err)?;
    prepared.eval(&x).map_err(to_py_err)
}

/// Depths of many query points with respect to a reference cloud.
#[pyfunction]
#[pyo3(signature = (queries, points, kind="halfspace"))]
fn depth_all(queries: Vec<Vec<f64>>, points: Vec<Vec<f64>>, kind: &str) -> PyResult<Vec<f64>> {
    let spec = parse_kind(kind)?;
    let reference = to_points(points)?;
    let prepared = PreparedDepth::new(&reference, &spec).map_err(to_py_err)?;
    queries.iter().map(|q| prepared.eval(q).map_err(to_py_err)).collect()
}

/// Members (indices) and realized count of the depth-based neighborhood of
/// `x` containing at least `k` sample points.
#[pyfunction]
#[pyo3(signature = (x, points, k, kind="halfspace"))]
fn neighborhood(
    x: Vec<f64>,
    points: Vec<Vec<f64>>,
    k: usize,
    kind: &str,
) -> PyResult<(Vec<usize>, usize)> {
    let spec = parse_kind(kind)?;
    let pts = to_points(points)?;
    let xp = Point::new(x).map_err(to_py_err)?;
    let nb = depth_neighborhood(&xp, &pts, &spec, k).map_err(to_py_err)?;
    Ok((nb.members, nb.realized_count))
}

/// Nearest-neighbor regression estimate at `x`.
#[pyfunction]
#[pyo3(signature = (x, points, responses, k, mode="euclidean", kind="halfspace"))]
fn knn_regress(
    x: Vec<f64>,
    points: Vec<Vec<f64>>,
    responses: Vec<f64>,
    k: usize,
    mode: &str,
    kind: &str,
) -> PyResult<f64> {
    let sample = RegressionSample::new(to_points(points)?, responses).map_err(to_py_err)?;
    let xp = Point::new(x).map_err(to_py_err)?;
    lib_knn_regress(&xp, &sample, &mode_kind(mode, kind)?, k).map_err(to_py_err)
}

/// Nearest-neighbor density estimate at `x`.
#[pyfunction]
#[pyo3(signature = (x, points, k, mode="euclidean", kind="halfspace", draws=200_000, seed=0))]
fn knn_density(
    x: Vec<f64>,
    points: Vec<Vec<f64>>,
    k: usize,
    mode: &str,
    kind: &str,
    draws: usize,
    seed: u64,
) -> PyResult<f64> {
    let pts = to_points(points)?;
    let xp = Point::new(x).map_err(to_py_err)?;
    lib_knn_density(&xp, &pts, &mode_kind(mode, kind)?, k, draws, RngSeed::new(seed, 0))
        .map_err(to_py_err)
}

/// Volume of the neighborhood of `x` with at least `k` points; returns
/// `(volume, std_error, draws)`.
#[pyfunction]
#[pyo3(signature = (x, points, k, mode="euclidean", kind="halfspace", draws=200_000, seed=0))]
fn neighborhood_volume(
    x: Vec<f64>,
    points: Vec<Vec<f64>>,
    k: usize,
    mode: &str,
    kind: &str,
    draws: usize,
    seed: u64,
) -> PyResult<(f64, f64, usize)> {
    let pts = to_points(points)?;
    let xp = Point::new(x).map_err(to_py_err)?;
    let v = lib_neighborhood_volume(
        &xp,
        &pts,
        &mode_kind(mode, kind)?,
        k,
        draws,
        RngSeed::new(seed, 0),
    )
    .map_err(to_py_err)?;
    Ok((v.volume, v.std_error, v.draws))
}

/// Generate a labeled sample from one of the six simulation setups.
#[pyfunction]
#[pyo3(signature = (setup, n, seed=0))]
fn generate(setup: usize, n: usize, seed: u64) -> PyResult<(Vec<Vec<f64>>, Vec<u8>)> {
    let s = SimulationSetup::from_index(setup).map_err(to_py_err)?;
    let sample = s.generate(n, RngSeed::new(seed, 0)).map_err(to_py_err)?;
    Ok((
        sample.points().iter().map(|p| p.coords().to_vec()).collect(),
        sample.labels().to_vec(),
    ))
}

/// Monte Carlo Bayes risk of a simulation setup; returns `(risk, std_error)`.
#[pyfunction]
#[pyo3(signature = (setup, draws=100_000, seed=0))]
fn bayes_risk(setup: usize, draws: usize, seed: u64) -> PyResult<(f64, f64)> {
    let s = SimulationSetup::from_index(setup).map_err(to_py_err)?;
    let est = s.bayes_risk(draws, RngSeed::new(seed, 0)).map_err(to_py_err)?;
    Ok((est.risk, est.std_error))
}

/// Leave-one-out cross-validation over a k grid; returns
/// `(best_k, errors)`.
#[pyfunction]
#[pyo3(signature = (points, labels, grid, family="knn", kind="halfspace", seed=0))]
fn loocv_select_k(
    points: Vec<Vec<f64>>,
    labels: Vec<u8>,
    grid: Vec<usize>,
    family: &str,
    kind: &str,
    seed: u64,
) -> PyResult<(usize, Vec<usize>)> {
    let training = to_sample(points, labels)?;
    let fam = match family {
        "knn" => KnnFamily::Euclidean,
        "knnaff" => KnnFamily::Affine,
        "dknn" => KnnFamily::Depth(parse_kind(kind)?),
        other => return Err(PyValueError::new_err(format!("unknown family {other:?}"))),
    };
    let cv = lib_loocv(&training, &fam, &grid, RngSeed::new(seed, 0)).map_err(to_py_err)?;
    Ok((cv.best_k, cv.errors))
}

/// Run a small simulation benchmark; returns a list of
/// `(classifier, mean_error_percent, std_error, completed, failures)`.
#[pyfunction]
#[pyo3(signature = (setup, methods, n_train=200, n_test=100, replications=10, seed=0))]
fn benchmark(
    setup: usize,
    methods: Vec<String>,
    n_train: usize,
    n_test: usize,
    replications: usize,
    seed: u64,
) -> PyResult<Vec<(String, f64, f64, usize, usize)>> {
    let mut classifiers = Vec::new();
    for m in &methods {
        classifiers.push(parse_method(m)?);
    }
    let config = BenchmarkConfig {
        setup: SimulationSetup::from_index(setup).map_err(to_py_err)?,
        classifiers,
        n_train,
        n_test,
        replications,
        seed: RngSeed::new(seed, 0),
    };
    let report = run_benchmark(&config).map_err(to_py_err)?;
    Ok(report
        .summaries
        .into_iter()
        .map(|s| (s.classifier, s.mean_error_percent, s.std_error_percent, s.completed, s.failures))
        .collect())
}

/// Parse a method string like "lda", "qda", "knn:5", "knnaff:5",
/// "dknn:halfspace:5", "dd:halfspace:1".
fn parse_method(text: &str) -> PyResult<ClassifierSpec> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || PyValueError::new_err(format!("unparsable method {text:?}"));
    Ok(match parts[0] {
        "lda" => ClassifierSpec::Lda,
        "qda" => ClassifierSpec::Qda,
        "knn" => {
            ClassifierSpec::EuclideanKnn { k: parts.get(1).ok_or_else(bad)?.parse().map_err(|_| bad())? }
        }
        "knnaff" => {
            ClassifierSpec::AffineKnn { k: parts.get(1).ok_or_else(bad)?.parse().map_err(|_| bad())? }
        }
        "dknn" => ClassifierSpec::DepthKnn {
            spec: parse_kind(parts.get(1).ok_or_else(bad)?)?,
            k: parts.get(2).ok_or_else(bad)?.parse().map_err(|_| bad())?,
        },
        "dd" => ClassifierSpec::DdExact {
            spec: parse_kind(parts.get(1).ok_or_else(bad)?)?,
            m: parts.get(2).ok_or_else(bad)?.parse().map_err(|_| bad())?,
        },
        "ddsm" => ClassifierSpec::DdSmoothed {
            spec: parse_kind(parts.get(1).ok_or_else(bad)?)?,
            m: parts.get(2).ok_or_else(bad)?.parse().map_err(|_| bad())?,
            t: 100.0,
            starts: 100,
        },
        _ => return Err(bad()),
    })
}

/// A fitted binary classifier.
#[pyclass]
struct Classifier {
    model: ClassifierModel,
    name: String,
}

#[pymethods]
impl Classifier {
    /// Fit a classifier. `method` accepts the same strings as
    /// `benchmark`: "lda", "qda", "knn:5", "knnaff:5", "dknn:halfspace:5",
    /// "dd:halfspace:1", "ddsm:halfspace:2".
    #[staticmethod]
    #[pyo3(signature = (method, points, labels, seed=0))]
    fn fit(method: &str, points: Vec<Vec<f64>>, labels: Vec<u8>, seed: u64) -> PyResult<Self> {
        let spec = parse_method(method)?;
        let training = to_sample(points, labels)?;
        let model = spec.fit_seeded(&training, RngSeed::new(seed, 0)).map_err(to_py_err)?;
        Ok(Self { model, name: spec.name() })
    }

    /// Predict the label of one query point.
    #[pyo3(signature = (x, tie_seed=0))]
    fn predict(&self, x: Vec<f64>, tie_seed: u64) -> PyResult<u8> {
        let xp = Point::new(x).map_err(to_py_err)?;
        self.model.predict(&xp, RngSeed::new(tie_seed, 0)).map_err(to_py_err)
    }

    /// Misclassification percentage on a labeled test set.
    #[pyo3(signature = (points, labels, tie_seed=0))]
    fn test_error(&self, points: Vec<Vec<f64>>, labels: Vec<u8>, tie_seed: u64) -> PyResult<f64> {
        let test = to_sample(points, labels)?;
        self.model.test_error_percent(&test, RngSeed::new(tie_seed, 0)).map_err(to_py_err)
    }

    #[getter]
    fn name(&self) -> &str {
        &self.name
    }

    fn __repr__(&self) -> String {
        format!("Classifier({})", self.name)
    }
}

#[pymodule]
fn depthnn_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(depth, m)?)?;
    m.add_function(wrap_pyfunction!(depth_all, m)?)?;
    m.add_function(wrap_pyfunction!(neighborhood, m)?)?;
    m.add_function(wrap_pyfunction!(knn_regress, m)?)?;
    m.add_function(wrap_pyfunction!(knn_density, m)?)?;
    m.add_function(wrap_pyfunction!(neighborhood_volume, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(bayes_risk, m)?)?;
    m.add_function(wrap_pyfunction!(loocv_select_k, m)?)?;
    m.add_function(wrap_pyfunction!(benchmark, m)?)?;
    m.add_class::<Classifier>()?;
    Ok(())
}

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use phlandmarks::data::{generate as generate_sample, DataParams, DatasetKind, LaplaceSpread};
use phlandmarks::experiment;
use phlandmarks::select::{self, Direction, Method, PhDims, PhScoreMode, PhScores};
use phlandmarks::{Error, Label, PointCloud};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn cloud(points: Vec<Vec<f64>>) -> PyResult<PointCloud> {
    PointCloud::new(points).map_err(err)
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(err)
}

/// A landmark selection.
#[pyclass(name = "Selection", frozen)]
struct PySelection {
    #[pyo3(get)]
    landmarks: Vec<usize>,
    #[pyo3(get)]
    super_outliers: Vec<usize>,
    /// Per-point scores, `None` for super outliers; absent for selectors without scores.
    #[pyo3(get)]
    scores: Option<Vec<Option<f64>>>,
    #[pyo3(get)]
    method: String,
}

#[pymethods]
impl PySelection {
    fn __len__(&self) -> usize {
        self.landmarks.len()
    }

    fn __repr__(&self) -> String {
        format!("Selection(method={}, m={})", self.method, self.landmarks.len())
    }
}

impl From<select::SelectionResult> for PySelection {
    fn from(r: select::SelectionResult) -> Self {
        PySelection {
            scores: r
                .scores
                .map(|s| s.into_iter().map(|v| (!v.is_nan()).then_some(v)).collect()),
            landmarks: r.landmarks,
            super_outliers: r.super_outliers,
            method: r.method.to_string(),
        }
    }
}

/// Synthetic dataset as `(points, labels)` with labels "signal" or "noise".
#[pyfunction]
#[pyo3(signature = (kind, n, p, seed, laplace = "scale"))]
fn generate(kind: &str, n: usize, p: f64, seed: u64, laplace: &str) -> PyResult<(Vec<Vec<f64>>, Vec<String>)> {
    let params = DataParams {
        laplace: parse::<LaplaceSpread>(laplace)?,
        ..DataParams::new(parse::<DatasetKind>(kind)?, n, p, seed)
    };
    let s = generate_sample(params).map_err(err)?;
    let points = s.cloud.points().map(<[f64]>::to_vec).collect();
    let labels = s.labels().iter().map(|l| l.as_str().to_string()).collect();
    Ok((points, labels))
}

#[pyfunction]
fn pairwise_distances(points: Vec<Vec<f64>>) -> PyResult<Vec<Vec<f64>>> {
    let d = phlandmarks::pairwise_distances(&cloud(points)?).map_err(err)?;
    Ok((0..d.len()).map(|i| d.row(i).to_vec()).collect())
}

/// PH outlierness of point `y`, or `None` for a super outlier.
#[pyfunction]
#[pyo3(signature = (points, y, delta, mode = "all"))]
fn ph_outlierness(points: Vec<Vec<f64>>, y: usize, delta: f64, mode: &str) -> PyResult<Option<f64>> {
    let o = select::ph_outlierness(&cloud(points)?, y, delta, parse::<PhDims>(mode)?).map_err(err)?;
    Ok(o.score())
}

/// Outlierness of every point.
#[pyfunction]
#[pyo3(signature = (points, delta, mode = "all"))]
fn ph_scores(py: Python<'_>, points: Vec<Vec<f64>>, delta: f64, mode: &str) -> PyResult<Vec<Option<f64>>> {
    let c = cloud(points)?;
    let dims = parse::<PhDims>(mode)?;
    let scores = py.detach(|| PhScores::compute(&c, delta, dims)).map_err(err)?;
    Ok(scores.scores().iter().map(|s| s.score()).collect())
}

/// Selects `m` landmarks. `method` is one of random, maxmin, dense-core, ph, kmm.
#[pyfunction]
#[pyo3(signature = (
    points, m, method = "ph", seed = 0, delta = 0.2, mode = "all", direction = None,
    k = 1, p_signal = 0.6, include_outliers = false,
))]
#[allow(clippy::too_many_arguments)]
fn select_landmarks(
    py: Python<'_>,
    points: Vec<Vec<f64>>,
    m: usize,
    method: &str,
    seed: u64,
    delta: f64,
    mode: &str,
    direction: Option<&str>,
    k: usize,
    p_signal: f64,
    include_outliers: bool,
) -> PyResult<PySelection> {
    let c = cloud(points)?;
    let dims = parse::<PhDims>(mode)?;
    let direction = match direction {
        Some(d) => parse::<Direction>(d)?,
        None if dims == PhDims::Dim1 => Direction::Descending,
        None => Direction::Ascending,
    };
    let method = match method {
        "random" => Method::Random,
        "maxmin" => Method::Maxmin,
        "dense-core" => Method::DenseCore { k },
        "ph" => Method::Ph {
            delta,
            mode: PhScoreMode { dims, direction },
        },
        "kmm" => Method::Kmm {
            p_signal,
            include_outliers,
        },
        other => return Err(PyValueError::new_err(format!("unknown method `{other}`"))),
    };
    let result = py.detach(|| match method {
        Method::Random => select::select_random(&c, m, seed),
        Method::Maxmin => select::select_maxmin(&c, m, seed),
        Method::DenseCore { k } => select::select_dense_core(&c, m, k),
        Method::Ph { delta, mode } => select::select_ph_landmarks(&c, m, delta, mode, seed),
        Method::Kmm {
            p_signal,
            include_outliers,
        } => select::select_kmm_landmarks(&c, m, p_signal, include_outliers, seed),
    });
    Ok(result.map_err(err)?.into())
}

/// Rips barcode as `(dim, birth, death)` triples; essential classes die at `inf`.
#[pyfunction]
#[pyo3(signature = (points, eps_max, dims = vec![0, 1, 2]))]
fn vr_barcode(py: Python<'_>, points: Vec<Vec<f64>>, eps_max: f64, dims: Vec<usize>) -> PyResult<Vec<(usize, f64, f64)>> {
    let c = cloud(points)?;
    let b = py
        .detach(|| phlandmarks::pairwise_distances(&c).and_then(|d| phlandmarks::vr_barcode(&d, eps_max, &dims)))
        .map_err(err)?;
    Ok(b.iter().map(|(d, i)| (d, i.birth, i.death)).collect())
}

#[pyfunction]
fn signal_fraction(landmarks: Vec<usize>, labels: Vec<String>) -> PyResult<f64> {
    let labels: Vec<Label> = labels.iter().map(|l| parse::<Label>(l)).collect::<PyResult<_>>()?;
    let sel = select::SelectionResult {
        landmarks,
        super_outliers: Vec::new(),
        scores: None,
        method: Method::Random,
    };
    experiment::signal_fraction(&sel, &labels).map_err(err)
}

#[pymodule]
fn phlandmarks_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySelection>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(pairwise_distances, m)?)?;
    m.add_function(wrap_pyfunction!(ph_outlierness, m)?)?;
    m.add_function(wrap_pyfunction!(ph_scores, m)?)?;
    m.add_function(wrap_pyfunction!(select_landmarks, m)?)?;
    m.add_function(wrap_pyfunction!(vr_barcode, m)?)?;
    m.add_function(wrap_pyfunction!(signal_fraction, m)?)?;
    Ok(())
}

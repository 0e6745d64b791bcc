//! Signal-fraction sweeps, super-outlier counts, score histograms and
//! global barcodes on landmark subsets.

use rayon::prelude::*;

use crate::barcode::Barcode;
use crate::cloud::{pairwise_distances, Euclidean, Label, Metric, PointCloud};
use crate::data::{generate, DataParams};
use crate::error::{Error, Result};
use crate::rng::derive_seed;
use crate::select::{
    density_rho_k, select_dense_core_from_rho, select_kmm_landmarks, select_maxmin, select_random, Method,
    Outlierness, PhDims, PhScores, SelectionResult,
};
use crate::vr::vr_barcode;

/// Realizations per density when none are given.
pub const DEFAULT_REALIZATIONS: usize = 20;
/// Largest landmark set accepted by [`run_global_barcode`] without an override.
pub const DEFAULT_BARCODE_CAP: usize = 400;

/// `0.02, 0.04, ..., 1.0`.
pub fn default_densities() -> Vec<f64> {
    (1..=50).map(|i| i as f64 / 50.0).collect()
}

/// Fraction of the selected landmarks labeled signal.
pub fn signal_fraction(selection: &SelectionResult, labels: &[Label]) -> Result<f64> {
    if selection.is_empty() {
        return Err(Error::invalid("signal fraction of an empty selection"));
    }
    let mut signal = 0usize;
    for &i in &selection.landmarks {
        match labels.get(i) {
            Some(Label::Signal) => signal += 1,
            Some(Label::Noise) => {}
            None => {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: labels.len(),
                })
            }
        }
    }
    Ok(signal as f64 / selection.len() as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Dataset family, N, p and the seed shared by data and selections.
    pub data: DataParams,
    pub selector: Method,
    densities: Vec<f64>,
    realizations: usize,
}

impl ExperimentConfig {
    pub fn new(data: DataParams, selector: Method, densities: Vec<f64>, realizations: usize) -> Result<Self> {
        if densities.is_empty() {
            return Err(Error::invalid("density grid is empty"));
        }
        if let Some(d) = densities.iter().find(|d| !(**d > 0.0 && **d <= 1.0)) {
            return Err(Error::invalid(format!("density {d} outside (0, 1]")));
        }
        if densities.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("densities must be strictly ascending"));
        }
        if realizations == 0 {
            return Err(Error::invalid("need at least one realization"));
        }
        Ok(ExperimentConfig {
            data,
            selector,
            densities,
            realizations,
        })
    }

    pub fn densities(&self) -> &[f64] {
        &self.densities
    }

    pub fn realizations(&self) -> usize {
        self.realizations
    }

    /// Seed of one (density, realization) cell.
    pub fn cell_seed(&self, density_index: usize, realization: usize) -> u64 {
        derive_seed(self.data.seed, (density_index * self.realizations + realization) as u64 + 1)
    }
}

/// `round(density * n)`, at least 1.
pub fn landmark_count(density: f64, n: usize) -> usize {
    ((density * n as f64).round() as usize).clamp(1, n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub density: f64,
    pub m: usize,
    pub mean: f64,
    /// Population standard deviation over realizations.
    pub std: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawRow {
    pub density: f64,
    pub m: usize,
    pub realization: usize,
    pub seed: u64,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub selector: String,
    pub rows: Vec<SweepRow>,
    /// Every cell, ordered by density then realization.
    pub raw: Vec<RawRow>,
}

/// Mean and population standard deviation.
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

enum Prepared {
    Ph(PhScores),
    DenseCore(Vec<f64>, usize),
    Plain,
}

fn prepare(cloud: &PointCloud, selector: Method) -> Result<Prepared> {
    Ok(match selector {
        Method::Ph { delta, mode } => Prepared::Ph(PhScores::compute(cloud, delta, mode.dims)?),
        Method::DenseCore { k } => Prepared::DenseCore(density_rho_k(cloud, k)?, k),
        _ => Prepared::Plain,
    })
}

fn run_selector(
    cloud: &PointCloud,
    selector: Method,
    prepared: &Prepared,
    m: usize,
    seed: u64,
) -> Result<SelectionResult> {
    match (selector, prepared) {
        (Method::Ph { mode, .. }, Prepared::Ph(scores)) => scores.select(m, mode.direction, seed),
        (_, Prepared::DenseCore(rho, k)) => select_dense_core_from_rho(rho.clone(), m, *k),
        (Method::Random, _) => select_random(cloud, m, seed),
        (Method::Maxmin, _) => select_maxmin(cloud, m, seed),
        (
            Method::Kmm {
                p_signal,
                include_outliers,
            },
            _,
        ) => select_kmm_landmarks(cloud, m, p_signal, include_outliers, seed),
        _ => unreachable!("selector and prepared scores disagree"),
    }
}

/// Signal fractions of `config.selector` on one sample of the configured
/// dataset, over every density and realization.
pub fn run_fraction_sweep(config: &ExperimentConfig) -> Result<SweepTable> {
    let sample = generate(config.data)?;
    let context = |e: Error| e.context(format!("{} seed {}", config.data.kind, config.data.seed));
    run_fraction_sweep_on(&sample.cloud, config).map_err(context)
}

/// Like [`run_fraction_sweep`] on a given labeled cloud.
pub fn run_fraction_sweep_on(cloud: &PointCloud, config: &ExperimentConfig) -> Result<SweepTable> {
    let labels = cloud
        .labels()
        .ok_or_else(|| Error::invalid("signal fractions need a labeled cloud"))?;
    let n = cloud.len();
    let prepared = prepare(cloud, config.selector)?;
    let reps = config.realizations;
    let cells: Vec<(usize, usize)> = (0..config.densities.len())
        .flat_map(|d| (0..reps).map(move |r| (d, r)))
        .collect();
    let raw = cells
        .par_iter()
        .map(|&(d, r)| {
            let density = config.densities[d];
            let m = landmark_count(density, n);
            let seed = config.cell_seed(d, r);
            let selection = run_selector(cloud, config.selector, &prepared, m, seed)
                .map_err(|e| e.context(format!("density {density} realization {r} (seed {seed})")))?;
            Ok(RawRow {
                density,
                m,
                realization: r,
                seed,
                fraction: signal_fraction(&selection, labels)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = raw
        .chunks(reps)
        .map(|cell| {
            let fractions: Vec<f64> = cell.iter().map(|c| c.fraction).collect();
            let (mean, std) = mean_std(&fractions);
            SweepRow {
                density: cell[0].density,
                m: cell[0].m,
                mean,
                std,
            }
        })
        .collect();
    Ok(SweepTable {
        selector: config.selector.to_string(),
        rows,
        raw,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaRow {
    pub delta: f64,
    pub super_outliers: usize,
}

/// Number of super outliers for every δ of an ascending grid.
pub fn run_super_outlier_sweep(cloud: &PointCloud, deltas: &[f64]) -> Result<Vec<DeltaRow>> {
    if deltas.iter().any(|d| !(*d > 0.0 && d.is_finite())) {
        return Err(Error::invalid("every delta must be positive and finite"));
    }
    if deltas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("delta grid must be strictly ascending"));
    }
    let n = cloud.len();
    // A point is a super outlier exactly when its second-nearest neighbor is farther than δ.
    let second: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|y| {
            let (mut a, mut b) = (f64::INFINITY, f64::INFINITY);
            for j in (0..n).filter(|&j| j != y) {
                let d = Euclidean.distance(cloud.point(y), cloud.point(j));
                if d < a {
                    b = a;
                    a = d;
                } else if d < b {
                    b = d;
                }
            }
            b
        })
        .collect();
    let rows: Vec<DeltaRow> = deltas
        .iter()
        .map(|&delta| DeltaRow {
            delta,
            super_outliers: second.iter().filter(|&&s| s > delta).count(),
        })
        .collect();
    assert!(
        rows.windows(2).all(|w| w[1].super_outliers <= w[0].super_outliers),
        "super-outlier count increased along the delta grid"
    );
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreHistogram {
    pub bin_width: f64,
    pub delta: f64,
    pub dims: PhDims,
    /// Bin `i` counts scores in `[i * bin_width, (i + 1) * bin_width)`; the
    /// last bin is closed and ends at or past `2δ`.
    pub signal: Vec<usize>,
    pub noise: Vec<usize>,
    pub super_outliers_signal: usize,
    pub super_outliers_noise: usize,
    pub scores: Vec<Outlierness>,
}

impl ScoreHistogram {
    pub fn bins(&self) -> usize {
        self.signal.len()
    }

    pub fn super_outliers(&self) -> usize {
        self.super_outliers_signal + self.super_outliers_noise
    }

    /// Scores of the non-super-outliers with the given label, ascending.
    pub fn label_scores(&self, labels: &[Label], label: Label) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .scores
            .iter()
            .zip(labels)
            .filter(|(_, &l)| l == label)
            .filter_map(|(s, _)| s.score())
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }
}

/// Histograms of PH outlierness per label. Scores never exceed `2δ`, which
/// fixes the bin range.
pub fn run_histogram(cloud: &PointCloud, delta: f64, dims: PhDims, bin_width: f64) -> Result<ScoreHistogram> {
    if !(bin_width > 0.0 && bin_width.is_finite()) {
        return Err(Error::invalid(format!("bin width must be positive, got {bin_width}")));
    }
    let labels = cloud
        .labels()
        .ok_or_else(|| Error::invalid("histograms need a labeled cloud"))?;
    let scores = PhScores::compute(cloud, delta, dims)?;
    let bins = ((2.0 * delta / bin_width).ceil() as usize).max(1);
    let mut h = ScoreHistogram {
        bin_width,
        delta,
        dims,
        signal: vec![0; bins],
        noise: vec![0; bins],
        super_outliers_signal: 0,
        super_outliers_noise: 0,
        scores: scores.scores().to_vec(),
    };
    for (s, &l) in scores.scores().iter().zip(labels) {
        match (s.score(), l) {
            (None, Label::Signal) => h.super_outliers_signal += 1,
            (None, Label::Noise) => h.super_outliers_noise += 1,
            (Some(v), _) => {
                let b = ((v / bin_width) as usize).min(bins - 1);
                match l {
                    Label::Signal => h.signal[b] += 1,
                    Label::Noise => h.noise[b] += 1,
                }
            }
        }
    }
    Ok(h)
}

/// Global Rips barcode on the first `take` landmarks of `selection`.
/// `cap` bounds `take`; `None` lifts the bound.
pub fn run_global_barcode(
    cloud: &PointCloud,
    selection: &SelectionResult,
    take: usize,
    eps_max: f64,
    dims: &[usize],
    cap: Option<usize>,
) -> Result<Barcode> {
    if take == 0 || take > selection.len() {
        return Err(Error::invalid(format!(
            "take must be in 1..={}, got {take}",
            selection.len()
        )));
    }
    if let Some(cap) = cap.filter(|&c| take > c) {
        return Err(Error::invalid(format!(
            "refusing a global barcode on {take} landmarks (cap {cap}); lift the cap to proceed"
        )));
    }
    let subset = cloud.reordered(&selection.landmarks[..take]);
    vr_barcode(&pairwise_distances(&subset)?, eps_max, dims)
}

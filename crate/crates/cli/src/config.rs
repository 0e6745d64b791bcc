use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Deserialize;

/// Flags shared by every subcommand. Each may also be set in the `--config`
/// file under the same name; a flag on the command line wins.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Options {
    /// Dataset family: sphere-cube, sphere-plane, sphere-line, sphere-laplace, torus, klein
    #[arg(long, global = true)]
    pub dataset: Option<String>,
    /// Read points from this CSV instead of generating them
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Number of points
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Signal probability
    #[arg(long, global = true)]
    pub p: Option<f64>,
    /// Sphere-Laplace spread convention: scale (b = 0.5) or std (b = 0.5/√2)
    #[arg(long, global = true)]
    pub laplace: Option<String>,
    /// Selector: random, maxmin, dense-core, ph, kmm
    #[arg(long, global = true)]
    pub method: Option<String>,
    /// PH neighborhood radius (defaults per dataset)
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    /// PH dimensions: all or dim1
    #[arg(long, global = true)]
    pub mode: Option<String>,
    /// PH order: asc or desc (default asc for all, desc for dim1)
    #[arg(long, global = true)]
    pub direction: Option<String>,
    /// Neighbor rank K for dense-core
    #[arg(long = "k-nn", global = true)]
    #[serde(rename = "k-nn")]
    pub k_nn: Option<usize>,
    /// Append k-means-- outliers to the landmarks
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true")]
    pub include_outliers: Option<bool>,
    /// Comma-separated sampling densities in (0, 1]
    #[arg(long, global = true, value_delimiter = ',')]
    pub densities: Option<Vec<f64>>,
    /// Comma-separated δ grid for delta-sweep
    #[arg(long, global = true, value_delimiter = ',')]
    pub deltas: Option<Vec<f64>>,
    /// Landmark count for select and barcode (overrides --density)
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Sampling density for select and barcode
    #[arg(long, global = true)]
    pub density: Option<f64>,
    /// Realizations per density
    #[arg(long, global = true)]
    pub reps: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Histogram bin width
    #[arg(long, global = true)]
    pub bin_width: Option<f64>,
    /// Landmarks used for the global barcode
    #[arg(long, global = true)]
    pub take: Option<usize>,
    /// Largest Rips scale for the global barcode
    #[arg(long, global = true)]
    pub eps_max: Option<f64>,
    /// Comma-separated homology dimensions for the global barcode
    #[arg(long, global = true, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    /// Allow global barcodes on more than 400 landmarks
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true")]
    pub allow_large: Option<bool>,
    /// Output CSV path (stdout when absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Per-realization CSV for sweep
    #[arg(long, global = true)]
    pub raw: Option<PathBuf>,
    /// Worker threads (all cores when absent)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

macro_rules! overlay {
    ($base:ident, $top:ident, $($field:ident),* $(,)?) => {
        Options { $($field: $top.$field.or($base.$field)),* }
    };
}

impl Options {
    /// Values in `self` win over values in `file`.
    pub fn over(self, file: Options) -> Options {
        let top = self;
        let base = file;
        overlay!(
            base, top, dataset, input, n, p, laplace, method, delta, mode, direction, k_nn, include_outliers,
            densities, deltas, m, density, reps, seed, bin_width, take, eps_max, dims, allow_large, out, raw,
            threads,
        )
    }
}

pub fn load(path: &Path) -> Result<Options> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    let options: Options = toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
    if options.densities.as_ref().is_some_and(|d| d.is_empty()) {
        bail!("config {}: `densities` is empty", path.display());
    }
    Ok(options)
}

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use phlandmarks::data::{generate, DataParams, DatasetKind, LaplaceSpread};
use phlandmarks::experiment::{
    default_densities, landmark_count, run_fraction_sweep_on, run_global_barcode, run_histogram,
    run_super_outlier_sweep, ExperimentConfig, DEFAULT_BARCODE_CAP, DEFAULT_REALIZATIONS,
};
use phlandmarks::io as csvio;
use phlandmarks::select::{
    select_dense_core, select_kmm_landmarks, select_maxmin, select_ph_landmarks, select_random, Direction, Method,
    PhDims, PhScoreMode, SelectionResult,
};
use phlandmarks::PointCloud;

mod config;

use config::Options;

#[derive(Parser)]
#[command(name = "phlandmarks", version, about = "Landmark selection experiments on noisy point clouds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML file with defaults for any flag
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    options: Options,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Write a synthetic dataset as CSV
    Gen,
    /// Select landmarks and write them in selection order
    Select,
    /// Signal fraction of a selector over a density grid
    Sweep,
    /// Super-outlier count over a δ grid
    DeltaSweep,
    /// Histogram of PH outlierness by label
    Hist,
    /// Global Rips barcode on the first landmarks of a selection
    Barcode,
}

struct Run {
    opts: Options,
    kind: DatasetKind,
    data: DataParams,
}

impl Run {
    fn new(opts: Options) -> Result<Self> {
        let kind: DatasetKind = opts.dataset.as_deref().unwrap_or("sphere-cube").parse()?;
        let laplace: LaplaceSpread = opts.laplace.as_deref().unwrap_or("scale").parse()?;
        let data = DataParams {
            kind,
            n: opts.n.unwrap_or(3000),
            p: opts.p.unwrap_or(0.6),
            seed: opts.seed.unwrap_or(0),
            laplace,
        };
        Ok(Run { opts, kind, data })
    }

    fn cloud(&self) -> Result<(PointCloud, Option<DataParams>)> {
        match &self.opts.input {
            Some(path) => {
                let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
                Ok(csvio::read_dataset_csv(io::BufReader::new(file))
                    .with_context(|| format!("reading {}", path.display()))?)
            }
            None => {
                let s = generate(self.data)?;
                Ok((s.cloud, Some(s.params)))
            }
        }
    }

    fn delta(&self) -> f64 {
        self.opts.delta.unwrap_or_else(|| self.kind.default_delta())
    }

    fn ph_mode(&self) -> Result<PhScoreMode> {
        let dims: PhDims = self.opts.mode.as_deref().unwrap_or("all").parse()?;
        let direction: Direction = match self.opts.direction.as_deref() {
            Some(d) => d.parse()?,
            None if dims == PhDims::Dim1 => Direction::Descending,
            None => Direction::Ascending,
        };
        let mode = PhScoreMode { dims, direction };
        if !mode.is_standard() {
            eprintln!("warning: non-standard PH mode dims={dims} direction={direction}");
        }
        Ok(mode)
    }

    fn method(&self) -> Result<Method> {
        Ok(match self.opts.method.as_deref().unwrap_or("ph") {
            "random" => Method::Random,
            "maxmin" => Method::Maxmin,
            "dense-core" => Method::DenseCore {
                k: self.opts.k_nn.unwrap_or(1),
            },
            "ph" => Method::Ph {
                delta: self.delta(),
                mode: self.ph_mode()?,
            },
            "kmm" => Method::Kmm {
                p_signal: self.data.p,
                include_outliers: self.opts.include_outliers.unwrap_or(false),
            },
            other => bail!("unknown method `{other}` (expected random|maxmin|dense-core|ph|kmm)"),
        })
    }

    fn landmark_total(&self, n: usize) -> Result<usize> {
        match (self.opts.m, self.opts.density) {
            (Some(m), _) => Ok(m),
            (None, Some(d)) if d > 0.0 && d <= 1.0 => Ok(landmark_count(d, n)),
            (None, Some(d)) => bail!("density {d} outside (0, 1]"),
            (None, None) => Ok(landmark_count(0.1, n)),
        }
    }

    fn select(&self, cloud: &PointCloud, m: usize) -> Result<SelectionResult> {
        let seed = self.data.seed;
        Ok(match self.method()? {
            Method::Random => select_random(cloud, m, seed)?,
            Method::Maxmin => select_maxmin(cloud, m, seed)?,
            Method::DenseCore { k } => select_dense_core(cloud, m, k)?,
            Method::Ph { delta, mode } => select_ph_landmarks(cloud, m, delta, mode, seed)?,
            Method::Kmm {
                p_signal,
                include_outliers,
            } => select_kmm_landmarks(cloud, m, p_signal, include_outliers, seed)?,
        })
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn execute(command: Command, run: &Run) -> Result<()> {
    let mut out = output(run.opts.out.as_deref())?;
    match command {
        Command::Gen => {
            let s = generate(run.data)?;
            csvio::write_dataset_csv(&mut out, &s.cloud, Some(&s.params))?;
        }
        Command::Select => {
            let (cloud, _) = run.cloud()?;
            let m = run.landmark_total(cloud.len())?;
            let selection = run.select(&cloud, m)?;
            csvio::write_selection_csv(&mut out, &selection, &cloud)?;
        }
        Command::Sweep => {
            let (cloud, params) = run.cloud()?;
            let mut data = params.unwrap_or(run.data);
            data.seed = run.data.seed;
            let densities = run.opts.densities.clone().unwrap_or_else(default_densities);
            let reps = run.opts.reps.unwrap_or(DEFAULT_REALIZATIONS);
            let config = ExperimentConfig::new(data, run.method()?, densities, reps)?;
            let table = run_fraction_sweep_on(&cloud, &config)
                .map_err(|e| anyhow!("{} seed {}: {e}", data.kind, data.seed))?;
            csvio::write_sweep_csv(&mut out, &table, &config)?;
            if let Some(raw) = &run.opts.raw {
                let mut w = output(Some(raw))?;
                csvio::write_sweep_raw_csv(&mut w, &table)?;
                w.flush()?;
            }
        }
        Command::DeltaSweep => {
            let (cloud, _) = run.cloud()?;
            let deltas = run
                .opts
                .deltas
                .clone()
                .unwrap_or_else(|| (1..=20).map(|i| i as f64 * 0.05).collect());
            csvio::write_delta_csv(&mut out, &run_super_outlier_sweep(&cloud, &deltas)?)?;
        }
        Command::Hist => {
            let (cloud, _) = run.cloud()?;
            let dims: PhDims = run.opts.mode.as_deref().unwrap_or("all").parse()?;
            let h = run_histogram(&cloud, run.delta(), dims, run.opts.bin_width.unwrap_or(0.01))?;
            csvio::write_histogram_csv(&mut out, &h)?;
        }
        Command::Barcode => {
            let (cloud, _) = run.cloud()?;
            let m = run.landmark_total(cloud.len())?;
            let selection = run.select(&cloud, m)?;
            let take = run.opts.take.unwrap_or(selection.len());
            let cap = (!run.opts.allow_large.unwrap_or(false)).then_some(DEFAULT_BARCODE_CAP);
            let dims = run.opts.dims.clone().unwrap_or_else(|| vec![0, 1]);
            let eps = run.opts.eps_max.unwrap_or(f64::INFINITY);
            let barcode = run_global_barcode(&cloud, &selection, take, eps, &dims, cap)?;
            csvio::write_barcode_csv(&mut out, &barcode)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let file = match &cli.config {
        Some(path) => config::load(path)?,
        None => Options::default(),
    };
    let opts = cli.options.over(file);
    let run = Run::new(opts)?;
    match run.opts.threads {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
            pool.install(|| execute(cli.command, &run))
        }
        None => execute(cli.command, &run),
    }
}

//! CSV input and output. Floats are written with 17 significant digits so
//! they parse back to the same value; infinities are written as `inf`.

use std::io::{Read, Write};

use crate::barcode::Barcode;
use crate::cloud::{Label, PointCloud};
use crate::data::DataParams;
use crate::error::{Error, Result};
use crate::experiment::{DeltaRow, ExperimentConfig, ScoreHistogram, SweepTable};
use crate::select::SelectionResult;

pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

pub fn parse_float(s: &str) -> Result<f64> {
    match s.trim() {
        "inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        t => t.parse().map_err(|_| Error::Parse(format!("not a number: `{s}`"))),
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

fn finish<W: Write>(mut w: csv::Writer<W>) -> Result<()> {
    w.flush()?;
    Ok(())
}

fn metadata_line(p: &DataParams) -> String {
    format!(
        "# kind={} n={} p={} seed={} laplace={}",
        p.kind,
        p.n,
        fmt_float(p.p),
        p.seed,
        p.laplace
    )
}

fn parse_metadata(line: &str) -> Result<DataParams> {
    let mut kind = None;
    let mut n = None;
    let mut p = None;
    let mut seed = None;
    let mut laplace = Default::default();
    for field in line.trim_start_matches('#').split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad metadata field `{field}`")))?;
        let bad = |_| Error::Parse(format!("bad value for `{key}`: `{value}`"));
        match key {
            "kind" => kind = Some(value.parse()?),
            "n" => n = Some(value.parse().map_err(bad)?),
            "p" => p = Some(parse_float(value)?),
            "seed" => seed = Some(value.parse().map_err(bad)?),
            "laplace" => laplace = value.parse()?,
            _ => return Err(Error::Parse(format!("unknown metadata key `{key}`"))),
        }
    }
    match (kind, n, p, seed) {
        (Some(kind), Some(n), Some(p), Some(seed)) => Ok(DataParams {
            kind,
            n,
            p,
            seed,
            laplace,
        }),
        _ => Err(Error::Parse("metadata needs kind, n, p and seed".into())),
    }
}

/// Coordinates `x0..x{d-1}` then `label` when the cloud is labeled, preceded
/// by a `#` metadata line when `params` is given.
pub fn write_dataset_csv<W: Write>(mut w: W, cloud: &PointCloud, params: Option<&DataParams>) -> Result<()> {
    if let Some(p) = params {
        writeln!(w, "{}", metadata_line(p))?;
    }
    let mut out = writer(w);
    let mut header: Vec<String> = (0..cloud.dim()).map(|i| format!("x{i}")).collect();
    if cloud.labels().is_some() {
        header.push("label".into());
    }
    out.write_record(&header).map_err(csv_err)?;
    for i in 0..cloud.len() {
        let mut row: Vec<String> = cloud.point(i).iter().map(|&x| fmt_float(x)).collect();
        if let Some(l) = cloud.label(i) {
            row.push(l.as_str().into());
        }
        out.write_record(&row).map_err(csv_err)?;
    }
    finish(out)
}

/// Reads a dataset written by [`write_dataset_csv`]. A `label` column and the
/// metadata line are optional.
pub fn read_dataset_csv<R: Read>(mut r: R) -> Result<(PointCloud, Option<DataParams>)> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    let params = match text.lines().next() {
        Some(line) if line.starts_with('#') => Some(parse_metadata(line)?),
        _ => None,
    };
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(csv_err)?.clone();
    let labeled = header.iter().next_back() == Some("label");
    let dim = header.len() - usize::from(labeled);
    if dim == 0 {
        return Err(Error::Parse("dataset has no coordinate columns".into()));
    }
    let mut coords = Vec::new();
    let mut labels = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(csv_err)?;
        for x in record.iter().take(dim) {
            coords.push(parse_float(x).map_err(|e| e.context(format!("row {}", line + 1)))?);
        }
        if labeled {
            labels.push(record[dim].parse::<Label>()?);
        }
    }
    let mut cloud = PointCloud::from_flat(dim, coords)?;
    if labeled {
        cloud = cloud.with_labels(labels)?;
    }
    if let Some(p) = &params {
        if p.n != cloud.len() {
            return Err(Error::Parse(format!("metadata says n={} but found {} rows", p.n, cloud.len())));
        }
    }
    Ok((cloud, params))
}

/// One row per landmark in selection order: `rank,index,label,score`.
pub fn write_selection_csv<W: Write>(w: W, selection: &SelectionResult, cloud: &PointCloud) -> Result<()> {
    let mut out = writer(w);
    out.write_record(["rank", "index", "label", "score"]).map_err(csv_err)?;
    for (rank, &i) in selection.landmarks.iter().enumerate() {
        let label = cloud.label(i).map(Label::as_str).unwrap_or("");
        let score = selection.scores.as_ref().map(|s| fmt_float(s[i])).unwrap_or_default();
        out.write_record([rank.to_string(), i.to_string(), label.into(), score])
            .map_err(csv_err)?;
    }
    finish(out)
}

/// Summary rows of a sweep. The standard deviation uses the population formula.
pub fn write_sweep_csv<W: Write>(w: W, table: &SweepTable, config: &ExperimentConfig) -> Result<()> {
    let mut out = writer(w);
    out.write_record([
        "dataset",
        "n",
        "p",
        "seed",
        "selector",
        "realizations",
        "density",
        "m",
        "mean_fraction",
        "std_population",
    ])
    .map_err(csv_err)?;
    for row in &table.rows {
        out.write_record([
            config.data.kind.to_string(),
            config.data.n.to_string(),
            fmt_float(config.data.p),
            config.data.seed.to_string(),
            table.selector.clone(),
            config.realizations().to_string(),
            fmt_float(row.density),
            row.m.to_string(),
            fmt_float(row.mean),
            fmt_float(row.std),
        ])
        .map_err(csv_err)?;
    }
    finish(out)
}

/// Per-realization fractions behind a sweep.
pub fn write_sweep_raw_csv<W: Write>(w: W, table: &SweepTable) -> Result<()> {
    let mut out = writer(w);
    out.write_record(["selector", "density", "m", "realization", "seed", "fraction"])
        .map_err(csv_err)?;
    for r in &table.raw {
        out.write_record([
            table.selector.clone(),
            fmt_float(r.density),
            r.m.to_string(),
            r.realization.to_string(),
            r.seed.to_string(),
            fmt_float(r.fraction),
        ])
        .map_err(csv_err)?;
    }
    finish(out)
}

pub fn write_delta_csv<W: Write>(w: W, rows: &[DeltaRow]) -> Result<()> {
    let mut out = writer(w);
    out.write_record(["delta", "super_outliers"]).map_err(csv_err)?;
    for r in rows {
        out.write_record([fmt_float(r.delta), r.super_outliers.to_string()])
            .map_err(csv_err)?;
    }
    finish(out)
}

/// `bin,bin_lo,bin_hi,signal,noise`, with a final `super-outlier` row whose
/// bounds are empty.
pub fn write_histogram_csv<W: Write>(w: W, h: &ScoreHistogram) -> Result<()> {
    let mut out = writer(w);
    out.write_record(["bin", "bin_lo", "bin_hi", "signal", "noise"])
        .map_err(csv_err)?;
    for b in 0..h.bins() {
        out.write_record([
            b.to_string(),
            fmt_float(b as f64 * h.bin_width),
            fmt_float((b + 1) as f64 * h.bin_width),
            h.signal[b].to_string(),
            h.noise[b].to_string(),
        ])
        .map_err(csv_err)?;
    }
    out.write_record([
        "super-outlier".to_string(),
        String::new(),
        String::new(),
        h.super_outliers_signal.to_string(),
        h.super_outliers_noise.to_string(),
    ])
    .map_err(csv_err)?;
    finish(out)
}

pub fn write_barcode_csv<W: Write>(w: W, barcode: &Barcode) -> Result<()> {
    let mut out = writer(w);
    out.write_record(["dim", "birth", "death"]).map_err(csv_err)?;
    for (dim, i) in barcode.iter() {
        out.write_record([dim.to_string(), fmt_float(i.birth), fmt_float(i.death)])
            .map_err(csv_err)?;
    }
    finish(out)
}

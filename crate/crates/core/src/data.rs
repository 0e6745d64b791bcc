//! Labeled synthetic point clouds: a signal manifold plus structured noise.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use rand_distr::{Open01, StandardNormal};

use crate::cloud::{Label, PointCloud};
use crate::error::{Error, Result};
use crate::rng::{stream, Rng, Stream};

/// Location of the sphere-Laplace noise.
pub const LAPLACE_MU: f64 = 4.0;
/// The stated spread of the sphere-Laplace noise.
pub const LAPLACE_SIGMA: f64 = 0.5;
/// Support of all line noise.
pub const LINE_HALF_LENGTH: f64 = 50.0;
/// Klein bottle tube radius and center offset.
pub const KLEIN_R: f64 = 3.0;
pub const KLEIN_C: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DatasetKind {
    SphereCube,
    SpherePlane,
    SphereLine,
    SphereLaplace,
    Torus,
    Klein,
}

impl DatasetKind {
    pub const ALL: [DatasetKind; 6] = [
        DatasetKind::SphereCube,
        DatasetKind::SpherePlane,
        DatasetKind::SphereLine,
        DatasetKind::SphereLaplace,
        DatasetKind::Torus,
        DatasetKind::Klein,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DatasetKind::SphereCube => "sphere-cube",
            DatasetKind::SpherePlane => "sphere-plane",
            DatasetKind::SphereLine => "sphere-line",
            DatasetKind::SphereLaplace => "sphere-laplace",
            DatasetKind::Torus => "torus",
            DatasetKind::Klein => "klein",
        }
    }

    pub fn ambient_dim(self) -> usize {
        match self {
            DatasetKind::Torus | DatasetKind::Klein => 4,
            _ => 3,
        }
    }

    /// Neighborhood radius used for PH landmarks on this family.
    pub fn default_delta(self) -> f64 {
        match self {
            DatasetKind::Torus => 0.5,
            DatasetKind::Klein => 0.6,
            _ => 0.2,
        }
    }
}

impl fmt::Display for DatasetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DatasetKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DatasetKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown dataset `{s}`")))
    }
}

/// How the stated Laplace spread σ maps to the scale parameter `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LaplaceSpread {
    /// `b = σ`.
    #[default]
    Scale,
    /// σ is the standard deviation: `b = σ / √2`.
    StdDev,
}

impl LaplaceSpread {
    pub fn scale(self, sigma: f64) -> f64 {
        match self {
            LaplaceSpread::Scale => sigma,
            LaplaceSpread::StdDev => sigma / std::f64::consts::SQRT_2,
        }
    }
}

impl FromStr for LaplaceSpread {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scale" => Ok(LaplaceSpread::Scale),
            "std" => Ok(LaplaceSpread::StdDev),
            _ => Err(Error::Parse(format!("unknown Laplace spread `{s}` (expected scale|std)"))),
        }
    }
}

impl fmt::Display for LaplaceSpread {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LaplaceSpread::Scale => "scale",
            LaplaceSpread::StdDev => "std",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DataParams {
    pub kind: DatasetKind,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub laplace: LaplaceSpread,
}

impl DataParams {
    pub fn new(kind: DatasetKind, n: usize, p: f64, seed: u64) -> Self {
        DataParams {
            kind,
            n,
            p,
            seed,
            laplace: LaplaceSpread::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSample {
    pub cloud: PointCloud,
    pub params: DataParams,
}

impl SyntheticSample {
    pub fn labels(&self) -> &[Label] {
        self.cloud.labels().expect("synthetic samples are labeled")
    }
}

fn open_unit(rng: &mut Rng) -> f64 {
    rng.sample(Open01)
}

fn angle(rng: &mut Rng) -> f64 {
    open_unit(rng) * TAU
}

/// Uniform point on the unit sphere S² (normalized standard normal triple).
pub fn uniform_sphere_point(rng: &mut Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.map(|x| x / norm);
        }
    }
}

/// Inverse Laplace CDF at `u ∈ (-1/2, 1/2)`.
pub fn laplace_from_uniform(mu: f64, b: f64, u: f64) -> f64 {
    if u == 0.0 {
        return mu;
    }
    mu - b * u.signum() * (1.0 - 2.0 * u.abs()).ln()
}

/// One Laplace(`mu`, `b`) draw by inverse transform.
pub fn sample_laplace(mu: f64, b: f64, rng: &mut Rng) -> Result<f64> {
    if !(b > 0.0) {
        return Err(Error::invalid(format!("Laplace scale must be positive, got {b}")));
    }
    Ok(laplace_from_uniform(mu, b, open_unit(rng) - 0.5))
}

/// Flat torus in R⁴ with radii `r` and `rhat`.
pub fn torus_point(gamma: f64, phi: f64, r: f64, rhat: f64) -> [f64; 4] {
    [r * gamma.cos(), r * gamma.sin(), rhat * phi.cos(), rhat * phi.sin()]
}

/// Figure-8 Klein bottle immersion in R⁴ with tube radius `r` and offset `c`.
/// The fourth coordinate does not depend on `r` or `c`.
pub fn klein_point(gamma: f64, phi: f64, r: f64, c: f64) -> [f64; 4] {
    let ring = r * phi.cos() + c;
    [
        gamma.cos() * ring,
        gamma.sin() * ring,
        (gamma / 2.0).cos() * r * phi.sin(),
        (gamma / 2.0).sin() * phi.sin(),
    ]
}

fn check_params(n: usize, p: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("N must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("p must be in [0, 1], got {p}")));
    }
    Ok(())
}

fn noise_point(params: &DataParams, rng: &mut Rng) -> Vec<f64> {
    match params.kind {
        DatasetKind::SphereCube => (0..3).map(|_| rng.random_range(-1.0..=1.0)).collect(),
        DatasetKind::SpherePlane => vec![rng.random_range(-3.0..=3.0), rng.random_range(-3.0..=3.0), 0.0],
        DatasetKind::SphereLine => {
            vec![rng.random_range(-LINE_HALF_LENGTH..=LINE_HALF_LENGTH), 0.0, 0.0]
        }
        DatasetKind::SphereLaplace => {
            let b = params.laplace.scale(LAPLACE_SIGMA);
            let alpha = loop {
                let a = laplace_from_uniform(LAPLACE_MU, b, open_unit(rng) - 0.5);
                if a.abs() <= LINE_HALF_LENGTH {
                    break a;
                }
            };
            vec![alpha, 0.0, 0.0]
        }
        DatasetKind::Torus => {
            let (g, f) = (angle(rng), angle(rng));
            let (r, rhat) = (2.0 * open_unit(rng), 2.0 * open_unit(rng));
            torus_point(g, f, r, rhat).to_vec()
        }
        DatasetKind::Klein => {
            let (g, f) = (angle(rng), angle(rng));
            let r = rng.random_range(2.0..=4.0);
            let c = rng.random_range(1.0..=3.0);
            klein_point(g, f, r, c).to_vec()
        }
    }
}

fn signal_point(kind: DatasetKind, rng: &mut Rng) -> Vec<f64> {
    match kind {
        DatasetKind::Torus => torus_point(angle(rng), angle(rng), 1.0, 1.0).to_vec(),
        DatasetKind::Klein => klein_point(angle(rng), angle(rng), KLEIN_R, KLEIN_C).to_vec(),
        _ => uniform_sphere_point(rng).to_vec(),
    }
}

/// Draws `params.n` points, each signal with probability `params.p`.
pub fn generate(params: DataParams) -> Result<SyntheticSample> {
    check_params(params.n, params.p)?;
    let mut rng = stream(params.seed, Stream::Data);
    let dim = params.kind.ambient_dim();
    let mut coords = Vec::with_capacity(params.n * dim);
    let mut labels = Vec::with_capacity(params.n);
    for _ in 0..params.n {
        let is_signal = rng.random_bool(params.p);
        let point = if is_signal {
            signal_point(params.kind, &mut rng)
        } else {
            noise_point(&params, &mut rng)
        };
        coords.extend(point);
        labels.push(if is_signal { Label::Signal } else { Label::Noise });
    }
    let cloud = PointCloud::from_flat(dim, coords)?.with_labels(labels)?;
    Ok(SyntheticSample { cloud, params })
}

/// Unit sphere signal, noise uniform in the cube [-1, 1]³.
pub fn gen_sphere_cube(n: usize, p: f64, seed: u64) -> Result<SyntheticSample> {
    generate(DataParams::new(DatasetKind::SphereCube, n, p, seed))
}

/// Unit sphere signal, noise uniform on the square [-3, 3]² in the xy-plane.
pub fn gen_sphere_plane(n: usize, p: f64, seed: u64) -> Result<SyntheticSample> {
    generate(DataParams::new(DatasetKind::SpherePlane, n, p, seed))
}

/// Unit sphere signal, noise `(α, 0, 0)` with α uniform in [-50, 50].
pub fn gen_sphere_line(n: usize, p: f64, seed: u64) -> Result<SyntheticSample> {
    generate(DataParams::new(DatasetKind::SphereLine, n, p, seed))
}

/// Unit sphere signal, noise `(α, 0, 0)` with α ~ Laplace(4, b) restricted to [-50, 50].
pub fn gen_sphere_laplace(n: usize, p: f64, seed: u64, spread: LaplaceSpread) -> Result<SyntheticSample> {
    generate(DataParams {
        laplace: spread,
        ..DataParams::new(DatasetKind::SphereLaplace, n, p, seed)
    })
}

/// Unit flat torus signal; noise with radii uniform in (0, 2).
pub fn gen_torus(n: usize, p: f64, seed: u64) -> Result<SyntheticSample> {
    generate(DataParams::new(DatasetKind::Torus, n, p, seed))
}

/// Klein bottle (r = 3, C = 2) signal; noise with r ~ U[2, 4] and C ~ U[1, 3].
pub fn gen_klein(n: usize, p: f64, seed: u64) -> Result<SyntheticSample> {
    generate(DataParams::new(DatasetKind::Klein, n, p, seed))
}

//! Seeded samplers for the simulation scenarios, the animal brain/body weight
//! table and the population contour of a bivariate normal.
//!
//! Randomness comes from ChaCha20 seeded with the caller's seed; each kind of
//! draw uses its own stream so that, for example, the contamination pattern
//! does not depend on how many normal deviates were drawn before it.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use log::{info, warn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{DepthError, Result};
use crate::point::Point;
use crate::stats::DataSet;

pub type Matrix2 = [[f64; 2]; 2];

pub const IDENTITY: Matrix2 = [[1.0, 0.0], [0.0, 1.0]];
/// Covariance of the correlated normal scenario.
pub const SIGMA_0: Matrix2 = [[1.0, 0.5], [0.5, 1.0]];
/// Upper quartile of the standard normal, `Φ⁻¹(3/4)`; the MAD of `N(0, 1)`.
pub const C_N: f64 = 0.674_489_750_196_081_7;
/// Redraws allowed when contamination produces unusable data.
pub const CONTAMINATION_RETRIES: usize = 100;

const STREAM_NORMAL: u64 = 1;
const STREAM_CONTAMINATION: u64 = 2;
const STREAM_UNIFORM: u64 = 3;
const STREAM_MIXTURE: u64 = 4;

fn rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut r = ChaCha20Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Lower-triangular `L` with `L Lᵀ = sigma`.
pub fn cholesky(sigma: Matrix2) -> Result<Matrix2> {
    let [[s11, s12], [s21, s22]] = sigma;
    let finite = sigma.iter().flatten().all(|v| v.is_finite());
    if !finite || (s12 - s21).abs() > 1e-12 * (1.0 + s12.abs()) || s11 <= 0.0 {
        return Err(DepthError::NotPositiveDefinite);
    }
    let l11 = s11.sqrt();
    let l21 = s12 / l11;
    let rest = s22 - l21 * l21;
    if rest <= 0.0 {
        return Err(DepthError::NotPositiveDefinite);
    }
    Ok([[l11, 0.0], [l21, rest.sqrt()]])
}

fn normal_pair(r: &mut ChaCha20Rng) -> Point {
    Point::new(r.sample(StandardNormal), r.sample(StandardNormal))
}

fn apply_lower(l: &Matrix2, z: Point) -> Point {
    Point::new(l[0][0] * z.x, l[1][0] * z.x + l[1][1] * z.y)
}

/// `n` draws from `N(0, sigma)`.
pub fn sample_normal(n: usize, sigma: Matrix2, seed: u64) -> Result<DataSet> {
    let l = cholesky(sigma)?;
    let mut r = rng(seed, STREAM_NORMAL);
    DataSet::new((0..n).map(|_| apply_lower(&l, normal_pair(&mut r))).collect())
}

/// Replaces the first coordinate by `value`, independently with probability
/// `prob` per point.
///
/// Several points then share the line `x₁ = value`, so the result is checked
/// for a positive MAD in every direction (distinct points, at most `⌊n/2⌋` on
/// any line) rather than for strict general position. Unusable draws are
/// redrawn up to `CONTAMINATION_RETRIES` times.
pub fn contaminate(data: &DataSet, value: f64, prob: f64, seed: u64) -> Result<DataSet> {
    if !(0.0..=1.0).contains(&prob) {
        return Err(DepthError::InvalidProbability(prob));
    }
    if prob == 0.0 {
        return Ok(data.clone());
    }
    let mut r = rng(seed, STREAM_CONTAMINATION);
    for attempt in 0..CONTAMINATION_RETRIES {
        let mut hits = 0;
        let pts: Vec<Point> = data
            .points()
            .iter()
            .map(|p| {
                if r.gen_bool(prob) {
                    hits += 1;
                    Point::new(value, p.y)
                } else {
                    *p
                }
            })
            .collect();
        match DataSet::with_positive_mad(pts) {
            Ok(d) => {
                info!("contaminated {hits} of {} points", data.len());
                return Ok(d);
            }
            // nothing random left to redraw
            Err(e) if prob == 1.0 => return Err(e),
            Err(e) => warn!("contamination attempt {} rejected: {e}", attempt + 1),
        }
    }
    Err(DepthError::ContaminationRetriesExhausted(CONTAMINATION_RETRIES))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UniformRegion {
    /// Triangle with vertices (0,0), (0,1), (1,1), i.e. `0 ≤ x₁ ≤ x₂ ≤ 1`.
    Triangle,
    /// The unit square.
    Square,
}

pub fn sample_uniform(region: UniformRegion, n: usize, seed: u64) -> Result<DataSet> {
    let mut r = rng(seed, STREAM_UNIFORM);
    let pts = (0..n)
        .map(|_| {
            let (u, v): (f64, f64) = (r.gen(), r.gen());
            match region {
                UniformRegion::Square => Point::new(u, v),
                // fold the square along the diagonal
                UniformRegion::Triangle => Point::new(u.min(v), u.max(v)),
            }
        })
        .collect();
    DataSet::new(pts)
}

/// Equal-weight mixture of `N(mu1, I)` and `N(mu2, I)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec {
    pub mu1: Point,
    pub mu2: Point,
}

impl Default for MixtureSpec {
    fn default() -> Self {
        MixtureSpec { mu1: Point::new(-2.0, -2.0), mu2: Point::new(2.0, 2.0) }
    }
}

pub fn sample_mixture(spec: MixtureSpec, n: usize, seed: u64) -> Result<DataSet> {
    sample_mixture_labeled(spec, n, seed).map(|(d, _)| d)
}

/// Like `sample_mixture`, also returning `true` for draws from the `mu1` component.
///
/// The normal deviates use the same stream as `sample_normal`, so equal means
/// reproduce `sample_normal(n, I, seed)` shifted by that mean.
pub fn sample_mixture_labeled(spec: MixtureSpec, n: usize, seed: u64) -> Result<(DataSet, Vec<bool>)> {
    let mut noise = rng(seed, STREAM_NORMAL);
    let mut coin = rng(seed, STREAM_MIXTURE);
    let mut labels = Vec::with_capacity(n);
    let mut pts = Vec::with_capacity(n);
    for _ in 0..n {
        let first = coin.gen_bool(0.5);
        let mu = if first { spec.mu1 } else { spec.mu2 };
        pts.push(mu + normal_pair(&mut noise));
        labels.push(first);
    }
    Ok((DataSet::new(pts)?, labels))
}

/// Body weight (kg) and brain weight (g) of 28 animals.
pub const BRAIN_WEIGHT_TABLE: [(&str, f64, f64); 28] = [
    ("Mountain beaver", 1.350, 8.100),
    ("Cow", 465.000, 423.000),
    ("Gray wolf", 36.330, 119.500),
    ("Goat", 27.660, 115.000),
    ("Guinea pig", 1.040, 5.500),
    ("Diplodocus", 11700.000, 50.000),
    ("Asian elephant", 2547.000, 4603.000),
    ("Donkey", 187.100, 419.000),
    ("Horse", 521.000, 655.000),
    ("Potar monkey", 10.000, 115.000),
    ("Cat", 3.300, 25.600),
    ("Giraffe", 529.000, 680.000),
    ("Gorilla", 207.000, 406.000),
    ("Human", 62.000, 1320.000),
    ("African elephant", 6654.000, 5712.000),
    ("Triceratops", 9400.000, 70.000),
    ("Rhesus monkey", 6.800, 179.000),
    ("Kangaroo", 35.000, 56.000),
    ("Hamster", 0.120, 1.000),
    ("Mouse", 0.023, 0.400),
    ("Rabbit", 2.500, 12.100),
    ("Sheep", 55.500, 175.000),
    ("Jaguar", 100.000, 157.000),
    ("Chimpanzee", 52.160, 440.000),
    ("Brachiosaurus", 87000.000, 154.500),
    ("Rat", 0.280, 1.900),
    ("Mole", 0.122, 3.000),
    ("Pig", 192.000, 180.000),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    Ten,
    Natural,
}

impl LogBase {
    pub fn apply(self, v: f64) -> f64 {
        match self {
            LogBase::Ten => v.log10(),
            LogBase::Natural => v.ln(),
        }
    }
}

/// The table with both coordinates log10-transformed, rows in table order.
pub fn brain_weight_data() -> DataSet {
    brain_weight_data_with(LogBase::Ten)
}

pub fn brain_weight_data_with(base: LogBase) -> DataSet {
    let pts =
        BRAIN_WEIGHT_TABLE.iter().map(|&(_, body, brain)| Point::new(base.apply(body), base.apply(brain))).collect();
    DataSet::new(pts).expect("the log table is in general position")
}

/// Untransformed (body, brain) pairs.
pub fn brain_weight_raw() -> Vec<Point> {
    BRAIN_WEIGHT_TABLE.iter().map(|&(_, body, brain)| Point::new(body, brain)).collect()
}

/// Depth contour of `N(0, sigma)` at level `alpha`: the ellipse
/// `xᵀ sigma⁻¹ x = (C_N (1 − α) / α)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PopulationEllipse {
    pub sigma: Matrix2,
    pub alpha: f64,
    pub radius_constant: f64,
}

impl PopulationEllipse {
    /// `C_N (1 − α) / α`.
    pub fn radius(&self) -> f64 {
        self.radius_constant * (1.0 - self.alpha) / self.alpha
    }

    /// Right-hand side of the quadratic form.
    pub fn level(&self) -> f64 {
        self.radius().powi(2)
    }

    /// `resolution` boundary points plus the first one repeated at the end.
    pub fn boundary(&self, resolution: usize) -> Vec<Point> {
        let l = cholesky(self.sigma).expect("validated on construction");
        let r = self.radius();
        let mut out: Vec<Point> = (0..resolution)
            .map(|k| apply_lower(&l, Point::from_angle(TAU * k as f64 / resolution as f64) * r))
            .collect();
        if let Some(&first) = out.first() {
            out.push(first);
        }
        out
    }
}

pub fn population_normal_contour(sigma: Matrix2, alpha: f64) -> Result<PopulationEllipse> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(DepthError::InvalidAlpha(alpha));
    }
    cholesky(sigma)?;
    Ok(PopulationEllipse { sigma, alpha, radius_constant: C_N })
}

/// Named simulation scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    /// 60 draws from `N(0, I)`, first coordinate set to 6 with probability 0.05.
    Example1,
    /// 400 draws from `N(0, SIGMA_0)`, first coordinate set to 6 with probability 0.10.
    Example2,
    Triangle,
    Square,
    Normal,
    Mixture,
}

impl Scenario {
    pub const ALL: [Scenario; 6] = [
        Scenario::Example1,
        Scenario::Example2,
        Scenario::Triangle,
        Scenario::Square,
        Scenario::Normal,
        Scenario::Mixture,
    ];

    pub fn default_size(self) -> usize {
        match self {
            Scenario::Example1 => 60,
            Scenario::Example2 => 400,
            _ => 2500,
        }
    }

    /// Covariance of the generating normal, where there is one.
    pub fn sigma(self) -> Option<Matrix2> {
        match self {
            Scenario::Example1 | Scenario::Normal => Some(IDENTITY),
            Scenario::Example2 => Some(SIGMA_0),
            _ => None,
        }
    }

    pub fn generate(self, n: Option<usize>, seed: u64) -> Result<DataSet> {
        let n = n.unwrap_or(self.default_size());
        match self {
            Scenario::Example1 => contaminate(&sample_normal(n, IDENTITY, seed)?, 6.0, 0.05, seed),
            Scenario::Example2 => contaminate(&sample_normal(n, SIGMA_0, seed)?, 6.0, 0.10, seed),
            Scenario::Triangle => sample_uniform(UniformRegion::Triangle, n, seed),
            Scenario::Square => sample_uniform(UniformRegion::Square, n, seed),
            Scenario::Normal => sample_normal(n, IDENTITY, seed),
            Scenario::Mixture => sample_mixture(MixtureSpec::default(), n, seed),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Scenario::Example1 => "example1",
            Scenario::Example2 => "example2",
            Scenario::Triangle => "triangle",
            Scenario::Square => "square",
            Scenario::Normal => "normal",
            Scenario::Mixture => "mixture",
        };
        f.write_str(s)
    }
}

impl FromStr for Scenario {
    type Err = DepthError;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.to_string() == s.to_ascii_lowercase())
            .ok_or_else(|| DepthError::InvalidInput(format!("unknown scenario '{s}'")))
    }
}

//! Simulated projective-measurement tomography of one- and two-qubit states.
//!
//! Counts are drawn per measurement setting from a multinomial with a fixed
//! shot budget. Reconstruction is least-squares linear inversion of the
//! observed frequencies followed by projection onto the closest physical
//! state; error bars come from a parametric bootstrap around the estimate.
//!
//! Seeding: setting `i` of a record with seed `s` draws from ChaCha8 stream
//! `i` keyed by `s`. Bootstrap replica `b` uses record seed
//! `bootstrap_seed + b`. Results therefore do not depend on how replicas are
//! scheduled across threads.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, kron, ComplexMatrix, ONE, STATE_TOL, ZERO};

pub const DEFAULT_BOOTSTRAP_SAMPLES: usize = 200;

/// Largest deviation of outcome probabilities from a distribution that is
/// still attributed to rounding.
const PROBABILITY_DRIFT_TOL: f64 = 1e-9;

/// One measurement basis: rank-one projectors summing to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementSetting {
    pub label: String,
    pub projectors: Vec<ComplexMatrix>,
}

impl MeasurementSetting {
    pub fn new(label: impl Into<String>, projectors: Vec<ComplexMatrix>) -> Result<Self> {
        let label = label.into();
        let Some(first) = projectors.first() else {
            return Err(Error::InvalidSetting(format!("{label}: no projectors")));
        };
        let dim = first.rows();
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for p in &projectors {
            if p.rows() != dim || !p.is_square() {
                return Err(Error::InvalidSetting(format!("{label}: mixed projector dimensions")));
            }
            if p.hermiticity_error() > STATE_TOL {
                return Err(Error::InvalidSetting(format!("{label}: non-Hermitian projector")));
            }
            sum = sum.add(p)?;
        }
        let err = sum.sub(&ComplexMatrix::identity(dim))?.max_abs();
        if err > 1e-12 {
            return Err(Error::InvalidSetting(format!(
                "{label}: projectors sum to identity only within {err:e}"
            )));
        }
        Ok(MeasurementSetting { label, projectors })
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].rows()
    }

    pub fn outcomes(&self) -> usize {
        self.projectors.len()
    }

    /// Rebuilds a setting of the default design from its label, e.g. `"DA"`
    /// or `"HV-RL"`.
    pub fn from_label(label: &str) -> Result<Self> {
        let parts: Vec<&str> = label.split('-').collect();
        let bases = parts.iter().map(|p| qubit_basis(p)).collect::<Result<Vec<_>>>()?;
        let mut kets: Vec<Vec<Complex64>> = vec![vec![ONE]];
        for basis in &bases {
            kets = kets
                .iter()
                .flat_map(|k| basis.iter().map(move |b| kron_ket(k, b)))
                .collect();
        }
        let projectors = kets.iter().map(|k| ComplexMatrix::projector(k)).collect();
        Self::new(label, projectors)
    }
}

fn kron_ket(a: &[Complex64], b: &[Complex64; 2]) -> Vec<Complex64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

fn qubit_basis(name: &str) -> Result<[[Complex64; 2]; 2]> {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let ih = Complex64::new(0.0, FRAC_1_SQRT_2);
    match name {
        "HV" => Ok([[ONE, ZERO], [ZERO, ONE]]),
        "DA" => Ok([[h, h], [h, -h]]),
        "RL" => Ok([[h, ih], [h, -ih]]),
        other => Err(Error::InvalidSetting(format!("unknown basis label {other:?}"))),
    }
}

const QUBIT_BASES: [&str; 3] = ["HV", "DA", "RL"];

/// The three Pauli bases for one qubit, or all nine product pairs for two.
pub fn default_settings(n_qubits: usize) -> Result<Vec<MeasurementSetting>> {
    let labels: Vec<String> = match n_qubits {
        1 => QUBIT_BASES.iter().map(|s| s.to_string()).collect(),
        2 => QUBIT_BASES
            .iter()
            .flat_map(|a| QUBIT_BASES.iter().map(move |b| format!("{a}-{b}")))
            .collect(),
        n => return Err(Error::OutOfRange(format!("tomography of {n} qubits is not supported"))),
    };
    labels.iter().map(|l| MeasurementSetting::from_label(l)).collect()
}

/// Counts observed for each setting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RecordWire", into = "RecordWire")]
pub struct TomographyRecord {
    pub settings: Vec<MeasurementSetting>,
    /// `counts[i][k]`: hits on projector `k` of setting `i`.
    pub counts: Vec<Vec<u64>>,
    pub shots_per_setting: u64,
    pub seed: u64,
}

#[derive(Serialize, Deserialize)]
struct RecordWire {
    settings: Vec<String>,
    shots: u64,
    seed: u64,
    counts: Vec<Vec<u64>>,
}

impl TryFrom<RecordWire> for TomographyRecord {
    type Error = Error;

    fn try_from(w: RecordWire) -> Result<Self> {
        let settings = w
            .settings
            .iter()
            .map(|l| MeasurementSetting::from_label(l))
            .collect::<Result<_>>()?;
        let record = TomographyRecord {
            settings,
            counts: w.counts,
            shots_per_setting: w.shots,
            seed: w.seed,
        };
        record.validate()?;
        Ok(record)
    }
}

impl From<TomographyRecord> for RecordWire {
    fn from(r: TomographyRecord) -> Self {
        RecordWire {
            settings: r.settings.into_iter().map(|s| s.label).collect(),
            shots: r.shots_per_setting,
            seed: r.seed,
            counts: r.counts,
        }
    }
}

impl TomographyRecord {
    pub fn validate(&self) -> Result<()> {
        if self.shots_per_setting == 0 {
            return Err(Error::OutOfRange("shots per setting must be positive".into()));
        }
        if self.settings.is_empty() || self.settings.len() != self.counts.len() {
            return Err(Error::InvalidSetting(format!(
                "{} settings but {} count rows",
                self.settings.len(),
                self.counts.len()
            )));
        }
        for (s, c) in self.settings.iter().zip(&self.counts) {
            if c.len() != s.outcomes() {
                return Err(Error::InvalidSetting(format!(
                    "{}: {} counts for {} outcomes",
                    s.label,
                    c.len(),
                    s.outcomes()
                )));
            }
            if c.iter().sum::<u64>() != self.shots_per_setting {
                return Err(Error::InvalidSetting(format!(
                    "{}: counts do not sum to the shot budget",
                    s.label
                )));
            }
        }
        Ok(())
    }

    /// Observed outcome frequencies per setting.
    pub fn frequencies(&self) -> Vec<Vec<f64>> {
        let n = self.shots_per_setting as f64;
        self.counts
            .iter()
            .map(|row| row.iter().map(|&c| c as f64 / n).collect())
            .collect()
    }
}

/// Outcome probabilities `Tr[P_k rho]` per setting. Rounding drift up to
/// 1e-9 is clamped away; anything larger is an error.
pub fn exact_probabilities(rho: &DensityMatrix, settings: &[MeasurementSetting]) -> Result<Vec<Vec<f64>>> {
    settings
        .iter()
        .map(|s| {
            if s.dim() != rho.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "setting {} is {}-dim, state is {}-dim",
                    s.label,
                    s.dim(),
                    rho.dim()
                )));
            }
            let mut probs = Vec::with_capacity(s.outcomes());
            for p in &s.projectors {
                probs.push(p.matmul(rho.matrix())?.trace().re);
            }
            let drift = probs
                .iter()
                .map(|&p| if p < 0.0 { -p } else { (p - 1.0).max(0.0) })
                .fold((probs.iter().sum::<f64>() - 1.0).abs(), f64::max);
            if drift > PROBABILITY_DRIFT_TOL {
                return Err(Error::ProbabilityDrift(drift));
            }
            let clamped: Vec<f64> = probs.iter().map(|p| p.clamp(0.0, 1.0)).collect();
            let total: f64 = clamped.iter().sum();
            Ok(clamped.into_iter().map(|p| p / total).collect())
        })
        .collect()
}

fn multinomial(rng: &mut ChaCha8Rng, shots: u64, probs: &[f64]) -> Vec<u64> {
    let mut remaining = shots;
    let mut mass = 1.0;
    let mut out = Vec::with_capacity(probs.len());
    for (k, &p) in probs.iter().enumerate() {
        if k + 1 == probs.len() {
            out.push(remaining);
            break;
        }
        let draw = if remaining == 0 || mass <= 0.0 {
            0
        } else {
            let q = (p / mass).clamp(0.0, 1.0);
            Binomial::new(remaining, q).expect("probability in [0, 1]").sample(rng)
        };
        out.push(draw);
        remaining -= draw;
        mass -= p;
    }
    out
}

/// Draws `shots` outcomes per setting. Deterministic for a fixed seed.
pub fn simulate_counts(
    rho: &DensityMatrix,
    settings: &[MeasurementSetting],
    shots: u64,
    seed: u64,
) -> Result<TomographyRecord> {
    if shots == 0 {
        return Err(Error::OutOfRange("shots must be positive".into()));
    }
    let probs = exact_probabilities(rho, settings)?;
    let counts = probs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            multinomial(&mut rng, shots, p)
        })
        .collect();
    Ok(TomographyRecord {
        settings: settings.to_vec(),
        counts,
        shots_per_setting: shots,
        seed,
    })
}

/// Real coordinates of a Hermitian matrix: diagonal entries, then
/// `(Re, Im)` of each upper-triangle entry.
fn design_row(p: &ComplexMatrix) -> Vec<f64> {
    let d = p.rows();
    let mut row = Vec::with_capacity(d * d);
    for i in 0..d {
        row.push(p[(i, i)].re);
    }
    for i in 0..d {
        for j in i + 1..d {
            let pji = p[(j, i)];
            row.push(2.0 * pji.re);
            row.push(-2.0 * pji.im);
        }
    }
    row
}

fn hermitian_from_coords(d: usize, x: &[f64]) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        h[(i, i)] = Complex64::new(x[i], 0.0);
    }
    let mut k = d;
    for i in 0..d {
        for j in i + 1..d {
            let z = Complex64::new(x[k], x[k + 1]);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
            k += 2;
        }
    }
    h
}

/// Solves the square system `a x = b` by Gaussian elimination with partial
/// pivoting.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty");
        if a[pivot][col].abs() < 1e-12 * scale {
            return Err(Error::SingularDesign);
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for (offset, row) in rest.iter_mut().enumerate() {
            let f = row[col] / pivot_row[col];
            if f == 0.0 {
                continue;
            }
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * p;
            }
            b[col + 1 + offset] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Ok(x)
}

/// Least-squares Hermitian operator reproducing the given outcome
/// frequencies, normalized to unit trace. Not yet projected to a state.
pub fn linear_inversion(settings: &[MeasurementSetting], freqs: &[Vec<f64>]) -> Result<ComplexMatrix> {
    let d = settings
        .first()
        .ok_or_else(|| Error::InvalidSetting("no settings".into()))?
        .dim();
    let n = d * d;
    let mut normal = vec![vec![0.0; n]; n];
    let mut rhs = vec![0.0; n];
    for (s, f) in settings.iter().zip(freqs) {
        for (p, &fk) in s.projectors.iter().zip(f) {
            let row = design_row(p);
            for i in 0..n {
                rhs[i] += row[i] * fk;
                for j in 0..n {
                    normal[i][j] += row[i] * row[j];
                }
            }
        }
    }
    let h = hermitian_from_coords(d, &solve(normal, rhs)?);
    let tr = h.trace().re;
    if tr <= 0.0 {
        return Err(Error::InvalidTrace(tr));
    }
    Ok(h.scale_real(1.0 / tr))
}

/// Closest density matrix in the 2-norm: eigenvalues are sorted, negative
/// mass is removed from the bottom of the spectrum and spread evenly over
/// the remaining eigenvalues.
pub fn project_to_physical(h: &ComplexMatrix) -> Result<DensityMatrix> {
    let eig = herm_eig(h)?;
    let tr: f64 = eig.eigenvalues.iter().sum();
    if (tr - 1.0).abs() > 0.1 {
        return Err(Error::InvalidTrace(tr));
    }
    // descending order, so the sweep runs from the back
    let mut mu: Vec<f64> = eig.eigenvalues.iter().map(|l| l / tr).collect();
    let mut kept = mu.len();
    let mut deficit = 0.0;
    while kept > 0 && mu[kept - 1] + deficit / (kept as f64) < 0.0 {
        deficit += mu[kept - 1];
        mu[kept - 1] = 0.0;
        kept -= 1;
    }
    for m in mu.iter_mut().take(kept) {
        *m += deficit / kept as f64;
    }
    let mut out = eig.reconstruct_with(&mu);
    // the reconstruction is Hermitian only up to rounding
    out = out.hermitian_part();
    let dims = state_dims(out.rows());
    DensityMatrix::with_dims(out, dims)
}

fn state_dims(dim: usize) -> Vec<usize> {
    if dim == 4 {
        vec![2, 2]
    } else {
        vec![dim]
    }
}

/// Noiseless reconstruction from exact outcome probabilities.
pub fn reconstruct_exact(rho: &DensityMatrix, settings: &[MeasurementSetting]) -> Result<DensityMatrix> {
    let probs = exact_probabilities(rho, settings)?;
    project_to_physical(&linear_inversion(settings, &probs)?)
}

/// Point estimate from a record, without error bars.
pub fn estimate(record: &TomographyRecord) -> Result<DensityMatrix> {
    record.validate()?;
    project_to_physical(&linear_inversion(&record.settings, &record.frequencies())?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BootstrapOptions {
    pub samples: usize,
    pub seed: u64,
}

impl BootstrapOptions {
    /// `B = 200`, seeded from the record seed.
    pub fn for_record(record: &TomographyRecord) -> Self {
        BootstrapOptions {
            samples: DEFAULT_BOOTSTRAP_SAMPLES,
            seed: record.seed ^ 0x9e37_79b9_7f4a_7c15,
        }
    }
}

/// Tomographic estimate with bootstrap error bars.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReconstructedState {
    pub estimate: DensityMatrix,
    /// Row-major bootstrap standard deviation of each entry (modulus of the
    /// complex deviation).
    pub std_errors: Vec<f64>,
    pub bootstrap_samples: usize,
    /// Bootstrap replicas, in replica order.
    #[serde(skip)]
    pub replicas: Vec<DensityMatrix>,
}

impl ReconstructedState {
    pub fn std_error(&self, row: usize, col: usize) -> f64 {
        self.std_errors[row * self.estimate.dim() + col]
    }

    pub fn mean_std_error(&self) -> f64 {
        self.std_errors.iter().sum::<f64>() / self.std_errors.len() as f64
    }
}

pub fn reconstruct(record: &TomographyRecord) -> Result<ReconstructedState> {
    reconstruct_with(record, BootstrapOptions::for_record(record))
}

/// Linear inversion plus physical projection, with a parametric bootstrap:
/// each replica re-simulates the record's settings and shot budget from the
/// point estimate and reconstructs again.
pub fn reconstruct_with(record: &TomographyRecord, opts: BootstrapOptions) -> Result<ReconstructedState> {
    if opts.samples < 2 {
        return Err(Error::OutOfRange("bootstrap needs at least two samples".into()));
    }
    let point = estimate(record)?;
    let replicas = (0..opts.samples)
        .into_par_iter()
        .map(|b| {
            let seed = opts.seed.wrapping_add(b as u64);
            let synthetic = simulate_counts(&point, &record.settings, record.shots_per_setting, seed)?;
            estimate(&synthetic)
        })
        .collect::<Result<Vec<_>>>()?;

    let d = point.dim();
    let b = replicas.len() as f64;
    let mut std_errors = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let mean: Complex64 = replicas.iter().map(|r| r.matrix()[(i, j)]).sum::<Complex64>() / b;
            let var = replicas
                .iter()
                .map(|r| (r.matrix()[(i, j)] - mean).norm_sqr())
                .sum::<f64>()
                / (b - 1.0);
            std_errors.push(var.sqrt());
        }
    }
    Ok(ReconstructedState {
        estimate: point,
        std_errors,
        bootstrap_samples: opts.samples,
        replicas,
    })
}

/// Simulates and reconstructs in one step.
pub fn measure_state(
    rho: &DensityMatrix,
    settings: &[MeasurementSetting],
    shots: u64,
    seed: u64,
    bootstrap_samples: usize,
) -> Result<ReconstructedState> {
    let record = simulate_counts(rho, settings, shots, seed)?;
    let mut opts = BootstrapOptions::for_record(&record);
    opts.samples = bootstrap_samples;
    reconstruct_with(&record, opts)
}

/// Product-basis settings for a qubit register measured in the given
/// single-qubit bases. Exposed for callers assembling custom designs.
pub fn product_setting(a: &MeasurementSetting, b: &MeasurementSetting) -> Result<MeasurementSetting> {
    let projectors = a
        .projectors
        .iter()
        .flat_map(|p| b.projectors.iter().map(move |q| kron(p, q)))
        .collect();
    MeasurementSetting::new(format!("{}-{}", a.label, b.label), projectors)
}

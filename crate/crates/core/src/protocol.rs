//! The two-stage classifier.
//!
//! Stage 1 compares system marginals of the state and of its eigenbasis
//! dephasing after the phase-gate interaction; a distance above threshold
//! means `QC`. Only if it stays at zero does stage 2 run: the distance between
//! the state's marginal and that of a locally rotated copy is compared before
//! and after the interaction, and growth above threshold means `CC`, anything
//! else `F`.
//!
//! In [`Mode::Simulated`] every marginal is obtained from simulated
//! tomography, the dephasing basis comes from a two-qubit reconstruction of
//! the initial state, and thresholds scale with bootstrap errors.

use serde::{Deserialize, Serialize};

use crate::channels::{eigenprojector_of, HalfWavePlate, Projector, DEFAULT_HWP_ANGLE, DEFAULT_PHI};
use crate::density::{partial_trace, trace_distance, DensityMatrix, Subsystem};
use crate::error::{Error, Result};
use crate::linalg::{trace_norm, ComplexMatrix};
use crate::states::FamilyParams;
use crate::tomography::{default_settings, estimate, measure_state, simulate_counts, ReconstructedState};
use crate::witness::{discord_branches, growth_branches, InputsDigest, WitnessKind, WitnessReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Simulated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    QC,
    CC,
    F,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProtocolConfig {
    pub phi: f64,
    pub hwp_angle: f64,
    pub mode: Mode,
    /// Shots per measurement setting (simulated mode).
    pub shots: u64,
    pub bootstrap_samples: usize,
    pub threshold_sigma: f64,
    pub exact_epsilon: f64,
    pub seed: u64,
    /// Extra phases tried, in order, when stage 1 does not fire at `phi`.
    pub retry_phis: Vec<f64>,
    /// Keep the compared marginals in the result.
    pub emit_states: bool,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        ProtocolConfig {
            phi: DEFAULT_PHI,
            hwp_angle: DEFAULT_HWP_ANGLE,
            mode: Mode::Exact,
            shots: 100_000,
            bootstrap_samples: crate::tomography::DEFAULT_BOOTSTRAP_SAMPLES,
            threshold_sigma: 3.0,
            exact_epsilon: 1e-9,
            seed: 0,
            retry_phis: Vec::new(),
            emit_states: false,
        }
    }
}

impl ProtocolConfig {
    pub fn exact() -> Self {
        Self::default()
    }

    pub fn simulated(shots: u64, seed: u64) -> Self {
        ProtocolConfig {
            mode: Mode::Simulated,
            shots,
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.phi, self.hwp_angle, self.threshold_sigma, self.exact_epsilon]
            .iter()
            .chain(&self.retry_phis)
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::OutOfRange("non-finite configuration value".into()));
        }
        if self.threshold_sigma <= 0.0 {
            return Err(Error::OutOfRange(format!(
                "threshold_sigma = {} must be positive",
                self.threshold_sigma
            )));
        }
        if self.exact_epsilon <= 0.0 {
            return Err(Error::OutOfRange(format!(
                "exact_epsilon = {} must be positive",
                self.exact_epsilon
            )));
        }
        if self.mode == Mode::Simulated {
            if self.shots == 0 {
                return Err(Error::OutOfRange("shots must be positive".into()));
            }
            if self.bootstrap_samples < 2 {
                return Err(Error::OutOfRange("bootstrap_samples must be at least 2".into()));
            }
        }
        Ok(())
    }
}

/// A witness value with its uncertainty and the threshold it was held to.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessEstimate {
    #[serde(flatten)]
    pub report: WitnessReport,
    /// Bootstrap error (simulated mode); zero in exact mode.
    pub uncertainty: f64,
    pub threshold: f64,
}

impl WitnessEstimate {
    pub fn fires(&self) -> bool {
        self.report.value > self.threshold
    }
}

/// Stage-2 marginals: the state's and its rotated copy's, before and after
/// the interaction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrowthStates {
    pub rho_s_0: DensityMatrix,
    pub rho_u_s_0: DensityMatrix,
    pub rho_s_t: DensityMatrix,
    pub rho_u_s_t: DensityMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntermediateStates {
    /// Initial joint state as seen by the classifier (the tomographic
    /// estimate in simulated mode).
    pub rho_se_0: DensityMatrix,
    pub projector: ComplexMatrix,
    pub rho_s_t: DensityMatrix,
    pub rho_s_dephased_t: DensityMatrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub growth: Option<GrowthStates>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    pub td_report: WitnessEstimate,
    /// Absent exactly when stage 1 fired.
    pub growth_report: Option<WitnessEstimate>,
    /// The dephasing basis came from a degenerate marginal; the verdict is
    /// low-confidence.
    pub degenerate_basis: bool,
    pub thresholds_used: ProtocolConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intermediate_states: Option<IntermediateStates>,
}

/// Runs the two-stage procedure on a two-qubit state.
pub fn classify(rho_se: &DensityMatrix, config: &ProtocolConfig) -> Result<ClassificationResult> {
    config.validate()?;
    rho_se.require_two_qubits()?;
    match config.mode {
        Mode::Exact => classify_exact(rho_se, config),
        Mode::Simulated => classify_tomographic(rho_se, config),
    }
}

/// Builds the family state and runs the simulated-tomography pipeline on it.
pub fn classify_simulated(params: &FamilyParams, config: &ProtocolConfig) -> Result<ClassificationResult> {
    if config.mode != Mode::Simulated {
        return Err(Error::OutOfRange("classify_simulated requires simulated mode".into()));
    }
    let rho = params.build()?;
    let mut result = classify(&rho, config)?;
    tag_family(&mut result, params);
    Ok(result)
}

/// Echoes the family point into every witness digest.
pub fn tag_family(result: &mut ClassificationResult, params: &FamilyParams) {
    let theta = params.theta;
    result.td_report.report = result.td_report.report.clone().with_family_point(params.lambda, theta);
    if let Some(g) = result.growth_report.as_mut() {
        g.report = g.report.clone().with_family_point(params.lambda, theta);
    }
}

fn phis(config: &ProtocolConfig) -> impl Iterator<Item = f64> + '_ {
    std::iter::once(config.phi).chain(config.retry_phis.iter().copied())
}

fn td_estimate(value: f64, uncertainty: f64, threshold: f64, phi: f64, degenerate: bool) -> WitnessEstimate {
    WitnessEstimate {
        report: WitnessReport {
            value,
            kind: WitnessKind::DiscordWitness,
            inputs_digest: InputsDigest {
                phi: Some(phi),
                ..Default::default()
            },
            degenerate_basis: degenerate,
        },
        uncertainty,
        threshold,
    }
}

fn growth_estimate(value: f64, uncertainty: f64, threshold: f64, config: &ProtocolConfig) -> WitnessEstimate {
    WitnessEstimate {
        report: WitnessReport {
            value,
            kind: WitnessKind::CorrelationWitness,
            inputs_digest: InputsDigest {
                phi: Some(config.phi),
                hwp_angle: Some(config.hwp_angle),
                ..Default::default()
            },
            degenerate_basis: false,
        },
        uncertainty,
        threshold,
    }
}

fn finish(
    config: &ProtocolConfig,
    td: WitnessEstimate,
    growth: Option<WitnessEstimate>,
    degenerate: bool,
    states: IntermediateStates,
) -> ClassificationResult {
    let verdict = match &growth {
        None => Verdict::QC,
        Some(g) if g.fires() => Verdict::CC,
        Some(_) => Verdict::F,
    };
    ClassificationResult {
        verdict,
        td_report: td,
        growth_report: growth,
        degenerate_basis: degenerate,
        thresholds_used: config.clone(),
        intermediate_states: config.emit_states.then_some(states),
    }
}

fn classify_exact(rho: &DensityMatrix, config: &ProtocolConfig) -> Result<ClassificationResult> {
    let marginal = partial_trace(rho, Subsystem::System)?;
    let proj = eigenprojector_of(&marginal)?;
    let eps = config.exact_epsilon;

    let mut primary = None;
    for phi in phis(config) {
        let b = discord_branches(rho, &proj, phi)?;
        let est = td_estimate(
            trace_distance(&b.dephased_evolved, &b.evolved)?,
            0.0,
            eps,
            phi,
            proj.degenerate_source,
        );
        let fired = est.fires();
        let states = IntermediateStates {
            rho_se_0: rho.clone(),
            projector: proj.matrix().clone(),
            rho_s_t: b.evolved,
            rho_s_dephased_t: b.dephased_evolved,
            growth: None,
        };
        if fired {
            return Ok(finish(config, est, None, proj.degenerate_source, states));
        }
        primary.get_or_insert((est, states));
    }
    let (td, mut states) = primary.expect("at least one phase");

    let v = HalfWavePlate::new(config.hwp_angle).unitary();
    let g = growth_branches(rho, &v, config.phi)?;
    let growth = growth_estimate(g.evolved_distance()? - g.initial_distance()?, 0.0, eps, config);
    states.growth = Some(GrowthStates {
        rho_s_0: g.initial,
        rho_u_s_0: g.rotated_initial,
        rho_s_t: g.evolved,
        rho_u_s_t: g.rotated_evolved,
    });
    Ok(finish(config, td, Some(growth), proj.degenerate_source, states))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of simulated measurement `task` under a master seed.
fn task_seed(master: u64, task: u64) -> u64 {
    splitmix64(master ^ splitmix64(task))
}

const TASK_JOINT: u64 = 0;
const TASK_GROWTH: u64 = 1; // four consecutive tasks
const TASK_DISCORD: u64 = 16; // two per tried phase

/// Bootstrap standard error of the trace distance between two
/// reconstructions: the RMS size, in half trace norm, of the replica
/// fluctuation of their difference operator around the point difference.
///
/// A trace distance between noisy estimates is biased upward near zero, so
/// the spread of replica distances alone understates how large a distance
/// pure noise produces; this measures that noise floor directly.
fn distance_error(a: &ReconstructedState, b: &ReconstructedState) -> Result<f64> {
    let point = a.estimate.matrix().sub(b.estimate.matrix())?;
    let mut total = 0.0;
    for (x, y) in a.replicas.iter().zip(&b.replicas) {
        let fluctuation = x.matrix().sub(y.matrix())?.sub(&point)?;
        total += (0.5 * trace_norm(&fluctuation)?).powi(2);
    }
    Ok((total / a.replicas.len() as f64).sqrt())
}

fn classify_tomographic(rho: &DensityMatrix, config: &ProtocolConfig) -> Result<ClassificationResult> {
    let two_qubit = default_settings(2)?;
    let one_qubit = default_settings(1)?;
    let measure = |state: &DensityMatrix, task: u64| {
        measure_state(
            state,
            &one_qubit,
            config.shots,
            task_seed(config.seed, task),
            config.bootstrap_samples,
        )
    };

    // Stage 1: dephasing basis from a reconstruction of the joint state.
    let joint = estimate(&simulate_counts(
        rho,
        &two_qubit,
        config.shots,
        task_seed(config.seed, TASK_JOINT),
    )?)?;
    let proj: Projector = eigenprojector_of(&partial_trace(&joint, Subsystem::System)?)?;
    let mut primary = None;
    for (attempt, phi) in phis(config).enumerate() {
        // the dephasing acts on the prepared state, in the estimated basis
        let b = discord_branches(rho, &proj, phi)?;
        let task = TASK_DISCORD + 2 * attempt as u64;
        let evolved = measure(&b.evolved, task)?;
        let dephased_evolved = measure(&b.dephased_evolved, task + 1)?;
        let value = trace_distance(&dephased_evolved.estimate, &evolved.estimate)?;
        let sigma = distance_error(&dephased_evolved, &evolved)?;
        let est = td_estimate(
            value,
            sigma,
            config.threshold_sigma * sigma,
            phi,
            proj.degenerate_source,
        );
        let fired = est.fires();
        let states = IntermediateStates {
            rho_se_0: joint.clone(),
            projector: proj.matrix().clone(),
            rho_s_t: evolved.estimate,
            rho_s_dephased_t: dephased_evolved.estimate,
            growth: None,
        };
        if fired {
            return Ok(finish(config, est, None, proj.degenerate_source, states));
        }
        primary.get_or_insert((est, states));
    }
    let (td, mut states) = primary.expect("at least one phase");

    // Stage 2: growth of distinguishability from a locally rotated copy.
    let v = HalfWavePlate::new(config.hwp_angle).unitary();
    let g = growth_branches(rho, &v, config.phi)?;
    let initial = measure(&g.initial, TASK_GROWTH)?;
    let rotated_initial = measure(&g.rotated_initial, TASK_GROWTH + 1)?;
    let evolved = measure(&g.evolved, TASK_GROWTH + 2)?;
    let rotated_evolved = measure(&g.rotated_evolved, TASK_GROWTH + 3)?;

    let value = trace_distance(&rotated_evolved.estimate, &evolved.estimate)?
        - trace_distance(&rotated_initial.estimate, &initial.estimate)?;
    let sigma = distance_error(&rotated_evolved, &evolved)?.hypot(distance_error(&rotated_initial, &initial)?);
    let growth = growth_estimate(value, sigma, config.threshold_sigma * sigma, config);
    states.growth = Some(GrowthStates {
        rho_s_0: initial.estimate,
        rho_u_s_0: rotated_initial.estimate,
        rho_s_t: evolved.estimate,
        rho_u_s_t: rotated_evolved.estimate,
    });
    Ok(finish(config, td, Some(growth), proj.degenerate_source, states))
}

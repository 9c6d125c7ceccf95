//! Scalar figures of merit built from trace distances.
//!
//! * [`discord_t`]: distance between a state and its system-eigenbasis
//!   dephasing, a discord quantifier that needs the full two-qubit state.
//! * [`witness_td`]: the same comparison made on system marginals after the
//!   phase-gate interaction. Positive values certify discord using
//!   measurements on the system alone.
//! * [`witness_growth`]: increase over the interaction of the distance between
//!   the system marginals of a state and its locally rotated copy. Positive
//!   values certify initial system-environment correlations.

use serde::{Deserialize, Serialize};

use crate::channels::{apply_local_system, dephase, phase_gate_evolve, system_eigenprojector, Projector, UnitaryOp};
use crate::density::{partial_trace, trace_distance, DensityMatrix, Subsystem};
use crate::error::{Error, Result};
use crate::linalg::{kron, trace_norm, ComplexMatrix, STATE_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessKind {
    DiscordQuantifier,
    DiscordWitness,
    CorrelationWitness,
}

/// Parameters a witness value was computed with. Fields that do not apply
/// (or were not known at the call site) are left empty.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct InputsDigest {
    pub lambda: Option<f64>,
    pub theta: Option<f64>,
    pub phi: Option<f64>,
    pub hwp_angle: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub value: f64,
    pub kind: WitnessKind,
    pub inputs_digest: InputsDigest,
    pub degenerate_basis: bool,
}

impl WitnessReport {
    pub fn with_family_point(mut self, lambda: f64, theta: Option<f64>) -> Self {
        self.inputs_digest.lambda = Some(lambda);
        self.inputs_digest.theta = theta;
        self
    }

    pub fn with_hwp_angle(mut self, alpha: f64) -> Self {
        self.inputs_digest.hwp_angle = Some(alpha);
        self
    }
}

/// Discord quantifier `T = 1/2 ||Phi_d(rho) - rho||_1`.
///
/// Also evaluates `||P rho P - {P, rho}/2||_1` with `P` lifted to `P (x) 1`
/// and fails if the two disagree by more than 1e-9.
pub fn discord_t(rho_se: &DensityMatrix) -> Result<WitnessReport> {
    let proj = system_eigenprojector(rho_se)?;
    let value = discord_t_with(rho_se, &proj)?;
    Ok(WitnessReport {
        value,
        kind: WitnessKind::DiscordQuantifier,
        inputs_digest: InputsDigest::default(),
        degenerate_basis: proj.degenerate_source,
    })
}

/// [`discord_t`] for a given projector.
pub fn discord_t_with(rho_se: &DensityMatrix, proj: &Projector) -> Result<f64> {
    let dephased = dephase(rho_se, proj)?;
    let first = trace_distance(&dephased, rho_se)?;

    let p = kron(proj.matrix(), &ComplexMatrix::identity(2));
    let rho = rho_se.matrix();
    let sandwich = p.matmul(rho)?.matmul(&p)?;
    let anticomm = p.matmul(rho)?.add(&rho.matmul(&p)?)?.scale_real(0.5);
    let second = trace_norm(&sandwich.sub(&anticomm)?.hermitian_part())?;

    if (first - second).abs() > STATE_TOL {
        return Err(Error::QuantifierMismatch { first, second });
    }
    Ok(first)
}

/// System marginals compared by the local discord witness.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiscordBranches {
    pub projector: Projector,
    /// `Tr_E U rho U^dagger`.
    pub evolved: DensityMatrix,
    /// `Tr_E U Phi_d(rho) U^dagger`.
    pub dephased_evolved: DensityMatrix,
}

pub fn discord_branches(rho_se: &DensityMatrix, proj: &Projector, phi: f64) -> Result<DiscordBranches> {
    let dephased = dephase(rho_se, proj)?;
    Ok(DiscordBranches {
        projector: proj.clone(),
        evolved: partial_trace(&phase_gate_evolve(rho_se, phi)?, Subsystem::System)?,
        dephased_evolved: partial_trace(&phase_gate_evolve(&dephased, phi)?, Subsystem::System)?,
    })
}

/// Local discord witness `T_d = 1/2 ||rho_S^d(t) - rho_S(t)||_1` after the
/// phase gate with phase `phi`.
pub fn witness_td(rho_se: &DensityMatrix, phi: f64) -> Result<WitnessReport> {
    let proj = system_eigenprojector(rho_se)?;
    let branches = discord_branches(rho_se, &proj, phi)?;
    Ok(WitnessReport {
        value: trace_distance(&branches.dephased_evolved, &branches.evolved)?,
        kind: WitnessKind::DiscordWitness,
        inputs_digest: InputsDigest {
            phi: Some(phi),
            ..Default::default()
        },
        degenerate_basis: proj.degenerate_source,
    })
}

/// System marginals compared by the correlation witness.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrowthBranches {
    pub initial: DensityMatrix,
    pub rotated_initial: DensityMatrix,
    pub evolved: DensityMatrix,
    pub rotated_evolved: DensityMatrix,
}

impl GrowthBranches {
    pub fn initial_distance(&self) -> Result<f64> {
        trace_distance(&self.rotated_initial, &self.initial)
    }

    pub fn evolved_distance(&self) -> Result<f64> {
        trace_distance(&self.rotated_evolved, &self.evolved)
    }
}

pub fn growth_branches(rho_se: &DensityMatrix, v: &UnitaryOp, phi: f64) -> Result<GrowthBranches> {
    let rotated = apply_local_system(rho_se, v)?;
    let marginal = |r: &DensityMatrix| partial_trace(r, Subsystem::System);
    Ok(GrowthBranches {
        initial: marginal(rho_se)?,
        rotated_initial: marginal(&rotated)?,
        evolved: marginal(&phase_gate_evolve(rho_se, phi)?)?,
        rotated_evolved: marginal(&phase_gate_evolve(&rotated, phi)?)?,
    })
}

/// Correlation witness `T_u(t) - T_u(0)`, where the `u` branch starts from
/// `(V (x) 1) rho (V (x) 1)^dagger`.
pub fn witness_growth(rho_se: &DensityMatrix, v: &UnitaryOp, phi: f64) -> Result<WitnessReport> {
    let b = growth_branches(rho_se, v, phi)?;
    Ok(WitnessReport {
        value: b.evolved_distance()? - b.initial_distance()?,
        kind: WitnessKind::CorrelationWitness,
        inputs_digest: InputsDigest {
            phi: Some(phi),
            ..Default::default()
        },
        degenerate_basis: false,
    })
}

/// `lambda (cos 2theta - 1) - cos 2theta`. Vanishes on the QC parameter line
/// where the phase-pi discord witness is blind.
pub fn zero_line_residual(lambda: f64, theta: f64) -> f64 {
    let c = (2.0 * theta).cos();
    lambda * (c - 1.0) - c
}

/// Weight `lambda` on the zero line for a given `theta` in `(pi/4, pi/2]`.
pub fn zero_line_lambda(theta: f64) -> f64 {
    let c = (2.0 * theta).cos();
    c / (c - 1.0)
}

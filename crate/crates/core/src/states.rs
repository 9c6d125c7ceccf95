//! The three prepared state families on polarization (system) and momentum
//! (environment): classically correlated, discordant, and factorized.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix, ONE, ZERO};

/// Slack allowed when checking parameter ranges, so that e.g. a printed
/// `1.5707963267948966` counts as pi/2.
const RANGE_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Classically correlated.
    #[serde(rename = "CC")]
    Cc,
    /// Quantum correlated (nonzero discord).
    #[serde(rename = "QC")]
    Qc,
    /// Factorized.
    #[serde(rename = "F")]
    F,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Cc => "CC",
            Family::Qc => "QC",
            Family::F => "F",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "CC" => Ok(Family::Cc),
            "QC" => Ok(Family::Qc),
            "F" => Ok(Family::F),
            other => Err(Error::OutOfRange(format!(
                "unknown family {other:?} (expected CC, QC or F)"
            ))),
        }
    }
}

/// A point in one of the families. `theta` is only meaningful for QC.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub family: Family,
    pub lambda: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
}

impl FamilyParams {
    pub fn cc(lambda: f64) -> Self {
        FamilyParams {
            family: Family::Cc,
            lambda,
            theta: None,
        }
    }

    pub fn qc(lambda: f64, theta: f64) -> Self {
        FamilyParams {
            family: Family::Qc,
            lambda,
            theta: Some(theta),
        }
    }

    pub fn f(lambda: f64) -> Self {
        FamilyParams {
            family: Family::F,
            lambda,
            theta: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_lambda(self.lambda)?;
        match (self.family, self.theta) {
            (Family::Qc, Some(theta)) => check_theta(theta),
            (Family::Qc, None) => Err(Error::OutOfRange("QC family requires theta".into())),
            (_, Some(theta)) if theta != 0.0 => Err(Error::OutOfRange(format!(
                "theta must be absent or zero for {}",
                self.family
            ))),
            _ => Ok(()),
        }
    }

    /// Theta with the CC/F convention applied (absent reads as zero).
    pub fn theta_or_zero(&self) -> f64 {
        self.theta.unwrap_or(0.0)
    }

    pub fn build(&self) -> Result<DensityMatrix> {
        self.validate()?;
        match self.family {
            Family::Cc => make_cc(self.lambda),
            Family::Qc => make_qc(self.lambda, self.theta_or_zero()),
            Family::F => make_f(self.lambda),
        }
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&lambda) {
        return Err(Error::OutOfRange(format!("lambda = {lambda} not in [0, 1]")));
    }
    Ok(())
}

fn check_theta(theta: f64) -> Result<()> {
    if !(-RANGE_SLACK..=FRAC_PI_2 + RANGE_SLACK).contains(&theta) {
        return Err(Error::OutOfRange(format!("theta = {theta} not in [0, pi/2]")));
    }
    Ok(())
}

pub fn ket_h() -> [Complex64; 2] {
    [ONE, ZERO]
}

pub fn ket_v() -> [Complex64; 2] {
    [ZERO, ONE]
}

/// `cos(theta)|H> + sin(theta)|V>`.
pub fn theta_ket(theta: f64) -> [Complex64; 2] {
    [Complex64::new(theta.cos(), 0.0), Complex64::new(theta.sin(), 0.0)]
}

fn momentum_projector(channel: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(channel, channel)] = ONE;
    m
}

/// `lambda |H><H| (x) |0><0| + (1 - lambda) |pol><pol| (x) |1><1|`.
fn two_branch(lambda: f64, channel_one_pol: [Complex64; 2]) -> Result<DensityMatrix> {
    let first = kron(&ComplexMatrix::projector(&ket_h()), &momentum_projector(0)).scale_real(lambda);
    let second = kron(&ComplexMatrix::projector(&channel_one_pol), &momentum_projector(1)).scale_real(1.0 - lambda);
    DensityMatrix::bipartite(first.add(&second)?, 2, 2)
}

/// Classically correlated state, `Diag(lambda, 0, 0, 1 - lambda)`.
pub fn make_cc(lambda: f64) -> Result<DensityMatrix> {
    check_lambda(lambda)?;
    two_branch(lambda, ket_v())
}

/// Discordant state with channel 1 carrying `|theta>`.
pub fn make_qc(lambda: f64, theta: f64) -> Result<DensityMatrix> {
    check_lambda(lambda)?;
    check_theta(theta)?;
    two_branch(lambda, theta_ket(theta))
}

/// Factorized state `Diag(lambda, 1 - lambda) (x) 1/2`.
pub fn make_f(lambda: f64) -> Result<DensityMatrix> {
    check_lambda(lambda)?;
    let system = ComplexMatrix::from_diag(&[lambda, 1.0 - lambda]);
    let environment = ComplexMatrix::identity(2).scale_real(0.5);
    DensityMatrix::bipartite(kron(&system, &environment), 2, 2)
}

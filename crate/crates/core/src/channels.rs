//! Operations on two-qubit states: eigenbasis dephasing of the system, the
//! conditional phase gate coupling polarization to momentum, and local
//! unitaries on the system.

use std::f64::consts::{FRAC_PI_8, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::{partial_trace, DensityMatrix, Subsystem};
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, kron, ComplexMatrix, ONE, STATE_TOL};
use crate::states::ket_h;

/// Phase used when none is configured.
pub const DEFAULT_PHI: f64 = PI;
/// Half-wave plate angle used for the local unitary when none is configured.
pub const DEFAULT_HWP_ANGLE: f64 = FRAC_PI_8;

/// Rank-one projector on the system qubit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Projector {
    matrix: ComplexMatrix,
    /// Set when the marginal it was taken from had a degenerate spectrum and
    /// the H/V fallback was used.
    pub degenerate_source: bool,
}

impl Projector {
    /// `|v><v|` for a (not necessarily normalized) 2-vector.
    pub fn from_ket(v: [Complex64; 2]) -> Result<Self> {
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        if norm == 0.0 {
            return Err(Error::OutOfRange("zero vector has no projector".into()));
        }
        Ok(Projector {
            matrix: ComplexMatrix::projector(&[v[0] / norm, v[1] / norm]),
            degenerate_source: false,
        })
    }

    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.rows() != 2 || matrix.cols() != 2 {
            return Err(Error::DimensionMismatch("projector must be 2x2".into()));
        }
        let herm = matrix.hermiticity_error();
        if herm > STATE_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let idem = matrix.matmul(&matrix)?.sub(&matrix)?.max_abs();
        let rank = matrix.trace().re;
        if idem > STATE_TOL || (rank - 1.0).abs() > STATE_TOL {
            return Err(Error::OutOfRange(format!(
                "not a rank-one projector (idempotence error {idem:e}, trace {rank})"
            )));
        }
        Ok(Projector {
            matrix,
            degenerate_source: false,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `1 - P`.
    pub fn complement(&self) -> ComplexMatrix {
        ComplexMatrix::identity(2).sub(&self.matrix).expect("2x2")
    }
}

/// Unitary `1 (x) |0><0| + Diag(e^{i phi}, 1) (x) |1><1|`: a polarization phase
/// applied in momentum channel 1 only.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseGate {
    pub phi: f64,
}

impl PhaseGate {
    pub fn new(phi: f64) -> Self {
        PhaseGate { phi }
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let mut ch0 = ComplexMatrix::zeros(2, 2);
        ch0[(0, 0)] = ONE;
        let mut ch1 = ComplexMatrix::zeros(2, 2);
        ch1[(1, 1)] = ONE;
        let mut phase = ComplexMatrix::identity(2);
        phase[(0, 0)] = Complex64::from_polar(1.0, self.phi);
        kron(&ComplexMatrix::identity(2), &ch0)
            .add(&kron(&phase, &ch1))
            .expect("4x4")
    }
}

/// Polarization half-wave plate at angle `alpha`:
/// `[[cos 2a, sin 2a], [sin 2a, -cos 2a]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfWavePlate {
    pub alpha: f64,
}

impl HalfWavePlate {
    pub fn new(alpha: f64) -> Self {
        HalfWavePlate { alpha }
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let (s, c) = (2.0 * self.alpha).sin_cos();
        ComplexMatrix::from_real_rows(&[&[c, s], &[s, -c]]).expect("2x2")
    }

    pub fn unitary(&self) -> UnitaryOp {
        UnitaryOp(self.matrix())
    }
}

/// Square matrix checked to satisfy `U^dagger U = 1` within 1e-9.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexMatrix", into = "ComplexMatrix")]
pub struct UnitaryOp(ComplexMatrix);

impl TryFrom<ComplexMatrix> for UnitaryOp {
    type Error = Error;

    fn try_from(m: ComplexMatrix) -> Result<Self> {
        UnitaryOp::new(m)
    }
}

impl From<UnitaryOp> for ComplexMatrix {
    fn from(u: UnitaryOp) -> Self {
        u.0
    }
}

impl From<HalfWavePlate> for UnitaryOp {
    fn from(h: HalfWavePlate) -> Self {
        h.unitary()
    }
}

impl UnitaryOp {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let err = m.unitarity_error();
        if err > STATE_TOL {
            return Err(Error::NotUnitary(err));
        }
        Ok(UnitaryOp(m))
    }

    pub fn identity(n: usize) -> Self {
        UnitaryOp(ComplexMatrix::identity(n))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        UnitaryOp(self.0.adjoint())
    }
}

/// Lifts a system operator to `op (x) 1_2`.
fn on_system(op: &ComplexMatrix) -> ComplexMatrix {
    kron(op, &ComplexMatrix::identity(2))
}

/// Projector on the leading eigenvector of the system marginal. A degenerate
/// marginal falls back to `|H><H|` and marks the result.
pub fn system_eigenprojector(rho_se: &DensityMatrix) -> Result<Projector> {
    rho_se.require_two_qubits()?;
    let marginal = partial_trace(rho_se, Subsystem::System)?;
    eigenprojector_of(&marginal)
}

/// Leading-eigenvector projector of a single-qubit state.
pub fn eigenprojector_of(rho_s: &DensityMatrix) -> Result<Projector> {
    if rho_s.dim() != 2 {
        return Err(Error::DimensionMismatch("expected a qubit marginal".into()));
    }
    let eig = herm_eig(rho_s.matrix())?;
    if eig.degeneracy_flag {
        let mut p = Projector::from_ket(ket_h())?;
        p.degenerate_source = true;
        return Ok(p);
    }
    let v = eig.eigenvector(0);
    Projector::from_ket([v[0], v[1]])
}

/// `(P (x) 1) rho (P (x) 1) + ((1-P) (x) 1) rho ((1-P) (x) 1)`.
pub fn dephase(rho_se: &DensityMatrix, proj: &Projector) -> Result<DensityMatrix> {
    rho_se.require_two_qubits()?;
    let p = on_system(proj.matrix());
    let q = on_system(&proj.complement());
    let rho = rho_se.matrix();
    let out = p.matmul(rho)?.matmul(&p)?.add(&q.matmul(rho)?.matmul(&q)?)?;
    DensityMatrix::bipartite(out, 2, 2)
}

/// Phase-gate interaction `U(phi) rho U(phi)^dagger`.
pub fn phase_gate_evolve(rho_se: &DensityMatrix, phi: f64) -> Result<DensityMatrix> {
    rho_se.require_two_qubits()?;
    rho_se.evolve(&PhaseGate::new(phi).matrix())
}

/// `(V (x) 1) rho (V^dagger (x) 1)` for a qubit unitary `V`.
pub fn apply_local_system(rho_se: &DensityMatrix, v: &UnitaryOp) -> Result<DensityMatrix> {
    rho_se.require_two_qubits()?;
    if v.matrix().rows() != 2 {
        return Err(Error::DimensionMismatch("local unitary must be 2x2".into()));
    }
    rho_se.evolve(&on_system(v.matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ZERO;
    use crate::states::{make_cc, make_f, make_qc, theta_ket};
    use std::f64::consts::FRAC_PI_4;

    fn pi8_projector() -> ComplexMatrix {
        ComplexMatrix::projector(&theta_ket(FRAC_PI_8))
    }

    #[test]
    fn gate_and_plate_are_unitary() {
        for phi in [0.0, 0.3, PI, -2.0] {
            assert!(PhaseGate::new(phi).matrix().unitarity_error() < 1e-12);
        }
        for alpha in [0.0, FRAC_PI_8, 0.77] {
            let m = HalfWavePlate::new(alpha).matrix();
            assert!(m.unitarity_error() < 1e-12);
            assert!(m.hermiticity_error() < 1e-12);
        }
        let s = 0.5f64.sqrt();
        let hadamard = ComplexMatrix::from_real_rows(&[&[s, s], &[s, -s]]).unwrap();
        assert!(HalfWavePlate::new(FRAC_PI_8).matrix().approx_eq(&hadamard, 1e-15));
        assert!(UnitaryOp::new(ComplexMatrix::from_diag(&[1.0, 0.5])).is_err());
    }

    #[test]
    fn eigenprojector_examples() {
        let p = system_eigenprojector(&make_cc(0.64).unwrap()).unwrap();
        assert!(p.matrix().approx_eq(&ComplexMatrix::from_diag(&[1.0, 0.0]), 1e-15));
        assert!(!p.degenerate_source);

        let p = system_eigenprojector(&make_qc(0.5, FRAC_PI_4).unwrap()).unwrap();
        assert!(p.matrix().approx_eq(&pi8_projector(), 1e-12));

        let p = system_eigenprojector(&make_f(0.5).unwrap()).unwrap();
        assert!(p.degenerate_source);
        assert!(p.matrix().approx_eq(&ComplexMatrix::from_diag(&[1.0, 0.0]), 0.0));
    }

    #[test]
    fn dephase_examples() {
        let h = Projector::from_ket(ket_h()).unwrap();
        for lambda in [0.1, 0.64] {
            let cc = make_cc(lambda).unwrap();
            assert!(dephase(&cc, &h).unwrap().approx_eq(&cc, 1e-15));
        }

        let qc = make_qc(0.5, FRAC_PI_4).unwrap();
        let p = Projector::from_ket(theta_ket(FRAC_PI_8)).unwrap();
        let sigma = ComplexMatrix::from_real_rows(&[&[0.75, 0.25], &[0.25, 0.25]]).unwrap();
        let expected = kron(&sigma, &ComplexMatrix::identity(2).scale_real(0.5));
        let d = dephase(&qc, &p).unwrap();
        assert!(d.matrix().approx_eq(&expected, 1e-12));
        assert!(dephase(&d, &p).unwrap().approx_eq(&d, 1e-12));
    }

    #[test]
    fn phase_gate_examples() {
        let cc = make_cc(0.3).unwrap();
        assert!(phase_gate_evolve(&cc, PI).unwrap().approx_eq(&cc, 1e-15));
        let qc = make_qc(0.5, 0.4).unwrap();
        assert!(phase_gate_evolve(&qc, 0.0).unwrap().approx_eq(&qc, 1e-15));

        let evolved = phase_gate_evolve(&make_qc(0.5, FRAC_PI_4).unwrap(), PI).unwrap();
        let sys = partial_trace(&evolved, Subsystem::System).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[&[0.75, -0.25], &[-0.25, 0.25]]).unwrap();
        assert!(sys.matrix().approx_eq(&expected, 1e-12));
    }

    #[test]
    fn local_unitary_examples() {
        let qc = make_qc(0.3, 0.9).unwrap();
        assert!(apply_local_system(&qc, &UnitaryOp::identity(2))
            .unwrap()
            .approx_eq(&qc, 0.0));

        let v = HalfWavePlate::new(0.4).unitary();
        let out = apply_local_system(&qc, &v).unwrap();
        let env_in = partial_trace(&qc, Subsystem::Environment).unwrap();
        let env_out = partial_trace(&out, Subsystem::Environment).unwrap();
        assert!(env_in.approx_eq(&env_out, 1e-12));

        // HWP(pi/8) sends H -> +, V -> -
        let out = apply_local_system(&make_cc(0.64).unwrap(), &HalfWavePlate::new(FRAC_PI_8).unitary()).unwrap();
        let h = 0.5f64.sqrt();
        let plus = ComplexMatrix::projector(&[Complex64::new(h, 0.0), Complex64::new(h, 0.0)]);
        let minus = ComplexMatrix::projector(&[Complex64::new(h, 0.0), Complex64::new(-h, 0.0)]);
        let expected = kron(&plus, &ComplexMatrix::from_diag(&[0.64, 0.0]))
            .add(&kron(&minus, &ComplexMatrix::from_diag(&[0.0, 0.36])))
            .unwrap();
        assert!(out.matrix().approx_eq(&expected, 1e-12));

        assert!(apply_local_system(&qc, &UnitaryOp::identity(4)).is_err());
    }

    #[test]
    fn projector_validation() {
        assert!(Projector::from_matrix(ComplexMatrix::from_diag(&[1.0, 1.0])).is_err());
        assert!(Projector::from_matrix(ComplexMatrix::from_diag(&[0.5, 0.5])).is_err());
        assert!(Projector::from_matrix(pi8_projector()).is_ok());
        assert!(Projector::from_ket([ZERO, ZERO]).is_err());
    }
}

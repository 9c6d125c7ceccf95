//! Validated density matrices on a system (first) and environment (second)
//! factor, with partial traces and the trace distance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{herm_eig, trace_norm, ComplexMatrix, STATE_TOL};

/// Which factor of a bipartite state to keep in a partial trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    System = 0,
    Environment = 1,
}

impl TryFrom<usize> for Subsystem {
    type Error = Error;

    fn try_from(index: usize) -> Result<Self> {
        match index {
            0 => Ok(Subsystem::System),
            1 => Ok(Subsystem::Environment),
            _ => Err(Error::OutOfRange(format!("subsystem index {index} (expected 0 or 1)"))),
        }
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix with subsystem dims.
///
/// Every constructor validates within [`STATE_TOL`]; inputs that fail are
/// rejected rather than symmetrized.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DensityWire", into = "DensityWire")]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct DensityWire {
    #[serde(flatten)]
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl TryFrom<DensityWire> for DensityMatrix {
    type Error = Error;

    fn try_from(w: DensityWire) -> Result<Self> {
        DensityMatrix::with_dims(w.matrix, w.dims)
    }
}

impl From<DensityMatrix> for DensityWire {
    fn from(d: DensityMatrix) -> Self {
        DensityWire {
            matrix: d.matrix,
            dims: d.dims,
        }
    }
}

impl DensityMatrix {
    /// Single-subsystem state.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let n = matrix.rows();
        Self::with_dims(matrix, vec![n])
    }

    /// Bipartite state with `dims = [d_system, d_environment]`.
    pub fn bipartite(matrix: ComplexMatrix, d_system: usize, d_environment: usize) -> Result<Self> {
        Self::with_dims(matrix, vec![d_system, d_environment])
    }

    pub fn with_dims(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if dims.is_empty() || dims.contains(&0) || dims.iter().product::<usize>() != matrix.rows() {
            return Err(Error::BadDims {
                dims,
                size: matrix.rows(),
            });
        }
        let herm = matrix.hermiticity_error();
        if herm > STATE_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidTrace(tr.re));
        }
        let min_eig = *herm_eig(&matrix)?.eigenvalues.last().expect("non-empty spectrum");
        if min_eig < -STATE_TOL {
            return Err(Error::NotPositive(min_eig));
        }
        Ok(DensityMatrix { matrix, dims })
    }

    /// Pure state `|psi><psi|` (normalized here).
    pub fn pure(psi: &[num_complex::Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let v: Vec<_> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::projector(&v))
    }

    pub fn maximally_mixed(n: usize) -> Self {
        DensityMatrix {
            matrix: ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
            dims: vec![n],
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_bipartite(&self) -> bool {
        self.dims.len() == 2
    }

    pub(crate) fn require_two_qubits(&self) -> Result<()> {
        if self.dims != [2, 2] {
            return Err(Error::BadDims {
                dims: self.dims.clone(),
                size: self.dim(),
            });
        }
        Ok(())
    }

    /// Same state relabelled as a single subsystem of the full dimension.
    pub fn flatten_dims(&self) -> Self {
        DensityMatrix {
            matrix: self.matrix.clone(),
            dims: vec![self.dim()],
        }
    }

    pub fn approx_eq(&self, other: &DensityMatrix, tol: f64) -> bool {
        self.dims == other.dims && self.matrix.approx_eq(&other.matrix, tol)
    }

    /// Applies `u rho u^dagger` for a full-space unitary and revalidates.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::with_dims(self.matrix.conjugate_by(u)?, self.dims.clone())
    }
}

/// Marginal of a bipartite state on the kept subsystem.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> Result<DensityMatrix> {
    let &[ds, de] = rho.dims() else {
        return Err(Error::BadDims {
            dims: rho.dims().to_vec(),
            size: rho.dim(),
        });
    };
    let m = rho.matrix();
    let out = match keep {
        Subsystem::System => {
            let mut out = ComplexMatrix::zeros(ds, ds);
            for s in 0..ds {
                for t in 0..ds {
                    out[(s, t)] = (0..de).map(|e| m[(s * de + e, t * de + e)]).sum();
                }
            }
            out
        }
        Subsystem::Environment => {
            let mut out = ComplexMatrix::zeros(de, de);
            for e in 0..de {
                for f in 0..de {
                    out[(e, f)] = (0..ds).map(|s| m[(s * de + e, s * de + f)]).sum();
                }
            }
            out
        }
    };
    DensityMatrix::new(out)
}

/// `partial_trace` with a raw subsystem index, rejecting anything but 0 or 1.
pub fn partial_trace_index(rho: &DensityMatrix, keep: usize) -> Result<DensityMatrix> {
    partial_trace(rho, Subsystem::try_from(keep)?)
}

/// Half the trace norm of `a - b`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}-dim vs {}-dim state",
            a.dim(),
            b.dim()
        )));
    }
    let d = 0.5 * trace_norm(&a.matrix().sub(b.matrix())?)?;
    Ok(d.clamp(0.0, 1.0))
}

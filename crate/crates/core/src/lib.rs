//! Trace-distance probes for system-environment correlations in two-qubit
//! states.
//!
//! A polarization qubit (system) and a two-channel momentum degree of freedom
//! (environment) are prepared in one of three families: discordant (`QC`),
//! classically correlated (`CC`) or factorized (`F`). Looking only at the
//! system, a two-stage test tells them apart:
//!
//! 1. dephase the joint state in the eigenbasis of the system marginal, let
//!    both copies interact through a conditional phase gate, and compare the
//!    system marginals ([`witness::witness_td`]). A nonzero distance certifies
//!    discord.
//! 2. otherwise rotate the system with a local half-wave plate and check
//!    whether the distance between the rotated and unrotated marginals grows
//!    through the interaction ([`witness::witness_growth`]). Growth certifies
//!    classical correlations; no growth means the state is a product.
//!
//! Both stages run either on exact density matrices or through simulated
//! finite-shot tomography ([`tomography`]) with bootstrap error bars.
//!
//! The runnable programs under `examples/` walk through each piece:
//!
//! ```bash
//! cargo run -p correlation-probe --example state_families
//! cargo run -p correlation-probe --example two_step_protocol
//! ```

pub mod channels;
pub mod cli;
pub mod density;
pub mod error;
pub mod linalg;
pub mod protocol;
pub mod states;
pub mod sweep;
pub mod tomography;
pub mod witness;

pub use channels::{
    apply_local_system, dephase, phase_gate_evolve, system_eigenprojector, HalfWavePlate, PhaseGate, Projector,
    UnitaryOp,
};
pub use density::{partial_trace, trace_distance, DensityMatrix, Subsystem};
pub use error::{Error, Result};
pub use linalg::{herm_eig, kron, ComplexMatrix, HermEigResult};
pub use protocol::{classify, classify_simulated, ClassificationResult, Mode, ProtocolConfig, Verdict};
pub use states::{make_cc, make_f, make_qc, theta_ket, Family, FamilyParams};
pub use sweep::{phase_scan, run_sweep, GridAxis, Quantity, SweepSpec};
pub use witness::{discord_t, witness_growth, witness_td, zero_line_residual, WitnessKind, WitnessReport};

//! Classical and quantum correlations of a nearest-neighbour (or farther)
//! spin pair taken from the ground state of the one-dimensional transverse
//! Ising chain, followed through Markovian decoherence.
//!
//! The pipeline is:
//!
//! 1. [`ground_state`] integrates the exact thermodynamic-limit correlators
//!    and assembles the two-qubit reduced density matrix as an [`XState`].
//! 2. [`channels`] evolves that state through local Kraus channels on each
//!    qubit and narrows the result back to an [`XState`].
//! 3. [`correlations`] computes mutual information, classical correlations
//!    and quantum discord in closed form, with a brute-force measurement
//!    optimizer as an independent cross-check.
//! 4. [`criticality`] sweeps the decoherence parameter and the coupling to
//!    locate sudden-change and crossing points and their derivatives.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod correlations;
pub mod criticality;
pub mod ground_state;
pub mod numerics;

pub use channels::{
    evolve_pair, kraus_set, parametrized_time, project_xstate, ChannelKind, DensityMatrix4,
    KrausSet,
};
pub use correlations::{
    coefficients, discord, discord_oracle, mutual_information, shannon_entropy_bits,
    single_qubit_entropy, spectrum, z_measured_classical, Branch, CoefficientVector,
    CorrelationBreakdown, MeasurementAxis, Spectrum, XState,
};
pub use criticality::{
    critical_table, derivative_scan, effective_step, find_crossings, find_p_sc, linspace,
    signature, sweep_lambda, sweep_p, CriticalRow, CriticalSignature, DerivativeEstimate,
    PSweepRow, SignatureQuantity, SolverSettings, Trajectory,
};
pub use ground_state::{GroundState, GroundStateCorrelators, ModelParams};
pub use numerics::{NumericsError, QuadratureSpec, RootBracket};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("invalid model parameters: {0}")]
    InvalidModel(String),
    #[error("invalid two-qubit state: {0}")]
    InvalidState(String),
    #[error("probability {value} is negative beyond rounding tolerance")]
    NegativeProbability { value: f64 },
    #[error("decoherence parameter p = {0} is outside [0, 1]")]
    InvalidDecoherence(f64),
    #[error("channel output violates {what}: {detail}")]
    Unphysical { what: &'static str, detail: String },
    #[error("matrix is not of X form: entry ({row}, {col}) = {value}")]
    NotXForm {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("unknown channel `{0}`")]
    UnknownChannel(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

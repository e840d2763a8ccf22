//! Multi-mode states over truncated Fock and qubit spaces.

mod density;
pub(crate) mod kernel;
mod register;
mod state;

pub use density::{tensor_rho, trace_distance, DensityOperator};
pub use register::{ModeRegister, ModeSpec};
pub use state::{
    make_cat, make_coherent, make_fock, make_hybrid_pair, make_vsp_bell, overlap, single_mode,
    tensor, Parity, StateVector, VspBell,
};
pub(crate) use state::coherent_amplitudes;

/// Default Fock cutoff for the small-amplitude regime (|α| ≤ 0.7).
pub const DEFAULT_CUTOFF: usize = 12;

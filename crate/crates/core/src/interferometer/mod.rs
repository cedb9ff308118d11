//! Two-level readout: evolution of the spin coherence under the localization rate, the `H S`
//! projection, the `A sin φ` signal, click efficiency, signal maps, and the optimum search.

mod goldilocks;
mod map;
mod readout;
mod spin;

pub use goldilocks::{goldilocks_search, Criterion, GoldilocksZone, SearchOptions};
pub use map::{signal_map, PhaseModel, SignalMap, SignalPoint};
pub use readout::{apply_readout_gates, efficiency, evolve, hadamard, phase_gate, signal, visibility_phase};
pub use spin::{state_tolerance, Mat2, SpinState, VisibilityPhase};

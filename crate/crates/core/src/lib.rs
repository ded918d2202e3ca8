//! Entropic coherence of states and operations.
//!
//! Measures (relative entropy of coherence, l1 coherence), cohering and
//! decohering powers of unitaries and channels, and the relations between
//! coherence and bipartite correlations under incoherent interactions.

pub mod channels;
pub mod correlations;
pub mod error;
pub mod gates;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod optimize;
pub mod powers;
pub mod report;
pub mod states;
pub mod verify;

pub use channels::{apply_channel, channel_tensor, commutes_with_dephasing, dilate, preset_channel, ChannelPreset, KrausChannel};
pub use correlations::{
    discord_fixed_basis, one_way_deficit, qi_relative_entropy, ree_pure, verify_coherence_chain,
    verify_deficit_relations, BipartiteState, ChainReport, DeficitResult, IncoherentOp,
};
pub use error::{Error, Result};
pub use gates::{build_gate, gate_from_str, GateSpec, UnitaryGate};
pub use linalg::{partial_trace, tensor_product, ComplexMatrix};
pub use measures::{
    coherence_l1, coherence_rel_entropy, relative_entropy, shannon_entropy, von_neumann_entropy, Entropy,
};
pub use powers::{
    cohering_power, cohering_power_between, decohering_power, sup_cohering_power, MaxCoherentSet, PowerResult,
};
pub use report::{Check, Relation, VerificationReport};
pub use states::{dephase, maximally_coherent, DensityOperator, PhaseMode, PureState, ReferenceBasis};
pub use verify::{run_suite, SuiteConfig, SUITES};

//! Dynamic and structural analyses of polynomial dynamical systems.

mod analyze;
mod attractors;
mod conjunctive;
mod phase;
mod wiring;

pub use analyze::{analyze, Analysis, AnalysisOptions, Mode};
pub use attractors::{
    attractors_algebraic, attractors_enumerative, limit_cycles, steady_states, steady_states_probabilistic, trajectory,
    AttractorReport, Cycle, CycleSearch, Method, Trajectory, DEFAULT_ENUMERATION_CAP,
};
pub use conjunctive::{classify, conjunctive_analysis, loop_number, necklace_count, ConjunctiveSummary, NetworkClass};
pub use phase::{phase_space, phase_space_probabilistic, PhaseSpace};
pub use wiring::{
    circuits_of, functional_circuits, wiring_diagram, Circuit, CircuitReport, Edge, Sign, WiringDiagram,
    DEFAULT_CIRCUIT_CAP, DEFAULT_EDGE_CHECK_CAP,
};

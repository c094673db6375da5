//! Polynomial dynamical systems, probabilistic systems and update schedules.

mod pds;
mod schedule;
mod state;
mod validate;

pub use pds::{Choice, Pds, ProbabilisticPds, DEFAULT_TERM_LIMIT};
pub use schedule::UpdateSchedule;
pub use state::State;
pub use validate::{format_rational, validate_pds, validate_probabilistic, Violation};

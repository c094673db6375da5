use std::fmt;
use std::str::FromStr;

use super::attractors::{
    attractors_algebraic, attractors_enumerative, steady_states_probabilistic, AttractorReport, Cycle, Method,
    DEFAULT_ENUMERATION_CAP,
};
use super::phase::phase_space_probabilistic;
use crate::error::{Error, Result};
use crate::model::{State, UpdateSchedule};
use crate::translate::{document_to_system, ModelDocument, System, Translation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// Gröbner-basis solving.
    #[default]
    Algorithm,
    /// Exhaustive enumeration of the state space.
    Simulation,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "algorithm" => Ok(Mode::Algorithm),
            "simulation" => Ok(Mode::Simulation),
            _ => Err(Error::Invalid(format!(
                "unknown mode '{s}' (expected algorithm or simulation)"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Algorithm => "algorithm",
            Mode::Simulation => "simulation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub mode: Mode,
    /// Longest limit cycle searched for in algorithm mode; 1 means steady states only.
    pub max_cycle_length: usize,
    /// Replaces the document's schedule when set.
    pub schedule: Option<UpdateSchedule>,
    pub enumeration_cap: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            mode: Mode::Algorithm,
            max_cycle_length: 1,
            schedule: None,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub report: AttractorReport,
    /// Attractors dropped because they contain states added by a field extension.
    pub ignored: Vec<Cycle>,
    pub notes: Vec<String>,
    pub translation: Translation,
}

/// Translate a document and find its attractors.
///
/// In algorithm mode cycles of every length `2..=max_cycle_length` are searched; in
/// simulation mode all attractors are found, whatever their length, and cycles
/// longer than `max_cycle_length` are dropped so both modes answer the same question.
pub fn analyze(doc: &ModelDocument, options: &AnalysisOptions) -> Result<Analysis> {
    if options.max_cycle_length == 0 {
        return Err(Error::Invalid("cycle length must be at least 1".into()));
    }
    if options.enumeration_cap == 0 {
        return Err(Error::Invalid("enumeration cap must be positive".into()));
    }
    let doc = match &options.schedule {
        Some(s) => doc.clone().with_schedule(s.clone())?,
        None => doc.clone(),
    };
    let translation = document_to_system(&doc)?;
    let mut notes = Vec::new();
    let report = match &translation.system {
        System::Deterministic(f) => match options.mode {
            Mode::Algorithm => attractors_algebraic(f, options.max_cycle_length)?,
            Mode::Simulation => {
                let mut report = attractors_enumerative(f, options.enumeration_cap)?;
                report.limit_cycles.retain(|c| c.len() <= options.max_cycle_length);
                report
            }
        },
        System::Probabilistic(f) => {
            if options.max_cycle_length > 1 {
                notes.push("limit cycles are not computed for probabilistic systems".to_string());
            }
            match options.mode {
                Mode::Algorithm => AttractorReport {
                    steady_states: steady_states_probabilistic(f)?,
                    limit_cycles: Vec::new(),
                    method: Method::Algebraic,
                },
                Mode::Simulation => AttractorReport {
                    steady_states: phase_space_probabilistic(f, options.enumeration_cap)?.fixed_points(),
                    limit_cycles: Vec::new(),
                    method: Method::Enumerative,
                },
            }
        }
    };
    let mut ignored = Vec::new();
    let report = match &translation.extension {
        Some(ext) if !ext.is_empty() => {
            let keep = |states: &[State]| !states.iter().any(|s| ext.is_extra(s));
            let mut steady_states = Vec::new();
            for s in report.steady_states {
                if keep(std::slice::from_ref(&s)) {
                    steady_states.push(s);
                } else {
                    ignored.push(Cycle::new(vec![s]));
                }
            }
            let (limit_cycles, dropped): (Vec<Cycle>, Vec<Cycle>) =
                report.limit_cycles.into_iter().partition(|c| keep(c.states()));
            ignored.extend(dropped);
            if !ignored.is_empty() {
                notes.push(format!(
                    "{} attractor(s) contain states added by the field extension and are ignored",
                    ignored.len()
                ));
            }
            AttractorReport {
                steady_states,
                limit_cycles,
                method: report.method,
            }
        }
        _ => report,
    };
    Ok(Analysis {
        report,
        ignored,
        notes,
        translation,
    })
}

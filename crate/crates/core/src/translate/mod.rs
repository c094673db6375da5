//! Model files and the conversions from Boolean and logical rules to polynomials.

mod boolean;
mod document;
mod logical;

pub use boolean::{boolean_to_polynomial, parse_boolean, BooleanExpression};
pub use document::{document_to_system, ModelDocument, ModelKind, Rules, System, Translation};
pub use logical::{logical_to_pds, ExtensionReport, LogicalModel, TransitionTable};

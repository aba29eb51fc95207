//! Abstract relations and string rewriting.

mod confluence;
mod relation;
mod rules;
mod table;
mod termination;
mod word;

pub use confluence::{critical_pairs, string_local_confluence, CriticalPair, Joinability};
pub use relation::{AbstractRel, ClosureKind, RelProperty};
pub use rules::{Kind, Rule, RuleSet, Step};
pub use table::table_presentation;
pub use termination::{cw_measure, termination_certificate, TerminationCert};
pub use word::{Alphabet, Word};

use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("edge ({0}, {1}) outside carrier of size {2}")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("relation is not terminating; cycle through {0:?}")]
    NotTerminating(Vec<usize>),
    #[error("relation is not complete; class {class:?} has irreducibles {irreducibles:?}")]
    NotComplete {
        class: Vec<usize>,
        irreducibles: Vec<usize>,
    },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("malformed word {0:?}")]
    MalformedWord(String),
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("rule {index} is not allowed for {kind} presentations: {reason}")]
    BadRule {
        index: usize,
        kind: Kind,
        reason: &'static str,
    },
    #[error("fuel exhausted after {steps} steps at {last}")]
    FuelExhausted { steps: usize, last: String },
    #[error("rule {0} does not have the shape Y-letter X-letter -> X-letter Y-word")]
    ShapeMismatch(usize),
    #[error("table is not a {kind}: {report}")]
    KindCheckFailed {
        kind: Kind,
        report: Box<Report<Vec<crate::magma::ElementId>>>,
    },
}

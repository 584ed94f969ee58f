use thiserror::Error;

use crate::sets::Element;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate symbol `{0}` in universe")]
    DuplicateSymbol(String),
    #[error("a finite universe needs at least one symbol")]
    EmptyUniverse,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("element {0} is outside the universe")]
    ElementOutOfRange(Element),
    #[error("operands belong to different universes")]
    UniverseMismatch,
    #[error("{0} requires a finite universe")]
    FiniteOnly(&'static str),
    #[error("{0} requires the cofinite universe")]
    CofiniteOnly(&'static str),
    #[error("enumerating finite subsets of a cofinite-mode set needs a size cap")]
    MissingCap,
    #[error("cannot parse set literal `{literal}`: {reason}")]
    SetLiteral { literal: String, reason: String },

    #[error("s-example constraint violated: {0}")]
    SExampleConstraint(String),
    #[error("operator table must have {expected} entries, got {got}")]
    PartialTable { expected: usize, got: usize },
    #[error("table entry for {input:#x} does not fit the universe")]
    TableEntryOutOfRange { input: u64 },
    #[error("closure system is missing the full universe")]
    SystemMissingUniverse,
    #[error("closure system is not closed under intersection")]
    SystemNotIntersectionClosed,
    #[error("closure systems need a finite universe of at most 64 symbols")]
    SystemTooWide,
    #[error("weak join of these operands has no closed form on the cofinite universe")]
    UnsupportedWeakJoin,
    #[error("weak-join iteration left its starting set at {0}; operands are not extensive")]
    WeakJoinNotExtensive(String),
    #[error("universe of size {size} is too large for a sweep over every subset (limit {limit})")]
    SweepTooLarge { size: usize, limit: usize },
    #[error("no exact comparison is available for these operators on the cofinite universe")]
    Undecidable,

    #[error("order precondition failed: {0}")]
    OrderPrecondition(String),
    #[error("the inconsistent operator U is excluded here (pass include_top to allow it)")]
    TopExcluded,
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("the two chain tests disagree on pair ({0}, {1})")]
    RouteDisagreement(usize, usize),
    #[error("internal check failed: {0}")]
    CheckFailed(String),

    #[error("operator is axiomless; no element with C(L - {{x}}) = L is guaranteed")]
    Axiomless,
    #[error("operator is not a consequence operator")]
    NotConsequenceOperator,
    #[error("enumeration supports universes of size 1..=4, got {0}")]
    EnumerationTooLarge(usize),
    #[error("the family needs a universe with at least two elements")]
    UniverseTooSmall,
    #[error("operator is pointwise equal to the identity")]
    IsIdentity,

    #[error("alphabet symbols must be distinct and the alphabet nonempty")]
    BadAlphabet,
    #[error("words must be nonempty")]
    EmptyWord,
    #[error("symbol `{0}` is not in the alphabet")]
    NotInAlphabet(char),
    #[error("words come from different alphabets")]
    AlphabetMismatch,
    #[error("arity {k} out of range for a word of size {size}")]
    ArityOutOfRange { k: usize, size: usize },
    #[error("word of size {0} is too long to stream its decompositions")]
    WordTooLong(usize),
    #[error("partial sequences need at least one position")]
    EmptySequence,

    #[error("domain has {0} elements; the exhaustive subset sweep is capped at 20")]
    CarrierTooLarge(usize),
    #[error("domain element is not part of the relation carrier")]
    DomainOutsideCarrier,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
}

use crate::perm::Pattern3;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The letters do not form a permutation of 1..n.
    #[error("not a permutation of 1..{n}: {reason}")]
    NotAPermutation { n: usize, reason: String },

    /// A permutation was outside the avoidance class an operation requires.
    #[error("input contains {pattern}; {operation} expects a {pattern}-avoider")]
    DomainViolation {
        pattern: Pattern3,
        operation: &'static str,
    },

    /// A step word failed the Dyck prefix condition.
    #[error("not a Dyck path: prefix of length {prefix_len} has more down- than up-steps")]
    NotADyckPath { prefix_len: usize },

    /// A step word had unequal numbers of up- and down-steps.
    #[error("not a Dyck path: {ups} up-steps vs {downs} down-steps")]
    UnbalancedPath { ups: usize, downs: usize },

    /// Text could not be parsed as the requested object.
    #[error("parse error: {0}")]
    Parse(String),

    /// A structured value violated one of its declared invariants.
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// A statistic name did not match the naming grammar or any known name.
    #[error("unknown statistic {name:?}{}", suggestion.as_ref().map(|s| format!("; did you mean {s:?}?")).unwrap_or_default())]
    UnknownStat {
        name: String,
        suggestion: Option<String>,
    },

    /// An inversion table was requested beyond its configured length cap.
    #[error("no inversion table for length {len}: cap is {cap} (raise it with set_table_cap)")]
    TableCap { len: usize, cap: usize },

    /// West's signature search found no or several matches; this would
    /// falsify the uniqueness claim the bijection rests on, so it is
    /// surfaced rather than papered over.
    #[error("signature search failed at length {len}: {matches} candidate sites matched")]
    SignatureSearch { len: usize, matches: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

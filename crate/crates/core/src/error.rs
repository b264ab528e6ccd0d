use thiserror::Error;

use crate::terms::Placement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{name}` at byte {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("placement {0:?} does not resolve in the host word")]
    Unresolvable(Placement),
    #[error("empty factors have no placements")]
    EmptyFactor,
    #[error("the two placements are identical")]
    IdenticalPlacements,
    #[error("the placements are not separated")]
    NotSeparated,
    #[error("word is not in the support of the polynomial")]
    NotInSupport,
    #[error("instance polynomial is zero")]
    ZeroInstance,
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("unknown built-in identity `{0}`")]
    UnknownBuiltin(String),
    #[error("built-in `{0}` requires a parameter")]
    MissingParameter(String),
    #[error("pattern side {index} out of range for `{name}`")]
    PatternIndex { name: String, index: usize },
    #[error("monomial of `{name}` does not bind every metavariable")]
    UnboundMetavariable { name: String },
    #[error("identity `{0}` is zero")]
    ZeroIdentity(String),
    #[error("rewrite budget of {0} exhausted")]
    BudgetExhausted(usize),
    #[error("rewriting revisited a state after {steps} steps (non-terminating)")]
    CycleGuard { steps: usize },
    #[error("chosen redex is stale: monomial absent or placement invalid")]
    StaleChoice,
    #[error("operation requires a monomial order (order mode)")]
    OrderModeRequired,
    #[error("no value assigned to generator {0}")]
    MissingAssignment(u32),
    #[error("vector dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0}")]
    Usage(String),
}

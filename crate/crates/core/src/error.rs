use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("order relation is not a partial order: {0}")]
    NotAPoset(String),
    #[error("elements {0} and {1} have no {2}")]
    NotALattice(usize, usize, &'static str),
    #[error("lattice is not distributive at ({0}, {1}, {2})")]
    NotDistributive(usize, usize, usize),
    #[error("no relative pseudocomplement for ({0}, {1})")]
    NoImplication(usize, usize),
    #[error("degenerate algebra: bottom equals top")]
    Degenerate,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("element {0} out of range for an algebra of size {1}")]
    ElementOutOfRange(usize, usize),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("expected at most one free variable, found {0}")]
    MultiVariable(usize),
    #[error("no Rieger-Nishimura element up to index {0} is equivalent")]
    ClassificationBudgetExceeded(u32),
    #[error("no substitution into {{top, p, bot}} reduces the principle")]
    NoSubstitutionFound,

    #[error("no countermodel found among algebras of size <= {0}")]
    NotFoundWithinBudget(usize),
    #[error("equation {0} = top has a finite gap, no witness family exists")]
    GapEquation(String),

    #[error("element {0} is not central")]
    NotCentral(usize),
    #[error("central element {0} is bottom or top")]
    TrivialCenterElement(usize),
    #[error("element {0} is not a maximal non-central element")]
    NotMaximalNonCentral(usize),
    #[error("not a topology: {0}")]
    NotATopology(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),

    #[error("bit length {ell} cannot encode {needed} cryptoelements")]
    EllTooSmall { ell: u32, needed: u64 },
    #[error("bit length {0} exceeds the supported maximum of 62")]
    EllTooLarge(u32),
}

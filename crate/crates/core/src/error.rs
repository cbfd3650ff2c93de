use thiserror::Error;

use crate::bipoly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("result is not a polynomial after dualising in dimension {dim}: {source}")]
    NonPolynomialResult { dim: i64, source: PolyError },
    #[error("slopes differ: d1·(n-k-n1) = {lhs} but (d-d1)·n1 = {rhs}")]
    SlopeMismatch { lhs: i64, rhs: i64 },
    #[error("variant {variant} needs {requirement}")]
    BadVariant {
        variant: &'static str,
        requirement: String,
    },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("enumeration guard exceeded: {0} (set HODGE_GUARD_OVERRIDE=1 to lift)")]
    GuardExceeded(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = HodgeError> = std::result::Result<T, E>;

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(HodgeError::Precondition(msg()))
    }
}

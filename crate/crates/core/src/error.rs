use thiserror::Error;

/// Errors raised by the library.
///
/// Variants split into two families: domain/validation problems with the
/// input, and budget/precision exhaustion where the input was fine but the
/// requested work or accuracy is out of reach. [`Error::is_exhaustion`]
/// tells them apart.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid digit {0}: Lüroth digits are integers >= 2")]
    InvalidDigit(u64),

    #[error("empty digit string")]
    EmptyWord,

    #[error("series diverges: the infinite pressure sum needs s > 1/2, got s = {0}")]
    Divergent(f64),

    #[error("parameters outside the admissible region: {0}")]
    ParameterRegion(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("depth {depth} exceeds the schedule horizon {horizon}")]
    HorizonExceeded { depth: usize, horizon: usize },

    #[error("digit string violates the construction at position {position}: {reason}")]
    StructuralViolation { position: usize, reason: String },

    #[error("enumeration budget exceeded: {needed} items requested, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("tolerance {tol:e} not reached within {iterations} iterations")]
    ToleranceUnattainable { tol: f64, iterations: usize },

    #[error("tolerance {tol:e} is below the working precision floor {floor:e}")]
    PrecisionExhausted { tol: f64, floor: f64 },

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),
}

impl Error {
    /// True for budget, iteration and precision exhaustion.
    pub fn is_exhaustion(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. }
                | Error::ToleranceUnattainable { .. }
                | Error::PrecisionExhausted { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

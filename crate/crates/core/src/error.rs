use thiserror::Error;

/// Errors produced by the accounting library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation not supported for this distribution variant: {0}")]
    UnsupportedVariant(&'static str),

    #[error("one distribution is continuous and the other discrete")]
    MismatchedSupportKind,

    #[error("discrete distributions have different outcome labels")]
    LabelMismatch,

    #[error("enumeration budget exceeded: needs {required} outcomes, budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("crossing search exceeded the root budget of {0}")]
    RootBudgetExceeded(usize),

    #[error("discretization step must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("grid steps differ: {0} vs {1}")]
    StepMismatch(f64, f64),

    #[error("cannot combine a pessimistic and an optimistic PLD")]
    EstimateMismatch,

    #[error("epsilon grid is not strictly increasing")]
    GridNotSorted,

    #[error("epsilon grid is not uniformly spaced")]
    GridNotUniform,

    #[error("delta curve is not convex in e^eps: atom {index} solved to mass {mass}")]
    NonConvexCurve { index: usize, mass: f64 },

    #[error("delta {delta} is unreachable: at or below the infinite-loss mass {mass_inf}")]
    DeltaUnreachable { delta: f64, mass_inf: f64 },

    #[error("target epsilon {epsilon} not bracketable for sigma in [{lo}, {hi}]")]
    NotBracketable { epsilon: f64, lo: f64, hi: f64 },

    #[error("privacy loss is not monotone in the output; pair not supported")]
    NonMonotoneLoss,

    #[error("composed support of {0} grid points exceeds the array budget")]
    OverflowBudget(usize),

    #[error("Laplace noise is not supported here: {0}")]
    UnsupportedNoise(&'static str),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

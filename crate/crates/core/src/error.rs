use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unknown variety label `{0}`")]
    UnknownVariety(String),

    #[error("unsupported argument: {0}")]
    Unsupported(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("leading coefficient of the recurrence vanishes at n = {n}")]
    LeadingZero { n: usize },

    #[error("integrality violated at n = {n}: {detail}")]
    Integrality { n: usize, detail: String },

    #[error("no convergence: successive-difference ratio {ratio} is not below 1")]
    NonConvergence { ratio: String },

    #[error("precision budget exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("asymptotic Bernoulli tail started growing before reaching tolerance")]
    BernoulliDivergence,

    #[error("resonant exponents: {0}")]
    Resonance(String),

    #[error("operator has no maximal unipotent point at t = 0")]
    NotMum,

    #[error("matrix is singular to working precision")]
    Singular,

    #[error("verification failed: {0}")]
    Verification(String),
}

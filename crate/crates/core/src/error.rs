use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow in {0}")]
    Overflow(String),

    #[error("no sign change on bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("root finder did not converge after {iterations} iterations (last x = {last_x})")]
    NoConvergence { iterations: usize, last_x: f64 },

    #[error("singular interface system for mode {mode} (condition number {condition:.3e})")]
    SingularSystem { mode: u32, condition: f64 },

    #[error("closed-form denominator vanishes ({0:.3e})")]
    DivisionByZero(f64),

    #[error("tuning bracket around {center} contains no root")]
    BracketFailure { center: f64 },

    #[error("truncation N = {n} insufficient: tail {tail:.3e} exceeds the tolerance")]
    TruncationInsufficient { n: usize, tail: f64 },

    #[error("evaluation point lies on the interface r = {radius}")]
    OnInterface { radius: f64 },

    #[error("adaptive quadrature did not converge on [{a}, {b}]")]
    QuadratureNonConvergence { a: f64, b: f64 },

    #[error("finite-difference step too large: Richardson ratio {ratio:.3} is not quadratic")]
    StepTooLarge { ratio: f64 },

    #[error("configuration is resonant (mode {mode}, k = {k}); use the resonance experiments")]
    Resonant { mode: u32, k: f64 },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o: {0}")]
    Io(String),

    #[error("at eps = {eps}: {source}")]
    AtEpsilon { eps: f64, source: Box<Error> },
}

impl Error {
    pub(crate) fn at_eps(self, eps: f64) -> Self {
        match self {
            e @ Error::AtEpsilon { .. } => e,
            other => Error::AtEpsilon { eps, source: Box::new(other) },
        }
    }

    /// True for failures caused by bad user input rather than numerics.
    pub fn is_validation(&self) -> bool {
        match self {
            Error::InvalidInput(_) | Error::Domain(_) | Error::Resonant { .. } => true,
            Error::AtEpsilon { source, .. } => source.is_validation(),
            _ => false,
        }
    }
}

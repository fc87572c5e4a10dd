use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("jet order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("jet order {got} is too small, at least {needed} is required")]
    InsufficientOrder { needed: usize, got: usize },

    #[error("square root of non-positive value {value}")]
    NonPositiveRadicand { value: f64 },

    #[error("signature mismatch: ({p1},{q1}) vs ({p2},{q2})")]
    SignatureMismatch { p1: usize, q1: usize, p2: usize, q2: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("germ is degenerate: inversion denominator {denominator:e} is below {threshold:e}")]
    DegenerateGerm { denominator: f64, threshold: f64 },

    #[error("length function has an isolated zero at tau = {tau}")]
    DegenerateDelta { tau: f64 },

    #[error("reparametrization is not monotone at tau = {tau} (derivative {derivative:e})")]
    SigmaNotMonotone { tau: f64, derivative: f64 },

    #[error("degenerate interval [{t0}, {t1}]")]
    DegenerateInterval { t0: f64, t1: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("cannot parse curve spec: {0}")]
    Parse(String),

    #[error("length function is not polynomial: {0}")]
    NonPolynomialDelta(String),

    #[error("inversion denominator vanishes identically")]
    IdenticallyDegenerate,

    #[error("rational function does not reduce to a polynomial")]
    NotPolynomial,

    #[error("sample {index} (tau = {tau}): {source}")]
    AtSample {
        index: usize,
        tau: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Innermost error, skipping sample-location wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtSample { source, .. } => source.root(),
            other => other,
        }
    }

    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self.root() {
            Error::OrderMismatch { .. } => "OrderMismatch",
            Error::InsufficientOrder { .. } => "InsufficientOrder",
            Error::NonPositiveRadicand { .. } => "NonPositiveRadicand",
            Error::SignatureMismatch { .. } => "SignatureMismatch",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::DegenerateGerm { .. } => "DegenerateGerm",
            Error::DegenerateDelta { .. } => "DegenerateDelta",
            Error::SigmaNotMonotone { .. } => "SigmaNotMonotone",
            Error::DegenerateInterval { .. } => "DegenerateInterval",
            Error::InvalidGrid(_) => "InvalidGrid",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Parse(_) => "Parse",
            Error::NonPolynomialDelta(_) => "NonPolynomialDelta",
            Error::IdenticallyDegenerate => "IdenticallyDegenerate",
            Error::NotPolynomial => "NotPolynomial",
            Error::AtSample { .. } => unreachable!("root() strips AtSample"),
        }
    }

    /// Whether this is a mathematical degeneracy rather than bad input.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self.root(),
            Error::DegenerateGerm { .. }
                | Error::DegenerateDelta { .. }
                | Error::SigmaNotMonotone { .. }
                | Error::NonPositiveRadicand { .. }
                | Error::IdenticallyDegenerate
        )
    }

    /// Parameter value the failure is attached to, when known.
    pub fn tau(&self) -> Option<f64> {
        match self {
            Error::AtSample { tau, .. } => Some(*tau),
            Error::DegenerateDelta { tau } | Error::SigmaNotMonotone { tau, .. } => Some(*tau),
            _ => None,
        }
    }

    pub(crate) fn at_sample(self, index: usize, tau: f64) -> Error {
        Error::AtSample {
            index,
            tau,
            source: Box::new(self),
        }
    }
}

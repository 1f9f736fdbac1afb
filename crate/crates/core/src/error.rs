use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse `{input}` as {expected}")]
    Parse {
        input: String,
        expected: &'static str,
    },

    #[error("unknown reference constant `{0}`")]
    UnknownConstant(String),

    #[error("constants data, line {line}: {message}")]
    ConstantsData { line: usize, message: String },

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("term a_{n} is outside the sampled range 1..={len}")]
    TermOutOfRange { n: u64, len: u64 },

    #[error("n = {n} exceeds the exact-backend guard {limit}; use the float64 backend")]
    ExactGuard { n: u64, limit: u64 },

    #[error("difference order {order} exceeds the guard {limit}")]
    OrderGuard { order: u64, limit: u64 },

    #[error("series `{0}` has no exact term evaluation (non-integer exponent)")]
    InexactFamily(String),

    #[error("monotone-differences hypothesis fails at order {order}, n = {n}")]
    HypothesisFailed { order: u32, n: u64 },

    #[error("series `{0}` has no known limit")]
    NoKnownLimit(String),

    #[error("eps = {eps} is not reached within n <= {limit}")]
    Unreachable { eps: String, limit: u64 },

    #[error(
        "comparison with eps = {eps} at n = {n} falls inside the reference constant's error bound"
    )]
    Undecidable { eps: String, n: u64 },
}

impl Error {
    /// Stable snake_case tag used by machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::Parse { .. } => "parse",
            Error::UnknownConstant(_) => "unknown_constant",
            Error::ConstantsData { .. } => "constants_data",
            Error::InvalidSeries(_) => "invalid_series",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::TermOutOfRange { .. } => "term_out_of_range",
            Error::ExactGuard { .. } => "exact_guard",
            Error::OrderGuard { .. } => "order_guard",
            Error::InexactFamily(_) => "inexact_family",
            Error::HypothesisFailed { .. } => "hypothesis_failed",
            Error::NoKnownLimit(_) => "no_known_limit",
            Error::Unreachable { .. } => "unreachable",
            Error::Undecidable { .. } => "undecidable",
        }
    }

    /// Structured fields of the error, as `(key, value)` pairs.
    pub fn context(&self) -> Vec<(&'static str, String)> {
        match self {
            Error::Parse { input, expected } => {
                vec![
                    ("input", input.clone()),
                    ("expected", (*expected).to_string()),
                ]
            }
            Error::UnknownConstant(name) => vec![("name", name.clone())],
            Error::ConstantsData { line, .. } => vec![("line", line.to_string())],
            Error::TermOutOfRange { n, len } => {
                vec![("n", n.to_string()), ("len", len.to_string())]
            }
            Error::ExactGuard { n, limit } => {
                vec![("n", n.to_string()), ("limit", limit.to_string())]
            }
            Error::OrderGuard { order, limit } => {
                vec![("order", order.to_string()), ("limit", limit.to_string())]
            }
            Error::InexactFamily(id) | Error::NoKnownLimit(id) => vec![("series", id.clone())],
            Error::HypothesisFailed { order, n } => {
                vec![("order", order.to_string()), ("n", n.to_string())]
            }
            Error::Unreachable { eps, limit } => {
                vec![("eps", eps.clone()), ("limit", limit.to_string())]
            }
            Error::Undecidable { eps, n } => vec![("eps", eps.clone()), ("n", n.to_string())],
            Error::DivisionByZero | Error::InvalidSeries(_) | Error::InvalidArgument(_) => {
                Vec::new()
            }
        }
    }
}

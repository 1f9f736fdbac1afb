//! Positive term sequences `a_n` and partial sums of `a_1 - a_2 + a_3 - ...`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numerics::ExactRational;

/// Largest `n` for which the exact backend evaluates `S_n`.
pub const EXACT_GUARD: u64 = 1_000_000;

/// Positive term families. The two reciprocal families are completely
/// monotone in `n`, so every difference order decreases to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `a_n = 1 / (c + d (n - 1))`
    ReciprocalLinear { c: ExactRational, d: ExactRational },
    /// `a_n = 1 / n^s`; exact only for integer `s`.
    ReciprocalPower { s: ExactRational },
    /// Explicit finite list `a_1, a_2, ...`; carries no hypothesis guarantee.
    Sampled(Vec<ExactRational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesSpec {
    id: String,
    family: Family,
    display_name: String,
    known_limit: Option<String>,
    // a_n of this spec is a_{n + offset} of the family
    offset: u64,
}

impl SeriesSpec {
    pub fn reciprocal_linear(c: ExactRational, d: ExactRational) -> Result<Self> {
        if !c.is_positive() || !d.is_positive() {
            return Err(Error::InvalidSeries(format!(
                "lin:{},{} needs c > 0 and d > 0",
                c.compact(),
                d.compact()
            )));
        }
        Ok(Self {
            id: format!("lin:{},{}", c.compact(), d.compact()),
            display_name: format!("sum (-1)^(n-1) / ({} + {}(n-1))", c.compact(), d.compact()),
            family: Family::ReciprocalLinear { c, d },
            known_limit: None,
            offset: 0,
        })
    }

    pub fn reciprocal_power(s: ExactRational) -> Result<Self> {
        if !s.is_positive() || s > ExactRational::from_integer(4) {
            return Err(Error::InvalidSeries(format!(
                "pow:{} needs 0 < s <= 4",
                s.compact()
            )));
        }
        Ok(Self {
            id: format!("pow:{}", s.compact()),
            display_name: format!("sum (-1)^(n-1) / n^({})", s.compact()),
            family: Family::ReciprocalPower { s },
            known_limit: None,
            offset: 0,
        })
    }

    pub fn sampled(id: impl Into<String>, terms: Vec<ExactRational>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidSeries("sampled series is empty".into()));
        }
        if let Some(pos) = terms.iter().position(|t| !t.is_positive()) {
            return Err(Error::InvalidSeries(format!(
                "sampled term a_{} = {} is not positive",
                pos + 1,
                terms[pos]
            )));
        }
        let id = id.into();
        Ok(Self {
            display_name: format!("sampled series {id} ({} terms)", terms.len()),
            id,
            family: Family::Sampled(terms),
            known_limit: None,
            offset: 0,
        })
    }

    /// `1 - 1/3 + 1/5 - ...`, converging to pi/4.
    pub fn pi4() -> Self {
        Self {
            id: "pi4".into(),
            family: Family::ReciprocalLinear {
                c: ExactRational::one(),
                d: ExactRational::from_integer(2),
            },
            display_name: "1 - 1/3 + 1/5 - 1/7 + ... = pi/4".into(),
            known_limit: Some("pi_over_4".into()),
            offset: 0,
        }
    }

    /// `1 - 1/2 + 1/3 - ...`, converging to ln 2.
    pub fn ln2() -> Self {
        Self {
            id: "ln2".into(),
            family: Family::ReciprocalLinear {
                c: ExactRational::one(),
                d: ExactRational::one(),
            },
            display_name: "1 - 1/2 + 1/3 - 1/4 + ... = ln 2".into(),
            known_limit: Some("ln2".into()),
            offset: 0,
        }
    }

    /// Parses `pi4`, `ln2`, `lin:c,d`, `pow:s` or `file:<path>`.
    pub fn from_designator(designator: &str) -> Result<Self> {
        let designator = designator.trim();
        match designator {
            "pi4" => return Ok(Self::pi4()),
            "ln2" => return Ok(Self::ln2()),
            _ => {}
        }
        if let Some(args) = designator.strip_prefix("lin:") {
            let (c, d) = args
                .split_once(',')
                .ok_or_else(|| Error::InvalidSeries(format!("`{designator}`: expected lin:c,d")))?;
            return Self::reciprocal_linear(c.parse()?, d.parse()?);
        }
        if let Some(s) = designator.strip_prefix("pow:") {
            return Self::reciprocal_power(s.parse()?);
        }
        if let Some(path) = designator.strip_prefix("file:") {
            return Self::from_file(path);
        }
        Err(Error::InvalidSeries(format!(
            "unknown series `{designator}` (expected pi4, ln2, lin:c,d, pow:s or file:<path>)"
        )))
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidSeries(format!("{}: {e}", path.display())))?;
        Self::sampled(format!("file:{}", path.display()), parse_sampled(&text)?)
    }

    /// The tail sequence `b_n = a_{n + m}`. Family certificates carry
    /// over; the known limit does not.
    pub fn shifted(&self, m: u64) -> Self {
        if m == 0 {
            return self.clone();
        }
        Self {
            id: format!("{}+{m}", self.id),
            family: self.family.clone(),
            display_name: format!("tail of {} after {m} terms", self.id),
            known_limit: None,
            offset: self.offset + m,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn display_name(&self) -> &str {
        &self.display_name
    }

    pub fn known_limit(&self) -> Option<&str> {
        self.known_limit.as_deref()
    }

    /// Number of available terms, or `None` for infinite families.
    pub fn sample_len(&self) -> Option<u64> {
        match &self.family {
            Family::Sampled(terms) => Some((terms.len() as u64).saturating_sub(self.offset)),
            _ => None,
        }
    }

    /// True for the built-in families, whose differences of every order
    /// are positive and decrease to zero.
    pub fn certified_by_family(&self) -> bool {
        !matches!(self.family, Family::Sampled(_))
    }

    pub fn exact_term(&self, n: u64) -> Result<ExactRational> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "terms are indexed from n = 1".into(),
            ));
        }
        let idx = n + self.offset;
        match &self.family {
            Family::ReciprocalLinear { c, d } => {
                let steps = ExactRational::from_integer(idx - 1);
                (c + d * steps).recip()
            }
            Family::ReciprocalPower { s } => {
                if !s.is_integer() {
                    return Err(Error::InexactFamily(self.id.clone()));
                }
                let exp = u32::try_from(s.numer()).expect("exponent is at most 4");
                ExactRational::recip_of(num_traits::pow(BigInt::from(idx), exp as usize))
            }
            Family::Sampled(terms) => {
                let len = terms.len() as u64;
                if idx > len {
                    return Err(Error::TermOutOfRange {
                        n,
                        len: len.saturating_sub(self.offset),
                    });
                }
                Ok(terms[(idx - 1) as usize].clone())
            }
        }
    }

    pub fn float_term(&self, n: u64) -> Result<f64> {
        match &self.family {
            Family::ReciprocalPower { s } if !s.is_integer() => {
                if n == 0 {
                    return Err(Error::InvalidArgument(
                        "terms are indexed from n = 1".into(),
                    ));
                }
                Ok(((n + self.offset) as f64).powf(-s.to_f64()))
            }
            _ => Ok(self.exact_term(n)?.to_f64()),
        }
    }
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

/// One positive rational `p/q` or decimal per line; blank lines and `#`
/// comments are skipped.
pub fn parse_sampled(text: &str) -> Result<Vec<ExactRational>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(ExactRational::from_str)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Backend {
    #[default]
    Exact,
    Float64,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float64 => "float64",
        }
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float64" | "f64" => Ok(Backend::Float64),
            _ => Err(Error::Parse {
                input: s.into(),
                expected: "backend `exact` or `float64`",
            }),
        }
    }
}

/// A value from either backend.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(ExactRational),
    Float(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(x) => x.to_f64(),
            Scalar::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&ExactRational> {
        match self {
            Scalar::Exact(x) => Some(x),
            Scalar::Float(_) => None,
        }
    }

    pub fn into_exact(self) -> Option<ExactRational> {
        match self {
            Scalar::Exact(x) => Some(x),
            Scalar::Float(_) => None,
        }
    }

    /// Exact rational value; floats convert without rounding.
    pub fn to_exact(&self) -> Option<ExactRational> {
        match self {
            Scalar::Exact(x) => Some(x.clone()),
            Scalar::Float(x) => ExactRational::from_f64(*x),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(x) => fmt::Display::fmt(x, f),
            Scalar::Float(x) => write!(f, "{x:e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermSource {
    pub spec: SeriesSpec,
    pub backend: Backend,
}

impl TermSource {
    pub fn new(spec: SeriesSpec, backend: Backend) -> Self {
        Self { spec, backend }
    }

    pub fn exact(spec: SeriesSpec) -> Self {
        Self::new(spec, Backend::Exact)
    }

    pub fn float64(spec: SeriesSpec) -> Self {
        Self::new(spec, Backend::Float64)
    }

    pub fn pi4() -> Self {
        Self::exact(SeriesSpec::pi4())
    }

    pub fn ln2() -> Self {
        Self::exact(SeriesSpec::ln2())
    }

    pub fn shifted(&self, m: u64) -> Self {
        Self::new(self.spec.shifted(m), self.backend)
    }
}

/// `a_n` for `n >= 1`.
pub fn term(src: &TermSource, n: u64) -> Result<Scalar> {
    match src.backend {
        Backend::Exact => src.spec.exact_term(n).map(Scalar::Exact),
        Backend::Float64 => src.spec.float_term(n).map(Scalar::Float),
    }
}

/// `S_n = a_1 - a_2 + ... + (-1)^(n-1) a_n`, with `S_0 = 0`.
pub fn partial_sum(src: &TermSource, n: u64) -> Result<Scalar> {
    match src.backend {
        Backend::Exact => exact_partial_sum(&src.spec, n).map(Scalar::Exact),
        Backend::Float64 => float_partial_sum(&src.spec, n).map(Scalar::Float),
    }
}

pub fn exact_partial_sum(spec: &SeriesSpec, n: u64) -> Result<ExactRational> {
    let (p, q) = partial_sum_fraction(spec, n)?;
    ExactRational::new(p, q)
}

/// `S_n` as an unreduced fraction `p / q` with `q > 0`. Terms are combined
/// pairwise in a balanced tree and never reduced, which keeps large `n`
/// cheap; callers that only compare can skip the final gcd.
pub(crate) fn partial_sum_fraction(spec: &SeriesSpec, n: u64) -> Result<(BigInt, BigInt)> {
    if n > EXACT_GUARD {
        return Err(Error::ExactGuard {
            n,
            limit: EXACT_GUARD,
        });
    }
    if n == 0 {
        return Ok((BigInt::zero(), BigInt::from(1)));
    }
    if let Some(len) = spec.sample_len() {
        if n > len {
            return Err(Error::TermOutOfRange { n, len });
        }
    }
    signed_range_sum(spec, 1, n)
}

fn signed_range_sum(spec: &SeriesSpec, lo: u64, hi: u64) -> Result<(BigInt, BigInt)> {
    if lo == hi {
        let a = spec.exact_term(lo)?.alternate(lo - 1);
        return Ok((a.numer().clone(), a.denom().clone()));
    }
    let mid = lo + (hi - lo) / 2;
    let (p1, q1) = signed_range_sum(spec, lo, mid)?;
    let (p2, q2) = signed_range_sum(spec, mid + 1, hi)?;
    Ok((p1 * &q2 + p2 * &q1, q1 * q2))
}

fn float_partial_sum(spec: &SeriesSpec, n: u64) -> Result<f64> {
    // Neumaier compensated summation
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for j in 1..=n {
        let a = spec.float_term(j)?;
        let t = if j % 2 == 1 { a } else { -a };
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    Ok(sum + comp)
}

/// Built-in series, in a fixed order.
pub fn catalog() -> Vec<SeriesSpec> {
    vec![SeriesSpec::pi4(), SeriesSpec::ln2()]
}

//! Certified enclosures of the remainder `R_n = L - S_n`.
//!
//! Three bounds are provided, each a refinement of the previous one:
//!
//! * Leibniz: `|R_n| <= a_{n+1}`, sign `(-1)^n`.
//! * order 0 (`jb:0`): `a_{n+1}/2 < |R_n| < a_n/2`.
//! * order k (`jb:k`):
//!   `sum_{r=0..k} Δ^r a_{n+1} / 2^{r+1} < |R_n| < a_n/2 - sum_{r=1..k} Δ^r a_n / 2^{r+1}`.
//!
//! The order-k bounds come from the corrected partial sums
//! `T^(k)_n = S_n + (-1)^n sum_{r=0..k} Δ^r a_{n+1} / 2^{r+1}`, whose
//! intervals `[T^(k)_{2r}, T^(k)_{2r-1}]` are nested and close down on `L`.
//! All arithmetic here is exact, regardless of the source's backend.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::differences::{check_order, require_monotone, DifferenceTable};
use crate::error::{Error, Result};
use crate::numerics::{ConstantTable, ExactRational};
use crate::terms::{exact_partial_sum, partial_sum_fraction, TermSource, EXACT_GUARD};

/// Largest `n` the solvers will try.
pub const SEARCH_GUARD: u64 = EXACT_GUARD;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Leibniz,
    Johnsonbaugh(u32),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Leibniz => f.write_str("leibniz"),
            Method::Johnsonbaugh(k) => write!(f, "jb:{k}"),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            input: s.to_string(),
            expected: "method `leibniz` or `jb:k`",
        };
        match s {
            "leibniz" => Ok(Method::Leibniz),
            "jb" => Ok(Method::Johnsonbaugh(0)),
            _ => {
                let k = s.strip_prefix("jb:").ok_or_else(bad)?;
                Ok(Method::Johnsonbaugh(k.parse().map_err(|_| bad())?))
            }
        }
    }
}

/// Enclosure of `|R_n|`, with `R_n` carrying sign `(-1)^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemainderInterval {
    pub n: u64,
    pub method: Method,
    pub lower: ExactRational,
    pub upper: ExactRational,
    pub lower_strict: bool,
    pub upper_strict: bool,
    pub sign: i8,
}

impl RemainderInterval {
    /// Whether the interval proves `|R_n| < eps`.
    pub fn certifies_below(&self, eps: &ExactRational) -> bool {
        if self.upper_strict {
            &self.upper <= eps
        } else {
            &self.upper < eps
        }
    }

    /// Whether the interval proves `|R_n| >= eps`.
    pub fn certifies_not_below(&self, eps: &ExactRational) -> bool {
        &self.lower >= eps
    }

    /// Whether `value` satisfies both endpoint relations.
    pub fn admits(&self, value: &ExactRational) -> bool {
        let above = if self.lower_strict {
            value > &self.lower
        } else {
            value >= &self.lower
        };
        let below = if self.upper_strict {
            value < &self.upper
        } else {
            value <= &self.upper
        };
        above && below
    }

    /// Whether every point of `[lo, hi]` is admitted.
    pub fn admits_range(&self, lo: &ExactRational, hi: &ExactRational) -> bool {
        self.admits(lo) && self.admits(hi)
    }

    pub fn contains_interval(&self, other: &RemainderInterval) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }
}

fn sign_of(n: u64) -> i8 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `|R_n| <= a_{n+1}`.
pub fn leibniz_bound(src: &TermSource, n: u64) -> Result<RemainderInterval> {
    Ok(RemainderInterval {
        n,
        method: Method::Leibniz,
        lower: ExactRational::zero(),
        upper: src.spec.exact_term(n + 1)?,
        lower_strict: true,
        upper_strict: false,
        sign: sign_of(n),
    })
}

fn require_ladder_hypotheses(src: &TermSource, n: u64, k: u32) -> Result<()> {
    check_order(k)?;
    let lo = n.max(1);
    require_monotone(src, k + 1, (lo, lo + k as u64 + 2))
}

/// Two-sided strict bound of order `k`; `k = 0` gives `a_{n+1}/2 < |R_n| < a_n/2`.
pub fn johnsonbaugh_interval(src: &TermSource, n: u64, k: u32) -> Result<RemainderInterval> {
    if n == 0 {
        return Err(Error::InvalidArgument("order-k bounds need n >= 1".into()));
    }
    require_ladder_hypotheses(src, n, k)?;
    // rows[r][0] = Δ^r a_n, rows[r][1] = Δ^r a_{n+1}
    let table = DifferenceTable::build(&TermSource::exact(src.spec.clone()), n, k as u64 + 1, k)?;
    let rows = table.rows();
    let mut lower = ExactRational::zero();
    let mut upper = rows[0][0].halve(1);
    for r in 0..=k {
        lower += rows[r as usize][1].halve(r + 1);
        if r >= 1 {
            upper -= rows[r as usize][0].halve(r + 1);
        }
    }
    Ok(RemainderInterval {
        n,
        method: Method::Johnsonbaugh(k),
        lower,
        upper,
        lower_strict: true,
        upper_strict: true,
        sign: sign_of(n),
    })
}

pub fn remainder_interval(src: &TermSource, n: u64, method: Method) -> Result<RemainderInterval> {
    match method {
        Method::Leibniz => leibniz_bound(src, n),
        Method::Johnsonbaugh(k) => johnsonbaugh_interval(src, n, k),
    }
}

/// `T^(k)_n`; `k = 0` is `T_n = S_n + (-1)^n a_{n+1}/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TValue {
    pub n: u64,
    pub k: u32,
    pub value: ExactRational,
}

/// Every rung `T^(0)_n, ..., T^(k)_n` of the ladder, built by
/// `T^(r)_n = T^(r-1)_n + (-1)^n Δ^r a_{n+1} / 2^{r+1}`.
pub fn t_ladder(src: &TermSource, n: u64, k: u32) -> Result<Vec<TValue>> {
    require_ladder_hypotheses(src, n, k)?;
    let partial = exact_partial_sum(&src.spec, n)?;
    let table =
        DifferenceTable::build(&TermSource::exact(src.spec.clone()), n + 1, k as u64 + 1, k)?;
    let mut rungs = Vec::with_capacity(k as usize + 1);
    let mut value = partial;
    for r in 0..=k {
        value += table.rows()[r as usize][0].halve(r + 1).alternate(n);
        rungs.push(TValue {
            n,
            k: r,
            value: value.clone(),
        });
    }
    Ok(rungs)
}

pub fn t_value(src: &TermSource, n: u64, k: u32) -> Result<TValue> {
    Ok(t_ladder(src, n, k)?.pop().expect("ladder has k + 1 rungs"))
}

/// `[T^(k)_{2r}, T^(k)_{2r-1}]` for `r >= 1`.
pub fn t_interval(src: &TermSource, r: u64, k: u32) -> Result<(ExactRational, ExactRational)> {
    if r == 0 {
        return Err(Error::InvalidArgument("t_interval needs r >= 1".into()));
    }
    let left = t_value(src, 2 * r, k)?.value;
    let right = t_value(src, 2 * r - 1, k)?.value;
    Ok((left, right))
}

/// `R_n = L - S_n` computed from a reference constant; exact up to the
/// constant's error bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrueRemainder {
    pub n: u64,
    pub value: ExactRational,
    pub error_bound: ExactRational,
}

impl TrueRemainder {
    /// Sign of `R_n` if the error bound cannot flip it.
    pub fn certain_sign(&self) -> Option<i8> {
        (self.value.abs() > self.error_bound).then(|| self.value.signum())
    }

    /// Enclosure of `|R_n|`.
    pub fn abs_enclosure(&self) -> (ExactRational, ExactRational) {
        let mid = self.value.abs();
        let lo = &mid - &self.error_bound;
        let lo = if lo.is_negative() {
            ExactRational::zero()
        } else {
            lo
        };
        (lo, mid + &self.error_bound)
    }
}

fn known_limit<'a>(
    src: &TermSource,
    constants: &'a ConstantTable,
) -> Result<&'a crate::numerics::ReferenceConstant> {
    let name = src
        .spec
        .known_limit()
        .ok_or_else(|| Error::NoKnownLimit(src.spec.id().to_string()))?;
    constants.get(name)
}

pub fn true_remainder(src: &TermSource, n: u64) -> Result<TrueRemainder> {
    true_remainder_in(ConstantTable::builtin(), src, n)
}

pub fn true_remainder_in(
    constants: &ConstantTable,
    src: &TermSource,
    n: u64,
) -> Result<TrueRemainder> {
    let limit = known_limit(src, constants)?;
    let partial = exact_partial_sum(&src.spec, n)?;
    Ok(TrueRemainder {
        n,
        value: &limit.value - partial,
        error_bound: limit.abs_error_bound.clone(),
    })
}

/// Smallest `n <= limit` with `pred(n)`, assuming `pred` is monotone
/// (false then true). Exponential probing, then bisection.
fn gallop(
    start: u64,
    limit: u64,
    mut pred: impl FnMut(u64) -> Result<bool>,
) -> Result<Option<u64>> {
    if start > limit {
        return Ok(None);
    }
    if pred(start)? {
        return Ok(Some(start));
    }
    let mut fail = start;
    let mut step = 1u64;
    let pass = loop {
        let cand = fail.saturating_add(step).min(limit);
        if pred(cand)? {
            break cand;
        }
        if cand == limit {
            return Ok(None);
        }
        fail = cand;
        step = step.saturating_mul(2);
    };
    let (mut fail, mut pass) = (fail, pass);
    while pass - fail > 1 {
        let mid = fail + (pass - fail) / 2;
        if pred(mid)? {
            pass = mid;
        } else {
            fail = mid;
        }
    }
    Ok(Some(pass))
}

fn check_eps(eps: &ExactRational) -> Result<()> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "eps = {eps} must be positive"
        )));
    }
    Ok(())
}

/// Smallest `n` whose interval proves `|R_n| < eps`.
///
/// Built-in families are searched by galloping, which relies on the upper
/// bound being non-increasing in `n`. Sampled sources are scanned linearly
/// until the sample runs out.
pub fn first_n_guaranteed(src: &TermSource, eps: &ExactRational, method: Method) -> Result<u64> {
    check_eps(eps)?;
    let start = match method {
        Method::Leibniz => 0,
        Method::Johnsonbaugh(_) => 1,
    };
    let unreachable = |limit| Error::Unreachable {
        eps: eps.to_string(),
        limit,
    };
    if src.spec.certified_by_family() {
        return gallop(start, SEARCH_GUARD, |n| {
            Ok(remainder_interval(src, n, method)?.certifies_below(eps))
        })?
        .ok_or_else(|| unreachable(SEARCH_GUARD));
    }
    let len = src.spec.sample_len().unwrap_or(0);
    for n in start..=SEARCH_GUARD.min(len) {
        match remainder_interval(src, n, method) {
            Ok(iv) if iv.certifies_below(eps) => return Ok(n),
            Ok(_) => {}
            Err(Error::TermOutOfRange { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    Err(unreachable(len))
}

/// Compares `x / y` (with `y > 0`) against `t`.
fn cmp_fraction(x: &BigInt, y: &BigInt, t: &ExactRational) -> Ordering {
    (x * t.denom()).cmp(&(t.numer() * y))
}

/// Smallest `n` with `|L - S_n| < eps`, decided exactly against the
/// reference constant. Fails rather than guess when `|R_n|` lies within
/// the constant's error bound of `eps`.
pub fn first_n_true(src: &TermSource, eps: &ExactRational) -> Result<u64> {
    first_n_true_in(ConstantTable::builtin(), src, eps)
}

pub fn first_n_true_in(
    constants: &ConstantTable,
    src: &TermSource,
    eps: &ExactRational,
) -> Result<u64> {
    check_eps(eps)?;
    let limit = known_limit(src, constants)?;
    if eps <= &limit.abs_error_bound {
        return Err(Error::InvalidArgument(format!(
            "eps = {eps} is below the error bound of `{}`",
            limit.name
        )));
    }
    let below = eps - &limit.abs_error_bound;
    let above = eps + &limit.abs_error_bound;
    let (ln, ld) = (limit.value.numer(), limit.value.denom());
    let decide = |n: u64| -> Result<bool> {
        let (p, q) = partial_sum_fraction(&src.spec, n)?;
        // |R_n| ≈ |ln q - p ld| / (ld q)
        let x = (ln * &q - p * ld).abs();
        let y = ld * q;
        if cmp_fraction(&x, &y, &below) == Ordering::Less {
            Ok(true)
        } else if cmp_fraction(&x, &y, &above) != Ordering::Less {
            Ok(false)
        } else {
            Err(Error::Undecidable {
                eps: eps.to_string(),
                n,
            })
        }
    };
    gallop(0, EXACT_GUARD, decide)?.ok_or_else(|| Error::Unreachable {
        eps: eps.to_string(),
        limit: EXACT_GUARD,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::differences::exact_difference;
    use crate::terms::SeriesSpec;

    fn q(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    #[test]
    fn leibniz_examples() {
        let b = leibniz_bound(&TermSource::pi4(), 1).unwrap();
        assert_eq!((b.upper.clone(), b.sign), (q("1/3"), -1));
        assert!(!b.upper_strict);
        let b = leibniz_bound(&TermSource::ln2(), 0).unwrap();
        assert_eq!((b.upper, b.sign), (q("1"), 1));
        assert_eq!(
            leibniz_bound(&TermSource::pi4(), 4).unwrap().upper,
            q("1/9")
        );
    }

    #[test]
    fn jb0_at_ln2_boundary() {
        let b = johnsonbaugh_interval(&TermSource::ln2(), 10_000, 0).unwrap();
        assert_eq!(b.upper, q("1/20000"));
        assert_eq!(b.lower, q("1/20002"));
        assert!(b.certifies_below(&q("1/20000")));
    }

    #[test]
    fn higher_order_nests_inside_lower_order() {
        let src = TermSource::pi4();
        let k0 = johnsonbaugh_interval(&src, 10, 0).unwrap();
        let k2 = johnsonbaugh_interval(&src, 10, 2).unwrap();
        // direct evaluation of both formulas
        let a = |n| src.spec.exact_term(n).unwrap();
        let d = |r, n| exact_difference(&src, r, n).unwrap();
        assert_eq!(k0.lower, a(11).halve(1));
        assert_eq!(k0.upper, a(10).halve(1));
        assert_eq!(
            k2.lower,
            a(11).halve(1) + d(1, 11).halve(2) + d(2, 11).halve(3)
        );
        assert_eq!(
            k2.upper,
            a(10).halve(1) - d(1, 10).halve(2) - d(2, 10).halve(3)
        );
        assert!(k0.lower < k2.lower && k2.upper < k0.upper);
    }

    #[test]
    fn pi4_order_two_at_5000() {
        let b = johnsonbaugh_interval(&TermSource::pi4(), 5000, 2).unwrap();
        assert!(b.upper <= q("1/20000"));
    }

    #[test]
    fn t_value_examples() {
        assert_eq!(t_value(&TermSource::pi4(), 0, 0).unwrap().value, q("1/2"));
        assert_eq!(
            t_value(&TermSource::pi4(), 0, 12).unwrap().value,
            q("1314078208/1673196525")
        );
        assert_eq!(t_value(&TermSource::ln2(), 1, 0).unwrap().value, q("3/4"));
    }

    #[test]
    fn t_interval_examples() {
        let src = TermSource::pi4();
        let (l, r) = t_interval(&src, 1, 0).unwrap();
        assert!(q("2/3") <= l && l <= r && r <= q("1"));
        let (l1, r1) = t_interval(&src, 2, 1).unwrap();
        let (l0, r0) = t_interval(&src, 2, 0).unwrap();
        assert!(l0 <= l1 && r1 <= r0);
        let ln2 = crate::numerics::reference_value("ln2").unwrap();
        let (l, r) = t_interval(&TermSource::ln2(), 1, 0).unwrap();
        assert!(ln2.certainly_within(&l, &r));
        assert!(t_interval(&src, 0, 0).is_err());
    }

    #[test]
    fn true_remainder_examples() {
        let r = true_remainder(&TermSource::ln2(), 0).unwrap();
        assert_eq!(
            r.value,
            crate::numerics::reference_value("ln2").unwrap().value
        );
        assert_eq!(r.certain_sign(), Some(1));
        let r = true_remainder(&TermSource::pi4(), 2).unwrap();
        assert_eq!(r.certain_sign(), Some(1));
        assert!(r.error_bound <= q("1e-40"));
        let lin = TermSource::exact(SeriesSpec::from_designator("lin:1,3").unwrap());
        assert_eq!(
            true_remainder(&lin, 3),
            Err(Error::NoKnownLimit("lin:1,3".into()))
        );
    }

    #[test]
    fn guaranteed_solver_examples() {
        let eps = q("1/20000");
        assert_eq!(
            first_n_guaranteed(&TermSource::ln2(), &eps, Method::Johnsonbaugh(0)).unwrap(),
            10_000
        );
        assert_eq!(
            first_n_guaranteed(&TermSource::pi4(), &eps, Method::Johnsonbaugh(2)).unwrap(),
            5000
        );
        // oracle: scan a_{n+1} = 1/(2n+1) < eps directly
        let oracle = (0u64..)
            .find(|&n| ExactRational::new(1, 2 * n + 1).unwrap() < eps)
            .unwrap();
        assert_eq!(oracle, 10_000);
        assert_eq!(
            first_n_guaranteed(&TermSource::pi4(), &eps, Method::Leibniz).unwrap(),
            oracle
        );
    }

    #[test]
    fn guaranteed_solver_is_minimal_by_scan() {
        for src in [TermSource::pi4(), TermSource::ln2()] {
            for method in [
                Method::Leibniz,
                Method::Johnsonbaugh(0),
                Method::Johnsonbaugh(3),
            ] {
                for eps in ["1/7", "1/50", "3/1000"] {
                    let eps = q(eps);
                    let got = first_n_guaranteed(&src, &eps, method).unwrap();
                    let start = if method == Method::Leibniz { 0 } else { 1 };
                    let scan = (start..)
                        .find(|&n| {
                            remainder_interval(&src, n, method)
                                .unwrap()
                                .certifies_below(&eps)
                        })
                        .unwrap();
                    assert_eq!(got, scan, "{} {method} {eps}", src.spec.id());
                }
            }
        }
    }

    #[test]
    fn true_solver_examples() {
        assert_eq!(first_n_true(&TermSource::pi4(), &q("1/2")).unwrap(), 1);
        assert_eq!(first_n_true(&TermSource::ln2(), &q("1/10")).unwrap(), 5);
        assert!(first_n_true(&TermSource::pi4(), &q("1e-70")).is_err());
        assert!(first_n_true(&TermSource::pi4(), &q("0")).is_err());
    }

    #[test]
    fn sampled_sources_are_refused_on_failure() {
        let bad = TermSource::exact(
            SeriesSpec::sampled(
                "bad",
                ["1", "3/4", "1/4", "1/5", "1/6", "1/7", "1/8"]
                    .iter()
                    .map(|s| q(s))
                    .collect(),
            )
            .unwrap(),
        );
        assert!(matches!(
            johnsonbaugh_interval(&bad, 1, 0),
            Err(Error::HypothesisFailed { order: 1, n: 1 })
        ));
        // Leibniz needs no difference hypothesis
        assert_eq!(leibniz_bound(&bad, 1).unwrap().upper, q("3/4"));
    }

    #[test]
    fn sampled_sources_scan_linearly() {
        let terms: Vec<_> = (1..=40)
            .map(|n| ExactRational::new(1, n).unwrap())
            .collect();
        let src = TermSource::exact(SeriesSpec::sampled("h", terms).unwrap());
        let n = first_n_guaranteed(&src, &q("1/20"), Method::Johnsonbaugh(1)).unwrap();
        let ln2 =
            first_n_guaranteed(&TermSource::ln2(), &q("1/20"), Method::Johnsonbaugh(1)).unwrap();
        assert_eq!(n, ln2);
        assert!(matches!(
            first_n_guaranteed(&src, &q("1/1000"), Method::Johnsonbaugh(1)),
            Err(Error::Unreachable { .. })
        ));
    }

    #[test]
    fn method_parsing() {
        assert_eq!("leibniz".parse::<Method>().unwrap(), Method::Leibniz);
        assert_eq!("jb:2".parse::<Method>().unwrap(), Method::Johnsonbaugh(2));
        assert_eq!(Method::Johnsonbaugh(2).to_string(), "jb:2");
        assert!("jb:x".parse::<Method>().is_err());
        assert!("euler".parse::<Method>().is_err());
    }
}

//! Forward differences `Δ^r a_n`, where `Δ a_n = a_n - a_{n+1}` and
//! `Δ^r a_n = Δ^{r-1} a_n - Δ^{r-1} a_{n+1}`.
//!
//! Exact differences carry no cancellation error. The float64 backend runs
//! the same recurrence and loses relative accuracy quickly as `r` grows;
//! its values are advisory and never feed a certified result.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numerics::ExactRational;
use crate::terms::{Backend, Scalar, TermSource};

/// Largest difference order any operation will evaluate.
pub const ORDER_GUARD: u32 = 64;

pub(crate) fn check_order(r: u32) -> Result<()> {
    if r > ORDER_GUARD {
        return Err(Error::OrderGuard {
            order: r as u64,
            limit: ORDER_GUARD as u64,
        });
    }
    Ok(())
}

/// `Δ^r a_n` via the recurrence; `Δ^0 a_n = a_n`.
pub fn forward_difference(src: &TermSource, r: u32, n: u64) -> Result<Scalar> {
    check_order(r)?;
    match src.backend {
        Backend::Exact => {
            let mut row = (n..=n + r as u64)
                .map(|j| src.spec.exact_term(j))
                .collect::<Result<Vec<_>>>()?;
            for _ in 0..r {
                row = row.windows(2).map(|w| &w[0] - &w[1]).collect();
            }
            Ok(Scalar::Exact(row.swap_remove(0)))
        }
        Backend::Float64 => {
            let mut row = (n..=n + r as u64)
                .map(|j| src.spec.float_term(j))
                .collect::<Result<Vec<_>>>()?;
            for _ in 0..r {
                row = row.windows(2).map(|w| w[0] - w[1]).collect();
            }
            Ok(Scalar::Float(row[0]))
        }
    }
}

/// Exact `Δ^r a_n`, whatever the source's backend.
pub fn exact_difference(src: &TermSource, r: u32, n: u64) -> Result<ExactRational> {
    let exact = TermSource::exact(src.spec.clone());
    Ok(forward_difference(&exact, r, n)?
        .into_exact()
        .expect("exact backend yields exact values"))
}

/// Triangular window of exact differences:
/// `rows[r][j] = Δ^r a_{n_start + j}` for `0 <= r <= max_order`,
/// `0 <= j <= width - r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceTable {
    source: TermSource,
    n_start: u64,
    width: u64,
    max_order: u32,
    rows: Vec<Vec<ExactRational>>,
}

impl DifferenceTable {
    pub fn build(src: &TermSource, n_start: u64, width: u64, max_order: u32) -> Result<Self> {
        check_order(max_order)?;
        if n_start == 0 {
            return Err(Error::InvalidArgument("n_start must be at least 1".into()));
        }
        if width <= max_order as u64 {
            return Err(Error::InvalidArgument(format!(
                "table width {width} must exceed max_order {max_order}"
            )));
        }
        let base = (n_start..=n_start + width)
            .map(|j| src.spec.exact_term(j))
            .collect::<Result<Vec<_>>>()?;
        let mut rows = Vec::with_capacity(max_order as usize + 1);
        rows.push(base);
        for _ in 0..max_order {
            let prev = rows.last().expect("row 0 present");
            let next = prev.windows(2).map(|w| &w[0] - &w[1]).collect();
            rows.push(next);
        }
        Ok(Self {
            source: src.clone(),
            n_start,
            width,
            max_order,
            rows,
        })
    }

    pub fn source(&self) -> &TermSource {
        &self.source
    }

    pub fn n_start(&self) -> u64 {
        self.n_start
    }

    pub fn width(&self) -> u64 {
        self.width
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    pub fn rows(&self) -> &[Vec<ExactRational>] {
        &self.rows
    }

    /// `Δ^r a_n` if the cell lies inside the window.
    pub fn get(&self, r: u32, n: u64) -> Option<&ExactRational> {
        let j = n.checked_sub(self.n_start)?;
        self.rows.get(r as usize)?.get(j as usize)
    }

    /// `(r, n, value)` for every cell, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (u32, u64, &ExactRational)> {
        self.rows.iter().enumerate().flat_map(move |(r, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, v)| (r as u32, self.n_start + j as u64, v))
        })
    }
}

pub fn build_table(
    src: &TermSource,
    n_start: u64,
    width: u64,
    max_order: u32,
) -> Result<DifferenceTable> {
    DifferenceTable::build(src, n_start, width, max_order)
}

/// `Δ^n a_1 = 2^n n! / (1·3·5···(2n+1))` for `a_n = 1/(2n-1)`.
pub fn closed_form_delta_pi4(n: u32) -> Result<ExactRational> {
    check_order(n)?;
    let mut numer = BigInt::from(1);
    let mut denom = BigInt::from(1);
    for i in 1..=n as u64 {
        numer *= 2 * i;
        denom *= 2 * i + 1;
    }
    ExactRational::new(numer, denom)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Built-in family: complete monotonicity covers every order and `n`.
    CertifiedByFamily,
    /// Every checked cell passed; says nothing beyond the window.
    WindowPass,
    /// First failing `(r, n)`: `Δ^r a_n >= Δ^r a_{n+1} >= 0` is false.
    WindowFail { order: u32, n: u64 },
}

impl Verdict {
    pub fn is_accepted(self) -> bool {
        !matches!(self, Verdict::WindowFail { .. })
    }

    pub fn into_result(self) -> Result<()> {
        match self {
            Verdict::WindowFail { order, n } => Err(Error::HypothesisFailed { order, n }),
            _ => Ok(()),
        }
    }
}

/// Checks `Δ^r a_n >= Δ^r a_{n+1} >= 0` for `r <= max_order` and `n` in
/// `[n_lo, n_hi]`. Built-in families short-circuit to their certificate.
///
/// For sampled sources the verdict is scoped to the window: no finite
/// check can establish that the differences decrease to zero. An `Err`
/// means the sample is too short to evaluate the window at all.
pub fn check_monotone_decreasing(
    src: &TermSource,
    max_order: u32,
    window: (u64, u64),
) -> Result<Verdict> {
    let (lo, hi) = window;
    if lo == 0 || lo > hi {
        return Err(Error::InvalidArgument(format!(
            "window [{lo}, {hi}] is empty"
        )));
    }
    if src.spec.certified_by_family() {
        return Ok(Verdict::CertifiedByFamily);
    }
    let table = DifferenceTable::build(src, lo, hi - lo + 1 + max_order as u64, max_order)?;
    for r in 0..=max_order {
        for n in lo..=hi {
            let here = table.get(r, n).expect("cell inside window");
            let next = table.get(r, n + 1).expect("cell inside window");
            if here < next || next.is_negative() {
                return Ok(Verdict::WindowFail { order: r, n });
            }
        }
    }
    Ok(Verdict::WindowPass)
}

/// Refuses unless the hypothesis holds on the window.
pub fn require_monotone(src: &TermSource, max_order: u32, window: (u64, u64)) -> Result<()> {
    check_monotone_decreasing(src, max_order, window)?.into_result()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::SeriesSpec;

    fn q(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    fn exact(src: &TermSource, r: u32, n: u64) -> ExactRational {
        forward_difference(src, r, n).unwrap().into_exact().unwrap()
    }

    fn sampled(terms: &[&str]) -> TermSource {
        TermSource::exact(SeriesSpec::sampled("s", terms.iter().map(|t| q(t)).collect()).unwrap())
    }

    #[test]
    fn forward_difference_examples() {
        let pi4 = TermSource::pi4();
        assert_eq!(exact(&pi4, 0, 1), q("1"));
        assert_eq!(exact(&TermSource::ln2(), 1, 1), q("1/2"));
        // 1 - 2/3 + 1/5
        let oracle = q("1") - q("2/3") + q("1/5");
        assert_eq!(exact(&pi4, 2, 1), oracle);
        assert_eq!(exact(&pi4, 2, 1), q("8/15"));
        assert_eq!(closed_form_delta_pi4(2).unwrap(), q("8/15"));
    }

    #[test]
    fn order_guard() {
        assert!(matches!(
            forward_difference(&TermSource::pi4(), 65, 1),
            Err(Error::OrderGuard { .. })
        ));
        assert!(closed_form_delta_pi4(65).is_err());
    }

    #[test]
    fn build_table_examples() {
        let t = build_table(&TermSource::pi4(), 1, 3, 1).unwrap();
        assert_eq!(t.rows()[1][0], q("2/3"));
        let t = build_table(&TermSource::ln2(), 1, 3, 2).unwrap();
        assert_eq!(t.rows()[2][0], q("1") - q("1") + q("1/3"));
        assert_eq!(t.rows()[2][0], q("1/3"));
        assert!(build_table(&TermSource::pi4(), 1, 2, 2).is_err());
        assert!(build_table(&TermSource::pi4(), 0, 3, 1).is_err());
    }

    #[test]
    fn table_shape_and_agreement() {
        let src = TermSource::pi4();
        let t = build_table(&src, 4, 9, 5).unwrap();
        for (r, row) in t.rows().iter().enumerate() {
            assert_eq!(row.len() as u64, t.width() - r as u64 + 1);
        }
        for (r, n, v) in t.cells() {
            assert_eq!(v, &exact(&src, r, n), "cell ({r}, {n})");
        }
        assert!(t.get(6, 4).is_none());
        assert!(t.get(0, 3).is_none());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_delta_pi4(0).unwrap(), q("1"));
        assert_eq!(
            closed_form_delta_pi4(1).unwrap(),
            exact(&TermSource::pi4(), 1, 1)
        );
        let bound = closed_form_delta_pi4(13).unwrap().halve(13);
        assert!(bound <= q("2.92e-5"));
        assert!(bound > q("2.85e-5"));
    }

    #[test]
    fn binomial_oracle_matches_recurrence() {
        for src in [TermSource::pi4(), TermSource::ln2()] {
            for r in 0..=10u32 {
                for n in 1..=20u64 {
                    let mut c = BigInt::from(1);
                    let mut oracle = ExactRational::zero();
                    for i in 0..=r as u64 {
                        let a = src.spec.exact_term(n + i).unwrap();
                        oracle += (ExactRational::from_integer(c.clone()) * a).alternate(i);
                        c = c * (r as u64 - i) / (i + 1);
                    }
                    assert_eq!(exact(&src, r, n), oracle, "{} r={r} n={n}", src.spec.id());
                }
            }
        }
    }

    #[test]
    fn float_backend_uses_recurrence() {
        let src = TermSource::float64(SeriesSpec::pi4());
        let v = forward_difference(&src, 2, 1).unwrap().to_f64();
        assert!((v - 8.0 / 15.0).abs() < 1e-15);
    }

    #[test]
    fn monotone_verdicts() {
        assert_eq!(
            check_monotone_decreasing(&TermSource::pi4(), 5, (1, 50)).unwrap(),
            Verdict::CertifiedByFamily
        );
        assert_eq!(
            check_monotone_decreasing(&sampled(&["1", "1/2", "1/3", "1/4"]), 1, (1, 2)).unwrap(),
            Verdict::WindowPass
        );
        // Δa_1 = 9/10 >= Δa_2 = 1/110 >= 0 and a_1 >= a_2 >= 0
        assert_eq!(
            check_monotone_decreasing(&sampled(&["1", "1/10", "1/11"]), 1, (1, 1)).unwrap(),
            Verdict::WindowPass
        );
        // a_2 - a_3 = 1/2 exceeds a_1 - a_2 = 1/4
        assert_eq!(
            check_monotone_decreasing(&sampled(&["1", "3/4", "1/4", "1/5"]), 1, (1, 2)).unwrap(),
            Verdict::WindowFail { order: 1, n: 1 }
        );
        assert_eq!(
            check_monotone_decreasing(&sampled(&["1", "2", "1/4"]), 1, (1, 1)).unwrap(),
            Verdict::WindowFail { order: 0, n: 1 }
        );
    }

    #[test]
    fn monotone_check_errors() {
        assert!(check_monotone_decreasing(&TermSource::pi4(), 1, (3, 2)).is_err());
        assert!(check_monotone_decreasing(&sampled(&["1", "1/2"]), 1, (1, 1)).is_err());
        assert_eq!(
            require_monotone(&sampled(&["1", "3/4", "1/4", "1/5"]), 1, (1, 2)),
            Err(Error::HypothesisFailed { order: 1, n: 1 })
        );
    }
}

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::ExactRational;

/// Renders `x` with exactly `digits` fractional digits, rounding half to
/// even. The sign is dropped when the rounded magnitude is zero.
pub fn decimal_string(x: &ExactRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = x.numer().abs() * &scale;
    let (mut q, r) = scaled.div_rem(x.denom());
    let round_up = match (r * 2u32).cmp(x.denom()) {
        Ordering::Greater => true,
        Ordering::Equal => q.is_odd(),
        Ordering::Less => false,
    };
    if round_up {
        q += 1u32;
    }
    let negative = x.is_negative() && !q.is_zero();

    let mut body = q.to_string();
    if digits > 0 {
        if body.len() <= digits {
            body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
        }
        body.insert(body.len() - digits, '.');
    }
    if negative {
        body.insert(0, '-');
    }
    body
}

/// Scientific rendering with `significant` digits after the leading one,
/// e.g. `2.917e-5`. Rounds half to even on the exact value.
pub fn scientific_string(x: &ExactRational, significant: usize) -> String {
    if x.is_zero() {
        return format!("{}e0", decimal_string(x, significant));
    }
    let magnitude = x.abs();
    // estimate the decimal exponent, then correct so 1 <= m < 10
    let bits = magnitude.numer().bits() as i64 - magnitude.denom().bits() as i64;
    let mut exp = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let ten = ExactRational::from_integer(10);
    let scaled = |e: i64| -> ExactRational {
        let p = ten.pow(e.unsigned_abs() as u32);
        if e >= 0 {
            magnitude.checked_div(&p).expect("power of ten is non-zero")
        } else {
            &magnitude * &p
        }
    };
    let mut m = scaled(exp);
    while m >= ten {
        exp += 1;
        m = scaled(exp);
    }
    while m < ExactRational::one() {
        exp -= 1;
        m = scaled(exp);
    }
    let mut rendered = decimal_string(&m, significant);
    if rendered.starts_with("10") {
        exp += 1;
        rendered = decimal_string(&scaled(exp), significant);
    }
    let sign = if x.is_negative() { "-" } else { "" };
    format!("{sign}{rendered}e{exp}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(decimal_string(&q("2/3"), 4), "0.6667");
        assert_eq!(decimal_string(&q("1314078208/1673196525"), 8), "0.78536991");
        assert_eq!(decimal_string(&q("1/20000"), 5), "0.00005");
    }

    #[test]
    fn half_even_ties() {
        assert_eq!(decimal_string(&q("1/8"), 2), "0.12");
        assert_eq!(decimal_string(&q("3/8"), 2), "0.38");
        assert_eq!(decimal_string(&q("5/2"), 0), "2");
        assert_eq!(decimal_string(&q("7/2"), 0), "4");
        assert_eq!(decimal_string(&q("-1/8"), 2), "-0.12");
        assert_eq!(decimal_string(&q("-1/1000"), 2), "0.00");
        assert_eq!(decimal_string(&q("-7/4"), 3), "-1.750");
        assert_eq!(decimal_string(&q("123"), 0), "123");
    }

    #[test]
    fn scientific() {
        assert_eq!(scientific_string(&q("1/20000"), 2), "5.00e-5");
        assert_eq!(scientific_string(&q("-12345"), 2), "-1.23e4");
        assert_eq!(scientific_string(&q("9999/1000"), 2), "1.00e1");
        assert_eq!(scientific_string(&q("1"), 0), "1e0");
    }

    proptest! {
        #[test]
        fn rendering_is_monotone(a in -10_000i64..10_000, b in 1i64..500, c in -10_000i64..10_000, d in 1i64..500, digits in 0usize..6) {
            let x = ExactRational::new(a, b).unwrap();
            let y = ExactRational::new(c, d).unwrap();
            let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
            let rl: ExactRational = decimal_string(&lo, digits).parse().unwrap();
            let rh: ExactRational = decimal_string(&hi, digits).parse().unwrap();
            prop_assert!(rl <= rh);
        }

        #[test]
        fn rendering_is_within_half_unit(a in -10_000i64..10_000, b in 1i64..500, digits in 0usize..6) {
            let x = ExactRational::new(a, b).unwrap();
            let rendered = decimal_string(&x, digits);
            let frac = rendered.split_once('.').map_or(0, |(_, f)| f.len());
            prop_assert_eq!(frac, digits);
            let back: ExactRational = rendered.parse().unwrap();
            let half_unit = ExactRational::new(1, num_traits::pow(BigInt::from(10), digits) * 2).unwrap();
            prop_assert!((back - x).abs() <= half_unit);
        }
    }
}

//! Six-significant-digit decimal rendering of exact values, in the style of
//! C's `%.6g`, with exact round-half-even.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::counts::QuadExact;
use crate::zeta::ExactQ;

const DIGITS: u32 = 6;

fn ten_pow(e: i64) -> ExactQ {
    ExactQ::from_int(10).pow(e as i32)
}

fn cmp_rational(x: &QuadExact, c: &ExactQ) -> Ordering {
    x.cmp_exact(&QuadExact::rational(c.clone(), x.radicand().clone()))
}

/// Rough `floor(log10 |x|)`, corrected exactly by the caller.
fn magnitude_estimate(x: &QuadExact) -> i64 {
    let f = x.to_f64();
    if f.is_finite() && f > 0.0 {
        return f.log10().floor() as i64;
    }
    let approx = x.a() + &(x.b() * &ExactQ::from_int(x.radicand().sqrt()));
    let digits = |n: &BigInt| n.abs().to_string().len() as i64;
    digits(approx.numer()) - digits(approx.denom())
}

pub fn format_quad(x: &QuadExact) -> String {
    let sign = x.signum();
    if sign == 0 {
        return "0".into();
    }
    let ax = x.abs();
    let mut e = magnitude_estimate(&ax);
    while cmp_rational(&ax, &ten_pow(e)) == Ordering::Less {
        e -= 1;
    }
    while cmp_rational(&ax, &ten_pow(e + 1)) != Ordering::Less {
        e += 1;
    }
    // y in [10^5, 10^6)
    let y = ax.scale(&ten_pow(DIGITS as i64 - 1 - e));
    let mut n = BigInt::from(y.to_f64().floor() as i64);
    while cmp_rational(&y, &ExactQ::from_int(n.clone())) == Ordering::Less {
        n -= 1;
    }
    while cmp_rational(&y, &ExactQ::from_int(&n + 1)) != Ordering::Less {
        n += 1;
    }
    let half = ExactQ::from_int(n.clone()) + ExactQ::new(1, 2);
    let round_up = match cmp_rational(&y, &half) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => (&n % 2u32) == BigInt::from(1),
    };
    if round_up {
        n += 1;
    }
    if n == BigInt::from(10).pow(DIGITS) {
        n = BigInt::from(10).pow(DIGITS - 1);
        e += 1;
    }
    let body = layout(&n.to_string(), e);
    if sign < 0 {
        format!("-{body}")
    } else {
        body
    }
}

pub fn format_rational(x: &ExactQ) -> String {
    format_quad(&QuadExact::rational(x.clone(), 1))
}

fn strip(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn layout(digits: &str, e: i64) -> String {
    if e < -4 || e >= DIGITS as i64 {
        let mantissa = strip(&format!("{}.{}", &digits[..1], &digits[1..])).to_string();
        let sign = if e < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", e.abs())
    } else if e >= 0 {
        let split = e as usize + 1;
        strip(&format!("{}.{}", &digits[..split], &digits[split..])).to_string()
    } else {
        let zeros = "0".repeat((-e - 1) as usize);
        strip(&format!("0.{zeros}{digits}")).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> String {
        format_rational(&ExactQ::new(n, d))
    }

    #[test]
    fn matches_printf_g() {
        assert_eq!(r(19656, 1), "19656");
        assert_eq!(r(19656, 9827), "2.0002");
        assert_eq!(r(14348664, 1), "1.43487e+07");
        assert_eq!(r(123456789, 1_000_000_000_000), "0.000123457");
        assert_eq!(r(5, 2), "2.5");
        assert_eq!(r(1, 2), "0.5");
        assert_eq!(r(-1, 3), "-0.333333");
        assert_eq!(r(0, 1), "0");
        assert_eq!(r(1, 100_000), "1e-05");
        assert_eq!(r(999_9995, 10), "1e+06");
    }

    #[test]
    fn ties_go_to_even() {
        assert_eq!(r(1234565, 1), "1.23456e+06");
        assert_eq!(r(1234575, 1), "1.23458e+06");
        assert_eq!(r(25, 1_000_000), "2.5e-05");
    }

    #[test]
    fn irrational_values() {
        let x = QuadExact::new(ExactQ::zero(), ExactQ::one(), 2);
        assert_eq!(format_quad(&x), "1.41421");
        let y = QuadExact::new(ExactQ::new(-1, 2), ExactQ::new(3, 2), 3);
        assert_eq!(format_quad(&y), "2.09808");
    }
}

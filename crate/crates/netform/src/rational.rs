//! Exact rational arithmetic helpers.
//!
//! Every quantity in this crate that participates in a comparison (utilities,
//! cost-class boundaries, decision thresholds, the edge-density parameter) is
//! an exact rational. Floating point is never used: several boundaries are
//! equality-sensitive and a rounded comparison would misclassify them.

use crate::error::Error;
use num_traits::{Signed, Zero};

/// Exact rational number with 128-bit numerator and denominator.
pub type Rational = num_rational::Ratio<i128>;

/// Shorthand for an integer rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(v as i128)
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num as i128, den as i128)
}

/// Parses `"3"`, `"-1.25"`, or `"27/40"` into an exact rational.
///
/// Decimal strings are read literally (`"1.01"` is exactly 101/100), which is
/// why file formats carry rationals as strings.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    let bad = |_| Error::Parse(format!("invalid rational literal: {text:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let n: i128 = num.trim().parse().map_err(bad)?;
        let d: i128 = den.trim().parse().map_err(bad)?;
        if d == 0 {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1i128, rest),
        None => (1i128, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty()
        || !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(Error::Parse(format!("invalid rational literal: {text:?}")));
    }
    if frac_part.len() > 30 {
        return Err(Error::Parse(format!("too many decimal digits in {text:?}")));
    }
    let mut numer: i128 = int_part
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational literal: {text:?}")))?;
    let mut denom: i128 = 1;
    for b in frac_part.bytes() {
        numer = numer
            .checked_mul(10)
            .and_then(|v| v.checked_add((b - b'0') as i128))
            .ok_or_else(|| Error::Parse(format!("rational literal overflows: {text:?}")))?;
        denom *= 10;
    }
    Ok(Rational::new(sign * numer, denom))
}

/// Renders a rational canonically: an exact finite decimal when the reduced
/// denominator has only factors 2 and 5 (`16/25` prints as `0.64`), otherwise
/// `p/q` in lowest terms.
pub fn render_rational(r: &Rational) -> String {
    let numer = *r.numer();
    let denom = *r.denom();
    if denom == 1 {
        return numer.to_string();
    }
    let mut d = denom;
    let mut twos = 0u32;
    let mut fives = 0u32;
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    while d % 5 == 0 {
        d /= 5;
        fives += 1;
    }
    if d != 1 {
        return format!("{numer}/{denom}");
    }
    let scale = twos.max(fives);
    let pow10 = 10i128.pow(scale);
    let digits = numer.unsigned_abs() * (pow10 / denom) as u128;
    let int = digits / pow10 as u128;
    let frac = digits % pow10 as u128;
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}{int}.{frac:0width$}", width = scale as usize)
}

/// Reads a rational from a JSON value: strings are parsed exactly; numbers are
/// taken at their printed decimal representation.
pub fn rational_from_json(value: &serde_json::Value) -> Result<Rational, Error> {
    match value {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("expected a rational, got {other}"))),
    }
}

/// `true` when `r` is exactly zero.
pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("27/40").unwrap(), ratio(27, 40));
        assert_eq!(parse_rational("1.01").unwrap(), ratio(101, 100));
        assert_eq!(parse_rational("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational(" -3/9 ").unwrap(), ratio(-1, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".5").is_err());
        assert!(parse_rational("1e3").is_err());
    }

    #[test]
    fn renders_decimals_when_exact() {
        assert_eq!(render_rational(&ratio(16, 25)), "0.64");
        assert_eq!(render_rational(&ratio(5, 2)), "2.5");
        assert_eq!(render_rational(&ratio(1, 8)), "0.125");
        assert_eq!(render_rational(&ratio(-1, 4)), "-0.25");
        assert_eq!(render_rational(&rat(7)), "7");
        assert_eq!(render_rational(&ratio(1, 3)), "1/3");
        assert_eq!(render_rational(&ratio(181, 45)), "181/45");
        assert_eq!(render_rational(&ratio(41, 20)), "2.05");
    }

    #[test]
    fn render_parse_round_trip() {
        for num in -40i64..=40 {
            for den in 1i64..=12 {
                let r = ratio(num, den);
                assert_eq!(parse_rational(&render_rational(&r)).unwrap(), r);
            }
        }
    }
}

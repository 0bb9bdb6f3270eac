//! Exact rational coefficients and their reduction to a common integer lattice.
//!
//! Coefficients arrive as strings like `"3/2"`, `"-2/5"`, or `"7"` and are kept
//! as reduced `Ratio<i64>` values so that clearing denominators is exact.

use num_integer::Integer;
use num_traits::Signed;
use thiserror::Error;

pub type Rational = num_rational::Ratio<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("coefficient at index {0} is zero")]
    ZeroCoefficient(usize),
    #[error("integer overflow while clearing denominators")]
    Overflow,
}

/// Parses `"p/q"` or a bare integer into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational, RationalError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(RationalError::Empty);
    }
    let malformed = || RationalError::Malformed(text.to_owned());
    match trimmed.split_once('/') {
        None => {
            let n: i64 = trimmed.parse().map_err(|_| malformed())?;
            Ok(Rational::from_integer(n))
        }
        Some((num, den)) => {
            let n: i64 = num.trim().parse().map_err(|_| malformed())?;
            let d: i64 = den.trim().parse().map_err(|_| malformed())?;
            if d == 0 {
                return Err(RationalError::ZeroDenominator(text.to_owned()));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Formats a rational as `"p/q"`, or as a bare integer when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Clears denominators: returns `(t, scale)` with `t_i = scale * r_i` integer,
/// `scale` the least common multiple of the (reduced) denominators.
///
/// Every coefficient must be nonzero; the returned integers are nonzero too.
pub fn clear_denominators(coeffs: &[Rational]) -> Result<(Vec<i64>, i64), RationalError> {
    let mut scale: i64 = 1;
    for (i, r) in coeffs.iter().enumerate() {
        if r.numer() == &0 {
            return Err(RationalError::ZeroCoefficient(i));
        }
        let d = *r.denom();
        let g = scale.gcd(&d);
        scale = (scale / g).checked_mul(d).ok_or(RationalError::Overflow)?;
    }
    let mut integers = Vec::with_capacity(coeffs.len());
    for r in coeffs {
        let t = r
            .numer()
            .checked_mul(scale / r.denom())
            .ok_or(RationalError::Overflow)?;
        integers.push(t);
    }
    Ok((integers, scale))
}

/// Signs of the cleared coefficients, as +1/-1.
pub fn coefficient_signs(integers: &[i64]) -> Vec<i64> {
    integers.iter().map(|t| t.signum()).collect()
}

/// Greatest common divisor of the absolute values, 0 for an empty slice.
pub fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0i64, |g, v| g.gcd(&v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("7").unwrap(), Rational::from_integer(7));
        assert_eq!(parse_rational("-3").unwrap(), Rational::from_integer(-3));
        assert_eq!(parse_rational("3/2").unwrap(), Rational::new(3, 2));
        assert_eq!(parse_rational(" -2/5 ").unwrap(), Rational::new(-2, 5));
        assert_eq!(parse_rational("4/6").unwrap(), Rational::new(2, 3));
        assert_eq!(parse_rational("2/-4").unwrap(), Rational::new(-1, 2));
    }

    #[test]
    fn rejects_bad_literals() {
        assert_eq!(parse_rational(""), Err(RationalError::Empty));
        assert!(matches!(parse_rational("1/0"), Err(RationalError::ZeroDenominator(_))));
        assert!(matches!(parse_rational("a/b"), Err(RationalError::Malformed(_))));
        assert!(matches!(parse_rational("1.5"), Err(RationalError::Malformed(_))));
        assert!(matches!(parse_rational("1/2/3"), Err(RationalError::Malformed(_))));
    }

    #[test]
    fn format_round_trips() {
        for s in ["7", "-3", "3/2", "-2/5"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }

    #[test]
    fn clears_denominators_to_lcm() {
        let coeffs = vec![Rational::new(3, 2), Rational::new(-2, 5)];
        let (t, scale) = clear_denominators(&coeffs).unwrap();
        assert_eq!(scale, 10);
        assert_eq!(t, vec![15, -4]);
    }

    #[test]
    fn integer_coefficients_pass_through() {
        let coeffs = vec![Rational::from_integer(2), Rational::from_integer(-7)];
        let (t, scale) = clear_denominators(&coeffs).unwrap();
        assert_eq!(scale, 1);
        assert_eq!(t, vec![2, -7]);
    }

    #[test]
    fn zero_coefficient_is_rejected() {
        let coeffs = vec![Rational::from_integer(1), Rational::from_integer(0)];
        assert_eq!(
            clear_denominators(&coeffs),
            Err(RationalError::ZeroCoefficient(1))
        );
    }

    #[test]
    fn gcd_and_signs() {
        assert_eq!(gcd_all(&[6, -9, 12]), 3);
        assert_eq!(gcd_all(&[]), 0);
        assert_eq!(coefficient_signs(&[15, -4]), vec![1, -1]);
    }
}

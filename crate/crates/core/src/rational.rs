//! Small helpers around `BigRational`: the `p/q` text form used on the
//! command line and in serialized output.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{parse_err, Result};

pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

/// Formats as `p` for integers and `p/q` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p`, `p/q`. `offset` shifts reported error positions.
pub fn parse_rational_at(s: &str, offset: usize) -> Result<Rational> {
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    let (num, den, den_pos) = match t.find('/') {
        Some(i) => (&t[..i], &t[i + 1..], offset + lead + i + 1),
        None => (t, "1", offset + lead),
    };
    let p: BigInt = num
        .trim()
        .parse()
        .map_err(|_| parse_err(offset + lead, format!("expected an integer, found `{}`", num)))?;
    let q: BigInt = den
        .trim()
        .parse()
        .map_err(|_| parse_err(den_pos, format!("expected an integer, found `{}`", den)))?;
    if q.is_zero() {
        return Err(parse_err(den_pos, "zero denominator"));
    }
    Ok(BigRational::new(p, q))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    parse_rational_at(s, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    #[test]
    fn round_trip_text() {
        for s in ["0", "3", "-7", "5/2", "-1/3"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
    }

    #[test]
    fn parse_errors_report_position() {
        match parse_rational("1/x") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_rational("3/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_rational("abc"), Err(Error::Parse { pos: 0, .. })));
    }
}

//! Exact rational scalars.
//!
//! All arithmetic in this crate runs over `BigRational`, which keeps every
//! value in lowest terms with a positive denominator. Values serialize as
//! `"p/q"`, or `"p"` when the denominator is 1.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

/// Shorthand for small rational constants.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Largest integer <= x.
pub fn floor_int(x: &Rat) -> BigInt {
    x.floor().to_integer()
}

/// Fractional part in [0, 1).
pub fn fract(x: &Rat) -> Rat {
    x - Rat::from_integer(floor_int(x))
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let mk_err = || Error::Parse(format!("invalid rational {s:?}; expected \"p\" or \"p/q\""));
    match s.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| mk_err())?;
            let den: BigInt = den.trim().parse().map_err(|_| mk_err())?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(num, den))
        }
        None => {
            let num: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(Rat::from_integer(num))
        }
    }
}

pub fn format_rat(x: &Rat) -> String {
    if is_integer(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// |x| as a rational.
pub fn abs(x: &Rat) -> Rat {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["1/2", "-3/4", "0", "7", "-2"] {
            let x = parse_rat(s).unwrap();
            assert_eq!(format_rat(&x), s);
        }
        // non-canonical inputs normalize
        assert_eq!(format_rat(&parse_rat("2/4").unwrap()), "1/2");
        assert_eq!(format_rat(&parse_rat("1/-2").unwrap()), "-1/2");
        assert_eq!(format_rat(&parse_rat("-4/2").unwrap()), "-2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1/2/3").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn fract_lands_in_unit_interval() {
        assert_eq!(fract(&rat(-3, 2)), rat(1, 2));
        assert_eq!(fract(&rat(7, 3)), rat(1, 3));
        assert_eq!(fract(&int(5)), int(0));
    }
}

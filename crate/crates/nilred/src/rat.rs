//! Exact rational scalars.
//!
//! All algebraic data in this crate (structure constants, metric entries,
//! subspace bases) is carried by arbitrary-precision rationals so that
//! nondegeneracy, subalgebra membership and identity checks are decidable
//! rather than approximate. Floating point only enters through the
//! exponential-based geodesic machinery in [`crate::expm`].

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` into a rational. This is the wire format used by
/// all JSON input and output.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator {num:?}"))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| format!("invalid rational denominator {d:?}"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(format!("zero denominator in rational {s:?}"));
    }
    Ok(Rat::new(n, d))
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest `f64` to the rational (exact when representable).
pub fn rat_to_f64(r: &Rat) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Exact rational value of a finite `f64` (every finite float is dyadic).
pub fn f64_to_rat(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

/// If `|r|` is the square of a rational, returns that positive square root.
///
/// Used to normalize exact Gram-Schmidt pivots: a basis vector of norm `d`
/// can be rescaled to norm `±1` over the rationals iff `|d|` is a rational
/// square.
pub fn sqrt_of_abs(r: &Rat) -> Option<Rat> {
    if r.is_zero() {
        return Some(Rat::zero());
    }
    let num = r.numer().abs();
    let den = r.denom().clone();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &sn * &sn == num && &sd * &sd == den {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(r: &Rat) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-3", "1/2", "-7/3", "22/4"] {
            let r = parse_rat(s).unwrap();
            let back = parse_rat(&fmt_rat(&r)).unwrap();
            assert_eq!(r, back);
        }
        assert_eq!(fmt_rat(&parse_rat("22/4").unwrap()), "11/2");
        assert_eq!(fmt_rat(&parse_rat("4/-2").unwrap()), "-2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_of_abs(&ratio(4, 9)), Some(ratio(2, 3)));
        assert_eq!(sqrt_of_abs(&ratio(-1, 4)), Some(ratio(1, 2)));
        assert_eq!(sqrt_of_abs(&rat(2)), None);
        assert_eq!(sqrt_of_abs(&rat(0)), Some(rat(0)));
    }

    #[test]
    fn float_conversion_is_exact_for_dyadics() {
        let r = f64_to_rat(0.375).unwrap();
        assert_eq!(r, ratio(3, 8));
        assert_eq!(rat_to_f64(&r), 0.375);
    }
}

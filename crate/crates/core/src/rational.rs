//! Exact rational helpers shared by the basis and congruence machinery.
//!
//! Every quantity that enters a verdict is a `BigRational`; floats only
//! appear when a value is handed to the numeric evaluation layer, and the
//! single rational-to-float conversion below rounds correctly to nearest.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Convenience constructor used pervasively in tests.
pub fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses "p/q", a plain integer, or a decimal string ("-1.25") into an
/// exact rational. Decimals are exact: "0.1" becomes 1/10, not the nearest
/// float.
pub fn parse_rat(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, int_digits) = match int_part.trim() {
            t if t.starts_with('-') => (-1, &t[1..]),
            t if t.starts_with('+') => (1, &t[1..]),
            t => (1, t),
        };
        let frac_digits = frac_part.trim();
        if !frac_digits.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac_digits.is_empty())
        {
            return Err(Error::Parse(format!("bad decimal literal {s:?}")));
        }
        let digits = format!("{int_digits}{frac_digits}");
        let numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad decimal literal {s:?}")))?
        };
        let denom = BigInt::from(10u32).pow(frac_digits.len() as u32);
        return Ok(BigRational::new(numer * sign, denom));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer literal {s:?}")))?;
    Ok(BigRational::from_integer(n))
}

/// Renders a rational as "p/q", or "p" when the denominator is one.
pub fn format_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Reduces into the fundamental interval [0, 1).
pub fn mod1(r: &BigRational) -> BigRational {
    r - r.floor()
}

/// Least common multiple of the denominators of a slice (1 for the empty
/// slice and for all-integer rows).
pub fn lcm_denominators(row: &[BigRational]) -> BigInt {
    row.iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Nonnegative generator of the subgroup of Q generated by the entries:
/// gcd over rationals, with gcd(0, x) = |x|.
pub fn rat_gcd(values: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for v in values {
        if v.is_zero() {
            continue;
        }
        if acc.is_zero() {
            acc = v.abs();
            continue;
        }
        // gcd(a/b, c/d) over the common denominator lcm(b, d)
        let l = acc.denom().lcm(v.denom());
        let a = acc.numer() * (&l / acc.denom());
        let c = v.numer() * (&l / v.denom());
        acc = BigRational::new(a.gcd(&c), l);
    }
    acc
}

/// Distance from `x` to the subgroup gZ (all of Q collapses to {0} when
/// g = 0, where the distance is |x|).
pub fn dist_to_multiples(x: f64, g: &BigRational) -> f64 {
    if g.is_zero() {
        return x.abs();
    }
    let g = rat_to_f64(g);
    let r = x / g;
    (x - g * r.round()).abs()
}

/// Correctly rounded (nearest, ties to even) conversion to f64.
///
/// The naive `numer.to_f64() / denom.to_f64()` rounds twice; this performs
/// one exact integer division at 53-bit precision and rounds once.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    let numer = r.numer();
    if numer.is_zero() {
        return 0.0;
    }
    let sign = if numer.sign() == Sign::Minus { -1.0 } else { 1.0 };
    let n = numer.abs();
    let d = r.denom().clone();

    let mut shift: i64 = 53 - (n.bits() as i64 - d.bits() as i64);
    loop {
        let (num_s, den_s) = if shift >= 0 {
            (&n << shift as u64, d.clone())
        } else {
            (n.clone(), &d << (-shift) as u64)
        };
        let (mut q, rem) = num_s.div_rem(&den_s);
        match q.bits() {
            53 => {
                // round to nearest, ties to even
                let twice = &rem << 1u32;
                if twice > den_s || (twice == den_s && q.is_odd()) {
                    q += 1;
                }
                let mut mantissa = q.to_u64().expect("54-bit mantissa fits u64");
                let mut exp = -shift;
                if mantissa == 1u64 << 53 {
                    mantissa >>= 1;
                    exp += 1;
                }
                if exp > 1023 {
                    return sign * f64::INFINITY;
                }
                if exp < -1074 - 53 {
                    return sign * 0.0;
                }
                return sign * (mantissa as f64) * 2f64.powi(exp as i32);
            }
            52 => shift += 1,
            54 => shift -= 1,
            b => unreachable!("quotient has {b} bits"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat("3/-4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat("5").unwrap(), rat(5, 1));
        assert_eq!(parse_rat(" -5 ").unwrap(), rat(-5, 1));
        assert_eq!(parse_rat("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rat("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("2.").unwrap(), rat(2, 1));
        assert_eq!(parse_rat(".5").unwrap(), rat(1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat("a.b").is_err());
        assert!(parse_rat("1e3").is_err());
    }

    #[test]
    fn format_round_trip() {
        for s in ["3/4", "-3/4", "5", "0", "-7/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        // decimals normalize to p/q form
        assert_eq!(format_rat(&parse_rat("0.25").unwrap()), "1/4");
    }

    #[test]
    fn mod1_range() {
        assert_eq!(mod1(&rat(5, 4)), rat(1, 4));
        assert_eq!(mod1(&rat(-1, 4)), rat(3, 4));
        assert_eq!(mod1(&rat(-2, 1)), rat(0, 1));
        assert_eq!(mod1(&rat(7, 7)), rat(0, 1));
    }

    #[test]
    fn lcm_and_gcd() {
        assert_eq!(
            lcm_denominators(&[rat(1, 2), rat(1, 3)]),
            BigInt::from(6)
        );
        assert_eq!(lcm_denominators(&[rat(1, 1), rat(-3, 1)]), BigInt::one());
        assert_eq!(lcm_denominators(&[]), BigInt::one());
        assert_eq!(rat_gcd(&[rat(1, 2), rat(1, 3)]), rat(1, 6));
        assert_eq!(rat_gcd(&[rat(2, 1), rat(-1, 1)]), rat(1, 1));
        assert_eq!(rat_gcd(&[rat(0, 1)]), rat(0, 1));
        assert_eq!(rat_gcd(&[rat(4, 1), rat(6, 1)]), rat(2, 1));
    }

    #[test]
    fn f64_conversion_matches_single_division() {
        // A single hardware division of exactly representable operands is
        // correctly rounded, so these must agree bit for bit.
        for (p, q) in [(1i64, 3i64), (1, 10), (2, 7), (-22, 7), (355, 113), (1, 1 << 40)] {
            let r = rat(p, q);
            assert_eq!(rat_to_f64(&r).to_bits(), ((p as f64) / (q as f64)).to_bits());
        }
        assert_eq!(rat_to_f64(&rat(0, 1)), 0.0);
        assert_eq!(rat_to_f64(&rat(1, 2)), 0.5);
        assert_eq!(rat_to_f64(&rat(-3, 2)), -1.5);
    }

    #[test]
    fn f64_conversion_large_values() {
        let big = BigInt::from((1u64 << 60) + 1);
        let r = BigRational::from_integer(big);
        assert_eq!(rat_to_f64(&r), ((1u64 << 60) + 1) as f64);
        // 20-digit decimal approximation of sqrt(2)
        let s2 = parse_rat("1.41421356237309504880").unwrap();
        assert!((rat_to_f64(&s2) - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn dist_to_lattice() {
        assert!((dist_to_multiples(0.5, &rat(1, 1)) - 0.5).abs() < 1e-15);
        assert!((dist_to_multiples(0.9, &rat(1, 1)) - 0.1).abs() < 1e-12);
        assert!(dist_to_multiples(0.5, &rat(1, 2)) < 1e-15);
        assert!((dist_to_multiples(0.3, &rat(0, 1)) - 0.3).abs() < 1e-15);
    }
}

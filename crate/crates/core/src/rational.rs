use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational coefficient used throughout the ring and series engines.
pub type Rational = BigRational;

/// Canonical `p/q` rendering with `q > 0` and `gcd(p, q) = 1`; integers keep the `/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Generalized binomial coefficient `C(n, k)` for any integer `n`.
pub(crate) fn binomial(n: i64, k: u32) -> Rational {
    let mut num = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(n - i);
    }
    Rational::new(num, factorial(k))
}

/// `2^e` as an exact rational; negative exponents give `1/2^|e|`.
pub(crate) fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs() as usize;
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        assert_eq!(format_rational(&rat(5)), "5/1");
        assert_eq!(parse_rational("-3/2"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("7"), Some(rat(7)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn generalized_binomials() {
        // (1+x)^-1 = 1 - x + x^2 - ...
        assert_eq!(binomial(-1, 3), rat(-1));
        assert_eq!(binomial(-2, 2), rat(3));
        assert_eq!(binomial(2, 3), rat(0));
        assert_eq!(binomial(5, 2), rat(10));
        assert_eq!(pow2(-3), ratio(1, 8));
    }
}

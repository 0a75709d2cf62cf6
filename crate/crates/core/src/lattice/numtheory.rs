//! Constructive sums of squares.

use num_integer::Roots;

use super::LatticeError;

/// `n = 4^a (8b + 7)` for some `a, b ≥ 0`: exactly the integers that are not
/// sums of three squares.
pub fn is_legendre_exception(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(4) {
        n /= 4;
    }
    n % 8 == 7
}

fn ceil_sqrt(n: u64) -> u64 {
    let r = n.sqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

fn exact_sqrt(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Lexicographically least non-increasing `(x, y, z)` with `x² + y² + z² = n`,
/// or `None` when `n` is a Legendre exception.
pub fn three_squares(n: u64) -> Option<(u64, u64, u64)> {
    if is_legendre_exception(n) {
        return None;
    }
    // x is the largest part, so 3x² ≥ n.
    for x in ceil_sqrt(n.div_ceil(3))..=n.sqrt() {
        let rest = n - x * x;
        for y in ceil_sqrt(rest.div_ceil(2))..=x.min(rest.sqrt()) {
            if let Some(z) = exact_sqrt(rest - y * y) {
                return Some((x, y, z));
            }
        }
    }
    None
}

fn smallest_odd_at_least(m: u64) -> u64 {
    if m % 2 == 1 {
        m
    } else {
        m + 1
    }
}

/// Lexicographically least non-increasing tuple of odd positive integers
/// whose squares sum to `k`. Requires `k ≡ 4 (mod 8)`.
pub fn four_odd_squares(k: u64) -> Result<(u64, u64, u64, u64), LatticeError> {
    if k % 8 != 4 {
        return Err(LatticeError::NotFourMod8(k));
    }
    // a1 ≥ a2 ≥ a3 ≥ a4 ≥ 1, all odd.
    let mut a1 = smallest_odd_at_least(ceil_sqrt(k.div_ceil(4)));
    while a1 * a1 + 3 <= k {
        let r1 = k - a1 * a1;
        let mut a2 = smallest_odd_at_least(ceil_sqrt(r1.div_ceil(3)));
        while a2 <= a1 && a2 * a2 + 2 <= r1 {
            let r2 = r1 - a2 * a2;
            let mut a3 = smallest_odd_at_least(ceil_sqrt(r2.div_ceil(2)));
            while a3 <= a2 && a3 * a3 < r2 {
                if let Some(a4) = exact_sqrt(r2 - a3 * a3) {
                    if a4 % 2 == 1 && a4 <= a3 {
                        return Ok((a1, a2, a3, a4));
                    }
                }
                a3 += 2;
            }
            a2 += 2;
        }
        a1 += 2;
    }
    unreachable!("every k ≡ 4 (mod 8) is a sum of four odd squares")
}

/// The constructive route through Legendre: `k = 1² + (8m + 3)` and the three
/// squares summing to `8m + 3` are forced to be odd. Returned sorted
/// non-increasing; not necessarily the lexicographically least tuple.
pub fn four_odd_squares_via_three(k: u64) -> Result<(u64, u64, u64, u64), LatticeError> {
    if k % 8 != 4 {
        return Err(LatticeError::NotFourMod8(k));
    }
    let (x, y, z) = three_squares(k - 1).expect("8m+3 is never of the form 4^a(8b+7)");
    debug_assert!(x % 2 == 1 && y % 2 == 1 && z % 2 == 1);
    let mut parts = [1, x, y, z];
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok((parts[0], parts[1], parts[2], parts[3]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_odd_square_examples() {
        assert_eq!(four_odd_squares(4).unwrap(), (1, 1, 1, 1));
        assert_eq!(four_odd_squares(12).unwrap(), (3, 1, 1, 1));
        assert_eq!(four_odd_squares(28).unwrap(), (3, 3, 3, 1));
        assert_eq!(four_odd_squares(6), Err(LatticeError::NotFourMod8(6)));
    }

    #[test]
    fn three_square_examples() {
        assert_eq!(three_squares(7), None);
        assert_eq!(three_squares(28), None);
        assert_eq!(three_squares(11), Some((3, 1, 1)));
        assert_eq!(three_squares(0), Some((0, 0, 0)));
        assert_eq!(three_squares(9), Some((2, 2, 1)));
    }

    #[test]
    fn legendre_route_agrees_on_sums() {
        for k in (4..2000).step_by(8) {
            let (a, b, c, d) = four_odd_squares_via_three(k).unwrap();
            assert_eq!(a * a + b * b + c * c + d * d, k);
            assert!([a, b, c, d].iter().all(|x| x % 2 == 1));
        }
    }
}

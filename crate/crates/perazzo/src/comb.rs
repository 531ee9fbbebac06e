//! Exact binomial and multinomial coefficients.
//!
//! Everything is computed in arbitrary precision and only then mapped into
//! a field or truncated to machine words; d! overflows 64 bits quickly.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

pub fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// Binomial coefficient as u64, panicking when it does not fit. Desk-scale
/// parameters stay far below the bound; callers surface range errors before
/// reaching this point.
pub fn binomial_u64(n: usize, k: usize) -> u64 {
    binomial(n, k)
        .to_u64()
        .unwrap_or_else(|| panic!("binomial({n},{k}) exceeds u64"))
}

pub fn binomial_usize(n: usize, k: usize) -> usize {
    binomial(n, k)
        .to_usize()
        .unwrap_or_else(|| panic!("binomial({n},{k}) exceeds usize"))
}

/// Multinomial coefficient |e|! / (e_1! … e_r!).
pub fn multinomial(exps: &[u32]) -> BigUint {
    let total: u32 = exps.iter().sum();
    let mut acc = factorial(total as usize);
    for &e in exps {
        acc /= factorial(e as usize);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial_u64(5, 2), 10);
        assert_eq!(binomial_u64(9, 3), 84);
        assert_eq!(binomial_u64(4, 0), 1);
        assert_eq!(binomial_u64(3, 5), 0);
    }

    #[test]
    fn multinomial_matches_factorials() {
        // 4!/(3!1!) = 4, 4!/(2!2!) = 6
        assert_eq!(multinomial(&[3, 1]).to_u64().unwrap(), 4);
        assert_eq!(multinomial(&[2, 2]).to_u64().unwrap(), 6);
        assert_eq!(multinomial(&[0, 0, 5]).to_u64().unwrap(), 1);
    }
}

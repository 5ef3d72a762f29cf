use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::AlphabetError;

/// Number of arrangements of length `n` over `r` classes: `r^n`.
pub fn count_all(n: u32, r: u32) -> BigUint {
    BigUint::from(r).pow(n)
}

/// Stirling number of the second kind via
/// `S(n, r) = r·S(n−1, r) + S(n−1, r−1)`.
pub fn stirling2(n: u32, r: u32) -> BigUint {
    let (n, r) = (n as usize, r as usize);
    if r > n {
        return BigUint::zero();
    }
    // row[j] holds S(i, j) for the current i.
    let mut row = vec![BigUint::zero(); r + 1];
    row[0] = BigUint::one();
    for i in 1..=n {
        for j in (1..=r.min(i)).rev() {
            let carried = std::mem::take(&mut row[j]);
            row[j] = carried * BigUint::from(j) + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    std::mem::take(&mut row[r])
}

/// Arrangements using every one of the `r` classes, by inclusion–exclusion
/// `Σ_{i=0}^{r−1} (−1)^i C(r,i) (r−i)^n`.
pub fn count_surjective(n: u32, r: u32) -> BigUint {
    let mut total = BigInt::zero();
    for i in 0..r {
        let term = BigInt::from(binomial(r, i)) * BigInt::from(BigUint::from(r - i).pow(n));
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
        .to_biguint()
        .expect("inclusion-exclusion count is non-negative")
}

/// Balanced arrangements: `C(r,s) · n! / ((q+1)!^s · q!^(r−s))` with
/// `q = ⌊n/r⌋`, `s = n mod r`.
pub fn count_balanced(n: u32, r: u32) -> Result<BigUint, AlphabetError> {
    if r == 0 || n < r {
        return Err(AlphabetError::DomainError(format!(
            "balanced count needs n >= r >= 1, got n = {n}, r = {r}"
        )));
    }
    let q = n / r;
    let s = n % r;
    let denominator = factorial(q + 1).pow(s) * factorial(q).pow(r - s);
    Ok(binomial(r, s) * factorial(n) / denominator)
}

pub(crate) fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

pub(crate) fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

//! Bit-level arithmetic mod 2: binomial coefficients via Lucas and the
//! lowest-zero-bit function `rho`.

use crate::error::{Error, Result};

/// `n choose k` mod 2, with `binom(n, k) = 0` whenever `k > n`.
///
/// Lucas: the coefficient is odd iff every binary digit of `k` is at most
/// the corresponding digit of `n`.
#[inline]
pub fn binom_mod2(n: u64, k: u64) -> bool {
    k <= n && (n & k) == k
}

/// Signed variant used by the Nishida and Adem sums, where the top entry can
/// go negative. Negative arguments give 0.
#[inline]
pub fn binom_mod2_i(n: i64, k: i64) -> bool {
    n >= 0 && k >= 0 && binom_mod2(n as u64, k as u64)
}

/// Index of the lowest zero bit of `n`.
pub fn rho(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Domain("rho(0) is undefined".into()));
    }
    Ok((!n).trailing_zeros())
}

/// `2^rho(n)`, the threshold appearing in the annihilation criteria.
pub fn two_pow_rho(n: u64) -> Result<u64> {
    rho(n).map(|r| 1u64 << r)
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Exact rational numbers.
pub type Q = BigRational;

/// `v_p(n)` for a nonzero integer, `None` for zero.
pub fn p_adic_valuation_int(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    // strip p^(2^k) chunks first so huge valuations stay cheap
    let mut powers = vec![p.clone()];
    loop {
        let last = powers.last().unwrap();
        if !n.is_multiple_of(last) {
            break;
        }
        let sq = last * last;
        powers.push(sq);
    }
    for (k, pk) in powers.iter().enumerate().rev() {
        while n.is_multiple_of(pk) {
            n /= pk;
            v += 1i64 << k;
        }
    }
    Some(v)
}

/// `v_p(q)` for a nonzero rational, `None` for zero.
pub fn p_adic_valuation(q: &Q, p: u64) -> Option<i64> {
    let num = p_adic_valuation_int(q.numer(), p)?;
    let den = p_adic_valuation_int(q.denom(), p).unwrap_or(0);
    Some(num - den)
}

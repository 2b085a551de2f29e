//! Exact base arithmetic.
//!
//! Everything here is exact: prime fields, the quadratic extension
//! `F_{p^2} = F_p[x]/(x^2 - n)` with `n` the least quadratic nonresidue,
//! capped-precision elements of the unramified quadratic extension `K` of
//! `Q_p`, and the residual class group `K^x / U_1(K)`.

mod fp2;
mod padic;
mod poly;
mod prime;
mod rational;
mod residual;

pub use fp2::{fp2_frobenius, fp2_make, Fp2, Fp2Context};
pub(crate) use padic::inverse_mod;
pub use padic::{padic_reduce, residual_of, PadicElement};
pub use poly::{Fp2Poly, FpPoly};
pub use prime::{is_prime, least_nonresidue, mod_inverse, mod_pow};
pub use rational::{p_adic_valuation, p_adic_valuation_int, Q};
pub use residual::{residual_inv, residual_mul, residual_pow, ResidualClass};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too small (need p >= 5)")]
    PrimeTooSmall(u64),
    #[error("prime {0} is too large (need p < 2^31)")]
    PrimeTooLarge(u64),
    #[error("element has negative valuation {0}")]
    NegativeValuation(i64),
    #[error("element is indistinguishable from zero at absolute precision {0}")]
    IndistinguishableFromZero(i64),
    #[error("residue of a residual class must be nonzero")]
    ZeroResidue,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different fields")]
    ContextMismatch,
}

/// `gcd(p - 1, 12)`, the constant `d` attached to `p`.
pub fn eisenstein_d(p: u64) -> u64 {
    num_integer::gcd(p - 1, 12)
}

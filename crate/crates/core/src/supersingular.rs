//! Supersingular Legendre invariants.
//!
//! The supersingular points of the special fiber are the `λ` in `F_{p^2}`
//! for which `E_λ : y^2 = x(x - 1)(x - λ)` is supersingular. These are
//! exactly the roots of the Deuring polynomial
//! `H_p(λ) = Σ_{i=0}^{m} C(m, i)^2 λ^i`, `m = (p - 1)/2`, which splits
//! with distinct roots over `F_{p^2}`.

use thiserror::Error;

use crate::arith::{ArithError, Fp2, Fp2Context, FpPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SupersingularError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("λ = {0} is a pole of the j-map")]
    Pole(String),
    #[error("invalid supersingular data: {0}")]
    Invalid(String),
}

/// Ordered supersingular `λ`-invariants with their Frobenius permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupersingularSet {
    ctx: Fp2Context,
    lambdas: Vec<Fp2>,
    frobenius_perm: Vec<usize>,
}

/// Descriptor of the canonical ordering of supersingular bases.
pub const ORDER_KEY: &str = "lex(a,b)";

impl SupersingularSet {
    /// Builds a set from an explicit ordered list, validating every
    /// invariant (Deuring roots, distinctness, count, Frobenius stability).
    pub fn from_lambdas(ctx: Fp2Context, lambdas: Vec<Fp2>) -> Result<Self, SupersingularError> {
        let p = ctx.p();
        if lambdas.len() as u64 != (p - 1) / 2 {
            return Err(SupersingularError::Invalid(format!(
                "expected {} invariants, got {}",
                (p - 1) / 2,
                lambdas.len()
            )));
        }
        let h = deuring_polynomial(p)?.to_fp2(ctx);
        for (i, l) in lambdas.iter().enumerate() {
            if l.ctx() != ctx {
                return Err(SupersingularError::Arith(ArithError::ContextMismatch));
            }
            if !h.eval(*l).is_zero() {
                return Err(SupersingularError::Invalid(format!(
                    "{l} is not a Deuring root"
                )));
            }
            if lambdas[..i].contains(l) {
                return Err(SupersingularError::Invalid(format!("{l} repeated")));
            }
        }
        let frobenius_perm = lambdas
            .iter()
            .map(|l| {
                let f = l.frobenius();
                lambdas.iter().position(|m| *m == f).ok_or_else(|| {
                    SupersingularError::Invalid(format!("Frobenius image of {l} missing"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SupersingularSet {
            ctx,
            lambdas,
            frobenius_perm,
        })
    }

    pub fn ctx(&self) -> Fp2Context {
        self.ctx
    }

    pub fn p(&self) -> u64 {
        self.ctx.p()
    }

    pub fn lambdas(&self) -> &[Fp2] {
        &self.lambdas
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// `frobenius_perm()[i] = j` iff `λ_j = λ_i^p`.
    pub fn frobenius_perm(&self) -> &[usize] {
        &self.frobenius_perm
    }

    pub fn order_key(&self) -> &'static str {
        ORDER_KEY
    }

    /// Genus `g = (p - 3)/2`.
    pub fn genus(&self) -> usize {
        self.lambdas.len() - 1
    }

    /// The same set re-indexed: position `k` of the result holds
    /// `lambdas[perm[k]]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, SupersingularError> {
        let mut seen = vec![false; self.len()];
        for &i in perm {
            if i >= self.len() || std::mem::replace(&mut seen[i], true) {
                return Err(SupersingularError::Invalid("not a permutation".into()));
            }
        }
        if perm.len() != self.len() {
            return Err(SupersingularError::Invalid("not a permutation".into()));
        }
        Self::from_lambdas(self.ctx, perm.iter().map(|&i| self.lambdas[i]).collect())
    }
}

/// `H_p(λ) = Σ_{i=0}^{m} C(m, i)^2 λ^i` over `F_p`, `m = (p - 1)/2`.
pub fn deuring_polynomial(p: u64) -> Result<FpPoly, ArithError> {
    Fp2Context::new(p)?;
    let m = (p - 1) / 2;
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    let mut binom = 1u64;
    for i in 0..=m {
        if i > 0 {
            // C(m, i) = C(m, i - 1) (m - i + 1) / i; i < p so i is invertible
            let inv = crate::arith::mod_inverse(i % p, p).unwrap();
            binom = binom * ((m - i + 1) % p) % p * inv % p;
        }
        coeffs.push(binom * binom % p);
    }
    Ok(FpPoly::new(p, coeffs))
}

/// All supersingular `λ` in `F_{p^2}`, in canonical order.
pub fn supersingular_lambdas(p: u64) -> Result<SupersingularSet, SupersingularError> {
    let ctx = Fp2Context::new(p)?;
    let roots = deuring_polynomial(p)?.to_fp2(ctx).roots();
    SupersingularSet::from_lambdas(ctx, roots)
}

/// `j = 2^8 (λ^2 - λ + 1)^3 / (λ^2 (1 - λ)^2)`.
pub fn lambda_to_j(lam: Fp2) -> Result<Fp2, SupersingularError> {
    let ctx = lam.ctx();
    let one = ctx.one();
    let den = lam * lam * (one - lam) * (one - lam);
    let den_inv = den
        .inv()
        .ok_or_else(|| SupersingularError::Pole(lam.to_string()))?;
    let t = lam * lam - lam + one;
    Ok(ctx.from_fp(256) * t * t * t * den_inv)
}

/// Number of distinct supersingular `j`-invariants in characteristic `p`.
pub fn supersingular_j_count(p: u64) -> u64 {
    p / 12
        + match p % 12 {
            1 => 0,
            5 | 7 => 1,
            11 => 2,
            _ => 0,
        }
}

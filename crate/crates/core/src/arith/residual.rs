use std::fmt;

use super::fp2::{Fp2, Fp2Context};
use super::ArithError;

/// The class of `p^val * res` in `K^x / U_1(K) = Z x F_{p^2}^x`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidualClass {
    val: i64,
    res: Fp2,
}

impl ResidualClass {
    pub fn new(val: i64, res: Fp2) -> Result<Self, ArithError> {
        if res.is_zero() {
            return Err(ArithError::ZeroResidue);
        }
        Ok(ResidualClass { val, res })
    }

    pub fn identity(ctx: Fp2Context) -> Self {
        ResidualClass {
            val: 0,
            res: ctx.one(),
        }
    }

    /// The class of `p`, i.e. `(1, 1)`.
    pub fn of_p(ctx: Fp2Context) -> Self {
        ResidualClass {
            val: 1,
            res: ctx.one(),
        }
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn res(&self) -> Fp2 {
        self.res
    }

    pub fn ctx(&self) -> Fp2Context {
        self.res.ctx()
    }

    pub fn mul(&self, other: &ResidualClass) -> ResidualClass {
        ResidualClass {
            val: self.val + other.val,
            res: self.res * other.res,
        }
    }

    pub fn inv(&self) -> ResidualClass {
        ResidualClass {
            val: -self.val,
            res: self.res.inv().expect("residue is nonzero by construction"),
        }
    }

    pub fn pow(&self, k: i64) -> ResidualClass {
        ResidualClass {
            val: self.val * k,
            res: self
                .res
                .pow_signed(k)
                .expect("residue is nonzero by construction"),
        }
    }

    /// Applies Frobenius to the residue, keeping the valuation.
    pub fn frobenius(&self) -> ResidualClass {
        ResidualClass {
            val: self.val,
            res: self.res.frobenius(),
        }
    }
}

pub fn residual_mul(a: &ResidualClass, b: &ResidualClass) -> ResidualClass {
    a.mul(b)
}

pub fn residual_inv(a: &ResidualClass) -> ResidualClass {
    a.inv()
}

pub fn residual_pow(a: &ResidualClass, k: i64) -> ResidualClass {
    a.pow(k)
}

impl fmt::Debug for ResidualClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.val, self.res)
    }
}

impl fmt::Display for ResidualClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

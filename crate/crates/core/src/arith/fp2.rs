use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::prime::{is_prime, least_nonresidue, mod_inverse, mul_mod};
use super::ArithError;

/// Largest supported characteristic plus one; keeps every coordinate product
/// inside a `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

/// The model `F_p[x]/(x^2 - n)` of `F_{p^2}`, with `n` the least positive
/// quadratic nonresidue mod `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp2Context {
    p: u64,
    n: u64,
}

impl Fp2Context {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        if p < 5 {
            return Err(ArithError::PrimeTooSmall(p));
        }
        if p >= MAX_PRIME {
            return Err(ArithError::PrimeTooLarge(p));
        }
        Ok(Fp2Context {
            p,
            n: least_nonresidue(p),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The nonresidue `n` with `x^2 = n`.
    pub fn nonresidue(&self) -> u64 {
        self.n
    }

    pub fn elem(&self, a: i64, b: i64) -> Fp2 {
        let p = self.p as i128;
        Fp2 {
            a: (a as i128).rem_euclid(p) as u64,
            b: (b as i128).rem_euclid(p) as u64,
            ctx: *self,
        }
    }

    pub fn from_fp(&self, a: u64) -> Fp2 {
        Fp2 {
            a: a % self.p,
            b: 0,
            ctx: *self,
        }
    }

    pub fn zero(&self) -> Fp2 {
        self.from_fp(0)
    }

    pub fn one(&self) -> Fp2 {
        self.from_fp(1)
    }

    /// The generator `x` with `x^2 = n`.
    pub fn gen(&self) -> Fp2 {
        Fp2 {
            a: 0,
            b: 1,
            ctx: *self,
        }
    }

    /// All `p^2` elements, in canonical (lexicographic) order.
    pub fn elements(&self) -> impl Iterator<Item = Fp2> + '_ {
        let ctx = *self;
        (0..self.p).flat_map(move |a| (0..ctx.p).map(move |b| Fp2 { a, b, ctx }))
    }

    /// `|F_{p^2}| = p^2`.
    pub fn order(&self) -> u128 {
        self.p as u128 * self.p as u128
    }
}

/// An element `a + b x` of `F_{p^2}`.
///
/// Ordering is lexicographic on `(a, b)`, which is the canonical order used
/// for supersingular bases.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp2 {
    a: u64,
    b: u64,
    ctx: Fp2Context,
}

/// Builds the canonical representative of `a + b x` in `F_{p^2}`.
pub fn fp2_make(p: u64, a: i64, b: i64) -> Result<Fp2, ArithError> {
    Ok(Fp2Context::new(p)?.elem(a, b))
}

/// `e^p`.
pub fn fp2_frobenius(e: &Fp2) -> Fp2 {
    e.frobenius()
}

impl Fp2 {
    /// Coordinates already reduced modulo `p`.
    pub(crate) fn from_reduced(ctx: Fp2Context, a: u64, b: u64) -> Fp2 {
        debug_assert!(a < ctx.p && b < ctx.p);
        Fp2 { a, b, ctx }
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn coords(&self) -> [u64; 2] {
        [self.a, self.b]
    }

    pub fn ctx(&self) -> Fp2Context {
        self.ctx
    }

    pub fn p(&self) -> u64 {
        self.ctx.p
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_one(&self) -> bool {
        self.a == 1 && self.b == 0
    }

    /// Whether the element lies in the prime field.
    pub fn in_prime_field(&self) -> bool {
        self.b == 0
    }

    /// Frobenius `a + b x -> a - b x`; since `x^p = -x` this is `e^p`.
    pub fn frobenius(&self) -> Fp2 {
        Fp2 {
            a: self.a,
            b: (self.ctx.p - self.b) % self.ctx.p,
            ctx: self.ctx,
        }
    }

    /// `N(e) = e^(p+1) = a^2 - n b^2`.
    pub fn norm(&self) -> u64 {
        let p = self.ctx.p;
        let aa = mul_mod(self.a, self.a, p);
        let nbb = mul_mod(self.ctx.n, mul_mod(self.b, self.b, p), p);
        (aa + p - nbb) % p
    }

    pub fn inv(&self) -> Option<Fp2> {
        let norm_inv = mod_inverse(self.norm(), self.ctx.p)?;
        let conj = self.frobenius();
        Some(Fp2 {
            a: mul_mod(conj.a, norm_inv, self.ctx.p),
            b: mul_mod(conj.b, norm_inv, self.ctx.p),
            ctx: self.ctx,
        })
    }

    pub fn pow(&self, mut exp: u128) -> Fp2 {
        let mut acc = self.ctx.one();
        let mut base = *self;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Signed power; negative exponents need an invertible base.
    pub fn pow_signed(&self, exp: i64) -> Option<Fp2> {
        if exp >= 0 {
            Some(self.pow(exp as u128))
        } else {
            Some(self.inv()?.pow(exp.unsigned_abs() as u128))
        }
    }

    pub fn checked_div(&self, rhs: &Fp2) -> Option<Fp2> {
        Some(*self * rhs.inv()?)
    }
}

impl fmt::Debug for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "x"),
            (0, b) => write!(f, "{b}x"),
            (a, 1) => write!(f, "{a}+x"),
            (a, b) => write!(f, "{a}+{b}x"),
        }
    }
}

impl Add for Fp2 {
    type Output = Fp2;
    fn add(self, rhs: Fp2) -> Fp2 {
        debug_assert_eq!(self.ctx, rhs.ctx);
        let p = self.ctx.p;
        Fp2 {
            a: (self.a + rhs.a) % p,
            b: (self.b + rhs.b) % p,
            ctx: self.ctx,
        }
    }
}

impl Sub for Fp2 {
    type Output = Fp2;
    fn sub(self, rhs: Fp2) -> Fp2 {
        debug_assert_eq!(self.ctx, rhs.ctx);
        let p = self.ctx.p;
        Fp2 {
            a: (self.a + p - rhs.a) % p,
            b: (self.b + p - rhs.b) % p,
            ctx: self.ctx,
        }
    }
}

impl Neg for Fp2 {
    type Output = Fp2;
    fn neg(self) -> Fp2 {
        self.ctx.zero() - self
    }
}

impl Mul for Fp2 {
    type Output = Fp2;
    fn mul(self, rhs: Fp2) -> Fp2 {
        debug_assert_eq!(self.ctx, rhs.ctx);
        // p < 2^31, so each product fits in a u64
        let p = self.ctx.p;
        let bd = self.b * rhs.b % p;
        Fp2 {
            a: (self.a * rhs.a + self.ctx.n * bd) % p,
            b: (self.a * rhs.b + self.b * rhs.a) % p,
            ctx: self.ctx,
        }
    }
}

impl Div for Fp2 {
    type Output = Fp2;
    /// Panics on division by zero; use [`Fp2::checked_div`] otherwise.
    fn div(self, rhs: Fp2) -> Fp2 {
        self.checked_div(&rhs).expect("division by zero in F_p^2")
    }
}

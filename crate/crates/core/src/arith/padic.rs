use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fp2::{Fp2, Fp2Context};
use super::rational::{p_adic_valuation_int, Q};
use super::residual::ResidualClass;
use super::ArithError;

/// Capped-precision element of the unramified quadratic extension
/// `K = Q_p(sqrt n)`.
///
/// Stored as `p^val * (a + b sqrt n)` with the unit part known modulo
/// `p^rel_prec`. Absolute precision is `val + rel_prec`. An element with
/// `rel_prec == 0` is `O(p^val)`: zero to the known precision.
#[derive(Clone, PartialEq, Eq)]
pub struct PadicElement {
    ctx: Fp2Context,
    val: i64,
    rel_prec: u32,
    a: BigInt,
    b: BigInt,
}

fn pow_p(p: u64, k: u32) -> BigInt {
    BigInt::from(p).pow(k)
}

impl PadicElement {
    /// The element `O(p^abs_prec)`.
    pub fn zero(ctx: Fp2Context, abs_prec: i64) -> Self {
        PadicElement {
            ctx,
            val: abs_prec,
            rel_prec: 0,
            a: BigInt::zero(),
            b: BigInt::zero(),
        }
    }

    /// `a + b sqrt(n)` for integers known modulo `p^abs_prec`.
    pub fn from_coords(ctx: Fp2Context, a: &BigInt, b: &BigInt, abs_prec: i64) -> Self {
        let p = ctx.p();
        let va = p_adic_valuation_int(a, p);
        let vb = p_adic_valuation_int(b, p);
        let v = match (va, vb) {
            (None, None) => return Self::zero(ctx, abs_prec),
            (Some(x), None) | (None, Some(x)) => x,
            (Some(x), Some(y)) => x.min(y),
        };
        if v >= abs_prec {
            return Self::zero(ctx, abs_prec);
        }
        let shift = pow_p(p, v as u32);
        let rel = (abs_prec - v) as u32;
        let m = pow_p(p, rel);
        PadicElement {
            ctx,
            val: v,
            rel_prec: rel,
            a: (a / &shift).mod_floor(&m),
            b: (b / &shift).mod_floor(&m),
        }
    }

    /// A rational number, to absolute precision `abs_prec`.
    pub fn from_rational(ctx: Fp2Context, q: &Q, abs_prec: i64) -> Self {
        Self::from_fraction(ctx, q.numer(), q.denom(), abs_prec)
    }

    /// `num / den` with unreduced integers, to absolute precision `abs_prec`.
    pub fn from_fraction(ctx: Fp2Context, num: &BigInt, den: &BigInt, abs_prec: i64) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let p = ctx.p();
        let Some(vn) = p_adic_valuation_int(num, p) else {
            return Self::zero(ctx, abs_prec);
        };
        let vd = p_adic_valuation_int(den, p).unwrap();
        let v = vn - vd;
        if v >= abs_prec {
            return Self::zero(ctx, abs_prec);
        }
        let rel = (abs_prec - v) as u32;
        let m = pow_p(p, rel);
        let un = (num / pow_p(p, vn as u32)).mod_floor(&m);
        let ud = (den / pow_p(p, vd as u32)).mod_floor(&m);
        let ud_inv = inverse_mod(&ud, &m).expect("unit part is invertible");
        PadicElement {
            ctx,
            val: v,
            rel_prec: rel,
            a: (un * ud_inv).mod_floor(&m),
            b: BigInt::zero(),
        }
    }

    pub fn from_integer(ctx: Fp2Context, n: i64, abs_prec: i64) -> Self {
        Self::from_coords(ctx, &BigInt::from(n), &BigInt::zero(), abs_prec)
    }

    /// Teichmüller lift of a nonzero residue: the unique `(p^2 - 1)`-th root
    /// of unity reducing to it.
    pub fn teichmuller(r: Fp2, abs_prec: i64) -> Result<Self, ArithError> {
        if r.is_zero() {
            return Ok(Self::zero(r.ctx(), abs_prec));
        }
        let ctx = r.ctx();
        let q = (ctx.p() as u128) * (ctx.p() as u128);
        let mut x = Self::from_coords(ctx, &BigInt::from(r.a()), &BigInt::from(r.b()), abs_prec);
        // x -> x^q contracts towards the root of unity, one digit per step
        for _ in 0..abs_prec.max(1) {
            x = x.pow_u(q);
        }
        Ok(x)
    }

    pub fn ctx(&self) -> Fp2Context {
        self.ctx
    }

    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn relative_precision(&self) -> u32 {
        self.rel_prec
    }

    pub fn absolute_precision(&self) -> i64 {
        self.val + self.rel_prec as i64
    }

    /// Whether the element is zero to its known precision.
    pub fn is_indistinguishable_from_zero(&self) -> bool {
        self.rel_prec == 0
    }

    /// Unit-part coordinates `(a, b)` modulo `p^rel_prec`.
    pub fn unit_coords(&self) -> (&BigInt, &BigInt) {
        (&self.a, &self.b)
    }

    /// Whether the element lies in `Q_p` (its `sqrt n` coordinate vanishes).
    pub fn in_base_field(&self) -> bool {
        self.b.is_zero()
    }

    fn modulus(&self) -> BigInt {
        pow_p(self.ctx.p(), self.rel_prec)
    }

    pub fn mul(&self, other: &PadicElement) -> PadicElement {
        debug_assert_eq!(self.ctx, other.ctx);
        let val = self.val + other.val;
        let rel = self.rel_prec.min(other.rel_prec);
        if rel == 0 {
            // one side is O(p^v): the product is O(p^(v + v'))
            return Self::zero(self.ctx, val);
        }
        let m = pow_p(self.ctx.p(), rel);
        let n = BigInt::from(self.ctx.nonresidue());
        let a = (&self.a * &other.a + n * &self.b * &other.b).mod_floor(&m);
        let b = (&self.a * &other.b + &self.b * &other.a).mod_floor(&m);
        PadicElement {
            ctx: self.ctx,
            val,
            rel_prec: rel,
            a,
            b,
        }
    }

    pub fn inv(&self) -> Result<PadicElement, ArithError> {
        if self.rel_prec == 0 {
            return Err(ArithError::IndistinguishableFromZero(
                self.absolute_precision(),
            ));
        }
        let m = self.modulus();
        let n = BigInt::from(self.ctx.nonresidue());
        let norm = (&self.a * &self.a - n * &self.b * &self.b).mod_floor(&m);
        let norm_inv = inverse_mod(&norm, &m).expect("norm of a unit is a unit");
        Ok(PadicElement {
            ctx: self.ctx,
            val: -self.val,
            rel_prec: self.rel_prec,
            a: (&self.a * &norm_inv).mod_floor(&m),
            b: (-&self.b * &norm_inv).mod_floor(&m),
        })
    }

    pub fn div(&self, other: &PadicElement) -> Result<PadicElement, ArithError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn neg(&self) -> PadicElement {
        let m = self.modulus();
        PadicElement {
            ctx: self.ctx,
            val: self.val,
            rel_prec: self.rel_prec,
            a: (-&self.a).mod_floor(&m),
            b: (-&self.b).mod_floor(&m),
        }
    }

    pub fn add(&self, other: &PadicElement) -> PadicElement {
        debug_assert_eq!(self.ctx, other.ctx);
        let abs = self.absolute_precision().min(other.absolute_precision());
        let base = self.val.min(other.val);
        if base >= abs {
            return Self::zero(self.ctx, abs);
        }
        let p = self.ctx.p();
        let lift = |e: &PadicElement| -> (BigInt, BigInt) {
            if e.rel_prec == 0 {
                return (BigInt::zero(), BigInt::zero());
            }
            let s = pow_p(p, (e.val - base) as u32);
            (&e.a * &s, &e.b * &s)
        };
        let (a1, b1) = lift(self);
        let (a2, b2) = lift(other);
        let m = pow_p(p, (abs - base) as u32);
        let a = (a1 + a2).mod_floor(&m);
        let b = (b1 + b2).mod_floor(&m);
        let shifted = Self::from_coords(self.ctx, &a, &b, abs - base);
        shifted.shift(base)
    }

    pub fn sub(&self, other: &PadicElement) -> PadicElement {
        self.add(&other.neg())
    }

    /// Multiplies by `p^k`.
    pub fn shift(&self, k: i64) -> PadicElement {
        let mut out = self.clone();
        out.val += k;
        out
    }

    fn pow_u(&self, mut exp: u128) -> PadicElement {
        let mut acc: Option<PadicElement> = None;
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap_or_else(|| Self::from_integer(self.ctx, 1, self.rel_prec.max(1) as i64))
    }

    pub fn pow(&self, exp: i64) -> Result<PadicElement, ArithError> {
        if exp >= 0 {
            Ok(self.pow_u(exp as u128))
        } else {
            Ok(self.inv()?.pow_u(exp.unsigned_abs() as u128))
        }
    }

    /// Image in `F_{p^2}` of an integral element.
    pub fn reduce(&self) -> Result<Fp2, ArithError> {
        if self.val < 0 && self.rel_prec > 0 {
            return Err(ArithError::NegativeValuation(self.val));
        }
        if self.absolute_precision() < 1 {
            return Err(ArithError::IndistinguishableFromZero(
                self.absolute_precision(),
            ));
        }
        if self.val > 0 || self.rel_prec == 0 {
            return Ok(self.ctx.zero());
        }
        let p = BigInt::from(self.ctx.p());
        let a = self.a.mod_floor(&p);
        let b = self.b.mod_floor(&p);
        Ok(self.ctx.elem(
            i64::try_from(a).expect("residue fits"),
            i64::try_from(b).expect("residue fits"),
        ))
    }

    /// Class in `K^x / U_1(K)`.
    pub fn residual(&self) -> Result<ResidualClass, ArithError> {
        if self.rel_prec == 0 {
            return Err(ArithError::IndistinguishableFromZero(
                self.absolute_precision(),
            ));
        }
        let unit = self.shift(-self.val);
        ResidualClass::new(self.val, unit.reduce()?)
    }

    /// Valuation of `self - other`, capped by the common absolute precision.
    pub fn valuation_of_difference(&self, other: &PadicElement) -> i64 {
        self.sub(other).valuation()
    }

    /// Whether `self ≡ other (mod p^m)`.
    pub fn agrees_mod(&self, other: &PadicElement, m: i64) -> bool {
        let d = self.sub(other);
        d.valuation() >= m
    }
}

impl fmt::Debug for PadicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rel_prec == 0 {
            return write!(f, "O({}^{})", self.ctx.p(), self.val);
        }
        write!(
            f,
            "{}^{} * ({} + {}·√{}) + O({}^{})",
            self.ctx.p(),
            self.val,
            self.a,
            self.b,
            self.ctx.nonresidue(),
            self.ctx.p(),
            self.absolute_precision()
        )
    }
}

impl fmt::Display for PadicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub(crate) fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.abs().is_one() {
        return None;
    }
    Some((e.x * e.gcd.signum()).mod_floor(m))
}

/// Reduction `O_K -> F_{p^2}`.
pub fn padic_reduce(e: &PadicElement) -> Result<Fp2, ArithError> {
    e.reduce()
}

/// `(v_K(e), reduction of e p^{-v_K(e)})`.
pub fn residual_of(e: &PadicElement) -> Result<ResidualClass, ArithError> {
    e.residual()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ctx(p: u64) -> Fp2Context {
        Fp2Context::new(p).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let c = ctx(5);
        let one_plus_p = PadicElement::from_integer(c, 6, 3);
        assert!(padic_reduce(&one_plus_p).unwrap().is_one());
        let c7 = ctx(7);
        assert!(padic_reduce(&PadicElement::from_integer(c7, 7, 3))
            .unwrap()
            .is_zero());
        let r = c.elem(3, 2);
        let t = PadicElement::teichmuller(r, 4).unwrap();
        assert_eq!(padic_reduce(&t).unwrap(), r);
        // Teichmüller lifts are (p^2 - 1)-th roots of unity
        let one = PadicElement::from_integer(c, 1, 4);
        assert!(t.pow(24).unwrap().agrees_mod(&one, 4));
        assert_eq!(
            padic_reduce(&PadicElement::from_rational(
                c,
                &Q::new(1.into(), 5.into()),
                3
            )),
            Err(ArithError::NegativeValuation(-1))
        );
    }

    #[test]
    fn residual_examples() {
        let c = ctx(5);
        // p^2 (1 + 3p)
        let e = PadicElement::from_integer(c, 25 * 16, 6);
        let r = residual_of(&e).unwrap();
        assert_eq!((r.val(), r.res().coords()), (2, [1, 0]));
        let r3 = residual_of(&PadicElement::from_integer(c, 3, 4)).unwrap();
        assert_eq!((r3.val(), r3.res().coords()), (0, [3, 0]));
        // p * u with u = (2 + x) + 5(1 + x)
        let u = PadicElement::from_coords(c, &BigInt::from(7), &BigInt::from(6), 5);
        let pu = u.shift(1);
        let r = residual_of(&pu).unwrap();
        assert_eq!((r.val(), r.res().coords()), (1, [2, 1]));
        let z = PadicElement::from_integer(c, 125, 3);
        assert_eq!(
            residual_of(&z),
            Err(ArithError::IndistinguishableFromZero(3))
        );
    }

    #[test]
    fn field_operations() {
        let c = ctx(7);
        let x = PadicElement::from_coords(c, &BigInt::from(3), &BigInt::from(5), 8);
        let y = x.inv().unwrap();
        let one = PadicElement::from_integer(c, 1, 8);
        assert!(x.mul(&y).agrees_mod(&one, 8));
        let s = x.add(&x.neg());
        assert!(s.is_indistinguishable_from_zero());
        assert_eq!(s.absolute_precision(), 8);
        let q = PadicElement::from_rational(c, &Q::new(BigInt::from(49), BigInt::from(3)), 6);
        assert_eq!(q.valuation(), 2);
        assert_eq!(q.relative_precision(), 4);
        let three = PadicElement::from_integer(c, 3, 6);
        assert!(q
            .mul(&three)
            .agrees_mod(&PadicElement::from_integer(c, 49, 6), 6));
    }

    #[test]
    fn addition_cancellation_raises_valuation() {
        let c = ctx(5);
        let a = PadicElement::from_integer(c, 1 + 5 * 3, 6);
        let b = PadicElement::from_integer(c, 1, 4);
        let d = a.sub(&b);
        assert_eq!(d.valuation(), 1);
        assert_eq!(d.absolute_precision(), 4);
    }
}

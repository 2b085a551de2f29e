//! Exact arithmetic in `Q(ζ_12)`, which contains every `Q(ζ_m)` with
//! `m | 12`.
//!
//! Elements are stored in the power basis `1, ζ, ζ², ζ³` of `ζ = ζ_12`,
//! reduced by `Φ_12(x) = x⁴ - x² + 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::Q;

/// The conductors that can occur: `Q(ζ_m)` for `m | 12` (with `Q(ζ_2) = Q`
/// and `Q(ζ_6) = Q(ζ_3)`).
pub const CONDUCTORS: [u32; 6] = [1, 2, 3, 4, 6, 12];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclo {
    c: [Q; 4],
}

impl Cyclo {
    pub fn rational(q: Q) -> Self {
        Cyclo {
            c: [q, Q::zero(), Q::zero(), Q::zero()],
        }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Q::from_integer(BigInt::from(n)))
    }

    /// `ζ_12^k`.
    pub fn zeta12_pow(k: i64) -> Self {
        let k = k.rem_euclid(12) as usize;
        // ζ⁶ = -1
        let (k, sign) = if k >= 6 { (k - 6, -1) } else { (k, 1) };
        let mut c = [Q::zero(), Q::zero(), Q::zero(), Q::zero()];
        match k {
            0..=3 => c[k] = Q::from_integer(BigInt::from(sign)),
            // ζ⁴ = ζ² - 1
            4 => {
                c[2] = Q::from_integer(BigInt::from(sign));
                c[0] = Q::from_integer(BigInt::from(-sign));
            }
            // ζ⁵ = ζ³ - ζ
            _ => {
                c[3] = Q::from_integer(BigInt::from(sign));
                c[1] = Q::from_integer(BigInt::from(-sign));
            }
        }
        Cyclo { c }
    }

    /// `e^{2πi r}` for `r ∈ (1/12)Z`, `None` otherwise.
    pub fn root_of_unity(r: &Q) -> Option<Self> {
        let twelve = r * Q::from_integer(BigInt::from(12));
        if !twelve.is_integer() {
            return None;
        }
        let k = (twelve.to_integer() % BigInt::from(12))
            .to_string()
            .parse::<i64>()
            .ok()?;
        Some(Self::zeta12_pow(k))
    }

    pub fn coords(&self) -> &[Q; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.c[1..].iter().all(Zero::is_zero).then_some(&self.c[0])
    }

    /// The Galois automorphism `ζ ↦ ζ^k`, `k ∈ {1, 5, 7, 11}`.
    pub fn galois(&self, k: i64) -> Self {
        let mut out = Cyclo::zero();
        for (j, cj) in self.c.iter().enumerate() {
            if !cj.is_zero() {
                out = out + Cyclo::zeta12_pow(j as i64 * k).scale(cj);
            }
        }
        out
    }

    /// The least `m | 12` from [`CONDUCTORS`] with `self ∈ Q(ζ_m)`.
    pub fn conductor(&self) -> u32 {
        // fixed field of the automorphisms ζ ↦ ζ^k with k ≡ 1 mod m
        let fixed_by = |ks: &[i64]| ks.iter().all(|&k| self.galois(k) == *self);
        if fixed_by(&[5, 7, 11]) {
            1
        } else if fixed_by(&[7]) {
            3
        } else if fixed_by(&[5]) {
            4
        } else {
            12
        }
    }

    /// Coordinates in the power basis of `ζ_m` (of length `φ(m)`), if
    /// `self ∈ Q(ζ_m)`.
    pub fn coords_in(&self, m: u32) -> Option<Vec<Q>> {
        let c = &self.c;
        match m {
            1 | 2 => self.as_rational().map(|q| vec![q.clone()]),
            // ζ_3 = ζ⁴ = ζ² - 1, ζ_6 = ζ²
            3 if c[1].is_zero() && c[3].is_zero() => Some(vec![&c[0] + &c[2], c[2].clone()]),
            6 if c[1].is_zero() && c[3].is_zero() => Some(vec![c[0].clone(), c[2].clone()]),
            // i = ζ³
            4 if c[1].is_zero() && c[2].is_zero() => Some(vec![c[0].clone(), c[3].clone()]),
            12 => Some(c.to_vec()),
            _ => None,
        }
    }

    pub fn scale(&self, q: &Q) -> Self {
        Cyclo {
            c: [
                &self.c[0] * q,
                &self.c[1] * q,
                &self.c[2] * q,
                &self.c[3] * q,
            ],
        }
    }

    /// The field norm to `Q`.
    pub fn norm(&self) -> Q {
        let n = self * &self.galois(5) * self.galois(7) * self.galois(11);
        n.as_rational().expect("norm is rational").clone()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let conj = self.galois(5) * self.galois(7) * self.galois(11);
        let n = (self * &conj)
            .as_rational()
            .expect("norm is rational")
            .clone();
        Some(conj.scale(&n.recip()))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Cyclo::one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            n >>= 1;
        }
        Some(acc)
    }
}

impl Zero for Cyclo {
    fn zero() -> Self {
        Cyclo::rational(Q::zero())
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
}

impl One for Cyclo {
    fn one() -> Self {
        Cyclo::rational(Q::one())
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, o: Cyclo) -> Cyclo {
        &self + &o
    }
}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, o: &Cyclo) -> Cyclo {
        Cyclo {
            c: [
                &self.c[0] + &o.c[0],
                &self.c[1] + &o.c[1],
                &self.c[2] + &o.c[2],
                &self.c[3] + &o.c[3],
            ],
        }
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, o: &Cyclo) -> Cyclo {
        self + &(-o)
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, o: Cyclo) -> Cyclo {
        &self - &o
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]],
        }
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, o: &Cyclo) -> Cyclo {
        if let (Some(a), Some(b)) = (self.as_rational(), o.as_rational()) {
            return Cyclo::rational(a * b);
        }
        let mut t: [Q; 7] = Default::default();
        for i in 0..4 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if !o.c[j].is_zero() {
                    t[i + j] += &self.c[i] * &o.c[j];
                }
            }
        }
        // ζ⁶ = -1, ζ⁵ = ζ³ - ζ, ζ⁴ = ζ² - 1
        let [t0, t1, t2, t3, t4, t5, t6] = t;
        Cyclo {
            c: [t0 - &t4 - &t6, t1 - &t5, t2 + t4, t3 + t5],
        }
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, o: Cyclo) -> Cyclo {
        &self * &o
    }
}

impl Mul<Cyclo> for &Cyclo {
    type Output = Cyclo;
    fn mul(self, o: Cyclo) -> Cyclo {
        self * &o
    }
}

impl From<Q> for Cyclo {
    fn from(q: Q) -> Self {
        Cyclo::rational(q)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (j, cj) in self.c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let sign = if cj.is_negative() { "-" } else { "+" };
            if first {
                if cj.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = cj.abs();
            match (j, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "z12^{j}")?,
                (_, false) => write!(f, "{a}*z12^{j}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_has_order_twelve() {
        let z = Cyclo::zeta12_pow(1);
        assert!(z.pow(12).unwrap().is_one());
        assert!(!z.pow(6).unwrap().is_one());
        assert!(!z.pow(4).unwrap().is_one());
        assert_eq!(z.pow(6).unwrap(), Cyclo::int(-1));
        for k in -13..25 {
            assert_eq!(z.pow(k).unwrap(), Cyclo::zeta12_pow(k), "k={k}");
        }
    }

    #[test]
    fn conductors_of_roots_of_unity() {
        let expect = [1, 12, 6, 4, 3, 12, 2, 12, 3, 4, 6, 12];
        for (k, &m) in expect.iter().enumerate() {
            let m = if m == 2 {
                1
            } else if m == 6 {
                3
            } else {
                m
            };
            assert_eq!(Cyclo::zeta12_pow(k as i64).conductor(), m, "k={k}");
        }
        // ζ_3 in its own basis
        let z3 = Cyclo::zeta12_pow(4);
        assert_eq!(z3.coords_in(3).unwrap(), vec![Q::zero(), Q::one()]);
        let sum = &z3 + &z3.pow(2).unwrap();
        assert_eq!(sum, Cyclo::int(-1));
    }

    #[test]
    fn inverse_and_norm() {
        let x = &Cyclo::zeta12_pow(1) + &Cyclo::int(2);
        let y = x.inverse().unwrap();
        assert!((&x * &y).is_one());
        // N(2 + ζ) = Φ_12(-2) = 16 - 4 + 1
        assert_eq!(x.norm(), Q::from_integer(BigInt::from(13)));
    }
}

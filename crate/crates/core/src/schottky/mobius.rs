use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::SchottkyError;
use crate::arith::{p_adic_valuation, Q};

/// A point of `P^1(Q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum P1Point {
    Finite(Q),
    Infinity,
}

impl P1Point {
    pub fn int(n: i64) -> Self {
        P1Point::Finite(Q::from_integer(BigInt::from(n)))
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            P1Point::Finite(z) => Some(z),
            P1Point::Infinity => None,
        }
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(z) => write!(f, "{z}"),
            P1Point::Infinity => write!(f, "∞"),
        }
    }
}

impl From<Q> for P1Point {
    fn from(q: Q) -> Self {
        P1Point::Finite(q)
    }
}

/// `z -> (a z + b) / (c z + d)` with exact rational entries, up to scalar.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MobiusMap {
    a: Q,
    b: Q,
    c: Q,
    d: Q,
}

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

impl MobiusMap {
    pub fn new(a: Q, b: Q, c: Q, d: Q) -> Result<Self, SchottkyError> {
        let m = MobiusMap { a, b, c, d };
        if m.det().is_zero() {
            return Err(SchottkyError::SingularMatrix);
        }
        Ok(m)
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self, SchottkyError> {
        Self::new(q(a), q(b), q(c), q(d))
    }

    pub fn identity() -> Self {
        MobiusMap {
            a: Q::one(),
            b: Q::zero(),
            c: Q::zero(),
            d: Q::one(),
        }
    }

    pub fn diag(x: Q, y: Q) -> Result<Self, SchottkyError> {
        Self::new(x, Q::zero(), Q::zero(), y)
    }

    /// `[[a, b], [c, d]]`.
    pub fn entries(&self) -> [&Q; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> Q {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> Q {
        &self.a + &self.d
    }

    /// Matrix product `self · other`, i.e. the map `z -> self(other(z))`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    /// The adjugate, which represents the inverse in `PGL_2`.
    pub fn inverse(&self) -> MobiusMap {
        MobiusMap {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn pow(&self, n: i64) -> MobiusMap {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(MobiusMap::identity(), |acc, _| acc.compose(&base))
    }

    /// `h · self · h^{-1}`.
    pub fn conjugate_by(&self, h: &MobiusMap) -> MobiusMap {
        h.compose(self).compose(&h.inverse())
    }

    /// Equality in `PGL_2`.
    pub fn projectively_eq(&self, other: &MobiusMap) -> bool {
        let s = [&self.a, &self.b, &self.c, &self.d];
        let o = [&other.a, &other.b, &other.c, &other.d];
        (0..4).all(|i| (0..4).all(|j| s[i] * o[j] == s[j] * o[i]))
    }

    pub fn apply(&self, z: &P1Point) -> P1Point {
        match z {
            P1Point::Infinity => {
                if self.c.is_zero() {
                    P1Point::Infinity
                } else {
                    P1Point::Finite(&self.a / &self.c)
                }
            }
            P1Point::Finite(z) => {
                let den = &self.c * z + &self.d;
                if den.is_zero() {
                    P1Point::Infinity
                } else {
                    P1Point::Finite((&self.a * z + &self.b) / den)
                }
            }
        }
    }

    /// The point sent to `∞`.
    pub fn pole(&self) -> P1Point {
        if self.c.is_zero() {
            P1Point::Infinity
        } else {
            P1Point::Finite(-&self.d / &self.c)
        }
    }

    /// Whether `v_p(tr^2 / det) < 0`.
    pub fn is_hyperbolic(&self, p: u64) -> bool {
        let tr = self.trace();
        if tr.is_zero() {
            return false;
        }
        let vt = p_adic_valuation(&tr, p).unwrap();
        let vd = p_adic_valuation(&self.det(), p).unwrap();
        2 * vt - vd < 0
    }

    /// `|v(λ_1) - v(λ_2)| = v(det) - 2 v(tr)` for hyperbolic maps.
    pub fn translation_length(&self, p: u64) -> Result<i64, SchottkyError> {
        if !self.is_hyperbolic(p) {
            return Err(SchottkyError::NotHyperbolic(self.to_string()));
        }
        let vt = p_adic_valuation(&self.trace(), p).unwrap();
        let vd = p_adic_valuation(&self.det(), p).unwrap();
        Ok(vd - 2 * vt)
    }

    /// The two fixed points, when they are rational.
    pub fn fixed_points_if_rational(&self) -> Option<(P1Point, P1Point)> {
        // c z^2 + (d - a) z - b = 0
        if self.c.is_zero() {
            if self.a == self.d {
                return None;
            }
            let z = &self.b / (&self.d - &self.a);
            return Some((P1Point::Finite(z), P1Point::Infinity));
        }
        let disc = {
            let t = &self.d - &self.a;
            &t * &t + q(4) * &self.b * &self.c
        };
        let root = rational_sqrt(&disc)?;
        let two_c = q(2) * &self.c;
        let z1 = (&self.a - &self.d + &root) / &two_c;
        let z2 = (&self.a - &self.d - &root) / &two_c;
        Some((P1Point::Finite(z1), P1Point::Finite(z2)))
    }
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    use num_traits::Signed;
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Q::new(n, d))
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

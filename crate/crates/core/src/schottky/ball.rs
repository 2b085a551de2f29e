//! Discs in `P^1(K)`.
//!
//! `K` is unramified over `Q_p`, so its value group is `Z`: the open ball
//! `{v(z - c) > r}` is the closed ball `{v(z - c) >= floor(r) + 1}` and the
//! closed ball `{v(z - c) >= r}` is `{v(z - c) >= ceil(r)}`. Every ball is
//! therefore a closed ball with integer radius valuation, and the image of a
//! ball under a Möbius map is a ball or the complement of one.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::mobius::{MobiusMap, P1Point};
use super::SchottkyError;
use crate::arith::{p_adic_valuation, Q};

/// A ball `{v(z - center) >= r}` (closed) or `{v(z - center) > r}` (open),
/// i.e. of radius `p^{-r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ball {
    center: Q,
    radius_val: Q,
    closed: bool,
}

impl Ball {
    pub fn closed(center: Q, radius_val: Q) -> Self {
        Ball {
            center,
            radius_val,
            closed: true,
        }
    }

    pub fn open(center: Q, radius_val: Q) -> Self {
        Ball {
            center,
            radius_val,
            closed: false,
        }
    }

    /// Closed ball with integer data.
    pub fn closed_int(center: i64, radius_val: i64) -> Self {
        Ball::closed(
            Q::from_integer(center.into()),
            Q::from_integer(radius_val.into()),
        )
    }

    pub fn center(&self) -> &Q {
        &self.center
    }

    pub fn radius_val(&self) -> &Q {
        &self.radius_val
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// The least integer `r` with `self = {v(z - center) >= r}` over `K`.
    pub fn min_valuation(&self) -> i64 {
        let r = if self.closed {
            self.radius_val.ceil()
        } else {
            self.radius_val.floor() + Q::from_integer(BigInt::from(1))
        };
        i64::try_from(r.to_integer()).expect("radius fits in i64")
    }

    /// The same set as a closed ball with integer radius.
    pub fn normalized(&self) -> Ball {
        Ball::closed(
            self.center.clone(),
            Q::from_integer(self.min_valuation().into()),
        )
    }

    pub fn contains(&self, z: &P1Point, p: u64) -> bool {
        match z {
            P1Point::Infinity => false,
            P1Point::Finite(z) => match p_adic_valuation(&(z - &self.center), p) {
                None => true,
                Some(v) => v >= self.min_valuation(),
            },
        }
    }

    fn contains_center_of(&self, other: &Ball, p: u64) -> bool {
        self.contains(&P1Point::Finite(other.center.clone()), p)
    }

    pub fn same_set(&self, other: &Ball, p: u64) -> bool {
        self.min_valuation() == other.min_valuation() && self.contains_center_of(other, p)
    }

    pub fn is_subset(&self, other: &Ball, p: u64) -> bool {
        self.min_valuation() >= other.min_valuation() && other.contains_center_of(self, p)
    }

    /// Ultrametric intersection test: two balls meet iff one contains the
    /// other's center.
    pub fn is_disjoint(&self, other: &Ball, p: u64) -> bool {
        !self.contains_center_of(other, p) && !other.contains_center_of(self, p)
    }

    /// Canonical representative of the center: the unique `N / p^s` with
    /// `0 <= N < p^{r+s}` congruent to the center modulo `p^r`.
    pub fn canonical_center(&self, p: u64) -> Q {
        canonical_mod_power(&self.center, self.min_valuation(), p)
    }
}

/// The canonical representative of `x mod p^k Z_p` described in
/// [`Ball::canonical_center`].
pub(crate) fn canonical_mod_power(x: &Q, k: i64, p: u64) -> Q {
    let v = match p_adic_valuation(x, p) {
        None => return Q::zero(),
        Some(v) => v,
    };
    if v >= k {
        return Q::zero();
    }
    let s = (-v).max(0) as u32;
    let pb = BigInt::from(p);
    let m = pb.pow((k + s as i64) as u32);
    let scaled = x * Q::from_integer(pb.pow(s));
    let inv = crate::arith::inverse_mod(scaled.denom(), &m).expect("unit denominator");
    let n = (scaled.numer() * inv).mod_floor(&m);
    Q::new(n, pb.pow(s))
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = if self.closed {
            ("D(", "]")
        } else {
            ("D(", "[")
        };
        write!(f, "{l}{}, {}{r}", self.center, self.radius_val)
    }
}

/// A ball or the complement of a ball in `P^1(K)`; the complements are
/// exactly the balls around `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Disc {
    Ball(Ball),
    Complement(Ball),
}

impl Disc {
    pub fn contains(&self, z: &P1Point, p: u64) -> bool {
        match self {
            Disc::Ball(b) => b.contains(z, p),
            Disc::Complement(b) => !b.contains(z, p),
        }
    }

    pub fn complement(&self) -> Disc {
        match self {
            Disc::Ball(b) => Disc::Complement(b.clone()),
            Disc::Complement(b) => Disc::Ball(b.clone()),
        }
    }

    pub fn contains_infinity(&self) -> bool {
        matches!(self, Disc::Complement(_))
    }

    pub fn same_set(&self, other: &Disc, p: u64) -> bool {
        match (self, other) {
            (Disc::Ball(a), Disc::Ball(b)) | (Disc::Complement(a), Disc::Complement(b)) => {
                a.same_set(b, p)
            }
            _ => false,
        }
    }

    pub fn is_disjoint(&self, other: &Disc, p: u64) -> bool {
        match (self, other) {
            (Disc::Ball(a), Disc::Ball(b)) => a.is_disjoint(b, p),
            (Disc::Ball(a), Disc::Complement(b)) | (Disc::Complement(b), Disc::Ball(a)) => {
                a.is_subset(b, p)
            }
            (Disc::Complement(_), Disc::Complement(_)) => false,
        }
    }

    pub fn is_subset(&self, other: &Disc, p: u64) -> bool {
        match (self, other) {
            (Disc::Ball(a), Disc::Ball(b)) => a.is_subset(b, p),
            (Disc::Ball(a), Disc::Complement(b)) => a.is_disjoint(b, p),
            (Disc::Complement(_), Disc::Ball(_)) => false,
            (Disc::Complement(a), Disc::Complement(b)) => b.is_subset(a, p),
        }
    }

    fn normalized(&self) -> Disc {
        match self {
            Disc::Ball(b) => Disc::Ball(b.normalized()),
            Disc::Complement(b) => Disc::Complement(b.normalized()),
        }
    }

    fn map_ball(&self, f: impl Fn(&Ball) -> Ball) -> Disc {
        match self {
            Disc::Ball(b) => Disc::Ball(f(b)),
            Disc::Complement(b) => Disc::Complement(f(b)),
        }
    }
}

impl fmt::Display for Disc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Disc::Ball(b) => write!(f, "{b}"),
            Disc::Complement(b) => write!(f, "P1 - {b}"),
        }
    }
}

fn int_q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn translate(d: &Disc, t: &Q) -> Disc {
    d.map_ball(|b| Ball::closed(b.center() + t, b.radius_val().clone()))
}

fn scale(d: &Disc, k: &Q, p: u64) -> Disc {
    let vk = p_adic_valuation(k, p).expect("nonzero scale");
    d.map_ball(|b| Ball::closed(b.center() * k, b.radius_val() + int_q(vk)))
}

/// Image under `z -> 1/z` of a normalized disc.
fn invert(d: &Disc, p: u64) -> Disc {
    let (b, complemented) = match d {
        Disc::Ball(b) => (b, false),
        Disc::Complement(b) => (b, true),
    };
    let r = b.min_valuation();
    let image_of_ball = if b.contains(&P1Point::int(0), p) {
        // D(0, r] -> {v(w) <= -r} ∪ {∞} = P1 - D(0, 1 - r]
        Disc::Complement(Ball::closed_int(0, 1 - r))
    } else {
        // every z in the ball has v(z) = v(c), and |1/z - 1/c| = |z - c| / |z c|
        let e = p_adic_valuation(b.center(), p).unwrap();
        Disc::Ball(Ball::closed(b.center().recip(), int_q(r - 2 * e)))
    };
    if complemented {
        image_of_ball.complement()
    } else {
        image_of_ball
    }
}

/// Exact image of a disc under a Möbius map, as a normalized disc.
///
/// A map with `c != 0` factors as
/// `z -> a/c - (det/c^2) / (z + d/c)`, and each factor has a closed-form
/// action on discs.
pub fn mobius_image_of_ball(m: &MobiusMap, disc: &Disc, p: u64) -> Result<Disc, SchottkyError> {
    let [a, b, c, d] = m.entries();
    let det = m.det();
    if det.is_zero() {
        return Err(SchottkyError::SingularMatrix);
    }
    let disc = disc.normalized();
    if c.is_zero() {
        let k = a / d;
        let t = b / d;
        return Ok(translate(&scale(&disc, &k, p), &t));
    }
    let step = translate(&disc, &(d / c));
    let step = invert(&step, p);
    let step = scale(&step, &(-(&det) / (c * c)), p);
    Ok(translate(&step, &(a / c)))
}

//! Vertices of the Bruhat-Tits tree of `PGL_2(Q_p)` as homothety classes of
//! lattices.
//!
//! Every class has a unique representative spanned by the columns of
//! `[[p^k, y], [0, 1]]` with `y` the canonical representative of a class in
//! `Q_p / p^k Z_p`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ball::canonical_mod_power;
use super::mobius::MobiusMap;
use crate::arith::{p_adic_valuation, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeVertex {
    k: i64,
    y: Q,
}

fn p_pow(p: u64, e: i64) -> Q {
    let b = Q::from_integer(BigInt::from(p).pow(e.unsigned_abs() as u32));
    if e >= 0 {
        b
    } else {
        b.recip()
    }
}

fn val(x: &Q, p: u64) -> Option<i64> {
    p_adic_valuation(x, p)
}

/// `x / p^{v(x)}`.
fn unit_part(x: &Q, p: u64) -> Q {
    x * p_pow(p, -val(x, p).unwrap())
}

impl TreeVertex {
    /// The class of the standard lattice `Z_p^2`.
    pub fn standard() -> Self {
        TreeVertex { k: 0, y: Q::zero() }
    }

    /// The class of the lattice spanned by the columns of `m`.
    pub fn from_matrix(m: &MobiusMap, p: u64) -> Self {
        let [a, b, c, d] = m.entries();
        let (mut c1, mut c2) = ([a.clone(), c.clone()], [b.clone(), d.clone()]);
        // pivot on the bottom entry of least valuation
        let vc = val(&c1[1], p);
        let vd = val(&c2[1], p);
        let swap = match (vc, vd) {
            (Some(_), None) => true,
            (Some(x), Some(y)) => x < y,
            _ => false,
        };
        if swap {
            std::mem::swap(&mut c1, &mut c2);
        }
        let t = &c1[1] / &c2[1];
        c1 = [&c1[0] - &t * &c2[0], Q::zero()];
        // now [[x1, x2], [0, x4]]; column 1 is p^alpha up to a unit
        let u4 = unit_part(&c2[1], p);
        let alpha = val(&c1[0], p).unwrap();
        let beta = val(&c2[1], p).unwrap();
        let x2 = &c2[0] / &u4;
        let k = alpha - beta;
        let y = canonical_mod_power(&(x2 * p_pow(p, -beta)), k, p);
        TreeVertex { k, y }
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn y(&self) -> &Q {
        &self.y
    }

    /// The representative basis `[[p^k, y], [0, 1]]`.
    pub fn matrix(&self, p: u64) -> MobiusMap {
        MobiusMap::new(p_pow(p, self.k), self.y.clone(), Q::zero(), Q::one()).expect("invertible")
    }

    /// `[g L]`.
    pub fn act(&self, g: &MobiusMap, p: u64) -> TreeVertex {
        TreeVertex::from_matrix(&g.compose(&self.matrix(p)), p)
    }

    /// The `p + 1` adjacent vertices.
    pub fn neighbors(&self, p: u64) -> Vec<TreeVertex> {
        let m = self.matrix(p);
        let mut out: Vec<TreeVertex> = (0..p as i64)
            .map(|j| {
                let step = MobiusMap::from_ints(p as i64, j, 0, 1).unwrap();
                TreeVertex::from_matrix(&m.compose(&step), p)
            })
            .collect();
        let up = MobiusMap::from_ints(1, 0, 0, p as i64).unwrap();
        out.push(TreeVertex::from_matrix(&m.compose(&up), p));
        out
    }

    /// All vertices within distance `radius`, in breadth-first order.
    pub fn ball(&self, radius: usize, p: u64) -> Vec<TreeVertex> {
        let mut seen = BTreeSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::from([(self.clone(), 0usize)]);
        seen.insert(self.clone());
        while let Some((v, d)) = queue.pop_front() {
            order.push(v.clone());
            if d == radius {
                continue;
            }
            for w in v.neighbors(p) {
                if seen.insert(w.clone()) {
                    queue.push_back((w, d + 1));
                }
            }
        }
        order
    }
}

impl fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[p^{}, {}; 0, 1]", self.k, self.y)
    }
}

/// `d(u, v) = v(d_2) - v(d_1)` for the elementary divisors `d_1 | d_2` of the
/// basis change between representatives.
pub fn tree_distance(u: &TreeVertex, v: &TreeVertex, p: u64) -> i64 {
    let change = u.matrix(p).inverse().compose(&v.matrix(p));
    let vdet = val(&change.det(), p).unwrap();
    let vmin = change
        .entries()
        .iter()
        .filter_map(|e| val(e, p))
        .min()
        .unwrap();
    vdet - 2 * vmin
}

/// `min d(v, g v)` over the vertices within `radius` of the standard vertex.
pub fn min_displacement(g: &MobiusMap, radius: usize, p: u64) -> i64 {
    TreeVertex::standard()
        .ball(radius, p)
        .iter()
        .map(|v| tree_distance(v, &v.act(g, p), p))
        .min()
        .unwrap()
}

use std::fmt;

use super::fp2::{Fp2, Fp2Context};

/// Dense polynomial over `F_p`, coefficients in ascending degree order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Views the polynomial inside `F_{p^2}[x]`.
    pub fn to_fp2(&self, ctx: Fp2Context) -> Fp2Poly {
        assert_eq!(ctx.p(), self.p);
        Fp2Poly::new(ctx, self.coeffs.iter().map(|&c| ctx.from_fp(c)).collect())
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "λ")?,
                (1, c) => write!(f, "{c}λ")?,
                (i, 1) => write!(f, "λ^{i}")?,
                (i, c) => write!(f, "{c}λ^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Dense polynomial over `F_{p^2}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fp2Poly {
    ctx: Fp2Context,
    coeffs: Vec<Fp2>,
}

impl Fp2Poly {
    pub fn new(ctx: Fp2Context, mut coeffs: Vec<Fp2>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Fp2Poly { ctx, coeffs }
    }

    pub fn zero(ctx: Fp2Context) -> Self {
        Fp2Poly {
            ctx,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: Fp2Context) -> Self {
        Fp2Poly::new(ctx, vec![ctx.one()])
    }

    /// `x - r`
    pub fn linear(root: Fp2) -> Self {
        let ctx = root.ctx();
        Fp2Poly::new(ctx, vec![-root, ctx.one()])
    }

    pub fn x(ctx: Fp2Context) -> Self {
        Fp2Poly::new(ctx, vec![ctx.zero(), ctx.one()])
    }

    pub fn coeffs(&self) -> &[Fp2] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Fp2> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, at: Fp2) -> Fp2 {
        self.coeffs
            .iter()
            .rev()
            .fold(self.ctx.zero(), |acc, &c| acc * at + c)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().unwrap();
                Fp2Poly::new(self.ctx, self.coeffs.iter().map(|&c| c * inv).collect())
            }
        }
    }

    pub fn add(&self, other: &Fp2Poly) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = self.ctx.zero();
        let coeffs = (0..n)
            .map(|i| *self.coeffs.get(i).unwrap_or(&zero) + *other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Fp2Poly::new(self.ctx, coeffs)
    }

    pub fn sub(&self, other: &Fp2Poly) -> Self {
        let neg = Fp2Poly::new(other.ctx, other.coeffs.iter().map(|&c| -c).collect());
        self.add(&neg)
    }

    pub fn mul(&self, other: &Fp2Poly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Fp2Poly::zero(self.ctx);
        }
        // Accumulate unreduced coordinate products and reduce once per
        // output coefficient; products are < 2^62 and at most 2^31 terms
        // meet, so u128 never overflows.
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut aa = vec![0u128; len];
        let mut bb = vec![0u128; len];
        let mut cross = vec![0u128; len];
        for (i, x) in self.coeffs.iter().enumerate() {
            let (xa, xb) = (x.a(), x.b());
            if xa == 0 && xb == 0 {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                let (ya, yb) = (y.a(), y.b());
                aa[i + j] += (xa * ya) as u128;
                bb[i + j] += (xb * yb) as u128;
                cross[i + j] += (xa * yb + xb * ya) as u128;
            }
        }
        let p = self.ctx.p() as u128;
        let n = self.ctx.nonresidue() as u128;
        let out = (0..len)
            .map(|k| {
                let a = (aa[k] % p + n * (bb[k] % p)) % p;
                Fp2::from_reduced(self.ctx, a as u64, (cross[k] % p) as u64)
            })
            .collect();
        Fp2Poly::new(self.ctx, out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Fp2Poly) -> (Fp2Poly, Fp2Poly) {
        let dl = divisor.leading().expect("division by zero polynomial");
        let dl_inv = dl.inv().unwrap();
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Fp2Poly::zero(self.ctx), self.clone());
        }
        let ctx = self.ctx;
        let p = ctx.p();
        let n = ctx.nonresidue();
        // -d as (a, b, n*b) so that c * (-d) needs no further reduction
        let neg: Vec<(u64, u64, u64)> = divisor
            .coeffs
            .iter()
            .map(|&d| {
                let e = -d;
                (e.a(), e.b(), n * e.b() % p)
            })
            .collect();
        let mut ra: Vec<u128> = self.coeffs.iter().map(|c| c.a() as u128).collect();
        let mut rb: Vec<u128> = self.coeffs.iter().map(|c| c.b() as u128).collect();
        let pp = p as u128;
        let mut quot = vec![ctx.zero(); self.coeffs.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = Fp2::from_reduced(ctx, (ra[k + dd] % pp) as u64, (rb[k + dd] % pp) as u64);
            let c = top * dl_inv;
            quot[k] = c;
            if c.is_zero() {
                continue;
            }
            let (ca, cb) = (c.a(), c.b());
            for (j, &(da, db, ndb)) in neg.iter().enumerate() {
                ra[k + j] += (ca * da + cb * ndb) as u128;
                rb[k + j] += (ca * db + cb * da) as u128;
            }
        }
        let rem = (0..dd)
            .map(|i| Fp2::from_reduced(ctx, (ra[i] % pp) as u64, (rb[i] % pp) as u64))
            .collect();
        (Fp2Poly::new(ctx, quot), Fp2Poly::new(ctx, rem))
    }

    pub fn rem(&self, divisor: &Fp2Poly) -> Fp2Poly {
        self.divrem(divisor).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Fp2Poly) -> Fp2Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, mut exp: u128, modulus: &Fp2Poly) -> Fp2Poly {
        let mut acc = Fp2Poly::one(self.ctx).rem(modulus);
        let mut base = self.rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    /// All distinct roots in `F_{p^2}`, in canonical order.
    ///
    /// The part of `self` that splits into distinct linear factors is
    /// `gcd(self, x^(p^2) - x)`; it is split by Cantor-Zassenhaus with the
    /// shifts `x + c` taken deterministically in canonical order of `c`.
    pub fn roots(&self) -> Vec<Fp2> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let q = self.ctx.order();
        let x = Fp2Poly::x(self.ctx);
        let frob = x.pow_mod(q, &f);
        let split = f.gcd(&frob.sub(&x));
        let mut roots = Vec::new();
        split_linear(&split, &mut roots);
        roots.sort();
        roots
    }
}

fn split_linear(f: &Fp2Poly, out: &mut Vec<Fp2>) {
    let ctx = f.ctx;
    match f.degree() {
        None | Some(0) => {}
        Some(1) => {
            let m = f.monic();
            out.push(-m.coeffs[0]);
        }
        Some(_) => {
            let half = (ctx.order() - 1) / 2;
            for shift in ctx.elements() {
                let probe = Fp2Poly::new(ctx, vec![shift, ctx.one()]);
                let h = probe.pow_mod(half, f).sub(&Fp2Poly::one(ctx));
                let g = f.gcd(&h);
                let dg = g.degree().unwrap_or(0);
                if dg > 0 && dg < f.degree().unwrap() {
                    let (cofactor, _) = f.divrem(&g);
                    split_linear(&g, out);
                    split_linear(&cofactor, out);
                    return;
                }
            }
            unreachable!("a product of distinct linear factors always splits");
        }
    }
}

//! A small rewriting engine for products of `Δ(g z)` factors, automorphy
//! factors `(αz + β)^k` and rational constants.
//!
//! Only two rules are used: `Δ(w + 1) = Δ(w)` and `Δ(-1/w) = w^12 Δ(w)`.
//! Left multiplication by `T^{-n}` followed by `S^{-1}` runs the Euclidean
//! algorithm on the first column of `g`, so every `Δ(g z)` reaches an
//! affine argument `Δ(a z + b)` with `0 ≤ b < 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::eta::{check_prime, pow_q};
use super::QSeriesError;
use crate::arith::{eisenstein_d, p_adic_valuation, Q};
use crate::schottky::MobiusMap;

fn qpow(x: &Q, k: i64) -> Q {
    let b = num_traits::pow(x.clone(), k.unsigned_abs() as usize);
    if k >= 0 {
        b
    } else {
        b.recip()
    }
}

fn entries(m: &MobiusMap) -> [Q; 4] {
    let [a, b, c, d] = m.entries();
    [a.clone(), b.clone(), c.clone(), d.clone()]
}

/// `(az + b)/(cz + d)` as text.
fn show_arg(g: &[Q; 4]) -> String {
    let lin = |x: &Q, y: &Q| -> String {
        match (x.is_zero(), y.is_zero()) {
            (true, _) => format!("{y}"),
            (false, true) if x.is_one() => "z".into(),
            (false, true) => format!("{x}z"),
            (false, false) if x.is_one() => format!("z + {y}"),
            (false, false) => format!("{x}z + {y}"),
        }
    };
    let [a, b, c, d] = g;
    if c.is_zero() {
        lin(&(a / d), &(b / d))
    } else {
        format!("({})/({})", lin(a, b), lin(c, d))
    }
}

/// `c · ∏ (α_i z + β_i)^{k_i} · ∏ Δ(g_j z)^{e_j}`.
#[derive(Clone, Debug, Default)]
pub struct ModularSymbolTerm {
    constant: Q,
    automorphy: Vec<(Q, Q, i64)>,
    deltas: Vec<([Q; 4], i64)>,
}

impl ModularSymbolTerm {
    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        ModularSymbolTerm {
            constant: c,
            ..Default::default()
        }
    }

    /// `Δ(g z)^e`.
    pub fn delta(g: &MobiusMap, e: i64) -> Self {
        ModularSymbolTerm {
            constant: Q::one(),
            automorphy: Vec::new(),
            deltas: vec![(entries(g), e)],
        }
    }

    /// `(αz + β)^k`.
    pub fn automorphy(alpha: Q, beta: Q, k: i64) -> Self {
        ModularSymbolTerm {
            constant: Q::one(),
            automorphy: vec![(alpha, beta, k)],
            deltas: Vec::new(),
        }
    }

    /// `u(g z)^d = Δ(p g z) / Δ(g z)`.
    pub fn u_power_d(p: u64, g: &MobiusMap) -> Self {
        let scale = MobiusMap::from_ints(p as i64, 0, 0, 1).expect("invertible");
        Self::delta(&scale.compose(g), 1).mul(&Self::delta(g, -1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant *= &other.constant;
        out.automorphy.extend(other.automorphy.iter().cloned());
        out.deltas.extend(other.deltas.iter().cloned());
        out
    }

    pub fn pow(&self, e: i64) -> Self {
        ModularSymbolTerm {
            constant: qpow(&self.constant, e),
            automorphy: self
                .automorphy
                .iter()
                .map(|(a, b, k)| (a.clone(), b.clone(), k * e))
                .collect(),
            deltas: self
                .deltas
                .iter()
                .map(|(g, k)| (g.clone(), k * e))
                .collect(),
        }
    }

    /// Rewrites to the normal form, recording every rule application.
    pub fn normal_form(&self, trace: &mut Vec<String>) -> NormalForm {
        let mut nf = NormalForm {
            constant: self.constant.clone(),
            ..Default::default()
        };
        for (a, b, k) in &self.automorphy {
            nf.absorb_linear(a, b, *k);
        }
        for (g, e) in &self.deltas {
            reduce_delta(g.clone(), *e, &mut nf, trace);
        }
        nf.linear.retain(|_, k| *k != 0);
        nf.deltas.retain(|_, k| *k != 0);
        nf
    }
}

/// `c · ∏ (z + β)^k · ∏ Δ(a z + b)^e` with `0 ≤ b < 1`. Factors `(0·z + β)^k`
/// are absorbed into the constant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalForm {
    pub constant: Q,
    pub linear: BTreeMap<Q, i64>,
    pub deltas: BTreeMap<(Q, Q), i64>,
}

impl NormalForm {
    fn absorb_linear(&mut self, alpha: &Q, beta: &Q, k: i64) {
        if alpha.is_zero() {
            self.constant *= qpow(beta, k);
        } else {
            self.constant *= qpow(alpha, k);
            *self.linear.entry(beta / alpha).or_insert(0) += k;
        }
    }

    /// True for a bare constant.
    pub fn is_constant(&self) -> bool {
        self.linear.is_empty() && self.deltas.is_empty()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (b, k) in &self.linear {
            let g = [Q::one(), b.clone(), Q::zero(), Q::one()];
            write!(f, " * ({})^{k}", show_arg(&g))?;
        }
        for ((a, b), e) in &self.deltas {
            let g = [a.clone(), b.clone(), Q::zero(), Q::one()];
            write!(f, " * D({})^{e}", show_arg(&g))?;
        }
        Ok(())
    }
}

fn reduce_delta(mut g: [Q; 4], e: i64, nf: &mut NormalForm, trace: &mut Vec<String>) {
    loop {
        let [a, b, c, d] = g.clone();
        if c.is_zero() {
            let alpha = &a / &d;
            let beta = &b / &d;
            let reduced = &beta - beta.floor();
            if reduced != beta {
                trace.push(format!(
                    "T: D({}) = D({})",
                    show_arg(&g),
                    show_arg(&[alpha.clone(), reduced.clone(), Q::zero(), Q::one()])
                ));
            }
            *nf.deltas.entry((alpha, reduced)).or_insert(0) += e;
            return;
        }
        let n = (&a / &c).floor();
        if !n.is_zero() {
            let g2 = [&a - &n * &c, &b - &n * &d, c.clone(), d.clone()];
            trace.push(format!("T: D({}) = D({})", show_arg(&g), show_arg(&g2)));
            g = g2;
            continue;
        }
        // g = S h with h = [[c, d], [-a, -b]]; Δ(g z) = (h z)^12 Δ(h z)
        let h = [c.clone(), d.clone(), -&a, -&b];
        trace.push(format!(
            "S: D({}) = ({})^12 * D({})",
            show_arg(&g),
            show_arg(&h),
            show_arg(&h)
        ));
        nf.absorb_linear(&c, &d, 12 * e);
        nf.absorb_linear(&-&a, &-&b, -12 * e);
        g = h;
    }
}

/// The outcome of comparing two sides of a functional equation.
#[derive(Clone, Debug)]
pub struct FunctionalEquationCertificate {
    pub p: u64,
    pub d: u64,
    /// The product of both sides reduces to `p^k`; this is `k`.
    pub p_power: i64,
    /// The identity holds with the constant `p^{p_exponent}`.
    pub p_exponent: Q,
    pub lhs: NormalForm,
    pub rhs: NormalForm,
    pub trace: Vec<String>,
}

impl FunctionalEquationCertificate {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn atkin_lehner(p: u64) -> MobiusMap {
    MobiusMap::from_ints(0, -1, p as i64, 0).expect("invertible")
}

/// Reads off `k` from a normal form that is the bare constant `±p^k`.
fn constant_p_power(nf: &NormalForm, p: u64) -> Result<i64, QSeriesError> {
    if !nf.is_constant() {
        return Err(QSeriesError::Rewrite(format!("not a constant: {nf}")));
    }
    let k = p_adic_valuation(&nf.constant, p)
        .ok_or_else(|| QSeriesError::Rewrite("zero constant".into()))?;
    if nf.constant != pow_q(p, k) {
        return Err(QSeriesError::Rewrite(format!(
            "{} is not a power of {p}",
            nf.constant
        )));
    }
    Ok(k)
}

/// Certifies `u ∘ w_p = p^{-12/d} u^{-1}` at the level of `d`-th powers:
/// `u(-1/(pz))^d · u(z)^d` reduces to the constant `p^{-12}`, and
/// `u(-1/(pz))^d` and `p^{-12} u(z)^{-d}` have equal normal forms.
pub fn verify_functional_equation_u(p: u64) -> Result<FunctionalEquationCertificate, QSeriesError> {
    check_prime(p)?;
    let d = eisenstein_d(p);
    let id = MobiusMap::identity();
    let lhs_term = ModularSymbolTerm::u_power_d(p, &atkin_lehner(p));
    let mut trace = Vec::new();
    let product = lhs_term
        .mul(&ModularSymbolTerm::u_power_d(p, &id))
        .normal_form(&mut trace);
    let k = constant_p_power(&product, p)?;
    let lhs = lhs_term.normal_form(&mut Vec::new());
    let rhs = ModularSymbolTerm::constant(pow_q(p, k))
        .mul(&ModularSymbolTerm::u_power_d(p, &id).pow(-1))
        .normal_form(&mut Vec::new());
    Ok(FunctionalEquationCertificate {
        p,
        d,
        p_power: k,
        p_exponent: Q::new(BigInt::from(k), BigInt::from(d)),
        lhs,
        rhs,
        trace,
    })
}

/// Certifies `μ ∘ w_p = p^{-12/d} μ^{-1}` at the level of `d`-th powers.
///
/// `μ^d = u^d(π' z)^2 / u^d(z)` with `π'(z) = (z+1)/2`. The degree-2 map
/// commutes with `w_p` (an axiom taken from the moduli description), so
/// `μ^d ∘ w_p = u^d(w_p π' z)^2 / u^d(w_p z)`, and `w_p` acts on `X_0(p)`
/// as `z ↦ -1/(pz)`.
pub fn verify_functional_equation_mu(
    p: u64,
) -> Result<FunctionalEquationCertificate, QSeriesError> {
    check_prime(p)?;
    let d = eisenstein_d(p);
    let pi2 = MobiusMap::from_ints(1, 1, 0, 2).expect("invertible");
    let id = MobiusMap::identity();
    let w = atkin_lehner(p);
    let mu = |g: &MobiusMap, h: &MobiusMap| {
        ModularSymbolTerm::u_power_d(p, g)
            .pow(2)
            .mul(&ModularSymbolTerm::u_power_d(p, h).pow(-1))
    };
    let mut trace = vec![format!(
        "axiom: (z+1)/2 commutes with w_p, so mu^d(w_p z) = u^d(-1/(p(z+1)/2))^2 / u^d(-1/({p}z))"
    )];
    let mu_w = mu(&w.compose(&pi2), &w);
    let mu_z = mu(&pi2, &id);
    let product = mu_w.mul(&mu_z).normal_form(&mut trace);
    let k = constant_p_power(&product, p)?;
    let lhs = mu_w.normal_form(&mut Vec::new());
    let rhs = ModularSymbolTerm::constant(pow_q(p, k))
        .mul(&mu_z.pow(-1))
        .normal_form(&mut Vec::new());
    Ok(FunctionalEquationCertificate {
        p,
        d,
        p_power: k,
        p_exponent: Q::new(BigInt::from(k), BigInt::from(d)),
        lhs,
        rhs,
        trace,
    })
}

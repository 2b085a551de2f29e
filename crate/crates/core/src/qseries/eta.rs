//! Eta quotients and the modular functions built from them: `η`, `Δ`, `λ`,
//! `u`, `μ`, `H` and `μ₃`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cyclo::Cyclo;
use super::rewrite::verify_functional_equation_u;
use super::series::{QExpansion, Variable};
use super::QSeriesError;
use crate::arith::{eisenstein_d, is_prime, Q};

fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn check_prime(p: u64) -> Result<(), QSeriesError> {
    if p < 5 || !is_prime(p) {
        return Err(QSeriesError::InvalidPrime(p));
    }
    Ok(())
}

/// `∏_{n≥1} (1 - x^n)` to `O(x^len)` from the pentagonal number theorem.
pub fn euler_product(len: usize) -> Vec<i64> {
    let mut out = vec![0i64; len];
    if len > 0 {
        out[0] = 1;
    }
    for k in 1i64.. {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let e1 = (k * (3 * k - 1) / 2) as usize;
        let e2 = (k * (3 * k + 1) / 2) as usize;
        if e1 >= len {
            break;
        }
        out[e1] += sign;
        if e2 < len {
            out[e2] += sign;
        }
    }
    out
}

/// `c · ∏ η(s·z)^e` over the listed `(s, e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    factors: Vec<(Q, i64)>,
    constant: Q,
}

impl EtaQuotient {
    pub fn new(factors: Vec<(Q, i64)>, constant: Q) -> Self {
        assert!(factors.iter().all(|(s, _)| *s > Q::zero()));
        EtaQuotient { factors, constant }
    }

    pub fn eta() -> Self {
        Self::new(vec![(Q::one(), 1)], Q::one())
    }

    pub fn factors(&self) -> &[(Q, i64)] {
        &self.factors
    }

    pub fn constant(&self) -> &Q {
        &self.constant
    }

    /// The exponent of the leading monomial in the variable `var`:
    /// `Σ e·s / (24·scale)`.
    pub fn leading_exponent(&self, var: &Variable) -> Q {
        self.factors
            .iter()
            .map(|(s, e)| s * q_int(*e) / (q_int(24) * var.scale()))
            .fold(Q::zero(), |a, b| a + b)
    }

    /// Expansion in `var`, known to `order` terms past the leading monomial.
    ///
    /// `η(s z) = t^{s/(24 v)} ∏ (1 - t^{n s / v})` for `t = e^{2πi v z}`.
    pub fn expansion(&self, var: &Variable, order: usize) -> QExpansion {
        let ratios: Vec<Q> = self.factors.iter().map(|(s, _)| s / var.scale()).collect();
        let denom = ratios
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let denom: u32 = denom.to_string().parse().expect("small denominator");
        let len = order * denom as usize;
        let mut acc = QExpansion::new(
            var.clone(),
            Q::zero(),
            denom,
            std::iter::once(Cyclo::rational(self.constant.clone()))
                .chain(std::iter::repeat(Cyclo::zero()).take(len.saturating_sub(1)))
                .collect(),
        );
        for (r, (_, e)) in ratios.iter().zip(&self.factors) {
            let m: usize = (r * q_int(denom as i64))
                .to_integer()
                .to_string()
                .parse()
                .expect("small stride");
            let base = euler_product(len.div_ceil(m));
            let mut coeffs = vec![Cyclo::zero(); len];
            for (k, c) in base.iter().enumerate() {
                if *c != 0 && k * m < len {
                    coeffs[k * m] = Cyclo::int(*c);
                }
            }
            let f = QExpansion::new(var.clone(), Q::zero(), denom, coeffs);
            acc = acc
                .mul(&f.pow(*e).expect("unit leading term"))
                .expect("same variable");
        }
        acc.shifted(&self.leading_exponent(var))
    }
}

/// `η(z) = q^{1/24} ∏ (1 - q^n)` in `q = e^{2πiz}`, to `order` terms.
pub fn eta_expansion(order: usize) -> QExpansion {
    EtaQuotient::eta().expansion(&Variable::q(), order)
}

/// `Δ = η^24`.
pub fn delta_expansion(order: usize) -> QExpansion {
    EtaQuotient::new(vec![(Q::one(), 24)], Q::one()).expansion(&Variable::q(), order)
}

/// `λ(z) = 16 q ∏ ((1 + q^{2n}) / (1 + q^{2n-1}))^8` in `q = e^{iπz}`, to
/// `order` terms past the leading `16q`.
pub fn lambda_expansion(order: usize) -> QExpansion {
    let var = Variable::q_over(2);
    let mut num = vec![Cyclo::zero(); order];
    let mut den = vec![Cyclo::zero(); order];
    if order > 0 {
        num[0] = Cyclo::one();
        den[0] = Cyclo::one();
    }
    let mut num = QExpansion::new(var.clone(), Q::zero(), 1, num);
    let mut den = QExpansion::new(var.clone(), Q::zero(), 1, den);
    for k in 1..order {
        // 1 + q^k goes to the numerator for even k
        let mut f = vec![Cyclo::zero(); order];
        f[0] = Cyclo::one();
        f[k] = Cyclo::one();
        let f = QExpansion::new(var.clone(), Q::zero(), 1, f);
        if k % 2 == 0 {
            num = num.mul(&f).expect("same variable");
        } else {
            den = den.mul(&f).expect("same variable");
        }
    }
    let ratio = num.div(&den).expect("unit").pow(8).expect("unit");
    ratio.scale(&Cyclo::int(16)).shifted(&Q::one())
}

/// `16 η(z/2)^8 η(2z)^16 / η(z)^24`.
pub fn lambda_eta_quotient() -> EtaQuotient {
    EtaQuotient::new(
        vec![(q_frac(1, 2), 8), (q_int(2), 16), (Q::one(), -24)],
        q_int(16),
    )
}

/// `(Δ(pz)/Δ(z))^{1/d} = η(pz)^{24/d} η(z)^{-24/d}`.
pub fn u_eta_quotient(p: u64) -> EtaQuotient {
    let e = 24 / eisenstein_d(p) as i64;
    EtaQuotient::new(vec![(q_int(p as i64), e), (Q::one(), -e)], Q::one())
}

/// `u(z) = (Δ(pz)/Δ(z))^{1/d}` in `q = e^{2πiz}`, as the principal `d`-th
/// root, to `order` terms.
pub fn u_expansion(p: u64, order: usize) -> Result<QExpansion, QSeriesError> {
    check_prime(p)?;
    let d = eisenstein_d(p) as u32;
    let delta = EtaQuotient::new(vec![(Q::one(), 24)], Q::one());
    let delta_p = EtaQuotient::new(vec![(q_int(p as i64), 24)], Q::one());
    let q = Variable::q();
    let ratio = delta_p
        .expansion(&q, order)
        .div(&delta.expansion(&q, order))?;
    ratio.root(d)
}

/// `μ(z) = u((z+1)/2)^2 / u(z)` in `t = e^{iπz}`, to `order` terms.
pub fn mu_expansion(p: u64, order: usize) -> Result<QExpansion, QSeriesError> {
    let u = u_expansion(p, order)?;
    let half = q_frac(1, 2);
    let top = u.compose_linear(&half, &half)?.change_variable(&half);
    let bottom = u.change_variable(&half);
    top.pow(2)?.div(&bottom)
}

/// `H(z) = (η(w/3) / η(3w))^3` for the rotated argument `w = z/(1-z)`,
/// expanded in `s = e^{2πi w/3}`.
pub fn h3_expansion(order: usize) -> QExpansion {
    let var = Variable::new("z/(1-z)", q_frac(1, 3));
    EtaQuotient::new(vec![(q_frac(1, 3), 3), (q_int(3), -3)], Q::one()).expansion(&var, order)
}

/// `μ₃(z) = u((z+2)/3)^3 / u(z)` in `t = e^{2πiz/3}`, to `order` terms.
///
/// The coefficients lie in `Q(ζ_3)`; `allowed_conductor` is the largest
/// field the caller accepts (`1` for `Q`).
pub fn mu3_expansion(
    p: u64,
    order: usize,
    allowed_conductor: u32,
) -> Result<QExpansion, QSeriesError> {
    let u = u_expansion(p, order)?;
    let third = q_frac(1, 3);
    let top = u
        .compose_linear(&third, &q_frac(2, 3))?
        .change_variable(&third);
    let bottom = u.change_variable(&third);
    let mu = top.pow(3)?.div(&bottom)?;
    let needed = mu.conductor();
    if allowed_conductor % needed != 0 {
        return Err(QSeriesError::FieldTooSmall {
            needed,
            allowed: allowed_conductor,
        });
    }
    Ok(mu)
}

/// Leading term of `μ` at the cusp `1`, in the local parameter
/// `q_1 = e^{iπ/(p(1-z))}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierMuLeading {
    pub p: u64,
    pub d: u64,
    /// The constant is `p^p_exponent`.
    pub p_exponent: i64,
    pub coefficient: Q,
    pub q1_exponent: i64,
    /// Further terms of the expansion, for inspection.
    pub expansion: QExpansion,
}

impl FourierMuLeading {
    /// `"5^-3"`.
    pub fn coefficient_label(&self) -> String {
        format!("{}^{}", self.p, self.p_exponent)
    }
}

/// Expands `μ(1 + h) = u(h/2)^2 / u(h)` at the cusp `1`.
///
/// With `w = -1/(ph)` the functional equation of `u` (certified by the
/// rewriter) turns `u(h)` into `c / u(w)` and `u(h/2)` into `c / u(2w)`,
/// where `c = p^{-12/d}`. Both `u(w)` and `u(2w)` are then expanded in
/// `q_1 = e^{iπw}`.
pub fn verify_fourier_mu(p: u64) -> Result<FourierMuLeading, QSeriesError> {
    check_prime(p)?;
    let cert = verify_functional_equation_u(p)?;
    let eps = &cert.p_exponent;
    if !eps.is_integer() {
        return Err(QSeriesError::Rewrite(format!(
            "non-integral exponent {eps}"
        )));
    }
    let eps: i64 = eps.to_integer().to_string().parse().expect("small");
    let order = 4;
    let var = Variable::new(format!("-1/({p}(z-1))"), Q::one());
    let u = u_expansion(p, order)?;
    let u = QExpansion::new(var, u.shift().clone(), u.denom(), u.coeffs().to_vec());
    let half = q_frac(1, 2);
    // u(h) = c / u(w), u(h/2) = c / u(2w)
    let u_h = u.change_variable(&half).inv()?;
    let u_h2 = u
        .compose_linear(&q_int(2), &Q::zero())?
        .change_variable(&half)
        .inv()?;
    let c = Cyclo::rational(pow_q(p, eps));
    let mu = u_h2.scale(&c).pow(2)?.div(&u_h.scale(&c))?;
    let (e, lead) = mu.leading().ok_or(QSeriesError::ZeroSeries)?;
    let coefficient = lead
        .as_rational()
        .cloned()
        .ok_or(QSeriesError::FieldTooSmall {
            needed: lead.conductor(),
            allowed: 1,
        })?;
    if !e.is_integer() {
        return Err(QSeriesError::ExponentLattice);
    }
    Ok(FourierMuLeading {
        p,
        d: eisenstein_d(p),
        p_exponent: eps,
        coefficient,
        q1_exponent: e.to_integer().to_string().parse().expect("small"),
        expansion: mu,
    })
}

pub(crate) fn pow_q(p: u64, e: i64) -> Q {
    let b = Q::from_integer(BigInt::from(p).pow(e.unsigned_abs() as u32));
    if e >= 0 {
        b
    } else {
        b.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagonal_series() {
        assert_eq!(euler_product(8), vec![1, -1, -1, 0, 0, 1, 0, 1]);
        let eta = eta_expansion(8);
        assert_eq!(*eta.shift(), q_frac(1, 24));
        assert_eq!(
            eta.rational_coeffs().unwrap()[..3],
            [q_int(1), q_int(-1), q_int(-1)]
        );
    }

    #[test]
    fn delta_leading_terms() {
        let d = delta_expansion(3);
        assert_eq!(d.leading().unwrap(), (Q::one(), Cyclo::one()));
        assert_eq!(d.coefficient(&q_int(2)).unwrap(), Cyclo::int(-24));
        assert_eq!(d.coefficient(&q_int(3)).unwrap(), Cyclo::int(252));
    }

    #[test]
    fn lambda_first_terms() {
        let l = lambda_expansion(5);
        let c: Vec<Q> = l.rational_coeffs().unwrap();
        assert_eq!(*l.shift(), Q::one());
        assert_eq!(c[..3], [q_int(16), q_int(-128), q_int(704)]);
        let quotient = lambda_eta_quotient().expansion(&Variable::q_over(2), 5);
        assert!(quotient.agrees_with(&l).unwrap());
    }

    #[test]
    fn u_leading_terms() {
        let u13 = u_expansion(13, 3).unwrap();
        assert_eq!(u13.leading().unwrap(), (Q::one(), Cyclo::one()));
        assert_eq!(u13.coefficient(&q_int(2)).unwrap(), Cyclo::int(2));
        let u7 = u_expansion(7, 3).unwrap();
        assert_eq!(u7.leading().unwrap(), (Q::one(), Cyclo::one()));
        assert_eq!(u7.coefficient(&q_int(2)).unwrap(), Cyclo::int(4));
        let u5 = u_expansion(5, 3).unwrap();
        assert!(u5
            .agrees_with(&u_eta_quotient(5).expansion(&Variable::q(), 3))
            .unwrap());
    }

    #[test]
    fn fourier_mu_at_five() {
        let r = verify_fourier_mu(5).unwrap();
        assert_eq!((r.p_exponent, r.q1_exponent), (-3, -6));
        assert_eq!(r.coefficient, Q::new(1.into(), 125.into()));
        assert_eq!(r.coefficient_label(), "5^-3");
    }

    #[test]
    fn mu3_needs_zeta3() {
        assert!(matches!(
            mu3_expansion(7, 6, 1),
            Err(QSeriesError::FieldTooSmall {
                needed: 3,
                allowed: 1
            })
        ));
        let m = mu3_expansion(7, 6, 3).unwrap();
        assert_eq!(m.valuation(), Some(Q::zero()));
    }
}

//! Truncated theta products and the period pairing of a Schottky group.
//!
//! Every factor is a cross-ratio
//! `[x, y; u, v] = (x - u)(y - v) / ((x - v)(y - u))`, evaluated in
//! homogeneous coordinates so that `∞` needs no special treatment. The
//! theta function normalized at a base point `ω` is
//!
//! ```text
//! θ_ω(a, b; z) = ∏_γ [z, ω; γa, γb]  =  θ(a, b; z) / θ(a, b; ω)
//! ```
//!
//! which converges whenever `z` and `ω` avoid the limit set, including when
//! `∞` is a limit point. The period pairing
//! `Φ(α, β) = θ(a, αa; z) / θ(a, αa; βz) = ∏_γ [z, βz; γa, γαa]`
//! does not depend on `ω`.
//!
//! Products run over reduced words of length at most `L`, one shell per
//! length; shells are closed under inversion. Arithmetic is exact until the
//! final conversion to a p-adic number.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{p_adic_valuation_int, ArithError, Fp2Context, PadicElement, Q};
use crate::schottky::{
    verify_good_position, MobiusMap, P1Point, SchottkyError, SchottkyGroup, Word,
};

/// Relative precision reported when no shell changed the product at all.
pub const EXACT_PRECISION_CAP: i64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error(transparent)]
    Schottky(#[from] SchottkyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("ball system is not in good position; the product need not converge")]
    NotGoodPosition,
    #[error("the factor for word {word} has a zero or a pole")]
    Collision { word: String },
    #[error("product has not stabilized: shell changes {profile:?}")]
    InsufficientStabilization { profile: Vec<Option<i64>> },
}

/// Where the theta product is normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `ω = ∞`: the literal product `∏ (z - γa)/(z - γb)`. Diverges when
    /// `∞` is a limit point.
    Infinity,
    /// A fixed base point `ω`.
    BasePoint(P1Point),
    /// The first fundamental-domain point distinct from `a`, `b` and `z`.
    Auto,
}

/// `v(shell - 1)` for one shell; `None` when the shell product is exactly 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellChange {
    pub length: usize,
    pub valuation: Option<i64>,
}

/// A truncated product `∏_{|γ| <= L} [x, y; γu, γv]`.
#[derive(Clone, Debug)]
pub struct ThetaTruncation {
    pub max_word_length: usize,
    pub exact: Q,
    pub value: PadicElement,
    /// Relative precision of `value`: the last observed shell change minus
    /// a margin of one.
    pub precision_estimate: i64,
    pub stabilization_profile: Vec<ShellChange>,
}

impl ThetaTruncation {
    pub fn profile_valuations(&self) -> Vec<Option<i64>> {
        self.stabilization_profile
            .iter()
            .map(|s| s.valuation)
            .collect()
    }

    /// Whether the last two shells changed the product by valuations that
    /// are positive and nondecreasing.
    pub fn is_stabilized(&self) -> bool {
        let v = self.profile_valuations();
        if v.len() < 3 {
            return false;
        }
        let last = v[v.len() - 1].unwrap_or(i64::MAX);
        let prev = v[v.len() - 2].unwrap_or(i64::MAX);
        prev >= 1 && last >= prev
    }
}

#[derive(Clone, Debug)]
pub struct PeriodPairingResult {
    pub alpha: Word,
    pub beta: Word,
    pub value: PadicElement,
    pub precision_estimate: i64,
    /// The base point `a` and evaluation point `z`.
    pub witnesses: (P1Point, P1Point),
    pub truncation: ThetaTruncation,
}

/// Homogeneous coordinates.
fn hom(z: &P1Point) -> (Q, Q) {
    match z {
        P1Point::Finite(q) => (q.clone(), Q::one()),
        P1Point::Infinity => (Q::one(), Q::zero()),
    }
}

/// `x - y` in homogeneous form.
fn bracket(x: &(Q, Q), y: &(Q, Q)) -> Q {
    &x.0 * &y.1 - &y.0 * &x.1
}

/// `[x, y; u, v]`, or `None` if a bracket vanishes.
pub fn cross_ratio(x: &P1Point, y: &P1Point, u: &P1Point, v: &P1Point) -> Option<Q> {
    let (x, y, u, v) = (hom(x), hom(y), hom(u), hom(v));
    let den = bracket(&x, &v) * bracket(&y, &u);
    if den.is_zero() {
        return None;
    }
    let num = bracket(&x, &u) * bracket(&y, &v);
    if num.is_zero() {
        return None;
    }
    Some(num / den)
}

/// `∏_{|γ| <= L} [x, y; γu, γv]` with per-shell diagnostics.
pub fn cross_ratio_product(
    g: &SchottkyGroup,
    x: &P1Point,
    y: &P1Point,
    u: &P1Point,
    v: &P1Point,
    max_len: usize,
) -> Result<ThetaTruncation, ThetaError> {
    let report = verify_good_position(g)?;
    if !report.passed() {
        return Err(ThetaError::NotGoodPosition);
    }
    let p = g.p();
    let ctx = Fp2Context::new(p)?;

    // unreduced running products; gcds are taken once at the end
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut shell_num = BigInt::one();
    let mut shell_den = BigInt::one();
    let mut current = 0usize;
    let mut profile = Vec::new();

    let close_shell = |len: usize, sn: &BigInt, sd: &BigInt, profile: &mut Vec<ShellChange>| {
        let diff = sn - sd;
        let valuation =
            p_adic_valuation_int(&diff, p).map(|vd| vd - p_adic_valuation_int(sd, p).unwrap());
        profile.push(ShellChange {
            length: len,
            valuation,
        });
    };

    for (w, m) in g.reduced_words(max_len) {
        if w.len() != current {
            close_shell(current, &shell_num, &shell_den, &mut profile);
            num *= &shell_num;
            den *= &shell_den;
            shell_num = BigInt::one();
            shell_den = BigInt::one();
            current = w.len();
        }
        let f =
            cross_ratio(x, y, &m.apply(u), &m.apply(v)).ok_or_else(|| ThetaError::Collision {
                word: w.to_string(),
            })?;
        shell_num *= f.numer();
        shell_den *= f.denom();
    }
    close_shell(current, &shell_num, &shell_den, &mut profile);
    num *= &shell_num;
    den *= &shell_den;

    let exact = Q::new(num, den);
    let precision_estimate = match profile.last().and_then(|s| s.valuation) {
        _ if profile.len() == 1 => 0,
        Some(v) => (v - 1).max(0),
        None => EXACT_PRECISION_CAP,
    };
    let v_exact = crate::arith::p_adic_valuation(&exact, p).expect("nonzero product");
    let value = PadicElement::from_rational(ctx, &exact, v_exact + precision_estimate);
    Ok(ThetaTruncation {
        max_word_length: max_len,
        exact,
        value,
        precision_estimate,
        stabilization_profile: profile,
    })
}

fn fundamental_points(g: &SchottkyGroup, k: usize) -> Result<Vec<P1Point>, ThetaError> {
    let pts: Vec<P1Point> = g.fundamental_domain_points()?.take(k).collect();
    if pts.len() < k {
        return Err(SchottkyError::NoFundamentalDomainPoint.into());
    }
    Ok(pts)
}

fn base_point(
    g: &SchottkyGroup,
    n: &Normalization,
    avoid: &[&P1Point],
) -> Result<P1Point, ThetaError> {
    Ok(match n {
        Normalization::Infinity => P1Point::Infinity,
        Normalization::BasePoint(w) => w.clone(),
        Normalization::Auto => g
            .fundamental_domain_points()?
            .find(|w| !avoid.contains(&w))
            .ok_or(SchottkyError::NoFundamentalDomainPoint)?,
    })
}

/// `θ_ω(a, b; z)` truncated at word length `L`.
pub fn theta_truncated(
    g: &SchottkyGroup,
    a: &P1Point,
    b: &P1Point,
    z: &P1Point,
    max_len: usize,
    normalization: &Normalization,
) -> Result<ThetaTruncation, ThetaError> {
    let omega = base_point(g, normalization, &[a, b, z])?;
    cross_ratio_product(g, z, &omega, a, b, max_len)
}

/// `u_α(z) = θ_ω(a, αa; z)` with `a` the first fundamental-domain point
/// unless given. Only a fixed `ω` makes the result independent of `a`;
/// `Normalization::Auto` picks `ω` away from `a`, so it may move with `a`.
pub fn u_alpha(
    g: &SchottkyGroup,
    alpha: &Word,
    z: &P1Point,
    a: Option<&P1Point>,
    max_len: usize,
    normalization: &Normalization,
) -> Result<ThetaTruncation, ThetaError> {
    let a = match a {
        Some(a) => a.clone(),
        None => g.fundamental_domain_point()?,
    };
    let alpha_a = g.evaluate(alpha)?.apply(&a);
    theta_truncated(g, &a, &alpha_a, z, max_len, normalization)
}

/// `Φ(α, β)` with explicit witnesses `a` and `z`.
pub fn drinfeld_pairing_at(
    g: &SchottkyGroup,
    alpha: &Word,
    beta: &Word,
    a: &P1Point,
    z: &P1Point,
    max_len: usize,
) -> Result<PeriodPairingResult, ThetaError> {
    let am: MobiusMap = g.evaluate(alpha)?;
    let bm: MobiusMap = g.evaluate(beta)?;
    let alpha_a = am.apply(a);
    let beta_z = bm.apply(z);
    let t = cross_ratio_product(g, z, &beta_z, a, &alpha_a, max_len)?;
    if !t.is_stabilized() {
        return Err(ThetaError::InsufficientStabilization {
            profile: t.profile_valuations(),
        });
    }
    Ok(PeriodPairingResult {
        alpha: alpha.clone(),
        beta: beta.clone(),
        value: t.value.clone(),
        precision_estimate: t.precision_estimate,
        witnesses: (a.clone(), z.clone()),
        truncation: t,
    })
}

/// `Φ(α, β)` with `a`, `z` the first two fundamental-domain points.
pub fn drinfeld_pairing(
    g: &SchottkyGroup,
    alpha: &Word,
    beta: &Word,
    max_len: usize,
) -> Result<PeriodPairingResult, ThetaError> {
    let pts = fundamental_points(g, 2)?;
    drinfeld_pairing_at(g, alpha, beta, &pts[0], &pts[1], max_len)
}

/// `v(Φ(α_i, α_j))` on the generators.
pub fn valuation_gram(g: &SchottkyGroup, max_len: usize) -> Result<Vec<Vec<i64>>, ThetaError> {
    let n = g.genus();
    let mut out = vec![vec![0; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let r = drinfeld_pairing(g, &Word::generator(i), &Word::generator(j), max_len)?;
            *cell = r.value.valuation();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schottky::{genus_two_example, tate_example};

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn literal_product_at_length_zero() {
        let g = tate_example(5);
        let t = theta_truncated(
            &g,
            &P1Point::int(2),
            &P1Point::int(3),
            &P1Point::int(7),
            0,
            &Normalization::Infinity,
        )
        .unwrap();
        assert_eq!(t.exact, q(5, 4));
    }

    #[test]
    fn equal_arguments_give_one() {
        let g = tate_example(5);
        for l in 0..4 {
            let t = theta_truncated(
                &g,
                &P1Point::int(2),
                &P1Point::int(2),
                &P1Point::int(3),
                l,
                &Normalization::Auto,
            )
            .unwrap();
            assert_eq!(t.exact, q(1, 1));
        }
    }

    #[test]
    fn literal_product_diverges_when_infinity_is_a_limit_point() {
        let g = tate_example(5);
        let t = theta_truncated(
            &g,
            &P1Point::int(2),
            &P1Point::int(3),
            &P1Point::int(7),
            6,
            &Normalization::Infinity,
        )
        .unwrap();
        // each shell tends to a/b = 2/3, a unit not congruent to 1
        assert!(t.profile_valuations()[1..].iter().all(|v| *v == Some(0)));
        let n = theta_truncated(
            &g,
            &P1Point::int(2),
            &P1Point::int(3),
            &P1Point::int(7),
            6,
            &Normalization::BasePoint(P1Point::int(4)),
        )
        .unwrap();
        assert!(n.is_stabilized());
    }

    #[test]
    fn tate_period() {
        let g = tate_example(5);
        let r = drinfeld_pairing(&g, &Word::generator(0), &Word::generator(0), 8).unwrap();
        assert_eq!(r.value.valuation(), 1);
        let v: Vec<i64> = r.truncation.profile_valuations()[1..]
            .iter()
            .map(|v| v.unwrap())
            .collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]), "{v:?}");
        let id = drinfeld_pairing(&g, &Word::generator(0), &Word::identity(), 3).unwrap();
        assert_eq!(id.truncation.exact, q(1, 1));
    }

    #[test]
    fn refuses_bad_position() {
        let g = SchottkyGroup::new(5, vec![MobiusMap::from_ints(5, 0, 0, 1).unwrap()])
            .unwrap()
            .with_ball_system(vec![crate::schottky::BallPair {
                b: crate::schottky::Disc::Ball(crate::schottky::Ball::closed_int(0, 1)),
                c: crate::schottky::Disc::Complement(crate::schottky::Ball::closed_int(0, 0)),
            }])
            .unwrap();
        let r = drinfeld_pairing(&g, &Word::generator(0), &Word::generator(0), 3);
        assert!(matches!(r, Err(ThetaError::NotGoodPosition)));
    }

    #[test]
    fn short_truncation_is_reported() {
        let g = genus_two_example();
        let r = drinfeld_pairing(&g, &Word::generator(0), &Word::generator(1), 1);
        assert!(matches!(
            r,
            Err(ThetaError::InsufficientStabilization { .. })
        ));
    }
}

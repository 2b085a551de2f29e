//! Truncated expansions `Σ c_e t^e` with exact cyclotomic coefficients and
//! rational exponents on a lattice `shift + (1/denom) Z`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclo::Cyclo;
use super::QSeriesError;
use crate::arith::Q;

/// The formal variable `t = exp(2πi · scale · argument)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    argument: String,
    scale: Q,
}

impl Variable {
    pub fn new(argument: impl Into<String>, scale: Q) -> Self {
        Variable {
            argument: argument.into(),
            scale,
        }
    }

    /// `q = e^{2πiz}`.
    pub fn q() -> Self {
        Self::new("z", Q::one())
    }

    /// `e^{2πi z / n}`.
    pub fn q_over(n: i64) -> Self {
        Self::new("z", Q::new(BigInt::one(), BigInt::from(n)))
    }

    pub fn argument(&self) -> &str {
        &self.argument
    }

    pub fn scale(&self) -> &Q {
        &self.scale
    }

    /// The same exponential with a different scale.
    pub fn with_scale(&self, scale: Q) -> Self {
        Self::new(self.argument.clone(), scale)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale.is_one() {
            write!(f, "exp(2*pi*i*{})", self.argument)
        } else {
            write!(f, "exp(2*pi*i*({})*{})", self.scale, self.argument)
        }
    }
}

/// Largest exponent denominator the arithmetic operations accept, counting
/// both the lattice step and the leading exponent.
pub const MAX_EXPONENT_DENOMINATOR: u32 = 1 << 16;

/// A series known modulo `O(t^order)` with `order = shift + len / denom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    var: Variable,
    shift: Q,
    denom: u32,
    coeffs: Vec<Cyclo>,
}

fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn q_to_i64(q: &Q) -> i64 {
    assert!(q.is_integer());
    q.to_integer().to_string().parse().expect("fits in i64")
}

impl QExpansion {
    /// `Σ_k coeffs[k] t^{shift + k/denom}`, known to the length of `coeffs`.
    pub fn new(var: Variable, shift: Q, denom: u32, coeffs: Vec<Cyclo>) -> Self {
        assert!(denom > 0);
        QExpansion {
            var,
            shift,
            denom,
            coeffs,
        }
    }

    /// Integer-exponent series from rational coefficients.
    pub fn from_rationals(var: Variable, shift: i64, coeffs: Vec<Q>) -> Self {
        Self::new(
            var,
            q_int(shift),
            1,
            coeffs.into_iter().map(Cyclo::from).collect(),
        )
    }

    /// `c·t^e + O(t^order)`.
    pub fn monomial(var: Variable, c: Cyclo, e: Q, order: Q) -> Self {
        let d = (&order - &e).denom().clone();
        let denom: u32 = d.to_string().parse().expect("small denominator");
        let n = q_to_i64(&((&order - &e) * q_int(denom as i64))).max(0) as usize;
        let mut coeffs = vec![Cyclo::zero(); n];
        if n > 0 {
            coeffs[0] = c;
        }
        Self::new(var, e, denom, coeffs)
    }

    pub fn var(&self) -> &Variable {
        &self.var
    }

    pub fn shift(&self) -> &Q {
        &self.shift
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn coeffs(&self) -> &[Cyclo] {
        &self.coeffs
    }

    fn step(&self) -> Q {
        Q::new(BigInt::one(), BigInt::from(self.denom))
    }

    fn exponent_at(&self, k: usize) -> Q {
        &self.shift + self.step() * q_int(k as i64)
    }

    /// The series is known modulo `O(t^order)`.
    pub fn order(&self) -> Q {
        self.exponent_at(self.coeffs.len())
    }

    /// Coefficient of `t^e`; `None` at or beyond the truncation order.
    pub fn coefficient(&self, e: &Q) -> Option<Cyclo> {
        if *e >= self.order() {
            return None;
        }
        if *e < self.shift {
            return Some(Cyclo::zero());
        }
        let k = (e - &self.shift) * q_int(self.denom as i64);
        if !k.is_integer() {
            return Some(Cyclo::zero());
        }
        Some(self.coeffs[q_to_i64(&k) as usize].clone())
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (Q, &Cyclo)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.exponent_at(k), c))
    }

    /// The exponent of the first nonzero term, if any is known.
    pub fn valuation(&self) -> Option<Q> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|k| self.exponent_at(k))
    }

    pub fn leading(&self) -> Option<(Q, Cyclo)> {
        let k = self.coeffs.iter().position(|c| !c.is_zero())?;
        Some((self.exponent_at(k), self.coeffs[k].clone()))
    }

    /// Drops leading zero coefficients and shrinks the exponent lattice to
    /// the coarsest one carrying all terms.
    pub fn normalized(&self) -> Self {
        let start = match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => k,
            None => {
                return Self::new(self.var.clone(), self.order(), 1, Vec::new());
            }
        };
        let shift = self.exponent_at(start);
        let rest = &self.coeffs[start..];
        let mut g = 0usize;
        for (k, c) in rest.iter().enumerate() {
            if !c.is_zero() {
                g = g.gcd(&k);
            }
        }
        // the order must stay on the coarser lattice
        g = g.gcd(&rest.len());
        let g = g.gcd(&(self.denom as usize)).max(1);
        let coeffs = rest.iter().step_by(g).cloned().collect();
        Self::new(self.var.clone(), shift, self.denom / g as u32, coeffs)
    }

    /// Re-expresses the series on the lattice `shift + (1/denom) Z`.
    fn on_lattice(&self, shift: &Q, denom: u32, order: &Q) -> Result<Vec<Cyclo>, QSeriesError> {
        let d = q_int(denom as i64);
        let n = (order - shift) * &d;
        if !n.is_integer() || n.is_negative() {
            return Err(QSeriesError::ExponentLattice);
        }
        let mut out = vec![Cyclo::zero(); q_to_i64(&n) as usize];
        for (e, c) in self.terms() {
            if e >= *order {
                break;
            }
            let k = (&e - shift) * &d;
            if !k.is_integer() || k.is_negative() {
                return Err(QSeriesError::ExponentLattice);
            }
            out[q_to_i64(&k) as usize] = c.clone();
        }
        Ok(out)
    }

    fn bounded(self) -> Result<Self, QSeriesError> {
        let shift_den = self.shift.denom().to_u64().unwrap_or(u64::MAX);
        let den = (self.denom as u64).lcm(&shift_den);
        if den > MAX_EXPONENT_DENOMINATOR as u64 {
            return Err(QSeriesError::DenominatorLimit {
                found: den,
                limit: MAX_EXPONENT_DENOMINATOR,
            });
        }
        Ok(self)
    }

    fn check_var(&self, other: &Self) -> Result<(), QSeriesError> {
        if self.var != other.var {
            return Err(QSeriesError::VariableMismatch {
                left: self.var.to_string(),
                right: other.var.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, QSeriesError> {
        self.check_var(other)?;
        let denom = lcm_u32(self.denom, other.denom);
        let d = q_int(denom as i64);
        let shift = self.shift.clone().min(other.shift.clone());
        if !((&self.shift - &other.shift) * &d).is_integer() {
            return Err(QSeriesError::ExponentLattice);
        }
        let order = self.order().min(other.order());
        if order <= shift {
            return Ok(Self::new(self.var.clone(), order, 1, Vec::new()));
        }
        let a = self.on_lattice(&shift, denom, &order)?;
        let b = other.on_lattice(&shift, denom, &order)?;
        let coeffs = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        Self::new(self.var.clone(), shift, denom, coeffs)
            .normalized()
            .bounded()
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.var.clone(),
            self.shift.clone(),
            self.denom,
            self.coeffs.iter().map(|c| -c).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QSeriesError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        Self::new(
            self.var.clone(),
            self.shift.clone(),
            self.denom,
            self.coeffs.iter().map(|x| x * c).collect(),
        )
    }

    /// `t^e · self`.
    pub fn shifted(&self, e: &Q) -> Self {
        Self::new(
            self.var.clone(),
            &self.shift + e,
            self.denom,
            self.coeffs.clone(),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self, QSeriesError> {
        self.check_var(other)?;
        let a = self.normalized();
        let b = other.normalized();
        let va = a.valuation().unwrap_or_else(|| a.order());
        let vb = b.valuation().unwrap_or_else(|| b.order());
        let order = (a.order() + &vb).min(b.order() + &va);
        let shift = &va + &vb;
        let denom = lcm_u32(a.denom, b.denom);
        let n = (&order - &shift) * q_int(denom as i64);
        let n = q_to_i64(&n).max(0) as usize;
        let (sa, sb) = ((denom / a.denom) as usize, (denom / b.denom) as usize);
        let mut out = vec![Cyclo::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() || i * sa >= n {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let k = i * sa + j * sb;
                if k >= n {
                    break;
                }
                if !y.is_zero() {
                    out[k] = &out[k] + &(x * y);
                }
            }
        }
        Self::new(self.var.clone(), shift, denom, out)
            .normalized()
            .bounded()
    }

    /// `self^α` for rational `α`, by the power recurrence
    /// `n a_0 g_n = Σ_{k=1}^{n} ((α+1)k - n) a_k g_{n-k}`.
    ///
    /// For non-integral `α` the leading coefficient must be `1` (principal
    /// branch).
    pub fn pow_rational(&self, alpha: &Q) -> Result<Self, QSeriesError> {
        let f = self.normalized();
        let (v, a0) = f.leading().ok_or(QSeriesError::ZeroSeries)?;
        let g0 = if alpha.is_integer() {
            a0.pow(q_to_i64(alpha)).ok_or(QSeriesError::ZeroSeries)?
        } else if a0.is_one() {
            Cyclo::one()
        } else {
            return Err(QSeriesError::Branch(a0.to_string()));
        };
        let a0_inv = a0.inverse().ok_or(QSeriesError::ZeroSeries)?;
        let n = f.coeffs.len();
        let a = &f.coeffs;
        let mut g: Vec<Cyclo> = Vec::with_capacity(n);
        g.push(g0);
        let alpha1 = alpha + Q::one();
        for m in 1..n {
            let mut acc = Cyclo::zero();
            for k in 1..=m {
                if a[k].is_zero() {
                    continue;
                }
                let w = &alpha1 * q_int(k as i64) - q_int(m as i64);
                if w.is_zero() {
                    continue;
                }
                acc = &acc + &(&a[k] * &g[m - k]).scale(&w);
            }
            let inv_m = Q::new(BigInt::one(), BigInt::from(m));
            g.push((&acc * &a0_inv).scale(&inv_m));
        }
        Self::new(self.var.clone(), alpha * v, f.denom, g)
            .normalized()
            .bounded()
    }

    pub fn pow(&self, e: i64) -> Result<Self, QSeriesError> {
        self.pow_rational(&q_int(e))
    }

    pub fn inv(&self) -> Result<Self, QSeriesError> {
        self.pow(-1)
    }

    pub fn div(&self, other: &Self) -> Result<Self, QSeriesError> {
        self.mul(&other.inv()?)
    }

    /// The principal `d`-th root; the leading coefficient must be `1`.
    pub fn root(&self, d: u32) -> Result<Self, QSeriesError> {
        self.pow_rational(&Q::new(BigInt::one(), BigInt::from(d)))
    }

    /// Drops everything at or beyond `t^order`.
    pub fn truncate(&self, order: &Q) -> Self {
        if *order >= self.order() {
            return self.clone();
        }
        let n = (order - &self.shift) * q_int(self.denom as i64);
        let n = n
            .ceil()
            .to_integer()
            .to_string()
            .parse::<i64>()
            .unwrap()
            .max(0) as usize;
        Self::new(
            self.var.clone(),
            self.shift.clone(),
            self.denom,
            self.coeffs[..n.min(self.coeffs.len())].to_vec(),
        )
    }

    /// The same function in the variable `exp(2πi · scale · argument)`.
    ///
    /// Panics if the new exponents exceed [`MAX_EXPONENT_DENOMINATOR`].
    pub fn change_variable(&self, scale: &Q) -> Self {
        let r = &self.var.scale / scale;
        self.rescale_exponents(&r, self.var.with_scale(scale.clone()))
            .expect("denominator within the limit")
    }

    /// `t^e ↦ ζ(e) t^{r e}` on the same coefficients, with `ζ(e) = 1`.
    fn rescale_exponents(&self, r: &Q, var: Variable) -> Result<Self, QSeriesError> {
        self.rescale_twisted(r, &Q::zero(), var)
    }

    /// `t^e ↦ e^{2πi·twist·e} t^{r e}`.
    fn rescale_twisted(&self, r: &Q, twist: &Q, var: Variable) -> Result<Self, QSeriesError> {
        assert!(r.is_positive());
        let step = self.step() * r;
        let (num, den) = (step.numer().clone(), step.denom().clone());
        let stride: usize = num.to_string().parse().expect("small stride");
        let denom: u32 = den.to_string().parse().expect("small denominator");
        let n = self.coeffs.len() * stride;
        let mut out = vec![Cyclo::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.exponent_at(k);
            let z = Cyclo::root_of_unity(&(twist * &e))
                .ok_or_else(|| QSeriesError::RootOfUnity(twist * &e))?;
            out[k * stride] = c * &z;
        }
        Self::new(var, &self.shift * r, denom, out)
            .normalized()
            .bounded()
    }

    /// `f(a z + b)` for `f(z)` this series and `a > 0`, in the same variable.
    pub fn compose_linear(&self, a: &Q, b: &Q) -> Result<Self, QSeriesError> {
        if !a.is_positive() {
            return Err(QSeriesError::NotUpperHalfPlane);
        }
        // e^{2πi s e (a z + b)} = e^{2πi s b e} · t^{a e}
        let twist = &self.var.scale * b;
        self.rescale_twisted(a, &twist, self.var.clone())
    }

    /// Compares coefficients below the smaller truncation order.
    pub fn agrees_with(&self, other: &Self) -> Result<bool, QSeriesError> {
        let d = self.sub(other)?;
        Ok(d.valuation().is_none())
    }

    /// Coefficients as rationals, failing when the field is larger than `Q`.
    pub fn rational_coeffs(&self) -> Result<Vec<Q>, QSeriesError> {
        self.coeffs
            .iter()
            .map(|c| {
                c.as_rational().cloned().ok_or(QSeriesError::FieldTooSmall {
                    needed: c.conductor(),
                    allowed: 1,
                })
            })
            .collect()
    }

    /// The least conductor of a field containing every coefficient.
    pub fn conductor(&self) -> u32 {
        self.coeffs.iter().map(Cyclo::conductor).fold(1, lcm_u32)
    }
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

impl fmt::Display for QExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.as_rational().is_some() {
                write!(f, "{c}*t^{e}")?;
            } else {
                write!(f, "({c})*t^{e}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{}), t = {}", self.order(), self.var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> QExpansion {
        QExpansion::from_rationals(Variable::q(), 0, c.iter().map(|&x| q_int(x)).collect())
    }

    #[test]
    fn geometric_series_inverse() {
        let f = poly(&[1, -1, 0, 0, 0, 0]);
        let g = f.inv().unwrap();
        assert_eq!(g.coeffs(), poly(&[1, 1, 1, 1, 1, 1]).coeffs());
        assert_eq!(g.order(), q_int(6));
    }

    #[test]
    fn roots_and_powers() {
        // (1 - t)^{-2} = Σ (n+1) t^n
        let f = poly(&[1, -1, 0, 0, 0]);
        assert_eq!(f.pow(-2).unwrap().coeffs(), poly(&[1, 2, 3, 4, 5]).coeffs());
        let sq = f.pow(2).unwrap();
        assert!(sq.root(2).unwrap().agrees_with(&f).unwrap());
        assert!(matches!(
            f.scale(&Cyclo::int(4)).root(2),
            Err(QSeriesError::Branch(_))
        ));
    }

    #[test]
    fn precision_is_pessimistic() {
        let f = poly(&[0, 1, 2, 3]).shifted(&q_int(0)); // t + 2t² + 3t³ + O(t⁴)
        let g = poly(&[1, 1]); // 1 + t + O(t²)
        let h = f.mul(&g).unwrap();
        // O(t⁴)·1 and t·O(t²)
        assert_eq!(h.order(), q_int(3));
    }

    #[test]
    fn twisted_substitution() {
        // f(q) = q + q², f((z+1)/2) in the variable q: -q^{1/2} + q
        let f = poly(&[0, 1, 1, 0]);
        let g = f
            .compose_linear(&Q::new(1.into(), 2.into()), &Q::new(1.into(), 2.into()))
            .unwrap();
        assert_eq!(
            g.coefficient(&Q::new(1.into(), 2.into())).unwrap(),
            Cyclo::int(-1)
        );
        assert_eq!(g.coefficient(&q_int(1)).unwrap(), Cyclo::int(1));
        assert_eq!(g.order(), q_int(2));
        // ζ_3 twists from (z+2)/3
        let h = f
            .compose_linear(&Q::new(1.into(), 3.into()), &Q::new(2.into(), 3.into()))
            .unwrap();
        assert_eq!(h.conductor(), 3);
        assert!(h.rational_coeffs().is_err());
    }

    #[test]
    fn denominators_are_bounded() {
        let f = poly(&[1, 1, 1]);
        let big = Q::new(1.into(), BigInt::from(MAX_EXPONENT_DENOMINATOR) * 2);
        assert!(matches!(
            f.pow_rational(&big).unwrap().shifted(&big).mul(&f),
            Err(QSeriesError::DenominatorLimit { .. })
        ));
    }

    #[test]
    fn mixing_variables_is_an_error() {
        let f = poly(&[1, 1]);
        let g = f.change_variable(&Q::new(1.into(), 2.into()));
        assert!(matches!(
            f.mul(&g),
            Err(QSeriesError::VariableMismatch { .. })
        ));
        // q = t², so the t-expansion lives on even exponents
        assert_eq!(g.coefficient(&q_int(2)).unwrap(), Cyclo::int(1));
        assert_eq!(g.order(), q_int(4));
    }
}

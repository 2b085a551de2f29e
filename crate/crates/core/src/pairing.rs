//! The residual pairing on `Z[S]` and the identities it satisfies.
//!
//! For supersingular invariants `λ_0, ..., λ_g` the residual pairing is
//!
//! ```text
//! Φ̄(e_i, e_j) = (λ_i - λ_j)^(p+1)                       i ≠ j
//! Φ̄(e_i, e_i) = p · ∏_{k≠i} (λ_i - λ_k)^(-(p+1))
//! ```
//!
//! with values in `K^x / U_1(K) = Z x F_{p^2}^x`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{eisenstein_d, residual_pow, ResidualClass};
use crate::supersingular::{supersingular_lambdas, SupersingularError, SupersingularSet};

/// The `(g+1) x (g+1)` residual pairing matrix on the supersingular basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    basis: SupersingularSet,
    entries: Vec<Vec<ResidualClass>>,
    d: u64,
}

/// A divisor `Σ a_i e_i` supported on `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorOnS {
    coefficients: Vec<i64>,
}

impl DivisorOnS {
    pub fn new(coefficients: Vec<i64>) -> Self {
        DivisorOnS { coefficients }
    }

    pub fn zero(len: usize) -> Self {
        DivisorOnS::new(vec![0; len])
    }

    /// The point `e_i`.
    pub fn point(len: usize, i: usize) -> Self {
        let mut c = vec![0; len];
        c[i] = 1;
        DivisorOnS::new(c)
    }

    /// The Eisenstein element `ê = Σ e_i`.
    pub fn eisenstein(len: usize) -> Self {
        DivisorOnS::new(vec![1; len])
    }

    /// `e_i - e_j`.
    pub fn difference(len: usize, i: usize, j: usize) -> Self {
        let mut c = vec![0; len];
        c[i] += 1;
        c[j] -= 1;
        DivisorOnS::new(c)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.coefficients.iter().sum()
    }

    /// Membership in the augmentation subgroup `Z[S]^0`.
    pub fn is_degree_zero(&self) -> bool {
        self.degree() == 0
    }

    pub fn add(&self, other: &DivisorOnS) -> DivisorOnS {
        assert_eq!(self.len(), other.len());
        DivisorOnS::new(
            self.coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, k: i64) -> DivisorOnS {
        DivisorOnS::new(self.coefficients.iter().map(|a| a * k).collect())
    }

    /// Re-indexes along a permutation: `result[k] = self[perm[k]]`.
    pub fn permuted(&self, perm: &[usize]) -> DivisorOnS {
        DivisorOnS::new(perm.iter().map(|&i| self.coefficients[i]).collect())
    }
}

impl PairingMatrix {
    pub fn from_basis(basis: SupersingularSet) -> Self {
        let lambdas = basis.lambdas();
        let ctx = basis.ctx();
        let p = ctx.p();
        let e = p as u128 + 1;
        let n = lambdas.len();
        let mut entries = vec![vec![ResidualClass::identity(ctx); n]; n];
        for i in 0..n {
            let mut diag = ctx.one();
            for j in 0..n {
                if i == j {
                    continue;
                }
                // distinct roots, so the difference is a unit
                let r = (lambdas[i] - lambdas[j]).pow(e);
                entries[i][j] = ResidualClass::new(0, r).expect("distinct supersingular roots");
                diag = diag * r;
            }
            entries[i][i] = ResidualClass::new(1, diag.inv().expect("nonzero product"))
                .expect("nonzero product");
        }
        PairingMatrix {
            basis,
            entries,
            d: eisenstein_d(p),
        }
    }

    pub fn p(&self) -> u64 {
        self.basis.p()
    }

    pub fn basis(&self) -> &SupersingularSet {
        &self.basis
    }

    pub fn entries(&self) -> &[Vec<ResidualClass>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> ResidualClass {
        self.entries[i][j]
    }

    /// `d = gcd(p - 1, 12)`.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn genus(&self) -> usize {
        self.size() - 1
    }
}

pub fn build_pairing_matrix(p: u64) -> Result<PairingMatrix, SupersingularError> {
    Ok(PairingMatrix::from_basis(supersingular_lambdas(p)?))
}

/// `Φ̄(a, b) = ∏ entries[i][j]^(a_i b_j)`.
pub fn pair_divisors(m: &PairingMatrix, a: &DivisorOnS, b: &DivisorOnS) -> ResidualClass {
    assert_eq!(a.len(), m.size());
    assert_eq!(b.len(), m.size());
    let support = |d: &DivisorOnS| -> Vec<(usize, i64)> {
        d.coefficients
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .collect()
    };
    let sb = support(b);
    let mut acc = ResidualClass::identity(m.basis.ctx());
    for (i, ai) in support(a) {
        for &(j, bj) in &sb {
            acc = acc.mul(&residual_pow(&m.entries[i][j], ai * bj));
        }
    }
    acc
}

/// Every row product `Φ̄(e_i, ê)` equals the class of `p`.
pub fn eisenstein_check(m: &PairingMatrix) -> bool {
    let p_class = ResidualClass::of_p(m.basis.ctx());
    m.entries.iter().all(|row| {
        row.iter()
            .fold(ResidualClass::identity(m.basis.ctx()), |acc, e| acc.mul(e))
            == p_class
    })
}

/// Gram matrix of `val ∘ Φ̄` on `e_i - e_0`, `i = 1..g`.
pub fn valuation_gram(m: &PairingMatrix) -> Vec<Vec<i64>> {
    let v = |i: usize, j: usize| m.entries[i][j].val();
    (1..m.size())
        .map(|i| {
            (1..m.size())
                .map(|j| v(i, j) - v(i, 0) - v(0, j) + v(0, 0))
                .collect()
        })
        .collect()
}

/// `Φ̄(e_σi, e_σj) = Frob(Φ̄(e_i, e_j))` with `σ` the Frobenius permutation.
pub fn frobenius_equivariance_check(m: &PairingMatrix) -> bool {
    let sigma = m.basis.frobenius_perm();
    let n = m.size();
    (0..n).all(|i| (0..n).all(|j| m.entries[i][j].frobenius() == m.entries[sigma[i]][sigma[j]]))
}

/// Every residue lies in `F_p^x`.
pub fn rationality_check(m: &PairingMatrix) -> bool {
    m.entries.iter().flatten().all(|e| e.res().in_prime_field())
}

/// Entrywise `(12/d)`-th power.
pub fn twelfth_power_table(m: &PairingMatrix) -> Vec<Vec<ResidualClass>> {
    let k = (12 / m.d) as i64;
    m.entries
        .iter()
        .map(|row| row.iter().map(|e| e.pow(k)).collect())
        .collect()
}

/// Exact determinant by fraction-free Gaussian elimination.
pub fn determinant(matrix: &[Vec<i64>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Leading principal minors `det(A[..k, ..k])`, `k = 1..n`.
pub fn leading_minors(matrix: &[Vec<i64>]) -> Vec<BigInt> {
    (1..=matrix.len())
        .map(|k| {
            let sub: Vec<Vec<i64>> = matrix[..k].iter().map(|r| r[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

/// Sylvester's criterion.
pub fn is_positive_definite(matrix: &[Vec<i64>]) -> bool {
    leading_minors(matrix).iter().all(|m| m.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rc(m: &PairingMatrix, v: i64, a: i64) -> ResidualClass {
        ResidualClass::new(v, m.basis().ctx().elem(a, 0)).unwrap()
    }

    #[test]
    fn p5_matrix() {
        let m = build_pairing_matrix(5).unwrap();
        assert_eq!(m.d(), 4);
        assert_eq!(m.entry(0, 1), rc(&m, 0, 3));
        assert_eq!(m.entry(1, 0), rc(&m, 0, 3));
        assert_eq!(m.entry(0, 0), rc(&m, 1, 2));
        assert_eq!(m.entry(1, 1), rc(&m, 1, 2));
        let a = DivisorOnS::difference(2, 1, 0);
        assert_eq!(pair_divisors(&m, &a, &a), rc(&m, 2, 1));
        assert_eq!(valuation_gram(&m), vec![vec![2]]);
        let t = twelfth_power_table(&m);
        assert_eq!(t[0][1], rc(&m, 0, 2));
    }

    #[test]
    fn p7_matrix() {
        let m = build_pairing_matrix(7).unwrap();
        assert_eq!(m.entry(0, 1), rc(&m, 0, 4));
        assert_eq!(m.entry(0, 0), rc(&m, 1, 1));
        let e0 = DivisorOnS::point(3, 0);
        let eh = DivisorOnS::eisenstein(3);
        assert_eq!(
            pair_divisors(&m, &e0, &eh),
            ResidualClass::of_p(m.basis().ctx())
        );
        assert_eq!(valuation_gram(&m), vec![vec![2, 1], vec![1, 2]]);
        assert_eq!(twelfth_power_table(&m)[0][1], rc(&m, 0, 2));
    }

    #[test]
    fn zero_divisor_pairs_trivially() {
        let m = build_pairing_matrix(11).unwrap();
        let z = DivisorOnS::zero(m.size());
        let b = DivisorOnS::new(vec![3, -1, 4, 1, -5]);
        assert_eq!(
            pair_divisors(&m, &z, &b),
            ResidualClass::identity(m.basis().ctx())
        );
    }

    #[test]
    fn p13_table_is_matrix() {
        let m = build_pairing_matrix(13).unwrap();
        assert_eq!(m.d(), 12);
        assert_eq!(twelfth_power_table(&m), m.entries().to_vec());
    }

    #[test]
    fn checks_small_primes() {
        for p in [5u64, 7, 11, 13, 17, 19, 23] {
            let m = build_pairing_matrix(p).unwrap();
            assert!(eisenstein_check(&m), "p={p}");
            assert!(frobenius_equivariance_check(&m), "p={p}");
            assert!(rationality_check(&m), "p={p}");
        }
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[vec![2, 1], vec![1, 2]]), BigInt::from(3));
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(
            determinant(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]),
            BigInt::from(-3)
        );
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
        assert!(is_positive_definite(&[vec![2, 1], vec![1, 2]]));
        assert!(!is_positive_definite(&[vec![1, 2], vec![2, 1]]));
    }
}

use proptest::prelude::*;

use padic_periods::arith::{is_prime, ResidualClass};
use padic_periods::pairing::{
    build_pairing_matrix, eisenstein_check, frobenius_equivariance_check, leading_minors,
    pair_divisors, rationality_check, valuation_gram, DivisorOnS, PairingMatrix,
};
use padic_periods::supersingular::supersingular_lambdas;

fn small_primes() -> Vec<u64> {
    (5..200).filter(|&n| is_prime(n)).collect()
}

fn divisor(len: usize, seed: &[i64]) -> DivisorOnS {
    DivisorOnS::new((0..len).map(|i| seed[i % seed.len()]).collect())
}

fn monodromy(a: &DivisorOnS, b: &DivisorOnS) -> i64 {
    a.coefficients()
        .iter()
        .zip(b.coefficients())
        .map(|(x, y)| x * y)
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bilinear_and_symmetric(pi in 0usize..46,
                              s1 in prop::collection::vec(-4i64..5, 1..8),
                              s2 in prop::collection::vec(-4i64..5, 1..8),
                              s3 in prop::collection::vec(-4i64..5, 1..8)) {
        let primes = small_primes();
        let m = build_pairing_matrix(primes[pi % primes.len()]).unwrap();
        let n = m.size();
        let (a, a2, b) = (divisor(n, &s1), divisor(n, &s2), divisor(n, &s3));
        prop_assert_eq!(pair_divisors(&m, &a, &b), pair_divisors(&m, &b, &a));
        prop_assert_eq!(
            pair_divisors(&m, &a.add(&a2), &b),
            pair_divisors(&m, &a, &b).mul(&pair_divisors(&m, &a2, &b))
        );
        prop_assert_eq!(pair_divisors(&m, &a.scale(-1), &b), pair_divisors(&m, &a, &b).inv());
    }

    #[test]
    fn degree_zero_values_are_rational_with_monodromy_valuation(
        pi in 0usize..46, s1 in prop::collection::vec(-4i64..5, 1..8),
        s2 in prop::collection::vec(-4i64..5, 1..8)) {
        let primes = small_primes();
        let m = build_pairing_matrix(primes[pi % primes.len()]).unwrap();
        let n = m.size();
        let mut a = divisor(n, &s1);
        let mut b = divisor(n, &s2);
        // project to degree zero by adjusting e_0
        a = a.add(&DivisorOnS::point(n, 0).scale(-a.degree()));
        b = b.add(&DivisorOnS::point(n, 0).scale(-b.degree()));
        let v = pair_divisors(&m, &a, &b);
        prop_assert!(v.res().in_prime_field());
        prop_assert_eq!(v.val(), monodromy(&a, &b));
    }

    #[test]
    fn permutation_equivariance(pi in 0usize..20, seed in any::<u64>()) {
        let primes = small_primes();
        let p = primes[pi];
        let base = supersingular_lambdas(p).unwrap();
        let n = base.len();
        // Fisher-Yates with a small LCG keeps the permutation reproducible
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let m = PairingMatrix::from_basis(base.clone());
        let mp = PairingMatrix::from_basis(base.permuted(&perm).unwrap());
        for k in 0..n {
            for l in 0..n {
                prop_assert_eq!(mp.entry(k, l), m.entry(perm[k], perm[l]));
            }
        }
        let a = DivisorOnS::difference(n, n - 1, 0);
        prop_assert_eq!(
            pair_divisors(&mp, &a.permuted(&perm), &a.permuted(&perm)),
            {
                // pull back through the permutation
                let mut inv = vec![0; n];
                for (k, &i) in perm.iter().enumerate() { inv[i] = k; }
                let pa = DivisorOnS::new((0..n).map(|i| a.coefficients()[perm[i]]).collect());
                let back = DivisorOnS::new((0..n).map(|i| pa.coefficients()[inv[i]]).collect());
                pair_divisors(&m, &back, &back)
            }
        );
    }
}

#[test]
fn identities_for_all_primes_below_500() {
    for p in (5..500).filter(|&n| is_prime(n)) {
        let m = build_pairing_matrix(p).unwrap();
        assert!(eisenstein_check(&m), "p={p}");
        assert!(rationality_check(&m), "p={p}");
        assert!(frobenius_equivariance_check(&m), "p={p}");
        let gram = valuation_gram(&m);
        let g = m.genus();
        for (i, row) in gram.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, 1 + (i == j) as i64, "p={p}");
            }
        }
        if p < 100 {
            let minors = leading_minors(&gram);
            for (k, mk) in minors.iter().enumerate() {
                assert_eq!(*mk, (k as i64 + 2).into(), "p={p}");
            }
            assert_eq!(minors.len(), g);
        }
        let row0 = (0..m.size()).fold(ResidualClass::identity(m.basis().ctx()), |acc, j| {
            acc.mul(&m.entry(0, j))
        });
        assert_eq!(row0, ResidualClass::of_p(m.basis().ctx()));
    }
}

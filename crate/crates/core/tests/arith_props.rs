use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use padic_periods::arith::{
    fp2_make, padic_reduce, residual_of, Fp2Context, PadicElement, ResidualClass,
};

const PRIMES: [u64; 8] = [5, 7, 11, 13, 17, 19, 23, 101];

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

proptest! {
    #[test]
    fn fp2_field_laws(pi in 0usize..PRIMES.len(), a in any::<i64>(), b in any::<i64>(),
                      c in any::<i64>(), d in any::<i64>()) {
        let p = PRIMES[pi];
        let x = fp2_make(p, a, b).unwrap();
        let y = fp2_make(p, c, d).unwrap();
        prop_assert_eq!(x * y, y * x);
        prop_assert_eq!((x + y) * y, x * y + y * y);
        prop_assert_eq!((x * y).norm(), x.norm() * y.norm() % p);
        if let Some(yi) = y.inv() {
            prop_assert_eq!(x / y * y, x);
            prop_assert!((y * yi).is_one());
        }
    }

    #[test]
    fn residual_of_is_multiplicative(pi in 0usize..PRIMES.len(),
                                     n1 in 1i64..100_000, d1 in 1i64..100_000,
                                     n2 in -100_000i64..-1, d2 in 1i64..100_000) {
        let ctx = Fp2Context::new(PRIMES[pi]).unwrap();
        let x = PadicElement::from_rational(ctx, &rational(n1, d1), 20);
        let y = PadicElement::from_rational(ctx, &rational(n2, d2), 20);
        let rx = residual_of(&x).unwrap();
        let ry = residual_of(&y).unwrap();
        prop_assert_eq!(residual_of(&x.mul(&y)).unwrap(), rx.mul(&ry));
        prop_assert_eq!(residual_of(&x.inv().unwrap()).unwrap(), rx.inv());
    }

    #[test]
    fn operations_respect_the_precision_contract(pi in 0usize..PRIMES.len(),
                                                 n1 in -10_000i64..10_000, d1 in 1i64..10_000,
                                                 n2 in -10_000i64..10_000, d2 in 1i64..10_000,
                                                 prec in 2i64..12) {
        let ctx = Fp2Context::new(PRIMES[pi]).unwrap();
        let (q1, q2) = (rational(n1, d1), rational(n2, d2));
        let x = PadicElement::from_rational(ctx, &q1, prec);
        let y = PadicElement::from_rational(ctx, &q2, prec);

        let s = x.add(&y);
        let exact = PadicElement::from_rational(ctx, &(&q1 + &q2), prec + 10);
        prop_assert!(s.agrees_mod(&exact, s.absolute_precision()));
        prop_assert!(s.absolute_precision() >= prec);

        let m = x.mul(&y);
        let exact = PadicElement::from_rational(ctx, &(&q1 * &q2), prec + 40);
        prop_assert!(m.agrees_mod(&exact, m.absolute_precision()));
    }

    #[test]
    fn teichmuller_lifts_are_roots_of_unity(pi in 0usize..4, a in 0i64..30, b in 0i64..30) {
        let p = PRIMES[pi];
        let r = fp2_make(p, a, b).unwrap();
        prop_assume!(!r.is_zero());
        let t = PadicElement::teichmuller(r, 6).unwrap();
        prop_assert_eq!(padic_reduce(&t).unwrap(), r);
        let q = (p * p - 1) as i64;
        let one = PadicElement::from_integer(r.ctx(), 1, 6);
        prop_assert!(t.pow(q).unwrap().agrees_mod(&one, 6));
        prop_assert_eq!(residual_of(&t).unwrap(), ResidualClass::new(0, r).unwrap());
    }
}

#[test]
fn residual_of_p_powers() {
    let ctx = Fp2Context::new(7).unwrap();
    let x = PadicElement::from_rational(ctx, &rational(98, 3), 10);
    // 98/3 = 7^2 * 2/3, and 2/3 = 3 mod 7
    assert_eq!(
        residual_of(&x).unwrap(),
        ResidualClass::new(2, ctx.from_fp(3)).unwrap()
    );
    let z = PadicElement::zero(ctx, 5);
    assert!(residual_of(&z).is_err());
}

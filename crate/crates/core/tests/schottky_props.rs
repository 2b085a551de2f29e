use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use padic_periods::schottky::{
    genus_two_example, min_displacement, mobius_image_of_ball, tate_example, tree_distance,
    verify_good_position, Ball, BallPair, Disc, MobiusMap, P1Point, SchottkyGroup, TreeVertex,
};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Points `n / p^e`, `0 <= n < p^3`, `0 <= e <= 3`, and `∞`: every residue
/// class of `P^1(Z/p^3)` together with points of negative valuation.
fn grid(p: u64) -> Vec<P1Point> {
    let p = p as i64;
    let mut pts = vec![P1Point::Infinity];
    for e in 0..=3u32 {
        for n in 0..p.pow(3) {
            if e > 0 && n % p == 0 {
                continue;
            }
            pts.push(P1Point::Finite(q(n, p.pow(e))));
        }
    }
    pts
}

fn map_strategy() -> impl Strategy<Value = MobiusMap> {
    (-30i64..30, -30i64..30, -30i64..30, -30i64..30).prop_filter_map("singular", |(a, b, c, d)| {
        MobiusMap::from_ints(a, b, c, d).ok()
    })
}

fn disc_strategy() -> impl Strategy<Value = Disc> {
    (
        -200i64..200,
        0u32..3,
        -2i64..4,
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(n, e, r, open, complement)| {
            let center = q(n, 5i64.pow(e));
            let ball = if open {
                Ball::open(center, q(2 * r - 1, 2))
            } else {
                Ball::closed(center, q(r, 1))
            };
            if complement {
                Disc::Complement(ball)
            } else {
                Disc::Ball(ball)
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ball_images_agree_with_pointwise_oracle(m in map_strategy(), d in disc_strategy(),
                                               use7 in any::<bool>()) {
        let p = if use7 { 7 } else { 5 };
        let img = mobius_image_of_ball(&m, &d, p).unwrap();
        let inv = m.inverse();
        for z in grid(p) {
            prop_assert_eq!(d.contains(&z, p), img.contains(&m.apply(&z), p), "z={}", z);
            prop_assert_eq!(img.contains(&z, p), d.contains(&inv.apply(&z), p), "w={}", z);
        }
    }

    #[test]
    fn translation_length_is_a_class_function(k in 1u32..4, u in prop::sample::select(vec![1i64, 2, 3, 4, 6]),
                                              h in map_strategy(), n in 1i64..6) {
        let p = 5;
        let m = MobiusMap::from_ints(5i64.pow(k) * u, 0, 0, 1).unwrap();
        let c = m.conjugate_by(&h);
        prop_assert_eq!(c.translation_length(p).unwrap(), k as i64);
        prop_assert_eq!(c.pow(n).translation_length(p).unwrap(), n * k as i64);
        prop_assert_eq!(c.inverse().translation_length(p).unwrap(), k as i64);
    }

    #[test]
    fn tree_distance_is_a_metric(a in map_strategy(), b in map_strategy(), c in map_strategy()) {
        let p = 5;
        let (u, v, w) = (
            TreeVertex::from_matrix(&a, p),
            TreeVertex::from_matrix(&b, p),
            TreeVertex::from_matrix(&c, p),
        );
        prop_assert_eq!(tree_distance(&u, &v, p), tree_distance(&v, &u, p));
        prop_assert_eq!(tree_distance(&u, &u, p), 0);
        prop_assert!(tree_distance(&u, &w, p) <= tree_distance(&u, &v, p) + tree_distance(&v, &w, p));
        // PGL_2 acts by isometries
        prop_assert_eq!(tree_distance(&u.act(&c, p), &v.act(&c, p), p), tree_distance(&u, &v, p));
    }
}

#[test]
fn reduced_word_counts() {
    let p = 5;
    let gens = [
        MobiusMap::from_ints(25, 0, 0, 1).unwrap(),
        MobiusMap::from_ints(25, 0, 0, 1)
            .unwrap()
            .conjugate_by(&MobiusMap::from_ints(2, -1, 1, -1).unwrap()),
        MobiusMap::from_ints(25, 0, 0, 1)
            .unwrap()
            .conjugate_by(&MobiusMap::from_ints(3, 1, 1, 2).unwrap()),
    ];
    for g in 1..=3usize {
        let group = SchottkyGroup::new(p, gens[..g].to_vec()).unwrap();
        let max = if g == 3 { 5 } else { 6 };
        let mut by_len = vec![0u64; max + 1];
        let mut seen = std::collections::HashSet::new();
        for (w, _) in group.reduced_words(max) {
            by_len[w.len()] += 1;
            assert!(seen.insert(w));
        }
        assert_eq!(by_len[0], 1);
        for l in 1..=max {
            let g = g as u64;
            assert_eq!(
                by_len[l],
                2 * g * (2 * g - 1).pow(l as u32 - 1),
                "g={g} l={l}"
            );
        }
    }
}

#[test]
fn tree_translation_lengths_match_displacement() {
    let p = 5;
    let g = genus_two_example();
    for (w, m) in g.reduced_words(2).skip(1) {
        assert_eq!(
            min_displacement(&m, 4, p),
            m.translation_length(p).unwrap(),
            "{w}"
        );
    }
}

#[test]
fn tate_system_orientation() {
    let p = 5;
    // z -> p z: the repelling disc around ∞ is B, the attracting one around 0 is C
    assert!(verify_good_position(&tate_example(p)).unwrap().passed());
    // with B = {v >= 1} and C = {v <= -1} the generator must act as z -> z/p
    let balls = vec![BallPair {
        b: Disc::Ball(Ball::closed_int(0, 1)),
        c: Disc::Complement(Ball::closed_int(0, 0)),
    }];
    let contracting = SchottkyGroup::new(p, vec![MobiusMap::from_ints(5, 0, 0, 1).unwrap()])
        .unwrap()
        .with_ball_system(balls.clone())
        .unwrap();
    let report = verify_good_position(&contracting).unwrap();
    assert!(report.disjoint());
    assert!(!report.passed());
    let expanding = SchottkyGroup::new(p, vec![MobiusMap::from_ints(1, 0, 0, 5).unwrap()])
        .unwrap()
        .with_ball_system(balls)
        .unwrap();
    assert!(verify_good_position(&expanding).unwrap().passed());
}

#[test]
fn crossing_fixed_points_fail_disjointness() {
    let p = 5;
    let a1 = MobiusMap::from_ints(25, 0, 0, 1).unwrap();
    // fixed points 5 and 1, the first inside the attracting disc of a1
    let h = MobiusMap::from_ints(5, 1, 1, 1).unwrap();
    let a2 = a1.conjugate_by(&h);
    let balls = vec![
        BallPair {
            b: Disc::Complement(Ball::closed_int(0, -1)),
            c: Disc::Ball(Ball::closed_int(0, 1)),
        },
        BallPair {
            b: Disc::Ball(Ball::closed_int(1, 1)),
            c: Disc::Ball(Ball::closed_int(5, 2)),
        },
    ];
    let g = SchottkyGroup::new(p, vec![a1, a2])
        .unwrap()
        .with_ball_system(balls)
        .unwrap();
    let r = verify_good_position(&g).unwrap();
    assert!(!r.disjoint());
    assert!(r
        .overlapping
        .contains(&("C1".to_string(), "C2".to_string())));
}

#[test]
fn words_move_the_fundamental_domain_into_their_first_disc() {
    for g in [genus_two_example(), tate_example(7)] {
        let p = g.p();
        let x = g.fundamental_domain_point().unwrap();
        let balls = g.ball_system().unwrap().to_vec();
        for (w, m) in g.reduced_words(4).skip(1) {
            let first = w.first().unwrap();
            let pair = &balls[first.generator];
            let target = if first.inverse { &pair.b } else { &pair.c };
            assert!(target.contains(&m.apply(&x), p), "{w}");
        }
    }
}

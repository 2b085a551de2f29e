//! Schottky groups in `PGL_2(Q_p)`: Möbius maps, discs, reduced words, the
//! Bruhat-Tits tree, and ball systems in good position.

mod ball;
mod group;
mod mobius;
mod tree;

pub use ball::{mobius_image_of_ball, Ball, Disc};
pub use group::{
    verify_good_position, BallPair, GoodPositionReport, Letter, ReducedWords, SchottkyGroup, Word,
};
pub use mobius::{MobiusMap, P1Point};
pub use tree::{min_displacement, tree_distance, TreeVertex};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchottkyError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("{0} is not hyperbolic")]
    NotHyperbolic(String),
    #[error("group has no ball system")]
    MissingBallSystem,
    #[error("ball system has {pairs} pairs for {generators} generators")]
    BallSystemSize { generators: usize, pairs: usize },
    #[error("cannot parse word {0:?}")]
    ParseWord(String),
    #[error("word uses generator g{0}, which the group does not have")]
    UnknownGenerator(usize),
    #[error("no point outside the ball system was found")]
    NoFundamentalDomainPoint,
}

/// The genus-2 Schottky group over `Q_5` used as a worked example:
/// `α_1 = diag(25, 1)` and `α_2 = h α_1 h^{-1}` with `h = [[2, -1], [1, -1]]`,
/// together with a ball system in good position.
pub fn genus_two_example() -> SchottkyGroup {
    let p = 5;
    let a1 = MobiusMap::from_ints(25, 0, 0, 1).unwrap();
    let h = MobiusMap::from_ints(2, -1, 1, -1).unwrap();
    let a2 = a1.conjugate_by(&h);
    let balls = vec![
        BallPair {
            b: Disc::Complement(Ball::closed_int(0, -1)),
            c: Disc::Ball(Ball::closed_int(0, 1)),
        },
        BallPair {
            b: Disc::Ball(Ball::closed_int(2, 1)),
            c: Disc::Ball(Ball::closed_int(1, 2)),
        },
    ];
    SchottkyGroup::new(p, vec![a1, a2])
        .and_then(|g| g.with_ball_system(balls))
        .expect("valid example")
}

/// The rank-one group `<diag(p, 1)>` with its standard ball system.
pub fn tate_example(p: u64) -> SchottkyGroup {
    let a = MobiusMap::from_ints(p as i64, 0, 0, 1).unwrap();
    SchottkyGroup::new(p, vec![a])
        .and_then(|g| {
            g.with_ball_system(vec![BallPair {
                b: Disc::Complement(Ball::closed_int(0, 0)),
                c: Disc::Ball(Ball::closed_int(0, 1)),
            }])
        })
        .expect("valid example")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_is_in_good_position() {
        let g = genus_two_example();
        let r = verify_good_position(&g).unwrap();
        assert!(r.passed(), "{r:?}");
        for m in g.generators() {
            assert_eq!(m.translation_length(5).unwrap(), 2);
        }
    }
}

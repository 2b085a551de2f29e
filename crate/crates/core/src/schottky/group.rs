use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::ball::{mobius_image_of_ball, Disc};
use super::mobius::{MobiusMap, P1Point};
use super::SchottkyError;
use crate::arith::Q;

/// A letter `α_i^{±1}`, with `i` zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Letter {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// A freely reduced word in the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// `α_i`.
    pub fn generator(i: usize) -> Self {
        Word {
            letters: vec![Letter::new(i, false)],
        }
    }

    /// Reduces freely as letters are appended.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inv()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    /// Exponent sums per generator: the image in `Γ^{ab} = Z^g`.
    pub fn abelianization(&self, g: usize) -> Vec<i64> {
        let mut v = vec![0; g];
        for l in &self.letters {
            v[l.generator] += if l.inverse { -1 } else { 1 };
        }
        v
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "identity");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "g{}", l.generator + 1)?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = SchottkyError;

    /// Parses `identity` or `*`-separated factors `g<i>` / `g<i>^<n>`,
    /// generators numbered from 1.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "identity" || s == "1" || s.is_empty() {
            return Ok(Word::identity());
        }
        let bad = || SchottkyError::ParseWord(s.to_string());
        let mut w = Word::identity();
        for factor in s.split('*') {
            let factor = factor.trim();
            let body = factor.strip_prefix('g').ok_or_else(bad)?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e.trim().parse::<i64>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let idx: usize = idx.trim().parse().map_err(|_| bad())?;
            if idx == 0 {
                return Err(bad());
            }
            w = w.mul(&Word::generator(idx - 1).pow(exp));
        }
        Ok(w)
    }
}

/// The pair `(B_i, C_i)` attached to a generator `α_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallPair {
    pub b: Disc,
    pub c: Disc,
}

/// A Schottky group over `Q_p` given by hyperbolic generators, optionally
/// with a ball system in good position.
#[derive(Clone, Debug)]
pub struct SchottkyGroup {
    p: u64,
    generators: Vec<MobiusMap>,
    inverses: Vec<MobiusMap>,
    ball_system: Option<Vec<BallPair>>,
}

impl SchottkyGroup {
    pub fn new(p: u64, generators: Vec<MobiusMap>) -> Result<Self, SchottkyError> {
        for g in &generators {
            if !g.is_hyperbolic(p) {
                return Err(SchottkyError::NotHyperbolic(g.to_string()));
            }
        }
        let inverses = generators.iter().map(|g| g.inverse()).collect();
        Ok(SchottkyGroup {
            p,
            generators,
            inverses,
            ball_system: None,
        })
    }

    pub fn with_ball_system(mut self, balls: Vec<BallPair>) -> Result<Self, SchottkyError> {
        if balls.len() != self.generators.len() {
            return Err(SchottkyError::BallSystemSize {
                generators: self.generators.len(),
                pairs: balls.len(),
            });
        }
        self.ball_system = Some(balls);
        Ok(self)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn genus(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[MobiusMap] {
        &self.generators
    }

    pub fn ball_system(&self) -> Option<&[BallPair]> {
        self.ball_system.as_deref()
    }

    pub fn letter_map(&self, l: Letter) -> &MobiusMap {
        if l.inverse {
            &self.inverses[l.generator]
        } else {
            &self.generators[l.generator]
        }
    }

    pub fn evaluate(&self, w: &Word) -> Result<MobiusMap, SchottkyError> {
        if let Some(i) = w.max_generator() {
            if i >= self.genus() {
                return Err(SchottkyError::UnknownGenerator(i + 1));
            }
        }
        Ok(w.letters().iter().fold(MobiusMap::identity(), |acc, &l| {
            acc.compose(self.letter_map(l))
        }))
    }

    /// Every reduced word of length at most `max_len`, shell by shell.
    pub fn reduced_words(&self, max_len: usize) -> ReducedWords<'_> {
        ReducedWords {
            group: self,
            max_len,
            shell: vec![(Word::identity(), MobiusMap::identity())],
            shell_len: 0,
            pos: 0,
        }
    }

    /// A point outside every ball of the system; the first of
    /// [`SchottkyGroup::fundamental_domain_points`].
    pub fn fundamental_domain_point(&self) -> Result<P1Point, SchottkyError> {
        self.fundamental_domain_points()?
            .next()
            .ok_or(SchottkyError::NoFundamentalDomainPoint)
    }

    /// Points outside every ball of the system, from a deterministic scan:
    /// the integers `1..p`, then `0`, then `c + u p^e` and `u p^{-e}` for
    /// `e = 1..7`.
    pub fn fundamental_domain_points(
        &self,
    ) -> Result<impl Iterator<Item = P1Point> + '_, SchottkyError> {
        let balls = self
            .ball_system
            .as_ref()
            .ok_or(SchottkyError::MissingBallSystem)?;
        let p = self.p as i64;
        let integers = (1..p).chain(std::iter::once(0)).map(P1Point::int);
        let deeper = (1..8u32).flat_map(move |e| {
            let pe = BigInt::from(p).pow(e);
            (0..p).flat_map(move |c| {
                let pe = pe.clone();
                (1..p).flat_map(move |u| {
                    let up = Q::from_integer(BigInt::from(c) + BigInt::from(u) * &pe);
                    let down = Q::new(BigInt::from(u), pe.clone());
                    [P1Point::Finite(up), P1Point::Finite(down)]
                })
            })
        });
        let p = self.p;
        Ok(integers.chain(deeper).filter(move |z| {
            balls
                .iter()
                .all(|bp| !bp.b.contains(z, p) && !bp.c.contains(z, p))
        }))
    }
}

/// Iterator over reduced words, by nondecreasing length.
pub struct ReducedWords<'a> {
    group: &'a SchottkyGroup,
    max_len: usize,
    shell: Vec<(Word, MobiusMap)>,
    shell_len: usize,
    pos: usize,
}

impl Iterator for ReducedWords<'_> {
    type Item = (Word, MobiusMap);

    fn next(&mut self) -> Option<Self::Item> {
        if self.pos == self.shell.len() {
            if self.shell_len == self.max_len || self.group.genus() == 0 {
                return None;
            }
            let g = self.group.genus();
            let mut next = Vec::with_capacity(self.shell.len() * (2 * g).max(1));
            for (w, m) in &self.shell {
                for i in 0..g {
                    for inverse in [false, true] {
                        let l = Letter::new(i, inverse);
                        if w.letters().last() == Some(&l.inv()) {
                            continue;
                        }
                        let mut letters = w.letters().to_vec();
                        letters.push(l);
                        next.push((Word { letters }, m.compose(self.group.letter_map(l))));
                    }
                }
            }
            self.shell = next;
            self.shell_len += 1;
            self.pos = 0;
        }
        let item = self.shell[self.pos].clone();
        self.pos += 1;
        Some(item)
    }
}

/// Outcome of the good-position checks, one flag per condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodPositionReport {
    /// Pairs of labels (`B1`, `C2`, ...) whose discs meet.
    pub overlapping: Vec<(String, String)>,
    /// `α_i(P^1 - B_i) = C_i`.
    pub maps_complement_b_to_c: Vec<bool>,
    /// `α_i^{-1}(P^1 - C_i) = B_i`.
    pub inverse_maps_complement_c_to_b: Vec<bool>,
}

impl GoodPositionReport {
    pub fn disjoint(&self) -> bool {
        self.overlapping.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.disjoint()
            && self.maps_complement_b_to_c.iter().all(|&b| b)
            && self.inverse_maps_complement_c_to_b.iter().all(|&b| b)
    }
}

pub fn verify_good_position(g: &SchottkyGroup) -> Result<GoodPositionReport, SchottkyError> {
    let balls = g
        .ball_system
        .as_ref()
        .ok_or(SchottkyError::MissingBallSystem)?;
    let p = g.p;
    let mut labelled = Vec::new();
    for (i, bp) in balls.iter().enumerate() {
        labelled.push((format!("B{}", i + 1), &bp.b));
        labelled.push((format!("C{}", i + 1), &bp.c));
    }
    let mut overlapping = Vec::new();
    for x in 0..labelled.len() {
        for y in x + 1..labelled.len() {
            if !labelled[x].1.is_disjoint(labelled[y].1, p) {
                overlapping.push((labelled[x].0.clone(), labelled[y].0.clone()));
            }
        }
    }
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for (i, bp) in balls.iter().enumerate() {
        let img = mobius_image_of_ball(&g.generators[i], &bp.b.complement(), p)?;
        forward.push(img.same_set(&bp.c, p));
        let img = mobius_image_of_ball(&g.inverses[i], &bp.c.complement(), p)?;
        backward.push(img.same_set(&bp.b, p));
    }
    Ok(GoodPositionReport {
        overlapping,
        maps_complement_b_to_c: forward,
        inverse_maps_complement_c_to_b: backward,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schottky::ball::Ball;

    fn tate(p: u64) -> SchottkyGroup {
        SchottkyGroup::new(p, vec![MobiusMap::from_ints(p as i64, 0, 0, 1).unwrap()]).unwrap()
    }

    #[test]
    fn word_parsing_round_trips() {
        let w: Word = "g1*g2^-1*g2^-1".parse().unwrap();
        assert_eq!(w.to_string(), "g1*g2^-1*g2^-1");
        assert_eq!(w.len(), 3);
        let r: Word = "g1*g2*g2^-1".parse().unwrap();
        assert_eq!(r, Word::generator(0));
        assert_eq!("identity".parse::<Word>().unwrap(), Word::identity());
        assert_eq!(Word::identity().to_string(), "identity");
        assert!("h1".parse::<Word>().is_err());
        assert!("g0".parse::<Word>().is_err());
        assert_eq!(
            "g2^3".parse::<Word>().unwrap().abelianization(2),
            vec![0, 3]
        );
    }

    #[test]
    fn rank_one_words() {
        let g = tate(5);
        let words: Vec<String> = g.reduced_words(3).map(|(w, _)| w.to_string()).collect();
        assert_eq!(
            words,
            [
                "identity",
                "g1",
                "g1^-1",
                "g1*g1",
                "g1^-1*g1^-1",
                "g1*g1*g1",
                "g1^-1*g1^-1*g1^-1"
            ]
        );
        assert_eq!(g.reduced_words(0).count(), 1);
    }

    #[test]
    fn words_evaluate_consistently() {
        let p = 5;
        let h = MobiusMap::from_ints(2, -1, 1, -1).unwrap();
        let a = MobiusMap::from_ints(25, 0, 0, 1).unwrap();
        let g = SchottkyGroup::new(p, vec![a.clone(), a.conjugate_by(&h)]).unwrap();
        for (w, m) in g.reduced_words(3) {
            assert!(g.evaluate(&w).unwrap().projectively_eq(&m));
        }
        assert!(g.evaluate(&"g3".parse().unwrap()).is_err());
    }

    #[test]
    fn rejects_elliptic_generator() {
        let r = SchottkyGroup::new(5, vec![MobiusMap::from_ints(0, 1, -1, 0).unwrap()]);
        assert!(matches!(r, Err(SchottkyError::NotHyperbolic(_))));
    }

    #[test]
    fn tate_ball_system() {
        let p = 5;
        // z -> p z pushes {v >= 0} onto {v >= 1}
        let balls = vec![BallPair {
            b: Disc::Complement(Ball::closed_int(0, 0)),
            c: Disc::Ball(Ball::closed_int(0, 1)),
        }];
        let g = tate(p).with_ball_system(balls).unwrap();
        let report = verify_good_position(&g).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(g.fundamental_domain_point().unwrap(), P1Point::int(1));
    }

    #[test]
    fn empty_group_passes_vacuously() {
        let g = SchottkyGroup::new(7, vec![])
            .unwrap()
            .with_ball_system(vec![])
            .unwrap();
        assert!(verify_good_position(&g).unwrap().passed());
        assert_eq!(g.reduced_words(4).count(), 1);
    }

    #[test]
    fn missing_ball_system_is_an_error() {
        assert!(matches!(
            verify_good_position(&tate(5)),
            Err(SchottkyError::MissingBallSystem)
        ));
    }
}

//! Cusps, widths, local parameters and ramification of the maps
//! `X → X_0(p)` for `X` of level `Γ_0(p) ∩ Γ(2)` or `Γ_0(p) ∩ K`, with `K`
//! the matrices diagonal modulo 3.
//!
//! The local parameter at a cusp `x` of width `h` is `exp(2πi σ_x(z) / h)`
//! with `σ_x ∈ SL_2(Z)` sending `x` to `∞`; for `x = a/c` we take
//! `σ_x^{-1} = [[a, b], [c, d]]` with `0 ≤ d < c`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::eta::check_prime;
use super::QSeriesError;
use crate::arith::{eisenstein_d, Q};
use crate::schottky::{MobiusMap, P1Point};

/// The auxiliary level `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Two,
    Three,
}

impl Level {
    pub fn from_n(n: u64) -> Result<Self, QSeriesError> {
        match n {
            2 => Ok(Level::Two),
            3 => Ok(Level::Three),
            _ => Err(QSeriesError::InvalidLevel(n)),
        }
    }

    pub fn n(self) -> i128 {
        match self {
            Level::Two => 2,
            Level::Three => 3,
        }
    }
}

/// The groups whose cusps appear here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Gamma0(u64),
    Level(Level, u64),
}

impl Group {
    /// Membership of an integer matrix of determinant 1.
    pub fn contains(&self, m: &[i128; 4]) -> bool {
        let [a, b, c, d] = *m;
        if a * d - b * c != 1 {
            return false;
        }
        match *self {
            Group::Gamma0(p) => c.rem_euclid(p as i128) == 0,
            Group::Level(level, p) => {
                let n = level.n();
                if c.rem_euclid(p as i128) != 0 {
                    return false;
                }
                let r = |x: i128| x.rem_euclid(n);
                match level {
                    Level::Two => r(b) == 0 && r(c) == 0,
                    // b ≡ c ≡ 0 forces a ≡ d ≡ ±1
                    Level::Three => r(b) == 0 && r(c) == 0,
                }
            }
        }
    }
}

fn to_i128(x: &BigInt) -> i128 {
    x.to_i128().expect("small integer")
}

/// `(a, c)` with `gcd = 1`, `c ≥ 0`, and `(1, 0)` for `∞`.
fn cusp_pair(x: &P1Point) -> (i128, i128) {
    match x {
        P1Point::Infinity => (1, 0),
        P1Point::Finite(q) => (to_i128(q.numer()), to_i128(q.denom())),
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

fn q_of(n: i128) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn mobius(m: [i128; 4]) -> MobiusMap {
    MobiusMap::new(q_of(m[0]), q_of(m[1]), q_of(m[2]), q_of(m[3])).expect("invertible")
}

/// `σ_x` as an integer matrix.
pub fn scaling_matrix(x: &P1Point) -> [i128; 4] {
    let (a, c) = cusp_pair(x);
    if c == 0 {
        return [1, 0, 0, 1];
    }
    let d = if c == 1 {
        0
    } else {
        ext_gcd(a, c).1.rem_euclid(c)
    };
    let b = (a * d - 1) / c;
    // inverse of [[a, b], [c, d]]
    [d, -b, -c, a]
}

/// Least `h > 0` with `σ^{-1} T^h σ` in the group.
pub fn width_in(group: Group, x: &P1Point) -> i64 {
    let (a, c) = cusp_pair(x);
    (1..)
        .find(|&h: &i128| group.contains(&[1 - h * a * c, h * a * a, -h * c * c, 1 + h * a * c]))
        .expect("finite index") as i64
}

/// Width of `x` on the level-`N` curve.
pub fn cusp_width(level: Level, p: u64, x: &P1Point) -> Result<i64, QSeriesError> {
    check_prime(p)?;
    Ok(width_in(Group::Level(level, p), x))
}

fn show_sigma(m: &[i128; 4]) -> String {
    let [a, b, c, d] = *m;
    let lin = |x: i128, y: i128| match (x, y) {
        (0, y) => format!("{y}"),
        (1, 0) => "z".to_string(),
        (-1, 0) => "-z".to_string(),
        (x, 0) => format!("{x}z"),
        (1, y) => format!("z{y:+}"),
        (-1, y) => format!("-z{y:+}"),
        (x, y) => format!("{x}z{y:+}"),
    };
    if c == 0 {
        lin(a * d, b * d)
    } else if a == 0 {
        format!("{b}/({})", lin(c, d))
    } else {
        format!("({})/({})", lin(a, b), lin(c, d))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspData {
    pub level: Level,
    pub p: u64,
    pub cusp: P1Point,
    pub width: i64,
    pub sigma: MobiusMap,
    /// `exp(2πi σ(z) / width)` as text.
    pub local_parameter: String,
}

pub fn cusp_data(level: Level, p: u64, x: &P1Point) -> Result<CuspData, QSeriesError> {
    let width = cusp_width(level, p, x)?;
    let s = scaling_matrix(x);
    Ok(CuspData {
        level,
        p,
        cusp: x.clone(),
        width,
        sigma: mobius(s),
        local_parameter: format!("exp(2*pi*i*{}/{width})", show_sigma(&s)),
    })
}

/// A cusp of `X_0(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gamma0Cusp {
    Zero,
    Infinity,
}

impl Gamma0Cusp {
    /// `[x]` for `x ∈ P^1(Q)`.
    pub fn of(p: u64, x: &P1Point) -> Self {
        let (_, c) = cusp_pair(x);
        if c.rem_euclid(p as i128) == 0 {
            Gamma0Cusp::Infinity
        } else {
            Gamma0Cusp::Zero
        }
    }

    pub fn width(self, p: u64) -> i64 {
        match self {
            Gamma0Cusp::Zero => p as i64,
            Gamma0Cusp::Infinity => 1,
        }
    }

    fn sigma(self) -> [i128; 4] {
        match self {
            Gamma0Cusp::Zero => [0, 1, -1, 0],
            Gamma0Cusp::Infinity => [1, 0, 0, 1],
        }
    }

    /// `+1` at `∞`, `-1` at `0`: the divisor `(∞) - (0)`.
    pub fn sign(self) -> i64 {
        match self {
            Gamma0Cusp::Zero => -1,
            Gamma0Cusp::Infinity => 1,
        }
    }
}

impl fmt::Display for Gamma0Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gamma0Cusp::Zero => write!(f, "[0]"),
            Gamma0Cusp::Infinity => write!(f, "[inf]"),
        }
    }
}

/// `γ ∈ Γ_0(p)` with `γ(x)` the representative of its class.
fn gamma0_mover(p: u64, x: &P1Point) -> [i128; 4] {
    let (a, c) = cusp_pair(x);
    let p = p as i128;
    match Gamma0Cusp::of(p as u64, x) {
        Gamma0Cusp::Infinity => {
            // (C, D) = (-c, a), A a + B c = 1
            let (_, aa, bb) = ext_gcd(a, c);
            [aa, bb, -c, a]
        }
        Gamma0Cusp::Zero => {
            // (A, B) = (c, -a), c D + a p m = 1, C = p m
            let (_, dd, m) = ext_gcd(c, a * p);
            [c, -a, p * m, dd]
        }
    }
}

/// `q_target ∘ map = e^{2πi·root_of_unity} · q_source^index` near `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalParameterRelation {
    pub source: P1Point,
    pub target: Gamma0Cusp,
    pub index: i64,
    pub root_of_unity: Q,
}

/// Ramification of the map `X → X_0(p)` induced by `map` at `source`.
///
/// Moves `map(source)` to `0` or `∞` by some `γ ∈ Γ_0(p)`; then
/// `σ' γ map σ^{-1}` fixes `∞`, so it is `w ↦ αw + β`, and the index is
/// `α · h_source / h_target`.
pub fn ramification_index(
    level: Level,
    p: u64,
    map: &MobiusMap,
    source: &P1Point,
    target: Gamma0Cusp,
) -> Result<LocalParameterRelation, QSeriesError> {
    check_prime(p)?;
    let image = map.apply(source);
    if Gamma0Cusp::of(p, &image) != target {
        return Err(QSeriesError::CuspMismatch(format!(
            "{image} is not in the class {target}"
        )));
    }
    let gamma = mobius(gamma0_mover(p, &image));
    let sigma_t = mobius(target.sigma());
    let sigma_s = mobius(scaling_matrix(source));
    let m = sigma_t
        .compose(&gamma)
        .compose(map)
        .compose(&sigma_s.inverse());
    let [a, b, c, d] = m.entries();
    if !c.is_zero() {
        return Err(QSeriesError::NonAffine(m.to_string()));
    }
    let alpha = a / d;
    let beta = b / d;
    let hs = q_of(width_in(Group::Level(level, p), source) as i128);
    let ht = q_of(target.width(p) as i128);
    let index = &alpha * &hs / &ht;
    if !index.is_integer() || index <= Q::zero() {
        return Err(QSeriesError::NonAffine(format!("index {index}")));
    }
    let r = &beta / &ht;
    Ok(LocalParameterRelation {
        source: source.clone(),
        target,
        index: index.to_integer().to_i64().expect("small"),
        root_of_unity: &r - r.floor(),
    })
}

fn frac(n: i64, d: i64) -> P1Point {
    P1Point::Finite(Q::new(BigInt::from(n), BigInt::from(d)))
}

/// Representatives of the cusps of the level-`N` curve, those above `[0]`
/// first.
pub fn cusps(level: Level, p: u64) -> Vec<P1Point> {
    let p = p as i64;
    match level {
        Level::Two => vec![
            P1Point::int(1),
            frac(1, 2),
            P1Point::int(0),
            frac(1, p),
            frac(2, p),
            P1Point::Infinity,
        ],
        Level::Three => vec![
            P1Point::int(0),
            frac(1, 3),
            P1Point::int(1),
            frac(1, 2),
            P1Point::Infinity,
            frac(2, p),
            frac(1, p),
            frac(3, p),
        ],
    }
}

/// `(±(a, c) mod N, p | c)`, a complete invariant of the cusp class.
pub fn cusp_class(level: Level, p: u64, x: &P1Point) -> (i128, i128, bool) {
    let (a, c) = cusp_pair(x);
    let n = level.n();
    let (a, c) = (a.rem_euclid(n), c.rem_euclid(n));
    let neg = ((-a).rem_euclid(n), (-c).rem_euclid(n));
    let (a, c) = (a, c).min(neg);
    (a, c, c_divisible(p, x))
}

fn c_divisible(p: u64, x: &P1Point) -> bool {
    Gamma0Cusp::of(p, x) == Gamma0Cusp::Infinity
}

/// Degree of `X → X_0(p)`: the sum of cusp widths on `X` over that on
/// `X_0(p)`.
pub fn map_degree(level: Level, p: u64) -> Result<i64, QSeriesError> {
    let total: i64 = cusps(level, p)
        .iter()
        .map(|x| cusp_width(level, p, x))
        .sum::<Result<i64, _>>()?;
    Ok(total / (p as i64 + 1))
}

/// The maps `X → X_0(p)` used for each level, with labels.
pub fn standard_maps(level: Level) -> Vec<(&'static str, MobiusMap)> {
    let m = |a, b, c, d| MobiusMap::from_ints(a, b, c, d).expect("invertible");
    match level {
        Level::Two => vec![("pi", m(1, 0, 0, 1)), ("pi'", m(1, 1, 0, 2))],
        Level::Three => vec![
            ("pi_-1", m(1, 0, 0, 1)),
            ("pi_0", m(1, 0, 0, 3)),
            ("pi_1", m(1, 1, 0, 3)),
            ("pi_2", m(1, 2, 0, 3)),
            ("pi_3", m(3, 0, 0, 1)),
        ],
    }
}

/// One local-parameter relation compared with its expected exponent.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub cusp: P1Point,
    pub map: &'static str,
    pub expected_target: Gamma0Cusp,
    pub expected_index: i64,
    pub relation: LocalParameterRelation,
}

impl RelationCheck {
    pub fn matches(&self) -> bool {
        self.expected_target == self.relation.target && self.expected_index == self.relation.index
    }
}

/// The published local-parameter relations for level 2: cusp, target on
/// `X_0(p)`, exponent for `π`, exponent for `π'`.
pub const LEVEL_TWO_EXPONENTS: [(&str, Gamma0Cusp, i64, i64); 6] = [
    ("1", Gamma0Cusp::Zero, 2, 4),
    ("1/p", Gamma0Cusp::Infinity, 2, 4),
    ("1/2", Gamma0Cusp::Zero, 2, 1),
    ("2/p", Gamma0Cusp::Infinity, 2, 1),
    ("0", Gamma0Cusp::Zero, 2, 1),
    ("inf", Gamma0Cusp::Infinity, 2, 1),
];

/// The published ramification table for level 3 at the cusps above `[0]`:
/// cusp and indices for `π_{-1}, π_0, π_1, π_2, π_3`.
pub const LEVEL_THREE_TABLE: [(&str, [i64; 5]); 4] = [
    ("0", [3, 1, 1, 1, 9]),
    ("1/3", [3, 1, 1, 1, 9]),
    ("1", [3, 1, 1, 9, 1]),
    ("1/2", [3, 1, 9, 1, 1]),
];

fn parse_cusp(label: &str, p: u64) -> P1Point {
    match label {
        "inf" => P1Point::Infinity,
        "0" => P1Point::int(0),
        "1" => P1Point::int(1),
        "1/2" => frac(1, 2),
        "1/3" => frac(1, 3),
        "1/p" => frac(1, p as i64),
        "2/p" => frac(2, p as i64),
        _ => unreachable!("fixed labels"),
    }
}

/// The twelve level-2 relations `q'_[0|∞] ∘ π^{(')} = q_x^e`.
pub fn level_two_relations(p: u64) -> Result<Vec<RelationCheck>, QSeriesError> {
    let maps = standard_maps(Level::Two);
    let mut out = Vec::new();
    for (label, expected_target, e_pi, e_pi2) in LEVEL_TWO_EXPONENTS {
        let x = parse_cusp(label, p);
        for ((name, m), e) in maps.iter().zip([e_pi, e_pi2]) {
            let target = Gamma0Cusp::of(p, &m.apply(&x));
            out.push(RelationCheck {
                cusp: x.clone(),
                map: name,
                expected_target,
                expected_index: e,
                relation: ramification_index(Level::Two, p, m, &x, target)?,
            });
        }
    }
    Ok(out)
}

/// One row of the level-3 ramification table, computed and published.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub cusp: P1Point,
    pub local_parameter: String,
    pub computed: [i64; 5],
    pub published: [i64; 5],
}

impl TableRow {
    pub fn matches(&self) -> bool {
        self.computed == self.published
    }
}

pub fn level_three_table(p: u64) -> Result<Vec<TableRow>, QSeriesError> {
    check_prime(p)?;
    if p % 3 != 1 {
        return Err(QSeriesError::InvalidPrime(p));
    }
    let maps = standard_maps(Level::Three);
    LEVEL_THREE_TABLE
        .iter()
        .map(|(label, published)| {
            let x = parse_cusp(label, p);
            let mut computed = [0; 5];
            for (slot, (_, m)) in computed.iter_mut().zip(&maps) {
                let target = Gamma0Cusp::of(p, &m.apply(&x));
                *slot = ramification_index(Level::Three, p, m, &x, target)?.index;
            }
            Ok(TableRow {
                local_parameter: cusp_data(Level::Three, p, &x)?.local_parameter,
                cusp: x,
                computed,
                published: *published,
            })
        })
        .collect()
}

/// `Σ e_x` over the cusps `x` with `map(x)` in the class `target`.
pub fn fiber_sum(
    level: Level,
    p: u64,
    map: &MobiusMap,
    target: Gamma0Cusp,
) -> Result<i64, QSeriesError> {
    let mut sum = 0;
    for x in cusps(level, p) {
        if Gamma0Cusp::of(p, &map.apply(&x)) == target {
            sum += ramification_index(level, p, map, &x, target)?.index;
        }
    }
    Ok(sum)
}

/// A divisor supported on cusps, keyed by the cusp's display form.
pub type CuspDivisor = BTreeMap<String, i64>;

/// `Σ_j c_j · map_j^*((∞) - (0))` over `(c_j, map_j)`.
pub fn pullback_combination(
    level: Level,
    p: u64,
    terms: &[(i64, MobiusMap)],
) -> Result<CuspDivisor, QSeriesError> {
    let mut out = CuspDivisor::new();
    for x in cusps(level, p) {
        let mut coeff = 0;
        for (c, m) in terms {
            let target = Gamma0Cusp::of(p, &m.apply(&x));
            coeff += c * target.sign() * ramification_index(level, p, m, &x, target)?.index;
        }
        if coeff != 0 {
            out.insert(x.to_string(), coeff);
        }
    }
    Ok(out)
}

/// `ψ^*((∞) - (0))` for `ψ(z) = 2((z+1)/2) - (z)`.
pub fn correspondence_pullback(p: u64) -> Result<CuspDivisor, QSeriesError> {
    let maps = standard_maps(Level::Two);
    pullback_combination(
        Level::Two,
        p,
        &[(2, maps[1].1.clone()), (-1, maps[0].1.clone())],
    )
}

/// The divisor of `μ = u(π')^2 / u(π)`, from `div u = ((p-1)/d)((∞) - (0))`.
pub fn mu_divisor(p: u64) -> Result<CuspDivisor, QSeriesError> {
    let k = ((p - 1) / eisenstein_d(p)) as i64;
    Ok(correspondence_pullback(p)?
        .into_iter()
        .map(|(x, c)| (x, k * c))
        .collect())
}

/// The divisor of `μ_3 = u(π_2)^3 / u(π_{-1})`.
pub fn mu3_divisor(p: u64) -> Result<CuspDivisor, QSeriesError> {
    let k = ((p - 1) / eisenstein_d(p)) as i64;
    let maps = standard_maps(Level::Three);
    let d = pullback_combination(
        Level::Three,
        p,
        &[(3, maps[3].1.clone()), (-1, maps[0].1.clone())],
    )?;
    Ok(d.into_iter().map(|(x, c)| (x, k * c)).collect())
}

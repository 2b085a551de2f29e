//! The generators file read by `theta`: a prime, generator matrices and a
//! ball system, as JSON.
//!
//! ```json
//! {
//!   "p": 5,
//!   "generators": [[5, 0, 0, 1]],
//!   "balls": [
//!     { "b": { "center": 0, "radius": 0, "complement": true },
//!       "c": { "center": 0, "radius": 1 } }
//!   ]
//! }
//! ```
//!
//! Numbers may be integers or strings `"a/b"`. A disc is
//! `{v(z - center) >= radius}` (or `> radius` with `"closed": false`),
//! or its complement.

use std::path::Path;

use serde::Deserialize;

use padic_periods::arith::Q;
use padic_periods::schottky::{Ball, BallPair, Disc, MobiusMap, SchottkyGroup};

use crate::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn to_q(&self) -> Result<Q, CliError> {
        match self {
            Number::Int(n) => Ok(Q::from_integer((*n).into())),
            Number::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("not a rational number: {s:?}"))),
        }
    }
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscSpec {
    pub center: Number,
    pub radius: Number,
    #[serde(default = "default_true")]
    pub closed: bool,
    #[serde(default)]
    pub complement: bool,
}

impl DiscSpec {
    fn to_disc(&self) -> Result<Disc, CliError> {
        let (c, r) = (self.center.to_q()?, self.radius.to_q()?);
        let ball = if self.closed {
            Ball::closed(c, r)
        } else {
            Ball::open(c, r)
        };
        Ok(if self.complement {
            Disc::Complement(ball)
        } else {
            Disc::Ball(ball)
        })
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallPairSpec {
    pub b: DiscSpec,
    pub c: DiscSpec,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorsFile {
    pub p: u64,
    pub generators: Vec<[Number; 4]>,
    pub balls: Vec<BallPairSpec>,
}

impl GeneratorsFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("generators file: {e}")))
    }

    /// The group with its ball system. Non-hyperbolic generators are a
    /// geometry failure.
    pub fn group(&self) -> Result<SchottkyGroup, CliError> {
        let mut gens = Vec::new();
        for m in &self.generators {
            let [a, b, c, d] = m;
            let g = MobiusMap::new(a.to_q()?, b.to_q()?, c.to_q()?, d.to_q()?)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            gens.push(g);
        }
        let balls = self
            .balls
            .iter()
            .map(|bp| {
                Ok(BallPair {
                    b: bp.b.to_disc()?,
                    c: bp.c.to_disc()?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        SchottkyGroup::new(self.p, gens)
            .map_err(|e| CliError::Geometry(e.to_string()))?
            .with_ball_system(balls)
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}

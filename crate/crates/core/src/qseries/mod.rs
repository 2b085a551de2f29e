//! Exact q-expansions of eta quotients and the modular functions of the
//! level-2 and level-3 curves, a rewriting engine for `Δ` transformation
//! laws, and cusp widths, local parameters and ramification indices.

mod cusps;
mod cyclo;
mod eta;
mod rewrite;
mod series;

pub use cusps::{
    correspondence_pullback, cusp_class, cusp_data, cusp_width, cusps, fiber_sum,
    level_three_table, level_two_relations, map_degree, mu3_divisor, mu_divisor,
    pullback_combination, ramification_index, scaling_matrix, standard_maps, width_in, CuspData,
    CuspDivisor, Gamma0Cusp, Group, Level, LocalParameterRelation, RelationCheck, TableRow,
    LEVEL_THREE_TABLE, LEVEL_TWO_EXPONENTS,
};
pub use cyclo::{Cyclo, CONDUCTORS};
pub use eta::{
    delta_expansion, eta_expansion, euler_product, h3_expansion, lambda_eta_quotient,
    lambda_expansion, mu3_expansion, mu_expansion, u_eta_quotient, u_expansion, verify_fourier_mu,
    EtaQuotient, FourierMuLeading,
};
pub use rewrite::{
    verify_functional_equation_mu, verify_functional_equation_u, FunctionalEquationCertificate,
    ModularSymbolTerm, NormalForm,
};
pub use series::{QExpansion, Variable, MAX_EXPONENT_DENOMINATOR};

use thiserror::Error;

use crate::arith::Q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QSeriesError {
    #[error("series in different variables: {left} and {right}")]
    VariableMismatch { left: String, right: String },
    #[error("exponent denominator {found} exceeds {limit}")]
    DenominatorLimit { found: u64, limit: u32 },
    #[error("exponents do not lie on a common lattice")]
    ExponentLattice,
    #[error("the series is zero to the known order")]
    ZeroSeries,
    #[error("fractional power of a series with leading coefficient {0} (need 1)")]
    Branch(String),
    #[error("e^(2 pi i * {0}) is not a 12th root of unity")]
    RootOfUnity(Q),
    #[error("substitution must keep the upper half plane")]
    NotUpperHalfPlane,
    #[error("coefficients need conductor {needed}, caller allows {allowed}")]
    FieldTooSmall { needed: u32, allowed: u32 },
    #[error("{0} is not a prime >= 5 valid here")]
    InvalidPrime(u64),
    #[error("level {0} is not supported (need 2 or 3)")]
    InvalidLevel(u64),
    #[error("cusp mismatch: {0}")]
    CuspMismatch(String),
    #[error("composite local map is not affine: {0}")]
    NonAffine(String),
    #[error("rewriting failed: {0}")]
    Rewrite(String),
}

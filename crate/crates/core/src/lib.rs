//! Exact computation and verification of the residual p-adic period
//! pairing of `X_0(p)` with level-2 structure, together with a generic
//! Schottky-group / theta-function engine over `Q_p` and an exact
//! q-expansion engine for eta quotients.
//!
//! Module map:
//!
//! - [`arith`]: `F_{p^2}`, capped-precision `K`, residual classes.
//! - [`supersingular`]: supersingular Legendre invariants.
//! - [`pairing`]: the residual pairing matrix and its identities.
//! - [`schottky`]: Möbius maps, balls, reduced words, the Bruhat-Tits tree.
//! - [`theta`]: truncated theta products and the period pairing.
//! - [`qseries`]: q-expansions, the modular rewriter, cusps and ramification.

pub mod arith;
pub mod pairing;
pub mod qseries;
pub mod schottky;
pub mod supersingular;
pub mod theta;

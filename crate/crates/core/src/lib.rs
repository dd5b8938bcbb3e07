//! Symbolic calculator and certificate-producing decision engine for linear
//! order types.
//!
//! Layers, bottom up: [`ordinal`] arithmetic in Cantor normal form, the
//! brute-force [`finite`] oracle, the [`term`] algebra with its point-level
//! presentation, the [`engine`] of inference rules, and the constructions in
//! [`condensation`], [`hierarchy`] and [`game`].

pub mod cli;
pub mod condensation;
pub mod engine;
pub mod error;
pub mod finite;
pub mod game;
pub mod hierarchy;
pub mod ordinal;
pub mod term;
pub mod verdict;

pub use error::{Error, Result};
pub use ordinal::Ordinal;
pub use term::{normalize, parse_term, Term};
pub use verdict::{Answer, Certificate, Claim, Verdict};

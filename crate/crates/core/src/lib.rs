//! Exact generating-series calculus for curve-counting invariants.
//!
//! The crate implements, over exact rational arithmetic:
//!
//! - truncated series graded by an effective cone of curve classes, with
//!   exp/log/power/inverse ([`series`]);
//! - the wall-crossing transforms between generalized Donaldson-Thomas
//!   invariants and parabolic stable-pair series, together with the
//!   multiple-cover equivalence checker ([`transforms`]);
//! - the graded Lie algebra on charge vectors whose adjoint-exponential
//!   expansion re-derives the same transform ([`lie`]);
//! - Gopakumar-Vafa product expansions of stable-pair series over the
//!   rational function field in q, the q <-> 1/q rationality check, and the
//!   L-series factorization ([`pt`]);
//! - weighted Euler-characteristic integration over finite stratified models
//!   and the local-to-global aggregation check ([`chow`]);
//! - Hilbert-Mumford weights and the GIT stability sign test ([`git`]);
//! - a scenario runner behind the command-line front end ([`scenario`]) and
//!   seeded randomized self-checks ([`verify`]).

pub mod chow;
pub mod coeff;
pub mod error;
pub mod geometry;
pub mod git;
pub mod invariants;
pub mod lie;
pub mod poly;
pub mod pt;
pub mod ratfun;
pub mod rational;
pub mod report;
pub mod scenario;
pub mod series;
pub mod transforms;
pub mod verify;

pub use coeff::Coeff;
pub use error::{Error, Result};
pub use geometry::{CurveClass, Generator, Geometry};
pub use invariants::{InvariantTable, SlopeContext};
pub use poly::{poly_gcd, LaurentPoly, Poly};
pub use ratfun::RatFun;
pub use rational::Rational;
pub use series::ConeSeries;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme_examples {}

//! Exact computation with divisorial semidegrees on the affine plane.
//!
//! A *semidegree* is a degree-like function `delta` on Laurent polynomials in
//! `x`, `y`: it is additive on products and satisfies
//! `delta(f + g) <= max(delta(f), delta(g))`.  The semidegrees handled here
//! are the divisorial ones determined by a *generic Puiseux datum*: a Puiseux
//! polynomial `phi(x)` with rational exponents, a rational `r` strictly below
//! every exponent of `phi`, and a positive integer scale.  The value of such a
//! semidegree on `f(x, y)` is the scaled leading `x`-exponent of
//! `f(x, phi(x) + xi * x^r)`, where `xi` is an indeterminate standing for a
//! generic coefficient.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals,
//! exponents arbitrary-precision rationals or integers, and no floating point
//! appears anywhere.
//!
//! The main entry points:
//!
//! * [`SemidegreeSpec`] — the datum `(phi, r, scale)`, with validation,
//!   weighted-degree and auto-scaled constructors, and exact evaluation.
//! * [`compute_key_forms`] — the sequence of key forms `x, y, g_2, ...` of a
//!   semidegree, together with the values, minimal multipliers, exponent
//!   vectors, and ratios that drive the recurrence.
//! * [`adic_expand`] / [`weight`] / [`reconstruct`] — expansion of a Laurent
//!   polynomial in the key forms, whose weight recovers the semidegree value.
//! * [`geometry`] — numerical invariants (skewness, intersection matrices,
//!   Puiseux pairs) and the sign / compactification classifications.
//! * [`conescan`] — an empirical sampler for the value semigroup and the
//!   ratio `delta(f) / deg(f)` over low-degree polynomials.
//!
//! Each capability has a runnable demonstration under `examples/`:
//!
//! ```text
//! cargo run --example evaluate         # evaluate a semidegree on polynomials
//! cargo run --example key_forms        # compute and print a key-form sequence
//! cargo run --example classify        # full geometry report for one datum
//! cargo run --example adic_expansion  # expand f in key forms, compare weights
//! cargo run --example cone_scan       # sample values and slopes up to a degree
//! cargo run --example weighted_degrees # the weighted-degree family p, q
//! cargo run --example axiom_check     # re-verify the key-form axioms
//! ```
//!
//! The `semideg` binary wraps the same capabilities as subcommands
//! (`eval`, `keyforms`, `classify`, `expand`, `scan`); see the README for the
//! datum file format and output schemas.

pub mod bilaurent;
pub mod conescan;
pub mod expansion;
pub mod geometry;
pub mod keyforms;
pub mod parse;
pub mod puiseux;
pub mod rat;
pub mod semidegree;
pub mod xipoly;

pub use bilaurent::BiLaurent;
pub use conescan::{scan, ScanBudget, ScanResult};
pub use expansion::{adic_expand, reconstruct, weight, Presentation};
pub use geometry::{build_report, GeometryReport};
pub use keyforms::{compute_key_forms, verify_axioms, KeyFormSequence, KeyStep};
pub use parse::{parse_expr, parse_puiseux, ParseError};
pub use puiseux::PuiseuxPoly;
pub use rat::Rat;
pub use semidegree::SemidegreeSpec;
pub use xipoly::XiPoly;

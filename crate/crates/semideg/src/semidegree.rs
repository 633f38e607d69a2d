//! The semidegree datum and exact evaluation.
//!
//! A divisorial semidegree on `C[x, 1/x, y]` is specified by a *generic
//! degree-wise Puiseux datum*:
//!
//! * `phi` — a Puiseux polynomial in `x` with rational coefficients (no `xi`),
//! * `r` — a rational strictly below every exponent of `phi`,
//! * `scale` — a positive integer making `scale * e` integral for every
//!   exponent `e` of `phi` and for `r`.
//!
//! The semidegree of a nonzero `f` is
//!
//! ```text
//! delta(f) = scale * (leading x-exponent of f(x, phi(x) + xi * x^r))
//! ```
//!
//! where `xi` is an indeterminate: substituting a *generic* curve rules out
//! accidental cancellation, and the scale turns the rational leading exponent
//! into an integer.  The function is additive on products and bounded by the
//! max on sums, which is what "semidegree" means.

use std::error::Error;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::bilaurent::BiLaurent;
use crate::puiseux::PuiseuxPoly;
use crate::rat::{denominator, format_rat, is_integer, lcm_big, Rat};
use crate::xipoly::XiPoly;

/// A generic degree-wise Puiseux datum `(phi, r, scale)`.
///
/// Fields are public and unconstrained at construction; [`Self::validate`]
/// reports every violated datum condition, and evaluation assumes a valid
/// datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidegreeSpec {
    /// The Puiseux polynomial `phi(x)`; must not mention `xi`.
    pub phi: PuiseuxPoly,
    /// The generic exponent `r`, strictly below every exponent of `phi`.
    pub r: Rat,
    /// Positive integer clearing all exponent denominators.
    pub scale: BigInt,
}

/// The smallest positive integer `N` with `N * e` integral for every
/// exponent `e` of `phi` and for `r` itself.
pub fn auto_scale_value(phi: &PuiseuxPoly, r: &Rat) -> BigInt {
    lcm_big(phi.lattice_denominator(), &denominator(r))
}

/// One violated datum condition, with enough context to report it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `phi` mentions the generic scalar `xi`.
    PhiMentionsXi,
    /// Some exponent of `phi` is not strictly above `r`.
    RNotBelowExponent { exponent: Rat },
    /// `scale * value` is not an integer for the named part of the datum.
    NonIntegralScaled { part: String, scaled: Rat },
    /// `scale` is zero or negative.
    NonPositiveScale { scale: BigInt },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PhiMentionsXi => write!(f, "phi must not mention xi"),
            Violation::RNotBelowExponent { exponent } => write!(
                f,
                "r must be strictly below every exponent of phi, but {} is not above it",
                format_rat(exponent)
            ),
            Violation::NonIntegralScaled { part, scaled } => write!(
                f,
                "scale * {part} = {} is not an integer",
                format_rat(scaled)
            ),
            Violation::NonPositiveScale { scale } => {
                write!(f, "scale must be a positive integer, got {scale}")
            }
        }
    }
}

/// Why evaluation failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// The semidegree of the zero polynomial is undefined.
    ZeroPolynomial,
    /// The scaled leading exponent was not an integer: the datum violates
    /// its integrality condition (evaluation assumes a validated datum).
    NonIntegralValue { raw: Rat },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::ZeroPolynomial => {
                write!(f, "the semidegree of the zero polynomial is undefined")
            }
            EvalError::NonIntegralValue { raw } => write!(
                f,
                "scaled leading exponent {} is not an integer; the datum fails validation",
                format_rat(raw)
            ),
        }
    }
}

impl Error for EvalError {}

impl SemidegreeSpec {
    /// Datum with an explicit scale.
    pub fn new(phi: PuiseuxPoly, r: Rat, scale: BigInt) -> Self {
        SemidegreeSpec { phi, r, scale }
    }

    /// Datum with the minimal valid scale for `phi` and `r`.
    pub fn auto_scaled(phi: PuiseuxPoly, r: Rat) -> Self {
        let scale = auto_scale_value(&phi, &r);
        SemidegreeSpec { phi, r, scale }
    }

    /// The weighted degree with `deg x = p`, `deg y = q`: the datum
    /// `phi = 0`, `r = q/p`, `scale = p`.
    ///
    /// Errors unless `p >= 1` (a zero or negative `x`-weight never yields a
    /// valid datum).
    pub fn from_weights(p: i64, q: i64) -> Result<Self, String> {
        if p < 1 {
            return Err(format!("x-weight must be a positive integer, got {p}"));
        }
        Ok(SemidegreeSpec {
            phi: PuiseuxPoly::zero(),
            r: Rat::new(BigInt::from(q), BigInt::from(p)),
            scale: BigInt::from(p),
        })
    }

    /// Checks every datum condition, returning all violations (empty means
    /// the datum is valid).
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        if !self.phi.is_xi_free() {
            violations.push(Violation::PhiMentionsXi);
        }
        for (exp, _) in self.phi.iter() {
            if exp <= &self.r {
                violations.push(Violation::RNotBelowExponent {
                    exponent: exp.clone(),
                });
            }
        }
        if !self.scale.is_positive() {
            violations.push(Violation::NonPositiveScale {
                scale: self.scale.clone(),
            });
        } else {
            let scale = Rat::from_integer(self.scale.clone());
            for (exp, _) in self.phi.iter() {
                let scaled = exp * &scale;
                if !is_integer(&scaled) {
                    violations.push(Violation::NonIntegralScaled {
                        part: format!("exponent {}", format_rat(exp)),
                        scaled,
                    });
                }
            }
            let scaled_r = &self.r * &scale;
            if !is_integer(&scaled_r) {
                violations.push(Violation::NonIntegralScaled {
                    part: format!("r = {}", format_rat(&self.r)),
                    scaled: scaled_r,
                });
            }
        }
        violations
    }

    /// True when [`Self::validate`] reports nothing.
    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The generic curve `phi(x) + xi * x^r` this semidegree evaluates along.
    pub fn generic_series(&self) -> PuiseuxPoly {
        &self.phi + &PuiseuxPoly::monomial(self.r.clone(), XiPoly::xi())
    }

    /// Evaluates the semidegree on a nonzero `f`.
    ///
    /// Assumes a valid datum (see [`Self::validate`]); on a valid datum the
    /// result is always an integer.
    pub fn evaluate(&self, f: &BiLaurent) -> Result<BigInt, EvalError> {
        if f.is_zero() {
            return Err(EvalError::ZeroPolynomial);
        }
        let sub = f
            .substitute_y(&self.generic_series())
            .expect("nonzero input already checked");
        // The coefficient of xi^(deg_y f) is lc_y(f) * x^(r deg_y f), which
        // cannot cancel, so the substituted series of a nonzero f is nonzero.
        let (exp, _) = sub
            .leading_term()
            .expect("substituted series of a nonzero element is nonzero");
        let raw = exp * Rat::from_integer(self.scale.clone());
        if !is_integer(&raw) {
            return Err(EvalError::NonIntegralValue { raw });
        }
        Ok(raw.to_integer())
    }
}

impl fmt::Display for SemidegreeSpec {
    /// The canonical datum line, e.g.
    /// `phi = x^(5/2) + x^-1; r = -14/5; scale = 10`.
    /// Parsing this back yields an identical datum.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "phi = {}; r = {}; scale = {}",
            self.phi,
            format_rat(&self.r),
            self.scale
        )
    }
}

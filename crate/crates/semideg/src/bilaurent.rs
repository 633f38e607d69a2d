//! Laurent polynomials in `x` and ordinary polynomials in `y`.
//!
//! The domain of a plane semidegree is the ring `C[x, 1/x, y]`: negative
//! powers of `x` are allowed (key forms genuinely need them) while `y` stays
//! polynomial.  Terms live in an exponent-keyed map, so every element has one
//! representation and equality is structural.
//!
//! The one nontrivial operation is [`BiLaurent::substitute_y`]: evaluating
//! along the generic curve `y = s(x)` for a Puiseux polynomial `s`, which is
//! where every semidegree value ultimately comes from.

use std::collections::BTreeMap;
use std::error::Error;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::puiseux::PuiseuxPoly;
use crate::rat::{format_rat, Rat};
use crate::xipoly::XiPoly;

/// Error for degree or substitution queries on the zero polynomial.
///
/// A semidegree has no value at zero, so the operations feeding it refuse
/// zero input rather than inventing a sentinel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroInput(pub &'static str);

impl fmt::Display for ZeroInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} is undefined on the zero polynomial", self.0)
    }
}

impl Error for ZeroInput {}

/// An element of `C[x, 1/x, y]` with exact rational coefficients.
///
/// Keys are `(a, b)` exponent pairs for `x^a * y^b`; the invariants are that
/// no stored coefficient is zero and every `b` is non-negative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct BiLaurent {
    terms: BTreeMap<(BigInt, BigInt), Rat>,
}

impl BiLaurent {
    pub fn zero() -> Self {
        BiLaurent::default()
    }

    pub fn one() -> Self {
        BiLaurent::monomial(0, 0, Rat::one())
    }

    /// The coordinate `x`.
    pub fn x() -> Self {
        BiLaurent::monomial(1, 0, Rat::one())
    }

    /// The coordinate `y`.
    pub fn y() -> Self {
        BiLaurent::monomial(0, 1, Rat::one())
    }

    /// The term `c * x^a * y^b`.
    ///
    /// # Panics
    ///
    /// Panics if `b` is negative; only `x` may carry poles.
    pub fn monomial(a: impl Into<BigInt>, b: impl Into<BigInt>, c: Rat) -> Self {
        let (a, b) = (a.into(), b.into());
        assert!(!b.is_negative(), "negative y-exponent {b} is outside the domain");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        BiLaurent { terms }
    }

    /// Sums `(a, b, coefficient)` triples, merging duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (BigInt, BigInt, Rat)>) -> Self {
        let mut map: BTreeMap<(BigInt, BigInt), Rat> = BTreeMap::new();
        for (a, b, c) in terms {
            assert!(!b.is_negative(), "negative y-exponent {b} is outside the domain");
            *map.entry((a, b)).or_insert_with(Rat::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        BiLaurent { terms: map }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates `((a, b), coefficient)` in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&(BigInt, BigInt), &Rat)> {
        self.terms.iter()
    }

    /// The coefficient of `x^a * y^b` (zero when absent).
    pub fn coeff(&self, a: &BigInt, b: &BigInt) -> Rat {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// `max(a + b)` over the terms; the ordinary total degree for honest
    /// polynomials, and possibly negative for Laurent elements.
    pub fn total_degree(&self) -> Result<BigInt, ZeroInput> {
        self.terms
            .keys()
            .map(|(a, b)| a + b)
            .max()
            .ok_or(ZeroInput("total degree"))
    }

    /// True if no term has a pole in `x` (so `f` lies in `C[x, y]`).
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|(a, _)| !a.is_negative())
    }

    /// True for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().is_some_and(|(a, b)| a.is_zero() && b.is_zero())
    }

    /// Largest `y`-exponent, if nonzero.
    pub fn y_degree(&self) -> Option<BigInt> {
        self.terms.keys().map(|(_, b)| b.clone()).max()
    }

    /// Smallest `x`-exponent, if nonzero; negative exactly when `f` has poles.
    pub fn min_x_exponent(&self) -> Option<BigInt> {
        self.terms.keys().map(|(a, _)| a.clone()).min()
    }

    /// Splits off the top slice in `y`: the maximal `b` together with the
    /// `x`-Laurent coefficient of `y^b`.  Used by key-form-adic division.
    pub fn leading_y_slice(&self) -> Option<(BigInt, BiLaurent)> {
        let top = self.y_degree()?;
        let coeff = BiLaurent {
            terms: self
                .terms
                .iter()
                .filter(|((_, b), _)| *b == top)
                .map(|((a, _), c)| ((a.clone(), BigInt::zero()), c.clone()))
                .collect(),
        };
        Some((top, coeff))
    }

    /// Multiplies by the single term `c * x^a * y^b`.
    pub fn mul_monomial(&self, a: &BigInt, b: &BigInt, c: &Rat) -> Self {
        if c.is_zero() {
            return BiLaurent::zero();
        }
        BiLaurent {
            terms: self
                .terms
                .iter()
                .map(|((ta, tb), tc)| ((ta + a, tb + b), tc * c))
                .collect(),
        }
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, c: &Rat) -> Self {
        self.mul_monomial(&BigInt::zero(), &BigInt::zero(), c)
    }

    /// Exact power by repeated squaring (`f^0 = 1`).
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = BiLaurent::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates `f(x, s(x))` for a Puiseux polynomial `s`.
    ///
    /// This is a ring homomorphism in `f` (tested as such) and the engine
    /// behind semidegree evaluation: the value of the semidegree attached to
    /// a generic curve `s` is the scaled leading exponent of the result.
    ///
    /// Errors on zero input: downstream leading-term queries would have no
    /// answer, and the semidegree of zero is undefined.
    pub fn substitute_y(&self, s: &PuiseuxPoly) -> Result<PuiseuxPoly, ZeroInput> {
        if self.is_zero() {
            return Err(ZeroInput("substitution"));
        }
        // Group by y-exponent so each power of s is formed once, ascending.
        let mut by_y: BTreeMap<BigInt, Vec<(BigInt, Rat)>> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            by_y.entry(b.clone()).or_default().push((a.clone(), c.clone()));
        }
        let mut result = PuiseuxPoly::zero();
        let mut power_deg = BigInt::zero();
        let mut power = PuiseuxPoly::x_power(Rat::zero()); // s^0 = 1
        for (b, coeffs) in by_y {
            while power_deg < b {
                power = &power * s;
                power_deg += BigInt::one();
            }
            let slice = PuiseuxPoly::from_terms(
                coeffs
                    .into_iter()
                    .map(|(a, c)| (Rat::from_integer(a), XiPoly::constant(c))),
            );
            result = &result + &(&slice * &power);
        }
        Ok(result)
    }
}

impl Add for &BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: &BiLaurent) -> BiLaurent {
        let mut terms = self.terms.clone();
        for (k, c) in &rhs.terms {
            let entry = terms.entry(k.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        BiLaurent { terms }
    }
}

impl Sub for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: &BiLaurent) -> BiLaurent {
        self + &(-rhs)
    }
}

impl Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        BiLaurent {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

impl Mul for &BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: &BiLaurent) -> BiLaurent {
        let mut terms: BTreeMap<(BigInt, BigInt), Rat> = BTreeMap::new();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                let key = (a1 + a2, b1 + b2);
                *terms.entry(key).or_insert_with(Rat::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        BiLaurent { terms }
    }
}

impl fmt::Display for BiLaurent {
    /// Canonical re-parseable form: terms sorted by `y`-exponent descending,
    /// then `x`-exponent descending, e.g. `y^2 - 2*x^-1*y - x^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().collect();
        keys.sort_by(|(a1, b1), (a2, b2)| b2.cmp(b1).then(a2.cmp(a1)));
        let mut first = true;
        for key in keys {
            let c = &self.terms[key];
            let sign = if c.is_negative() { '-' } else { '+' };
            if first {
                if sign == '-' {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{}", render_term(&key.0, &key.1, &c.abs()))?;
        }
        Ok(())
    }
}

fn render_term(a: &BigInt, b: &BigInt, mag: &Rat) -> String {
    let mut pieces = Vec::new();
    if !mag.is_one() || (a.is_zero() && b.is_zero()) {
        pieces.push(format_rat(mag));
    }
    if !a.is_zero() {
        pieces.push(if a.is_one() { "x".into() } else { format!("x^{a}") });
    }
    if !b.is_zero() {
        pieces.push(if b.is_one() { "y".into() } else { format!("y^{b}") });
    }
    pieces.join("*")
}

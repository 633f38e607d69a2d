//! Puiseux polynomials: finite sums of rational powers of `x` whose
//! coefficients are polynomials in the generic scalar `xi`.
//!
//! These arise in exactly one way in this crate: substituting the generic
//! curve `y = phi(x) + xi * x^r` into a Laurent polynomial in `x`, `y`.  The
//! exponents of every series produced from one datum lie in a common lattice
//! `(1/N) Z`; the tight `N` (the lcm of the exponent denominators actually
//! present) is cached on the series so evaluation can scale leading exponents
//! to integers without rescanning.
//!
//! Representation: an exponent-keyed map with nonzero coefficients, so every
//! series has exactly one representation and the leading term is the last
//! entry.

use std::collections::BTreeMap;
use std::error::Error;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rat::{denominator, format_rat, is_integer, lcm_big, Rat};
use crate::xipoly::XiPoly;

/// Error for leading-term queries on the zero series.
///
/// The zero series has no leading exponent, and the semidegree of the zero
/// polynomial is deliberately undefined; callers must handle it explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSeries;

impl fmt::Display for ZeroSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "leading term of the zero series is undefined")
    }
}

impl Error for ZeroSeries {}

/// A Puiseux polynomial `sum c_e(xi) * x^e` with rational exponents `e`.
///
/// Invariants: no coefficient is zero, and every exponent denominator divides
/// the cached lattice denominator (which is `1` for the zero series).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PuiseuxPoly {
    terms: BTreeMap<Rat, XiPoly>,
    lattice: BigInt,
}

impl PuiseuxPoly {
    /// The zero series.
    pub fn zero() -> Self {
        PuiseuxPoly {
            terms: BTreeMap::new(),
            lattice: BigInt::one(),
        }
    }

    /// The single term `c(xi) * x^e` (zero series if `c` is zero).
    pub fn monomial(exp: Rat, coeff: XiPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        PuiseuxPoly::from_map(terms)
    }

    /// The power `x^e` with coefficient one.
    pub fn x_power(exp: Rat) -> Self {
        PuiseuxPoly::monomial(exp, XiPoly::one())
    }

    /// Sums a list of `(exponent, coefficient)` terms, merging duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rat, XiPoly)>) -> Self {
        let mut map: BTreeMap<Rat, XiPoly> = BTreeMap::new();
        for (e, c) in terms {
            let entry = map.entry(e).or_insert_with(XiPoly::zero);
            *entry = &*entry + &c;
        }
        PuiseuxPoly::from_map(map)
    }

    fn from_map(mut terms: BTreeMap<Rat, XiPoly>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let lattice = terms
            .keys()
            .fold(BigInt::one(), |acc, e| lcm_big(&acc, &denominator(e)));
        PuiseuxPoly { terms, lattice }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True if no coefficient mentions `xi`.
    pub fn is_xi_free(&self) -> bool {
        self.terms.values().all(|c| !c.depends_on_xi())
    }

    /// The positive integer `N` with every exponent in `(1/N) Z`; this is the
    /// exact lcm of the exponent denominators (`1` for the zero series).
    pub fn lattice_denominator(&self) -> &BigInt {
        &self.lattice
    }

    /// Iterates terms in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&Rat, &XiPoly)> {
        self.terms.iter()
    }

    /// The coefficient of `x^e` (zero when absent).
    pub fn coeff(&self, exp: &Rat) -> XiPoly {
        self.terms.get(exp).cloned().unwrap_or_else(XiPoly::zero)
    }

    /// Smallest exponent present, if any.
    pub fn min_exponent(&self) -> Option<&Rat> {
        self.terms.keys().next()
    }

    /// The term with the largest exponent.
    ///
    /// This is the quantity semidegree evaluation scales: for nonzero input
    /// it always exists.
    pub fn leading_term(&self) -> Result<(&Rat, &XiPoly), ZeroSeries> {
        self.terms.iter().next_back().ok_or(ZeroSeries)
    }

    /// Multiplies by the scalar `c`.
    pub fn scale(&self, c: &Rat) -> Self {
        self.scale_xi(&XiPoly::constant(c.clone()))
    }

    /// Multiplies by a `xi`-polynomial scalar.
    pub fn scale_xi(&self, c: &XiPoly) -> Self {
        if c.is_zero() {
            return PuiseuxPoly::zero();
        }
        PuiseuxPoly::from_map(
            self.terms
                .iter()
                .map(|(e, a)| (e.clone(), a * c))
                .collect(),
        )
    }

    /// Multiplies by `x^shift`, shifting every exponent.
    pub fn shift_exponents(&self, shift: &Rat) -> Self {
        PuiseuxPoly::from_map(
            self.terms
                .iter()
                .map(|(e, c)| (e + shift, c.clone()))
                .collect(),
        )
    }

    /// Drops every term whose exponent is strictly below `floor`.
    ///
    /// Useful when only the top of the series can ever matter: the result
    /// agrees with `self` on all exponents `>= floor`.
    pub fn truncate_below(&self, floor: &Rat) -> Self {
        if self.terms.keys().next().map_or(true, |e| e >= floor) {
            return self.clone();
        }
        PuiseuxPoly::from_map(
            self.terms
                .range(floor.clone()..)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        )
    }

    /// Exact power by repeated squaring (`s^0 = 1`).
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = PuiseuxPoly::x_power(Rat::from_integer(BigInt::from(0)));
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
}

impl Add for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn add(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let entry = terms.entry(e.clone()).or_insert_with(XiPoly::zero);
            *entry = &*entry + c;
        }
        PuiseuxPoly::from_map(terms)
    }
}

impl Sub for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn sub(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        self + &(-rhs)
    }
}

impl Neg for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn neg(self) -> PuiseuxPoly {
        PuiseuxPoly::from_map(
            self.terms
                .iter()
                .map(|(e, c)| (e.clone(), -c))
                .collect(),
        )
    }
}

impl Mul for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn mul(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        let mut terms: BTreeMap<Rat, XiPoly> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1 + e2;
                let prod = c1 * c2;
                let entry = terms.entry(e).or_insert_with(XiPoly::zero);
                *entry = &*entry + &prod;
            }
        }
        PuiseuxPoly::from_map(terms)
    }
}

impl fmt::Display for PuiseuxPoly {
    /// Renders terms in descending exponent order.  Integer exponents print
    /// bare (`x^5`, `x^-1`), fractional ones parenthesized (`x^(-14/5)`);
    /// coefficients that mention `xi` print like `2*xi*x^3` when they are a
    /// single `xi`-monomial and `(1 + 2*xi)*x^3` otherwise.  `xi`-free output
    /// re-parses with [`crate::parse::parse_puiseux`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, coeff) in self.terms.iter().rev() {
            // Single xi-monomial coefficients contribute a definite sign;
            // anything else is wrapped in parentheses and attached with `+`.
            let (sign, body) = render_coeff_body(coeff, exp);
            if first {
                if sign == '-' {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

/// Splits one rendered term into a sign and an unsigned body.
fn render_coeff_body(coeff: &XiPoly, exp: &Rat) -> (char, String) {
    use num_traits::Signed;
    let x_part = render_x_power(exp);
    // xi-free coefficient: pull the sign off the rational.
    if let Some(c) = coeff.as_constant() {
        let sign = if c.is_negative() { '-' } else { '+' };
        let mag = c.abs();
        let body = match (&x_part, mag.is_one()) {
            (None, _) => format_rat(&mag),
            (Some(xp), true) => xp.clone(),
            (Some(xp), false) => format!("{}*{}", format_rat(&mag), xp),
        };
        return (sign, body);
    }
    // single xi-monomial c * xi^k
    let k = coeff.degree().expect("nonzero coefficient");
    let single = (0..k).all(|i| coeff.coeff(i).is_zero());
    if single {
        let c = coeff.coeff(k);
        let sign = if c.is_negative() { '-' } else { '+' };
        let mag = c.abs();
        let xi_part = if k == 1 {
            "xi".to_string()
        } else {
            format!("xi^{k}")
        };
        let mut body = if mag.is_one() {
            xi_part
        } else {
            format!("{}*{}", format_rat(&mag), xi_part)
        };
        if let Some(xp) = x_part {
            body = format!("{body}*{xp}");
        }
        return (sign, body);
    }
    // general xi-polynomial coefficient
    let body = match x_part {
        None => format!("({coeff})"),
        Some(xp) => format!("({coeff})*{xp}"),
    };
    ('+', body)
}

/// Renders `x^e`, or `None` for `e = 0`.
fn render_x_power(exp: &Rat) -> Option<String> {
    use num_traits::Zero;
    if exp.is_zero() {
        return None;
    }
    if is_integer(exp) {
        if exp.is_one() {
            Some("x".to_string())
        } else {
            Some(format!("x^{}", exp.numer()))
        }
    } else {
        Some(format!("x^({})", format_rat(exp)))
    }
}

//! Polynomials in the generic coefficient `xi`.
//!
//! When a Laurent polynomial `f(x, y)` is evaluated along the generic curve
//! `y = phi(x) + xi * x^r`, the coefficient of each power of `x` is a
//! polynomial in the indeterminate `xi` with rational coefficients.  Those
//! coefficients are what this module models.  The representation is a dense
//! coefficient vector in ascending `xi`-degree with no trailing zeros, so the
//! zero polynomial is the empty vector and every value has exactly one
//! representation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rat::{format_rat, Rat};

/// A polynomial in `xi` with rational coefficients.
///
/// Invariant: the coefficient vector has no trailing zero, so `deg` is the
/// vector length minus one and zero is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct XiPoly {
    coeffs: Vec<Rat>,
}

impl XiPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        XiPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        XiPoly::constant(Rat::one())
    }

    /// A constant polynomial (zero if `c` is zero).
    pub fn constant(c: Rat) -> Self {
        XiPoly { coeffs: vec![c] }.normalized()
    }

    /// The monomial `c * xi^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return XiPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        XiPoly { coeffs }
    }

    /// The indeterminate `xi` itself.
    pub fn xi() -> Self {
        XiPoly::monomial(Rat::one(), 1)
    }

    /// Builds from an ascending coefficient vector, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        XiPoly { coeffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `xi`; zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The coefficient of `xi^k` (zero when out of range).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// The constant term.
    pub fn constant_part(&self) -> Rat {
        self.coeff(0)
    }

    /// True if some positive power of `xi` has a nonzero coefficient.
    pub fn depends_on_xi(&self) -> bool {
        self.coeffs.len() > 1
    }

    /// Interprets the polynomial as a scalar if it is `xi`-free and nonzero.
    pub fn as_constant(&self) -> Option<&Rat> {
        match self.coeffs.as_slice() {
            [c] => Some(c),
            _ => None,
        }
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return XiPoly::zero();
        }
        XiPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = XiPoly::one();
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

impl Add for &XiPoly {
    type Output = XiPoly;
    fn add(self, rhs: &XiPoly) -> XiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        XiPoly { coeffs }.normalized()
    }
}

impl Sub for &XiPoly {
    type Output = XiPoly;
    fn sub(self, rhs: &XiPoly) -> XiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        XiPoly { coeffs }.normalized()
    }
}

impl Neg for &XiPoly {
    type Output = XiPoly;
    fn neg(self) -> XiPoly {
        XiPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &XiPoly {
    type Output = XiPoly;
    fn mul(self, rhs: &XiPoly) -> XiPoly {
        if self.is_zero() || rhs.is_zero() {
            return XiPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        XiPoly { coeffs }.normalized()
    }
}

impl fmt::Display for XiPoly {
    /// Renders as a sum of `xi`-monomials in ascending degree, e.g.
    /// `1 + 2*xi` or `-3*xi^2`.  The zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c < &Rat::zero() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let mag_is_one = mag.is_one();
            match (k, mag_is_one) {
                (0, _) => write!(f, "{}", format_rat(&mag))?,
                (1, true) => write!(f, "xi")?,
                (1, false) => write!(f, "{}*xi", format_rat(&mag))?,
                (_, true) => write!(f, "xi^{k}")?,
                (_, false) => write!(f, "{}*xi^{k}", format_rat(&mag))?,
            }
        }
        Ok(())
    }
}

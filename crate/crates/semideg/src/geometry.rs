//! Geometric invariants attached to a key-form sequence.
//!
//! Everything in this module is derived arithmetic: once the key forms and
//! their values are known, we can read off the top value `d`, the content
//! `m` of the initial values, the Puiseux pairs of the underlying series
//! datum, the skewness number, the intersection matrix of the associated
//! compactification together with its inverse, and the three classification
//! verdicts (sign of values, compactness, minimization of the degree
//! ratio).  All computations are exact; identities that the theory
//! guarantees are re-checked at runtime and reported as
//! [`GeometryError::CrossCheckFailed`] instead of being trusted silently.

use std::cmp::max;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::bilaurent::BiLaurent;
use crate::keyforms::KeyFormSequence;
use crate::rat::{format_rat, is_integer, Rat};
use crate::semidegree::auto_scale_value;

/// Errors surfaced by the geometry layer.
///
/// `CrossCheckFailed` signals that an identity which is a theorem about key
/// forms failed on actual data; it is an internal-assertion condition, not a
/// user error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometryError {
    /// The semidegree is a scaled total degree, so the pairing matrix is
    /// singular and has no inverse.
    DeltaEqualsDeg,
    /// A consistency identity between independently computed quantities
    /// failed.
    CrossCheckFailed {
        check: &'static str,
        detail: String,
    },
    /// Ratio data was requested for a constant (or zero) input.
    ConstantInput,
    /// Ratio data is only defined for polynomial inputs.
    NotPolynomial,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::DeltaEqualsDeg => {
                write!(f, "semidegree equals a scaled total degree; the pairing matrix is singular")
            }
            GeometryError::CrossCheckFailed { check, detail } => {
                write!(f, "internal cross-check `{check}` failed: {detail}")
            }
            GeometryError::ConstantInput => {
                write!(f, "degree ratio is undefined for constant polynomials")
            }
            GeometryError::NotPolynomial => {
                write!(f, "degree ratio is only defined for polynomials without poles")
            }
        }
    }
}

impl std::error::Error for GeometryError {}

/// Top value: the larger of the values of `x` and `y`.
pub fn d_delta(seq: &KeyFormSequence) -> BigInt {
    let values = seq.values();
    max(values[0].clone(), values[1].clone())
}

/// Content of the values of all key forms except the final one.
///
/// The value of `x` is the (positive) scale, so the result is always a
/// positive integer even when later values vanish or go negative.
pub fn m_delta(seq: &KeyFormSequence) -> BigInt {
    seq.initial_gcd()
}

/// Value of the final key form.
pub fn omega_last(seq: &KeyFormSequence) -> BigInt {
    seq.last().value.clone()
}

/// Characteristic pairs of the series datum behind a semidegree.
///
/// `pairs` lists `(q_i, p_i)` for the characteristic exponents of the series
/// part, outermost first; `p_last`/`q_last` describe the trailing generic
/// exponent.  Invariants: `gcd(q_i, p_i) = 1`, each `p_i >= 2`,
/// `p_last >= 1`, and the exponents reconstruct as `q_i / (p_1 ... p_i)`
/// with the trailing exponent `q_last / (p_1 ... p_l * p_last)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxPairs {
    pub pairs: Vec<(BigInt, BigInt)>,
    pub p_last: BigInt,
    pub q_last: BigInt,
}

impl fmt::Display for PuiseuxPairs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            write!(f, "(none)")?;
        } else {
            let rendered: Vec<String> = self
                .pairs
                .iter()
                .map(|(q, p)| format!("({q}, {p})"))
                .collect();
            write!(f, "{}", rendered.join(", "))?;
        }
        write!(f, "; p_last = {}, q_last = {}", self.p_last, self.q_last)
    }
}

/// Reads the characteristic pairs off the series datum and cross-checks
/// them against the computed key forms.
///
/// Scanning the exponents of the series part from the largest down, a pair
/// is emitted whenever the exponent is not integral over the lattice
/// generated so far; the running lattice index (product of the `p_i`)
/// then grows by the new `p_i`.  The trailing pair handles the generic
/// exponent the same way, except `p_last = 1` is allowed.
///
/// Three identities tie the pairs to the key forms, uniformly in the scale
/// (write `t` for the ratio of the scale to the minimal one):
///
/// * `m = t * p_last`;
/// * `d = t * max(p_last, q_last)` when the series part vanishes, and
///   `d = t * max(1, deg phi) * p_1...p_l * p_last` otherwise;
/// * the total degree of the final key form is `1` when the series part
///   vanishes and `max(1, deg phi) * p_1...p_l` otherwise, and in the
///   latter case `d = m * deg(final form)`.
///
/// Any violation is reported as [`GeometryError::CrossCheckFailed`].
pub fn puiseux_pairs(seq: &KeyFormSequence) -> Result<PuiseuxPairs, GeometryError> {
    let spec = &seq.spec;
    let mut pairs = Vec::new();
    let mut polydromy = BigInt::one();
    let exponents: Vec<&Rat> = spec.phi.iter().map(|(e, _)| e).collect();
    for e in exponents.into_iter().rev() {
        let stretched = e * Rat::from_integer(polydromy.clone());
        if !is_integer(&stretched) {
            let p = stretched.denom().clone();
            let q = stretched.numer().clone();
            polydromy *= &p;
            pairs.push((q, p));
        }
    }
    let trailing = &spec.r * Rat::from_integer(polydromy.clone());
    let result = PuiseuxPairs {
        pairs,
        p_last: trailing.denom().clone(),
        q_last: trailing.numer().clone(),
    };
    cross_check_pairs(seq, &result, &polydromy)?;
    Ok(result)
}

fn cross_check_pairs(
    seq: &KeyFormSequence,
    pp: &PuiseuxPairs,
    polydromy: &BigInt,
) -> Result<(), GeometryError> {
    let spec = &seq.spec;
    let minimal = auto_scale_value(&spec.phi, &spec.r);
    let (t, rem) = spec.scale.div_rem(&minimal);
    if !rem.is_zero() {
        return Err(GeometryError::CrossCheckFailed {
            check: "scale-multiple",
            detail: format!(
                "scale {} is not a multiple of the minimal scale {minimal}",
                spec.scale
            ),
        });
    }

    let d = d_delta(seq);
    let m = m_delta(seq);
    let expected_m = &t * &pp.p_last;
    if m != expected_m {
        return Err(GeometryError::CrossCheckFailed {
            check: "content-vs-p-last",
            detail: format!("m = {m} but t * p_last = {expected_m}"),
        });
    }

    let g_last = &seq.last().form;
    let g_degree = g_last
        .total_degree()
        .expect("key forms are nonzero by construction");

    if spec.phi.is_zero() {
        let expected_d = &t * max(pp.p_last.clone(), pp.q_last.clone());
        if d != expected_d {
            return Err(GeometryError::CrossCheckFailed {
                check: "top-value",
                detail: format!("d = {d} but the pair formula gives {expected_d}"),
            });
        }
        if g_degree != BigInt::one() {
            return Err(GeometryError::CrossCheckFailed {
                check: "final-degree",
                detail: format!(
                    "series part vanishes but the final key form has degree {g_degree}"
                ),
            });
        }
    } else {
        let (deg_phi, _) = spec
            .phi
            .leading_term()
            .expect("nonzero series has a leading term");
        let stretched = max(Rat::one(), deg_phi.clone()) * Rat::from_integer(polydromy.clone());
        if !is_integer(&stretched) {
            return Err(GeometryError::CrossCheckFailed {
                check: "final-degree-integral",
                detail: format!(
                    "max(1, deg phi) * p_1...p_l = {} is not an integer",
                    format_rat(&stretched)
                ),
            });
        }
        let expected_degree = stretched.to_integer();
        if g_degree != expected_degree {
            return Err(GeometryError::CrossCheckFailed {
                check: "final-degree",
                detail: format!(
                    "final key form has degree {g_degree}, pair formula gives {expected_degree}"
                ),
            });
        }
        let expected_d = &t * &expected_degree * &pp.p_last;
        if d != expected_d {
            return Err(GeometryError::CrossCheckFailed {
                check: "top-value",
                detail: format!("d = {d} but the pair formula gives {expected_d}"),
            });
        }
        let product = &m * &g_degree;
        if d != product {
            return Err(GeometryError::CrossCheckFailed {
                check: "top-value-factorization",
                detail: format!("d = {d} but m * deg(final form) = {product}"),
            });
        }
    }
    Ok(())
}

/// Skewness: `m * omega_last / d^2`.
pub fn skewness(seq: &KeyFormSequence) -> Rat {
    let d = d_delta(seq);
    Rat::new(m_delta(seq) * omega_last(seq), &d * &d)
}

/// 2x2 integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat2(pub [[BigInt; 2]; 2]);

/// 2x2 rational matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMat2(pub [[Rat; 2]; 2]);

impl IntMat2 {
    fn mul_rat(&self, rhs: &RatMat2) -> RatMat2 {
        let mut out = [
            [Rat::zero(), Rat::zero()],
            [Rat::zero(), Rat::zero()],
        ];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let mut acc = Rat::zero();
                for k in 0..2 {
                    acc += Rat::from_integer(self.0[i][k].clone()) * &rhs.0[k][j];
                }
                *entry = acc;
            }
        }
        RatMat2(out)
    }
}

impl fmt::Display for IntMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1]
        )
    }
}

impl RatMat2 {
    fn is_identity(&self) -> bool {
        self.0[0][0].is_one()
            && self.0[0][1].is_zero()
            && self.0[1][0].is_zero()
            && self.0[1][1].is_one()
    }
}

impl fmt::Display for RatMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            format_rat(&self.0[0][0]),
            format_rat(&self.0[0][1]),
            format_rat(&self.0[1][0]),
            format_rat(&self.0[1][1])
        )
    }
}

fn pairing_matrix(d: &BigInt, m_omega: &BigInt) -> IntMat2 {
    IntMat2([
        [BigInt::one(), d.clone()],
        [d.clone(), m_omega.clone()],
    ])
}

/// Pairing matrix `[[1, d], [d, m*omega]]` and its inverse.
///
/// Fails with [`GeometryError::DeltaEqualsDeg`] exactly when the matrix is
/// singular, i.e. when the semidegree is a scaled total degree.  The product
/// of the two returned matrices is re-verified to be the identity.
pub fn intersection_matrices(seq: &KeyFormSequence) -> Result<(IntMat2, RatMat2), GeometryError> {
    let d = d_delta(seq);
    let m_omega = m_delta(seq) * omega_last(seq);
    let mat_m = pairing_matrix(&d, &m_omega);
    let det = &d * &d - &m_omega;
    if det.is_zero() {
        return Err(GeometryError::DeltaEqualsDeg);
    }
    let inv = |n: BigInt| Rat::new(n, det.clone());
    let mat_i = RatMat2([
        [inv(-&m_omega), inv(d.clone())],
        [inv(d.clone()), inv(-BigInt::one())],
    ]);
    let product = mat_m.mul_rat(&mat_i);
    if !product.is_identity() {
        return Err(GeometryError::CrossCheckFailed {
            check: "matrix-inverse",
            detail: format!("product is {product} instead of the identity"),
        });
    }
    Ok((mat_m, mat_i))
}

/// Self-intersection of the divisor class `a1 * F + a2 * L` under the
/// rational pairing matrix.
pub fn self_intersection(a1: &BigInt, a2: &BigInt, mat_i: &RatMat2) -> Rat {
    let v = [
        Rat::from_integer(a1.clone()),
        Rat::from_integer(a2.clone()),
    ];
    let mut acc = Rat::zero();
    for i in 0..2 {
        for j in 0..2 {
            acc += &v[i] * &mat_i.0[i][j] * &v[j];
        }
    }
    acc
}

/// Sign behaviour of the semidegree on nonconstant polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignClass {
    /// Every nonconstant polynomial has a positive value.
    PositiveOnNonconstants,
    /// Values are non-negative but some nonconstant polynomial has value 0.
    NonNegativeNotPositive,
    /// Some polynomial has a negative value.
    TakesNegativeValues,
}

impl SignClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            SignClass::PositiveOnNonconstants => "PositiveOnNonconstants",
            SignClass::NonNegativeNotPositive => "NonNegativeNotPositive",
            SignClass::TakesNegativeValues => "TakesNegativeValues",
        }
    }
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies the sign behaviour from the final value.
///
/// A zero final value separates into two cases: when the final key form is a
/// polynomial it realizes the value 0, otherwise every nonconstant
/// polynomial still has a strictly positive value.
pub fn sign_classify(seq: &KeyFormSequence) -> SignClass {
    let omega = omega_last(seq);
    if omega.is_positive() {
        SignClass::PositiveOnNonconstants
    } else if omega.is_zero() {
        if seq.last().form.is_polynomial() {
            SignClass::NonNegativeNotPositive
        } else {
            SignClass::PositiveOnNonconstants
        }
    } else {
        SignClass::TakesNegativeValues
    }
}

/// Compactness verdicts: `(analytic, algebraic)`.
///
/// The analytic compactification exists exactly when the final value is
/// positive; it is algebraic exactly when, in addition, the final key form
/// is a polynomial.
pub fn compact_classify(seq: &KeyFormSequence) -> (bool, bool) {
    let positive = omega_last(seq).is_positive();
    (positive, positive && seq.last().form.is_polynomial())
}

/// Verdict for the minimization of the value/degree ratio.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaVerdict {
    /// The infimum of value/degree over nonconstant polynomials matches the
    /// skewness prediction.
    pub holds: bool,
    /// The infimum is attained by some polynomial.
    pub attained: bool,
    /// A minimizing polynomial, when the infimum is attained.
    pub minimizer: Option<BiLaurent>,
}

/// Decides whether the skewness prediction for the infimum of value/degree
/// holds and whether it is attained.
///
/// The prediction holds whenever the final value is non-negative or the
/// final key form is a polynomial; it is attained exactly in the polynomial
/// case, with the final key form as minimizer.
pub fn alpha_verdict(seq: &KeyFormSequence) -> AlphaVerdict {
    let omega = omega_last(seq);
    let polynomial = seq.last().form.is_polynomial();
    let attained = polynomial;
    AlphaVerdict {
        holds: !omega.is_negative() || polynomial,
        attained,
        minimizer: attained.then(|| seq.last().form.clone()),
    }
}

/// Infimum of value/degree over nonconstant polynomials, when known.
///
/// For non-negative final value the infimum is `m * omega / d`; for
/// negative final value it is `omega / deg(final form)` provided the final
/// key form is a polynomial.  Otherwise the infimum is not computable from
/// the key forms alone and `None` is returned.
pub fn inf_ratio(seq: &KeyFormSequence) -> Option<Rat> {
    let omega = omega_last(seq);
    if !omega.is_negative() {
        return Some(Rat::new(m_delta(seq) * omega, d_delta(seq)));
    }
    let last = &seq.last().form;
    if last.is_polynomial() {
        let degree = last
            .total_degree()
            .expect("key forms are nonzero by construction");
        return Some(Rat::new(omega, degree));
    }
    None
}

/// Value/degree data for one polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioCheck {
    pub ratio: Rat,
    pub bound: Rat,
    pub meets_bound: bool,
}

/// Compares the value/degree ratio of `f` against the final key form's
/// ratio, and hard-checks the universal floor `m * omega / d`.
///
/// `f` must be a nonconstant polynomial.  The returned `bound` is the
/// final form's own ratio `omega / deg(final form)`; `meets_bound` records
/// exact equality.  The floor inequality `ratio >= m * omega / d` is a
/// theorem, so a violation surfaces as
/// [`GeometryError::CrossCheckFailed`].
pub fn ratio_check(seq: &KeyFormSequence, f: &BiLaurent) -> Result<RatioCheck, GeometryError> {
    if f.is_zero() || f.is_constant() {
        return Err(GeometryError::ConstantInput);
    }
    if !f.is_polynomial() {
        return Err(GeometryError::NotPolynomial);
    }
    let value = seq
        .spec
        .evaluate(f)
        .expect("nonzero polynomial evaluates");
    let degree = f.total_degree().expect("nonzero polynomial has a degree");
    let ratio = Rat::new(value, degree);

    let omega = omega_last(seq);
    let g_degree = seq
        .last()
        .form
        .total_degree()
        .expect("key forms are nonzero by construction");
    let bound = Rat::new(omega.clone(), g_degree);

    let floor = Rat::new(m_delta(seq) * omega, d_delta(seq));
    if ratio < floor {
        return Err(GeometryError::CrossCheckFailed {
            check: "ratio-floor",
            detail: format!(
                "value/degree ratio {} of {f} is below the floor {}",
                format_rat(&ratio),
                format_rat(&floor)
            ),
        });
    }

    let meets_bound = ratio == bound;
    Ok(RatioCheck {
        ratio,
        bound,
        meets_bound,
    })
}

/// Result of the `m * omega <= d^2` bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundCheck {
    pub holds: bool,
    pub equality: bool,
}

/// Checks `m * omega <= d^2`.
///
/// Equality is expected exactly for scaled total degrees; consistency with
/// that expectation is re-verified by [`build_report`].
pub fn bound_check(seq: &KeyFormSequence) -> BoundCheck {
    let d = d_delta(seq);
    let m_omega = m_delta(seq) * omega_last(seq);
    let d_squared = &d * &d;
    BoundCheck {
        holds: m_omega <= d_squared,
        equality: m_omega == d_squared,
    }
}

/// Slopes of the two edges of the nef cone of the compactification:
/// `(d, m * omega / d)`.
///
/// Present exactly when the final value is non-negative and the semidegree
/// is not a scaled total degree.
pub fn nef_edges(seq: &KeyFormSequence) -> Option<(Rat, Rat)> {
    let omega = omega_last(seq);
    if omega.is_negative() || seq.is_scaled_degree() {
        return None;
    }
    let d = d_delta(seq);
    Some((
        Rat::from_integer(d.clone()),
        Rat::new(m_delta(seq) * omega, d),
    ))
}

/// Full geometric profile of a semidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometryReport {
    pub d: BigInt,
    pub m: BigInt,
    pub omega_last: BigInt,
    pub pairs: PuiseuxPairs,
    pub skewness: Rat,
    pub mat_m: IntMat2,
    /// Inverse pairing matrix; absent exactly when the semidegree is a
    /// scaled total degree.
    pub mat_i: Option<RatMat2>,
    pub sign_class: SignClass,
    pub analytic: bool,
    pub algebraic: bool,
    pub alpha_holds: bool,
    pub inf_attained: bool,
    pub inf_ratio: Option<Rat>,
    pub nef_edges: Option<(Rat, Rat)>,
}

/// Assembles the full report, running every cross-check on the way.
pub fn build_report(seq: &KeyFormSequence) -> Result<GeometryReport, GeometryError> {
    let d = d_delta(seq);
    let m = m_delta(seq);
    let omega = omega_last(seq);
    let pairs = puiseux_pairs(seq)?;
    let scaled_degree = seq.is_scaled_degree();

    let (mat_m, mat_i) = match intersection_matrices(seq) {
        Ok((mat_m, mat_i)) => {
            if scaled_degree {
                return Err(GeometryError::CrossCheckFailed {
                    check: "degenerate-pairing",
                    detail: "scaled total degree produced an invertible pairing".into(),
                });
            }
            (mat_m, Some(mat_i))
        }
        Err(GeometryError::DeltaEqualsDeg) => {
            if !scaled_degree {
                return Err(GeometryError::CrossCheckFailed {
                    check: "degenerate-pairing",
                    detail: "singular pairing for a semidegree that is not a scaled total degree"
                        .into(),
                });
            }
            (pairing_matrix(&d, &(&m * &omega)), None)
        }
        Err(other) => return Err(other),
    };

    let bound = bound_check(seq);
    if !bound.holds {
        return Err(GeometryError::CrossCheckFailed {
            check: "value-bound",
            detail: format!("m * omega = {} exceeds d^2 = {}", &m * &omega, &d * &d),
        });
    }
    if bound.equality != scaled_degree {
        return Err(GeometryError::CrossCheckFailed {
            check: "value-bound-equality",
            detail: format!(
                "bound equality is {} but the scaled-degree test says {}",
                bound.equality, scaled_degree
            ),
        });
    }

    let (analytic, algebraic) = compact_classify(seq);
    let alpha = alpha_verdict(seq);

    Ok(GeometryReport {
        skewness: skewness(seq),
        sign_class: sign_classify(seq),
        inf_ratio: inf_ratio(seq),
        nef_edges: nef_edges(seq),
        d,
        m,
        omega_last: omega,
        pairs,
        mat_m,
        mat_i,
        analytic,
        algebraic,
        alpha_holds: alpha.holds,
        inf_attained: alpha.attained,
    })
}

fn rat_json(q: &Rat) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

fn rat_mat_json(m: &RatMat2) -> Value {
    Value::Array(
        m.0.iter()
            .map(|row| Value::Array(row.iter().map(rat_json).collect()))
            .collect(),
    )
}

impl GeometryReport {
    /// Stable JSON form: integers as decimal strings, rationals as
    /// `{"num", "den"}` objects, absent data as `null`.
    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d.to_string(),
            "m": self.m.to_string(),
            "omegaLast": self.omega_last.to_string(),
            "pairs": {
                "pairs": self.pairs.pairs.iter()
                    .map(|(q, p)| json!([q.to_string(), p.to_string()]))
                    .collect::<Vec<_>>(),
                "pLast": self.pairs.p_last.to_string(),
                "qLast": self.pairs.q_last.to_string(),
            },
            "skewness": rat_json(&self.skewness),
            "matM": self.mat_m.0.iter()
                .map(|row| json!([row[0].to_string(), row[1].to_string()]))
                .collect::<Vec<_>>(),
            "matI": self.mat_i.as_ref().map(rat_mat_json).unwrap_or(Value::Null),
            "signClass": self.sign_class.as_str(),
            "analytic": self.analytic,
            "algebraic": self.algebraic,
            "alphaHolds": self.alpha_holds,
            "infAttained": self.inf_attained,
            "infRatio": self.inf_ratio.as_ref().map(|q| rat_json(q)).unwrap_or(Value::Null),
            "nefEdges": self.nef_edges.as_ref()
                .map(|(a, b)| json!([rat_json(a), rat_json(b)]))
                .unwrap_or(Value::Null),
        })
    }
}

impl fmt::Display for GeometryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d = {}", self.d)?;
        writeln!(f, "m = {}", self.m)?;
        writeln!(f, "final value = {}", self.omega_last)?;
        writeln!(f, "puiseux pairs: {}", self.pairs)?;
        writeln!(f, "skewness = {}", format_rat(&self.skewness))?;
        writeln!(f, "pairing matrix = {}", self.mat_m)?;
        match &self.mat_i {
            Some(mat) => writeln!(f, "inverse pairing = {mat}")?,
            None => writeln!(f, "inverse pairing = (none: scaled total degree)")?,
        }
        writeln!(f, "sign class = {}", self.sign_class)?;
        writeln!(
            f,
            "compactification: analytic = {}, algebraic = {}",
            self.analytic, self.algebraic
        )?;
        writeln!(
            f,
            "ratio minimization: holds = {}, attained = {}",
            self.alpha_holds, self.inf_attained
        )?;
        match &self.inf_ratio {
            Some(q) => writeln!(f, "inf value/degree = {}", format_rat(q))?,
            None => writeln!(f, "inf value/degree = (unknown from key forms)")?,
        }
        match &self.nef_edges {
            Some((a, b)) => write!(
                f,
                "nef edge slopes = ({}, {})",
                format_rat(a),
                format_rat(b)
            ),
            None => write!(f, "nef edge slopes = (absent)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keyforms::compute_key_forms;
    use crate::parse::{parse_datum, parse_expr};
    use crate::rat::rat;
    use crate::semidegree::SemidegreeSpec;

    fn seq_of(datum: &str) -> KeyFormSequence {
        compute_key_forms(&parse_datum(datum).expect("datum parses")).expect("key forms complete")
    }

    fn weighted(p: i64, q: i64) -> KeyFormSequence {
        compute_key_forms(&SemidegreeSpec::from_weights(p, q).expect("valid weights"))
            .expect("weighted key forms")
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn headline_example_report() {
        let seq = seq_of("phi = x^(5/2) + x^(-1); r = -14/5; scale = 10");
        let report = build_report(&seq).expect("report builds");
        assert_eq!(report.d, big(25));
        assert_eq!(report.m, big(5));
        assert_eq!(report.omega_last, big(-3));
        assert_eq!(report.skewness, rat(-3, 125));
        assert_eq!(report.pairs.pairs, vec![(big(5), big(2))]);
        assert_eq!(report.pairs.p_last, big(5));
        assert_eq!(report.pairs.q_last, big(-28));
        assert_eq!(report.sign_class, SignClass::TakesNegativeValues);
        assert!(!report.analytic);
        assert!(!report.algebraic);
        assert!(!report.alpha_holds);
        assert!(!report.inf_attained);
        assert_eq!(report.inf_ratio, None);
        assert_eq!(report.nef_edges, None);

        let expected_m = IntMat2([
            [big(1), big(25)],
            [big(25), big(-15)],
        ]);
        assert_eq!(report.mat_m, expected_m);
        let mat_i = report.mat_i.expect("pairing is invertible");
        assert_eq!(mat_i.0[0][0], rat(15, 640));
        assert_eq!(mat_i.0[0][1], rat(25, 640));
        assert_eq!(mat_i.0[1][1], rat(-1, 640));
    }

    #[test]
    fn pole_example_matrices_and_intersection() {
        let seq = seq_of("phi = x^(-1); r = -2; scale = 1");
        assert_eq!(skewness(&seq), rat(-2, 1));
        let (mat_m, mat_i) = intersection_matrices(&seq).expect("invertible");
        assert_eq!(
            mat_m,
            IntMat2([[big(1), big(1)], [big(1), big(-2)]])
        );
        let expected_i = RatMat2([
            [rat(2, 3), rat(1, 3)],
            [rat(1, 3), rat(-1, 3)],
        ]);
        assert_eq!(mat_i, expected_i);
        assert_eq!(self_intersection(&big(1), &big(-1), &mat_i), rat(-1, 3));

        let pairs = puiseux_pairs(&seq).expect("pairs cross-check");
        assert!(pairs.pairs.is_empty());
        assert_eq!(pairs.p_last, big(1));
        assert_eq!(pairs.q_last, big(-2));
        assert_eq!(sign_classify(&seq), SignClass::TakesNegativeValues);
        assert_eq!(inf_ratio(&seq), None);
    }

    #[test]
    fn positive_pole_example_report() {
        let seq = seq_of("phi = x^(5/2) + x^(-1); r = -2; scale = 2");
        assert_eq!(seq.values(), vec![big(2), big(5), big(3), big(1)]);
        let report = build_report(&seq).expect("report builds");
        assert_eq!(report.d, big(5));
        assert_eq!(report.m, big(1));
        assert_eq!(report.skewness, rat(1, 25));
        assert_eq!(report.sign_class, SignClass::PositiveOnNonconstants);
        assert!(report.analytic);
        assert!(!report.algebraic);
        assert!(report.alpha_holds);
        assert!(!report.inf_attained);
        assert_eq!(report.inf_ratio, Some(rat(1, 5)));
        assert_eq!(report.nef_edges, Some((rat(5, 1), rat(1, 5))));
        assert_eq!(report.pairs.pairs, vec![(big(5), big(2))]);
        assert_eq!(report.pairs.p_last, big(1));
        assert_eq!(report.pairs.q_last, big(-4));
    }

    #[test]
    fn weighted_reports() {
        let seq = weighted(2, 3);
        let report = build_report(&seq).expect("report builds");
        assert_eq!(report.d, big(3));
        assert_eq!(report.m, big(2));
        assert_eq!(report.skewness, rat(2, 3));
        assert_eq!(report.sign_class, SignClass::PositiveOnNonconstants);
        assert!(report.analytic && report.algebraic);
        assert!(report.alpha_holds && report.inf_attained);
        assert_eq!(report.inf_ratio, Some(rat(2, 1)));
        assert_eq!(report.nef_edges, Some((rat(3, 1), rat(2, 1))));
        assert_eq!(report.pairs.p_last, big(2));
        assert_eq!(report.pairs.q_last, big(3));
        let verdict = alpha_verdict(&seq);
        assert_eq!(verdict.minimizer, Some(BiLaurent::y()));

        let bound = bound_check(&seq);
        assert!(bound.holds && !bound.equality);
    }

    #[test]
    fn scaled_degree_has_no_inverse_pairing() {
        for p in [1i64, 3] {
            let seq = weighted(p, p);
            assert!(matches!(
                intersection_matrices(&seq),
                Err(GeometryError::DeltaEqualsDeg)
            ));
            let report = build_report(&seq).expect("report builds");
            assert!(report.mat_i.is_none());
            assert_eq!(report.skewness, rat(1, 1));
            assert_eq!(report.nef_edges, None);
            assert_eq!(report.inf_ratio, Some(rat(p, 1)));
            let bound = bound_check(&seq);
            assert!(bound.holds && bound.equality);
        }
    }

    #[test]
    fn zero_weight_is_non_negative_not_positive() {
        let seq = weighted(1, 0);
        assert_eq!(sign_classify(&seq), SignClass::NonNegativeNotPositive);
        assert_eq!(compact_classify(&seq), (false, false));
        let verdict = alpha_verdict(&seq);
        assert!(verdict.holds && verdict.attained);
        assert_eq!(inf_ratio(&seq), Some(rat(0, 1)));
    }

    #[test]
    fn zero_final_value_with_pole_counts_as_positive() {
        // Synthetic sequence: the classification must key off polynomiality
        // of the final form when the final value is zero.
        let mut seq = seq_of("phi = x^(-1); r = -2; scale = 1");
        seq.steps.last_mut().unwrap().value = BigInt::zero();
        assert_eq!(sign_classify(&seq), SignClass::PositiveOnNonconstants);
    }

    #[test]
    fn tangent_line_datum_reaches_zero() {
        // phi = x^2 with r = 0 ends on the polynomial form y - x^2 of value 0.
        let seq = seq_of("phi = x^2; r = 0; scale = 1");
        assert_eq!(seq.values(), vec![big(1), big(2), big(0)]);
        assert_eq!(sign_classify(&seq), SignClass::NonNegativeNotPositive);
        let report = build_report(&seq).expect("report builds");
        assert_eq!(report.inf_ratio, Some(rat(0, 1)));
        assert_eq!(report.nef_edges, Some((rat(2, 1), rat(0, 1))));
    }

    #[test]
    fn ratio_check_examples() {
        let seq = weighted(2, 3);
        let x = parse_expr("x").unwrap();
        let y = parse_expr("y").unwrap();
        let check_x = ratio_check(&seq, &x).expect("x is fine");
        assert_eq!(check_x.ratio, rat(2, 1));
        assert_eq!(check_x.bound, rat(3, 1));
        assert!(!check_x.meets_bound);
        let check_y = ratio_check(&seq, &y).expect("y is fine");
        assert!(check_y.meets_bound);

        let constant = parse_expr("7").unwrap();
        assert_eq!(
            ratio_check(&seq, &constant),
            Err(GeometryError::ConstantInput)
        );
        let laurent = parse_expr("x^-1").unwrap();
        assert_eq!(
            ratio_check(&seq, &laurent),
            Err(GeometryError::NotPolynomial)
        );
    }

    #[test]
    fn ratio_floor_on_pole_example() {
        let seq = seq_of("phi = x^(5/2) + x^(-1); r = -14/5; scale = 10");
        let f = parse_expr("x*y^2 - x^6 - 2*y").unwrap();
        let check = ratio_check(&seq, &f).expect("polynomial multiple of the final form");
        assert_eq!(check.ratio, rat(7, 6));
        assert_eq!(check.bound, rat(-3, 5));
        assert!(!check.meets_bound);
    }

    #[test]
    fn report_json_shape() {
        let seq = seq_of("phi = x^(-1); r = -2; scale = 1");
        let report = build_report(&seq).expect("report builds");
        let value = report.to_json();
        assert_eq!(value["d"], "1");
        assert_eq!(value["skewness"]["num"], "-2");
        assert_eq!(value["skewness"]["den"], "1");
        assert_eq!(value["matI"][0][0]["num"], "2");
        assert_eq!(value["matI"][0][0]["den"], "3");
        assert_eq!(value["signClass"], "TakesNegativeValues");
        assert_eq!(value["infRatio"], Value::Null);
        assert_eq!(value["pairs"]["pLast"], "1");

        let scaled = build_report(&weighted(1, 1)).expect("report builds");
        assert_eq!(scaled.to_json()["matI"], Value::Null);
    }
}

//! Expansion of Laurent polynomials in the key forms of a semidegree.
//!
//! Fix a key-form sequence `g_0 = x, g_1 = y, ..., g_{n+1}`.  Every nonzero
//! `f` in `C[x, 1/x, y]` has a unique *standard* presentation
//!
//! ```text
//! f = sum  c * x^a * g_1^{m_1} * ... * g_{n+1}^{m_{n+1}}
//! ```
//!
//! with `0 <= m_i < alpha_i` for the interior forms (`m_{n+1}` unbounded and
//! `a` any integer), obtained greedily: divide by `g_{n+1}` (monic in `y`),
//! then expand each digit in the earlier forms.  The *weight* of a
//! presentation is the maximum over its terms of
//! `a * omega_0 + sum m_i * omega_i`; for the standard presentation the
//! weight equals the semidegree of `f` exactly, while any other presentation
//! of `f` can only overshoot.  That is the working form of axiom P3 and the
//! way semidegree values are computed without touching Puiseux series.

use std::collections::BTreeMap;
use std::error::Error;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bilaurent::{BiLaurent, ZeroInput};
use crate::keyforms::KeyFormSequence;
use crate::rat::{format_rat, Rat};

/// A finite sum of terms `c * x^a * g_1^{m_1} ... g_{k}^{m_k}`, keyed by the
/// exponent data `(a, m)`.
///
/// The vector `m` always has one entry per key form past `x`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Presentation {
    pub terms: BTreeMap<(BigInt, Vec<BigInt>), Rat>,
}

impl Presentation {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when every interior exponent respects its bound
    /// `0 <= m_i < alpha_i` (the uniqueness condition).
    pub fn is_standard(&self, seq: &KeyFormSequence) -> bool {
        self.terms.keys().all(|(_, m)| {
            m.iter().enumerate().all(|(i, mi)| {
                if mi.is_negative() {
                    return false;
                }
                // m[i] belongs to form i+1; interior forms carry an alpha.
                match &seq.steps[i + 1].alpha {
                    Some(alpha) => mi < alpha,
                    None => true, // the final form is unbounded
                }
            })
        })
    }
}

impl fmt::Display for Presentation {
    /// One line per term: `(a, m_1, ..., m_k) -> coefficient`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((a, m), c) in &self.terms {
            let m_text = m
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            writeln!(f, "({a}; {m_text}) -> {}", format_rat(c))?;
        }
        Ok(())
    }
}

/// Weight queries need at least one term to maximize over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmptyPresentation;

impl fmt::Display for EmptyPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "the empty presentation has no weight")
    }
}

impl Error for EmptyPresentation {}

/// The weight of a presentation: `max (a omega_0 + sum m_i omega_i)` over
/// its terms.  `values` must list `omega_0, ..., omega_{n+1}`, one more
/// entry than each `m` vector.
pub fn weight(p: &Presentation, values: &[BigInt]) -> Result<BigInt, EmptyPresentation> {
    p.terms
        .keys()
        .map(|(a, m)| {
            assert_eq!(
                m.len() + 1,
                values.len(),
                "presentation arity must match the value list"
            );
            let mut w = a * &values[0];
            for (mi, wi) in m.iter().zip(&values[1..]) {
                w += mi * wi;
            }
            w
        })
        .max()
        .ok_or(EmptyPresentation)
}

/// Expands a nonzero `f` in the key forms of `seq`, producing the standard
/// presentation.
///
/// Division is by the top form first: `f = sum_k q_k g_{n+1}^k` with each
/// digit of lower `y`-degree than `g_{n+1}`, then the digits are expanded
/// recursively.  Every division here is by a form monic in `y`, so the
/// digits are exact and the standard bounds `m_i < alpha_i` fall out of the
/// degree arithmetic rather than being enforced separately.
pub fn adic_expand(f: &BiLaurent, seq: &KeyFormSequence) -> Result<Presentation, ZeroInput> {
    if f.is_zero() {
        return Err(ZeroInput("adic expansion"));
    }
    let forms: Vec<(&BiLaurent, BigInt)> = seq.steps[1..]
        .iter()
        .map(|s| {
            let d = s.form.y_degree().expect("key forms are y-monic, never y-free");
            let (_, lead) = s.form.leading_y_slice().expect("nonzero form");
            assert!(
                lead == BiLaurent::one(),
                "key forms are monic in y; expansion requires a sequence from compute_key_forms"
            );
            (&s.form, d)
        })
        .collect();
    let mut out = Presentation::default();
    let mut m = vec![BigInt::zero(); forms.len()];
    expand_level(f, &forms, forms.len() - 1, &mut m, &mut out);
    out.terms.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn expand_level(
    f: &BiLaurent,
    forms: &[(&BiLaurent, BigInt)],
    level: usize,
    m: &mut Vec<BigInt>,
    out: &mut Presentation,
) {
    let (g, d) = &forms[level];
    for (k, digit) in adic_digits(f, g, d) {
        m[level] = k;
        if level == 0 {
            // Digits of the division by g_1 = y are free of y: emit x-terms.
            for ((a, b), c) in digit.iter() {
                assert!(b.is_zero(), "digit of division by y must be y-free");
                let key = (a.clone(), m.clone());
                *out.terms.entry(key).or_insert_with(Rat::zero) += c;
            }
        } else {
            expand_level(&digit, forms, level - 1, m, out);
        }
    }
    m[level] = BigInt::zero();
}

/// Writes `f = sum_k q_k * g^k` with `deg_y q_k < deg_y g = d`, returning
/// the nonzero digits `(k, q_k)`.
fn adic_digits(f: &BiLaurent, g: &BiLaurent, d: &BigInt) -> Vec<(BigInt, BiLaurent)> {
    let mut digits = Vec::new();
    let mut rest = f.clone();
    let mut k = BigInt::zero();
    while !rest.is_zero() {
        let (remainder, quotient) = divmod_y(&rest, g, d);
        if !remainder.is_zero() {
            digits.push((k.clone(), remainder));
        }
        rest = quotient;
        k += BigInt::one();
    }
    digits
}

/// Division with remainder by a `y`-monic `g` of `y`-degree `d`:
/// returns `(r, q)` with `f = q g + r` and `deg_y r < d`.
fn divmod_y(f: &BiLaurent, g: &BiLaurent, d: &BigInt) -> (BiLaurent, BiLaurent) {
    let mut rem = f.clone();
    let mut quot = BiLaurent::zero();
    while let Some((top, slice)) = rem.leading_y_slice() {
        if &top < d {
            break;
        }
        // g is monic, so the whole top slice moves to the quotient at once.
        let term = slice.mul_monomial(&BigInt::zero(), &(&top - d), &Rat::one());
        quot = &quot + &term;
        rem = &rem - &(&term * g);
    }
    (rem, quot)
}

/// Evaluates a presentation back to the Laurent polynomial it denotes.
pub fn reconstruct(p: &Presentation, seq: &KeyFormSequence) -> BiLaurent {
    let forms = &seq.steps[1..];
    let mut total = BiLaurent::zero();
    for ((a, m), c) in &p.terms {
        assert_eq!(m.len(), forms.len(), "presentation arity must match the sequence");
        let mut term = BiLaurent::monomial(a.clone(), BigInt::zero(), c.clone());
        for (mi, step) in m.iter().zip(forms) {
            if mi.is_positive() {
                term = &term * &step.form.pow(mi.to_u64().expect("exponent fits in u64"));
            }
        }
        total = &total + &term;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keyforms::compute_key_forms;
    use crate::parse::{parse_datum, parse_expr};
    use crate::rat::int;

    fn key_example() -> KeyFormSequence {
        let spec = parse_datum("phi = x^(5/2) + x^(-1); r = -14/5; scale = auto").unwrap();
        compute_key_forms(&spec).unwrap()
    }

    fn term(a: i64, m: &[i64], c: i64) -> ((BigInt, Vec<BigInt>), Rat) {
        (
            (BigInt::from(a), m.iter().map(|&v| BigInt::from(v)).collect()),
            int(c),
        )
    }

    #[test]
    fn expansion_of_y_squared() {
        let seq = key_example();
        let f = parse_expr("y^2").unwrap();
        let p = adic_expand(&f, &seq).unwrap();
        let expect = Presentation {
            terms: [term(5, &[0, 0, 0], 1), term(-1, &[1, 0, 0], 2), term(0, &[0, 0, 1], 1)]
                .into_iter()
                .collect(),
        };
        assert_eq!(p, expect);
        assert!(p.is_standard(&seq));
        assert_eq!(weight(&p, &seq.values()).unwrap(), BigInt::from(50));
        assert_eq!(reconstruct(&p, &seq), f);
    }

    #[test]
    fn expansion_weight_matches_semidegree() {
        let seq = key_example();
        for text in [
            "y",
            "x^3",
            "y^2 - x^5",
            "y^2 - 2*x^-1*y - x^5",
            "x^-2*y^5 + 7*y - 1/3",
            "x*y^3 - x^6*y + 4",
        ] {
            let f = parse_expr(text).unwrap();
            let p = adic_expand(&f, &seq).unwrap();
            assert!(p.is_standard(&seq), "{text}");
            assert_eq!(reconstruct(&p, &seq), f, "{text}");
            assert_eq!(
                weight(&p, &seq.values()).unwrap(),
                seq.spec.evaluate(&f).unwrap(),
                "weight of the standard presentation computes the semidegree of {text}"
            );
        }
    }

    #[test]
    fn nonstandard_presentations_overshoot() {
        let seq = key_example();
        // y^2 - x^5 written with m_1 = 2 (= alpha_1, out of standard range):
        // weight 50, yet the semidegree of g_2 is 15.
        let p = Presentation {
            terms: [term(0, &[2, 0, 0], 1), term(5, &[0, 0, 0], -1)]
                .into_iter()
                .collect(),
        };
        assert!(!p.is_standard(&seq));
        let f = reconstruct(&p, &seq);
        assert_eq!(f, parse_expr("y^2 - x^5").unwrap());
        let w = weight(&p, &seq.values()).unwrap();
        let direct = seq.spec.evaluate(&f).unwrap();
        assert_eq!(w, BigInt::from(50));
        assert_eq!(direct, BigInt::from(15));
        assert!(w > direct);
    }

    #[test]
    fn zero_and_empty_inputs_error() {
        let seq = key_example();
        assert!(adic_expand(&BiLaurent::zero(), &seq).is_err());
        assert_eq!(
            weight(&Presentation::default(), &seq.values()),
            Err(EmptyPresentation)
        );
    }

    #[test]
    fn standard_presentations_round_trip_uniquely() {
        let seq = key_example();
        // A presentation already in standard form must be recovered verbatim
        // by expanding its reconstruction.
        let p = Presentation {
            terms: [
                term(-2, &[1, 0, 2], 3),
                term(0, &[0, 0, 0], -7),
                term(4, &[1, 0, 0], 1),
            ]
            .into_iter()
            .collect(),
        };
        assert!(p.is_standard(&seq));
        let f = reconstruct(&p, &seq);
        assert_eq!(adic_expand(&f, &seq).unwrap(), p);
    }
}

//! Empirical sampling of the value set of a semidegree.
//!
//! No finite sample can decide statements about all polynomials, so this
//! module only corroborates the classification verdicts: it evaluates the
//! semidegree on a deterministic spread of polynomial candidates, records
//! every (degree, value) pair, the set of attained values, the extremal
//! value/degree slope, and the first witness of a negative value.  Every
//! point is checked against the proven slope floor `m * omega / d`; a
//! violation would mean a real bug and is reported as a hard error, never
//! patched over.
//!
//! Candidates come in four deterministic families: all monomials up to the
//! degree budget, products of the polynomial key forms, powers of the final
//! key form cleared of poles by the smallest power of `x`, and seeded
//! random sparse polynomials.  Structured candidates matter: pure random
//! sampling essentially never finds the extremal slopes.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bilaurent::BiLaurent;
use crate::geometry::{d_delta, inf_ratio, m_delta, omega_last};
use crate::keyforms::KeyFormSequence;
use crate::rat::{format_rat, int, Rat};

/// Size limits for a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanBudget {
    /// Largest total degree of any candidate; must be at least 1.
    pub max_degree: u32,
    /// Largest number of terms in a random candidate.
    pub max_terms: u32,
    /// Number of random candidates to draw.
    pub random_samples: u32,
    /// Seed for the random family; a fixed seed fixes the whole result.
    pub seed: u64,
}

impl Default for ScanBudget {
    fn default() -> Self {
        ScanBudget {
            max_degree: 8,
            max_terms: 4,
            random_samples: 64,
            seed: 0,
        }
    }
}

/// One evaluated candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanPoint {
    pub degree: BigInt,
    pub value: BigInt,
    pub witness: BiLaurent,
}

/// Aggregates over all points of a scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSummary {
    /// Smallest value/degree slope seen, absent only for an empty scan.
    pub min_slope: Option<Rat>,
    /// The infimum predicted from the key forms, when it is known.
    pub predicted_inf: Option<Rat>,
    /// First candidate (in enumeration order) with a negative value.
    pub negative_witness: Option<BiLaurent>,
    /// Every value attained by a candidate.
    pub value_set: BTreeSet<BigInt>,
}

/// Full outcome of a scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanResult {
    pub points: Vec<ScanPoint>,
    pub summary: ScanSummary,
}

/// Scan failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanError {
    /// The degree budget was zero.
    InvalidBudget,
    /// A candidate fell below the proven slope floor; this indicates a bug
    /// in the evaluation or key-form machinery, not in the input.
    FloorViolated {
        witness: BiLaurent,
        slope: Rat,
        floor: Rat,
    },
}

impl fmt::Display for ScanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanError::InvalidBudget => write!(f, "scan budget must allow degree at least 1"),
            ScanError::FloorViolated {
                witness,
                slope,
                floor,
            } => write!(
                f,
                "candidate {witness} has slope {} below the proven floor {}",
                format_rat(slope),
                format_rat(floor)
            ),
        }
    }
}

impl std::error::Error for ScanError {}

/// Lists the candidates for a scan, deduplicated, in a deterministic order.
///
/// Everything emitted is a nonconstant polynomial (no poles in `x`).  The
/// monomial family walks total degrees upward with pure `x`-powers first;
/// random candidates, if requested, come last and depend only on the seed.
pub fn enumerate_candidates(seq: &KeyFormSequence, budget: &ScanBudget) -> Vec<BiLaurent> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |candidate: BiLaurent, out: &mut Vec<BiLaurent>| {
        if candidate.is_zero() || candidate.is_constant() || !candidate.is_polynomial() {
            return;
        }
        if seen.insert(candidate.clone()) {
            out.push(candidate);
        }
    };

    // Family 1: monomials x^a y^b with 1 <= a + b <= max_degree.
    for degree in 1..=budget.max_degree {
        for b in 0..=degree {
            let a = degree - b;
            push(BiLaurent::monomial(a, b, Rat::one()), &mut out);
        }
    }

    // Family 2: products of the polynomial key forms within the budget.
    let poly_forms: Vec<(BiLaurent, BigInt)> = seq
        .steps
        .iter()
        .filter(|step| step.form.is_polynomial())
        .map(|step| {
            let degree = step
                .form
                .total_degree()
                .expect("key forms are nonzero by construction");
            (step.form.clone(), degree)
        })
        .collect();
    let mut products = Vec::new();
    form_products(
        &poly_forms,
        0,
        &BigInt::from(budget.max_degree),
        BiLaurent::one(),
        &mut products,
    );
    for candidate in products {
        push(candidate, &mut out);
    }

    // Family 3: powers of the final form, cleared of poles by the smallest
    // power of x that makes them polynomials.
    let last = &seq.last().form;
    if !last.is_polynomial() {
        let max_degree = BigInt::from(budget.max_degree);
        for power in 1u64.. {
            let raised = last.pow(power);
            let clearing = match raised.min_x_exponent() {
                Some(e) if e.is_negative() => -e,
                _ => BigInt::zero(),
            };
            let candidate = raised.mul_monomial(&clearing, &BigInt::zero(), &Rat::one());
            let degree = candidate
                .total_degree()
                .expect("powers of a key form are nonzero");
            if degree > max_degree {
                break;
            }
            push(candidate, &mut out);
        }
    }

    // Family 4: seeded random sparse polynomials.
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.random_samples {
        let terms = rng.gen_range(1..=budget.max_terms.max(1));
        let mut monomials = Vec::new();
        for _ in 0..terms {
            let a = rng.gen_range(0..=budget.max_degree);
            let b = rng.gen_range(0..=(budget.max_degree - a));
            let coefficient = loop {
                let c = rng.gen_range(-3i64..=3);
                if c != 0 {
                    break c;
                }
            };
            monomials.push((BigInt::from(a), BigInt::from(b), int(coefficient)));
        }
        push(BiLaurent::from_terms(monomials), &mut out);
    }

    out
}

fn form_products(
    forms: &[(BiLaurent, BigInt)],
    index: usize,
    room: &BigInt,
    current: BiLaurent,
    out: &mut Vec<BiLaurent>,
) {
    if index == forms.len() {
        out.push(current);
        return;
    }
    let (form, degree) = &forms[index];
    let mut used = BigInt::zero();
    let mut acc = current;
    loop {
        form_products(forms, index + 1, &(room - &used), acc.clone(), out);
        used += degree;
        if used > *room {
            break;
        }
        acc = &acc * form;
    }
}

/// Evaluates the semidegree on every candidate in the budget.
///
/// Each point records the candidate, its total degree, and its value; the
/// summary collects the minimum slope, the attained value set, the first
/// negative witness, and the predicted infimum from the key forms.  The
/// slope floor `m * omega / d` is enforced on every single point.
pub fn scan(seq: &KeyFormSequence, budget: &ScanBudget) -> Result<ScanResult, ScanError> {
    if budget.max_degree == 0 {
        return Err(ScanError::InvalidBudget);
    }
    let floor = Rat::new(m_delta(seq) * omega_last(seq), d_delta(seq));
    let mut points = Vec::new();
    let mut min_slope: Option<Rat> = None;
    let mut negative_witness = None;
    let mut value_set = BTreeSet::new();

    for witness in enumerate_candidates(seq, budget) {
        let value = seq
            .spec
            .evaluate(&witness)
            .expect("candidates are nonzero");
        let degree = witness
            .total_degree()
            .expect("candidates are nonzero");
        let slope = Rat::new(value.clone(), degree.clone());
        if slope < floor {
            return Err(ScanError::FloorViolated {
                witness,
                slope,
                floor,
            });
        }
        if min_slope.as_ref().map_or(true, |best| slope < *best) {
            min_slope = Some(slope);
        }
        if value.is_negative() && negative_witness.is_none() {
            negative_witness = Some(witness.clone());
        }
        value_set.insert(value.clone());
        points.push(ScanPoint {
            degree,
            value,
            witness,
        });
    }

    Ok(ScanResult {
        points,
        summary: ScanSummary {
            min_slope,
            predicted_inf: inf_ratio(seq),
            negative_witness,
            value_set,
        },
    })
}

/// Output formats for [`emit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    Csv,
    Json,
}

/// Renders a scan as CSV: header `deg,value,witness`, one point per line,
/// witnesses in the expression grammar.
pub fn to_csv(result: &ScanResult) -> String {
    let mut out = String::from("deg,value,witness\n");
    for point in &result.points {
        out.push_str(&format!(
            "{},{},{}\n",
            point.degree, point.value, point.witness
        ));
    }
    out
}

/// Renders a scan as JSON mirroring [`ScanResult`]: integers as decimal
/// strings, rationals as `num/den` strings, absent data as `null`.
pub fn to_json(result: &ScanResult) -> Value {
    json!({
        "points": result.points.iter().map(|p| json!({
            "deg": p.degree.to_string(),
            "value": p.value.to_string(),
            "witness": p.witness.to_string(),
        })).collect::<Vec<_>>(),
        "summary": {
            "minSlope": result.summary.min_slope.as_ref()
                .map(|q| Value::String(format_rat(q))).unwrap_or(Value::Null),
            "predictedInf": result.summary.predicted_inf.as_ref()
                .map(|q| Value::String(format_rat(q))).unwrap_or(Value::Null),
            "negativeWitness": result.summary.negative_witness.as_ref()
                .map(|w| Value::String(w.to_string())).unwrap_or(Value::Null),
            "valueSet": result.summary.value_set.iter()
                .map(|v| v.to_string()).collect::<Vec<_>>(),
        },
    })
}

/// Writes a scan to `sink` in the requested format.
pub fn emit<W: Write>(result: &ScanResult, format: EmitFormat, sink: &mut W) -> io::Result<()> {
    match format {
        EmitFormat::Csv => sink.write_all(to_csv(result).as_bytes()),
        EmitFormat::Json => {
            let rendered = serde_json::to_string_pretty(&to_json(result))
                .expect("scan JSON serializes");
            sink.write_all(rendered.as_bytes())?;
            sink.write_all(b"\n")
        }
    }
}

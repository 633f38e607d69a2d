//! Key forms of a semidegree and the recurrence that produces them.
//!
//! The key forms of a semidegree `delta` are a finite sequence of Laurent
//! polynomials `g_0 = x`, `g_1 = y`, `g_2`, ..., `g_{n+1}`, monic in `y`,
//! that record exactly how `delta` deviates from a monomial weighting.  The
//! sequence obeys four axioms:
//!
//! * **P0** — it starts with the coordinates `x`, `y`.
//! * **P1** — with `omega_j = delta(g_j)`, the multiplier `alpha_j` is the
//!   least positive integer with `alpha_j * omega_j` in the group
//!   `Z omega_0 + ... + Z omega_{j-1}`, and the values strictly drop:
//!   `omega_{j+1} < alpha_j * omega_j`.
//! * **P2** — each form follows from its predecessors by one sharp
//!   cancellation: `g_{j+1} = g_j^{alpha_j} - theta_j * prod g_i^{beta_{j,i}}`
//!   with `alpha_j * omega_j = sum beta_{j,i} * omega_i`, `0 <= beta_{j,i} <
//!   alpha_i` for `i >= 1`, and a scalar `theta_j`.
//! * **P3** — `delta` of any element is computed by its expansion in the
//!   key forms (see [`crate::expansion`]).
//!
//! The recurrence is driven by the substituted series `s_j = g_j(x, phi +
//! xi x^r)`: while the leading coefficient of `s_j` is a nonzero rational,
//! the cancellation step applies and strictly lowers the value; once the
//! leading coefficient involves `xi`, no rational `theta` can cancel it and
//! the sequence is complete.  A leading coefficient mixing a constant with
//! `xi`-terms still ends the sequence — no further cancellation is possible —
//! but is reported as an error so callers can distinguish the two endings.

use std::collections::BTreeMap;
use std::error::Error;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bilaurent::BiLaurent;
use crate::expansion::{adic_expand, weight};
use crate::puiseux::PuiseuxPoly;
use crate::rat::{denominator, format_rat, is_integer, lcm_big, Rat};
use crate::semidegree::{SemidegreeSpec, Violation};

/// One entry of a key-form sequence.
///
/// `alpha`, `beta`, `theta` describe how the *next* form is built from this
/// one; they are `None` on `g_0 = x` (never a recurrence base) and on the
/// final form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyStep {
    /// The key form `g_j` itself.
    pub form: BiLaurent,
    /// Its value `omega_j = delta(g_j)`.
    pub value: BigInt,
    /// The substituted series `g_j(x, phi + xi x^r)`.
    ///
    /// Terms so far below every reachable leading exponent that they can
    /// never influence the recurrence may be pruned; everything at or above
    /// that window is exact.
    pub series: PuiseuxPoly,
    /// Minimal multiplier `alpha_j` (on steps `1..=n`).
    pub alpha: Option<BigInt>,
    /// Exponent vector `beta_{j,0..j-1}` with `alpha_j omega_j = sum beta_{j,i} omega_i`.
    pub beta: Option<Vec<BigInt>>,
    /// The cancelling ratio `theta_j`.
    pub theta: Option<Rat>,
}

/// A complete (or, on the mixed ending, partial) key-form sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyFormSequence {
    pub spec: SemidegreeSpec,
    pub steps: Vec<KeyStep>,
}

impl KeyFormSequence {
    /// Number of forms in the sequence (always at least 2).
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The final form `g_{n+1}` and its data.
    pub fn last(&self) -> &KeyStep {
        self.steps.last().expect("a sequence has at least x and y")
    }

    /// All values `omega_0, ..., omega_{n+1}` in order.
    pub fn values(&self) -> Vec<BigInt> {
        self.steps.iter().map(|s| s.value.clone()).collect()
    }

    /// `gcd(omega_0, ..., omega_n)`: the values up to but excluding the last.
    pub fn initial_gcd(&self) -> BigInt {
        let values = self.values();
        values[..values.len() - 1]
            .iter()
            .fold(BigInt::zero(), |acc, v| acc.gcd(v))
    }

    /// True when the datum is a scaled ordinary degree: the sequence is just
    /// `x, y` with equal values.
    pub fn is_scaled_degree(&self) -> bool {
        self.steps.len() == 2 && self.steps[0].value == self.steps[1].value
    }
}

/// Why a key-form computation stopped without a complete sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KeyFormsError {
    /// The datum fails validation; the violations are attached.
    InvalidSpec(Vec<Violation>),
    /// A leading coefficient mixed a nonzero constant with `xi`-terms.  The
    /// recurrence still cannot continue — the partial sequence's last value
    /// is the final one — but the ending is flagged so callers can tell it
    /// apart from the pure-`xi` ending.
    MixedLeadingCoefficient { partial: Box<KeyFormSequence> },
    /// More steps than the datum can support.  The sequence is provably
    /// finite — every value is an integer inside a window computed from the
    /// datum, and each step either strictly divides the running gcd or
    /// strictly drops the value — so exceeding the (very generous) ceiling
    /// signals an arithmetic bug rather than an unusual datum.
    IterationBoundExceeded { bound: usize },
}

impl fmt::Display for KeyFormsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KeyFormsError::InvalidSpec(violations) => {
                write!(f, "invalid datum:")?;
                for v in violations {
                    write!(f, " {v};")?;
                }
                Ok(())
            }
            KeyFormsError::MixedLeadingCoefficient { partial } => write!(
                f,
                "leading coefficient `{}` mixes a constant with xi-terms after {} forms",
                partial
                    .last()
                    .series
                    .leading_term()
                    .map(|(_, c)| c.to_string())
                    .unwrap_or_default(),
                partial.len()
            ),
            KeyFormsError::IterationBoundExceeded { bound } => write!(
                f,
                "key-form recurrence exceeded {bound} steps; this is a bug, not a property of the datum"
            ),
        }
    }
}

impl Error for KeyFormsError {}

/// Target values outside the subgroup have no exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotInSubgroup {
    pub target: BigInt,
}

impl fmt::Display for NotInSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} does not lie in the subgroup generated by the values",
            self.target
        )
    }
}

impl Error for NotInSubgroup {}

/// Solves `target = sum beta_i * values[i]` with `0 <= beta_i < alphas[i-1]`
/// for `i >= 1` (the representation is then unique; `beta_0` is a free
/// integer).
///
/// `values` must be nonempty with `values[0] != 0`, and `alphas` must be the
/// successive gcd quotients of `values` (length one less), which is what
/// makes the bounded representation unique.
pub fn semigroup_solve(
    values: &[BigInt],
    alphas: &[BigInt],
    target: &BigInt,
) -> Result<Vec<BigInt>, NotInSubgroup> {
    assert!(!values.is_empty(), "need at least one value");
    assert!(!values[0].is_zero(), "values[0] must be nonzero");
    assert_eq!(
        alphas.len() + 1,
        values.len(),
        "one multiplier per value past the first"
    );
    // Prefix gcds: gcds[i] = gcd(values[0..=i]).
    let mut gcds = Vec::with_capacity(values.len());
    let mut acc = BigInt::zero();
    for v in values {
        acc = acc.gcd(v);
        gcds.push(acc.clone());
    }
    let mut beta = vec![BigInt::zero(); values.len()];
    let mut remaining = target.clone();
    // Reduce from the top: beta_i is the unique choice in [0, alpha_i) that
    // pushes the remainder into the next smaller subgroup.
    for i in (1..values.len()).rev() {
        let alpha_i = &alphas[i - 1];
        let modulus = &gcds[i - 1];
        let mut chosen = None;
        let mut candidate = BigInt::zero();
        while &candidate < alpha_i {
            let rest = &remaining - &(&candidate * &values[i]);
            if rest.is_multiple_of(modulus) {
                chosen = Some(candidate.clone());
                break;
            }
            candidate += BigInt::one();
        }
        let Some(b) = chosen else {
            return Err(NotInSubgroup {
                target: target.clone(),
            });
        };
        remaining -= &b * &values[i];
        beta[i] = b;
    }
    if !remaining.is_multiple_of(&values[0]) {
        return Err(NotInSubgroup {
            target: target.clone(),
        });
    }
    beta[0] = remaining / &values[0];
    Ok(beta)
}

/// Computes the key-form sequence of a valid datum.
///
/// Runs the cancellation recurrence until the leading coefficient of the
/// substituted series depends on `xi`.  Alongside each form it records the
/// value, the minimal multiplier, the exponent vector, and the ratio used,
/// so the whole derivation can be re-verified by [`verify_axioms`].
pub fn compute_key_forms(spec: &SemidegreeSpec) -> Result<KeyFormSequence, KeyFormsError> {
    let violations = spec.validate();
    if !violations.is_empty() {
        return Err(KeyFormsError::InvalidSpec(violations));
    }
    let scale = Rat::from_integer(spec.scale.clone());

    let mut steps = vec![KeyStep {
        form: BiLaurent::x(),
        value: spec.scale.clone(),
        series: PuiseuxPoly::x_power(Rat::one()),
        alpha: None,
        beta: None,
        theta: None,
    }];
    let s1 = spec.generic_series();
    let (e1, _) = s1.leading_term().expect("generic series is nonzero");
    let w1 = scaled_value(e1, &scale);
    let e_top = e1.clone();
    steps.push(KeyStep {
        form: BiLaurent::y(),
        value: w1,
        series: s1,
        alpha: None,
        beta: None,
        theta: None,
    });
    let bound = step_ceiling(spec, &steps[0].value, &steps[1].value);
    let floor = truncation_floor(spec, &steps[0].value, &steps[1].value, &e_top);
    let mut combos: BTreeMap<Vec<u64>, PuiseuxPoly> = BTreeMap::new();

    loop {
        let j = steps.len() - 1;
        let (_, lc) = steps[j]
            .series
            .leading_term()
            .expect("key-form series are nonzero");
        if lc.depends_on_xi() {
            if lc.constant_part().is_zero() {
                break; // generic leading coefficient: the sequence is complete
            }
            return Err(KeyFormsError::MixedLeadingCoefficient {
                partial: Box::new(KeyFormSequence {
                    spec: spec.clone(),
                    steps,
                }),
            });
        }
        if steps.len() >= bound {
            return Err(KeyFormsError::IterationBoundExceeded { bound });
        }

        let values: Vec<BigInt> = steps.iter().map(|s| s.value.clone()).collect();
        // alpha_j = G_{j-1} / G_j for the prefix gcds G_i = gcd(omega_0..omega_i);
        // this is the least alpha with alpha * omega_j in the subgroup, and it
        // is 1 when omega_j is 0.
        let g_prev = values[..j]
            .iter()
            .fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let g_cur = g_prev.gcd(&values[j]);
        let alpha = &g_prev / &g_cur;
        let target = &alpha * &values[j];
        let prior_alphas: Vec<BigInt> = steps[1..j]
            .iter()
            .map(|s| s.alpha.clone().expect("interior steps carry alpha"))
            .collect();
        let beta = semigroup_solve(&values[..j], &prior_alphas, &target)
            .expect("alpha * omega_j lies in the subgroup by construction");

        // Product of prior forms/series with the solved exponents; the x
        // exponent beta_0 may be negative.  Series products come from the
        // combination cache, so long runs of alpha = 1 cancellations reuse
        // them instead of re-multiplying the same large series every step.
        let mut prod_form = BiLaurent::monomial(beta[0].clone(), BigInt::zero(), Rat::one());
        for (i, b) in beta.iter().enumerate().skip(1) {
            if b.is_positive() {
                let e = b.to_u64().expect("beta exponent fits in u64");
                prod_form = &prod_form * &steps[i].form.pow(e);
            }
        }
        let prod_series = combo_series(&mut combos, &steps, &beta, floor.as_ref())
            .shift_exponents(&Rat::from_integer(beta[0].clone()));

        let alpha_u64 = alpha.to_u64().expect("alpha fits in u64");
        let power_series = truncated_pow(&steps[j].series, alpha_u64, floor.as_ref());
        let (e_pow, lc_pow) = power_series.leading_term().expect("power of nonzero");
        let (e_prod, lc_prod) = prod_series.leading_term().expect("product of nonzero");
        assert_eq!(
            e_pow, e_prod,
            "exponent identity: both sides of the cancellation lead with the same power"
        );
        let theta = lc_pow.as_constant().expect("continued step has xi-free lc")
            / lc_prod
                .as_constant()
                .expect("product of xi-free leading coefficients");

        let next_form = &steps[j].form.pow(alpha_u64) - &prod_form.scale(&theta);
        let next_series = &power_series - &prod_series.scale(&theta);
        // The cancellation removes the shared leading term but cannot kill the
        // series: the next form is monic in y of strictly larger y-degree than
        // the subtracted product.
        let (e_next, _) = next_series
            .leading_term()
            .expect("cancellation cannot produce the zero series");
        let next_value = scaled_value(e_next, &scale);
        assert!(
            next_value < target,
            "value must drop strictly across the cancellation"
        );

        let step = &mut steps[j];
        step.alpha = Some(alpha);
        step.beta = Some(beta);
        step.theta = Some(theta);
        steps.push(KeyStep {
            form: next_form,
            value: next_value,
            series: next_series,
            alpha: None,
            beta: None,
            theta: None,
        });
    }

    // Independent check on the completed run: the final value is forced by
    // how the conjugates of the underlying series collide, so any arithmetic
    // slip (in particular in the series pruning) would surface here.
    if let Some(expected) = predicted_final_value(spec) {
        let last = &steps[steps.len() - 1];
        assert_eq!(
            last.value, expected,
            "final value must match the conjugate-contact prediction"
        );
    }

    Ok(KeyFormSequence {
        spec: spec.clone(),
        steps,
    })
}

/// The contact exponents between the conjugates of `phi`.
///
/// A term `c x^(q/Q)` (exponent in lowest terms) is moved by the `k`-th
/// root-of-unity substitution exactly when `Q` does not divide `k`, and the
/// contact order of that conjugate with `phi` is the largest exponent moved.
/// Pairs of conjugate series diverge exactly at these orders, so they control
/// every leading exponent the key-form recurrence can encounter.
struct ContactProfile {
    /// Sum of the contact orders over all `P - 1` nontrivial conjugates.
    full_sum: Rat,
    /// Same sum with each contact clamped to `min(contact, 0)`.
    negative_sum: Rat,
}

/// Enumerates the conjugate contacts of `phi`.
///
/// Returns `None` when the exponent lattice is too fine to enumerate
/// cheaply; callers must then fall back to coarser bounds.
fn contact_profile(phi: &PuiseuxPoly) -> Option<ContactProfile> {
    let p = phi.lattice_denominator().to_u64()?;
    if p > 100_000 {
        return None;
    }
    // Exponents ascending, each with its reduced denominator; the contact
    // search walks them from the top down.
    let exps: Vec<(Rat, u64)> = phi
        .iter()
        .map(|(e, _)| denominator(e).to_u64().map(|q| (e.clone(), q)))
        .collect::<Option<_>>()?;
    let mut full_sum = Rat::zero();
    let mut negative_sum = Rat::zero();
    for k in 1..p {
        let contact = exps
            .iter()
            .rev()
            .find(|(_, q)| k % q != 0)
            .map(|(e, _)| e)
            .expect("some exponent denominator misses every k below the lattice lcm");
        full_sum += contact.clone();
        if contact.is_negative() {
            negative_sum += contact.clone();
        }
    }
    Some(ContactProfile {
        full_sum,
        negative_sum,
    })
}

/// The exact value of the final key form, read off the conjugate contacts.
///
/// The last form factors into one term `y - (conjugate series)` per
/// conjugate; under the generic substitution each factor's order is the
/// contact of that conjugate with `phi`, except the generic factor itself,
/// whose order is `r`.  Summing and scaling gives the value directly.
fn predicted_final_value(spec: &SemidegreeSpec) -> Option<BigInt> {
    let profile = contact_profile(&spec.phi)?;
    let lead = &spec.r + &profile.full_sum;
    Some(scaled_value(&lead, &Rat::from_integer(spec.scale.clone())))
}

/// A floor below which series terms are inert and can be pruned.
///
/// Every leading exponent the recurrence inspects is at least
/// `E = min(r, 0) + (sum of negative conjugate contacts)`: each substituted
/// form is a product of one factor per conjugate of a series extending
/// `phi`, and a factor's order is either a contact exponent or, for the
/// generic factor, at least `r`.  In any product the recurrence builds, a
/// term at exponent `e` inside a factor with leading exponent `l >= E` lands
/// at most at `e + (target - l)`, where `target` is the product's leading
/// exponent — itself below the peak `L` that values can reach.  Terms with
/// `e < 2 E - L` therefore never surface, in this product or any later one.
fn truncation_floor(spec: &SemidegreeSpec, w0: &BigInt, w1: &BigInt, top: &Rat) -> Option<Rat> {
    let profile = contact_profile(&spec.phi)?;
    let e_floor = spec.r.clone().min(Rat::zero()) + profile.negative_sum;
    let g1 = w0.gcd(w1);
    let peak = Rat::new(
        &g1 * w0.abs().max(w1.abs()).max(BigInt::one()),
        spec.scale.clone(),
    );
    let lambda = Rat::one().max(top.clone()).max(peak);
    let two = Rat::from_integer(BigInt::from(2));
    Some(&two * e_floor - lambda - two)
}

/// `prod_{i >= 1} steps[i].series ^ beta[i]`, assembled through a cache so
/// each distinct exponent pattern is multiplied out at most once.
fn combo_series(
    cache: &mut BTreeMap<Vec<u64>, PuiseuxPoly>,
    steps: &[KeyStep],
    beta: &[BigInt],
    floor: Option<&Rat>,
) -> PuiseuxPoly {
    let mut key: Vec<u64> = beta[1..]
        .iter()
        .map(|b| b.to_u64().expect("beta exponent fits in u64"))
        .collect();
    while key.last() == Some(&0) {
        key.pop();
    }
    combo_series_rec(cache, steps, key, floor)
}

fn combo_series_rec(
    cache: &mut BTreeMap<Vec<u64>, PuiseuxPoly>,
    steps: &[KeyStep],
    key: Vec<u64>,
    floor: Option<&Rat>,
) -> PuiseuxPoly {
    if key.is_empty() {
        return PuiseuxPoly::x_power(Rat::zero());
    }
    if let Some(hit) = cache.get(&key) {
        return hit.clone();
    }
    // Recurse on the key with its last exponent lowered by one; the factor
    // index is the position of that exponent in the beta vector.
    let factor = key.len();
    let mut shorter = key.clone();
    *shorter.last_mut().expect("key is nonempty") -= 1;
    while shorter.last() == Some(&0) {
        shorter.pop();
    }
    let rest = combo_series_rec(cache, steps, shorter, floor);
    let mut product = &rest * &steps[factor].series;
    if let Some(t) = floor {
        product = product.truncate_below(t);
    }
    cache.insert(key, product.clone());
    product
}

/// `series ^ e` by repeated squaring, pruning inert terms after each multiply.
fn truncated_pow(series: &PuiseuxPoly, e: u64, floor: Option<&Rat>) -> PuiseuxPoly {
    let Some(t) = floor else {
        return series.pow(e);
    };
    if e == 0 {
        return PuiseuxPoly::x_power(Rat::zero());
    }
    let mut base = series.clone();
    let mut remaining = e;
    let mut acc: Option<PuiseuxPoly> = None;
    while remaining > 0 {
        if remaining & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => (&a * &base).truncate_below(t),
            });
        }
        remaining >>= 1;
        if remaining > 0 {
            base = (&base * &base).truncate_below(t);
        }
    }
    acc.expect("nonzero exponent leaves a factor")
}

/// A generous ceiling on the sequence length, used purely defensively.
///
/// Every value in the sequence is an integer, at most `gcd(w0, w1) *
/// max(|w0|, |w1|, 1)` — the multipliers `alpha_j` multiply to a divisor of
/// `gcd(w0, w1)`, and only they can raise the value — and at least the
/// scaled floor `min(r, 0) + (sum of negative conjugate contacts)` used for
/// pruning (see [`truncation_floor`]).  Each step either strictly divides
/// the running gcd (at most `bits(gcd)` times) or strictly drops the value
/// inside that window, which caps the length.
fn step_ceiling(spec: &SemidegreeSpec, w0: &BigInt, w1: &BigInt) -> usize {
    let g1 = w0.gcd(w1);
    let peak = &g1 * w0.abs().max(w1.abs()).max(BigInt::one());
    let scale = Rat::from_integer(spec.scale.clone());
    let floor = match contact_profile(&spec.phi) {
        Some(profile) => {
            let e = spec.r.clone().min(Rat::zero()) + profile.negative_sum;
            (scale * e).floor().to_integer()
        }
        None => {
            // Lattice too fine to enumerate contacts: fall back to the
            // cruder bound of at most `P` factors of order at least `r`.
            let lattice = lcm_big(spec.phi.lattice_denominator(), &denominator(&spec.r));
            let r_negative = if spec.r.is_negative() {
                spec.r.clone()
            } else {
                Rat::zero()
            };
            (Rat::from_integer(&spec.scale * &lattice) * r_negative)
                .floor()
                .to_integer()
        }
    };
    let window = &peak - &floor + BigInt::from(2);
    let runs = BigInt::from(g1.bits() + 2);
    (runs * window + BigInt::from(2))
        .to_usize()
        .unwrap_or(usize::MAX)
}

fn scaled_value(exp: &Rat, scale: &Rat) -> BigInt {
    let raw = exp * scale;
    assert!(
        is_integer(&raw),
        "scaled exponent {} must be an integer on a valid datum",
        format_rat(&raw)
    );
    raw.to_integer()
}

/// One re-verified axiom, with failure details when it does not hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`verify_axioms`]: one entry per axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            let status = if check.passed { "ok  " } else { "FAIL" };
            write!(f, "{status} {}", check.name)?;
            if !check.detail.is_empty() {
                write!(f, ": {}", check.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Re-verifies a stored key-form sequence against the axioms, from scratch.
///
/// Nothing is trusted: values are recomputed by substitution, minimality of
/// each multiplier is established by brute force, the recurrence is replayed
/// with exact arithmetic, and the expansion axiom is spot-checked on every
/// nonzero element of `corpus`.  Each axiom yields one report entry, so a
/// single corrupted field (say a perturbed `theta`) is isolated to the axiom
/// it breaks.
pub fn verify_axioms(seq: &KeyFormSequence, corpus: &[BiLaurent]) -> AxiomReport {
    let mut checks = Vec::new();
    let values = seq.values();
    let n_steps = seq.steps.len();

    // P0: the sequence starts with the coordinates.
    let initial_ok = n_steps >= 2
        && seq.steps[0].form == BiLaurent::x()
        && seq.steps[1].form == BiLaurent::y();
    checks.push(AxiomCheck {
        name: "initial-forms",
        passed: initial_ok,
        detail: if initial_ok {
            String::new()
        } else {
            "sequence must start with x, y".into()
        },
    });

    // Values match fresh evaluation of each stored form.
    let mut bad_values = Vec::new();
    for (j, step) in seq.steps.iter().enumerate() {
        match seq.spec.evaluate(&step.form) {
            Ok(v) if v == step.value => {}
            Ok(v) => bad_values.push(format!("g_{j}: stored {} recomputed {v}", step.value)),
            Err(e) => bad_values.push(format!("g_{j}: {e}")),
        }
    }
    checks.push(AxiomCheck {
        name: "values-match-evaluation",
        passed: bad_values.is_empty(),
        detail: bad_values.join("; "),
    });

    // P1 (first half): each stored alpha is the least positive multiplier
    // landing in the subgroup of the earlier values.
    let mut bad_alpha = Vec::new();
    for j in 1..n_steps.saturating_sub(1) {
        let Some(alpha) = &seq.steps[j].alpha else {
            bad_alpha.push(format!("g_{j}: missing alpha"));
            continue;
        };
        let subgroup = values[..j]
            .iter()
            .fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let mut a = BigInt::one();
        while &a < alpha {
            if (&a * &values[j]).is_multiple_of(&subgroup) {
                bad_alpha.push(format!("g_{j}: {a} < {alpha} already lands in the subgroup"));
                break;
            }
            a += BigInt::one();
        }
        if !(alpha * &values[j]).is_multiple_of(&subgroup) {
            bad_alpha.push(format!("g_{j}: alpha {alpha} does not land in the subgroup"));
        }
    }
    checks.push(AxiomCheck {
        name: "multiplier-minimality",
        passed: bad_alpha.is_empty(),
        detail: bad_alpha.join("; "),
    });

    // P2 (identity part): alpha_j omega_j = sum beta_i omega_i with the betas
    // in range.
    let mut bad_identity = Vec::new();
    for j in 1..n_steps.saturating_sub(1) {
        let (Some(alpha), Some(beta)) = (&seq.steps[j].alpha, &seq.steps[j].beta) else {
            bad_identity.push(format!("g_{j}: missing recurrence data"));
            continue;
        };
        if beta.len() != j {
            bad_identity.push(format!("g_{j}: beta has length {} not {j}", beta.len()));
            continue;
        }
        let combo: BigInt = beta.iter().zip(&values).map(|(b, w)| b * w).sum();
        if combo != alpha * &values[j] {
            bad_identity.push(format!(
                "g_{j}: sum beta_i omega_i = {combo} but alpha omega = {}",
                alpha * &values[j]
            ));
        }
        for (i, b) in beta.iter().enumerate().skip(1) {
            let alpha_i = seq.steps[i].alpha.as_ref();
            let in_range = !b.is_negative() && alpha_i.map_or(false, |ai| b < ai);
            if !in_range {
                bad_identity.push(format!("g_{j}: beta_{i} = {b} out of range"));
            }
        }
    }
    checks.push(AxiomCheck {
        name: "exponent-identity",
        passed: bad_identity.is_empty(),
        detail: bad_identity.join("; "),
    });

    // P2 (recurrence part): replay each cancellation exactly.
    let mut bad_rec = Vec::new();
    for j in 1..n_steps.saturating_sub(1) {
        let step = &seq.steps[j];
        let (Some(alpha), Some(beta), Some(theta)) = (&step.alpha, &step.beta, &step.theta) else {
            continue; // already reported above
        };
        let Some(alpha_u64) = alpha.to_u64() else {
            bad_rec.push(format!("g_{j}: alpha out of range"));
            continue;
        };
        let mut product = BiLaurent::monomial(beta[0].clone(), BigInt::zero(), Rat::one());
        for (i, b) in beta.iter().enumerate().skip(1) {
            if b.is_positive() {
                product = &product * &seq.steps[i].form.pow(b.to_u64().expect("beta fits"));
            }
        }
        let replay = &step.form.pow(alpha_u64) - &product.scale(theta);
        if replay != seq.steps[j + 1].form {
            bad_rec.push(format!("g_{}: recurrence replay disagrees", j + 1));
        }
    }
    checks.push(AxiomCheck {
        name: "recurrence",
        passed: bad_rec.is_empty(),
        detail: bad_rec.join("; "),
    });

    // P1 (second half): strict value drop across each step.
    let mut bad_drop = Vec::new();
    for j in 1..n_steps.saturating_sub(1) {
        if let Some(alpha) = &seq.steps[j].alpha {
            if values[j + 1] >= alpha * &values[j] {
                bad_drop.push(format!(
                    "omega_{} = {} does not drop below alpha omega = {}",
                    j + 1,
                    values[j + 1],
                    alpha * &values[j]
                ));
            }
        }
    }
    checks.push(AxiomCheck {
        name: "value-drop",
        passed: bad_drop.is_empty(),
        detail: bad_drop.join("; "),
    });

    // Terminal condition: the last series' leading coefficient involves xi,
    // recomputed by a fresh substitution.
    let terminal = seq
        .last()
        .form
        .substitute_y(&seq.spec.generic_series())
        .ok()
        .and_then(|s| s.leading_term().map(|(_, c)| c.depends_on_xi()).ok())
        .unwrap_or(false);
    checks.push(AxiomCheck {
        name: "terminal-coefficient",
        passed: terminal,
        detail: if terminal {
            String::new()
        } else {
            "leading coefficient of the last series is xi-free".into()
        },
    });

    // P3 spot check: expansion weight equals the semidegree on the corpus.
    let mut bad_weight = Vec::new();
    for (k, f) in corpus.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let direct = seq.spec.evaluate(f);
        let via_expansion = adic_expand(f, seq).map(|p| weight(&p, &values));
        match (direct, via_expansion) {
            (Ok(d), Ok(Ok(w))) if d == w => {}
            (d, w) => bad_weight.push(format!("corpus[{k}]: direct {d:?} vs expansion {w:?}")),
        }
    }
    checks.push(AxiomCheck {
        name: "expansion-weight",
        passed: bad_weight.is_empty(),
        detail: bad_weight.join("; "),
    });

    AxiomReport { checks }
}

impl fmt::Display for KeyFormSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.spec)?;
        for (j, step) in self.steps.iter().enumerate() {
            write!(f, "  g_{j} = {}   [value {}]", step.form, step.value)?;
            if let (Some(alpha), Some(beta), Some(theta)) =
                (&step.alpha, &step.beta, &step.theta)
            {
                let beta_text = beta
                    .iter()
                    .map(|b| b.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                write!(
                    f,
                    "   alpha = {alpha}, beta = ({beta_text}), theta = {}",
                    format_rat(theta)
                )?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_datum, parse_expr};
    use crate::rat::int;

    fn forms_of(seq: &KeyFormSequence) -> Vec<String> {
        seq.steps.iter().map(|s| s.form.to_string()).collect()
    }

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn key_example_regression() {
        let spec = parse_datum("phi = x^(5/2) + x^(-1); r = -14/5; scale = auto").unwrap();
        let seq = compute_key_forms(&spec).unwrap();
        assert_eq!(
            forms_of(&seq),
            ["x", "y", "y^2 - x^5", "y^2 - 2*x^-1*y - x^5"]
        );
        assert_eq!(seq.values(), ints(&[10, 25, 15, -3]));
        assert_eq!(seq.steps[1].alpha, Some(BigInt::from(2)));
        assert_eq!(seq.steps[2].alpha, Some(BigInt::from(1)));
        assert_eq!(seq.steps[1].beta, Some(ints(&[5])));
        assert_eq!(seq.steps[2].beta, Some(ints(&[-1, 1])));
        assert_eq!(seq.steps[1].theta, Some(int(1)));
        assert_eq!(seq.steps[2].theta, Some(int(2)));
        assert_eq!(seq.last().alpha, None);
    }

    #[test]
    fn pole_example_regression() {
        let spec = parse_datum("phi = x^-1; r = -2; scale = auto").unwrap();
        let seq = compute_key_forms(&spec).unwrap();
        assert_eq!(forms_of(&seq), ["x", "y", "y - x^-1"]);
        assert_eq!(seq.values(), ints(&[1, -1, -2]));
        assert_eq!(seq.steps[1].beta, Some(ints(&[-1])));
        assert_eq!(seq.steps[1].theta, Some(int(1)));
    }

    #[test]
    fn weighted_data_stop_at_two_forms() {
        let seq = compute_key_forms(&SemidegreeSpec::from_weights(2, 3).unwrap()).unwrap();
        assert_eq!(forms_of(&seq), ["x", "y"]);
        assert_eq!(seq.values(), ints(&[2, 3]));
        assert!(!seq.is_scaled_degree());
        let deg = compute_key_forms(&SemidegreeSpec::from_weights(1, 1).unwrap()).unwrap();
        assert!(deg.is_scaled_degree());
    }

    #[test]
    fn zero_value_step_continues_with_constant_correction() {
        let spec = parse_datum("phi = x + 1; r = -1; scale = 1").unwrap();
        let seq = compute_key_forms(&spec).unwrap();
        assert_eq!(forms_of(&seq), ["x", "y", "y - x", "y - x - 1"]);
        assert_eq!(seq.values(), ints(&[1, 1, 0, -1]));
        assert_eq!(seq.steps[2].alpha, Some(BigInt::one()));
        assert_eq!(seq.steps[2].beta, Some(ints(&[0, 0])));
    }

    #[test]
    fn stripping_can_outrun_the_series_term_count() {
        // Cancellation introduces new series terms (cross products of
        // earlier ones), so the sequence can be longer than the term count
        // of `phi` suggests: this three-term datum needs seven forms.
        let spec =
            parse_datum("phi = -3*x^(-1/2) + 3*x^(-1) - x^(-5/2); r = -13/2; scale = auto")
                .unwrap();
        let seq = compute_key_forms(&spec).unwrap();
        assert_eq!(seq.len(), 7);
        assert_eq!(seq.values(), ints(&[2, -1, -3, -4, -6, -10, -14]));
        let last = parse_expr("y^2 - 6*x^-1*y - 9*x^-1 + 9*x^-2 - 6*x^-3 - x^-5").unwrap();
        assert_eq!(seq.last().form, last);
    }

    #[test]
    fn mixed_exponent_lattices_complete_quickly() {
        // Denominators 2 and 3 together force the multiplier chain 2, 3 and
        // a six-fold conjugate lattice; series pruning keeps this cheap.
        let spec = parse_datum("phi = 2*x^(-1/2) - 3*x^(-2/3); r = -4; scale = auto").unwrap();
        let seq = compute_key_forms(&spec).unwrap();
        assert_eq!(seq.values(), ints(&[6, -3, -7, -22, -24, -41]));

        // Same lattice with a positive leading exponent: values climb first.
        let spec = parse_datum("phi = x^(3/2) + 2*x^(-1/3); r = -2; scale = auto").unwrap();
        let seq = compute_key_forms(&spec).unwrap();
        assert_eq!(seq.values(), ints(&[6, 9, 7, 11]));
    }

    #[test]
    fn mixed_leading_coefficient_is_flagged_with_partial() {
        let spec = parse_datum("phi = x^(5/2) + x^(3/2); r = 1/2; scale = auto").unwrap();
        let err = compute_key_forms(&spec).unwrap_err();
        let KeyFormsError::MixedLeadingCoefficient { partial } = err else {
            panic!("expected the mixed ending, got {err:?}");
        };
        assert_eq!(
            forms_of(&partial),
            ["x", "y", "y^2 - x^5", "y^2 - x^5 - 2*x^4"]
        );
        assert_eq!(partial.values(), ints(&[2, 5, 8, 6]));
    }

    #[test]
    fn invalid_spec_is_rejected_up_front() {
        let spec = parse_datum("phi = x^2; r = 3; scale = 1").unwrap();
        assert!(matches!(
            compute_key_forms(&spec),
            Err(KeyFormsError::InvalidSpec(_))
        ));
    }

    #[test]
    fn semigroup_solver_matches_hand_calculations() {
        let values = ints(&[10, 25]);
        let alphas = ints(&[2]);
        assert_eq!(
            semigroup_solve(&values, &alphas, &BigInt::from(50)).unwrap(),
            ints(&[5, 0])
        );
        assert_eq!(
            semigroup_solve(&values, &alphas, &BigInt::from(15)).unwrap(),
            ints(&[-1, 1])
        );
        assert_eq!(
            semigroup_solve(&values, &alphas, &BigInt::from(3)),
            Err(NotInSubgroup {
                target: BigInt::from(3)
            })
        );
    }

    #[test]
    fn axioms_hold_and_isolate_a_perturbed_theta() {
        let spec = parse_datum("phi = x^(5/2) + x^(-1); r = -14/5; scale = auto").unwrap();
        let seq = compute_key_forms(&spec).unwrap();
        let corpus: Vec<BiLaurent> = ["x", "y", "y^2 - x^5", "x^3*y + 7", "x^-2*y^3 - 1/2"]
            .iter()
            .map(|t| parse_expr(t).unwrap())
            .collect();
        let report = verify_axioms(&seq, &corpus);
        assert!(report.all_passed(), "{report}");

        let mut broken = seq.clone();
        broken.steps[2].theta = Some(int(3));
        let report = verify_axioms(&broken, &corpus);
        assert!(!report.all_passed());
        for check in &report.checks {
            match check.name {
                "recurrence" => assert!(!check.passed, "perturbed theta must break the replay"),
                _ => assert!(check.passed, "only the recurrence should fail: {}", check.name),
            }
        }
    }
}

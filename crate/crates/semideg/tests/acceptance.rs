//! Acceptance gate: the pinned criteria this crate commits to.
//!
//! Criteria 1–4 and 7 freeze the regression anchors (hand-checked data with
//! known key forms, matrices, and scan outcomes); criteria 5 and 6 replay
//! the defining identities on a seeded stream of random data.  Each passing
//! criterion prints exactly one `criterion N: PASS` line — run with
//!
//! ```text
//! cargo test --test acceptance -- --nocapture
//! ```
//!
//! to see them; any failure panics with a case-level diagnostic instead.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semideg::bilaurent::BiLaurent;
use semideg::conescan::{scan, ScanBudget};
use semideg::expansion::{adic_expand, reconstruct, weight};
use semideg::geometry::{
    bound_check, build_report, compact_classify, d_delta, intersection_matrices, m_delta,
    puiseux_pairs, ratio_check, self_intersection, skewness, GeometryError, RatMat2,
};
use semideg::keyforms::{compute_key_forms, KeyFormSequence, KeyFormsError};
use semideg::parse::{parse_datum, parse_expr};
use semideg::puiseux::PuiseuxPoly;
use semideg::rat::{rat, Rat};
use semideg::semidegree::SemidegreeSpec;
use semideg::xipoly::XiPoly;

/// The running example: value 10 on `x`, final value −3.
const HEADLINE: &str = "phi = x^(5/2) + x^(-1); r = -14/5; scale = 10";
/// Same series part, shallower tail: values [2, 5, 3, 1].
const SAME_SEMIGROUP: &str = "phi = x^(5/2) + x^(-1); r = -2; scale = 2";
/// The smallest datum that goes negative.
const NEGATIVE: &str = "phi = x^(-1); r = -2; scale = 1";

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn sequence(datum: &str) -> KeyFormSequence {
    let spec = parse_datum(datum).expect("pinned datum parses");
    compute_key_forms(&spec).expect("pinned datum completes")
}

fn assert_forms(seq: &KeyFormSequence, expected: &[&str]) {
    assert_eq!(seq.len(), expected.len(), "sequence length");
    for (step, text) in seq.steps.iter().zip(expected) {
        let want = parse_expr(text).expect("pinned form parses");
        assert_eq!(step.form, want, "expected form `{text}`, got `{}`", step.form);
    }
}

#[test]
fn criterion_1_key_form_regression() {
    let start = Instant::now();
    let seq = sequence(HEADLINE);

    assert_forms(&seq, &["x", "y", "y^2 - x^5", "y^2 - x^5 - 2*x^-1*y"]);
    assert_eq!(seq.values(), vec![big(10), big(25), big(15), big(-3)]);

    let alphas: Vec<BigInt> = seq.steps.iter().filter_map(|s| s.alpha.clone()).collect();
    assert_eq!(alphas, vec![big(2), big(1)], "recurrence exponents");
    let thetas: Vec<Rat> = seq.steps.iter().filter_map(|s| s.theta.clone()).collect();
    assert_eq!(thetas, vec![rat(1, 1), rat(2, 1)], "leading-coefficient ratios");

    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "regression took {elapsed:?}, budget is 1s"
    );
    println!(
        "criterion 1: PASS — pinned key forms, values [10, 25, 15, -3], alpha [2, 1], theta [1, 2] in {elapsed:?}"
    );
}

#[test]
fn criterion_2_negative_value_geometry() {
    let seq = sequence(NEGATIVE);
    assert_forms(&seq, &["x", "y", "y - x^-1"]);
    assert_eq!(skewness(&seq), rat(-2, 1), "skewness");

    let (_, mat_i) = intersection_matrices(&seq).expect("pairing is invertible here");
    let expected = RatMat2([[rat(2, 3), rat(1, 3)], [rat(1, 3), rat(-1, 3)]]);
    assert_eq!(mat_i, expected, "inverse pairing matrix");
    assert_eq!(
        self_intersection(&big(1), &big(-1), &mat_i),
        rat(-1, 3),
        "self-intersection of (1, -1)"
    );

    let budget = ScanBudget {
        max_degree: 4,
        max_terms: 4,
        random_samples: 0,
        seed: 0,
    };
    let result = scan(&seq, &budget).expect("scan stays above the floor");
    let witness = result
        .summary
        .negative_witness
        .clone()
        .expect("a negative value appears by degree 4");
    assert_eq!(witness, BiLaurent::y(), "first negative witness");
    assert_eq!(seq.spec.evaluate(&witness).unwrap(), big(-1));
    let min_slope = result.summary.min_slope.clone().expect("nonempty scan");
    assert_eq!(min_slope, rat(-1, 1), "minimum value/degree slope");
    assert!(
        min_slope > skewness(&seq),
        "the scan floor sits strictly above the skewness"
    );

    println!(
        "criterion 2: PASS — forms [x, y, y - x^-1], skewness -2, inverse pairing (1/3)[[2, 1], [1, -1]], witness y with value -1, min slope -1"
    );
}

#[test]
fn criterion_3_same_value_semigroup_two_ways() {
    let seq = sequence(SAME_SEMIGROUP);
    assert_eq!(seq.values(), vec![big(2), big(5), big(3), big(1)]);
    assert_eq!(
        compact_classify(&seq),
        (true, false),
        "analytic but not algebraic"
    );

    let budget = ScanBudget {
        max_degree: 10,
        max_terms: 4,
        random_samples: 0,
        seed: 0,
    };
    let window = |values: &BTreeSet<BigInt>| -> BTreeSet<BigInt> {
        values
            .iter()
            .filter(|v| big(0) <= **v && **v <= big(10))
            .cloned()
            .collect()
    };

    let scanned = scan(&seq, &budget).expect("scan stays above the floor");
    let expected: BTreeSet<BigInt> = (2..=10).map(big).collect();
    assert_eq!(
        window(&scanned.summary.value_set),
        expected,
        "every value 2..=10 is hit and nothing smaller"
    );
    assert!(
        !scanned.summary.value_set.contains(&big(1)),
        "1 is a key-form value but not a polynomial value"
    );

    let weighted_spec = SemidegreeSpec::from_weights(2, 3).expect("weights (2, 3)");
    let weighted = compute_key_forms(&weighted_spec).expect("weighted datum completes");
    let weighted_scan = scan(&weighted, &budget).expect("scan stays above the floor");
    assert_eq!(
        window(&scanned.summary.value_set),
        window(&weighted_scan.summary.value_set),
        "both semidegrees sample the same values within the degree budget"
    );
    assert!(!weighted_scan.summary.value_set.contains(&big(1)));

    println!(
        "criterion 3: PASS — values [2, 5, 3, 1], compactification (analytic, not algebraic), scanned value set matches the (2, 3)-weighted one on 0..=10 and omits 1"
    );
}

#[test]
fn criterion_4_weighted_degree_grid() {
    for p in 1..=5i64 {
        for q in -5..=5i64 {
            let spec = SemidegreeSpec::from_weights(p, q)
                .unwrap_or_else(|e| panic!("weights ({p}, {q}): {e}"));
            let seq = compute_key_forms(&spec).unwrap_or_else(|e| panic!("({p}, {q}): {e}"));
            assert_forms(&seq, &["x", "y"]);
            assert_eq!(seq.values(), vec![big(p), big(q)], "values of ({p}, {q})");

            if q > 0 {
                assert_eq!(
                    skewness(&seq),
                    rat(p.min(q), p.max(q)),
                    "skewness of ({p}, {q}) is min/max"
                );
            }
            let bound = bound_check(&seq);
            assert!(bound.holds, "bound m*w <= d^2 fails at ({p}, {q})");
            assert_eq!(
                bound.equality,
                p == q,
                "bound equality must single out the scaled total degrees, ({p}, {q})"
            );
        }
    }
    println!(
        "criterion 4: PASS — 55 weighted data: forms [x, y], skewness min/max for positive weights, bound equality exactly on the scaled total degrees"
    );
}

// ---------------------------------------------------------------------------
// Randomized suite shared by criteria 5 and 6.
//
// One seeded stream; each case is a valid datum plus two polynomials.  The
// datum's series part has at most 3 terms with exponent denominators at most
// 6, the tail exponent sits strictly below every series exponent, and the
// scale is the minimal one, so every value is an integer by construction.
// ---------------------------------------------------------------------------

const SUITE_SEED: u64 = 0x05EE_DCA5;
const SUITE_CASES: usize = 500;

fn random_case(rng: &mut ChaCha8Rng) -> (SemidegreeSpec, BiLaurent, BiLaurent) {
    // One exponent denominator per datum (numerators vary freely): the
    // conjugate lattice stays within the stated profile of denominators up
    // to 6, and re-evaluating every key form stays affordable across the
    // whole suite.
    let den = rng.gen_range(1..=6i64);
    let terms = rng.gen_range(0..=3usize);
    let mut exponents = BTreeSet::new();
    while exponents.len() < terms {
        exponents.insert(rat(rng.gen_range(-6..=6), den));
    }
    let phi = PuiseuxPoly::from_terms(exponents.into_iter().map(|e| {
        let c = rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        (e, XiPoly::constant(rat(c, 1)))
    }));
    let r = match phi.min_exponent() {
        Some(min) => min - rat(rng.gen_range(1..=6), den),
        None => rat(rng.gen_range(-6..=6), den),
    };
    let spec = SemidegreeSpec::auto_scaled(phi, r);
    let f = random_poly(rng);
    let g = random_poly(rng);
    (spec, f, g)
}

fn random_poly(rng: &mut ChaCha8Rng) -> BiLaurent {
    loop {
        let terms = rng.gen_range(1..=6usize);
        let f = BiLaurent::from_terms((0..terms).map(|_| {
            let a = rng.gen_range(0..=8i64);
            let b = rng.gen_range(0..=(8 - a));
            let c = rng.gen_range(1..=4i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
            (BigInt::from(a), BigInt::from(b), rat(c, 1))
        }));
        if !f.is_zero() {
            return f;
        }
    }
}

#[test]
fn criterion_5_randomized_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    let mut mixed = 0usize;

    for case in 0..SUITE_CASES {
        let (spec, f, g) = random_case(&mut rng);
        assert!(
            spec.is_valid(),
            "case {case}: generator produced an invalid datum {spec}"
        );

        // (a) Additivity on products, subadditivity on sums — properties of
        // the datum alone, so they are checked even when the key-form
        // recurrence stops early.
        let vf = spec.evaluate(&f).unwrap();
        let vg = spec.evaluate(&g).unwrap();
        assert_eq!(
            spec.evaluate(&(&f * &g)).unwrap(),
            &vf + &vg,
            "case {case}: additivity on products"
        );
        let sum = &f + &g;
        if !sum.is_zero() {
            assert!(
                spec.evaluate(&sum).unwrap() <= vf.clone().max(vg.clone()),
                "case {case}: subadditivity on sums"
            );
        }

        let seq = match compute_key_forms(&spec) {
            Ok(seq) => seq,
            Err(KeyFormsError::MixedLeadingCoefficient { .. }) => {
                mixed += 1;
                continue;
            }
            Err(other) => panic!("case {case} ({spec}): {other}"),
        };

        // (b) The weight of the expansion reproduces the value, and
        // (c) substituting the forms back reproduces the polynomial.
        let presentation = adic_expand(&f, &seq).unwrap();
        assert!(
            presentation.is_standard(&seq),
            "case {case}: expansion of {f} is not standard"
        );
        assert_eq!(
            weight(&presentation, &seq.values()).unwrap(),
            vf,
            "case {case}: weight of the expansion of {f}"
        );
        assert_eq!(
            reconstruct(&presentation, &seq),
            f,
            "case {case}: reconstruction of {f}"
        );

        // (d) The value/degree ratio respects the floor (hard-checked
        // inside ratio_check) and the final form's own ratio whenever the
        // series part is nonzero.
        if !f.is_constant() {
            let check = ratio_check(&seq, &f).unwrap_or_else(|e| panic!("case {case}: {e}"));
            if !spec.phi.is_zero() {
                assert!(
                    check.ratio >= check.bound,
                    "case {case}: ratio {} of {f} under the final-form ratio {}",
                    check.ratio,
                    check.bound
                );
            }
        }

        // (e) The pairing matrices invert each other (verified inside); the
        // singular case must be exactly the scaled total degrees.
        match intersection_matrices(&seq) {
            Ok(_) => assert!(
                !seq.is_scaled_degree(),
                "case {case}: scaled degree got an invertible pairing"
            ),
            Err(GeometryError::DeltaEqualsDeg) => assert!(
                seq.is_scaled_degree(),
                "case {case}: singular pairing off the scaled-degree family"
            ),
            Err(other) => panic!("case {case} ({spec}): {other}"),
        }

        // (f) d = m * deg(final form) whenever the series part is nonzero.
        if !spec.phi.is_zero() {
            let deg = seq.last().form.total_degree().unwrap();
            assert_eq!(
                d_delta(&seq),
                m_delta(&seq) * deg,
                "case {case}: d = m * deg(final form)"
            );
        }

        // (g) Either every form is a polynomial or the final one is not.
        let all_poly = seq.steps.iter().all(|s| s.form.is_polynomial());
        assert_eq!(
            all_poly,
            seq.last().form.is_polynomial(),
            "case {case}: polynomiality must propagate through the sequence"
        );

        // (h) The recorded value of every form agrees with direct
        // evaluation.
        for step in &seq.steps {
            assert_eq!(
                spec.evaluate(&step.form).unwrap(),
                step.value,
                "case {case}: recorded value of {}",
                step.form
            );
        }
    }

    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "suite took {elapsed:?}, budget is 60s"
    );
    println!(
        "criterion 5: PASS — {SUITE_CASES} randomized cases ({mixed} stopped on a mixed leading coefficient) in {elapsed:?}"
    );
}

#[test]
fn criterion_6_characteristic_pair_identities() {
    // Replays the criterion-5 stream: on every completed sequence the
    // characteristic pairs must reconstruct m, d, and the final form's
    // degree without tripping a cross-check.
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    let mut completed = 0usize;

    for case in 0..SUITE_CASES {
        let (spec, _, _) = random_case(&mut rng);
        let seq = match compute_key_forms(&spec) {
            Ok(seq) => seq,
            Err(KeyFormsError::MixedLeadingCoefficient { .. }) => continue,
            Err(other) => panic!("case {case} ({spec}): {other}"),
        };
        puiseux_pairs(&seq).unwrap_or_else(|e| panic!("case {case} ({spec}): {e}"));
        completed += 1;
    }

    assert!(
        completed * 2 >= SUITE_CASES,
        "only {completed} of {SUITE_CASES} sequences completed; the generator is off"
    );
    println!(
        "criterion 6: PASS — characteristic-pair identities held on {completed} completed sequences"
    );
}

#[test]
fn criterion_7_nef_edge_and_slope_floor() {
    let seq = sequence(SAME_SEMIGROUP);
    let report = build_report(&seq).expect("report builds");

    assert_eq!(
        report.nef_edges,
        Some((rat(5, 1), rat(1, 5))),
        "nef edge slopes"
    );
    assert_eq!(report.inf_ratio, Some(rat(1, 5)), "predicted infimum");
    assert!(
        !report.inf_attained,
        "the infimum is not attained: the final form is not a polynomial"
    );

    let budget = ScanBudget {
        max_degree: 10,
        max_terms: 4,
        random_samples: 64,
        seed: 7,
    };
    let result = scan(&seq, &budget).expect("scan stays above the floor");
    let inf = rat(1, 5);
    for point in &result.points {
        let slope = Rat::new(point.value.clone(), point.degree.clone());
        assert!(
            slope > inf,
            "slope {slope} of {} must stay strictly above 1/5",
            point.witness
        );
    }
    assert_eq!(result.summary.predicted_inf, Some(inf.clone()));
    let min_slope = result.summary.min_slope.clone().expect("nonempty scan");
    assert!(min_slope > inf, "minimum slope {min_slope} must not reach 1/5");

    println!(
        "criterion 7: PASS — nef edges (5, 1/5); every scanned slope stays strictly above 1/5 (minimum {min_slope}); attainment reported false"
    );
}

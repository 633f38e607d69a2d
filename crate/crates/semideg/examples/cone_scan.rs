//! Sample the value set of a semidegree over low-degree polynomials.
//!
//! A scan evaluates the semidegree on a deterministic spread of candidates
//! and summarizes what it saw: the attained values, the minimum
//! value/degree slope, and the first negative witness if any.  Sampling
//! can corroborate the classification verdicts but never prove them; the
//! summary is worded accordingly.

use semideg::conescan::{scan, to_csv, ScanBudget};
use semideg::geometry::build_report;
use semideg::keyforms::compute_key_forms;
use semideg::parse::parse_datum;
use semideg::rat::{format_rat, Rat};

fn show(r: &Option<Rat>) -> String {
    match r {
        Some(r) => format_rat(r),
        None => "(none)".into(),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Positive semidegree: every slope stays above the predicted infimum
    // 1/5, but no polynomial attains it.
    let spec = parse_datum("phi = x^(5/2) + x^(-1); r = -2; scale = 2")?;
    let seq = compute_key_forms(&spec)?;
    let report = build_report(&seq)?;
    let budget = ScanBudget {
        max_degree: 10,
        max_terms: 4,
        random_samples: 40,
        seed: 2024,
    };
    let result = scan(&seq, &budget)?;
    println!("datum: {spec}");
    println!("predicted inf of value/degree: {}", show(&result.summary.predicted_inf));
    println!("min slope in budget: {}", show(&result.summary.min_slope));
    println!("inf attained by a polynomial: {}", report.inf_attained);
    let values: Vec<String> = result
        .summary
        .value_set
        .iter()
        .map(|v| v.to_string())
        .collect();
    println!("values seen: {{{}}}", values.join(", "));
    println!();

    // A semidegree with negative values: the scan finds a witness.
    let spec = parse_datum("phi = x^(-1); r = -2; scale = 1")?;
    let seq = compute_key_forms(&spec)?;
    let result = scan(
        &seq,
        &ScanBudget {
            max_degree: 4,
            max_terms: 4,
            random_samples: 0,
            seed: 0,
        },
    )?;
    println!("datum: {spec}");
    match &result.summary.negative_witness {
        Some(w) => println!("negative witness: {w}"),
        None => println!("no negative value within budget"),
    }
    println!("min slope: {}", show(&result.summary.min_slope));
    println!();
    println!("first CSV rows of that scan:");
    for line in to_csv(&result).lines().take(6) {
        println!("  {line}");
    }
    Ok(())
}

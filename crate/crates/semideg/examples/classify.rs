//! Build the full geometry report for a few data and print the verdicts.
//!
//! The report gathers the numerical invariants (`d`, `m`, Puiseux pairs,
//! skewness, the pairing matrix and its inverse) and three classification
//! verdicts: the sign of values on nonconstant polynomials, whether the
//! associated compactification is analytic/algebraic, and whether the
//! infimum of value/degree matches the skewness prediction.

use semideg::geometry::build_report;
use semideg::keyforms::compute_key_forms;
use semideg::parse::parse_datum;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = [
        // Takes negative values; the inf of value/degree is invisible to
        // the key forms because the final form is not a polynomial.
        "phi = x^(5/2) + x^(-1); r = -14/5; scale = 10",
        // Positive on nonconstants, analytic but not algebraic
        // compactification.
        "phi = x^(5/2) + x^(-1); r = -2; scale = 2",
        // Negative values out of a single pole.
        "phi = x^(-1); r = -2; scale = 1",
        // A weighted degree: everything is as nice as it gets.
        "phi = 0; r = 3/2; scale = 2",
    ];

    for datum in data {
        let spec = parse_datum(datum)?;
        let seq = compute_key_forms(&spec)?;
        let report = build_report(&seq)?;
        println!("datum: {spec}");
        println!("{report}");
        println!();
    }

    // The same report serializes to a stable JSON shape.
    let spec = parse_datum("phi = x^(-1); r = -2; scale = 1")?;
    let seq = compute_key_forms(&spec)?;
    let report = build_report(&seq)?;
    println!("JSON form of the last pole example:");
    println!("{}", serde_json::to_string_pretty(&report.to_json())?);
    Ok(())
}

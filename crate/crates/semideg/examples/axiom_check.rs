//! Re-verify the semidegree axioms on a computed key-form sequence.
//!
//! `verify_axioms` replays the defining properties against a corpus of
//! test polynomials: additivity on products, subadditivity on sums,
//! monomial values matching `a*value(x) + b*value(y)`, and the recorded
//! key-form values agreeing with direct evaluation.

use semideg::keyforms::{compute_key_forms, verify_axioms};
use semideg::parse::{parse_datum, parse_expr};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = parse_datum("phi = x^(5/2) + x^(-1); r = -14/5; scale = auto")?;
    let seq = compute_key_forms(&spec)?;
    println!("{seq}");

    let corpus: Vec<_> = [
        "x",
        "y",
        "x + y",
        "x*y - 1",
        "y^2 - x^5",
        "y^2 - x^5 - 2*x^-1*y",
        "x^3 + 2*x*y + y^2",
        "x^-2*y^4 + x^7",
    ]
    .iter()
    .map(|s| parse_expr(s))
    .collect::<Result<_, _>>()?;

    let report = verify_axioms(&seq, &corpus);
    println!("{report}");
    if report.all_passed() {
        println!("all axioms hold on this corpus");
    } else {
        println!("AXIOM VIOLATION — see failures above");
        std::process::exit(1);
    }
    Ok(())
}

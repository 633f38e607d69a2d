//! Compute key-form sequences for three flavours of datum.
//!
//! The key forms of a semidegree are the polynomials `x, y, g_2, ...` that
//! carry its whole combinatorics: each one is built from its predecessors
//! by matching leading terms of the substituted series, and the recursion
//! stops as soon as the leading coefficient becomes generic (depends on
//! the marker `xi`).

use semideg::keyforms::compute_key_forms;
use semideg::parse::parse_datum;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A datum with a fractional exponent and a pole: four key forms.
    let spec = parse_datum("phi = x^(5/2) + x^(-1); r = -14/5; scale = 10")?;
    let seq = compute_key_forms(&spec)?;
    println!("{seq}");
    println!();

    // A pure pole: the final value goes negative.
    let spec = parse_datum("phi = x^(-1); r = -2; scale = 1")?;
    let seq = compute_key_forms(&spec)?;
    println!("{seq}");
    println!();

    // A weighted degree: the recursion stops immediately at x, y.
    let spec = parse_datum("phi = 0; r = 3/2; scale = 2")?;
    let seq = compute_key_forms(&spec)?;
    println!("{seq}");
    println!();

    // The substituted series driving each step, for the first datum again.
    let spec = parse_datum("phi = x^(5/2) + x^(-1); r = -14/5; scale = 10")?;
    let seq = compute_key_forms(&spec)?;
    println!("substituted series behind each step:");
    for step in &seq.steps {
        println!("  {}  ->  {}", step.form, step.series);
    }
    Ok(())
}

//! Expand polynomials in the key-form basis and compare weights.
//!
//! Every Laurent polynomial has a unique *standard* presentation as a sum
//! of monomials in the key forms, with each exponent kept below the
//! multiplier of its form.  The weight of the standard presentation (the
//! max over its monomials of the value) is exactly the semidegree of the
//! polynomial; any other presentation can only overshoot.

use semideg::expansion::{adic_expand, reconstruct, weight};
use semideg::keyforms::compute_key_forms;
use semideg::parse::{parse_datum, parse_expr};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = parse_datum("phi = x^(5/2) + x^(-1); r = -14/5; scale = 10")?;
    let seq = compute_key_forms(&spec)?;
    println!("key forms:");
    for step in &seq.steps {
        println!("  {}   [value {}]", step.form, step.value);
    }
    println!();

    for text in ["y^2", "x*y^2 - x^6 - 2*y", "y^4 - x^10", "x^-2*y + 3"] {
        let f = parse_expr(text)?;
        let presentation = adic_expand(&f, &seq)?;
        let w = weight(&presentation, &seq.values())?;
        let value = spec.evaluate(&f)?;
        println!("f = {text}");
        println!("  presentation: {presentation}");
        println!("  standard: {}", presentation.is_standard(&seq));
        println!("  weight = {w}, value = {value}");
        assert_eq!(w, value, "standard weight always equals the value");

        // The presentation is faithful: multiplying everything back out
        // recovers f on the nose.
        assert_eq!(reconstruct(&presentation, &seq), f);
        println!();
    }
    Ok(())
}

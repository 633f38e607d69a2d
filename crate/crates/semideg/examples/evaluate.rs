//! Evaluate a divisorial semidegree on a few Laurent polynomials.
//!
//! The datum here is the running example used throughout the crate:
//! `phi = x^(5/2) + x^(-1)`, `r = -14/5`, scale 10.  The scale is the
//! smallest integer clearing every exponent denominator, so all values
//! come out as plain integers.

use semideg::parse::{parse_datum, parse_expr};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = parse_datum("phi = x^(5/2) + x^(-1); r = -14/5; scale = auto")?;
    println!("datum: {spec}");
    println!("generic series: {}", spec.generic_series());
    println!();

    for text in [
        "x",
        "y",
        "y^2 - x^5",
        "y^2 - x^5 - 2*x^-1*y",
        "x*y^2 - x^6 - 2*y",
        "x^3 + y",
    ] {
        let f = parse_expr(text)?;
        println!("value({text}) = {}", spec.evaluate(&f)?);
    }

    // The semidegree is additive on products ...
    let f = parse_expr("y^2 - x^5")?;
    let g = parse_expr("x^3 + y")?;
    let product = &f * &g;
    println!();
    println!(
        "additive on products: {} + {} = {}",
        spec.evaluate(&f)?,
        spec.evaluate(&g)?,
        spec.evaluate(&product)?
    );

    // ... and bounded by the max on sums, with equality off a thin set.
    let sum = &f + &g;
    println!(
        "subadditive on sums:  value(f + g) = {} <= max({}, {})",
        spec.evaluate(&sum)?,
        spec.evaluate(&f)?,
        spec.evaluate(&g)?
    );
    Ok(())
}

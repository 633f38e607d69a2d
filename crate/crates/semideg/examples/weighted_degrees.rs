//! The weighted-degree family: the simplest semidegrees of all.
//!
//! `SemidegreeSpec::from_weights(p, q)` builds the semidegree with
//! `value(x) = p` and `value(y) = q` (series part zero, `r = q/p`,
//! scale `p`).  Its key forms are just `x, y`, and the geometric
//! invariants reduce to elementary arithmetic in `p` and `q` — a good
//! sanity grid for the general machinery.

use semideg::geometry::{bound_check, build_report, skewness};
use semideg::keyforms::compute_key_forms;
use semideg::rat::format_rat;
use semideg::semidegree::SemidegreeSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("  p   q   values   skewness   bound(m*w <= d^2)   sign class");
    for p in 1..=4i64 {
        for q in [-3, -1, 0, 1, 2, 3] {
            let spec = SemidegreeSpec::from_weights(p, q)?;
            let seq = compute_key_forms(&spec)?;
            let report = build_report(&seq)?;
            let bound = bound_check(&seq);
            let values: Vec<String> = seq.values().iter().map(|v| v.to_string()).collect();
            println!(
                "  {p}   {q:>2}   [{}]   {:>8}   holds={}, equality={}   {}",
                values.join(", "),
                format_rat(&skewness(&seq)),
                bound.holds,
                bound.equality,
                report.sign_class,
            );
        }
    }
    println!();

    // For q > 0 the skewness collapses to min(p, q)/max(p, q).
    let spec = SemidegreeSpec::from_weights(4, 6)?;
    let seq = compute_key_forms(&spec)?;
    println!(
        "from_weights(4, 6): skewness = {} = min/max",
        format_rat(&skewness(&seq))
    );
    Ok(())
}

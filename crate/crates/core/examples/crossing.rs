//! Mixture weight at which two point forecasts score equally.

use tailscore::lab::Lab;
use tailscore::{Distribution, ScoringFunction};

fn main() -> tailscore::Result<()> {
    let lab = Lab::default();
    let cases = [
        (ScoringFunction::squared_error(1)?, 1.0, 3.0, Distribution::point(0.0)?, Distribution::point(3.0)?),
        (ScoringFunction::squared_error(1)?, 0.0, 1.0, Distribution::normal(-1.0, 1.0)?, Distribution::normal(2.0, 1.0)?),
        (ScoringFunction::pinball(0.5)?, 0.5, 2.5, Distribution::uniform(0.0, 1.0)?, Distribution::uniform(2.0, 3.0)?),
    ];
    for (s, x0, x1, f0, f1) in cases {
        let r = lab.crossing_lambda(&s, x0, x1, &f0, &f1)?;
        println!("{s}: x0 = {x0}, x1 = {x1}, F0 = {f0}, F1 = {f1}");
        println!("  a = {:.10}, b = {:.10}", r.a, r.b);
        println!("  lambda* = {:.15} (bisection {:.15})", r.lambda_star, r.lambda_bisect);
        println!("  residual {:.2e}, slack {:.2e}", r.residual, r.slack);
        for row in &r.affinity {
            println!("    lambda {:.1}: direct {:+.12}, affine {:+.12}", row.lambda, row.direct, row.affine);
        }
    }
    Ok(())
}

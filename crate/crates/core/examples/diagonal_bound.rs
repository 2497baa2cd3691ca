//! How far the mixture λF + (1-λ)G can drift from the truth G in expected
//! score, against the bound λ·D.

use tailscore::lab::Lab;
use tailscore::{Distribution, ScoringRule};

fn main() -> tailscore::Result<()> {
    let lab = Lab::default();
    let pairs = [
        (Distribution::exponential(1.0)?, Distribution::pareto(2.0, 1.0)?),
        (Distribution::uniform(0.0, 1.0)?, Distribution::uniform(0.0, 2.0)?),
        (Distribution::normal(0.0, 1.0)?, Distribution::exponential(1.0)?),
    ];
    let grid = [0.0, 0.01, 0.1, 0.25, 0.5, 0.9];
    for (g, f) in &pairs {
        for rule in [ScoringRule::Crps, ScoringRule::wcrps(g.quantile(0.9)?)?] {
            let r = lab.diagonal_bound_check(&rule, f, g, &grid)?;
            println!("{rule}  G = {g}  F = {f}  D = {:.8}", r.d);
            println!("  {:>6} {:>14} {:>14} {:>8}", "lambda", "gap", "bound", "gap/bnd");
            for row in &r.rows {
                let ratio = if row.bound > 0.0 { row.gap / row.bound } else { 0.0 };
                println!("  {:>6} {:>14.6e} {:>14.6e} {:>8.4} {}", row.lambda, row.gap, row.bound, ratio, if row.satisfied { "ok" } else { "VIOLATED" });
            }
        }
    }
    Ok(())
}

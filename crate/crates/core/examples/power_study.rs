//! How often a finite sample tells a light-tailed truth from a forecast
//! that puts 1% of its mass on a Pareto tail.

use tailscore::lab::Lab;
use tailscore::{Distribution, ScoringRule};

fn main() -> tailscore::Result<()> {
    let lab = Lab::default();
    let truth = Distribution::exponential(1.0)?;
    let alt = Distribution::mix(&truth, &Distribution::pareto(2.0, 1.0)?, 0.01)?;
    let rows = lab.mc_power_study(&ScoringRule::Crps, &truth, &alt, &[100, 1000, 10_000], 100, 0)?;
    println!("truth {truth}\nalt   {alt}\n");
    println!("{:>6} {:>12} {:>12} {:>8}", "n", "mean diff", "stderr", "detect");
    for r in rows {
        println!("{:>6} {:>12.4e} {:>12.4e} {:>8.2}", r.n, r.mean_diff, r.stderr, r.detect_frac);
    }
    Ok(())
}

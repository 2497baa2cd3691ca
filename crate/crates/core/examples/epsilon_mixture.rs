//! For any ε > 0, a forecast within ε of the truth in expected CRPS whose
//! tail index is that of the heavy alternative.

use tailscore::lab::Lab;
use tailscore::{Distribution, Functional, ScoringRule};

fn main() -> tailscore::Result<()> {
    let lab = Lab::default();
    let truth = Distribution::exponential(1.0)?;
    let alt = Distribution::pareto(2.0, 1.0)?;
    println!("truth {truth}, alternative {alt}\n");
    println!("{:>8} {:>12} {:>12} {:>8} {:>8}  verdict", "epsilon", "lambda", "gap", "evi(G)", "evi(F)");
    for eps in [1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-6] {
        let c = lab.epsilon_mixture(&ScoringRule::Crps, &alt, &truth, eps, Functional::Evi)?;
        println!(
            "{eps:>8.0e} {:>12.4e} {:>12.4e} {:>8} {:>8}  {}",
            c.lambda_eps,
            c.measured_gap,
            c.t_truth.map_or("-".into(), |t| t.to_string()),
            c.t_construct.map_or("-".into(), |t| t.to_string()),
            c.tail_verdict.verdict.name()
        );
        assert!(c.within_epsilon);
    }
    Ok(())
}

//! Realised and expected CRPS / wCRPS, by quadrature and by simulation.

use tailscore::{Distribution, ScoreEngine, ScoringRule};

fn main() -> tailscore::Result<()> {
    let e = ScoreEngine::default();
    let truth = Distribution::exponential(1.0)?;
    let q90 = truth.quantile(0.9)?;
    let rules = [ScoringRule::Crps, ScoringRule::wcrps(q90)?];
    let forecasts = [
        Distribution::exponential(1.0)?,
        Distribution::exponential(0.8)?,
        Distribution::pareto(2.0, 1.0)?,
        Distribution::normal(1.0, 1.0)?,
    ];

    println!("truth {truth}, y = 2.5");
    for rule in &rules {
        println!("\n{rule}");
        println!("{:<34} {:>10} {:>12} {:>12} {:>10}", "forecast", "S(F, y)", "E S(F, G)", "MC", "MC se");
        for f in &forecasts {
            let realised = e.score_rule(rule, f, 2.5)?;
            let exact = e.expected_score_rule(rule, f, &truth)?;
            let mc = e.mc_expected_score(rule, f, &truth, 20_000, 7)?;
            println!(
                "{:<34} {realised:>10.6} {:>12.8} {:>12.8} {:>10.2e}",
                f.to_string(),
                exact.value,
                mc.value,
                mc.stderr.unwrap()
            );
        }
    }
    Ok(())
}

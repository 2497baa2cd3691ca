//! Level sets and mixture paths: the mean moves continuously along
//! λ ↦ λF1 + (1-λ)F0, tail functionals jump as soon as λ > 0.

use tailscore::lab::{level_set_convexity_check, mixture_continuity_probe};
use tailscore::{Distribution, Functional};

fn main() -> tailscore::Result<()> {
    let f0 = Distribution::exponential(1.0)?;
    let f1 = Distribution::pareto(2.0, 1.0)?;
    let grid = [0.0, 1e-6, 1e-4, 1e-2, 0.1, 0.5, 1.0];
    for t in Functional::ALL {
        let r = mixture_continuity_probe(t, &f0, &f1, &grid)?;
        println!("{:<15} {:<14} {:?}", t.name(), r.class.name(), r.rows.iter().map(|(_, v)| *v).collect::<Vec<_>>());
    }

    println!();
    let u1 = Distribution::uniform(0.0, 2.0)?;
    let u2 = Distribution::normal(1.0, 3.0)?;
    for t in [Functional::Mean, Functional::UpperEndpoint, Functional::Evi] {
        let r = level_set_convexity_check(t, &u1, &u2, &[0.25, 0.5, 0.75])?;
        println!("level set of {t} through {u1} and {u2}: {}", r.status.name());
    }
    Ok(())
}

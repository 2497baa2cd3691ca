//! Tail comparisons and the max rule for mixtures.

use tailscore::tail::tail_order_respect_check;
use tailscore::{tail_compare, Distribution, Functional};

fn main() -> tailscore::Result<()> {
    let pairs = vec![
        (Distribution::exponential(1.0)?, Distribution::pareto(2.0, 1.0)?),
        (Distribution::pareto(3.0, 1.0)?, Distribution::pareto(2.0, 5.0)?),
        (Distribution::pareto(2.0, 1.0)?, Distribution::pareto(2.0, 2.0)?),
        (Distribution::uniform(0.0, 1.0)?, Distribution::uniform(0.0, 2.0)?),
        (Distribution::normal(0.0, 1.0)?, Distribution::exponential(1.0)?),
        (Distribution::gpd(-0.5, 1.0, 0.0)?, Distribution::gev(0.25, 0.0, 1.0)?),
    ];
    for (f, g) in &pairs {
        let c = tail_compare(f, g);
        let ratio = c.verdict.ratio().map_or(String::new(), |r| format!(" (ratio {r})"));
        println!("{f} vs {g}: {}{ratio}, by {:?}", c.verdict.name(), c.method);
    }
    println!();
    for t in [Functional::UpperEndpoint, Functional::Evi, Functional::RvIndex, Functional::MIndex] {
        let r = tail_order_respect_check(t, &pairs, &[0.01, 0.5, 0.99]);
        println!("{t}:");
        for row in &r.rows {
            println!("  {:?}  {:?} -> {:?}  max rule {:?}", row.status, row.t_first, row.t_second,
                row.max_rule.iter().map(|(_, v, ok)| (*v, *ok)).collect::<Vec<_>>());
        }
    }
    Ok(())
}

//! Tail profile of a distribution given as a spec string.
//!
//!     cargo run --example profile -- "mix(0.9:exp(rate=1),0.1:pareto(alpha=2,scale=1))"

use tailscore::cli::parse_distribution;

fn main() {
    let spec = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "mix(0.9:exp(rate=1),0.1:pareto(alpha=2,scale=1))".into());
    let d = match parse_distribution(&spec) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    let p = d.tail_profile();
    println!("{d}");
    println!("  support         [{}, {}]", d.lower_endpoint(), p.upper_endpoint);
    println!("  mean            {:?}", d.mean());
    println!("  evi             {:?}", p.evi);
    println!("  rv index        {:?}", p.rv_index);
    println!("  m index         {:?}", p.m_index);
    for q in [0.5, 0.9, 0.99, 0.999] {
        println!("  q({q:<5})       {:.6}", d.quantile(q).unwrap());
    }
}

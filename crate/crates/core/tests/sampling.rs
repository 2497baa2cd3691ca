use tailscore::{Distribution, ScoreEngine, ScoringRule};

fn ks_statistic(d: &Distribution, xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let c = d.cdf(x);
            (c - i as f64 / n).abs().max(((i + 1) as f64 / n - c).abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn ks_over_one_hundred_seeds() {
    let n = 1000;
    // asymptotic 1% critical value
    let crit = 1.628 / (n as f64).sqrt();
    let fams = [
        Distribution::exponential(1.5).unwrap(),
        Distribution::pareto(2.0, 1.0).unwrap(),
        Distribution::normal(1.0, 2.0).unwrap(),
        Distribution::gev(0.3, 0.0, 1.0).unwrap(),
        Distribution::gpd(-0.4, 1.0, 0.0).unwrap(),
        Distribution::mix(&Distribution::exponential(1.0).unwrap(), &Distribution::pareto(2.0, 1.0).unwrap(), 0.2).unwrap(),
    ];
    for d in &fams {
        let rejections = (0..100u64)
            .filter(|&seed| ks_statistic(d, &mut d.sample(n, seed)) > crit)
            .count();
        // expected about 1 of 100; 6 or more has probability below 1e-3
        assert!(rejections <= 5, "{d}: {rejections} rejections");
    }
}

#[test]
fn discrete_mixture_frequencies() {
    let d = Distribution::mix(&Distribution::point(0.0).unwrap(), &Distribution::point(1.0).unwrap(), 0.25).unwrap();
    let xs = d.sample(100_000, 5);
    let ones = xs.iter().filter(|&&x| x == 1.0).count() as f64 / 1e5;
    assert!(xs.iter().all(|&x| x == 0.0 || x == 1.0));
    // 5 standard errors
    assert!((ones - 0.25).abs() < 5.0 * (0.25f64 * 0.75 / 1e5).sqrt());
}

#[test]
fn streams_are_deterministic_and_distinct() {
    let d = Distribution::normal(0.0, 1.0).unwrap();
    assert_eq!(d.sample_stream(50, 3, 1), d.sample_stream(50, 3, 1));
    assert_ne!(d.sample_stream(50, 3, 1), d.sample_stream(50, 3, 2));
    assert_ne!(d.sample(50, 3), d.sample(50, 4));
}

#[test]
fn monte_carlo_calibration() {
    let e = ScoreEngine::default();
    let f = Distribution::uniform(0.0, 1.0).unwrap();
    let g = Distribution::exponential(1.0).unwrap();
    let exact = e.expected_score_rule(&ScoringRule::Crps, &f, &g).unwrap().value;
    for seed in 0..10 {
        let mc = e.mc_expected_score(&ScoringRule::Crps, &f, &g, 100_000, seed).unwrap();
        let se = mc.stderr.unwrap();
        assert!((mc.value - exact).abs() <= 4.0 * se, "seed {seed}: {} vs {exact} (se {se})", mc.value);
        let again = e.mc_expected_score(&ScoringRule::Crps, &f, &g, 100_000, seed).unwrap();
        assert_eq!(mc.value.to_bits(), again.value.to_bits());
    }
}

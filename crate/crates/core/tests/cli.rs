use std::process::{Command, Output};

fn tailscore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tailscore"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = tailscore(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// `field -> value` from a profile table.
fn profile(spec: &str) -> Vec<(String, String)> {
    let text = stdout(&["profile", spec]);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    rows.records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].to_string(), r[1].to_string())
        })
        .collect()
}

fn field<'a>(rows: &'a [(String, String)], name: &str) -> &'a str {
    &rows.iter().find(|(k, _)| k == name).unwrap().1
}

#[test]
fn profile_of_pareto() {
    let rows = profile("pareto(alpha=2,scale=1)");
    assert_eq!(field(&rows, "evi"), "0.5");
    assert_eq!(field(&rows, "rv_index"), "-2");
    assert_eq!(field(&rows, "upper_endpoint"), "inf");
    assert_eq!(field(&rows, "m_index"), "-2");
}

#[test]
fn profile_spec_round_trips() {
    let specs = [
        "pareto(alpha=2,scale=1)",
        "gpd(gamma=-0.25,sigma=1.5,mu=0.1)",
        "gev(gamma=0.1,mu=0,sigma=2)",
        "exp(rate=0.3)",
        "unif(a=-1,b=2.5)",
        "norm(mu=0.1,sigma=0.7)",
        "point(c=3)",
        "mix(0.3:exp(rate=1), 0.7:mix(0.5:pareto(alpha=3,scale=1),0.5:point(c=0.1)))",
    ];
    for spec in specs {
        let first = profile(spec);
        let printed = field(&first, "spec").to_string();
        let second = profile(&printed);
        assert_eq!(first, second, "{spec} -> {printed}");
        assert_eq!(field(&second, "spec"), printed);
    }
}

#[test]
fn crossing_example() {
    let out = stdout(&[
        "crossing", "--score", "se(k=1)", "--x0", "1", "--x1", "3", "--f0", "point(c=0)", "--f1", "point(c=3)",
    ]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("a,b,lambda_star,residual"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "4");
    assert_eq!(row[1], "-8");
    assert!(row[2].starts_with("0.666666666666666"));
}

#[test]
fn epsilon_example() {
    let out = stdout(&[
        "epsilon", "--score", "crps", "--truth", "exp(rate=1)", "--alt", "pareto(alpha=2,scale=1)", "--eps", "1e-3",
        "--functional", "evi",
    ]);
    let mut rows = csv::Reader::from_reader(out.as_bytes());
    let header = rows.headers().unwrap().clone();
    assert_eq!(
        header.iter().collect::<Vec<_>>(),
        ["epsilon", "D", "lambda_eps", "measured_gap", "t_truth", "t_construct", "tail_verdict"]
    );
    let r = rows.records().next().unwrap().unwrap();
    let gap: f64 = r[3].parse().unwrap();
    assert!(gap <= 1e-3);
    assert_eq!(&r[4], "0");
    assert_eq!(&r[5], "0.5");
    assert_eq!(&r[6], "first_heavier");
}

#[test]
fn bound_and_curve_share_rows() {
    let args = |cmd| {
        vec![
            cmd, "--score", "crps", "--truth", "exp(rate=1)", "--alt", "pareto(alpha=2,scale=1)", "--grid", "geom:0.01:0.5:5",
        ]
    };
    let bound = stdout(&args("bound"));
    let curve = stdout(&args("curve"));
    assert_eq!(bound, curve);
    assert_eq!(bound.lines().next(), Some("lambda,gap,bound,satisfied"));
    assert_eq!(bound.lines().count(), 6);
    assert!(bound.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn tailcmp_probe_table() {
    let out = stdout(&["tailcmp", "pareto(alpha=2,scale=1)", "pareto(alpha=2,scale=2)"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("verdict,ratio,probe_x,probe_ratio"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "tail_equivalent");
    assert!((first[1].parse::<f64>().unwrap() - 0.25).abs() < 1e-12);
    let out = stdout(&["tailcmp", "unif(a=0,b=1)", "unif(a=0,b=2)"]);
    // decided by endpoint; the probes past the first endpoint show a zero ratio
    assert!(out.lines().skip(1).all(|l| l.starts_with("second_heavier,,") && l.ends_with(",0")));
}

#[test]
fn reruns_are_byte_identical() {
    let args = [
        "power", "--score", "crps", "--truth", "exp(rate=1)", "--alt", "mix(0.9:exp(rate=1),0.1:pareto(alpha=2,scale=1))",
        "--n", "100,400", "--reps", "20", "--seed", "17",
    ];
    let a = tailscore(&args);
    let b = tailscore(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let other = tailscore(&[&args[..args.len() - 1], &["18"]].concat());
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("tailscore-cli-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let out = tailscore(&["profile", "exp(rate=1)", "--output", p]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, stdout(&["profile", "exp(rate=1)"]));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn exit_status_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["profile", "pareto(alpha=2,scale=1)"], 0),
        (&["profile", "pareto(alpha=2"], 2),
        (&["profile", "pareto(alpha=-2,scale=1)"], 2),
        (&["profile", "weibull(k=2)"], 2),
        (&["profile", "emp(file=/nonexistent/sample.txt)"], 2),
        (&["nonsense"], 2),
        (&["crossing", "--score", "crps", "--x0", "1", "--x1", "3", "--f0", "point(c=0)", "--f1", "point(c=3)"], 2),
        (&["crossing", "--score", "se(k=1)", "--x0", "x", "--x1", "3", "--f0", "point(c=0)", "--f1", "point(c=3)"], 2),
        (&["bound", "--score", "crps", "--truth", "exp(rate=1)", "--alt", "exp(rate=2)", "--grid", "0.5,1.0"], 2),
        (&["bound", "--score", "crps", "--truth", "exp(rate=1)", "--alt", "exp(rate=2)", "--grid", "lin:0:0.5"], 2),
        (&["epsilon", "--score", "crps", "--truth", "exp(rate=1)", "--alt", "exp(rate=2)", "--eps", "0"], 2),
        (&["epsilon", "--score", "crps", "--truth", "exp(rate=1)", "--alt", "exp(rate=2)", "--eps", "0.1", "--functional", "median"], 2),
        (&["power", "--score", "crps", "--truth", "exp(rate=1)", "--alt", "exp(rate=2)", "--reps", "1"], 2),
        // numerical failures
        (&["bound", "--score", "crps", "--truth", "exp(rate=1)", "--alt", "pareto(alpha=1,scale=1)"], 3),
        (&["epsilon", "--score", "crps", "--truth", "gev(gamma=1.2,mu=0,sigma=1)", "--alt", "exp(rate=1)", "--eps", "0.1"], 3),
        (&["crossing", "--score", "se(k=1)", "--x0", "3", "--x1", "1", "--f0", "point(c=0)", "--f1", "point(c=3)"], 3),
        (&["crossing", "--score", "se(k=2)", "--x0", "1", "--x1", "3", "--f0", "point(c=0)", "--f1", "pareto(alpha=3,scale=1)"], 3),
    ];
    for (args, code) in cases {
        let out = tailscore(args);
        assert_eq!(out.status.code(), Some(*code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        if *code != 0 {
            assert!(out.stdout.is_empty());
            assert!(!out.stderr.is_empty());
        }
    }
}

#[test]
fn parse_errors_name_token_and_position() {
    let out = tailscore(&["profile", "pareto(alpha=2,shape=1)"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("\"shape\""), "{err}");
    assert!(err.contains("position 15"), "{err}");
}

#[test]
fn empirical_bad_line_is_reported() {
    let path = std::env::temp_dir().join(format!("tailscore-emp-{}.txt", std::process::id()));
    std::fs::write(&path, "0.5\n1.5\nnope\n").unwrap();
    let out = tailscore(&["profile", &format!("emp(file={})", path.display())]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    std::fs::write(&path, "0.5\n1.5\n\n2.5\n").unwrap();
    let rows = profile(&format!("emp(file={})", path.display()));
    assert_eq!(field(&rows, "upper_endpoint"), "2.5");
    assert_eq!(field(&rows, "mean"), "1.5");
    std::fs::remove_file(&path).unwrap();
}

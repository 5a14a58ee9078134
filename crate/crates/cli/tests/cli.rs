use std::process::{Command, Output};

fn cweno(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cweno")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn unknown_problem_exits_2_and_lists_names() {
    let o = cweno(&["run", "--problem", "kelvin-helmholtz", "--n", "40"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    for name in cweno::PROBLEM_NAMES {
        assert!(err.contains(name), "missing {name} in {err}");
    }
}

#[test]
fn ideal_weights_conflict_with_eps_and_p() {
    for flag in [["--eps", "1e-6"], ["--p", "1"]] {
        let mut args = vec!["run", "--problem", "burgers", "--n", "40", "--ideal-weights"];
        args.extend(flag);
        assert_eq!(cweno(&args).status.code(), Some(2));
    }
}

#[test]
fn run_and_shock_take_a_single_resolution() {
    assert_eq!(cweno(&["run", "--problem", "burgers", "--n", "40", "80"]).status.code(), Some(2));
    assert_eq!(cweno(&["shock", "--problem", "sod", "--n", "200,400"]).status.code(), Some(2));
}

#[test]
fn unknown_boundary_condition_exits_2() {
    let o = cweno(&["run", "--problem", "burgers", "--n", "40", "--bc", "reflective"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn run_writes_profile_with_17_digits() {
    let o = cweno(&["run", "--problem", "burgers", "--n", "40"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,u,w_center"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 40);
    for field in rows[0].split(',') {
        let mantissa = field.split('e').next().unwrap().trim_start_matches('-').replace('.', "");
        assert_eq!(mantissa.len(), 17, "{field}");
    }
}

#[test]
fn two_dimensional_profile_has_both_coordinates() {
    let o = cweno(&["run", "--problem", "advection-2d", "--n", "12", "--t-final", "0.1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("x,y,u,w_center\n"));
    assert_eq!(text.lines().count(), 1 + 144);
}

#[test]
fn converge_writes_orders_for_doubled_resolutions() {
    let o = cweno(&["converge", "--problem", "advection-sin4", "--n", "40,80", "--n", "160"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,L1,L1_order,Linf,Linf_order");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("40,") && lines[1].split(',').nth(2) == Some(""));
    let order: f64 = lines[3].split(',').nth(2).unwrap().parse().unwrap();
    assert!(order > 2.5, "{order}");
}

#[test]
fn ideal_weights_are_accepted_alone() {
    let o = cweno(&["converge", "--problem", "advection-sin", "--n", "40", "--ideal-weights", "--t-final", "0.5"]);
    assert!(o.status.success());
}

#[test]
fn output_is_deterministic_and_out_matches_stdout() {
    let args = ["shock", "--problem", "sod", "--n", "200"];
    let a = cweno(&args);
    let b = cweno(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("x,rho,m,E,w_center\n"));

    let path = std::env::temp_dir().join(format!("cweno-cli-test-{}.csv", std::process::id()));
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    let c = cweno(&with_out);
    assert!(c.status.success());
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    let _ = std::fs::remove_file(path);
}

#[test]
fn numerical_failure_is_a_one_line_diagnostic() {
    let o = cweno(&["run", "--problem", "sod", "--n", "100", "--lambda", "5"]);
    assert!(!o.status.success());
    assert_ne!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    let last = err.lines().last().unwrap();
    assert!(last.starts_with("error: "), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn shock_rejects_smooth_problems() {
    let o = cweno(&["shock", "--problem", "burgers", "--n", "200"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn invalid_epsilon_is_reported() {
    let o = cweno(&["run", "--problem", "burgers", "--n", "40", "--eps=-1"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("epsilon"));
}

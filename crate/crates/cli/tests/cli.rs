use std::process::{Command, Output};

fn algdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algdyn"))
        .args(args)
        .env_remove("ALGDYN_GRID")
        .env_remove("ALGDYN_SUPPORT_MAX")
        .env_remove("ALGDYN_GCD_DEGREE")
        .output()
        .expect("spawn algdyn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn kv<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["analyze", "u^2 - u - 1"], 0),
        (&["analyze", "1 - 2u + u^2 - 2u^3 + u^4"], 0),
        (&["invert", "u - 1"], 2),
        (&["goe", "1 - 2u + u^2 - 2u^3 + u^4"], 2),
        (&["goe", "0", "-r", "2"], 2),
        (&["goe", "u - 3", "-r", "u^2 - 9"], 0),
        (&["homoclinic", "u - 1"], 1),
        (&["analyze", "u +"], 1),
        (&["goe", "u - 3", "-r", "u", "-t", "1/3"], 1),
        (&["nonsense"], 1),
        (&["examples"], 0),
    ];
    for (args, code) in cases {
        let o = algdyn(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}\n{}", stdout(&o));
    }
}

#[test]
fn kv_report_shape() {
    let o = algdyn(&["goe", "u - 3", "-r", "u^2 - 9", "--format", "kv"]);
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("schema_version=1"));
    assert_eq!(lines.next(), Some("command=goe"));
    assert_eq!(lines.next(), Some("outcome=definite"));
    assert_eq!(kv(&s, "surjective"), Some("no"));
    assert_eq!(kv(&s, "pre_injective"), Some("no"));
    assert_eq!(kv(&s, "certificate_kind"), Some("common_factor"));
}

#[test]
fn parse_errors_name_the_column() {
    let o = algdyn(&["analyze", "1 + x"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("column 5"), "{err}");
}

#[test]
fn homoclinic_window_round_trips_through_simulate() {
    let dir = std::env::temp_dir().join(format!("algdyn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cat.win");
    let p = path.to_str().unwrap();
    let o = algdyn(&["homoclinic", "u^2 - u - 1", "--radius", "20", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let o = algdyn(&["simulate", "u^2 - u - 1", "-r", "u", "--window", p, "--format", "kv"]);
    let s = stdout(&o);
    let d: f64 = kv(&s, "window_defect").unwrap().parse().unwrap();
    assert!(d < 1e-9, "{s}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn env_overrides_and_flag_precedence() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_algdyn"));
        c.args(["goe", "u1*u2 - 2", "-r", "u1 - 2", "--format", "kv"]);
        c.env_remove("ALGDYN_GCD_DEGREE");
        if let Some(v) = env {
            c.env("ALGDYN_GCD_DEGREE", v);
        }
        if let Some(v) = flag {
            c.args(["--gcd-degree", v]);
        }
        c.output().unwrap().status.code()
    };
    assert_eq!(run(None, None), Some(0));
    assert_eq!(run(Some("0"), None), Some(2));
    assert_eq!(run(Some("0"), Some("40")), Some(0));
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = ["simulate", "u^2 - u - 1", "-r", "u + 1", "--seed", "11", "--format", "kv"];
    let strip = |s: String| s.lines().filter(|l| !l.starts_with("timing.")).collect::<Vec<_>>().join("\n");
    let a = strip(stdout(&algdyn(&args)));
    let b = strip(stdout(&algdyn(&args)));
    assert_eq!(a, b);
    assert!(a.contains("seed=11"));
}

#[test]
fn text_format_and_plot() {
    let s = stdout(&algdyn(&["analyze", "u^2 - u - 1"]));
    assert!(s.contains("expansive: yes"));
    let s = stdout(&algdyn(&["homoclinic", "u^2 - u - 1", "--plot", "--format", "kv"]));
    assert!(s.contains("# plot decay_profile radius max_abs_lift envelope"));
    assert!(s.contains("# end"));
}

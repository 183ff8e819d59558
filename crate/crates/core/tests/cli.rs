use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drinfeld")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_rows() {
    let o = run(&["count", "--d", "2", "--q", "2", "--m", "2..4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "d,q,m,omega_enum,omega_closed,dl_enum,fiber_gcd,classes");
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[1], "2,2,2,2,2,6,3,1");
}

#[test]
fn count_below_rank_is_empty() {
    let o = run(&["count", "--d", "3", "--q", "2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().nth(1), Some("3,2,2,0,0,0,1,0"));
}

#[test]
fn count_json() {
    let o = run(&["count", "--d", "2", "--q", "3", "--m", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["omega_enum"], 6);
    assert_eq!(v[0]["omega_closed"], 6);
}

#[test]
fn budget_exit() {
    assert_eq!(run(&["count", "--d", "4", "--q", "3", "--m", "9"]).status.code(), Some(2));
    assert_eq!(run(&["--budget", "10", "enumerate", "omega", "--d", "2", "--q", "2", "--m", "4"]).status.code(), Some(2));
}

#[test]
fn usage_exit() {
    assert_eq!(run(&["verify", "bogus"]).status.code(), Some(3));
    assert_eq!(run(&["count", "--d", "2", "--q", "6", "--m", "1"]).status.code(), Some(3));
    assert_eq!(run(&["count", "--d", "0", "--q", "2", "--m", "1"]).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_lemma_aa() {
    let o = run(&["verify", "lemma-aa", "--d", "3", "--q", "2", "--i", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in ["lemma-aa.shape", "lemma-aa.valuation", "lemma-aa.residue", "lemma-aa.v-order"] {
        assert!(text.lines().any(|l| l.starts_with(name) && l.contains("PASS")), "{name} missing in\n{text}");
    }
}

#[test]
fn verify_quotient() {
    let o = run(&["verify", "quotient", "--d", "3", "--q", "2", "--m", "3", "--i", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("quotient.constancy d=3 q=2 m=3 i=1 PASS"));
    assert!(text.contains("quotient.separation d=3 q=2 m=3 i=1 PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_factorization_reports_constant() {
    let o = run(&["verify", "factorization", "--d", "3", "--q", "3", "--i", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().starts_with("factorization d=3 q=3 i=1 PASS C="));
}

#[test]
fn enumerate_listings() {
    let o = run(&["enumerate", "omega", "--d", "2", "--q", "2", "--m", "2"]);
    assert_eq!(stdout(&o), "1:2\n1:3\n");
    let o = run(&["enumerate", "dl", "--d", "2", "--q", "2", "--m", "2"]);
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn orbit_partition() {
    let o = run(&["orbits", "--group", "U_I", "--i", "1", "--d", "3", "--q", "2", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let points: Vec<&str> = text.split_whitespace().collect();
    assert_eq!(points.len(), 24);
    let mut unique = points.clone();
    unique.sort();
    unique.dedup();
    assert_eq!(unique.len(), 24);
}

#[test]
fn output_independent_of_jobs() {
    let args = ["orbits", "--group", "U", "--d", "3", "--q", "3", "--m", "3"];
    let one = run(&[&["--jobs", "1"][..], &args[..]].concat());
    let four = run(&[&["--jobs", "4"][..], &args[..]].concat());
    assert_eq!(one.stdout, four.stdout);
    assert!(!one.stdout.is_empty());
}

#[test]
fn quick_suite_passes() {
    let o = run(&["verify", "all", "--quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

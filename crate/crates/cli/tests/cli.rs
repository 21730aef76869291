use std::process::{Command, Output};

fn paley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paley"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_exit_codes() {
    let o = paley(&["check", "65"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("admissible, x=8\n"),
        "{}",
        stdout(&o)
    );

    let o = paley(&["check", "21"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("inadmissible (prime 3 ≡ 3 mod 4)"));

    let o = paley(&["check", "12"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("inadmissible (4 divides n)"));

    assert_eq!(paley(&["check", "2"]).status.code(), Some(1));
    assert_eq!(paley(&["check", "abc"]).status.code(), Some(2));
    assert_eq!(paley(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn count_both_methods() {
    let o = paley(&["count", "169", "--order", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "formula: 57122\nbrute: 57122\n");

    let o = paley(&["count", "25", "--order", "4", "--method", "formula"]);
    assert_eq!(stdout(&o), "formula: 0\n");
}

#[test]
fn jacobi_rejects_bad_primes() {
    let o = paley(&["jacobi", "13", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "J(psi,chi) = -39+26i\nnorm = 2197\nK = 1690\n");
    assert_eq!(paley(&["jacobi", "3", "1"]).status.code(), Some(1));
    assert_eq!(paley(&["jacobi", "15", "1"]).status.code(), Some(1));
    assert_eq!(paley(&["jacobi", "5", "0"]).status.code(), Some(2));
    assert_eq!(paley(&["jacobi", "5", "40"]).status.code(), Some(1));
}

#[test]
fn export_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g5.json");
    let o = paley(&[
        "export",
        "5",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        written,
        "{\"n\":5,\"edges\":[[0,1],[0,4],[1,2],[2,3],[3,4]]}\n"
    );
    assert!(stdout(&o).contains(&format!("wrote {} bytes", written.len())));

    let bad = dir.path().join("missing").join("g.txt");
    let o = paley(&["export", "5", "--out", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    assert_eq!(paley(&["export", "7"]).status.code(), Some(1));
}

#[test]
fn verify_sweep_passes() {
    let o = paley(&[
        "verify",
        "--max-n",
        "100",
        "--max-prime",
        "17",
        "--alphas",
        "1,2",
    ]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(!text.contains("FAIL"));
    assert!(text.lines().last().unwrap().ends_with(", 0 failed"));
}

#[test]
fn commands_are_deterministic() {
    for args in [
        &["props", "325"][..],
        &["count", "65", "--order", "4"],
        &["export", "85", "--format", "dot"],
        &["verify", "--max-n", "60", "--json"],
    ] {
        let a = paley(args);
        let b = paley(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

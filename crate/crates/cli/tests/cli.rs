use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rsakit::fixtures;
use rsakit::format::{parse_rsa, parse_tpn, print_nra};
use tempfile::TempDir;

const VERDICTS: &[&str] =
    &["ACCEPT", "REJECT", "EMPTY", "NONEMPTY", "INCLUDED", "NOT-INCLUDED", "COVERABLE", "UNCOVERABLE", "BOT"];

const ALL_WORDS: &str = "rsa all { alphabet a; registers; init q; final q; q -a-> q; }\n";
const NONE: &str = "rsa none { alphabet a; registers; init q; q -a-> q; }\n";
const NET: &str = "tpn gather { places p0 p1 p2; init p0:1;
  t : in p0:1; out p0:1 p1:1;
  u : in p0:1; out p2:1; transfer p1->p2; }\n";

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let files = [
            ("exists_rep.rsa", fixtures::EXISTS_REP_DRSA.to_string()),
            ("no_rep.rsa", fixtures::NO_REP_DRSA.to_string()),
            ("not_all_rep.rsa", fixtures::NOT_ALL_REP_RSA.to_string()),
            ("exists_rep.nra", fixtures::EXISTS_REP_NRA.to_string()),
            ("exists_rep_eq.nra", print_nra(&fixtures::exists_rep_nra_eq())),
            ("diseq.nra", fixtures::DISEQ_NRA.to_string()),
            ("all.rsa", ALL_WORDS.to_string()),
            ("none.rsa", NONE.to_string()),
            ("net.tpn", NET.to_string()),
            ("broken.rsa", "rsa x { alphabet a; init q\n".to_string()),
        ];
        for (name, text) in files {
            std::fs::write(dir.path().join(name), text).unwrap();
        }
        Files { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Output {
        self.run_env(args, &[])
    }

    fn run_env(&self, args: &[&str], env: &[(&str, &str)]) -> Output {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_rsakit"));
        cmd.current_dir(self.dir.path()).args(args).env_remove("RSAKIT_CAPS");
        for (k, v) in env {
            cmd.env(k, v);
        }
        cmd.output().unwrap()
    }
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn verdict(o: &Output) -> String {
    let s = stdout(o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 1, "stdout: {s:?}\nstderr: {}", String::from_utf8_lossy(&o.stderr));
    let head = lines[0].split(' ').next().unwrap();
    assert!(VERDICTS.contains(&head), "{s:?}");
    lines[0].to_string()
}

#[test]
fn documented_examples() {
    let f = Files::new();
    assert_eq!(verdict(&f.run(&["empty", "exists_rep.rsa", "--witness"])), "NONEMPTY a:1 a:1");
    assert_eq!(verdict(&f.run(&["member", "exists_rep.rsa", "--word", "a:1 a:2 a:2"])), "ACCEPT");
    assert_eq!(verdict(&f.run(&["tpn-cover", "net.tpn", "--target", "p2:3"])), "COVERABLE");
    assert_eq!(verdict(&f.run(&["tpn-cover", "net.tpn", "--target", "p1:1 p2:1"])), "UNCOVERABLE");
}

#[test]
fn verdicts_and_exit_codes() {
    let f = Files::new();
    let cases: &[(&[&str], &str, bool)] = &[
        (&["member", "exists_rep.rsa", "--word", "a:1 a:2"], "REJECT", false),
        (&["member", "exists_rep.nra", "--word", "a:5 a:5"], "ACCEPT", true),
        (&["ura-member", "exists_rep.nra", "--word", "a:1 a:2"], "REJECT", false),
        (&["member", "not_all_rep.rsa", "--word", "a:\"x\" a:\"y\" a:\"x\""], "ACCEPT", true),
        (&["empty", "none.rsa"], "EMPTY", true),
        (&["empty", "no_rep.rsa"], "NONEMPTY", false),
        (&["include", "exists_rep.rsa", "exists_rep_eq.nra"], "INCLUDED", true),
        (&["include", "none.rsa", "!exists_rep_eq.nra"], "INCLUDED", true),
        (&["include", "all.rsa", "exists_rep_eq.nra"], "NOT-INCLUDED", false),
        (&["determinise", "diseq.nra"], "BOT CARDINALITY", false),
        (&["regex-match", "(.)\\1", "xaay"], "ACCEPT", true),
        (&["regex-match", "(.)\\1", "xay"], "REJECT", false),
    ];
    for &(args, expected, positive) in cases {
        let o = f.run(args);
        assert_eq!(verdict(&o), expected, "{args:?}");
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let mut strict = args.to_vec();
        strict.push("--fail-on-no");
        let o = f.run(&strict);
        assert_eq!(o.status.code(), Some(if positive { 0 } else { 1 }), "{args:?}");
    }
}

#[test]
fn input_errors_exit_2() {
    let f = Files::new();
    let cases: &[&[&str]] = &[
        &["validate", "broken.rsa"],
        &["validate", "missing.rsa"],
        &["member", "exists_rep.rsa", "--word", "b:1"],
        &["ura-member", "exists_rep.rsa", "--word", "a:1"],
        &["complement", "not_all_rep.rsa"],
        &["include", "exists_rep.rsa", "exists_rep_eq.nra &"],
        &["include", "exists_rep.rsa", "exists_rep.nra"],
        &["tpn-fire", "net.tpn", "--transition", "u", "--marking", "p1:1"],
        &["regex-match", "(ab)\\1", "abab"],
    ];
    for &args in cases {
        let o = f.run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stdout(&o).is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = f.run(&["validate", "broken.rsa"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("broken.rsa:2:"));
}

#[test]
fn caps_exit_3() {
    let f = Files::new();
    let o = f.run_env(&["determinise", "exists_rep_eq.nra"], &[("RSAKIT_CAPS", "1")]);
    assert_eq!(o.status.code(), Some(3));
    let o = f.run_env(&["determinise", "exists_rep_eq.nra"], &[("RSAKIT_CAPS", "x")]);
    assert_eq!(o.status.code(), Some(2));
    let o = f.run_env(&["determinise", "exists_rep_eq.nra"], &[("RSAKIT_CAPS", ",,")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn printed_automata_parse_back() {
    let f = Files::new();
    let d = parse_rsa(&stdout(&f.run(&["determinise", "exists_rep_eq.nra"]))).unwrap();
    assert!(d.is_deterministic());
    let c = parse_rsa(&stdout(&f.run(&["complement", "exists_rep.rsa"]))).unwrap();
    assert!(c.is_deterministic());
    std::fs::write(f.path("c.rsa"), stdout(&f.run(&["complement", "exists_rep.rsa"]))).unwrap();
    let u = stdout(&f.run(&["union", "exists_rep.rsa", "c.rsa"]));
    std::fs::write(f.path("u.rsa"), u).unwrap();
    assert_eq!(verdict(&f.run(&["member", "u.rsa", "--word", "a:1 a:2 a:3"])), "ACCEPT");
    let p = stdout(&f.run(&["product", "exists_rep.rsa", "c.rsa"]));
    std::fs::write(f.path("p.rsa"), p).unwrap();
    assert_eq!(verdict(&f.run(&["empty", "p.rsa"])), "EMPTY");
    let o = f.run(&["validate", "exists_rep.rsa"]);
    assert!(o.status.success() && stdout(&o).is_empty());
}

#[test]
fn net_commands() {
    let f = Files::new();
    let o = f.run(&["tpn-fire", "net.tpn", "--transition", "t"]);
    assert_eq!(stdout(&o).trim(), "p0:1 p1:1");
    let o = f.run(&["to-tpn", "exists_rep.rsa"]);
    let net = parse_tpn(&stdout(&o)).unwrap();
    assert_eq!(net.num_places(), 6);
    assert!(String::from_utf8_lossy(&o.stderr).contains("target fin:1"));
    let o = f.run(&["from-tpn", "net.tpn", "--target", "p2:2"]);
    std::fs::write(f.path("gadget.rsa"), stdout(&o)).unwrap();
    assert_eq!(verdict(&f.run(&["empty", "gadget.rsa"])), "NONEMPTY");
}

#[test]
fn regex_commands() {
    let f = Files::new();
    let o = f.run(&["regex-match", fixtures::FLAGSHIP_REGEX, fixtures::FLAGSHIP_TEXT]);
    assert_eq!(verdict(&o), "REJECT");
    assert!(String::from_utf8_lossy(&o.stderr).contains("steps 42 deterministic"));
    std::fs::write(f.path("text"), "x;y;zzyx\n").unwrap();
    let o = f.run(&["regex-match", fixtures::FLAGSHIP_REGEX, "--file", "text"]);
    assert_eq!(verdict(&o), "ACCEPT");
    let nra = stdout(&f.run(&["regex-compile", "(.)\\1"]));
    assert!(nra.starts_with("nra "));
    let drsa = parse_rsa(&stdout(&f.run(&["regex-compile", "--search", "--determinise", "(.)\\1"]))).unwrap();
    assert!(drsa.is_deterministic());
}

#[test]
fn absolute_paths_work() {
    let f = Files::new();
    let abs = f.path("exists_rep.rsa");
    assert!(Path::new(&abs).is_absolute());
    assert_eq!(verdict(&f.run(&["empty", abs.to_str().unwrap()])), "NONEMPTY");
}

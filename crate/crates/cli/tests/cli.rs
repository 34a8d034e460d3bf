use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fibercone_cli::backend::Frontend;
use fibercone_cli::session::{parse_session, RingSpec};
use fibercone_core::artinian::{Rationals, TruncatedLocalRing};
use fibercone_core::{IdealCalculus, NumericalSemigroup, SemigroupRing};

fn sessions() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../sessions")
}

fn session(name: &str) -> PathBuf {
    sessions().join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibercone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_session(file: &Path, args: &[&str]) -> Output {
    let mut all = vec![file.to_str().unwrap()];
    all.extend_from_slice(args);
    run(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(" = ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
}

fn write_temp(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    std::io::Write::write_all(&mut f, text.as_bytes()).unwrap();
    f
}

#[test]
fn series_of_the_seven_semigroup() {
    let o = run_session(&session("sgp7.fc"), &["series"]);
    assert_eq!(o.status.code(), Some(0));
    let want = "\
ring.kind = semigroup
ring.generators = 7 15 17 33
ring.dimension = 1
series.numerator = 1 2 1
series.denominator_power = 1
series.stabilized_at = 3
f0.value = 4
f0.stabilized_at = 2
";
    assert_eq!(stdout(&o), want);
}

#[test]
fn cm_fails_for_the_six_semigroup() {
    let o = run_session(&session("sgp6.fc"), &["cm"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(value(&out, "cm.verdict"), "false");
    assert_eq!(value(&out, "cm.f0"), "3");
    assert_eq!(value(&out, "cm.colength_fiber"), "4");
    assert_eq!(value(&out, "reduction.number"), "2");
}

#[test]
fn full_report_matches_golden() {
    let o = run_session(&session("sgp7.fc"), &["report"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = include_str!("golden/sgp7_report.txt");
    assert_eq!(stdout(&o), golden);
}

#[test]
fn output_is_deterministic() {
    for args in [&["report"][..], &["mixed", "I", "1", "2"][..]] {
        let a = run_session(&session("space.fc"), args);
        let b = run_session(&session("space.fc"), args);
        assert_eq!(a.stdout, b.stdout);
    }
    let a = run_session(&session("sgp4.fc"), &["gorenstein"]);
    let b = run_session(&session("sgp4.fc"), &["gorenstein", "--sequential"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn mixed_top_equals_multiplicity() {
    for (file, d) in [("sgp7.fc", 1), ("plane.fc", 2), ("space.fc", 3)] {
        let rep = stdout(&run_session(&session(file), &["report"]));
        let d = d.to_string();
        let mixed = stdout(&run_session(&session(file), &["mixed", "I", "0", &d]));
        assert_eq!(
            value(&mixed, &format!("mixed.e_0_{d}")),
            value(&rep, "e.value"),
            "{file}"
        );
    }
}

#[test]
fn truncation_grows_until_certified() {
    let o = run_session(&session("space.fc"), &["report"]);
    let out = stdout(&o);
    assert_eq!(value(&out, "ring.truncation"), "40");
    assert_eq!(value(&out, "series.numerator"), "1 3");
    assert_eq!(value(&out, "mixed.e_1_2"), "4");
    let o = run_session(&session("space.fc"), &["report", "--trunc", "40"]);
    assert_eq!(stdout(&o), out);
}

#[test]
fn exit_codes() {
    assert_eq!(
        run_session(&session("sgp4.fc"), &["vv"]).status.code(),
        Some(0)
    );

    let off = run(&["examples", "--only", "sgp4", "--inject-off-by-one"]);
    assert_eq!(off.status.code(), Some(1));
    assert!(stdout(&off).contains("FAIL"));

    let bad = write_temp("ring semigroup 3 5\nideal I = t^3 +\n");
    let o = run_session(bad.path(), &["cm"]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert_eq!(value(&out, "error.kind"), "SyntaxError");

    let o = run_session(&session("sgp7.fc"), &["cm", "K", "J"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run_session(Path::new("/nonexistent/x.fc"), &["cm"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["examples", "--only", "sgp9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn example_suite_passes() {
    let o = run(&["examples"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(value(&out, "suite.failed"), "0");
    assert!(!out.contains("FAIL"));

    let one = stdout(&run(&["examples", "--only", "sgp4"]));
    assert!(one.lines().all(|l| !l.starts_with("example.sgp7")));
    assert!(one.lines().any(|l| l.starts_with("example.sgp4")));
}

#[test]
fn prime_characteristic_agrees() {
    let text = std::fs::read_to_string(session("plane.fc")).unwrap();
    let p = write_temp(&text.replace("trunc 12", "trunc 12 char 32003"));
    let q = stdout(&run_session(&session("plane.fc"), &["report"]));
    let r = stdout(&run_session(p.path(), &["report"]));
    let strip = |s: &str| -> Vec<String> {
        s.lines()
            .filter(|l| !l.starts_with("ring.characteristic"))
            .map(String::from)
            .collect()
    };
    assert_eq!(strip(&q), strip(&r));
    assert_eq!(value(&r, "ring.characteristic"), "32003");
}

#[test]
fn session_files_parse() {
    let s = parse_session(&std::fs::read_to_string(session("sgp6.fc")).unwrap()).unwrap();
    assert_eq!(s.ring, RingSpec::Semigroup(vec![6, 11, 15, 31]));
    assert_eq!(s.ideal("I").unwrap().len(), 3);

    let s = parse_session(&std::fs::read_to_string(session("space.fc")).unwrap()).unwrap();
    let j = s.ideal("J").unwrap();
    assert_eq!(j.len(), 3);
    assert!(j.iter().all(|g| g.constant_term() == 0));
    assert_eq!(s.settings.n_max, Some(40));
}

#[test]
fn text_round_trip_preserves_ideals() {
    let local =
        TruncatedLocalRing::with_names(vec!["x".into(), "y".into(), "z".into()], 12, Rationals)
            .unwrap();
    let sgp = SemigroupRing::new(NumericalSemigroup::new(&[7, 15, 17, 33]).unwrap());
    for file in ["sgp7.fc", "space.fc"] {
        let a = parse_session(&std::fs::read_to_string(session(file)).unwrap()).unwrap();
        let b = parse_session(&a.to_text()).unwrap();
        assert_eq!(a.ring, b.ring);
        for (name, gens) in &a.ideals {
            let other = b.ideal(name).unwrap();
            match a.ring {
                RingSpec::Semigroup(_) => {
                    let (x, y) = (
                        sgp.ideal_from(gens).unwrap(),
                        sgp.ideal_from(other).unwrap(),
                    );
                    assert!(sgp.equals(&x, &y).unwrap());
                }
                RingSpec::Local { .. } => {
                    let (x, y) = (
                        local.ideal_from(gens).unwrap(),
                        local.ideal_from(other).unwrap(),
                    );
                    assert!(local.equals(&x, &y).unwrap());
                }
            }
        }
    }
}

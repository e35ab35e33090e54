use std::path::Path;
use std::process::{Command, Output};

use patchscope_core::io::read_point_set;
use patchscope_core::{PointSet, Scalar};

fn patchscope(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_patchscope")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn gen_writes_reciprocal_cubes() {
    let dir = tempfile::tempdir().unwrap();
    let o = patchscope(&["gen", "e_p", "--p", "3", "--n", "300", "-o", "e3.pts"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let set = read_point_set(dir.path().join("e3.pts")).unwrap();
    assert_eq!(set.len(), 300);
    assert!(set.contains(&patchscope_core::Point::scalar(Scalar::ratio(1, 27))));
}

#[test]
fn gen_to_stdout_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let o = patchscope(&["gen", "squares", "--n", "5", "--reciprocal"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let set = patchscope_core::io::parse_point_set(&stdout(&o)).unwrap();
    let expect = PointSet::on_line([1, 4, 9, 16, 25].map(|n| Scalar::ratio(1, n))).unwrap();
    assert_eq!(set, expect);
    // families without an integer sequence cannot be inverted
    let o = patchscope(&["gen", "cantor", "--reciprocal"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let o = patchscope(&["gen", "primes"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn patch_on_primes_finds_progression() {
    let dir = tempfile::tempdir().unwrap();
    patchscope(&["gen", "primes", "--n", "1000", "-o", "p.pts"], dir.path());
    let o = patchscope(&["patch", "--k", "5", "p.pts"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    assert!(line.starts_with("k=5 eps=0 t=5 delta=6 strategy=anchored eps_exact=0"), "{line}");
    assert!(line.trim_end().ends_with("bound=exact"));

    let o = patchscope(&["patch", "--k", "5", "--json", "--strategy", "grid", "p.pts"], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["epsilon"], "0");
    assert_eq!(v["strategy"], "grid");
    assert_eq!(v["subset"]["points"].as_array().unwrap().len(), 5);
}

#[test]
fn steinhaus_reports_optimal_candidate() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "f.pts", "#patchscope d=1 norm=linf\n0\n10\n31\n");
    write(dir.path(), "p.pts", "#patchscope d=1 norm=linf\n0\n1\n3\n");
    let o = patchscope(&["steinhaus", "--pattern", "p.pts", "f.pts"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("delta=31/3 strategy=anchored eps_exact=1/31"));
}

#[test]
fn dim_and_box_on_cantor() {
    let dir = tempfile::tempdir().unwrap();
    patchscope(&["gen", "cantor", "--depth", "6", "-o", "c.pts"], dir.path());
    let o = patchscope(&["dim", "--base", "3", "--pairs", "0:2,0:4,1:5", "--csv", "c.pts"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "coarse,fine,ratio,max_count,exponent,witness,admitted");
    assert_eq!(lines.len(), 4);
    assert!(lines[2].starts_with("1,1/81,81,16,"));

    let o = patchscope(&["dim", "--base", "3", "c.pts"], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let est = v["estimate"].as_f64().unwrap();
    assert!((est - 2f64.ln() / 3f64.ln()).abs() < 1e-12);

    let o = patchscope(&["box", "--scales", "1,1/3,1/9", "--csv", "c.pts"], dir.path());
    assert_eq!(stdout(&o).lines().map(|l| l.split(',').nth(1).unwrap()).collect::<Vec<_>>(), ["count", "1", "2", "4"]);
    let o = patchscope(&["box", "--scales", "1/3,1", "c.pts"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tangent_reports_defect() {
    let dir = tempfile::tempdir().unwrap();
    patchscope(&["gen", "full_grid", "--depth", "8", "-o", "g.pts"], dir.path());
    let o = patchscope(&["tangent", "--resolution", "1/32", "g.pts"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["defect"], "1/64");
    assert_eq!(v["discretization"], "1/32");
    let o = patchscope(&["tangent", "--resolution", "3/4", "g.pts"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn numtheory_tasks() {
    let dir = tempfile::tempdir().unwrap();
    let json = |args: &[&str]| -> serde_json::Value {
        let o = patchscope(args, dir.path());
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        serde_json::from_slice(&o.stdout).unwrap()
    };
    assert_eq!(json(&["numtheory", "primes", "--N", "30"])["count"], 10);
    assert!(json(&["numtheory", "no3ap", "--p", "3", "--N", "100"])["progression"].is_null());
    let squares = json(&["numtheory", "no3ap", "--p", "2", "--N", "40"]);
    assert!(squares["progression"].is_array());
    let bhp = json(&["numtheory", "bhp", "--K", "60"]);
    assert_eq!(bhp["class"], "subexponential");
    assert_eq!(bhp["rows"][1]["prime"], "37");
    let blocks = json(&["numtheory", "blocks", "--N", "4096", "--kmax", "10"]);
    assert_eq!(blocks["all_hold"], true);
    assert_eq!(blocks["rows"].as_array().unwrap().len(), 11);
    assert_eq!(patchscope(&["numtheory", "primes"], dir.path()).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["patch", "--k", "3", "--bogus", "x.pts"][..],
        &["frobnicate"],
        &[],
        &["patch", "--k", "3", "missing.pts"],
        &["numtheory", "squares"],
        &["verify", "--families", "nonsense"],
    ] {
        let o = patchscope(args, dir.path());
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    write(dir.path(), "bad.pts", "#patchscope d=1 norm=linf\n1\n1\n");
    let o = patchscope(&["patch", "--k", "2", "bad.pts"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn help_and_version_succeed() {
    let dir = tempfile::tempdir().unwrap();
    let o = patchscope(&["--help"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
    assert_eq!(patchscope(&["--version"], dir.path()).status.code(), Some(0));
}

#[test]
fn thread_variable_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_patchscope"))
            .args(["numtheory", "primes", "--N", "100"])
            .env(patchscope_cli::THREADS_ENV, v)
            .current_dir(dir.path())
            .output()
            .unwrap()
    };
    assert_eq!(run("0").status.code(), Some(1));
    assert_eq!(run("two").status.code(), Some(1));
    assert_eq!(run("2").status.code(), Some(0));
}

#[test]
fn verify_exit_codes_and_user_file() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "mine.pts", "#patchscope d=1 norm=linf\n0\n1\n2\n4\n7\n");
    write(
        dir.path(),
        "ok.json",
        r#"{"kmax": 3, "user_file": "mine.pts",
            "families": {"cantor": {"family": "cantor", "depth": 4}}}"#,
    );
    let o = patchscope(&["verify", "--config", "ok.json", "-o", "r.json"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("r.json")).unwrap()).unwrap();
    let names: Vec<&str> = v["families"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["cantor", "user"]);
    let user = &v["families"][1];
    assert_eq!(user["family"], "mine");
    assert_eq!(user["epsilon"][1]["k"], 3);
    assert_eq!(user["epsilon"][1]["epsilon"], "0");

    // an unreachable threshold makes an asserted flag fail; the report is still written
    write(
        dir.path(),
        "strict.json",
        r#"{"families": {"cantor": {"family": "cantor", "depth": 4}},
            "thresholds": {"cantor_assouad_max": 0.1}}"#,
    );
    let o = patchscope(&["verify", "--config", "strict.json", "--kmax", "2", "-o", "s.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL cantor assouad_below"));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("s.json")).unwrap()).unwrap();
    assert_eq!(v["passed"], false);

    write(dir.path(), "typo.json", r#"{"kmaxx": 3}"#);
    assert_eq!(patchscope(&["verify", "--config", "typo.json"], dir.path()).status.code(), Some(1));
    assert_eq!(patchscope(&["verify", "--kmax", "1", "--families", "cantor"], dir.path()).status.code(), Some(1));
}

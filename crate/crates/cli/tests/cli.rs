use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mapgerm_core::{FamilyVerdict, InvariantReport};

fn mapgerm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mapgerm")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, doc: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, doc).unwrap();
    p
}

fn germ_file(dir: &Path, name: &str, components: [&str; 3]) -> String {
    let doc = serde_json::json!({ "components": components }).to_string();
    write(dir, name, &doc).to_str().unwrap().to_string()
}

fn family_file(dir: &Path, name: &str, components: [&str; 3]) -> String {
    let doc = serde_json::json!({ "parameter": "t", "components": components }).to_string();
    write(dir, name, &doc).to_str().unwrap().to_string()
}

#[test]
fn crosscap_json() {
    let dir = tempfile::tempdir().unwrap();
    let f = germ_file(dir.path(), "cc.json", ["x", "y^2", "x*y"]);
    let o = mapgerm(&["invariants", &f, "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    for frag in [r#""C":1"#, r#""T":0"#, r#""mu_D2":0"#, r#""mu_image":0"#, r#""verdicts":{"#] {
        assert!(out.contains(frag), "{frag} missing in {out}");
    }
}

#[test]
fn json_round_trips_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let f = germ_file(dir.path(), "h2.json", ["x", "y^3", "x*y + y^5"]);
    let out = stdout(&mapgerm(&["--json", "invariants", &f]));
    let r: InvariantReport = serde_json::from_str(&out).unwrap();
    assert_eq!(format!("{}\n", serde_json::to_string(&r).unwrap()), out);

    let f = family_file(dir.path(), "fam.json", ["x", "y^2", "y^3 + x^2*y + t*x^4*y"]);
    let out = stdout(&mapgerm(&["--json", "family", &f]));
    let v: FamilyVerdict = serde_json::from_str(&out).unwrap();
    assert_eq!(format!("{}\n", serde_json::to_string(&v).unwrap()), out);
}

#[test]
fn field_order_is_canonical() {
    let dir = tempfile::tempdir().unwrap();
    let f = germ_file(dir.path(), "s1.json", ["x", "y^2", "y^3 + x^2*y"]);
    let out = stdout(&mapgerm(&["--json", "invariants", &f]));
    let keys = [
        "\"C\"",
        "\"T\"",
        "\"mu_D2\"",
        "\"mu_D2tilde\"",
        "\"mu_D2tilde_mod_S2\"",
        "\"mu_image\"",
        "\"euler\"",
        "\"m0\"",
        "\"finitely_determined_proxy\"",
        "\"identity_checks\"",
        "\"verdicts\"",
    ];
    let pos: Vec<usize> = keys.iter().map(|k| out.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{out}");
}

#[test]
fn human_text_is_aligned() {
    let dir = tempfile::tempdir().unwrap();
    let f = germ_file(dir.path(), "cc.json", ["x", "y^2", "x*y"]);
    let out = stdout(&mapgerm(&["invariants", &f]));
    assert!(out.lines().any(|l| l == format!("{:<27}1", "C")), "{out}");
    assert!(out.contains("pass  mu_D2 = mu_D2tilde + 6T"));
}

#[test]
fn non_reduced_double_points_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = germ_file(dir.path(), "bad.json", ["x", "y^2", "y^3"]);
    let o = mapgerm(&["invariants", &f, "--json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("non-finite colength"));
    let r: InvariantReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!r.finitely_determined_proxy);
}

#[test]
fn corank_two_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = germ_file(dir.path(), "c2.json", ["x^2", "y^2", "x*y"]);
    let o = mapgerm(&["invariants", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("corank 2"));
}

#[test]
fn usage_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(mapgerm(&["invariants", missing.to_str().unwrap()]).status.code(), Some(1));

    let garbage = write(dir.path(), "g.json", "{\"components\": [\"x\", \"y^^2\", \"x*y\"]}");
    let o = mapgerm(&["invariants", garbage.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("component 1"));

    let constant = germ_file(dir.path(), "k.json", ["x + 1", "y^2", "x*y"]);
    assert_eq!(mapgerm(&["invariants", &constant]).status.code(), Some(1));

    assert_eq!(mapgerm(&["frobnicate"]).status.code(), Some(1));
    let cc = germ_file(dir.path(), "cc.json", ["x", "y^2", "x*y"]);
    assert_eq!(mapgerm(&["invariants", &cc, "--samples", "1,q"]).status.code(), Some(1));
}

#[test]
fn family_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let f = family_file(dir.path(), "s.json", ["x", "y^2", "y^3 + x^3*y + t*x*y"]);
    let o = mapgerm(&["family", &f]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains(
        "mu-constant: no ⇒ topologically trivial ⇔ Whitney equisingular ⇔ bilipschitz trivial: no"
    ));
    assert!(out.contains("semicontinuity mu_D2: 0 <= 2"));

    let f = family_file(dir.path(), "t.json", ["x", "y^2", "x*y + t*y^3"]);
    let o = mapgerm(&["family", &f, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: FamilyVerdict = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.mu_constant && v.excellent && v.bilipschitz_trivial);
    let text = stdout(&mapgerm(&["family", &f]));
    assert!(text.contains("mu-constant: yes ⇒"));
    assert!(text.contains("excellent          yes"));
}

#[test]
fn family_requires_parameter() {
    let dir = tempfile::tempdir().unwrap();
    let f = germ_file(dir.path(), "cc.json", ["x", "y^2", "x*y"]);
    let o = mapgerm(&["family", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not an unfolding"));
}

#[test]
fn family_with_failing_special_fiber_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = family_file(dir.path(), "f.json", ["x", "y^2", "y^3 + t*x*y"]);
    let o = mapgerm(&["family", &f]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stderr(&o).contains("not finitely determined"));
}

#[test]
fn catalog_commands() {
    let list = stdout(&mapgerm(&["catalog", "list"]));
    for n in [
        "immersion",
        "crosscap",
        "S1",
        "S2",
        "H2",
        "family-trivial",
        "family-S2-smoothing",
        "family-mu-constant",
    ] {
        assert!(list.lines().any(|l| l == n), "{n}");
    }
    assert_eq!(
        stdout(&mapgerm(&["catalog", "show", "crosscap"])).trim(),
        r#"{"components":["x","y^2","x*y"]}"#
    );
    assert_eq!(mapgerm(&["catalog", "show", "nonesuch"]).status.code(), Some(1));
}

#[test]
fn selftest_passes_and_uses_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let o = mapgerm(&["catalog", "selftest", "--cache-dir", cache.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    let entries = std::fs::read_dir(&cache).unwrap().count();
    assert_eq!(entries, mapgerm_core::catalog().len());
    let again = mapgerm(&["catalog", "selftest", "--cache-dir", cache.to_str().unwrap()]);
    assert_eq!(stdout(&again), stdout(&o));
}

#[test]
fn cached_and_fresh_reports_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c");
    let f = germ_file(dir.path(), "b2.json", ["x", "y^2", "x^2*y + y^5"]);
    let fresh = stdout(&mapgerm(&["--json", "invariants", &f]));
    let first = stdout(&mapgerm(&["--json", "invariants", &f, "--cache-dir", cache.to_str().unwrap()]));
    let second = stdout(&mapgerm(&["--json", "invariants", &f, "--cache-dir", cache.to_str().unwrap()]));
    assert_eq!(fresh, first);
    assert_eq!(first, second);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let fam = family_file(dir.path(), "f.json", ["x", "y^2", "x*y + t*y^3"]);
    let cfg = write(dir.path(), "cfg.toml", "samples = \"2,5\"\n");
    let v: FamilyVerdict =
        serde_json::from_str(&stdout(&mapgerm(&["--json", "--config", cfg.to_str().unwrap(), "family", &fam])))
            .unwrap();
    let ts: Vec<String> = v.sample_reports.iter().map(|s| s.t.to_string()).collect();
    assert_eq!(ts, ["2", "5"]);
    let v: FamilyVerdict = serde_json::from_str(&stdout(&mapgerm(&[
        "--json",
        "--config",
        cfg.to_str().unwrap(),
        "--samples",
        "-1/2",
        "family",
        &fam,
    ])))
    .unwrap();
    assert_eq!(v.sample_reports.len(), 1);
    assert_eq!(v.sample_reports[0].t.to_string(), "-1/2");
}

#[test]
fn no_crosscheck_flag() {
    let dir = tempfile::tempdir().unwrap();
    let f = germ_file(dir.path(), "s1.json", ["x", "y^2", "y^3 + x^2*y"]);
    let r: InvariantReport =
        serde_json::from_str(&stdout(&mapgerm(&["--json", "--no-crosscheck", "invariants", &f]))).unwrap();
    assert_eq!(r.mu_D2tilde_le_greuel, None);
    assert_eq!(r.mu_D2tilde, Some(1));
}

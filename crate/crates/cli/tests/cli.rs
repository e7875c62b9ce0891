use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const SMALL: [&str; 6] = ["--p", "5", "--ell", "2", "--n", "2"];

fn qeag(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qeag"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .env_remove("QEAG_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn small(dir: &Path, args: &[&str]) -> Output {
    let mut all: Vec<&str> = SMALL.to_vec();
    all.extend_from_slice(args);
    qeag(dir, &all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn built(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut all = vec!["build"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let o = small(dir.path(), &all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn orbit_count(variety: &Value, degree: u64) -> usize {
    variety["variety"]
        .as_array()
        .unwrap()
        .iter()
        .find(|d| d["degree"] == degree)
        .map_or(0, |d| d["points"].as_array().unwrap().len())
}

#[test]
fn build_dimensions() {
    let dir = TempDir::new().unwrap();
    assert_eq!(json(&built(&dir, "k.json", &["trivial"]))["dim"], 1);
    assert_eq!(json(&built(&dir, "reg.json", &["regular"]))["dim"], 16);
    assert_eq!(json(&built(&dir, "l.json", &["carlson", "--lambda", "1,1"]))["dim"], 8);
    assert_eq!(json(&built(&dir, "s.json", &["simple", "--chi", "1,0"]))["dim"], 1);
}

#[test]
fn operations() {
    let dir = TempDir::new().unwrap();
    let k = built(&dir, "k.json", &["trivial"]);
    let m = built(&dir, "m.json", &["random", "--budget", "10"]);
    let reg = built(&dir, "reg.json", &["regular"]);
    let out = |name: &str| dir.path().join(name);

    let t = out("t.json");
    let o = small(dir.path(), &["op", "tensor", m.to_str().unwrap(), k.to_str().unwrap(), "-o", t.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(json(&t)["dim"], json(&m)["dim"]);

    let d1 = out("d1.json");
    let d2 = out("d2.json");
    assert!(small(dir.path(), &["op", "dual", m.to_str().unwrap(), "-o", d1.to_str().unwrap()]).status.success());
    let o = small(
        dir.path(),
        &["op", "dual", d1.to_str().unwrap(), "--iso-check", m.to_str().unwrap(), "-o", d2.to_str().unwrap()],
    );
    assert!(o.status.success());
    assert!(stdout(&o).contains(": yes"), "{}", stdout(&o));

    let om = out("om.json");
    assert!(small(dir.path(), &["op", "omega", reg.to_str().unwrap(), "-o", om.to_str().unwrap()]).status.success());
    assert_eq!(json(&om)["dim"], 0);

    let r = out("r.json");
    assert!(small(dir.path(), &["op", "restrict-R", m.to_str().unwrap(), "-o", r.to_str().unwrap()]).status.success());
    assert_eq!(json(&r)["algebra"], "R");
    assert_eq!(json(&r)["dim"], json(&m)["dim"]);
}

#[test]
fn varieties() {
    let dir = TempDir::new().unwrap();
    let k = built(&dir, "k.json", &["trivial"]);
    let reg = built(&dir, "reg.json", &["regular"]);
    let l = built(&dir, "l.json", &["carlson", "--lambda", "1,1"]);
    for path in [&k, &reg, &l] {
        let o = small(dir.path(), &["variety", path.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let v = |stem: &str| json(&dir.path().join(format!("{stem}.variety.json")));
    // P^1(F_5) has 6 points, falling into 4 orbits under G.
    assert_eq!(orbit_count(&v("k"), 1), 4);
    assert_eq!(orbit_count(&v("reg"), 1), 0);
    assert_eq!(orbit_count(&v("reg"), 2), 0);
    assert_eq!(orbit_count(&v("l"), 1), 1);
}

#[test]
fn check_passes_and_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let o = small(dir.path(), &["check", "tensor"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let first = std::fs::read(dir.path().join("check-tensor.json")).unwrap();
    let first_text = std::fs::read(dir.path().join("check-tensor.txt")).unwrap();
    small(dir.path(), &["--workers", "2", "check", "tensor"]);
    assert_eq!(std::fs::read(dir.path().join("check-tensor.json")).unwrap(), first);
    assert_eq!(std::fs::read(dir.path().join("check-tensor.txt")).unwrap(), first_text);
}

#[test]
fn injected_fault_fails_with_bundle() {
    let dir = TempDir::new().unwrap();
    let o = small(dir.path(), &["check", "tensor", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    let bundle: Vec<_> = std::fs::read_dir(dir.path().join("failures")).unwrap().collect();
    assert!(!bundle.is_empty());

    let o = small(dir.path(), &["check", "hopf", "--negated-antipode"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let o = small(dir.path(), &["check", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"schema_version\": 1, \"p\": 5}").unwrap();
    let o = small(dir.path(), &["variety", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json"));

    let m = built(&dir, "m.json", &["regular"]);
    let mut file = json(&m);
    let old = file["g"][0][0][0].as_u64().unwrap();
    file["g"][0][0][0] = Value::from((old + 1) % 5);
    std::fs::write(&m, file.to_string()).unwrap();
    let o = small(dir.path(), &["info", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn module_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let m = built(&dir, "m.json", &["random", "--budget", "12"]);
    let copy = dir.path().join("copy.json");
    let o = small(dir.path(), &["op", "reduce", m.to_str().unwrap(), "-o", copy.to_str().unwrap()]);
    assert!(o.status.success());
    let again = dir.path().join("again.json");
    small(dir.path(), &["op", "reduce", copy.to_str().unwrap(), "-o", again.to_str().unwrap()]);
    let (a, b) = (json(&copy), json(&again));
    assert_eq!(a["x"], b["x"]);
    assert_eq!(a["g"], b["g"]);
}

#[test]
fn out_dir_from_environment() {
    let dir = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_qeag"))
        .args(SMALL)
        .args(["build", "trivial"])
        .env("QEAG_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let written: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(written.len(), 1, "{written:?}");
}

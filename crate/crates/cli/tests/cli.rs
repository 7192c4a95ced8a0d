use serde_json::Value;
use std::fs;
use std::process::{Command, Output};

fn hypb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

const ABC: [&str; 6] = ["--a", "1", "--b", "2", "--c", "3"];

fn with_abc<'a>(head: &[&'a str]) -> Vec<&'a str> {
    head.iter().copied().chain(ABC).collect()
}

#[test]
fn check_prints_cubic_condition() {
    let o = hypb(&with_abc(&["check", "--n", "3", "--symbolic"]));
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(
        v["reports"][0]["poly"],
        serde_json::json!(["108", "-132", "23"])
    );
    assert_eq!(v["polynomials"][0], "108 - 132*ν + 23*ν^2");
    assert_eq!(v["config"]["command"], "check");
}

#[test]
fn elliptic_n2_has_linear_part() {
    let v = json(&hypb(&with_abc(&["check", "--elliptic", "--n", "2"])));
    let polys: Vec<&str> = v["polynomials"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_str().unwrap())
        .collect();
    assert!(polys.contains(&"6 + ν"), "{polys:?}");
}

#[test]
fn discriminants_pass() {
    let o = hypb(&with_abc(&[
        "check",
        "--discriminants",
        "--n",
        "4",
        "--samples",
        "2",
    ]));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["pass"], true);
}

#[test]
fn simulate_two_elliptic_periodic() {
    let v = json(&hypb(&with_abc(&[
        "simulate",
        "--nu",
        "-6",
        "--bounces",
        "12",
    ])));
    assert_eq!(v["closure"]["n"], 4);
    assert_eq!(v["closure"]["jacobi_n"], 2);
    let b = &v["bounces"][0];
    assert!(b["p"].is_array() && b["v_in"].is_array() && b["v_out"].is_array());
    assert_eq!(v["table"]["kind"], "collared");
}

#[test]
fn simulate_is_deterministic_and_writes_plot() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
    let (o1, o2, plot) = (p("a.json"), p("b.json"), p("plot.csv"));
    for out in [&o1, &o2] {
        let args = with_abc(&[
            "simulate",
            "--nu",
            "4.750722404589872",
            "--seed",
            "7",
            "--out",
            out,
            "--plot",
            &plot,
        ]);
        assert_eq!(hypb(&args).status.code(), Some(0));
    }
    assert_eq!(fs::read(&o1).unwrap(), fs::read(&o2).unwrap());
    let csv = fs::read_to_string(&plot).unwrap();
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("# config: "));
    assert_eq!(lines.next().unwrap(), "segment,x,y,z");
    assert!(lines.count() > 100);
}

#[test]
fn direction_without_nu_derives_caustic() {
    let v = json(&hypb(&with_abc(&[
        "simulate",
        "--direction",
        "0,0.3,1",
        "--bounces",
        "4",
    ])));
    assert!(v["caustic"].is_number() || v["caustic"] == "infinity");
}

#[test]
fn resonant_caustic_is_runtime_error() {
    let o = hypb(&with_abc(&["simulate", "--nu", "6/7", "--bounces", "12"]));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(
        hypb(&["check", "--n", "3", "--table", "collared", "--a", "1", "--b", "-2", "--c", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hypb(&with_abc(&["check", "--n", "3", "--tolerance", "bogus=1"]))
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hypb(&with_abc(&["simulate"])).status.code(), Some(2));
    assert_eq!(
        hypb(&with_abc(&["check", "--n", "3", "--nu", "abc"]))
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn pell_exact_identity() {
    let o = hypb(&with_abc(&["pell", "--n", "4", "--nu", "6/7"]));
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(
        (v["exact"].clone(), v["verified"].clone()),
        (Value::Bool(true), Value::Bool(true))
    );
}

#[test]
fn pell_non_root_is_verification_failure() {
    assert_eq!(
        hypb(&with_abc(&["pell", "--n", "4", "--nu", "5/7"]))
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn rotation_tolerance_override() {
    let args = with_abc(&["rotation", "--nu", "4.75067", "--n", "3"]);
    assert_eq!(hypb(&args).status.code(), Some(4));
    let mut loose = args.clone();
    loose.extend(["--tolerance", "rho=1e-4"]);
    let o = hypb(&loose);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["n1"], 1);
    assert_eq!(v["config"]["tolerances"]["rho"], 1e-4);
}

#[test]
fn scan_csv_columns() {
    let o = hypb(&with_abc(&[
        "scan", "--nu-min", "-10", "--nu-max", "-1", "--steps", "4", "--n", "4",
    ]));
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[1], "nu,case,rho,n1,n,residual");
    assert_eq!(lines.len(), 6);
}

#[test]
fn census_collared_structure() {
    let v = json(&hypb(&["census", "--table", "collared", "--lambda", "3"]));
    assert_eq!(v["level"]["atom"], "C2");
    assert_eq!(v["gluing"][0][1], serde_json::json!([[0, 1], [1, 0]]));
    assert_eq!(v["atoms"].as_array().unwrap().len(), 3);
    assert_eq!(v["billiard_book"][0][1], "(12)(34)");
}

#[test]
fn census_numeric_agrees() {
    for t in ["collared", "transverse"] {
        let o = hypb(&["census", "--table", t, "--numeric", "--samples", "12"]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn threads_env_is_echoed() {
    let o = Command::new(env!("CARGO_BIN_EXE_hypb"))
        .args(["census", "--table", "transverse"])
        .env("HYPB_THREADS", "3")
        .output()
        .unwrap();
    let v = json(&o);
    #[cfg(feature = "parallel")]
    assert_eq!(v["config"]["threads"], 3);
    #[cfg(not(feature = "parallel"))]
    assert_eq!(v["config"]["threads"], 1);
}

#[test]
fn lightlike_pell_modes() {
    let o = hypb(&["pell", "--lightlike", "--a", "1", "--b", "3/2", "--c", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["identity_holds"], true);
    let o = hypb(&["pell", "--zolotarev", "--table", "transverse"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

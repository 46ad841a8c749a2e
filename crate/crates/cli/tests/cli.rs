use std::process::{Command, Output};

fn darboux(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_darboux"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn ladder_text() {
    let o = darboux(&[
        "ladder", "--depth", "2", "--branch", "minus", "--format", "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "f_1 = 1/2 - x\nf_2 = 3/2 + x^2/(1 - x)\n");

    let o = darboux(&["ladder", "--depth", "1", "--branch", "plus"]);
    assert_eq!(stdout(&o).trim(), "f_1 = 1/2 + x");
}

#[test]
fn ladder_json_schema() {
    let o = darboux(&["ladder", "--depth", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 3);
    assert_eq!(items[2]["j"], 3);
    assert_eq!(items[2]["beta"], "5/2");
    assert_eq!(items[2]["branch"], "minus");
    assert_eq!(items[2]["text"], "5/2 + (x^2 - x^3)/(3 - 3*x + x^2)");
    assert!(items[2]["f"]["num"].is_array() && items[2]["f"]["den"].is_array());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["ladder", "--depth", "0"][..],
        &["ladder", "--depth", "2", "--branch", "sideways"],
        &["verify", "--suite", "bessel"],
        &["factor", "--op", "D^2 +", "--g", "0"],
        &["factor", "--op", "x^2", "--g", "0"],
        &["factor", "--op", "D^2", "--g", "D"],
        &["bessel-compare", "--max-order", "10", "--grid", "0:5:10"],
        &["bessel-compare", "--max-order", "10", "--grid", "1:5"],
        &["frobnicate"],
    ] {
        assert_eq!(darboux(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn parse_errors_report_position() {
    let o = darboux(&["factor", "--op", "D^2 + )", "--g", "0"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("position 6"), "{err}");
}

#[test]
fn factor_examples() {
    let o = darboux(&["factor", "--op", "D^2 + (1/x)*D - 1/x^2", "--g", "1/x"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("Â = D^2 + 1/x*D - 4/x^2"),
        "{}",
        stdout(&o)
    );

    let o = darboux(&["factor", "--op", "D^2", "--g", "0"]);
    let out = stdout(&o);
    assert!(
        out.contains("Q = D\n") && out.contains("R = 0\n") && out.contains("Â = D^2"),
        "{out}"
    );

    let o = darboux(&["factor", "--op", "D^2+1", "--g", "0"]);
    let out = stdout(&o);
    assert!(
        out.contains("R = 1\n") && out.contains("not divisible"),
        "{out}"
    );
}

#[test]
fn cf_examples() {
    let o = darboux(&["cf", "--target", "bessel", "--depth", "3"]);
    assert_eq!(stdout(&o).trim(), "5/2 + x^2/(3 + x^2/(1 - x))");

    let o = darboux(&[
        "cf", "--target", "bessel", "--depth", "2", "--eval", "0.5", "--format", "csv",
    ]);
    assert_eq!(stdout(&o), "x,depth,value\n0.5,2,2.0\n");

    let o = darboux(&[
        "cf",
        "--target",
        "chebyshev",
        "--depth",
        "2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["text"], "-x - 1/((1 - 2*x^2)/x)");
    let collapsed =
        darboux_core::grammar::parse_function(v["collapsed"].as_str().unwrap()).unwrap();
    let expected = darboux_core::grammar::parse_function("x/(2*x^2 - 1) - x").unwrap();
    assert_eq!(collapsed, expected);
}

#[test]
fn cf_pole_reports_level() {
    let o = darboux(&["cf", "--target", "bessel", "--depth", "2", "--eval", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("level 1"));
}

#[test]
fn bessel_compare_csv() {
    let o = darboux(&["bessel-compare", "--max-order", "1", "--grid", "1:1:1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "j,x,ladder_value,bessel_value,abs_err");
    assert_eq!(lines.len(), 3);
    let err: f64 = lines[1].split(',').nth(4).unwrap().parse().unwrap();
    assert!(err <= 1e-12);
    assert!(lines[2].starts_with("# max_abs_err = "));
    for line in &lines[..2] {
        assert_eq!(line.split(',').count(), 5);
    }
}

#[test]
fn verify_exit_codes_and_json() {
    let o = darboux(&["verify", "--suite", "darboux", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suite"], "darboux");
    assert_eq!(v["overall"], "pass");
    let ids: Vec<&str> = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("darboux-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ladder.txt");
    let o = darboux(&["ladder", "--depth", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "f_1 = 1/2 - x\nf_2 = 3/2 + x^2/(1 - x)\n"
    );
    std::fs::remove_dir_all(dir).unwrap();
}

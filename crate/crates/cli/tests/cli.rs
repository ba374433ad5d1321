use std::process::{Command, Output};

fn frobq(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobq"))
        .args(args.split_whitespace())
        .output()
        .expect("binary runs")
}

fn stdout(args: &str) -> String {
    let out = frobq(args);
    assert!(out.status.success(), "{args}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn series_examples() {
    assert_eq!(stdout("series -k 2 -a 1 -N 3").trim(), "1 4 9");
    assert_eq!(stdout("series -k 1 -a 1/2 -N 5").trim(), "1 1 2 3 5");
    assert_eq!(stdout("series -k 4 -a 0 -N 2 --method all").trim(), "6 32");
}

#[test]
fn series_methods_agree() {
    let direct = stdout("series -k 3 -a 3/2 -N 8 --method direct");
    assert_eq!(stdout("series -k 3 -a 3/2 -N 8 --method decomp"), direct);
    assert_eq!(stdout("series -k 3 -a 3/2 -N 8 --method enumerate"), direct);
}

#[test]
fn series_json_record() {
    let line = stdout("series -k 2 -a 1 -N 3 --format json");
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(v["coeffs"], serde_json::json!(["1", "4", "9"]));
    assert_eq!(v["a"], "1");
}

#[test]
fn usage_errors_exit_two() {
    for args in ["series -k 2 -a 1/2 -N 3", "series -k 1 -a 1/3 -N 3", "series -k 1", "verify nonsense", "decompose -k 2 --render svg"] {
        assert_eq!(frobq(args).status.code(), Some(2), "{args}");
    }
}

#[test]
fn decompose_level_four() {
    let out = stdout("decompose -k 4");
    assert_eq!(
        out,
        "h[0] = θ_{1,0}²θ_{2,2} + θ_{1,1}²θ_{2,0}\nh[1] = 2θ_{1,0}θ_{1,1}θ_{2,1}\nh[2] = θ_{1,0}²θ_{2,0} + θ_{1,1}²θ_{2,2}\n"
    );
}

#[test]
fn decompose_central_forms() {
    assert_eq!(
        stdout("decompose -k 6 --simplify --central").trim(),
        "(θ_{1,0}³θ_{2,0}θ_{6,0} + θ_{1,0}³θ_{2,2}θ_{6,6} + 6θ_{1,0}θ_{1,1}²θ_{2,1}θ_{6,3})/(q;q)⁶"
    );
    assert_eq!(stdout("decompose -k 2 --render pochhammer --central").trim(), "(q²;q²)⁵/((q;q)⁴(q⁴;q⁴)²)");
}

#[test]
fn verify_suites_pass() {
    for suite in ["jtp", "lemmas --prec 30", "reconstruction --kmax 8 --prec 8", "formulas --prec 30", "congruences"] {
        let out = stdout(&format!("verify {suite}"));
        assert!(!out.contains("FAIL"), "{suite}:\n{out}");
    }
    assert!(stdout("verify congruences").contains("(conjectural)"));
}

#[test]
fn motzkin_examples() {
    assert_eq!(stdout("motzkin -k 2 -a 0 -n 0").trim(), "2");
    let out = stdout("motzkin -k 4 -a 0 -n 12 --depth 6 --format json");
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["guaranteed"], 4);
    assert!(v["agreed"].as_i64().unwrap() >= 4);
    assert_eq!(v["ok"], true);
}

#[test]
fn scan_finds_table_entries() {
    let out = stdout("scan -k 4 -a 0 --Amax 8 --Mmax 64 --nmax 399");
    for entry in ["(2,1,32)", "(4,3,64)", "(7,2,7*)"] {
        assert!(out.contains(entry), "missing {entry} in\n{out}");
    }
}

#[test]
fn scan_json_lines_parse() {
    let out = stdout("scan -k 4 -a 0 --Amax 4 --Mmax 64 --nmax 99 --format json");
    let claims: Vec<_> = out
        .lines()
        .map(|l| frobq_core::congruence::CongruenceClaim::from_json_line(l).unwrap())
        .collect();
    assert!(claims.len() >= 2);
}

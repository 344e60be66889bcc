use euler_periods_cli::dispatch;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["euler-periods".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = dispatch(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn zeta_two_at_seven_digits() {
    let (code, out, _) = run(&["zeta", "2", "--prec", "7"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1.644934 ± 1e-7\n");
}

#[test]
fn zeta_one_diverges() {
    let (code, out, err) = run(&["zeta", "1"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("diverge"), "{err}");
}

#[test]
fn g2_compare_display() {
    let (code, out, _) = run(&["g2-compare", "exp:2008", "th:2012"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "-1.05e-12 ± 0.82e-12");
}

#[test]
fn bernoulli_is_exact() {
    assert_eq!(run(&["bernoulli", "12"]).1, "-691/2730 ± 0\n");
    assert_eq!(run(&["bernoulli", "3"]).1, "0 ± 0\n");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["zeta", "2", "--prec", "0"]).0, 2);
    assert_eq!(run(&["zeta", "2", "--prec", "101"]).0, 2);
    assert_eq!(run(&["zeta", "two"]).0, 2);
    assert_eq!(run(&["mzv", "5,1"]).0, 2);
    assert_eq!(run(&["coact", "zeta_m(2"]).0, 2);
    assert_eq!(run(&["g2-compare", "exp:2008", "nope"]).0, 2);
    assert_eq!(run(&["period"]).0, 2);
    assert_eq!(run(&["period", "--named", "bubble", "--samples", "1"]).0, 2);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("g2-invert-alpha"));
}

#[test]
fn numeric_commands() {
    assert_eq!(
        run(&["mzv", "3,5", "--prec", "20"]).1,
        "0.037707672984847544011 ± 1e-20\n"
    );
    assert!(run(&["gamma", "--method", "zeta-series", "--prec", "10"])
        .1
        .starts_with("0.5772156649"));
    assert!(run(&["phi", "1", "--prec", "10"]).1.starts_with("0.6931471806"));
    assert!(run(&["polylog", "2", "1/2", "--prec", "10"])
        .1
        .starts_with("0.5822405265"));
    assert!(run(&["multiphi", "1", "1"]).1.starts_with("-0.58224"));
    assert!(run(&["per", "zm(3)", "--prec", "12"])
        .1
        .starts_with("1.20205690316"));
}

#[test]
fn checks_report_holds() {
    let (code, out, _) = run(&["stuffle-check", "2", "3", "--prec", "20"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("holds\n"));
    let (code, out, _) = run(&["identity-check", "euler-product", "2", "--prime-bound", "1000"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, _) = run(&["identity-check", "dilog-reflection", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn symbolic_commands() {
    let (_, out, _) = run(&["coact", "zeta_m(3)"]);
    assert_eq!(out, "1 ⊗ zeta_m(3) + zeta_u(3) ⊗ 1\n");
    let (_, out, _) = run(&["conjugates", "zeta_m(3)"]);
    assert!(out.ends_with("dimension 2\n"));
    assert_eq!(run(&["per", "Li_m(2; z)"]).0, 2);
}

#[test]
fn g2_commands() {
    let (code, out, _) = run(&["g2-invert-alpha", "exp:2008", "--prec", "10"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("137.0359991"), "{out}");
    let (code, out, _) = run(&["g2-assemble", "--order", "2", "--prec", "9"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("1.1596374"), "{out}");
    assert_eq!(run(&["g2-assemble", "--order", "5"]).0, 2);
    let (_, out, _) = run(&["registry-list"]);
    assert_eq!(out.lines().count(), 16);
}

#[test]
fn registry_override() {
    let dir = std::env::temp_dir().join(format!("ep-reg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("reg.json");
    std::fs::write(
        &path,
        r#"[{"label": "x", "value": "1e-3", "uncertainty_components": ["3e-12"], "year": 2000, "source_eq": "t"},
            {"label": "y", "value": "1.000000004e-3", "uncertainty_components": ["4e-12"], "year": 2001, "source_eq": "t"}]"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["registry-list", "--registry", p]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
    let (_, out, _) = run(&["g2-compare", "y", "x", "--registry", p]);
    assert_eq!(out.trim(), "0.40e-11 ± 0.50e-11");
    std::fs::write(&path, "[{\"label\": \"x\"}]").unwrap();
    assert_eq!(run(&["registry-list", "--registry", p]).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = ["period", "--named", "bubble", "--samples", "20000", "--seed", "7"];
    assert_eq!(run(&args), run(&args));
    assert_ne!(
        run(&args).1,
        run(&["period", "--named", "bubble", "--samples", "20000", "--seed", "8"]).1
    );
    let z = ["zeta", "3", "--prec", "40"];
    assert_eq!(run(&z), run(&z));
}

#[test]
fn json_contains_plain_lines() {
    for args in [
        vec!["zeta", "2", "--prec", "12"],
        vec!["g2-compare", "exp:2008", "th:2012"],
        vec!["conjugates", "zeta_m(2)*zeta_m(3)"],
        vec![
            "period",
            "--named",
            "bubble",
            "--samples",
            "10000",
            "--snap-zeta",
            "2",
        ],
    ] {
        let (code, plain, _) = run(&args);
        assert_eq!(code, 0);
        let mut j = args.clone();
        j.push("--json");
        let (code, doc, _) = run(&j);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&doc).unwrap();
        let lines: Vec<&str> = v["lines"]
            .as_array()
            .unwrap()
            .iter()
            .map(|l| l.as_str().unwrap())
            .collect();
        assert_eq!(lines, plain.lines().collect::<Vec<_>>());
    }
    let (code, doc, _) = run(&["zeta", "1", "--json"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&doc).unwrap();
    assert_eq!(v["exit_code"], 2);
}

#[test]
fn selftest_passes() {
    let (code, out, _) = run(&["selftest", "--samples", "100000"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 4);
}

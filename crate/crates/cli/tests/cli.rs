use grext_cli::run;

fn fixture(name: &str) -> String {
    format!("{}/../core/fixtures/{name}.pres", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn check_2d_on_mixed() {
    let r = run(["grext", "check", "2d", "--d", "4", &fixture("mixed_r"), "--json"]);
    assert_eq!(r.code, 1);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["witness"], serde_json::json!({"i": 3, "j": 6}));
    assert_eq!(v["imax"], 6);
    assert_eq!(v["jmax"], 12);
    assert_eq!(v["field"]["p"], 32003);
}

#[test]
fn gb_on_mixed() {
    let r = run(["grext", "gb", &fixture("mixed_r"), "--json"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["complete"], true);
    assert_eq!(v["elements"].as_array().unwrap().len(), 5);
}

#[test]
fn outputs_are_stable() {
    for args in [vec!["betti", "--json"], vec!["betti"], vec!["check", "k2"], vec!["hilbert"]] {
        let mut a = vec!["grext".to_string()];
        a.extend(args.iter().map(|s| s.to_string()));
        a.push(fixture("eight_gen"));
        let first = run(a.clone());
        assert_eq!(first, run(a));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(["grext", "check", "koszul", &fixture("polynomial2")]).code, 0);
    assert_eq!(run(["grext", "check", "dkoszul", "--d", "4", &fixture("mixed_r")]).code, 2);
    assert_eq!(run(["grext", "check", "almost-linear", "--d", "3", &fixture("z4")]).code, 2);
    assert_eq!(run(["grext", "betti", "/nonexistent.pres"]).code, 4);
    assert_eq!(run(["grext", "frobnicate"]).code, 4);
    assert_eq!(run(["grext", "betti", &fixture("z4"), "--field", "12"]).code, 4);
    assert_eq!(run(["grext", "--help"]).code, 0);
}

#[test]
fn parse_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.pres");
    std::fs::write(&path, "field 32003\ngenerators x\nrelations\nx + x^2\n").unwrap();
    let r = run(["grext", "betti", path.to_str().unwrap()]);
    assert_eq!(r.code, 4);
    assert!(r.stderr.contains("bad.pres:4:"), "{}", r.stderr);
}

#[test]
fn anngraph_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z4.dot");
    let r = run(["grext", "anngraph", &fixture("z4"), "--dot", path.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("i,j,dim,certified\n"));
    let dot = std::fs::read_to_string(path).unwrap();
    assert!(dot.contains("\"z\" -> \"z^3\";") && dot.contains("\"z^3\" -> \"z\";"));
    assert_eq!(run(["grext", "anngraph", &fixture("polynomial2")]).code, 2);
}

#[test]
fn freeprod_and_rationals() {
    let r = run(["grext", "freeprod", &fixture("z4"), &fixture("z4")]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("generators z z'"));
    let a = run(["grext", "betti", &fixture("mixed_r")]);
    let b = run(["grext", "betti", &fixture("mixed_r"), "--field", "Q"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn modres_and_certify() {
    let r = run(["grext", "modres", &fixture("monomial_pair")]);
    assert_eq!(r.stdout, "i,j,dim,certified\n0,0,1,true\n1,3,1,true\n");
    assert_eq!(run(["grext", "certify-k2", &fixture("monomial_pair")]).code, 0);
    assert_eq!(run(["grext", "certify-k2", &fixture("xyx")]).code, 2);
}

use std::io::Write;

use distinction_cli::{run, Outcome, EXIT_FAIL, EXIT_OK, EXIT_UNIVERSE, EXIT_USAGE};
use distinction_core::json::{CLASSIFY_SCHEMA, STRATA_SCHEMA};
use serde_json::Value;
use tempfile::NamedTempFile;

const COUNTER: &str = "
tower triv { degree 1; gamma 0; }
tower rho2 { degree 2; tau self; dual self; gamma 1; }
";

const SWEEP: &str = "
tower T { degree 1; gamma 0; }
tower S { degree 1; dual -> S2; }
tower S2 { degree 1; dual -> S; }
";

fn universe_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("distinction").chain(args.iter().copied()))
}

fn with_universe(u: &NamedTempFile, args: &[&str]) -> Outcome {
    let path = u.path().to_str().unwrap().to_string();
    let mut v = vec!["--universe", path.as_str()];
    v.extend_from_slice(args);
    cli(&v)
}

fn json_of(o: &Outcome) -> Value {
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

fn validate(schema: &str, v: &Value) {
    let schema: Value = serde_json::from_str(schema).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{v:#}");
}

#[test]
fn counter_example_is_neither() {
    let u = universe_file(COUNTER);
    let start = std::time::Instant::now();
    let o = with_universe(
        &u,
        &[
            "--format",
            "json",
            "classify",
            "--mode",
            "standard",
            "--pi",
            "Delta(triv,0,0)+Delta(rho2,0,0)",
        ],
    );
    assert!(start.elapsed().as_secs_f64() < 1.0);
    let v = json_of(&o);
    assert_eq!(v["report"]["dist"], "NO");
    assert_eq!(v["report"]["eta"], "NO");
    assert_eq!(v["report"]["trace"][0]["rule"], "FIRST-DIR");
    validate(CLASSIFY_SCHEMA, &v);
}

#[test]
fn text_and_json_agree() {
    let u = universe_file(SWEEP);
    let inputs = [
        "Delta(T,0,2)+Delta(T,-2,0)",
        "Delta(T,-1,1)+Delta(T,-1,1)",
        "Delta(T,-1,1)",
        "Delta(S,0,1)+Delta(S2,-1,0)",
        "Delta(T,3,4)+Delta(T,2,3)+Delta(T,-3,-2)+Delta(T,-4,-3)",
        "1",
    ];
    for pi in inputs {
        for mode in ["auto", "standard"] {
            let v = json_of(&with_universe(
                &u,
                &["--format", "json", "classify", "--mode", mode, "--pi", pi],
            ));
            validate(CLASSIFY_SCHEMA, &v);
            let text = with_universe(&u, &["classify", "--mode", mode, "--pi", pi]).stdout;
            let dist = format!("dist: {}", v["report"]["dist"].as_str().unwrap());
            let eta = format!("eta:  {}", v["report"]["eta"].as_str().unwrap());
            assert!(text.contains(&dist) && text.contains(&eta), "{pi}: {text}");
        }
    }
}

#[test]
fn strata_json_validates() {
    let u = universe_file(COUNTER);
    for pi in [
        "Delta(triv,0,1)+Delta(triv,0,0)",
        "Delta(rho2,0,1)+Delta(rho2,-1,0)",
        "Delta(rho2,0,0)+Delta(triv,0,1)",
    ] {
        let v = json_of(&with_universe(
            &u,
            &["--format", "json", "strata", "--pi", pi],
        ));
        validate(STRATA_SCHEMA, &v);
        let sum: u64 = v["strata"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s["hom_bound"].as_u64().unwrap())
            .sum();
        assert_eq!(v["mult_one_bound"].as_u64().unwrap(), sum);
    }
}

#[test]
fn derivatives_flag_the_empty_member() {
    let u = universe_file(SWEEP);
    let v = json_of(&with_universe(
        &u,
        &["--format", "json", "derivatives", "--pi", "Delta(T,0,1)"],
    ));
    let members = v["members"].as_array().unwrap();
    assert_eq!(members.len(), 2);
    assert_eq!(members.iter().filter(|m| m["empty"] == true).count(), 1);
    let text = with_universe(&u, &["derivatives", "--pi", "Delta(T,0,1)"]).stdout;
    assert!(text.contains("(empty)"));
}

#[test]
fn decompose_and_dual() {
    let u = universe_file(SWEEP);
    let v = json_of(&with_universe(
        &u,
        &[
            "--format",
            "json",
            "decompose",
            "--pi",
            "Delta(T,3,4)+Delta(T,2,3)+Delta(T,-3,-2)+Delta(T,-4,-3)",
        ],
    ));
    assert_eq!(v["proper_parts"].as_array().unwrap().len(), 2);
    let v = json_of(&with_universe(
        &u,
        &[
            "--format",
            "json",
            "dual",
            "--pi",
            "Delta(S,0,1)+Delta(S2,-1,0)",
        ],
    ));
    assert_eq!(v["conjugate_selfdual"], true);
    let v = json_of(&with_universe(
        &u,
        &["--format", "json", "dual", "--pi", "Delta(S,0,1)"],
    ));
    assert_eq!(v["conjugate_selfdual"], false);
}

#[test]
fn exit_codes() {
    let u = universe_file(SWEEP);
    assert_eq!(with_universe(&u, &["classify"]).code, EXIT_USAGE);
    assert_eq!(
        with_universe(&u, &["classify", "--pi", "Delta(bogus,0,0)"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        with_universe(&u, &["classify", "--pi", "Delta(T,0,1/2)"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        with_universe(&u, &["classify", "--pi", "Delta(T,0"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        with_universe(
            &u,
            &[
                "classify",
                "--mode",
                "ladder",
                "--pi",
                "Delta(T,0,0)+Delta(S,0,0)"
            ]
        )
        .code,
        EXIT_USAGE
    );
    assert_eq!(
        cli(&["--universe", "/nonexistent/u.txt", "classify", "--pi", "1"]).code,
        EXIT_USAGE
    );
    assert_eq!(cli(&["no-such-command"]).code, EXIT_USAGE);
    assert_eq!(cli(&["--help"]).code, EXIT_OK);

    let bad = universe_file("tower t { degree 0; }");
    let o = with_universe(&bad, &["classify", "--pi", "1"]);
    assert_eq!(o.code, EXIT_UNIVERSE);
    assert!(o.stderr.contains("degree must be ≥ 1"));
    let bad = universe_file("tower t { degree 1; }");
    assert_eq!(
        with_universe(&bad, &["classify", "--pi", "1"]).code,
        EXIT_UNIVERSE
    );
    let bad = universe_file("tower t { degree 1 gamma 0; }");
    let o = with_universe(&bad, &["classify", "--pi", "1"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("1:20"), "{}", o.stderr);

    let empty = universe_file("");
    assert_eq!(
        with_universe(&empty, &["classify", "--pi", "1"]).code,
        EXIT_OK
    );
}

#[test]
fn corpus_is_reproducible() {
    let a = cli(&["corpus", "--seed", "42", "--count", "50"]);
    let b = cli(&["corpus", "--seed", "42", "--count", "50"]);
    let c = cli(&["corpus", "--seed", "43", "--count", "50"]);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(a.stdout.lines().count(), 50);
    let v = json_of(&cli(&[
        "--format", "json", "corpus", "--seed", "42", "--count", "50",
    ]));
    let texts: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["text"].as_str().unwrap())
        .collect();
    assert_eq!(texts, a.stdout.lines().collect::<Vec<_>>());
}

#[test]
fn small_checks_pass() {
    let o = cli(&[
        "check",
        "key-lemma",
        "--max-segments",
        "2",
        "--max-span",
        "2",
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    assert!(o.stdout.ends_with("PASS\n"));
    let o = cli(&[
        "--format", "json", "check", "deriv", "--corpus", "200", "--seed", "5",
    ]);
    let v = json_of(&o);
    assert_eq!(v["verdict"], "PASS");
    let u = universe_file(COUNTER);
    let o = with_universe(
        &u,
        &[
            "check",
            "key-lemma",
            "--max-segments",
            "2",
            "--max-span",
            "1",
        ],
    );
    assert_eq!(o.code, EXIT_OK);
    assert_ne!(o.code, EXIT_FAIL);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_distinction");
    let u = universe_file(COUNTER);
    let out = std::process::Command::new(bin)
        .args([
            "--universe",
            u.path().to_str().unwrap(),
            "classify",
            "--pi",
            "Delta(rho2,-1,1)",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).contains("eta:  YES"));
    let out = std::process::Command::new(bin)
        .args(["classify", "--pi", "Delta("])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
}

use circlang::cli::{run, EXIT_NO_SOLUTION, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Output {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn cli(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("circlang").chain(args.iter().copied()), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn partition_prints_groups() {
    let o = cli(&["partition", "--n", "10", "--r", "3", "--k", "4", "--mode", "removal"]);
    assert_eq!(o.code, EXIT_OK);
    let v = o.json();
    assert_eq!(v["groups"], serde_json::json!([[4, 5, 8], [3, 7, 10], [1, 2, 6, 9]]));
    assert_eq!(v["balanced"], true);
    assert!(v.get("trace").is_none());

    let o = cli(&["partition", "--n", "12", "--r", "3", "--k", "4", "--mode", "non-removal", "--trace"]);
    assert_eq!(o.code, EXIT_OK);
    let v = o.json();
    assert_eq!(v["groups"], serde_json::json!([[1, 4, 5, 9], [2, 6, 8, 10], [3, 7, 11, 12]]));
    assert!(v["trace"]["swaps"].is_array());

    assert_eq!(cli(&["partition", "--n", "3", "--r", "5", "--k", "1"]).code, EXIT_USAGE);
    assert_eq!(cli(&["partition", "--n", "3", "--r", "1", "--k", "1", "--mode", "sideways"]).code, EXIT_USAGE);
}

#[test]
fn josephus_and_conventions() {
    let o = cli(&["josephus", "--n", "30", "--k", "9", "--count", "15"]);
    assert_eq!(o.code, EXIT_OK);
    let v = o.json();
    assert_eq!(v["removed"].as_array().unwrap()[..3], [9, 18, 27]);
    assert_eq!(v["survivors"].as_array().unwrap().len(), 15);
    let skip = cli(&["josephus", "--n", "12", "--k", "3", "--convention", "skip-k"]).json();
    let count = cli(&["josephus", "--n", "12", "--k", "4"]).json();
    assert_eq!(skip["removed"], count["removed"]);
    assert_eq!(cli(&["josephus", "--n", "0", "--k", "3"]).code, EXIT_USAGE);
}

#[test]
fn arrangement_and_step() {
    let v = cli(&["solve-arrangement", "--first", "15", "--second", "15", "--k", "9"]).json();
    assert_eq!(v["runs"], serde_json::json!([4, 5, 2, 1, 3, 1, 1, 2, 2, 3, 1, 2, 2, 1]));
    assert_eq!(v["leading"], "first");

    let o = cli(&["solve-step", "--pattern", "4,5,2,1,3,1,1,2,2,3,1,2,2,1", "--k-max", "30"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.json()["steps"], serde_json::json!([9]));

    // k = 1 removes position 1 first, so it only works when that seat is second class
    let o = cli(&["solve-step", "--pattern", "1,1", "--k-max", "1"]);
    assert_eq!(o.code, EXIT_NO_SOLUTION);
    assert_eq!(o.json()["steps"], serde_json::json!([]));
    let o = cli(&["solve-step", "--pattern", "1,1", "--leading", "second", "--k-max", "1"]);
    assert_eq!(o.json()["steps"], serde_json::json!([1]));
    assert_eq!(cli(&["solve-step", "--pattern", "1,x", "--k-max", "3"]).code, EXIT_USAGE);
}

#[test]
fn grl_and_count() {
    let v = cli(&["grl", "--text", "We burden."]).json();
    assert_eq!(v["letters"], "WEBURDEN");
    assert_eq!(v["pattern"], serde_json::json!([2, 4, 2]));
    assert_eq!(v["runs"][1]["class"], "curved");
    assert_eq!(v["abstract"], serde_json::json!([[1, 2], [2, 4], [1, 2]]));

    let cases = [("surjective", "150"), ("stirling", "25"), ("all", "243"), ("balanced", "90")];
    for (kind, want) in cases {
        let n = if kind == "balanced" { "6" } else { "5" };
        let o = cli(&["count", "--n", n, "--r", "3", "--kind", kind]);
        assert_eq!(o.code, EXIT_OK, "{kind}");
        assert_eq!(o.json()["value"], want, "{kind}");
    }
    assert_eq!(cli(&["count", "--n", "2", "--r", "3", "--kind", "balanced"]).code, EXIT_USAGE);
}

#[test]
fn sentence_checks_set_exit_codes() {
    let o = cli(&["check-sentence", "--text", "WE BURDEN", "--pattern", "2,4,2", "--alphabet", "english"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.json()["matches"], true);
    let o = cli(&["check-sentence", "--text", "WE BURDEN", "--pattern", "2,4,1", "--verbose"]);
    assert_eq!(o.code, EXIT_NO_SOLUTION);
    assert_eq!(o.json()["first_mismatch"], 3);
    assert!(o.stderr.contains("first differing run: 3"));
    assert_eq!(cli(&["check-sentence", "--text", "x"]).code, EXIT_USAGE);
}

#[test]
fn custom_alphabet_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ab.json");
    std::fs::write(&path, r#"{"classes": {"A": ["a", "b"], "B": ["c", "d"]}}"#).unwrap();
    let p = path.to_str().unwrap();
    let o = cli(&["check-sentence", "--text", "aa-c-ab", "--pattern", "2,1,2", "--alphabet", p]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let o = cli(&["check-sentence", "--text", "aa", "--pattern", "2", "--alphabet", "/nonexistent.json"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("nonexistent"));
}

#[test]
fn find_sentence_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let grammar = dir.path().join("g.txt");
    let dict = dir.path().join("d.txt");
    std::fs::write(&grammar, "S -> W W\nW -> \"we\" | \"burden\" | \"no\" | \"odd\"\n").unwrap();
    std::fs::write(&dict, "# four words\nwe\nburden\nno\nodd\n").unwrap();
    let (g, d) = (grammar.to_str().unwrap(), dict.to_str().unwrap());

    let o = cli(&["find-sentence", "--pattern", "2,4,2", "--grammar", g, "--dictionary", d, "--verbose"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v = o.json();
    assert_eq!(v["sentence"], serde_json::json!(["WE", "BURDEN"]));
    assert_eq!(v["spelled"], "WEBURDEN");
    assert_eq!(v["t"][1], serde_json::json!({"letters": "BDRU", "class": "curved", "k": 4}));
    assert!(o.stderr.contains("lattice parses"));

    let o = cli(&["find-sentence", "--pattern", "3", "--grammar", g]);
    assert_eq!(o.code, EXIT_NO_SOLUTION);
    assert_eq!(o.json(), serde_json::json!({"solution": null}));

    let o = cli(&["find-sentence", "--pattern", "2,4,2", "--grammar", g, "--mode", "exhaustive", "--cap", "100"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("candidate cap"));

    std::fs::write(&grammar, "S -> T\n").unwrap();
    assert_eq!(cli(&["find-sentence", "--pattern", "2", "--grammar", g]).code, EXIT_USAGE);
}

#[test]
fn render_circle_writes_deterministic_svg() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for path in [&a, &b] {
        let o = cli(&["render-circle", "--text", "WE BURDEN", "--out", path.to_str().unwrap()]);
        assert_eq!(o.code, EXIT_OK);
        assert_eq!(o.json()["positions"], 8);
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 4);
    assert_eq!(svg.matches("<rect").count(), 4);

    let hist = dir.path().join("h.svg");
    let o = cli(&[
        "render-circle",
        "--text",
        "THAT SOURCE: ADVANCED CLASS RESULTS.",
        "--out",
        hist.to_str().unwrap(),
        "--annotate-elimination",
        "k=9,count=15",
    ]);
    assert_eq!(o.code, EXIT_OK);
    let v = o.json();
    assert_eq!(v["positions"], 30);
    assert_eq!(v["removed"].as_array().unwrap()[..3], [9, 18, 27]);
    let svg = std::fs::read_to_string(&hist).unwrap();
    assert_eq!(svg.matches("font-size=\"10\"").count(), 15);

    let single = dir.path().join("s.svg");
    let o = cli(&["render-circle", "--text", "A", "--out", single.to_str().unwrap()]);
    assert_eq!(o.json()["positions"], 1);

    let o = cli(&["render-circle", "--text", "...", "--out", single.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_USAGE);
    let o = cli(&["render-circle", "--text", "AB", "--out", single.to_str().unwrap(), "--annotate-elimination", "k=2"]);
    assert_eq!(o.code, EXIT_USAGE);
    let o = cli(&["render-circle", "--text", "AB", "--out", "/nonexistent/dir/x.svg"]);
    assert_eq!(o.code, EXIT_USAGE);
}

#[test]
fn usage_and_help() {
    assert_eq!(cli(&[]).code, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_USAGE);
    let o = cli(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("find-sentence"));
}

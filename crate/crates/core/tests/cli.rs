//! End-to-end tests of the `eorder` binary: exact JSON lines and exit codes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::TempDir;

fn eorder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eorder"))
        .args(args)
        .output()
        .expect("run eorder")
}

fn eorder_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_eorder"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn eorder");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("wait eorder")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Asserts the exit code and returns stdout.
fn expect(args: &[&str], code: i32) -> String {
    let o = eorder(args);
    assert_eq!(
        o.status.code(),
        Some(code),
        "eorder {args:?}\nstdout: {}\nstderr: {}",
        stdout(&o),
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn json(line: &str) -> Value {
    serde_json::from_str(line.trim()).unwrap_or_else(|e| panic!("bad JSON {line:?}: {e}"))
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Self {
            dir: TempDir::new().unwrap(),
        }
    }

    fn write(&self, name: &str, contents: &str) -> String {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path.to_string_lossy().into_owned()
    }
}

#[test]
fn compare_examples() {
    assert_eq!(
        expect(&["compare", "even", "nminus:1", "--prefix-len", "100"], 0),
        "{\"f_le_g\":true,\"g_le_f\":true,\"equiv\":true,\"fail_at\":null}\n"
    );
    assert_eq!(
        expect(&["compare", "inline", "1 3 2", "inline", "1 2 3"], 0),
        "{\"f_le_g\":false,\"g_le_f\":true,\"equiv\":false,\"fail_at\":[2,3]}\n"
    );
    assert_eq!(
        expect(&["compare", "inline", "2 4", "inline", "2 4"], 0),
        "{\"f_le_g\":true,\"g_le_f\":true,\"equiv\":true,\"fail_at\":null}\n"
    );
    // Only g ≤ f fails: the witness comes from that direction.
    assert_eq!(
        expect(&["compare", "inline:1 2 3", "inline:1 3 2"], 0),
        "{\"f_le_g\":true,\"g_le_f\":false,\"equiv\":false,\"fail_at\":[2,3]}\n"
    );
}

#[test]
fn compare_input_errors_exit_2() {
    expect(&["compare", "inline", "1 2", "inline", "1 2 3"], 2);
    expect(&["compare", "inline", "1 1", "inline", "1 2"], 2);
    expect(&["compare", "inline", "1 2"], 2);
    expect(&["compare", "odd", "even"], 2);
    expect(&["compare", "file:/nonexistent/x", "even"], 2);
    expect(&["compare", "inline"], 2);
}

#[test]
fn verify_examples() {
    let out = expect(&["verify", "--property", "lemma-2-8", "--n", "4"], 0);
    assert_eq!(
        out,
        "{\"property\":\"lemma-2-8\",\"n\":4,\"instances\":576,\"violations\":[],\"pass\":true}\n"
    );
    let out = expect(&["verify", "--property", "all", "--n", "4"], 0);
    let reports: Vec<Value> = out.lines().map(json).collect();
    assert_eq!(reports.len(), 9);
    assert!(reports.iter().all(|r| r["pass"] == Value::Bool(true)));
    expect(&["verify", "--property", "bogus"], 2);
    expect(&["verify", "--property", "transitive", "--n", "5"], 2);
    expect(&["verify", "--property", "reflexive", "--n", "9"], 2);
}

#[test]
fn decide_examples() {
    let fx = Fixture::new();
    let paired = fx.write("pair.txt", "1 4 2 6\n2 6 4 8\nm=1\n");
    assert_eq!(
        expect(&["decide", "--paired", &paired, "--x", "5"], 0),
        "{\"x\":5,\"result\":\"out\",\"descent\":[4,2]}\n"
    );
    assert_eq!(
        expect(&["decide", "--paired", &paired, "--x", "4"], 0),
        "{\"x\":4,\"result\":\"in\",\"descent\":[]}\n"
    );
    assert_eq!(
        expect(&["decide", "--paired", &paired, "--x", "100"], 3),
        "{\"x\":100,\"result\":\"insufficient\",\"descent\":[]}\n"
    );
    let bad = fx.write("bad.txt", "1 6 2 8\n2 6 4 8\nm=1\n");
    let o = eorder(&["decide", "--paired", &bad, "--x", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("rank alignment"));
}

#[test]
fn pairing_commands() {
    let made = expect(
        &[
            "pair-make",
            "--sample",
            "elements=2 4 6 8; bound=9",
            "--m",
            "1",
            "--pattern",
            "1 3 2 4",
        ],
        0,
    );
    assert_eq!(made, "{\"f\":[1,4,2,6],\"g\":[2,6,4,8],\"m\":1}\n");
    let text = expect(
        &[
            "pair-make",
            "--format",
            "text",
            "--sample",
            "elements=2 4 6 8; bound=9",
            "--m",
            "1",
            "--pattern",
            "1 3 2 4",
        ],
        0,
    );
    assert_eq!(text, "1 4 2 6\n2 6 4 8\nm=1\n");

    // Both forms feed back into the pairing commands.
    let fx = Fixture::new();
    for (name, doc) in [("p.json", made.as_str()), ("p.txt", text.as_str())] {
        let path = fx.write(name, doc);
        assert_eq!(
            expect(&["pred", "--paired", &path, "--a", "6"], 0),
            "{\"a\":6,\"predecessor\":4}\n"
        );
        assert_eq!(
            expect(&["descent", "--paired", &path, "--a", "8"], 0),
            "{\"a\":8,\"descent\":[6,4,2]}\n"
        );
    }
    expect(
        &[
            "pair-make",
            "--sample",
            "elements=2 4; bound=4",
            "--m",
            "1",
            "--pattern",
            "2 1",
        ],
        2,
    );
    expect(
        &["pred", "--paired", "inline:1 4 2 6;2 6 4 8;m=1", "--a", "5"],
        2,
    );
    assert_eq!(
        expect(
            &["pred", "--paired", "inline:1 4 2 6;2 6 4 8;m=1", "--a", "2"],
            0
        ),
        "{\"a\":2,\"predecessor\":1}\n"
    );
}

#[test]
fn listing_commands() {
    assert_eq!(expect(&["pattern", "6 2 4"], 0), "{\"pattern\":[3,1,2]}\n");
    assert_eq!(
        expect(&["inversions", "inline", "3 1 2"], 0),
        "{\"inversions\":[[1,2],[1,3]],\"count\":2}\n"
    );
    assert_eq!(
        expect(&["lookup", "6 2 4", "--value", "4"], 0),
        "{\"value\":4,\"position\":3}\n"
    );
    expect(&["lookup", "6 2 4", "--value", "5"], 2);
    assert_eq!(
        expect(&["transport", "6 2 4", "2 4 6", "2 3 4"], 0),
        "{\"result\":[4,2,3]}\n"
    );
    expect(&["transport", "6 2 5", "2 4 6", "2 3 4"], 2);
    assert_eq!(
        expect(&["ascending", "--sample", "elements=9 2 5; bound=9"], 0),
        "{\"prefix\":[2,5,9]}\n"
    );
}

#[test]
fn lemma8_command() {
    let out = expect(&["lemma8", "inline", "1 2 3", "inline", "2 1 3"], 0);
    let v = json(&out);
    assert_eq!(v["clause1"], json("{\"fpos\":1,\"gpos\":2,\"holds\":true}"));
    assert_eq!(v["clause2"][0]["premise_held"], Value::Bool(false));
    assert_eq!(v["all_hold"], Value::Bool(true));
    expect(&["lemma8", "inline", "2 1", "inline", "1 2"], 2);
}

#[test]
fn chain_commands() {
    assert_eq!(
        expect(&["chain-make", "--n", "3"], 0),
        "{\"chain\":[[3,2,1],[3,1,2],[2,1,3],[1,2,3]]}\n"
    );
    let text = expect(&["chain-make", "--n", "2", "--format", "text"], 0);
    assert_eq!(text, "2 1\n1 2\n");
    expect(&["chain-make", "--n", "0"], 2);

    let fx = Fixture::new();
    let repeat = fx.write("c.txt", "2 1 3\n1 2 3\n1 2 3\n");
    assert_eq!(
        expect(&["stabilize", &repeat], 0),
        "{\"length\":3,\"repeat\":[2,3]}\n"
    );
    let made = expect(&["chain-make", "--n", "4"], 0);
    let o = eorder_stdin(&["stabilize", "-"], &made);
    assert_eq!(stdout(&o), "{\"length\":7,\"repeat\":null}\n");
    let ascent = fx.write("up.txt", "1 2\n2 1\n");
    expect(&["stabilize", &format!("file:{ascent}")], 2);
}

#[test]
fn family_command() {
    assert_eq!(
        expect(&["family", "--sample", "elements=2 4 6 8; bound=9", "--n", "2"], 0),
        "{\"family\":[{\"elements\":[4,6,8],\"bound\":9},{\"elements\":[1,4,6,8],\"bound\":9},{\"elements\":[1,2,4,6,8],\"bound\":9}]}\n"
    );
    let text = expect(
        &[
            "family",
            "--sample",
            "elements=2 4; bound=4",
            "--n",
            "1",
            "--format",
            "text",
        ],
        0,
    );
    assert_eq!(text, "elements=2 4; bound=4\nelements=1 2 4; bound=4\n");
    expect(
        &["family", "--sample", "elements=2 4; bound=4", "--n", "5"],
        2,
    );
}

#[test]
fn enumerate_output_is_accepted_everywhere() {
    let fx = Fixture::new();
    let json_out = expect(&["enumerate", "halt:collatz", "--prefix-len", "6"], 0);
    assert_eq!(
        json_out,
        "{\"spec\":\"halt:collatz\",\"prefix\":[1,2,4,3,5,8]}\n"
    );
    let text_out = expect(
        &[
            "enumerate",
            "halt:collatz",
            "--prefix-len",
            "6",
            "--format",
            "text",
        ],
        0,
    );
    assert_eq!(text_out, "1 2 4 3 5 8\n");
    for (name, doc) in [("e.json", &json_out), ("e.txt", &text_out)] {
        let path = format!("file:{}", fx.write(name, doc));
        assert_eq!(
            expect(&["pattern", &path], 0),
            "{\"pattern\":[1,2,4,3,5,6]}\n"
        );
        assert_eq!(
            expect(&["inversions", &path], 0),
            "{\"inversions\":[[3,4]],\"count\":1}\n"
        );
        assert_eq!(
            expect(&["compare", &path, "asc:1,2,3,4,5,8"], 0),
            "{\"f_le_g\":false,\"g_le_f\":true,\"equiv\":false,\"fail_at\":[3,4]}\n"
        );
        assert_eq!(
            expect(&["lookup", &path, "--value", "3"], 0),
            "{\"value\":3,\"position\":4}\n"
        );
        expect(&["transport", &path, &path, &path], 0);
        expect(&["lemma8", "asc:1,2,3,4,5,8", &path], 0);
        assert!(expect(&["compare", "inline", doc, &path], 0).contains("\"equiv\":true"));
        let o = eorder_stdin(&["pattern", "-"], doc);
        assert_eq!(stdout(&o), "{\"pattern\":[1,2,4,3,5,6]}\n");
    }
}

#[test]
fn budget_shortens_halting_prefixes() {
    assert_eq!(
        expect(
            &[
                "enumerate",
                "halt:collatz",
                "--prefix-len",
                "100",
                "--budget",
                "12"
            ],
            0
        ),
        "{\"spec\":\"halt:collatz\",\"prefix\":[1,2,4,3,5,8]}\n"
    );
    assert_eq!(
        expect(&["enumerate", "halt:collatz", "--budget", "0"], 0),
        "{\"spec\":\"halt:collatz\",\"prefix\":[]}\n"
    );
    // 32 closed-form values against a 6-value halting prefix.
    expect(&["compare", "even", "halt:collatz", "--budget", "12"], 2);
}

#[test]
fn text_format_is_supported_everywhere() {
    let fx = Fixture::new();
    let paired = fx.write("pair.txt", "1 4 2 6\n2 6 4 8\nm=1\n");
    let chain = fx.write("c.txt", "2 1\n1 2\n");
    let cases: Vec<Vec<&str>> = vec![
        vec!["compare", "even", "nminus:1"],
        vec!["pattern", "3 1 2"],
        vec!["inversions", "3 1 2"],
        vec!["lookup", "3 1 2", "--value", "1"],
        vec!["transport", "3 1 2", "1 2 3", "4 5 6"],
        vec!["stabilize", &chain],
        vec!["chain-make", "--n", "3"],
        vec!["lemma8", "1 2 3", "2 1 3"],
        vec![
            "pair-make",
            "--sample",
            "elements=2 4; bound=4",
            "--m",
            "1",
            "--pattern",
            "1 2",
        ],
        vec!["pred", "--paired", &paired, "--a", "8"],
        vec!["descent", "--paired", &paired, "--a", "8"],
        vec!["decide", "--paired", &paired, "--x", "3"],
        vec!["family", "--sample", "elements=2; bound=2", "--n", "1"],
        vec!["ascending", "--sample", "elements=2; bound=2"],
        vec!["enumerate", "even", "--prefix-len", "3"],
        vec!["verify", "--property", "reflexive", "--n", "3"],
    ];
    for mut args in cases {
        let as_json = expect(&args, 0);
        args.extend(["--format", "text"]);
        let out = expect(&args, 0);
        assert!(!out.is_empty(), "{args:?}");
        assert_ne!(out, as_json, "{args:?}");
    }
}

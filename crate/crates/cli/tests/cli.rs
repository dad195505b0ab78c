use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_demazure"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn type_d_product() {
    let o = run(&[
        "product",
        "-f",
        "d",
        "-n",
        "5",
        "[2,-4,-1,5,3]",
        "[-4,3,-5,-1,-2]",
        "--method",
        "hopping",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[-1,-3,-4,-2,5]");
}

#[test]
fn methods_agree() {
    for method in ["hopping", "oracle"] {
        let o = run(&[
            "product",
            "-f",
            "d",
            "2 -4 -1 5 3",
            "-4 3 -5 -1 -2",
            "--method",
            method,
        ]);
        assert_eq!(stdout(&o).trim(), "[-1,-3,-4,-2,5]", "{method}");
    }
    let o = run(&[
        "product",
        "-f",
        "b",
        "[-5,3,1,-2,4]",
        "[-4,2,-1,-3,5]",
        "--method",
        "unfolded",
    ]);
    assert_eq!(stdout(&o).trim(), "[-2,-5,-1,-3,-4]");
    let o = run(&[
        "product", "-f", "a", "[2,1,3]", "[3,1,2]", "--method", "plain",
    ]);
    assert_eq!(stdout(&o).trim(), "[3,2,1]");
}

#[test]
fn identity_is_neutral() {
    let o = run(&["product", "-f", "d", "-n", "5", "id", "[2,-4,-1,5,3]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[2,-4,-1,5,3]");
}

#[test]
fn trace_uses_arrows_and_skips_empty_hops() {
    let o = run(&["trace", "-f", "a", "6 5 4 1 7 2 3", "5 4 3 6 2 1 7"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "[7,1,4,2,5,6,3]");
    assert_eq!(lines[1], "  --h_{1,[6,5,4]}--> [7,4,5,2,6,1,3]");
    assert_eq!(lines[5], "  --h_{5,[6]}--> [7,6,5,4,2,1,3]");
    assert_eq!(lines[6], "[7,6,5,4,2,1,3]");
    assert_eq!(lines.len(), 7);
}

#[test]
fn verify_reports_counts() {
    let o = run(&["verify", "-f", "d", "-n", "4", "--suite", "main-theorem"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("36864/36864 pairs OK"));
}

#[test]
fn verify_prints_counterexample_and_exits_one() {
    let o = run(&["verify", "-f", "b", "-n", "2", "--suite", "main-theorem"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("62/64 pairs OK"));
    assert!(text.contains("w = [-1,2], v = [-2,-1]"));
    assert!(text.contains("oracle   [-1,-2]"));
    assert!(text.contains("h_{1,[-1,2,-2]}"));
}

#[test]
fn sampled_verify_is_reproducible() {
    let args = [
        "verify", "-f", "d", "-n", "4", "--suite", "hopneg", "--sample", "40", "--seed", "7",
        "--json",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["suite"], "hopneg");
    assert_eq!(doc["checked"], doc["passed"]);
}

#[test]
fn json_product_round_trips() {
    let o = run(&[
        "product",
        "-f",
        "d",
        "[2,-4,-1,5,3]",
        "[-4,3,-5,-1,-2]",
        "--json",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let product = doc["product"].to_string();
    assert_eq!(product, "[-1,-3,-4,-2,5]");
    let again = run(&["product", "-f", "d", &product, "id", "--json"]);
    let doc2: serde_json::Value = serde_json::from_slice(&again.stdout).unwrap();
    assert_eq!(doc2["product"], doc["product"]);
}

#[test]
fn decompose_and_lift() {
    let o = run(&["decompose", "-f", "d", "[2,-4,-1,5,3]"]);
    assert_eq!(
        stdout(&o),
        "Q_4 = s_5s_4 (form 2)\nQ_3 = s_3s_5 (form 3)\nQ_2 = id (form 0)\nQ_1 = s_1s_2s_3s_5s_4s_3 (form 2, j = 3)\n"
    );
    let o = run(&["lift", "-f", "d", "[2,-4,-1,5,3]", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["1"].to_string(), "[2,-4,5,3,-3,-5]");
    assert_eq!(doc["3"].to_string(), "[-4,5]");
    assert_eq!(doc["4"].to_string(), "[5,-5]");
}

#[test]
fn enumerate_lists_the_group() {
    let o = run(&["enumerate", "-f", "d", "-n", "3"]);
    assert_eq!(stdout(&o).lines().count(), 24);
    assert!(stdout(&o).starts_with("[1,2,3]\t0\tid\n"));
}

#[test]
fn bad_input_exits_two() {
    let cases: [&[&str]; 5] = [
        &["product", "-f", "d", "[1,-2]", "id"],
        &[
            "product", "-f", "d", "-n", "5", "id", "id", "--method", "unfolded",
        ],
        &["product", "-f", "a", "[1,2", "id"],
        &["product", "-f", "q", "[1]", "[1]"],
        &["verify", "-f", "a", "-n", "3", "--suite", "nonsense"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

use zonotodd::cli::run_captured;
use zonotodd::document::{Payload, ResultDocument};

fn args(line: &str) -> Vec<String> {
    std::iter::once("zonotodd").chain(line.split_whitespace()).map(String::from).collect()
}

#[test]
fn exit_codes() {
    let cases = [
        ("check-tu -m 1,0,1;0,1,1", 0),
        ("count -m 1,0,1;0,1,1 --u 2,3", 0),
        ("verify -m 1,0,1;0,1,1 --suite dims", 0),
        ("frobnicate", 2),
        ("count -m 1,x", 2),
        ("count -m 1,0,1;0,1,1 --u 1/2,1", 2),
        ("count -m 1,-1 --u 0", 3),
        ("internal -m 1,1;2,2", 3),
    ];
    for (line, expected) in cases {
        let (code, out, err) = run_captured(args(line));
        assert_eq!(code, expected, "{line}: {err}");
        if code == 0 {
            assert!(err.is_empty(), "{line}: {err}");
            let doc = ResultDocument::from_json(&out).unwrap();
            assert_eq!(doc.to_json(), out, "{line}");
        } else {
            assert!(out.is_empty() && !err.is_empty(), "{line}");
        }
    }
}

#[test]
fn count_document() {
    let (code, out, _) = run_captured(args("count -m 1,0,1;0,1,1 --u 4,2"));
    assert_eq!(code, 0);
    let doc = ResultDocument::from_json(&out).unwrap();
    assert_eq!(doc.command, "count");
    assert_eq!(doc.result, Payload::Count { point: vec![4, 2], count: 3 });
}

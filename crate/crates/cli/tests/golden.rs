//! Byte-exact comparison of command output against files in `corpus/golden`.
//! Run with `CHIPFIRE_BLESS=1` to rewrite them.

use std::path::PathBuf;
use std::process::Command;

const CASES: &[(&str, &str, &[&str], i32)] = &[
    ("annulus.analyze", "annulus.json", &["analyze"], 0),
    ("annulus.critgroup", "annulus.json", &["critgroup", "-i", "1"], 0),
    ("annulus.pseudo", "annulus.json", &["pseudo"], 0),
    ("diamond.analyze", "diamond.json", &["analyze"], 0),
    ("diamond.equivalent", "diamond.json", &["equivalent", "--to", "[1,0,0,1,0]"], 0),
    ("diamond.hilbert", "diamond.json", &["hilbert", "-i", "1"], 0),
    ("diamond.winnable", "diamond.json", &["winnable", "--expect-winnable"], 0),
    ("klein.analyze", "klein.json", &["analyze"], 0),
    ("klein.critgroup", "klein.json", &["critgroup", "-i", "1"], 0),
    ("klein.hilbert", "klein.json", &["hilbert", "-i", "1"], 0),
    ("klein.pseudo", "klein.json", &["pseudo"], 0),
    ("path.analyze", "path.json", &["analyze"], 0),
    ("path.mindeg", "path.json", &["mindeg", "-i", "0"], 0),
    ("rp2.analyze", "rp2.json", &["analyze"], 0),
    ("rp2.critgroup", "rp2.json", &["critgroup", "-i", "1", "--representatives"], 0),
    ("rp2.forests", "rp2.json", &["forests", "-i", "2"], 0),
    ("rp2.homology", "rp2.json", &["homology", "-i", "1"], 0),
    ("rp2.winnable", "rp2.json", &["winnable", "--expect-unwinnable"], 0),
    ("rp2.winnable2", "rp2.json", &["winnable", "--chain", "[2,-2,0,0,0,2,0,0,0,0,0,0,0,0,0]", "--expect-winnable"], 0),
    ("seventeen.analyze", "seventeen.json", &["analyze"], 0),
    ("seventeen.degree", "seventeen.json", &["degree"], 0),
    ("seventeen.forests", "seventeen.json", &["forests", "-i", "3"], 0),
    ("seventeen.homology", "seventeen.json", &["homology", "-i", "2"], 0),
    ("seventeen.winnable", "seventeen.json", &["winnable", "--expect-winnable"], 1),
    ("simplex3.analyze", "simplex3.json", &["analyze"], 0),
    ("simplex3.hilbert", "simplex3.json", &["hilbert", "-i", "2"], 0),
    ("simplex3.realize", "simplex3.json", &["degree", "-i", "2", "--realize", "[0,0,0,1]"], 0),
    ("simplex6.analyze", "simplex6.json", &["analyze"], 0),
    (
        "simplex6.reduced",
        "simplex6.json",
        &["reduced", "-i", "2", "--faces", "[[1,2,3],[1,2,6],[1,3,4],[1,4,5],[1,5,6],[2,3,5],[2,4,5],[2,4,6],[3,4,6],[3,5,6]]"],
        0,
    ),
    ("staco.analyze", "staco.json", &["analyze"], 0),
    ("staco.degree", "staco.json", &["degree"], 0),
    ("staco.hilbert", "staco.json", &["hilbert", "-i", "1"], 0),
    ("staco.winnable", "staco.json", &["winnable"], 0),
    ("staco.xset", "staco.json", &["xset"], 0),
    ("tetra.analyze", "tetra.json", &["analyze"], 0),
    ("tetra.critgroup", "tetra.json", &["critgroup", "-i", "1", "--representatives"], 0),
    ("tetra.forests", "tetra.json", &["forests", "-i", "2"], 0),
    ("tetra.hilbert", "tetra.json", &["hilbert", "-i", "1"], 0),
    ("tetra.mindeg", "tetra.json", &["mindeg", "-i", "1"], 0),
    ("tetra.pseudo", "tetra.json", &["pseudo"], 0),
    ("tetra.winnable", "tetra.json", &["winnable", "--expect-winnable"], 1),
    ("triangle-graph.analyze", "triangle-graph.json", &["analyze"], 0),
    ("triangle-graph.forests", "triangle-graph.json", &["forests", "-i", "1"], 0),
    ("triangle-graph.mindeg", "triangle-graph.json", &["mindeg", "-i", "0"], 0),
    ("triangle.analyze", "triangle.json", &["analyze"], 0),
    ("triangle.pseudo", "triangle.json", &["pseudo"], 0),
    ("triangle.winnable", "triangle.json", &["winnable"], 0),
    ("two-triangles.analyze", "two-triangles.json", &["analyze"], 0),
    ("two-triangles.critgroup", "two-triangles.json", &["critgroup", "-i", "0", "--representatives"], 0),
    ("two-triangles.hilbert", "two-triangles.json", &["hilbert", "-i", "0"], 0),
];

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn every_corpus_file_has_a_golden_case() {
    let mut files: Vec<String> = std::fs::read_dir(corpus())
        .unwrap()
        .filter_map(|e| {
            let name = e.unwrap().file_name().into_string().unwrap();
            name.ends_with(".json").then_some(name)
        })
        .collect();
    files.sort();
    for f in files {
        assert!(CASES.iter().any(|c| c.1 == f), "{f} has no golden case");
    }
}

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("CHIPFIRE_BLESS").is_some();
    let dir = corpus().join("golden");
    let mut failures = Vec::new();
    for (name, file, args, code) in CASES {
        let out = Command::new(env!("CARGO_BIN_EXE_chipfire"))
            .current_dir(corpus())
            .args(args.iter())
            .arg(file)
            .output()
            .unwrap();
        assert_eq!(
            out.status.code(),
            Some(*code),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let path = dir.join(format!("{name}.json"));
        if bless {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let want = std::fs::read(&path).unwrap_or_default();
        if want != out.stdout {
            failures.push(format!(
                "{name}\n  want {}\n  got  {}",
                String::from_utf8_lossy(&want).trim(),
                String::from_utf8_lossy(&out.stdout).trim()
            ));
        }
    }
    assert!(failures.is_empty(), "golden mismatches:\n{}", failures.join("\n"));
}

use std::fs;
use std::process::{Command, Output};

use cwd_core::encoder::{encode, Encoding};
use cwd_core::graph::enumerate_connected;
use cwd_core::solver::{solve_embedded, solve_external, SolverConfig};

fn cwd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cwd")).args(args).env_remove("CWD_SAT_SOLVER").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn named_graphs() {
    let o = cwd(&["cwd", "--named", "petersen"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cwd = 5"));
    let o = cwd(&["cwd", "--named", "paley", "--param", "13"]);
    assert!(stdout(&o).contains("cwd = 9"), "{}", stdout(&o));
}

#[test]
fn edgeless_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("empty.txt");
    fs::write(&p, "n 6\n").unwrap();
    let o = cwd(&["cwd", "--graph", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cwd = 1"));
}

#[test]
fn encode_counts() {
    let dir = tempfile::tempdir().unwrap();
    for (name, vars) in [("petersen", 1040), ("chvatal", 1800)] {
        let out = dir.path().join(format!("{name}.cnf"));
        let o = cwd(&["encode", "--named", name, "-k", "4", "-o", out.to_str().unwrap()]);
        assert!(stdout(&o).starts_with(&format!("{vars} variables")), "{}", stdout(&o));
        let text = fs::read_to_string(&out).unwrap();
        let header = text.lines().find(|l| l.starts_with("p cnf")).unwrap();
        let declared: usize = header.split_whitespace().nth(3).unwrap().parse().unwrap();
        let clause_lines = text.lines().filter(|l| !l.starts_with('c') && !l.starts_with('p')).count();
        assert_eq!(declared, clause_lines);
        assert!(header.contains(&format!(" {vars} ")));
    }
}

#[test]
fn certificates_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c5.json");
    let cert_s = cert.to_str().unwrap();
    let o = cwd(&["cwd", "--named", "cycle", "--param", "5", "--certificate", cert_s, "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = cwd(&["verify", "--certificate", cert_s]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("certificate verified"));

    // Same graph minus one edge. A derivation can model several graphs, so
    // the expression check is the one that must notice.
    let g = dir.path().join("p5.txt");
    fs::write(&g, "0 1\n1 2\n2 3\n3 4\n").unwrap();
    let o = cwd(&["verify", "--certificate", cert_s, "--graph", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL verify_expression: edge 0-4 is extra"), "{}", stdout(&o));

    let text = fs::read_to_string(&cert).unwrap();
    let expr_line = text.lines().find(|l| l.contains("\"expression\"")).unwrap();
    let tampered_line = expr_line.replacen("1(", "9(", 1);
    assert_ne!(expr_line, tampered_line);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, text.replace(expr_line, &tampered_line)).unwrap();
    let o = cwd(&["verify", "--certificate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL verify_expression"));
}

#[test]
fn timeouts_exit_with_two() {
    let o = cwd(&["cwd", "--named", "petersen", "--strategy", "up", "--timeout", "0.001"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stdout(&o).contains("inconclusive"));
}

#[test]
fn errors_exit_with_one() {
    assert_eq!(cwd(&["cwd", "--named", "no-such-graph"]).status.code(), Some(1));
    assert_eq!(cwd(&["cwd", "--named", "petersen", "--timeout", "0"]).status.code(), Some(1));
}

#[test]
fn external_solver_matches_embedded() {
    let cfg = SolverConfig::new(format!("{} {{cnf}}", env!("CARGO_BIN_EXE_cwd-sat")));
    for n in 2..=4 {
        for g in enumerate_connected(n).unwrap() {
            for k in 2..=n {
                for enc in [Encoding::Direct, Encoding::Representative] {
                    let inst = encode(&g, k, n - k + 1, enc).unwrap();
                    assert_eq!(solve_embedded(&inst).verdict, solve_external(&inst, &cfg).verdict);
                }
            }
        }
    }
}

#[test]
fn external_solver_through_the_cli() {
    let solver = format!("{} {{cnf}}", env!("CARGO_BIN_EXE_cwd-sat"));
    let o = cwd(&["cwd", "--named", "prism", "--solver", &solver]);
    assert!(stdout(&o).contains("cwd = 4"), "{}", stdout(&o));
    let o = cwd(&["cwd", "--named", "path", "--param", "4", "--solver", "embedded"]);
    assert!(stdout(&o).contains("cwd = 3"));
}

#[test]
fn survey_and_sweep_csv() {
    let o = cwd(&["survey", "-n", "4", "-n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# cwd-survey/1"));
    assert_eq!(lines[2], "4,6,1,0,1,0,0,0,0");
    assert_eq!(lines[3], "5,21,4,0,4,0,0,0,0");

    let o = cwd(&["sweep", "-n", "6", "--p-grid", "0.5", "--samples", "2", "--seed", "3"]);
    let text = stdout(&o);
    assert!(text.contains("6,0,2,1.0000,"), "{text}");
    assert!(text.contains("6,1,2,2.0000,"), "{text}");
    assert_eq!(text, stdout(&cwd(&["sweep", "-n", "6", "--p-grid", "0.5", "--samples", "2", "--seed", "3"])));
}

#[test]
fn graph6_stream_survey() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("four.g6");
    // P4 and C4.
    fs::write(&p, "Ch\nCr\n").unwrap();
    let o = cwd(&["survey", "--graph6-stream", p.to_str().unwrap()]);
    assert!(stdout(&o).lines().any(|l| l == "4,2,1,0,1,0,0,0,0"), "{}", stdout(&o));
}

#[test]
fn catalog_listing() {
    let o = cwd(&["catalog", "--list"]);
    let rows = stdout(&o).lines().filter(|l| l.split_whitespace().count() == 4).count();
    assert!(rows > 18);
    let o = cwd(&["catalog", "--show", "petersen"]);
    let s = stdout(&o);
    assert!(s.contains("vertices: 10") && s.contains("edges: 15") && s.contains("reference cwd: 5"));
}

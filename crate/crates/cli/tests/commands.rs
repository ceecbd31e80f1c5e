use std::io::{empty, Cursor};

use phi_graph_cli::{run, CommandResult, EXIT_FALSE, EXIT_OK, EXIT_RUNTIME, EXIT_USAGE};

fn phigraph(args: &str) -> CommandResult {
    let argv: Vec<&str> = std::iter::once("phigraph").chain(args.split_whitespace()).collect();
    run(&argv, &mut empty())
}

fn phigraph_stdin(args: &str, input: &str) -> CommandResult {
    let argv: Vec<&str> = std::iter::once("phigraph").chain(args.split_whitespace()).collect();
    run(&argv, &mut Cursor::new(input.as_bytes()))
}

#[test]
fn phi_of_twenty() {
    let r = phigraph("phi 20");
    assert_eq!((r.exit_code, r.stdout.as_str()), (EXIT_OK, "8\n"));
}

#[test]
fn invphi_lists_preimages() {
    assert_eq!(phigraph("invphi 2").stdout, "3 4 6\n");
    assert_eq!(phigraph("invphi 14").stdout, "\n");
    assert_eq!(phigraph("invphi 4 --brute 100").stdout, "5 8 10 12\n");
    assert_eq!(phigraph("invphi 6 --json").stdout, "[7,9,14,18]\n");
}

#[test]
fn chain_reports_length_and_sum() {
    assert_eq!(phigraph("chain 15").stdout, "15 8 4 2 1\nR 4\nPhi 15\n");
    assert_eq!(
        phigraph("chain 9 --json").stdout,
        "{\"n\":9,\"chain\":[9,6,2,1],\"R\":3,\"Phi\":9}\n"
    );
}

#[test]
fn build_accepts_both_seed_forms() {
    let a = phigraph("build 3,7,11,20");
    let b = phigraph("build 3 7 11 20");
    assert_eq!(a, b);
    assert!(a.stdout.starts_with("{\"vertices\":[1,2,3,4,6,7,8,10,11,20]"));
    let dot = phigraph("build 3,7,11,20 --dot").stdout;
    assert!(dot.starts_with("graph G {") && dot.contains("20 -- 8;"));
}

#[test]
fn leaves_and_minimal_seed() {
    assert_eq!(phigraph("leaves 3,7,11,20").stdout, "1 3 7 11 20\n");
    assert_eq!(phigraph("seed-min 3,7,11,20,8,2").stdout, "3 7 11 20\n");
    assert_eq!(phigraph("leaves 1").exit_code, EXIT_RUNTIME);
}

#[test]
fn recognize_exit_codes() {
    let refuted = phigraph("recognize --family star:5");
    assert_eq!(refuted.exit_code, EXIT_FALSE);
    assert!(refuted.stdout.contains("\"verdict\":\"refuted\""));
    let realized = phigraph("recognize --family star:4");
    assert_eq!(realized.exit_code, EXIT_OK);
    assert!(realized.stdout.contains("\"minimal_seed\":[3,4,6]"));
    let exhausted = phigraph("recognize --family path:40 --budget 1");
    assert_eq!(exhausted.exit_code, EXIT_RUNTIME);
    assert!(exhausted.stdout.contains("budget_exceeded"));
}

#[test]
fn usage_errors() {
    for args in [
        "",
        "phi",
        "phi 0",
        "phi x",
        "recognize",
        "recognize --family star:0",
        "generate nonsense:3",
        "build 1,,2",
        "build 0",
        "ptn --upto 0",
    ] {
        let r = phigraph(args);
        assert_eq!(r.exit_code, EXIT_USAGE, "`{args}`: {r:?}");
        assert!(r.stdout.is_empty() && !r.stderr.is_empty(), "`{args}`");
    }
    assert_eq!(phigraph("--help").exit_code, EXIT_OK);
}

#[test]
fn malformed_tree_input_is_a_usage_error() {
    let r = phigraph_stdin("recognize --tree -", "0 1\n1 2\n2 0\n");
    assert_eq!(r.exit_code, EXIT_USAGE);
    let r = phigraph("recognize --tree /nonexistent/tree.txt");
    assert_eq!(r.exit_code, EXIT_USAGE);
}

#[test]
fn overflow_is_a_runtime_error() {
    assert_eq!(phigraph("invphi 4294967296").exit_code, EXIT_RUNTIME);
}

#[test]
fn generate_and_known_seed() {
    assert_eq!(phigraph("generate path:3").stdout, phigraph("generate path:3").stdout);
    assert_eq!(phigraph("known-seed star:4").stdout, "1,2,3,4,6\n");
    let none = phigraph("known-seed banana:1x6");
    assert_eq!(none.exit_code, EXIT_FALSE);
    assert!(none.stdout.is_empty());
}

#[test]
fn ptn_listing() {
    assert_eq!(phigraph("ptn --upto 100").stdout, "3 9 15 27 39 81\n");
}

#[test]
fn output_is_deterministic() {
    for args in ["recognize --family alkane:5", "build 100,200,300 --dot", "generate nanostar:d2 --dot"] {
        assert_eq!(phigraph(args), phigraph(args), "{args}");
    }
}

#[test]
fn dot_round_trip_matches_family_verdict() {
    for spec in [
        "star:4",
        "star:5",
        "centipede:4",
        "banana:1x6",
        "corona:path:2,m=4",
        "alkane:4",
        "isomer:neopentane",
    ] {
        let dot = phigraph(&format!("generate {spec} --dot"));
        assert_eq!(dot.exit_code, EXIT_OK);
        let piped = phigraph_stdin("recognize --tree -", &dot.stdout);
        let direct = phigraph(&format!("recognize --family {spec}"));
        assert_eq!(piped.exit_code, direct.exit_code, "{spec}");
        let verdict = |s: &str| s.split(',').next().unwrap().to_string();
        assert_eq!(verdict(&piped.stdout), verdict(&direct.stdout), "{spec}");
    }
}

#[test]
fn verify_paper_passes() {
    let r = phigraph("verify-paper");
    assert_eq!(r.exit_code, EXIT_OK, "{}", r.stdout);
    assert_eq!(r.stdout.lines().filter(|l| l.starts_with("PASS")).count(), 11);
    assert!(r.stdout.ends_with("11 passed, 0 failed\n"));
}

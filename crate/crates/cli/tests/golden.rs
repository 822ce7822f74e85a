mod common;

use common::{check_case, run_tfa, CASES};

#[test]
fn documented_examples_match_golden_files() {
    for case in CASES {
        check_case(case, 2).unwrap();
    }
}

#[test]
fn quotient_prints_z2() {
    let (out, code) = run_tfa(&["quotient", "G3.grp", "A3.grp"], false, 1);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "Z/2\n");
}

#[test]
fn si_search_certifies_g2() {
    let (out, code) = run_tfa(&["si-search", "G2.grp", "--height", "3"], false, 1);
    let text = String::from_utf8(out).unwrap();
    assert_eq!(code, 0);
    assert!(text.starts_with("NoWitnessFound"));
    assert!(text.contains("certified: strongly indecomposable"));
}

#[test]
fn split_g1_is_exact() {
    let (out, code) = run_tfa(&["split", "G1.grp", "--basis", "(1,0);(0,1)", "--partition", "1|2"], true, 1);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["result"]["split"]["outcome"], "exact_split");
    assert_eq!(v["status"], "definite");
}

#[test]
fn errors_exit_with_one() {
    assert_eq!(run_tfa(&["member", "G3.grp", "(1,2,3)"], false, 1).1, 1);
    assert_eq!(run_tfa(&["member", "missing.grp", "(1,2)"], false, 1).1, 1);
    assert_eq!(run_tfa(&["no-such-command"], false, 1).1, 1);
    assert_eq!(run_tfa(&["member", "bad_prime.grp", "(1,0)"], false, 1).1, 1);
}

#[test]
fn scope_limited_answers_exit_with_two() {
    let (_, code) = run_tfa(&["regulating", "G3.grp", "--height", "2"], false, 1);
    assert_eq!(code, 2);
}

#[test]
fn printed_groups_parse_back() {
    let dir = common::data_dir();
    for f in ["G1.grp", "G2.grp", "G3.grp", "A3.grp", "Z2.grp"] {
        let text = std::fs::read_to_string(dir.join(f)).unwrap();
        for named in tfa_core::text::parse_groups(&text).unwrap() {
            let printed = tfa_core::text::print_group(&named.name, &named.group);
            let back = tfa_core::text::parse_groups(&printed).unwrap();
            assert!(back[0].group.equals(&named.group));
        }
    }
}

#[test]
fn every_command_runs() {
    let cases: &[(&[&str], i32)] = &[
        (&["member", "G3.grp", "(1/2,0)"], 0),
        (&["type", "G2.grp", "(3,3)"], 0),
        (&["purify", "G3.grp", "(1,1)", "--oracle"], 0),
        (&["basis-check", "G3.grp", "--basis", "(1,0);(0,1)"], 0),
        (&["minmul", "G3.grp", "(1/4,0);(0,1/7)"], 0),
        (&["brep", "G3.grp", "--basis", "(1,0);(0,1)", "(1/2,1/2)"], 0),
        (&["decompose", "G1.grp", "--height", "1"], 0),
        (&["iso", "G1.grp", "--basis", "(1,0);(0,1)", "--partition", "1|2", "--other-basis", "(1,0);(0,2)", "--other-partition", "2|1"], 0),
        (&["aut-check", "G3.grp", "--matrix", "-1,0;0,-1", "--summands", "A3_summands.grp"], 0),
        (&["aut-check", "G3.grp", "--matrix", "2,0;0,2"], 0),
        (&["lift", "G3.grp", "A3_summands.grp"], 0),
        (&["lift", "G3.grp", "A3_summands.grp", "--blocks", "1"], 0),
        (&["si-check", "G2.grp", "--basis", "(1,0);(0,1)"], 0),
        (&["verify", "G3.grp"], 0),
        (&["verify", "--count", "4", "--profile", "acd", "--seed", "9"], 0),
    ];
    for (args, code) in cases {
        let (out, got) = run_tfa(args, false, 2);
        assert_eq!(got, *code, "{args:?}: {}", String::from_utf8_lossy(&out));
        let (json, _) = run_tfa(args, true, 2);
        let v: serde_json::Value = serde_json::from_slice(&json).unwrap();
        assert_eq!(v["command"], args[0]);
    }
}

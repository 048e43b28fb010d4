use std::process::{Command, Output};

use sollab::bijection::{phi, BaseKind, Decomposition, MoveTrace};
use sollab::involution::{psi, OrbitTable, PsiOutcome, ThetaOutcome, WeightedPair};
use sollab::registry::{ReportVerdict, VerificationReport};
use sollab::Partition;

fn sollab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sollab"))
        .args(args)
        .env_remove("SOLLAB_ORDER")
        .output()
        .expect("run sollab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = sollab(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

#[test]
fn phi_trace_text_ends_on_the_worked_example() {
    let o = sollab(&["trace", "--map", "phi", "--kind", "main:2,2", "--mu", "1,4", "--eta", "4,4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[lines.len() - 2], "2, [4, 5], [6, 7], 11");
    assert_eq!(lines[lines.len() - 1], "= 2+4+5+6+7+11");

    // every snapshot line replays the stored trace
    let (_, trace) = phi("MAIN(2,2)".parse().unwrap(), &p(&[1, 4]), &p(&[4, 4])).unwrap();
    let snaps: Vec<String> = std::iter::once(trace.start.to_string())
        .chain(trace.steps.iter().map(|s| s.snapshot.to_string()))
        .collect();
    let shown: Vec<&str> = lines.iter().copied().filter(|l| !l.starts_with("  ") && !l.starts_with('=')).collect();
    assert_eq!(shown, snaps);
}

#[test]
fn phi_trace_json_round_trips() {
    let v = json(&["trace", "--map", "phi", "--kind", "main:2,2", "--mu", "1,4", "--eta", "4,4"]);
    let trace: MoveTrace = serde_json::from_value(v["trace"].clone()).unwrap();
    let (lambda, want) = phi("MAIN(2,2)".parse().unwrap(), &p(&[1, 4]), &p(&[4, 4])).unwrap();
    assert_eq!(trace, want);
    assert_eq!(serde_json::from_value::<Partition>(v["partition"].clone()).unwrap(), lambda);
    assert_eq!(serde_json::from_value::<BaseKind>(v["kind"].clone()).unwrap(), "MAIN(2,2)".parse().unwrap());
}

#[test]
fn phi_inverse_json_round_trips() {
    let v = json(&["trace", "--map", "phi-inv", "--kind", "ka:3,1", "--partition", "2,3,4,5,7,8,9,11"]);
    let d: Decomposition = serde_json::from_value(v).unwrap();
    assert_eq!(d.kind.to_string(), "KA(3,1,2,2)");
    let (lambda, _) = phi(d.kind, &d.mu, &d.eta).unwrap();
    assert_eq!(lambda, p(&[2, 3, 4, 5, 7, 8, 9, 11]));
}

#[test]
fn psi_pairs_at_18() {
    let o = sollab(&["pairs", "--map", "psi", "--n", "18"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n = 18: 5 fixed points, 25 pairs\n"));
    let t: OrbitTable<Partition> = serde_json::from_value(json(&["pairs", "--map", "psi", "--n", "18"])).unwrap();
    assert_eq!((t.fixed.len(), t.pairs.len()), (5, 25));
    assert_eq!(t, sollab::involution::psi_orbits(18).unwrap());
}

#[test]
fn theta_pairs_and_trace_round_trip() {
    let t: OrbitTable<WeightedPair> = serde_json::from_value(json(&["pairs", "--map", "theta", "--n", "6"])).unwrap();
    assert_eq!((t.fixed.len(), t.pairs.len()), (4, 12));
    let out: ThetaOutcome = serde_json::from_value(json(&["trace", "--map", "theta", "--pair", "1,2x|3"])).unwrap();
    assert_eq!(out.output.to_string(), "(1x, 2+3)");
    assert_eq!(sollab::involution::theta(&out.input).unwrap(), out);
}

#[test]
fn psi_trace_round_trips() {
    let out: PsiOutcome = serde_json::from_value(json(&["trace", "--map", "psi", "--partition", "1,4,13"])).unwrap();
    assert_eq!(out, psi(&p(&[1, 4, 13])).unwrap());
    assert_eq!(out.output, p(&[1, 1, 3, 13]));
}

#[test]
fn rr_trace() {
    let o = sollab(&["trace", "--map", "rr", "--partition", "1,4,7,9"]);
    assert!(stdout(&o).lines().any(|l| l == "(4, 0+1+2+2)"));
    let v = json(&["trace", "--map", "rr", "--partition", "1,4,7,9"]);
    assert_eq!(v["n"], 4);
    assert_eq!(serde_json::from_value::<Partition>(v["iota"].clone()).unwrap(), p(&[1, 2, 2]));
}

#[test]
fn verify_au2_is_equal() {
    let o = sollab(&["verify", "--id", "au2", "--order", "60", "--mode", "series"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("EQUAL"));
    let reports: Vec<VerificationReport> = serde_json::from_value(json(&["verify", "--id", "au2", "--fast"])).unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r.verdict == ReportVerdict::Equal));
    assert_eq!(reports[0].order, 30);
}

#[test]
fn order_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_sollab"))
        .args(["--json", "verify", "--id", "rr1", "--mode", "series"])
        .env("SOLLAB_ORDER", "17")
        .output()
        .unwrap();
    let reports: Vec<VerificationReport> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(reports[0].order, 17);
}

#[test]
fn report_to_file() {
    let path = std::env::temp_dir().join(format!("sollab-cli-{}.json", std::process::id()));
    let o = sollab(&["--json", "--out", path.to_str().unwrap(), "enumerate", "--n", "10", "--family", "od"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["count"], 2);
    let parts: Vec<Partition> = serde_json::from_value(v["partitions"].clone()).unwrap();
    assert_eq!(parts, vec![p(&[1, 9]), p(&[3, 7])]);
}

#[test]
fn enumerate_with_params() {
    let v = json(&["enumerate", "--n", "12", "--family", "dka", "--params", "3,1"]);
    let got: Vec<Partition> = serde_json::from_value(v["partitions"].clone()).unwrap();
    let want: Vec<Partition> = sollab::enumerate(12, &sollab::Family::DKa { k: 3, a: 1 }.into()).unwrap().collect();
    assert_eq!(got, want);
}

#[test]
fn ferrers_rows() {
    let o = sollab(&["ferrers", "--partition", "1,3,4"]);
    assert_eq!(stdout(&o), "####\n###\n#\n");
}

#[test]
fn usage_errors_exit_2_and_name_the_flag() {
    for args in [
        &["verify", "--id", "nope"][..],
        &["trace", "--map", "psi"],
        &["trace", "--map", "psi", "--partition", "3,1"],
        &["trace", "--map", "psi", "--partition", "1,2"],
        &["enumerate", "--n", "5", "--family", "dka", "--params", "1,3"],
        &["verify", "--id", "au2", "--mode", "counting"],
        &["pairs", "--map", "phi", "--n", "3"],
    ] {
        let o = sollab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = sollab(&["trace", "--map", "psi"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--partition"));
}

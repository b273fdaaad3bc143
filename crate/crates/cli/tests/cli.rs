use std::path::Path;
use std::process::{Command, Output};

use ecc_core::generate::{gen_integrality_gap, gen_star};
use ecc_core::io::{parse_canonical, write_canonical};
use ecc_core::{Edge, EdgeColoredHypergraph};

const HEADER: &str =
    "dataset,algo,seed,mistakes,satisfaction,lp_bound,match_bound,mv_bound,ratio,accuracy,seconds";

fn ecc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecc"))
        .args(args)
        .output()
        .unwrap()
}

fn out(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, h: &EdgeColoredHypergraph) -> String {
    let p = dir.join(name);
    std::fs::write(&p, write_canonical(h)).unwrap();
    p.to_string_lossy().into_owned()
}

fn fields(row: &str) -> Vec<String> {
    row.split(',').map(str::to_string).collect()
}

#[test]
fn gap_instance_with_match() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "gap3.ecc", &gen_integrality_gap(3).unwrap());
    let o = ecc(&["solve", &p, "--algo", "match", "--with-lp-bound"]);
    assert!(o.status.success());
    let text = out(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(HEADER));
    let f = fields(lines.next().unwrap());
    assert_eq!(&f[..4], ["gap3", "match", "0", "2"]);
    let (lp, mb, mistakes): (f64, f64, f64) = (
        f[5].parse().unwrap(),
        f[6].parse().unwrap(),
        f[3].parse().unwrap(),
    );
    assert_eq!(mistakes / mb, 2.0);
    assert!((mistakes / lp - 4.0 / 3.0).abs() < 1e-9);
    let ratio: f64 = f[8].parse().unwrap();
    assert!((ratio - 4.0 / 3.0).abs() < 1e-9);
}

#[test]
fn same_seed_same_row() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("p.ecc");
    let truth = dir.path().join("p.truth");
    let o = ecc(&[
        "gen",
        "planted",
        "--nodes",
        "60",
        "--edges",
        "120",
        "--noise",
        "0.2",
        "--seed",
        "4",
        "-o",
        inst.to_str().unwrap(),
        "--truth-out",
        truth.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    for algo in ["pitt", "match", "hybrid", "mv", "lp", "lp-simple"] {
        let run = || {
            let o = ecc(&[
                "solve",
                inst.to_str().unwrap(),
                "--algo",
                algo,
                "--seed",
                "9",
                "--runs",
                "8",
                "--truth",
                truth.to_str().unwrap(),
                "--no-header",
            ]);
            assert!(o.status.success(), "{algo}");
            let mut f = fields(out(&o).trim());
            assert_eq!(f.len(), 11);
            f.pop();
            f
        };
        let a = run();
        assert_eq!(a, run(), "{algo}");
        assert!(!a[9].is_empty(), "accuracy missing for {algo}");
    }
}

#[test]
fn noise_free_planted_reaches_ratio_one() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("clean.ecc");
    ecc(&[
        "gen",
        "planted",
        "--noise",
        "0",
        "--seed",
        "1",
        "-o",
        inst.to_str().unwrap(),
    ]);
    let o = ecc(&[
        "solve",
        inst.to_str().unwrap(),
        "--algo",
        "mv",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(out(&o).trim()).unwrap();
    assert_eq!(v["mistakes"].as_f64(), Some(0.0));
    assert_eq!(v["ratio"].as_f64(), Some(1.0));
}

#[test]
fn best_of_runs_is_no_worse_than_one_run() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("u.ecc");
    ecc(&[
        "gen",
        "uniform",
        "--nodes",
        "40",
        "--edges",
        "80",
        "-k",
        "4",
        "--seed",
        "3",
        "-o",
        inst.to_str().unwrap(),
    ]);
    let mistakes = |runs: &str| {
        let o = ecc(&[
            "solve",
            inst.to_str().unwrap(),
            "--algo",
            "pitt",
            "--runs",
            runs,
            "--format",
            "json",
        ]);
        let v: serde_json::Value = serde_json::from_str(out(&o).trim()).unwrap();
        v["mistakes"].as_f64().unwrap()
    };
    assert!(mistakes("20") <= mistakes("1"));
}

#[test]
fn compare_lp_examples() {
    let dir = tempfile::tempdir().unwrap();
    let star = write(dir.path(), "star.ecc", &gen_star());
    assert_eq!(
        out(&ecc(&["compare-lp", &star])).trim(),
        "ecc_lp=2 nodemc_lp=1.5 gap=0.5"
    );
    let clean = EdgeColoredHypergraph::new(
        3,
        2,
        vec![Edge::unit(vec![0, 1], 1), Edge::unit(vec![2], 2)],
    )
    .unwrap();
    let clean = write(dir.path(), "clean.ecc", &clean);
    assert_eq!(
        out(&ecc(&["compare-lp", &clean])).trim(),
        "ecc_lp=0 nodemc_lp=0 gap=0"
    );
    let gap = write(dir.path(), "gap.ecc", &gen_integrality_gap(3).unwrap());
    assert!(out(&ecc(&["compare-lp", &gap])).starts_with("ecc_lp=1.5 "));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.ecc");
    assert_eq!(
        ecc(&["solve", missing.to_str().unwrap(), "--algo", "mv"])
            .status
            .code(),
        Some(2)
    );
    let bad = dir.path().join("bad.ecc");
    std::fs::write(&bad, "ecc 3 1 2\n5 1 0 1\n").unwrap();
    let o = ecc(&["solve", bad.to_str().unwrap(), "--algo", "mv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let big = dir.path().join("big.ecc");
    ecc(&[
        "gen",
        "uniform",
        "--nodes",
        "40",
        "--edges",
        "60",
        "-k",
        "5",
        "-o",
        big.to_str().unwrap(),
    ]);
    let o = Command::new(env!("CARGO_BIN_EXE_ecc"))
        .args(["solve", big.to_str().unwrap(), "--algo", "exact"])
        .env("ECC_ORACLE_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    let o = ecc(&["compare-lp", big.to_str().unwrap(), "--max-vars", "50"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ecc export"));

    assert_ne!(
        ecc(&["solve", big.to_str().unwrap(), "--algo", "nope"])
            .status
            .code(),
        Some(0)
    );
    let o = ecc(&[
        "bench-scaling",
        "--algo",
        "mv",
        "--sizes",
        "2000,4000",
        "--max-slope=-5",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn certificate_lines_and_lp_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = ecc(&[
        "verify",
        "--certs",
        "--emit-lp",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = out(&o);
    assert_eq!(text.lines().count(), 47);
    assert!(text.lines().any(|l| l == "A q=1 bound=3/8 OK"));
    assert_eq!(
        text.lines().last(),
        Some("46/46 certificates verified, max bound 1/2")
    );
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 46);
    let b = std::fs::read_to_string(dir.path().join("B_p1_q1.lp")).unwrap();
    assert!(b.contains("Maximize") && b.contains(" B16:"));
}

#[test]
fn invariants_on_gap_instance() {
    let dir = tempfile::tempdir().unwrap();
    let gap = write(dir.path(), "gap3.ecc", &gen_integrality_gap(3).unwrap());
    let o = ecc(&["verify", "--invariants", &gap]);
    assert!(o.status.success());
    assert!(out(&o).contains("threshold sums: ok on 3 edges"));
}

#[test]
fn reductions_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let gap = write(dir.path(), "gap3.ecc", &gen_integrality_gap(3).unwrap());
    let vc = dir.path().join("gap3.vc");
    assert!(
        ecc(&["reduce", &gap, "--to", "vc", "-o", vc.to_str().unwrap()])
            .status
            .success()
    );
    let back = ecc(&["reduce", vc.to_str().unwrap(), "--to", "ecc"]);
    let h = parse_canonical(&out(&back)).unwrap();
    assert_eq!((h.num_nodes(), h.num_edges(), h.num_colors()), (3, 3, 3));
    let hmc = out(&ecc(&["reduce", &gap, "--to", "hyper-mc"]));
    assert!(hmc.starts_with("hmc 6 3 3\nt 3 4 5\n"));
    let nmc = out(&ecc(&["reduce", &gap, "--to", "node-mc"]));
    assert!(nmc.starts_with("vc 9 "));
}

#[test]
fn external_lp_solution_matches_internal() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("u.ecc");
    ecc(&[
        "gen",
        "uniform",
        "--nodes",
        "10",
        "--edges",
        "18",
        "-k",
        "3",
        "--seed",
        "8",
        "-o",
        inst.to_str().unwrap(),
    ]);
    let sol = dir.path().join("u.sol");
    assert!(ecc(&[
        "export",
        inst.to_str().unwrap(),
        "--what",
        "ecc-solution",
        "-o",
        sol.to_str().unwrap()
    ])
    .status
    .success());
    let bound = |extra: &[&str]| {
        let mut args = vec![
            "solve",
            inst.to_str().unwrap(),
            "--algo",
            "mv",
            "--format",
            "json",
        ];
        args.extend_from_slice(extra);
        let v: serde_json::Value = serde_json::from_str(out(&ecc(&args)).trim()).unwrap();
        v["lp_bound"].as_f64().unwrap()
    };
    let internal = bound(&["--with-lp-bound"]);
    let external = bound(&["--lp-solution", sol.to_str().unwrap()]);
    assert!((internal - external).abs() < 1e-9);
    let lp = out(&ecc(&["export", inst.to_str().unwrap()]));
    assert!(lp.starts_with("Minimize\n obj:"));
}

#[test]
fn benchmark_format_input() {
    let dir = tempfile::tempdir().unwrap();
    let e = dir.path().join("hyperedges.txt");
    let l = dir.path().join("hyperedge-labels.txt");
    let n = dir.path().join("node-labels.txt");
    std::fs::write(&e, "1,2\n2,3\n3,4\n").unwrap();
    std::fs::write(&l, "1\n1\n2\n").unwrap();
    std::fs::write(&n, "1\n1\n1\n2\n").unwrap();
    let o = ecc(&[
        "solve",
        e.to_str().unwrap(),
        "--labels",
        l.to_str().unwrap(),
        "--node-labels",
        n.to_str().unwrap(),
        "--algo",
        "exact",
        "--dataset",
        "toy",
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(out(&o).trim()).unwrap();
    assert_eq!(v["dataset"], "toy");
    assert_eq!(v["mistakes"].as_f64(), Some(1.0));
    assert!(v["accuracy"].as_f64().unwrap() >= 0.75);
}

#[test]
fn scaling_report_has_one_row_per_size() {
    let o = ecc(&[
        "bench-scaling",
        "--algo",
        "hybrid",
        "--sizes",
        "3000,6000,12000",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let text = out(&o);
    assert_eq!(text.lines().count(), 4);
    assert_eq!(text.lines().next(), Some("algo,incidences,edges,seconds"));
}

//! The `ethsm` binary: outputs, exit codes and configuration.

use std::process::Command;

use ethsm_cli::sweep::{sweep, SweepGrid};
use ethsm_core::{ProtocolParams, StrategyId};
use proptest::prelude::*;

struct Run {
    code: Option<i32>,
    stdout: String,
    stderr: String,
}

fn ethsm(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_ethsm")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Parse a CSV table into header and rows.
fn table(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines().map(|l| l.split(',').map(String::from).collect::<Vec<_>>());
    let header = lines.next().expect("header");
    (header, lines.collect())
}

fn column(header: &[String], row: &[String], name: &str) -> String {
    let i = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    row[i].clone()
}

fn num(header: &[String], row: &[String], name: &str) -> f64 {
    column(header, row, name).parse().unwrap()
}

#[test]
fn honest_report() {
    let run = ethsm(&["analytic", "--strategy", "HONEST", "--q", "0.2"]);
    assert_eq!(run.code, Some(0), "{}", run.stderr);
    let (h, rows) = table(&run.stdout);
    assert_eq!(num(&h, &rows[0], "q_tilde"), 0.2);
    assert_eq!(num(&h, &rows[0], "iota"), 0.0);
}

#[test]
fn brutal_fork_pays_above_its_threshold() {
    let run = ethsm(&["analytic", "--strategy", "SM2A", "--q", "0.3", "--gamma", "0"]);
    let (h, rows) = table(&run.stdout);
    assert!(num(&h, &rows[0], "q_tilde") > 0.3);
}

#[test]
fn json_report_is_parseable() {
    let run = ethsm(&["analytic", "--strategy", "SM1", "--q", "0.3", "--gamma", "0.5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["strategy"], "SM1");
    assert!(v["apparent_hashrate_eth"].as_f64().unwrap() > 0.0);
}

#[test]
fn domain_errors_exit_two() {
    for args in [
        &["analytic", "--strategy", "SM1", "--q", "0.5"][..],
        &["analytic", "--strategy", "SM1", "--q", "0.2", "--gamma", "1.5"],
        &["analytic", "--strategy", "SM9", "--q", "0.2"],
        &["sweep", "--q-min", "0.3", "--q-max", "0.2"],
        &["threshold", "--strategy", "SM1", "--baseline", "SM1"],
        &["validate", "--strategy", "SM1", "--q", "0.2", "--cycles", "9999"],
        &["analytic", "--strategy", "SM1", "--q", "0.2", "--n1", "1"],
    ] {
        let run = ethsm(args);
        assert_eq!(run.code, Some(2), "{args:?}: {}", run.stderr);
    }
}

#[test]
fn io_errors_exit_three() {
    let run = ethsm(&["analytic", "--strategy", "SM1", "--q", "0.2", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(run.code, Some(3));
    let run = ethsm(&["analytic", "--strategy", "SM1", "--q", "0.2", "--config", "/nonexistent.toml"]);
    assert_eq!(run.code, Some(3));
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let run = ethsm(&["analytic", "--strategy", "SM1", "--q", "0.2", "--out", path.to_str().unwrap()]);
    assert_eq!(run.code, Some(0));
    assert!(run.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("strategy,q,gamma,n1,"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("params.toml");
    std::fs::write(&path, "n1 = 4\nuncle_reward_numerators = [7, 6, 5, 4]\ninclusion_reward = \"1/32\"\n").unwrap();
    let cfg = path.to_str().unwrap();
    let base = ["analytic", "--strategy", "SM1", "--q", "0.3", "--gamma", "0.5"];
    let from_file = table(&ethsm(&[&base[..], &["--config", cfg]].concat()).stdout);
    assert_eq!(column(&from_file.0, &from_file.1[0], "n1"), "4");
    let default = table(&ethsm(&base).stdout);
    assert_eq!(column(&default.0, &default.1[0], "n1"), "6");
    let run = ethsm(&[&base[..], &["--config", cfg, "--n1", "6"]].concat());
    assert_eq!(run.code, Some(2), "schedule length no longer matches n1");
}

#[test]
fn sweep_rows_and_dominance() {
    let run = ethsm(&[
        "sweep", "--q-min", "0.05", "--q-max", "0.4", "--q-step", "0.35", "--gamma-min", "0", "--gamma-max", "0.9",
        "--gamma-step", "0.9",
    ]);
    assert_eq!(run.code, Some(0), "{}", run.stderr);
    let (h, rows) = table(&run.stdout);
    assert_eq!(h.join(","), "q,gamma,strategy,q_tilde,p_tilde,iota,E_L,E_U,E_Us,E_Uh,E_Delta,dominant,tie");
    assert_eq!(rows.len(), 2 * 2 * 4);
    let at = |q: &str, g: &str| {
        rows.iter()
            .find(|r| r[0] == q && r[1] == g)
            .map(|r| column(&h, r, "dominant"))
            .unwrap()
    };
    assert_eq!(at("0.05", "0"), "HONEST");
    assert_eq!(at("0.4", "0.9"), "SM2B");
}

/// First grid share where SM1 out-earns honest mining, and whether it keeps
/// winning beyond it.
fn sm1_boundary(gamma: &str) -> (f64, bool) {
    let run = ethsm(&[
        "sweep", "--q-min", "0.001", "--q-max", "0.49", "--q-step", "0.001", "--gamma-min", gamma, "--gamma-max", gamma,
        "--strategy", "HONEST,SM1",
    ]);
    let (h, rows) = table(&run.stdout);
    let sm1: Vec<&Vec<String>> = rows.iter().filter(|r| column(&h, r, "strategy") == "SM1").collect();
    let wins: Vec<bool> = sm1.iter().map(|r| num(&h, r, "q_tilde") > num(&h, r, "q")).collect();
    let first = wins.iter().position(|&w| w).expect("SM1 wins somewhere");
    (num(&h, sm1[first], "q"), wins[first..].iter().all(|&w| w))
}

#[test]
fn sm1_boundary_recedes_to_zero_at_full_connectivity() {
    let mut previous = f64::INFINITY;
    for gamma in ["0.5", "0.8", "0.9", "0.99"] {
        let (q, single) = sm1_boundary(gamma);
        assert!(single, "gamma={gamma}");
        assert!(q > 0.001 && q < previous, "gamma={gamma}: {q}");
        previous = q;
    }
    // q_tilde - q is of order q^2 with a positive coefficient when gamma = 1.
    assert_eq!(sm1_boundary("1"), (0.001, true));
}

#[test]
fn thresholds_and_missing_crossings() {
    let run = ethsm(&["threshold", "--strategy", "SM2A", "--gamma", "0"]);
    let (h, rows) = table(&run.stdout);
    assert!((num(&h, &rows[0], "q_threshold") - 0.2865).abs() < 1e-3);
    let run = ethsm(&["threshold", "--strategy", "SM2B", "--gamma", "0"]);
    let (h, rows) = table(&run.stdout);
    assert!((num(&h, &rows[0], "q_threshold") - 0.2880).abs() < 1e-3);

    let run = ethsm(&["threshold", "--strategy", "HONEST", "--baseline", "SM2A"]);
    assert_eq!(run.code, Some(4));
    assert!(run.stderr.contains("no crossing"));
}

#[test]
fn threshold_does_not_depend_on_the_bracket() {
    let q = |lo: &str, hi: &str| {
        let run = ethsm(&["threshold", "--strategy", "SM2B", "--gamma", "0.5", "--q-lo", lo, "--q-hi", hi]);
        let (h, rows) = table(&run.stdout);
        num(&h, &rows[0], "q_threshold")
    };
    let reference = q("0.01", "0.49");
    for (lo, hi) in [("0.1", "0.45"), ("0.2", "0.3"), ("0.013", "0.417")] {
        assert!((q(lo, hi) - reference).abs() <= 1e-9, "{lo}..{hi}");
    }
}

#[test]
fn validate_honest_mining() {
    let run = ethsm(&["validate", "--strategy", "HONEST", "--q", "0.25", "--cycles", "20000"]);
    assert_eq!(run.code, Some(0), "{}", run.stderr);
    let (h, rows) = table(&run.stdout);
    let names: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(names, ["L", "U", "Us", "Uh", "V", "Delta", "q_tilde", "p_tilde", "iota"]);
    for r in &rows {
        if r[0] == "U" || r[0] == "Delta" {
            assert_eq!(num(&h, r, "z"), 0.0);
        }
    }
}

#[test]
fn validate_brutal_fork_at_one_third() {
    let run = ethsm(&[
        "validate", "--strategy", "SM2A", "--q", "0.3333333333333333", "--gamma", "0", "--cycles", "1000000", "--seed",
        "4",
    ]);
    assert_eq!(run.code, Some(0), "{}{}", run.stdout, run.stderr);
}

#[test]
fn validate_lists_offenders_and_exits_five() {
    // The closed-form distance sum for the non-signalling brutal fork
    // overcounts uncles beyond the two-per-nephew limit.
    let run = ethsm(&["validate", "--strategy", "SM2B", "--q", "0.4", "--gamma", "0", "--cycles", "1000000"]);
    assert_eq!(run.code, Some(5));
    assert!(run.stderr.contains("Delta"), "{}", run.stderr);
    assert!(run.stdout.starts_with("quantity,analytic,empirical,se,z"));
}

#[test]
fn simulate_json_fields() {
    let run = ethsm(&[
        "simulate", "--strategy", "SM1", "--q", "0.3", "--gamma", "0.5", "--cycles", "20000", "--seed", "9", "--cap",
        "on", "--format", "json",
    ]);
    assert_eq!(run.code, Some(0), "{}", run.stderr);
    let v: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    for key in [
        "cycle_count", "mean_L", "se_L", "mean_U", "se_U", "mean_Us", "mean_Uh", "mean_V", "mean_Delta", "R_s", "R_u",
        "R_n", "q_tilde", "p_tilde", "iota", "seed", "strategy", "q", "gamma", "n1", "cap_enabled",
        "censored_fraction",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["cap_enabled"], true);
    assert_eq!(v["seed"], 9);
    let csv = ethsm(&["simulate", "--strategy", "SM1", "--q", "0.3", "--cycles", "20000"]);
    assert_eq!(csv.stdout.lines().count(), 2);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["simulate", "--strategy", "SM2B", "--q", "0.35", "--gamma", "0.5", "--cycles", "300000", "--seed", "3"][..],
        &["sweep", "--q-step", "0.05", "--gamma-step", "0.25", "--format", "json"],
    ] {
        let a = ethsm(&[args, &["--threads", "1"]].concat());
        let b = ethsm(&[args, &["--threads", "4"]].concat());
        assert_eq!(a.code, Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn sweep_row_count_and_finiteness(
        q_min in 0.01f64..0.45,
        q_span in 0.0f64..0.04,
        q_step in 0.005f64..0.05,
        g_min in 0.0f64..0.9,
        g_span in 0.0f64..0.1,
        g_step in 0.01f64..0.2,
        mask in 1usize..16,
    ) {
        let strategies: Vec<StrategyId> =
            StrategyId::ALL.into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| s).collect();
        let grid = SweepGrid {
            q_min,
            q_max: q_min + q_span,
            q_step,
            gamma_min: g_min,
            gamma_max: g_min + g_span,
            gamma_step: g_step,
            strategies: strategies.clone(),
        };
        let rows = sweep(&grid, &ProtocolParams::default()).unwrap();
        prop_assert_eq!(rows.len(), grid.q_values().len() * grid.gamma_values().len() * strategies.len());
        for r in &rows {
            for x in [r.q_tilde, r.p_tilde, r.iota, r.e_l, r.e_u, r.e_us, r.e_uh, r.e_delta] {
                prop_assert!(x.is_finite());
            }
        }
    }
}

//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! gating criterion fails. Timing lines are informational.
//!
//!     cargo test --release -p lizard-sssp --test acceptance

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{replay, Op};
use lizard_sssp::bench::{run_suite, Suite, TableRow};
use lizard_sssp::generators::{gen_random_dag, gen_random_sparse_for_tests};
use lizard_sssp::oracle::{bellman_ford, brute_force, dijkstra};
use lizard_sssp::{
    collect_origins, find_all_shorter_arms, hdm_run, solve_sssp, Graph, NodeId, ReapMode,
    SolveOptions,
};

struct Outcome {
    passed: bool,
    gating: bool,
}

fn report(out: &mut Vec<Outcome>, id: &str, passed: bool, gating: bool, detail: String) {
    let tag = if passed { "PASS" } else { "FAIL" };
    let note = if gating { "" } else { " (non-gating)" };
    println!("{tag} {id}{note}: {detail}");
    out.push(Outcome { passed, gating });
}

fn within(x: f64, lo: f64, hi: f64) -> bool {
    (lo..=hi).contains(&x)
}

fn row<'a>(rows: &'a [TableRow], name: &str) -> &'a TableRow {
    rows.iter().find(|r| r.instance == name).expect("suite row")
}

fn sparse_agreement(out: &mut Vec<Outcome>) {
    const GRAPHS: usize = 1200;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut bad = Vec::new();
    for i in 0..GRAPHS {
        let n = rng.random_range(2..=200);
        let density = [0.05, 0.2, 0.8][i % 3];
        let g = gen_random_sparse_for_tests(n, density, rng.random());
        let source = NodeId(rng.random_range(0..n as u32));
        let want = dijkstra(&g, source).unwrap().distances;
        for reap in [ReapMode::RepeatDelete, ReapMode::CutAgency] {
            let (labels, _) = solve_sssp(&g, SolveOptions::from_source(source).reap(reap)).unwrap();
            if labels.total != want || !find_all_shorter_arms(&g, &labels).is_empty() {
                bad.push((i, reap.as_str()));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        out,
        "sparse-graphs-match-dijkstra",
        bad.is_empty() && secs < 60.0,
        true,
        format!(
            "{GRAPHS} graphs x 2 reap modes, {} mismatches, {secs:.2}s (limit 60s)",
            bad.len()
        ),
    );
}

fn three_node_exhaustive(out: &mut Vec<Outcome>) {
    const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
    let start = Instant::now();
    let mut bad = 0;
    let mut count = 0;
    // each ordered pair is absent or carries weight 0, 1 or 2
    for code in 0..4u32.pow(6) {
        let mut arcs = Vec::new();
        for (j, &(u, v)) in PAIRS.iter().enumerate() {
            let digit = (code / 4u32.pow(j as u32)) % 4;
            if digit > 0 {
                arcs.push((u, v, i64::from(digit) - 1));
            }
        }
        let g = Graph::build(3, arcs).unwrap();
        let s = NodeId(0);
        let want = brute_force(&g, s).unwrap().distances;
        let ok = dijkstra(&g, s).unwrap().distances == want
            && bellman_ford(&g, s).unwrap().distances == want
            && [ReapMode::RepeatDelete, ReapMode::CutAgency]
                .into_iter()
                .all(|m| {
                    solve_sssp(&g, SolveOptions::from_source(s).reap(m))
                        .unwrap()
                        .0
                        .total
                        == want
                });
        bad += usize::from(!ok);
        count += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        out,
        "three-node-exhaustive",
        bad == 0 && count == 4096 && secs < 10.0,
        true,
        format!("{count} graphs, {bad} disagreements, {secs:.2}s (limit 10s)"),
    );
}

fn layered_labeling_on_dags(out: &mut Vec<Outcome>) {
    // Expected to fail: a DAG whose shortest path skips a BFS layer keeps the
    // first-layer label, because relabeling is confined to later layers.
    // Exactness does hold on layer-respecting DAGs; see tests/properties.rs.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut inexact = 0;
    let mut with_origins = 0;
    let mut first = None;
    for i in 0..200 {
        let n = rng.random_range(2..=500);
        let g = gen_random_dag(n, (4.0 / n as f64).min(1.0), rng.random());
        let out = hdm_run(&g, NodeId(0)).unwrap();
        if out.labels.total != dijkstra(&g, NodeId(0)).unwrap().distances {
            inexact += 1;
            first.get_or_insert((i, n));
        }
        if !collect_origins(&g, &out.labels).is_empty() {
            with_origins += 1;
        }
    }
    let mut detail = format!("200 random DAGs, {inexact} inexact, {with_origins} with origins");
    if let Some((i, n)) = first {
        detail += &format!(", first at DAG {i} (n = {n})");
    }
    report(
        out,
        "layered-labeling-exact-on-dags",
        inexact == 0 && with_origins == 0,
        true,
        detail,
    );
}

fn lizard_fuzz(out: &mut Vec<Outcome>) {
    const OPS: usize = 100_000;
    const CAP: u32 = 512;
    for mode in [ReapMode::RepeatDelete, ReapMode::CutAgency] {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let ops: Vec<Op> = (0..OPS)
            .map(|_| match rng.random_range(0..10) {
                0..=4 => Op::Insert(rng.random_range(0..CAP), rng.random_range(0..200)),
                5..=6 => Op::Delete(rng.random_range(0..CAP)),
                7..=8 => Op::GetMin,
                _ => Op::Contains(rng.random_range(0..CAP)),
            })
            .collect();
        let start = Instant::now();
        let result = replay(&ops, CAP as usize, mode);
        let secs = start.elapsed().as_secs_f64();
        let detail = match &result {
            Ok(touch) => format!("{OPS} ops, structure verified after each, max delete touch {touch} (limit 8), {secs:.2}s"),
            Err(e) => e.clone(),
        };
        report(
            out,
            &format!("lizard-fuzz-{}", mode.as_str()),
            result.is_ok(),
            true,
            detail,
        );
    }
}

fn full_scale(out: &mut Vec<Outcome>) {
    let start = Instant::now();
    let report_full = run_suite(Suite::PaperFull, 1, 1);
    let wall = start.elapsed();
    let rows = &report_full.tables;
    for r in rows {
        if let Some(e) = &r.error {
            report(
                out,
                &format!("paper-full-{}", r.instance),
                false,
                true,
                e.clone(),
            );
            return;
        }
    }
    let (comp, rand, grid) = (row(rows, "comp"), row(rows, "rand"), row(rows, "grid"));

    let qa = comp.Q_A as f64 / 3_996_001.0;
    report(
        out,
        "comp-arc-scans",
        within(qa, 0.95, 1.05),
        true,
        format!(
            "Q_A = {} ({:.4} of 3996001, band [0.95, 1.05])",
            comp.Q_A, qa
        ),
    );
    for (r, lo, hi) in [(comp, 0.1, 0.8), (rand, 6.0, 25.0), (grid, 16.0, 50.0)] {
        report(
            out,
            &format!("{}-shorter-arm-ratio", r.instance),
            within(r.Q_S_pct, lo, hi),
            true,
            format!("Q_S/Q_A = {:.3}% (band [{lo}%, {hi}%])", r.Q_S_pct),
        );
    }
    for (r, reference) in [(comp, 4.94), (rand, 2.39), (grid, 1.85)] {
        report(
            out,
            &format!("{}-lambda", r.instance),
            within(r.lambda, reference / 2.0, reference * 2.0),
            true,
            format!("lambda = {:.3} (reference {reference}, factor 2)", r.lambda),
        );
    }
    for r in [comp, rand, grid] {
        report(
            out,
            &format!("{}-cut-agency", r.instance),
            r.checksums_equal && within(r.D_prime, 20.0, 55.0) && r.C_prime > 0.0,
            true,
            format!(
                "checksums equal = {}, D' = {:.2}% (band [20%, 55%]), C' = {:.2}% (> 0)",
                r.checksums_equal, r.D_prime, r.C_prime
            ),
        );
    }
    for (r, reference) in [(comp, 203.0), (rand, 1656.0), (grid, 4078.0)] {
        report(
            out,
            &format!("{}-time", r.instance),
            within(r.t_ca_ms, reference / 10.0, reference * 10.0),
            false,
            format!(
                "t_ca = {:.1} ms, t_hdm = {:.1} ms (reference {reference} ms, factor 10)",
                r.t_ca_ms, r.t_hdm_ms
            ),
        );
    }
    println!("     paper-full suite wall time {:.2}s", wall.as_secs_f64());
}

fn desk_time(out: &mut Vec<Outcome>) {
    let start = Instant::now();
    let desk = run_suite(Suite::Desk, 1, 1);
    let wall = start.elapsed();
    let clean = desk
        .tables
        .iter()
        .all(|r| r.error.is_none() && r.checksums_equal);
    report(
        out,
        "desk-suite-time",
        clean && wall < Duration::from_secs(60),
        false,
        format!(
            "{} rows, checksums equal = {clean}, {:.2}s (limit 60s)",
            desk.tables.len(),
            wall.as_secs_f64()
        ),
    );
}

fn main() {
    if cfg!(debug_assertions) {
        println!("note: debug assertions on; timings are not representative");
    }
    let mut out = Vec::new();
    sparse_agreement(&mut out);
    three_node_exhaustive(&mut out);
    layered_labeling_on_dags(&mut out);
    lizard_fuzz(&mut out);
    full_scale(&mut out);
    desk_time(&mut out);

    let failed = out.iter().filter(|o| o.gating && !o.passed).count();
    let gating = out.iter().filter(|o| o.gating).count();
    println!("{} of {gating} gating criteria passed", gating - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

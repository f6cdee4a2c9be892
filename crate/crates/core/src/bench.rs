//! Run records, distance checksums and the benchmark suites behind the
//! `bench` command.

use std::hash::Hasher;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use fnv::FnvHasher;
use serde::{Deserialize, Serialize};

use crate::contest::{n_log2_n, solve_sssp, OriginMode, RunMetrics, SolveError, SolveOptions};
use crate::generators::{Family, GenSpec};
use crate::graph::{Distance, Graph, NodeId};
use crate::hdm::hdm_run;
use crate::lizard::ReapMode;
use crate::oracle::{bellman_ford, dijkstra};

/// 64-bit FNV-1a over the distances as little-endian `u64`s, unreachable
/// nodes contributing the sentinel value.
pub fn w_checksum(distances: &[Distance]) -> u64 {
    let mut h = FnvHasher::default();
    for d in distances {
        h.write(&d.to_le_bytes());
    }
    h.finish()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    /// Layered labeling plus best-first correction.
    Ca,
    /// Layered labeling only (upper bounds).
    Hdm,
    Dijkstra,
    #[serde(rename = "bf")]
    BellmanFord,
}

impl Algo {
    pub fn as_str(self) -> &'static str {
        match self {
            Algo::Ca => "ca",
            Algo::Hdm => "hdm",
            Algo::Dijkstra => "dijkstra",
            Algo::BellmanFord => "bf",
        }
    }
}

/// One solver run in the fixed JSON layout used by the CLI and reports.
///
/// Counters that have no meaning for an algorithm are `null`. Oracle
/// runtimes are reported in `t_ca_ms`.
#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub instance: String,
    pub family: String,
    pub n: usize,
    pub E: usize,
    pub seed: Option<u64>,
    pub algo: Algo,
    pub reap_mode: Option<ReapMode>,
    pub origin_mode: Option<OriginMode>,
    pub D: Option<u64>,
    pub Q_A: Option<u64>,
    pub Q_S: Option<u64>,
    pub C_total: Option<u64>,
    pub lambda: Option<f64>,
    pub t_hdm_ms: Option<f64>,
    pub t_ca_ms: Option<f64>,
    pub w_checksum: u64,
}

/// Where a graph came from, for labeling records.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceInfo {
    pub instance: String,
    pub family: String,
    pub seed: Option<u64>,
}

impl InstanceInfo {
    pub fn file(name: &str) -> InstanceInfo {
        InstanceInfo {
            instance: name.to_string(),
            family: "file".into(),
            seed: None,
        }
    }
}

/// Output of [`run_algo`]: final distances, the record, and the full metrics
/// for the `ca` algorithm.
#[derive(Clone, Debug)]
pub struct AlgoRun {
    pub distances: Vec<Distance>,
    pub record: MetricsRecord,
    pub metrics: Option<RunMetrics>,
}

pub fn run_algo(
    g: &Graph,
    info: &InstanceInfo,
    algo: Algo,
    opts: SolveOptions,
) -> Result<AlgoRun, SolveError> {
    let mut record = MetricsRecord {
        instance: info.instance.clone(),
        family: info.family.clone(),
        n: g.node_count(),
        E: g.arc_count(),
        seed: info.seed,
        algo,
        reap_mode: None,
        origin_mode: None,
        D: None,
        Q_A: None,
        Q_S: None,
        C_total: None,
        lambda: None,
        t_hdm_ms: None,
        t_ca_ms: None,
        w_checksum: 0,
    };
    let mut metrics = None;
    let distances = match algo {
        Algo::Ca => {
            let (labels, m) = solve_sssp(g, opts)?;
            record.reap_mode = Some(m.reap_mode);
            record.origin_mode = Some(m.origin_mode);
            record.D = Some(m.deletions);
            record.Q_A = Some(m.arc_scans);
            record.Q_S = Some(m.shorter_arms);
            record.C_total = Some(m.total_cost);
            record.lambda = Some(m.lambda);
            record.t_hdm_ms = Some(m.t_hdm_ms);
            record.t_ca_ms = Some(m.t_ca_ms);
            metrics = Some(m);
            labels.total
        }
        Algo::Hdm => {
            let t = Instant::now();
            let out = hdm_run(g, opts.source)?;
            record.t_hdm_ms = Some(t.elapsed().as_secs_f64() * 1e3);
            record.Q_A = Some(out.arc_scans);
            out.labels.total
        }
        Algo::Dijkstra | Algo::BellmanFord => {
            let t = Instant::now();
            let dv = if algo == Algo::Dijkstra {
                dijkstra(g, opts.source)?
            } else {
                bellman_ford(g, opts.source)?
            };
            record.t_ca_ms = Some(t.elapsed().as_secs_f64() * 1e3);
            record.D = Some(dv.counts.heap_pops);
            record.Q_A = Some(dv.counts.arc_scans);
            record.Q_S = Some(dv.counts.relaxations);
            dv.distances
        }
    };
    record.w_checksum = w_checksum(&distances);
    Ok(AlgoRun {
        distances,
        record,
        metrics,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// The three ~4M-arc instances: complete 2K, random 222K (m = 18),
    /// grid 1000 x 1000.
    PaperFull,
    /// Scaled-down rows for CI: complete 500, random 50K (m = 16), grid 300 x 300.
    Desk,
}

impl Suite {
    pub fn rows(self, seed: u64) -> Vec<(String, GenSpec)> {
        let fams = match self {
            Suite::PaperFull => [
                Family::Complete { n: 2000 },
                Family::Random { n: 222_000, m: 18 },
                Family::Grid {
                    rows: 1000,
                    cols: 1000,
                },
            ],
            Suite::Desk => [
                Family::Complete { n: 500 },
                Family::Random { n: 50_000, m: 16 },
                Family::Grid {
                    rows: 300,
                    cols: 300,
                },
            ],
        };
        fams.into_iter()
            .map(|f| {
                let name = match f {
                    Family::Complete { .. } => "comp",
                    Family::Random { .. } => "rand",
                    Family::Grid { .. } => "grid",
                };
                (name.to_string(), GenSpec::with_family(f, seed))
            })
            .collect()
    }
}

/// One instance laid out like the published result tables: counters from the
/// repeat-delete run, plus percentage gains of cut-agency over it.
#[allow(non_snake_case)]
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub instance: String,
    pub n: usize,
    pub n_log2_n: f64,
    pub E: usize,
    pub t_hdm_ms: f64,
    pub D: u64,
    pub Q_A: u64,
    pub Q_S: u64,
    /// `Q_S / Q_A` in percent.
    pub Q_S_pct: f64,
    pub C_total: u64,
    pub lambda: f64,
    pub t_ca_ms: f64,
    pub D_cut: u64,
    pub C_total_cut: u64,
    pub t_ca_cut_ms: f64,
    pub D_prime: f64,
    pub C_prime: f64,
    pub T_prime: f64,
    /// Both reap modes and Dijkstra produced identical checksums.
    pub checksums_equal: bool,
    pub error: Option<String>,
}

/// `100 (before - after) / before`.
pub fn improvement_pct(before: f64, after: f64) -> f64 {
    if before == 0.0 {
        0.0
    } else {
        100.0 * (before - after) / before
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub suite: Suite,
    pub seed: u64,
    pub runs: Vec<MetricsRecord>,
    pub tables: Vec<TableRow>,
}

impl BenchReport {
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.tables {
            w.serialize(row)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn bench_row(name: &str, spec: GenSpec) -> (Vec<MetricsRecord>, TableRow) {
    let mut row = TableRow {
        instance: name.to_string(),
        ..Default::default()
    };
    let g = match spec.generate() {
        Ok(g) => g,
        Err(e) => {
            row.error = Some(e.to_string());
            return (Vec::new(), row);
        }
    };
    let info = InstanceInfo {
        instance: name.to_string(),
        family: spec.family.name().to_string(),
        seed: Some(spec.seed),
    };
    row.n = g.node_count();
    row.E = g.arc_count();
    row.n_log2_n = n_log2_n(row.n);

    let source = NodeId(0);
    let mut runs = Vec::new();
    let go = |algo, reap| {
        run_algo(
            &g,
            &info,
            algo,
            SolveOptions::from_source(source).reap(reap),
        )
    };
    let results = (
        go(Algo::Ca, ReapMode::RepeatDelete),
        go(Algo::Ca, ReapMode::CutAgency),
        go(Algo::Dijkstra, ReapMode::RepeatDelete),
    );
    let (rep, cut, dij) = match results {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        (a, b, c) => {
            let err = [a.err(), b.err(), c.err()].into_iter().flatten().next();
            row.error = err.map(|e| e.to_string());
            return (runs, row);
        }
    };
    let (mr, mc) = (rep.metrics.clone().unwrap(), cut.metrics.clone().unwrap());
    row.t_hdm_ms = mr.t_hdm_ms;
    row.D = mr.deletions;
    row.Q_A = mr.arc_scans;
    row.Q_S = mr.shorter_arms;
    row.Q_S_pct = 100.0 * mr.shorter_arm_ratio();
    row.C_total = mr.total_cost;
    row.lambda = mr.lambda;
    row.t_ca_ms = mr.t_ca_ms;
    row.D_cut = mc.deletions;
    row.C_total_cut = mc.total_cost;
    row.t_ca_cut_ms = mc.t_ca_ms;
    row.D_prime = improvement_pct(mr.deletions as f64, mc.deletions as f64);
    row.C_prime = improvement_pct(mr.total_cost as f64, mc.total_cost as f64);
    row.T_prime = improvement_pct(mr.t_ca_ms, mc.t_ca_ms);
    row.checksums_equal = rep.record.w_checksum == cut.record.w_checksum
        && rep.record.w_checksum == dij.record.w_checksum;
    runs.extend([rep.record, cut.record, dij.record]);
    (runs, row)
}

/// Runs every row of `suite`, up to `jobs` rows at a time. A failing row
/// records its error and the rest continue.
pub fn run_suite(suite: Suite, seed: u64, jobs: usize) -> BenchReport {
    let rows = suite.rows(seed);
    type Slot = Option<(Vec<MetricsRecord>, TableRow)>;
    let results: Mutex<Vec<Slot>> = Mutex::new(vec![None; rows.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, rows.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((name, spec)) = rows.get(i) else {
                    break;
                };
                let out = bench_row(name, *spec);
                results.lock().unwrap()[i] = Some(out);
            });
        }
    });
    let mut runs = Vec::new();
    let mut tables = Vec::new();
    for (r, t) in results.into_inner().unwrap().into_iter().flatten() {
        runs.extend(r);
        tables.push(t);
    }
    BenchReport {
        suite,
        seed,
        runs,
        tables,
    }
}

/// Oracle cross-check of one graph, as run by the `verify` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

pub fn verify_instance(
    g: &Graph,
    source: NodeId,
    corrupt: bool,
) -> Result<Vec<VerifyCheck>, SolveError> {
    use crate::graph::find_all_shorter_arms;
    use crate::oracle::{brute_force, BRUTE_FORCE_MAX_NODES};

    let (mut labels, _) = solve_sssp(g, SolveOptions::from_source(source))?;
    if corrupt {
        // fault injection: inflate the first reachable non-source label
        if let Some(v) = (0..labels.len())
            .find(|&v| v != source.index() && labels.total[v] != crate::graph::UNSET)
        {
            labels.total[v] += 1;
        }
    }
    let dij = dijkstra(g, source)?;
    let bf = bellman_ford(g, source)?;

    let mut checks = Vec::new();
    let mut compare = |name: &str, other: &[Distance]| {
        let mismatch = labels.total.iter().zip(other).position(|(a, b)| a != b);
        checks.push(VerifyCheck {
            name: name.to_string(),
            passed: mismatch.is_none() && labels.total.len() == other.len(),
            detail: match mismatch {
                None => format!("{} distances equal", other.len()),
                Some(v) => format!(
                    "node {} differs: ca={} oracle={}",
                    v + 1,
                    labels.total[v],
                    other[v]
                ),
            },
        });
    };
    compare("ca == dijkstra", &dij.distances);
    compare("ca == bellman_ford", &bf.distances);
    if g.node_count() <= BRUTE_FORCE_MAX_NODES {
        let bfz = brute_force(g, source).map_err(|e| match e {
            crate::oracle::OracleError::Graph(g) => SolveError::Graph(g),
            crate::oracle::OracleError::TooLarge { .. } => unreachable!(),
        })?;
        compare("ca == brute_force", &bfz.distances);
    }
    let arms = find_all_shorter_arms(g, &labels);
    checks.push(VerifyCheck {
        name: "no shorter arms remain".into(),
        passed: arms.is_empty(),
        detail: match arms.first() {
            None => "labels are optimal".into(),
            Some((u, v)) => format!(
                "{} shorter arms, first ({}, {})",
                arms.len(),
                u.0 + 1,
                v.0 + 1
            ),
        },
    });
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv_reference_vectors() {
        // FNV-1a 64 of the empty input is the offset basis
        assert_eq!(w_checksum(&[]), 0xcbf2_9ce4_8422_2325);
        let mut h = FnvHasher::default();
        h.write(&[0u8; 8]);
        assert_eq!(w_checksum(&[0]), h.finish());
        assert_ne!(w_checksum(&[0, 1]), w_checksum(&[1, 0]));
    }

    #[test]
    fn improvement() {
        assert_eq!(improvement_pct(200.0, 150.0), 25.0);
        assert_eq!(improvement_pct(0.0, 0.0), 0.0);
    }

    #[test]
    fn record_field_names() {
        let g = Graph::build(2, [(0, 1, 5)]).unwrap();
        let run = run_algo(
            &g,
            &InstanceInfo::file("x"),
            Algo::Ca,
            SolveOptions::default(),
        )
        .unwrap();
        let v = serde_json::to_value(&run.record).unwrap();
        let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        let mut want = vec![
            "instance",
            "family",
            "n",
            "E",
            "seed",
            "algo",
            "reap_mode",
            "origin_mode",
            "D",
            "Q_A",
            "Q_S",
            "C_total",
            "lambda",
            "t_hdm_ms",
            "t_ca_ms",
            "w_checksum",
        ];
        want.sort();
        assert_eq!(keys, want);
        assert_eq!(v["algo"], "ca");
        assert_eq!(v["reap_mode"], "repeat_delete");
        assert_eq!(v["origin_mode"], "full_scan");
    }

    #[test]
    fn algos_agree_on_small_grid() {
        let g = GenSpec::grid(12, 12, 4).generate().unwrap();
        let info = InstanceInfo::file("g");
        let sums: Vec<u64> = [Algo::Ca, Algo::Dijkstra, Algo::BellmanFord]
            .into_iter()
            .map(|a| {
                run_algo(&g, &info, a, SolveOptions::default())
                    .unwrap()
                    .record
                    .w_checksum
            })
            .collect();
        assert!(sums.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn verify_flags_corruption() {
        let g = GenSpec::grid(3, 3, 1).generate().unwrap();
        let ok = verify_instance(&g, NodeId(0), false).unwrap();
        assert_eq!(ok.len(), 4);
        assert!(ok.iter().all(|c| c.passed));
        let bad = verify_instance(&g, NodeId(0), true).unwrap();
        assert!(bad.iter().any(|c| !c.passed));
    }
}

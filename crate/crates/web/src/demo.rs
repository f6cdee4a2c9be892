//! Plain-Rust side of the page, testable without a browser.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use lizard_sssp::bench::{improvement_pct, w_checksum};
use lizard_sssp::generators::{GenError, GenSpec};
use lizard_sssp::lizard::TreeNode;
use lizard_sssp::{
    hdm_run, solve_sssp, solve_sssp_observed, ContestObserver, Distance, LeError, LizardEntity,
    NodeId, ReapMode, RunMetrics, SolveError, SolveOptions, UNSET,
};

/// Largest grid the page will build.
pub const MAX_CELLS: usize = 250_000;

/// Node ids available in the playground.
pub const PLAYGROUND_CAPACITY: usize = 64;

#[derive(Debug, Error)]
pub enum DemoError {
    #[error("grid of {0} cells exceeds the demo limit of {MAX_CELLS}")]
    TooLarge(usize),
    #[error("source cell {0} is outside the grid")]
    BadSource(usize),
    #[error("node {0} is outside 0..{PLAYGROUND_CAPACITY}")]
    BadNode(u32),
    #[error("unknown reap mode {0:?}")]
    BadMode(String),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Structure(#[from] LeError),
}

pub fn parse_mode(s: &str) -> Result<ReapMode, DemoError> {
    match s {
        "repeat" | "repeat_delete" => Ok(ReapMode::RepeatDelete),
        "cut" | "cut_agency" => Ok(ReapMode::CutAgency),
        _ => Err(DemoError::BadMode(s.to_string())),
    }
}

fn grid(rows: usize, cols: usize, seed: u64, w_max: u32) -> Result<lizard_sssp::Graph, DemoError> {
    let cells = rows.saturating_mul(cols);
    if cells > MAX_CELLS {
        return Err(DemoError::TooLarge(cells));
    }
    Ok(GenSpec::grid(rows, cols, seed)
        .weights(1, w_max.max(1))
        .generate()?)
}

#[derive(Default)]
struct RelabelCount(Vec<u32>);

impl ContestObserver for RelabelCount {
    fn relabel(&mut self, node: NodeId, _via: NodeId, _old: Distance, _new: Distance) {
        self.0[node.index()] += 1;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GridSummary {
    pub rows: usize,
    pub cols: usize,
    pub arcs: usize,
    pub regions: usize,
    pub origins: usize,
    pub corrected: usize,
    pub max_distance: Distance,
    pub deletions: u64,
    pub arc_scans: u64,
    pub shorter_arms: u64,
    pub shorter_arm_pct: f64,
    pub total_cost: u64,
    pub lambda: f64,
    pub t_hdm_ms: f64,
    pub t_ca_ms: f64,
}

/// Per-cell layers of one grid solve.
pub struct GridLayers {
    pub layered: Vec<Distance>,
    pub exact: Vec<Distance>,
    pub regions: Vec<u32>,
    pub relabels: Vec<u32>,
    pub summary: GridSummary,
}

pub fn solve_grid(
    rows: usize,
    cols: usize,
    seed: u64,
    w_max: u32,
    source: usize,
    mode: ReapMode,
) -> Result<GridLayers, DemoError> {
    let g = grid(rows, cols, seed, w_max)?;
    if source >= g.node_count() {
        return Err(DemoError::BadSource(source));
    }
    let s = NodeId::from(source);
    let layered = hdm_run(&g, s).map_err(SolveError::from)?.labels.total;
    let mut count = RelabelCount(vec![0; g.node_count()]);
    let (labels, m) = solve_sssp_observed(&g, SolveOptions::from_source(s).reap(mode), &mut count)?;
    let summary = GridSummary {
        rows,
        cols,
        arcs: g.arc_count(),
        regions: m.regions,
        origins: m.origins,
        corrected: count.0.iter().filter(|&&c| c > 0).count(),
        max_distance: labels
            .total
            .iter()
            .copied()
            .filter(|&d| d != UNSET)
            .max()
            .unwrap_or(0),
        deletions: m.deletions,
        arc_scans: m.arc_scans,
        shorter_arms: m.shorter_arms,
        shorter_arm_pct: 100.0 * m.shorter_arm_ratio(),
        total_cost: m.total_cost,
        lambda: m.lambda,
        t_hdm_ms: m.t_hdm_ms,
        t_ca_ms: m.t_ca_ms,
    };
    Ok(GridLayers {
        layered,
        exact: labels.total,
        regions: labels.region,
        relabels: count.0,
        summary,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ModeRun {
    pub mode: &'static str,
    pub deletions: u64,
    pub total_cost: u64,
    pub get_min_cost: u64,
    pub delete_cost: u64,
    pub insert_cost: u64,
    pub batches: u64,
    pub t_ca_ms: f64,
    pub checksum: String,
}

impl ModeRun {
    fn new(m: &RunMetrics, checksum: u64) -> ModeRun {
        ModeRun {
            mode: m.reap_mode.as_str(),
            deletions: m.deletions,
            total_cost: m.total_cost,
            get_min_cost: m.le.get_min_cost,
            delete_cost: m.le.delete_cost,
            insert_cost: m.le.insert_cost,
            batches: m.le.batches,
            t_ca_ms: m.t_ca_ms,
            // hex string: JS numbers cannot hold 64 bits
            checksum: format!("{checksum:016x}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModeComparison {
    pub repeat: ModeRun,
    pub cut: ModeRun,
    pub d_prime: f64,
    pub c_prime: f64,
    pub t_prime: f64,
    pub checksums_equal: bool,
}

pub fn compare_modes(
    rows: usize,
    cols: usize,
    seed: u64,
    w_max: u32,
) -> Result<ModeComparison, DemoError> {
    let g = grid(rows, cols, seed, w_max)?;
    let run = |mode| -> Result<(RunMetrics, u64), DemoError> {
        let (labels, m) = solve_sssp(&g, SolveOptions::from_source(NodeId(0)).reap(mode))?;
        Ok((m, w_checksum(&labels.total)))
    };
    let (rep, rep_w) = run(ReapMode::RepeatDelete)?;
    let (cut, cut_w) = run(ReapMode::CutAgency)?;
    Ok(ModeComparison {
        d_prime: improvement_pct(rep.deletions as f64, cut.deletions as f64),
        c_prime: improvement_pct(rep.total_cost as f64, cut.total_cost as f64),
        t_prime: improvement_pct(rep.t_ca_ms, cut.t_ca_ms),
        checksums_equal: rep_w == cut_w,
        repeat: ModeRun::new(&rep, rep_w),
        cut: ModeRun::new(&cut, cut_w),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Snapshot {
    pub len: usize,
    pub agencies: usize,
    pub height: usize,
    pub ara: Vec<(Distance, Vec<u32>)>,
    pub tree: Option<TreeNode>,
    pub total_cost: u64,
    pub last: String,
}

/// A small structure driven one operation at a time.
pub struct Playground {
    le: LizardEntity,
    last: String,
}

impl Default for Playground {
    fn default() -> Self {
        Playground::new()
    }
}

impl Playground {
    pub fn new() -> Playground {
        Playground {
            le: LizardEntity::new(PLAYGROUND_CAPACITY),
            last: String::new(),
        }
    }

    fn check(node: u32) -> Result<NodeId, DemoError> {
        if node as usize >= PLAYGROUND_CAPACITY {
            return Err(DemoError::BadNode(node));
        }
        Ok(NodeId(node))
    }

    fn cost(&self) -> u64 {
        self.le.counters().total_cost
    }

    pub fn insert(&mut self, node: u32, key: Distance) -> Result<(), DemoError> {
        let before = self.cost();
        self.le.insert(Self::check(node)?, key)?;
        self.last = format!("insert {node} @ {key}: cost {}", self.cost() - before);
        Ok(())
    }

    pub fn delete(&mut self, node: u32) -> Result<(), DemoError> {
        let before = self.cost();
        self.le.delete(Self::check(node)?)?;
        self.last = format!("delete {node}: cost {}", self.cost() - before);
        Ok(())
    }

    pub fn get_min(&mut self, mode: ReapMode) -> Result<Vec<u32>, DemoError> {
        let before = self.cost();
        let mut batch = Vec::new();
        let key = self.le.get_min_batch_into(mode, &mut batch)?;
        let ids: Vec<u32> = batch.iter().map(|v| v.0).collect();
        self.last = format!(
            "get_min ({}) @ {key}: {ids:?}, cost {}",
            mode.as_str(),
            self.cost() - before
        );
        Ok(ids)
    }

    /// Fills every free id with a key drawn from a small range, so cousins
    /// show up.
    pub fn fill(&mut self, seed: u64) -> Result<(), DemoError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for v in 0..PLAYGROUND_CAPACITY as u32 {
            let key = rng.random_range(0..20);
            if self.le.key_of(NodeId(v)).is_none() {
                self.le.insert(NodeId(v), key)?;
            }
        }
        self.last = format!("filled to {}", self.le.len());
        Ok(())
    }

    pub fn snapshot(&self) -> Snapshot {
        let ara = self
            .le
            .ara_keys()
            .into_iter()
            .map(|k| (k, self.le.cousins(k).iter().map(|v| v.0).collect()))
            .collect();
        Snapshot {
            len: self.le.len(),
            agencies: self.le.agency_count(),
            height: self.le.height(),
            ara,
            tree: self.le.tree_snapshot(7),
            total_cost: self.cost(),
            last: self.last.clone(),
        }
    }
}

//! Best-first label correction seeded by the origins left after layered
//! labeling, plus the integrated solver.
//!
//! Each round takes every origin carrying the current minimum total weight out
//! of the lizard entity, relaxes their leaf sets, and afterwards inserts each
//! improved leaf once with its new key. An improved leaf already waiting in
//! the structure is deleted first, so keys always equal current labels.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Distance, Graph, GraphError, LabelState, NodeId};
use crate::hdm::{collect_origins, hdm_run, hdm_run_with_seeking, OriginList};
use crate::lizard::{LeError, LizardEntity, OpCostCounters, ReapMode};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OriginMode {
    /// Origins gathered while the layered pass scans each arc.
    InlineSeeking,
    /// Origins from a full post-pass over all arcs.
    #[default]
    FullScan,
}

impl OriginMode {
    pub fn as_str(self) -> &'static str {
        match self {
            OriginMode::InlineSeeking => "inline_seeking",
            OriginMode::FullScan => "full_scan",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub reap_mode: ReapMode,
    pub origin_mode: OriginMode,
    pub source: NodeId,
}

impl SolveOptions {
    pub fn from_source(source: NodeId) -> SolveOptions {
        SolveOptions {
            source,
            ..Default::default()
        }
    }

    pub fn reap(mut self, mode: ReapMode) -> SolveOptions {
        self.reap_mode = mode;
        self
    }

    pub fn origins(mut self, mode: OriginMode) -> SolveOptions {
        self.origin_mode = mode;
        self
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("origin {0} has no label")]
    UnlabeledOrigin(NodeId),
    #[error(transparent)]
    Structure(#[from] LeError),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    /// Deletions from the priority structure (`D`).
    pub deletions: u64,
    /// Leaf visits during correction (`Q_A`).
    pub arc_scans: u64,
    /// Relabelings during correction (`Q_S`).
    pub shorter_arms: u64,
    /// Total charged structure cost.
    pub total_cost: u64,
    /// `total_cost / (n log2 n)`.
    pub lambda: f64,
    pub t_hdm_ms: f64,
    pub t_ca_ms: f64,
    pub reap_mode: ReapMode,
    pub origin_mode: OriginMode,
    pub origins: usize,
    pub hdm_arc_scans: u64,
    pub regions: usize,
    pub batches: u64,
    /// Leaves found wild during correction; 0 on any full pipeline run.
    pub anomalies: u64,
    pub le: OpCostCounters,
    pub max_tree_height: usize,
}

impl RunMetrics {
    pub fn shorter_arm_ratio(&self) -> f64 {
        if self.arc_scans == 0 {
            0.0
        } else {
            self.shorter_arms as f64 / self.arc_scans as f64
        }
    }
}

/// `n log2 n`, the yardstick for structure cost.
pub fn n_log2_n(n: usize) -> f64 {
    if n < 2 {
        0.0
    } else {
        n as f64 * (n as f64).log2()
    }
}

/// Hooks into the correction loop. All methods default to no-ops.
pub trait ContestObserver {
    /// A minimum batch was taken out with `key`.
    fn batch(&mut self, _key: Distance, _nodes: &[NodeId]) {}
    /// `node` was relabeled from `old` (UNSET if wild) to `new` through `via`.
    fn relabel(&mut self, _node: NodeId, _via: NodeId, _old: Distance, _new: Distance) {}
    /// A round finished and its gathered leaves were reinserted.
    fn round_end(&mut self, _labels: &LabelState) {}
}

impl ContestObserver for () {}

pub fn contest_run(
    g: &Graph,
    labels: LabelState,
    origins: &OriginList,
    reap_mode: ReapMode,
) -> Result<(LabelState, RunMetrics), SolveError> {
    contest_run_observed(g, labels, origins, reap_mode, &mut ())
}

pub fn contest_run_observed<O: ContestObserver + ?Sized>(
    g: &Graph,
    labels: LabelState,
    origins: &OriginList,
    reap_mode: ReapMode,
    observer: &mut O,
) -> Result<(LabelState, RunMetrics), SolveError> {
    let mut labels = labels;
    let n = g.node_count();
    let mut metrics = RunMetrics {
        reap_mode,
        origins: origins.len(),
        ..Default::default()
    };

    let mut entries = Vec::with_capacity(origins.len());
    for &v in origins.nodes() {
        match labels.distance(v) {
            Some(d) => entries.push((v, d)),
            None => return Err(SolveError::UnlabeledOrigin(v)),
        }
    }
    let mut le = LizardEntity::build(n, &entries)?;

    let mut batch: Vec<NodeId> = Vec::new();
    let mut gathered: Vec<NodeId> = Vec::new();
    let mut in_gathered = vec![false; n];

    while !le.is_empty() {
        batch.clear();
        let key = le.get_min_batch_into(reap_mode, &mut batch)?;
        observer.batch(key, &batch);
        for &e in &batch {
            let base = labels.total[e.index()];
            for leaf in g.leaves_of(e) {
                metrics.arc_scans += 1;
                let l = leaf.node.index();
                let w = base + Distance::from(leaf.weight);
                let wild = labels.region[l] == 0;
                if !wild && labels.total[l] <= w {
                    continue;
                }
                if wild {
                    metrics.anomalies += 1;
                    labels.region[l] = labels.region[e.index()] + 1;
                }
                observer.relabel(leaf.node, e, labels.total[l], w);
                labels.parent[l] = e;
                labels.total[l] = w;
                metrics.shorter_arms += 1;
                if le.contains(leaf.node) {
                    le.delete(leaf.node)?;
                }
                if !in_gathered[l] {
                    in_gathered[l] = true;
                    gathered.push(leaf.node);
                }
            }
        }
        for x in gathered.drain(..) {
            in_gathered[x.index()] = false;
            le.insert(x, labels.total[x.index()])?;
        }
        observer.round_end(&labels);
    }

    let c = *le.counters();
    metrics.deletions = c.deletions;
    metrics.total_cost = c.total_cost;
    metrics.batches = c.batches;
    metrics.le = c;
    metrics.max_tree_height = le.peak_height();
    let yardstick = n_log2_n(n);
    metrics.lambda = if yardstick > 0.0 {
        c.total_cost as f64 / yardstick
    } else {
        0.0
    };
    Ok((labels, metrics))
}

/// Layered labeling followed by best-first correction. Final totals are
/// exact for every reachable node; unreachable nodes stay unset.
pub fn solve_sssp(g: &Graph, opts: SolveOptions) -> Result<(LabelState, RunMetrics), SolveError> {
    solve_sssp_observed(g, opts, &mut ())
}

pub fn solve_sssp_observed<O: ContestObserver + ?Sized>(
    g: &Graph,
    opts: SolveOptions,
    observer: &mut O,
) -> Result<(LabelState, RunMetrics), SolveError> {
    let t0 = Instant::now();
    let hdm = match opts.origin_mode {
        OriginMode::InlineSeeking => hdm_run_with_seeking(g, opts.source)?,
        OriginMode::FullScan => hdm_run(g, opts.source)?,
    };
    let origins = match opts.origin_mode {
        OriginMode::InlineSeeking => hdm.origins,
        OriginMode::FullScan => collect_origins(g, &hdm.labels),
    };
    let t_hdm = t0.elapsed();

    let t1 = Instant::now();
    let (labels, mut metrics) =
        contest_run_observed(g, hdm.labels, &origins, opts.reap_mode, observer)?;
    let t_ca = t1.elapsed();

    metrics.origin_mode = opts.origin_mode;
    metrics.hdm_arc_scans = hdm.arc_scans;
    metrics.regions = hdm.partition.len();
    metrics.t_hdm_ms = t_hdm.as_secs_f64() * 1e3;
    metrics.t_ca_ms = t_ca.as_secs_f64() * 1e3;
    Ok((labels, metrics))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{find_all_shorter_arms, UNSET};

    fn triangle() -> Graph {
        Graph::build(3, [(0, 1, 10), (0, 2, 1), (2, 1, 1)]).unwrap()
    }

    #[test]
    fn no_origins_is_a_no_op() {
        let g = Graph::build(3, [(0, 1, 3), (1, 2, 4)]).unwrap();
        let hdm = hdm_run(&g, NodeId(0)).unwrap();
        let before = hdm.labels.clone();
        let (labels, m) =
            contest_run(&g, hdm.labels, &OriginList::new(3), ReapMode::RepeatDelete).unwrap();
        assert_eq!(labels, before);
        assert_eq!(
            (m.deletions, m.arc_scans, m.shorter_arms, m.total_cost),
            (0, 0, 0, 0)
        );
    }

    #[test]
    fn triangle_corrected() {
        let g = triangle();
        for mode in [ReapMode::RepeatDelete, ReapMode::CutAgency] {
            let hdm = hdm_run(&g, NodeId(0)).unwrap();
            let origins = collect_origins(&g, &hdm.labels);
            let (labels, m) = contest_run(&g, hdm.labels, &origins, mode).unwrap();
            assert_eq!(labels.total, vec![0, 2, 1]);
            assert_eq!(labels.parent[1], NodeId(2));
            assert!(m.shorter_arms >= 1);
            assert!(find_all_shorter_arms(&g, &labels).is_empty());
        }
    }

    #[test]
    fn unlabeled_origin_rejected() {
        let g = Graph::build(3, [(0, 1, 1), (2, 1, 1)]).unwrap();
        let labels = LabelState::new(3, NodeId(0));
        let mut origins = OriginList::new(3);
        origins.push(NodeId(2));
        assert_eq!(
            contest_run(&g, labels, &origins, ReapMode::CutAgency).unwrap_err(),
            SolveError::UnlabeledOrigin(NodeId(2))
        );
    }

    #[test]
    fn wild_leaf_is_labeled_once() {
        // labels omit node 2, reachable through 1
        let g = Graph::build(3, [(0, 1, 4), (1, 2, 3)]).unwrap();
        let mut labels = LabelState::new(3, NodeId(0));
        labels.total[1] = 4;
        labels.region[1] = 2;
        labels.parent[1] = NodeId(0);
        let mut origins = OriginList::new(3);
        origins.push(NodeId(1));
        let (labels, m) = contest_run(&g, labels, &origins, ReapMode::RepeatDelete).unwrap();
        assert_eq!(labels.total, vec![0, 4, 7]);
        assert_eq!(labels.region[2], 3);
        assert_eq!(m.anomalies, 1);
        assert_eq!(m.shorter_arms, 1);
    }

    #[test]
    fn solve_pipeline_modes_agree() {
        let g = triangle();
        for origin_mode in [OriginMode::FullScan, OriginMode::InlineSeeking] {
            for reap in [ReapMode::RepeatDelete, ReapMode::CutAgency] {
                let opts = SolveOptions::from_source(NodeId(0))
                    .reap(reap)
                    .origins(origin_mode);
                let (labels, m) = solve_sssp(&g, opts).unwrap();
                assert_eq!(labels.total, vec![0, 2, 1]);
                assert_eq!(m.anomalies, 0);
                assert_eq!(m.origins, 1);
                assert_eq!(m.hdm_arc_scans, 3);
            }
        }
    }

    #[test]
    fn empty_and_unreachable() {
        let g = Graph::build(1, []).unwrap();
        let (labels, m) = solve_sssp(&g, SolveOptions::default()).unwrap();
        assert_eq!(labels.total, vec![0]);
        assert_eq!(m.anomalies, 0);
        assert_eq!(m.lambda, 0.0);

        let g = Graph::build(3, [(1, 2, 1)]).unwrap();
        let (labels, _) = solve_sssp(&g, SolveOptions::default()).unwrap();
        assert_eq!(labels.total, vec![0, UNSET, UNSET]);
        assert!(matches!(
            solve_sssp(&g, SolveOptions::from_source(NodeId(9))),
            Err(SolveError::Graph(GraphError::NodeOutOfRange { .. }))
        ));
    }
}

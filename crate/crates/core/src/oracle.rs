//! Independent baselines: binary-heap Dijkstra, Bellman-Ford and exhaustive
//! simple-path enumeration for tiny graphs.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::graph::{Distance, Graph, GraphError, NodeId, UNSET};

/// Sentinel for a node with no path from the source.
pub const UNREACHABLE: Distance = UNSET;

/// Largest graph [`brute_force`] accepts.
pub const BRUTE_FORCE_MAX_NODES: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("exhaustive enumeration limited to {max} nodes, got {n}")]
    TooLarge { n: usize, max: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleCounts {
    pub heap_pushes: u64,
    pub heap_pops: u64,
    pub stale_pops: u64,
    /// Successful relaxations (decrease-key events).
    pub relaxations: u64,
    pub arc_scans: u64,
    /// Bellman-Ford passes over the arc set, including the final quiet one.
    pub rounds: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceVector {
    pub distances: Vec<Distance>,
    pub counts: OracleCounts,
}

impl DistanceVector {
    pub fn get(&self, v: NodeId) -> Option<Distance> {
        match self.distances[v.index()] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }
}

/// Label-setting with lazy deletion: stale heap entries are skipped on pop.
pub fn dijkstra(g: &Graph, source: NodeId) -> Result<DistanceVector, GraphError> {
    g.check_node(source)?;
    let mut dist = vec![UNREACHABLE; g.node_count()];
    let mut counts = OracleCounts::default();
    let mut heap = BinaryHeap::new();
    dist[source.index()] = 0;
    heap.push(Reverse((0, source.0)));
    counts.heap_pushes += 1;
    while let Some(Reverse((d, v))) = heap.pop() {
        counts.heap_pops += 1;
        if d > dist[v as usize] {
            counts.stale_pops += 1;
            continue;
        }
        for leaf in g.leaves_of(NodeId(v)) {
            counts.arc_scans += 1;
            let nd = d + Distance::from(leaf.weight);
            let slot = &mut dist[leaf.node.index()];
            if nd < *slot {
                *slot = nd;
                heap.push(Reverse((nd, leaf.node.0)));
                counts.heap_pushes += 1;
                counts.relaxations += 1;
            }
        }
    }
    Ok(DistanceVector {
        distances: dist,
        counts,
    })
}

/// Rounds of full-arc relaxation, stopping after the first round that
/// changes nothing (at most `n` rounds with nonnegative weights).
pub fn bellman_ford(g: &Graph, source: NodeId) -> Result<DistanceVector, GraphError> {
    g.check_node(source)?;
    let n = g.node_count();
    let mut dist = vec![UNREACHABLE; n];
    let mut counts = OracleCounts::default();
    dist[source.index()] = 0;
    for _ in 0..n.max(1) {
        counts.rounds += 1;
        let mut changed = false;
        for (u, v, w) in g.arcs() {
            counts.arc_scans += 1;
            let du = dist[u.index()];
            if du == UNREACHABLE {
                continue;
            }
            let nd = du + Distance::from(w);
            if nd < dist[v.index()] {
                dist[v.index()] = nd;
                counts.relaxations += 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(DistanceVector {
        distances: dist,
        counts,
    })
}

/// Minimum total weight over every simple path from `source`.
pub fn brute_force(g: &Graph, source: NodeId) -> Result<DistanceVector, OracleError> {
    g.check_node(source)?;
    let n = g.node_count();
    if n > BRUTE_FORCE_MAX_NODES {
        return Err(OracleError::TooLarge {
            n,
            max: BRUTE_FORCE_MAX_NODES,
        });
    }
    let mut best = vec![UNREACHABLE; n];
    let mut on_path = vec![false; n];
    let mut counts = OracleCounts::default();

    fn walk(
        g: &Graph,
        v: NodeId,
        cost: Distance,
        on_path: &mut [bool],
        best: &mut [Distance],
        counts: &mut OracleCounts,
    ) {
        best[v.index()] = best[v.index()].min(cost);
        on_path[v.index()] = true;
        for leaf in g.leaves_of(v) {
            counts.arc_scans += 1;
            if !on_path[leaf.node.index()] {
                walk(
                    g,
                    leaf.node,
                    cost + Distance::from(leaf.weight),
                    on_path,
                    best,
                    counts,
                );
            }
        }
        on_path[v.index()] = false;
    }

    walk(g, source, 0, &mut on_path, &mut best, &mut counts);
    Ok(DistanceVector {
        distances: best,
        counts,
    })
}

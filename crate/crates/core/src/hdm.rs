//! Layered first labeling.
//!
//! Nodes are partitioned into regions by arc count from the source. Each
//! region's roots relax their leaves once; a leaf already labeled is only
//! improved when it lies in a later region than its root. The result is an
//! upper bound on every distance, exact when the graph has no cycles.

use crate::graph::{find_all_shorter_arms, Distance, Graph, GraphError, LabelState, NodeId};

/// Regions `r_1..r_k`; `regions[0] == [source]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RegionPartition {
    pub regions: Vec<Vec<NodeId>>,
}

impl RegionPartition {
    /// Region count `k`.
    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.regions.iter().map(Vec::len).sum()
    }
}

/// Duplicate-free list of origin nodes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OriginList {
    nodes: Vec<NodeId>,
    member: Vec<bool>,
}

impl OriginList {
    pub fn new(n: usize) -> OriginList {
        OriginList {
            nodes: Vec::new(),
            member: vec![false; n],
        }
    }

    /// Adds `v` unless already present; returns whether it was added.
    pub fn push(&mut self, v: NodeId) -> bool {
        let slot = &mut self.member[v.index()];
        if *slot {
            return false;
        }
        *slot = true;
        self.nodes.push(v);
        true
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.member.get(v.index()).copied().unwrap_or(false)
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct HdmOutput {
    pub labels: LabelState,
    pub partition: RegionPartition,
    /// Filled only by [`hdm_run_with_seeking`].
    pub origins: OriginList,
    pub arc_scans: u64,
}

pub fn hdm_run(g: &Graph, source: NodeId) -> Result<HdmOutput, GraphError> {
    run(g, source, false)
}

/// As [`hdm_run`], also collecting every root seen at scan time with a
/// leaf in its own or an earlier region that it could improve.
pub fn hdm_run_with_seeking(g: &Graph, source: NodeId) -> Result<HdmOutput, GraphError> {
    run(g, source, true)
}

fn run(g: &Graph, source: NodeId, seek: bool) -> Result<HdmOutput, GraphError> {
    g.check_node(source)?;
    let n = g.node_count();
    let mut labels = LabelState::new(n, source);
    let mut origins = OriginList::new(n);
    let mut regions = Vec::new();
    let mut arc_scans = 0u64;

    let mut current = vec![source];
    let mut region_id = 1u32;
    while !current.is_empty() {
        let mut next = Vec::new();
        for &v in &current {
            let base = labels.total[v.index()];
            let v_region = labels.region[v.index()];
            for leaf in g.leaves_of(v) {
                arc_scans += 1;
                let l = leaf.node.index();
                let w = base + Distance::from(leaf.weight);
                if labels.region[l] == 0 {
                    labels.region[l] = region_id + 1;
                    labels.parent[l] = v;
                    labels.total[l] = w;
                    next.push(leaf.node);
                } else if labels.region[l] > v_region {
                    if labels.total[l] > w {
                        labels.parent[l] = v;
                        labels.total[l] = w;
                    }
                } else if seek && labels.total[l] > w {
                    origins.push(v);
                }
            }
        }
        regions.push(std::mem::replace(&mut current, next));
        region_id += 1;
    }

    Ok(HdmOutput {
        labels,
        partition: RegionPartition { regions },
        origins,
        arc_scans,
    })
}

/// Roots of every current shorter arm, in first-seen order.
pub fn collect_origins(g: &Graph, labels: &LabelState) -> OriginList {
    let mut origins = OriginList::new(g.node_count());
    for (v, _) in find_all_shorter_arms(g, labels) {
        origins.push(v);
    }
    origins
}

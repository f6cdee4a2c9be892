//! Weighted digraph stored as united subgraphs (one root, its ordered leaf set),
//! plus the labeling arrays shared by every solver.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arc weight. Nonnegative by construction.
pub type Weight = u32;

/// Total weight of a path from the source.
pub type Distance = u64;

/// Sentinel for a total weight that has not been assigned yet.
pub const UNSET: Distance = Distance::MAX;

/// Dense 0-based node index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    pub const NONE: NodeId = NodeId(u32::MAX);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_none(self) -> bool {
        self == Self::NONE
    }
}

impl From<usize> for NodeId {
    #[inline]
    fn from(v: usize) -> Self {
        NodeId(v as u32)
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_none() {
            f.write_str("NONE")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One entry of a leaf set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Leaf {
    pub node: NodeId,
    pub weight: Weight,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("arc ({src}, {dst}) has negative weight {weight}")]
    NegativeWeight { src: usize, dst: usize, weight: i64 },
    #[error("arc ({src}, {dst}) weight {weight} does not fit in 32 bits")]
    WeightOverflow { src: usize, dst: usize, weight: i64 },
    #[error("node id {id} out of range for a graph of {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("node count {0} exceeds the 32-bit id space")]
    TooManyNodes(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("header declares {declared} arcs but {found} arc lines were read")]
    HeaderMismatch { declared: usize, found: usize },
    #[error("missing `p sp <n> <m>` problem line")]
    MissingHeader,
    #[error(transparent)]
    Io(#[from] IoError),
}

/// `std::io::Error` wrapper so [`GraphError`] can stay `PartialEq`.
#[derive(Debug, Error)]
#[error("{0}")]
pub struct IoError(#[from] pub std::io::Error);

impl PartialEq for IoError {
    fn eq(&self, other: &Self) -> bool {
        self.0.kind() == other.0.kind()
    }
}

impl Eq for IoError {}

impl From<std::io::Error> for GraphError {
    fn from(e: std::io::Error) -> Self {
        GraphError::Io(IoError(e))
    }
}

/// Borrowed view of one root and its leaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitedSubgraph<'a> {
    pub root: NodeId,
    pub leaves: &'a [Leaf],
}

/// Immutable weighted digraph.
///
/// Leaf sets are packed contiguously: the leaves of root `v` occupy
/// `leaves[offsets[v]..offsets[v + 1]]`, in insertion order.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    leaves: Vec<Leaf>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.node_count())
            .field("E", &self.arc_count())
            .finish()
    }
}

impl Graph {
    /// Validates and packs `arcs`. Parallel arcs collapse onto the first
    /// occurrence's position, keeping the minimum weight.
    pub fn build<I>(n: usize, arcs: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        if n > u32::MAX as usize {
            return Err(GraphError::TooManyNodes(n));
        }
        let mut checked: Vec<(u32, Leaf)> = Vec::new();
        for (src, dst, weight) in arcs {
            if src >= n {
                return Err(GraphError::NodeOutOfRange { id: src, n });
            }
            if dst >= n {
                return Err(GraphError::NodeOutOfRange { id: dst, n });
            }
            if src == dst {
                return Err(GraphError::SelfLoop(src));
            }
            if weight < 0 {
                return Err(GraphError::NegativeWeight { src, dst, weight });
            }
            let weight = Weight::try_from(weight).map_err(|_| GraphError::WeightOverflow {
                src,
                dst,
                weight,
            })?;
            checked.push((
                src as u32,
                Leaf {
                    node: NodeId(dst as u32),
                    weight,
                },
            ));
        }

        // Counting sort by root keeps per-root insertion order.
        let mut offsets = vec![0usize; n + 1];
        for (src, _) in &checked {
            offsets[*src as usize + 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        let mut cursor = offsets.clone();
        let mut slots = vec![
            Leaf {
                node: NodeId::NONE,
                weight: 0
            };
            checked.len()
        ];
        for (src, leaf) in checked {
            let at = &mut cursor[src as usize];
            slots[*at] = leaf;
            *at += 1;
        }

        // Dedup within each leaf set. `seen[dst]` holds the packed position of
        // the first copy of (root, dst), valid while `owner[dst] == root`.
        let mut owner = vec![u32::MAX; n];
        let mut seen = vec![0usize; n];
        let mut leaves = Vec::with_capacity(slots.len());
        let mut packed = vec![0usize; n + 1];
        for v in 0..n {
            for leaf in &slots[offsets[v]..offsets[v + 1]] {
                let d = leaf.node.index();
                if owner[d] == v as u32 {
                    let kept: &mut Leaf = &mut leaves[seen[d]];
                    kept.weight = kept.weight.min(leaf.weight);
                } else {
                    owner[d] = v as u32;
                    seen[d] = leaves.len();
                    leaves.push(*leaf);
                }
            }
            packed[v + 1] = leaves.len();
        }
        Ok(Graph {
            offsets: packed,
            leaves,
        })
    }

    /// Packs leaf sets that are already grouped by root. Used by the
    /// generators, which never emit duplicates, self-loops or bad ids.
    pub(crate) fn from_leaf_sets(offsets: Vec<usize>, leaves: Vec<Leaf>) -> Graph {
        debug_assert_eq!(*offsets.last().unwrap_or(&0), leaves.len());
        debug_assert!(leaves.iter().all(|l| l.node.index() + 1 < offsets.len()));
        Graph { offsets, leaves }
    }

    /// Node count `n`.
    #[inline]
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Arc count `E`.
    #[inline]
    pub fn arc_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn check_node(&self, v: NodeId) -> Result<(), GraphError> {
        if v.index() < self.node_count() {
            Ok(())
        } else {
            Err(GraphError::NodeOutOfRange {
                id: v.index(),
                n: self.node_count(),
            })
        }
    }

    /// Leaves of `v`'s united subgraph in stored order.
    pub fn leaf_set(&self, v: NodeId) -> Result<&[Leaf], GraphError> {
        self.check_node(v)?;
        Ok(self.leaves_of(v))
    }

    /// Unchecked-range variant of [`Graph::leaf_set`] for solver inner loops.
    #[inline]
    pub fn leaves_of(&self, v: NodeId) -> &[Leaf] {
        let v = v.index();
        &self.leaves[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn out_degree(&self, v: NodeId) -> usize {
        let v = v.index();
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn subgraph(&self, v: NodeId) -> Result<UnitedSubgraph<'_>, GraphError> {
        Ok(UnitedSubgraph {
            root: v,
            leaves: self.leaf_set(v)?,
        })
    }

    pub fn subgraphs(&self) -> impl Iterator<Item = UnitedSubgraph<'_>> + '_ {
        (0..self.node_count()).map(move |v| UnitedSubgraph {
            root: NodeId::from(v),
            leaves: self.leaves_of(NodeId::from(v)),
        })
    }

    /// All arcs as `(src, dst, weight)` in root-major stored order.
    pub fn arcs(&self) -> impl Iterator<Item = (NodeId, NodeId, Weight)> + '_ {
        self.subgraphs()
            .flat_map(|s| s.leaves.iter().map(move |l| (s.root, l.node, l.weight)))
    }

    /// Weight of arc `(src, dst)`, if present.
    pub fn weight(&self, src: NodeId, dst: NodeId) -> Option<Weight> {
        self.leaf_set(src)
            .ok()?
            .iter()
            .find(|l| l.node == dst)
            .map(|l| l.weight)
    }

    pub fn max_out_degree(&self) -> usize {
        (0..self.node_count())
            .map(|v| self.out_degree(NodeId::from(v)))
            .max()
            .unwrap_or(0)
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.node_count()];
        for l in &self.leaves {
            deg[l.node.index()] += 1;
        }
        deg
    }
}

/// Per-node parent, total weight and region arrays.
///
/// Region 0 marks a wild (unvisited) node; the source sits in region 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelState {
    pub parent: Vec<NodeId>,
    pub total: Vec<Distance>,
    pub region: Vec<u32>,
}

impl LabelState {
    /// Fresh state with only `source` labeled.
    pub fn new(n: usize, source: NodeId) -> LabelState {
        let mut s = LabelState {
            parent: vec![NodeId::NONE; n],
            total: vec![UNSET; n],
            region: vec![0; n],
        };
        s.total[source.index()] = 0;
        s.region[source.index()] = 1;
        s
    }

    pub fn len(&self) -> usize {
        self.total.len()
    }

    pub fn is_empty(&self) -> bool {
        self.total.is_empty()
    }

    #[inline]
    pub fn is_wild(&self, v: NodeId) -> bool {
        self.region[v.index()] == 0
    }

    /// Total weight of `v`, or `None` when unreachable/unlabeled.
    pub fn distance(&self, v: NodeId) -> Option<Distance> {
        match self.total[v.index()] {
            UNSET => None,
            d => Some(d),
        }
    }

    /// Checks that every labeled node reaches a parentless labeled node by
    /// following parent links in fewer than `n` steps. Returns the first node
    /// whose chain does not terminate.
    pub fn find_parent_cycle(&self) -> Option<NodeId> {
        let n = self.len();
        // 0 = unknown, 1 = on current walk, 2 = known to terminate
        let mut mark = vec![0u8; n];
        let mut walk = Vec::new();
        for start in 0..n {
            if mark[start] != 0 {
                continue;
            }
            let mut v = NodeId::from(start);
            loop {
                if v.is_none() || mark[v.index()] == 2 {
                    break;
                }
                if mark[v.index()] == 1 {
                    return Some(v);
                }
                mark[v.index()] = 1;
                walk.push(v);
                v = self.parent[v.index()];
            }
            for w in walk.drain(..) {
                mark[w.index()] = 2;
            }
        }
        None
    }
}

/// Every arc `(v, l)` with `v` labeled and `l` either wild or improvable
/// through `v`. An empty result certifies that the labels are optimal.
pub fn find_all_shorter_arms(g: &Graph, labels: &LabelState) -> Vec<(NodeId, NodeId)> {
    let mut out = Vec::new();
    for sub in g.subgraphs() {
        let v = sub.root;
        if labels.is_wild(v) {
            continue;
        }
        let base = labels.total[v.index()];
        for leaf in sub.leaves {
            let l = leaf.node;
            if labels.is_wild(l) || labels.total[l.index()] > base + Distance::from(leaf.weight) {
                out.push((v, l));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_arc() {
        let g = Graph::build(2, [(0, 1, 5)]).unwrap();
        assert_eq!(g.arc_count(), 1);
        assert_eq!(g.node_count(), 2);
    }

    #[test]
    fn empty_graph() {
        let g = Graph::build(1, []).unwrap();
        assert_eq!(g.arc_count(), 0);
        assert_eq!(g.leaf_set(NodeId(0)).unwrap(), &[]);
    }

    #[test]
    fn parallel_arcs_keep_minimum() {
        let g = Graph::build(3, [(0, 1, 2), (0, 1, 7)]).unwrap();
        assert_eq!(g.arc_count(), 1);
        assert_eq!(
            g.leaf_set(NodeId(0)).unwrap(),
            &[Leaf {
                node: NodeId(1),
                weight: 2
            }]
        );
        let g = Graph::build(3, [(0, 2, 1), (0, 1, 7), (0, 1, 2)]).unwrap();
        let leaves: Vec<_> = g
            .leaves_of(NodeId(0))
            .iter()
            .map(|l| (l.node.0, l.weight))
            .collect();
        assert_eq!(leaves, vec![(2, 1), (1, 2)]);
    }

    #[test]
    fn rejects_bad_arcs() {
        assert_eq!(
            Graph::build(2, [(0, 1, -1)]),
            Err(GraphError::NegativeWeight {
                src: 0,
                dst: 1,
                weight: -1
            })
        );
        assert_eq!(
            Graph::build(2, [(0, 2, 1)]),
            Err(GraphError::NodeOutOfRange { id: 2, n: 2 })
        );
        assert_eq!(Graph::build(2, [(1, 1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(matches!(
            Graph::build(2, [(0, 1, 1 << 40)]),
            Err(GraphError::WeightOverflow { .. })
        ));
    }

    #[test]
    fn leaf_set_bounds() {
        let g = Graph::build(3, [(0, 1, 4), (0, 2, 6)]).unwrap();
        assert_eq!(g.leaf_set(NodeId(0)).unwrap().len(), 2);
        assert!(g.leaf_set(NodeId(2)).unwrap().is_empty());
        assert!(matches!(
            g.leaf_set(NodeId(3)),
            Err(GraphError::NodeOutOfRange { id: 3, n: 3 })
        ));
        assert_eq!(g.weight(NodeId(0), NodeId(2)), Some(6));
        assert_eq!(g.weight(NodeId(2), NodeId(0)), None);
    }

    #[test]
    fn shorter_arms_on_chain() {
        let g = Graph::build(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let mut labels = LabelState::new(3, NodeId(0));
        labels.total = vec![0, 1, 5];
        labels.region = vec![1, 2, 3];
        labels.parent = vec![NodeId::NONE, NodeId(0), NodeId(1)];
        assert_eq!(
            find_all_shorter_arms(&g, &labels),
            vec![(NodeId(1), NodeId(2))]
        );
        labels.total[2] = 2;
        assert!(find_all_shorter_arms(&g, &labels).is_empty());
    }

    #[test]
    fn shorter_arms_ignore_wild_roots() {
        let g = Graph::build(3, [(1, 2, 1)]).unwrap();
        let labels = LabelState::new(3, NodeId(0));
        assert!(find_all_shorter_arms(&g, &labels).is_empty());
    }

    #[test]
    fn parent_cycle_detection() {
        let mut labels = LabelState::new(3, NodeId(0));
        labels.parent = vec![NodeId::NONE, NodeId(0), NodeId(1)];
        assert_eq!(labels.find_parent_cycle(), None);
        labels.parent = vec![NodeId::NONE, NodeId(2), NodeId(1)];
        assert!(labels.find_parent_cycle().is_some());
    }
}

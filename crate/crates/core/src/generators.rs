//! Seeded instance families: complete, random out-degree and grid.
//!
//! All randomness comes from ChaCha8 seeded with the spec's 64-bit seed, and
//! draws happen in (root, leaf) order, so a spec maps to one exact graph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Leaf, NodeId, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    Complete { n: usize },
    Random { n: usize, m: usize },
    Grid { rows: usize, cols: usize },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Complete { .. } => "complete",
            Family::Random { .. } => "random",
            Family::Grid { .. } => "grid",
        }
    }

    pub fn node_count(&self) -> usize {
        match *self {
            Family::Complete { n } | Family::Random { n, .. } => n,
            Family::Grid { rows, cols } => rows * cols,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub family: Family,
    pub w_min: Weight,
    pub w_max: Weight,
    pub seed: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("weight range [{0}, {1}] must satisfy 1 <= w_min <= w_max")]
    BadWeightRange(Weight, Weight),
    #[error("instance must have at least one node")]
    NoNodes,
    #[error("out-degree {m} must be below node count {n}")]
    DegreeTooLarge { n: usize, m: usize },
    #[error("instance with {0} nodes exceeds the 32-bit id space")]
    TooLarge(usize),
}

/// `⌈log₂ n⌉`, the default out-degree for the random family.
pub fn default_degree(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

impl GenSpec {
    pub fn complete(n: usize, seed: u64) -> GenSpec {
        GenSpec::with_family(Family::Complete { n }, seed)
    }

    pub fn random(n: usize, m: usize, seed: u64) -> GenSpec {
        GenSpec::with_family(Family::Random { n, m }, seed)
    }

    pub fn grid(rows: usize, cols: usize, seed: u64) -> GenSpec {
        GenSpec::with_family(Family::Grid { rows, cols }, seed)
    }

    /// Weights default to `[1, 1000]`.
    pub fn with_family(family: Family, seed: u64) -> GenSpec {
        GenSpec {
            family,
            w_min: 1,
            w_max: 1000,
            seed,
        }
    }

    pub fn weights(mut self, w_min: Weight, w_max: Weight) -> GenSpec {
        self.w_min = w_min;
        self.w_max = w_max;
        self
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.w_min < 1 || self.w_min > self.w_max {
            return Err(GenError::BadWeightRange(self.w_min, self.w_max));
        }
        let n = self.family.node_count();
        if n == 0 {
            return Err(GenError::NoNodes);
        }
        if n > u32::MAX as usize - 1 {
            return Err(GenError::TooLarge(n));
        }
        if let Family::Random { n, m } = self.family {
            if m >= n {
                return Err(GenError::DegreeTooLarge { n, m });
            }
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<Graph, GenError> {
        match self.family {
            Family::Complete { .. } => gen_complete(self),
            Family::Random { .. } => gen_random(self),
            Family::Grid { .. } => gen_grid(self),
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Every node points to all others: `E = n(n-1)`.
pub fn gen_complete(spec: &GenSpec) -> Result<Graph, GenError> {
    spec.validate()?;
    let Family::Complete { n } = spec.family else {
        return Err(GenError::NoNodes);
    };
    let mut rng = spec.rng();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut leaves = Vec::with_capacity(n * (n - 1));
    offsets.push(0);
    for v in 0..n {
        for u in (0..n).filter(|&u| u != v) {
            leaves.push(Leaf {
                node: NodeId::from(u),
                weight: rng.random_range(spec.w_min..=spec.w_max),
            });
        }
        offsets.push(leaves.len());
    }
    Ok(Graph::from_leaf_sets(offsets, leaves))
}

/// Each node receives exactly `m` distinct out-neighbors other than itself,
/// found by rejection sampling.
pub fn gen_random(spec: &GenSpec) -> Result<Graph, GenError> {
    spec.validate()?;
    let Family::Random { n, m } = spec.family else {
        return Err(GenError::NoNodes);
    };
    let mut rng = spec.rng();
    // stamp[u] == v + 1 marks u as already chosen for root v
    let mut stamp = vec![0u32; n];
    let mut offsets = Vec::with_capacity(n + 1);
    let mut leaves = Vec::with_capacity(n * m);
    offsets.push(0);
    for v in 0..n {
        stamp[v] = v as u32 + 1;
        let mut picked = 0;
        while picked < m {
            let u = rng.random_range(0..n);
            if stamp[u] == v as u32 + 1 {
                continue;
            }
            stamp[u] = v as u32 + 1;
            leaves.push(Leaf {
                node: NodeId::from(u),
                weight: rng.random_range(spec.w_min..=spec.w_max),
            });
            picked += 1;
        }
        offsets.push(leaves.len());
    }
    Ok(Graph::from_leaf_sets(offsets, leaves))
}

/// `rows x cols` lattice, row-major ids; each node links to its orthogonal
/// neighbors in up, left, right, down order.
pub fn gen_grid(spec: &GenSpec) -> Result<Graph, GenError> {
    spec.validate()?;
    let Family::Grid { rows, cols } = spec.family else {
        return Err(GenError::NoNodes);
    };
    let mut rng = spec.rng();
    let n = rows * cols;
    let arcs = 2 * (rows * cols.saturating_sub(1) + cols * rows.saturating_sub(1));
    let mut offsets = Vec::with_capacity(n + 1);
    let mut leaves = Vec::with_capacity(arcs);
    offsets.push(0);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            let mut push = |u: usize, rng: &mut ChaCha8Rng| {
                leaves.push(Leaf {
                    node: NodeId::from(u),
                    weight: rng.random_range(spec.w_min..=spec.w_max),
                })
            };
            if r > 0 {
                push(v - cols, &mut rng);
            }
            if c > 0 {
                push(v - 1, &mut rng);
            }
            if c + 1 < cols {
                push(v + 1, &mut rng);
            }
            if r + 1 < rows {
                push(v + cols, &mut rng);
            }
            offsets.push(leaves.len());
        }
    }
    Ok(Graph::from_leaf_sets(offsets, leaves))
}

/// Property-test corpus: each ordered pair `(u, v)`, `u != v`, is an arc with
/// probability `density`; weights uniform in `[0, 1000]`, zero included.
/// Nodes may be unreachable.
pub fn gen_random_sparse_for_tests(n: usize, density: f64, seed: u64) -> Graph {
    gen_random_sparse_weighted(n, density, 0, 1000, seed)
}

pub fn gen_random_sparse_weighted(
    n: usize,
    density: f64,
    w_min: Weight,
    w_max: Weight,
    seed: u64,
) -> Graph {
    assert!(density > 0.0 && density <= 1.0, "density must be in (0, 1]");
    assert!(w_min <= w_max);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut offsets = Vec::with_capacity(n + 1);
    let mut leaves = Vec::new();
    offsets.push(0);
    for v in 0..n {
        for u in (0..n).filter(|&u| u != v) {
            if rng.random_bool(density) {
                leaves.push(Leaf {
                    node: NodeId::from(u),
                    weight: rng.random_range(w_min..=w_max),
                });
            }
        }
        offsets.push(leaves.len());
    }
    Graph::from_leaf_sets(offsets, leaves)
}

/// Random DAG: arcs only go from lower to higher rank under a seeded node
/// permutation, so ids do not reveal the topological order.
pub fn gen_random_dag(n: usize, density: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut offsets = Vec::with_capacity(n + 1);
    let mut leaves = Vec::new();
    offsets.push(0);
    for v in 0..n {
        for u in 0..n {
            if rank[u] > rank[v] && rng.random_bool(density) {
                leaves.push(Leaf {
                    node: NodeId::from(u),
                    weight: rng.random_range(0..=1000),
                });
            }
        }
        offsets.push(leaves.len());
    }
    Graph::from_leaf_sets(offsets, leaves)
}

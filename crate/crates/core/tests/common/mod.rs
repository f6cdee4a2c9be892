#![allow(dead_code)]

use std::collections::BTreeMap;

use lizard_sssp::{Distance, LizardEntity, NodeId, ReapMode};

#[derive(Clone, Copy, Debug)]
pub enum Op {
    Insert(u32, Distance),
    Delete(u32),
    GetMin,
    Contains(u32),
}

/// Sorted multiset reference: key -> nodes in insertion order.
#[derive(Default)]
pub struct Model {
    by_key: BTreeMap<Distance, Vec<u32>>,
    key_of: BTreeMap<u32, Distance>,
}

impl Model {
    pub fn insert(&mut self, node: u32, key: Distance) -> bool {
        if self.key_of.contains_key(&node) {
            return false;
        }
        self.key_of.insert(node, key);
        self.by_key.entry(key).or_default().push(node);
        true
    }

    pub fn delete(&mut self, node: u32) -> bool {
        let Some(key) = self.key_of.remove(&node) else {
            return false;
        };
        let list = self.by_key.get_mut(&key).unwrap();
        list.retain(|&v| v != node);
        if list.is_empty() {
            self.by_key.remove(&key);
        }
        true
    }

    /// Removes every item at the smallest key.
    pub fn pop_min(&mut self) -> Option<(Distance, Vec<u32>)> {
        let (key, nodes) = self.by_key.pop_first()?;
        for v in &nodes {
            self.key_of.remove(v);
        }
        Some((key, nodes))
    }

    pub fn contains(&self, node: u32) -> bool {
        self.key_of.contains_key(&node)
    }

    pub fn len(&self) -> usize {
        self.key_of.len()
    }

    pub fn keys(&self) -> Vec<Distance> {
        self.by_key.keys().copied().collect()
    }
}

/// Applies `ops` to both structures, checking agreement and structural
/// invariants after every step. Returns the largest per-delete touch seen.
pub fn replay(ops: &[Op], capacity: usize, mode: ReapMode) -> Result<u32, String> {
    let mut le = LizardEntity::new(capacity);
    let mut model = Model::default();
    for (i, &op) in ops.iter().enumerate() {
        match op {
            Op::Insert(v, k) => {
                let ok = model.insert(v, k);
                if le.insert(NodeId(v), k).is_ok() != ok {
                    return Err(format!("op {i}: insert({v},{k}) disagrees"));
                }
            }
            Op::Delete(v) => {
                let ok = model.delete(v);
                if le.delete(NodeId(v)).is_ok() != ok {
                    return Err(format!("op {i}: delete({v}) disagrees"));
                }
            }
            Op::GetMin => {
                let want = model.pop_min();
                let got = le.get_min_batch(mode).ok();
                match (want, got) {
                    (None, None) => {}
                    (Some((k, mut nodes)), Some(batch)) => {
                        let mut got: Vec<u32> = batch.iter().map(|v| v.0).collect();
                        got.sort_unstable();
                        nodes.sort_unstable();
                        if got != nodes {
                            return Err(format!("op {i}: batch at key {k}: {got:?} vs {nodes:?}"));
                        }
                    }
                    (w, g) => return Err(format!("op {i}: get_min {w:?} vs {g:?}")),
                }
            }
            Op::Contains(v) => {
                if le.contains(NodeId(v)) != model.contains(v) {
                    return Err(format!("op {i}: contains({v}) disagrees"));
                }
            }
        }
        le.verify_structure()
            .map_err(|e| format!("op {i} ({op:?}): {}", e.0))?;
        if le.len() != model.len() {
            return Err(format!("op {i}: len {} vs {}", le.len(), model.len()));
        }
        if le.ara_keys() != model.keys() {
            return Err(format!("op {i}: ARA keys diverge"));
        }
        if le.counters().max_delete_touch > 8 {
            return Err(format!(
                "op {i}: delete touched {} items",
                le.counters().max_delete_touch
            ));
        }
    }
    Ok(le.counters().max_delete_touch)
}

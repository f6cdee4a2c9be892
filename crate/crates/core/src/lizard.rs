//! Lizard entity: a priority structure made of three linked systems over one
//! arena of items.
//!
//! * a binary search tree over distinct keys,
//! * the ARA, an ascending doubly-linked list threading the same items, which
//!   gives O(1) access to the minimum and to in-order neighbors,
//! * per-key cousin lists (CL) holding every further item with an equal key.
//!
//! Exactly one item per distinct key, its *agency*, lives in the tree and the
//! ARA; cousins hang off the agency in a FIFO ring. Items are addressed by
//! node id, so a node can be in the structure at most once.
//!
//! Every operation charges a fixed schedule of "items involved" into
//! [`OpCostCounters`], which is what the solver reports as total cost:
//!
//! | operation                  | charge                          |
//! |----------------------------|---------------------------------|
//! | build of `n` items         | `n * ceil(log2 n) + n`          |
//! | insert                     | search path length (+1 if new agency) |
//! | delete                     | 2 (cousin) / 4 (agency)         |
//! | get-min batch of `k` items | `2k` (repeat delete) / 3 (cut agency) |
//! | contains                   | search path length if present, 1 otherwise |
//!
//! The tree is never rebalanced. Removing a two-child node uses the ARA
//! successor as its replacement, so deletion touches a bounded number of
//! neighbors.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Distance, NodeId};

const NIL: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Absent,
    Agency,
    Cousin,
}

#[derive(Clone, Copy, Debug)]
struct Item {
    key: Distance,
    left: u32,
    right: u32,
    parent: u32,
    prev: u32,
    next: u32,
    // circular ring through the whole cousin list; agency.cl_prev is the tail
    cl_prev: u32,
    cl_next: u32,
    state: State,
}

const EMPTY_ITEM: Item = Item {
    key: 0,
    left: NIL,
    right: NIL,
    parent: NIL,
    prev: NIL,
    next: NIL,
    cl_prev: NIL,
    cl_next: NIL,
    state: State::Absent,
};

/// How a minimum batch is taken out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReapMode {
    /// Delete the current agency once per item of the batch.
    #[default]
    RepeatDelete,
    /// Detach the agency once and take its whole cousin list with it.
    CutAgency,
}

impl ReapMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ReapMode::RepeatDelete => "repeat_delete",
            ReapMode::CutAgency => "cut_agency",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LeError {
    #[error("node {0} is already present")]
    DuplicateNode(NodeId),
    #[error("node {0} is not present")]
    NotFound(NodeId),
    #[error("structure is empty")]
    Empty,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCostCounters {
    /// Deletions, with a cut-agency batch counted once.
    pub deletions: u64,
    pub total_cost: u64,
    pub build_cost: u64,
    pub insert_cost: u64,
    pub delete_cost: u64,
    pub get_min_cost: u64,
    pub contains_cost: u64,
    pub inserts: u64,
    pub batches: u64,
    /// Largest number of distinct neighbor items rewired by one delete.
    pub max_delete_touch: u32,
    pub delete_touch_sum: u64,
    pub delete_ops: u64,
}

impl OpCostCounters {
    fn charge(&mut self, bucket: Bucket, amount: u64) {
        self.total_cost += amount;
        match bucket {
            Bucket::Build => self.build_cost += amount,
            Bucket::Insert => self.insert_cost += amount,
            Bucket::Delete => self.delete_cost += amount,
            Bucket::GetMin => self.get_min_cost += amount,
            Bucket::Contains => self.contains_cost += amount,
        }
    }

    /// Mean neighbor items rewired per delete.
    pub fn mean_delete_touch(&self) -> f64 {
        if self.delete_ops == 0 {
            0.0
        } else {
            self.delete_touch_sum as f64 / self.delete_ops as f64
        }
    }
}

#[derive(Clone, Copy)]
enum Bucket {
    Build,
    Insert,
    Delete,
    GetMin,
    Contains,
}

/// Distinct items rewired during one structural update.
struct Touch {
    ids: [u32; 12],
    len: usize,
}

impl Touch {
    fn new() -> Touch {
        Touch {
            ids: [NIL; 12],
            len: 0,
        }
    }

    #[inline]
    fn add(&mut self, id: u32) {
        if id == NIL || self.ids[..self.len].contains(&id) {
            return;
        }
        if self.len < self.ids.len() {
            self.ids[self.len] = id;
        }
        self.len += 1;
    }
}

/// First structural inconsistency found by [`LizardEntity::verify_structure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation(pub String);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Violation {}

#[derive(Clone)]
pub struct LizardEntity {
    items: Vec<Item>,
    root: u32,
    ara_min: u32,
    ara_max: u32,
    size: usize,
    agencies: usize,
    peak_height: usize,
    counters: OpCostCounters,
}

impl fmt::Debug for LizardEntity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LizardEntity")
            .field("size", &self.size)
            .field("agencies", &self.agencies)
            .field("ara", &self.ara_keys())
            .finish()
    }
}

impl Default for LizardEntity {
    fn default() -> Self {
        LizardEntity::new(0)
    }
}

impl LizardEntity {
    /// Empty structure with room for node ids below `capacity`.
    pub fn new(capacity: usize) -> LizardEntity {
        LizardEntity {
            items: vec![EMPTY_ITEM; capacity],
            root: NIL,
            ara_min: NIL,
            ara_max: NIL,
            size: 0,
            agencies: 0,
            peak_height: 0,
            counters: OpCostCounters::default(),
        }
    }

    /// Sorts `entries` by key (stable), groups equal keys into cousin lists
    /// headed by their first occurrence, threads the agencies into the ARA and
    /// assembles a balanced tree over them by recursive midpoint.
    pub fn build(capacity: usize, entries: &[(NodeId, Distance)]) -> Result<LizardEntity, LeError> {
        let cap = entries
            .iter()
            .map(|(v, _)| v.index() + 1)
            .max()
            .unwrap_or(0)
            .max(capacity);
        let mut le = LizardEntity::new(cap);
        for &(v, _) in entries {
            let it = &mut le.items[v.index()];
            if it.state != State::Absent {
                return Err(LeError::DuplicateNode(v));
            }
            it.state = State::Cousin;
        }
        let mut sorted = entries.to_vec();
        sorted.sort_by_key(|&(_, k)| k);

        let mut agencies: Vec<u32> = Vec::new();
        for &(v, key) in &sorted {
            let id = v.0;
            let head = agencies.last().copied();
            match head {
                Some(a) if le.items[a as usize].key == key => {
                    le.items[id as usize] = Item {
                        key,
                        state: State::Cousin,
                        ..EMPTY_ITEM
                    };
                    le.ring_append(a, id);
                }
                _ => {
                    le.items[id as usize] = Item {
                        key,
                        state: State::Agency,
                        cl_prev: id,
                        cl_next: id,
                        ..EMPTY_ITEM
                    };
                    if let Some(a) = head {
                        le.items[a as usize].next = id;
                        le.items[id as usize].prev = a;
                    }
                    agencies.push(id);
                }
            }
        }
        le.ara_min = agencies.first().copied().unwrap_or(NIL);
        le.ara_max = agencies.last().copied().unwrap_or(NIL);
        le.root = le.pyramid(&agencies, NIL);
        le.size = entries.len();
        le.agencies = agencies.len();
        le.peak_height = le.height();

        let n = entries.len() as u64;
        le.counters.charge(Bucket::Build, n * ceil_log2(n) + n);
        Ok(le)
    }

    fn pyramid(&mut self, agencies: &[u32], parent: u32) -> u32 {
        if agencies.is_empty() {
            return NIL;
        }
        let mid = agencies.len() / 2;
        let id = agencies[mid];
        self.items[id as usize].parent = parent;
        let left = self.pyramid(&agencies[..mid], id);
        let right = self.pyramid(&agencies[mid + 1..], id);
        let it = &mut self.items[id as usize];
        it.left = left;
        it.right = right;
        id
    }

    /// Total items, agencies and cousins.
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Distinct keys.
    pub fn agency_count(&self) -> usize {
        self.agencies
    }

    pub fn counters(&self) -> &OpCostCounters {
        &self.counters
    }

    pub fn min_key(&self) -> Option<Distance> {
        (self.ara_min != NIL).then(|| self.items[self.ara_min as usize].key)
    }

    pub fn max_key(&self) -> Option<Distance> {
        (self.ara_max != NIL).then(|| self.items[self.ara_max as usize].key)
    }

    /// Key of `node` if present. Uncharged.
    pub fn key_of(&self, node: NodeId) -> Option<Distance> {
        self.items
            .get(node.index())
            .filter(|it| it.state != State::Absent)
            .map(|it| it.key)
    }

    /// Whether `node` heads its key's cousin list. Uncharged.
    pub fn is_agency(&self, node: NodeId) -> bool {
        self.items
            .get(node.index())
            .is_some_and(|it| it.state == State::Agency)
    }

    #[inline]
    fn present(&self, node: NodeId) -> bool {
        self.items
            .get(node.index())
            .is_some_and(|it| it.state != State::Absent)
    }

    /// Walks from the root toward `key`. Returns the agency with that key (or
    /// NIL), the last item visited, and how many items were visited.
    fn search(&self, key: Distance) -> (u32, u32, u64) {
        let mut cur = self.root;
        let mut last = NIL;
        let mut visited = 0u64;
        while cur != NIL {
            visited += 1;
            last = cur;
            let it = &self.items[cur as usize];
            cur = match key.cmp(&it.key) {
                std::cmp::Ordering::Equal => return (cur, last, visited),
                std::cmp::Ordering::Less => it.left,
                std::cmp::Ordering::Greater => it.right,
            };
        }
        (NIL, last, visited)
    }

    fn ring_append(&mut self, agency: u32, id: u32) {
        let tail = self.items[agency as usize].cl_prev;
        self.items[tail as usize].cl_next = id;
        let it = &mut self.items[id as usize];
        it.cl_prev = tail;
        it.cl_next = agency;
        self.items[agency as usize].cl_prev = id;
    }

    pub fn insert(&mut self, node: NodeId, key: Distance) -> Result<(), LeError> {
        if self.present(node) {
            return Err(LeError::DuplicateNode(node));
        }
        if node.index() >= self.items.len() {
            self.items.resize(node.index() + 1, EMPTY_ITEM);
        }
        let id = node.0;
        let (found, parent, visited) = self.search(key);
        self.counters.inserts += 1;
        self.size += 1;
        if found != NIL {
            self.items[id as usize] = Item {
                key,
                state: State::Cousin,
                ..EMPTY_ITEM
            };
            self.ring_append(found, id);
            self.counters.charge(Bucket::Insert, visited);
            return Ok(());
        }

        let mut item = Item {
            key,
            state: State::Agency,
            parent,
            cl_prev: id,
            cl_next: id,
            ..EMPTY_ITEM
        };
        if parent == NIL {
            self.root = id;
            self.ara_min = id;
            self.ara_max = id;
        } else if key < self.items[parent as usize].key {
            // parent is the in-order successor of a new left leaf
            item.next = parent;
            item.prev = self.items[parent as usize].prev;
            self.items[parent as usize].left = id;
        } else {
            item.prev = parent;
            item.next = self.items[parent as usize].next;
            self.items[parent as usize].right = id;
        }
        self.items[id as usize] = item;
        self.ara_link(id);
        self.agencies += 1;
        self.peak_height = self.peak_height.max(visited as usize + 1);
        self.counters.charge(Bucket::Insert, visited + 1);
        Ok(())
    }

    /// Points the ARA neighbors of `id` back at it.
    fn ara_link(&mut self, id: u32) {
        let Item { prev, next, .. } = self.items[id as usize];
        if prev == NIL {
            self.ara_min = id;
        } else {
            self.items[prev as usize].next = id;
        }
        if next == NIL {
            self.ara_max = id;
        } else {
            self.items[next as usize].prev = id;
        }
    }

    /// Replaces `u`'s subtree position with `v` (which may be NIL).
    fn transplant(&mut self, u: u32, v: u32, touch: &mut Touch) {
        let p = self.items[u as usize].parent;
        if p == NIL {
            self.root = v;
        } else if self.items[p as usize].left == u {
            self.items[p as usize].left = v;
        } else {
            self.items[p as usize].right = v;
        }
        touch.add(p);
        if v != NIL {
            self.items[v as usize].parent = p;
            touch.add(v);
        }
    }

    /// Takes an agency without cousins out of the ARA and the tree.
    fn unlink_agency(&mut self, z: u32, touch: &mut Touch) {
        let Item {
            left,
            right,
            prev,
            next,
            ..
        } = self.items[z as usize];

        if prev == NIL {
            self.ara_min = next;
        } else {
            self.items[prev as usize].next = next;
            touch.add(prev);
        }
        if next == NIL {
            self.ara_max = prev;
        } else {
            self.items[next as usize].prev = prev;
            touch.add(next);
        }

        if left == NIL {
            self.transplant(z, right, touch);
        } else if right == NIL {
            self.transplant(z, left, touch);
        } else {
            // two children: the ARA successor is the leftmost of the right subtree
            let y = next;
            if self.items[y as usize].parent != z {
                let y_right = self.items[y as usize].right;
                self.transplant(y, y_right, touch);
                self.items[y as usize].right = right;
                self.items[right as usize].parent = y;
                touch.add(right);
            }
            self.transplant(z, y, touch);
            self.items[y as usize].left = left;
            self.items[left as usize].parent = y;
            touch.add(left);
        }
        self.agencies -= 1;
    }

    /// Moves agency `old`'s tree and ARA position to `heir`, its first cousin.
    fn promote(&mut self, old: u32, heir: u32, touch: &mut Touch) {
        let o = self.items[old as usize];
        {
            let h = &mut self.items[heir as usize];
            h.left = o.left;
            h.right = o.right;
            h.parent = o.parent;
            h.prev = o.prev;
            h.next = o.next;
            h.state = State::Agency;
        }
        touch.add(heir);
        if o.parent == NIL {
            self.root = heir;
        } else if self.items[o.parent as usize].left == old {
            self.items[o.parent as usize].left = heir;
        } else {
            self.items[o.parent as usize].right = heir;
        }
        touch.add(o.parent);
        for child in [o.left, o.right] {
            if child != NIL {
                self.items[child as usize].parent = heir;
                touch.add(child);
            }
        }
        self.ara_link(heir);
        touch.add(o.prev);
        touch.add(o.next);
        self.ring_remove(old, touch);
    }

    fn ring_remove(&mut self, id: u32, touch: &mut Touch) {
        let Item {
            cl_prev, cl_next, ..
        } = self.items[id as usize];
        self.items[cl_prev as usize].cl_next = cl_next;
        self.items[cl_next as usize].cl_prev = cl_prev;
        touch.add(cl_prev);
        touch.add(cl_next);
    }

    /// Structural removal without charging; returns neighbors rewired.
    fn remove(&mut self, id: u32) -> usize {
        let mut touch = Touch::new();
        let it = self.items[id as usize];
        match it.state {
            State::Absent => unreachable!(),
            State::Cousin => self.ring_remove(id, &mut touch),
            State::Agency if it.cl_next != id => self.promote(id, it.cl_next, &mut touch),
            State::Agency => self.unlink_agency(id, &mut touch),
        }
        self.items[id as usize] = EMPTY_ITEM;
        self.size -= 1;
        touch.len
    }

    pub fn delete(&mut self, node: NodeId) -> Result<(), LeError> {
        if !self.present(node) {
            return Err(LeError::NotFound(node));
        }
        let charge = match self.items[node.index()].state {
            State::Cousin => 2,
            _ => 4,
        };
        let touched = self.remove(node.0) as u32;
        let c = &mut self.counters;
        c.deletions += 1;
        c.delete_ops += 1;
        c.delete_touch_sum += u64::from(touched);
        c.max_delete_touch = c.max_delete_touch.max(touched);
        c.charge(Bucket::Delete, charge);
        Ok(())
    }

    /// Removes every item carrying the minimum key and appends them to `out`,
    /// agency first, then cousins in insertion order. Returns the key.
    pub fn get_min_batch_into(
        &mut self,
        mode: ReapMode,
        out: &mut Vec<NodeId>,
    ) -> Result<Distance, LeError> {
        let agency = self.ara_min;
        if agency == NIL {
            return Err(LeError::Empty);
        }
        let key = self.items[agency as usize].key;
        let start = out.len();
        let mut cur = agency;
        loop {
            out.push(NodeId(cur));
            cur = self.items[cur as usize].cl_next;
            if cur == agency {
                break;
            }
        }
        let k = (out.len() - start) as u64;
        self.counters.batches += 1;
        match mode {
            ReapMode::RepeatDelete => {
                for &v in &out[start..] {
                    debug_assert_eq!(self.ara_min, v.0);
                    self.remove(v.0);
                }
                self.counters.deletions += k;
                self.counters.charge(Bucket::GetMin, 2 * k);
            }
            ReapMode::CutAgency => {
                let mut touch = Touch::new();
                self.unlink_agency(agency, &mut touch);
                for &v in &out[start..] {
                    self.items[v.index()] = EMPTY_ITEM;
                }
                self.size -= k as usize;
                self.counters.deletions += 1;
                self.counters.charge(Bucket::GetMin, 3);
            }
        }
        Ok(key)
    }

    pub fn get_min_batch(&mut self, mode: ReapMode) -> Result<Vec<NodeId>, LeError> {
        let mut out = Vec::new();
        self.get_min_batch_into(mode, &mut out)?;
        Ok(out)
    }

    /// Exact membership test, charged as a tree search to the node's key.
    pub fn contains(&mut self, node: NodeId) -> bool {
        if !self.present(node) {
            self.counters.charge(Bucket::Contains, 1);
            return false;
        }
        let (_, _, visited) = self.search(self.items[node.index()].key);
        self.counters.charge(Bucket::Contains, visited);
        true
    }

    /// Moves `node` to `new_key` by delete then insert.
    pub fn resort(&mut self, node: NodeId, new_key: Distance) -> Result<(), LeError> {
        self.delete(node)?;
        self.insert(node, new_key)
    }

    /// Agency keys in ARA order.
    pub fn ara_keys(&self) -> Vec<Distance> {
        let mut out = Vec::with_capacity(self.agencies);
        let mut cur = self.ara_min;
        while cur != NIL && out.len() <= self.agencies {
            out.push(self.items[cur as usize].key);
            cur = self.items[cur as usize].next;
        }
        out
    }

    /// Members of the cousin list with `key`, agency first.
    pub fn cousins(&self, key: Distance) -> Vec<NodeId> {
        let (a, _, _) = self.search(key);
        let mut out = Vec::new();
        if a == NIL {
            return out;
        }
        let mut cur = a;
        loop {
            out.push(NodeId(cur));
            cur = self.items[cur as usize].cl_next;
            if cur == a {
                break;
            }
        }
        out
    }

    /// Largest tree height reached so far. Removals never deepen an item, so
    /// this only moves on insert.
    pub fn peak_height(&self) -> usize {
        self.peak_height
    }

    /// Levels in the tree; 0 when empty.
    pub fn height(&self) -> usize {
        let mut best = 0;
        let mut stack = Vec::new();
        if self.root != NIL {
            stack.push((self.root, 1));
        }
        while let Some((id, d)) = stack.pop() {
            best = best.max(d);
            let it = &self.items[id as usize];
            for c in [it.left, it.right] {
                if c != NIL {
                    stack.push((c, d + 1));
                }
            }
        }
        best
    }

    /// Tree shape as nested `(key, left, right)` for display, capped at `depth`.
    pub fn tree_snapshot(&self, depth: usize) -> Option<TreeNode> {
        fn walk(le: &LizardEntity, id: u32, depth: usize) -> Option<TreeNode> {
            if id == NIL || depth == 0 {
                return None;
            }
            let it = &le.items[id as usize];
            let mut cousins = Vec::new();
            let mut cur = it.cl_next;
            while cur != id {
                cousins.push(cur);
                cur = le.items[cur as usize].cl_next;
            }
            Some(TreeNode {
                key: it.key,
                node: id,
                cousins,
                left: walk(le, it.left, depth - 1).map(Box::new),
                right: walk(le, it.right, depth - 1).map(Box::new),
            })
        }
        walk(self, self.root, depth)
    }

    /// Walks the tree, the ARA and every cousin list and checks that they
    /// agree with each other and with the size counters.
    pub fn verify_structure(&self) -> Result<(), Violation> {
        let fail = |msg: String| Err(Violation(msg));

        // in-order walk of the tree
        let mut inorder = Vec::with_capacity(self.agencies);
        let mut stack = Vec::new();
        let mut cur = self.root;
        if cur != NIL && self.items[cur as usize].parent != NIL {
            return fail(format!("root {cur} has a parent"));
        }
        let limit = self.items.len();
        while cur != NIL || !stack.is_empty() {
            while cur != NIL {
                if stack.len() > limit {
                    return fail("tree contains a cycle".into());
                }
                let it = &self.items[cur as usize];
                for c in [it.left, it.right] {
                    if c != NIL && self.items[c as usize].parent != cur {
                        return fail(format!("child {c} does not point back to parent {cur}"));
                    }
                }
                stack.push(cur);
                cur = it.left;
            }
            let id = stack.pop().unwrap();
            if inorder.len() > limit {
                return fail("tree contains a cycle".into());
            }
            inorder.push(id);
            cur = self.items[id as usize].right;
        }
        for w in inorder.windows(2) {
            if self.items[w[0] as usize].key >= self.items[w[1] as usize].key {
                return fail(format!(
                    "tree order broken between items {} and {}",
                    w[0], w[1]
                ));
            }
        }

        // ARA must be the same sequence
        let mut prev = NIL;
        let mut cur = self.ara_min;
        for (i, &id) in inorder.iter().enumerate() {
            if cur != id {
                return fail(format!(
                    "ARA position {i} holds {cur}, tree in-order holds {id}"
                ));
            }
            if self.items[cur as usize].prev != prev {
                return fail(format!("ARA back link of {cur} is broken"));
            }
            prev = cur;
            cur = self.items[cur as usize].next;
        }
        if cur != NIL {
            return fail(format!("ARA continues past the last agency at {cur}"));
        }
        if self.ara_max != prev {
            return fail(format!("ARA max is {}, expected {prev}", self.ara_max));
        }
        if inorder.len() != self.agencies {
            return fail(format!(
                "{} agencies linked, counter says {}",
                inorder.len(),
                self.agencies
            ));
        }

        // cousin rings
        let mut members = 0usize;
        for &a in &inorder {
            let agency = &self.items[a as usize];
            if agency.state != State::Agency {
                return fail(format!("item {a} is linked in the tree but not an agency"));
            }
            let mut cur = a;
            loop {
                members += 1;
                let next = self.items[cur as usize].cl_next;
                if next == NIL || self.items[next as usize].cl_prev != cur {
                    return fail(format!("cousin ring broken after {cur}"));
                }
                if next == a {
                    break;
                }
                let c = &self.items[next as usize];
                if c.state != State::Cousin || c.key != agency.key {
                    return fail(format!(
                        "item {next} in ring of key {} is not a cousin",
                        agency.key
                    ));
                }
                if members > self.size {
                    return fail(format!("cousin ring of {a} does not close"));
                }
                cur = next;
            }
        }
        if members != self.size {
            return fail(format!(
                "{members} items reachable, size says {}",
                self.size
            ));
        }
        let present = self
            .items
            .iter()
            .filter(|it| it.state != State::Absent)
            .count();
        if present != self.size {
            return fail(format!(
                "{present} items marked present, size says {}",
                self.size
            ));
        }
        Ok(())
    }
}

/// Display-only tree node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    pub key: Distance,
    pub node: u32,
    pub cousins: Vec<u32>,
    pub left: Option<Box<TreeNode>>,
    pub right: Option<Box<TreeNode>>,
}

fn ceil_log2(n: u64) -> u64 {
    if n <= 1 {
        0
    } else {
        u64::from(u64::BITS - (n - 1).leading_zeros())
    }
}

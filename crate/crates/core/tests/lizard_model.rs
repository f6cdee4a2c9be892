mod common;

use common::{replay, Op};
use lizard_sssp::{Distance, LizardEntity, NodeId, ReapMode};
use proptest::prelude::*;

const CAP: u32 = 48;

fn op() -> impl Strategy<Value = Op> {
    // a narrow key range forces lots of cousins
    prop_oneof![
        4 => (0..CAP, 0u64..24).prop_map(|(v, k)| Op::Insert(v, k)),
        2 => (0..CAP).prop_map(Op::Delete),
        2 => Just(Op::GetMin),
        1 => (0..CAP).prop_map(Op::Contains),
    ]
}

fn mode() -> impl Strategy<Value = ReapMode> {
    prop_oneof![Just(ReapMode::RepeatDelete), Just(ReapMode::CutAgency)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn agrees_with_sorted_multiset(ops in prop::collection::vec(op(), 0..400), mode in mode()) {
        if let Err(e) = replay(&ops, CAP as usize, mode) {
            prop_assert!(false, "{}", e);
        }
    }

    #[test]
    fn build_matches_sequential_inserts(keys in prop::collection::vec(0u64..30, 0..200)) {
        let entries: Vec<(NodeId, Distance)> =
            keys.iter().enumerate().map(|(i, &k)| (NodeId(i as u32), k)).collect();
        let built = LizardEntity::build(keys.len(), &entries).unwrap();
        built.verify_structure().unwrap();
        let mut grown = LizardEntity::new(keys.len());
        for &(v, k) in &entries {
            grown.insert(v, k).unwrap();
        }
        prop_assert_eq!(built.ara_keys(), grown.ara_keys());
        let mut distinct = keys.clone();
        distinct.sort_unstable();
        distinct.dedup();
        prop_assert_eq!(built.agency_count(), distinct.len());
        // the balanced build never grows taller than ceil(log2(agencies + 1))
        let bound = (usize::BITS - distinct.len().leading_zeros()) as usize;
        prop_assert!(built.height() <= bound);
        for &k in &distinct {
            // cousins come out in input order
            let want: Vec<NodeId> = entries.iter().filter(|e| e.1 == k).map(|e| e.0).collect();
            prop_assert_eq!(built.cousins(k), want.clone());
            prop_assert_eq!(grown.cousins(k), want);
        }
        let n = keys.len() as u64;
        let log = if n <= 1 { 0 } else { 64 - (n - 1).leading_zeros() as u64 };
        prop_assert_eq!(built.counters().build_cost, n * log + n);
    }

    #[test]
    fn batches_drain_in_key_order(keys in prop::collection::vec(0u64..50, 1..150), mode in mode()) {
        let entries: Vec<(NodeId, Distance)> =
            keys.iter().enumerate().map(|(i, &k)| (NodeId(i as u32), k)).collect();
        let mut le = LizardEntity::build(keys.len(), &entries).unwrap();
        let mut seen = 0;
        let mut last = None;
        while let Ok(batch) = le.get_min_batch(mode) {
            let k = keys[batch[0].index()];
            prop_assert!(last < Some(k));
            prop_assert!(batch.iter().all(|v| keys[v.index()] == k));
            seen += batch.len();
            last = Some(k);
        }
        prop_assert_eq!(seen, keys.len());
        let c = le.counters();
        match mode {
            ReapMode::RepeatDelete => prop_assert_eq!(c.get_min_cost, 2 * keys.len() as u64),
            ReapMode::CutAgency => prop_assert_eq!(c.get_min_cost, 3 * c.batches),
        }
    }
}

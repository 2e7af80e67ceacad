mod common;

use proptest::prelude::*;

use common::fixed_seed;
use common::tutte_oracle::{decomposition_property, ear_graph, graphs, oracle_keys, Kind};

proptest! {
    #![proptest_config(fixed_seed(200, 0x5a3_0002))]

    #[test]
    fn decomposition_reassembles_and_matches_naive_splitting((pairs, perm) in graphs()) {
        decomposition_property(&pairs, &perm)?;
    }
}

#[test]
fn naive_splitting_reproduces_the_small_examples() {
    let k4_minus = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)];
    let kinds: Vec<Kind> = oracle_keys(&k4_minus).iter().map(|k| k.0).collect();
    assert_eq!(kinds, [Kind::Bond, Kind::Polygon, Kind::Polygon]);
    let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    assert_eq!(oracle_keys(&k4).len(), 1);
    assert_eq!(oracle_keys(&ear_graph(5, &[], 12))[0].0, Kind::Polygon);
}

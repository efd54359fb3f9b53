//! Property tests: structural invariants on random trees, codec
//! roundtrips, and the tree/urn coupling.

use proptest::prelude::*;

use marytree::codec;
use marytree::rng::{permutation, Rng64};
use marytree::urn::{self, ReplacementMatrix};
use marytree::MaryTree;

fn arb_tree_input() -> impl Strategy<Value = (usize, u64, u64)> {
    // (m, n, seed) for a random permutation tree
    (2usize..=12, 1u64..=250, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn profiles_conserve_and_interlock((m, n, seed) in arb_tree_input()) {
        let tree = MaryTree::from_permutation(m, &permutation(n, seed)).unwrap();
        let x = tree.gap_profile().unwrap();
        let d = tree.degree_profile().unwrap();

        // every tree with n keys exposes n + 1 insertion positions
        prop_assert_eq!(x.total(), n + 1);

        // outdegree counts and gap colors describe the same nodes
        for i in 1..m {
            prop_assert_eq!(d.outdegree(i) * (m - i) as u64, x.color(m - i));
        }
        let mut leaves = x.color(m) / m as u64;
        prop_assert_eq!(x.color(m) % m as u64, 0);
        for j in 1..=m.saturating_sub(2) {
            prop_assert_eq!(x.color(m + j) % (j as u64 + 1), 0);
            leaves += x.color(m + j) / (j as u64 + 1);
        }
        prop_assert_eq!(leaves, d.leaves());
        prop_assert_eq!(d.total_nodes(), tree.node_count());
        prop_assert_eq!(d.one_protected(), d.total_nodes() - d.leaves());

        // search order holds globally
        let keys = tree.in_order_keys();
        prop_assert!(keys.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(keys.len() as u64, n);
    }

    #[test]
    fn build_is_deterministic((m, n, seed) in arb_tree_input()) {
        let perm = permutation(n, seed);
        let a = MaryTree::from_permutation(m, &perm).unwrap();
        let b = MaryTree::from_permutation(m, &perm).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn codec_roundtrips_and_matches_formula(
        (m, n, seed) in arb_tree_input(),
        k in 2u32..=8,
        p in 2u32..=8,
    ) {
        let tree = MaryTree::from_permutation(m, &permutation(n, seed)).unwrap();
        let params = codec::size_params(m, k, p, 8).unwrap();
        let image = codec::encode(&tree, &params).unwrap();

        let x = tree.gap_profile().unwrap();
        let full = tree.degree_profile().unwrap().outdegree(m);
        let formula = codec::compact_size_formula(&x, full, &params).unwrap();
        prop_assert_eq!(image.payload_len().unwrap(), formula.total);

        let back = codec::decode(&image).unwrap();
        prop_assert_eq!(&back, &tree);

        // spot-check membership through the image
        let mut rng = Rng64::new(seed ^ 0xABCD);
        for _ in 0..16 {
            let key = rng.bounded(2 * n) + 1;
            prop_assert_eq!(codec::lookup(&image, key).unwrap(), tree.contains(key));
        }
        prop_assert!(!codec::lookup(&image, n + 1).unwrap());
    }

    #[test]
    fn every_insertion_delta_is_a_matrix_row(
        m in 2usize..=10,
        seed in any::<u64>(),
    ) {
        let matrix = ReplacementMatrix::new(m).unwrap();
        let mut tree = MaryTree::from_permutation(m, &[1]).unwrap();
        let mut urn_state = urn::initial_state(m).unwrap();
        let mut rng = Rng64::new(seed);
        for _ in 0..60 {
            let gap = rng.bounded(tree.len() + 1);
            let (color, delta) = urn::coupled_insert_delta(&tree, gap).unwrap();
            prop_assert_eq!(&delta, matrix.row(color));
            let color_again = tree.insert_at_gap(gap).unwrap();
            prop_assert_eq!(color, color_again);
            urn_state.draw_and_replace(&matrix, color).unwrap();
            let profile = tree.gap_profile().unwrap();
            prop_assert_eq!(profile.counts(), urn_state.counts());
        }
    }
}

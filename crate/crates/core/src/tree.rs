//! Random m-ary search trees with exact gap and degree profiles.
//!
//! A tree with branching factor `m` stores up to `m - 1` sorted keys per
//! node. A node only acquires children once it holds `m - 1` keys; the
//! `i`-th child subtree holds exactly the keys falling strictly between
//! the `(i-1)`-st and `i`-th key of the node (with sentinels at the
//! ends). Keys are positive integer ranks, pairwise distinct.
//!
//! Beyond insertion, the module classifies nodes into the `2m - 1` type
//! codes used throughout the crate and counts the two profiles that
//! drive all the asymptotics: the gap profile (insertion positions by
//! color) and the outdegree profile.
//!
//! ```
//! use marytree::MaryTree;
//!
//! let tree = MaryTree::from_permutation(4, &[12, 16, 11, 9, 13, 7]).unwrap();
//! assert_eq!(tree.len(), 6);
//! assert_eq!(tree.in_order_keys(), vec![7, 9, 11, 12, 13, 16]);
//!
//! // six keys expose seven insertion positions
//! let gaps = tree.gap_profile().unwrap();
//! assert_eq!(gaps.total(), 7);
//! ```

use crate::error::{Error, Result};

/// Key rank. Ranks within one tree are pairwise distinct and positive.
pub type Rank = u64;

/// Index of a node in the tree's arena. Stable across insertions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeId(u32);

impl NodeId {
    fn index(self) -> usize {
        self.0 as usize
    }
}

/// Node type code in `1..=2m-1`.
///
/// * `1..=m-1`: node with `m - 1` keys, at least one child, and exactly
///   `code` empty child slots;
/// * `m`: full leaf (`m - 1` keys, no children);
/// * `m+j` for `j` in `1..=m-2`: leaf holding `j` keys;
/// * `2m-1`: full node (`m - 1` keys, `m` children).
///
/// For every code except `2m-1`, the code doubles as the color of the
/// gaps the node contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeTypeCode(usize);

impl NodeTypeCode {
    pub fn code(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone)]
struct Node {
    keys: Vec<Rank>,
    /// Empty until the node receives its first child; length `m` after.
    children: Vec<Option<NodeId>>,
}

impl Node {
    fn child_count(&self) -> usize {
        self.children.iter().flatten().count()
    }
}

/// One insertion position: slot `slot` of node `node`, gap color `color`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gap {
    pub node: NodeId,
    pub slot: usize,
    pub color: usize,
}

/// Counts of gaps by color, `color(i)` = number of color-`i` gaps,
/// for `i` in `1..=2m-2`. The counts always sum to `n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapProfile {
    m: usize,
    counts: Vec<u64>,
}

impl GapProfile {
    /// Profile from raw counts; `counts[i]` is the number of color-(i+1)
    /// gaps and must have length 2m - 2.
    pub fn from_counts(m: usize, counts: Vec<u64>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!(
                "branching factor must be at least 2, got {m}"
            )));
        }
        if counts.len() != 2 * m - 2 {
            return Err(Error::InvalidParameter(format!(
                "expected {} colors, got {}",
                2 * m - 2,
                counts.len()
            )));
        }
        Ok(GapProfile { m, counts })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of gaps of the given color (1-based, `1..=2m-2`).
    pub fn color(&self, color: usize) -> u64 {
        self.counts[color - 1]
    }

    /// Counts indexed from 0; entry `i` is color `i + 1`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Componentwise `self - earlier`, as signed deltas.
    pub fn delta_from(&self, earlier: &GapProfile) -> Vec<i64> {
        self.counts
            .iter()
            .zip(&earlier.counts)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }
}

/// Counts of nodes by outdegree, `outdegree(k)` for `k` in `0..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    m: usize,
    counts: Vec<u64>,
}

impl DegreeProfile {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn outdegree(&self, k: usize) -> u64 {
        self.counts[k]
    }

    /// Counts indexed by outdegree `0..=m`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Total node count S.
    pub fn total_nodes(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Leaf count L (outdegree 0).
    pub fn leaves(&self) -> u64 {
        self.counts[0]
    }

    /// 1-protected nodes P: the non-leaves.
    pub fn one_protected(&self) -> u64 {
        self.total_nodes() - self.leaves()
    }
}

/// An m-ary search tree over integer ranks.
#[derive(Debug, Clone)]
pub struct MaryTree {
    m: usize,
    n: u64,
    nodes: Vec<Node>,
    root: Option<NodeId>,
}

impl MaryTree {
    /// Empty tree with branching factor `m >= 2`.
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!(
                "branching factor must be at least 2, got {m}"
            )));
        }
        Ok(MaryTree {
            m,
            n: 0,
            nodes: Vec::new(),
            root: None,
        })
    }

    /// Tree obtained by inserting the ranks of `perm` in order.
    pub fn from_permutation(m: usize, perm: &[Rank]) -> Result<Self> {
        let mut tree = MaryTree::new(m)?;
        for &rank in perm {
            tree.insert(rank)?;
        }
        Ok(tree)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of keys inserted.
    pub fn len(&self) -> u64 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of nodes S.
    pub fn node_count(&self) -> u64 {
        self.nodes.len() as u64
    }

    pub fn root(&self) -> Option<NodeId> {
        self.root
    }

    pub fn keys_of(&self, id: NodeId) -> &[Rank] {
        &self.nodes[id.index()].keys
    }

    pub fn child(&self, id: NodeId, slot: usize) -> Option<NodeId> {
        let node = &self.nodes[id.index()];
        if node.children.is_empty() {
            None
        } else {
            node.children[slot]
        }
    }

    pub fn child_count(&self, id: NodeId) -> usize {
        self.nodes[id.index()].child_count()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    fn alloc(&mut self, keys: Vec<Rank>) -> NodeId {
        let id = NodeId(u32::try_from(self.nodes.len()).expect("tree exceeds u32 nodes"));
        self.nodes.push(Node {
            keys,
            children: Vec::new(),
        });
        id
    }

    /// Insert a new rank. Descends to the unique gap whose interval
    /// contains the rank: a leaf with fewer than `m - 1` keys absorbs it
    /// in sorted position; otherwise descent continues, creating a new
    /// single-key leaf in the reached empty child slot.
    pub fn insert(&mut self, rank: Rank) -> Result<()> {
        if rank == 0 {
            return Err(Error::InvalidParameter(
                "key rank must be positive".to_string(),
            ));
        }
        let m = self.m;
        match self.root {
            None => {
                let id = self.alloc(vec![rank]);
                self.root = Some(id);
            }
            Some(mut cur) => loop {
                let node = &self.nodes[cur.index()];
                let pos = match node.keys.binary_search(&rank) {
                    Ok(_) => return Err(Error::DuplicateKey(rank)),
                    Err(pos) => pos,
                };
                if node.keys.len() < m - 1 {
                    self.nodes[cur.index()].keys.insert(pos, rank);
                    break;
                }
                let next = if node.children.is_empty() {
                    None
                } else {
                    node.children[pos]
                };
                match next {
                    Some(c) => cur = c,
                    None => {
                        let leaf = self.alloc(vec![rank]);
                        let node = &mut self.nodes[cur.index()];
                        if node.children.is_empty() {
                            node.children = vec![None; m];
                        }
                        node.children[pos] = Some(leaf);
                        break;
                    }
                }
            },
        }
        self.n += 1;
        Ok(())
    }

    pub fn contains(&self, rank: Rank) -> bool {
        let mut cur = self.root;
        while let Some(id) = cur {
            let node = &self.nodes[id.index()];
            match node.keys.binary_search(&rank) {
                Ok(_) => return true,
                Err(pos) => {
                    cur = if node.children.is_empty() {
                        None
                    } else {
                        node.children[pos]
                    };
                }
            }
        }
        false
    }

    /// Type code of a node, per [`NodeTypeCode`].
    pub fn node_type(&self, id: NodeId) -> NodeTypeCode {
        let node = &self.nodes[id.index()];
        let keys = node.keys.len();
        let m = self.m;
        if keys < m - 1 {
            debug_assert_eq!(node.child_count(), 0);
            return NodeTypeCode(m + keys);
        }
        match node.child_count() {
            0 => NodeTypeCode(m),
            c if c == m => NodeTypeCode(2 * m - 1),
            c => NodeTypeCode(m - c),
        }
    }

    /// Gap profile X. Errors on an empty tree.
    pub fn gap_profile(&self) -> Result<GapProfile> {
        if self.is_empty() {
            return Err(Error::EmptyTree);
        }
        let m = self.m;
        let mut counts = vec![0u64; 2 * m - 2];
        for node in &self.nodes {
            let keys = node.keys.len();
            if keys < m - 1 {
                // partial leaf with j keys: j + 1 gaps of color m + j
                counts[m + keys - 1] += keys as u64 + 1;
            } else {
                match node.child_count() {
                    0 => counts[m - 1] += m as u64, // full leaf
                    c if c == m => {}               // full node, no gaps
                    c => counts[m - c - 1] += (m - c) as u64,
                }
            }
        }
        Ok(GapProfile { m, counts })
    }

    /// Outdegree profile D. Errors on an empty tree.
    pub fn degree_profile(&self) -> Result<DegreeProfile> {
        if self.is_empty() {
            return Err(Error::EmptyTree);
        }
        let mut counts = vec![0u64; self.m + 1];
        for node in &self.nodes {
            counts[node.child_count()] += 1;
        }
        Ok(DegreeProfile { m: self.m, counts })
    }

    /// Keys in ascending order.
    pub fn in_order_keys(&self) -> Vec<Rank> {
        let mut out = Vec::with_capacity(self.n as usize);
        let Some(root) = self.root else {
            return out;
        };
        // (node, next key slot to emit); children interleave with keys
        let mut stack = vec![(root, 0usize)];
        while let Some((id, pos)) = stack.pop() {
            let node = &self.nodes[id.index()];
            if pos > 0 && pos <= node.keys.len() {
                out.push(node.keys[pos - 1]);
            }
            if pos <= node.keys.len() {
                stack.push((id, pos + 1));
                if let Some(c) = self.child_at(node, pos) {
                    stack.push((c, 0));
                }
            }
        }
        out
    }

    fn child_at(&self, node: &Node, slot: usize) -> Option<NodeId> {
        if node.children.is_empty() {
            None
        } else {
            node.children[slot]
        }
    }

    /// All gaps in canonical order: by the in-order position of the
    /// insertion interval each gap represents. Length is `n + 1` for a
    /// nonempty tree.
    pub fn gaps(&self) -> Vec<Gap> {
        let mut out = Vec::with_capacity(self.n as usize + 1);
        let Some(root) = self.root else {
            return out;
        };
        let mut stack = vec![(root, 0usize)];
        while let Some((id, slot)) = stack.pop() {
            let node = &self.nodes[id.index()];
            if node.keys.len() < self.m - 1 {
                // partial leaf: all its slots are gaps, in order
                let color = self.m + node.keys.len();
                for s in 0..=node.keys.len() {
                    out.push(Gap {
                        node: id,
                        slot: s,
                        color,
                    });
                }
                continue;
            }
            let color = self.node_type(id).code(); // m (full leaf) or nil count
            let mut s = slot;
            while s < self.m {
                match self.child_at(node, s) {
                    Some(c) => {
                        stack.push((id, s + 1));
                        stack.push((c, 0));
                        break;
                    }
                    None => {
                        out.push(Gap {
                            node: id,
                            slot: s,
                            color,
                        });
                        s += 1;
                    }
                }
            }
        }
        out
    }

    /// Insert a key into the `gap_index`-th gap (canonical order),
    /// returning the gap's color.
    ///
    /// Integer ranks leave no room between consecutive keys, so every
    /// rank strictly greater than the gap's lower boundary is first
    /// shifted up by one; the tree shape is order-isomorphic under the
    /// shift, and the vacated rank lands exactly in the chosen gap.
    pub fn insert_at_gap(&mut self, gap_index: u64) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyTree);
        }
        let available = self.n + 1;
        if gap_index >= available {
            return Err(Error::GapIndexOutOfRange {
                index: gap_index,
                available,
            });
        }
        let color = self.gaps()[gap_index as usize].color;
        let ordered = self.in_order_keys();
        let pivot = if gap_index == 0 {
            0
        } else {
            ordered[gap_index as usize - 1]
        };
        // refuse up front so a failed call never half-shifts the tree
        let headroom = ordered
            .last()
            .is_none_or(|&max| max < Rank::MAX || max == pivot);
        let new_key = pivot.checked_add(1).filter(|_| headroom).ok_or_else(|| {
            Error::InvalidParameter("key ranks have no headroom for a gap insert".to_string())
        })?;
        for node in &mut self.nodes {
            for key in &mut node.keys {
                if *key > pivot {
                    *key += 1;
                }
            }
        }
        self.insert(new_key)?;
        Ok(color)
    }

    /// Locate the node holding `rank`, if present.
    pub fn find(&self, rank: Rank) -> Option<NodeId> {
        let mut cur = self.root;
        while let Some(id) = cur {
            let node = &self.nodes[id.index()];
            match node.keys.binary_search(&rank) {
                Ok(_) => return Some(id),
                Err(pos) => cur = self.child_at(node, pos),
            }
        }
        None
    }

    // Raw constructors for the codec; shape invariants are validated by
    // the decoder after reassembly.
    pub(crate) fn raw_new(m: usize) -> Self {
        MaryTree {
            m,
            n: 0,
            nodes: Vec::new(),
            root: None,
        }
    }

    pub(crate) fn raw_add_node(&mut self, keys: Vec<Rank>) -> NodeId {
        self.n += keys.len() as u64;
        self.alloc(keys)
    }

    pub(crate) fn raw_set_root(&mut self, id: NodeId) {
        self.root = Some(id);
    }

    pub(crate) fn raw_set_child(&mut self, parent: NodeId, slot: usize, child: NodeId) {
        let m = self.m;
        let node = &mut self.nodes[parent.index()];
        if node.children.is_empty() {
            node.children = vec![None; m];
        }
        node.children[slot] = Some(child);
    }
}

impl PartialEq for MaryTree {
    /// Structural equality: same branching factor, same keys in the same
    /// node positions, same child placement. Arena layout is ignored.
    fn eq(&self, other: &Self) -> bool {
        if self.m != other.m || self.n != other.n {
            return false;
        }
        let mut stack = vec![(self.root, other.root)];
        while let Some(pair) = stack.pop() {
            match pair {
                (None, None) => {}
                (Some(a), Some(b)) => {
                    let na = &self.nodes[a.index()];
                    let nb = &other.nodes[b.index()];
                    if na.keys != nb.keys {
                        return false;
                    }
                    for slot in 0..self.m {
                        stack.push((self.child_at(na, slot), other.child_at(nb, slot)));
                    }
                }
                _ => return false,
            }
        }
        true
    }
}

impl Eq for MaryTree {}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::testutil::QUATERNARY_PERM;

    fn quaternary_tree() -> MaryTree {
        MaryTree::from_permutation(4, &QUATERNARY_PERM).unwrap()
    }

    #[test]
    fn new_tree_validates_m() {
        assert!(MaryTree::new(4).unwrap().is_empty());
        assert!(MaryTree::new(2).is_ok());
        assert!(matches!(MaryTree::new(1), Err(Error::InvalidParameter(_))));
        assert!(MaryTree::new(0).is_err());
    }

    #[test]
    fn empty_tree_profiles_are_errors() {
        let tree = MaryTree::new(4).unwrap();
        assert_eq!(tree.gap_profile(), Err(Error::EmptyTree));
        assert_eq!(tree.degree_profile(), Err(Error::EmptyTree));
    }

    #[test]
    fn first_keys_fill_the_root() {
        let mut tree = MaryTree::new(4).unwrap();
        for k in [12, 16, 11] {
            tree.insert(k).unwrap();
        }
        let root = tree.root().unwrap();
        assert_eq!(tree.keys_of(root), &[11, 12, 16]);
        assert_eq!(tree.node_count(), 1);
        assert_eq!(tree.child_count(root), 0);

        let mut small = MaryTree::new(3).unwrap();
        small.insert(1).unwrap();
        small.insert(2).unwrap();
        assert_eq!(small.node_count(), 1);
        assert_eq!(small.keys_of(small.root().unwrap()), &[1, 2]);
    }

    #[test]
    fn duplicate_keys_are_rejected() {
        let mut tree = MaryTree::new(3).unwrap();
        tree.insert(5).unwrap();
        assert_eq!(tree.insert(5), Err(Error::DuplicateKey(5)));
        assert_eq!(tree.len(), 1);
        assert!(MaryTree::from_permutation(4, &[1, 2, 1]).is_err());
    }

    #[test]
    fn zero_rank_is_rejected() {
        let mut tree = MaryTree::new(3).unwrap();
        assert!(matches!(tree.insert(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn quaternary_example_shape() {
        let tree = quaternary_tree();
        assert_eq!(tree.len(), 16);
        assert_eq!(tree.node_count(), 7);

        let root = tree.root().unwrap();
        assert_eq!(tree.keys_of(root), &[11, 12, 16]);
        // second and fourth root slots stay empty
        assert!(tree.child(root, 0).is_some());
        assert!(tree.child(root, 1).is_none());
        assert!(tree.child(root, 2).is_some());
        assert!(tree.child(root, 3).is_none());

        let left = tree.child(root, 0).unwrap();
        assert_eq!(tree.keys_of(left), &[3, 7, 9]);
        assert_eq!(tree.child_count(left), 4);

        let right = tree.child(root, 2).unwrap();
        assert_eq!(tree.keys_of(right), &[13, 14, 15]);
        assert_eq!(tree.child_count(right), 0);
    }

    #[test]
    fn binary_tree_is_a_bst() {
        let tree = MaryTree::from_permutation(2, &[2, 1, 3]).unwrap();
        let root = tree.root().unwrap();
        assert_eq!(tree.keys_of(root), &[2]);
        let l = tree.child(root, 0).unwrap();
        let r = tree.child(root, 1).unwrap();
        assert_eq!(tree.keys_of(l), &[1]);
        assert_eq!(tree.keys_of(r), &[3]);
        assert_eq!(tree.node_count(), 3);
    }

    #[test]
    fn sorted_input_degenerates_to_a_chain() {
        let perm: Vec<u64> = (1..=100).collect();
        let tree = MaryTree::from_permutation(5, &perm).unwrap();
        assert_eq!(tree.node_count(), 25);
        // every node holds 4 keys; all but the deepest have exactly one
        // child, in the last slot
        let mut cur = tree.root().unwrap();
        for depth in 0..25 {
            assert_eq!(tree.keys_of(cur).len(), 4);
            for slot in 0..4 {
                assert!(tree.child(cur, slot).is_none());
            }
            match tree.child(cur, 4) {
                Some(c) => cur = c,
                None => {
                    assert_eq!(depth, 24);
                    break;
                }
            }
        }
    }

    #[test]
    fn node_classification_matches_example() {
        let tree = quaternary_tree();
        let root = tree.root().unwrap();
        assert_eq!(tree.node_type(root).code(), 2);
        let full = tree.find(7).unwrap();
        assert_eq!(tree.node_type(full).code(), 7); // 2m-1
        let leaf8 = tree.find(8).unwrap();
        assert_eq!(tree.node_type(leaf8).code(), 5); // m+1
        let leaf12 = tree.find(13).unwrap();
        assert_eq!(tree.node_type(leaf12).code(), 4); // full leaf
        let leaf2 = tree.find(1).unwrap();
        assert_eq!(tree.node_type(leaf2).code(), 6); // 2-key leaf
    }

    #[test]
    fn gap_profile_matches_example() {
        let tree = quaternary_tree();
        let x = tree.gap_profile().unwrap();
        assert_eq!(x.counts(), &[0, 2, 0, 8, 4, 3]);
        assert_eq!(x.total(), 17);
    }

    #[test]
    fn single_key_gap_profile() {
        let tree = MaryTree::from_permutation(4, &[42]).unwrap();
        let x = tree.gap_profile().unwrap();
        assert_eq!(x.counts(), &[0, 0, 0, 0, 2, 0]);
    }

    // Independent gap-count oracle: empty child slots of key-full nodes,
    // plus keys + 1 per partial leaf. Avoids the type-code path.
    fn oracle_gap_total(tree: &MaryTree) -> u64 {
        let mut total = 0;
        for id in tree.node_ids() {
            let keys = tree.keys_of(id).len();
            if keys < tree.m() - 1 {
                total += keys as u64 + 1;
            } else {
                total += (tree.m() - tree.child_count(id)) as u64;
            }
        }
        total
    }

    #[test]
    fn gap_conservation_on_random_trees() {
        for trial in 0..100u64 {
            let m = 2 + (trial % 9) as usize;
            let n = 1 + (trial * 37) % 300;
            let perm = crate::rng::permutation(n, trial);
            let tree = MaryTree::from_permutation(m, &perm).unwrap();
            let x = tree.gap_profile().unwrap();
            assert_eq!(x.total(), n + 1);
            assert_eq!(oracle_gap_total(&tree), n + 1);
        }
    }

    #[test]
    fn degree_profile_matches_example() {
        let tree = quaternary_tree();
        let d = tree.degree_profile().unwrap();
        assert_eq!(d.counts(), &[5, 0, 1, 0, 1]);
        assert_eq!(d.total_nodes(), 7);
        assert_eq!(d.leaves(), 5);
        assert_eq!(d.one_protected(), 2);

        // outdegree/gap identity at i = 2: D[2] * (m - 2) = X[2]
        let x = tree.gap_profile().unwrap();
        assert_eq!(d.outdegree(2) * 2, x.color(2));
        assert_eq!(x.color(2), 2);
    }

    #[test]
    fn single_key_degree_profile() {
        let tree = MaryTree::from_permutation(4, &[9]).unwrap();
        let d = tree.degree_profile().unwrap();
        assert_eq!(d.counts(), &[1, 0, 0, 0, 0]);
    }

    #[test]
    fn profile_identities_on_random_trees() {
        for trial in 0..60u64 {
            let m = 2 + (trial % 7) as usize;
            let n = 1 + (trial * 53) % 400;
            let perm = crate::rng::permutation(n, 1000 + trial);
            let tree = MaryTree::from_permutation(m, &perm).unwrap();
            let x = tree.gap_profile().unwrap();
            let d = tree.degree_profile().unwrap();
            // D[i] * (m - i) = X[m - i] for i = 1..m-1
            for i in 1..m {
                assert_eq!(
                    d.outdegree(i) * (m - i) as u64,
                    x.color(m - i),
                    "m={m} n={n} i={i}"
                );
            }
            // L = X[m]/m + sum_j X[m+j]/(j+1), all divisions exact
            assert_eq!(x.color(m) % m as u64, 0);
            let mut leaves = x.color(m) / m as u64;
            for j in 1..=m.saturating_sub(2) {
                let c = x.color(m + j);
                assert_eq!(c % (j as u64 + 1), 0);
                leaves += c / (j as u64 + 1);
            }
            assert_eq!(leaves, d.leaves());
            assert_eq!(d.total_nodes(), tree.node_count());
        }
    }

    #[test]
    fn in_order_is_sorted() {
        let perm = crate::rng::permutation(500, 7);
        let tree = MaryTree::from_permutation(6, &perm).unwrap();
        let keys = tree.in_order_keys();
        assert_eq!(keys, (1..=500).collect::<Vec<_>>());
    }

    #[test]
    fn gaps_enumerate_in_order() {
        let tree = quaternary_tree();
        let gaps = tree.gaps();
        assert_eq!(gaps.len(), 17);
        // colors must aggregate to the profile
        let x = tree.gap_profile().unwrap();
        let mut counts = vec![0u64; 6];
        for g in &gaps {
            counts[g.color - 1] += 1;
        }
        assert_eq!(counts, x.counts());
        // leftmost gap precedes key 1: slot 0 of the leaf holding (1,2)
        let leaf12 = tree.find(1).unwrap();
        assert_eq!(gaps[0].node, leaf12);
        assert_eq!(gaps[0].slot, 0);
        // rightmost gap follows key 16: last root slot
        let root = tree.root().unwrap();
        assert_eq!(gaps[16].node, root);
        assert_eq!(gaps[16].slot, 3);
    }

    #[test]
    fn insert_at_gap_hits_the_chosen_gap() {
        // inserting at gap g of a tree on 1..=n shifts keys > g and lands
        // g+1 in the gap; verify against direct construction
        let tree = MaryTree::from_permutation(4, &[2, 1, 3]).unwrap();
        let mut grown = tree.clone();
        // root (1,2,3) is a full leaf, so every gap in it has color m = 4
        let color = grown.insert_at_gap(0).unwrap();
        assert_eq!(color, 4);
        assert_eq!(grown.len(), 4);
        assert_eq!(grown.in_order_keys(), vec![1, 2, 3, 4]);
        // the new key 1 lands in a fresh leaf under the leftmost slot
        let root = grown.root().unwrap();
        assert_eq!(grown.keys_of(root), &[2, 3, 4]);
        let leaf = grown.child(root, 0).unwrap();
        assert_eq!(grown.keys_of(leaf), &[1]);

        let mut tree = MaryTree::from_permutation(4, &[10]).unwrap();
        let c = tree.insert_at_gap(1).unwrap();
        assert_eq!(c, 5);
        assert_eq!(tree.in_order_keys(), vec![10, 11]);
    }

    #[test]
    fn insert_at_gap_rejects_bad_index() {
        let mut tree = MaryTree::from_permutation(4, &[1, 2]).unwrap();
        assert!(matches!(
            tree.insert_at_gap(3),
            Err(Error::GapIndexOutOfRange { .. })
        ));
        let mut empty = MaryTree::new(4).unwrap();
        assert_eq!(empty.insert_at_gap(0), Err(Error::EmptyTree));
    }

    #[test]
    fn insertion_changes_at_most_one_existing_node() {
        let mut rng = crate::rng::Rng64::new(11);
        for m in [2usize, 3, 4, 7] {
            let mut tree = MaryTree::from_permutation(m, &[1]).unwrap();
            for _ in 0..300 {
                let before: Vec<usize> = tree
                    .node_ids()
                    .map(|id| tree.node_type(id).code())
                    .collect();
                let g = rng.bounded(tree.len() + 1);
                tree.insert_at_gap(g).unwrap();
                let after: Vec<usize> = tree
                    .node_ids()
                    .map(|id| tree.node_type(id).code())
                    .collect();
                assert!(after.len() >= before.len());
                assert!(after.len() - before.len() <= 1, "at most one new node");
                let changed = before.iter().zip(&after).filter(|(a, b)| a != b).count();
                assert!(changed <= 1, "at most one reclassified node");
            }
        }
    }

    #[test]
    fn trees_move_between_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<MaryTree>();
        assert_send_sync::<GapProfile>();
        assert_send_sync::<DegreeProfile>();
    }

    #[test]
    fn structural_equality_ignores_arena_order() {
        let a = MaryTree::from_permutation(3, &[2, 1, 3]).unwrap();
        let b = MaryTree::from_permutation(3, &[1, 2, 3]).unwrap();
        assert_eq!(a, b); // both give root (1,2) with a single leaf (3)
        let c = MaryTree::from_permutation(3, &[2, 3, 1]).unwrap();
        assert_ne!(a, c); // root (2,3) with leaf (1) on the other side
    }
}

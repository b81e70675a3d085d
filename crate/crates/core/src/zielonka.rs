//! Ordered Zielonka trees of Muller conditions, their memory measure
//! `memtree`, the cyclic child order, jumps between leaves, and the leaf
//! labelling `η` that collapses the tree's leaves onto `1..=memtree`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::conditions::{maximal_flipped_subsets, LetterSet, MullerCondition};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    /// The label is accepting.
    Round,
    /// The label is rejecting.
    Square,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub label: LetterSet,
    pub kind: NodeKind,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub depth: usize,
}

/// A Zielonka tree. Node ids are dense and assigned breadth-first, so the
/// root is 0 and siblings carry consecutive ids in child order.
#[derive(Clone, Debug)]
pub struct ZielonkaTree {
    condition: MullerCondition,
    nodes: Vec<Node>,
    /// Leaves from left to right.
    leaves: Vec<usize>,
    /// Position of each node's leftmost leaf and one past its rightmost in `leaves`.
    leaf_span: Vec<(usize, usize)>,
    memtree: Vec<usize>,
}

const GREEK: [&str; 24] = [
    "α", "β", "γ", "δ", "ε", "ζ", "η", "θ", "ι", "κ", "λ", "μ", "ν", "ξ", "ο", "π", "ρ", "σ",
    "τ", "υ", "φ", "χ", "ψ", "ω",
];

/// Builds the Zielonka tree with children sorted by label bit pattern.
pub fn build_zielonka(condition: &MullerCondition) -> Result<ZielonkaTree> {
    ZielonkaTree::new(condition)
}

impl ZielonkaTree {
    pub fn new(condition: &MullerCondition) -> Result<ZielonkaTree> {
        Self::with_child_order(condition, |_| {})
    }

    /// Builds the tree, letting `order` permute each node's children after
    /// they have been sorted by bit pattern.
    pub fn with_child_order(
        condition: &MullerCondition,
        mut order: impl FnMut(&mut Vec<LetterSet>),
    ) -> Result<ZielonkaTree> {
        let family = condition.mask_set()?;
        let n = condition.alphabet().len();
        let accepts = |m: u64| family.contains(&m);
        let kind_of = |m: u64| if accepts(m) { NodeKind::Round } else { NodeKind::Square };
        let root = LetterSet::full(n);
        let root_mask = root.mask().expect("at most 64 letters");
        let mut nodes = vec![Node {
            label: root,
            kind: kind_of(root_mask),
            parent: None,
            children: Vec::new(),
            depth: 0,
        }];
        let mut queue = VecDeque::from([0usize]);
        while let Some(id) = queue.pop_front() {
            let mask = nodes[id].label.mask().expect("at most 64 letters");
            let mut labels: Vec<LetterSet> = maximal_flipped_subsets(mask, accepts)
                .into_iter()
                .map(|m| LetterSet::from_mask(n, m))
                .collect();
            order(&mut labels);
            for label in labels {
                let child = nodes.len();
                let m = label.mask().expect("at most 64 letters");
                nodes.push(Node {
                    label,
                    kind: kind_of(m),
                    parent: Some(id),
                    children: Vec::new(),
                    depth: nodes[id].depth + 1,
                });
                nodes[id].children.push(child);
                queue.push_back(child);
            }
        }
        Ok(Self::finish(condition.clone(), nodes))
    }

    fn finish(condition: MullerCondition, nodes: Vec<Node>) -> ZielonkaTree {
        let mut leaves = Vec::new();
        let mut leaf_span = vec![(0, 0); nodes.len()];
        let mut memtree = vec![0; nodes.len()];
        // post-order walk with an explicit stack: (node, children done?)
        let mut stack = vec![(0usize, false)];
        while let Some((id, done)) = stack.pop() {
            let node = &nodes[id];
            if node.children.is_empty() {
                leaf_span[id] = (leaves.len(), leaves.len() + 1);
                leaves.push(id);
                memtree[id] = 1;
            } else if !done {
                stack.push((id, true));
                for &c in node.children.iter().rev() {
                    stack.push((c, false));
                }
            } else {
                let first = node.children[0];
                let last = *node.children.last().expect("nonempty");
                leaf_span[id] = (leaf_span[first].0, leaf_span[last].1);
                let sub = node.children.iter().map(|&c| memtree[c]);
                memtree[id] = match node.kind {
                    NodeKind::Round => sub.sum(),
                    NodeKind::Square => sub.max().expect("nonempty"),
                };
            }
        }
        ZielonkaTree {
            condition,
            nodes,
            leaves,
            leaf_span,
            memtree,
        }
    }

    pub fn condition(&self) -> &MullerCondition {
        &self.condition
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> Result<&Node> {
        self.nodes.get(id).ok_or(Error::UnknownNode(id))
    }

    pub fn label(&self, id: usize) -> &LetterSet {
        &self.nodes[id].label
    }

    pub fn kind(&self, id: usize) -> NodeKind {
        self.nodes[id].kind
    }

    pub fn is_round(&self, id: usize) -> bool {
        self.nodes[id].kind == NodeKind::Round
    }

    pub fn parent(&self, id: usize) -> Option<usize> {
        self.nodes[id].parent
    }

    pub fn children(&self, id: usize) -> &[usize] {
        &self.nodes[id].children
    }

    pub fn depth(&self, id: usize) -> usize {
        self.nodes[id].depth
    }

    /// Largest depth of any node.
    pub fn height(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    pub fn is_leaf(&self, id: usize) -> bool {
        self.nodes[id].children.is_empty()
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    /// Position of a leaf in the left-to-right order.
    pub fn leaf_index(&self, leaf: usize) -> Result<usize> {
        if leaf >= self.nodes.len() {
            return Err(Error::UnknownNode(leaf));
        }
        if !self.is_leaf(leaf) {
            return Err(Error::NotALeaf(leaf));
        }
        Ok(self.leaf_span[leaf].0)
    }

    pub fn leaves_below(&self, id: usize) -> &[usize] {
        let (lo, hi) = self.leaf_span[id];
        &self.leaves[lo..hi]
    }

    pub fn leftmost_leaf(&self, id: usize) -> usize {
        self.leaves[self.leaf_span[id].0]
    }

    /// `a ⊴ b`: `a` is `b` or one of its ancestors.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let (alo, ahi) = self.leaf_span[a];
        let (blo, bhi) = self.leaf_span[b];
        alo <= blo && bhi <= ahi && self.nodes[a].depth <= self.nodes[b].depth
            && self.ancestor_at_depth(b, self.nodes[a].depth) == a
    }

    fn ancestor_at_depth(&self, mut id: usize, depth: usize) -> usize {
        while self.nodes[id].depth > depth {
            id = self.nodes[id].parent.expect("non-root has a parent");
        }
        id
    }

    /// The child of `n` on the path down to `descendant`.
    pub fn child_towards(&self, n: usize, descendant: usize) -> Result<usize> {
        if n == descendant || !self.is_ancestor(n, descendant) {
            return Err(Error::NotAnAncestor(n, descendant));
        }
        Ok(self.ancestor_at_depth(descendant, self.nodes[n].depth + 1))
    }

    /// The deepest ancestor of `leaf` (possibly the leaf) whose label contains `letter`.
    pub fn deepest_ancestor_containing(&self, leaf: usize, letter: usize) -> usize {
        let mut id = leaf;
        while !self.nodes[id].label.contains(letter) {
            id = self.nodes[id].parent.expect("the root contains every letter");
        }
        id
    }

    /// memtree of the whole tree.
    pub fn memtree(&self) -> usize {
        self.memtree[0]
    }

    /// memtree of the subtree rooted at `id`.
    pub fn memtree_at(&self, id: usize) -> usize {
        self.memtree[id]
    }

    /// Successor of child `c` in `n`'s child order, wrapping around.
    pub fn next_child(&self, n: usize, c: usize) -> Result<usize> {
        let node = self.node(n)?;
        let pos = node
            .children
            .iter()
            .position(|&x| x == c)
            .ok_or(Error::NotAChild(c, n))?;
        Ok(node.children[(pos + 1) % node.children.len()])
    }

    /// Leaves below the child of `n` following the one above `leaf`, and the
    /// leftmost of them; `({leaf}, leaf)` when `n` is the leaf itself.
    pub fn jump(&self, n: usize, leaf: usize) -> Result<(&[usize], usize)> {
        self.node(n)?;
        self.node(leaf)?;
        if !self.is_leaf(leaf) {
            return Err(Error::NotALeaf(leaf));
        }
        if n == leaf {
            return Ok((self.leaves_below(leaf), leaf));
        }
        let above = self.child_towards(n, leaf)?;
        let next = self.next_child(n, above)?;
        Ok((self.leaves_below(next), self.leftmost_leaf(next)))
    }

    /// Display name of a node: Greek letters in id order for small trees,
    /// `n<id>` otherwise.
    pub fn node_name(&self, id: usize) -> String {
        if self.nodes.len() <= GREEK.len() {
            GREEK[id].to_string()
        } else {
            format!("n{id}")
        }
    }

    pub fn node_names(&self) -> Vec<String> {
        (0..self.nodes.len()).map(|i| self.node_name(i)).collect()
    }

    /// The labelling of the leaves by `1..=memtree` in which leaves below
    /// distinct children of a round node never share a value.
    pub fn eta_labelling(&self) -> EtaLabelling {
        let mut values = vec![None; self.nodes.len()];
        self.assign_eta(0, 1, &mut values);
        EtaLabelling {
            values,
            size: self.memtree(),
        }
    }

    fn assign_eta(&self, id: usize, offset: usize, values: &mut [Option<usize>]) {
        let node = &self.nodes[id];
        if node.children.is_empty() {
            values[id] = Some(offset);
            return;
        }
        let mut next = offset;
        for &c in &node.children {
            self.assign_eta(c, next, values);
            if node.kind == NodeKind::Round {
                next += self.memtree[c];
            }
        }
    }

    /// Priority of a node for the max-even parity automaton: deeper nodes get
    /// smaller priorities and round nodes get even ones.
    pub fn priority(&self, id: usize) -> u32 {
        let h = self.height();
        let root_round = self.is_round(0);
        let offset = if root_round { h % 2 } else { (h + 1) % 2 };
        (h - self.nodes[id].depth + offset) as u32
    }

    /// Graphviz rendering: round nodes as ellipses, square nodes as boxes.
    pub fn to_dot(&self) -> String {
        let alphabet = self.condition.alphabet();
        let mut out = String::from("digraph zielonka {\n  ordering=out;\n");
        for (id, node) in self.nodes.iter().enumerate() {
            let shape = match node.kind {
                NodeKind::Round => "ellipse",
                NodeKind::Square => "box",
            };
            let letters: Vec<&str> = node.label.iter().map(|l| alphabet.symbol(l)).collect();
            writeln!(
                out,
                "  {id} [shape={shape}, label=\"{}: {}\"];",
                self.node_name(id),
                escape(&letters.join(""))
            )
            .expect("write to string");
        }
        for (id, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                writeln!(out, "  {id} -> {c};").expect("write to string");
            }
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// `η`: one value in `1..=size` per leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaLabelling {
    /// Indexed by node id; `None` on inner nodes.
    values: Vec<Option<usize>>,
    size: usize,
}

impl EtaLabelling {
    /// Builds a labelling from explicit leaf values, e.g. to test a bad one.
    pub fn from_values(tree: &ZielonkaTree, leaf_values: &[(usize, usize)]) -> Result<Self> {
        let mut values = vec![None; tree.len()];
        for &(leaf, v) in leaf_values {
            tree.leaf_index(leaf)?;
            values[leaf] = Some(v);
        }
        if let Some(&l) = tree.leaves().iter().find(|&&l| values[l].is_none()) {
            return Err(Error::Precondition(format!("leaf {l} has no value")));
        }
        let size = values.iter().flatten().copied().max().unwrap_or(0);
        Ok(EtaLabelling { values, size })
    }

    pub fn get(&self, leaf: usize) -> Result<usize> {
        self.values
            .get(leaf)
            .copied()
            .flatten()
            .ok_or(Error::NotALeaf(leaf))
    }

    /// Largest value used.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of distinct values used.
    pub fn distinct(&self) -> usize {
        let mut v: Vec<usize> = self.values.iter().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v.len()
    }

    /// Leaves below distinct children of every round node get distinct values.
    pub fn satisfies_separation(&self, tree: &ZielonkaTree) -> bool {
        (0..tree.len()).filter(|&n| tree.is_round(n)).all(|n| {
            let children = tree.children(n);
            children.iter().enumerate().all(|(i, &c1)| {
                children[i + 1..].iter().all(|&c2| {
                    tree.leaves_below(c1).iter().all(|&l1| {
                        tree.leaves_below(c2)
                            .iter()
                            .all(|&l2| self.values[l1] != self.values[l2])
                    })
                })
            })
        })
    }
}

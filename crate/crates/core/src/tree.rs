//! Rooted trees with tuple labels and the leaf product.

use std::collections::HashMap;
use std::hash::Hash;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode<A> {
    /// Flattened tuple label; unique within a tree.
    pub label: Vec<A>,
    pub parent: Option<usize>,
    pub depth: usize,
}

/// A rooted tree stored as a node arena. Node 0 is always the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree<A> {
    nodes: Vec<TreeNode<A>>,
    children: Vec<Vec<usize>>,
}

impl<A: Clone + Eq + Hash> RootedTree<A> {
    pub fn new(root_label: Vec<A>) -> Self {
        Self {
            nodes: vec![TreeNode {
                label: root_label,
                parent: None,
                depth: 0,
            }],
            children: vec![Vec::new()],
        }
    }

    pub fn add_child(&mut self, parent: usize, label: Vec<A>) -> usize {
        let id = self.nodes.len();
        let depth = self.nodes[parent].depth + 1;
        self.nodes.push(TreeNode {
            label,
            parent: Some(parent),
            depth,
        });
        self.children.push(Vec::new());
        self.children[parent].push(id);
        id
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

    pub fn nodes(&self) -> &[TreeNode<A>] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &TreeNode<A> {
        &self.nodes[id]
    }

    pub fn children(&self, id: usize) -> &[usize] {
        &self.children[id]
    }

    pub fn is_leaf(&self, id: usize) -> bool {
        self.children[id].is_empty()
    }

    /// Leaves in node order.
    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&v| self.is_leaf(v))
    }

    pub fn height(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.nodes.len())
            .map(|v| self.children[v].len() + usize::from(self.nodes[v].parent.is_some()))
            .max()
            .unwrap_or(0)
    }

    pub fn label_index(&self) -> HashMap<&[A], usize> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.label.as_slice(), i))
            .collect()
    }

    /// Parent-child pairs as labels, for structural comparison of trees
    /// built in different node orders.
    pub fn labelled_edges(&self) -> Vec<(Vec<A>, Vec<A>)> {
        self.nodes
            .iter()
            .filter_map(|n| n.parent.map(|p| (self.nodes[p].label.clone(), n.label.clone())))
            .collect()
    }

    /// Checks: single root, acyclic parents, consistent depths, unique labels.
    pub fn check(&self) -> bool {
        let roots = self.nodes.iter().filter(|n| n.parent.is_none()).count();
        let depths_ok = self.nodes.iter().all(|n| match n.parent {
            None => n.depth == 0,
            Some(p) => p < self.nodes.len() && self.nodes[p].depth + 1 == n.depth,
        });
        roots == 1 && self.nodes[0].parent.is_none() && depths_ok && self.label_index().len() == self.nodes.len()
    }
}

/// `t1 ⊙ t2`: a copy of `t2` hangs from every leaf of `t1`, its root
/// identified with that leaf.
///
/// Labels are flattened, so `(x, (y, z))` and `((x, y), z)` both become
/// `x ++ y ++ z` and the product is associative on labels.
pub fn leaf_product<A: Clone + Eq + Hash>(t1: &RootedTree<A>, t2: &RootedTree<A>) -> RootedTree<A> {
    let mut out = t1.clone();
    let leaves: Vec<usize> = t1.leaves().collect();
    let mut copy = vec![0usize; t2.len()];
    for x in leaves {
        copy[t2.root()] = x;
        // t2 nodes are stored parents-first
        for y in 1..t2.len() {
            let parent = t2.node(y).parent.expect("non-root node has a parent");
            let mut label = t1.node(x).label.clone();
            label.extend(t2.node(y).label.iter().cloned());
            copy[y] = out.add_child(copy[parent], label);
        }
    }
    out
}

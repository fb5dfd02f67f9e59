//! The coset tree of a composition series and the coloured cone graph that
//! encodes the group's multiplication table on top of it.
//!
//! `X(S)` is `T(S) ⊙ T(S) ⊙ M` plus, for every ordered pair `(x, y)`, the
//! two-edge path `(x, y, ←) - (y, x, →) - (xy, y, =)` between gadget leaves.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{ColoredGraph, EdgeKind, VertexColor};
use crate::group::{is_isomorphism, GroupTable, IsoMap};
use crate::series::CompositionSeries;
use crate::tree::{leaf_product, RootedTree};

/// One component of a flattened vertex label.
///
/// Derived ordering puts cosets before gadget roles and orders roles
/// `Left < Right < Equals`, which gives the deterministic vertex numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// The coset `rep G_level`, `rep` its minimal element.
    Coset {
        level: usize,
        rep: usize,
    },
    GadgetRoot,
    Left,
    Right,
    Equals,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("map is not an isomorphism between the series' groups")]
    NotAnIsomorphism,
    #[error("series have different lengths")]
    LengthMismatch,
    #[error("map sends level {level} of the first series off level {level} of the second")]
    NotSeriesIso { level: usize },
    #[error("mapped vertex labels do not exist in the target graph")]
    MissingVertex,
    #[error("mapped bijection does not preserve colours and edges")]
    NotGraphIso,
}

/// `T(S)`: one node per coset of every `G_i`, children by containment.
/// Nodes are stored by depth, then by representative; the leaves are the
/// singletons `{x}` in element order.
pub fn build_coset_tree(s: &CompositionSeries) -> RootedTree<Atom> {
    let g = s.group();
    let m = s.length();
    // the root is G itself, whose minimal element is 0
    let mut tree = RootedTree::new(vec![Atom::Coset { level: m, rep: 0 }]);
    // node holding the coset of x at the level built last
    let mut node_of = vec![tree.root(); g.order()];
    for level in (0..m).rev() {
        let mut next = node_of.clone();
        for coset in g.left_cosets(s.level(level)) {
            let id = tree.add_child(
                node_of[coset.representative],
                vec![Atom::Coset {
                    level,
                    rep: coset.representative,
                }],
            );
            for &x in &coset.elements {
                next[x] = id;
            }
        }
        node_of = next;
    }
    tree
}

/// The gadget `M`: a root with three children coloured left, right, equals.
pub fn build_gadget_m() -> RootedTree<Atom> {
    let mut m = RootedTree::new(vec![Atom::GadgetRoot]);
    m.add_child(0, vec![Atom::Left]);
    m.add_child(0, vec![Atom::Right]);
    m.add_child(0, vec![Atom::Equals]);
    m
}

fn element_atom(x: usize) -> Atom {
    Atom::Coset { level: 0, rep: x }
}

fn color_of(label: &[Atom]) -> VertexColor {
    match label.last() {
        Some(Atom::Left) => VertexColor::Left,
        Some(Atom::Right) => VertexColor::Right,
        Some(Atom::Equals) => VertexColor::Equals,
        _ => VertexColor::Internal,
    }
}

/// Builds `X(S)`. Vertices are numbered by `(depth, label)`, so tree
/// vertices come breadth-first and the gadget leaves last in `(x, y, role)`
/// order. Provenance labels are attached to the result.
pub fn build_x(s: &CompositionSeries) -> ColoredGraph {
    let g = s.group();
    let t = build_coset_tree(s);
    let tt = leaf_product(&t, &t);
    let full = leaf_product(&tt, &build_gadget_m());

    let mut order: Vec<usize> = (0..full.len()).collect();
    order.sort_by(|&a, &b| {
        let (na, nb) = (full.node(a), full.node(b));
        na.depth.cmp(&nb.depth).then_with(|| na.label.cmp(&nb.label))
    });
    let mut number = vec![0usize; full.len()];
    for (i, &v) in order.iter().enumerate() {
        number[v] = i;
    }

    let labels: Vec<Vec<Atom>> = order.iter().map(|&v| full.node(v).label.clone()).collect();
    let colors: Vec<VertexColor> = labels.iter().map(|l| color_of(l)).collect();
    let index: HashMap<&[Atom], usize> = labels.iter().enumerate().map(|(i, l)| (l.as_slice(), i)).collect();

    let mut edges = Vec::with_capacity(full.len() - 1 + 2 * g.order() * g.order());
    for (v, node) in full.nodes().iter().enumerate() {
        if let Some(p) = node.parent {
            edges.push((number[p], number[v], EdgeKind::Tree));
        }
    }
    // a single-node T contributes no label of its own to the product
    let gadget = |a: usize, b: usize, role: Atom| {
        let key = if t.len() == 1 {
            vec![element_atom(a), role]
        } else {
            vec![element_atom(a), element_atom(b), role]
        };
        index[key.as_slice()]
    };
    for x in g.elements() {
        for y in g.elements() {
            let left = gadget(x, y, Atom::Left);
            let right = gadget(y, x, Atom::Right);
            let equals = gadget(g.mul(x, y), y, Atom::Equals);
            edges.push((left, right, EdgeKind::Cross));
            edges.push((right, equals, EdgeKind::Cross));
        }
    }

    let mut graph = ColoredGraph::with_kinds(colors, edges).expect("X(S) is a simple graph");
    graph.set_provenance(labels);
    graph
}

/// `X(φ) = φ ⊙ φ ⊙ id_M` as a vertex map `X(s) -> X(s2)`, built from the
/// deterministic numbering of both graphs and verified before return.
pub fn map_series_iso_to_graph_iso(
    phi: &IsoMap,
    s: &CompositionSeries,
    s2: &CompositionSeries,
) -> Result<Vec<usize>, GadgetError> {
    map_series_iso_between(phi, s, &build_x(s), s2, &build_x(s2))
}

/// As [`map_series_iso_to_graph_iso`] with prebuilt graphs.
pub fn map_series_iso_between(
    phi: &IsoMap,
    s: &CompositionSeries,
    xs: &ColoredGraph,
    s2: &CompositionSeries,
    xs2: &ColoredGraph,
) -> Result<Vec<usize>, GadgetError> {
    let (g, h) = (s.group(), s2.group());
    if !is_isomorphism(g, h, phi.forward()) {
        return Err(GadgetError::NotAnIsomorphism);
    }
    if s.length() != s2.length() {
        return Err(GadgetError::LengthMismatch);
    }
    for level in 0..=s.length() {
        let mut image: Vec<usize> = s.level(level).elements().iter().map(|&x| phi.apply(x)).collect();
        image.sort_unstable();
        if image != s2.level(level).elements() {
            return Err(GadgetError::NotSeriesIso { level });
        }
    }

    let reps = coset_rep_tables(h, s2);
    let map_atom = |a: Atom| match a {
        Atom::Coset { level, rep } => Atom::Coset {
            level,
            rep: reps[level][phi.apply(rep)],
        },
        other => other,
    };

    let (Some(from), Some(to)) = (xs.provenance(), xs2.provenance()) else {
        return Err(GadgetError::MissingVertex);
    };
    let index: HashMap<&[Atom], usize> = to.iter().enumerate().map(|(i, l)| (l.as_slice(), i)).collect();
    let map = from
        .iter()
        .map(|label| {
            let mapped: Vec<Atom> = label.iter().copied().map(map_atom).collect();
            index.get(mapped.as_slice()).copied().ok_or(GadgetError::MissingVertex)
        })
        .collect::<Result<Vec<_>, _>>()?;

    if !xs.is_isomorphism_to(xs2, &map) {
        return Err(GadgetError::NotGraphIso);
    }
    Ok(map)
}

/// `reps[level][x]` = minimal element of `x G_level`.
fn coset_rep_tables(g: &GroupTable, s: &CompositionSeries) -> Vec<Vec<usize>> {
    (0..=s.length())
        .map(|level| {
            let mut rep = vec![0; g.order()];
            for coset in g.left_cosets(s.level(level)) {
                for &x in &coset.elements {
                    rep[x] = coset.representative;
                }
            }
            rep
        })
        .collect()
}

//! Canonical labelling and isomorphism of coloured graphs.
//!
//! The search is the usual individualisation-refinement scheme: the initial
//! partition (cells ordered by colour) is refined to an equitable ordered
//! partition, a vertex of the first smallest non-singleton cell is
//! individualised, and the process recurses until the partition is discrete.
//! Each discrete partition yields a relabelled graph; the certificate is the
//! least one under `(refinement trace, encoding)`.
//!
//! Pruning:
//! - a node whose trace prefix is larger than the current best leaf's is cut;
//! - automorphisms found from equal leaves prune children in the same orbit
//!   of the subgroup fixing the node's individualised vertices;
//! - on finding an automorphism the search jumps back to the common ancestor
//!   of the two equivalent leaves.

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::graph::{ColoredGraph, VertexColor};

/// Per-vertex class ids, contiguous from 0; smaller ids come first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    classes: Vec<usize>,
}

impl Coloring {
    /// Renumbers arbitrary class ids to `0..k`, preserving their order.
    pub fn new(raw: Vec<usize>) -> Self {
        let mut ids = raw.clone();
        ids.sort_unstable();
        ids.dedup();
        let classes = raw.iter().map(|c| ids.binary_search(c).unwrap()).collect();
        Self { classes }
    }

    /// The vertex colours of `g` as classes.
    pub fn of_graph(g: &ColoredGraph) -> Self {
        Self::new(g.colors().iter().map(|c| usize::from(c.id())).collect())
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn class(&self, v: usize) -> usize {
        self.classes[v]
    }

    pub fn class_count(&self) -> usize {
        self.classes.iter().max().map_or(0, |m| m + 1)
    }

    /// Vertex sets of the classes, in class order.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        let mut cells = vec![Vec::new(); self.class_count()];
        for (v, &c) in self.classes.iter().enumerate() {
            cells[c].push(v);
        }
        cells
    }

    /// True when every vertex of a class sees the same multiset of neighbour classes.
    pub fn is_equitable(&self, g: &ColoredGraph) -> bool {
        let sig = |v: usize| {
            let mut s: Vec<usize> = g.neighbors(v).iter().map(|&u| self.classes[u]).collect();
            s.sort_unstable();
            s
        };
        self.cells().iter().all(|cell| {
            let first = sig(cell[0]);
            cell[1..].iter().all(|&v| sig(v) == first)
        })
    }
}

/// 1-dimensional Weisfeiler–Leman refinement of `init`.
///
/// Each round renumbers classes by `(old class, sorted neighbour classes)`
/// until the number of classes stops growing.
pub fn color_refine(g: &ColoredGraph, init: &Coloring) -> Coloring {
    let mut current = Coloring::new(init.classes.clone());
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..g.vertex_count())
            .map(|v| {
                let mut s: Vec<usize> = g.neighbors(v).iter().map(|&u| current.classes[u]).collect();
                s.sort_unstable();
                (current.classes[v], s)
            })
            .collect();
        let mut sorted: Vec<&(usize, Vec<usize>)> = keys.iter().collect();
        sorted.sort();
        sorted.dedup();
        if sorted.len() == current.class_count() {
            return current;
        }
        let classes = keys.iter().map(|k| sorted.binary_search(&k).unwrap()).collect();
        current = Coloring { classes };
    }
}

/// Canonical vertex order plus the byte encoding of the relabelled graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalCertificate {
    /// `order[i]` is the input vertex placed at canonical position `i`.
    order: Vec<usize>,
    encoding: Vec<u8>,
}

impl CanonicalCertificate {
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Big-endian `u32` vertex count, one colour byte per vertex, `u32` edge
    /// count, then the sorted `(u, v)` pairs (`u < v`) as `u32`s.
    pub fn encoding(&self) -> &[u8] {
        &self.encoding
    }

    pub fn to_hex(&self) -> String {
        self.encoding.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Inverse of `order`: canonical position of each input vertex.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// The canonical graph itself, decoded from the encoding.
    pub fn canonical_graph(&self) -> ColoredGraph {
        let e = &self.encoding;
        let word = |at: usize| u32::from_be_bytes([e[at], e[at + 1], e[at + 2], e[at + 3]]) as usize;
        let n = word(0);
        let colors: Vec<VertexColor> = e[4..4 + n]
            .iter()
            .map(|&c| VertexColor::from_id(c).expect("encoding holds valid colours"))
            .collect();
        let m = word(4 + n);
        let edges = (0..m).map(|i| {
            let at = 8 + n + 8 * i;
            (word(at), word(at + 4))
        });
        ColoredGraph::new(colors, edges).expect("encoding holds a simple graph")
    }
}

/// Counters from one canonisation run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
    pub automorphisms: u64,
}

pub fn canonical_form(g: &ColoredGraph) -> CanonicalCertificate {
    canonical_form_with_stats(g).0
}

pub fn canonical_form_with_stats(g: &ColoredGraph) -> (CanonicalCertificate, SearchStats) {
    let n = g.vertex_count();
    if n == 0 {
        let cert = CanonicalCertificate {
            order: Vec::new(),
            encoding: Leaf::encode(g, &[]).to_bytes(),
        };
        return (cert, SearchStats::default());
    }
    let mut search = Search::new(g);
    let mut root = Partition::by_color(g);
    let mut queue: VecDeque<usize> = root.cell_starts().collect();
    let trace = search.refiner.refine(g, &mut root, &mut queue);
    let mut path = Vec::new();
    let mut traces = vec![trace];
    search.visit(root, &mut path, &mut traces);
    let best = search.best.expect("search reaches at least one leaf");
    let cert = CanonicalCertificate {
        encoding: best.encoding.to_bytes(),
        order: best.lab,
    };
    (cert, search.stats)
}

/// A colour- and edge-preserving bijection `g1 -> g2`, if one exists.
pub fn find_isomorphism(g1: &ColoredGraph, g2: &ColoredGraph) -> Option<Vec<usize>> {
    let c1 = canonical_form(g1);
    let c2 = canonical_form(g2);
    isomorphism_from_certificates(g1, &c1, g2, &c2)
}

/// Composes two certificates into an isomorphism when their encodings agree.
pub fn isomorphism_from_certificates(
    g1: &ColoredGraph,
    c1: &CanonicalCertificate,
    g2: &ColoredGraph,
    c2: &CanonicalCertificate,
) -> Option<Vec<usize>> {
    if c1.encoding != c2.encoding {
        return None;
    }
    let map: Vec<usize> = c1.positions().iter().map(|&i| c2.order[i]).collect();
    assert!(
        g1.is_isomorphism_to(g2, &map),
        "equal canonical encodings must yield an isomorphism"
    );
    Some(map)
}

/// Ordered partition of the vertex set into contiguous cells of `lab`.
#[derive(Debug, Clone)]
struct Partition {
    lab: Vec<usize>,
    pos: Vec<usize>,
    /// Start index of the cell holding each vertex.
    cell: Vec<usize>,
    /// Cell length, valid at cell starts.
    len: Vec<usize>,
    cells: usize,
}

impl Partition {
    fn by_color(g: &ColoredGraph) -> Self {
        let n = g.vertex_count();
        let mut lab: Vec<usize> = (0..n).collect();
        lab.sort_by_key(|&v| (g.color(v), v));
        let mut pos = vec![0; n];
        let mut cell = vec![0; n];
        let mut len = vec![0; n];
        let mut cells = 0;
        let mut start = 0;
        for i in 0..n {
            pos[lab[i]] = i;
            if i > 0 && g.color(lab[i]) != g.color(lab[i - 1]) {
                start = i;
            }
            if start == i {
                cells += 1;
            }
            cell[lab[i]] = start;
            len[start] += 1;
        }
        Self {
            lab,
            pos,
            cell,
            len,
            cells,
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn cell_starts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut i = 0;
        std::iter::from_fn(move || {
            (i < self.lab.len()).then(|| {
                let s = i;
                i += self.len[s];
                s
            })
        })
    }

    /// First smallest non-singleton cell.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in self.cell_starts() {
            let l = self.len[s];
            if l > 1 && best.is_none_or(|b| l < self.len[b]) {
                best = Some(s);
            }
        }
        best
    }

    /// Splits `{v}` off the front of its cell; returns the new singleton's start.
    fn individualize(&mut self, v: usize) -> usize {
        let start = self.cell[v];
        let l = self.len[start];
        debug_assert!(l > 1);
        let other = self.lab[start];
        let pv = self.pos[v];
        self.lab.swap(start, pv);
        self.pos[v] = start;
        self.pos[other] = pv;
        self.len[start] = 1;
        self.len[start + 1] = l - 1;
        for i in start + 1..start + l {
            self.cell[self.lab[i]] = start + 1;
        }
        self.cells += 1;
        start
    }
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn mix(h: &mut u64, x: u64) {
    for b in x.to_le_bytes() {
        *h ^= u64::from(b);
        *h = h.wrapping_mul(FNV_PRIME);
    }
}

/// Scratch space for splitter-based refinement.
struct Refiner {
    count: Vec<usize>,
    touched: Vec<usize>,
    marked: Vec<bool>,
    in_queue: Vec<bool>,
}

impl Refiner {
    fn new(n: usize) -> Self {
        Self {
            count: vec![0; n],
            touched: Vec::new(),
            marked: vec![false; n],
            in_queue: vec![false; n],
        }
    }

    /// Refines `p` to the coarsest equitable partition finer than it, using
    /// the cells in `queue` as initial splitters. Returns a trace hash that
    /// depends only on labelling-invariant data.
    fn refine(&mut self, g: &ColoredGraph, p: &mut Partition, queue: &mut VecDeque<usize>) -> u64 {
        let mut h = FNV_OFFSET;
        for &s in queue.iter() {
            self.in_queue[s] = true;
        }
        let mut touched_cells = Vec::new();
        let mut fragments = Vec::new();
        while let Some(w) = queue.pop_front() {
            self.in_queue[w] = false;
            if p.is_discrete() {
                continue;
            }
            for i in w..w + p.len[w] {
                for &u in g.neighbors(p.lab[i]) {
                    if self.count[u] == 0 {
                        self.touched.push(u);
                    }
                    self.count[u] += 1;
                }
            }
            touched_cells.clear();
            for &u in &self.touched {
                let c = p.cell[u];
                if !self.marked[c] {
                    self.marked[c] = true;
                    touched_cells.push(c);
                }
            }
            touched_cells.sort_unstable();
            mix(&mut h, w as u64);
            for &c in &touched_cells {
                self.marked[c] = false;
                let l = p.len[c];
                if l == 1 {
                    mix(&mut h, self.count[p.lab[c]] as u64);
                    continue;
                }
                let count = &self.count;
                p.lab[c..c + l].sort_by_key(|&v| count[v]);
                let (lo, hi) = (count[p.lab[c]], count[p.lab[c + l - 1]]);
                if lo == hi {
                    mix(&mut h, lo as u64);
                    continue;
                }
                fragments.clear();
                let mut start = c;
                for i in c..c + l {
                    let v = p.lab[i];
                    p.pos[v] = i;
                    if i > c && count[v] != count[p.lab[i - 1]] {
                        fragments.push((start, i - start));
                        start = i;
                    }
                    p.cell[v] = start;
                }
                fragments.push((start, c + l - start));
                for &(s, fl) in &fragments {
                    p.len[s] = fl;
                    mix(&mut h, s as u64);
                    mix(&mut h, fl as u64);
                    mix(&mut h, count[p.lab[s]] as u64);
                }
                p.cells += fragments.len() - 1;

                if self.in_queue[c] {
                    for &(s, _) in &fragments[1..] {
                        self.in_queue[s] = true;
                        queue.push_back(s);
                    }
                } else {
                    let largest = fragments
                        .iter()
                        .enumerate()
                        .max_by(|a, b| a.1 .1.cmp(&b.1 .1).then(b.0.cmp(&a.0)))
                        .map(|(i, _)| i)
                        .unwrap();
                    for (i, &(s, _)) in fragments.iter().enumerate() {
                        if i != largest {
                            self.in_queue[s] = true;
                            queue.push_back(s);
                        }
                    }
                }
            }
            for &u in &self.touched {
                self.count[u] = 0;
            }
            self.touched.clear();
        }
        mix(&mut h, p.cells as u64);
        h
    }
}

/// Relabelled graph at a leaf: colours in canonical order, then sorted edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Encoding {
    colors: Vec<u8>,
    edges: Vec<(u32, u32)>,
}

impl Encoding {
    fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + self.colors.len() + 8 * self.edges.len());
        out.extend_from_slice(&(self.colors.len() as u32).to_be_bytes());
        out.extend_from_slice(&self.colors);
        out.extend_from_slice(&(self.edges.len() as u32).to_be_bytes());
        for &(u, v) in &self.edges {
            out.extend_from_slice(&u.to_be_bytes());
            out.extend_from_slice(&v.to_be_bytes());
        }
        out
    }
}

struct Leaf {
    lab: Vec<usize>,
    pos: Vec<usize>,
    path: Vec<usize>,
    traces: Vec<u64>,
    encoding: Encoding,
}

impl Leaf {
    fn encode(g: &ColoredGraph, lab: &[usize]) -> Encoding {
        let mut pos = vec![0u32; lab.len()];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i as u32;
        }
        let colors = lab.iter().map(|&v| g.color(v).id()).collect();
        let mut edges: Vec<(u32, u32)> = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (pos[u], pos[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        Encoding { colors, edges }
    }
}

struct Search<'a> {
    g: &'a ColoredGraph,
    refiner: Refiner,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
    stats: SearchStats,
}

impl<'a> Search<'a> {
    fn new(g: &'a ColoredGraph) -> Self {
        Self {
            g,
            refiner: Refiner::new(g.vertex_count()),
            first: None,
            best: None,
            automorphisms: Vec::new(),
            stats: SearchStats::default(),
        }
    }

    /// Explores the node whose refined partition is `p`. Returns `Some(d)`
    /// to unwind the search to the node at depth `d`.
    fn visit(&mut self, p: Partition, path: &mut Vec<usize>, traces: &mut Vec<u64>) -> Option<usize> {
        self.stats.nodes += 1;
        let depth = path.len();
        if let Some(best) = &self.best {
            let end = (depth + 1).min(best.traces.len());
            if traces[..=depth].cmp(&best.traces[..end]) == Ordering::Greater {
                return None;
            }
        }
        if p.is_discrete() {
            return self.leaf(p, path, traces);
        }
        let target = p
            .target_cell()
            .expect("non-discrete partition has a non-singleton cell");
        let mut candidates: Vec<usize> = p.lab[target..target + p.len[target]].to_vec();
        candidates.sort_unstable();

        let mut tried: Vec<usize> = Vec::new();
        let mut orbits: Option<(usize, UnionFind)> = None;
        for v in candidates {
            if !tried.is_empty() {
                let stale = orbits
                    .as_ref()
                    .is_none_or(|(seen, _)| *seen != self.automorphisms.len());
                if stale {
                    orbits = Some((self.automorphisms.len(), self.stabiliser_orbits(path)));
                }
                let uf = &mut orbits.as_mut().unwrap().1;
                let rv = uf.find(v);
                if tried.iter().any(|&u| uf.find(u) == rv) {
                    continue;
                }
            }
            tried.push(v);

            let mut child = p.clone();
            let single = child.individualize(v);
            let mut queue = VecDeque::from([single]);
            let trace = self.refiner.refine(self.g, &mut child, &mut queue);
            path.push(v);
            traces.push(trace);
            let jump = self.visit(child, path, traces);
            path.pop();
            traces.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, p: Partition, path: &[usize], traces: &[u64]) -> Option<usize> {
        self.stats.leaves += 1;
        let encoding = Leaf::encode(self.g, &p.lab);
        for stored in [&self.first, &self.best].into_iter().flatten() {
            if stored.encoding == encoding {
                let gamma: Vec<usize> = stored.pos.iter().map(|&i| p.lab[i]).collect();
                debug_assert!(self.g.is_isomorphism_to(self.g, &gamma));
                let common = path.iter().zip(&stored.path).take_while(|(a, b)| a == b).count();
                self.automorphisms.push(gamma);
                self.stats.automorphisms += 1;
                return Some(common);
            }
        }
        let leaf = Leaf {
            lab: p.lab,
            pos: p.pos,
            path: path.to_vec(),
            traces: traces.to_vec(),
            encoding,
        };
        let better = match &self.best {
            None => true,
            Some(best) => (&leaf.traces, &leaf.encoding) < (&best.traces, &best.encoding),
        };
        if self.first.is_none() {
            self.first = Some(Leaf {
                lab: leaf.lab.clone(),
                pos: leaf.pos.clone(),
                path: leaf.path.clone(),
                traces: leaf.traces.clone(),
                encoding: leaf.encoding.clone(),
            });
        }
        if better {
            self.best = Some(leaf);
        }
        None
    }

    /// Orbits of the group generated by the known automorphisms that fix
    /// every vertex of `path`.
    fn stabiliser_orbits(&self, path: &[usize]) -> UnionFind {
        let mut uf = UnionFind::new(self.g.vertex_count());
        for gamma in &self.automorphisms {
            if path.iter().all(|&v| gamma[v] == v) {
                for (v, &w) in gamma.iter().enumerate() {
                    uf.union(v, w);
                }
            }
        }
        uf
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexColor::*;

    fn graph(colors: Vec<VertexColor>, edges: &[(usize, usize)]) -> ColoredGraph {
        ColoredGraph::new(colors, edges.iter().copied()).unwrap()
    }

    #[test]
    fn four_cycle_is_one_class() {
        let g = graph(vec![Internal; 4], &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(color_refine(&g, &Coloring::of_graph(&g)).class_count(), 1);
    }

    #[test]
    fn path_splits_by_degree() {
        let g = graph(vec![Internal; 3], &[(0, 1), (1, 2)]);
        let c = color_refine(&g, &Coloring::of_graph(&g));
        assert_eq!(c.class_count(), 2);
        assert_eq!(c.class(0), c.class(2));
        assert_ne!(c.class(0), c.class(1));
    }

    #[test]
    fn single_vertex_certificate() {
        let g = graph(vec![Internal], &[]);
        let c = canonical_form(&g);
        assert_eq!(c.order(), &[0]);
        assert_eq!(c.encoding(), &[0, 0, 0, 1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn colour_multisets_separate() {
        let a = graph(vec![Left, Right], &[(0, 1)]);
        let b = graph(vec![Left, Equals], &[(0, 1)]);
        assert_ne!(canonical_form(&a), canonical_form(&b));
        assert!(find_isomorphism(&a, &b).is_none());
    }

    #[test]
    fn paths_are_isomorphic() {
        let a = graph(vec![Internal; 3], &[(0, 1), (1, 2)]);
        let b = graph(vec![Internal; 3], &[(0, 2), (2, 1)]);
        let map = find_isomorphism(&a, &b).unwrap();
        assert!(a.is_isomorphism_to(&b, &map));
        let star = graph(vec![Internal; 4], &[(0, 1), (0, 2), (0, 3)]);
        assert!(find_isomorphism(&a, &star).is_none());
    }

    #[test]
    fn regular_graphs_need_individualisation() {
        // 6-cycle vs two triangles: both 2-regular, refinement alone cannot tell
        let c6 = graph(vec![Internal; 6], &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let tt = graph(vec![Internal; 6], &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert_eq!(color_refine(&c6, &Coloring::of_graph(&c6)).class_count(), 1);
        assert_eq!(color_refine(&tt, &Coloring::of_graph(&tt)).class_count(), 1);
        assert!(find_isomorphism(&c6, &tt).is_none());
        let rotated = c6.permuted(&[3, 4, 5, 0, 1, 2]);
        assert_eq!(canonical_form(&c6).encoding(), canonical_form(&rotated).encoding());
    }

    #[test]
    fn petersen_relabelled() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        let p = graph(vec![Internal; 10], &edges);
        let q = p.permuted(&[7, 2, 9, 0, 4, 1, 8, 3, 6, 5]);
        let (cp, stats) = canonical_form_with_stats(&p);
        assert_eq!(cp.encoding(), canonical_form(&q).encoding());
        assert!(stats.automorphisms > 0);
        assert_eq!(cp.canonical_graph().edge_count(), 15);
    }

    #[test]
    fn certificate_graph_round_trip() {
        let g = graph(vec![Internal, Left, Right, Equals], &[(0, 1), (0, 2), (2, 3)]);
        let c = canonical_form(&g);
        let h = c.canonical_graph();
        let relabelled = g.permuted(&c.positions());
        assert_eq!(h.edges(), relabelled.edges());
        assert_eq!(h.colors(), relabelled.colors());
    }

    #[test]
    fn splitter_refinement_matches_wl() {
        let g = graph(
            vec![Internal, Internal, Internal, Internal, Left, Internal],
            &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)],
        );
        let wl = color_refine(&g, &Coloring::of_graph(&g));
        let mut p = Partition::by_color(&g);
        let mut queue: VecDeque<usize> = p.cell_starts().collect();
        Refiner::new(6).refine(&g, &mut p, &mut queue);
        let classes: Vec<usize> = (0..6).map(|v| p.cell[v]).collect();
        let split = Coloring::new(classes);
        for u in 0..6 {
            for v in 0..6 {
                assert_eq!(wl.class(u) == wl.class(v), split.class(u) == split.class(v));
            }
        }
        assert!(split.is_equitable(&g));
    }
}

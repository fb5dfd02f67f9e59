//! Composition-series isomorphism and canonical forms through the cone
//! graph: build `X(S)`, canonise it, and read a series back off the
//! canonical graph.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::canon::{canonical_form, isomorphism_from_certificates, CanonicalCertificate};
use crate::gadget::{build_x, Atom};
use crate::graph::{ColoredGraph, VertexColor};
use crate::group::{CanonicalTable, GroupTable, IsoMap, Subgroup};
use crate::series::{validate_chain, CompositionSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesCanonError {
    /// A graph isomorphism whose restriction is not a series isomorphism.
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
}

fn malformed(msg: impl Into<String>) -> SeriesCanonError {
    SeriesCanonError::MalformedGraph(msg.into())
}

/// A group isomorphism carrying every level of one chain onto the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesIso {
    pub phi: IsoMap,
    pub level_check: Vec<bool>,
}

/// A series with its cone graph and the graph's certificate, so repeated
/// comparisons canonise each graph once.
#[derive(Debug, Clone)]
pub struct PreparedSeries {
    series: CompositionSeries,
    graph: ColoredGraph,
    certificate: CanonicalCertificate,
}

impl PreparedSeries {
    pub fn new(series: CompositionSeries) -> Self {
        let graph = build_x(&series);
        let certificate = canonical_form(&graph);
        Self {
            series,
            graph,
            certificate,
        }
    }

    pub fn series(&self) -> &CompositionSeries {
        &self.series
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn certificate(&self) -> &CanonicalCertificate {
        &self.certificate
    }
}

pub fn series_isomorphic(s: &CompositionSeries, s2: &CompositionSeries) -> Result<Option<SeriesIso>, SeriesCanonError> {
    if s.group().order() != s2.group().order() || s.length() != s2.length() {
        return Ok(None);
    }
    prepared_isomorphic(&PreparedSeries::new(s.clone()), &PreparedSeries::new(s2.clone()))
}

/// Restricts a graph isomorphism `X(s) -> X(s2)` to the group elements and
/// checks the result is a series isomorphism.
pub fn prepared_isomorphic(a: &PreparedSeries, b: &PreparedSeries) -> Result<Option<SeriesIso>, SeriesCanonError> {
    let Some(theta) = isomorphism_from_certificates(&a.graph, &a.certificate, &b.graph, &b.certificate) else {
        return Ok(None);
    };
    let from = element_vertices(&a.graph, a.series.group().order());
    let to_labels = b.graph.provenance().expect("X(S) carries provenance");
    let forward = from
        .iter()
        .map(|&v| match to_labels[theta[v]].as_slice() {
            [Atom::Coset { level: 0, rep }] => Ok(*rep),
            other => Err(SeriesCanonError::InternalContradiction(format!(
                "element vertex mapped to non-element {other:?}"
            ))),
        })
        .collect::<Result<Vec<_>, _>>()?;

    let (g, h) = (a.series.group(), b.series.group());
    let phi = IsoMap::new(g, h, forward)
        .ok_or_else(|| SeriesCanonError::InternalContradiction("restriction is not multiplicative".into()))?;
    let level_check: Vec<bool> = (0..=a.series.length())
        .map(|i| {
            let mut image: Vec<usize> = a.series.level(i).elements().iter().map(|&x| phi.apply(x)).collect();
            image.sort_unstable();
            image == b.series.level(i).elements()
        })
        .collect();
    if !level_check.iter().all(|&ok| ok) {
        return Err(SeriesCanonError::InternalContradiction(
            "restriction does not preserve the chain".into(),
        ));
    }
    Ok(Some(SeriesIso { phi, level_check }))
}

/// Vertex of each group element in `X(S)`, indexed by element.
fn element_vertices(x: &ColoredGraph, n: usize) -> Vec<usize> {
    let mut out = vec![usize::MAX; n];
    for (v, label) in x.provenance().expect("X(S) carries provenance").iter().enumerate() {
        if let [Atom::Coset { level: 0, rep }] = label.as_slice() {
            out[*rep] = v;
        }
    }
    out
}

/// A composition series read back from a graph isomorphic to some `X(S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructedSeries {
    pub table: GroupTable,
    pub chain: Vec<Subgroup>,
    /// Graph vertex of each recovered element, in element order.
    pub element_vertices: Vec<usize>,
}

/// Recovers the series encoded by `a` from colours and edges alone.
///
/// Tree edges are those touching an internal vertex. The root is the unique
/// vertex farthest from the gadget leaves; with height `2m + 1` the group
/// elements are the vertices at depth `m`, numbered in vertex order. Products
/// come from left-right-equals cross paths, the identity from the recovered
/// table, and level `i` of the chain from the descendants of the identity's
/// ancestor at depth `m - i`.
pub fn reconstruct_series(a: &ColoredGraph) -> Result<ReconstructedSeries, SeriesCanonError> {
    let nv = a.vertex_count();
    let is_gadget = |v: usize| a.color(v).is_gadget();
    let mut tree_adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
    let mut cross_adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for &(u, v) in a.edges() {
        if is_gadget(u) && is_gadget(v) {
            cross_adj[u].push(v);
            cross_adj[v].push(u);
        } else {
            tree_adj[u].push(v);
            tree_adj[v].push(u);
        }
    }
    let tree_edges: usize = tree_adj.iter().map(Vec::len).sum::<usize>() / 2;
    if nv == 0 || tree_edges + 1 != nv {
        return Err(malformed("tree edges do not form a spanning tree"));
    }
    let gadgets: Vec<usize> = (0..nv).filter(|&v| is_gadget(v)).collect();
    if gadgets.is_empty() {
        return Err(malformed("no gadget vertices"));
    }
    if gadgets.iter().any(|&v| tree_adj[v].len() != 1) {
        return Err(malformed("gadget vertex is not a tree leaf"));
    }

    // height above the gadget leaves
    let height = bfs(&tree_adj, &gadgets);
    let top = height.iter().filter_map(|&h| h).max().unwrap_or(0);
    let roots: Vec<usize> = (0..nv).filter(|&v| height[v] == Some(top)).collect();
    let &[root] = roots.as_slice() else {
        return Err(malformed("no unique root"));
    };
    if top % 2 == 0 {
        return Err(malformed("tree height is not odd"));
    }
    let m = (top - 1) / 2;

    let depth = bfs(&tree_adj, &[root]);
    let depth: Vec<usize> = depth
        .into_iter()
        .map(|d| d.ok_or_else(|| malformed("tree is disconnected")))
        .collect::<Result<_, _>>()?;
    for v in 0..nv {
        let leaf = v != root && tree_adj[v].len() == 1;
        if leaf != is_gadget(v) || (is_gadget(v) && depth[v] != top) {
            return Err(malformed("leaves are not exactly the gadget vertices at full depth"));
        }
    }
    let parent: Vec<Option<usize>> = (0..nv)
        .map(|v| tree_adj[v].iter().copied().find(|&u| depth[u] + 1 == depth[v]))
        .collect();

    let elements: Vec<usize> = (0..nv).filter(|&v| depth[v] == m).collect();
    let n = elements.len();
    let mut element_of = vec![usize::MAX; nv];
    for (i, &v) in elements.iter().enumerate() {
        element_of[v] = i;
    }
    for color in [VertexColor::Left, VertexColor::Right, VertexColor::Equals] {
        if a.count_color(color) != n * n {
            return Err(malformed(format!("expected {} {color:?} vertices", n * n)));
        }
    }
    let ancestor_at = |mut v: usize, d: usize| {
        while depth[v] > d {
            v = parent[v].expect("non-root vertex has a parent");
        }
        v
    };

    let mut table = vec![usize::MAX; n * n];
    for &left in gadgets.iter().filter(|&&v| a.color(v) == VertexColor::Left) {
        let &[right] = cross_adj[left].as_slice() else {
            return Err(malformed("left vertex without a unique cross edge"));
        };
        if a.color(right) != VertexColor::Right {
            return Err(malformed("left vertex not joined to a right vertex"));
        }
        let equals: Vec<usize> = cross_adj[right]
            .iter()
            .copied()
            .filter(|&u| a.color(u) == VertexColor::Equals)
            .collect();
        let &[eq] = equals.as_slice() else {
            return Err(malformed("right vertex without a unique equals neighbour"));
        };
        if cross_adj[right].len() != 2 || cross_adj[eq].len() != 1 {
            return Err(malformed("ambiguous multiplication path"));
        }
        let x = element_of[ancestor_at(left, m)];
        let y = element_of[ancestor_at(right, m)];
        let z = element_of[ancestor_at(eq, m)];
        let slot = &mut table[x * n + y];
        if *slot != usize::MAX {
            return Err(malformed("product read twice"));
        }
        *slot = z;
    }
    if table.contains(&usize::MAX) {
        return Err(malformed("missing product"));
    }
    let group = GroupTable::from_flat(n, table).map_err(|e| malformed(format!("recovered table: {e}")))?;

    let identity_vertex = elements[group.identity()];
    let mut chain = Vec::with_capacity(m + 1);
    for level in 0..=m {
        let anchor = ancestor_at(identity_vertex, m - level);
        let members: Vec<usize> = elements
            .iter()
            .enumerate()
            .filter(|&(_, &v)| ancestor_at(v, m - level) == anchor)
            .map(|(i, _)| i)
            .collect();
        chain.push(Subgroup::from_sorted_unchecked(members));
    }
    validate_chain(&group, &chain).map_err(|e| malformed(format!("recovered chain: {e}")))?;

    Ok(ReconstructedSeries {
        table: group,
        chain,
        element_vertices: elements,
    })
}

fn bfs(adj: &[Vec<usize>], sources: &[usize]) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        dist[s] = Some(0);
        queue.push_back(s);
    }
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &u in &adj[v] {
            if dist[u].is_none() {
                dist[u] = Some(d + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Canonical form of a composition series.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalSeries {
    table: CanonicalTable,
    chain: Vec<Subgroup>,
    /// Encoding of the canonical graph the series was read from.
    source_encoding: Vec<u8>,
}

impl CanonicalSeries {
    pub fn table(&self) -> &CanonicalTable {
        &self.table
    }

    pub fn chain(&self) -> &[Subgroup] {
        &self.chain
    }

    pub fn source_encoding(&self) -> &[u8] {
        &self.source_encoding
    }
}

impl fmt::Display for CanonicalSeries {
    /// The table in group file format, then one `level i: ids` line per level.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::io::write_group(self.table.group()))?;
        for (i, s) in self.chain.iter().enumerate() {
            let ids: Vec<String> = s.elements().iter().map(|x| (x + 1).to_string()).collect();
            writeln!(f, "level {i}: {}", ids.join(" "))?;
        }
        Ok(())
    }
}

/// Reads the series back off the canonical relabelling of `X(s)`.
pub fn canon_series(s: &CompositionSeries) -> Result<CanonicalSeries, SeriesCanonError> {
    let certificate = canonical_form(&build_x(s));
    canon_from_certificate(&certificate)
}

pub fn canon_from_certificate(certificate: &CanonicalCertificate) -> Result<CanonicalSeries, SeriesCanonError> {
    let rebuilt = reconstruct_series(&certificate.canonical_graph())?;
    Ok(CanonicalSeries {
        table: CanonicalTable::new(rebuilt.table),
        chain: rebuilt.chain,
        source_encoding: certificate.encoding().to_vec(),
    })
}

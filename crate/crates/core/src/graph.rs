//! Undirected vertex-coloured graphs and their text format.
//!
//! ```text
//! p cgraph V E
//! n <vertex> <color-id>      (V lines, vertex order)
//! e <u> <v>                  (E lines, u < v, sorted)
//! ```
//!
//! Vertices are 1-based in the file and 0-based in memory.

use std::fmt::Write as _;

use thiserror::Error;

use crate::gadget::Atom;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum VertexColor {
    Internal = 0,
    Left = 1,
    Right = 2,
    Equals = 3,
}

impl VertexColor {
    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn from_id(id: u8) -> Option<Self> {
        match id {
            0 => Some(Self::Internal),
            1 => Some(Self::Left),
            2 => Some(Self::Right),
            3 => Some(Self::Equals),
            _ => None,
        }
    }

    pub fn is_gadget(self) -> bool {
        self != Self::Internal
    }
}

/// Diagnostic tag. Canonisation never looks at it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Tree,
    Cross,
    Unspecified,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) references a missing vertex")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    colors: Vec<VertexColor>,
    adjacency: Vec<Vec<usize>>,
    /// Sorted, `u < v`.
    edges: Vec<(usize, usize)>,
    edge_kinds: Vec<EdgeKind>,
    provenance: Option<Vec<Vec<Atom>>>,
}

impl ColoredGraph {
    pub fn new(colors: Vec<VertexColor>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        Self::with_kinds(colors, edges.into_iter().map(|(u, v)| (u, v, EdgeKind::Unspecified)))
    }

    pub fn with_kinds(
        colors: Vec<VertexColor>,
        edges: impl IntoIterator<Item = (usize, usize, EdgeKind)>,
    ) -> Result<Self, GraphError> {
        let n = colors.len();
        let mut tagged: Vec<((usize, usize), EdgeKind)> = Vec::new();
        for (u, v, kind) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            tagged.push(((u.min(v), u.max(v)), kind));
        }
        tagged.sort_unstable_by_key(|&(e, _)| e);
        if let Some(w) = tagged.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(GraphError::DuplicateEdge(w[0].0 .0, w[0].0 .1));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &((u, v), _) in &tagged {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let (edges, edge_kinds) = tagged.into_iter().unzip();
        Ok(Self {
            colors,
            adjacency,
            edges,
            edge_kinds,
            provenance: None,
        })
    }

    pub(crate) fn set_provenance(&mut self, labels: Vec<Vec<Atom>>) {
        debug_assert_eq!(labels.len(), self.colors.len());
        self.provenance = Some(labels);
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn colors(&self) -> &[VertexColor] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> VertexColor {
        self.colors[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_kinds(&self) -> &[EdgeKind] {
        &self.edge_kinds
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Structural labels of the vertices, present on graphs built from a series.
    pub fn provenance(&self) -> Option<&[Vec<Atom>]> {
        self.provenance.as_deref()
    }

    pub fn count_color(&self, color: VertexColor) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    /// Same graph with vertex `v` renamed to `perm[v]`. Provenance and edge
    /// kinds follow their vertices.
    pub fn permuted(&self, perm: &[usize]) -> ColoredGraph {
        let n = self.vertex_count();
        assert_eq!(perm.len(), n);
        let mut colors = vec![VertexColor::Internal; n];
        for v in 0..n {
            colors[perm[v]] = self.colors[v];
        }
        let edges = self
            .edges
            .iter()
            .zip(&self.edge_kinds)
            .map(|(&(u, v), &k)| (perm[u], perm[v], k));
        let mut g = ColoredGraph::with_kinds(colors, edges).expect("permutation preserves simplicity");
        if let Some(labels) = &self.provenance {
            let mut moved = vec![Vec::new(); n];
            for v in 0..n {
                moved[perm[v]] = labels[v].clone();
            }
            g.provenance = Some(moved);
        }
        g
    }

    /// True when `map` is a colour- and edge-preserving bijection onto `other`.
    pub fn is_isomorphism_to(&self, other: &ColoredGraph, map: &[usize]) -> bool {
        let n = self.vertex_count();
        if other.vertex_count() != n || other.edge_count() != self.edge_count() || map.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &w in map {
            if w >= n || hit[w] {
                return false;
            }
            hit[w] = true;
        }
        (0..n).all(|v| self.colors[v] == other.colors[map[v]])
            && self.edges.iter().all(|&(u, v)| other.has_edge(map[u], map[v]))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p cgraph {} {}", self.vertex_count(), self.edge_count()).unwrap();
        for (v, c) in self.colors.iter().enumerate() {
            writeln!(out, "n {} {}", v + 1, c.id()).unwrap();
        }
        for &(u, v) in &self.edges {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        }
        out
    }

    /// Parses the text format. Lines starting with `c` or `#` are comments.
    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let err = |line: usize, message: &str| GraphError::Parse {
            line,
            message: message.to_string(),
        };
        let mut header: Option<(usize, usize)> = None;
        let mut colors: Vec<Option<VertexColor>> = Vec::new();
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| err(line_no, "expected a non-negative integer"))
            };
            match fields.as_slice() {
                ["p", "cgraph", v, e] => {
                    if header.is_some() {
                        return Err(err(line_no, "duplicate header"));
                    }
                    let v = num(v)?;
                    header = Some((v, num(e)?));
                    colors = vec![None; v];
                }
                ["n", v, c] => {
                    let (nv, _) = header.ok_or_else(|| err(line_no, "vertex line before header"))?;
                    let v = num(v)?;
                    if v == 0 || v > nv {
                        return Err(err(line_no, "vertex out of range"));
                    }
                    let c = u8::try_from(num(c)?)
                        .ok()
                        .and_then(VertexColor::from_id)
                        .ok_or_else(|| err(line_no, "unknown colour id"))?;
                    if colors[v - 1].replace(c).is_some() {
                        return Err(err(line_no, "vertex coloured twice"));
                    }
                }
                ["e", u, v] => {
                    let (nv, _) = header.ok_or_else(|| err(line_no, "edge line before header"))?;
                    let (u, v) = (num(u)?, num(v)?);
                    if u == 0 || v == 0 || u > nv || v > nv {
                        return Err(err(line_no, "edge endpoint out of range"));
                    }
                    edges.push((u - 1, v - 1));
                }
                _ => return Err(err(line_no, "unrecognised line")),
            }
        }
        let (_, ne) = header.ok_or_else(|| err(0, "missing `p cgraph` header"))?;
        if edges.len() != ne {
            return Err(err(0, &format!("header declares {ne} edges, found {}", edges.len())));
        }
        let colors = colors
            .into_iter()
            .enumerate()
            .map(|(v, c)| c.ok_or_else(|| err(0, &format!("vertex {} has no colour", v + 1))))
            .collect::<Result<Vec<_>, _>>()?;
        ColoredGraph::new(colors, edges)
    }
}

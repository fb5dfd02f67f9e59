//! Finite group isomorphism and canonical forms.
//!
//! Groups are given by multiplication tables. Two routes decide isomorphism
//! and produce canonical tables: one through composition series encoded as
//! coloured cone graphs and a graph canoniser, the other by enumerating
//! images of small generating sets.

pub mod canon;
pub mod driver;
pub mod gadget;
pub mod genenum;
pub mod graph;
pub mod group;
pub mod io;
pub mod series;
pub mod series_canon;
pub mod tree;

pub use canon::{canonical_form, color_refine, find_isomorphism, CanonicalCertificate, Coloring};
pub use driver::{canon, decide_route, generate_family, iso, relabel, FamilySpec, Route, RouteDecision};
pub use gadget::{build_coset_tree, build_gadget_m, build_x, Atom};
pub use genenum::{gen_enum_canon, gen_enum_iso, word_ranks, OrderedGenSeq, WordRank};
pub use graph::{ColoredGraph, VertexColor};
pub use group::{brute_force_iso, CanonicalTable, GroupError, GroupProfile, GroupTable, IsoMap, Subgroup};
pub use io::{parse_group, write_group, ParseError};
pub use series::{candidate_chain_bound, enumerate_composition_series, CompositionSeries};
pub use series_canon::{canon_series, series_isomorphic, CanonicalSeries, PreparedSeries, SeriesIso};

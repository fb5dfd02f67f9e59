//! Top-level isomorphism and canonisation with route dispatch, plus
//! generators for standard group families.

use std::fmt;
use std::sync::Arc;

use log::{debug, info, warn};
use rayon::prelude::*;
use thiserror::Error;

use crate::genenum::{gen_enum_canon, gen_enum_iso};
use crate::group::{CanonicalTable, GroupProfile, GroupTable, IsoMap};
use crate::series::{enumerate_composition_series, is_prime};
use crate::series_canon::{canon_series, prepared_isomorphic, PreparedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DriverError {
    #[error("bad family parameters: {0}")]
    BadParameters(String),
    #[error("not a permutation of 1..{0}")]
    BadPermutation(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Composition series and cone-graph canonisation.
    Series,
    /// Generator enumeration.
    GenEnum,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Series => "series",
            Route::GenEnum => "genenum",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouteDecision {
    pub n: usize,
    pub p: usize,
    /// `log2 n / log2 log2 n`; infinite when `n <= 2`.
    pub alpha: f64,
    pub chosen: Route,
    pub forced: Option<Route>,
}

pub fn alpha(n: usize) -> f64 {
    let l = (n as f64).log2();
    let ll = l.log2();
    if ll <= 0.0 {
        f64::INFINITY
    } else {
        l / ll
    }
}

/// Series route when `p <= alpha`, unless `force` says otherwise.
pub fn decide_route(profile: &GroupProfile, force: Option<Route>) -> RouteDecision {
    let n = profile.order;
    let p = profile.smallest_prime.unwrap_or(1);
    let alpha = alpha(n);
    let natural = if (p as f64) <= alpha {
        Route::Series
    } else {
        Route::GenEnum
    };
    let chosen = force.unwrap_or(natural);
    info!(
        "route: n={n} p={p} alpha={alpha:.3} chosen={chosen} forced={}",
        force.is_some()
    );
    RouteDecision {
        n,
        p,
        alpha,
        chosen,
        forced: force,
    }
}

/// Isomorphism between two groups, if one exists.
pub fn iso(g: &GroupTable, h: &GroupTable, force: Option<Route>) -> Option<IsoMap> {
    if g.order() != h.order() {
        return None;
    }
    if g.order() == 1 {
        return IsoMap::new(g, h, vec![0]);
    }
    match decide_route(&g.profile(), force).chosen {
        Route::GenEnum => gen_enum_iso(g, h),
        Route::Series => series_route_iso(g, h),
    }
}

fn series_route_iso(g: &GroupTable, h: &GroupTable) -> Option<IsoMap> {
    let g = Arc::new(g.clone());
    let Some(first) = enumerate_composition_series(&g).into_iter().next() else {
        warn!("no composition series with prime factors; falling back to generator enumeration");
        return gen_enum_iso(&g, h);
    };
    let h = Arc::new(h.clone());
    let targets = enumerate_composition_series(&h);
    debug!("comparing one series of G against {} series of H", targets.len());
    let a = PreparedSeries::new(first);
    targets.into_par_iter().find_map_first(|s2| {
        if s2.length() != a.series().length() {
            return None;
        }
        prepared_isomorphic(&a, &PreparedSeries::new(s2))
            .expect("graph isomorphism restricts to a series isomorphism")
            .map(|iso| iso.phi)
    })
}

/// Canonical multiplication table. Isomorphic groups give equal tables
/// under the same route.
pub fn canon(g: &GroupTable, force: Option<Route>) -> CanonicalTable {
    if g.order() == 1 {
        return CanonicalTable::new(GroupTable::trivial());
    }
    match decide_route(&g.profile(), force).chosen {
        Route::GenEnum => gen_enum_canon(g),
        Route::Series => {
            let g = Arc::new(g.clone());
            let all = enumerate_composition_series(&g);
            if all.is_empty() {
                warn!("no composition series with prime factors; falling back to generator enumeration");
                return gen_enum_canon(&g);
            }
            debug!("canonising {} series", all.len());
            all.par_iter()
                .map(|s| canon_series(s).expect("cone graphs reconstruct").table().clone())
                .min()
                .expect("at least one series")
        }
    }
}

/// Standard group families with documented element numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// `Z_n`; element `i` is the `i`-th power of the generator.
    Cyclic { order: usize },
    /// `Z_p^k`; element ids are base-`p` digit vectors, most significant first.
    ElementaryAbelian { p: usize, k: u32 },
    /// Symmetries of the `k`-gon, order `2k`: rotations `r^i` are `0..k`,
    /// reflections `s r^i` are `k..2k`.
    Dihedral { k: usize },
    /// `1, -1, i, -i, j, -j, k, -k`.
    Quaternion,
    /// Upper unitriangular `3 x 3` matrices over `Z_p`, ordered by the
    /// entries `(a, c, b)` of `[[1, a, c], [0, 1, b], [0, 0, 1]]`.
    Heisenberg { p: usize },
    /// Lexicographic tuples over the factors.
    DirectProduct(Vec<FamilySpec>),
}

impl FamilySpec {
    pub fn order(&self) -> Option<usize> {
        match self {
            FamilySpec::Cyclic { order } => Some(*order),
            FamilySpec::ElementaryAbelian { p, k } => p.checked_pow(*k),
            FamilySpec::Dihedral { k } => k.checked_mul(2),
            FamilySpec::Quaternion => Some(8),
            FamilySpec::Heisenberg { p } => p.checked_pow(3),
            FamilySpec::DirectProduct(fs) => fs.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.order()?)),
        }
    }
}

const FAMILY_LIMIT: usize = 1 << 12;

pub fn generate_family(spec: &FamilySpec) -> Result<GroupTable, DriverError> {
    let bad = |m: &str| Err(DriverError::BadParameters(m.to_string()));
    match spec.order() {
        None => return bad("order overflows"),
        Some(n) if n > FAMILY_LIMIT => return bad(&format!("order {n} exceeds {FAMILY_LIMIT}")),
        _ => {}
    }
    let table = match *spec {
        FamilySpec::Cyclic { order } => {
            if order == 0 {
                return bad("cyclic order must be positive");
            }
            GroupTable::from_fn(order, |a, b| (a + b) % order)
        }
        FamilySpec::ElementaryAbelian { p, k } => {
            if !is_prime(p) {
                return bad("p must be prime");
            }
            let n = p.pow(k);
            GroupTable::from_fn(n, |a, b| {
                let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
                for _ in 0..k {
                    out += ((a % p + b % p) % p) * place;
                    a /= p;
                    b /= p;
                    place *= p;
                }
                out
            })
        }
        FamilySpec::Dihedral { k } => {
            if k == 0 {
                return bad("dihedral degree must be positive");
            }
            GroupTable::from_fn(2 * k, |x, y| {
                let (s, a) = (x / k, x % k);
                let (t, c) = (y / k, y % k);
                let rot = if t == 0 { (a + c) % k } else { (k + c - a) % k };
                ((s + t) % 2) * k + rot
            })
        }
        FamilySpec::Quaternion => GroupTable::from_fn(8, quaternion_mul),
        FamilySpec::Heisenberg { p } => {
            if !is_prime(p) {
                return bad("p must be prime");
            }
            let split = |x: usize| (x / (p * p), x % p, (x / p) % p);
            GroupTable::from_fn(p * p * p, |x, y| {
                let (a, b, c) = split(x);
                let (a2, b2, c2) = split(y);
                let (a3, b3, c3) = ((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
                a3 * p * p + c3 * p + b3
            })
        }
        FamilySpec::DirectProduct(ref factors) => {
            let tables = factors.iter().map(generate_family).collect::<Result<Vec<_>, _>>()?;
            return Ok(tables
                .iter()
                .fold(GroupTable::trivial(), |acc, t| direct_product(&acc, t)));
        }
    };
    Ok(table.expect("family tables are groups"))
}

/// Elements `(x, y)` numbered `x * |H| + y`.
pub fn direct_product(g: &GroupTable, h: &GroupTable) -> GroupTable {
    let m = h.order();
    GroupTable::from_fn(g.order() * m, |a, b| g.mul(a / m, b / m) * m + h.mul(a % m, b % m))
        .expect("direct products of groups are groups")
}

/// Units `1, i, j, k` as 0..4, element `2 * unit + sign`.
fn quaternion_mul(x: usize, y: usize) -> usize {
    // UNIT[u][v] = (sign, unit) of u * v
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let (u, s) = (x / 2, x % 2);
    let (v, t) = (y / 2, y % 2);
    let (sign, unit) = UNIT[u][v];
    2 * unit + (s + t + sign) % 2
}

/// Relabels by a 1-based permutation: element `a` becomes `perm[a-1]`.
pub fn relabel(g: &GroupTable, perm_one_based: &[usize]) -> Result<GroupTable, DriverError> {
    let n = g.order();
    let bad = || DriverError::BadPermutation(n);
    if perm_one_based.len() != n {
        return Err(bad());
    }
    let mut seen = vec![false; n];
    let mut perm = Vec::with_capacity(n);
    for &x in perm_one_based {
        if x == 0 || x > n || seen[x - 1] {
            return Err(bad());
        }
        seen[x - 1] = true;
        perm.push(x - 1);
    }
    Ok(g.relabel(&perm).expect("relabelling a group yields a group"))
}

//! Composition series enumeration by chain extension.
//!
//! Starting from the trivial subgroup, the current head `G_k` is extended by
//! `<G_k, x>` where `x` runs over the minimal representatives of the
//! non-trivial left cosets of `G_k`. An extension is kept only when it has
//! prime index over `G_k` and normalises it. Different representatives of
//! one coset generate the same subgroup, so the search tree has at most
//! `|G / G_k| - 1` children at depth `k`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

use crate::group::{GroupTable, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("chain is empty")]
    Empty,
    #[error("first subgroup is not the trivial subgroup")]
    BadBottom,
    #[error("last subgroup is not the whole group")]
    BadTop,
    #[error("level {level} is not a subgroup")]
    NotSubgroup { level: usize },
    #[error("level {level} is not contained in level {}", level + 1)]
    NotNested { level: usize },
    #[error("level {level} is not normal in level {}", level + 1)]
    NotNormal { level: usize },
    #[error("index of level {level} in level {} is {index}, not prime", level + 1)]
    IndexNotPrime { level: usize, index: usize },
}

/// A chain `1 = G_0 < G_1 < ... < G_m = G` with every step normal of prime index.
#[derive(Clone, PartialEq, Eq)]
pub struct CompositionSeries {
    group: Arc<GroupTable>,
    chain: Vec<Subgroup>,
}

impl fmt::Debug for CompositionSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CompositionSeries({self})")
    }
}

impl CompositionSeries {
    /// Checks every series invariant on an arbitrary chain.
    pub fn new(group: Arc<GroupTable>, chain: Vec<Subgroup>) -> Result<Self, SeriesError> {
        let series = Self { group, chain };
        series.validate()?;
        Ok(series)
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn chain(&self) -> &[Subgroup] {
        &self.chain
    }

    /// Composition length `m`.
    pub fn length(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn level(&self, i: usize) -> &Subgroup {
        &self.chain[i]
    }

    /// Re-checks all invariants from scratch.
    pub fn validate(&self) -> Result<(), SeriesError> {
        validate_chain(&self.group, &self.chain)
    }

    /// Concatenated sorted element lists; equal keys mean identical chains.
    pub fn key(&self) -> Vec<Vec<usize>> {
        self.chain.iter().map(|s| s.elements().to_vec()).collect()
    }
}

pub fn validate_chain(g: &GroupTable, chain: &[Subgroup]) -> Result<(), SeriesError> {
    let (first, last) = match (chain.first(), chain.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(SeriesError::Empty),
    };
    if first.elements() != [g.identity()] {
        return Err(SeriesError::BadBottom);
    }
    if last.len() != g.order() {
        return Err(SeriesError::BadTop);
    }
    for (level, s) in chain.iter().enumerate() {
        if !g.is_subgroup(s.elements()) {
            return Err(SeriesError::NotSubgroup { level });
        }
    }
    for (level, pair) in chain.windows(2).enumerate() {
        let (lower, upper) = (&pair[0], &pair[1]);
        if !lower.is_subset_of(upper) {
            return Err(SeriesError::NotNested { level });
        }
        let index = upper.len() / lower.len();
        if upper.len() % lower.len() != 0 || !is_prime(index) {
            return Err(SeriesError::IndexNotPrime { level, index });
        }
        if !g.is_normal(lower, upper).unwrap_or(false) {
            return Err(SeriesError::NotNormal { level });
        }
    }
    Ok(())
}

impl fmt::Display for CompositionSeries {
    /// `{1} < {1,3} < G` with 1-based ids.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.chain.len() - 1;
        for (i, s) in self.chain.iter().enumerate() {
            if i > 0 {
                f.write_str(" < ")?;
            }
            if i == last {
                f.write_str("G")?;
            } else {
                let ids: Vec<String> = s.elements().iter().map(|x| (x + 1).to_string()).collect();
                write!(f, "{{{}}}", ids.join(","))?;
            }
        }
        Ok(())
    }
}

pub(crate) fn is_prime(k: usize) -> bool {
    k >= 2 && (2..).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
}

/// Counters from one run of the chain-extension search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    /// Root-to-leaf paths of the search tree, dead ends included.
    pub paths_explored: u64,
    /// Complete series reached, before deduplication.
    pub series_before_dedup: u64,
}

/// All composition series of `g`, duplicate-free and sorted by chain key.
pub fn enumerate_composition_series(g: &Arc<GroupTable>) -> Vec<CompositionSeries> {
    enumerate_with_stats(g).0
}

pub fn enumerate_with_stats(g: &Arc<GroupTable>) -> (Vec<CompositionSeries>, EnumerationStats) {
    let mut stats = EnumerationStats::default();
    let mut found: BTreeSet<Vec<Subgroup>> = BTreeSet::new();
    let mut chain = vec![g.trivial_subgroup()];
    extend(g, &mut chain, &mut found, &mut stats);
    let series = found
        .into_iter()
        .map(|chain| CompositionSeries {
            group: Arc::clone(g),
            chain,
        })
        .collect();
    (series, stats)
}

fn extend(
    g: &GroupTable,
    chain: &mut Vec<Subgroup>,
    found: &mut BTreeSet<Vec<Subgroup>>,
    stats: &mut EnumerationStats,
) {
    let head = chain.last().expect("chain starts non-empty");
    if head.len() == g.order() {
        stats.paths_explored += 1;
        stats.series_before_dedup += 1;
        found.insert(chain.clone());
        return;
    }
    let mut children = Vec::new();
    for coset in g.left_cosets(head) {
        if head.contains(coset.representative) {
            continue;
        }
        let seed = head.elements().iter().copied().chain([coset.representative]);
        let candidate = g.subgroup_generated(seed);
        if !is_prime(candidate.len() / head.len()) {
            continue;
        }
        if g.is_normal(head, &candidate).unwrap_or(false) {
            children.push(candidate);
        }
    }
    if children.is_empty() {
        stats.paths_explored += 1;
        return;
    }
    for child in children {
        chain.push(child);
        extend(g, chain, found, stats);
        chain.pop();
    }
}

/// `prod_{k=0}^{floor(log_p n) - 1} n / p^k` for the smallest prime `p | n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainBound {
    pub value: BigUint,
    /// False when some factor `n / p^k` was rounded down (n not a power of p).
    pub exact: bool,
}

pub fn candidate_chain_bound(order: usize) -> ChainBound {
    let Some(p) = crate::group::smallest_prime_factor(order) else {
        return ChainBound {
            value: BigUint::from(1u32),
            exact: true,
        };
    };
    let mut value = BigUint::from(1u32);
    let mut exact = true;
    let mut pk = 1usize;
    // k ranges while p^(k+1) <= n, i.e. k < floor(log_p n)
    while pk.checked_mul(p).is_some_and(|next| next <= order) {
        exact &= order.is_multiple_of(pk);
        value *= BigUint::from(order / pk);
        pk *= p;
    }
    ChainBound { value, exact }
}

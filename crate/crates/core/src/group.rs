//! Finite groups given by validated multiplication tables.
//!
//! Elements are stored 0-based internally (`0..n`); the text format and the
//! CLI use 1-based ids. The identity is discovered during validation and is
//! never assumed to sit at a fixed position.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty table")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is outside 1..={n}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("not a Latin square: {line} repeats element {value}")]
    NotLatin { line: String, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("subgroup is not nested in the enclosing subgroup")]
    NotNested,
}

/// A finite group as an `n x n` multiplication table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupTable {
    n: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("n", &self.n)
            .field("identity", &self.identity)
            .finish()
    }
}

impl GroupTable {
    /// Validates a table of 1-based ids, as read from a group file.
    pub fn from_one_based(raw: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = raw.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in raw.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare {
                    row: r + 1,
                    len: row.len(),
                    expected: n,
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v == 0 || v > n {
                    return Err(GroupError::OutOfRange {
                        row: r + 1,
                        col: c + 1,
                        value: v,
                        n,
                    });
                }
                table.push(v - 1);
            }
        }
        Self::from_flat(n, table)
    }

    /// Builds and validates a group from a product function on `0..n`.
    pub fn from_fn(n: usize, mut mul: impl FnMut(usize, usize) -> usize) -> Result<Self, GroupError> {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(mul(a, b));
            }
        }
        Self::from_flat(n, table)
    }

    /// Validates a row-major table of 0-based ids.
    pub fn from_flat(n: usize, table: Vec<usize>) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Empty);
        }
        assert_eq!(table.len(), n * n, "flat table must hold n*n entries");
        if let Some((i, &v)) = table.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(GroupError::OutOfRange {
                row: i / n + 1,
                col: i % n + 1,
                value: v + 1,
                n,
            });
        }

        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let v = table[a * n + b];
                if seen[v] == a {
                    return Err(GroupError::NotLatin {
                        line: format!("row {}", a + 1),
                        value: v + 1,
                    });
                }
                seen[v] = a;
            }
        }
        seen.fill(usize::MAX);
        for b in 0..n {
            for a in 0..n {
                let v = table[a * n + b];
                if seen[v] == b {
                    return Err(GroupError::NotLatin {
                        line: format!("column {}", b + 1),
                        value: v + 1,
                    });
                }
                seen[v] = b;
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
            .ok_or(GroupError::NoIdentity)?;

        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(GroupError::NotAssociative {
                            a: a + 1,
                            b: b + 1,
                            c: c + 1,
                        });
                    }
                }
            }
        }

        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a * n + b] == identity && table[b * n + a] == identity)
                .ok_or(GroupError::NoInverse { element: a + 1 })?;
            inverse[a] = inv;
        }

        Ok(Self {
            n,
            table,
            identity,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        Self {
            n: 1,
            table: vec![0],
            identity: 0,
            inverse: vec![0],
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Row-major table of 0-based ids.
    pub fn flat(&self) -> &[usize] {
        &self.table
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.n..(a + 1) * self.n]
    }

    /// Rows of 1-based ids, the representation used by the text format.
    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| self.row(a).iter().map(|&v| v + 1).collect())
            .collect()
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `x a x^-1`
    pub fn conjugate(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(x, a), self.inv(x))
    }

    pub fn profile(&self) -> GroupProfile {
        GroupProfile::of_order(self.n)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.n).collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            elements: vec![self.identity],
        }
    }

    /// Smallest subgroup containing `seed`, by worklist closure.
    pub fn subgroup_generated<I>(&self, seed: I) -> Subgroup
    where
        I: IntoIterator<Item = usize>,
    {
        let mut member = vec![false; self.n];
        let mut elements = vec![self.identity];
        member[self.identity] = true;
        let gens: Vec<usize> = seed.into_iter().collect();
        for &g in &gens {
            if !member[g] {
                member[g] = true;
                elements.push(g);
            }
        }
        // In a finite group, closure under right multiplication by the
        // generators already yields the subgroup.
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for &g in &gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elements.push(y);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        Subgroup { elements }
    }

    /// Checks whether `elements` is a subgroup of this group.
    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &x in elements {
            member[x] = true;
        }
        member[self.identity]
            && elements
                .iter()
                .all(|&a| elements.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// Left cosets `xH`, each listed with its minimal element as representative.
    /// Cosets are ordered by representative.
    pub fn left_cosets(&self, h: &Subgroup) -> Vec<Coset> {
        let mut assigned = vec![false; self.n];
        let mut cosets = Vec::with_capacity(self.n / h.len());
        for x in 0..self.n {
            if assigned[x] {
                continue;
            }
            let mut elements: Vec<usize> = h.elements.iter().map(|&s| self.mul(x, s)).collect();
            elements.sort_unstable();
            for &y in &elements {
                assigned[y] = true;
            }
            cosets.push(Coset {
                representative: x,
                elements,
            });
        }
        cosets
    }

    /// Whether `inner` is normal in `outer`.
    pub fn is_normal(&self, inner: &Subgroup, outer: &Subgroup) -> Result<bool, GroupError> {
        if !inner.is_subset_of(outer) {
            return Err(GroupError::NotNested);
        }
        let mut member = vec![false; self.n];
        for &a in &inner.elements {
            member[a] = true;
        }
        Ok(outer
            .elements
            .iter()
            .all(|&x| inner.elements.iter().all(|&a| member[self.conjugate(a, x)])))
    }

    /// Size of a smallest generating set, by trying subsets of increasing size.
    pub fn rank(&self) -> usize {
        self.minimal_generating_set().len()
    }

    /// The first generating set of minimum size in lexicographic subset order.
    pub fn minimal_generating_set(&self) -> Vec<usize> {
        if self.n == 1 {
            return Vec::new();
        }
        let candidates: Vec<usize> = (0..self.n).filter(|&x| x != self.identity).collect();
        for k in 1..=candidates.len() {
            let mut found = None;
            for_each_combination(candidates.len(), k, |idx| {
                let set: Vec<usize> = idx.iter().map(|&i| candidates[i]).collect();
                if self.subgroup_generated(set.iter().copied()).len() == self.n {
                    found = Some(set);
                    true
                } else {
                    false
                }
            });
            if let Some(set) = found {
                return set;
            }
        }
        unreachable!("the whole group generates itself")
    }

    /// `table'[perm(a)][perm(b)] = perm(table[a][b])`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GroupError> {
        let n = self.n;
        assert_eq!(perm.len(), n, "permutation length must equal group order");
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        Self::from_flat(n, table)
    }
}

/// Calls `f` on each `k`-subset of `0..n` in lexicographic order until it returns true.
pub(crate) fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Order-derived facts about a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupProfile {
    pub order: usize,
    /// `None` only for the trivial group.
    pub smallest_prime: Option<usize>,
    pub is_p_group: bool,
    /// `m` with `order = p^m`, when `is_p_group`.
    pub prime_power_exponent: Option<u32>,
}

impl GroupProfile {
    pub fn of_order(order: usize) -> Self {
        let smallest_prime = smallest_prime_factor(order);
        let exponent = smallest_prime.and_then(|p| {
            let mut m = 0;
            let mut r = order;
            while r.is_multiple_of(p) {
                r /= p;
                m += 1;
            }
            (r == 1).then_some(m)
        });
        Self {
            order,
            smallest_prime,
            is_p_group: exponent.is_some(),
            prime_power_exponent: exponent,
        }
    }
}

pub fn smallest_prime_factor(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return Some(d);
        }
        d += 1;
    }
    Some(n)
}

/// Sorted set of element ids closed under the product.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Wraps a sorted, deduplicated element list after checking closure.
    pub fn new(group: &GroupTable, elements: impl IntoIterator<Item = usize>) -> Option<Self> {
        let elements: Vec<usize> = elements.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        group.is_subgroup(&elements).then_some(Self { elements })
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Self { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    pub representative: usize,
    pub elements: Vec<usize>,
}

/// A relabelled multiplication table used as a canonical form. Tables
/// compare row-major on their element ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalTable(GroupTable);

impl CanonicalTable {
    pub fn new(table: GroupTable) -> Self {
        Self(table)
    }

    pub fn group(&self) -> &GroupTable {
        &self.0
    }

    pub fn into_group(self) -> GroupTable {
        self.0
    }
}

impl Ord for CanonicalTable {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .order()
            .cmp(&other.0.order())
            .then_with(|| self.0.flat().cmp(other.0.flat()))
    }
}

impl PartialOrd for CanonicalTable {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A group isomorphism `G -> H`, stored as the image of every element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoMap {
    forward: Vec<usize>,
}

impl IsoMap {
    /// Checks bijectivity and multiplicativity.
    pub fn new(g: &GroupTable, h: &GroupTable, forward: Vec<usize>) -> Option<Self> {
        is_isomorphism(g, h, &forward).then_some(Self { forward })
    }

    pub fn identity(g: &GroupTable) -> Self {
        Self {
            forward: (0..g.order()).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.forward[x]
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    pub fn inverse(&self) -> IsoMap {
        let mut back = vec![0; self.forward.len()];
        for (x, &y) in self.forward.iter().enumerate() {
            back[y] = x;
        }
        IsoMap { forward: back }
    }

    /// `other ∘ self`
    pub fn then(&self, other: &IsoMap) -> IsoMap {
        IsoMap {
            forward: self.forward.iter().map(|&y| other.forward[y]).collect(),
        }
    }
}

pub fn is_isomorphism(g: &GroupTable, h: &GroupTable, forward: &[usize]) -> bool {
    let n = g.order();
    if h.order() != n || forward.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &y in forward {
        if y >= n || hit[y] {
            return false;
        }
        hit[y] = true;
    }
    (0..n).all(|a| (0..n).all(|b| forward[g.mul(a, b)] == h.mul(forward[a], forward[b])))
}

/// Backtracking isomorphism search over element images.
///
/// Candidate images are restricted to elements of the same order, and every
/// assignment is closed under products of already-assigned elements before
/// branching again. Used as an oracle independent of generator enumeration.
pub fn brute_force_iso(g: &GroupTable, h: &GroupTable) -> Option<IsoMap> {
    let n = g.order();
    if h.order() != n {
        return None;
    }
    let order_g: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
    let order_h: Vec<usize> = h.elements().map(|x| h.element_order(x)).collect();
    let mut hist_g = order_g.clone();
    let mut hist_h = order_h.clone();
    hist_g.sort_unstable();
    hist_h.sort_unstable();
    if hist_g != hist_h {
        return None;
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[g.identity()] = h.identity();
    used[h.identity()] = true;
    let state = BruteState {
        g,
        h,
        order_g: &order_g,
        order_h: &order_h,
    };
    let forward = state.extend(map, used)?;
    let iso = IsoMap::new(g, h, forward);
    debug_assert!(iso.is_some());
    iso
}

struct BruteState<'a> {
    g: &'a GroupTable,
    h: &'a GroupTable,
    order_g: &'a [usize],
    order_h: &'a [usize],
}

impl BruteState<'_> {
    fn extend(&self, map: Vec<usize>, used: Vec<bool>) -> Option<Vec<usize>> {
        let Some(x) = map.iter().position(|&v| v == usize::MAX) else {
            return Some(map);
        };
        for y in 0..self.h.order() {
            if used[y] || self.order_g[x] != self.order_h[y] {
                continue;
            }
            let mut m = map.clone();
            let mut u = used.clone();
            m[x] = y;
            u[y] = true;
            if self.propagate(&mut m, &mut u) {
                if let Some(done) = self.extend(m, u) {
                    return Some(done);
                }
            }
        }
        None
    }

    /// Forces images of products of assigned elements; false on conflict.
    fn propagate(&self, map: &mut [usize], used: &mut [bool]) -> bool {
        let n = self.g.order();
        loop {
            let mut changed = false;
            for a in 0..n {
                if map[a] == usize::MAX {
                    continue;
                }
                for b in 0..n {
                    if map[b] == usize::MAX {
                        continue;
                    }
                    let ab = self.g.mul(a, b);
                    let image = self.h.mul(map[a], map[b]);
                    if map[ab] == usize::MAX {
                        if used[image] || self.order_g[ab] != self.order_h[image] {
                            return false;
                        }
                        map[ab] = image;
                        used[image] = true;
                        changed = true;
                    } else if map[ab] != image {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> GroupTable {
        GroupTable::from_fn(n, |a, b| (a + b) % n).unwrap()
    }

    fn klein() -> GroupTable {
        GroupTable::from_fn(4, |a, b| a ^ b).unwrap()
    }

    /// Dihedral group of order 2k: rotations 0..k, then reflections.
    fn dihedral(k: usize) -> GroupTable {
        GroupTable::from_fn(2 * k, |x, y| {
            let (a, s) = (x % k, x / k);
            let (c, t) = (y % k, y / k);
            let rot = if s == 0 { (a + c) % k } else { (a + k - c) % k };
            ((s + t) % 2) * k + rot
        })
        .unwrap()
    }

    #[test]
    fn validates_trivial_and_cyclic() {
        let g = GroupTable::from_one_based(&[vec![1]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
        let c3 = GroupTable::from_one_based(&[vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]]).unwrap();
        assert_eq!(c3.identity(), 0);
    }

    #[test]
    fn rejects_non_latin() {
        let err = GroupTable::from_one_based(&[vec![1, 2], vec![2, 2]]).unwrap_err();
        assert!(matches!(err, GroupError::NotLatin { .. }), "{err}");
    }

    #[test]
    fn rejects_latin_square_without_identity() {
        // idempotent quasigroup: x*x = x for all x
        let err = GroupTable::from_one_based(&[vec![1, 3, 2], vec![3, 2, 1], vec![2, 1, 3]]).unwrap_err();
        assert_eq!(err, GroupError::NoIdentity);
    }

    #[test]
    fn reports_non_associativity_witness() {
        let raw = vec![
            vec![1, 2, 3, 4, 5],
            vec![2, 1, 4, 5, 3],
            vec![3, 4, 5, 1, 2],
            vec![4, 5, 2, 3, 1],
            vec![5, 3, 1, 2, 4],
        ];
        let err = GroupTable::from_one_based(&raw).unwrap_err();
        let GroupError::NotAssociative { a, b, c } = err else {
            panic!("expected NotAssociative, got {err}");
        };
        let m = |x: usize, y: usize| raw[x - 1][y - 1];
        assert_ne!(m(m(a, b), c), m(a, m(b, c)));
        assert_eq!((a, b, c), (2, 2, 3));
    }

    #[test]
    fn identity_need_not_be_first() {
        let g = cyclic(5).relabel(&[3, 0, 1, 2, 4]).unwrap();
        assert_eq!(g.identity(), 3);
    }

    #[test]
    fn profiles() {
        let p = GroupProfile::of_order(8);
        assert_eq!(
            (p.smallest_prime, p.is_p_group, p.prime_power_exponent),
            (Some(2), true, Some(3))
        );
        let p = GroupProfile::of_order(12);
        assert_eq!((p.smallest_prime, p.is_p_group), (Some(2), false));
        let p = GroupProfile::of_order(27);
        assert_eq!(
            (p.smallest_prime, p.is_p_group, p.prime_power_exponent),
            (Some(3), true, Some(3))
        );
        let p = GroupProfile::of_order(1);
        assert_eq!((p.smallest_prime, p.is_p_group), (None, false));
    }

    #[test]
    fn generated_subgroups() {
        let c6 = cyclic(6);
        assert_eq!(c6.subgroup_generated([2]).elements(), &[0, 2, 4]);
        assert_eq!(c6.subgroup_generated([]).elements(), &[0]);
        assert_eq!(cyclic(4).subgroup_generated([1]).len(), 4);
    }

    #[test]
    fn cosets_partition_the_group() {
        let c4 = cyclic(4);
        let h = c4.subgroup_generated([2]);
        let cosets = c4.left_cosets(&h);
        assert_eq!(
            cosets,
            vec![
                Coset {
                    representative: 0,
                    elements: vec![0, 2]
                },
                Coset {
                    representative: 1,
                    elements: vec![1, 3]
                },
            ]
        );
        assert_eq!(c4.left_cosets(&c4.trivial_subgroup()).len(), 4);
        assert_eq!(c4.left_cosets(&c4.whole()).len(), 1);
    }

    #[test]
    fn normality() {
        let v = klein();
        let h = v.subgroup_generated([1]);
        assert!(v.is_normal(&h, &v.whole()).unwrap());

        let d4 = dihedral(4);
        let rot = d4.subgroup_generated([1]);
        assert!(d4.is_normal(&rot, &d4.whole()).unwrap());

        // reflection subgroup of S3 is not normal: r s r^-1 = r^2 s
        let d3 = dihedral(3);
        let refl = d3.subgroup_generated([3]);
        assert_eq!(d3.conjugate(3, 1), 5);
        assert!(!d3.is_normal(&refl, &d3.whole()).unwrap());

        let other = d3.subgroup_generated([4]);
        assert_eq!(d3.is_normal(&refl, &other), Err(GroupError::NotNested));
    }

    #[test]
    fn ranks() {
        assert_eq!(cyclic(7).rank(), 1);
        assert_eq!(klein().rank(), 2);
        let e8 = GroupTable::from_fn(8, |a, b| a ^ b).unwrap();
        assert_eq!(e8.rank(), 3);
        assert_eq!(GroupTable::trivial().rank(), 0);
    }

    #[test]
    fn brute_force_examples() {
        assert!(brute_force_iso(&cyclic(4), &klein()).is_none());
        assert!(brute_force_iso(&cyclic(6), &dihedral(3)).is_none());
        let g = dihedral(4);
        let h = g.relabel(&[5, 2, 7, 0, 1, 6, 3, 4]).unwrap();
        let iso = brute_force_iso(&g, &h).unwrap();
        assert!(is_isomorphism(&g, &h, iso.forward()));
    }

    #[test]
    fn combinations_in_lexicographic_order() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| {
            seen.push(c.to_vec());
            false
        });
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        let mut count = 0;
        for_each_combination(3, 3, |_| {
            count += 1;
            false
        });
        assert_eq!(count, 1);
    }
}

//! Generator enumeration: isomorphism by trying every image of a minimal
//! generating set, and canonical tables from word orderings.
//!
//! For an ordered generating sequence `g = (g_1, ..., g_k)` every element
//! gets the shortest, then lexicographically least, word in the generator
//! indices that evaluates to it. Ranking elements by their words gives a
//! total order that any isomorphism carrying `g` to `h` transports, so the
//! table relabelled by rank (`M_g`) is an isomorphism invariant of `(G, g)`.

use thiserror::Error;

use crate::group::{is_isomorphism, CanonicalTable, GroupTable, IsoMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenEnumError {
    #[error("sequence reaches {reached} of {order} elements")]
    NotGenerating { reached: usize, order: usize },
    #[error("generator {0} appears twice")]
    DuplicateGenerator(usize),
    #[error("generator {0} is not an element")]
    OutOfRange(usize),
}

/// Ordered sequence of distinct elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedGenSeq(Vec<usize>);

impl OrderedGenSeq {
    pub fn new(g: &GroupTable, gens: Vec<usize>) -> Result<Self, GenEnumError> {
        for (i, &x) in gens.iter().enumerate() {
            if x >= g.order() {
                return Err(GenEnumError::OutOfRange(x));
            }
            if gens[..i].contains(&x) {
                return Err(GenEnumError::DuplicateGenerator(x));
            }
        }
        Ok(Self(gens))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Image under an element map.
    pub fn mapped(&self, phi: &IsoMap) -> Self {
        Self(self.0.iter().map(|&x| phi.apply(x)).collect())
    }
}

/// Minimal words and ranks for every element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordRank {
    /// Elements in increasing word order; `by_rank[0]` is the identity.
    by_rank: Vec<usize>,
    rank: Vec<usize>,
    /// `(prefix element, generator index)`; `None` for the identity.
    last_step: Vec<Option<(usize, usize)>>,
}

impl WordRank {
    /// 0-based rank of `x`.
    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn by_rank(&self) -> &[usize] {
        &self.by_rank
    }

    pub fn precedes(&self, x: usize, y: usize) -> bool {
        self.rank[x] < self.rank[y]
    }

    /// Minimal word of `x` as generator indices.
    pub fn word(&self, mut x: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((prefix, i)) = self.last_step[x] {
            w.push(i);
            x = prefix;
        }
        w.reverse();
        w
    }
}

/// Breadth-first search of the Cayley graph from the identity.
///
/// Each layer is scanned in rank order and each element's successors in
/// generator order, so the first word reaching an element is its least
/// word in the standard order.
pub fn word_ranks(g: &GroupTable, gens: &OrderedGenSeq) -> Result<WordRank, GenEnumError> {
    let n = g.order();
    let mut rank = vec![usize::MAX; n];
    let mut last_step = vec![None; n];
    let mut by_rank = Vec::with_capacity(n);
    rank[g.identity()] = 0;
    by_rank.push(g.identity());
    let mut head = 0;
    while head < by_rank.len() {
        let x = by_rank[head];
        head += 1;
        for (i, &s) in gens.as_slice().iter().enumerate() {
            let y = g.mul(x, s);
            if rank[y] == usize::MAX {
                rank[y] = by_rank.len();
                last_step[y] = Some((x, i));
                by_rank.push(y);
            }
        }
    }
    if by_rank.len() != n {
        return Err(GenEnumError::NotGenerating {
            reached: by_rank.len(),
            order: n,
        });
    }
    Ok(WordRank {
        by_rank,
        rank,
        last_step,
    })
}

/// `M_g`: the table with every element replaced by its rank.
pub fn canonical_table(g: &GroupTable, gens: &OrderedGenSeq) -> Result<CanonicalTable, GenEnumError> {
    let words = word_ranks(g, gens)?;
    Ok(CanonicalTable::new(table_by_rank(g, &words)))
}

fn table_by_rank(g: &GroupTable, words: &WordRank) -> GroupTable {
    let n = g.order();
    let mut table = vec![0; n * n];
    for (i, &x) in words.by_rank.iter().enumerate() {
        for (j, &y) in words.by_rank.iter().enumerate() {
            table[i * n + j] = words.rank[g.mul(x, y)];
        }
    }
    GroupTable::from_flat(n, table).expect("relabelling a group yields a group")
}

/// Tries every image tuple of a minimal generating set of `g` in `h`.
pub fn gen_enum_iso(g: &GroupTable, h: &GroupTable) -> Option<IsoMap> {
    let n = g.order();
    if h.order() != n {
        return None;
    }
    let gens = OrderedGenSeq(g.minimal_generating_set());
    let words = word_ranks(g, &gens).expect("minimal generating set generates");
    let gen_orders: Vec<usize> = gens.as_slice().iter().map(|&x| g.element_order(x)).collect();
    let h_orders: Vec<usize> = h.elements().map(|y| h.element_order(y)).collect();
    let candidates: Vec<Vec<usize>> = gen_orders
        .iter()
        .map(|&o| h.elements().filter(|&y| h_orders[y] == o).collect())
        .collect();

    let mut images = vec![0; gens.len()];
    let mut forward = vec![0; n];
    search_images(&candidates, 0, &mut images, &mut |images| {
        // extend along the word tree: x = prefix * g_i  =>  phi(x) = phi(prefix) * h_i
        for &x in &words.by_rank {
            forward[x] = match words.last_step[x] {
                None => h.identity(),
                Some((prefix, i)) => h.mul(forward[prefix], images[i]),
            };
        }
        is_isomorphism(g, h, &forward)
    })
    .then(|| IsoMap::new(g, h, forward.clone()).expect("checked above"))
}

/// Depth-first over `candidates[0] x candidates[1] x ...`; stops when `f` accepts.
fn search_images(
    candidates: &[Vec<usize>],
    at: usize,
    images: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if at == candidates.len() {
        return f(images);
    }
    for &y in &candidates[at] {
        if images[..at].contains(&y) {
            continue;
        }
        images[at] = y;
        if search_images(candidates, at + 1, images, f) {
            return true;
        }
    }
    false
}

/// Least `M_g` over all ordered generating sequences of length `rank(G)`.
pub fn gen_enum_canon(g: &GroupTable) -> CanonicalTable {
    let r = g.rank();
    let all: Vec<Vec<usize>> = vec![g.elements().collect(); r];
    let mut images = vec![0; r];
    let mut best: Option<CanonicalTable> = None;
    search_images(&all, 0, &mut images, &mut |seq| {
        if let Ok(words) = word_ranks(g, &OrderedGenSeq(seq.to_vec())) {
            let m = CanonicalTable::new(table_by_rank(g, &words));
            if best.as_ref().is_none_or(|b| m < *b) {
                best = Some(m);
            }
        }
        false
    });
    best.expect("some sequence of rank length generates")
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

    fn seq(g: &GroupTable, v: &[usize]) -> OrderedGenSeq {
        OrderedGenSeq::new(g, v.to_vec()).unwrap()
    }

    #[test]
    fn cyclic_word_order() {
        let g = cyclic(4);
        let w = word_ranks(&g, &seq(&g, &[1])).unwrap();
        assert_eq!(w.by_rank(), &[0, 1, 2, 3]);
        assert_eq!(w.word(3), vec![0, 0, 0]);
        assert_eq!(w.word(0), Vec::<usize>::new());
    }

    #[test]
    fn klein_word_order() {
        // a = 1, b = 2, ab = 3
        let g = klein();
        let w = word_ranks(&g, &seq(&g, &[1, 2])).unwrap();
        assert_eq!(w.by_rank(), &[0, 1, 2, 3]);
        assert_eq!(w.word(3), vec![0, 1]);
    }

    #[test]
    fn not_generating() {
        let g = klein();
        assert_eq!(
            word_ranks(&g, &seq(&g, &[1])),
            Err(GenEnumError::NotGenerating { reached: 2, order: 4 })
        );
        assert_eq!(
            OrderedGenSeq::new(&g, vec![1, 1]),
            Err(GenEnumError::DuplicateGenerator(1))
        );
    }

    #[test]
    fn tables_agree_for_symmetric_generators() {
        let g = cyclic(4);
        assert_eq!(
            canonical_table(&g, &seq(&g, &[1])).unwrap(),
            canonical_table(&g, &seq(&g, &[3])).unwrap()
        );
        let v = klein();
        assert_eq!(
            canonical_table(&v, &seq(&v, &[1, 2])).unwrap(),
            canonical_table(&v, &seq(&v, &[2, 1])).unwrap()
        );
        assert_eq!(
            gen_enum_canon(&GroupTable::trivial()).group().to_one_based(),
            vec![vec![1]]
        );
    }

    #[test]
    fn iso_and_canon() {
        let g = cyclic(4);
        let h = g.relabel(&[2, 0, 3, 1]).unwrap();
        assert!(gen_enum_iso(&g, &h).is_some());
        assert!(gen_enum_iso(&g, &klein()).is_none());
        assert_eq!(gen_enum_canon(&g), gen_enum_canon(&h));
        assert_ne!(gen_enum_canon(&g), gen_enum_canon(&klein()));
    }
}

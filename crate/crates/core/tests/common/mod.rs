//! Test corpus and reference implementations that share no code with the
//! library beyond `GroupTable` itself.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use pgi_core::driver::direct_product;
use pgi_core::series::CompositionSeries;
use pgi_core::{generate_family, FamilySpec, GroupTable, Subgroup};
use rand::seq::SliceRandom;
use rand::Rng;

pub struct Named {
    pub name: &'static str,
    pub group: GroupTable,
}

fn fam(spec: FamilySpec) -> GroupTable {
    generate_family(&spec).unwrap()
}

pub fn cyclic(n: usize) -> GroupTable {
    fam(FamilySpec::Cyclic { order: n })
}

pub fn elementary(p: usize, k: u32) -> GroupTable {
    fam(FamilySpec::ElementaryAbelian { p, k })
}

pub fn dihedral(k: usize) -> GroupTable {
    fam(FamilySpec::Dihedral { k })
}

pub fn quaternion() -> GroupTable {
    fam(FamilySpec::Quaternion)
}

pub fn heisenberg(p: usize) -> GroupTable {
    fam(FamilySpec::Heisenberg { p })
}

pub fn product(a: &GroupTable, b: &GroupTable) -> GroupTable {
    direct_product(a, b)
}

/// Even permutations of four points under composition.
pub fn alternating4() -> GroupTable {
    let mut perms = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    let inv = (0..4)
                        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                        .filter(|&(i, j)| p[i] > p[j]);
                    if distinct && inv.count() % 2 == 0 {
                        perms.push(p);
                    }
                }
            }
        }
    }
    let index = |q: [usize; 4]| perms.iter().position(|p| *p == q).unwrap();
    GroupTable::from_fn(12, |x, y| index([0, 1, 2, 3].map(|i| perms[x][perms[y][i]]))).unwrap()
}

/// `Z_9 x| Z_3` with the generator of `Z_3` acting by multiplication by 4.
pub fn c9_semidirect_c3() -> GroupTable {
    let pow4 = [1, 4, 7];
    GroupTable::from_fn(27, |x, y| {
        let (a, b) = (x / 3, x % 3);
        let (c, d) = (y / 3, y % 3);
        ((a + c * pow4[b]) % 9) * 3 + (b + d) % 3
    })
    .unwrap()
}

/// Groups of order at most 16, several orders with more than one class.
pub fn corpus() -> Vec<Named> {
    let c2 = cyclic(2);
    vec![
        Named {
            name: "C2",
            group: c2.clone(),
        },
        Named {
            name: "C3",
            group: cyclic(3),
        },
        Named {
            name: "C4",
            group: cyclic(4),
        },
        Named {
            name: "Klein",
            group: elementary(2, 2),
        },
        Named {
            name: "D3",
            group: dihedral(3),
        },
        Named {
            name: "C6",
            group: cyclic(6),
        },
        Named {
            name: "C8",
            group: cyclic(8),
        },
        Named {
            name: "C2xC4",
            group: product(&c2, &cyclic(4)),
        },
        Named {
            name: "C2^3",
            group: elementary(2, 3),
        },
        Named {
            name: "D4",
            group: dihedral(4),
        },
        Named {
            name: "Q8",
            group: quaternion(),
        },
        Named {
            name: "Heis2",
            group: heisenberg(2),
        },
        Named {
            name: "C9",
            group: cyclic(9),
        },
        Named {
            name: "C3^2",
            group: elementary(3, 2),
        },
        Named {
            name: "D5",
            group: dihedral(5),
        },
        Named {
            name: "C10",
            group: cyclic(10),
        },
        Named {
            name: "C12",
            group: cyclic(12),
        },
        Named {
            name: "C2xC6",
            group: product(&c2, &cyclic(6)),
        },
        Named {
            name: "D6",
            group: dihedral(6),
        },
        Named {
            name: "A4",
            group: alternating4(),
        },
        Named {
            name: "C16",
            group: cyclic(16),
        },
        Named {
            name: "C4xC4",
            group: product(&cyclic(4), &cyclic(4)),
        },
        Named {
            name: "C2xD4",
            group: product(&c2, &dihedral(4)),
        },
        Named {
            name: "C2xQ8",
            group: product(&c2, &quaternion()),
        },
        Named {
            name: "D8",
            group: dihedral(8),
        },
    ]
}

/// p-groups of order at most 27.
pub fn p_group_corpus() -> Vec<Named> {
    let mut out: Vec<Named> = corpus().into_iter().filter(|g| g.group.profile().is_p_group).collect();
    out.push(Named {
        name: "C2^4",
        group: elementary(2, 4),
    });
    out.push(Named {
        name: "C25",
        group: cyclic(25),
    });
    out.push(Named {
        name: "C5^2",
        group: elementary(5, 2),
    });
    out.push(Named {
        name: "C27",
        group: cyclic(27),
    });
    out.push(Named {
        name: "C9xC3",
        group: product(&cyclic(9), &cyclic(3)),
    });
    out.push(Named {
        name: "C3^3",
        group: elementary(3, 3),
    });
    out.push(Named {
        name: "Heis3",
        group: heisenberg(3),
    });
    out.push(Named {
        name: "C9:C3",
        group: c9_semidirect_c3(),
    });
    out
}

pub fn random_perm(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// The series carried along a relabelling `x -> perm[x]`.
pub fn relabel_series(s: &CompositionSeries, perm: &[usize]) -> CompositionSeries {
    let g = Arc::new(s.group().relabel(perm).unwrap());
    let chain = s
        .chain()
        .iter()
        .map(|h| Subgroup::new(&g, h.elements().iter().map(|&x| perm[x])).unwrap())
        .collect();
    CompositionSeries::new(g, chain).unwrap()
}

fn inverse(g: &GroupTable, x: usize) -> usize {
    (0..g.order()).find(|&y| g.mul(x, y) == g.identity()).unwrap()
}

/// Every subgroup as a bitmask, found by testing each subset that contains
/// the identity and has order dividing `|G|`.
pub fn oracle_subgroups(g: &GroupTable) -> Vec<u32> {
    let n = g.order();
    assert!(n <= 16, "subset oracle only for order <= 16");
    let e = g.identity();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if mask & (1 << e) == 0 || !n.is_multiple_of(size) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&x| mask & (1 << x) != 0).collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| mask & (1 << g.mul(a, b)) != 0));
        if closed {
            out.push(mask);
        }
    }
    out
}

fn oracle_normal(g: &GroupTable, inner: u32, outer: u32) -> bool {
    let n = g.order();
    (0..n).filter(|&k| outer & (1 << k) != 0).all(|k| {
        let ki = inverse(g, k);
        (0..n)
            .filter(|&h| inner & (1 << h) != 0)
            .all(|h| inner & (1 << g.mul(g.mul(k, h), ki)) != 0)
    })
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).all(|d| !n.is_multiple_of(d))
}

/// All chains `1 = G_0 < ... < G_m = G` with prime indices and each term
/// normal in the next, as sorted element lists.
pub fn oracle_series(g: &GroupTable) -> BTreeSet<Vec<Vec<usize>>> {
    let subs = oracle_subgroups(g);
    let full = (1u32 << g.order()) - 1;
    let mut out = BTreeSet::new();
    let mut chain = vec![1u32 << g.identity()];
    extend_tower(g, &subs, full, &mut chain, &mut out);
    out
}

fn extend_tower(g: &GroupTable, subs: &[u32], full: u32, chain: &mut Vec<u32>, out: &mut BTreeSet<Vec<Vec<usize>>>) {
    let top = *chain.last().unwrap();
    if top == full {
        let key = chain
            .iter()
            .map(|&m| (0..g.order()).filter(|&x| m & (1 << x) != 0).collect())
            .collect();
        out.insert(key);
        return;
    }
    for &k in subs {
        if k & top == top && k != top {
            let index = (k.count_ones() / top.count_ones()) as usize;
            if is_prime(index) && oracle_normal(g, top, k) {
                chain.push(k);
                extend_tower(g, subs, full, chain, out);
                chain.pop();
            }
        }
    }
}

/// Whether some isomorphism carries every level of `a` onto the matching
/// level of `b`, by backtracking over element images in id order.
pub fn oracle_series_iso(a: &CompositionSeries, b: &CompositionSeries) -> bool {
    let (g, h) = (a.group(), b.group());
    if g.order() != h.order() || a.length() != b.length() {
        return false;
    }
    let n = g.order();
    let member = |s: &CompositionSeries, x: usize| -> Vec<bool> { s.chain().iter().map(|l| l.contains(x)).collect() };
    let ga: Vec<Vec<bool>> = (0..n).map(|x| member(a, x)).collect();
    let hb: Vec<Vec<bool>> = (0..n).map(|y| member(b, y)).collect();
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    assign(g, h, &ga, &hb, 0, &mut f, &mut used)
}

fn assign(
    g: &GroupTable,
    h: &GroupTable,
    ga: &[Vec<bool>],
    hb: &[Vec<bool>],
    x: usize,
    f: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = g.order();
    if x == n {
        return true;
    }
    for y in 0..n {
        if used[y] || ga[x] != hb[y] {
            continue;
        }
        f[x] = y;
        let consistent = (0..=x).all(|a| {
            (0..=x).all(|b| {
                let c = g.mul(a, b);
                c > x || h.mul(f[a], f[b]) == f[c]
            })
        });
        if consistent {
            used[y] = true;
            if assign(g, h, ga, hb, x + 1, f, used) {
                return true;
            }
            used[y] = false;
        }
    }
    f[x] = usize::MAX;
    false
}

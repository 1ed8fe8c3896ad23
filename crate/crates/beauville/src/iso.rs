//! Isomorphism testing between materialized groups.
//!
//! Cheap invariant screens first (order, element-order histogram, class-size
//! histogram, abelianization), then a generator-image search for a single
//! bijective homomorphism, reusing the word-tree extension from the
//! automorphism machinery.

use crate::group::{Elem, GroupTable, WordTree};

fn order_histogram(g: &GroupTable) -> Vec<(u16, usize)> {
    let mut counts: std::collections::BTreeMap<u16, usize> = std::collections::BTreeMap::new();
    for x in g.elements() {
        *counts.entry(g.element_order(x)).or_default() += 1;
    }
    counts.into_iter().collect()
}

fn class_size_histogram(g: &GroupTable) -> Vec<(u16, usize)> {
    let mut counts: std::collections::BTreeMap<u16, usize> = std::collections::BTreeMap::new();
    for c in 0..g.class_count() {
        *counts.entry(g.class_size(g.class_reps()[c])).or_default() += 1;
    }
    counts.into_iter().collect()
}

/// Fingerprint of an element that any isomorphism preserves.
fn elem_key(g: &GroupTable, x: Elem) -> (u16, u16, u16) {
    (
        g.element_order(x),
        g.class_size(x),
        g.class_size(g.mul(x, x)),
    )
}

/// True iff the two groups are isomorphic.
pub fn is_isomorphic(a: &GroupTable, b: &GroupTable) -> bool {
    if a.order() != b.order() {
        return false;
    }
    if a.order() == 1 {
        return true;
    }
    if order_histogram(a) != order_histogram(b)
        || class_size_histogram(a) != class_size_histogram(b)
        || a.abelianization() != b.abelianization()
    {
        return false;
    }

    let gens = a.greedy_generators();
    let tree = WordTree::build(a, &gens);
    let sub_sizes: Vec<usize> = (1..=gens.len())
        .map(|d| a.subgroup_closure(&gens[..d]).count())
        .collect();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&gen| {
            let key = elem_key(a, gen);
            b.elements().filter(|&x| elem_key(b, x) == key).collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return false;
    }

    fn recurse(
        a: &GroupTable,
        b: &GroupTable,
        gens: &[Elem],
        tree: &WordTree,
        candidates: &[Vec<Elem>],
        sub_sizes: &[usize],
        chosen: &mut Vec<Elem>,
    ) -> bool {
        let depth = chosen.len();
        if depth > 0 {
            match b.subgroup_closure_capped(chosen, sub_sizes[depth - 1]) {
                Some(sub) if sub.count() == sub_sizes[depth - 1] => {}
                _ => return false,
            }
        }
        if depth == gens.len() {
            return extend_iso(a, b, gens, tree, chosen);
        }
        for &cand in &candidates[depth] {
            chosen.push(cand);
            if recurse(a, b, gens, tree, candidates, sub_sizes, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    recurse(a, b, &gens, &tree, &candidates, &sub_sizes, &mut Vec::new())
}

/// Word-tree extension of generator images into `b`, with the complete
/// bijectivity + per-generator multiplicativity verification.
fn extend_iso(a: &GroupTable, b: &GroupTable, gens: &[Elem], tree: &WordTree, images: &[Elem]) -> bool {
    let n = a.order();
    let mut map = vec![0 as Elem; n];
    let mut hit = vec![false; n];
    map[a.identity() as usize] = b.identity();
    hit[b.identity() as usize] = true;
    for &x in tree.bfs_order.iter().skip(1) {
        let (p, gi) = tree.parent[x as usize];
        let y = b.mul(map[p as usize], images[gi as usize]);
        if std::mem::replace(&mut hit[y as usize], true) {
            return false;
        }
        map[x as usize] = y;
    }
    (0..n).all(|x| {
        (0..gens.len()).all(|gi| {
            map[a.mul(x as Elem, gens[gi]) as usize] == b.mul(map[x], images[gi])
        })
    })
}

//! Automorphism groups via generator-image backtracking.
//!
//! A candidate automorphism is a choice of images for a small generating set.
//! Candidates are pruned by cheap invariants (element order, conjugacy class
//! size, class size of the square, generated-subgroup size), then extended
//! over the whole group along a BFS word tree. An extension that is bijective
//! and multiplicative against every generator is multiplicative on all pairs
//! (induction on word length), so that check is complete, not a heuristic.
//!
//! The two order-256 groups are the stress case: |Aut| is 12288 and 86016,
//! and the search over image triples has to stay in the tens of milliseconds
//! per candidate batch. First-generator candidates are partitioned across
//! worker threads and the results merged in sorted order, so the output is
//! deterministic regardless of parallelism.

use rayon::prelude::*;

use crate::group::{Elem, GroupTable, WordTree};

/// A homomorphism between groups stored as the full image table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Homomorphism {
    image: Vec<Elem>,
}

impl Homomorphism {
    /// Validates multiplicativity on all pairs and the identity.
    pub fn new(src: &GroupTable, dst: &GroupTable, image: Vec<Elem>) -> Option<Self> {
        if image.len() != src.order() {
            return None;
        }
        if image[src.identity() as usize] != dst.identity() {
            return None;
        }
        for x in src.elements() {
            for y in src.elements() {
                if image[src.mul(x, y) as usize] != dst.mul(image[x as usize], image[y as usize]) {
                    return None;
                }
            }
        }
        Some(Homomorphism { image })
    }

    pub(crate) fn from_raw(image: Vec<Elem>) -> Self {
        Homomorphism { image }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.image[x as usize]
    }

    pub fn image(&self) -> &[Elem] {
        &self.image
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        self.image.iter().all(|&y| {
            let y = y as usize;
            y < seen.len() && !std::mem::replace(&mut seen[y], true)
        })
    }

    /// self ∘ other
    pub fn compose(&self, other: &Homomorphism) -> Homomorphism {
        Homomorphism {
            image: other.image.iter().map(|&x| self.image[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Homomorphism {
        let mut image = vec![0 as Elem; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            image[y as usize] = x as Elem;
        }
        Homomorphism { image }
    }
}

/// The full automorphism group of a [`GroupTable`], elements sorted by their
/// image tables.
pub struct AutGroup {
    elements: Vec<Homomorphism>,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Homomorphism] {
        &self.elements
    }

    pub fn identity_index(&self) -> usize {
        self.elements
            .iter()
            .position(|h| h.image.iter().enumerate().all(|(i, &y)| i == y as usize))
            .expect("automorphism group contains the identity")
    }

    /// A small generating subset, found greedily; orbit computations apply
    /// only these instead of all |Aut| maps.
    pub fn small_generating_set(&self) -> Vec<&Homomorphism> {
        if self.elements.is_empty() {
            return Vec::new();
        }
        let n = self.elements[0].image.len();
        let id: Vec<Elem> = (0..n as Elem).collect();
        let mut generated: rustc_hash::FxHashSet<Vec<Elem>> = rustc_hash::FxHashSet::default();
        let mut list: Vec<Vec<Elem>> = vec![id.clone()];
        generated.insert(id);
        let mut gens: Vec<&Homomorphism> = Vec::new();
        while generated.len() < self.elements.len() {
            let next = self
                .elements
                .iter()
                .find(|h| !generated.contains(&h.image))
                .expect("closure smaller than the group implies a missing element");
            gens.push(next);
            // re-close under the enlarged generator list
            let mut head = 0;
            while head < list.len() {
                let base = list[head].clone();
                head += 1;
                for g in &gens {
                    let prod: Vec<Elem> = base.iter().map(|&x| g.image[x as usize]).collect();
                    if generated.insert(prod.clone()) {
                        list.push(prod);
                    }
                }
            }
        }
        gens
    }
}

/// Aut-invariant fingerprint used to restrict candidate images.
fn invariant_key(g: &GroupTable, x: Elem) -> (u16, u16, u16) {
    let sq = g.mul(x, x);
    (g.element_order(x), g.class_size(x), g.class_size(sq))
}

/// Extends generator images over the whole group along the word tree; returns
/// the full image table if it is bijective and multiplicative against every
/// generator (which makes it an automorphism), `None` otherwise.
fn extend_and_check(
    g: &GroupTable,
    gens: &[Elem],
    tree: &WordTree,
    images: &[Elem],
) -> Option<Vec<Elem>> {
    let n = g.order();
    let mut map = vec![0 as Elem; n];
    let mut hit = vec![false; n];
    map[g.identity() as usize] = g.identity();
    hit[g.identity() as usize] = true;
    for &x in tree.bfs_order.iter().skip(1) {
        let (p, gi) = tree.parent[x as usize];
        let y = g.mul(map[p as usize], images[gi as usize]);
        if std::mem::replace(&mut hit[y as usize], true) {
            return None; // collision: not injective
        }
        map[x as usize] = y;
    }
    for x in 0..n {
        let fx = map[x];
        for (gi, &gen) in gens.iter().enumerate() {
            if map[g.mul(x as Elem, gen) as usize] != g.mul(fx, images[gi]) {
                return None;
            }
        }
    }
    Some(map)
}

fn search_from_first(
    g: &GroupTable,
    gens: &[Elem],
    tree: &WordTree,
    candidates: &[Vec<Elem>],
    sub_sizes: &[usize],
    first: Elem,
) -> Vec<Vec<Elem>> {
    let k = gens.len();
    let mut out = Vec::new();
    let mut chosen = vec![first];
    fn recurse(
        g: &GroupTable,
        gens: &[Elem],
        tree: &WordTree,
        candidates: &[Vec<Elem>],
        sub_sizes: &[usize],
        chosen: &mut Vec<Elem>,
        k: usize,
        out: &mut Vec<Vec<Elem>>,
    ) {
        let depth = chosen.len();
        // image tuple must generate a subgroup of the right size so far
        match g.subgroup_closure_capped(chosen, sub_sizes[depth - 1]) {
            Some(sub) if sub.count() == sub_sizes[depth - 1] => {}
            _ => return,
        }
        if depth == k {
            if let Some(map) = extend_and_check(g, gens, tree, chosen) {
                out.push(map);
            }
            return;
        }
        for &cand in &candidates[depth] {
            chosen.push(cand);
            recurse(g, gens, tree, candidates, sub_sizes, chosen, k, out);
            chosen.pop();
        }
    }
    recurse(g, gens, tree, candidates, sub_sizes, &mut chosen, k, &mut out);
    out
}

/// Computes the full automorphism group.
pub fn automorphisms(g: &GroupTable) -> AutGroup {
    if g.order() == 1 {
        return AutGroup {
            elements: vec![Homomorphism::from_raw(vec![g.identity()])],
        };
    }
    let gens = g.greedy_generators();
    let tree = WordTree::build(g, &gens);
    let k = gens.len();
    let sub_sizes: Vec<usize> = (1..=k)
        .map(|d| g.subgroup_closure(&gens[..d]).count())
        .collect();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&gen| {
            let key = invariant_key(g, gen);
            g.elements().filter(|&x| invariant_key(g, x) == key).collect()
        })
        .collect();

    let mut images: Vec<Vec<Elem>> = candidates[0]
        .par_iter()
        .flat_map(|&first| search_from_first(g, &gens, &tree, &candidates, &sub_sizes, first))
        .collect();
    images.sort_unstable();
    AutGroup {
        elements: images.into_iter().map(Homomorphism::from_raw).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, from_permutations, DEFAULT_ORDER_BOUND};
    use crate::perm::Perm;

    #[test]
    fn elementary_abelian_aut_is_general_linear() {
        let z2 = cyclic(2, 64).unwrap();
        let z2sq = direct_product(&z2, &z2, 64).unwrap();
        let z2cube = direct_product(&z2sq, &z2, 64).unwrap();
        // |GL(3,2)| = (8−1)(8−2)(8−4) = 168
        assert_eq!(automorphisms(&z2cube).order(), 168);
    }

    #[test]
    fn cyclic_aut_orders() {
        assert_eq!(automorphisms(&cyclic(8, 64).unwrap()).order(), 4);
        assert_eq!(automorphisms(&cyclic(12, 64).unwrap()).order(), 4);
        assert_eq!(automorphisms(&cyclic(1, 64).unwrap()).order(), 1);
    }

    #[test]
    fn alternating_group_aut_has_order_120() {
        let a5 = from_permutations(
            "A5",
            5,
            &[
                Perm::parse("(1,2,3,4,5)", 5).unwrap(),
                Perm::parse("(1,2,3)", 5).unwrap(),
            ],
            DEFAULT_ORDER_BOUND,
        )
        .unwrap();
        let aut = automorphisms(&a5);
        assert_eq!(aut.order(), 120);
        // every map is a verified bijective homomorphism
        for h in aut.elements().iter().step_by(17) {
            assert!(h.is_bijective());
            assert!(Homomorphism::new(&a5, &a5, h.image().to_vec()).is_some());
        }
    }

    #[test]
    fn aut_group_is_closed_under_composition_and_inverse() {
        let z5 = cyclic(5, 64).unwrap();
        let z5sq = direct_product(&z5, &z5, 64).unwrap();
        let aut = automorphisms(&z5sq);
        // |GL(2,5)| = (25−1)(25−5) = 480
        assert_eq!(aut.order(), 480);
        let set: std::collections::HashSet<Vec<Elem>> = aut
            .elements()
            .iter()
            .map(|h| h.image().to_vec())
            .collect();
        for a in aut.elements().iter().step_by(37) {
            assert!(set.contains(a.inverse().image()));
            for b in aut.elements().iter().step_by(41) {
                assert!(set.contains(a.compose(b).image()));
            }
        }
        let gens = aut.small_generating_set();
        assert!(gens.len() <= 10);
    }
}

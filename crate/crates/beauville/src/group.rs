//! Finite groups as materialized multiplication tables.
//!
//! Every group in scope has order at most a few hundred, so elements are
//! dense indices `0…n−1` into an `n × n` table: multiplication is one array
//! lookup, which is what the structure searches hammer on. Element orders,
//! inverses and conjugacy classes are precomputed at construction; the
//! conjugation-closed cyclic-subgroup masks used by Σ-set computations are
//! built lazily on first use.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitset::Bitset;
use crate::perm::Perm;

/// Default cap on group orders; constructors refuse beyond it.
pub const DEFAULT_ORDER_BOUND: usize = 2048;

/// Element index into a [`GroupTable`].
pub type Elem = u16;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("group order {0} exceeds the configured bound {1}")]
    BoundExceeded(usize, usize),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
}

/// A finite group stored as an explicit multiplication table.
#[derive(Debug)]
pub struct GroupTable {
    order: usize,
    mul: Vec<Elem>, // row-major n×n: mul[a*n + b] = a·b
    identity: Elem,
    inv: Vec<Elem>,
    elem_order: Vec<u16>,
    conj_class: Vec<u16>,
    class_sizes: Vec<u16>,
    class_reps: Vec<Elem>, // lowest-index member per class
    label: String,
    generator_set: Vec<Elem>,
    class_cyclic_masks: OnceLock<Vec<Bitset>>,
}

impl GroupTable {
    /// Validates a raw table and derives the element metadata.
    ///
    /// `trusted_associative` marks tables coming from constructors that are
    /// associative by design (permutation composition, products, verified
    /// metabelian data); those still get the sampled defense-in-depth check,
    /// while untrusted tables of order ≤ 64 are checked exhaustively.
    pub fn from_mul_table(
        label: impl Into<String>,
        order: usize,
        mul: Vec<Elem>,
        generator_set: Vec<Elem>,
        trusted_associative: bool,
        bound: usize,
    ) -> Result<Self, GroupError> {
        let label = label.into();
        if order == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        if order > bound {
            return Err(GroupError::BoundExceeded(order, bound));
        }
        if mul.len() != order * order {
            return Err(GroupError::NotAGroup(format!(
                "table has {} entries, expected {}",
                mul.len(),
                order * order
            )));
        }
        if let Some(&bad) = mul.iter().find(|&&x| (x as usize) >= order) {
            return Err(GroupError::NotAGroup(format!(
                "entry {bad} out of range 0..{order}"
            )));
        }
        let at = |a: usize, b: usize| mul[a * order + b] as usize;

        // Two-sided identity.
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| GroupError::NotAGroup("no two-sided identity".into()))?;

        // Latin-square property. Given a two-sided identity and two-sided
        // inverses, associativity forces cancellation, so a non-Latin table
        // cannot pass the axioms; rejecting here just fails fast.
        for a in 0..order {
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for b in 0..order {
                if std::mem::replace(&mut row[at(a, b)], true) {
                    return Err(GroupError::NotAGroup(format!(
                        "row {a} is not a permutation (cancellation fails)"
                    )));
                }
                if std::mem::replace(&mut col[at(b, a)], true) {
                    return Err(GroupError::NotAGroup(format!(
                        "column {a} is not a permutation (cancellation fails)"
                    )));
                }
            }
        }

        // Unique two-sided inverses.
        let mut inv = vec![0 as Elem; order];
        for x in 0..order {
            let candidates: Vec<usize> = (0..order)
                .filter(|&y| at(x, y) == identity && at(y, x) == identity)
                .collect();
            match candidates.as_slice() {
                [y] => inv[x] = *y as Elem,
                _ => {
                    return Err(GroupError::NotAGroup(format!(
                        "element {x} has {} two-sided inverses",
                        candidates.len()
                    )))
                }
            }
        }

        // Associativity: exhaustive for small untrusted tables, sampled
        // (≥ 10·n² triples, fixed seed) beyond that.
        if order <= 64 && !trusted_associative {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(GroupError::NotAGroup(format!(
                                "associativity fails on ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..10 * order * order {
                let (a, b, c) = (
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                );
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return Err(GroupError::NotAGroup(format!(
                        "associativity fails on ({a},{b},{c})"
                    )));
                }
            }
        }

        // Element orders.
        let mut elem_order = vec![0u16; order];
        for x in 0..order {
            let mut p = x;
            let mut k = 1u16;
            while p != identity {
                p = at(p, x);
                k += 1;
            }
            elem_order[x] = k;
        }

        // Conjugacy classes, ids assigned in order of lowest member.
        let mut conj_class = vec![u16::MAX; order];
        let mut class_sizes = Vec::new();
        let mut class_reps = Vec::new();
        for x in 0..order {
            if conj_class[x] != u16::MAX {
                continue;
            }
            let id = class_reps.len() as u16;
            class_reps.push(x as Elem);
            let mut size = 0u16;
            for g in 0..order {
                let y = at(at(g, x), inv[g] as usize);
                if conj_class[y] == u16::MAX {
                    conj_class[y] = id;
                    size += 1;
                }
            }
            class_sizes.push(size);
        }

        Ok(GroupTable {
            order,
            mul,
            identity: identity as Elem,
            inv,
            elem_order,
            conj_class,
            class_sizes,
            class_reps,
            label,
            generator_set,
            class_cyclic_masks: OnceLock::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn generator_set(&self) -> &[Elem] {
        &self.generator_set
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inv[x as usize]
    }

    /// g·x·g⁻¹
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, x: Elem, k: usize) -> Elem {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Order of the element: least k ≥ 1 with x^k = identity.
    #[inline]
    pub fn element_order(&self, x: Elem) -> u16 {
        self.elem_order[x as usize]
    }

    pub fn class_of(&self, x: Elem) -> u16 {
        self.conj_class[x as usize]
    }

    pub fn class_size(&self, x: Elem) -> u16 {
        self.class_sizes[self.conj_class[x as usize] as usize]
    }

    pub fn class_count(&self) -> usize {
        self.class_reps.len()
    }

    /// Lowest-index representatives, one per conjugacy class.
    pub fn class_reps(&self) -> &[Elem] {
        &self.class_reps
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order as Elem).map(|x| x)
    }

    pub fn elements_of_order(&self, m: u16) -> Vec<Elem> {
        self.elements().filter(|&x| self.elem_order[x as usize] == m).collect()
    }

    /// ⋃_{y conjugate to the class rep} ⟨y⟩, as a bitset, per class. This is
    /// the per-entry building block of Σ-sets: Σ(T) is the union of the masks
    /// of the entries' classes.
    pub fn class_cyclic_mask(&self, class_id: u16) -> &Bitset {
        let masks = self.class_cyclic_masks.get_or_init(|| {
            let mut masks = vec![Bitset::new(self.order); self.class_reps.len()];
            for x in 0..self.order {
                let c = self.conj_class[x] as usize;
                let mut p = x as Elem;
                loop {
                    masks[c].insert(p as usize);
                    if p == self.identity {
                        break;
                    }
                    p = self.mul(p, x as Elem);
                }
            }
            masks
        });
        &masks[class_id as usize]
    }

    /// Subgroup generated by `gens`: closure of the identity under right
    /// multiplication by the generators.
    pub fn subgroup_closure(&self, gens: &[Elem]) -> Bitset {
        let mut seen = Bitset::new(self.order);
        seen.insert(self.identity as usize);
        let mut work = vec![self.identity];
        while let Some(x) = work.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen.contains(y as usize) {
                    seen.insert(y as usize);
                    work.push(y);
                }
            }
        }
        seen
    }

    /// Like [`subgroup_closure`](Self::subgroup_closure) but aborts with
    /// `None` once the closure exceeds `cap` elements.
    pub fn subgroup_closure_capped(&self, gens: &[Elem], cap: usize) -> Option<Bitset> {
        let mut seen = Bitset::new(self.order);
        seen.insert(self.identity as usize);
        let mut count = 1usize;
        let mut work = vec![self.identity];
        while let Some(x) = work.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen.contains(y as usize) {
                    seen.insert(y as usize);
                    count += 1;
                    if count > cap {
                        return None;
                    }
                    work.push(y);
                }
            }
        }
        Some(seen)
    }

    /// Greedy small generating set: repeatedly adds the element that enlarges
    /// the generated subgroup the most, ties broken by lowest index. The
    /// result is deterministic and small (≤ 3 generators for every bundled
    /// group), which bounds the automorphism image search.
    pub fn greedy_generators(&self) -> Vec<Elem> {
        let mut gens: Vec<Elem> = Vec::new();
        let mut sub = Bitset::new(self.order);
        sub.insert(self.identity as usize);
        let mut size = 1;
        while size < self.order {
            let mut best: Option<(usize, Elem)> = None;
            let mut trial = gens.clone();
            for x in 0..self.order as Elem {
                if sub.contains(x as usize) {
                    continue;
                }
                trial.push(x);
                let s = self.subgroup_closure(&trial).count();
                trial.pop();
                if best.map_or(true, |(bs, _)| s > bs) {
                    best = Some((s, x));
                }
            }
            let (s, x) = best.expect("proper subgroup has an outside element");
            gens.push(x);
            sub = self.subgroup_closure(&gens);
            size = s;
        }
        gens
    }

    /// The commutator subgroup G′, as a sorted element set.
    pub fn commutator_subgroup(&self) -> Bitset {
        let mut comms = Bitset::new(self.order);
        for a in 0..self.order as Elem {
            for b in 0..self.order as Elem {
                let c = self.mul(
                    self.mul(self.inv(a), self.inv(b)),
                    self.mul(a, b),
                );
                comms.insert(c as usize);
            }
        }
        let gens = comms.to_vec();
        self.subgroup_closure(&gens)
    }

    pub fn is_perfect(&self) -> bool {
        self.order > 1 && self.commutator_subgroup().count() == self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as Elem)
            .all(|a| (0..self.order as Elem).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Quotient by a normal subgroup, elements being cosets labeled in order
    /// of their lowest member. Callers guarantee normality.
    pub(crate) fn quotient_by_normal(&self, nsub: &Bitset) -> GroupTable {
        let members = nsub.to_vec();
        debug_assert!(members.iter().all(|&h| {
            (0..self.order as Elem).all(|g| nsub.contains(self.conj(g, h) as usize))
        }));
        let mut coset_of = vec![u16::MAX; self.order];
        let mut reps: Vec<Elem> = Vec::new();
        for x in 0..self.order as Elem {
            if coset_of[x as usize] != u16::MAX {
                continue;
            }
            let id = reps.len() as u16;
            reps.push(x);
            for &h in &members {
                coset_of[self.mul(x, h) as usize] = id;
            }
        }
        let m = reps.len();
        let mut mul = vec![0 as Elem; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i * m + j] = coset_of[self.mul(a, b) as usize] as Elem;
            }
        }
        GroupTable::from_mul_table(
            format!("{}/N", self.label),
            m,
            mul,
            Vec::new(),
            true,
            self.order.max(DEFAULT_ORDER_BOUND),
        )
        .expect("quotient of a group by a normal subgroup is a group")
    }

    /// Invariant factors d₁ | d₂ | … of the abelianization G/G′, in
    /// divisibility order. Trivial and perfect groups both give the empty
    /// list; [`is_perfect`](Self::is_perfect) separates them.
    pub fn abelianization(&self) -> Vec<u64> {
        let derived = self.commutator_subgroup();
        if derived.count() == self.order {
            return Vec::new();
        }
        let q = self.quotient_by_normal(&derived);
        abelian_invariants(&q)
    }

    /// All subgroups of index 2, as kernels of the nontrivial homomorphisms
    /// G → Z₂. A sign assignment on a generating set either extends
    /// consistently over the whole table or is discarded.
    pub fn index_two_subgroups(&self) -> Vec<Bitset> {
        let gens = self.greedy_generators();
        let k = gens.len();
        let tree = WordTree::build(self, &gens);
        debug_assert_eq!(tree.bfs_order.len(), self.order);
        let mut out: Vec<Bitset> = Vec::new();
        for assign in 1u32..(1 << k) {
            let mut sign = vec![0u8; self.order];
            for &x in tree.bfs_order.iter().skip(1) {
                let (p, gi) = tree.parent[x as usize];
                sign[x as usize] = sign[p as usize] ^ ((assign >> gi) & 1) as u8;
            }
            // sign extends to a homomorphism iff it is multiplicative against
            // every generator; multiplicativity on all pairs follows by
            // induction on word length.
            let consistent = (0..self.order).all(|x| {
                (0..k).all(|gi| {
                    sign[self.mul(x as Elem, gens[gi]) as usize]
                        == sign[x] ^ ((assign >> gi) & 1) as u8
                })
            });
            if !consistent {
                continue;
            }
            let mut ker = Bitset::new(self.order);
            for x in 0..self.order {
                if sign[x] == 0 {
                    ker.insert(x);
                }
            }
            if ker.count() * 2 == self.order {
                out.push(ker);
            }
        }
        out.sort_by(|a, b| a.to_vec().cmp(&b.to_vec()));
        out.dedup();
        out
    }
}

/// BFS spanning tree of a group over a generating set: each non-identity
/// element is reached as `parent · gens[gen_idx]`. Lets maps defined on the
/// generators be extended over the whole group in one pass.
pub(crate) struct WordTree {
    pub bfs_order: Vec<Elem>,
    pub parent: Vec<(Elem, u8)>, // (parent element, generator index)
}

impl WordTree {
    pub fn build(g: &GroupTable, gens: &[Elem]) -> WordTree {
        let n = g.order();
        let mut parent = vec![(0 as Elem, 0u8); n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        seen[g.identity() as usize] = true;
        order.push(g.identity());
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for (gi, &gen) in gens.iter().enumerate() {
                let y = g.mul(x, gen);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    parent[y as usize] = (x, gi as u8);
                    order.push(y);
                }
            }
        }
        WordTree {
            bfs_order: order,
            parent,
        }
    }
}

/// Invariant factors of a group already known to be abelian, via the order
/// statistics of each primary part: counting solutions of x^(p^k) = 1 gives
/// the conjugate of the type partition.
fn abelian_invariants(g: &GroupTable) -> Vec<u64> {
    let n = g.order() as u64;
    if n == 1 {
        return Vec::new();
    }
    debug_assert!(g.is_abelian());
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            primes.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        primes.push(m);
    }

    // per prime: partition λ₁ ≥ λ₂ ≥ … with ∏ p^λᵢ = p-part of n
    let mut per_prime: Vec<Vec<u32>> = Vec::new();
    for &p in &primes {
        let mut c_prev = 0u32;
        let mut mu = Vec::new();
        let mut pk = 1u64;
        loop {
            pk *= p;
            // x^(p^k) = 1 ⟺ ord(x) | p^k
            let count = g
                .elements()
                .filter(|&x| pk % u64::from(g.element_order(x)) == 0)
                .count() as u64;
            let mut c = 0u32;
            let mut t = count;
            while t % p == 0 {
                t /= p;
                c += 1;
            }
            debug_assert_eq!(t, 1, "solution count of x^p^k=1 is a p-power");
            if c == c_prev {
                break;
            }
            mu.push(c - c_prev);
            c_prev = c;
        }
        // λ = conjugate partition of μ
        let lam_len = mu[0] as usize;
        let mut lam = vec![0u32; lam_len];
        for &m_k in &mu {
            for lam_i in lam.iter_mut().take(m_k as usize) {
                *lam_i += 1;
            }
        }
        per_prime.push(lam);
    }

    let rank = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors = Vec::new();
    for i in 0..rank {
        let mut d = 1u64;
        for (lam, &p) in per_prime.iter().zip(&primes) {
            if i < lam.len() {
                d *= p.pow(lam[i]);
            }
        }
        factors.push(d);
    }
    factors.reverse(); // divisibility order d₁ | d₂ | …
    factors
}

/// A permutation group materialized as a table, keeping the permutation
/// realizing each element index (index 0 is the identity).
pub struct PermGroup {
    pub table: GroupTable,
    pub elements: Vec<Perm>,
}

/// Closes a generator list under composition and builds the table.
pub fn permutation_group(
    label: impl Into<String>,
    degree: usize,
    gens: &[Perm],
    bound: usize,
) -> Result<PermGroup, GroupError> {
    for g in gens {
        if g.degree() != degree {
            return Err(GroupError::InvalidConstruction(format!(
                "generator degree {} does not match {}",
                g.degree(),
                degree
            )));
        }
    }
    let mut elements = vec![Perm::identity(degree)];
    let mut index: rustc_hash::FxHashMap<Perm, Elem> = rustc_hash::FxHashMap::default();
    index.insert(elements[0].clone(), 0);
    let mut head = 0;
    while head < elements.len() {
        let cur = elements[head].clone();
        head += 1;
        for g in gens {
            let next = cur.compose(g);
            if !index.contains_key(&next) {
                if elements.len() >= bound {
                    return Err(GroupError::BoundExceeded(elements.len() + 1, bound));
                }
                index.insert(next.clone(), elements.len() as Elem);
                elements.push(next);
            }
        }
    }
    let n = elements.len();
    let mut mul = vec![0 as Elem; n * n];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            mul[i * n + j] = index[&a.compose(b)];
        }
    }
    let gen_idx: Vec<Elem> = gens.iter().filter_map(|g| index.get(g).copied()).collect();
    let table = GroupTable::from_mul_table(label, n, mul, gen_idx, true, bound)?;
    Ok(PermGroup { table, elements })
}

/// The group generated by permutations of `{1,…,degree}`.
pub fn from_permutations(
    label: impl Into<String>,
    degree: usize,
    gens: &[Perm],
    bound: usize,
) -> Result<GroupTable, GroupError> {
    permutation_group(label, degree, gens, bound).map(|pg| pg.table)
}

/// Direct product with index layout `(a, b) ↦ a·|B| + b`.
pub fn direct_product(a: &GroupTable, b: &GroupTable, bound: usize) -> Result<GroupTable, GroupError> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    if n > bound {
        return Err(GroupError::BoundExceeded(n, bound));
    }
    let mut mul = vec![0 as Elem; n * n];
    for xa in 0..na {
        for xb in 0..nb {
            let x = xa * nb + xb;
            for ya in 0..na {
                for yb in 0..nb {
                    let y = ya * nb + yb;
                    let za = a.mul(xa as Elem, ya as Elem) as usize;
                    let zb = b.mul(xb as Elem, yb as Elem) as usize;
                    mul[x * n + y] = (za * nb + zb) as Elem;
                }
            }
        }
    }
    GroupTable::from_mul_table(
        format!("{}x{}", a.label(), b.label()),
        n,
        mul,
        Vec::new(),
        true,
        bound,
    )
}

/// The cyclic group Z_n with x·y = x+y mod n.
pub fn cyclic(n: usize, bound: usize) -> Result<GroupTable, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidConstruction("cyclic group of order 0".into()));
    }
    if n > bound {
        return Err(GroupError::BoundExceeded(n, bound));
    }
    let mut mul = vec![0 as Elem; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = ((a + b) % n) as Elem;
        }
    }
    GroupTable::from_mul_table(format!("Z{n}"), n, mul, vec![1.min(n - 1) as Elem], true, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn a5() -> GroupTable {
        from_permutations(
            "A5",
            5,
            &[
                Perm::parse("(1,2,3,4,5)", 5).unwrap(),
                Perm::parse("(1,2,3)", 5).unwrap(),
            ],
            DEFAULT_ORDER_BOUND,
        )
        .unwrap()
    }

    #[test]
    fn closure_of_alternating_generators_has_order_60() {
        let g = a5();
        assert_eq!(g.order(), 60);
        assert_eq!(g.identity(), 0);
        // a 5-cycle has order 5
        let five_cycles = g.elements_of_order(5);
        assert_eq!(five_cycles.len(), 24);
    }

    #[test]
    fn symmetric_generators_close_to_order_24() {
        let g = from_permutations(
            "S4",
            4,
            &[
                Perm::parse("(1,2)", 4).unwrap(),
                Perm::parse("(1,2,3,4)", 4).unwrap(),
            ],
            DEFAULT_ORDER_BOUND,
        )
        .unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.commutator_subgroup().count(), 12);
    }

    #[test]
    fn empty_generator_list_gives_trivial_group() {
        let g = from_permutations("triv", 1, &[], DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.abelianization().is_empty());
        assert!(!g.is_perfect());
    }

    #[test]
    fn closure_bound_is_enforced() {
        let err = from_permutations(
            "A5",
            5,
            &[
                Perm::parse("(1,2,3,4,5)", 5).unwrap(),
                Perm::parse("(1,2,3)", 5).unwrap(),
            ],
            30,
        )
        .unwrap_err();
        assert!(matches!(err, GroupError::BoundExceeded(_, _)));
    }

    #[test]
    fn basic_identities_hold() {
        let g = a5();
        for x in g.elements() {
            assert_eq!(g.mul(x, g.inv(x)), g.identity());
            assert_eq!(g.element_order(x), g.element_order(g.conj(7, x)));
        }
        assert_eq!(g.element_order(g.identity()), 1);
    }

    #[test]
    fn alternating_group_is_perfect() {
        let g = a5();
        assert!(g.is_perfect());
        assert!(g.abelianization().is_empty());
        assert_eq!(g.commutator_subgroup().count(), 60);
    }

    #[test]
    fn abelian_invariants_of_small_products() {
        let z5 = cyclic(5, 64).unwrap();
        let z25 = direct_product(&z5, &z5, 64).unwrap();
        assert_eq!(z25.abelianization(), vec![5, 5]);

        let z2 = cyclic(2, 64).unwrap();
        let z4 = cyclic(4, 64).unwrap();
        let z2xz4 = direct_product(&z2, &z4, 64).unwrap();
        assert_eq!(z2xz4.abelianization(), vec![2, 4]);

        let z12 = cyclic(12, 64).unwrap();
        assert_eq!(z12.abelianization(), vec![12]);
    }

    #[test]
    fn abelianization_product_identity() {
        // ∏ dᵢ = |G| / |G′|
        for g in [
            a5(),
            from_permutations(
                "S4",
                4,
                &[
                    Perm::parse("(1,2)", 4).unwrap(),
                    Perm::parse("(1,2,3,4)", 4).unwrap(),
                ],
                DEFAULT_ORDER_BOUND,
            )
            .unwrap(),
        ] {
            let derived = g.commutator_subgroup().count();
            let prod: u64 = g.abelianization().iter().product::<u64>().max(1);
            assert_eq!(prod, (g.order() / derived) as u64);
        }
    }

    #[test]
    fn index_two_subgroup_counts() {
        let z2 = cyclic(2, 64).unwrap();
        let z2sq = direct_product(&z2, &z2, 64).unwrap();
        assert_eq!(z2sq.index_two_subgroups().len(), 3);

        let z5 = cyclic(5, 64).unwrap();
        let z5sq = direct_product(&z5, &z5, 64).unwrap();
        assert_eq!(z5sq.index_two_subgroups().len(), 0);

        let s4 = from_permutations(
            "S4",
            4,
            &[
                Perm::parse("(1,2)", 4).unwrap(),
                Perm::parse("(1,2,3,4)", 4).unwrap(),
            ],
            DEFAULT_ORDER_BOUND,
        )
        .unwrap();
        let subs = s4.index_two_subgroups();
        assert_eq!(subs.len(), 1);
        for s in &subs {
            assert_eq!(s.count() * 2, s4.order());
            // closure and normality
            let elems = s.to_vec();
            for &a in &elems {
                for &b in &elems {
                    assert!(s.contains(s4.mul(a, b) as usize));
                }
                for g in s4.elements() {
                    assert!(s.contains(s4.conj(g, a) as usize));
                }
            }
        }
    }

    #[test]
    fn greedy_generators_generate() {
        for g in [a5(), cyclic(12, 64).unwrap()] {
            let gens = g.greedy_generators();
            assert_eq!(g.subgroup_closure(&gens).count(), g.order());
            assert!(gens.len() <= 3);
        }
    }

    #[test]
    fn malformed_tables_are_rejected() {
        // constant row: not Latin
        let err = GroupTable::from_mul_table("bad", 2, vec![0, 0, 0, 0], vec![], false, 64);
        assert!(matches!(err, Err(GroupError::NotAGroup(_))));
        // Latin square without identity row placement still fine: Z2 swapped labels
        let ok = GroupTable::from_mul_table("z2", 2, vec![1, 0, 0, 1], vec![], false, 64);
        // identity is element 1 here
        let g = ok.unwrap();
        assert_eq!(g.identity(), 1);
        // Latin square that is not associative: the "subtraction mod 3" table
        let err = GroupTable::from_mul_table(
            "sub3",
            3,
            vec![0, 2, 1, 1, 0, 2, 2, 1, 0],
            vec![],
            false,
            64,
        );
        assert!(matches!(err, Err(GroupError::NotAGroup(_))));
    }
}

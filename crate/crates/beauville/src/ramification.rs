//! Spherical generating systems, Σ-sets, and the unmixed/mixed structure
//! searches.
//!
//! Σ(T) — the union of all conjugates of the cyclic subgroups generated by
//! the entries of T — is a union of conjugacy-class-closed sets, so it only
//! depends on the classes of the entries. Each group lazily carries one
//! precomputed mask per class, and a Σ-set is the OR of the entry masks;
//! disjointness of two systems is then a word-wise AND. That test is the
//! innermost operation of every search here.
//!
//! Searches enumerate tuples by backtracking over the elements of each order
//! prescribed by the type, with the final entry forced by the product-1
//! constraint and generation tracked by incremental subgroup closure. The
//! enumerators return *raw* lists: no braid or automorphism quotienting
//! happens here (orbit counting lives in [`crate::hurwitz`]).

use num_rational::Ratio;
use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use crate::bitset::Bitset;
use crate::group::{Elem, GroupTable};
use crate::tuples::{theta, TupleType};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RamError {
    #[error("element index {0} does not belong to a group of order {1}")]
    GroupMismatch(usize, usize),
    #[error("tuple is not a spherical system: {0}")]
    NotSpherical(String),
    #[error("Hurwitz genus is not an integer ({0})")]
    NonIntegralGenus(String),
    #[error("surface invariant constraint violated: {0}")]
    GenusConstraint(String),
}

/// Σ-set of a system: a conjugation-closed element set containing the
/// identity, stored as a bitset over element indices.
pub type SigmaSet = Bitset;

/// An ordered tuple of group elements with product 1 that generates the
/// designated group; `ty` is the sorted multiset of entry orders.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SphericalSystem {
    elems: Vec<Elem>,
    ty: TupleType,
}

impl SphericalSystem {
    /// Validates product-1 and generation, and derives the type.
    pub fn new(g: &GroupTable, elems: Vec<Elem>) -> Result<Self, RamError> {
        for &x in &elems {
            if (x as usize) >= g.order() {
                return Err(RamError::GroupMismatch(x as usize, g.order()));
            }
        }
        let prod = elems.iter().fold(g.identity(), |acc, &x| g.mul(acc, x));
        if prod != g.identity() {
            return Err(RamError::NotSpherical("product is not the identity".into()));
        }
        if g.subgroup_closure(&elems).count() != g.order() {
            return Err(RamError::NotSpherical("entries do not generate".into()));
        }
        let ty = TupleType::new(elems.iter().map(|&x| g.element_order(x)).collect())
            .ok_or_else(|| RamError::NotSpherical("fewer than 3 entries".into()))?;
        Ok(SphericalSystem { elems, ty })
    }

    pub(crate) fn from_raw(g: &GroupTable, elems: Vec<Elem>) -> Self {
        let ty = TupleType::new(elems.iter().map(|&x| g.element_order(x)).collect())
            .expect("raw system has a valid type");
        SphericalSystem { elems, ty }
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn ty(&self) -> &TupleType {
        &self.ty
    }
}

/// A disjoint pair of spherical systems over one group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnmixedStructure {
    pub t1: SphericalSystem,
    pub t2: SphericalSystem,
}

/// An index-2 subgroup H (as a sorted element set of G) together with a
/// spherical system of H satisfying the two coset compatibility conditions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MixedStructure {
    pub subgroup: Vec<Elem>,
    pub t: SphericalSystem,
}

impl MixedStructure {
    pub fn subgroup_bitset(&self, order: usize) -> Bitset {
        let mut b = Bitset::new(order);
        for &x in &self.subgroup {
            b.insert(x as usize);
        }
        b
    }
}

/// Σ(T) = ⋃_{g∈G} ⋃_j ⋃_i {g·gᵢʲ·g⁻¹}.
pub fn sigma(g: &GroupTable, elems: &[Elem]) -> SigmaSet {
    let mut s = Bitset::new(g.order());
    s.insert(g.identity() as usize);
    for &x in elems {
        s.union_with(g.class_cyclic_mask(g.class_of(x)));
    }
    s
}

/// Σ(T₁) ∩ Σ(T₂) = {1}?
pub fn is_disjoint(
    g: &GroupTable,
    t1: &SphericalSystem,
    t2: &SphericalSystem,
) -> Result<bool, RamError> {
    for &x in t1.elems().iter().chain(t2.elems()) {
        if (x as usize) >= g.order() {
            return Err(RamError::GroupMismatch(x as usize, g.order()));
        }
    }
    Ok(sigma(g, t1.elems()).intersects_only(&sigma(g, t2.elems()), g.identity() as usize))
}

/// A list of equal-length element tuples in one flat buffer.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TupleList {
    pub arity: usize,
    data: Vec<Elem>,
}

impl TupleList {
    pub fn new(arity: usize) -> Self {
        TupleList {
            arity,
            data: Vec::new(),
        }
    }

    pub fn push(&mut self, tuple: &[Elem]) {
        debug_assert_eq!(tuple.len(), self.arity);
        self.data.extend_from_slice(tuple);
    }

    pub fn len(&self) -> usize {
        if self.arity == 0 {
            0
        } else {
            self.data.len() / self.arity
        }
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[Elem] {
        &self.data[i * self.arity..(i + 1) * self.arity]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Elem]> {
        self.data.chunks_exact(self.arity.max(1))
    }

    pub fn sort(&mut self) {
        let arity = self.arity;
        let mut rows: Vec<Vec<Elem>> = self.data.chunks_exact(arity).map(|c| c.to_vec()).collect();
        rows.sort_unstable();
        self.data.clear();
        for row in rows {
            self.data.extend_from_slice(&row);
        }
    }
}

/// First-entry policy for [`system_tuples`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FirstEntry {
    /// Every element of matching order: the full raw list.
    All,
    /// Lowest-index conjugacy class representatives only. A conjugate of a
    /// system is again a system of the same type and Σ-set, so existence
    /// questions lose nothing; [`expand_conjugates`] recovers the full list.
    ClassReps,
}

/// Incremental subgroup closure stack shared by the search routines: extends
/// the top subgroup ⟨…⟩ by one element and pushes the result.
fn push_extended_subgroup(g: &GroupTable, subs: &mut Vec<(Bitset, Vec<Elem>)>, x: Elem) {
    let (bits, list) = subs.last().unwrap();
    if bits.contains(x as usize) {
        let c = (bits.clone(), list.clone());
        subs.push(c);
        return;
    }
    let mut bits = bits.clone();
    let mut list = list.clone();
    let mut frontier = vec![x];
    bits.insert(x as usize);
    list.push(x);
    while let Some(y) = frontier.pop() {
        for i in 0..list.len() {
            for z in [g.mul(list[i], y), g.mul(y, list[i])] {
                if !bits.contains(z as usize) {
                    bits.insert(z as usize);
                    list.push(z);
                    frontier.push(z);
                }
            }
        }
    }
    subs.push((bits, list));
}

struct SystemSearch<'a> {
    g: &'a GroupTable,
    orders: Vec<(u16, usize)>,
    pools: Vec<Vec<Elem>>,
    r: usize,
    target_size: usize,
    tuple: Vec<Elem>,
    subs: Vec<(Bitset, Vec<Elem>)>,
    out: TupleList,
}

impl SystemSearch<'_> {
    fn recurse(&mut self, prefix: Elem, counts: &mut [usize]) {
        if self.tuple.len() == self.r - 1 {
            // last entry forced; it is a word in the prefix, so the prefix
            // subgroup is the subgroup of the whole tuple
            let last = self.g.inv(prefix);
            let mi = counts.iter().position(|&c| c > 0).expect("one slot left");
            if self.g.element_order(last) != self.orders[mi].0 {
                return;
            }
            if self.subs.last().unwrap().0.count() != self.target_size {
                return;
            }
            self.tuple.push(last);
            let t = self.tuple.clone();
            self.out.push(&t);
            self.tuple.pop();
            return;
        }
        for oi in 0..self.orders.len() {
            if counts[oi] == 0 {
                continue;
            }
            counts[oi] -= 1;
            for pi in 0..self.pools[oi].len() {
                let x = self.pools[oi][pi];
                self.tuple.push(x);
                push_extended_subgroup(self.g, &mut self.subs, x);
                self.recurse(self.g.mul(prefix, x), counts);
                self.subs.pop();
                self.tuple.pop();
            }
            counts[oi] += 1;
        }
    }
}

fn order_multiplicities(ty: &TupleType) -> Vec<(u16, usize)> {
    let mut orders: Vec<(u16, usize)> = Vec::new();
    for &m in ty.entries() {
        match orders.last_mut() {
            Some((o, c)) if *o == m => *c += 1,
            _ => orders.push((m, 1)),
        }
    }
    orders
}

fn identity_subgroup(g: &GroupTable) -> (Bitset, Vec<Elem>) {
    let mut b = Bitset::new(g.order());
    b.insert(g.identity() as usize);
    (b, vec![g.identity()])
}

/// All spherical systems of the given type, as raw tuples.
pub fn system_tuples(g: &GroupTable, ty: &TupleType, first: FirstEntry) -> TupleList {
    let r = ty.len();
    if g.order() == 1 {
        return TupleList::new(r); // entries must have order ≥ 2
    }
    let orders = order_multiplicities(ty);
    let pools: Vec<Vec<Elem>> = orders
        .iter()
        .map(|&(m, _)| g.elements_of_order(m))
        .collect();
    if pools.iter().any(Vec::is_empty) {
        return TupleList::new(r);
    }
    let first_pools: Vec<Vec<Elem>> = match first {
        FirstEntry::All => pools.clone(),
        FirstEntry::ClassReps => orders
            .iter()
            .map(|&(m, _)| {
                g.class_reps()
                    .iter()
                    .copied()
                    .filter(|&x| g.element_order(x) == m)
                    .collect()
            })
            .collect(),
    };

    let mut counts: Vec<usize> = orders.iter().map(|&(_, c)| c).collect();
    let mut search = SystemSearch {
        g,
        orders,
        pools,
        r,
        target_size: g.order(),
        tuple: Vec::with_capacity(r),
        subs: vec![identity_subgroup(g)],
        out: TupleList::new(r),
    };
    for oi in 0..search.orders.len() {
        if counts[oi] == 0 {
            continue;
        }
        counts[oi] -= 1;
        for pi in 0..first_pools[oi].len() {
            let x = first_pools[oi][pi];
            search.tuple.push(x);
            push_extended_subgroup(search.g, &mut search.subs, x);
            search.recurse(x, &mut counts);
            search.subs.pop();
            search.tuple.pop();
        }
        counts[oi] += 1;
    }
    search.out
}

/// Spherical systems *of the subgroup H* of the given type, as raw tuples of
/// G-indices; generation is relative to H.
pub(crate) fn subgroup_system_tuples(g: &GroupTable, h: &Bitset, ty: &TupleType) -> TupleList {
    let r = ty.len();
    let orders = order_multiplicities(ty);
    let pools: Vec<Vec<Elem>> = orders
        .iter()
        .map(|&(m, _)| {
            h.iter()
                .map(|x| x as Elem)
                .filter(|&x| g.element_order(x) == m)
                .collect()
        })
        .collect();
    if pools.iter().any(Vec::is_empty) {
        return TupleList::new(r);
    }
    let mut counts: Vec<usize> = orders.iter().map(|&(_, c)| c).collect();
    let mut search = SystemSearch {
        g,
        orders,
        pools,
        r,
        target_size: h.count(),
        tuple: Vec::with_capacity(r),
        subs: vec![identity_subgroup(g)],
        out: TupleList::new(r),
    };
    let init: Vec<usize> = (0..search.orders.len()).collect();
    for oi in init {
        if counts[oi] == 0 {
            continue;
        }
        counts[oi] -= 1;
        for pi in 0..search.pools[oi].len() {
            let x = search.pools[oi][pi];
            search.tuple.push(x);
            push_extended_subgroup(search.g, &mut search.subs, x);
            search.recurse(x, &mut counts);
            search.subs.pop();
            search.tuple.pop();
        }
        counts[oi] += 1;
    }
    search.out
}

/// Expands a class-reduced list to the full raw list by conjugating every
/// tuple with every group element, deduplicating. Output is sorted.
pub fn expand_conjugates(g: &GroupTable, reduced: &TupleList) -> TupleList {
    let r = reduced.arity;
    let mut seen: FxHashSet<u128> = FxHashSet::default();
    let mut out = TupleList::new(r);
    let mut buf = vec![0 as Elem; r];
    for t in reduced.iter() {
        for c in g.elements() {
            for (slot, &x) in buf.iter_mut().zip(t) {
                *slot = g.conj(c, x);
            }
            if seen.insert(pack_tuple(&buf)) {
                out.push(&buf);
            }
        }
    }
    out.sort();
    out
}

/// Packs a tuple of at most 8 element indices into a hash key.
pub(crate) fn pack_tuple(t: &[Elem]) -> u128 {
    debug_assert!(t.len() <= 8);
    let mut key = 0u128;
    for (i, &x) in t.iter().enumerate() {
        key |= (x as u128) << (16 * i);
    }
    key
}

/// All spherical systems of the given type (full raw list, no quotienting).
pub fn enumerate_spherical(g: &GroupTable, ty: &TupleType) -> Vec<SphericalSystem> {
    system_tuples(g, ty, FirstEntry::All)
        .iter()
        .map(|t| SphericalSystem::from_raw(g, t.to_vec()))
        .collect()
}

/// Groups a tuple list by Σ-set: one Σ per distinct value plus the Σ index
/// of every tuple.
pub(crate) fn sigma_groups(g: &GroupTable, tuples: &TupleList) -> (Vec<SigmaSet>, Vec<u32>) {
    let mut sigmas: Vec<SigmaSet> = Vec::new();
    let mut index: FxHashMap<Vec<u64>, u32> = FxHashMap::default();
    let mut assignment = Vec::with_capacity(tuples.len());
    for t in tuples.iter() {
        let s = sigma(g, t);
        let key = s.words().to_vec();
        let id = *index.entry(key).or_insert_with(|| {
            sigmas.push(s.clone());
            (sigmas.len() - 1) as u32
        });
        assignment.push(id);
    }
    (sigmas, assignment)
}

fn pair_lists<'a>(
    g: &GroupTable,
    a1: &TupleType,
    a2: &'a TupleType,
) -> (TupleList, Option<TupleList>, Vec<SigmaSet>, Vec<u32>, Vec<SigmaSet>, Vec<u32>) {
    let xs = system_tuples(g, a1, FirstEntry::All);
    let ys = if a1 == a2 {
        None
    } else {
        Some(system_tuples(g, a2, FirstEntry::All))
    };
    let (sx, ax) = sigma_groups(g, &xs);
    let (sy, ay) = match &ys {
        Some(y) => sigma_groups(g, y),
        None => (sx.clone(), ax.clone()),
    };
    (xs, ys, sx, ax, sy, ay)
}

/// All unmixed structures of the given type pair: every ordered pair of a
/// type-a1 system and a type-a2 system with disjoint Σ-sets. The output can
/// be enormous for highly symmetric groups; [`count_unmixed`] and
/// [`exists_unmixed`] answer the counting and existence questions without
/// materializing it.
pub fn enumerate_unmixed(g: &GroupTable, a1: &TupleType, a2: &TupleType) -> Vec<UnmixedStructure> {
    let (xs, ys, sx, ax, sy, ay) = pair_lists(g, a1, a2);
    let ys_ref = ys.as_ref().unwrap_or(&xs);
    let id = g.identity() as usize;
    let mut compatible = vec![false; sx.len() * sy.len()];
    for (i, si) in sx.iter().enumerate() {
        for (j, sj) in sy.iter().enumerate() {
            compatible[i * sy.len() + j] = si.intersects_only(sj, id);
        }
    }
    let mut out = Vec::new();
    for (xi, xt) in xs.iter().enumerate() {
        for (yi, yt) in ys_ref.iter().enumerate() {
            if compatible[ax[xi] as usize * sy.len() + ay[yi] as usize] {
                out.push(UnmixedStructure {
                    t1: SphericalSystem::from_raw(g, xt.to_vec()),
                    t2: SphericalSystem::from_raw(g, yt.to_vec()),
                });
            }
        }
    }
    out
}

/// Number of unmixed structures of the given type pair, computed from the
/// Σ-group sizes without materializing the pairs.
pub fn count_unmixed(g: &GroupTable, a1: &TupleType, a2: &TupleType) -> u64 {
    let (_xs, _ys, sx, ax, sy, ay) = pair_lists(g, a1, a2);
    let id = g.identity() as usize;
    let mut x_per_sigma = vec![0u64; sx.len()];
    for &a in &ax {
        x_per_sigma[a as usize] += 1;
    }
    let mut y_per_sigma = vec![0u64; sy.len()];
    for &a in &ay {
        y_per_sigma[a as usize] += 1;
    }
    let mut total = 0u64;
    for (i, si) in sx.iter().enumerate() {
        for (j, sj) in sy.iter().enumerate() {
            if si.intersects_only(sj, id) {
                total += x_per_sigma[i] * y_per_sigma[j];
            }
        }
    }
    total
}

/// Existence of an unmixed structure of the given type pair, searched on the
/// class-reduced lists: conjugating either side of a disjoint pair keeps it
/// disjoint, so a pair exists iff one exists with class-rep first entries.
pub fn exists_unmixed(g: &GroupTable, a1: &TupleType, a2: &TupleType) -> bool {
    let xs = system_tuples(g, a1, FirstEntry::ClassReps);
    if xs.is_empty() {
        return false;
    }
    let (sx, _) = sigma_groups(g, &xs);
    let sy = if a1 == a2 {
        sx.clone()
    } else {
        let ys = system_tuples(g, a2, FirstEntry::ClassReps);
        if ys.is_empty() {
            return false;
        }
        sigma_groups(g, &ys).0
    };
    let id = g.identity() as usize;
    sx.iter()
        .any(|si| sy.iter().any(|sj| si.intersects_only(sj, id)))
}

/// Per-subgroup context for the mixed search over one index-2 subgroup.
pub(crate) struct MixedContext {
    pub h_bits: Bitset,
    pub h_elems: Vec<Elem>,
    h_class_of: Vec<u16>,
    h_masks: Vec<Bitset>,
    outer_squares: Bitset,
    pub outer_rep: Elem,
}

impl MixedContext {
    pub(crate) fn new(g: &GroupTable, h_bits: Bitset) -> Self {
        let h_elems = h_bits.to_vec();
        let n = g.order();
        // H-conjugacy classes of the elements of H, and per class the union
        // of the cyclic subgroups of its members
        let mut h_class_of = vec![u16::MAX; n];
        let mut h_masks: Vec<Bitset> = Vec::new();
        for &x in &h_elems {
            if h_class_of[x as usize] != u16::MAX {
                continue;
            }
            let id = h_masks.len() as u16;
            let mut mask = Bitset::new(n);
            for &h in &h_elems {
                let y = g.conj(h, x);
                h_class_of[y as usize] = id;
                let mut p = y;
                loop {
                    mask.insert(p as usize);
                    if p == g.identity() {
                        break;
                    }
                    p = g.mul(p, y);
                }
            }
            h_masks.push(mask);
        }
        let mut outer_squares = Bitset::new(n);
        let mut outer_rep = g.identity();
        for x in g.elements() {
            if !h_bits.contains(x as usize) {
                outer_squares.insert(g.mul(x, x) as usize);
                outer_rep = x;
            }
        }
        MixedContext {
            h_bits,
            h_elems,
            h_class_of,
            h_masks,
            outer_squares,
            outer_rep,
        }
    }

    /// Σ of a tuple of H-elements, with conjugation running over H only.
    pub(crate) fn sigma_h(&self, elems: &[Elem]) -> Bitset {
        let mut s = self.h_masks[self.h_class_of[elems[0] as usize] as usize].clone();
        for &x in &elems[1..] {
            s.union_with(&self.h_masks[self.h_class_of[x as usize] as usize]);
        }
        s
    }

    /// The two coset conditions of a mixed structure. Σ(T) is invariant
    /// under H-conjugation, so the Σ-set of gTg⁻¹ is the same for every g in
    /// the nontrivial coset and one representative decides the disjointness
    /// condition; the square condition is checked against the whole coset.
    pub(crate) fn coset_conditions(&self, g: &GroupTable, sigma_h: &Bitset) -> bool {
        // identity is in Σ(T), so an outer involution (g² = 1) also fails here
        if !self.outer_squares.is_disjoint(sigma_h) {
            return false;
        }
        let mut conj = Bitset::new(g.order());
        for i in sigma_h.iter() {
            conj.insert(g.conj(self.outer_rep, i as Elem) as usize);
        }
        sigma_h.intersects_only(&conj, g.identity() as usize)
    }
}

/// All mixed structures of the given type: for each index-2 subgroup H, the
/// spherical systems of H of type `a` whose Σ-set passes both coset
/// conditions.
pub fn enumerate_mixed(g: &GroupTable, a: &TupleType) -> Vec<MixedStructure> {
    let mut out = Vec::new();
    for h_bits in g.index_two_subgroups() {
        let ctx = MixedContext::new(g, h_bits);
        let tuples = subgroup_system_tuples(g, &ctx.h_bits, a);
        for t in tuples.iter() {
            let s = ctx.sigma_h(t);
            if ctx.coset_conditions(g, &s) {
                out.push(MixedStructure {
                    subgroup: ctx.h_elems.clone(),
                    t: SphericalSystem::from_raw(g, t.to_vec()),
                });
            }
        }
    }
    out
}

pub fn exists_mixed(g: &GroupTable, a: &TupleType) -> bool {
    for h_bits in g.index_two_subgroups() {
        let ctx = MixedContext::new(g, h_bits);
        let tuples = subgroup_system_tuples(g, &ctx.h_bits, a);
        for t in tuples.iter() {
            if ctx.coset_conditions(g, &ctx.sigma_h(t)) {
                return true;
            }
        }
    }
    false
}

/// Numerical invariants of the quotient surface attached to a structure.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SurfaceInvariants {
    pub g1: i64,
    pub g2: i64,
    pub chi: i64,
    pub ksq: i64,
    pub pg: i64,
    pub q: i64,
}

fn hurwitz_genus(group_order: i64, ty: &TupleType) -> Result<i64, RamError> {
    let g = Ratio::from_integer(1)
        + Ratio::from_integer(group_order) * theta(ty.entries()) / Ratio::from_integer(2);
    if !g.is_integer() {
        return Err(RamError::NonIntegralGenus(format!(
            "order {group_order}, type {ty}"
        )));
    }
    Ok(g.to_integer())
}

/// Genera and surface invariants of an unmixed structure: gᵢ from the
/// Hurwitz formula, χ = 1, K² = 8, p_g = q = 0, and the cross-check
/// (g₁−1)(g₂−1) = |G|.
pub fn surface_invariants_unmixed(
    g: &GroupTable,
    s: &UnmixedStructure,
) -> Result<SurfaceInvariants, RamError> {
    let n = g.order() as i64;
    let g1 = hurwitz_genus(n, s.t1.ty())?;
    let g2 = hurwitz_genus(n, s.t2.ty())?;
    if g1 < 2 || g2 < 2 {
        return Err(RamError::GenusConstraint(format!(
            "genus {} below 2",
            g1.min(g2)
        )));
    }
    if (g1 - 1) * (g2 - 1) != n {
        return Err(RamError::GenusConstraint(format!(
            "(g1-1)(g2-1) = {} but |G| = {n}",
            (g1 - 1) * (g2 - 1)
        )));
    }
    Ok(SurfaceInvariants {
        g1,
        g2,
        chi: 1,
        ksq: 8,
        pg: 0,
        q: 0,
    })
}

/// Genera and surface invariants of a mixed structure; both curves share the
/// genus 1 + |H|·Θ(A)/2. With `strict` set, |G| = β(A)² is also required,
/// which makes (g−1)² = |G| hold.
pub fn surface_invariants_mixed(
    g: &GroupTable,
    s: &MixedStructure,
    strict: bool,
) -> Result<SurfaceInvariants, RamError> {
    let h_order = s.subgroup.len() as i64;
    let genus = hurwitz_genus(h_order, s.t.ty())?;
    if genus < 2 {
        return Err(RamError::GenusConstraint(format!("genus {genus} below 2")));
    }
    if strict {
        let beta = crate::tuples::integral_beta(s.t.ty().entries())
            .ok_or_else(|| RamError::GenusConstraint("β is not integral".into()))?;
        if beta * beta != g.order() as i64 {
            return Err(RamError::GenusConstraint(format!(
                "β² = {} but |G| = {}",
                beta * beta,
                g.order()
            )));
        }
        debug_assert_eq!((genus - 1) * (genus - 1), g.order() as i64);
    }
    Ok(SurfaceInvariants {
        g1: genus,
        g2: genus,
        chi: 1,
        ksq: 8,
        pg: 0,
        q: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, from_permutations, DEFAULT_ORDER_BOUND};
    use crate::perm::Perm;

    fn z5sq() -> GroupTable {
        let z5 = cyclic(5, 64).unwrap();
        direct_product(&z5, &z5, 64).unwrap()
    }

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

    // (a,b) in Z5×Z5 under the product layout a·5 + b
    fn z5v(a: u16, b: u16) -> Elem {
        a * 5 + b
    }

    #[test]
    fn sigma_of_three_lines_in_elementary_abelian_25() {
        let g = z5sq();
        let sys = SphericalSystem::new(&g, vec![z5v(1, 0), z5v(0, 1), z5v(4, 4)]).unwrap();
        let s = sigma(&g, sys.elems());
        // three distinct order-5 lines plus the identity
        assert_eq!(s.count(), 13);
        for &x in sys.elems() {
            assert!(s.contains(x as usize));
        }
        assert!(s.contains(g.identity() as usize));
    }

    #[test]
    fn sigma_is_conjugation_closed() {
        let g = a5();
        let ty = TupleType::new(vec![2, 5, 5]).unwrap();
        let tuples = system_tuples(&g, &ty, FirstEntry::ClassReps);
        assert!(!tuples.is_empty());
        for t in tuples.iter().take(20) {
            let s = sigma(&g, t);
            for c in g.elements() {
                let mut conj = Bitset::new(g.order());
                for i in s.iter() {
                    conj.insert(g.conj(c, i as Elem) as usize);
                }
                assert_eq!(s, conj);
            }
        }
    }

    #[test]
    fn disjoint_pair_on_elementary_abelian_25() {
        let g = z5sq();
        let t1 = SphericalSystem::new(&g, vec![z5v(1, 0), z5v(0, 1), z5v(4, 4)]).unwrap();
        let t2 = SphericalSystem::new(&g, vec![z5v(1, 2), z5v(3, 4), z5v(1, 4)]).unwrap();
        assert!(is_disjoint(&g, &t1, &t2).unwrap());
        assert!(!is_disjoint(&g, &t1, &t1).unwrap());
    }

    #[test]
    fn spherical_enumeration_finds_the_bundled_alternating_system() {
        let pg = crate::group::permutation_group(
            "A5",
            5,
            &[
                Perm::parse("(1,2,3,4,5)", 5).unwrap(),
                Perm::parse("(1,2,3)", 5).unwrap(),
            ],
            DEFAULT_ORDER_BOUND,
        )
        .unwrap();
        let idx: std::collections::HashMap<String, Elem> = pg
            .elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.to_string(), i as Elem))
            .collect();
        let ty = TupleType::new(vec![2, 5, 5]).unwrap();
        let systems = enumerate_spherical(&pg.table, &ty);
        assert!(!systems.is_empty());
        // [(2,4)(3,5), (2,1,3,4,5), (1,2,3,4,5)]
        let target = vec![
            idx[&Perm::parse("(2,4)(3,5)", 5).unwrap().to_string()],
            idx[&Perm::parse("(2,1,3,4,5)", 5).unwrap().to_string()],
            idx[&Perm::parse("(1,2,3,4,5)", 5).unwrap().to_string()],
        ];
        assert!(systems.iter().any(|s| s.elems() == target.as_slice()));
    }

    #[test]
    fn no_order_three_systems_in_elementary_abelian_8() {
        let z2 = cyclic(2, 64).unwrap();
        let z4g = direct_product(&z2, &z2, 64).unwrap();
        let z8g = direct_product(&z4g, &z2, 64).unwrap();
        let ty = TupleType::new(vec![3, 3, 3]).unwrap();
        assert!(enumerate_spherical(&z8g, &ty).is_empty());
    }

    #[test]
    fn class_reduced_expansion_matches_full_enumeration() {
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
        let d4 = {
            // dihedral of order 8 as a permutation group
            from_permutations(
                "D4",
                4,
                &[
                    Perm::parse("(1,2,3,4)", 4).unwrap(),
                    Perm::parse("(2,4)", 4).unwrap(),
                ],
                64,
            )
            .unwrap()
        };
        for (g, tys) in [
            (&s4, vec![vec![3u16, 4, 4], vec![2, 2, 2, 3]]),
            (&d4, vec![vec![2, 2, 4, 4], vec![2, 2, 2, 2, 2]]),
        ] {
            for entries in tys {
                let ty = TupleType::new(entries).unwrap();
                let mut full = system_tuples(g, &ty, FirstEntry::All);
                let reduced = system_tuples(g, &ty, FirstEntry::ClassReps);
                let expanded = expand_conjugates(g, &reduced);
                full.sort();
                assert_eq!(expanded, full);
            }
        }
    }

    #[test]
    fn cyclic_groups_admit_no_unmixed_structures() {
        let z4 = cyclic(4, 64).unwrap();
        for a1 in crate::tuples::enumerate_n(3) {
            for a2 in crate::tuples::enumerate_n(3) {
                assert!(!exists_unmixed(&z4, &a1, &a2));
            }
        }
    }

    #[test]
    fn elementary_abelian_9_admits_the_four_threes_type() {
        let z3 = cyclic(3, 64).unwrap();
        let g = direct_product(&z3, &z3, 64).unwrap();
        let ty = TupleType::new(vec![3, 3, 3, 3]).unwrap();
        assert!(exists_unmixed(&g, &ty, &ty));
        let all = enumerate_unmixed(&g, &ty, &ty);
        assert_eq!(all.len() as u64, count_unmixed(&g, &ty, &ty));
        assert!(!all.is_empty());
        for s in all.iter().step_by(97) {
            assert!(is_disjoint(&g, &s.t1, &s.t2).unwrap());
        }
    }

    #[test]
    fn abelian_groups_admit_no_mixed_structures() {
        let z16 = cyclic(16, 64).unwrap();
        let ty = TupleType::new(vec![2, 8, 8]).unwrap();
        assert!(enumerate_mixed(&z16, &ty).is_empty());
        assert!(!exists_mixed(&z16, &ty));
    }

    #[test]
    fn unmixed_invariants_on_the_alternating_group() {
        let g = a5();
        let a1 = TupleType::new(vec![2, 5, 5]).unwrap();
        let a2 = TupleType::new(vec![3, 3, 3, 3]).unwrap();
        let all = enumerate_unmixed(&g, &a1, &a2);
        assert!(!all.is_empty());
        let inv = surface_invariants_unmixed(&g, &all[0]).unwrap();
        assert_eq!((inv.g1, inv.g2), (4, 21));
        assert_eq!((inv.g1 - 1) * (inv.g2 - 1), 60);
        assert_eq!((inv.chi, inv.ksq, inv.pg, inv.q), (1, 8, 0, 0));
    }

    #[test]
    fn non_integral_genus_is_rejected() {
        let z6 = cyclic(6, 64).unwrap();
        // order 3 "subgroup" with type [2,5,5]: 1 + 3·(1/10)/... not integral
        let fake = MixedStructure {
            subgroup: vec![0, 1, 2],
            t: SphericalSystem {
                elems: vec![1, 2, 3],
                ty: TupleType::new(vec![2, 5, 5]).unwrap(),
            },
        };
        assert!(matches!(
            surface_invariants_mixed(&z6, &fake, false),
            Err(RamError::NonIntegralGenus(_))
        ));
    }
}

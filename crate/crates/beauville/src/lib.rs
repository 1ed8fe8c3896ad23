//! Search and classification machinery for ramification structures on finite
//! groups.
//!
//! A *spherical system of generators* of a finite group G is a tuple whose
//! entries generate G and multiply to the identity; its *type* is the sorted
//! list of entry orders. Two systems are *disjoint* when the unions of the
//! conjugates of the cyclic subgroups generated by their entries (the Σ-sets)
//! meet only in the identity. Disjoint pairs of prescribed types are the
//! unmixed ramification structures; mixed structures live on an index-2
//! subgroup with compatibility conditions against the outer coset. Quotients
//! of products of curves by free group actions are classified by exactly
//! these data, with deformation classes given by the orbits of braid moves
//! and automorphisms.
//!
//! The crate provides, bottom up:
//!
//! - [`group`]: finite groups as dense multiplication tables, with
//!   permutation closures, direct products and the metabelian construction
//!   ([`metabelian`]) as constructors;
//! - [`aut`] / [`iso`]: automorphism groups and isomorphism testing by
//!   generator-image search;
//! - [`tuples`]: the admissible branching types in exact arithmetic;
//! - [`polygonal`]: abelianized polygonal groups via Smith normal form;
//! - [`ramification`]: Σ-sets, spherical system enumeration, unmixed and
//!   mixed structure searches, and the surface invariants they determine;
//! - [`hurwitz`]: braid moves and orbit counting for component counts and
//!   dimensions;
//! - [`catalog`]: built-in models of every group in the classification plus
//!   a line-oriented ingestion format for external groups;
//! - [`check`]: an independent re-verification layer sharing no code with
//!   the searches;
//! - [`verify`]: reproduction of the classification table at desk scale.

pub mod aut;
pub mod bitset;
pub mod catalog;
pub mod check;
pub mod group;
pub mod hurwitz;
pub mod iso;
pub mod metabelian;
pub mod perm;
pub mod polygonal;
pub mod ramification;
pub mod tuples;
pub mod verify;

pub use aut::{automorphisms, AutGroup, Homomorphism};
pub use group::{
    cyclic, direct_product, from_permutations, Elem, GroupError, GroupTable, DEFAULT_ORDER_BOUND,
};
pub use iso::is_isomorphic;
pub use metabelian::{metabelian, MetabelianData};
pub use tuples::TupleType;

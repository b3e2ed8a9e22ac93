//! Finite semigroups given by their multiplication tables.
//!
//! The crate revolves around [`table::SemigroupTable`], a dense Cayley table
//! over named elements. On top of it sit the assembly axioms (every element
//! has an absorbing local identity, a matching local inverse, and the local
//! identity map is multiplicative), the Clifford block structure they induce,
//! a set of standard constructions (cyclic groups, zero adjunction, bands,
//! chains, direct and power semigroups, Rees matrix semigroups, coset
//! assemblies), substructure and homomorphism analysis, and a small census of
//! all semigroups up to isomorphism at tiny orders.

pub mod assembly;
pub mod census;
pub mod constructions;
pub mod format;
pub mod morphisms;
pub mod report;
pub mod substructures;
pub mod table;

mod error;

pub use error::{Error, ParseError, ParseErrorKind, Result};

/// Size guards for the operations that can blow up combinatorially.
///
/// Every cap can be overridden; the defaults keep interactive use snappy
/// without refusing anything that finishes in seconds.
#[derive(Clone, Debug)]
pub struct Caps {
    /// Largest order a direct product may have.
    pub product_order: usize,
    /// Largest base order for the power semigroup (result has 2^n - 1 elements).
    pub power_base: usize,
    /// Largest order for general isomorphism search.
    pub iso_order: usize,
    /// Largest group order for subgroup enumeration.
    pub group_order: usize,
    /// Largest subject order for the band-of-groups witness search.
    pub band_search_order: usize,
    /// Largest band order the witness search will enumerate targets for.
    pub band_pool_order: usize,
    /// Guard on |target|^|source| when enumerating homomorphisms.
    pub hom_candidates: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            product_order: 4096,
            power_base: 10,
            iso_order: 8,
            group_order: 128,
            band_search_order: 8,
            band_pool_order: 6,
            hom_candidates: 10_000_000,
        }
    }
}

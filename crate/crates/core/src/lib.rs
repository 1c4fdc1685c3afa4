//! Exact computations with fiber cones of m-primary ideals: monomial and
//! semigroup ideals, polynomial ideals over a prime field, mixed
//! multiplicities, joint reductions and reduction indices, and the closed
//! forms for the fiber-cone Hilbert series of ideals with minimal and almost
//! minimal mixed multiplicity.

pub mod analysis;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod linalg;
pub mod monomial;
pub mod multiplicity;
pub mod poly;
pub mod reductions;
pub mod report;
pub mod search;
pub mod semigroup;
pub mod spec;

pub use error::{Error, Result};

/// Outcome of a bounded search for the smallest index with some property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexSearch {
    Found(u32),
    /// Nothing up to the bound; never read as "infinite".
    NotFoundUpTo(u32),
}

impl IndexSearch {
    pub fn found(&self) -> Option<u32> {
        match *self {
            IndexSearch::Found(n) => Some(n),
            IndexSearch::NotFoundUpTo(_) => None,
        }
    }
}

impl std::fmt::Display for IndexSearch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IndexSearch::Found(n) => write!(f, "{n}"),
            IndexSearch::NotFoundUpTo(n) => write!(f, "not found up to {n}"),
        }
    }
}

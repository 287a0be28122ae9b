//! Defining multisets and cyclic serial codes: duals, hulls, predicates
//! and the triple-sequence encoding.

mod code;
mod multiset;
mod triple;

pub use code::{CodeReport, CodeSpace, CyclicSerialCode};
pub use multiset::DefiningMultiset;
pub use triple::{es_of_level, level_of_es, EsVec, TripleSequence};

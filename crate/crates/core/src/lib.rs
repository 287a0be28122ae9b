//! Cyclic serial codes over finite chain rings.
//!
//! The crate covers the whole pipeline from cyclotomic cosets to hull
//! statistics:
//!
//! - [`cosetlab`]: `q`-cyclotomic cosets modulo `n` and their counts.
//! - [`grarith`]: residue fields, Galois rings, Hensel lifting and `Ω`.
//! - [`ringpoly`]: chain-ring elements, cyclic polynomials, θ-adic echelon.
//! - [`serialcodes`]: defining multisets, duals, hulls, triple-sequences.
//! - [`hullcount`]: hull parameter tables, counting and averages.
//! - [`bruteforce`]: exhaustive codeword-set oracles for tiny rings.
//! - [`io`]: text formats shared by the CLI and the fuzz targets.

pub mod arith;
pub mod bruteforce;
pub mod cosetlab;
pub mod error;
pub mod grarith;
pub mod hullcount;
pub mod io;
pub mod ringpoly;
pub mod serialcodes;

pub use error::{Error, Result};

//! Koszul cohomology of Segre embeddings of P^1 x P^1 and of rational normal
//! scrolls, computed exactly over prime fields or the rationals.

pub mod linalg;
pub mod rings;
pub mod cache;
pub mod koszul;
pub mod report;
pub mod resolutions;
pub mod cocycles;

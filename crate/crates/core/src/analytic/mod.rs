//! Hermitian kernel, exact coefficient sequences, the 1F2 reproducing
//! kernel, and the Meijer pseudo-weight.

mod exact;
pub mod meijer;
pub mod special;
pub mod weight;

pub use exact::*;

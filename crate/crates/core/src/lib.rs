//! Exact and numerical toolkit for degree-four Jordan pairs and their
//! minimal representations.

pub mod analytic;
pub mod bernstein;
pub mod cli;
pub mod hc;
pub mod jordan;
pub mod polycore;
pub mod sl2rep;
pub mod structurable;
pub mod tables;

//! Cayley graphs on the nonabelian groups of order `p^3`, their automorphism
//! groups, and a census of half-arc-transitive graphs of valency 6 and 8.

pub mod autgroup;
pub mod cayley;
pub mod census;
pub mod classify;
pub mod cli;
pub mod families;
pub mod graph;
pub mod graphauto;
pub mod modular;
pub mod pgroup;

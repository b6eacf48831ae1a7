pub mod classify;
pub mod cli;
pub mod code;
pub mod gf;
pub mod invariants;
pub mod lattice;
pub mod tables;

pub mod arith;
pub mod cones;
pub mod error;
pub mod lattice;
pub mod pairs;
pub mod io;
pub mod quotients;
pub mod automorphisms;
pub mod explorer;
pub mod reports;

//! Desk-scale laboratory for the infinite-range antiferromagnetic Ising spin
//! glass `H = (Σ q_i σ_i^z)^2` and the three-mode Diophantine Hamiltonian
//! `H = (n1 - n2 - n3)^2`.
//!
//! The crate covers:
//!
//! * [`instance`]: weight lists, spin subsets, exact energies, generation and I/O.
//! * [`solvers`]: exact (brute force, Horowitz–Sahni, Schroeppel–Shamir, complete
//!   Karmarkar–Karp) and heuristic (Karmarkar–Karp) two-way number partitioning.
//! * [`eigenspace`]: every minimizing spin configuration and the uniform ground
//!   state built from them.
//! * [`thermo`]: Boltzmann weights, ensemble averages and inverse-temperature sweeps.
//! * [`fock`]: zero-energy Fock states, Fibonacci recognition and the
//!   Fibonacci / non-Fibonacci split of the zero eigenspace.
//! * [`bench`]: time and working-set scaling runs with fitted growth exponents.
//!
//! Exhaustive loops are sharded with rayon when the `parallel` feature is on
//! (the default). Every sharded computation reduces in shard order, so
//! [`Parallelism::Sequential`] and [`Parallelism::Parallel`] give identical results.

pub mod bench;
pub mod eigenspace;
mod enumerate;
pub mod error;
pub mod exec;
pub mod fock;
pub mod format;
pub mod instance;
mod sum;
pub mod solvers;
pub mod subset;
pub mod thermo;

pub use error::{Error, ErrorKind, Result};
pub use exec::Parallelism;
pub use instance::{complement, energy, generate_instance, EnergyValue, Instance};
pub use solvers::{solve, SolveResult, SolverBudget, SolverConfig, SolverKind};
pub use subset::SubsetAssignment;

//! One-dimensional Schrödinger problems for image potentials: a Numerov
//! shooting solver, a finite-difference oracle and hydrogen-like closed forms.

mod analytic;
mod halfline;
mod oracle;
mod profile;
mod shooting;
mod state;

pub use analytic::{
    box_energy, box_levitation_for_mass_ratio, hydrogenic_bohr_radius, hydrogenic_energy, particle_in_box_levitation,
    radial_wavefunction, HydrogenicParams,
};
pub use halfline::{solve_half_line, HalfLineSolution};
pub use oracle::{diagonalization_oracle, diagonalization_oracle_extrapolated, ORACLE_MIN_POINTS};
pub use profile::{DomainKind, PotentialProfile, DEFAULT_POINTS};
pub use shooting::{solve_eigenstates, DEGENERACY_TOL};
pub use state::{bohr_radius_numeric, Eigenstate, Parity, StateKind, NODE_THRESHOLD};

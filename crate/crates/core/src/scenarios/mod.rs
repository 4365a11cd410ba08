//! End-to-end studies: a carrier near a semiconductor surface across a
//! vacuum gap, an electron above rare-gas films on a metal, and electrons
//! trapped between two metal plates with the resulting plate forces.

mod epsilon;
mod materials;
mod plates;
mod sweeps;

pub use epsilon::{default_epsilon_samples, effective_epsilon, effective_epsilon_curve, EpsilonTable, DEFAULT_TABLE_POINTS};
pub use materials::{builtin_materials, material, Carrier, Material, DEFAULT_HAMAKER_J, REGISTRY_VERSION};
pub use plates::{
    averaged_plate_plate, casimir_force, continuity_violations, derivative, energy_vs_gap, force_from_energy,
    levitation_curve, total_force, two_plate_profile, two_plate_spectrum, vdw_force, vdw_pressure, EnergyCurve,
    ForceBreakdown, ForceCurve, LevitationPoint, PlateSystem, TwoPlateSpectrum, FORCE_STEP,
};
pub use sweeps::{noble_film_sweep, schottky_gap_sweep, solve_left_halfspace, SolverSettings, SweepRow};

//! Polarization self-potential of a point charge in a planar stack of three
//! dielectrics, plus the image interaction across the slab.
//!
//! Positions and distances are nanometres, potentials are volts, energies eV.

mod dielectric;
mod images;
mod quadrature;
mod series;

pub use dielectric::{beta_coefficients, BetaSet, DielectricConstant, DielectricStack, MIN_OFFSET_FRACTION};
pub use images::{generate_images, Family, ImageCharge, ImageSequence, Side};
pub use quadrature::{potential_kernel_quadrature, potential_left_halfplane_quadrature, QUADRATURE_TOL};
pub use series::{
    plate_plate_energy, potential_left_halfplane, potential_single_interface, potential_slab_images,
    potential_slab_series, PotentialValue, DEFAULT_TOL, MAX_BLOCKS,
};

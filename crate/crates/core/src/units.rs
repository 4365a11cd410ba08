//! Physical constants and unit conversions.
//!
//! Everything numeric runs in Hartree atomic units (lengths in Bohr radii,
//! energies in Hartree, masses in electron masses). Public entry points take
//! nanometres and return electron-volts, newtons or kilograms.

/// Bohr radius in nanometres.
pub const BOHR_NM: f64 = 0.052_917_721_090_3;
/// Hartree energy in electron-volts.
pub const HARTREE_EV: f64 = 27.211_386_245_988;
/// Rydberg energy in electron-volts.
pub const RYDBERG_EV: f64 = 13.605_693_122_994;
/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light, m/s.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;
/// Elementary charge, C (also J per eV).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Electron rest mass, kg.
pub const ELECTRON_MASS_KG: f64 = 9.109_383_701_5e-31;
/// Neutron rest mass, kg.
pub const NEUTRON_MASS_KG: f64 = 1.674_927_498_04e-27;
/// Standard gravity, m/s².
pub const STANDARD_GRAVITY: f64 = 9.806_65;

#[inline]
pub fn nm_to_bohr(nm: f64) -> f64 {
    nm / BOHR_NM
}

#[inline]
pub fn bohr_to_nm(bohr: f64) -> f64 {
    bohr * BOHR_NM
}

#[inline]
pub fn hartree_to_ev(h: f64) -> f64 {
    h * HARTREE_EV
}

#[inline]
pub fn ev_to_hartree(ev: f64) -> f64 {
    ev / HARTREE_EV
}

/// Converts an energy slope in eV/nm into newtons.
#[inline]
pub fn ev_per_nm_to_newton(x: f64) -> f64 {
    x * ELEMENTARY_CHARGE / 1e-9
}

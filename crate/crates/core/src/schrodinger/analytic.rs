use std::f64::consts::PI;

use serde::Serialize;

use crate::electrostatics::DielectricConstant;
use crate::units::{BOHR_NM, ELECTRON_MASS_KG, HARTREE_EV, HBAR, RYDBERG_EV, STANDARD_GRAVITY};
use crate::{Error, Result};

/// Hydrogen-like description of a carrier bound by a single image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HydrogenicParams {
    /// Effective valency of the image attraction.
    pub z_eff: f64,
    /// Carrier mass in electron masses.
    pub m_eff: f64,
    /// Permittivity of the medium hosting the carrier.
    pub eps_host: f64,
    pub n: u32,
}

impl HydrogenicParams {
    /// Carrier in `eps_host` facing a half-space `wall`. The image potential
    /// is `−z_eff/(eps_host·d)` with `z_eff = |r|/4`, `r` the reflection
    /// coefficient; a repulsive wall has no bound states.
    pub fn single_interface(eps_host: f64, wall: DielectricConstant, m_eff: f64, n: u32) -> Result<Self> {
        if !(eps_host > 0.0) || !eps_host.is_finite() {
            return Err(Error::InvalidParameter(format!("host permittivity must be positive, got {eps_host}")));
        }
        let r = wall.reflection_from(eps_host);
        if r > 0.0 {
            return Err(Error::Unbound(format!(
                "a wall with permittivity {wall} repels a carrier in a host of {eps_host}"
            )));
        }
        Self::new(0.25 * r.abs(), m_eff, eps_host, n)
    }

    /// Electron in vacuum facing a wall of permittivity `eps`.
    pub fn vacuum_facing(eps: DielectricConstant, n: u32) -> Result<Self> {
        Self::single_interface(1.0, eps, 1.0, n)
    }

    pub fn new(z_eff: f64, m_eff: f64, eps_host: f64, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("principal quantum number starts at 1".into()));
        }
        if !(m_eff > 0.0) || !m_eff.is_finite() {
            return Err(Error::InvalidParameter(format!("effective mass must be positive, got {m_eff}")));
        }
        if !(z_eff >= 0.0) || !(eps_host > 0.0) {
            return Err(Error::InvalidParameter(format!("need z_eff ≥ 0 and eps_host > 0, got {z_eff}, {eps_host}")));
        }
        Ok(Self { z_eff, m_eff, eps_host, n })
    }
}

/// `E_n = −(Z²m/ε²)·Ry/n²` in eV.
pub fn hydrogenic_energy(p: &HydrogenicParams) -> f64 {
    let n = p.n as f64;
    -(p.z_eff * p.z_eff * p.m_eff / (p.eps_host * p.eps_host)) * RYDBERG_EV / (n * n)
}

/// `n²·a₀·ε/(Z·m)` in nm.
pub fn hydrogenic_bohr_radius(p: &HydrogenicParams) -> Result<f64> {
    if p.z_eff == 0.0 {
        return Err(Error::Unbound("zero effective valency".into()));
    }
    let n = p.n as f64;
    Ok(n * n * BOHR_NM * p.eps_host / (p.z_eff * p.m_eff))
}

/// Hydrogen radial function `R_n0(r)` in nm^(-3/2), with the Bohr length
/// scaled by the effective valency, mass and host permittivity.
pub fn radial_wavefunction(p: &HydrogenicParams, r_nm: f64) -> Result<f64> {
    if !(r_nm >= 0.0) {
        return Err(Error::Domain(format!("radius must be non-negative, got {r_nm}")));
    }
    let a = hydrogenic_bohr_radius(&HydrogenicParams { n: 1, ..*p })?;
    let x = r_nm / a;
    Ok(match p.n {
        1 => 2.0 * a.powf(-1.5) * (-x).exp(),
        2 => 2.0 * (2.0 * a).powf(-1.5) * (1.0 - x / 2.0) * (-x / 2.0).exp(),
        3 => 2.0 * (3.0 * a).powf(-1.5) * (1.0 - 2.0 * x / 3.0 + 2.0 * x * x / 27.0) * (-x / 3.0).exp(),
        n => return Err(Error::Unsupported(format!("closed form only for n ≤ 3, got {n}; use the numeric solver"))),
    })
}

/// `n²ħ²π²/(2mL²)` in eV for a particle of `m_eff` electron masses.
pub fn box_energy(n: u32, length_nm: f64, m_eff: f64) -> f64 {
    let l = length_nm / BOHR_NM;
    let n = n as f64;
    n * n * PI * PI / (2.0 * m_eff * l * l) * HARTREE_EV
}

/// Mass in kg held up by the box-state force `n²ħ²π²/(m L³)` of one particle
/// of `m_particle_kg` confined between plates `length_nm` apart.
pub fn particle_in_box_levitation(m_particle_kg: f64, n: u32, length_nm: f64) -> Result<f64> {
    if !(length_nm > 0.0) || n == 0 || !(m_particle_kg > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need L > 0, n ≥ 1, m > 0; got L = {length_nm}, n = {n}, m = {m_particle_kg}"
        )));
    }
    let l = length_nm * 1e-9;
    let n = n as f64;
    Ok(n * n * HBAR * HBAR * PI * PI / (m_particle_kg * l.powi(3) * STANDARD_GRAVITY))
}

/// Same as [`particle_in_box_levitation`] for a particle given in electron masses.
pub fn box_levitation_for_mass_ratio(m_eff: f64, n: u32, length_nm: f64) -> Result<f64> {
    particle_in_box_levitation(m_eff * ELECTRON_MASS_KG, n, length_nm)
}

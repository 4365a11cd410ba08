use rayon::prelude::*;
use serde::Serialize;

use crate::electrostatics::{
    potential_left_halfplane, potential_single_interface, DielectricConstant, DielectricStack, DEFAULT_TOL,
};
use crate::schrodinger::{
    bohr_radius_numeric, hydrogenic_bohr_radius, solve_half_line, Eigenstate, HalfLineSolution, HydrogenicParams,
    StateKind, DEFAULT_POINTS,
};
use crate::units::{bohr_to_nm, nm_to_bohr, HARTREE_EV};
use crate::{Error, Result};

use super::materials::{Carrier, Material};

/// One point of a gap or layer sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub gap_nm: f64,
    pub layers: Option<u32>,
    pub energies_ev: Vec<f64>,
    pub bohr_nm: Vec<f64>,
    pub kinds: Vec<StateKind>,
}

impl SweepRow {
    fn from_states(gap_nm: f64, layers: Option<u32>, states: &[Eigenstate]) -> Self {
        Self {
            gap_nm,
            layers,
            energies_ev: states.iter().map(Eigenstate::energy_ev).collect(),
            bohr_nm: states.iter().map(bohr_radius_numeric).collect(),
            kinds: states.iter().map(|s| s.kind).collect(),
        }
    }

    pub fn e0(&self) -> f64 {
        self.energies_ev[0]
    }

    pub fn bohr0(&self) -> f64 {
        self.bohr_nm[0]
    }
}

/// Numerical settings shared by the sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverSettings {
    pub points: usize,
    pub series_tol: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self { points: DEFAULT_POINTS, series_tol: DEFAULT_TOL }
    }
}

/// Carrier of charge `q` and mass `m_eff` in the finite half-space `k1` of
/// `k1 | k2 | k3`, with a hard wall at the `k1|k2` interface. A zero gap
/// reduces to the single interface `k1 | k3`.
#[allow(clippy::too_many_arguments)]
pub fn solve_left_halfspace(
    k1: f64,
    k2: DielectricConstant,
    k3: DielectricConstant,
    gap_nm: f64,
    q: f64,
    m_eff: f64,
    n_states: usize,
    settings: SolverSettings,
) -> Result<HalfLineSolution> {
    if !(gap_nm >= 0.0) || !gap_nm.is_finite() {
        return Err(Error::InvalidParameter(format!("gap must be non-negative, got {gap_nm}")));
    }
    let stack = if gap_nm > 0.0 {
        Some(DielectricStack::new(DielectricConstant::Finite(k1), k2, k3, 0.0, gap_nm)?)
    } else {
        None
    };
    let potential = |d: f64| -> Result<f64> {
        let d_nm = bohr_to_nm(d);
        let v = match &stack {
            Some(s) => potential_left_halfplane(s, d_nm, d_nm + gap_nm, q, settings.series_tol)?.v,
            None => potential_single_interface(k1, k3, d_nm, q)?,
        };
        Ok(0.5 * q * v / HARTREE_EV)
    };
    let n = n_states.max(1) as u32;
    let radius = |wall| HydrogenicParams::single_interface(k1, wall, m_eff, n).and_then(|p| hydrogenic_bohr_radius(&p));
    // An attractive near interface sets the scale; otherwise the far metal does.
    let initial = match radius(k2) {
        Ok(a) if gap_nm > 0.0 => 20.0 * a,
        _ => (20.0 * radius(DielectricConstant::Metal).unwrap_or(1.0)).max(10.0 * gap_nm),
    };
    solve_half_line(potential, m_eff, n_states, nm_to_bohr(initial), settings.points)
}

fn check_increasing(xs: &[f64], what: &str) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::InvalidParameter(format!("{what} sweep is empty")));
    }
    if xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter(format!("{what} values must be strictly increasing")));
    }
    Ok(())
}

/// Semiconductor | vacuum gap | metal: the carrier sits in the semiconductor
/// with a hard wall at its surface. Rows fail individually.
pub fn schottky_gap_sweep(
    semiconductor: &Material,
    carrier: Carrier,
    gaps_nm: &[f64],
    n_states: usize,
    settings: SolverSettings,
) -> Result<Vec<Result<SweepRow>>> {
    let eps = semiconductor.finite_eps()?;
    let m = semiconductor.carrier_mass(carrier)?;
    check_increasing(gaps_nm, "gap")?;
    if gaps_nm[0] < 0.0 {
        return Err(Error::InvalidParameter("gaps must be non-negative".into()));
    }
    let vacuum = DielectricConstant::Finite(1.0);
    Ok(gaps_nm
        .par_iter()
        .map(|&gap| {
            let sol = solve_left_halfspace(eps, vacuum, DielectricConstant::Metal, gap, carrier.charge(), m, n_states, settings)?;
            Ok(SweepRow::from_states(gap, None, &sol.states))
        })
        .collect())
}

/// Vacuum | film of `layers` × thickness | metal with the electron in vacuum.
pub fn noble_film_sweep(
    film: &Material,
    layers: &[u32],
    n_states: usize,
    settings: SolverSettings,
) -> Result<Vec<Result<SweepRow>>> {
    let thickness = film
        .layer_thickness
        .ok_or_else(|| Error::InvalidParameter(format!("{} has no layer thickness", film.name)))?;
    let eps = film.finite_eps()?;
    let as_f64: Vec<f64> = layers.iter().map(|&l| l as f64).collect();
    check_increasing(&as_f64, "layer")?;
    Ok(layers
        .par_iter()
        .map(|&l| {
            let gap = l as f64 * thickness;
            let sol = solve_left_halfspace(
                1.0,
                DielectricConstant::Finite(eps),
                DielectricConstant::Metal,
                gap,
                -1.0,
                1.0,
                n_states,
                settings,
            )?;
            Ok(SweepRow::from_states(gap, Some(l), &sol.states))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::material;

    #[test]
    fn zero_layers_is_the_metal_wall() {
        let rows = noble_film_sweep(&material("sAr").unwrap(), &[0], 3, SolverSettings::default()).unwrap();
        let row = rows[0].as_ref().unwrap();
        assert!((row.e0() + 0.8504).abs() < 0.8504 * 1e-3, "{}", row.e0());
        assert!((row.e0() / row.energies_ev[1] - 4.0).abs() < 1e-2);
        assert!((row.bohr0() - 0.2117).abs() < 0.2117 * 0.02, "{}", row.bohr0());
    }

    #[test]
    fn sweeps_validate_input() {
        let gaas = material("GaAs").unwrap();
        let s = SolverSettings::default();
        assert!(schottky_gap_sweep(&gaas, Carrier::Electron, &[1.0, 1.0], 1, s).is_err());
        assert!(schottky_gap_sweep(&material("Vacuum").unwrap(), Carrier::Electron, &[1.0], 1, s).is_err());
        assert!(noble_film_sweep(&gaas, &[1], 1, s).is_err());
    }
}

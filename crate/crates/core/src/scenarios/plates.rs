use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::electrostatics::{plate_plate_energy, potential_slab_series, DielectricStack, DEFAULT_TOL};
use crate::schrodinger::{solve_eigenstates, DomainKind, Eigenstate, PotentialProfile, DEFAULT_POINTS};
use crate::units::{ev_per_nm_to_newton, hartree_to_ev, nm_to_bohr, HARTREE_EV, HBAR, SPEED_OF_LIGHT, STANDARD_GRAVITY};
use crate::{Error, Result};

/// Relative gap step used for the force derivatives of [`total_force`].
pub const FORCE_STEP: f64 = 1e-3;

/// States of a carrier between two metal plates.
#[derive(Debug, Clone)]
pub struct TwoPlateSpectrum {
    pub gap_nm: f64,
    pub states: Vec<Eigenstate>,
    /// Potential maximum (midgap) in eV.
    pub u_max_ev: f64,
    pub profile: PotentialProfile,
}

/// Self-energy profile of charge `q` between metal plates `gap_nm` apart,
/// with walls at both plates. On an odd grid the right half is mirrored from
/// the left so the profile is exactly symmetric.
pub fn two_plate_profile(gap_nm: f64, q: f64, points: usize, tol: f64) -> Result<PotentialProfile> {
    if !(gap_nm > 0.0) || !gap_nm.is_finite() {
        return Err(Error::InvalidParameter(format!("gap must be positive, got {gap_nm}")));
    }
    if points < 3 {
        return Err(Error::InvalidProfile(format!("need at least 3 points, got {points}")));
    }
    let stack = DielectricStack::double_metal(gap_nm)?;
    let h = gap_nm / (points - 1) as f64;
    let grid_nm: Vec<f64> = (0..points).map(|i| i as f64 * h).collect();
    let mut u = vec![0.0; points];
    if q != 0.0 {
        let half = if points % 2 == 1 { points / 2 } else { points - 2 };
        for i in 1..=half {
            let z = stack.clamp_to_guard(grid_nm[i]);
            u[i] = 0.5 * q * potential_slab_series(&stack, z, q, tol)?.v / HARTREE_EV;
        }
        if points % 2 == 1 {
            for i in half + 1..points - 1 {
                u[i] = u[points - 1 - i];
            }
        }
        u[0] = u[1];
        u[points - 1] = u[points - 2];
    }
    let grid = grid_nm.iter().map(|&z| nm_to_bohr(z)).collect();
    PotentialProfile::new(grid, u, DomainKind::Interval)
}

/// Lowest `n_states` states between two metal plates.
pub fn two_plate_spectrum(gap_nm: f64, n_states: usize, q: f64, m_eff: f64, points: usize) -> Result<TwoPlateSpectrum> {
    let profile = two_plate_profile(gap_nm, q, points, DEFAULT_TOL)?;
    let states = solve_eigenstates(&profile, m_eff, n_states)?;
    Ok(TwoPlateSpectrum { gap_nm, states, u_max_ev: hartree_to_ev(profile.u_max()), profile })
}

/// Energy of one state against the gap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyCurve {
    pub gaps_nm: Vec<f64>,
    pub energies_ev: Vec<f64>,
}

/// Force against the gap, N (positive pushes the plates apart).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForceCurve {
    pub gaps_nm: Vec<f64>,
    pub force_n: Vec<f64>,
}

/// Energy of state `state_index` between metal plates at each gap.
pub fn energy_vs_gap(gaps_nm: &[f64], state_index: usize, q: f64, m_eff: f64, points: usize) -> Result<EnergyCurve> {
    if gaps_nm.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter("gaps must be strictly increasing".into()));
    }
    let energies_ev = gaps_nm
        .par_iter()
        .map(|&d| Ok(two_plate_spectrum(d, state_index + 1, q, m_eff, points)?.states[state_index].energy_ev()))
        .collect::<Result<Vec<_>>>()?;
    Ok(EnergyCurve { gaps_nm: gaps_nm.to_vec(), energies_ev })
}

/// Second-order derivative dy/dx on a possibly non-uniform grid: central
/// three-point formula inside, one-sided three-point formulas at the ends.
pub fn derivative(x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    let n = x.len();
    if n < 3 || y.len() != n || x.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Differentiation(n));
    }
    let three = |i: usize, at: usize| {
        let (x0, x1, x2) = (x[i], x[i + 1], x[i + 2]);
        let t = x[at];
        let w0 = (2.0 * t - x1 - x2) / ((x0 - x1) * (x0 - x2));
        let w1 = (2.0 * t - x0 - x2) / ((x1 - x0) * (x1 - x2));
        let w2 = (2.0 * t - x0 - x1) / ((x2 - x0) * (x2 - x1));
        w0 * y[i] + w1 * y[i + 1] + w2 * y[i + 2]
    };
    Ok((0..n)
        .map(|k| match k {
            0 => three(0, 0),
            k if k == n - 1 => three(n - 3, n - 1),
            k => three(k - 1, k),
        })
        .collect())
}

/// `F = −dE/dD`, converted from eV/nm to N.
pub fn force_from_energy(curve: &EnergyCurve) -> Result<ForceCurve> {
    let d = derivative(&curve.gaps_nm, &curve.energies_ev)?;
    Ok(ForceCurve { gaps_nm: curve.gaps_nm.clone(), force_n: d.iter().map(|v| ev_per_nm_to_newton(-v)).collect() })
}

/// Indices `i` where the step from `i` to `i + 1` exceeds five times the
/// larger neighbouring secant slope times the step. The first and last
/// steps have a single neighbour and are not judged.
pub fn continuity_violations(curve: &EnergyCurve) -> Vec<usize> {
    let (x, y) = (&curve.gaps_nm, &curve.energies_ev);
    let slope = |i: usize| ((y[i + 1] - y[i]) / (x[i + 1] - x[i])).abs();
    (1..x.len().saturating_sub(2))
        .filter(|&i| {
            let local = slope(i - 1).max(slope(i + 1));
            (y[i + 1] - y[i]).abs() > 5.0 * local * (x[i + 1] - x[i])
        })
        .collect()
}

/// `⟨U_pp⟩ = ∫|ψ|²·U_pp dz` (eV) for a state on a grid spanning the gap.
pub fn averaged_plate_plate(gap_nm: f64, state: &Eigenstate, q: f64, tol: f64) -> Result<f64> {
    let stack = DielectricStack::double_metal(gap_nm)?;
    let n = state.grid.len();
    let (start, end) = (state.grid[0], state.grid[n - 1]);
    let width = nm_to_bohr(gap_nm);
    if start.abs() > 1e-9 * width || (end - width).abs() > 1e-9 * width || state.psi.len() != n {
        return Err(Error::GridMismatch(format!(
            "grid spans [{start}, {end}] Bohr but the gap is [0, {width}] Bohr"
        )));
    }
    let h = state.step();
    let mut sum = 0.0;
    for i in 1..n - 1 {
        let rho = state.psi[i] * state.psi[i];
        if rho == 0.0 {
            continue;
        }
        let z = stack.clamp_to_guard(gap_nm * i as f64 / (n - 1) as f64);
        sum += rho * plate_plate_energy(&stack, z, q, tol)?;
    }
    Ok(h * sum)
}

/// Casimir force between ideal plates, N (negative: attractive).
pub fn casimir_force(area_m2: f64, gap_nm: f64) -> f64 {
    let d = gap_nm * 1e-9;
    -HBAR * SPEED_OF_LIGHT * PI * PI * area_m2 / (240.0 * d.powi(4))
}

/// Van der Waals pressure between half-spaces, `−H/(6πD³)` in N/m².
pub fn vdw_pressure(hamaker_j: f64, gap_nm: f64) -> f64 {
    let d = gap_nm * 1e-9;
    -hamaker_j / (6.0 * PI * d.powi(3))
}

/// Van der Waals force on plates of `area_m2`, N.
pub fn vdw_force(hamaker_j: f64, gap_nm: f64, area_m2: f64) -> f64 {
    area_m2 * vdw_pressure(hamaker_j, gap_nm)
}

/// Parameters of the charged two-plate system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlateSystem {
    pub n_electrons: u64,
    pub area_m2: f64,
    pub hamaker_j: f64,
    /// All carriers occupy this state (no exclusion principle).
    pub state_index: usize,
    /// Carrier charge in units of e.
    pub charge: f64,
    /// Carrier mass in electron masses.
    pub mass_ratio: f64,
    pub points: usize,
    pub tol: f64,
}

impl PlateSystem {
    pub fn new(n_electrons: u64, area_m2: f64, hamaker_j: f64) -> Result<Self> {
        let s = Self {
            n_electrons,
            area_m2,
            hamaker_j,
            state_index: 0,
            charge: -1.0,
            mass_ratio: 1.0,
            points: DEFAULT_POINTS,
            tol: DEFAULT_TOL,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let mut bad = Vec::new();
        if !(self.area_m2 > 0.0) || !self.area_m2.is_finite() {
            bad.push(format!("area must be positive, got {}", self.area_m2));
        }
        if !(self.hamaker_j >= 0.0) || !self.hamaker_j.is_finite() {
            bad.push(format!("Hamaker constant must be non-negative, got {}", self.hamaker_j));
        }
        if !(self.mass_ratio > 0.0) {
            bad.push(format!("carrier mass must be positive, got {}", self.mass_ratio));
        }
        if !self.charge.is_finite() {
            bad.push("charge must be finite".into());
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(bad.join("; ")))
        }
    }
}

/// Force components on the plates at one gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ForceBreakdown {
    pub gap_nm: f64,
    pub e_binding: f64,
    pub u_plate_plate: f64,
    pub f_binding: f64,
    pub f_plate_plate: f64,
    pub f_casimir: f64,
    pub f_vdw: f64,
    pub f_total: f64,
    pub n_electrons: u64,
    pub area: f64,
    pub hamaker: f64,
}

/// State energy and averaged plate–plate energy (both eV) at one gap.
fn electronic_energies(system: &PlateSystem, gap_nm: f64) -> Result<(f64, f64)> {
    let spec = two_plate_spectrum(gap_nm, system.state_index + 1, system.charge, system.mass_ratio, system.points)?;
    let state = &spec.states[system.state_index];
    let upp = if system.charge == 0.0 { 0.0 } else { averaged_plate_plate(gap_nm, state, system.charge, system.tol)? };
    Ok((state.energy_ev(), upp))
}

/// `F_total = N²·F_pp + N·F_binding + F_Casimir + F_vdW`, with the electronic
/// forces from central differences over a relative step [`FORCE_STEP`].
pub fn total_force(system: &PlateSystem, gap_nm: f64) -> Result<ForceBreakdown> {
    system.validate()?;
    if !(gap_nm > 0.0) {
        return Err(Error::InvalidParameter(format!("gap must be positive, got {gap_nm}")));
    }
    let delta = FORCE_STEP * gap_nm;
    let (e, upp) = electronic_energies(system, gap_nm)?;
    let (f_binding, f_plate_plate) = if system.n_electrons == 0 {
        (0.0, 0.0)
    } else {
        let (e_lo, u_lo) = electronic_energies(system, gap_nm - delta)?;
        let (e_hi, u_hi) = electronic_energies(system, gap_nm + delta)?;
        (
            ev_per_nm_to_newton(-(e_hi - e_lo) / (2.0 * delta)),
            ev_per_nm_to_newton(-(u_hi - u_lo) / (2.0 * delta)),
        )
    };
    let n = system.n_electrons as f64;
    let f_casimir = casimir_force(system.area_m2, gap_nm);
    let f_vdw = vdw_force(system.hamaker_j, gap_nm, system.area_m2);
    Ok(ForceBreakdown {
        gap_nm,
        e_binding: e,
        u_plate_plate: upp,
        f_binding,
        f_plate_plate,
        f_casimir,
        f_vdw,
        f_total: n * n * f_plate_plate + n * f_binding + f_casimir + f_vdw,
        n_electrons: system.n_electrons,
        area: system.area_m2,
        hamaker: system.hamaker_j,
    })
}

/// One point of a levitation curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevitationPoint {
    pub breakdown: ForceBreakdown,
    /// `F_total / g`, kg. Negative when the plates attract.
    pub mass_kg: f64,
    pub repulsive: bool,
    /// Whether the equilibrium restores (dF/dD < 0); `None` without neighbours.
    pub stable: Option<bool>,
}

/// Plate mass balanced by the total force at each gap. Rows fail
/// individually; attractive rows are flagged through `repulsive`.
pub fn levitation_curve(system: &PlateSystem, gaps_nm: &[f64]) -> Result<Vec<Result<LevitationPoint>>> {
    system.validate()?;
    if gaps_nm.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter("gaps must be strictly increasing".into()));
    }
    let rows: Vec<Result<ForceBreakdown>> = gaps_nm.par_iter().map(|&d| total_force(system, d)).collect();
    let force = |i: usize| rows.get(i).and_then(|r| r.as_ref().ok()).map(|b| (b.gap_nm, b.f_total));
    Ok((0..rows.len())
        .map(|i| {
            let b = rows[i].clone()?;
            let prev = i.checked_sub(1).and_then(force);
            let next = force(i + 1);
            let slope = match (prev, next) {
                (Some(p), Some(n)) => Some((n.1 - p.1) / (n.0 - p.0)),
                (Some(p), None) => Some((b.f_total - p.1) / (b.gap_nm - p.0)),
                (None, Some(n)) => Some((n.1 - b.f_total) / (n.0 - b.gap_nm)),
                (None, None) => None,
            };
            Ok(LevitationPoint {
                breakdown: b,
                mass_kg: b.f_total / STANDARD_GRAVITY,
                repulsive: b.f_total > 0.0,
                stable: slope.map(|s| s < 0.0),
            })
        })
        .collect())
}

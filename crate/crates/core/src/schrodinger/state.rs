use serde::Serialize;

use crate::units::{bohr_to_nm, hartree_to_ev};

use super::profile::PotentialProfile;

/// Relative amplitude below which samples are ignored when counting nodes.
pub const NODE_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StateKind {
    /// Below the barrier maximum of the profile.
    Bound,
    /// At or above it.
    Box,
}

/// One stationary state on a profile grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eigenstate {
    /// Hartree.
    pub energy: f64,
    /// L²-normalised amplitudes, Bohr^(-1/2).
    pub psi: Vec<f64>,
    /// Grid positions in Bohr.
    pub grid: Vec<f64>,
    pub nodes: usize,
    pub parity: Parity,
    pub kind: StateKind,
}

impl Eigenstate {
    pub(crate) fn assemble(profile: &PotentialProfile, energy: f64, mut psi: Vec<f64>, parity: Option<Parity>) -> Self {
        normalize(profile.step(), &mut psi);
        fix_sign(&mut psi);
        let parity = match parity {
            Some(p) => p,
            None if profile.is_symmetric() => mirror_parity(&psi),
            None => Parity::None,
        };
        Self {
            energy,
            nodes: count_nodes(&psi),
            parity,
            kind: if energy < profile.u_max() { StateKind::Bound } else { StateKind::Box },
            psi,
            grid: profile.grid().to_vec(),
        }
    }

    pub fn energy_ev(&self) -> f64 {
        hartree_to_ev(self.energy)
    }

    /// Trapezoidal ∫|ψ|² dz.
    pub fn norm(&self) -> f64 {
        trapezoid(self.step(), self.psi.iter().map(|p| p * p))
    }

    /// Trapezoidal ∫ψ·φ dz with another state on the same grid.
    pub fn overlap(&self, other: &Eigenstate) -> f64 {
        trapezoid(self.step(), self.psi.iter().zip(&other.psi).map(|(a, b)| a * b))
    }

    pub fn step(&self) -> f64 {
        (self.grid[self.grid.len() - 1] - self.grid[0]) / (self.grid.len() - 1) as f64
    }
}

pub(crate) fn trapezoid(h: f64, values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut first = None;
    let mut last = 0.0;
    for v in values {
        if first.is_none() {
            first = Some(v);
        }
        sum += v;
        last = v;
    }
    h * (sum - 0.5 * (first.unwrap_or(0.0) + last))
}

pub(crate) fn normalize(h: f64, psi: &mut [f64]) {
    let norm = trapezoid(h, psi.iter().map(|p| p * p)).sqrt();
    if norm > 0.0 {
        psi.iter_mut().for_each(|p| *p /= norm);
    }
}

/// Makes the first appreciable lobe positive.
pub(crate) fn fix_sign(psi: &mut [f64]) {
    let max = psi.iter().fold(0.0_f64, |m, p| m.max(p.abs()));
    if let Some(first) = psi.iter().find(|p| p.abs() > 1e-3 * max) {
        if *first < 0.0 {
            psi.iter_mut().for_each(|p| *p = -*p);
        }
    }
}

pub(crate) fn count_nodes(psi: &[f64]) -> usize {
    let max = psi.iter().fold(0.0_f64, |m, p| m.max(p.abs()));
    let floor = NODE_THRESHOLD * max;
    let mut nodes = 0;
    let mut last_sign = 0.0;
    for &p in psi {
        if p.abs() <= floor {
            continue;
        }
        let s = p.signum();
        if last_sign != 0.0 && s != last_sign {
            nodes += 1;
        }
        last_sign = s;
    }
    nodes
}

pub(crate) fn mirror_parity(psi: &[f64]) -> Parity {
    let n = psi.len();
    let norm: f64 = psi.iter().map(|p| p * p).sum();
    let s: f64 = (0..n).map(|i| psi[i] * psi[n - 1 - i]).sum::<f64>() / norm;
    if s > 0.5 {
        Parity::Even
    } else if s < -0.5 {
        Parity::Odd
    } else {
        Parity::None
    }
}

/// Position of maximum probability density in nm, refined by a parabola
/// through the discrete maximum and its neighbours.
pub fn bohr_radius_numeric(state: &Eigenstate) -> f64 {
    let rho: Vec<f64> = state.psi.iter().map(|p| p * p).collect();
    let (k, _) = rho
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) });
    let z = if k == 0 || k + 1 >= rho.len() {
        state.grid[k]
    } else {
        let (l, c, r) = (rho[k - 1], rho[k], rho[k + 1]);
        let denom = l - 2.0 * c + r;
        let shift = if denom < 0.0 { 0.5 * (l - r) / denom } else { 0.0 };
        state.grid[k] + shift.clamp(-0.5, 0.5) * state.step()
    };
    bohr_to_nm(z)
}

use serde::Serialize;

use crate::units::{nm_to_bohr, HARTREE_EV};
use crate::{Error, Result};

/// Default number of grid points for eigenvalue problems.
pub const DEFAULT_POINTS: usize = 4001;

/// Which ends of the grid are physical walls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DomainKind {
    /// Hard wall at the first grid point, truncated open end at the last.
    HalfLineLeftWall,
    /// Truncated open end at the first grid point, hard wall at the last.
    HalfLineRightWall,
    /// Hard walls at both ends.
    Interval,
}

/// Potential energy sampled on a uniform grid, in atomic units.
///
/// `u` already contains the ½ factor of the self-energy. Both end points carry
/// Dirichlet conditions (a hard wall, or the truncation radius of an open end),
/// so their `u` values only need to be finite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialProfile {
    grid: Vec<f64>,
    u: Vec<f64>,
    domain_kind: DomainKind,
}

impl PotentialProfile {
    /// `grid` in Bohr, `u` in Hartree.
    pub fn new(grid: Vec<f64>, u: Vec<f64>, domain_kind: DomainKind) -> Result<Self> {
        if grid.len() != u.len() {
            return Err(Error::InvalidProfile(format!(
                "grid has {} points but u has {}",
                grid.len(),
                u.len()
            )));
        }
        if grid.len() < 3 {
            return Err(Error::InvalidProfile(format!("need at least 3 points, got {}", grid.len())));
        }
        if let Some(i) = u.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidProfile(format!("u is not finite at index {i}")));
        }
        if grid.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidProfile("grid contains non-finite positions".into()));
        }
        let n = grid.len();
        let h = (grid[n - 1] - grid[0]) / (n - 1) as f64;
        if !(h > 0.0) {
            return Err(Error::InvalidProfile("grid must be strictly increasing".into()));
        }
        for (i, w) in grid.windows(2).enumerate() {
            let step = w[1] - w[0];
            if !(step > 0.0) {
                return Err(Error::InvalidProfile(format!("grid is not strictly increasing at index {i}")));
            }
            if (step - h).abs() > 1e-8 * h {
                return Err(Error::InvalidProfile(format!("grid is not uniform at index {i}")));
            }
        }
        Ok(Self { grid, u, domain_kind })
    }

    /// Uniform grid of `points` nodes on `[start, start + length]` (Bohr) with
    /// `u = f(z)` in Hartree at the interior nodes. The end nodes copy their
    /// neighbours so that a singular `f` is never evaluated on a wall.
    pub fn from_fn<F>(start: f64, length: f64, points: usize, domain_kind: DomainKind, mut f: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        if points < 3 {
            return Err(Error::InvalidProfile(format!("need at least 3 points, got {points}")));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidProfile(format!("length must be positive, got {length}")));
        }
        let h = length / (points - 1) as f64;
        let grid: Vec<f64> = (0..points).map(|i| start + i as f64 * h).collect();
        let mut u = vec![0.0; points];
        for i in 1..points - 1 {
            u[i] = f(grid[i])?;
        }
        u[0] = u[1];
        u[points - 1] = u[points - 2];
        Self::new(grid, u, domain_kind)
    }

    /// Builds a profile from a self-potential in volts sampled on a grid in
    /// nanometres. The energy of the carrier `q` (units of e) is `q·V`; half of
    /// it enters the Schrödinger equation.
    pub fn from_self_energy(grid_nm: &[f64], v_volts: &[f64], q: f64, domain_kind: DomainKind) -> Result<Self> {
        if grid_nm.len() != v_volts.len() {
            return Err(Error::InvalidProfile(format!(
                "grid has {} points but the potential has {}",
                grid_nm.len(),
                v_volts.len()
            )));
        }
        let grid = grid_nm.iter().map(|&z| nm_to_bohr(z)).collect();
        let u = v_volts.iter().map(|&v| 0.5 * q * v / HARTREE_EV).collect();
        Self::new(grid, u, domain_kind)
    }

    /// Flat potential on an interval of `length_nm`.
    pub fn flat_box(length_nm: f64, points: usize) -> Result<Self> {
        Self::from_fn(0.0, nm_to_bohr(length_nm), points, DomainKind::Interval, |_| Ok(0.0))
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn domain_kind(&self) -> DomainKind {
        self.domain_kind
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Grid spacing in Bohr.
    pub fn step(&self) -> f64 {
        (self.grid[self.len() - 1] - self.grid[0]) / (self.len() - 1) as f64
    }

    /// Length of the domain in Bohr.
    pub fn length(&self) -> f64 {
        self.grid[self.len() - 1] - self.grid[0]
    }

    /// Largest interior potential, the Bound/Box threshold.
    pub fn u_max(&self) -> f64 {
        self.interior().iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Smallest interior potential.
    pub fn u_min(&self) -> f64 {
        self.interior().iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn interior(&self) -> &[f64] {
        &self.u[1..self.len() - 1]
    }

    /// True when the potential is mirror symmetric about a grid node.
    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        if n.is_multiple_of(2) {
            return false;
        }
        let scale = self.u.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let tol = 1e-12 * scale + f64::MIN_POSITIVE;
        (1..n / 2).all(|i| (self.u[i] - self.u[n - 1 - i]).abs() <= tol)
    }

    /// Same potential resampled with every other node dropped.
    pub fn coarsened(&self) -> Option<Self> {
        if self.len().is_multiple_of(2) || self.len() < 5 {
            return None;
        }
        let grid = self.grid.iter().step_by(2).copied().collect();
        let u = self.u.iter().step_by(2).copied().collect();
        Self::new(grid, u, self.domain_kind).ok()
    }
}

use crate::{Error, Result};

use super::profile::{DomainKind, PotentialProfile};
use super::shooting::solve_eigenstates;
use super::state::Eigenstate;

const MAX_PASSES: usize = 8;
/// Decay lengths 1/κ kept beyond the outer edge of the last requested state.
const TAIL_DECAY_LENGTHS: f64 = 25.0;

/// Profile and states of a half-line problem after truncation adjustment.
#[derive(Debug, Clone)]
pub struct HalfLineSolution {
    pub profile: PotentialProfile,
    pub states: Vec<Eigenstate>,
}

/// Solves a half-line problem with a hard wall at distance 0.
///
/// `potential` maps the distance from the wall (Bohr) to the energy in
/// Hartree and must vanish at infinity. The truncation radius starts at
/// `initial_length` and is adjusted until every bound state has decayed over
/// 25 decay lengths before the cut, without leaving more than three times the
/// needed room (which would waste resolution).
pub fn solve_half_line<F>(
    potential: F,
    m_eff: f64,
    n_states: usize,
    initial_length: f64,
    points: usize,
) -> Result<HalfLineSolution>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(initial_length > 0.0) || !initial_length.is_finite() {
        return Err(Error::InvalidParameter(format!("truncation length must be positive, got {initial_length}")));
    }
    let mut length = initial_length;
    for _ in 0..MAX_PASSES {
        let profile = PotentialProfile::from_fn(0.0, length, points, DomainKind::HalfLineLeftWall, &potential)?;
        let states = solve_eigenstates(&profile, m_eff, n_states)?;
        let needed = states.iter().map(|s| needed_length(s, m_eff, length)).fold(0.0, f64::max);
        if needed <= length && needed >= length / 3.0 {
            return Ok(HalfLineSolution { profile, states });
        }
        length = 1.2 * needed;
    }
    Err(Error::Search(format!(
        "half-line truncation did not settle after {MAX_PASSES} passes (last length {length:.4e} Bohr)"
    )))
}

fn needed_length(state: &Eigenstate, m_eff: f64, current: f64) -> f64 {
    if state.energy >= 0.0 {
        return 4.0 * current;
    }
    let max = state.psi.iter().fold(0.0_f64, |m, p| m.max(p.abs()));
    let edge = state.psi.iter().rposition(|p| p.abs() > 1e-2 * max).unwrap_or(0);
    let kappa = (2.0 * m_eff * -state.energy).sqrt();
    state.grid[edge] + TAIL_DECAY_LENGTHS / kappa
}

//! Numerov shooting with Sturm-count bracketing.
//!
//! The Numerov recurrence `w[i+1] = (2 − g[i])·w[i] − w[i−1]`, with
//! `g = h²f/(1 + h²f/12)` and `f = 2m(E − U)`, is the three-term recurrence of
//! the symmetric tridiagonal matrix `T(E) = tridiag(−1, 2 − g, −1)`. Since `g`
//! increases with `E`, the number of negative pivots of `T(E)` counts the
//! discrete eigenvalues below `E`. Within an isolating bracket each level is
//! refined by bisection on the sign of the Casoratian between the solutions
//! integrated from the two ends.
//!
//! At a hard wall ψ vanishes but `U·ψ` need not: for `U ≈ C/d` it tends to
//! `C·ψ'(0)`. The wall value of `w` is set from that limit, with `C`
//! extrapolated from the first two nodes, which keeps the scheme fourth order
//! for image potentials.

use std::cmp::Ordering;
use std::f64::consts::PI;

use crate::{Error, Result};

use super::profile::PotentialProfile;
use super::state::{Eigenstate, Parity};

/// Splitting below which an even/odd pair is treated as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

const RESCALE: f64 = 1e100;
const MAX_EXPANSIONS: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum End {
    /// The last node carries ψ = 0.
    Wall,
    /// The last node is a mirror plane with ψ' = 0.
    Mirror,
}

struct Segment<'a> {
    u: &'a [f64],
    end: End,
    h2m: f64,
    h: f64,
    /// Extrapolated `lim d·U(d)` at the left wall and (for `End::Wall`) the right one.
    left_c: f64,
    right_c: f64,
}

impl<'a> Segment<'a> {
    fn new(u: &'a [f64], end: End, h: f64, m_eff: f64, right_singular: bool) -> Self {
        let n = u.len();
        let left_c = 2.0 * h * (u[1] - u[2]);
        let right_c = if right_singular { 2.0 * h * (u[n - 2] - u[n - 3]) } else { 0.0 };
        Self { u, end, h2m: h * h * 2.0 * m_eff, h, left_c, right_c }
    }

    /// Ratio `w_wall / w_next` implied by the wall limit of `U·ψ`.
    fn wall_ratio(&self, c: f64, next: usize, e: f64) -> f64 {
        -(self.h2m / 12.0) * (c / self.h) / self.weight(next, e)
    }

    fn last(&self) -> usize {
        self.u.len() - 1
    }

    fn rows(&self) -> usize {
        match self.end {
            End::Wall => self.last() - 1,
            End::Mirror => self.last(),
        }
    }

    fn g(&self, i: usize, e: f64) -> Result<f64> {
        let x = self.h2m * (e - self.u[i]);
        let d = 1.0 + x / 12.0;
        if d <= 0.0 {
            return Err(Error::GridTooCoarse(format!(
                "Numerov weight 1 + h²f/12 = {d:.3e} at node {i} (E = {e:.6e} Ha)"
            )));
        }
        Ok(x / d)
    }

    fn diag(&self, i: usize, e: f64) -> Result<f64> {
        let g = self.g(i, e)?;
        let r = self.last();
        let mut d = if self.end == End::Mirror && i == r { 1.0 - 0.5 * g } else { 2.0 - g };
        if i == 1 {
            d -= self.wall_ratio(self.left_c, 1, e);
        }
        if self.end == End::Wall && i == r - 1 {
            d -= self.wall_ratio(self.right_c, r - 1, e);
        }
        Ok(d)
    }

    /// Number of discrete levels below `e`.
    fn count(&self, e: f64) -> Result<usize> {
        let mut count = 0;
        let mut prev = 0.0;
        for i in 1..=self.rows() {
            let mut d = self.diag(i, e)?;
            if i > 1 {
                d -= 1.0 / prev;
            }
            if d == 0.0 {
                d = f64::EPSILON;
            }
            if d < 0.0 {
                count += 1;
            }
            prev = d;
        }
        Ok(count)
    }

    /// Numerov weights `1 + h²f/12` used to convert w back to ψ.
    fn weight(&self, i: usize, e: f64) -> f64 {
        1.0 + self.h2m * (e - self.u[i]) / 12.0
    }

    /// Left solution on nodes 0..=m+1.
    fn shoot_left(&self, e: f64, m: usize) -> Result<Vec<f64>> {
        let mut w = vec![0.0; m + 2];
        w[1] = 1.0;
        w[0] = self.wall_ratio(self.left_c, 1, e);
        for i in 1..=m {
            w[i + 1] = (2.0 - self.g(i, e)?) * w[i] - w[i - 1];
            if w[i + 1].abs() > RESCALE {
                w[..=i + 1].iter_mut().for_each(|v| *v /= RESCALE);
            }
        }
        Ok(w)
    }

    /// Right solution on nodes m..=last, stored from index m.
    fn shoot_right(&self, e: f64, m: usize) -> Result<Vec<f64>> {
        let r = self.last();
        let mut w = vec![0.0; r - m + 1];
        let at = |i: usize| i - m;
        match self.end {
            End::Wall => {
                w[at(r - 1)] = 1.0;
                w[at(r)] = self.wall_ratio(self.right_c, r - 1, e);
            }
            End::Mirror => {
                w[at(r)] = 1.0;
                w[at(r - 1)] = self.diag(r, e)?;
            }
        }
        for i in (m + 1..r).rev() {
            w[at(i - 1)] = (2.0 - self.g(i, e)?) * w[at(i)] - w[at(i + 1)];
            if w[at(i - 1)].abs() > RESCALE {
                w[at(i - 1)..].iter_mut().for_each(|v| *v /= RESCALE);
            }
        }
        Ok(w)
    }

    /// Sign-faithful Casoratian of the two solutions at node `m`.
    fn mismatch(&self, e: f64, m: usize) -> Result<f64> {
        let l = self.shoot_left(e, m)?;
        let r = self.shoot_right(e, m)?;
        let (l0, l1) = (l[m], l[m + 1]);
        let (r0, r1) = (r[0], r[1]);
        let sl = l0.abs().max(l1.abs());
        let sr = r0.abs().max(r1.abs());
        if sl == 0.0 || sr == 0.0 {
            return Ok(0.0);
        }
        Ok((l0 / sl) * (r1 / sr) - (l1 / sl) * (r0 / sr))
    }

    /// Rightmost classically allowed node, clamped to a valid match point.
    fn match_point(&self, e: f64) -> usize {
        let r = self.last();
        let turning = (1..r).rev().find(|&i| self.u[i] < e).unwrap_or(r / 2);
        turning.clamp(1, r - 1)
    }

    /// ψ on nodes 0..=last for a converged level.
    fn wavefunction(&self, e: f64, m: usize) -> Result<Vec<f64>> {
        let mut w = self.shoot_left(e, m)?;
        let right = self.shoot_right(e, m)?;
        let (lm, rm) = if right[0].abs() >= right[1].abs() * 1e-3 {
            (w[m], right[0])
        } else {
            (w[m + 1], right[1])
        };
        let scale = if rm == 0.0 { 0.0 } else { lm / rm };
        w.truncate(m);
        w.extend(right.iter().map(|v| v * scale));
        let r = self.last();
        Ok(w.iter()
            .enumerate()
            .map(|(i, v)| if i == 0 || (i == r && self.end == End::Wall) { 0.0 } else { v / self.weight(i, e) })
            .collect())
    }
}

/// Sorted (energy, count) samples of the Sturm count.
struct Samples(Vec<(f64, usize)>);

impl Samples {
    fn insert(&mut self, e: f64, c: usize) -> Result<()> {
        let pos = self.0.partition_point(|s| s.0 < e);
        let below = pos.checked_sub(1).map(|i| self.0[i].1);
        let above = self.0.get(pos).map(|s| s.1);
        if below.is_some_and(|b| b > c) || above.is_some_and(|a| a < c) {
            return Err(Error::GridTooCoarse(format!("non-monotone level count near E = {e:.6e} Ha")));
        }
        self.0.insert(pos, (e, c));
        Ok(())
    }

    /// Tightest known bracket with count(lo) ≤ k < count(hi).
    fn bracket(&self, k: usize) -> (f64, usize, f64, usize) {
        let lo = self.0.iter().rev().find(|s| s.1 <= k).copied().unwrap_or(self.0[0]);
        let hi = self.0.iter().find(|s| s.1 > k).copied().unwrap_or(self.0[self.0.len() - 1]);
        (lo.0, lo.1, hi.0, hi.1)
    }
}

fn converged(lo: f64, hi: f64) -> bool {
    let mid = 0.5 * (lo + hi);
    mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs())
}

/// Lowest `wanted` levels of a segment, together with their wavefunctions.
fn segment_levels(seg: &Segment, wanted: usize, length: f64, m_eff: f64) -> Result<Vec<(f64, Vec<f64>)>> {
    let interior = &seg.u[1..seg.u.len() - 1];
    let u_min = interior.iter().copied().fold(f64::INFINITY, f64::min);
    let u_max = interior.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let quantum = PI * PI / (2.0 * m_eff * length * length);

    let lo = u_min - 0.5 * u_min.abs();
    let mut samples = Samples(Vec::new());
    samples.insert(lo, seg.count(lo)?)?;
    let mut expansion = 0;
    loop {
        let hi = u_max + 50.0 * quantum * 2f64.powi(expansion as i32);
        let c = seg.count(hi)?;
        samples.insert(hi, c)?;
        if c >= wanted {
            break;
        }
        if expansion == MAX_EXPANSIONS {
            return Err(Error::Search(format!(
                "only {c} of {wanted} levels below {hi:.6e} Ha after {MAX_EXPANSIONS} window expansions"
            )));
        }
        expansion += 1;
    }

    let mut out = Vec::with_capacity(wanted);
    for k in 0..wanted {
        let (mut lo, mut clo, mut hi, mut chi) = samples.bracket(k);
        while !(clo == k && chi == k + 1) {
            if converged(lo, hi) {
                return Err(Error::Search(format!(
                    "levels {clo}..{chi} coincide near {lo:.15e} Ha and cannot be separated"
                )));
            }
            let mid = 0.5 * (lo + hi);
            let c = seg.count(mid)?;
            samples.insert(mid, c)?;
            if c <= k {
                lo = mid;
                clo = c;
            } else {
                hi = mid;
                chi = c;
            }
        }

        let m = seg.match_point(0.5 * (lo + hi));
        let w_lo = seg.mismatch(lo, m)?;
        while !converged(lo, hi) {
            let mid = 0.5 * (lo + hi);
            let w = seg.mismatch(mid, m)?;
            if w == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if (w > 0.0) == (w_lo > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let e = 0.5 * (lo + hi);
        out.push((e, seg.wavefunction(e, m)?));
    }
    Ok(out)
}

fn check_inputs(m_eff: f64, n_states: usize) -> Result<()> {
    if !(m_eff > 0.0) || !m_eff.is_finite() {
        return Err(Error::InvalidParameter(format!("effective mass must be positive, got {m_eff}")));
    }
    if n_states == 0 {
        return Err(Error::InvalidParameter("at least one state must be requested".into()));
    }
    Ok(())
}

/// The `n_states` lowest eigenstates of `−ψ''/(2m) + Uψ = Eψ` with ψ = 0 at
/// both ends of the profile (`m_eff` in electron masses).
///
/// Mirror-symmetric profiles on an odd number of nodes are split into even
/// and odd sectors, which keeps numerically degenerate pairs apart.
pub fn solve_eigenstates(profile: &PotentialProfile, m_eff: f64, n_states: usize) -> Result<Vec<Eigenstate>> {
    check_inputs(m_eff, n_states)?;
    let h = profile.step();
    let u = profile.u();
    let n = u.len();
    let length = profile.length();

    if profile.is_symmetric() && n >= 7 {
        let mid = n / 2;
        let half = &u[..=mid];
        let mut levels = Vec::new();
        for (end, parity) in [(End::Mirror, Parity::Even), (End::Wall, Parity::Odd)] {
            let seg = Segment::new(half, end, h, m_eff, false);
            let wanted = n_states.min(seg.rows());
            for (e, w) in segment_levels(&seg, wanted, length, m_eff)? {
                levels.push((e, parity, w));
            }
        }
        levels.sort_by(|a, b| {
            if (a.0 - b.0).abs() < DEGENERACY_TOL {
                let rank = |p: Parity| if p == Parity::Even { 0 } else { 1 };
                rank(a.1).cmp(&rank(b.1))
            } else {
                a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal)
            }
        });
        if levels.len() < n_states {
            return Err(Error::Search(format!("only {} levels exist on this grid", levels.len())));
        }
        levels.truncate(n_states);
        return Ok(levels
            .into_iter()
            .map(|(e, parity, half_psi)| {
                let sign = if parity == Parity::Even { 1.0 } else { -1.0 };
                let mut psi = half_psi;
                psi[mid] *= if parity == Parity::Odd { 0.0 } else { 1.0 };
                for i in (0..mid).rev() {
                    psi.push(sign * psi[i]);
                }
                Eigenstate::assemble(profile, e, psi, Some(parity))
            })
            .collect());
    }

    let seg = Segment::new(u, End::Wall, h, m_eff, true);
    if seg.rows() < n_states {
        return Err(Error::Search(format!("only {} levels exist on this grid", seg.rows())));
    }
    Ok(segment_levels(&seg, n_states, length, m_eff)?
        .into_iter()
        .map(|(e, psi)| Eigenstate::assemble(profile, e, psi, None))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schrodinger::profile::DomainKind;
    use crate::schrodinger::state::StateKind;

    #[test]
    fn flat_box_levels() {
        let p = PotentialProfile::from_fn(0.0, 10.0, 2001, DomainKind::Interval, |_| Ok(0.0)).unwrap();
        let states = solve_eigenstates(&p, 1.0, 5).unwrap();
        for (k, s) in states.iter().enumerate() {
            let n = (k + 1) as f64;
            let exact = n * n * PI * PI / 200.0;
            assert!((s.energy - exact).abs() < 1e-8 * exact, "{k}: {} vs {exact}", s.energy);
            assert_eq!(s.nodes, k);
            assert_eq!(s.kind, StateKind::Box);
            assert!((s.norm() - 1.0).abs() < 1e-10);
            let expect = if k % 2 == 0 { Parity::Even } else { Parity::Odd };
            assert_eq!(s.parity, expect);
        }
    }

    #[test]
    fn harmonic_oscillator_levels() {
        // Asymmetric placement forces the general path.
        let p = PotentialProfile::from_fn(0.0, 23.0, 3001, DomainKind::Interval, |z| Ok(0.5 * (z - 11.0).powi(2)))
            .unwrap();
        assert!(!p.is_symmetric());
        let states = solve_eigenstates(&p, 1.0, 4).unwrap();
        for (k, s) in states.iter().enumerate() {
            assert!((s.energy - (k as f64 + 0.5)).abs() < 1e-8, "{k}: {}", s.energy);
            assert_eq!(s.nodes, k);
            assert_eq!(s.kind, StateKind::Bound);
        }
        for i in 0..4 {
            for j in 0..i {
                assert!(states[i].overlap(&states[j]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn hydrogenic_half_line() {
        let p = PotentialProfile::from_fn(0.0, 200.0, 8001, DomainKind::HalfLineLeftWall, |z| Ok(-1.0 / z)).unwrap();
        let states = solve_eigenstates(&p, 1.0, 3).unwrap();
        for (k, s) in states.iter().enumerate() {
            let n = (k + 1) as f64;
            assert!((s.energy + 0.5 / (n * n)).abs() < 1e-5, "{k}: {}", s.energy);
            assert_eq!(s.nodes, k);
        }
    }

    #[test]
    fn deep_double_well_pairs() {
        let p = PotentialProfile::from_fn(-12.0, 24.0, 4001, DomainKind::Interval, |z| {
            Ok(0.05 * (z * z - 36.0).powi(2) / 36.0)
        })
        .unwrap();
        assert!(p.is_symmetric());
        let s = solve_eigenstates(&p, 5.0, 4).unwrap();
        assert_eq!(
            s.iter().map(|s| s.parity).collect::<Vec<_>>(),
            [Parity::Even, Parity::Odd, Parity::Even, Parity::Odd]
        );
        assert!(s[0].energy <= s[1].energy);
        assert!(s[1].energy - s[0].energy < 1e-6);
        assert!(s.iter().enumerate().all(|(k, s)| s.nodes == k));
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = PotentialProfile::from_fn(0.0, 1.0, 11, DomainKind::Interval, |_| Ok(0.0)).unwrap();
        assert!(solve_eigenstates(&p, 0.0, 1).is_err());
        assert!(solve_eigenstates(&p, 1.0, 0).is_err());
        assert!(matches!(solve_eigenstates(&p, 1.0, 50), Err(Error::Search(_))));
    }

    #[test]
    fn coarse_grid_is_reported() {
        let p = PotentialProfile::from_fn(0.0, 100.0, 11, DomainKind::Interval, |z| Ok(if z > 50.0 { 1e3 } else { 0.0 }))
            .unwrap();
        assert!(matches!(solve_eigenstates(&p, 1.0, 1), Err(Error::GridTooCoarse(_))));
    }
}

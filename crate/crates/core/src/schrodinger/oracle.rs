//! Second-order finite-difference diagonalization, used to cross-check the
//! shooting solver.

use crate::{Error, Result};

use super::profile::PotentialProfile;
use super::shooting::DEGENERACY_TOL;
use super::state::{mirror_parity, normalize, Eigenstate, Parity};

/// Smallest grid the oracle accepts.
pub const ORACLE_MIN_POINTS: usize = 50;

/// Tridiagonal Hamiltonian on the interior nodes.
struct Hamiltonian {
    diag: Vec<f64>,
    off: f64,
}

impl Hamiltonian {
    fn new(profile: &PotentialProfile, m_eff: f64) -> Self {
        let h = profile.step();
        let t = 1.0 / (2.0 * m_eff * h * h);
        let u = profile.u();
        Self { diag: u[1..u.len() - 1].iter().map(|v| v + 2.0 * t).collect(), off: -t }
    }

    fn count_below(&self, lambda: f64) -> usize {
        let off2 = self.off * self.off;
        let mut count = 0;
        let mut d = 1.0;
        for (i, &a) in self.diag.iter().enumerate() {
            d = if i == 0 { a - lambda } else { a - lambda - off2 / d };
            if d == 0.0 {
                d = -f64::EPSILON * self.off.abs();
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn eigenvalue(&self, k: usize) -> f64 {
        let r = 2.0 * self.off.abs();
        let mut lo = self.diag.iter().copied().fold(f64::INFINITY, f64::min) - r;
        let mut hi = self.diag.iter().copied().fold(f64::NEG_INFINITY, f64::max) + r;
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return mid;
            }
            if self.count_below(mid) <= k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    /// Inverse iteration at a converged eigenvalue, orthogonalised against
    /// the vectors of nearby levels.
    fn eigenvector(&self, lambda: f64, nearby: &[&Vec<f64>]) -> Vec<f64> {
        let n = self.diag.len();
        let scale = lambda.abs().max(self.off.abs());
        let shift = lambda + 1e3 * f64::EPSILON * scale;
        let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * (0.7 * i as f64 + 0.3).sin()).collect();
        for _ in 0..3 {
            let diag: Vec<f64> = self.diag.iter().map(|a| a - shift).collect();
            let off = vec![self.off; n - 1];
            solve_tridiagonal(&off, &diag, &off, &mut x);
            for v in nearby {
                let p: f64 = x.iter().zip(v.iter()).map(|(a, b)| a * b).sum::<f64>()
                    / v.iter().map(|b| b * b).sum::<f64>();
                x.iter_mut().zip(v.iter()).for_each(|(a, b)| *a -= p * b);
            }
            let norm = x.iter().map(|a| a * a).sum::<f64>().sqrt();
            x.iter_mut().for_each(|a| *a /= norm);
        }
        x
    }
}

/// Gaussian elimination with partial pivoting for a tridiagonal system.
/// Zero pivots are replaced by a tiny value, as inverse iteration wants.
fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], b: &mut [f64]) {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut du = sup.to_vec();
    let mut dl = sub.to_vec();
    let tiny = f64::EPSILON * diag.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    for i in 0..n - 1 {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                d[i] = tiny;
            }
            let fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
            if i + 2 < n {
                du2[i] = 0.0;
            }
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            let temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            du[i] = temp;
            let tb = b[i];
            b[i] = b[i + 1];
            b[i + 1] = tb - fact * b[i + 1];
        }
        dl[i] = 0.0;
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    b[n - 1] /= d[n - 1];
    if n > 1 {
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
}

/// Lowest `n_states` eigenpairs of the central-difference Hamiltonian
/// `−(ψ[i+1] − 2ψ[i] + ψ[i−1])/(2mh²) + U[i]ψ[i]` with ψ = 0 at both ends.
pub fn diagonalization_oracle(profile: &PotentialProfile, m_eff: f64, n_states: usize) -> Result<Vec<Eigenstate>> {
    if profile.len() < ORACLE_MIN_POINTS {
        return Err(Error::GridTooCoarse(format!(
            "the oracle needs at least {ORACLE_MIN_POINTS} points, got {}",
            profile.len()
        )));
    }
    if !(m_eff > 0.0) || !m_eff.is_finite() {
        return Err(Error::InvalidParameter(format!("effective mass must be positive, got {m_eff}")));
    }
    let ham = Hamiltonian::new(profile, m_eff);
    if n_states == 0 || n_states > ham.diag.len() {
        return Err(Error::InvalidParameter(format!(
            "cannot return {n_states} states from {} interior nodes",
            ham.diag.len()
        )));
    }
    let energies: Vec<f64> = (0..n_states).map(|k| ham.eigenvalue(k)).collect();
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(n_states);
    for (k, &e) in energies.iter().enumerate() {
        let tol = 1e-8 * e.abs().max(ham.off.abs());
        let nearby: Vec<&Vec<f64>> = (0..k).filter(|&j| (energies[j] - e).abs() < tol).map(|j| &vectors[j]).collect();
        let v = ham.eigenvector(e, &nearby);
        vectors.push(v);
    }

    let mut parities = vec![None; n_states];
    if profile.is_symmetric() {
        for k in 0..n_states.saturating_sub(1) {
            if energies[k + 1] - energies[k] < DEGENERACY_TOL {
                let (even, odd) = symmetrized_pair(&vectors[k], &vectors[k + 1]);
                vectors[k] = even;
                vectors[k + 1] = odd;
                parities[k] = Some(Parity::Even);
                parities[k + 1] = Some(Parity::Odd);
            }
        }
    }

    let h = profile.step();
    Ok(energies
        .into_iter()
        .zip(vectors)
        .zip(parities)
        .map(|((e, v), parity)| {
            let mut psi = Vec::with_capacity(v.len() + 2);
            psi.push(0.0);
            psi.extend(v);
            psi.push(0.0);
            normalize(h, &mut psi);
            Eigenstate::assemble(profile, e, psi, parity)
        })
        .collect())
}

/// Oracle improved by Richardson extrapolation against the grid with every
/// other node removed. Energies and wavefunctions both become fourth order;
/// the wavefunction correction is interpolated linearly onto the odd nodes.
pub fn diagonalization_oracle_extrapolated(
    profile: &PotentialProfile,
    m_eff: f64,
    n_states: usize,
) -> Result<Vec<Eigenstate>> {
    let coarse = profile.coarsened().ok_or_else(|| {
        Error::GridTooCoarse("extrapolation needs an odd number of grid points".into())
    })?;
    let fine = diagonalization_oracle(profile, m_eff, n_states)?;
    let rough = diagonalization_oracle(&coarse, m_eff, n_states)?;
    Ok(fine
        .into_iter()
        .zip(rough)
        .map(|(mut f, r)| {
            f.energy = (4.0 * f.energy - r.energy) / 3.0;
            let sign = if f.psi.iter().step_by(2).zip(&r.psi).map(|(a, b)| a * b).sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
            let corr: Vec<f64> = f.psi.iter().step_by(2).zip(&r.psi).map(|(a, b)| (a - sign * b) / 3.0).collect();
            for (i, p) in f.psi.iter_mut().enumerate() {
                *p += if i % 2 == 0 { corr[i / 2] } else { 0.5 * (corr[i / 2] + corr[i / 2 + 1]) };
            }
            normalize(profile.step(), &mut f.psi);
            f
        })
        .collect())
}

fn symmetrized_pair(a: &[f64], b: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mirror = |v: &[f64], sign: f64| -> Vec<f64> {
        let n = v.len();
        (0..n).map(|i| v[i] + sign * v[n - 1 - i]).collect()
    };
    let pick = |sign: f64| {
        let (x, y) = (mirror(a, sign), mirror(b, sign));
        let nx: f64 = x.iter().map(|v| v * v).sum();
        let ny: f64 = y.iter().map(|v| v * v).sum();
        let mut v = if nx >= ny { x } else { y };
        let n = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        v.iter_mut().for_each(|t| *t /= n);
        v
    };
    let even = pick(1.0);
    let odd = pick(-1.0);
    debug_assert_eq!(mirror_parity(&even), Parity::Even);
    (even, odd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schrodinger::profile::DomainKind;
    use std::f64::consts::PI;

    #[test]
    fn tridiagonal_solver_matches_dense() {
        let sub = [1.0, -2.0, 0.5];
        let diag = [0.1, 3.0, -1.0, 2.0];
        let sup = [4.0, 1.0, -3.0];
        let x = [1.0, -1.0, 2.0, 0.5];
        let mut b = [
            diag[0] * x[0] + sup[0] * x[1],
            sub[0] * x[0] + diag[1] * x[1] + sup[1] * x[2],
            sub[1] * x[1] + diag[2] * x[2] + sup[2] * x[3],
            sub[2] * x[2] + diag[3] * x[3],
        ];
        solve_tridiagonal(&sub, &diag, &sup, &mut b);
        for i in 0..4 {
            assert!((b[i] - x[i]).abs() < 1e-13, "{b:?}");
        }
    }

    #[test]
    fn box_levels_have_discrete_form() {
        let n = 201;
        let p = PotentialProfile::from_fn(0.0, 1.0, n, DomainKind::Interval, |_| Ok(0.0)).unwrap();
        let states = diagonalization_oracle(&p, 1.0, 3).unwrap();
        let h = p.step();
        for (k, s) in states.iter().enumerate() {
            let exact = (1.0 - (PI * (k + 1) as f64 * h).cos()) / (h * h);
            assert!((s.energy - exact).abs() < 1e-10 * exact);
            assert_eq!(s.nodes, k);
        }
    }

    #[test]
    fn refuses_tiny_grids() {
        let p = PotentialProfile::from_fn(0.0, 1.0, 49, DomainKind::Interval, |_| Ok(0.0)).unwrap();
        assert!(matches!(diagonalization_oracle(&p, 1.0, 1), Err(Error::GridTooCoarse(_))));
    }
}

use serde::Serialize;

use crate::electrostatics::DielectricConstant;
use crate::schrodinger::{hydrogenic_bohr_radius, HydrogenicParams};
use crate::{Error, Result};

/// Number of entries in the default table, metal endpoint included.
pub const DEFAULT_TABLE_POINTS: usize = 2001;

/// Ground-state Bohr radius of an electron in vacuum facing a single wall,
/// tabulated against the wall permittivity. Ordered by increasing
/// permittivity (decreasing radius); the last entry is the metal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsilonTable {
    pub eps: Vec<DielectricConstant>,
    pub bohr_nm: Vec<f64>,
    /// Image strength `(ε − 1)/(ε + 1)`, the interpolation variable.
    strength: Vec<f64>,
}

impl EpsilonTable {
    pub fn len(&self) -> usize {
        self.eps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps.is_empty()
    }

    /// Radius range covered, smallest first.
    pub fn range(&self) -> (f64, f64) {
        (self.bohr_nm[self.len() - 1], self.bohr_nm[0])
    }
}

fn strength(eps: DielectricConstant) -> f64 {
    match eps {
        DielectricConstant::Finite(e) => (e - 1.0) / (e + 1.0),
        DielectricConstant::Metal => 1.0,
    }
}

/// Default sample permittivities: uniform in image strength from 0.005 to
/// 0.999, one less than [`DEFAULT_TABLE_POINTS`] to leave room for the metal.
pub fn default_epsilon_samples() -> Vec<f64> {
    let n = DEFAULT_TABLE_POINTS - 1;
    let (t0, t1) = (0.005, 0.999);
    (0..n)
        .map(|i| {
            let t = t0 + (t1 - t0) * i as f64 / (n - 1) as f64;
            (1.0 + t) / (1.0 - t)
        })
        .collect()
}

/// Builds the table from the closed-form radius, appending the metal endpoint.
pub fn effective_epsilon_curve(eps_samples: &[f64]) -> Result<EpsilonTable> {
    if eps_samples.is_empty() {
        return Err(Error::InvalidParameter("no permittivity samples".into()));
    }
    if eps_samples.iter().any(|&e| !(e > 1.0) || !e.is_finite()) {
        return Err(Error::InvalidParameter("sample permittivities must be finite and above 1".into()));
    }
    if eps_samples.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter("sample permittivities must be strictly increasing".into()));
    }
    let eps: Vec<DielectricConstant> = eps_samples
        .iter()
        .map(|&e| DielectricConstant::Finite(e))
        .chain(std::iter::once(DielectricConstant::Metal))
        .collect();
    let bohr_nm = eps
        .iter()
        .map(|&e| hydrogenic_bohr_radius(&HydrogenicParams::vacuum_facing(e, 1)?))
        .collect::<Result<Vec<_>>>()?;
    let strength = eps.iter().map(|&e| strength(e)).collect();
    Ok(EpsilonTable { eps, bohr_nm, strength })
}

/// Wall permittivity whose single-wall state has the given Bohr radius.
///
/// Interpolation is piecewise linear between table entries in the image
/// strength `(ε − 1)/(ε + 1)`, which is monotone in ε and finite at the metal.
pub fn effective_epsilon(bohr_nm: f64, table: &EpsilonTable) -> Result<DielectricConstant> {
    let (min, max) = table.range();
    if !(bohr_nm >= min && bohr_nm <= max) {
        return Err(Error::Extrapolation { value: bohr_nm, min, max });
    }
    let last = table.len() - 1;
    if bohr_nm == table.bohr_nm[last] {
        return Ok(table.eps[last]);
    }
    // bohr_nm decreases along the table.
    let i = table.bohr_nm.partition_point(|&b| b > bohr_nm).clamp(1, last);
    let (b0, b1) = (table.bohr_nm[i - 1], table.bohr_nm[i]);
    let (t0, t1) = (table.strength[i - 1], table.strength[i]);
    let t = t0 + (t1 - t0) * (bohr_nm - b0) / (b1 - b0);
    if t >= 1.0 {
        return Ok(DielectricConstant::Metal);
    }
    Ok(DielectricConstant::Finite((1.0 + t) / (1.0 - t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::BOHR_NM;

    #[test]
    fn default_table_shape() {
        let table = effective_epsilon_curve(&default_epsilon_samples()).unwrap();
        assert_eq!(table.len(), DEFAULT_TABLE_POINTS);
        assert!(table.bohr_nm.windows(2).all(|w| w[1] < w[0]));
        assert!((table.range().0 - 0.2117).abs() < 1e-4);
        assert_eq!(effective_epsilon(table.range().0, &table).unwrap(), DielectricConstant::Metal);
    }

    #[test]
    fn entries_are_closed_form() {
        let table = effective_epsilon_curve(&[1.5, 3.0, 10.0]).unwrap();
        assert!((table.bohr_nm[1] - 4.0 * BOHR_NM * 4.0 / 2.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_lookup_round_trips() {
        let table = effective_epsilon_curve(&default_epsilon_samples()).unwrap();
        for eps in [1.05, 1.1, 1.7, 2.78, 12.9] {
            let b = hydrogenic_bohr_radius(&HydrogenicParams::vacuum_facing(DielectricConstant::Finite(eps), 1).unwrap())
                .unwrap();
            let back = effective_epsilon(b, &table).unwrap().value();
            assert!((back - eps).abs() < 1e-4 * eps, "{eps} -> {back}");
        }
        assert!(matches!(effective_epsilon(0.1, &table), Err(Error::Extrapolation { .. })));
        assert!(matches!(effective_epsilon(1e6, &table), Err(Error::Extrapolation { .. })));
    }

    #[test]
    fn rejects_bad_samples() {
        assert!(effective_epsilon_curve(&[]).is_err());
        assert!(effective_epsilon_curve(&[1.0, 2.0]).is_err());
        assert!(effective_epsilon_curve(&[3.0, 2.0]).is_err());
    }
}

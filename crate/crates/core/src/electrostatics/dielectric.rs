use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// Fraction of the gap width a slab charge must keep from either interface.
pub const MIN_OFFSET_FRACTION: f64 = 1e-4;

/// Relative permittivity of one layer. `Metal` is the K → ∞ conductor limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum DielectricConstant {
    Finite(f64),
    Metal,
}

impl DielectricConstant {
    pub fn finite(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Self::Finite(value))
        } else {
            Err(Error::InvalidStack(format!("permittivity must be finite and positive, got {value}")))
        }
    }

    pub fn is_metal(self) -> bool {
        matches!(self, Self::Metal)
    }

    /// Finite value, or `f64::INFINITY` for a metal.
    pub fn value(self) -> f64 {
        match self {
            Self::Finite(v) => v,
            Self::Metal => f64::INFINITY,
        }
    }

    /// Reflection coefficient (K_host − K)/(K_host + K) seen from a finite host.
    pub fn reflection_from(self, host: f64) -> f64 {
        match self {
            Self::Finite(k) => (host - k) / (host + k),
            Self::Metal => -1.0,
        }
    }
}

impl fmt::Display for DielectricConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "{v}"),
            Self::Metal => f.write_str("metal"),
        }
    }
}

impl std::str::FromStr for DielectricConstant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("metal") || t.eq_ignore_ascii_case("inf") {
            return Ok(Self::Metal);
        }
        let v: f64 = t
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("not a permittivity: `{s}`")))?;
        Self::finite(v)
    }
}

/// Left half-space `k1` (z < a), slab `k2` (a < z < b), right half-space `k3`.
/// Interface positions are in nanometres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DielectricStack {
    pub k1: DielectricConstant,
    pub k2: DielectricConstant,
    pub k3: DielectricConstant,
    pub a: f64,
    pub b: f64,
}

impl DielectricStack {
    pub fn new(
        k1: DielectricConstant,
        k2: DielectricConstant,
        k3: DielectricConstant,
        a: f64,
        b: f64,
    ) -> Result<Self> {
        for k in [k1, k2, k3] {
            if let DielectricConstant::Finite(v) = k {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::InvalidStack(format!("permittivity {v} is not positive")));
                }
            }
        }
        if k2.is_metal() {
            return Err(Error::InvalidStack("the middle layer cannot be a metal".into()));
        }
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidStack(format!("need a < b, got a = {a}, b = {b}")));
        }
        Ok(Self { k1, k2, k3, a, b })
    }

    /// Metal | vacuum | metal with the gap at [0, width].
    pub fn double_metal(width_nm: f64) -> Result<Self> {
        Self::new(
            DielectricConstant::Metal,
            DielectricConstant::Finite(1.0),
            DielectricConstant::Metal,
            0.0,
            width_nm,
        )
    }

    /// Gap width c = b − a in nm.
    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn k2_value(&self) -> f64 {
        self.k2.value()
    }

    pub fn betas(&self) -> BetaSet {
        beta_coefficients(self.k1, self.k2, self.k3).expect("validated stack")
    }

    /// Smallest admissible distance between the slab charge and an interface.
    pub fn min_offset(&self) -> f64 {
        MIN_OFFSET_FRACTION * self.width()
    }

    /// Checks that `z0` is inside the slab and outside the singularity guard.
    pub fn check_slab_position(&self, z0: f64) -> Result<()> {
        if !(z0 > self.a && z0 < self.b) {
            return Err(Error::Domain(format!(
                "z0 = {z0} nm is not inside the slab ({}, {})",
                self.a, self.b
            )));
        }
        let guard = self.min_offset();
        if (z0 - self.a).min(self.b - z0) < guard * (1.0 - 1e-12) {
            return Err(Error::Singularity { z0_nm: z0, guard_nm: guard });
        }
        Ok(())
    }

    /// Clamps `z0` into the guarded interior of the slab.
    pub fn clamp_to_guard(&self, z0: f64) -> f64 {
        let g = self.min_offset();
        z0.clamp(self.a + g, self.b - g)
    }
}

/// Interface coefficients of a stack.
///
/// When a half-space is metal, every product containing its permittivity is
/// divided by that permittivity, so all ratios that enter the potentials are
/// the exact K → ∞ limits and nothing overflows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaSet {
    pub beta_n: f64,
    pub beta_p: f64,
    pub beta_21: f64,
    pub beta_23: f64,
    pub beta_c: f64,
    pub beta_d: f64,
}

impl BetaSet {
    /// β_N/β_P, the geometric ratio of successive reflection orders.
    pub fn ratio(&self) -> f64 {
        self.beta_21 * self.beta_23
    }
}

pub fn beta_coefficients(
    k1: DielectricConstant,
    k2: DielectricConstant,
    k3: DielectricConstant,
) -> Result<BetaSet> {
    let k2 = match k2 {
        DielectricConstant::Finite(v) => v,
        DielectricConstant::Metal => {
            return Err(Error::InvalidStack("the middle layer cannot be a metal".into()))
        }
    };
    // (K2 - K, K2 + K, K) for each side, normalised by K when K is metal.
    let side = |k: DielectricConstant| match k {
        DielectricConstant::Finite(v) => (k2 - v, k2 + v, v, 1.0),
        DielectricConstant::Metal => (-1.0, 1.0, 1.0, 0.0),
    };
    let (m1, p1, k1n, w1) = side(k1);
    let (m3, p3, k3n, w3) = side(k3);
    // w = 1 keeps terms that carry no factor of the metal permittivity.
    let beta_c = -k2 * k2 * w1 * w3 + k2 * k3n * w1 - k1n * k2 * w3 + k1n * k3n;
    let beta_d = -k2 * k2 * w1 * w3 - k2 * k3n * w1 + k1n * k2 * w3 + k1n * k3n;
    Ok(BetaSet {
        beta_n: m1 * m3,
        beta_p: p1 * p3,
        beta_21: m1 / p1,
        beta_23: m3 / p3,
        beta_c,
        beta_d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use DielectricConstant::{Finite, Metal};

    #[test]
    fn matched_layers_against_metal() {
        let b = beta_coefficients(Finite(1.0), Finite(1.0), Metal).unwrap();
        assert_eq!(b.beta_23, -1.0);
        assert_eq!(b.beta_21, 0.0);
        assert_eq!(b.beta_n / b.beta_p, 0.0);
    }

    #[test]
    fn double_metal_limit() {
        let b = beta_coefficients(Metal, Finite(1.0), Metal).unwrap();
        assert_eq!((b.beta_21, b.beta_23), (-1.0, -1.0));
        assert_eq!(b.beta_n / b.beta_p, 1.0);
    }

    #[test]
    fn finite_arithmetic() {
        let b = beta_coefficients(Finite(2.0), Finite(1.0), Finite(5.0)).unwrap();
        assert!((b.beta_21 + 1.0 / 3.0).abs() < 1e-15);
        assert!((b.beta_23 + 2.0 / 3.0).abs() < 1e-15);
        assert!((b.beta_n / b.beta_p - 2.0 / 9.0).abs() < 1e-15);
        // βC = (K3 − K2)(K1 + K2), βD = (K1 − K2)(K2 + K3)
        assert_eq!(b.beta_c, 4.0 * 3.0);
        assert_eq!(b.beta_d, 1.0 * 6.0);
    }

    #[test]
    fn metal_ratios_are_limits() {
        let big = 1e12;
        let exact = beta_coefficients(Finite(3.0), Finite(1.5), Metal).unwrap();
        let approx = beta_coefficients(Finite(3.0), Finite(1.5), Finite(big)).unwrap();
        for (e, a) in [
            (exact.beta_c / exact.beta_p, approx.beta_c / approx.beta_p),
            (exact.beta_d / exact.beta_p, approx.beta_d / approx.beta_p),
            (exact.beta_n / exact.beta_p, approx.beta_n / approx.beta_p),
        ] {
            assert!((e - a).abs() < 1e-10, "{e} vs {a}");
        }
        let m1 = beta_coefficients(Metal, Finite(1.5), Finite(3.0)).unwrap();
        let a1 = beta_coefficients(Finite(big), Finite(1.5), Finite(3.0)).unwrap();
        assert!((m1.beta_c / m1.beta_p - a1.beta_c / a1.beta_p).abs() < 1e-10);
        assert!((m1.beta_d / m1.beta_p - a1.beta_d / a1.beta_p).abs() < 1e-10);
    }

    #[test]
    fn metal_middle_layer_rejected() {
        assert!(beta_coefficients(Finite(1.0), Metal, Finite(1.0)).is_err());
        assert!(DielectricStack::new(Finite(1.0), Metal, Finite(1.0), 0.0, 1.0).is_err());
    }

    #[test]
    fn stack_geometry_checks() {
        assert!(DielectricStack::new(Finite(1.0), Finite(1.0), Finite(1.0), 1.0, 1.0).is_err());
        let s = DielectricStack::double_metal(2.0).unwrap();
        assert!(s.check_slab_position(1.0).is_ok());
        assert!(matches!(s.check_slab_position(2.5), Err(Error::Domain(_))));
        assert!(matches!(s.check_slab_position(1e-5), Err(Error::Singularity { .. })));
    }

    #[test]
    fn parse_permittivity() {
        assert_eq!("metal".parse::<DielectricConstant>().unwrap(), Metal);
        assert_eq!("12.9".parse::<DielectricConstant>().unwrap(), Finite(12.9));
        assert!("-1".parse::<DielectricConstant>().is_err());
    }
}

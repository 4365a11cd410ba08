use std::collections::BTreeMap;

use serde::Serialize;

use crate::electrostatics::DielectricConstant;
use crate::{Error, Result};

/// Placeholder metal–metal Hamaker constant in J. Typical order of magnitude
/// only; not a measured value for any particular pair of plates.
pub const DEFAULT_HAMAKER_J: f64 = 1e-19;

/// Version tag of the built-in registry, reported in CLI metadata.
pub const REGISTRY_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Material {
    pub name: String,
    pub eps: DielectricConstant,
    /// Electron effective mass in electron masses.
    pub m_electron: Option<f64>,
    /// Hole effective mass in electron masses.
    pub m_hole: Option<f64>,
    /// Thickness of one deposited layer in nm.
    pub layer_thickness: Option<f64>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Carrier {
    Electron,
    Hole,
}

impl Carrier {
    /// Charge in units of e.
    pub fn charge(self) -> f64 {
        match self {
            Carrier::Electron => -1.0,
            Carrier::Hole => 1.0,
        }
    }
}

impl std::str::FromStr for Carrier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "electron" | "e" => Ok(Carrier::Electron),
            "hole" | "h" => Ok(Carrier::Hole),
            _ => Err(Error::InvalidParameter(format!("unknown carrier `{s}` (electron or hole)"))),
        }
    }
}

impl Material {
    fn new(name: &str, eps: DielectricConstant) -> Self {
        Self { name: name.into(), eps, m_electron: None, m_hole: None, layer_thickness: None, note: None }
    }

    fn masses(mut self, electron: f64, hole: f64) -> Self {
        self.m_electron = Some(electron);
        self.m_hole = Some(hole);
        self
    }

    fn layer(mut self, nm: f64) -> Self {
        self.layer_thickness = Some(nm);
        self
    }

    fn note(mut self, note: &str) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Effective mass of the requested carrier.
    pub fn carrier_mass(&self, carrier: Carrier) -> Result<f64> {
        match carrier {
            Carrier::Electron => self.m_electron,
            Carrier::Hole => self.m_hole,
        }
        .ok_or_else(|| Error::InvalidParameter(format!("{} has no {:?} mass", self.name, carrier)))
    }

    /// Finite permittivity, or an error for the metal.
    pub fn finite_eps(&self) -> Result<f64> {
        match self.eps {
            DielectricConstant::Finite(v) => Ok(v),
            DielectricConstant::Metal => Err(Error::InvalidParameter(format!("{} is a metal", self.name))),
        }
    }
}

/// The built-in materials, keyed by name.
pub fn builtin_materials() -> BTreeMap<String, Material> {
    use DielectricConstant::{Finite, Metal};
    [
        Material::new("GaAs", Finite(12.9))
            .masses(0.067, 0.45)
            .note("electron mass is sometimes quoted as 0.67 by a misplaced decimal"),
        Material::new("InSb", Finite(16.8)).masses(0.0135, 0.6).note("electron mass often rounded to 0.013"),
        Material::new("LHe", Finite(1.057)).layer(20.0).note("permittivity commonly rounded to 1.05"),
        Material::new("sAr", Finite(1.7)).layer(0.345),
        Material::new("Vacuum", Finite(1.0)),
        Material::new("Metal", Metal),
    ]
    .into_iter()
    .map(|m| (m.name.clone(), m))
    .collect()
}

/// Looks a material up by name, ignoring ASCII case.
pub fn material(name: &str) -> Result<Material> {
    builtin_materials()
        .into_values()
        .find(|m| m.name.eq_ignore_ascii_case(name.trim()))
        .ok_or_else(|| Error::NotFound(name.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_contents() {
        let reg = builtin_materials();
        assert_eq!(reg["GaAs"].eps, DielectricConstant::Finite(12.9));
        assert_eq!(reg["GaAs"].m_electron, Some(0.067));
        assert_eq!(reg["Vacuum"].m_electron, None);
        assert_eq!(reg["LHe"].layer_thickness, Some(20.0));
        assert_eq!(reg["sAr"].layer_thickness, Some(0.345));
        assert!(reg["Metal"].eps.is_metal());
        for m in reg.values() {
            assert!(m.eps.value() >= 1.0);
            assert!(m.layer_thickness.is_none_or(|t| t > 0.0));
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(material("gaas").unwrap().name, "GaAs");
        assert!(matches!(material("unobtainium"), Err(Error::NotFound(_))));
        assert!(material("Vacuum").unwrap().carrier_mass(Carrier::Electron).is_err());
        assert_eq!("hole".parse::<Carrier>().unwrap().charge(), 1.0);
    }
}

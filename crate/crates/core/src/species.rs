//! Charged-particle registry.
//!
//! Every entry is a particle type whose virtual pairs contribute to the
//! vacuum permittivity. Charges are stored exactly in thirds of `q_e` so the
//! weighted degeneracy sum over the default table is exact.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const DEFAULT_SPECIES: &str = include_str!("../data/default_species.toml");

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("failed to read species file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed species file: {0}")]
    Parse(String),
    #[error("invalid species `{name}`: {reason}")]
    Validation { name: String, reason: String },
    #[error("species registry is empty")]
    EmptyRegistry,
}

/// Electric charge in units of `q_e / 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Charge(i8);

impl Charge {
    const ALLOWED: [i8; 6] = [-3, -2, -1, 1, 2, 3];

    pub fn from_thirds(thirds: i8) -> Option<Self> {
        Self::ALLOWED.contains(&thirds).then_some(Charge(thirds))
    }

    /// Snaps a decimal charge fraction (e.g. `0.6666666666666666`) to the
    /// nearest allowed third. Rejects anything more than 1e-6 away.
    pub fn from_fraction(q: f64) -> Option<Self> {
        if !q.is_finite() {
            return None;
        }
        let thirds = (q * 3.0).round();
        if (thirds - q * 3.0).abs() > 3e-6 || thirds.abs() > 3.0 {
            return None;
        }
        Self::from_thirds(thirds as i8)
    }

    pub fn thirds(self) -> i8 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 3.0
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.abs() {
            3 => write!(f, "{}1", if self.0 < 0 { "-" } else { "+" }),
            n => write!(f, "{}{}/3", if self.0 < 0 { "-" } else { "+" }, n),
        }
    }
}

/// One charged elementary particle type.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticleSpecies {
    pub name: String,
    /// Rest energy mc² in MeV.
    pub mass_mev: f64,
    pub charge: Charge,
    pub color_factor: u8,
    pub spin_degeneracy: u8,
    /// Multiplier on the charge for the unscreened-charge scenario.
    pub charge_scale: f64,
}

impl ParticleSpecies {
    pub fn new(
        name: impl Into<String>,
        mass_mev: f64,
        charge: Charge,
        color_factor: u8,
        spin_degeneracy: u8,
    ) -> Result<Self, RegistryError> {
        let s = Self {
            name: name.into(),
            mass_mev,
            charge,
            color_factor,
            spin_degeneracy,
            charge_scale: 1.0,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_charge_scale(mut self, scale: f64) -> Result<Self, RegistryError> {
        self.charge_scale = scale;
        self.validate()?;
        Ok(self)
    }

    /// Q as a decimal fraction of `q_e`.
    pub fn charge_q(&self) -> f64 {
        self.charge.as_f64()
    }

    /// Qᵢ²·cᵢ·(gᵢ/2), including the charge scale.
    ///
    /// Computed as an integer ratio when the charge scale is 1 so that sums of
    /// weights over thirds-valued charges stay exact.
    pub fn weight(&self) -> f64 {
        let t = i32::from(self.charge.thirds());
        let num = t * t * i32::from(self.color_factor) * i32::from(self.spin_degeneracy);
        let w = f64::from(num) / 18.0;
        if self.charge_scale == 1.0 {
            w
        } else {
            w * self.charge_scale * self.charge_scale
        }
    }

    fn validate(&self) -> Result<(), RegistryError> {
        let fail = |reason: String| RegistryError::Validation {
            name: self.name.clone(),
            reason,
        };
        if self.name.trim().is_empty() {
            return Err(fail("empty name".into()));
        }
        if !(self.mass_mev.is_finite() && self.mass_mev > 0.0) {
            return Err(fail(format!("mass_mev must be > 0, got {}", self.mass_mev)));
        }
        if !matches!(self.color_factor, 1 | 3) {
            return Err(fail(format!(
                "color_factor must be 1 or 3, got {}",
                self.color_factor
            )));
        }
        if !matches!(self.spin_degeneracy, 2 | 3) {
            return Err(fail(format!(
                "spin_degeneracy must be 2 or 3, got {}",
                self.spin_degeneracy
            )));
        }
        if !(self.charge_scale.is_finite() && self.charge_scale > 0.0) {
            return Err(fail(format!(
                "charge_scale must be > 0, got {}",
                self.charge_scale
            )));
        }
        Ok(())
    }
}

/// On-disk record layout.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpeciesRecord {
    name: String,
    mass_mev: f64,
    charge_q: f64,
    color_factor: i64,
    spin_degeneracy: i64,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    charge_scale: f64,
}

fn one() -> f64 {
    1.0
}

fn is_one(v: &f64) -> bool {
    *v == 1.0
}

#[derive(Debug, Serialize, Deserialize)]
struct SpeciesFile {
    species: Vec<SpeciesRecord>,
}

impl TryFrom<SpeciesRecord> for ParticleSpecies {
    type Error = RegistryError;

    fn try_from(r: SpeciesRecord) -> Result<Self, Self::Error> {
        let fail = |reason: String| RegistryError::Validation {
            name: r.name.clone(),
            reason,
        };
        let charge = Charge::from_fraction(r.charge_q).ok_or_else(|| {
            fail(format!(
                "charge_q must be one of ±1, ±2/3, ±1/3, got {}",
                r.charge_q
            ))
        })?;
        let color = u8::try_from(r.color_factor)
            .map_err(|_| fail(format!("color_factor out of range: {}", r.color_factor)))?;
        let spin = u8::try_from(r.spin_degeneracy).map_err(|_| {
            fail(format!(
                "spin_degeneracy out of range: {}",
                r.spin_degeneracy
            ))
        })?;
        ParticleSpecies::new(r.name.clone(), r.mass_mev, charge, color, spin)?
            .with_charge_scale(r.charge_scale)
    }
}

impl From<&ParticleSpecies> for SpeciesRecord {
    fn from(s: &ParticleSpecies) -> Self {
        Self {
            name: s.name.clone(),
            mass_mev: s.mass_mev,
            charge_q: s.charge_q(),
            color_factor: i64::from(s.color_factor),
            spin_degeneracy: i64::from(s.spin_degeneracy),
            charge_scale: s.charge_scale,
        }
    }
}

/// Ordered collection of species with unique names.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeciesRegistry {
    species: Vec<ParticleSpecies>,
}

impl SpeciesRegistry {
    pub fn new(species: Vec<ParticleSpecies>) -> Result<Self, RegistryError> {
        let mut seen = HashSet::new();
        for s in &species {
            s.validate()?;
            if !seen.insert(s.name.as_str()) {
                return Err(RegistryError::Validation {
                    name: s.name.clone(),
                    reason: "duplicate name".into(),
                });
            }
        }
        Ok(Self { species })
    }

    pub fn from_toml_str(text: &str) -> Result<Self, RegistryError> {
        let file: SpeciesFile =
            toml::from_str(text).map_err(|e| RegistryError::Parse(e.to_string()))?;
        let species = file
            .species
            .into_iter()
            .map(ParticleSpecies::try_from)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(species)
    }

    pub fn to_toml_string(&self) -> String {
        let file = SpeciesFile {
            species: self.species.iter().map(SpeciesRecord::from).collect(),
        };
        toml::to_string(&file).expect("species records always serialize")
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ParticleSpecies> {
        self.species.iter()
    }

    pub fn len(&self) -> usize {
        self.species.len()
    }

    pub fn is_empty(&self) -> bool {
        self.species.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&ParticleSpecies> {
        self.species.iter().find(|s| s.name == name)
    }

    /// Sub-registry with the named species, in registry order.
    pub fn subset(&self, names: &[&str]) -> Result<Self, RegistryError> {
        for n in names {
            if self.get(n).is_none() {
                return Err(RegistryError::Validation {
                    name: (*n).to_string(),
                    reason: "not in registry".into(),
                });
            }
        }
        Ok(Self {
            species: self
                .species
                .iter()
                .filter(|s| names.contains(&s.name.as_str()))
                .cloned()
                .collect(),
        })
    }

    pub fn electron(&self) -> Option<&ParticleSpecies> {
        self.get("e")
    }
}

impl<'a> IntoIterator for &'a SpeciesRegistry {
    type Item = &'a ParticleSpecies;
    type IntoIter = std::slice::Iter<'a, ParticleSpecies>;

    fn into_iter(self) -> Self::IntoIter {
        self.species.iter()
    }
}

/// The ten-entry table of charged leptons, quarks and the W.
pub fn default_registry() -> SpeciesRegistry {
    SpeciesRegistry::from_toml_str(DEFAULT_SPECIES).expect("embedded species table is valid")
}

/// The embedded default species file, verbatim.
pub fn default_species_toml() -> &'static str {
    DEFAULT_SPECIES
}

pub fn load_registry(path: impl AsRef<Path>) -> Result<SpeciesRegistry, RegistryError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| RegistryError::Io {
        path: path.display().to_string(),
        source,
    })?;
    SpeciesRegistry::from_toml_str(&text)
}

/// Σᵢ Qᵢ²·cᵢ·(gᵢ/2).
pub fn weighted_degeneracy_sum(reg: &SpeciesRegistry) -> Result<f64, RegistryError> {
    if reg.is_empty() {
        return Err(RegistryError::EmptyRegistry);
    }
    let all_unit = reg.iter().all(|s| s.charge_scale == 1.0);
    if all_unit {
        // exact: every weight is an integer over 18
        let num: i64 = reg
            .iter()
            .map(|s| {
                let t = i64::from(s.charge.thirds());
                t * t * i64::from(s.color_factor) * i64::from(s.spin_degeneracy)
            })
            .sum();
        Ok(num as f64 / 18.0)
    } else {
        Ok(reg.iter().map(ParticleSpecies::weight).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_has_ten_entries_in_order() {
        let reg = default_registry();
        let names: Vec<_> = reg.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["e", "mu", "tau", "u", "d", "s", "c", "b", "t", "W"]);
    }

    #[test]
    fn up_quark_mass() {
        assert_eq!(default_registry().get("u").unwrap().mass_mev, 1.5);
    }

    #[test]
    fn electron_entry() {
        let reg = default_registry();
        let e = reg.electron().unwrap();
        assert_eq!(e.charge_q(), -1.0);
        assert_eq!(e.color_factor, 1);
        assert_eq!(e.spin_degeneracy, 2);
    }

    #[test]
    fn degeneracies() {
        for s in &default_registry() {
            if s.name == "W" {
                assert_eq!(s.spin_degeneracy, 3);
                assert_eq!(s.color_factor, 1);
            } else {
                assert_eq!(s.spin_degeneracy, 2);
            }
            let quark = ["u", "d", "s", "c", "b", "t"].contains(&s.name.as_str());
            assert_eq!(s.color_factor == 3, quark);
        }
    }

    #[test]
    fn weighted_sum_is_nine_and_a_half() {
        assert_eq!(weighted_degeneracy_sum(&default_registry()).unwrap(), 9.5);
    }

    #[test]
    fn weighted_sum_groups() {
        let reg = default_registry();
        let sum = |names: &[&str]| weighted_degeneracy_sum(&reg.subset(names).unwrap()).unwrap();
        assert_eq!(sum(&["e", "mu", "tau"]), 3.0);
        assert_eq!(sum(&["d", "s", "b"]), 1.0);
        assert_eq!(sum(&["u", "c", "t"]), 4.0);
        assert_eq!(sum(&["W"]), 1.5);
        assert_eq!(sum(&["e"]), 1.0);
        assert_eq!(sum(&["u"]), 4.0 / 3.0);
    }

    #[test]
    fn empty_registry_rejected() {
        let reg = SpeciesRegistry::new(vec![]).unwrap();
        assert!(matches!(
            weighted_degeneracy_sum(&reg),
            Err(RegistryError::EmptyRegistry)
        ));
    }

    #[test]
    fn charge_snapping() {
        assert_eq!(Charge::from_fraction(0.6666666666666666).unwrap().thirds(), 2);
        assert_eq!(Charge::from_fraction(-0.333333).unwrap().thirds(), -1);
        assert!(Charge::from_fraction(0.5).is_none());
        assert!(Charge::from_fraction(0.0).is_none());
        assert!(Charge::from_fraction(4.0 / 3.0).is_none());
        assert_eq!(Charge::from_thirds(-2).unwrap().to_string(), "-2/3");
    }

    #[test]
    fn duplicate_names_rejected() {
        let text = r#"
            [[species]]
            name = "e"
            mass_mev = 0.511
            charge_q = -1
            color_factor = 1
            spin_degeneracy = 2

            [[species]]
            name = "e"
            mass_mev = 0.511
            charge_q = -1
            color_factor = 1
            spin_degeneracy = 2
        "#;
        let err = SpeciesRegistry::from_toml_str(text).unwrap_err();
        assert!(matches!(err, RegistryError::Validation { .. }), "{err}");
    }

    #[test]
    fn out_of_range_fields_rejected() {
        let rec = |field: &str| {
            let base = [
                ("name", "\"x\""),
                ("mass_mev", "1.0"),
                ("charge_q", "-1.0"),
                ("color_factor", "1"),
                ("spin_degeneracy", "2"),
            ];
            let body: String = base
                .iter()
                .map(|(k, v)| {
                    if field.starts_with(k) {
                        format!("{field}\n")
                    } else {
                        format!("{k} = {v}\n")
                    }
                })
                .collect();
            format!("[[species]]\n{body}")
        };
        for bad in [
            "spin_degeneracy = 5",
            "color_factor = 2",
            "mass_mev = -1.0",
            "mass_mev = 0.0",
            "charge_q = 0.5",
        ] {
            let err = SpeciesRegistry::from_toml_str(&rec(bad)).unwrap_err();
            assert!(matches!(err, RegistryError::Validation { .. }), "{bad}: {err}");
        }
    }

    #[test]
    fn malformed_is_parse_error() {
        for bad in ["[[species]]\nname = ", "[[species]]\nname = \"e\"\n", "nonsense"] {
            let err = SpeciesRegistry::from_toml_str(bad).unwrap_err();
            assert!(matches!(err, RegistryError::Parse(_)), "{bad}: {err}");
        }
    }

    #[test]
    fn toml_round_trip() {
        let reg = default_registry();
        let again = SpeciesRegistry::from_toml_str(&reg.to_toml_string()).unwrap();
        assert_eq!(reg, again);
    }

    #[test]
    fn charge_scale_enters_weight() {
        let e = default_registry().electron().unwrap().clone();
        let scaled = e.with_charge_scale(2.0).unwrap();
        assert_eq!(scaled.weight(), 4.0);
        assert!(scaled.clone().with_charge_scale(0.0).is_err());
    }
}

//! JSON files for spaces of modular forms, their validation on load, and the
//! data bundled with the crate.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{DirichletCharacter, Rational};
use crate::error::{Error, Result};
use crate::modforms::{self, check_hecke_consistency, BasisElement, BasisKind, SpaceBasis};
use crate::numfield::{rational_str, FieldElem, QuadField};
use crate::qseries::QSeries;

/// Precision of the bundled q-expansions.
pub const BUNDLED_PREC: usize = 40;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    #[serde(with = "rational_str")]
    pub a: Rational,
    #[serde(with = "rational_str", default = "zero", skip_serializing_if = "num_traits::Zero::is_zero")]
    pub b: Rational,
}

fn zero() -> Rational {
    num_traits::Zero::zero()
}

fn newform_kind() -> BasisKind {
    BasisKind::Newform
}

/// One q-expansion `sum (a_n + b_n sqrt(d)) q^n`, indexed from `n = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormFile {
    pub label: String,
    pub weight: i64,
    pub level: u64,
    pub character: DirichletCharacter,
    pub field: QuadField,
    #[serde(default = "newform_kind")]
    pub kind: BasisKind,
    pub coefficients: Vec<Coefficient>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceFile {
    pub weight: i64,
    pub level: u64,
    pub character: DirichletCharacter,
    pub elements: Vec<FormFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    /// Space name to file name.
    pub spaces: BTreeMap<String, String>,
    /// Example id to the spaces it reads.
    pub examples: BTreeMap<u32, Vec<String>>,
}

impl FormFile {
    pub fn from_element(e: &BasisElement, weight: i64, level: u64) -> Self {
        FormFile {
            label: e.label.clone(),
            weight,
            level,
            character: e.character.clone(),
            field: e.series.field(),
            kind: e.kind.clone(),
            coefficients: e
                .series
                .coeffs()
                .iter()
                .map(|c| Coefficient {
                    a: c.a().clone(),
                    b: c.b().clone(),
                })
                .collect(),
        }
    }

    pub fn series(&self) -> Result<QSeries> {
        if self.field == QuadField::Rational && self.coefficients.iter().any(|c| !num_traits::Zero::is_zero(&c.b)) {
            return Err(Error::Schema(format!("{}: irrational coefficient over Q", self.label)));
        }
        let coeffs = self
            .coefficients
            .iter()
            .map(|c| FieldElem::new(self.field, c.a.clone(), c.b.clone()))
            .collect();
        QSeries::new(self.field, coeffs)
    }

    /// The form as a basis element, after the checks that apply to its kind.
    pub fn element(&self) -> Result<BasisElement> {
        let series = self.series()?;
        if series.prec() < 2 {
            return Err(Error::Schema(format!("{}: fewer than two coefficients", self.label)));
        }
        if self.level % self.character.modulus() != 0 {
            return Err(Error::Schema(format!(
                "{}: character modulus {} does not divide level {}",
                self.label,
                self.character.modulus(),
                self.level
            )));
        }
        if self.character.parity() as i64 != self.weight.rem_euclid(2) {
            return Err(Error::Schema(format!("{}: character parity does not match weight", self.label)));
        }
        Ok(match &self.kind {
            BasisKind::Newform => {
                check_hecke_consistency(&series, self.weight, &self.character)?;
                BasisElement::newform(&self.label, series, self.character.clone())
            }
            kind => BasisElement::other(&self.label, kind.clone(), series, self.character.clone()),
        })
    }
}

impl SpaceFile {
    pub fn from_basis(basis: &SpaceBasis) -> Self {
        SpaceFile {
            weight: basis.weight,
            level: basis.level,
            character: basis.character.clone(),
            elements: basis
                .elements
                .iter()
                .map(|e| {
                    let level = if e.character.modulus() == 1 && e.kind == BasisKind::Newform {
                        1
                    } else {
                        basis.level
                    };
                    FormFile::from_element(e, basis.weight, level)
                })
                .collect(),
        }
    }

    /// Validates every element and the space as a whole.
    pub fn basis(&self) -> Result<SpaceBasis> {
        let mut elements = Vec::with_capacity(self.elements.len());
        for file in &self.elements {
            if file.weight != self.weight {
                return Err(Error::Schema(format!("{}: weight {} in a weight-{} space", file.label, file.weight, self.weight)));
            }
            if self.level % file.level != 0 {
                return Err(Error::Schema(format!("{}: level {} does not divide {}", file.label, file.level, self.level)));
            }
            let chi = file.character.extend_to(self.level)?;
            if chi != self.character.extend_to(self.level)? {
                return Err(Error::Schema(format!("{}: character differs from the space's", file.label)));
            }
            elements.push(file.element()?);
        }
        let mut labels: Vec<&str> = elements.iter().map(|e| e.label.as_str()).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Schema("duplicate labels".into()));
        }
        for e in &elements {
            if let BasisKind::Oldform { p, source } = &e.kind {
                let src = elements
                    .iter()
                    .find(|s| &s.label == source)
                    .ok_or_else(|| Error::MissingLabel(source.clone()))?;
                let image = src.series.v_operator(*p as usize);
                let prec = image.prec().min(e.series.prec());
                if image.truncate(prec) != e.series.truncate(prec) {
                    return Err(Error::Schema(format!("{}: not the image of {source} under z -> {p}z", e.label)));
                }
            }
        }
        SpaceBasis::new(self.weight, self.level, self.character.clone(), elements)
    }
}

pub fn parse_space(json: &str) -> Result<SpaceBasis> {
    let file: SpaceFile = serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
    file.basis()
}

pub fn parse_form(json: &str) -> Result<(BasisElement, i64)> {
    let file: FormFile = serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
    Ok((file.element()?, file.weight))
}

pub fn load_space(path: &std::path::Path) -> Result<SpaceBasis> {
    parse_space(&std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?)
}

macro_rules! bundled_files {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/", $name)))),*]
    };
}

const BUNDLED: &[(&str, &str)] = bundled_files!(
    "manifest.json",
    "level1_weight12.json",
    "level1_weight24.json",
    "level1_weight30.json",
    "level3_weight6.json",
    "level3_weight13.json",
    "level3_weight26.json",
);

pub fn bundled_file(name: &str) -> Result<&'static str> {
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
        .ok_or_else(|| Error::DataMissing(name.to_string()))
}

pub fn manifest() -> Result<Manifest> {
    serde_json::from_str(bundled_file("manifest.json")?).map_err(|e| Error::Schema(e.to_string()))
}

/// A bundled space by its manifest name, e.g. `"level1_weight24"`.
pub fn bundled_space(name: &str) -> Result<SpaceBasis> {
    let manifest = manifest()?;
    let file = manifest
        .spaces
        .get(name)
        .ok_or_else(|| Error::DataMissing(name.to_string()))?;
    parse_space(bundled_file(file)?)
}

/// Recomputes every bundled space from scratch.
pub fn generate_spaces(prec: usize) -> Result<Vec<(String, SpaceFile)>> {
    let spaces = vec![
        ("level1_weight12", modforms::eigen_split_level1(12, prec)?),
        ("level1_weight24", modforms::eigen_split_level1(24, prec)?),
        ("level1_weight30", modforms::eigen_split_level1(30, prec)?),
        ("level3_weight6", modforms::level3::weight6(prec)?),
        ("level3_weight13", modforms::level3::weight13_newforms(prec)?),
        ("level3_weight26", modforms::level3::weight26(prec)?),
    ];
    Ok(spaces
        .into_iter()
        .map(|(name, b)| (name.to_string(), SpaceFile::from_basis(&b)))
        .collect())
}

pub fn generated_manifest() -> Manifest {
    let spaces = [
        "level1_weight12",
        "level1_weight24",
        "level1_weight30",
        "level3_weight6",
        "level3_weight13",
        "level3_weight26",
    ]
    .iter()
    .map(|n| (n.to_string(), format!("{n}.json")))
    .collect();
    let uses = |names: &[&str]| names.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let examples = [
        (1, uses(&["level1_weight24", "level1_weight12"])),
        (2, uses(&["level1_weight30", "level1_weight12"])),
        (3, uses(&["level3_weight13", "level3_weight6"])),
        (4, uses(&["level3_weight26", "level3_weight13"])),
        (5, uses(&["level1_weight24", "level1_weight12"])),
    ]
    .into_iter()
    .collect();
    Manifest { spaces, examples }
}

//! JSON file formats for factorizations and covers.
//!
//! ```json
//! {
//!   "fiber_genus": 3, "base_genus": 2, "engine": "ut-model",
//!   "curves": { "c": { "h1": [0,0,0,0,0,0], "separating": true, "ut_word": "t" } },
//!   "factors": [ { "type": "twist", "curve": "c", "power": 2 },
//!                { "type": "commutator", "a": "alpha1- alpha1+^-1", "b": "beta1- beta1+^-1" } ],
//!   "ut_model": { "a1": "at1", "b1": "bt1", "g1": "t" }
//! }
//! ```
//!
//! Optional fields: `ut_genus` (default 2), `has_section`, `draft`,
//! `braid_strands`, and per curve `essential`, `braid`, `description`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::homology::H1Class;
use crate::words::Alphabet;

use super::cover::CoverSpec;
use super::{parse_ut_word, Curve, Engine, Factor, Factorization, FibrationError, Gluing, MappingClassExpr, UtModel};

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveFile {
    pub h1: Vec<i64>,
    #[serde(default)]
    pub separating: bool,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub essential: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ut_word: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braid: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FactorFile {
    Twist {
        curve: String,
        #[serde(default = "one")]
        power: u32,
    },
    Commutator {
        a: String,
        b: String,
    },
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorizationFile {
    pub fiber_genus: usize,
    pub base_genus: usize,
    pub engine: Engine,
    pub curves: BTreeMap<String, CurveFile>,
    pub factors: Vec<FactorFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ut_model: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ut_genus: Option<usize>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub has_section: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub draft: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braid_strands: Option<usize>,
}

fn parse_err(e: impl std::fmt::Display) -> FibrationError {
    FibrationError::Parse(e.to_string())
}

impl FactorizationFile {
    pub fn from_factorization(f: &Factorization) -> Self {
        let g0 = f.ut_model.as_ref().map(|m| m.g0);
        let ut_alphabet = f.ut_model.as_ref().map(UtModel::alphabet);
        let render_ut = |w: &crate::words::Word| -> String {
            let alphabet = ut_alphabet.clone().unwrap_or_else(|| Alphabet::unit_tangent(2, 8));
            if w.is_identity() {
                "1".into()
            } else {
                w.display(&alphabet).to_string()
            }
        };
        let curves = f
            .curves
            .iter()
            .map(|(name, c)| {
                (
                    name.clone(),
                    CurveFile {
                        h1: c.h1.coords.clone(),
                        separating: c.separating,
                        essential: c.essential,
                        ut_word: c.ut_word.as_ref().map(render_ut),
                        braid: c.braid.as_ref().map(BraidWord::display),
                        description: c.description.clone(),
                    },
                )
            })
            .collect();
        let factors = f
            .factors
            .iter()
            .map(|x| match x {
                Factor::Twist { curve, power } => FactorFile::Twist { curve: curve.clone(), power: *power },
                Factor::Commutator { a, b } => FactorFile::Commutator { a: a.render(), b: b.render() },
            })
            .collect();
        Self {
            fiber_genus: f.fiber_genus,
            base_genus: f.base_genus,
            engine: f.engine,
            curves,
            factors,
            ut_model: f
                .ut_model
                .as_ref()
                .map(|m| m.images.iter().map(|(k, w)| (k.clone(), render_ut(w))).collect()),
            ut_genus: g0,
            has_section: f.has_section,
            draft: f.draft,
            braid_strands: f.braid_strands,
        }
    }

    pub fn into_factorization(self) -> Result<Factorization, FibrationError> {
        self.into_unverified()?.checked()
    }

    /// Structural validation only; the relation is left to the caller.
    pub fn into_unverified(self) -> Result<Factorization, FibrationError> {
        let g0 = self.ut_genus.unwrap_or(2);
        let mut central = 0;
        let ut = |text: &str| parse_ut_word(text, g0);
        let mut curves = BTreeMap::new();
        for (name, c) in self.curves {
            let (curve, c) = c.into_curve(&name, g0, self.braid_strands)?;
            central = central.max(c);
            curves.insert(name, curve);
        }
        let mut factors = Vec::new();
        for x in self.factors {
            factors.push(match x {
                FactorFile::Twist { curve, power } => Factor::Twist { curve, power },
                FactorFile::Commutator { a, b } => Factor::Commutator {
                    a: MappingClassExpr::parse(&a)?,
                    b: MappingClassExpr::parse(&b)?,
                },
            });
        }
        let ut_model = match self.ut_model {
            Some(images) => {
                let mut parsed = BTreeMap::new();
                for (k, v) in images {
                    let (w, c) = ut(&v)?;
                    central = central.max(c);
                    parsed.insert(k, w);
                }
                Some(UtModel { g0, central: 0, images: parsed })
            }
            None if self.engine == Engine::UtModel => Some(UtModel::new(g0)),
            None => None,
        };
        let ut_model = ut_model.map(|m| UtModel { central, ..m });
        Factorization {
            fiber_genus: self.fiber_genus,
            base_genus: self.base_genus,
            engine: self.engine,
            curves,
            factors,
            ut_model,
            has_section: self.has_section,
            draft: self.draft,
            braid_strands: self.braid_strands,
        }
        .validated()
    }
}

impl CurveFile {
    /// The curve and the number of central letters its push word uses.
    pub fn into_curve(self, name: &str, g0: usize, braid_strands: Option<usize>) -> Result<(Curve, usize), FibrationError> {
        let braid = match (&self.braid, braid_strands) {
            (Some(b), Some(n)) => Some(BraidWord::parse(n, b)?),
            (Some(_), None) => return Err(FibrationError::Parse(format!("curve `{name}` has a braid but no braid_strands"))),
            _ => None,
        };
        let (ut_word, central) = match self.ut_word.as_deref().map(|t| parse_ut_word(t, g0)).transpose()? {
            Some((w, c)) => (Some(w), c),
            None => (None, 0),
        };
        let curve = Curve {
            name: name.to_string(),
            h1: H1Class::new(self.h1),
            separating: self.separating,
            essential: self.essential,
            ut_word,
            braid,
            description: self.description,
        };
        Ok((curve, central))
    }
}

/// Gluing class for fiber sums: `{"curves": {...}, "expr": "x^2 y", "ut": "at1"}`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GluingFile {
    #[serde(default)]
    pub curves: BTreeMap<String, CurveFile>,
    #[serde(default)]
    pub expr: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ut: Option<String>,
}

pub fn gluing_from_json(text: &str, g0: usize) -> Result<Gluing, FibrationError> {
    let file: GluingFile = serde_json::from_str(text).map_err(parse_err)?;
    let mut curves = Vec::new();
    for (name, c) in file.curves {
        curves.push(c.into_curve(&name, g0, None)?.0);
    }
    Ok(Gluing {
        curves,
        expr: MappingClassExpr::parse(&file.expr)?,
        ut: file.ut.as_deref().map(|t| parse_ut_word(t, g0).map(|(w, _)| w)).transpose()?,
    })
}

pub fn factorization_from_json_unverified(text: &str) -> Result<Factorization, FibrationError> {
    let file: FactorizationFile = serde_json::from_str(text).map_err(parse_err)?;
    file.into_unverified()
}

pub fn factorization_to_json(f: &Factorization) -> String {
    serde_json::to_string_pretty(&FactorizationFile::from_factorization(f)).expect("plain data serializes")
}

pub fn factorization_from_json(text: &str) -> Result<Factorization, FibrationError> {
    let file: FactorizationFile = serde_json::from_str(text).map_err(parse_err)?;
    file.into_factorization()
}

/// Cover files use 1-based sheet numbers.
pub fn cover_to_json(c: &CoverSpec) -> String {
    serde_json::to_string_pretty(&c.to_one_based()).expect("plain data serializes")
}

pub fn cover_from_json(text: &str) -> Result<CoverSpec, FibrationError> {
    let raw: CoverSpec = serde_json::from_str(text).map_err(parse_err)?;
    let c = raw.from_one_based()?;
    c.validate()?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::super::builders::{build_theorem1, build_xn};
    use super::*;

    #[test]
    fn roundtrip_builders() {
        for f in [build_theorem1(3).unwrap(), build_xn(4, 5).unwrap()] {
            let back = factorization_from_json(&factorization_to_json(&f)).unwrap();
            assert_eq!(back, f);
        }
    }

    #[test]
    fn nonidentity_file_rejected_unless_draft() {
        let text = r#"{
            "fiber_genus": 3, "base_genus": 0, "engine": "ut-model",
            "curves": {"c": {"h1": [0,0,0,0,0,0], "separating": true, "ut_word": "t"}},
            "factors": [{"type": "twist", "curve": "c", "power": 1}]
        }"#;
        assert_eq!(factorization_from_json(text), Err(FibrationError::RelationFails(Engine::UtModel)));
        let draft = text.replace("\"factors\"", "\"draft\": true, \"factors\"");
        let f = factorization_from_json(&draft).unwrap();
        assert!(!f.verify_relation().unwrap());
    }

    #[test]
    fn cover_roundtrip() {
        let c = CoverSpec::cyclic(2, 3).unwrap();
        assert_eq!(cover_from_json(&cover_to_json(&c)).unwrap(), c);
        assert!(cover_from_json(r#"{"degree": 2, "alpha": [[0,1],[1,2]], "beta": [[1,2],[1,2]]}"#).is_err());
    }
}

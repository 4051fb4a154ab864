//! JSON structure files: schema, validation into engine values, and the
//! documents for the built-in example triples.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::TwoForm;
use crate::courant::GSection;
use crate::examples;
use crate::quaternionic::{lift_diagonal, lift_symplectic, GEndo, HKTriple, Matrix};
use crate::sample::SuiteOptions;
use crate::scalar::{Chart, ScalarError, ScalarField};

/// Default degree bound of the spanning family used by the theorem suite.
pub const DEFAULT_FAMILY_DEGREE: u32 = 1;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("syntax error in {location} at byte {position}: {message}")]
    Syntax {
        location: String,
        position: usize,
        message: String,
    },
    #[error("dimension mismatch in {location}: expected {expected}, found {found}")]
    DimensionMismatch {
        location: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid {location}: {source}")]
    Invalid {
        location: String,
        #[source]
        source: crate::Error,
    },
}

/// The suites a structure file may select, in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Axioms,
    Certification,
    ConnectionLaws,
    Identities,
    Theorem,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Axioms,
        Suite::Certification,
        Suite::ConnectionLaws,
        Suite::Identities,
        Suite::Theorem,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Certification => "certification",
            Suite::ConnectionLaws => "connection-laws",
            Suite::Identities => "identities",
            Suite::Theorem => "theorem",
        }
    }
}

pub type MatrixDoc = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "lift", rename_all = "kebab-case", deny_unknown_fields)]
pub enum LiftDoc {
    Diagonal { j: MatrixDoc },
    Symplectic { omega: MatrixDoc, omega_inv: MatrixDoc },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EndoDoc {
    Lift(LiftDoc),
    Blocks {
        #[serde(rename = "A")]
        a: MatrixDoc,
        #[serde(rename = "B")]
        b: MatrixDoc,
        #[serde(rename = "C")]
        c: MatrixDoc,
        #[serde(rename = "D")]
        d: MatrixDoc,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleDoc {
    #[serde(rename = "I")]
    pub i: EndoDoc,
    #[serde(rename = "J")]
    pub j: EndoDoc,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<EndoDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsDoc {
    pub trials: usize,
    pub degree: u32,
    pub seed: u64,
    #[serde(rename = "family-degree", default, skip_serializing_if = "Option::is_none")]
    pub family_degree: Option<u32>,
}

impl Default for OptionsDoc {
    fn default() -> Self {
        let o = SuiteOptions::default();
        OptionsDoc {
            trials: o.trials,
            degree: o.degree,
            seed: o.seed,
            family_degree: None,
        }
    }
}

/// A structure file as written on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDoc {
    pub dimension: usize,
    pub coordinates: Vec<String>,
    pub structure: TripleDoc,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sections: BTreeMap<String, Vec<String>>,
    #[serde(default = "all_suites")]
    pub checks: Vec<Suite>,
    #[serde(default)]
    pub options: OptionsDoc,
}

fn all_suites() -> Vec<Suite> {
    Suite::ALL.to_vec()
}

/// A validated structure file.
#[derive(Debug, Clone)]
pub struct StructureFile {
    pub dimension: usize,
    pub chart: Chart,
    pub triple: HKTriple,
    pub k_defaulted: bool,
    pub sections: BTreeMap<String, GSection>,
    /// Deduplicated, in execution order.
    pub checks: Vec<Suite>,
    pub options: SuiteOptions,
    pub family_degree: u32,
}

pub fn parse_structure_text(text: &str) -> Result<StructureFile, InputError> {
    let doc: StructureDoc =
        serde_json::from_str(text).map_err(|e| InputError::Schema(e.to_string()))?;
    validate(&doc)
}

pub fn parse_structure_path(path: &Path) -> Result<(StructureFile, Vec<u8>), InputError> {
    let bytes = std::fs::read(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| InputError::Schema(format!("input is not UTF-8: {e}")))?;
    let sf = parse_structure_text(text)?;
    Ok((sf, bytes))
}

fn scalar(chart: &Chart, text: &str, location: &str) -> Result<ScalarField, InputError> {
    chart.parse(text).map_err(|e| match e {
        ScalarError::Syntax { position, message } => InputError::Syntax {
            location: location.to_string(),
            position,
            message,
        },
        other => InputError::Syntax {
            location: location.to_string(),
            position: 0,
            message: other.to_string(),
        },
    })
}

fn matrix(chart: &Chart, doc: &MatrixDoc, location: &str) -> Result<Matrix, InputError> {
    let n = chart.dim();
    let mismatch = |found| InputError::DimensionMismatch {
        location: location.to_string(),
        expected: n,
        found,
    };
    if doc.len() != n {
        return Err(mismatch(doc.len()));
    }
    doc.iter()
        .enumerate()
        .map(|(r, row)| {
            if row.len() != n {
                return Err(mismatch(row.len()));
            }
            row.iter()
                .enumerate()
                .map(|(c, s)| scalar(chart, s, &format!("{location}[{r}][{c}]")))
                .collect()
        })
        .collect()
}

fn invalid(location: &str) -> impl Fn(crate::Error) -> InputError + '_ {
    move |source| InputError::Invalid {
        location: location.to_string(),
        source,
    }
}

fn endo(chart: &Chart, doc: &EndoDoc, location: &str) -> Result<GEndo, InputError> {
    match doc {
        EndoDoc::Blocks { a, b, c, d } => {
            let blocks = [("A", a), ("B", b), ("C", c), ("D", d)]
                .map(|(name, m)| matrix(chart, m, &format!("{location}.{name}")));
            let [a, b, c, d] = blocks;
            GEndo::from_blocks(a?, b?, c?, d?).map_err(invalid(location))
        }
        EndoDoc::Lift(LiftDoc::Diagonal { j }) => {
            let j = matrix(chart, j, &format!("{location}.j"))?;
            lift_diagonal(&j).map_err(invalid(location))
        }
        EndoDoc::Lift(LiftDoc::Symplectic { omega, omega_inv }) => {
            let w = matrix(chart, omega, &format!("{location}.omega"))?;
            let w_inv = matrix(chart, omega_inv, &format!("{location}.omega_inv"))?;
            let w = TwoForm::new(w).map_err(invalid(location))?;
            lift_symplectic(&w, &w_inv).map_err(invalid(location))
        }
    }
}

pub fn validate(doc: &StructureDoc) -> Result<StructureFile, InputError> {
    let n = doc.dimension;
    if n == 0 {
        return Err(InputError::Schema("dimension must be at least 1".into()));
    }
    if doc.coordinates.len() != n {
        return Err(InputError::DimensionMismatch {
            location: "coordinates".into(),
            expected: n,
            found: doc.coordinates.len(),
        });
    }
    let chart = Chart::new(n);
    if doc.coordinates.as_slice() != chart.names() {
        return Err(InputError::Schema(format!(
            "coordinates must be named {}",
            chart.names().join(", ")
        )));
    }
    let i = endo(&chart, &doc.structure.i, "structure.I")?;
    let j = endo(&chart, &doc.structure.j, "structure.J")?;
    let (k, k_defaulted) = match &doc.structure.k {
        Some(k) => (endo(&chart, k, "structure.K")?, false),
        None => (i.compose(&j).map_err(invalid("structure.K"))?, true),
    };
    let triple = HKTriple::new(i, j, k).map_err(invalid("structure"))?;

    let mut sections = BTreeMap::new();
    for (name, comps) in &doc.sections {
        let location = format!("sections.{name}");
        if comps.len() != 2 * n {
            return Err(InputError::DimensionMismatch {
                location,
                expected: 2 * n,
                found: comps.len(),
            });
        }
        let comps = comps
            .iter()
            .enumerate()
            .map(|(a, s)| scalar(&chart, s, &format!("{location}[{a}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let s = GSection::from_components(comps).map_err(invalid(&location))?;
        sections.insert(name.clone(), s);
    }

    let mut checks = doc.checks.clone();
    checks.sort();
    checks.dedup();
    let o = &doc.options;
    Ok(StructureFile {
        dimension: n,
        chart,
        triple,
        k_defaulted,
        sections,
        checks,
        options: SuiteOptions {
            trials: o.trials,
            degree: o.degree,
            seed: o.seed,
            parallel: false,
        },
        family_degree: o.family_degree.unwrap_or(DEFAULT_FAMILY_DEGREE),
    })
}

/// The built-in example triples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example {
    FlatQuaternionic,
    HolomorphicSymplectic,
    Nonintegrable,
}

impl Example {
    pub const ALL: [Example; 3] = [
        Example::FlatQuaternionic,
        Example::HolomorphicSymplectic,
        Example::Nonintegrable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Example::FlatQuaternionic => "flat-quaternionic",
            Example::HolomorphicSymplectic => "holomorphic-symplectic",
            Example::Nonintegrable => "nonintegrable",
        }
    }

    pub fn from_name(name: &str) -> Option<Example> {
        Example::ALL.into_iter().find(|e| e.name() == name)
    }

    pub fn triple(self) -> HKTriple {
        match self {
            Example::FlatQuaternionic => examples::flat_quaternionic(),
            Example::HolomorphicSymplectic => examples::holomorphic_symplectic(),
            Example::Nonintegrable => examples::nonintegrable(),
        }
    }

    pub fn document(self) -> StructureDoc {
        let diag = |m: &Matrix| EndoDoc::Lift(LiftDoc::Diagonal { j: matrix_doc(m) });
        let structure = match self {
            Example::FlatQuaternionic => {
                let [i, j, _] = examples::right_multiplications();
                TripleDoc { i: diag(&i), j: diag(&j), k: None }
            }
            Example::Nonintegrable => {
                let [i, j, _] = examples::conjugated_right_multiplications();
                TripleDoc { i: diag(&i), j: diag(&j), k: None }
            }
            Example::HolomorphicSymplectic => {
                let (w1, w2, i1, i2) = examples::holomorphic_symplectic_forms();
                let neg = |m: &[Vec<ScalarField>]| -> Matrix {
                    m.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
                };
                let symp = |w: &Matrix, inv: &Matrix| {
                    EndoDoc::Lift(LiftDoc::Symplectic {
                        omega: matrix_doc(w),
                        omega_inv: matrix_doc(inv),
                    })
                };
                TripleDoc {
                    i: symp(&w2.rows().to_vec(), &i2),
                    j: diag(&examples::standard_complex_structure()),
                    k: Some(symp(&neg(w1.rows()), &neg(&i1))),
                }
            }
        };
        StructureDoc {
            dimension: 4,
            coordinates: Chart::new(4).names().to_vec(),
            structure,
            sections: BTreeMap::new(),
            checks: all_suites(),
            options: OptionsDoc::default(),
        }
    }

    pub fn to_json(self) -> String {
        let mut s = serde_json::to_string_pretty(&self.document()).expect("documents serialize");
        s.push('\n');
        s
    }
}

fn matrix_doc(m: &Matrix) -> MatrixDoc {
    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

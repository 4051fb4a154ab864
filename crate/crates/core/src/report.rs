//! Outcome records for identity checks, with hand-checkable witnesses.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::courant::GSection;
use crate::scalar::{format_rational, Rational, ScalarField};

/// Something that should reduce to exact zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Residual {
    Section(GSection),
    Scalar(ScalarField),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Section(s) => s.is_zero(),
            Residual::Scalar(f) => f.is_zero(),
        }
    }

    fn components(&self) -> Vec<(String, ScalarField)> {
        match self {
            Residual::Scalar(f) => vec![("scalar".to_string(), f.clone())],
            Residual::Section(s) => {
                let vec = s.vec.components().iter().enumerate();
                let form = s.form.components().iter().enumerate();
                vec.map(|(i, c)| (format!("vec[{}]", i + 1), c.clone()))
                    .chain(form.map(|(i, c)| (format!("form[{}]", i + 1), c.clone())))
                    .collect()
            }
        }
    }
}

impl From<GSection> for Residual {
    fn from(s: GSection) -> Self {
        Residual::Section(s)
    }
}

impl From<ScalarField> for Residual {
    fn from(f: ScalarField) -> Self {
        Residual::Scalar(f)
    }
}

fn rationals<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

fn rational<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}

/// Evidence that a residual is nonzero: the full symbolic residual, the
/// component singled out, and a rational point where that component is
/// nonzero together with its exact value there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub residual: Vec<String>,
    pub component: String,
    pub expression: String,
    #[serde(serialize_with = "rationals")]
    pub point: Vec<Rational>,
    #[serde(serialize_with = "rational")]
    pub value: Rational,
}

impl Witness {
    /// Builds a witness for a nonzero residual over a chart of dimension `dim`.
    pub fn for_residual(residual: &Residual, dim: usize) -> Option<Witness> {
        let comps = residual.components();
        let (label, expr) = comps.iter().find(|(_, c)| !c.is_zero())?;
        let (point, value) = nonzero_point(expr, dim);
        Some(Witness {
            residual: comps.iter().map(|(_, c)| c.to_string()).collect(),
            component: label.clone(),
            expression: expr.to_string(),
            point,
            value,
        })
    }
}

/// A rational point where the nonzero field `f` is defined and nonzero.
///
/// Candidates come from a fixed pseudo-random stream of small rationals, so
/// the witness is deterministic.
pub fn nonzero_point(f: &ScalarField, dim: usize) -> (Vec<Rational>, Rational) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut spread = 3i64;
    loop {
        for _ in 0..64 {
            let point: Vec<Rational> = (0..dim)
                .map(|_| {
                    let n: i64 = rng.gen_range(-spread..=spread);
                    let d: i64 = rng.gen_range(1..=3);
                    Rational::new(n.into(), d.into())
                })
                .collect();
            if let Ok(v) = f.eval(&point) {
                if !v.is_zero() {
                    return (point, v);
                }
            }
        }
        // A nonzero rational function cannot vanish on every point of an
        // ever-growing grid, so this terminates.
        spread *= 2;
    }
}

/// One identity checked on one trial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    #[serde(rename = "check-id")]
    pub check_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Reports of the identity suites share the same record shape.
pub type IdentityReport = CheckReport;

impl CheckReport {
    pub fn from_residual(
        check_id: impl Into<String>,
        trial: Option<usize>,
        residual: &Residual,
        dim: usize,
    ) -> Self {
        let witness = Witness::for_residual(residual, dim);
        CheckReport {
            check_id: check_id.into(),
            trial,
            pass: witness.is_none(),
            witness,
        }
    }

    pub fn passed(check_id: impl Into<String>, trial: Option<usize>) -> Self {
        CheckReport {
            check_id: check_id.into(),
            trial,
            pass: true,
            witness: None,
        }
    }
}

pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Chart;

    #[test]
    fn witness_point_is_nonzero() {
        let chart = Chart::new(2);
        let f = chart.parse("(x1 - x2)/(x1^2 + 1)").unwrap();
        let (p, v) = nonzero_point(&f, 2);
        assert_eq!(f.eval(&p).unwrap(), v);
        assert!(!v.is_zero());
    }

    #[test]
    fn zero_residual_passes() {
        let r = CheckReport::from_residual("z", Some(0), &Residual::Scalar(ScalarField::zero()), 2);
        assert!(r.pass && r.witness.is_none());
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"check-id":"z","trial":0,"pass":true}"#);
    }

    #[test]
    fn witness_serializes_exact_rationals() {
        let chart = Chart::new(1);
        let f = chart.parse("x1/2").unwrap();
        let r = CheckReport::from_residual("h", None, &Residual::Scalar(f), 1);
        let w = r.witness.as_ref().unwrap();
        assert_eq!(w.component, "scalar");
        assert_eq!(w.expression, "1/2*x1");
        assert_eq!(w.value, &w.point[0] / Rational::from_integer(2.into()));
        let json = serde_json::to_value(&r).unwrap();
        assert!(json["witness"]["value"].is_string());
    }
}

//! Integrability verdict for an almost hypercomplex triple.
//!
//! The six concomitants are decided on a finite spanning family; the
//! equivalence of `N_II = N_JJ = 0`, `N_IJ = 0` and the vanishing of all six
//! is then checked, together with the connection clauses that accompany
//! `N_IJ = 0`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::connection::{connection, nabla_endo, torsion, torsion_target, Variant};
use crate::courant::GSection;
use crate::nijenhuis::concomitant;
use crate::quaternionic::{GEndo, HKTriple};
use crate::report::{Residual, Witness};
use crate::sample::{random_section, trial_rng, SuiteOptions};
use crate::scalar::{monomials_up_to, Polynomial, Rational, ScalarField};
use crate::Error;

/// A frame element times a coordinate monomial, with a printable label.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub label: String,
    pub section: GSection,
}

/// Every frame element `∂_i`, `dx^i` multiplied by every monomial of degree
/// at most `degree`.
pub fn spanning_family(dim: usize, degree: u32) -> Vec<FamilyMember> {
    let monomials = monomials_up_to(dim, degree);
    let mut out = Vec::with_capacity(2 * dim * monomials.len());
    for a in 0..2 * dim {
        let frame = if a < dim {
            format!("d/dx{}", a + 1)
        } else {
            format!("dx{}", a - dim + 1)
        };
        for m in &monomials {
            let coeff = Polynomial::term(Rational::from_integer(1.into()), m.clone());
            let label = if m.is_one() {
                frame.clone()
            } else {
                format!("{coeff}*{frame}")
            };
            out.push(FamilyMember {
                label,
                section: GSection::basis(dim, a).scale(&ScalarField::from_poly(coeff)),
            });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConcomitantStatus {
    pub vanishes: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Hypercomplex,
    NotHypercomplex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Consistency {
    Ok,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parallel {
    #[serde(rename = "I")]
    pub i: bool,
    #[serde(rename = "J")]
    pub j: bool,
    #[serde(rename = "K")]
    pub k: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct TheoremReport {
    pub structure_id: String,
    /// Keyed `N_II`, `N_JJ`, `N_KK`, `N_IJ`, `N_JK`, `N_KI`.
    pub concomitants: BTreeMap<String, ConcomitantStatus>,
    pub connection_equality: bool,
    pub parallel: Parallel,
    pub torsion_formula: bool,
    pub verdict: Verdict,
    pub consistency: Consistency,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

impl TheoremReport {
    pub fn status(&self, key: &str) -> &ConcomitantStatus {
        &self.concomitants[key]
    }

    pub fn is_consistent(&self) -> bool {
        self.consistency == Consistency::Ok
    }
}

pub const CONCOMITANT_KEYS: [&str; 6] = ["N_II", "N_JJ", "N_KK", "N_IJ", "N_JK", "N_KI"];

/// Decides `N_{F,G} = 0` on all ordered pairs of `family`, returning the
/// first nonzero pair in enumeration order.
pub fn decide_vanishing(
    f: &GEndo,
    g: &GEndo,
    family: &[FamilyMember],
) -> Result<ConcomitantStatus, Error> {
    let dim = f.dim();
    let pairs: Vec<(usize, usize)> = (0..family.len())
        .flat_map(|a| (0..family.len()).map(move |b| (a, b)))
        .collect();
    let found = pairs
        .par_iter()
        .map(|&(a, b)| -> Result<Option<(usize, usize, GSection)>, Error> {
            let r = concomitant(f, g, &family[a].section, &family[b].section)?;
            Ok((!r.is_zero()).then_some((a, b, r)))
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match found {
        None => Ok(ConcomitantStatus {
            vanishes: true,
            pair: None,
            witness: None,
        }),
        Some(Err(e)) => Err(e),
        Some(Ok(None)) => unreachable!(),
        Some(Ok(Some((a, b, r)))) => Ok(ConcomitantStatus {
            vanishes: false,
            pair: Some([family[a].label.clone(), family[b].label.clone()]),
            witness: Witness::for_residual(&Residual::Section(r), dim),
        }),
    }
}

/// Random section pairs for the connection clauses, plus the first `N_IJ`
/// witness pair when there is one.
fn clause_inputs(
    dim: usize,
    opts: &SuiteOptions,
    extra: Option<(GSection, GSection)>,
) -> Vec<(GSection, GSection)> {
    let mut out: Vec<(GSection, GSection)> = (0..opts.trials)
        .map(|t| {
            let mut rng = trial_rng(opts.seed, t);
            (
                random_section(&mut rng, dim, opts.degree),
                random_section(&mut rng, dim, opts.degree),
            )
        })
        .collect();
    out.extend(extra);
    out
}

fn all_inputs<F>(inputs: &[(GSection, GSection)], opts: &SuiteOptions, check: F) -> Result<bool, Error>
where
    F: Fn(&GSection, &GSection) -> Result<bool, Error> + Sync + Send,
{
    let results: Vec<Result<bool, Error>> = if opts.parallel {
        inputs.par_iter().map(|(x, y)| check(x, y)).collect()
    } else {
        inputs.iter().map(|(x, y)| check(x, y)).collect()
    };
    results.into_iter().try_fold(true, |acc, r| Ok(acc && r?))
}

/// Computes the full verdict without raising on an inconsistent pattern;
/// see [`theorem_report`] for the raising variant.
pub fn assess(
    structure_id: &str,
    hk: &HKTriple,
    opts: &SuiteOptions,
    family_degree: u32,
) -> Result<TheoremReport, Error> {
    hk.require_certified()?;
    let dim = hk.dim();
    let family = spanning_family(dim, family_degree);
    let (i, j, k) = (hk.i(), hk.j(), hk.k());
    let pairs = [(i, i), (j, j), (k, k), (i, j), (j, k), (k, i)];
    let mut concomitants = BTreeMap::new();
    for (key, (f, g)) in CONCOMITANT_KEYS.iter().zip(pairs) {
        concomitants.insert(key.to_string(), decide_vanishing(f, g, &family)?);
    }
    let vanishes = |key: &str| concomitants[key].vanishes;
    let first_pair = vanishes("N_II") && vanishes("N_JJ");
    let mixed = vanishes("N_IJ");
    let all_six = CONCOMITANT_KEYS.iter().all(|k| vanishes(k));

    let witness_pair = concomitants["N_IJ"].pair.as_ref().map(|[a, b]| {
        let find = |l: &str| family.iter().find(|m| m.label == l).unwrap().section.clone();
        (find(a), find(b))
    });
    let inputs = clause_inputs(dim, opts, witness_pair);

    let connection_equality = all_inputs(&inputs, opts, |x, y| {
        let base = connection(hk, Variant::Ijk, x, y)?;
        Ok(base == connection(hk, Variant::Jki, x, y)?
            && base == connection(hk, Variant::Kij, x, y)?)
    })?;
    let parallel_for = |p: &GEndo| {
        all_inputs(&inputs, opts, |x, y| Ok(nabla_endo(hk, Variant::Ijk, p, x, y)?.is_zero()))
    };
    let parallel = Parallel {
        i: parallel_for(i)?,
        j: parallel_for(j)?,
        k: parallel_for(k)?,
    };
    let torsion_formula = all_inputs(&inputs, opts, |x, y| {
        Ok(torsion(hk, Variant::Ijk, x, y)? == torsion_target(hk, x, y)?)
    })?;

    let mut violations = Vec::new();
    if !(first_pair == mixed && mixed == all_six) {
        violations.push(format!(
            "N_II = N_JJ = 0: {first_pair}, N_IJ = 0: {mixed}, all six vanish: {all_six}"
        ));
    }
    if mixed {
        if !connection_equality {
            violations.push("N_IJ = 0 but the three connections differ".into());
        }
        if !(parallel.i && parallel.j && parallel.k) {
            violations.push("N_IJ = 0 but I, J, K are not all parallel".into());
        }
        if !torsion_formula {
            violations.push("N_IJ = 0 but the torsion formula fails".into());
        }
    } else if parallel.i && torsion_formula {
        violations.push("N_IJ != 0 yet I is parallel and the torsion formula holds".into());
    }

    let consistency = if violations.is_empty() {
        Consistency::Ok
    } else {
        Consistency::Violated
    };
    let verdict = if all_six && consistency == Consistency::Ok {
        Verdict::Hypercomplex
    } else {
        Verdict::NotHypercomplex
    };
    Ok(TheoremReport {
        structure_id: structure_id.to_string(),
        concomitants,
        connection_equality,
        parallel,
        torsion_formula,
        verdict,
        consistency,
        violations,
    })
}

/// As [`assess`], raising `InconsistentEquivalence` when the observed
/// pattern contradicts the theorem.
pub fn theorem_report(
    structure_id: &str,
    hk: &HKTriple,
    opts: &SuiteOptions,
    family_degree: u32,
) -> Result<TheoremReport, Error> {
    let report = assess(structure_id, hk, opts, family_degree)?;
    if report.is_consistent() {
        Ok(report)
    } else {
        Err(Error::InconsistentEquivalence(report.violations.join("; ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_size_and_labels() {
        let fam = spanning_family(2, 1);
        assert_eq!(fam.len(), 4 * 3);
        assert_eq!(fam[0].label, "d/dx1");
        assert!(fam.iter().any(|m| m.label == "x2*dx1"));
        assert!(fam.iter().all(|m| !m.section.is_zero()));
    }

    fn opts() -> SuiteOptions {
        SuiteOptions {
            trials: 3,
            ..SuiteOptions::default()
        }
    }

    #[test]
    fn flat_triple_is_hypercomplex() {
        let r = theorem_report("flat", &crate::examples::flat_quaternionic(), &opts(), 1).unwrap();
        assert_eq!(r.verdict, Verdict::Hypercomplex);
        assert!(r.connection_equality && r.torsion_formula);
        assert!(r.parallel.i && r.parallel.j && r.parallel.k);
    }

    #[test]
    fn nonintegrable_triple_is_consistent() {
        let r = theorem_report("conj", &crate::examples::nonintegrable(), &opts(), 1).unwrap();
        assert_eq!(r.verdict, Verdict::NotHypercomplex);
        for key in ["N_JJ", "N_IJ"] {
            let st = r.status(key);
            assert!(!st.vanishes);
            assert!(st.witness.is_some() && st.pair.is_some());
        }
        assert!(!r.torsion_formula);
    }
}

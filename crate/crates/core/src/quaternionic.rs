//! Endomorphisms of `TM ⊕ T*M` and certification of almost hypercomplex
//! triples.

use crate::cartan::TwoForm;
use crate::courant::{gram_entry, pairing, GSection};
use crate::report::{CheckReport, Residual, Witness};
use crate::scalar::{Rational, ScalarField};
use crate::Error;

/// Square matrix of scalar fields, row-major.
pub type Matrix = Vec<Vec<ScalarField>>;

pub fn identity_matrix(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { ScalarField::one() } else { ScalarField::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    a[i].iter()
                        .zip(b)
                        .filter(|(x, row)| !x.is_zero() && !row[j].is_zero())
                        .map(|(x, row)| x * &row[j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let n = a.first().map_or(0, Vec::len);
    (0..n).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

fn neg_matrix(a: &Matrix) -> Matrix {
    a.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

fn check_square(a: &Matrix, n: usize) -> Result<(), Error> {
    if a.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.len(),
        });
    }
    for row in a {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
    }
    Ok(())
}

/// First entry of `a + identity` that is nonzero, if any.
fn plus_identity_defect(a: &Matrix) -> Option<(usize, usize, ScalarField)> {
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let r = if i == j { x + &ScalarField::one() } else { x.clone() };
            if !r.is_zero() {
                return Some((i, j, r));
            }
        }
    }
    None
}

/// Which block of an endomorphism in the frame `(∂_i, dx^j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    /// tangent → tangent
    A,
    /// cotangent → tangent
    B,
    /// tangent → cotangent
    C,
    /// cotangent → cotangent
    D,
}

/// Endomorphism of `TM ⊕ T*M`, stored as the full `2n × 2n` matrix
/// `[[A, B], [C, D]]` acting on stacked components `(X, ξ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GEndo {
    n: usize,
    m: Matrix,
}

impl GEndo {
    pub fn identity(n: usize) -> Self {
        GEndo {
            n,
            m: identity_matrix(2 * n),
        }
    }

    pub fn zero(n: usize) -> Self {
        GEndo {
            n,
            m: vec![vec![ScalarField::zero(); 2 * n]; 2 * n],
        }
    }

    pub fn from_blocks(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Result<Self, Error> {
        let n = a.len();
        for blk in [&a, &b, &c, &d] {
            check_square(blk, n)?;
        }
        let top = a.into_iter().zip(b).map(|(mut l, r)| {
            l.extend(r);
            l
        });
        let bottom = c.into_iter().zip(d).map(|(mut l, r)| {
            l.extend(r);
            l
        });
        Ok(GEndo {
            n,
            m: top.chain(bottom).collect(),
        })
    }

    pub fn from_matrix(m: Matrix) -> Result<Self, Error> {
        if m.len() % 2 != 0 {
            return Err(Error::DimensionMismatch {
                expected: m.len() + 1,
                found: m.len(),
            });
        }
        check_square(&m, m.len())?;
        Ok(GEndo { n: m.len() / 2, m })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn entry(&self, r: usize, c: usize) -> &ScalarField {
        &self.m[r][c]
    }

    pub fn block(&self, which: Block) -> Matrix {
        let n = self.n;
        let (r0, c0) = match which {
            Block::A => (0, 0),
            Block::B => (0, n),
            Block::C => (n, 0),
            Block::D => (n, n),
        };
        self.m[r0..r0 + n]
            .iter()
            .map(|row| row[c0..c0 + n].to_vec())
            .collect()
    }

    fn same_dim(&self, other: usize) -> Result<(), Error> {
        if self.n == other {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: other,
            })
        }
    }

    /// `(A·X + B·ξ, C·X + D·ξ)`.
    pub fn apply(&self, s: &GSection) -> Result<GSection, Error> {
        self.same_dim(s.dim())?;
        let input: Vec<&ScalarField> = s.components().collect();
        let out = self
            .m
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&input)
                    .filter(|(a, x)| !a.is_zero() && !x.is_zero())
                    .map(|(a, x)| a * *x)
                    .sum()
            })
            .collect();
        GSection::from_components(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GEndo) -> Result<GEndo, Error> {
        self.same_dim(other.n)?;
        Ok(GEndo {
            n: self.n,
            m: mat_mul(&self.m, &other.m),
        })
    }

    pub fn add(&self, other: &GEndo) -> Result<GEndo, Error> {
        self.same_dim(other.n)?;
        Ok(GEndo {
            n: self.n,
            m: self
                .m
                .iter()
                .zip(&other.m)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        })
    }

    pub fn neg(&self) -> GEndo {
        GEndo {
            n: self.n,
            m: neg_matrix(&self.m),
        }
    }

    pub fn scale(&self, f: &ScalarField) -> GEndo {
        GEndo {
            n: self.n,
            m: self
                .m
                .iter()
                .map(|r| r.iter().map(|x| x * f).collect())
                .collect(),
        }
    }

    pub fn is_minus_identity(&self) -> bool {
        plus_identity_defect(&self.m).is_none()
    }
}

/// Checks `⟨F e_a, F e_b⟩ = ⟨e_a, e_b⟩` on every pair of frame elements,
/// which suffices by bilinearity.
pub fn is_orthogonal(f: &GEndo) -> CheckReport {
    let n = f.dim();
    let images: Vec<GSection> = (0..2 * n)
        .map(|a| f.apply(&GSection::basis(n, a)).expect("same dimension"))
        .collect();
    for a in 0..2 * n {
        for b in a..2 * n {
            let p = pairing(&images[a], &images[b]).expect("same dimension");
            let defect = &p - &ScalarField::constant(gram_entry(n, a, b));
            if !defect.is_zero() {
                let mut w = Witness::for_residual(&Residual::Scalar(defect), n)
                    .expect("nonzero defect");
                w.component = format!("pairing(e{}, e{})", a + 1, b + 1);
                return CheckReport {
                    check_id: "orthogonal".into(),
                    trial: None,
                    pass: false,
                    witness: Some(w),
                };
            }
        }
    }
    CheckReport::passed("orthogonal", None)
}

/// Skew-adjointness `⟨Fs, t⟩ + ⟨s, Ft⟩ = 0` on frame pairs.
pub fn is_skew_adjoint(f: &GEndo) -> bool {
    let n = f.dim();
    (0..2 * n).all(|a| {
        (0..2 * n).all(|b| {
            let ea = GSection::basis(n, a);
            let eb = GSection::basis(n, b);
            let l = pairing(&f.apply(&ea).unwrap(), &eb).unwrap();
            let r = pairing(&ea, &f.apply(&eb).unwrap()).unwrap();
            (&l + &r).is_zero()
        })
    })
}

/// Checks `I² = J² = K² = IJK = −1` exactly.
pub fn quaternionic_check(i: &GEndo, j: &GEndo, k: &GEndo) -> Result<CheckReport, Error> {
    let ij = i.compose(j)?;
    let relations = [
        ("I^2", i.compose(i)?),
        ("J^2", j.compose(j)?),
        ("K^2", k.compose(k)?),
        ("IJK", ij.compose(k)?),
    ];
    for (name, m) in relations {
        if let Some((r, c, defect)) = plus_identity_defect(m.matrix()) {
            let mut w = Witness::for_residual(&Residual::Scalar(defect), i.dim())
                .expect("nonzero defect");
            w.component = format!("{name} + 1 at ({}, {})", r + 1, c + 1);
            return Ok(CheckReport {
                check_id: "quaternionic".into(),
                trial: None,
                pass: false,
                witness: Some(w),
            });
        }
    }
    Ok(CheckReport::passed("quaternionic", None))
}

/// `diag(−j, jᵀ)`: the lift of an almost complex structure `j` on `TM`,
/// with the dual map realized as the transpose.
pub fn lift_diagonal(j: &Matrix) -> Result<GEndo, Error> {
    let n = j.len();
    check_square(j, n)?;
    if plus_identity_defect(&mat_mul(j, j)).is_some() {
        return Err(Error::NotAlmostComplex);
    }
    let zero = vec![vec![ScalarField::zero(); n]; n];
    GEndo::from_blocks(neg_matrix(j), zero.clone(), zero, transpose(j))
}

/// `[[0, ω⁻¹], [−ω, 0]]`, mapping `(X, ξ) ↦ (ω⁻¹ ξ, −ω X)`. The inverse is
/// supplied by the caller and validated.
pub fn lift_symplectic(omega: &TwoForm, omega_inv: &Matrix) -> Result<GEndo, Error> {
    let n = omega.dim();
    check_square(omega_inv, n)?;
    let w: Matrix = omega.rows().to_vec();
    let prod = mat_mul(&w, omega_inv);
    let is_identity = prod.iter().enumerate().all(|(r, row)| {
        row.iter()
            .enumerate()
            .all(|(c, x)| if r == c { x.is_one() } else { x.is_zero() })
    });
    if !is_identity {
        return Err(Error::NotInverse);
    }
    let zero = vec![vec![ScalarField::zero(); n]; n];
    GEndo::from_blocks(zero.clone(), omega_inv.clone(), neg_matrix(&w), zero)
}

/// Candidate almost hypercomplex structure with its certificates, computed
/// once at construction.
#[derive(Debug, Clone)]
pub struct HKTriple {
    i: GEndo,
    j: GEndo,
    k: GEndo,
    orthogonal: [CheckReport; 3],
    quaternionic: CheckReport,
}

impl HKTriple {
    pub fn new(i: GEndo, j: GEndo, k: GEndo) -> Result<Self, Error> {
        let quaternionic = quaternionic_check(&i, &j, &k)?;
        let orthogonal = [&i, &j, &k].map(is_orthogonal);
        Ok(HKTriple {
            i,
            j,
            k,
            orthogonal,
            quaternionic,
        })
    }

    /// The triple `(I, J, IJ)`.
    pub fn from_pair(i: GEndo, j: GEndo) -> Result<Self, Error> {
        let k = i.compose(&j)?;
        Self::new(i, j, k)
    }

    pub fn i(&self) -> &GEndo {
        &self.i
    }

    pub fn j(&self) -> &GEndo {
        &self.j
    }

    pub fn k(&self) -> &GEndo {
        &self.k
    }

    pub fn dim(&self) -> usize {
        self.i.dim()
    }

    pub fn certified_orthogonal(&self) -> [bool; 3] {
        [0, 1, 2].map(|m| self.orthogonal[m].pass)
    }

    pub fn certified_quaternionic(&self) -> bool {
        self.quaternionic.pass
    }

    pub fn is_certified(&self) -> bool {
        self.certified_quaternionic() && self.certified_orthogonal().iter().all(|&b| b)
    }

    pub fn require_certified(&self) -> Result<(), Error> {
        if self.is_certified() {
            return Ok(());
        }
        let failed: Vec<String> = self
            .certification_reports()
            .into_iter()
            .filter(|r| !r.pass)
            .map(|r| r.check_id)
            .collect();
        Err(Error::UncertifiedStructure(failed.join(", ")))
    }

    /// Orthogonality of I, J, K and the quaternionic relations, labelled.
    pub fn certification_reports(&self) -> Vec<CheckReport> {
        let mut out: Vec<CheckReport> = ["I", "J", "K"]
            .iter()
            .zip(&self.orthogonal)
            .map(|(name, r)| CheckReport {
                check_id: format!("orthogonal-{name}"),
                ..r.clone()
            })
            .collect();
        out.push(self.quaternionic.clone());
        out
    }

    /// `(J, K, I)`, recertified.
    pub fn rotated(&self) -> HKTriple {
        HKTriple::new(self.j.clone(), self.k.clone(), self.i.clone()).expect("same dimension")
    }
}

pub(crate) fn constant(n: i64) -> ScalarField {
    ScalarField::constant(Rational::from_integer(n.into()))
}

/// Integer matrix helper for builders and tests.
pub fn int_matrix(rows: &[&[i64]]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| constant(x)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{OneForm, VectorField};
    use crate::examples;
    use crate::scalar::Chart;

    fn j_std() -> Matrix {
        // ∂1 ↦ ∂2, ∂2 ↦ −∂1
        int_matrix(&[&[0, -1], &[1, 0]])
    }

    #[test]
    fn identity_acts_trivially() {
        let c = Chart::new(2);
        let s = GSection::from_components(
            ["x1", "x2^2", "1", "x1*x2"].iter().map(|t| c.parse(t).unwrap()).collect(),
        )
        .unwrap();
        assert_eq!(GEndo::identity(2).apply(&s).unwrap(), s);
        let f = lift_diagonal(&j_std()).unwrap();
        assert_eq!(f.compose(&GEndo::identity(2)).unwrap(), f);
    }

    #[test]
    fn block_actions() {
        let c = Chart::new(2);
        let x = VectorField(vec![c.parse("x2").unwrap(), c.parse("3").unwrap()]);
        let lifted = lift_diagonal(&j_std()).unwrap();
        let out = lifted.apply(&GSection::from_vector(x.clone())).unwrap();
        // −jX with jX = (−X², X¹)
        let expected = VectorField(vec![c.parse("3").unwrap(), c.parse("-x2").unwrap()]);
        assert_eq!(out, GSection::from_vector(expected));

        let w = TwoForm::elementary(2, 0, 1);
        let winv = int_matrix(&[&[0, -1], &[1, 0]]);
        let sym = lift_symplectic(&w, &winv).unwrap();
        let out = sym.apply(&GSection::from_vector(x.clone())).unwrap();
        // −ωX as a matrix product
        let wx = OneForm(vec![c.parse("-3").unwrap(), c.parse("x2").unwrap()]);
        assert_eq!(out, GSection::from_form(wx));
    }

    #[test]
    fn dimension_mismatch() {
        let e = GEndo::identity(2);
        assert!(e.apply(&GSection::zero(3)).is_err());
        assert!(e.compose(&GEndo::identity(3)).is_err());
        let bad = GEndo::from_blocks(
            identity_matrix(2),
            identity_matrix(3),
            identity_matrix(2),
            identity_matrix(2),
        );
        assert!(matches!(bad, Err(Error::DimensionMismatch { expected: 2, found: 3 })));
    }

    #[test]
    fn orthogonality() {
        assert!(is_orthogonal(&GEndo::identity(2)).pass);
        assert!(is_orthogonal(&lift_diagonal(&j_std()).unwrap()).pass);
        let twice = GEndo::identity(2).scale(&constant(2));
        let r = is_orthogonal(&twice);
        assert!(!r.pass);
        let w = r.witness.unwrap();
        assert_eq!(w.component, "pairing(e1, e3)");
        assert_eq!(w.value, Rational::new(3.into(), 2.into()));
    }

    #[test]
    fn lift_errors() {
        assert!(matches!(lift_diagonal(&identity_matrix(2)), Err(Error::NotAlmostComplex)));
        let degenerate = TwoForm::new(int_matrix(&[&[0, 0], &[0, 0]])).unwrap();
        assert!(matches!(
            lift_symplectic(&degenerate, &identity_matrix(2)),
            Err(Error::NotInverse)
        ));
    }

    #[test]
    fn lifts_square_to_minus_one() {
        let f = lift_diagonal(&j_std()).unwrap();
        assert!(f.compose(&f).unwrap().is_minus_identity());
        assert_eq!(f.block(Block::A), neg_matrix(&j_std()));
        assert_eq!(f.block(Block::D), transpose(&j_std()));
        let w = TwoForm::elementary(2, 0, 1);
        let s = lift_symplectic(&w, &int_matrix(&[&[0, -1], &[1, 0]])).unwrap();
        assert!(s.compose(&s).unwrap().is_minus_identity());
    }

    #[test]
    fn quaternionic_examples() {
        let t = examples::flat_quaternionic();
        assert!(t.is_certified());
        assert!(t.i().compose(t.i()).unwrap().is_minus_identity());
        assert_eq!(&t.i().compose(t.j()).unwrap(), t.k());

        let wrong = quaternionic_check(t.i(), t.j(), &t.k().neg()).unwrap();
        assert!(!wrong.pass);
        assert!(wrong.witness.unwrap().component.starts_with("IJK"));

        let id = GEndo::identity(4);
        let r = quaternionic_check(&id, &id, &id).unwrap();
        assert!(r.witness.unwrap().component.starts_with("I^2"));
    }

    #[test]
    fn symplectic_lift_on_r4_is_orthogonal() {
        let (_, omega2, _, inv2) = examples::holomorphic_symplectic_forms();
        let f = lift_symplectic(&omega2, &inv2).unwrap();
        assert!(is_orthogonal(&f).pass);
        assert!(is_skew_adjoint(&f));
    }

    #[test]
    fn rotations_stay_quaternionic() {
        for t in [examples::flat_quaternionic(), examples::holomorphic_symplectic(), examples::nonintegrable()] {
            let r1 = t.rotated();
            let r2 = r1.rotated();
            assert!(r1.is_certified() && r2.is_certified());
            assert!(quaternionic_check(r1.i(), r1.j(), r1.k()).unwrap().pass);
            assert!(quaternionic_check(r2.i(), r2.j(), r2.k()).unwrap().pass);
            for f in [t.i(), t.j(), t.k()] {
                assert!(is_skew_adjoint(f));
            }
        }
    }
}

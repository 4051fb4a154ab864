//! The standard Courant algebroid on `TM ⊕ T*M`: anchor, pairing, the map
//! `D`, the Dorfman bracket and its skew-symmetrization.

use crate::cartan::{
    d_oneform, d_scalar, interior_product, lie_bracket, lie_derivative_oneform, pair_form_vector,
    OneForm, VectorField,
};
use crate::mutation::{self, Mutation};
use crate::report::{CheckReport, Residual};
use crate::sample::{random_scalar, random_section, run_trials, trial_rng, SuiteOptions};
use crate::scalar::{Rational, ScalarField};
use crate::Error;

/// Section `X + ξ` of `TM ⊕ T*M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSection {
    pub vec: VectorField,
    pub form: OneForm,
}

impl GSection {
    pub fn new(vec: VectorField, form: OneForm) -> Self {
        debug_assert_eq!(vec.dim(), form.dim());
        GSection { vec, form }
    }

    /// Builds a section from its `2n` stacked components `(X^1..X^n, ξ_1..ξ_n)`.
    pub fn from_components(mut comps: Vec<ScalarField>) -> Result<Self, Error> {
        if comps.len() % 2 != 0 {
            return Err(Error::DimensionMismatch {
                expected: comps.len() + 1,
                found: comps.len(),
            });
        }
        let form = comps.split_off(comps.len() / 2);
        Ok(GSection::new(VectorField(comps), OneForm(form)))
    }

    pub fn zero(dim: usize) -> Self {
        GSection::new(VectorField::zero(dim), OneForm::zero(dim))
    }

    /// Basis element `a` of the frame `(∂_1, .., ∂_n, dx^1, .., dx^n)`.
    pub fn basis(dim: usize, a: usize) -> Self {
        if a < dim {
            GSection::new(VectorField::basis(dim, a), OneForm::zero(dim))
        } else {
            GSection::new(VectorField::zero(dim), OneForm::basis(dim, a - dim))
        }
    }

    pub fn from_vector(vec: VectorField) -> Self {
        let dim = vec.dim();
        GSection::new(vec, OneForm::zero(dim))
    }

    pub fn from_form(form: OneForm) -> Self {
        let dim = form.dim();
        GSection::new(VectorField::zero(dim), form)
    }

    pub fn dim(&self) -> usize {
        self.vec.dim()
    }

    /// Component `a` in the stacked frame.
    pub fn component(&self, a: usize) -> &ScalarField {
        let n = self.dim();
        if a < n {
            &self.vec.components()[a]
        } else {
            &self.form.components()[a - n]
        }
    }

    pub fn components(&self) -> impl Iterator<Item = &ScalarField> {
        self.vec.components().iter().chain(self.form.components())
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero() && self.form.is_zero()
    }

    pub fn add(&self, other: &GSection) -> GSection {
        GSection::new(self.vec.add(&other.vec), self.form.add(&other.form))
    }

    pub fn sub(&self, other: &GSection) -> GSection {
        GSection::new(self.vec.sub(&other.vec), self.form.sub(&other.form))
    }

    pub fn neg(&self) -> GSection {
        GSection::new(self.vec.neg(), self.form.neg())
    }

    pub fn scale(&self, f: &ScalarField) -> GSection {
        GSection::new(self.vec.scale(f), self.form.scale(f))
    }

    pub fn scale_q(&self, q: &Rational) -> GSection {
        self.scale(&ScalarField::constant(q.clone()))
    }

    /// `ρ(self) f`.
    pub fn derive(&self, f: &ScalarField) -> ScalarField {
        self.vec.apply(f)
    }
}

fn check_dims(s: &GSection, t: &GSection) -> Result<(), Error> {
    if s.dim() == t.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: t.dim(),
        })
    }
}

pub(crate) fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// Projection onto the tangent part.
pub fn anchor(s: &GSection) -> VectorField {
    s.vec.clone()
}

/// `⟨X+ξ, Y+η⟩ = ½(ξ(Y) + η(X))`.
pub fn pairing(s: &GSection, t: &GSection) -> Result<ScalarField, Error> {
    check_dims(s, t)?;
    let a = pair_form_vector(&s.form, &t.vec)?;
    let b = pair_form_vector(&t.form, &s.vec)?;
    Ok((&a + &b).scale(&half()))
}

/// `Df = (0, df)`, characterized by `⟨Df, x⟩ = ½ ρ(x) f`.
pub fn dd(f: &ScalarField, dim: usize) -> GSection {
    GSection::from_form(d_scalar(f, dim))
}

/// `(X+ξ) ∘ (Y+η) = [X,Y] + (L_X η − ι_Y dξ)`.
pub fn dorfman(s: &GSection, t: &GSection) -> Result<GSection, Error> {
    check_dims(s, t)?;
    let vec = lie_bracket(&s.vec, &t.vec)?;
    let transport = lie_derivative_oneform(&s.vec, &t.form)?;
    let contraction = interior_product(&t.vec, &d_oneform(&s.form))?;
    let form = if mutation::is_active(Mutation::FlipContraction) {
        transport.add(&contraction)
    } else {
        transport.sub(&contraction)
    };
    Ok(GSection::new(vec, form))
}

/// Skew-symmetric part `½(s∘t − t∘s)` of the Dorfman bracket.
pub fn courant(s: &GSection, t: &GSection) -> Result<GSection, Error> {
    let st = dorfman(s, t)?;
    let ts = dorfman(t, s)?;
    Ok(st.sub(&ts).scale_q(&half()))
}

pub const AXIOM_CHECKS: [&str; 7] = [
    "jacobi",
    "anchor-morphism",
    "leibniz",
    "symmetric-part",
    "exact-kernel",
    "pairing-invariance",
    "dorfman-courant-split",
];

/// Residuals of the Courant algebroid axioms on one triple `(x, y, z)` and
/// function `f`, in the order of [`AXIOM_CHECKS`].
pub fn axiom_residuals(
    x: &GSection,
    y: &GSection,
    z: &GSection,
    f: &ScalarField,
) -> Result<Vec<Residual>, Error> {
    let n = x.dim();
    let two = Rational::from_integer(2.into());
    let xy = dorfman(x, y)?;
    let yx = dorfman(y, x)?;
    let xz = dorfman(x, z)?;

    let jacobi = dorfman(x, &dorfman(y, z)?)?
        .sub(&dorfman(&xy, z)?)
        .sub(&dorfman(y, &xz)?);

    let anchor_morphism = GSection::from_vector(anchor(&xy).sub(&lie_bracket(&anchor(x), &anchor(y))?));

    let leibniz = dorfman(x, &y.scale(f))?
        .sub(&y.scale(&x.derive(f)))
        .sub(&xy.scale(f));

    let pxy = pairing(x, y)?;
    let symmetric = xy.add(&yx).sub(&dd(&pxy, n).scale_q(&two));

    let exact_kernel = dorfman(&dd(f, n), x)?;

    let invariance = &(&x.derive(&pairing(y, z)?) - &pairing(&xy, z)?) - &pairing(y, &xz)?;

    let split = xy.sub(&courant(x, y)?).sub(&dd(&pxy, n));

    Ok(vec![
        jacobi.into(),
        anchor_morphism.into(),
        leibniz.into(),
        symmetric.into(),
        exact_kernel.into(),
        invariance.into(),
        split.into(),
    ])
}

/// Checks every axiom on `opts.trials` seeded random polynomial triples in
/// dimension `dim`. Failures are reported, never raised.
pub fn verify_axioms(dim: usize, opts: &SuiteOptions) -> Vec<CheckReport> {
    let per_trial = run_trials(opts, |trial| {
        let mut rng = trial_rng(opts.seed, trial);
        let x = random_section(&mut rng, dim, opts.degree);
        let y = random_section(&mut rng, dim, opts.degree);
        let z = random_section(&mut rng, dim, opts.degree);
        let f = random_scalar(&mut rng, dim, opts.degree);
        let residuals = axiom_residuals(&x, &y, &z, &f).expect("sections share the chart");
        AXIOM_CHECKS
            .iter()
            .zip(&residuals)
            .map(|(id, r)| CheckReport::from_residual(*id, Some(trial), r, dim))
            .collect::<Vec<_>>()
    });
    per_trial.into_iter().flatten().collect()
}

/// Gram matrix of the pairing on the stacked frame: `½` on the off-diagonal
/// identity blocks, zero elsewhere.
pub fn gram_entry(dim: usize, a: usize, b: usize) -> Rational {
    if (a < dim) != (b < dim) && a % dim == b % dim {
        half()
    } else {
        Rational::from_integer(0.into())
    }
}

//! The canonical hypercomplex connections of an almost hypercomplex triple,
//! their torsion, covariant derivatives of endomorphisms, and the suites of
//! identities they satisfy for every certified triple.

use crate::courant::{courant, dd, dorfman, half, pairing, GSection};
use crate::mutation::{self, Mutation};
use crate::nijenhuis::{concomitant, delta};
use crate::quaternionic::{GEndo, HKTriple};
use crate::report::{CheckReport, IdentityReport, Residual};
use crate::sample::{random_scalar, random_section, run_trials, trial_rng, SuiteOptions};
use crate::scalar::{Rational, ScalarField};
use crate::Error;

/// Which cyclic ordering of the triple enters the connection formula.
///
/// For an ordering `(P, Q, R)`:
///
/// ```text
/// ∇_X Y = −½ R( [QY, PX] − Q[Y, PX] − P[QY, X] + QP[Y, X] )
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `(I, J, K)`
    Ijk,
    /// `(J, K, I)`
    Jki,
    /// `(K, I, J)`
    Kij,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Ijk, Variant::Jki, Variant::Kij];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Ijk => "ijk",
            Variant::Jki => "jki",
            Variant::Kij => "kij",
        }
    }

    fn ordering(self, hk: &HKTriple) -> (&GEndo, &GEndo, &GEndo) {
        match self {
            Variant::Ijk => (hk.i(), hk.j(), hk.k()),
            Variant::Jki => (hk.j(), hk.k(), hk.i()),
            Variant::Kij => (hk.k(), hk.i(), hk.j()),
        }
    }
}

/// `∇_X Y` for the given variant.
pub fn connection(
    hk: &HKTriple,
    variant: Variant,
    x: &GSection,
    y: &GSection,
) -> Result<GSection, Error> {
    hk.require_certified()?;
    raw_connection(hk, variant, x, y)
}

fn raw_connection(
    hk: &HKTriple,
    variant: Variant,
    x: &GSection,
    y: &GSection,
) -> Result<GSection, Error> {
    let (p, q, r) = variant.ordering(hk);
    let px = p.apply(x)?;
    let qy = q.apply(y)?;
    let last = q.apply(&p.apply(&dorfman(y, x)?)?)?;
    let inner = dorfman(&qy, &px)?
        .sub(&q.apply(&dorfman(y, &px)?)?)
        .sub(&p.apply(&dorfman(&qy, x)?)?);
    let inner = if mutation::is_active(Mutation::FlipConnectionTerm) {
        inner.sub(&last)
    } else {
        inner.add(&last)
    };
    Ok(r.apply(&inner)?.scale_q(&-half()))
}

/// `T(X,Y) = ∇_X Y − ∇_Y X − ⟦X,Y⟧` with the Courant (skew) bracket.
pub fn torsion(hk: &HKTriple, variant: Variant, x: &GSection, y: &GSection) -> Result<GSection, Error> {
    hk.require_certified()?;
    Ok(raw_connection(hk, variant, x, y)?
        .sub(&raw_connection(hk, variant, y, x)?)
        .sub(&courant(x, y)?))
}

/// `I D⟨X,IY⟩ + J D⟨X,JY⟩ + K D⟨X,KY⟩`, the torsion of the connection that
/// makes an integrable triple parallel.
pub fn torsion_target(hk: &HKTriple, x: &GSection, y: &GSection) -> Result<GSection, Error> {
    let n = x.dim();
    let mut acc = GSection::zero(n);
    for p in [hk.i(), hk.j(), hk.k()] {
        let c = pairing(x, &p.apply(y)?)?;
        if !c.is_zero() {
            acc = acc.add(&p.apply(&dd(&c, n))?);
        }
    }
    Ok(acc)
}

/// `(∇_X F) Y = ∇_X(FY) − F(∇_X Y)`.
pub fn nabla_endo(
    hk: &HKTriple,
    variant: Variant,
    f: &GEndo,
    x: &GSection,
    y: &GSection,
) -> Result<GSection, Error> {
    hk.require_certified()?;
    Ok(raw_connection(hk, variant, x, &f.apply(y)?)?
        .sub(&f.apply(&raw_connection(hk, variant, x, y)?)?))
}

pub const LAW_CHECKS: [&str; 2] = ["tensorial-first-slot", "twisted-leibniz"];

/// Residuals of `∇_{fX}Y = f∇_X Y` and
/// `∇_X(fY) = (ρ(X)f)Y + f∇_X Y − Δ_f(X,Y)`.
pub fn connection_law_residuals(
    hk: &HKTriple,
    variant: Variant,
    f: &ScalarField,
    x: &GSection,
    y: &GSection,
) -> Result<[GSection; 2], Error> {
    let base = connection(hk, variant, x, y)?;
    let f_base = base.scale(f);
    let tensorial = connection(hk, variant, &x.scale(f), y)?.sub(&f_base);
    let leibniz = connection(hk, variant, x, &y.scale(f))?
        .sub(&y.scale(&x.derive(f)))
        .sub(&f_base)
        .add(&delta(hk, f, x, y)?);
    Ok([tensorial, leibniz])
}

/// Both connection laws on `opts.trials` random sections and polynomials.
pub fn check_connection_laws(
    hk: &HKTriple,
    variant: Variant,
    opts: &SuiteOptions,
) -> Result<Vec<IdentityReport>, Error> {
    hk.require_certified()?;
    let n = hk.dim();
    let per_trial = run_trials(opts, |trial| -> Result<Vec<CheckReport>, Error> {
        let mut rng = trial_rng(opts.seed, trial);
        let x = random_section(&mut rng, n, opts.degree);
        let y = random_section(&mut rng, n, opts.degree);
        let f = random_scalar(&mut rng, n, opts.degree);
        let residuals = connection_law_residuals(hk, variant, &f, &x, &y)?;
        Ok(LAW_CHECKS
            .iter()
            .zip(residuals)
            .map(|(id, r)| CheckReport::from_residual(*id, Some(trial), &Residual::Section(r), n))
            .collect())
    });
    Ok(per_trial.into_iter().collect::<Result<Vec<_>, _>>()?.concat())
}

pub const IDENTITY_CHECKS: [&str; 8] = [
    "nabla-j",
    "nabla-i-concomitant",
    "bracket-decomposition",
    "concomitant-skew",
    "delta-equivariance-i",
    "delta-equivariance-j",
    "delta-equivariance-k",
    "delta-symmetric-part",
];

/// Residuals of the identities that hold for every almost hypercomplex
/// triple, in the order of [`IDENTITY_CHECKS`]. The connection is the
/// [`Variant::Ijk`] one.
pub fn identity_residuals(
    hk: &HKTriple,
    f: &ScalarField,
    x: &GSection,
    y: &GSection,
) -> Result<Vec<GSection>, Error> {
    hk.require_certified()?;
    let n = x.dim();
    let v = Variant::Ijk;
    let (i, j, k) = (hk.i(), hk.j(), hk.k());
    let h = half();

    let nabla_j = nabla_endo(hk, v, j, x, y)?;

    let n_xy = concomitant(i, j, x, y)?;
    let n_x_iy = concomitant(i, j, x, &i.apply(y)?)?;
    let nabla_i = nabla_endo(hk, v, i, x, y)?
        .sub(&k.apply(&n_x_iy)?.scale_q(&h))
        .sub(&j.apply(&n_xy)?.scale_q(&h));

    let nabla_xy = raw_connection(hk, v, x, y)?;
    let nabla_yx = raw_connection(hk, v, y, x)?;
    let lhs = dorfman(x, y)?.add(&k.apply(&n_xy)?.scale_q(&h));
    let rhs = nabla_xy
        .sub(&nabla_yx)
        .add(&dd(&pairing(x, y)?, n))
        .sub(&torsion_target(hk, x, y)?);
    let decomposition = lhs.sub(&rhs);

    let skew = n_xy.add(&concomitant(i, j, y, x)?);

    let dxy = delta(hk, f, x, y)?;
    let mut equivariance = Vec::with_capacity(3);
    for p in [i, j, k] {
        equivariance.push(delta(hk, f, x, &p.apply(y)?)?.sub(&p.apply(&dxy)?));
    }

    let two = Rational::from_integer(2.into());
    let symmetric = dxy
        .add(&delta(hk, f, y, x)?)
        .sub(&dd(f, n).scale(&pairing(x, y)?).scale_q(&two));

    let mut out = vec![nabla_j, nabla_i, decomposition, skew];
    out.extend(equivariance);
    out.push(symmetric);
    Ok(out)
}

/// The unconditional identity suite on `opts.trials` random inputs.
pub fn check_identities(hk: &HKTriple, opts: &SuiteOptions) -> Result<Vec<IdentityReport>, Error> {
    hk.require_certified()?;
    let n = hk.dim();
    let per_trial = run_trials(opts, |trial| -> Result<Vec<CheckReport>, Error> {
        let mut rng = trial_rng(opts.seed, trial);
        let x = random_section(&mut rng, n, opts.degree);
        let y = random_section(&mut rng, n, opts.degree);
        let f = random_scalar(&mut rng, n, opts.degree);
        let residuals = identity_residuals(hk, &f, &x, &y)?;
        Ok(IDENTITY_CHECKS
            .iter()
            .zip(residuals)
            .map(|(id, r)| CheckReport::from_residual(*id, Some(trial), &Residual::Section(r), n))
            .collect())
    });
    Ok(per_trial.into_iter().collect::<Result<Vec<_>, _>>()?.concat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    #[test]
    fn constant_sections_on_flat_triple() {
        let t = examples::flat_quaternionic();
        let x = GSection::basis(4, 2);
        let y = GSection::basis(4, 5).add(&GSection::basis(4, 0));
        for v in Variant::ALL {
            assert!(connection(&t, v, &x, &y).unwrap().is_zero());
            assert!(torsion(&t, v, &x, &y).unwrap().is_zero());
        }
        assert!(torsion_target(&t, &x, &y).unwrap().is_zero());
    }

    #[test]
    fn torsion_is_antisymmetric() {
        let t = examples::flat_quaternionic();
        let mut rng = trial_rng(2, 0);
        let x = random_section(&mut rng, 4, 1);
        assert!(torsion(&t, Variant::Ijk, &x, &x).unwrap().is_zero());
    }

    #[test]
    fn uncertified_structure_is_rejected() {
        let id = GEndo::identity(1);
        let hk = HKTriple::new(id.clone(), id.clone(), id).unwrap();
        let x = GSection::basis(1, 0);
        assert!(matches!(
            connection(&hk, Variant::Ijk, &x, &x),
            Err(Error::UncertifiedStructure(_))
        ));
        let opts = SuiteOptions::default();
        assert!(check_identities(&hk, &opts).is_err());
    }

    #[test]
    fn nabla_j_vanishes_on_nonintegrable_triple() {
        let t = examples::nonintegrable();
        let mut rng = trial_rng(4, 0);
        let x = random_section(&mut rng, 4, 1);
        let y = random_section(&mut rng, 4, 1);
        assert!(nabla_endo(&t, Variant::Ijk, t.j(), &x, &y).unwrap().is_zero());
    }
}

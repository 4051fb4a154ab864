//! Nijenhuis concomitants of pairs of endomorphisms and the correction
//! tensor `Δ_f` of a hypercomplex triple.
//!
//! `N_{F,G}` is linear over functions in its second slot for any `F`, `G`.
//! The first slot is not: expanding the Leibniz rules of the bracket gives a
//! defect (see [`predicted_first_slot_defect`]) that cancels for pairs taken
//! from an orthogonal quaternionic triple but not in general. The defect is
//! reported, never assumed away.

use crate::courant::{dd, dorfman, pairing, GSection};
use crate::quaternionic::{GEndo, HKTriple};
use crate::scalar::{Rational, ScalarField};
use crate::Error;

/// `N_{F,G}` as an operation on pairs of sections.
#[derive(Debug, Clone)]
pub struct Concomitant<'a> {
    pub f: &'a GEndo,
    pub g: &'a GEndo,
}

impl<'a> Concomitant<'a> {
    pub fn new(f: &'a GEndo, g: &'a GEndo) -> Self {
        Concomitant { f, g }
    }

    pub fn eval(&self, x: &GSection, y: &GSection) -> Result<GSection, Error> {
        concomitant(self.f, self.g, x, y)
    }
}

/// ```text
/// N_{F,G}(X,Y) = [FX,GY] − F[X,GY] − G[FX,Y] + FG[X,Y]
///              + [GX,FY] − G[X,FY] − F[GX,Y] + GF[X,Y]
/// ```
/// with `[·,·]` the Dorfman bracket.
pub fn concomitant(f: &GEndo, g: &GEndo, x: &GSection, y: &GSection) -> Result<GSection, Error> {
    let fx = f.apply(x)?;
    let gx = g.apply(x)?;
    let fy = f.apply(y)?;
    let gy = g.apply(y)?;
    let xy = dorfman(x, y)?;

    let first = dorfman(&fx, &gy)?
        .sub(&f.apply(&dorfman(x, &gy)?)?)
        .sub(&g.apply(&dorfman(&fx, y)?)?)
        .add(&f.apply(&g.apply(&xy)?)?);
    let second = dorfman(&gx, &fy)?
        .sub(&g.apply(&dorfman(x, &fy)?)?)
        .sub(&f.apply(&dorfman(&gx, y)?)?)
        .add(&g.apply(&f.apply(&xy)?)?);
    Ok(first.add(&second))
}

/// `(N(fX,Y) − f N(X,Y), N(X,fY) − f N(X,Y))`, computed directly from the
/// bracket.
pub fn concomitant_linearity_defect(
    f_endo: &GEndo,
    g_endo: &GEndo,
    f: &ScalarField,
    x: &GSection,
    y: &GSection,
) -> Result<(GSection, GSection), Error> {
    let base = concomitant(f_endo, g_endo, x, y)?.scale(f);
    let first = concomitant(f_endo, g_endo, &x.scale(f), y)?.sub(&base);
    let second = concomitant(f_endo, g_endo, x, &y.scale(f))?.sub(&base);
    Ok((first, second))
}

/// Closed form of the first-slot defect obtained from the Leibniz rules of
/// the bracket:
///
/// ```text
/// 2⟨FX,GY⟩Df − 2⟨X,GY⟩F Df − 2⟨FX,Y⟩G Df + 2⟨X,Y⟩FG Df  + (F ↔ G)
/// ```
pub fn predicted_first_slot_defect(
    f_endo: &GEndo,
    g_endo: &GEndo,
    f: &ScalarField,
    x: &GSection,
    y: &GSection,
) -> Result<GSection, Error> {
    let n = x.dim();
    let df = dd(f, n);
    let half_term = |p: &GEndo, q: &GEndo| -> Result<GSection, Error> {
        let px = p.apply(x)?;
        let qy = q.apply(y)?;
        let terms = [
            (pairing(&px, &qy)?, df.clone()),
            (-pairing(x, &qy)?, p.apply(&df)?),
            (-pairing(&px, y)?, q.apply(&df)?),
            (pairing(x, y)?, p.apply(&q.apply(&df)?)?),
        ];
        Ok(terms
            .iter()
            .fold(GSection::zero(n), |acc, (c, s)| acc.add(&s.scale(c))))
    };
    let two = Rational::from_integer(2.into());
    Ok(half_term(f_endo, g_endo)?
        .add(&half_term(g_endo, f_endo)?)
        .scale_q(&two))
}

/// `Δ_f(X,Y) = ⟨X,Y⟩Df + ⟨IX,Y⟩I Df + ⟨JX,Y⟩J Df + ⟨KX,Y⟩K Df`.
pub fn delta(hk: &HKTriple, f: &ScalarField, x: &GSection, y: &GSection) -> Result<GSection, Error> {
    let n = x.dim();
    let df = dd(f, n);
    let mut acc = df.scale(&pairing(x, y)?);
    for p in [hk.i(), hk.j(), hk.k()] {
        let c = pairing(&p.apply(x)?, y)?;
        if !c.is_zero() {
            acc = acc.add(&p.apply(&df)?.scale(&c));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::sample::{random_scalar, random_section, trial_rng};

    #[test]
    fn identity_pair_vanishes() {
        let id = GEndo::identity(2);
        let mut rng = trial_rng(3, 0);
        let x = random_section(&mut rng, 2, 2);
        let y = random_section(&mut rng, 2, 2);
        assert!(concomitant(&id, &id, &x, &y).unwrap().is_zero());
    }

    #[test]
    fn flat_pair_vanishes_on_polynomial_sections() {
        let t = examples::flat_quaternionic();
        let mut rng = trial_rng(5, 0);
        let x = random_section(&mut rng, 4, 1);
        let y = random_section(&mut rng, 4, 1);
        assert!(concomitant(t.i(), t.j(), &x, &y).unwrap().is_zero());
    }

    #[test]
    fn symmetric_in_endomorphisms() {
        let t = examples::nonintegrable();
        let x = GSection::basis(4, 1).scale(&ScalarField::var(0));
        let y = GSection::basis(4, 6);
        let a = concomitant(t.i(), t.j(), &x, &y).unwrap();
        let b = concomitant(t.j(), t.i(), &x, &y).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn delta_vanishes_for_constant_f() {
        let t = examples::flat_quaternionic();
        let mut rng = trial_rng(1, 0);
        let x = random_section(&mut rng, 4, 1);
        let y = random_section(&mut rng, 4, 1);
        assert!(delta(&t, &ScalarField::from_int(4), &x, &y).unwrap().is_zero());
        let f = random_scalar(&mut rng, 4, 2);
        let sym = delta(&t, &f, &x, &y).unwrap().add(&delta(&t, &f, &y, &x).unwrap());
        let expected = dd(&f, 4).scale(&pairing(&x, &y).unwrap()).scale_q(&Rational::from_integer(2.into()));
        assert_eq!(sym, expected);
    }

    #[test]
    fn predicted_defect_matches_direct_on_non_orthogonal_pair() {
        let c = crate::scalar::Chart::new(2);
        let f_endo = GEndo::from_matrix(crate::quaternionic::int_matrix(&[
            &[1, 2, 0, 1],
            &[0, -1, 3, 0],
            &[1, 0, 0, 2],
            &[0, 1, -2, 1],
        ]))
        .unwrap();
        let g_endo = GEndo::from_matrix(crate::quaternionic::int_matrix(&[
            &[0, 1, 1, 0],
            &[2, 0, 0, -1],
            &[0, 1, 1, 0],
            &[1, 0, 3, 0],
        ]))
        .unwrap();
        let mut rng = trial_rng(11, 0);
        let x = random_section(&mut rng, 2, 1);
        let y = random_section(&mut rng, 2, 1);
        let f = c.parse("x1^2 - x2").unwrap();
        let (first, second) = concomitant_linearity_defect(&f_endo, &g_endo, &f, &x, &y).unwrap();
        assert!(second.is_zero());
        assert!(!first.is_zero());
        assert_eq!(first, predicted_first_slot_defect(&f_endo, &g_endo, &f, &x, &y).unwrap());
    }
}

#![allow(dead_code)]

use hkcourant::scalar::{monomials_up_to, Polynomial};
use hkcourant::{GSection, Rational, ScalarField};
use proptest::prelude::*;

pub fn poly_from(coeffs: &[i64], dim: usize, degree: u32) -> Polynomial {
    Polynomial::from_terms(
        monomials_up_to(dim, degree)
            .into_iter()
            .zip(coeffs)
            .map(|(m, &c)| (m, Rational::from_integer(c.into()))),
    )
}

pub fn poly(dim: usize, degree: u32) -> impl Strategy<Value = Polynomial> {
    let k = monomials_up_to(dim, degree).len();
    prop::collection::vec(-3i64..=3, k).prop_map(move |c| poly_from(&c, dim, degree))
}

pub fn polynomial_field(dim: usize, degree: u32) -> impl Strategy<Value = ScalarField> {
    poly(dim, degree).prop_map(ScalarField::from_poly)
}

/// `p / (1 + q²)`, never a pole on the reals.
pub fn rational_field(dim: usize) -> impl Strategy<Value = ScalarField> {
    (poly(dim, 2), poly(dim, 1)).prop_map(|(p, q)| {
        let den = &Polynomial::one() + &(&q * &q);
        ScalarField::from_parts(p, den).expect("denominator is positive")
    })
}

pub fn section(dim: usize, degree: u32) -> impl Strategy<Value = GSection> {
    prop::collection::vec(polynomial_field(dim, degree), 2 * dim)
        .prop_map(|c| GSection::from_components(c).expect("even length"))
}

pub fn point(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-5i64..=5, 1i64..=4), dim).prop_map(|v| {
        v.into_iter()
            .map(|(n, d)| Rational::new(n.into(), d.into()))
            .collect()
    })
}

//! The three reference structures on R⁴ used throughout the test suites and
//! emitted by the `examples` subcommand.
//!
//! * flat quaternionic: diagonal lifts of the constant right-multiplication
//!   matrices of `i`, `j`, `k` on `H = R⁴`;
//! * holomorphic symplectic: symplectic lifts of the real and imaginary parts
//!   of `dz1 ∧ dz2` (`z1 = x1 + i x2`, `z2 = x3 + i x4`) around the diagonal
//!   lift of the standard complex structure;
//! * nonintegrable: the flat triple with its tangent blocks conjugated by
//!   `A = diag(1, 1 + x1², 1, 1)`.

use crate::cartan::TwoForm;
use crate::quaternionic::{int_matrix, lift_diagonal, lift_symplectic, mat_mul, HKTriple, Matrix};
use crate::scalar::ScalarField;

/// Right multiplication by `i`, `j`, `k` on `q = x1 + x2 i + x3 j + x4 k`.
///
/// These satisfy `i j = −k`; the diagonal lift reverses products, so the
/// lifted triple satisfies `I J = K`.
pub fn right_multiplications() -> [Matrix; 3] {
    [
        int_matrix(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]),
        int_matrix(&[&[0, 0, -1, 0], &[0, 0, 0, -1], &[1, 0, 0, 0], &[0, 1, 0, 0]]),
        int_matrix(&[&[0, 0, 0, -1], &[0, 0, 1, 0], &[0, -1, 0, 0], &[1, 0, 0, 0]]),
    ]
}

/// Standard complex structure on R⁴: `∂1 ↦ ∂2`, `∂3 ↦ ∂4`.
pub fn standard_complex_structure() -> Matrix {
    int_matrix(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]])
}

/// `(ω1, ω2, ω1⁻¹, ω2⁻¹)` with `ω1 = dx1∧dx3 − dx2∧dx4` and
/// `ω2 = dx1∧dx4 + dx2∧dx3`.
pub fn holomorphic_symplectic_forms() -> (TwoForm, TwoForm, Matrix, Matrix) {
    let w1 = TwoForm::elementary(4, 0, 2).add(&TwoForm::elementary(4, 1, 3).scale(&ScalarField::from_int(-1)));
    let w2 = TwoForm::elementary(4, 0, 3).add(&TwoForm::elementary(4, 1, 2));
    // Both square to −1 as matrices, so each inverse is the negative.
    let neg = |w: &TwoForm| -> Matrix {
        w.rows().iter().map(|r| r.iter().map(|x| -x).collect()).collect()
    };
    let (i1, i2) = (neg(&w1), neg(&w2));
    (w1, w2, i1, i2)
}

/// `A = diag(1, 1 + x1², 1, 1)` and its inverse.
pub fn conjugator() -> (Matrix, Matrix) {
    let one = ScalarField::one();
    let zero = ScalarField::zero();
    let a = ScalarField::var(0).pow(2) + ScalarField::one();
    let a_inv = a.recip().expect("nonzero");
    let diag = |d: ScalarField| -> Matrix {
        (0..4)
            .map(|r| {
                (0..4)
                    .map(|c| match (r == c, r) {
                        (false, _) => zero.clone(),
                        (true, 1) => d.clone(),
                        (true, _) => one.clone(),
                    })
                    .collect()
            })
            .collect()
    };
    (diag(a), diag(a_inv))
}

/// `A m A⁻¹` for each right-multiplication matrix.
pub fn conjugated_right_multiplications() -> [Matrix; 3] {
    let (a, a_inv) = conjugator();
    right_multiplications().map(|m| mat_mul(&mat_mul(&a, &m), &a_inv))
}

pub fn flat_quaternionic() -> HKTriple {
    let [i, j, _] = right_multiplications();
    HKTriple::from_pair(lift_diagonal(&i).unwrap(), lift_diagonal(&j).unwrap()).unwrap()
}

pub fn holomorphic_symplectic() -> HKTriple {
    let (w1, w2, i1, i2) = holomorphic_symplectic_forms();
    let i = lift_symplectic(&w2, &i2).unwrap();
    let j = lift_diagonal(&standard_complex_structure()).unwrap();
    // With the lift conventions of `lift_symplectic`, I J is the lift of −ω1.
    let minus = ScalarField::from_int(-1);
    let neg_inv: Matrix = i1.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let k = lift_symplectic(&w1.scale(&minus), &neg_inv).unwrap();
    HKTriple::new(i, j, k).unwrap()
}

pub fn nonintegrable() -> HKTriple {
    let [i, j, _] = conjugated_right_multiplications();
    HKTriple::from_pair(lift_diagonal(&i).unwrap(), lift_diagonal(&j).unwrap()).unwrap()
}

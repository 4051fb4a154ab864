//! Deterministic pseudo-random inputs for the identity suites.
//!
//! Each trial draws from its own ChaCha stream keyed by `(seed, trial)`, so
//! results do not depend on the order in which trials execute.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cartan::{OneForm, VectorField};
use crate::courant::GSection;
use crate::scalar::{monomials_up_to, Polynomial, Rational, ScalarField};

/// Options shared by every randomized suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub trials: usize,
    pub degree: u32,
    pub seed: u64,
    /// Run trials on the rayon pool; output order is unaffected.
    pub parallel: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            trials: 10,
            degree: 2,
            seed: 1,
            parallel: false,
        }
    }
}

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Polynomial with coefficients uniform in `{-3..3}` on every monomial of
/// degree at most `degree`.
pub fn random_scalar<R: Rng>(rng: &mut R, dim: usize, degree: u32) -> ScalarField {
    let terms = monomials_up_to(dim, degree).into_iter().map(|m| {
        let c: i64 = rng.gen_range(-3..=3);
        (m, Rational::from_integer(c.into()))
    });
    ScalarField::from_poly(Polynomial::from_terms(terms))
}

pub fn random_section<R: Rng>(rng: &mut R, dim: usize, degree: u32) -> GSection {
    let vec = (0..dim).map(|_| random_scalar(rng, dim, degree)).collect();
    let form = (0..dim).map(|_| random_scalar(rng, dim, degree)).collect();
    GSection::new(VectorField(vec), OneForm(form))
}

/// Runs `f` for trials `0..trials`, in parallel when requested and no
/// mutation is active, always returning results in trial order.
pub fn run_trials<T, F>(opts: &SuiteOptions, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if opts.parallel && !crate::mutation::any_active() {
        (0..opts.trials).into_par_iter().map(f).collect()
    } else {
        (0..opts.trials).map(f).collect()
    }
}

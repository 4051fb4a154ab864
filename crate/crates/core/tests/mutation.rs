//! The suites must notice deliberately broken formulas.

use hkcourant::connection::{check_connection_laws, check_identities, Variant};
use hkcourant::courant::verify_axioms;
use hkcourant::examples;
use hkcourant::mutation::{with_mutation, Mutation};
use hkcourant::report::{all_pass, CheckReport};
use hkcourant::sample::SuiteOptions;

fn opts() -> SuiteOptions {
    SuiteOptions {
        trials: 4,
        degree: 2,
        seed: 11,
        parallel: true,
    }
}

fn failing_ids(reports: &[CheckReport]) -> Vec<&str> {
    let mut ids: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.check_id.as_str()).collect();
    ids.dedup();
    ids
}

#[test]
fn baseline_suites_pass() {
    assert!(all_pass(&verify_axioms(2, &opts())));
    let hk = examples::flat_quaternionic();
    assert!(all_pass(&check_connection_laws(&hk, Variant::Ijk, &opts()).unwrap()));
}

#[test]
fn flipped_contraction_breaks_the_symmetric_part() {
    let reports = with_mutation(Mutation::FlipContraction, || verify_axioms(2, &opts()));
    let failing = failing_ids(&reports);
    assert!(failing.contains(&"symmetric-part"), "{failing:?}");
    assert!(reports.iter().filter(|r| !r.pass).all(|r| r.witness.is_some()));
}

#[test]
fn flipped_connection_term_breaks_twisted_leibniz() {
    let hk = examples::holomorphic_symplectic();
    let reports = with_mutation(Mutation::FlipConnectionTerm, || {
        check_connection_laws(&hk, Variant::Ijk, &opts()).unwrap()
    });
    assert!(failing_ids(&reports).contains(&"twisted-leibniz"));
}

#[test]
fn flipped_connection_term_is_seen_by_the_identities() {
    let hk = examples::flat_quaternionic();
    let opts = SuiteOptions { trials: 2, ..opts() };
    let reports = with_mutation(Mutation::FlipConnectionTerm, || check_identities(&hk, &opts).unwrap());
    assert!(!all_pass(&reports));
}

#[test]
fn mutation_is_scoped() {
    with_mutation(Mutation::FlipContraction, || ());
    assert!(all_pass(&verify_axioms(1, &opts())));
}

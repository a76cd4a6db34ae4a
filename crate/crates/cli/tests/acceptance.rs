//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line.  Run with `cargo test --test acceptance`.

use std::path::Path;

use hurwitz_cli::acceptance::{self, Verdict};

fn report(id: usize, name: &str, verdict: Verdict) {
    match verdict {
        Ok(detail) => println!("criterion {id:2} PASS  {name}: {detail}"),
        Err(msg) => {
            println!("criterion {id:2} FAIL  {name}: {msg}");
            panic!("criterion {id} failed: {msg}");
        }
    }
}

#[test]
fn criterion_01_squarefree_census() {
    report(1, "squarefree census counts", acceptance::criterion_1());
}

#[test]
fn criterion_02_nonsplitting_gate() {
    report(2, "non-splitting gate", acceptance::criterion_2());
}

#[test]
fn criterion_03_component_stabilization() {
    report(3, "component stabilization", acceptance::criterion_3());
}

#[test]
fn criterion_04_complex_identities() {
    report(4, "complex identities", acceptance::criterion_4());
}

#[test]
fn criterion_05_degree_bound_shape() {
    report(5, "homology degree bound shape", acceptance::criterion_5());
}

#[test]
fn criterion_06_homological_stability() {
    report(6, "homological stability at p <= 1", acceptance::criterion_6());
}

#[test]
fn criterion_07_cokernel_moments() {
    report(7, "cokernel moments", acceptance::criterion_7());
}

#[test]
fn criterion_08_symplectic_orbits() {
    report(8, "symplectic orbit transitivity", acceptance::criterion_8());
}

#[test]
fn criterion_09_function_field_census() {
    report(9, "function-field census", acceptance::criterion_9(8));
}

#[test]
fn criterion_10_determinism() {
    let bin = Path::new(env!("CARGO_BIN_EXE_hurwitz"));
    report(10, "determinism", acceptance::criterion_10(bin));
}

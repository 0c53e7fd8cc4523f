mod common;

use common::suites::{countries_suite, partial_suite, session_suite};

#[test]
fn countries_complete_under_every_order() {
    println!("{}", countries_suite());
}

#[test]
fn random_models_are_completed_exactly() {
    println!("{}", partial_suite(0x9a, 150));
}

#[test]
fn session_mechanics_are_replay_exact() {
    println!("{}", session_suite(0x5e, 60));
}

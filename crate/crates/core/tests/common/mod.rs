//! Shared generators, brute-force oracles and property suites.
#![allow(dead_code)]

pub mod gen;
pub mod oracle;
pub mod suites;

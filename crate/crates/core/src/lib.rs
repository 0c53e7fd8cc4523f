pub mod completion;
pub mod dl;
pub mod fca;
pub mod io;
pub mod lattice;
pub mod partial;
pub mod reasoner;
#[cfg(feature = "service")]
pub mod service;
#[cfg(feature = "cli")]
pub mod cli;

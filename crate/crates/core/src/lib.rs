//! Geometric quantization of the double cover of the Poincaré group,
//! SL(2,C) ⊕ H(2): coadjoint orbits, invariant measures on momentum
//! manifolds, and numerically synthesized relativistic wave functions.

pub mod cli;
pub mod error;
pub mod massive;
pub mod massless;
pub mod measure;
pub mod orbit;
pub mod photon;
pub mod quad;
pub mod rep;
pub mod sample;
pub mod section;
pub mod spinor;
pub mod suite;
pub mod synth;
pub mod twistor;
pub mod verify;

pub use error::{Error, Result};

//! The narrative guide, compiled so its code listings run as doc-tests.
//!
//! The rendered version lives in `book/` (build with `mdbook build book`);
//! each chapter is also attached here as module documentation so that
//! `cargo test --doc` executes every listing.

#[doc = include_str!("../../../book/src/overview.md")]
pub mod overview {}

#[doc = include_str!("../../../book/src/detector-model.md")]
pub mod detector_model {}

#[doc = include_str!("../../../book/src/normal-modes.md")]
pub mod normal_modes {}

#[doc = include_str!("../../../book/src/geometric-phases.md")]
pub mod geometric_phases {}

#[doc = include_str!("../../../book/src/fock-engine.md")]
pub mod fock_engine {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../book/src/validation.md")]
pub mod validation {}

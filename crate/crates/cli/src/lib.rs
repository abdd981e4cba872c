//! Library side of the `fde` command-line harness: configuration parsing,
//! run execution, and the built-in experiment presets. The binary in
//! `main.rs` is a thin argument-handling layer over this.

pub mod config;
pub mod presets;
pub mod run;

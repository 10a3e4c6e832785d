//! Command-line front end for `torcone-core`.
//!
//! [`run`] is the whole program minus process plumbing: it takes argv and
//! the dimension cap from the environment and returns the exit code and the
//! text for both output streams.

pub mod schema;

mod commands;

pub use commands::{run, Output, DEFAULT_DIM_CAP, DIM_CAP_VAR};

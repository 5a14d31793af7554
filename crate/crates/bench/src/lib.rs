//! Benchmark-only crate: see `benches/measures.rs`. Re-exports the library
//! under test so benches track the workspace version.

pub use entmeas_core;

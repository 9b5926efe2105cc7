//! Sălăgean-type q-difference operator calculus for bi-univalent function
//! classes: a truncated power-series engine, the Jackson q-derivative and
//! its iterated operator, Ma–Minda target functions, the two subordination
//! classes built on them, closed-form coefficient bounds (|a₂|, |a₃| and the
//! Fekete–Szegő functional), and a brute-force oracle that sweeps the
//! admissible Carathéodory parameters to confirm the bounds dominate.

pub mod bounds;
pub mod classes;
pub mod error;
pub mod oracle;
pub mod qcalc;
pub mod series;
pub mod targets;

pub use error::CoreError;
pub use qcalc::QParams;
pub use series::{NormalizedFunction, Series};
pub use targets::MindaTarget;

/// Complex scalar used throughout the crate.
pub type Cx = num_complex::Complex64;

/// Default truncation order for series built by higher-level modules.
pub const DEFAULT_ORDER: usize = 16;

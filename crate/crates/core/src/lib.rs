//! Exact c-differential analysis of power maps `x^d` over small finite fields.
//!
//! The crate is organized around four layers:
//!
//! * [`gf`] — deterministic construction of `GF(p^m)` with discrete-log
//!   tables, plus the number-theoretic helpers (`v2`, `gcd_pk1`) the rest of
//!   the crate leans on.
//! * [`cdiff`] — exact counting of `F(x+a) - c*F(x) = b` solutions for power
//!   maps: pointwise counts, uniformity, and full spectra.
//! * [`theorems`] — every known PcN/APcN criterion encoded as an
//!   applicability-checked predictor, together with the congruence solvers
//!   that generate the exponent families.
//! * [`oracle`] — brute-force ground truth: exhaustive PcN scans, root
//!   counting for `x^(p^k+1) - bx + b`, quadratic-system counters, and the
//!   machinery that confirms or refutes predictions against measurements.
//!
//! [`suites`] bundles the named verification suites the CLI exposes.
//!
//! Heavy scans are data-parallel (rayon) by default; build with
//! `--no-default-features` for a purely sequential crate. Parallel and
//! sequential paths produce bit-identical reports.

pub mod cdiff;
pub mod gf;
pub mod oracle;
mod par;
pub mod suites;
pub mod theorems;

pub use cdiff::{
    c_delta, c_spectrum, c_uniformity, classify, Classification, PowerMap, Spectrum,
    UniformityReport,
};
pub use gf::{build_field, build_field_with_cap, v2, FieldElement, FieldSpec, GfError, V2};
pub use par::with_worker_threads;

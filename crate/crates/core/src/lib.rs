//! Complex dynamic dipole polarizability `tau2(omega)` and Kramers-Heisenberg
//! amplitude `M(omega)` of ground-state hydrogen at any photon frequency.
//!
//! The infinite sum over intermediate states is carried out implicitly: the
//! Dalgarno-Lewis operator equations are solved in closed form by Laplace
//! transform, and the resulting radial moments reduce to one-dimensional kernel
//! integrals. A partial-integration recurrence continues those integrals
//! through the intermediate resonances, and a complex `lambda` carries them
//! above the ionization threshold.
//!
//! ```
//! use acstark::{tau2, kh_matrix, PhotonFrequency};
//!
//! let w = PhotonFrequency::new(1.0).unwrap();
//! let tau = tau2(w).unwrap().value;
//! assert!((tau.re - 1.20598).abs() < 1e-4);
//! assert!(tau.im > 0.0);
//! let m = kh_matrix(w).unwrap().value;
//! assert!((m - tau).norm() < 1e-10);
//! ```

pub mod continuation;
pub mod error;
pub mod kernel;
pub mod observables;
pub mod oracle;
pub mod quadrature;
pub mod scan;
pub mod tables;
pub mod verify;

pub use num_complex::Complex64;

pub use continuation::{
    integral_i, nearest_resonance, resonance_frequency, resonance_locator, ContinuationConfig,
    ContinuationReport, Contour, IntegralKind, IntegralSpec,
};
pub use error::{Error, Result};
pub use kernel::{kernel_k, kernel_k_tilde, lambda_pair, BranchedLambda, KernelParams, PhotonFrequency, Regime};
pub use observables::{
    cross_section_polarized, cross_section_unpolarized, kh_matrix, p_term, stark_shift, tau2,
    ComplexResponse, CrossSection, EvalConfig, Evaluator, Observable, StarkShift,
};
pub use oracle::{oracle_kh, oracle_tau2, solve_dalgarno, RadialSolution, Which};
pub use scan::{eval_point, eval_record, frequency_grid, scan, ObservableSet, ScanOptions, ScanRecord, Spacing};
pub use tables::{reference_table, ReferenceTable, TableId};
pub use verify::{verify_table, ToleranceMode, VerifyReport};

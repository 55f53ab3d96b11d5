//! Pointwise tensor algebra of strictly pseudoconvex pseudohermitian
//! structures, with mechanical verification suites for the algebraic
//! identities and inequalities behind the Bochner technique on (p,q)-forms:
//! antisymmetrization expansions, curvature operator spectra, Weitzenboeck
//! coefficient splittings, non-negativity of the curvature terms, equality
//! cases, and kernel-dimension bounds.
//!
//! Everything is desk scale (dimension n <= 5): storage is dense, solvers
//! are dependency-free, and every fast path has an independent brute-force
//! oracle next to it.

pub mod bochner;
pub mod curvature;
pub mod exec;
pub mod forms;
pub mod indexexpr;
pub mod json;
pub mod levi;
pub mod linalg;
pub mod tensor;

pub use curvature::{CurvatureSpectrum, CurvatureTensor};
pub use forms::PQForm;
pub use levi::LeviForm;
pub use tensor::{IndexSlot, MultiTensor, SlotKind, Variance};

/// Default absolute tolerance for derived identities.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default tolerance for exact linear-algebra round trips.
pub const EXACT_TOL: f64 = 1e-12;

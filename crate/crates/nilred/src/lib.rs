//! Pseudo-Riemannian geometry of 2-step nilpotent Lie groups, computed
//! exactly.
//!
//! The crate builds metric 2-step nilpotent Lie algebras from rational
//! structure constants, decides natural reductivity, solves for isotropy
//! algebras, and evaluates the associated geometry: Levi-Civita connection,
//! curvature, Ricci, sectional curvatures and geodesics. All algebraic
//! computations use arbitrary-precision rationals, so structural verdicts
//! (nondegeneracy, subalgebra closure, flatness, lattice closure) are exact;
//! floating point appears only in the matrix-exponential geodesic machinery.
//!
//! Entry points:
//!
//! * [`nilalg::NilLieAlgebra`] — validated structure constants, center,
//!   commutator, corank;
//! * [`metgeo::MetricNilLieAlgebra`] — a nondegenerate metric on such an
//!   algebra: splitting `n = z ⊕ v`, the maps `j(x) ∈ so(v)`, connection,
//!   curvature, Ricci, flatness;
//! * [`geodesic`] — geodesic sampling through the identity;
//! * [`construct`] — the builders (data sets, Heisenberg metrics, center
//!   sign flips, cotangent doubles, modified cotangents);
//! * [`reductive`] — ad-invariance, the naturally-reductive criterion with
//!   recovery of `(z, τ)`, the isotropy algebra solver, and the corank
//!   normal form;
//! * [`group`] — exponential-coordinate group arithmetic and lattice
//!   closure checks;
//! * [`catalog`] — the worked examples, pre-validated;
//! * [`cli`] — the command-line front end used by the `nilred` binary.
//!
//! The `examples/` directory shows one runnable program per capability.
//!
//! ```
//! use nilred::{MetricNilLieAlgebra, NilLieAlgebra, SymmetricForm, Verdict};
//! use nilred::rat::rat;
//! use nilred::reductive::naturally_reductive_check;
//!
//! // the Heisenberg algebra [e1, e2] = e3 with a Lorentzian metric
//! let h3 = NilLieAlgebra::from_structure_constants(3, &[(0, 1, vec![(2, rat(1))])])?;
//! let metric = SymmetricForm::diagonal(&[rat(1), rat(1), rat(-1)]);
//! let m = MetricNilLieAlgebra::new(h3, metric)?;
//!
//! // the center is nondegenerate, so the splitting and its j-maps exist ...
//! let splitting = m.center_splitting()?;
//! assert!(splitting.j_injective);
//!
//! // ... and the metric is naturally reductive, decided exactly
//! let report = naturally_reductive_check(&m)?;
//! assert_eq!(report.verdict, Verdict::NaturallyReductive);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod catalog;
pub mod cli;
pub mod construct;
pub mod expm;
pub mod form;
pub mod geodesic;
pub mod group;
pub mod io;
pub mod matrix;
pub mod metgeo;
pub mod nilalg;
pub mod rat;
pub mod reductive;

pub use catalog::{example_catalog, CatalogEntry, ExampleId};
pub use construct::{ConstructError, DataSet, DataSetViolation};
pub use form::{SymmetricForm, WittParts};
pub use matrix::{ExactLinError, RatMatrix};
pub use metgeo::{CenterSplitting, Flatness, GeometryError, MetricNilLieAlgebra, Ricci};
pub use nilalg::{AlgebraError, LieAlgebra, NilLieAlgebra, Nonsingularity, StructureReport};
pub use rat::Rat;
pub use reductive::{
    is_ad_invariant, AdInvariance, CorankNormalForm, IsotropyAlgebra, ReductiveError,
    ReductivityReport, Verdict,
};

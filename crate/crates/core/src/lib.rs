//! Algebraic connectivity of simple graphs and exhaustive checks of which
//! 2-connected graphs (and which θ-graphs) minimise it.
//!
//! * [`graph`], [`laplacian`], [`graph6`], [`canon`]: graph values, Laplacian
//!   assembly, interchange and isomorphism.
//! * [`connectivity`]: cut vertices, 2-connectedness, inner-disjoint paths,
//!   θ-graph recognition, Hamiltonian cycles.
//! * [`spectra`]: dense symmetric eigensolver, α(G), Fiedler vectors.
//! * [`families`]: `C_n`, `H1`, `H2`, `H3` and θ-graphs.
//! * [`rewiring`]: the Fiedler-vector rewiring of a 2-connected graph into a
//!   spanning cycle, with its quadratic-form certificate.
//! * [`enumeration`]: isomorph-free generation of graphs up to order 9.
//! * [`verify`]: exhaustive sweeps and reports; [`suites`]: seeded
//!   randomized property suites.

pub mod canon;
pub mod connectivity;
pub mod enumeration;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod laplacian;
pub mod rewiring;
pub mod spectra;
pub mod suites;
pub mod verify;

pub use canon::{canonical_form, is_isomorphic, CanonicalCode};
pub use connectivity::{
    articulation_vertices, hamiltonian_cycle, inner_disjoint_paths, is_biconnected, is_theta,
    local_connectivity, PathSystem,
};
pub use enumeration::{count_classes, enumerate_graphs, Predicate};
pub use error::{Error, Result};
pub use families::{equality_family, realize, saturated, FamilyKind, FamilySpec};
pub use graph::Graph;
pub use laplacian::{laplacian, LaplacianMatrix};
pub use rewiring::{rewire, strictness_report, RewireCertificate};
pub use spectra::{
    algebraic_connectivity, alpha_cycle_closed_form, eigen_symmetric, fiedler_vector, laplacian_spectrum,
    rayleigh_quotient, FiedlerResult, SpectralDecomposition,
};
pub use verify::{classify_equality, verify_theorem_1, verify_theorem_2, Margins, VerificationReport};

//! # arbor-eigen
//!
//! Spectral computations for acyclic symmetric matrices, i.e. matrices whose
//! off-diagonal nonzeros form a forest. Such a matrix is a weighted forest:
//! the diagonal gives vertex weights and the off-diagonal entries give edge
//! weights. Adjacency matrices and Laplacians of weighted trees are both
//! covered.
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`forest`] | the weighted-forest model, components, tree paths, vertex deletion |
//! | [`poly`] | `det(xI - A)` and its derivative in linear time, coefficient form for small n |
//! | [`spectrum`] | inertia counting and bisection for all eigenvalues and multiplicities |
//! | [`starset`] | star vertices and star sets of an eigenvalue |
//! | [`eigvec`] | closed-form eigenvectors built from deleted-path determinants |
//! | [`oracle`] | brute-force checks: Jacobi, matching enumeration, path identities |
//! | [`io`] | edge-list and MatrixMarket readers and writers |
//! | [`cli`] | the `arbor` command-line front end |
//!
//! ```
//! use arbor_eigen::{generate, eigvec, spectrum};
//!
//! let p3 = generate::path(3);
//! let found = spectrum::eigenvalues(&p3, 1e-12).unwrap();
//! let top = found.pairs[2].lambda; // sqrt(2)
//! let v = eigvec::simple_eigenvector(&p3, top, 2).unwrap();
//! assert!((v.entries[1] - 2f64.sqrt()).abs() < 1e-10);
//! assert!(v.residual < 1e-12);
//! ```

pub mod cli;
pub mod eigvec;
pub mod error;
pub mod forest;
pub mod generate;
pub mod io;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod spectrum;
pub mod starset;

pub use eigvec::{
    eigenbasis, full_eigendecomposition, magnitude_profile, simple_eigenvector, unit_eigenvector,
    EigenBasis, EigenVector,
};
pub use error::{EigenError, ForestError, OracleError, PolyError, SpectrumError, StarSetError};
pub use forest::{Component, Edge, Induced, TreePath, Vertex, WeightedForest};
pub use poly::{matching_poly_coeffs, phi_eval, phi_eval_minus, DensePolynomial, ValueDeriv};
pub use spectrum::{eigenvalues, gershgorin_interval, inertia_below, multiplicity, Inertia, Spectrum};
pub use starset::{find_root_vertex, find_star_set, StarSet};

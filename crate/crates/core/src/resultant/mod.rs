//! Polynomials, root finding, dialytic matrices, determinants of polynomial
//! matrices and back-substitution.

pub mod backsub;
pub mod dense;
pub mod dialytic;
pub mod interp;
pub mod poly;
pub mod roots;

pub use backsub::{back_substitute, BackSubMethod, BackSubstitution};
pub use dialytic::{dialytic_layout, dialytic_matrix};
pub use interp::{interpolate_on_circle, polymatrix_det, PolyMatrix};
pub use poly::CPolynomial;
pub use roots::{poly_roots, poly_roots_refined, RootReport};

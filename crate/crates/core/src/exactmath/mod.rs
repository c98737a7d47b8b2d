//! Exact arithmetic: fields, polynomials, factorization, linear algebra.

pub mod factor;
pub mod field;
pub mod mat;
pub mod modular;
pub mod poly;
pub mod snf;

pub use factor::{is_irreducible, poly_factor, Factorization};
pub use field::{Field, FieldKind, Scalar};
pub use mat::Mat;
pub use poly::Poly;
pub use snf::{smith_normal_form, IntMat, Smith};

//! Exact homogeneous polynomial arithmetic over the rationals or a prime field.

mod factored;
mod form;
pub(crate) mod gcd;
mod interp;
mod line;
mod poly;
mod random;
mod scalar;

pub use factored::FactoredForm;
pub use form::{BinaryForm, Form, HomogeneousForm, SquarefreeDecomposition};
pub use line::{restrict_to_line, LineP2};
pub use poly::{Monomial, Poly};
pub use random::{monomials_of_degree, random_form, random_form_with, random_line, random_point};
pub use scalar::{Field, Residue, Scalar};

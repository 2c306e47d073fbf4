//! Dense polynomials over GF(2^m) and their factorization.

mod factor;
mod upoly;

pub use factor::{
    count_roots_in_field, fact_type, factor, is_irreducible, roots_in_field, roots_in_splitting_field,
    splitting_degree, FactType,
};
pub use upoly::{product_tree, UPoly};

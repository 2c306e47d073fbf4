//! Exact computer algebra over characteristic-2 finite fields for the
//! Dickson-polynomial identity
//!
//! ```text
//! prod_{w in F_q^x} (D_{q+1}(wX) + Y) = X^(q^2-1) + (sum_{i=1}^n Y^(2^n-2^i)) X^(q-1) + Y^(q-1)
//! ```
//!
//! and the machinery relating the roots of `x^(q+1) + x + 1/a` to those of
//! the Mueller-Cohen-Matthews polynomial `C(x) = x T(x)^(q+1)`.

pub mod dickson;
pub mod error;
pub mod gf2;
pub mod identities;
pub mod pgl2;
pub mod poly;
pub mod report;
pub mod splitting;

pub use error::{Error, Result};
pub use gf2::{FieldContext, FieldElem};
pub use poly::{FactType, UPoly};

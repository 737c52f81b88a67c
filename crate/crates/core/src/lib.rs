//! Exact cup-product computations for configuration spaces of surfaces.
//!
//! The crate builds `H*(Σ_g^{×n}; ℚ)`, the quotients used as evaluation rings,
//! and products of zero divisors whose non-vanishing certifies the lower bound
//! for `TC_s(Conf(Σ_g, n))`. The guide in `book/` walks through the layers.
//!
//! ```
//! use tcconf::certificate::Limits;
//! use tcconf::tc::tc_value;
//!
//! let r = tc_value(1, 3, 2, Limits::default()).unwrap();
//! assert_eq!((r.tc, r.certified), (6, true));
//! ```

pub mod algebra;
pub mod certificate;
pub mod cli;
pub mod error;
pub mod field;
pub mod lemmas;
pub mod linalg;
pub mod presented;
pub mod quotient;
pub mod surface;
pub mod tc;
pub mod zcl;

pub use algebra::{
    AlgebraExt, AlgebraId, Element, GradedAlgebra, Monomial, TensorElement, TensorKey,
};
pub use error::{Error, Result};
pub use field::{Field, Gf2, Rational};
pub use linalg::{GradedSubspace, SparseVector};

/// Snippets from the guide, compiled and run as doc tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/quotients.md")]
    mod quotients {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/table.md")]
    mod table {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

//! Coalgebras, algebras and the adjunction `μ ⊣ ν` between them, for
//! polynomial functors on finite sets.
//!
//! | order theory                | here                                  |
//! |-----------------------------|---------------------------------------|
//! | monotone `f`                | [`Signature`](crate::signature::Signature) presenting `F` |
//! | pre-fixed point `x ≤ f(x)`  | [`Coalgebra`] `b : B → F(B)`           |
//! | post-fixed point `f(y) ≤ y` | [`Algebra`] `a : F(A) → A`             |
//! | `sup {x, f(x), …}`          | [`mu_enumerate`], the colimit `μ(b)`   |
//! | `inf {y, f(y), …}`          | [`nu_approx`], the limit `ν(a)`        |
//! | Galois connection           | [`adjunction_check`]                   |

mod checks;
mod colimit;
pub mod instances;
mod limit;
pub mod random;
mod structures;

use thiserror::Error;

use crate::signature::SignatureError;

pub use checks::{
    adjunction_check, corecursive_check, naturality_check, wellfounded_recursive_check,
    AdjunctionReport, Bounds, CorecursionReport, NaturalityReport, RecursionReport,
};
pub use colimit::{
    induced_alg_hom, mu_algebra_apply, mu_enumerate, mu_enumerate_within, mu_eq,
    successor_orbits, ColimEq, MuClasses, MuElement,
};
pub use limit::{
    collapse_bottom, induced_coalg_hom, infinite_trace, nu_approx, terminal_coalgebra_approx,
    NuApprox, NuPointStream,
};
pub use structures::{enumerate_coalg_to_alg, Algebra, CoalgToAlgHom, Coalgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixcatError {
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error("duplicate carrier label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown carrier element `{0}`")]
    UnknownElement(String),
    #[error("structure is not total: missing {0}")]
    NotTotal(String),
    #[error("conflicting definitions: {0}")]
    Conflict(String),
    #[error("expected a term of rank {expected}, got rank {got}")]
    WrongRank { expected: usize, got: usize },
    #[error("not a coalgebra-to-algebra homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("coalgebra and algebra use different signatures")]
    SignatureMismatch,
    #[error("carrier of {size} elements exceeds the enumeration cap {cap}")]
    CarrierTooLarge { size: usize, cap: usize },
}

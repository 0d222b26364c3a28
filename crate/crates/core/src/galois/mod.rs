//! Finite fields `F_q`, polynomials over them, squarefree factorization, the
//! norm map and a few number-theoretic helpers.
//!
//! Elements are plain integers (see [`Elem`]) interpreted through a shared
//! [`FieldCtx`]; every arithmetic routine takes the context explicitly.

mod factor;
mod field;
mod norm;
mod poly;
mod special;

pub use factor::{factor_squarefree, is_irreducible, is_squarefree};
pub use field::{field_of_order, is_prime, make_field, prime_power, Elem, FieldCtx, MAX_FIELD_SIZE};
pub use norm::{norm, norm_fiber, norm_with, Embedding};
pub use poly::Poly;
pub use special::{
    dickson, entropy_inverse, entropy_q, is_primitive_root, multiplicative_order, roots,
    BISECTION_TOL, ENTROPY_TOL,
};

//! Star relations, N-kernels and star-permutability over finite algebras.
//!
//! An [`IdealContext`] fixes which homomorphisms count as null. From it follow
//! null classes, N-kernels and the star `R*` of a relation; the checkers audit
//! star-symmetry and star-permutability on concrete algebras, and the term
//! search decides E-subtractivity of the variety generated by a finite algebra.

pub mod algebra;
pub mod checkers;
pub mod context;
pub mod error;
pub mod fixtures;
pub mod format;
mod partition;
pub mod relation;
pub mod terms;
mod tuples;

pub use algebra::{
    all_congruences, check_homomorphism, congruence_generated, direct_power, homomorphisms, image_factorization,
    product, Congruence, FiniteAlgebra, Homomorphism, ImageFactorization, Signature, Subset, Symbol,
};
pub use context::{is_null_morphism, is_saturating, n_kernel, null_class, BasePoint, IdealContext, NullClass};
pub use error::{Error, Result};
pub use relation::{
    compose, diagonal, graph_image, inverse_image, kernel_pair, opposite, relation_predicates, star,
    star_kernel, star_via_pullback, Relation, RelationPredicates,
};

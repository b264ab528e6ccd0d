//! Linear term rewriting on bracketed words.
//!
//! Words of the free operated monoid ([`terms`]), their linear combinations
//! ([`linear`]), monomial orders ([`order`]), operated polynomial identities
//! ([`opi`]), a rewriting engine with exhaustive closures and bounded
//! confluence checks ([`engine`]), and the averaging-operator systems with
//! their irreducible-word basis ([`averaging`]).

pub mod averaging;
pub mod engine;
pub mod error;
pub mod exec;
pub mod linear;
pub mod opi;
pub mod order;
pub mod syntax;
pub mod terms;

pub use error::Error;
pub use exec::Execution;
pub use linear::{LinComb, Rational};
pub use order::OrderHandle;
pub use terms::{Alphabet, Letter, Variant, Word};

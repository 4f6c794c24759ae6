//! Circuit constructions: reversible synthesis of CNF predicates, the
//! uncompute wrapper, affine and unitary simulations of counting predicates,
//! and lowering of wide controlled gates.

mod affine;
mod cnf;
mod lower;
mod predicate;
mod uncompute;
mod unitary;

pub use affine::{build_affine_modkp, AffineLayout};
pub use cnf::{formula_to_reversible, formula_to_reversible_with_inputs, Cnf};
pub use lower::{lower_to_small_gates, Lowered};
pub use predicate::ReversiblePredicate;
pub(crate) use predicate::branch;
pub use uncompute::uncompute_wrap;
pub use unitary::{build_unitary_modkp, UnitaryLayout};

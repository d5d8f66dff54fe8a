//! Adversarial checking of the drawing strategy: exhaustive search up to
//! isomorphism, seeded random playouts, an exact oracle for tiny boards and
//! cross-checks of the lemma predicates.

pub mod alt_finish;
pub mod check;
pub mod crosscheck;
pub mod exhaustive;
pub mod ledger_cases;
pub mod mutation;
pub mod oracle;
pub mod stochastic;
pub mod stub;
pub mod verdict;

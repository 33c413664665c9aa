//! Decision procedures for one-relator groups `⟨A | r⟩`: the word problem and
//! membership in Magnus subgroups, by recursion over the Magnus hierarchy,
//! plus independent oracles used to cross-check them.
//!
//! ```
//! use onerel::{Alphabet, Generator, Letter, OneRelatorPresentation, Solver, SolverLimits, Verdict, Word};
//!
//! let (a, b) = (Letter::pos(0), Letter::pos(1));
//! // ⟨a, b | a b a⁻¹ b⁻²⟩
//! let r = Word::reduce([a, b, a.inverse(), b.inverse(), b.inverse()]);
//! let p = OneRelatorPresentation::new(Alphabet::letters(2), r).unwrap();
//! let mut solver = Solver::new(SolverLimits::default());
//!
//! assert!(!solver.is_trivial(&p, &Word::letter(b)).unwrap());
//! let w = Word::reduce([a, b, a.inverse()]);
//! match solver.magnus_membership(&p, &w, &[Generator(1)]).unwrap() {
//!     Verdict::Member(wit) => assert_eq!(p.alphabet().format_word(&wit.expression), "b^2"),
//!     other => panic!("{other:?}"),
//! }
//! ```

pub mod breakdown;
pub mod oracles;
pub mod presentation;
pub mod solver;
pub mod words;

pub use breakdown::{BreakdownStep, EmbeddingData, HnnWord, SubscriptedGen, ZeroCaseData};
pub use presentation::{AbelianizationData, CanonicalKey, FreeFactorSplit, OneRelatorPresentation};
pub use solver::{
    is_root, HierarchyNode, MembershipWitness, SolveError, Solver, SolverLimits, Verdict,
};
pub use words::{cyclically_equal_up_to_inversion, Alphabet, Generator, Letter, Word};

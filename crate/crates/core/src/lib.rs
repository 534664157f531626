//! A workbench for intuitionistic first-order arithmetic.
//!
//! The crate is organised by the objects it manipulates:
//!
//! * [`syntax`]: terms, formulas, the concrete grammar, schema instantiators
//!   and the normal-form lemmas for quantifier-free formulas and quantifier
//!   blocks.
//! * [`coding`]: the pairing function, prime-power sequence codes and Gödel
//!   numbering.
//! * [`machine`]: a three-instruction register machine giving a concrete
//!   T-predicate and result extractor.
//! * [`realize`]: the Kleene realizability translation and a fuel-bounded
//!   checker over the standard model.
//! * [`kripke`]: finite Kripke models, validation and the forcing relation.
//! * [`transform`]: tree unraveling, leaf padding, root gluing and the
//!   binary unraveling onto the full binary tree.
//! * [`proofkit`]: natural deduction proofs, axiom recognizers, proof codes
//!   and the provability formulas.
//!
//! The guide in `book/` walks through each of these with runnable snippets.

pub mod coding;
pub mod kripke;
pub mod machine;
pub mod proofkit;
pub mod realize;
pub mod syntax;
pub mod transform;

pub use num_bigint::BigUint;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/syntax.md")]
    mod syntax {}
    #[doc = include_str!("../../../book/src/coding.md")]
    mod coding {}
    #[doc = include_str!("../../../book/src/machine.md")]
    mod machine {}
    #[doc = include_str!("../../../book/src/realizability.md")]
    mod realizability {}
    #[doc = include_str!("../../../book/src/kripke.md")]
    mod kripke {}
    #[doc = include_str!("../../../book/src/transforms.md")]
    mod transforms {}
    #[doc = include_str!("../../../book/src/proofs.md")]
    mod proofs {}
}

//! Compile ground answer-set programs into fixed-width bit-vector theories.
//!
//! The pipeline reads a ground program in the smodels numeric format,
//! builds its completion plus ranking constraints over bit vectors, and
//! emits the resulting theory as SMT-LIB v2 text (`QF_BV`). Models of the
//! theory, projected onto the program's atoms, are exactly the program's
//! answer sets. A reference answer-set oracle and a bounded model
//! enumerator are included so the translation can be cross-checked end to
//! end on small instances.
//!
//! ```
//! use lp2bv::{oracle, program, translate, bvlogic};
//!
//! let text = lp2bv::corpus::sample_smodels_text();
//! let parsed = program::parse_smodels(text.as_bytes()).unwrap();
//! let simplified = program::simplify(&parsed);
//!
//! let answer_sets = oracle::enumerate_answer_sets(&simplified, 20).unwrap();
//! assert_eq!(answer_sets.len(), 2);
//!
//! let theory = translate::translate(&simplified, translate::Variant::WEAK);
//! let models = bvlogic::enumerate_models(&theory, Default::default()).unwrap();
//! let projected: std::collections::BTreeSet<_> =
//!     models.iter().map(|m| m.project(&theory.projection)).collect();
//! assert_eq!(projected.len(), 2);
//! ```

pub mod bvlogic;
pub mod cli;
pub mod corpus;
pub mod depgraph;
pub mod oracle;
pub mod program;
pub mod translate;

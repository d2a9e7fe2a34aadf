//! Iterated Q-labeled forests.
//!
//! Terms of the iterated forest calculus over a finite quasiorder `Q`, the
//! homomorphism quasiorder `≤_h` on them, the section operators `s_α`/`s*_ξ`
//! and retractions `r_α`/`r*_ξ`, the induced quasiorders `≤_h^ξ`, and
//! enumeration of the resulting degree posets. A brute-force monotone-map
//! search on concrete labeled forests serves as an independent check of the
//! recursive rules at level 1.

pub mod cli;
pub mod explore;
pub mod hcalc;
pub mod oracle;
pub mod ordinal;
pub mod qo;
mod syntax;
pub mod terms;
pub mod transforms;

pub use explore::{
    enumerate_terms, hasse_dot, quotient, report, DegreeClass, DegreePoset, EnumConfig, EnumError,
    Relation,
};
pub use hcalc::{Calculus, FuelExhausted};
pub use oracle::{hom_leq, to_labeled_forest, LabeledForest, OracleError};
pub use ordinal::{Ordinal, OrdinalError};
pub use qo::{LabelId, QOrder, QoError};
pub use syntax::SyntaxError;
pub use terms::{
    cmp_syntactic, in_level, parse_term, print_term, KindError, Node, Sort, Term, TermId,
    TermParseError, TermStore,
};
pub use transforms::{apply_r, apply_r_star, apply_s, apply_s_star};

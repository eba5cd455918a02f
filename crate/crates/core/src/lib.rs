//! Decision procedures for Kleene algebra terms with variable complements
//! and the constant `!1`, interpreted over language models.

pub mod automata;
pub mod decide;
pub mod error;
pub mod hierarchy;
pub mod semantics;
pub mod term;
pub mod word_theory;

pub use automata::{Alphabet, Automaton, Word};
pub use error::{Error, Result};
pub use term::{
    classify_fragment, count, cx_c1_atoms, ext_language, is_star_free, occ, parse_ext_word, parse_term,
    render_term, sup_length, terms_up_to, ExtLetter, ExtWord, FragmentClass, SupLength, Term,
};
pub use decide::{
    decide_auto, decide_identity_inclusion, decide_starfree_inclusion, decide_universality,
    decide_variable_inclusion, decide_word_inclusion, oracle_refute, DecideConfig, Decider, EnumerationMode,
    OracleBudget, Relation, Status,
};
pub use semantics::{evaluate, Refutation, Side, Valuation, Verdict};
pub use word_theory::{decide_e0, decide_e1, decide_e2, WordTheoryLevel, WordVerdict};

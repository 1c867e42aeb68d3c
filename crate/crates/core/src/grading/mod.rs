//! Grading groups, group-valued gradings of tables, and the hypothesis
//! checks built on them (morphism laws, idempotent purity, injectivity on
//! maximal elements, the section g ↦ s_g).

pub mod format;
pub mod group;
pub mod morphism;

pub use format::{parse_grading, render_grading, GradingFormatError};
pub use group::{
    reduce_letters, FiniteGroupTable, Group, GroupElem, GroupError, GroupTableError,
    WordParseError,
};
pub use morphism::{
    check_morphism, idempotent_purity_witness, maximal_section, maximals_collision, Grading,
    GradingError, MaximalSection, MorphismReport, MorphismViolation, SectionError,
    MORPHISM_PAIR_BUDGET,
};

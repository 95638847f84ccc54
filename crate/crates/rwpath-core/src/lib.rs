//! Rewriting engine and verification toolkit for computational paths.
//!
//! Equality proofs between terms carry labels (computational paths); the
//! LND-EQ-TRS rules rewrite those labels to eliminate redundancy. This crate
//! implements the label algebra, the 39-rule core system with the extended
//! map-label group, normalization and rw-equality, a recursive path ordering
//! for termination, critical-pair analysis for confluence, the second-level
//! system over rewrite derivations, and the group/groupoid structure that
//! loop classes form under these rules.

pub mod confluence;
pub mod derivation;
pub mod groupoid;
pub mod matching;
pub mod parse;
pub mod print;
pub mod rewrite;
pub mod rpo;
pub mod rules;
pub mod sample;
pub mod term;

pub use parse::{parse_schema, parse_term};
pub use rewrite::{
    applicable_rules, normalize, rewrite_once, rw_equal, NormalizeOutcome, RwEqualOutcome,
    Strategy, TraceStep, DEFAULT_FUEL,
};
pub use rules::{all_rules, rule_by_id, rule_by_name, RewriteRule, RuleSet};
pub use term::{AtomEnv, Context, FunLabel, ObjectId, PathTerm, Position, TermError, Unary};

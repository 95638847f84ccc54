//! The rewrite engine: single steps, strategies, normalization, rw-equality.
//!
//! A redex is picked by strategy order over positions — innermost scans in
//! postorder (children before their node, left to right), outermost in
//! preorder — and by ascending rule id at a fixed position. Normalization
//! iterates single steps under a fuel bound and certifies its answer with a
//! step trace.

use crate::matching::{instantiate, matches, Bindings};
use crate::rules::{rule_by_id, RewriteRule, RuleSet};
use crate::term::{PathTerm, Position};
use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_FUEL: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Strategy {
    Innermost,
    Outermost,
}

impl Strategy {
    pub fn positions(&self, t: &PathTerm) -> Vec<Position> {
        match self {
            Strategy::Innermost => t.positions_postorder(),
            Strategy::Outermost => t.positions_preorder(),
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Strategy::Innermost => write!(f, "innermost"),
            Strategy::Outermost => write!(f, "outermost"),
        }
    }
}

#[derive(Debug, Error)]
pub enum RewriteError {
    #[error("fuel exhausted after {fuel} steps; last term: {last}")]
    FuelExhausted { fuel: usize, last: PathTerm },
}

/// One step of a certified trace: rule applied, where, and the whole term
/// after the step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: u8,
    pub name: &'static str,
    pub pos: Position,
    pub after: PathTerm,
}

#[derive(Debug, Clone)]
pub struct NormalizeOutcome {
    pub start: PathTerm,
    pub nf: PathTerm,
    pub steps: Vec<TraceStep>,
    pub strategy: Strategy,
}

impl NormalizeOutcome {
    /// Re-run every step of the trace and confirm it reproduces the normal
    /// form. Used by tests and by the certificate printer.
    pub fn replay_checks(&self, rs: &RuleSet) -> bool {
        let mut cur = self.start.clone();
        for step in &self.steps {
            let Ok(sub) = cur.subterm_at(&step.pos) else {
                return false;
            };
            let Some((id, rewritten)) = apply_lowest_rule(sub, rs) else {
                return false;
            };
            // The trace must name a rule that really applies there; the
            // engine picks the lowest id, and so must the replay.
            if id != step.rule {
                return false;
            }
            let Ok(next) = cur.replace_at(&step.pos, rewritten) else {
                return false;
            };
            if next != step.after {
                return false;
            }
            cur = next;
        }
        cur == self.nf
    }
}

/// Try to match one rule (any of its schema variants, printed first) against
/// the subterm `t`. Returns the rewritten subterm on success.
pub fn apply_rule(rule: &RewriteRule, t: &PathTerm, rs: &RuleSet) -> Option<PathTerm> {
    for (lhs, rhs) in crate::rules::cached_variants(rule.id, rs.extended_40_42) {
        // Every rule lhs is headed by a concrete constructor, so a cheap
        // discriminant test rejects most rules before a full match.
        if std::mem::discriminant(lhs) != std::mem::discriminant(t) {
            continue;
        }
        let mut b = Bindings::default();
        if matches(lhs, t, &mut b) {
            return Some(instantiate(rhs, &b));
        }
    }
    None
}

/// Lowest-id enabled rule applicable at the root of `t`, with its result.
pub fn apply_lowest_rule(t: &PathTerm, rs: &RuleSet) -> Option<(u8, PathTerm)> {
    for rule in rs.rules() {
        if let Some(res) = apply_rule(rule, t, rs) {
            return Some((rule.id, res));
        }
    }
    None
}

/// All (rule id, position) pairs that match anywhere in `t`, listed in
/// preorder position order and ascending id within a position.
pub fn applicable_rules(t: &PathTerm, rs: &RuleSet) -> Vec<(u8, Position)> {
    let mut out = Vec::new();
    for pos in t.positions_preorder() {
        let sub = t.subterm_at(&pos).expect("position from enumeration");
        for rule in rs.rules() {
            if apply_rule(rule, sub, rs).is_some() {
                out.push((rule.id, pos.clone()));
            }
        }
    }
    out
}

/// Perform the first rewrite in strategy order, if any.
pub fn rewrite_once(
    t: &PathTerm,
    strategy: Strategy,
    rs: &RuleSet,
) -> Option<(PathTerm, u8, Position)> {
    for pos in strategy.positions(t) {
        let sub = t.subterm_at(&pos).expect("position from enumeration");
        if let Some((id, rewritten)) = apply_lowest_rule(sub, rs) {
            let next = t
                .replace_at(&pos, rewritten)
                .expect("replace at enumerated position");
            return Some((next, id, pos));
        }
    }
    None
}

/// Normalize under the given strategy, producing a certified trace.
pub fn normalize(
    t: &PathTerm,
    strategy: Strategy,
    rs: &RuleSet,
    fuel: usize,
) -> Result<NormalizeOutcome, RewriteError> {
    let start = t.clone();
    let mut cur = t.clone();
    let mut steps = Vec::new();
    for _ in 0..fuel {
        match rewrite_once(&cur, strategy, rs) {
            None => {
                return Ok(NormalizeOutcome {
                    start,
                    nf: cur,
                    steps,
                    strategy,
                })
            }
            Some((next, rule, pos)) => {
                steps.push(TraceStep {
                    rule,
                    name: rule_by_id(rule).expect("enabled rule exists").name,
                    pos,
                    after: next.clone(),
                });
                cur = next;
            }
        }
    }
    Err(RewriteError::FuelExhausted { fuel, last: cur })
}

#[derive(Debug, Clone)]
pub struct RwEqualOutcome {
    pub equal: bool,
    pub left: NormalizeOutcome,
    pub right: NormalizeOutcome,
}

/// Decide rw-equality by normalization; the two traces are the certificate.
pub fn rw_equal(
    p: &PathTerm,
    q: &PathTerm,
    rs: &RuleSet,
    strategy: Strategy,
    fuel: usize,
) -> Result<RwEqualOutcome, RewriteError> {
    let left = normalize(p, strategy, rs, fuel)?;
    let right = normalize(q, strategy, rs, fuel)?;
    Ok(RwEqualOutcome {
        equal: left.nf == right.nf,
        left,
        right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;

    fn rs() -> RuleSet {
        RuleSet::core()
    }

    fn nf(s: &str, strategy: Strategy) -> String {
        let t = parse_term(s).unwrap();
        normalize(&t, strategy, &rs(), DEFAULT_FUEL).unwrap().nf.to_string()
    }

    #[test]
    fn first_redex_depends_on_strategy() {
        let t = parse_term("sigma(sigma(rho))").unwrap();
        let (_, id_in, pos_in) = rewrite_once(&t, Strategy::Innermost, &rs()).unwrap();
        assert_eq!((id_in, pos_in), (1, Position(vec![0])));
        let (_, id_out, pos_out) = rewrite_once(&t, Strategy::Outermost, &rs()).unwrap();
        assert_eq!((id_out, pos_out), (2, Position::root()));
    }

    #[test]
    fn applicable_rules_listing() {
        let t = parse_term("sigma(sigma(rho))").unwrap();
        assert_eq!(
            applicable_rules(&t, &rs()),
            vec![(2, Position::root()), (1, Position(vec![0]))]
        );
        let t2 = parse_term("tau(rho,rho)").unwrap();
        assert_eq!(
            applicable_rules(&t2, &rs()),
            vec![(5, Position::root()), (6, Position::root())]
        );
    }

    #[test]
    fn double_inverse_normalizes_to_rho_both_ways() {
        assert_eq!(nf("sigma(sigma(rho))", Strategy::Innermost), "rho");
        assert_eq!(nf("sigma(sigma(rho))", Strategy::Outermost), "rho");
    }

    #[test]
    fn sigma_over_subl_example() {
        // sigma(subl(sigma(s),r)) -> subr(sigma(r),sigma(sigma(s))) -> subr(sigma(r),s)
        assert_eq!(nf("sigma(subl(sigma(s),r))", Strategy::Innermost), "subr(sigma(r),s)");
        assert_eq!(nf("sigma(subl(sigma(s),r))", Strategy::Outermost), "subr(sigma(r),s)");
    }

    #[test]
    fn tau_reassociates_right() {
        assert_eq!(nf("tau(tau(t,r),s)", Strategy::Innermost), "tau(t,tau(r,s))");
        assert_eq!(nf("tau(tau(t,r),s)", Strategy::Outermost), "tau(t,tau(r,s))");
    }

    #[test]
    fn rule_38_cancels_inverse_prefix() {
        assert_eq!(nf("tau(r,tau(sigma(r),v))", Strategy::Innermost), "v");
        assert_eq!(nf("tau(r,tau(sigma(r),v))", Strategy::Outermost), "v");
    }

    #[test]
    fn trace_certifies_normalization() {
        let t = parse_term("sigma(tau(subl(a,b),c))").unwrap();
        let out = normalize(&t, Strategy::Innermost, &rs(), DEFAULT_FUEL).unwrap();
        assert!(out.replay_checks(&rs()));
        let out2 = normalize(&t, Strategy::Outermost, &rs(), DEFAULT_FUEL).unwrap();
        assert!(out2.replay_checks(&rs()));
    }

    #[test]
    fn context_rule_fires_through_congruence_heads() {
        // Rule 3 with C = xi1.
        let t = parse_term("tau(xi1(r),xi1(sigma(r)))").unwrap();
        let (next, id, pos) = rewrite_once(&t, Strategy::Outermost, &rs()).unwrap();
        assert_eq!(id, 3);
        assert_eq!(pos, Position::root());
        assert_eq!(next.to_string(), "xi1(rho)");
    }

    #[test]
    fn sigma_commutation_family_keeps_strategies_together() {
        for s in ["sigma(xi(nu(y)))", "sigma(mu2(xi2(b)))", "sigma(mu1(xiand(a,b)))"] {
            assert_eq!(nf(s, Strategy::Innermost), nf(s, Strategy::Outermost), "term {s}");
        }
        assert_eq!(nf("sigma(xi(nu(y)))", Strategy::Innermost), "sigma(y)");
    }

    #[test]
    fn extended_rules_off_by_default() {
        let t = parse_term("muf(id,a)").unwrap();
        assert!(rewrite_once(&t, Strategy::Innermost, &rs()).is_none());
        let ext = RuleSet::with_extended();
        let (next, id, _) = rewrite_once(&t, Strategy::Innermost, &ext).unwrap();
        assert_eq!(id, 42);
        assert_eq!(next.to_string(), "a");
    }

    #[test]
    fn map_label_rules_fire_under_extended() {
        let ext = RuleSet::with_extended();
        let t = parse_term("tau(muf(f,p),muf(f,q))").unwrap();
        let out = normalize(&t, Strategy::Innermost, &ext, DEFAULT_FUEL).unwrap();
        assert_eq!(out.nf.to_string(), "muf(f,tau(p,q))");
        let t2 = parse_term("muf(g,muf(f,p))").unwrap();
        let out2 = normalize(&t2, Strategy::Innermost, &ext, DEFAULT_FUEL).unwrap();
        assert_eq!(out2.nf.to_string(), "muf(g.f,p)");
    }

    #[test]
    fn fuel_exhaustion_is_reported() {
        let t = parse_term("sigma(sigma(sigma(sigma(rho))))").unwrap();
        match normalize(&t, Strategy::Innermost, &rs(), 1) {
            Err(RewriteError::FuelExhausted { fuel: 1, .. }) => {}
            other => panic!("expected fuel exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn rw_equal_certificates() {
        let p = parse_term("tau(r,sigma(r))").unwrap();
        let q = parse_term("rho").unwrap();
        let out = rw_equal(&p, &q, &rs(), Strategy::Innermost, DEFAULT_FUEL).unwrap();
        assert!(out.equal);
        assert_eq!(out.left.nf.to_string(), "rho");
        assert!(out.left.replay_checks(&rs()));
        let r = parse_term("tau(r,r)").unwrap();
        assert!(!rw_equal(&p, &r, &rs(), Strategy::Innermost, DEFAULT_FUEL).unwrap().equal);
    }
}

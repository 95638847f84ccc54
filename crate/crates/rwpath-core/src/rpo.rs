//! Recursive path ordering for the termination proof.
//!
//! The order compares rule schemas directly: metavariables act as distinct
//! minimal constants (a term is greater than a metavariable exactly when the
//! variable occurs properly inside it), and a context application C[t] is
//! compared through its body — `C[a] > C[b]` for every context iff `a > b`,
//! and `C[a] > t` for every context iff `a > t` (the trivial context is the
//! binding case; nontrivial ones only grow the left side).
//!
//! The symbol precedence is seeded with the printed pairs
//! σ>τ>ρ, σ>ξ, σ>ξ∧, σ>ξ₁, σ>ξ₂, σ>μ, σ>μ₁, σ>μ₂, σ>sub_L, σ>sub_R, τ>sub_L
//! and completed with τ>sub_R (mirroring τ>sub_L, required by the
//! τ-substitution rules) and σ>ν, σ>μ_f (extending the σ-commutation block
//! to the whole congruence family). τ carries lexicographic (left-to-right)
//! status; every other symbol carries multiset status. Pure multiset status
//! cannot orient the associativity rule 37 — its argument multisets
//! {τ(t,r), s} and {t, τ(r,s)} would need t > s for fresh variables — nor
//! rules 35/36, whose right-hand τ/sub_R arguments are covered by no single
//! left argument; the lexicographic first position settles all three. The
//! orientation report states which rules the strictly-printed multiset
//! order fails on.

use crate::rules::{RuleSet};
use crate::term::{PathTerm};
use serde::Serialize;
use std::collections::BTreeSet;

/// Precedence classes: one name per constructor family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PrecSym {
    Rho,
    Sigma,
    Tau,
    Xi,    // both the one-argument xi and the pair former
    XiAnd,
    Xi1,
    Xi2,
    Mu,    // mu of any arity
    Mu1,
    Mu2,
    Nu,
    SubL,
    SubR,
    MuF,
}

/// Head of a schema term as the ordering sees it.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Head<'a> {
    Sym(PrecSym),
    Atom(&'a str),
    Meta(&'a str),
}

fn head(t: &PathTerm) -> Head<'_> {
    match t {
        PathTerm::Rho { .. } => Head::Sym(PrecSym::Rho),
        PathTerm::Sigma(_) => Head::Sym(PrecSym::Sigma),
        PathTerm::Tau(_, _) => Head::Sym(PrecSym::Tau),
        PathTerm::Xi(_) | PathTerm::XiPair(_, _) => Head::Sym(PrecSym::Xi),
        PathTerm::XiAnd(_, _) => Head::Sym(PrecSym::XiAnd),
        PathTerm::Xi1(_) => Head::Sym(PrecSym::Xi1),
        PathTerm::Xi2(_) => Head::Sym(PrecSym::Xi2),
        PathTerm::MuU(_) | PathTerm::MuB(_, _) | PathTerm::MuT(_, _, _) => Head::Sym(PrecSym::Mu),
        PathTerm::Mu1(_) => Head::Sym(PrecSym::Mu1),
        PathTerm::Mu2(_) => Head::Sym(PrecSym::Mu2),
        PathTerm::Nu(_) => Head::Sym(PrecSym::Nu),
        PathTerm::SubL(_, _) => Head::Sym(PrecSym::SubL),
        PathTerm::SubR(_, _) => Head::Sym(PrecSym::SubR),
        PathTerm::MuF(_, _) => Head::Sym(PrecSym::MuF),
        PathTerm::Atom { name, .. } => Head::Atom(name),
        PathTerm::MetaVar(x) => Head::Meta(x),
        PathTerm::CtxApp(_, _) => unreachable!("context applications are unwrapped before head"),
    }
}

/// Argument comparison status of a symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Multiset,
    Lex,
}

#[derive(Debug, Clone)]
pub struct Precedence {
    greater: BTreeSet<(PrecSym, PrecSym)>,
    lex_tau: bool,
}

impl Precedence {
    /// The printed precedence pairs alone, multiset status everywhere.
    pub fn printed() -> Self {
        let mut p = Precedence {
            greater: BTreeSet::new(),
            lex_tau: false,
        };
        for (a, b) in Self::printed_pairs() {
            p.greater.insert((a, b));
        }
        p.close_transitively();
        p
    }

    /// The implemented order: printed pairs, the completions, and
    /// lexicographic status on τ.
    pub fn completed() -> Self {
        let mut p = Self::printed();
        p.lex_tau = true;
        for (a, b) in Self::completion_pairs() {
            p.greater.insert((a, b));
        }
        p.close_transitively();
        p
    }

    pub fn printed_pairs() -> Vec<(PrecSym, PrecSym)> {
        use PrecSym::*;
        vec![
            (Sigma, Tau),
            (Tau, Rho),
            (Sigma, Rho),
            (Sigma, Xi),
            (Sigma, XiAnd),
            (Sigma, Xi1),
            (Sigma, Xi2),
            (Sigma, Mu),
            (Sigma, Mu1),
            (Sigma, Mu2),
            (Sigma, SubL),
            (Sigma, SubR),
            (Tau, SubL),
        ]
    }

    pub fn completion_pairs() -> Vec<(PrecSym, PrecSym)> {
        use PrecSym::*;
        vec![(Tau, SubR), (Sigma, Nu), (Sigma, MuF), (Tau, MuF)]
    }

    fn close_transitively(&mut self) {
        loop {
            let mut new: Vec<(PrecSym, PrecSym)> = Vec::new();
            for &(a, b) in &self.greater {
                for &(c, d) in &self.greater {
                    if b == c && !self.greater.contains(&(a, d)) {
                        new.push((a, d));
                    }
                }
            }
            if new.is_empty() {
                break;
            }
            self.greater.extend(new);
        }
    }

    pub fn sym_greater(&self, a: PrecSym, b: PrecSym) -> bool {
        self.greater.contains(&(a, b))
    }

    pub fn status(&self, s: PrecSym) -> Status {
        if self.lex_tau && s == PrecSym::Tau {
            Status::Lex
        } else {
            Status::Multiset
        }
    }
}

fn occurs(x: &str, t: &PathTerm) -> bool {
    match t {
        PathTerm::MetaVar(y) => x == y,
        _ => t.children().iter().any(|c| occurs(x, c)),
    }
}

/// Strict order: `s` greater than `t` in the RPO for every instantiation of
/// metavariables and context slots.
pub fn rpo_greater(prec: &Precedence, s: &PathTerm, t: &PathTerm) -> bool {
    if s == t {
        return false;
    }
    // A metavariable is a minimal constant: below anything that properly
    // contains it, above nothing.
    if let PathTerm::MetaVar(x) = t {
        return occurs(x, s);
    }
    if let PathTerm::MetaVar(_) = s {
        return false;
    }
    // Context applications: same slot compares bodies (strict monotonicity);
    // a left context unwraps (C[a] > t for all C iff a > t, since the
    // trivial context is among the instantiations and larger contexts only
    // help). A right context with a different slot on the left is only
    // reachable through the subterm case below.
    if let (PathTerm::CtxApp(i, a), PathTerm::CtxApp(j, b)) = (s, t) {
        if i == j {
            return rpo_greater(prec, a, b);
        }
    }
    if let PathTerm::CtxApp(_, a) = s {
        return rpo_greater(prec, a, t);
    }
    if let PathTerm::CtxApp(_, _) = t {
        // Case 3 only: some argument of s dominates the context application.
        return s.children().iter().any(|si| rpo_ge(prec, si, t));
    }

    let sk = s.children();
    let tk = t.children();

    // Case 3: some argument of s is >= t.
    if sk.iter().any(|si| rpo_ge(prec, si, t)) {
        return true;
    }

    match (head(s), head(t)) {
        (Head::Sym(f), Head::Sym(g)) => {
            if prec.sym_greater(f, g) {
                // Case 2: s dominates every argument of t.
                return tk.iter().all(|tj| rpo_greater(prec, s, tj));
            }
            if f == g {
                // Case 1: equal heads, compare arguments by status.
                return match prec.status(f) {
                    Status::Multiset => multiset_greater(prec, &sk, &tk),
                    Status::Lex => {
                        lex_greater(prec, &sk, &tk)
                            && tk.iter().all(|tj| rpo_greater(prec, s, tj))
                    }
                };
            }
            false
        }
        // Atoms are constants with no precedence relations; an atom head can
        // only dominate via case 3, already tried.
        _ => false,
    }
}

fn rpo_ge(prec: &Precedence, s: &PathTerm, t: &PathTerm) -> bool {
    s == t || rpo_greater(prec, s, t)
}

/// Dershowitz–Manna multiset extension: drop the common part; the remainder
/// of the left multiset must be nonempty and dominate every leftover right
/// element.
pub fn multiset_greater(prec: &Precedence, left: &[&PathTerm], right: &[&PathTerm]) -> bool {
    let mut l: Vec<&PathTerm> = left.to_vec();
    let mut r: Vec<&PathTerm> = right.to_vec();
    let mut i = 0;
    while i < l.len() {
        if let Some(j) = r.iter().position(|x| *x == l[i]) {
            l.remove(i);
            r.remove(j);
        } else {
            i += 1;
        }
    }
    if l.is_empty() {
        return false;
    }
    r.iter().all(|y| l.iter().any(|x| rpo_greater(prec, x, y)))
}

/// Left-to-right lexicographic extension (used with the τ status); equal
/// prefixes then one strict comparison. Lengths agree for equal heads here.
fn lex_greater(prec: &Precedence, left: &[&PathTerm], right: &[&PathTerm]) -> bool {
    for (x, y) in left.iter().zip(right.iter()) {
        if x == y {
            continue;
        }
        return rpo_greater(prec, x, y);
    }
    false
}

/// Orientation verdict for one rule under one order.
#[derive(Debug, Clone, Serialize)]
pub struct RuleVerdict {
    pub id: u8,
    pub name: &'static str,
    pub decreasing: bool,
    /// One entry per schema variant (the printed schema first).
    pub variant_results: Vec<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrientationReport {
    /// Verdicts under the implemented order (completed precedence, τ lex).
    pub verdicts: Vec<RuleVerdict>,
    pub all_decreasing: bool,
    /// Rules the strictly-printed order (printed pairs only, multiset
    /// status everywhere) fails to orient.
    pub printed_order_failures: Vec<u8>,
}

/// Check every enabled rule, every schema variant, under the implemented
/// order; also report which rules the strictly-printed order cannot orient.
pub fn verify_orientation(rs: &RuleSet) -> OrientationReport {
    let completed = Precedence::completed();
    let printed = Precedence::printed();
    let mut verdicts = Vec::new();
    let mut printed_order_failures = Vec::new();
    for rule in rs.rules() {
        let variants = rule.match_variants(rs.extended_40_42);
        let variant_results: Vec<bool> = variants
            .iter()
            .map(|(l, r)| rpo_greater(&completed, l, r))
            .collect();
        let decreasing = variant_results.iter().all(|&b| b);
        // The printed order is judged on the printed schema alone; the
        // family variants are part of the implemented system, not of the
        // printed page.
        if !rpo_greater(&printed, &rule.lhs, &rule.rhs) {
            printed_order_failures.push(rule.id);
        }
        verdicts.push(RuleVerdict {
            id: rule.id,
            name: rule.name,
            decreasing,
            variant_results,
        });
    }
    OrientationReport {
        all_decreasing: verdicts.iter().all(|v| v.decreasing),
        verdicts,
        printed_order_failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_schema, parse_term};

    fn gt(s: &str, t: &str) -> bool {
        let prec = Precedence::completed();
        rpo_greater(
            &prec,
            &parse_schema(s).unwrap(),
            &parse_schema(t).unwrap(),
        )
    }

    #[test]
    fn printed_example_sigma_over_subl() {
        assert!(gt("sigma(subl(r,s))", "subr(sigma(s),sigma(r))"));
    }

    #[test]
    fn multiset_examples() {
        let prec = Precedence::completed();
        let a = parse_schema("subl(r,s)").unwrap();
        let b = parse_schema("s").unwrap();
        assert!(multiset_greater(&prec, &[&a], &[&b]));
        let c = parse_schema("sigma(r)").unwrap();
        let s = parse_schema("s").unwrap();
        let r = parse_schema("r").unwrap();
        assert!(multiset_greater(&prec, &[&c, &s], &[&r, &r, &s]));
        // Not greater: equal multisets.
        assert!(!multiset_greater(&prec, &[&r, &s], &[&s, &r]));
    }

    #[test]
    fn subterm_case_orients_eliminations() {
        assert!(gt("nu(xi(r))", "r"));
        assert!(gt("mu(xi1(r),s,u)", "s"));
        assert!(gt("xi(mu1(r),mu2(r))", "r"));
    }

    #[test]
    fn associativity_needs_lex_status() {
        assert!(gt("tau(tau(t,r),s)", "tau(t,tau(r,s))"));
        let printed = Precedence::printed();
        assert!(!rpo_greater(
            &printed,
            &parse_schema("tau(tau(t,r),s)").unwrap(),
            &parse_schema("tau(t,tau(r,s))").unwrap()
        ));
    }

    #[test]
    fn tau_substitution_rules_need_the_completion() {
        assert!(gt("tau(subl(r,s),t)", "tau(r,subr(s,t))"));
        assert!(gt("tau(subr(s,t),u)", "subr(s,tau(t,u))"));
        let printed = Precedence::printed();
        for (l, r) in [
            ("tau(subl(r,s),t)", "tau(r,subr(s,t))"),
            ("tau(subr(s,t),u)", "subr(s,tau(t,u))"),
        ] {
            assert!(!rpo_greater(
                &printed,
                &parse_schema(l).unwrap(),
                &parse_schema(r).unwrap()
            ));
        }
    }

    #[test]
    fn context_rules_orient_through_slot_congruence() {
        assert!(gt("tau(C[r],C[sigma(r)])", "C[rho]"));
        assert!(gt("tau(C[u],tau(C[sigma(u)],v))", "v"));
        assert!(gt("subl(subl(s,C[r]),C[sigma(r)])", "s"));
    }

    #[test]
    fn metavars_are_minimal_constants() {
        assert!(gt("sigma(r)", "r"));
        assert!(!gt("r", "s"));
        assert!(!gt("r", "sigma(r)"));
        // Distinct variables are incomparable.
        assert!(!gt("sigma(r)", "s"));
    }

    #[test]
    fn atoms_are_plain_constants() {
        let prec = Precedence::completed();
        let a = parse_term("a").unwrap();
        let b = parse_term("b").unwrap();
        assert!(!rpo_greater(&prec, &a, &b));
        let sa = parse_term("sigma(a)").unwrap();
        assert!(rpo_greater(&prec, &sa, &a));
    }

    #[test]
    fn all_39_core_rules_decrease_under_the_completed_order() {
        let report = verify_orientation(&RuleSet::core());
        assert!(report.all_decreasing, "non-decreasing: {:?}",
            report.verdicts.iter().filter(|v| !v.decreasing).map(|v| v.id).collect::<Vec<_>>());
        assert_eq!(report.verdicts.len(), 39);
    }

    #[test]
    fn extended_rules_decrease_too() {
        let report = verify_orientation(&RuleSet::with_extended());
        assert!(report.all_decreasing, "non-decreasing: {:?}",
            report.verdicts.iter().filter(|v| !v.decreasing).map(|v| v.id).collect::<Vec<_>>());
        assert_eq!(report.verdicts.len(), 42);
    }

    #[test]
    fn printed_order_fails_exactly_on_the_tau_group() {
        let report = verify_orientation(&RuleSet::core());
        assert_eq!(report.printed_order_failures, vec![35, 36, 37]);
    }
}

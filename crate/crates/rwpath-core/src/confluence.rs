//! Critical-pair analysis.
//!
//! Context rules are first flattened: every context slot is instantiated
//! with each unary-constructor chain up to the requested hole depth (depth 0
//! is the trivial hole) over the whole unary signature, and the σ-commutation
//! rules contribute one flat rule per family member. Critical pairs are then
//! the classical overlaps: unify one flat left-hand side into every
//! non-variable position of another (variable positions are skipped;
//! self-overlaps of a flat rule with itself at the root are excluded).
//! Joinability is decided by normalization of both branches.
//!
//! Non-joinable pairs are classified for diagnosis: overlaps between two
//! β/η-rules of the same elimination family answer incompatible selector
//! conditions that the purely structural rule format cannot separate;
//! overlaps strictly inside a context rule's left-hand side break the
//! correlation its repeated context demands; everything else is a genuine
//! structural gap in the rule inventory. The classification never removes a
//! pair from any count.

use crate::matching::matches;
use crate::parse::parse_schema;
use crate::rewrite::{normalize, RewriteError, Strategy};
use crate::rules::{RuleSet};
use crate::term::{FunLabel, PathTerm, Position, Unary};
use std::collections::{BTreeMap, BTreeSet};

/// A first-order rule instance produced by flattening.
#[derive(Debug, Clone)]
pub struct FlatRule {
    pub id: u8,
    pub name: &'static str,
    /// Human-readable provenance, e.g. `3 tr [C=mu1]` or `28 sx [xi2]`.
    pub desc: String,
    pub lhs: PathTerm,
    pub rhs: PathTerm,
    /// Which label names in this instance are variables (vs constants).
    label_vars: BTreeSet<String>,
    /// Positions of instantiated context-chain nodes in `lhs`.
    pub chain_positions: Vec<Position>,
    pub from_context_rule: bool,
}

/// The unary signature used for context instantiation.
fn unary_signature(extended: bool) -> Vec<(Unary, &'static str)> {
    let mut sig = vec![
        (Unary::Sigma, "sigma"),
        (Unary::Xi, "xi"),
        (Unary::Xi1, "xi1"),
        (Unary::Xi2, "xi2"),
        (Unary::MuU, "mu"),
        (Unary::Mu1, "mu1"),
        (Unary::Mu2, "mu2"),
        (Unary::Nu, "nu"),
    ];
    if extended {
        // One representative map label stands in for all of them.
        sig.push((Unary::MuF(FunLabel::plain("f")), "muf"));
    }
    sig
}

fn label_vars_of(t: &PathTerm, out: &mut BTreeSet<String>) {
    if let PathTerm::MuF(l, _) = t {
        collect_plain(l, out);
    }
    for c in t.children() {
        label_vars_of(c, out);
    }
}

fn collect_plain(l: &FunLabel, out: &mut BTreeSet<String>) {
    match l {
        FunLabel::Plain(x) => {
            out.insert(x.clone());
        }
        FunLabel::Composite(g, f) => {
            collect_plain(g, out);
            collect_plain(f, out);
        }
        FunLabel::Identity => {}
    }
}

/// Substitute every context application with the given chain, recording the
/// positions the chain nodes occupy in the result.
fn instantiate_ctx(
    t: &PathTerm,
    chain: &[Unary],
    pos: &Position,
    chain_positions: &mut Vec<Position>,
) -> PathTerm {
    match t {
        PathTerm::CtxApp(_, body) => {
            let mut p = pos.clone();
            for _ in 0..chain.len() {
                chain_positions.push(p.clone());
                p = p.child(0);
            }
            let inner = instantiate_ctx(body, chain, &p, chain_positions);
            crate::term::wrap_chain(chain, inner)
        }
        _ => {
            let kids = t
                .children()
                .into_iter()
                .enumerate()
                .map(|(i, c)| instantiate_ctx(c, chain, &pos.child(i), chain_positions))
                .collect();
            t.with_children(kids)
        }
    }
}

fn chains_up_to(depth: usize, extended: bool) -> Vec<(Vec<Unary>, String)> {
    let sig = unary_signature(extended);
    let mut out: Vec<(Vec<Unary>, String)> = vec![(vec![], "trivial".to_string())];
    let mut frontier: Vec<(Vec<Unary>, String)> = out.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for (chain, desc) in &frontier {
            for (u, name) in &sig {
                let mut c = chain.clone();
                c.push(u.clone());
                let d = if desc == "trivial" {
                    (*name).to_string()
                } else {
                    format!("{desc}.{name}")
                };
                next.push((c, d));
            }
        }
        out.extend(next.clone());
        frontier = next;
    }
    out
}

/// Flatten the enabled rules for critical-pair purposes.
pub fn flatten(rs: &RuleSet, depth: usize) -> Vec<FlatRule> {
    let mut out = Vec::new();
    let chains = chains_up_to(depth, rs.extended_40_42);
    for rule in rs.rules() {
        let variants = rule.match_variants(rs.extended_40_42);
        let multi = variants.len() > 1;
        for (vi, (lhs, rhs)) in variants.iter().enumerate() {
            let mut schema_label_vars = BTreeSet::new();
            label_vars_of(lhs, &mut schema_label_vars);
            if rule.context_slots == 0 {
                let desc = if multi {
                    format!("{} {} [variant {}]", rule.id, rule.name, vi)
                } else {
                    format!("{} {}", rule.id, rule.name)
                };
                out.push(FlatRule {
                    id: rule.id,
                    name: rule.name,
                    desc,
                    lhs: lhs.clone(),
                    rhs: rhs.clone(),
                    label_vars: schema_label_vars,
                    chain_positions: vec![],
                    from_context_rule: false,
                });
                continue;
            }
            for (chain, cdesc) in &chains {
                let mut chain_positions = Vec::new();
                let flat_lhs = instantiate_ctx(lhs, chain, &Position::root(), &mut chain_positions);
                let mut rhs_chain_positions = Vec::new();
                let flat_rhs =
                    instantiate_ctx(rhs, chain, &Position::root(), &mut rhs_chain_positions);
                // Chain nodes in the lhs are those recorded while walking it.
                // Recompute them properly: instantiate_ctx walked the schema,
                // so the recorded positions are already lhs positions.
                out.push(FlatRule {
                    id: rule.id,
                    name: rule.name,
                    desc: format!("{} {} [C={}]", rule.id, rule.name, cdesc),
                    lhs: flat_lhs,
                    rhs: flat_rhs,
                    label_vars: schema_label_vars.clone(),
                    chain_positions,
                    from_context_rule: true,
                });
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Unification (variables are the ?-prefixed names created by renaming apart).

#[derive(Debug, Clone, Default)]
struct Subst {
    vars: BTreeMap<String, PathTerm>,
    labels: BTreeMap<String, FunLabel>,
}

impl Subst {
    fn apply(&self, t: &PathTerm) -> PathTerm {
        match t {
            PathTerm::MetaVar(x) => match self.vars.get(x) {
                Some(b) => self.apply(b),
                None => t.clone(),
            },
            PathTerm::MuF(l, b) => PathTerm::muf(self.apply_label(l), self.apply(b)),
            _ => {
                let kids = t.children().into_iter().map(|c| self.apply(c)).collect();
                t.with_children(kids)
            }
        }
    }

    fn apply_label(&self, l: &FunLabel) -> FunLabel {
        match l {
            FunLabel::Plain(x) => match self.labels.get(x) {
                Some(b) => self.apply_label(b),
                None => l.clone(),
            },
            FunLabel::Composite(g, f) => {
                FunLabel::compose(self.apply_label(g), self.apply_label(f))
            }
            FunLabel::Identity => FunLabel::Identity,
        }
    }
}

fn occurs_term(x: &str, t: &PathTerm) -> bool {
    match t {
        PathTerm::MetaVar(y) => x == y,
        _ => t.children().iter().any(|c| occurs_term(x, c)),
    }
}

fn occurs_label(x: &str, l: &FunLabel) -> bool {
    match l {
        FunLabel::Plain(y) => x == y,
        FunLabel::Composite(g, f) => occurs_label(x, g) || occurs_label(x, f),
        FunLabel::Identity => false,
    }
}

fn is_label_var(name: &str) -> bool {
    name.starts_with('?')
}

fn unify(a: &PathTerm, b: &PathTerm, s: &mut Subst) -> bool {
    let a = s.apply(a);
    let b = s.apply(b);
    match (&a, &b) {
        (PathTerm::MetaVar(x), PathTerm::MetaVar(y)) if x == y => true,
        (PathTerm::MetaVar(x), t) | (t, PathTerm::MetaVar(x)) => {
            if occurs_term(x, t) {
                return false;
            }
            s.vars.insert(x.clone(), t.clone());
            true
        }
        (PathTerm::MuF(l1, b1), PathTerm::MuF(l2, b2)) => {
            unify_label(l1, l2, s) && unify(b1, b2, s)
        }
        (PathTerm::Rho { .. }, PathTerm::Rho { .. }) => true,
        (PathTerm::Atom { name: n1, .. }, PathTerm::Atom { name: n2, .. }) => n1 == n2,
        _ => {
            if std::mem::discriminant(&a) != std::mem::discriminant(&b) {
                return false;
            }
            a.children()
                .into_iter()
                .zip(b.children())
                .all(|(x, y)| unify(x, y, s))
        }
    }
}

fn unify_label(a: &FunLabel, b: &FunLabel, s: &mut Subst) -> bool {
    let a = s.apply_label(a);
    let b = s.apply_label(b);
    match (&a, &b) {
        (FunLabel::Plain(x), FunLabel::Plain(y)) if x == y => true,
        (FunLabel::Plain(x), l) if is_label_var(x) => {
            if occurs_label(x, l) {
                return false;
            }
            s.labels.insert(x.clone(), l.clone());
            true
        }
        (l, FunLabel::Plain(x)) if is_label_var(x) => {
            if occurs_label(x, l) {
                return false;
            }
            s.labels.insert(x.clone(), l.clone());
            true
        }
        (FunLabel::Identity, FunLabel::Identity) => true,
        (FunLabel::Composite(g1, f1), FunLabel::Composite(g2, f2)) => {
            unify_label(g1, f1_g(g2, f2).0, s) && unify_label(f1, f1_g(g2, f2).1, s)
        }
        _ => false,
    }
}

// Helper to appease the borrow checker when destructuring twice.
fn f1_g<'a>(g: &'a FunLabel, f: &'a FunLabel) -> (&'a FunLabel, &'a FunLabel) {
    (g, f)
}

/// Rename metavariables and label variables of `t` into the `?side:` space.
fn rename_apart(t: &PathTerm, side: u8, label_vars: &BTreeSet<String>) -> PathTerm {
    match t {
        PathTerm::MetaVar(x) => PathTerm::var(&format!("?{side}:{x}")),
        PathTerm::MuF(l, b) => PathTerm::muf(
            rename_label(l, side, label_vars),
            rename_apart(b, side, label_vars),
        ),
        _ => {
            let kids = t
                .children()
                .into_iter()
                .map(|c| rename_apart(c, side, label_vars))
                .collect();
            t.with_children(kids)
        }
    }
}

fn rename_label(l: &FunLabel, side: u8, label_vars: &BTreeSet<String>) -> FunLabel {
    match l {
        FunLabel::Plain(x) if label_vars.contains(x) => FunLabel::Plain(format!("?{side}:{x}")),
        FunLabel::Composite(g, f) => FunLabel::compose(
            rename_label(g, side, label_vars),
            rename_label(f, side, label_vars),
        ),
        other => other.clone(),
    }
}

/// Replace leftover variables by canonical fresh atoms (a, b, c, ...) so a
/// critical pair reads as a concrete witness. Label variables become plain
/// labels (h1, h2, ...).
fn concretize(terms: &mut [PathTerm]) {
    let mut var_map: BTreeMap<String, String> = BTreeMap::new();
    let mut label_map: BTreeMap<String, String> = BTreeMap::new();
    fn collect(
        t: &PathTerm,
        var_map: &mut BTreeMap<String, String>,
        label_map: &mut BTreeMap<String, String>,
    ) {
        match t {
            PathTerm::MetaVar(x) => {
                if !var_map.contains_key(x) {
                    let i = var_map.len();
                    let name = if i < 26 {
                        ((b'a' + i as u8) as char).to_string()
                    } else {
                        format!("v{i}")
                    };
                    var_map.insert(x.clone(), name);
                }
            }
            PathTerm::MuF(l, b) => {
                fn collect_l(l: &FunLabel, label_map: &mut BTreeMap<String, String>) {
                    match l {
                        FunLabel::Plain(x) if is_label_var(x) => {
                            if !label_map.contains_key(x) {
                                let name = format!("h{}", label_map.len() + 1);
                                label_map.insert(x.clone(), name);
                            }
                        }
                        FunLabel::Composite(g, f) => {
                            collect_l(g, label_map);
                            collect_l(f, label_map);
                        }
                        _ => {}
                    }
                }
                collect_l(l, label_map);
                collect(b, var_map, label_map);
            }
            _ => {
                for c in t.children() {
                    collect(c, var_map, label_map);
                }
            }
        }
    }
    fn rewrite(
        t: &PathTerm,
        var_map: &BTreeMap<String, String>,
        label_map: &BTreeMap<String, String>,
    ) -> PathTerm {
        match t {
            PathTerm::MetaVar(x) => PathTerm::atom(&var_map[x]),
            PathTerm::MuF(l, b) => {
                fn rl(l: &FunLabel, label_map: &BTreeMap<String, String>) -> FunLabel {
                    match l {
                        FunLabel::Plain(x) if is_label_var(x) => {
                            FunLabel::plain(&label_map[x])
                        }
                        FunLabel::Composite(g, f) => {
                            FunLabel::compose(rl(g, label_map), rl(f, label_map))
                        }
                        other => other.clone(),
                    }
                }
                PathTerm::muf(rl(l, label_map), rewrite(b, var_map, label_map))
            }
            _ => {
                let kids = t
                    .children()
                    .into_iter()
                    .map(|c| rewrite(c, var_map, label_map))
                    .collect();
                t.with_children(kids)
            }
        }
    }
    for t in terms.iter() {
        collect(t, &mut var_map, &mut label_map);
    }
    for t in terms.iter_mut() {
        *t = rewrite(t, &var_map, &label_map);
    }
}

// ---------------------------------------------------------------------------
// Critical pairs.

/// Why a non-joinable pair fails; report labels only, never exclusions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum PairClass {
    /// Two β/η-rules of the elimination families overlap; structurally
    /// realized conditions cannot keep their instances apart.
    ConditionalOverlap,
    /// The overlap happens strictly inside a context rule's left-hand side,
    /// destroying the correlation the repeated context demands.
    ContextCorrelation,
    /// A missing bridge between structural rules.
    StructuralGap,
}

#[derive(Debug, Clone)]
pub struct CriticalPair {
    pub outer_id: u8,
    pub inner_id: u8,
    pub outer_desc: String,
    pub inner_desc: String,
    pub position: Position,
    pub peak: PathTerm,
    /// Peak with the inner rule applied at `position`.
    pub left: PathTerm,
    /// Peak with the outer rule applied at the root.
    pub right: PathTerm,
    pub outer_from_context_rule: bool,
}

impl CriticalPair {
    pub fn classify(&self) -> PairClass {
        let beta_eta = |id: u8| (13..=24).contains(&id);
        if beta_eta(self.outer_id) && beta_eta(self.inner_id) {
            PairClass::ConditionalOverlap
        } else if self.outer_from_context_rule && !self.position.is_root() {
            PairClass::ContextCorrelation
        } else {
            PairClass::StructuralGap
        }
    }
}

/// All critical pairs of the enabled rules at the given context depth.
pub fn critical_pairs(rs: &RuleSet, depth: usize) -> Vec<CriticalPair> {
    let flats = flatten(rs, depth);
    let mut out = Vec::new();
    let mut seen: BTreeSet<(String, String, String)> = BTreeSet::new();
    for (oi, outer) in flats.iter().enumerate() {
        let outer_lhs = rename_apart(&outer.lhs, 2, &outer.label_vars);
        let outer_rhs = rename_apart(&outer.rhs, 2, &outer.label_vars);
        for pos in outer_lhs.positions_preorder() {
            let sub = outer_lhs.subterm_at(&pos).expect("enumerated position");
            if matches!(sub, PathTerm::MetaVar(_)) {
                continue;
            }
            for (ii, inner) in flats.iter().enumerate() {
                if pos.is_root() && ii == oi {
                    continue;
                }
                let inner_lhs = rename_apart(&inner.lhs, 1, &inner.label_vars);
                let inner_rhs = rename_apart(&inner.rhs, 1, &inner.label_vars);
                let mut s = Subst::default();
                if !unify(&inner_lhs, sub, &mut s) {
                    continue;
                }
                let peak = s.apply(&outer_lhs);
                let left = peak
                    .replace_at(&pos, s.apply(&inner_rhs))
                    .expect("overlap position exists in peak");
                let right = s.apply(&outer_rhs);
                let mut triple = [peak, left, right];
                concretize(&mut triple);
                let [peak, left, right] = triple;
                if left == right {
                    // Trivially convergent overlap; not a pair worth listing.
                    continue;
                }
                let key = (peak.to_string(), left.to_string(), right.to_string());
                if !seen.insert(key) {
                    continue;
                }
                out.push(CriticalPair {
                    outer_id: outer.id,
                    inner_id: inner.id,
                    outer_desc: outer.desc.clone(),
                    inner_desc: inner.desc.clone(),
                    position: pos.clone(),
                    peak,
                    left,
                    right,
                    outer_from_context_rule: outer.from_context_rule,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct JoinOutcome {
    pub joinable: bool,
    pub left_nf: PathTerm,
    pub right_nf: PathTerm,
}

/// Decide joinability of one pair by normalizing both branches.
pub fn joinable(
    cp: &CriticalPair,
    rs: &RuleSet,
    strategy: Strategy,
    fuel: usize,
) -> Result<JoinOutcome, RewriteError> {
    let l = normalize(&cp.left, strategy, rs, fuel)?;
    let r = normalize(&cp.right, strategy, rs, fuel)?;
    Ok(JoinOutcome {
        joinable: l.nf == r.nf,
        left_nf: l.nf,
        right_nf: r.nf,
    })
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct NonJoinableRecord {
    pub outer: String,
    pub inner: String,
    pub position: String,
    pub peak: String,
    pub left: String,
    pub right: String,
    pub left_nf: String,
    pub right_nf: String,
    pub class: PairClass,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ConfluenceReport {
    pub context_depth: usize,
    pub flat_rules: usize,
    pub pairs_total: usize,
    pub joinable_total: usize,
    pub non_joinable: Vec<NonJoinableRecord>,
    pub class_counts: BTreeMap<String, usize>,
}

/// Enumerate, decide and classify every critical pair.
pub fn confluence_report(
    rs: &RuleSet,
    depth: usize,
    strategy: Strategy,
    fuel: usize,
) -> Result<ConfluenceReport, RewriteError> {
    let flats = flatten(rs, depth);
    let pairs = critical_pairs(rs, depth);
    let mut non_joinable = Vec::new();
    let mut joinable_total = 0usize;
    let mut class_counts: BTreeMap<String, usize> = BTreeMap::new();
    for cp in &pairs {
        let j = joinable(cp, rs, strategy, fuel)?;
        if j.joinable {
            joinable_total += 1;
        } else {
            let class = cp.classify();
            *class_counts.entry(format!("{class:?}")).or_insert(0) += 1;
            non_joinable.push(NonJoinableRecord {
                outer: cp.outer_desc.clone(),
                inner: cp.inner_desc.clone(),
                position: cp.position.to_string(),
                peak: cp.peak.to_string(),
                left: cp.left.to_string(),
                right: cp.right.to_string(),
                left_nf: j.left_nf.to_string(),
                right_nf: j.right_nf.to_string(),
                class,
            });
        }
    }
    Ok(ConfluenceReport {
        context_depth: depth,
        flat_rules: flats.len(),
        pairs_total: pairs.len(),
        joinable_total,
        non_joinable,
        class_counts,
    })
}

/// Does `t` contain a subterm of the inverse-cancellation shape
/// `tau(x, tau(sigma(x), y))`? Used by the rules-38/39 necessity experiment.
pub fn contains_cancellation_shape(t: &PathTerm) -> bool {
    let pat = parse_schema("tau(x,tau(sigma(x),y))").expect("static schema");
    t.positions_preorder().iter().any(|p| {
        let sub = t.subterm_at(p).expect("enumerated position");
        let mut b = crate::matching::Bindings::default();
        matches(&pat, sub, &mut b)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;
    use crate::rewrite::DEFAULT_FUEL;

    #[test]
    fn flatten_counts_core_depth_1() {
        let flats = flatten(&RuleSet::core(), 1);
        // 12 context rules x 9 chains + (3 + 2 + 4) commutation variants
        // + 24 remaining plain rules.
        assert_eq!(flats.len(), 12 * 9 + 9 + 24);
    }

    #[test]
    fn unify_binds_both_sides() {
        let a = parse_schema("tau(?1:r,sigma(?1:r))").unwrap();
        let b = parse_schema("tau(sigma(?2:s),?2:t)").unwrap();
        let mut s = Subst::default();
        assert!(unify(&a, &b, &mut s));
        assert_eq!(s.apply(&a), s.apply(&b));
        // Occurs check.
        let x = parse_schema("?1:x").unwrap();
        let sx = parse_schema("sigma(?1:x)").unwrap();
        let mut s2 = Subst::default();
        assert!(!unify(&x, &sx, &mut s2));
    }

    #[test]
    fn the_25_36_pair_is_not_joinable() {
        let rs = RuleSet::core();
        let pairs = critical_pairs(&rs, 1);
        let hit = pairs
            .iter()
            .find(|cp| {
                (cp.outer_id, cp.inner_id) == (25, 36)
                    && cp.peak.to_string() == "sigma(tau(subr(a,b),c))"
            })
            .expect("the 25/36 overlap must be enumerated");
        let j = joinable(hit, &rs, Strategy::Innermost, DEFAULT_FUEL).unwrap();
        assert!(!j.joinable);
        assert_eq!(
            j.left_nf.to_string(),
            "subl(tau(sigma(c),sigma(b)),sigma(a))"
        );
        assert_eq!(j.right_nf.to_string(), "tau(sigma(c),subl(sigma(b),sigma(a)))");
        assert_eq!(hit.classify(), PairClass::StructuralGap);
    }

    #[test]
    fn conditional_overlap_20_24() {
        let rs = RuleSet::core();
        let pairs = critical_pairs(&rs, 1);
        let hit = pairs
            .iter()
            .find(|cp| {
                let ids = (cp.outer_id, cp.inner_id);
                (ids == (24, 20) || ids == (20, 24)) && cp.position.is_root()
            })
            .expect("20/24 root overlap must be enumerated");
        assert_eq!(hit.peak.to_string(), "mu(xi2(a),xi2(b))");
        let j = joinable(hit, &rs, Strategy::Innermost, DEFAULT_FUEL).unwrap();
        assert!(!j.joinable);
        assert_eq!(hit.classify(), PairClass::ConditionalOverlap);
    }

    #[test]
    fn context_correlation_13_into_3() {
        let rs = RuleSet::core();
        let pairs = critical_pairs(&rs, 1);
        let hit = pairs
            .iter()
            .find(|cp| {
                cp.outer_id == 3
                    && cp.inner_id == 13
                    && cp.peak.to_string() == "tau(mu1(xi1(a)),mu1(sigma(xi1(a))))"
            })
            .expect("13-into-3 overlap under C=mu1 must be enumerated");
        let j = joinable(hit, &rs, Strategy::Innermost, DEFAULT_FUEL).unwrap();
        assert!(!j.joinable);
        assert_eq!(j.left_nf.to_string(), "rho");
        assert_eq!(j.right_nf.to_string(), "mu1(rho)");
        assert_eq!(hit.classify(), PairClass::ContextCorrelation);
    }

    #[test]
    fn small_subsystem_is_locally_confluent() {
        // Rules 1 and 2 alone: all overlaps join.
        let rs = RuleSet::custom([1u8, 2]);
        let report = confluence_report(&rs, 1, Strategy::Innermost, DEFAULT_FUEL).unwrap();
        assert!(report.pairs_total > 0);
        assert!(report.non_joinable.is_empty(), "{:#?}", report.non_joinable);
    }

    #[test]
    fn without_38_39_the_cancellation_shape_witnesses_non_confluence() {
        let rs = RuleSet::without_38_39();
        let report = confluence_report(&rs, 1, Strategy::Innermost, DEFAULT_FUEL).unwrap();
        let witness = report.non_joinable.iter().find(|nj| {
            let l = parse_term(&nj.left_nf).unwrap();
            let r = parse_term(&nj.right_nf).unwrap();
            contains_cancellation_shape(&l) || contains_cancellation_shape(&r)
        });
        assert!(
            witness.is_some(),
            "expected a stuck tau(x,tau(sigma(x),y)) witness without rules 38/39"
        );
    }

    #[test]
    fn cancellation_shape_matcher() {
        let t = parse_term("tau(a,tau(sigma(a),b))").unwrap();
        assert!(contains_cancellation_shape(&t));
        let t2 = parse_term("tau(c,tau(a,tau(sigma(a),b)))").unwrap();
        assert!(contains_cancellation_shape(&t2));
        let t3 = parse_term("tau(a,tau(sigma(b),c))").unwrap();
        assert!(!contains_cancellation_shape(&t3));
    }
}

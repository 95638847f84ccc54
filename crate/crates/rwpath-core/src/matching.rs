//! Schema matching: metavariables, label variables and one-hole contexts.
//!
//! Context matching enumerates the unary spine of the candidate subterm,
//! shallowest decomposition first (trivial context, then one constructor,
//! and so on), and commits to the first decomposition under which the whole
//! remaining rule matches — the choice point spans the entire schema, so a
//! context bound in one argument backtracks when a later argument disagrees.
//! A context variable used twice in one schema must bind to the identical
//! chain both times.

use crate::term::{FunLabel, PathTerm, Unary};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bindings {
    pub vars: BTreeMap<String, PathTerm>,
    pub labels: BTreeMap<String, FunLabel>,
    pub chains: BTreeMap<u8, Vec<Unary>>,
}

/// Match `pat` against `t`, extending `b`. On failure `b` may hold partial
/// bindings; callers that need a clean slate pass a fresh `Bindings`.
pub fn matches(pat: &PathTerm, t: &PathTerm, b: &mut Bindings) -> bool {
    match_jobs(&[(pat, t)], b)
}

/// Match a sequence of (pattern, subject) jobs left to right.
fn match_jobs(jobs: &[(&PathTerm, &PathTerm)], b: &mut Bindings) -> bool {
    let Some(&(pat, t)) = jobs.first() else {
        return true;
    };
    let rest = &jobs[1..];
    match pat {
        PathTerm::MetaVar(x) => {
            if let Some(prev) = b.vars.get(x) {
                if prev != t {
                    return false;
                }
            } else {
                b.vars.insert(x.clone(), t.clone());
            }
            match_jobs(rest, b)
        }
        PathTerm::CtxApp(k, body) => match b.chains.get(k).cloned() {
            Some(chain) => {
                let mut cur = t;
                for u in &chain {
                    match Unary::of(cur) {
                        Some(h) if h == *u => cur = cur.children()[0],
                        _ => return false,
                    }
                }
                let mut next = vec![(&**body, cur)];
                next.extend_from_slice(rest);
                match_jobs(&next, b)
            }
            None => {
                // Choice point: try spine decompositions shallowest-first,
                // restoring the bindings between attempts.
                let mut chain: Vec<Unary> = Vec::new();
                let mut cur = t;
                loop {
                    let snapshot = b.clone();
                    b.chains.insert(*k, chain.clone());
                    let mut next = vec![(&**body, cur)];
                    next.extend_from_slice(rest);
                    if match_jobs(&next, b) {
                        return true;
                    }
                    *b = snapshot;
                    match Unary::of(cur) {
                        Some(h) => {
                            chain.push(h);
                            cur = cur.children()[0];
                        }
                        None => return false,
                    }
                }
            }
        },
        // A schema rho matches any rho, annotated or not.
        PathTerm::Rho { .. } => matches!(t, PathTerm::Rho { .. }) && match_jobs(rest, b),
        PathTerm::Atom { name, .. } => {
            matches!(t, PathTerm::Atom { name: tn, .. } if tn == name) && match_jobs(rest, b)
        }
        PathTerm::MuF(pl, pbody) => match t {
            PathTerm::MuF(tl, tbody) => {
                if !label_matches(pl, tl, b) {
                    return false;
                }
                let mut next = vec![(&**pbody, &**tbody)];
                next.extend_from_slice(rest);
                match_jobs(&next, b)
            }
            _ => false,
        },
        _ => {
            if std::mem::discriminant(pat) != std::mem::discriminant(t) {
                return false;
            }
            let pk = pat.children();
            let tk = t.children();
            debug_assert_eq!(pk.len(), tk.len());
            let mut next: Vec<(&PathTerm, &PathTerm)> =
                pk.into_iter().zip(tk.into_iter()).collect();
            next.extend_from_slice(rest);
            match_jobs(&next, b)
        }
    }
}

/// In schemas, a plain label name is a label variable; identity and
/// composition are matched structurally.
fn label_matches(pl: &FunLabel, tl: &FunLabel, b: &mut Bindings) -> bool {
    match pl {
        FunLabel::Plain(x) => {
            if let Some(prev) = b.labels.get(x) {
                prev == tl
            } else {
                b.labels.insert(x.clone(), tl.clone());
                true
            }
        }
        FunLabel::Identity => *tl == FunLabel::Identity,
        FunLabel::Composite(g, f) => match tl {
            FunLabel::Composite(tg, tf) => label_matches(g, tg, b) && label_matches(f, tf, b),
            _ => false,
        },
    }
}

/// Build the concrete term a schema denotes under `b`. Every metavariable,
/// label variable and context slot of the schema must be bound.
pub fn instantiate(pat: &PathTerm, b: &Bindings) -> PathTerm {
    match pat {
        PathTerm::MetaVar(x) => b
            .vars
            .get(x)
            .unwrap_or_else(|| panic!("unbound metavariable {x} in rhs"))
            .clone(),
        PathTerm::CtxApp(k, body) => {
            let chain = b
                .chains
                .get(k)
                .unwrap_or_else(|| panic!("unbound context slot {k} in rhs"));
            crate::term::wrap_chain(chain, instantiate(body, b))
        }
        PathTerm::Rho { .. } => PathTerm::rho(),
        PathTerm::MuF(l, body) => PathTerm::muf(instantiate_label(l, b), instantiate(body, b)),
        other => {
            let kids = other.children().into_iter().map(|c| instantiate(c, b)).collect();
            other.with_children(kids)
        }
    }
}

fn instantiate_label(l: &FunLabel, b: &Bindings) -> FunLabel {
    match l {
        FunLabel::Plain(x) => b
            .labels
            .get(x)
            .unwrap_or_else(|| panic!("unbound label variable {x} in rhs"))
            .clone(),
        FunLabel::Identity => FunLabel::Identity,
        FunLabel::Composite(g, f) => {
            FunLabel::compose(instantiate_label(g, b), instantiate_label(f, b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_schema, parse_term};

    fn try_match(pat: &str, term: &str) -> Option<Bindings> {
        let p = parse_schema(pat).unwrap();
        let t = parse_term(term).unwrap();
        let mut b = Bindings::default();
        matches(&p, &t, &mut b).then_some(b)
    }

    #[test]
    fn plain_variable_binding() {
        let b = try_match("sigma(sigma(r))", "sigma(sigma(tau(a,b)))").unwrap();
        assert_eq!(b.vars["r"], parse_term("tau(a,b)").unwrap());
        assert!(try_match("sigma(sigma(r))", "sigma(tau(a,b))").is_none());
    }

    #[test]
    fn repeated_variable_must_agree() {
        assert!(try_match("xi(mu1(r),mu2(r))", "xi(mu1(a),mu2(a))").is_some());
        assert!(try_match("xi(mu1(r),mu2(r))", "xi(mu1(a),mu2(b))").is_none());
    }

    #[test]
    fn schema_rho_matches_annotated_rho() {
        assert!(try_match("sigma(rho)", "sigma(rho@x0)").is_some());
        assert!(try_match("sigma(rho)", "sigma(a)").is_none());
    }

    #[test]
    fn context_backtracks_across_arguments() {
        // Matching the first argument alone would settle on the trivial
        // context; the second argument forces C = xi1.
        let b = try_match("tau(C[r],C[sigma(r)])", "tau(xi1(a),xi1(sigma(a)))").unwrap();
        assert_eq!(b.chains[&0], vec![Unary::Xi1]);
        assert_eq!(b.vars["r"], parse_term("a").unwrap());
        // With no inner structure forcing depth, the trivial context wins.
        let b2 = try_match("tau(C[r],C[sigma(r)])", "tau(a,sigma(a))").unwrap();
        assert_eq!(b2.chains[&0], vec![]);
    }

    #[test]
    fn context_reuse_requires_identical_chain() {
        assert!(try_match("tau(C[r],C[sigma(r)])", "tau(xi1(a),xi2(sigma(a)))").is_none());
        // Chains longer than one constructor.
        let b = try_match(
            "tau(C[r],C[sigma(r)])",
            "tau(mu1(xi1(a)),mu1(xi1(sigma(a))))",
        )
        .unwrap();
        assert_eq!(b.chains[&0], vec![Unary::Mu1, Unary::Xi1]);
    }

    #[test]
    fn trivial_context_beats_deeper_ones_when_both_fit() {
        // sigma(sigma(a)): rule 5's lhs tau(C[r],C[rho]) is irrelevant here;
        // check with rule 3's shape where both C = trivial (r = sigma(a))
        // and C = sigma (r = a) complete the match; shallowest wins.
        let b = try_match("tau(C[r],C[sigma(r)])", "tau(sigma(a),sigma(sigma(a)))").unwrap();
        assert_eq!(b.chains[&0], vec![]);
        assert_eq!(b.vars["r"], parse_term("sigma(a)").unwrap());
    }

    #[test]
    fn label_variables_and_literals() {
        let b = try_match("muf(g,muf(f,p))", "muf(h,muf(id,a))").unwrap();
        assert_eq!(b.labels["g"], FunLabel::plain("h"));
        assert_eq!(b.labels["f"], FunLabel::Identity);
        assert!(try_match("muf(id,p)", "muf(f,a)").is_none());
        assert!(try_match("muf(id,p)", "muf(id,a)").is_some());
        // Repeated label variable must agree (rule 40's shape).
        assert!(try_match("tau(muf(f,p),muf(f,q))", "tau(muf(g,a),muf(g,b))").is_some());
        assert!(try_match("tau(muf(f,p),muf(f,q))", "tau(muf(g,a),muf(h,b))").is_none());
    }

    #[test]
    fn instantiation_round_trip() {
        let pat = parse_schema("tau(C[r],C[sigma(r)])").unwrap();
        let t = parse_term("tau(mu1(a),mu1(sigma(a)))").unwrap();
        let mut b = Bindings::default();
        assert!(matches(&pat, &t, &mut b));
        assert_eq!(instantiate(&pat, &b), t);
        let rhs = parse_schema("C[rho]").unwrap();
        assert_eq!(instantiate(&rhs, &b), parse_term("mu1(rho)").unwrap());
    }

    #[test]
    fn composite_label_instantiation() {
        let pat = parse_schema("muf(g,muf(f,p))").unwrap();
        let t = parse_term("muf(h,muf(k,a))").unwrap();
        let mut b = Bindings::default();
        assert!(matches(&pat, &t, &mut b));
        let rhs = parse_schema("muf(g.f,p)").unwrap();
        assert_eq!(instantiate(&rhs, &b), parse_term("muf(h.k,a)").unwrap());
    }
}

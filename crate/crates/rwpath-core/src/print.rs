//! Canonical printing of path terms: minimal, space-free, re-parseable.
//!
//! `parse(print(t)) = t` holds for every concrete term the parser can
//! produce. Typing annotations on atoms are not printed (they live in the
//! presentation, not in the label grammar); ρ base-point annotations are.

use crate::term::PathTerm;
use std::fmt;

impl fmt::Display for PathTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathTerm::Atom { name, .. } => write!(f, "{name}"),
            PathTerm::Rho { at: None } => write!(f, "rho"),
            PathTerm::Rho { at: Some(x) } => write!(f, "rho@{x}"),
            PathTerm::Sigma(p) => write!(f, "sigma({p})"),
            PathTerm::Tau(p, q) => write!(f, "tau({p},{q})"),
            PathTerm::Xi1(p) => write!(f, "xi1({p})"),
            PathTerm::Xi2(p) => write!(f, "xi2({p})"),
            PathTerm::XiAnd(p, q) => write!(f, "xiand({p},{q})"),
            PathTerm::Xi(p) => write!(f, "xi({p})"),
            PathTerm::XiPair(p, q) => write!(f, "xi({p},{q})"),
            PathTerm::Mu1(p) => write!(f, "mu1({p})"),
            PathTerm::Mu2(p) => write!(f, "mu2({p})"),
            PathTerm::MuU(p) => write!(f, "mu({p})"),
            PathTerm::MuB(p, q) => write!(f, "mu({p},{q})"),
            PathTerm::MuT(p, q, r) => write!(f, "mu({p},{q},{r})"),
            PathTerm::Nu(p) => write!(f, "nu({p})"),
            PathTerm::SubL(p, q) => write!(f, "subl({p},{q})"),
            PathTerm::SubR(p, q) => write!(f, "subr({p},{q})"),
            PathTerm::MuF(l, p) => write!(f, "muf({l},{p})"),
            PathTerm::MetaVar(n) => write!(f, "{n}"),
            PathTerm::CtxApp(_, p) => write!(f, "C[{p}]"),
        }
    }
}

//! Path-term algebra: the label expressions of LND-EQ-TRS.
//!
//! A `PathTerm` is an equality label built from atomic paths, reflexivity
//! (ρ), symmetry (σ), transitivity (τ), the substitution labels sub_L/sub_R,
//! and the introduction/elimination congruence labels (the ξ, μ and ν
//! families, plus the map label μ_f). Two extra forms exist only inside rule
//! schemas: metavariables and context applications C[t]. The typed fragment
//! (endpoint computation) covers atoms, ρ, σ and τ.

use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

pub type ObjectId = String;

/// Environment assigning endpoints to atom names for the typed fragment.
pub type AtomEnv = BTreeMap<String, (ObjectId, ObjectId)>;

/// Function label carried by a μ_f node. `g.f` composes (apply f, then g).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunLabel {
    Plain(String),
    Composite(Box<FunLabel>, Box<FunLabel>),
    Identity,
}

impl FunLabel {
    pub fn plain(name: &str) -> Self {
        FunLabel::Plain(name.to_string())
    }

    pub fn compose(g: FunLabel, f: FunLabel) -> Self {
        FunLabel::Composite(Box::new(g), Box::new(f))
    }
}

impl fmt::Display for FunLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunLabel::Plain(n) => write!(f, "{n}"),
            FunLabel::Composite(g, h) => {
                // Composition is right-associative in the grammar, so a
                // composite left factor needs parentheses to round-trip.
                match **g {
                    FunLabel::Composite(_, _) => write!(f, "({g}).{h}"),
                    _ => write!(f, "{g}.{h}"),
                }
            }
            FunLabel::Identity => write!(f, "id"),
        }
    }
}

/// An equality label over paths.
///
/// The constructors mirror the label formers one to one; distinct formers of
/// the same written name but different arity are distinct constructors
/// (`Xi`/`XiPair`, `MuU`/`MuB`/`MuT`), so no two ever unify.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathTerm {
    Atom {
        name: String,
        endpoints: Option<(ObjectId, ObjectId)>,
    },
    Rho {
        at: Option<ObjectId>,
    },
    Sigma(Box<PathTerm>),
    Tau(Box<PathTerm>, Box<PathTerm>),
    Xi1(Box<PathTerm>),
    Xi2(Box<PathTerm>),
    XiAnd(Box<PathTerm>, Box<PathTerm>),
    Xi(Box<PathTerm>),
    XiPair(Box<PathTerm>, Box<PathTerm>),
    Mu1(Box<PathTerm>),
    Mu2(Box<PathTerm>),
    MuU(Box<PathTerm>),
    MuB(Box<PathTerm>, Box<PathTerm>),
    MuT(Box<PathTerm>, Box<PathTerm>, Box<PathTerm>),
    Nu(Box<PathTerm>),
    SubL(Box<PathTerm>, Box<PathTerm>),
    SubR(Box<PathTerm>, Box<PathTerm>),
    MuF(FunLabel, Box<PathTerm>),
    /// Rule-schema metavariable. Never produced by the term parser.
    MetaVar(String),
    /// Rule-schema context application C[t]. Never produced by the term parser.
    CtxApp(u8, Box<PathTerm>),
}

/// Unary constructor heads, the building blocks of contexts C[..].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unary {
    Sigma,
    Xi,
    Xi1,
    Xi2,
    MuU,
    Mu1,
    Mu2,
    Nu,
    MuF(FunLabel),
}

impl Unary {
    pub fn wrap(&self, t: PathTerm) -> PathTerm {
        let b = Box::new(t);
        match self {
            Unary::Sigma => PathTerm::Sigma(b),
            Unary::Xi => PathTerm::Xi(b),
            Unary::Xi1 => PathTerm::Xi1(b),
            Unary::Xi2 => PathTerm::Xi2(b),
            Unary::MuU => PathTerm::MuU(b),
            Unary::Mu1 => PathTerm::Mu1(b),
            Unary::Mu2 => PathTerm::Mu2(b),
            Unary::Nu => PathTerm::Nu(b),
            Unary::MuF(l) => PathTerm::MuF(l.clone(), b),
        }
    }

    /// The unary head of `t`, if `t` is a unary-constructor node.
    pub fn of(t: &PathTerm) -> Option<Unary> {
        match t {
            PathTerm::Sigma(_) => Some(Unary::Sigma),
            PathTerm::Xi(_) => Some(Unary::Xi),
            PathTerm::Xi1(_) => Some(Unary::Xi1),
            PathTerm::Xi2(_) => Some(Unary::Xi2),
            PathTerm::MuU(_) => Some(Unary::MuU),
            PathTerm::Mu1(_) => Some(Unary::Mu1),
            PathTerm::Mu2(_) => Some(Unary::Mu2),
            PathTerm::Nu(_) => Some(Unary::Nu),
            PathTerm::MuF(l, _) => Some(Unary::MuF(l.clone())),
            _ => None,
        }
    }
}

/// Wrap `t` in a chain of unary constructors, outermost first.
pub fn wrap_chain(chain: &[Unary], t: PathTerm) -> PathTerm {
    chain.iter().rev().fold(t, |acc, u| u.wrap(acc))
}

/// A position in a term: the sequence of child indices from the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.push(i);
        Position(v)
    }

    /// Prefix test: does `self` lie on the path from the root to `other`?
    pub fn is_prefix_of(&self, other: &Position) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    pub fn parse(s: &str) -> Result<Self, TermError> {
        let s = s.trim();
        if s.is_empty() || s == "root" {
            return Ok(Position::root());
        }
        let mut v = Vec::new();
        for part in s.split('.') {
            let i: usize = part.parse().map_err(|_| TermError::BadPosition {
                pos: s.to_string(),
            })?;
            v.push(i);
        }
        Ok(Position(v))
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "root");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// A one-hole context: a host term with a designated hole position.
/// The trivial context has its hole at the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    pub host: PathTerm,
    pub hole: Position,
}

impl Context {
    pub fn trivial() -> Self {
        Context {
            host: PathTerm::MetaVar("hole".into()),
            hole: Position::root(),
        }
    }

    /// Build the context consisting of a unary-constructor chain.
    pub fn from_chain(chain: &[Unary]) -> Self {
        let host = wrap_chain(chain, PathTerm::MetaVar("hole".into()));
        Context {
            host,
            hole: Position(vec![0; chain.len()]),
        }
    }

    /// Plug `t` into the hole.
    pub fn apply(&self, t: PathTerm) -> Result<PathTerm, TermError> {
        self.host.replace_at(&self.hole, t)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TermError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("position {pos} does not exist in the term")]
    BadPosition { pos: String },
    #[error("endpoint mismatch at tau: left factor ends at {left_end}, right factor starts at {right_start}")]
    EndpointMismatch {
        left_end: ObjectId,
        right_start: ObjectId,
    },
    #[error("atom {name} has no endpoint assignment")]
    UnboundAtom { name: String },
    #[error("rho without annotation has indeterminate endpoints")]
    UnannotatedRho,
    #[error("{constructor} lies outside the typed fragment")]
    NotTyped { constructor: String },
    #[error("schema-only construct {construct} used as a concrete term")]
    SchemaOnly { construct: String },
}

impl PathTerm {
    pub fn atom(name: &str) -> Self {
        PathTerm::Atom {
            name: name.to_string(),
            endpoints: None,
        }
    }

    pub fn typed_atom(name: &str, src: &str, tgt: &str) -> Self {
        PathTerm::Atom {
            name: name.to_string(),
            endpoints: Some((src.to_string(), tgt.to_string())),
        }
    }

    pub fn rho() -> Self {
        PathTerm::Rho { at: None }
    }

    pub fn rho_at(x: &str) -> Self {
        PathTerm::Rho {
            at: Some(x.to_string()),
        }
    }

    pub fn sigma(p: PathTerm) -> Self {
        PathTerm::Sigma(Box::new(p))
    }

    pub fn tau(p: PathTerm, q: PathTerm) -> Self {
        PathTerm::Tau(Box::new(p), Box::new(q))
    }

    pub fn xi1(p: PathTerm) -> Self {
        PathTerm::Xi1(Box::new(p))
    }

    pub fn xi2(p: PathTerm) -> Self {
        PathTerm::Xi2(Box::new(p))
    }

    pub fn xiand(p: PathTerm, q: PathTerm) -> Self {
        PathTerm::XiAnd(Box::new(p), Box::new(q))
    }

    pub fn xi(p: PathTerm) -> Self {
        PathTerm::Xi(Box::new(p))
    }

    pub fn xipair(p: PathTerm, q: PathTerm) -> Self {
        PathTerm::XiPair(Box::new(p), Box::new(q))
    }

    pub fn mu1(p: PathTerm) -> Self {
        PathTerm::Mu1(Box::new(p))
    }

    pub fn mu2(p: PathTerm) -> Self {
        PathTerm::Mu2(Box::new(p))
    }

    pub fn mu(p: PathTerm) -> Self {
        PathTerm::MuU(Box::new(p))
    }

    pub fn mub(p: PathTerm, q: PathTerm) -> Self {
        PathTerm::MuB(Box::new(p), Box::new(q))
    }

    pub fn mut3(p: PathTerm, q: PathTerm, r: PathTerm) -> Self {
        PathTerm::MuT(Box::new(p), Box::new(q), Box::new(r))
    }

    pub fn nu(p: PathTerm) -> Self {
        PathTerm::Nu(Box::new(p))
    }

    pub fn subl(p: PathTerm, q: PathTerm) -> Self {
        PathTerm::SubL(Box::new(p), Box::new(q))
    }

    pub fn subr(p: PathTerm, q: PathTerm) -> Self {
        PathTerm::SubR(Box::new(p), Box::new(q))
    }

    pub fn muf(l: FunLabel, p: PathTerm) -> Self {
        PathTerm::MuF(l, Box::new(p))
    }

    pub fn var(name: &str) -> Self {
        PathTerm::MetaVar(name.to_string())
    }

    pub fn ctx(slot: u8, body: PathTerm) -> Self {
        PathTerm::CtxApp(slot, Box::new(body))
    }

    pub fn children(&self) -> Vec<&PathTerm> {
        match self {
            PathTerm::Atom { .. } | PathTerm::Rho { .. } | PathTerm::MetaVar(_) => vec![],
            PathTerm::Sigma(a)
            | PathTerm::Xi1(a)
            | PathTerm::Xi2(a)
            | PathTerm::Xi(a)
            | PathTerm::Mu1(a)
            | PathTerm::Mu2(a)
            | PathTerm::MuU(a)
            | PathTerm::Nu(a)
            | PathTerm::MuF(_, a)
            | PathTerm::CtxApp(_, a) => vec![a],
            PathTerm::Tau(a, b)
            | PathTerm::XiAnd(a, b)
            | PathTerm::XiPair(a, b)
            | PathTerm::MuB(a, b)
            | PathTerm::SubL(a, b)
            | PathTerm::SubR(a, b) => vec![a, b],
            PathTerm::MuT(a, b, c) => vec![a, b, c],
        }
    }

    pub fn arity(&self) -> usize {
        self.children().len()
    }

    /// Rebuild this node with new children (same constructor).
    /// Panics if the child count does not match the arity.
    pub fn with_children(&self, mut kids: Vec<PathTerm>) -> PathTerm {
        assert_eq!(kids.len(), self.arity(), "arity mismatch in with_children");
        let mut next = || Box::new(kids.remove(0));
        match self {
            PathTerm::Atom { .. } | PathTerm::Rho { .. } | PathTerm::MetaVar(_) => self.clone(),
            PathTerm::Sigma(_) => PathTerm::Sigma(next()),
            PathTerm::Tau(_, _) => PathTerm::Tau(next(), next()),
            PathTerm::Xi1(_) => PathTerm::Xi1(next()),
            PathTerm::Xi2(_) => PathTerm::Xi2(next()),
            PathTerm::XiAnd(_, _) => PathTerm::XiAnd(next(), next()),
            PathTerm::Xi(_) => PathTerm::Xi(next()),
            PathTerm::XiPair(_, _) => PathTerm::XiPair(next(), next()),
            PathTerm::Mu1(_) => PathTerm::Mu1(next()),
            PathTerm::Mu2(_) => PathTerm::Mu2(next()),
            PathTerm::MuU(_) => PathTerm::MuU(next()),
            PathTerm::MuB(_, _) => PathTerm::MuB(next(), next()),
            PathTerm::MuT(_, _, _) => PathTerm::MuT(next(), next(), next()),
            PathTerm::Nu(_) => PathTerm::Nu(next()),
            PathTerm::SubL(_, _) => PathTerm::SubL(next(), next()),
            PathTerm::SubR(_, _) => PathTerm::SubR(next(), next()),
            PathTerm::MuF(l, _) => PathTerm::MuF(l.clone(), next()),
            PathTerm::CtxApp(k, _) => PathTerm::CtxApp(*k, next()),
        }
    }

    pub fn subterm_at(&self, pos: &Position) -> Result<&PathTerm, TermError> {
        let mut cur = self;
        for &i in &pos.0 {
            cur = cur.children().into_iter().nth(i).ok_or(TermError::BadPosition {
                pos: pos.to_string(),
            })?;
        }
        Ok(cur)
    }

    pub fn replace_at(&self, pos: &Position, replacement: PathTerm) -> Result<PathTerm, TermError> {
        fn go(t: &PathTerm, path: &[usize], replacement: PathTerm) -> Option<PathTerm> {
            match path {
                [] => Some(replacement),
                [i, rest @ ..] => {
                    let kids = t.children();
                    if *i >= kids.len() {
                        return None;
                    }
                    let mut new_kids: Vec<PathTerm> = kids.iter().map(|k| (*k).clone()).collect();
                    new_kids[*i] = go(kids[*i], rest, replacement)?;
                    Some(t.with_children(new_kids))
                }
            }
        }
        go(self, &pos.0, replacement).ok_or(TermError::BadPosition {
            pos: pos.to_string(),
        })
    }

    /// All positions in preorder (a node before its children, left to right).
    pub fn positions_preorder(&self) -> Vec<Position> {
        let mut out = Vec::new();
        fn go(t: &PathTerm, pos: Position, out: &mut Vec<Position>) {
            out.push(pos.clone());
            for (i, c) in t.children().into_iter().enumerate() {
                go(c, pos.child(i), out);
            }
        }
        go(self, Position::root(), &mut out);
        out
    }

    /// All positions in postorder (children before their node, left to right).
    pub fn positions_postorder(&self) -> Vec<Position> {
        let mut out = Vec::new();
        fn go(t: &PathTerm, pos: Position, out: &mut Vec<Position>) {
            for (i, c) in t.children().into_iter().enumerate() {
                go(c, pos.child(i), out);
            }
            out.push(pos);
        }
        go(self, Position::root(), &mut out);
        out
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn contains_schema_constructs(&self) -> bool {
        match self {
            PathTerm::MetaVar(_) | PathTerm::CtxApp(_, _) => true,
            _ => self.children().iter().any(|c| c.contains_schema_constructs()),
        }
    }

    /// Strip typing annotations (atom endpoints, ρ base points). The label
    /// algebra itself is annotation-free; annotations belong to the typed
    /// fragment only.
    pub fn erase_annotations(&self) -> PathTerm {
        match self {
            PathTerm::Atom { name, .. } => PathTerm::atom(name),
            PathTerm::Rho { .. } => PathTerm::rho(),
            other => {
                let kids = other.children().into_iter().map(|c| c.erase_annotations()).collect();
                other.with_children(kids)
            }
        }
    }

    /// Endpoints of a term in the typed fragment {atom, ρ, σ, τ}.
    ///
    /// Atom endpoints come from the inline annotation when present, else from
    /// `env`. τ chains must agree at the junction; σ swaps; annotated ρ is a
    /// loop at its base point.
    pub fn endpoints(&self, env: &AtomEnv) -> Result<(ObjectId, ObjectId), TermError> {
        match self {
            PathTerm::Atom { name, endpoints } => {
                if let Some(e) = endpoints {
                    return Ok(e.clone());
                }
                env.get(name).cloned().ok_or(TermError::UnboundAtom {
                    name: name.clone(),
                })
            }
            PathTerm::Rho { at } => match at {
                Some(x) => Ok((x.clone(), x.clone())),
                None => Err(TermError::UnannotatedRho),
            },
            PathTerm::Sigma(p) => {
                let (a, b) = p.endpoints(env)?;
                Ok((b, a))
            }
            PathTerm::Tau(p, q) => {
                let (a, b) = p.endpoints(env)?;
                let (c, d) = q.endpoints(env)?;
                if b != c {
                    return Err(TermError::EndpointMismatch {
                        left_end: b,
                        right_start: c,
                    });
                }
                Ok((a, d))
            }
            PathTerm::MetaVar(n) => Err(TermError::SchemaOnly {
                construct: format!("metavariable {n}"),
            }),
            PathTerm::CtxApp(_, _) => Err(TermError::SchemaOnly {
                construct: "context application".to_string(),
            }),
            other => Err(TermError::NotTyped {
                constructor: other.constructor_name().to_string(),
            }),
        }
    }

    pub fn constructor_name(&self) -> &'static str {
        match self {
            PathTerm::Atom { .. } => "atom",
            PathTerm::Rho { .. } => "rho",
            PathTerm::Sigma(_) => "sigma",
            PathTerm::Tau(_, _) => "tau",
            PathTerm::Xi1(_) => "xi1",
            PathTerm::Xi2(_) => "xi2",
            PathTerm::XiAnd(_, _) => "xiand",
            PathTerm::Xi(_) => "xi",
            PathTerm::XiPair(_, _) => "xi(2)",
            PathTerm::Mu1(_) => "mu1",
            PathTerm::Mu2(_) => "mu2",
            PathTerm::MuU(_) => "mu",
            PathTerm::MuB(_, _) => "mu(2)",
            PathTerm::MuT(_, _, _) => "mu(3)",
            PathTerm::Nu(_) => "nu",
            PathTerm::SubL(_, _) => "subl",
            PathTerm::SubR(_, _) => "subr",
            PathTerm::MuF(_, _) => "muf",
            PathTerm::MetaVar(_) => "metavar",
            PathTerm::CtxApp(_, _) => "context",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_example() -> PathTerm {
        PathTerm::tau(
            PathTerm::sigma(PathTerm::atom("a")),
            PathTerm::subl(PathTerm::rho(), PathTerm::atom("b")),
        )
    }

    #[test]
    fn subterm_and_replace_are_inverse() {
        let t = t_example();
        for pos in t.positions_preorder() {
            let sub = t.subterm_at(&pos).unwrap().clone();
            let back = t.replace_at(&pos, sub).unwrap();
            assert_eq!(back, t);
        }
    }

    #[test]
    fn replace_changes_subterm() {
        let t = t_example();
        let pos = Position(vec![0, 0]);
        let t2 = t.replace_at(&pos, PathTerm::rho()).unwrap();
        assert_eq!(*t2.subterm_at(&pos).unwrap(), PathTerm::rho());
        assert_ne!(t, t2);
    }

    #[test]
    fn bad_position_is_an_error() {
        let t = t_example();
        assert!(t.subterm_at(&Position(vec![5])).is_err());
        assert!(t.replace_at(&Position(vec![0, 0, 0]), PathTerm::rho()).is_err());
    }

    #[test]
    fn endpoints_of_typed_fragment() {
        let mut env = AtomEnv::new();
        env.insert("a".into(), ("x0".into(), "x1".into()));
        env.insert("b".into(), ("x1".into(), "x2".into()));
        let t = PathTerm::tau(PathTerm::atom("a"), PathTerm::atom("b"));
        assert_eq!(t.endpoints(&env).unwrap(), ("x0".into(), "x2".into()));
        let s = PathTerm::sigma(PathTerm::atom("a"));
        assert_eq!(s.endpoints(&env).unwrap(), ("x1".into(), "x0".into()));
        let r = PathTerm::rho_at("x0");
        assert_eq!(r.endpoints(&env).unwrap(), ("x0".into(), "x0".into()));
    }

    #[test]
    fn endpoints_mismatch_in_tau_chain() {
        let mut env = AtomEnv::new();
        env.insert("a".into(), ("x0".into(), "x1".into()));
        env.insert("b".into(), ("x2".into(), "x0".into()));
        let t = PathTerm::tau(PathTerm::atom("a"), PathTerm::atom("b"));
        assert_eq!(
            t.endpoints(&env),
            Err(TermError::EndpointMismatch {
                left_end: "x1".into(),
                right_start: "x2".into()
            })
        );
    }

    #[test]
    fn endpoints_reject_untyped_constructors() {
        let env = AtomEnv::new();
        let t = PathTerm::xi1(PathTerm::rho_at("x"));
        assert!(matches!(t.endpoints(&env), Err(TermError::NotTyped { .. })));
        assert_eq!(PathTerm::rho().endpoints(&env), Err(TermError::UnannotatedRho));
    }

    #[test]
    fn position_display_and_parse() {
        assert_eq!(Position::root().to_string(), "root");
        assert_eq!(Position(vec![0, 1, 2]).to_string(), "0.1.2");
        assert_eq!(Position::parse("root").unwrap(), Position::root());
        assert_eq!(Position::parse("").unwrap(), Position::root());
        assert_eq!(Position::parse("0.1.2").unwrap(), Position(vec![0, 1, 2]));
        assert!(Position::parse("0.x").is_err());
    }

    #[test]
    fn context_from_chain_applies_outermost_first() {
        let c = Context::from_chain(&[Unary::Sigma, Unary::Mu1]);
        let t = c.apply(PathTerm::atom("a")).unwrap();
        assert_eq!(t, PathTerm::sigma(PathTerm::mu1(PathTerm::atom("a"))));
        let triv = Context::trivial();
        assert_eq!(triv.apply(PathTerm::atom("a")).unwrap(), PathTerm::atom("a"));
    }

    #[test]
    fn erase_annotations_strips_typing() {
        let t = PathTerm::tau(
            PathTerm::typed_atom("a", "x", "y"),
            PathTerm::sigma(PathTerm::rho_at("y")),
        );
        let e = t.erase_annotations();
        assert_eq!(
            e,
            PathTerm::tau(PathTerm::atom("a"), PathTerm::sigma(PathTerm::rho()))
        );
    }
}

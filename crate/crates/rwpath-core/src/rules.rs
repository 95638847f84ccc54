//! The LND-EQ-TRS rule manifest: the 39 core rules plus the extended
//! map-label group 40..42.
//!
//! Rule identity is the number; names are display tags. Each rule stores its
//! printed schema. Rules 28..30 (the σ-commutation group) additionally match
//! the other members of their constructor family: the one-argument ξ rule
//! covers ξ, ξ₁ and ξ₂; the two-argument ξ rule covers the pair former and
//! ξ∧; the one-argument μ rule covers μ, μ₁, μ₂ and ν (and μ_f when the
//! extended group is on). Without the family reading, σ freezes over a
//! congruence head that a deeper redex can still change, and innermost and
//! outermost normalization drift apart on terms like `sigma(xi(nu(y)))`.
//! Every condition attached to a rule is realized as the structural shape of
//! its left-hand side; there is no separate condition predicate.

use crate::parse::parse_schema;
use crate::term::{FunLabel, PathTerm};
use std::collections::BTreeSet;
use std::sync::OnceLock;

/// Verbatim transcription the compiled manifest is cross-checked against.
pub const CANONICAL_RULES_TEXT: &str = include_str!("../data/canonical_rules.txt");

/// Type former a β- or η-rule belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeFormer {
    Product,
    Sum,
    Pi,
    Sigma,
}

/// Rough classification of a rule, used for report diagnostics only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleClass {
    Structural,
    Beta(TypeFormer),
    Eta(TypeFormer),
}

#[derive(Debug, Clone)]
pub struct RewriteRule {
    pub id: u8,
    pub name: &'static str,
    /// Printed schema, exactly as in the canonical list.
    pub lhs: PathTerm,
    pub rhs: PathTerm,
    /// Number of distinct context variables in the schema (0 or 1).
    pub context_slots: u8,
    /// True for the map-label group 40..42.
    pub extended: bool,
}

impl RewriteRule {
    /// All (lhs, rhs) schema pairs this rule matches with: the printed
    /// schema first, then its constructor-family siblings for rules 28..30.
    pub fn match_variants(&self, extended_enabled: bool) -> Vec<(PathTerm, PathTerm)> {
        let mut out = vec![(self.lhs.clone(), self.rhs.clone())];
        let commute = |mk: &dyn Fn(PathTerm) -> PathTerm| {
            (
                PathTerm::sigma(mk(PathTerm::var("r"))),
                mk(PathTerm::sigma(PathTerm::var("r"))),
            )
        };
        match self.id {
            28 => {
                out.push(commute(&PathTerm::xi1));
                out.push(commute(&PathTerm::xi2));
            }
            29 => {
                out.push((
                    PathTerm::sigma(PathTerm::xiand(PathTerm::var("s"), PathTerm::var("r"))),
                    PathTerm::xiand(
                        PathTerm::sigma(PathTerm::var("s")),
                        PathTerm::sigma(PathTerm::var("r")),
                    ),
                ));
            }
            30 => {
                out.push(commute(&PathTerm::mu1));
                out.push(commute(&PathTerm::mu2));
                out.push(commute(&PathTerm::nu));
                if extended_enabled {
                    out.push((
                        PathTerm::sigma(PathTerm::muf(
                            FunLabel::plain("f"),
                            PathTerm::var("r"),
                        )),
                        PathTerm::muf(
                            FunLabel::plain("f"),
                            PathTerm::sigma(PathTerm::var("r")),
                        ),
                    ));
                }
            }
            _ => {}
        }
        out
    }

    pub fn class(&self) -> RuleClass {
        match self.id {
            13..=16 => RuleClass::Beta(TypeFormer::Product),
            17 | 18 => RuleClass::Beta(TypeFormer::Sum),
            19 => RuleClass::Beta(TypeFormer::Pi),
            20 => RuleClass::Beta(TypeFormer::Sigma),
            21 => RuleClass::Eta(TypeFormer::Product),
            22 => RuleClass::Eta(TypeFormer::Sum),
            23 => RuleClass::Eta(TypeFormer::Pi),
            24 => RuleClass::Eta(TypeFormer::Sigma),
            _ => RuleClass::Structural,
        }
    }
}

fn count_ctx_slots(t: &PathTerm) -> bool {
    match t {
        PathTerm::CtxApp(_, _) => true,
        _ => t.children().iter().any(|c| count_ctx_slots(c)),
    }
}

fn rule(id: u8, name: &'static str, lhs: &str, rhs: &str) -> RewriteRule {
    let lhs = parse_schema(lhs).expect("rule lhs schema parses");
    let rhs = parse_schema(rhs).expect("rule rhs schema parses");
    let context_slots = u8::from(count_ctx_slots(&lhs));
    RewriteRule {
        id,
        name,
        lhs,
        rhs,
        context_slots,
        extended: id >= 40,
    }
}

static RULES: OnceLock<Vec<RewriteRule>> = OnceLock::new();

/// The full manifest, ids ascending: 39 core rules, then 40..42.
pub fn all_rules() -> &'static [RewriteRule] {
    RULES.get_or_init(|| {
        vec![
            rule(1, "sr", "sigma(rho)", "rho"),
            rule(2, "ss", "sigma(sigma(r))", "r"),
            rule(3, "tr", "tau(C[r],C[sigma(r)])", "C[rho]"),
            rule(4, "tsr", "tau(C[sigma(r)],C[r])", "C[rho]"),
            rule(5, "trr", "tau(C[r],C[rho])", "C[r]"),
            rule(6, "tlr", "tau(C[rho],C[r])", "C[r]"),
            rule(7, "slr", "subl(C[r],C[rho])", "C[r]"),
            rule(8, "srr", "subr(C[rho],C[r])", "C[r]"),
            rule(9, "sls", "subl(subl(s,C[r]),C[sigma(r)])", "s"),
            rule(10, "slss", "subl(subl(s,C[sigma(r)]),C[r])", "s"),
            rule(11, "srs", "subr(C[s],subr(C[sigma(s)],r))", "r"),
            rule(12, "srrr", "subr(C[sigma(s)],subr(C[s],r))", "r"),
            rule(13, "mx2l1", "mu1(xi1(r))", "r"),
            rule(14, "mx2l2", "mu1(xiand(r,s))", "r"),
            rule(15, "mx2r1", "mu2(xiand(r,s))", "s"),
            rule(16, "mx2r2", "mu2(xi2(s))", "s"),
            rule(17, "mx3l", "mu(xi1(r),s,u)", "s"),
            rule(18, "mx3r", "mu(xi2(r),s,u)", "u"),
            rule(19, "mxl", "nu(xi(r))", "r"),
            rule(20, "mxr", "mu(xi2(r),s)", "s"),
            rule(21, "mx", "xi(mu1(r),mu2(r))", "r"),
            rule(22, "mxx", "mu(t,xi1(r),xi2(s))", "t"),
            rule(23, "xmr", "xi(nu(r))", "r"),
            rule(24, "mx1r", "mu(s,xi2(r))", "s"),
            rule(25, "stss", "sigma(tau(r,s))", "tau(sigma(s),sigma(r))"),
            rule(26, "ssbl", "sigma(subl(r,s))", "subr(sigma(s),sigma(r))"),
            rule(27, "ssbr", "sigma(subr(r,s))", "subl(sigma(s),sigma(r))"),
            rule(28, "sx", "sigma(xi(r))", "xi(sigma(r))"),
            rule(29, "sxss", "sigma(xi(s,r))", "xi(sigma(s),sigma(r))"),
            rule(30, "sm", "sigma(mu(r))", "mu(sigma(r))"),
            rule(31, "smss", "sigma(mu(s,r))", "mu(sigma(s),sigma(r))"),
            rule(32, "smsss", "sigma(mu(r,u,v))", "mu(sigma(r),sigma(u),sigma(v))"),
            rule(33, "tsbll", "tau(r,subl(rho,s))", "subl(r,s)"),
            rule(34, "tsbrl", "tau(r,subr(s,rho))", "subl(r,s)"),
            rule(35, "tsblr", "tau(subl(r,s),t)", "tau(r,subr(s,t))"),
            rule(36, "tsbrr", "tau(subr(s,t),u)", "subr(s,tau(t,u))"),
            rule(37, "tt", "tau(tau(t,r),s)", "tau(t,tau(r,s))"),
            rule(38, "tts", "tau(C[u],tau(C[sigma(u)],v))", "v"),
            rule(39, "tst", "tau(C[sigma(u)],tau(C[u],v))", "v"),
            rule(40, "tf", "tau(muf(f,p),muf(f,q))", "muf(f,tau(p,q))"),
            rule(41, "cf", "muf(g,muf(f,p))", "muf(g.f,p)"),
            rule(42, "ci", "muf(id,p)", "p"),
        ]
    })
}

pub fn rule_by_id(id: u8) -> Option<&'static RewriteRule> {
    all_rules().iter().find(|r| r.id == id)
}

static VARIANTS_PLAIN: OnceLock<Vec<Vec<(PathTerm, PathTerm)>>> = OnceLock::new();
static VARIANTS_EXTENDED: OnceLock<Vec<Vec<(PathTerm, PathTerm)>>> = OnceLock::new();

/// Cached schema variants per rule (index = id - 1), so the rewrite engine
/// does not rebuild them at every position.
pub fn cached_variants(id: u8, extended_enabled: bool) -> &'static [(PathTerm, PathTerm)] {
    let cache = if extended_enabled {
        &VARIANTS_EXTENDED
    } else {
        &VARIANTS_PLAIN
    };
    let table = cache.get_or_init(|| {
        all_rules()
            .iter()
            .map(|r| r.match_variants(extended_enabled))
            .collect()
    });
    &table[(id - 1) as usize]
}

pub fn rule_by_name(name: &str) -> Option<&'static RewriteRule> {
    all_rules().iter().find(|r| r.name == name)
}

/// Which rules are active, plus the flags the toolkit exposes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    pub enabled: BTreeSet<u8>,
    pub with_38_39: bool,
    pub extended_40_42: bool,
}

impl RuleSet {
    /// The core system, rules 1..39 (38/39 on by default).
    pub fn core() -> Self {
        RuleSet {
            enabled: (1..=39).collect(),
            with_38_39: true,
            extended_40_42: false,
        }
    }

    /// The core system with rules 38 and 39 removed (the necessity experiment).
    pub fn without_38_39() -> Self {
        RuleSet {
            enabled: (1..=37).collect(),
            with_38_39: false,
            extended_40_42: false,
        }
    }

    /// Core plus the extended map-label group 40..42.
    pub fn with_extended() -> Self {
        RuleSet {
            enabled: (1..=42).collect(),
            with_38_39: true,
            extended_40_42: true,
        }
    }

    /// An arbitrary id subset (for experiments on sub-systems).
    pub fn custom<I: IntoIterator<Item = u8>>(ids: I) -> Self {
        let enabled: BTreeSet<u8> = ids.into_iter().collect();
        RuleSet {
            with_38_39: enabled.contains(&38) || enabled.contains(&39),
            extended_40_42: enabled.iter().any(|&i| i >= 40),
            enabled,
        }
    }

    pub fn is_enabled(&self, id: u8) -> bool {
        self.enabled.contains(&id)
    }

    /// Enabled rules in id order.
    pub fn rules(&self) -> impl Iterator<Item = &'static RewriteRule> + '_ {
        all_rules().iter().filter(|r| self.is_enabled(r.id))
    }
}

/// One line of the canonical transcription.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscribedRule {
    pub id: u8,
    pub name: String,
    pub lhs: PathTerm,
    pub rhs: PathTerm,
}

/// Parse the checked-in transcription.
pub fn parse_canonical_text(text: &str) -> Result<Vec<TranscribedRule>, String> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| format!("line {}: {}", lineno + 1, msg);
        let mut parts = line.splitn(3, ' ');
        let id: u8 = parts
            .next()
            .ok_or_else(|| err("missing id"))?
            .parse()
            .map_err(|_| err("bad id"))?;
        let name = parts.next().ok_or_else(|| err("missing name"))?.to_string();
        let rest = parts.next().ok_or_else(|| err("missing rule body"))?;
        let (lhs_text, rhs_text) = rest
            .split_once(" |> ")
            .ok_or_else(|| err("missing |> separator"))?;
        let lhs = parse_schema(lhs_text.trim()).map_err(|e| err(&e.to_string()))?;
        let rhs = parse_schema(rhs_text.trim()).map_err(|e| err(&e.to_string()))?;
        out.push(TranscribedRule { id, name, lhs, rhs });
    }
    Ok(out)
}

/// Cross-check the compiled manifest against the canonical transcription.
/// Returns the list of discrepancies (empty means the manifest is faithful).
pub fn verify_manifest() -> Vec<String> {
    let mut problems = Vec::new();
    let transcribed = match parse_canonical_text(CANONICAL_RULES_TEXT) {
        Ok(t) => t,
        Err(e) => return vec![format!("transcription unreadable: {e}")],
    };
    let compiled = all_rules();
    if transcribed.len() != compiled.len() {
        problems.push(format!(
            "rule count mismatch: transcription has {}, manifest has {}",
            transcribed.len(),
            compiled.len()
        ));
    }
    let core: Vec<_> = compiled.iter().filter(|r| !r.extended).collect();
    if core.len() != 39 {
        problems.push(format!("core manifest must have exactly 39 rules, found {}", core.len()));
    }
    for (i, r) in core.iter().enumerate() {
        if r.id != (i + 1) as u8 {
            problems.push(format!("core ids must be 1..39 in order; slot {} holds id {}", i, r.id));
        }
    }
    for t in &transcribed {
        match rule_by_id(t.id) {
            None => problems.push(format!("rule {} missing from manifest", t.id)),
            Some(r) => {
                if r.name != t.name {
                    problems.push(format!("rule {}: name {} vs transcription {}", t.id, r.name, t.name));
                }
                if r.lhs != t.lhs {
                    problems.push(format!("rule {}: lhs {} vs transcription {}", t.id, r.lhs, t.lhs));
                }
                if r.rhs != t.rhs {
                    problems.push(format!("rule {}: rhs {} vs transcription {}", t.id, r.rhs, t.rhs));
                }
                if r.extended != (t.id >= 40) {
                    problems.push(format!("rule {}: extended flag misassigned", t.id));
                }
            }
        }
    }
    problems
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_matches_transcription() {
        let problems = verify_manifest();
        assert!(problems.is_empty(), "manifest discrepancies: {problems:#?}");
    }

    #[test]
    fn exactly_39_core_rules_and_3_extended() {
        assert_eq!(all_rules().iter().filter(|r| !r.extended).count(), 39);
        assert_eq!(all_rules().iter().filter(|r| r.extended).count(), 3);
    }

    #[test]
    fn rule_names_are_unique() {
        let mut names: Vec<_> = all_rules().iter().map(|r| r.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), all_rules().len());
    }

    #[test]
    fn context_slots_counted() {
        assert_eq!(rule_by_id(3).unwrap().context_slots, 1);
        assert_eq!(rule_by_id(25).unwrap().context_slots, 0);
        assert_eq!(rule_by_id(38).unwrap().context_slots, 1);
    }

    #[test]
    fn rulesets_enable_the_right_ids() {
        let core = RuleSet::core();
        assert!(core.is_enabled(39) && !core.is_enabled(40));
        assert!(core.with_38_39 && !core.extended_40_42);
        let no3839 = RuleSet::without_38_39();
        assert!(no3839.is_enabled(37) && !no3839.is_enabled(38) && !no3839.is_enabled(39));
        let ext = RuleSet::with_extended();
        assert!(ext.is_enabled(42) && ext.extended_40_42);
    }

    #[test]
    fn family_variants_cover_the_commutation_groups() {
        let sx = rule_by_id(28).unwrap().match_variants(false);
        assert_eq!(sx.len(), 3); // xi, xi1, xi2
        let sxss = rule_by_id(29).unwrap().match_variants(false);
        assert_eq!(sxss.len(), 2); // pair former, xiand
        let sm = rule_by_id(30).unwrap().match_variants(false);
        assert_eq!(sm.len(), 4); // mu, mu1, mu2, nu
        let sm_ext = rule_by_id(30).unwrap().match_variants(true);
        assert_eq!(sm_ext.len(), 5); // plus muf
        let plain = rule_by_id(37).unwrap().match_variants(true);
        assert_eq!(plain.len(), 1);
    }

    #[test]
    fn beta_eta_classification() {
        assert_eq!(rule_by_id(13).unwrap().class(), RuleClass::Beta(TypeFormer::Product));
        assert_eq!(rule_by_id(19).unwrap().class(), RuleClass::Beta(TypeFormer::Pi));
        assert_eq!(rule_by_id(21).unwrap().class(), RuleClass::Eta(TypeFormer::Product));
        assert_eq!(rule_by_id(24).unwrap().class(), RuleClass::Eta(TypeFormer::Sigma));
        assert_eq!(rule_by_id(37).unwrap().class(), RuleClass::Structural);
    }
}

//! Local moves on diagrams: a registry of named monomial moves, site
//! matching and application, and bounded equivalence search.
//!
//! Gauss-level rules act on signed Gauss diagrams. Planar-level rules act on
//! planar diagrams and are matched on faces of the induced map. Reidemeister
//! moves exist at both levels, with encodings that keep a planar diagram
//! planar. The crossing change is valid at both levels.

mod gauss_rules;
mod invariants;
mod planar_rules;
mod search;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::diagrams::{GaussDiagram, PlanarDiagram};
use crate::error::{Error, Result};

pub use invariants::Invariant;
pub use search::{
    decide_quotient, equivalent_mod, equivalent_mod_with, preserved_invariants, separating_invariant, unknot_search,
    Bounds, Certificate, PathStep, Quotient, QuotientVerdict, SearchOptions, SearchOutcome, SearchStats, Verdict,
};

/// A diagram at either level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Diagram {
    Gauss(GaussDiagram),
    Planar(PlanarDiagram),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Gauss,
    Planar,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Gauss => "gauss",
            Level::Planar => "planar",
        }
    }
}

impl Diagram {
    pub fn level(&self) -> Level {
        match self {
            Diagram::Gauss(_) => Level::Gauss,
            Diagram::Planar(_) => Level::Planar,
        }
    }

    pub fn gauss(&self) -> &GaussDiagram {
        match self {
            Diagram::Gauss(g) => g,
            Diagram::Planar(p) => p.gauss(),
        }
    }

    pub fn num_crossings(&self) -> usize {
        self.gauss().num_arrows()
    }

    pub fn num_components(&self) -> usize {
        self.gauss().num_circles()
    }

    pub fn canonical_key(&self) -> String {
        self.gauss().canonical_key()
    }

    /// The crossingless unlink with `k` components at this level.
    pub fn unlink_like(&self, k: usize) -> Diagram {
        match self {
            Diagram::Gauss(_) => Diagram::Gauss(GaussDiagram::unlink(k)),
            Diagram::Planar(_) => Diagram::Planar(PlanarDiagram::unlink(k)),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Diagram::Gauss(g) => g.render(),
            Diagram::Planar(p) => p.render(),
        }
    }
}

impl From<GaussDiagram> for Diagram {
    fn from(g: GaussDiagram) -> Self {
        Diagram::Gauss(g)
    }
}

impl From<PlanarDiagram> for Diagram {
    fn from(p: PlanarDiagram) -> Self {
        Diagram::Planar(p)
    }
}

/// Where a rule applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleLevel {
    Gauss,
    Planar,
    Both,
}

impl RuleLevel {
    pub fn accepts(self, l: Level) -> bool {
        matches!((self, l), (RuleLevel::Both, _) | (RuleLevel::Gauss, Level::Gauss) | (RuleLevel::Planar, Level::Planar))
    }
}

#[derive(Clone, Debug)]
pub struct MoveRule {
    pub name: &'static str,
    pub level: RuleLevel,
    /// Both the move and its inverse are available under this name (or, for
    /// `r1+`/`r1-`, under the partner rule, which every search includes).
    pub reversible: bool,
    pub reidemeister: bool,
    /// Change in crossing count as `(min, max)`.
    pub crossing_delta: (i32, i32),
    pub preserves: &'static [Invariant],
    pub description: &'static str,
}

impl MoveRule {
    pub fn preserves(&self, inv: Invariant) -> bool {
        self.reidemeister || self.preserves.contains(&inv)
    }
}

use Invariant as I;

const LK_ALL: &[Invariant] = &[I::LinkingMatrix, I::LinkingSymmetric, I::Wriggles, I::LinkingMod2];

static RULES: &[MoveRule] = &[
    MoveRule {
        name: "r1+",
        level: RuleLevel::Both,
        reversible: true,
        reidemeister: true,
        crossing_delta: (1, 1),
        preserves: &[],
        description: "insert a kink",
    },
    MoveRule {
        name: "r1-",
        level: RuleLevel::Both,
        reversible: true,
        reidemeister: true,
        crossing_delta: (-1, -1),
        preserves: &[],
        description: "remove a kink",
    },
    MoveRule {
        name: "r2",
        level: RuleLevel::Both,
        reversible: true,
        reidemeister: true,
        crossing_delta: (-2, 2),
        preserves: &[],
        description: "create or cancel a pair of opposite crossings",
    },
    MoveRule {
        name: "r3",
        level: RuleLevel::Both,
        reversible: true,
        reidemeister: true,
        crossing_delta: (0, 0),
        preserves: &[],
        description: "slide a strand across a crossing",
    },
    MoveRule {
        name: "cc",
        level: RuleLevel::Both,
        reversible: true,
        reidemeister: false,
        crossing_delta: (0, 0),
        preserves: &[I::Wriggles],
        description: "crossing change: swap head and tail, negate the sign",
    },
    MoveRule {
        name: "vc",
        level: RuleLevel::Gauss,
        reversible: true,
        reidemeister: false,
        crossing_delta: (0, 0),
        preserves: &[I::LinkingSymmetric, I::Jones],
        description: "virtualization: swap head and tail, keep the sign",
    },
    MoveRule {
        name: "fo",
        level: RuleLevel::Gauss,
        reversible: true,
        reidemeister: false,
        crossing_delta: (0, 0),
        preserves: LK_ALL,
        description: "forbidden overpass: exchange two adjacent tails",
    },
    MoveRule {
        name: "fu",
        level: RuleLevel::Gauss,
        reversible: true,
        reidemeister: false,
        crossing_delta: (0, 0),
        preserves: LK_ALL,
        description: "forbidden underpass: exchange two adjacent heads",
    },
    MoveRule {
        name: "fm",
        level: RuleLevel::Gauss,
        reversible: true,
        reidemeister: false,
        crossing_delta: (0, 0),
        preserves: LK_ALL,
        description: "mixed forbidden move: exchange an adjacent head and tail",
    },
    MoveRule {
        name: "xi",
        level: RuleLevel::Gauss,
        reversible: true,
        reidemeister: false,
        crossing_delta: (0, 0),
        preserves: &[I::OddWrithe, I::LinkingMatrix, I::LinkingSymmetric, I::Wriggles, I::LinkingMod2],
        description: "reverse three consecutive endpoints of distinct arrows",
    },
    MoveRule {
        name: "s1",
        level: RuleLevel::Gauss,
        reversible: true,
        reidemeister: false,
        crossing_delta: (0, 0),
        preserves: &[
            I::IndexPolynomial,
            I::OddWrithe,
            I::LinkingMatrix,
            I::LinkingSymmetric,
            I::Wriggles,
            I::LinkingMod2,
        ],
        description: "exchange two nested arrows: a b .. b' a' to b a .. a' b'",
    },
    MoveRule {
        name: "s2",
        level: RuleLevel::Gauss,
        reversible: true,
        reidemeister: false,
        crossing_delta: (0, 0),
        preserves: &[
            I::IndexPolynomial,
            I::OddWrithe,
            I::LinkingMatrix,
            I::LinkingSymmetric,
            I::Wriggles,
            I::LinkingMod2,
        ],
        description: "slide a shell (an arrow with adjacent endpoints) past one endpoint",
    },
    MoveRule {
        name: "wbp",
        level: RuleLevel::Gauss,
        reversible: true,
        reidemeister: false,
        crossing_delta: (0, 0),
        preserves: &[I::LinkingMod2],
        description: "welded band pass: change all four crossings of an antiparallel grid",
    },
    MoveRule {
        name: "delta",
        level: RuleLevel::Planar,
        reversible: true,
        reidemeister: false,
        crossing_delta: (0, 0),
        preserves: LK_ALL,
        description: "push a strand across the crossing of a cyclic triangle",
    },
    MoveRule {
        name: "pass",
        level: RuleLevel::Planar,
        reversible: true,
        reidemeister: false,
        crossing_delta: (0, 0),
        preserves: &[I::Arf],
        description: "pass one antiparallel band through another",
    },
    MoveRule {
        name: "sharp",
        level: RuleLevel::Planar,
        reversible: true,
        reidemeister: false,
        crossing_delta: (0, 0),
        preserves: &[],
        description: "change all four crossings of a woven square",
    },
];

pub fn builtin_moves() -> &'static [MoveRule] {
    RULES
}

pub fn rule(name: &str) -> Result<&'static MoveRule> {
    RULES.iter().find(|r| r.name == name).ok_or_else(|| Error::UnknownMove(name.to_string()))
}

pub fn reidemeister_rules() -> Vec<&'static MoveRule> {
    RULES.iter().filter(|r| r.reidemeister).collect()
}

/// Parses a comma-separated list of rule names; empty entries are ignored.
pub fn parse_rule_list(text: &str) -> Result<Vec<&'static MoveRule>> {
    let mut out: Vec<&'static MoveRule> = Vec::new();
    for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let r = rule(name)?;
        if !out.iter().any(|x| x.name == r.name) {
            out.push(r);
        }
    }
    Ok(out)
}

/// An occurrence of a rule's pattern. `anchor` is rule-specific position
/// data; `source` is the text of the diagram the site was matched in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoveSite {
    pub rule: String,
    pub anchor: Vec<usize>,
    pub source: String,
}

fn level_check(d: &Diagram, r: &MoveRule) -> Result<()> {
    if r.level.accepts(d.level()) {
        Ok(())
    } else {
        Err(Error::LevelMismatch { rule: r.name.to_string(), found: d.level().name() })
    }
}

/// Every site of `rule` in `d`, in a deterministic order.
pub fn find_sites(d: &Diagram, rule: &MoveRule) -> Result<Vec<MoveSite>> {
    level_check(d, rule)?;
    let anchors = match d {
        Diagram::Gauss(g) => gauss_rules::sites(g, rule.name, usize::MAX),
        Diagram::Planar(p) => planar_rules::sites(p, rule.name, usize::MAX),
    };
    let source = d.render();
    Ok(anchors.into_iter().map(|anchor| MoveSite { rule: rule.name.to_string(), anchor, source: source.clone() }).collect())
}

pub fn apply_move(d: &Diagram, site: &MoveSite) -> Result<Diagram> {
    let r = rule(&site.rule)?;
    level_check(d, r)?;
    if d.render() != site.source {
        return Err(Error::StaleSite(format!("site was matched in `{}`", site.source)));
    }
    apply_anchor(d, r.name, &site.anchor)
        .ok_or_else(|| Error::StaleSite(format!("`{}` does not match at {:?}", r.name, site.anchor)))
}

/// Applies without the source check; `None` if the anchor does not match.
pub(crate) fn apply_anchor(d: &Diagram, rule: &str, anchor: &[usize]) -> Option<Diagram> {
    match d {
        Diagram::Gauss(g) => gauss_rules::apply(g, rule, anchor).map(Diagram::Gauss),
        Diagram::Planar(p) => planar_rules::apply(p, rule, anchor).map(Diagram::Planar),
    }
}

/// One application of a rule, with the resulting diagram.
#[derive(Clone, Debug)]
pub struct Step {
    pub rule: &'static str,
    pub anchor: Vec<usize>,
    pub result: Diagram,
}

/// Every single application of the given rules, in rule and site order,
/// keeping results with at most `crossing_cap` crossings.
pub(crate) fn raw_steps(d: &Diagram, rules: &[&'static MoveRule], crossing_cap: usize) -> Vec<Step> {
    let mut out = Vec::new();
    for r in rules {
        if !r.level.accepts(d.level()) {
            continue;
        }
        let anchors = match d {
            Diagram::Gauss(g) => gauss_rules::sites(g, r.name, crossing_cap),
            Diagram::Planar(p) => planar_rules::sites(p, r.name, crossing_cap),
        };
        for anchor in anchors {
            let result = match d {
                Diagram::Gauss(g) => gauss_rules::apply_unchecked(g, r.name, &anchor).map(Diagram::Gauss),
                Diagram::Planar(p) => planar_rules::apply_unchecked(p, r.name, &anchor).map(Diagram::Planar),
            };
            if let Some(result) = result {
                if result.num_crossings() <= crossing_cap {
                    out.push(Step { rule: r.name, anchor, result });
                }
            }
        }
    }
    out
}

/// All single applications of the given rules and the Reidemeister moves,
/// keeping results with at most `crossing_cap` crossings, deduplicated by
/// canonical key (the first occurrence in rule order wins).
pub fn neighbor_steps(d: &Diagram, rules: &[&'static MoveRule], crossing_cap: usize) -> Vec<(String, Step)> {
    let mut all: Vec<&'static MoveRule> = reidemeister_rules();
    for r in rules {
        if !all.iter().any(|x| x.name == r.name) {
            all.push(r);
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for step in raw_steps(d, &all, crossing_cap) {
        let key = step.result.canonical_key();
        if seen.insert(key.clone()) {
            out.push((key, step));
        }
    }
    out
}

pub fn neighbors(d: &Diagram, rules: &[&'static MoveRule], crossing_cap: usize) -> Vec<Diagram> {
    neighbor_steps(d, rules, crossing_cap).into_iter().map(|(_, s)| s.result).collect()
}

#[cfg(test)]
mod tests;

//! Bounded bidirectional search for equivalence modulo a move set, and exact
//! decisions for the quotients with a known complete invariant.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{neighbor_steps, raw_steps, reidemeister_rules, Diagram, Invariant, MoveRule};
use crate::error::{Error, Result};
use crate::vinv;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Defaults to the larger input crossing count plus two.
    pub crossing_cap: Option<usize>,
    pub node_cap: usize,
    pub depth_cap: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { crossing_cap: None, node_cap: 100_000, depth_cap: 16 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub bounds: Bounds,
    /// Compare registered invariants before searching.
    pub invariant_check: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { bounds: Bounds::default(), invariant_check: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equivalent,
    Distinguished,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathStep {
    pub rule: String,
    pub anchor: Vec<usize>,
    /// Canonical key of the diagram after this step.
    pub key: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub invariant: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes_expanded: usize,
    pub nodes_seen: usize,
    pub max_frontier: usize,
    pub depth_reached: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub path: Vec<PathStep>,
    pub certificate: Option<Certificate>,
    pub stats: SearchStats,
}

impl SearchOutcome {
    fn new(verdict: Verdict, stats: SearchStats) -> Self {
        SearchOutcome { verdict, path: Vec::new(), certificate: None, stats }
    }

    pub fn verdict_line(&self) -> String {
        match (&self.verdict, &self.certificate) {
            (Verdict::Equivalent, _) => "EQUIVALENT".to_string(),
            (Verdict::Distinguished, Some(c)) => format!("DISTINGUISHED({})", c.invariant),
            (Verdict::Distinguished, None) => "DISTINGUISHED".to_string(),
            (Verdict::Unknown, _) => "UNKNOWN".to_string(),
        }
    }
}

/// Invariants preserved by every rule in the set (Reidemeister moves
/// preserve all of them).
pub fn preserved_invariants(rules: &[&MoveRule]) -> Vec<Invariant> {
    Invariant::ALL.iter().copied().filter(|&i| rules.iter().all(|r| r.preserves(i))).collect()
}

/// First preserved invariant taking different values on the two diagrams.
pub fn separating_invariant(d1: &Diagram, d2: &Diagram, rules: &[&MoveRule]) -> Option<Certificate> {
    for inv in preserved_invariants(rules) {
        if let (Some(a), Some(b)) = (inv.evaluate(d1), inv.evaluate(d2)) {
            if a != b {
                return Some(Certificate { invariant: inv.name().to_string(), left: a, right: b });
            }
        }
    }
    None
}

fn check_levels(d1: &Diagram, d2: &Diagram, rules: &[&'static MoveRule]) -> Result<()> {
    if d1.level() != d2.level() {
        return Err(Error::BadInput(format!(
            "cannot compare a {} diagram with a {} diagram",
            d1.level().name(),
            d2.level().name()
        )));
    }
    for r in rules {
        if !r.level.accepts(d1.level()) {
            return Err(Error::LevelMismatch { rule: r.name.to_string(), found: d1.level().name() });
        }
    }
    Ok(())
}

pub fn equivalent_mod(d1: &Diagram, d2: &Diagram, rules: &[&'static MoveRule], bounds: Bounds) -> Result<SearchOutcome> {
    equivalent_mod_with(d1, d2, rules, SearchOptions { bounds, invariant_check: true })
}

struct Node {
    parent: Option<String>,
    rule: Option<&'static str>,
    rep: Diagram,
}

struct Side {
    nodes: HashMap<String, Node>,
    frontier: Vec<String>,
    depth: usize,
}

impl Side {
    fn new(d: &Diagram, key: String) -> Self {
        let mut nodes = HashMap::new();
        nodes.insert(key.clone(), Node { parent: None, rule: None, rep: d.clone() });
        Side { nodes, frontier: vec![key], depth: 0 }
    }

    /// Keys from the start to `key`, inclusive.
    fn chain(&self, key: &str) -> Vec<String> {
        let mut out = vec![key.to_string()];
        let mut cur = key.to_string();
        while let Some(p) = &self.nodes[&cur].parent {
            out.push(p.clone());
            cur = p.clone();
        }
        out.reverse();
        out
    }
}

pub fn equivalent_mod_with(
    d1: &Diagram,
    d2: &Diagram,
    rules: &[&'static MoveRule],
    opts: SearchOptions,
) -> Result<SearchOutcome> {
    check_levels(d1, d2, rules)?;
    let mut stats = SearchStats::default();
    if d1.num_components() != d2.num_components() {
        let mut out = SearchOutcome::new(Verdict::Distinguished, stats);
        out.certificate = Some(Certificate {
            invariant: "components".into(),
            left: d1.num_components().to_string(),
            right: d2.num_components().to_string(),
        });
        return Ok(out);
    }
    let mut all_rules = reidemeister_rules();
    for r in rules {
        if !all_rules.iter().any(|x| x.name == r.name) {
            all_rules.push(r);
        }
    }
    let (k1, k2) = (d1.canonical_key(), d2.canonical_key());
    if k1 == k2 {
        stats.nodes_seen = 1;
        return Ok(SearchOutcome::new(Verdict::Equivalent, stats));
    }
    if opts.invariant_check {
        if let Some(c) = separating_invariant(d1, d2, &all_rules) {
            let mut out = SearchOutcome::new(Verdict::Distinguished, stats);
            out.certificate = Some(c);
            return Ok(out);
        }
    }
    let cap = opts.bounds.crossing_cap.unwrap_or(d1.num_crossings().max(d2.num_crossings()) + 2);

    // the side with the smaller start key is side 0, so the search does not
    // depend on argument order
    let swapped = k2 < k1;
    let (da, ka, db, kb) = if swapped { (d2, k2, d1, k1) } else { (d1, k1, d2, k2) };
    let mut sides = [Side::new(da, ka), Side::new(db, kb)];
    stats.nodes_seen = 2;
    let mut meet: Option<String> = None;
    'outer: loop {
        if sides[0].depth + sides[1].depth >= opts.bounds.depth_cap {
            break;
        }
        let s = if sides[1].frontier.len() < sides[0].frontier.len() { 1 } else { 0 };
        if sides[s].frontier.is_empty() {
            break;
        }
        let frontier = std::mem::take(&mut sides[s].frontier);
        let depth = sides[s].depth + 1;
        let mut next = Vec::new();
        for key in frontier {
            let rep = sides[s].nodes[&key].rep.clone();
            stats.nodes_expanded += 1;
            for (nk, step) in neighbor_steps(&rep, &all_rules, cap) {
                if sides[s].nodes.contains_key(&nk) {
                    continue;
                }
                sides[s].nodes.insert(
                    nk.clone(),
                    Node { parent: Some(key.clone()), rule: Some(step.rule), rep: step.result },
                );
                stats.nodes_seen += 1;
                if sides[1 - s].nodes.contains_key(&nk) {
                    meet = Some(nk);
                    sides[s].depth = depth;
                    break 'outer;
                }
                next.push(nk);
                if stats.nodes_seen >= opts.bounds.node_cap {
                    sides[s].depth = depth;
                    break 'outer;
                }
            }
        }
        stats.max_frontier = stats.max_frontier.max(next.len());
        sides[s].frontier = next;
        sides[s].depth = depth;
    }
    stats.depth_reached = sides[0].depth + sides[1].depth;
    let Some(m) = meet else {
        return Ok(SearchOutcome::new(Verdict::Unknown, stats));
    };

    // path: along the first argument's side to the meeting point, then back
    // along the other side, re-finding each step on the concrete diagram
    let (from, to) = if swapped { (1, 0) } else { (0, 1) };
    let mut path = Vec::new();
    let forward = sides[from].chain(&m);
    let mut cur = sides[from].nodes[&forward[0]].rep.clone();
    for w in forward.windows(2) {
        let target = &sides[from].nodes[&w[1]];
        let (rule, anchor, result) = find_step(&cur, &all_rules, &w[1], target.rule, target.rep.num_crossings())?;
        path.push(PathStep { rule: rule.to_string(), anchor, key: w[1].clone() });
        cur = result;
    }
    let backward = sides[to].chain(&m);
    for w in backward.windows(2).rev() {
        let (child, parent) = (&w[1], &w[0]);
        let hint = sides[to].nodes[child].rule;
        let n = sides[to].nodes[parent].rep.num_crossings();
        let (rule, anchor, result) = find_step(&cur, &all_rules, parent, hint, n)?;
        path.push(PathStep { rule: rule.to_string(), anchor, key: parent.clone() });
        cur = result;
    }
    let mut out = SearchOutcome::new(Verdict::Equivalent, stats);
    out.path = path;
    Ok(out)
}

/// A single application on `cur` reaching canonical key `target`.
fn find_step(
    cur: &Diagram,
    rules: &[&'static MoveRule],
    target: &str,
    hint: Option<&'static str>,
    target_crossings: usize,
) -> Result<(&'static str, Vec<usize>, Diagram)> {
    let mut ordered: Vec<&'static MoveRule> = rules.iter().copied().filter(|r| Some(r.name) == hint).collect();
    ordered.extend(rules.iter().copied().filter(|r| Some(r.name) != hint));
    for step in raw_steps(cur, &ordered, target_crossings) {
        if step.result.canonical_key() == target {
            return Ok((step.rule, step.anchor, step.result));
        }
    }
    Err(Error::BadInput(format!("no single move reaches {target}")))
}

pub fn unknot_search(d: &Diagram, rules: &[&'static MoveRule], bounds: Bounds) -> Result<SearchOutcome> {
    d.gauss().require_knot()?;
    equivalent_mod(d, &d.unlink_like(1), rules, bounds)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quotient {
    Xi,
    Shell,
    Fused,
}

impl Quotient {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "xi" => Ok(Quotient::Xi),
            "shell" => Ok(Quotient::Shell),
            "fused" => Ok(Quotient::Fused),
            _ => Err(Error::BadInput(format!("unknown quotient `{s}`"))),
        }
    }

    /// The moves generating the quotient.
    pub fn rules(self) -> Vec<&'static MoveRule> {
        let names: &[&str] = match self {
            Quotient::Xi => &["xi"],
            Quotient::Shell => &["s1", "s2"],
            Quotient::Fused => &["fo", "fu"],
        };
        names.iter().map(|n| super::rule(n).expect("builtin rule")).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientVerdict {
    Equivalent,
    Inequivalent,
}

/// Compares the complete invariant of the quotient: the odd writhe for
/// `xi`, the index polynomial for `shell`, the linking matrix for `fused`
/// (up to relabeling of the components, as diagrams are compared by
/// canonical key).
pub fn decide_quotient(d1: &Diagram, d2: &Diagram, q: Quotient) -> Result<QuotientVerdict> {
    let (g1, g2) = (d1.gauss(), d2.gauss());
    let same = match q {
        Quotient::Xi | Quotient::Shell => {
            if !g1.is_knot() || !g2.is_knot() {
                return Err(Error::BadInput(format!("`{q:?}` compares knots").to_lowercase()));
            }
            if q == Quotient::Xi {
                vinv::odd_writhe(g1)? == vinv::odd_writhe(g2)?
            } else {
                vinv::index_polynomial(g1)? == vinv::index_polynomial(g2)?
            }
        }
        Quotient::Fused => {
            if g1.num_circles() != g2.num_circles() {
                return Err(Error::BadInput("fused equivalence compares links with equally many components".into()));
            }
            let canon = |g| vinv::linking_matrix(g).unlabeled(|m| m.lk.clone());
            canon(g1) == canon(g2)
        }
    };
    Ok(if same { QuotientVerdict::Equivalent } else { QuotientVerdict::Inequivalent })
}

//! Seeded property suites behind `check` and the acceptance target.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::moves::{
    apply_move, builtin_moves, decide_quotient, equivalent_mod_with, find_sites, reidemeister_rules, rule,
    separating_invariant, Bounds, Diagram, Invariant, Level, MoveRule, MoveSite, Quotient, QuotientVerdict,
    SearchOptions, Verdict,
};
use crate::poly::{LaurentPoly, Var};
use crate::random::{self, DiagramRng};
use crate::skein;

/// Failures kept per property for the report.
const KEEP_FAILURES: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct Property {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    pub failures: Vec<String>,
}

impl Property {
    fn new(name: impl Into<String>) -> Self {
        Property { name: name.into(), passed: 0, total: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < KEEP_FAILURES {
            self.failures.push(detail());
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub properties: Vec<Property>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.properties.iter().all(Property::ok)
    }
}

pub const SUITES: [&str; 4] = ["skein", "rmoves", "preservation", "quotients"];

/// Runs a suite by name with its default sizes; `all` runs every suite.
pub fn run(name: &str, seed: u64) -> Result<Vec<SuiteReport>> {
    match name {
        "skein" => Ok(vec![skein(seed, 200)]),
        "rmoves" => Ok(vec![rmoves(seed, 500)]),
        "preservation" => Ok(vec![preservation(seed, 500)]),
        "quotients" => Ok(vec![quotients(seed, 100)]),
        "all" => SUITES.iter().map(|s| run(s, seed).map(|mut v| v.remove(0))).collect(),
        _ => Err(Error::BadInput(format!("unknown suite `{name}`"))),
    }
}

/// The Conway, HOMFLY-PT and bracket relations at every crossing of
/// `diagrams` random classical diagrams with at most 8 crossings.
pub fn skein(seed: u64, diagrams: usize) -> SuiteReport {
    let mut rng = random::rng(seed);
    let mut conway = Property::new("conway: C(L+) - C(L-) = z C(L0)");
    let mut homfly = Property::new("homfly: l P(L+) + l^-1 P(L-) = m P(L0)");
    let mut bracket = Property::new("bracket: <L> = a <L_A> + a^-1 <L_B>");
    let mut ev = skein::SkeinEvaluator::new(0);
    let (z, l, m, a) = (LaurentPoly::var(Var::Z), LaurentPoly::var(Var::L), LaurentPoly::var(Var::M), LaurentPoly::var(Var::A));
    let (l_inv, a_inv) = (LaurentPoly::var_pow(Var::L, -1), LaurentPoly::var_pow(Var::A, -1));
    for _ in 0..diagrams {
        let d = random::random_classical(&mut rng, 8);
        for c in 0..d.num_crossings() {
            let t = skein::skein_triple(&d, c).expect("crossing in range");
            let (cp, cn, c0) = (ev.conway(&t.positive), ev.conway(&t.negative), ev.conway(&t.smoothed));
            conway.check(cp - cn == &z * &c0, || format!("{} at {c}", d.render()));
            let (hp, hn, h0) = (ev.homfly(&t.positive), ev.homfly(&t.negative), ev.homfly(&t.smoothed));
            homfly.check(&l * &hp + &l_inv * &hn == &m * &h0, || format!("{} at {c}", d.render()));
            let b = skein::bracket_pair(&d, c).expect("crossing in range");
            let lhs = skein::kauffman_bracket(&d);
            let rhs = &a * &skein::kauffman_bracket(&b.a_smoothing) + &a_inv * &skein::kauffman_bracket(&b.b_smoothing);
            bracket.check(lhs == rhs, || format!("{} at {c}", d.render()));
        }
    }
    SuiteReport { suite: "skein".into(), seed, properties: vec![conway, homfly, bracket] }
}

/// Source of fresh diagrams for a random walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Classical,
    ClassicalKnots,
    VirtualKnots,
    VirtualLinks,
}

impl Family {
    pub fn fresh(self, rng: &mut DiagramRng) -> Diagram {
        match self {
            Family::Classical => Diagram::Planar(random::random_classical(rng, 6)),
            Family::ClassicalKnots => Diagram::Planar(random::random_classical_knot(rng, 6)),
            Family::VirtualKnots => Diagram::Gauss(random::random_virtual_knot(rng, 5)),
            Family::VirtualLinks => Diagram::Gauss(random::random_virtual_link(rng, 3, 5)),
        }
    }
}

/// Families a rule is exercised on.
pub fn families_for(r: &MoveRule) -> Vec<Family> {
    let mut out = Vec::new();
    if r.level.accepts(Level::Planar) {
        out.push(Family::Classical);
    }
    if r.level.accepts(Level::Gauss) {
        out.push(Family::VirtualKnots);
        out.push(Family::VirtualLinks);
    }
    out
}

const WALK_CROSSINGS: usize = 9;
const WALK_RESTART: usize = 12;

/// Calls `visit(before, site, after)` for `count` random applications of
/// `r` on diagrams reached by random walks. The walk starts from fresh
/// diagrams of the given families and moves by random Reidemeister moves
/// whenever `r` has no site. Returns the number of applications made.
pub fn random_applications(
    rng: &mut DiagramRng,
    r: &'static MoveRule,
    families: &[Family],
    count: usize,
    mut visit: impl FnMut(&Diagram, &MoveSite, &Diagram),
) -> usize {
    let r_moves = reidemeister_rules();
    let mut applied = 0;
    let mut steps = 0;
    let mut budget = 400 * count.max(1);
    let mut cur = families.choose(rng).expect("a family").fresh(rng);
    while applied < count && budget > 0 {
        budget -= 1;
        if steps >= WALK_RESTART {
            cur = families.choose(rng).expect("a family").fresh(rng);
            steps = 0;
        }
        steps += 1;
        let sites = find_sites(&cur, r).unwrap_or_default();
        if let Some(site) = sites.choose(rng) {
            let next = apply_move(&cur, site).expect("found site applies");
            visit(&cur, site, &next);
            applied += 1;
            if next.num_crossings() <= WALK_CROSSINGS {
                cur = next;
            } else {
                steps = WALK_RESTART;
            }
            continue;
        }
        // wander: a random Reidemeister move within the crossing bound
        let mut rs: Vec<&'static MoveRule> = r_moves.iter().copied().filter(|m| m.level.accepts(cur.level())).collect();
        rs.shuffle(rng);
        let mut moved = false;
        for m in rs {
            let sites = find_sites(&cur, m).unwrap_or_default();
            if let Some(site) = sites.choose(rng) {
                if let Ok(next) = apply_move(&cur, site) {
                    if next.num_crossings() <= WALK_CROSSINGS {
                        cur = next;
                        moved = true;
                        break;
                    }
                }
            }
        }
        if !moved {
            steps = WALK_RESTART;
        }
    }
    applied
}

fn compare_invariants(props: &mut [(Invariant, Property)], before: &Diagram, site: &MoveSite, after: &Diagram) {
    for (inv, p) in props.iter_mut() {
        let (x, y) = (inv.evaluate(before), inv.evaluate(after));
        if x.is_none() && y.is_none() {
            continue;
        }
        p.check(x == y, || format!("{} {:?} on {}: {:?} -> {:?}", site.rule, site.anchor, before.render(), x, y));
    }
}

/// `count` random Reidemeister moves on classical diagrams and as many on
/// virtual diagrams; every invariant must be unchanged.
pub fn rmoves(seed: u64, count: usize) -> SuiteReport {
    let mut rng = random::rng(seed);
    let mut props: Vec<(Invariant, Property)> =
        Invariant::ALL.iter().map(|&i| (i, Property::new(format!("r-moves keep {}", i.name())))).collect();
    let mut applications = Property::new("applications made");
    let rs = reidemeister_rules();
    for fams in [&[Family::Classical][..], &[Family::VirtualKnots, Family::VirtualLinks][..]] {
        let mut made = 0;
        for (i, &r) in rs.iter().enumerate() {
            let share = count / rs.len() + usize::from(i < count % rs.len());
            made += random_applications(&mut rng, r, fams, share, |b, s, a| compare_invariants(&mut props, b, s, a));
        }
        applications.check(made == count, || format!("{made} of {count} on {:?}", fams));
    }
    let mut properties = vec![applications];
    properties.extend(props.into_iter().map(|(_, p)| p));
    SuiteReport { suite: "rmoves".into(), seed, properties }
}

/// Registered preservation claims of one rule, checked on `count` random
/// applications.
pub fn preservation_of(rng: &mut DiagramRng, r: &'static MoveRule, count: usize) -> Vec<Property> {
    let mut props: Vec<(Invariant, Property)> = Invariant::ALL
        .iter()
        .filter(|&&i| r.preserves(i))
        .map(|&i| (i, Property::new(format!("{} keeps {}", r.name, i.name()))))
        .collect();
    let made = random_applications(rng, r, &families_for(r), count, |b, s, a| compare_invariants(&mut props, b, s, a));
    let mut applications = Property::new(format!("{} applications made", r.name));
    applications.check(made == count, || format!("{made} of {count}"));
    let mut out = vec![applications];
    out.extend(props.into_iter().map(|(_, p)| p));
    out
}

/// Every registered (rule, invariant) claim on `count` applications each.
pub fn preservation(seed: u64, count: usize) -> SuiteReport {
    let mut rng = random::rng(seed);
    let mut properties = Vec::new();
    for r in builtin_moves() {
        properties.extend(preservation_of(&mut rng, r, count));
    }
    SuiteReport { suite: "preservation".into(), seed, properties }
}

fn small_bounds(d1: &Diagram, d2: &Diagram) -> Bounds {
    Bounds { crossing_cap: Some(d1.num_crossings().max(d2.num_crossings()) + 2), node_cap: 600, depth_cap: 6 }
}

/// Walks `d` through up to `steps` random applications of `rules`.
fn scramble(rng: &mut DiagramRng, d: &Diagram, rules: &[&'static MoveRule], steps: usize) -> Diagram {
    let mut cur = d.clone();
    for _ in 0..steps {
        let mut sites = Vec::new();
        for r in rules {
            sites.extend(find_sites(&cur, r).unwrap_or_default());
        }
        let Some(site) = sites.choose(rng) else { break };
        let next = apply_move(&cur, site).expect("found site applies");
        if next.num_crossings() > WALK_CROSSINGS {
            break;
        }
        cur = next;
    }
    cur
}

fn quotient_family(q: Quotient, rng: &mut DiagramRng) -> Diagram {
    match q {
        Quotient::Xi | Quotient::Shell => Family::VirtualKnots.fresh(rng),
        Quotient::Fused => {
            let n = rng.gen_range(1..=4);
            Diagram::Gauss(random::random_gauss(rng, 2, n))
        }
    }
}

/// `decide_quotient` against the bounded search, on `pairs` pairs per
/// quotient: half scrambled copies, half independent diagrams.
pub fn quotients(seed: u64, pairs: usize) -> SuiteReport {
    let mut rng = random::rng(seed);
    let mut properties = Vec::new();
    for q in [Quotient::Xi, Quotient::Shell, Quotient::Fused] {
        let name = format!("{q:?}").to_lowercase();
        let rules = q.rules();
        let mut invariance = Property::new(format!("{name}: scrambled copies decide equivalent"));
        let mut consistent = Property::new(format!("{name}: search never contradicts decide_quotient"));
        for i in 0..pairs {
            let d1 = quotient_family(q, &mut rng);
            let d2 = if i % 2 == 0 { scramble(&mut rng, &d1, &rules, 5) } else { quotient_family(q, &mut rng) };
            let decided = decide_quotient(&d1, &d2, q).expect("matching shapes");
            if i % 2 == 0 {
                invariance.check(decided == QuotientVerdict::Equivalent, || format!("{} vs {}", d1.render(), d2.render()));
            }
            let opts = SearchOptions { bounds: small_bounds(&d1, &d2), invariant_check: false };
            let found = equivalent_mod_with(&d1, &d2, &rules, opts).expect("gauss level");
            consistent.check(found.verdict != Verdict::Equivalent || decided == QuotientVerdict::Equivalent, || {
                format!("{} vs {}", d1.render(), d2.render())
            });
        }
        properties.push(invariance);
        properties.push(consistent);
    }
    SuiteReport { suite: "quotients".into(), seed, properties }
}

/// Quotient whose complete invariant every rule in `rules` preserves.
fn implied_quotients(rules: &[&MoveRule]) -> Vec<Quotient> {
    let pairs = [
        (Quotient::Xi, Invariant::OddWrithe),
        (Quotient::Shell, Invariant::IndexPolynomial),
        (Quotient::Fused, Invariant::LinkingMatrix),
    ];
    pairs.iter().filter(|(_, inv)| rules.iter().all(|r| r.preserves(*inv))).map(|&(q, _)| q).collect()
}

/// Search soundness on `pairs` random pairs and rule sets: whenever the
/// search (with its invariant pre-check disabled) answers Equivalent, no
/// preserved invariant and no implied quotient separates the pair.
pub fn soundness(seed: u64, pairs: usize) -> SuiteReport {
    let mut rng = random::rng(seed);
    let gauss_rules: Vec<&'static MoveRule> =
        builtin_moves().iter().filter(|r| r.level.accepts(Level::Gauss) && !r.reidemeister).collect();
    let planar_rules: Vec<&'static MoveRule> =
        builtin_moves().iter().filter(|r| r.level.accepts(Level::Planar) && !r.reidemeister).collect();
    let mut sound = Property::new("equivalent pairs agree on preserved invariants and quotients");
    let mut equivalents = Property::new("some pairs found equivalent");
    let mut found = 0;
    for i in 0..pairs {
        let planar = i % 4 == 3;
        let pool = if planar { &planar_rules } else { &gauss_rules };
        let k = rng.gen_range(0..=2);
        let rules: Vec<&'static MoveRule> = pool.choose_multiple(&mut rng, k).copied().collect();
        let d1 = if planar {
            Family::Classical.fresh(&mut rng)
        } else if rng.gen_bool(0.5) {
            Family::VirtualKnots.fresh(&mut rng)
        } else {
            Family::VirtualLinks.fresh(&mut rng)
        };
        let mut walk = rules.clone();
        walk.extend(reidemeister_rules().into_iter().filter(|r| r.level.accepts(d1.level())));
        let d2 = if rng.gen_bool(0.6) { scramble(&mut rng, &d1, &walk, 3) } else { Family::Classical.fresh(&mut rng) };
        let d2 = match (&d1, d2) {
            (Diagram::Gauss(_), Diagram::Planar(p)) => Diagram::Gauss(p.to_gauss()),
            (_, d) => d,
        };
        let opts = SearchOptions { bounds: small_bounds(&d1, &d2), invariant_check: false };
        let Ok(out) = equivalent_mod_with(&d1, &d2, &rules, opts) else { continue };
        if out.verdict != Verdict::Equivalent {
            continue;
        }
        found += 1;
        let sep = separating_invariant(&d1, &d2, &rules);
        let mut quotient_ok = true;
        for q in implied_quotients(&rules) {
            if let Ok(v) = decide_quotient(&d1, &d2, q) {
                quotient_ok &= v == QuotientVerdict::Equivalent;
            }
        }
        let names: Vec<&str> = rules.iter().map(|r| r.name).collect();
        sound.check(sep.is_none() && quotient_ok, || {
            format!("{:?}: {} vs {} separated by {:?}", names, d1.render(), d2.render(), sep.map(|c| c.invariant))
        });
    }
    equivalents.check(found > 0, || "no pair was found equivalent".into());
    SuiteReport { suite: "soundness".into(), seed, properties: vec![sound, equivalents] }
}

/// Looks up a builtin rule by name; panics on typos in suite code.
pub fn builtin(name: &str) -> &'static MoveRule {
    rule(name).expect("builtin rule")
}

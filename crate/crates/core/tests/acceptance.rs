//! Acceptance criteria, one line each. Exits nonzero if any fails.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use knotskein::moves::{
    self, apply_move, unknot_search, Bounds, Diagram, Invariant, MoveSite, SearchOutcome, Verdict,
};
use knotskein::random::{self, DiagramRng};
use knotskein::suites::{self, Family, SuiteReport};
use knotskein::{skein, table, vinv, GaussDiagram, LaurentPoly, PlanarDiagram};

const SEED: u64 = 0;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn suite_outcome(r: &SuiteReport) -> Outcome {
    let parts: Vec<String> = r
        .properties
        .iter()
        .map(|p| {
            let mut s = format!("{} {}/{}", p.name, p.passed, p.total);
            if let Some(f) = p.failures.first() {
                s.push_str(&format!(" (first failure: {f})"));
            }
            s
        })
        .collect();
    outcome(r.ok(), parts.join("; "))
}

fn poly(s: &str) -> LaurentPoly {
    LaurentPoly::parse(s).expect("literal polynomial")
}

fn gauss(s: &str) -> GaussDiagram {
    GaussDiagram::parse(s).expect("literal code")
}

fn planar(s: &str) -> PlanarDiagram {
    PlanarDiagram::realize(&gauss(s)).expect("classical code")
}

fn skein_conformance() -> Outcome {
    let start = Instant::now();
    let report = suites::skein(SEED, 200);
    let elapsed = start.elapsed();
    let mut o = suite_outcome(&report);
    o.ok &= elapsed < Duration::from_secs(120);
    o.detail = format!("200 diagrams in {:.1?}; {}", elapsed, o.detail);
    o
}

fn normalizations() -> Outcome {
    let unlink2 = PlanarDiagram::unlink(2);
    let checks = [
        ("jones(unknot) = 1", skein::jones(&PlanarDiagram::unknot()) == LaurentPoly::one()),
        ("conway(2-unlink) = 0", skein::conway(&unlink2).is_zero()),
        ("homfly(2-unlink) = (l+l^-1)m^-1", skein::homfly(&unlink2) == poly("l m^-1 + l^-1 m^-1")),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    outcome(failed.is_empty(), if failed.is_empty() { "all three hold".into() } else { format!("failed: {failed:?}") })
}

fn specialization() -> Outcome {
    let mut homfly = skein::SkeinEvaluator::new(0);
    let mut conway = skein::SkeinEvaluator::new(0);
    // the specializations depend only on P, so they are shared between
    // diagrams with equal HOMFLY-PT polynomials
    let mut images: HashMap<LaurentPoly, (LaurentPoly, LaurentPoly)> = HashMap::new();
    let (mut total, mut bad) = (0usize, Vec::new());
    let start = Instant::now();
    table::for_each_classical(7, |g| {
        total += 1;
        let p = PlanarDiagram::realize(&g).expect("table diagrams are classical");
        let h = homfly.homfly(&p);
        let (c, j) = images
            .entry(h.clone())
            .or_insert_with(|| {
                (
                    skein::homfly_to_conway(&h).expect("conway specialization"),
                    skein::homfly_to_jones(&h).expect("jones specialization"),
                )
            })
            .clone();
        if c != conway.conway(&p) || j != skein::jones(&p) {
            if bad.len() < 3 {
                bad.push(g.render());
            }
        }
    });
    let ok = bad.is_empty() && total > 0;
    outcome(
        ok,
        format!(
            "{total} classical diagrams with at most 7 crossings, {} distinct HOMFLY-PT polynomials, {:.1?}{}",
            images.len(),
            start.elapsed(),
            if ok { String::new() } else { format!("; mismatches: {bad:?}") }
        ),
    )
}

fn reidemeister() -> Outcome {
    let report = suites::rmoves(SEED, 500);
    suite_outcome(&report)
}

/// `count` applications of `rule` on diagrams of `family`, each compared on
/// `inv`; the invariant must be defined on both sides.
fn directed(rng: &mut DiagramRng, rule: &str, family: Family, inv: Invariant, count: usize) -> (usize, usize) {
    let mut violations = 0;
    let made = suites::random_applications(rng, suites::builtin(rule), &[family], count, |b, _, a| {
        let (x, y) = (inv.evaluate(b), inv.evaluate(a));
        if x.is_none() || x != y {
            violations += 1;
        }
    });
    (made, violations)
}

fn theorem_directions() -> Outcome {
    let mut rng = random::rng(SEED);
    let cases = [
        ("xi", Family::VirtualKnots, Invariant::OddWrithe),
        ("s1", Family::VirtualKnots, Invariant::IndexPolynomial),
        ("s2", Family::VirtualKnots, Invariant::IndexPolynomial),
        ("fo", Family::VirtualLinks, Invariant::LinkingMatrix),
        ("fu", Family::VirtualLinks, Invariant::LinkingMatrix),
        ("pass", Family::ClassicalKnots, Invariant::Arf),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (rule, family, inv) in cases {
        let (made, violations) = directed(&mut rng, rule, family, inv, 500);
        ok &= made == 500 && violations == 0;
        parts.push(format!("{rule} keeps {}: {made} applications, {violations} violations", inv.name()));
    }
    outcome(ok, parts.join("; "))
}

fn replays(start: &Diagram, out: &SearchOutcome) -> bool {
    let mut cur = start.clone();
    for step in &out.path {
        let site = MoveSite { rule: step.rule.clone(), anchor: step.anchor.clone(), source: cur.render() };
        match apply_move(&cur, &site) {
            Ok(next) if next.canonical_key() == step.key => cur = next,
            _ => return false,
        }
    }
    cur.canonical_key() == cur.unlink_like(1).canonical_key()
}

fn unknotting() -> Outcome {
    let trefoil = Diagram::Planar(planar("O1+U2+O3+U1+O2+U3+"));
    let vtrefoil = Diagram::Gauss(gauss("O1+U2+U1+O2+"));
    let cases = [("trefoil", &trefoil, "cc"), ("trefoil", &trefoil, "delta"), ("vtrefoil", &vtrefoil, "fm"), ("vtrefoil", &vtrefoil, "fo,fu")];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, d, rules) in cases {
        let rs = moves::parse_rule_list(rules).expect("builtin rules");
        let start = Instant::now();
        let out = unknot_search(d, &rs, Bounds::default()).expect("search runs");
        let elapsed = start.elapsed();
        let good = out.verdict == Verdict::Equivalent && elapsed < Duration::from_secs(60) && replays(d, &out);
        ok &= good;
        parts.push(format!("{name} under {{{rules}}}: {} in {} steps, {:.1?}", out.verdict_line(), out.path.len(), elapsed));
    }
    outcome(ok, parts.join("; "))
}

fn classicality() -> Outcome {
    let (mut total, mut bad) = (0usize, Vec::new());
    let start = Instant::now();
    table::for_each_classical(8, |g| {
        total += 1;
        let j = vinv::odd_writhe(&g).expect("knot");
        let w = vinv::index_polynomial(&g).expect("knot");
        if j != 0 || !w.is_zero() {
            if bad.len() < 3 {
                bad.push(g.render());
            }
        }
    });
    let jv = vinv::odd_writhe(&gauss("O1+U2+U1+O2+")).expect("knot");
    let ok = bad.is_empty() && jv == 2;
    outcome(
        ok,
        format!(
            "J = W = 0 on {total} realizable diagrams with at most 8 arrows ({:.1?}){}; J(virtual trefoil) = {jv}",
            start.elapsed(),
            if bad.is_empty() { String::new() } else { format!(", violations: {bad:?}") }
        ),
    )
}

fn additivity() -> Outcome {
    let mut rng = random::rng(SEED);
    let mut classical: Vec<GaussDiagram> =
        vec![gauss("O1+U2+O3+U1+O2+U3+"), gauss("O1-U2-O3-U1-O2-U3-"), gauss("O1-U2+O3+U1-O4-U3+O2+U4-")];
    while classical.len() < 10 {
        classical.push(random::random_classical_knot(&mut rng, 7).to_gauss());
    }
    let mut virtuals: Vec<GaussDiagram> = vec![gauss("O1+U2+U1+O2+"), gauss("O1-U2-U1-O2-")];
    while virtuals.len() < 10 {
        virtuals.push(random::random_virtual_knot(&mut rng, 5));
    }
    let arf = |g: &GaussDiagram| skein::arf(&PlanarDiagram::realize(g).expect("classical")).expect("knot");
    let (mut pairs, mut bad) = (0, Vec::new());
    for k1 in &classical {
        for k2 in &classical {
            pairs += 1;
            let sum = k1.connected_sum(k2).expect("knots");
            if arf(&sum) != (arf(k1) + arf(k2)) % 2 {
                bad.push(format!("arf {} # {}", k1.render(), k2.render()));
            }
        }
    }
    for k1 in &virtuals {
        for k2 in &virtuals {
            pairs += 1;
            let sum = k1.connected_sum(k2).expect("knots");
            let j = |g: &GaussDiagram| vinv::odd_writhe(g).expect("knot");
            if j(&sum) != j(k1) + j(k2) {
                bad.push(format!("J {} # {}", k1.render(), k2.render()));
            }
        }
    }
    let ok = bad.is_empty();
    outcome(
        ok,
        format!(
            "{pairs} ordered pairs (arf on 10 classical knots, J on 10 virtual knots){}",
            if ok { String::new() } else { format!("; failures: {:?}", &bad[..bad.len().min(3)]) }
        ),
    )
}

fn soundness() -> Outcome {
    let mut o = suite_outcome(&suites::soundness(SEED, 1000));
    o.detail = format!("1000 random pairs and rule sets; {}", o.detail);
    o
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("skein conformance", skein_conformance),
        ("normalizations", normalizations),
        ("specialization oracle", specialization),
        ("reidemeister invariance", reidemeister),
        ("theorem invariance directions", theorem_directions),
        ("unknotting searches", unknotting),
        ("classicality vanishing", classicality),
        ("additivity", additivity),
        ("search soundness", soundness),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.ok {
            failed += 1;
        }
        println!("criterion {}: {} {name}: {}", i + 1, if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

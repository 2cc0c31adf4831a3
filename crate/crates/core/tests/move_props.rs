use knotskein::moves::{self, apply_move, equivalent_mod, find_sites, Bounds, Diagram, Verdict};
use knotskein::random::{self, DiagramRng};
use knotskein::suites;
use proptest::prelude::*;
use rand::Rng;

const SMALL: Bounds = Bounds { crossing_cap: None, node_cap: 400, depth_cap: 4 };

/// A few random moves from `rules` applied to `d`.
fn scramble(rng: &mut DiagramRng, d: &Diagram, rules: &[&'static moves::MoveRule], steps: usize) -> Diagram {
    let mut cur = d.clone();
    for _ in 0..steps {
        let rule = rules[rng.gen_range(0..rules.len())];
        let Ok(sites) = find_sites(&cur, rule) else { continue };
        if sites.is_empty() {
            continue;
        }
        let site = &sites[rng.gen_range(0..sites.len())];
        if let Ok(next) = apply_move(&cur, site) {
            if next.num_crossings() <= 8 {
                cur = next;
            }
        }
    }
    cur
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn verdict_is_symmetric(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let rules = moves::parse_rule_list("cc").unwrap();
        let d1 = Diagram::Gauss(random::random_virtual_knot(&mut rng, 3));
        let d2 = if rng.gen_bool(0.5) {
            scramble(&mut rng, &d1, &moves::reidemeister_rules(), 2)
        } else {
            Diagram::Gauss(random::random_virtual_knot(&mut rng, 3))
        };
        let a = equivalent_mod(&d1, &d2, &rules, SMALL).unwrap();
        let b = equivalent_mod(&d2, &d1, &rules, SMALL).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn found_paths_replay(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let rules = moves::parse_rule_list("r1+,r1-,r2").unwrap();
        let d1 = Diagram::Gauss(random::random_virtual_knot(&mut rng, 3));
        let d2 = scramble(&mut rng, &d1, &rules, 2);
        let out = equivalent_mod(&d1, &d2, &rules, Bounds { crossing_cap: None, node_cap: 5000, depth_cap: 6 }).unwrap();
        prop_assert_eq!(out.verdict, Verdict::Equivalent);
        let mut cur = d1.clone();
        for step in &out.path {
            let site = moves::MoveSite { rule: step.rule.clone(), anchor: step.anchor.clone(), source: cur.render() };
            cur = apply_move(&cur, &site).unwrap();
            prop_assert_eq!(cur.canonical_key(), step.key.clone());
        }
        prop_assert_eq!(cur.canonical_key(), d2.canonical_key());
    }
}

#[test]
fn small_suites_hold() {
    for report in [suites::quotients(1, 30), suites::soundness(1, 60)] {
        for p in &report.properties {
            assert!(p.ok(), "{} {}: {}/{} {:?}", report.suite, p.name, p.passed, p.total, p.failures.first());
        }
    }
}

#[test]
fn registry_preservation_holds() {
    let mut rng = random::rng(2);
    for rule in moves::builtin_moves() {
        for p in suites::preservation_of(&mut rng, suites::builtin(&rule.name), 40) {
            assert!(p.ok(), "{}: {}/{} {:?}", p.name, p.passed, p.total, p.failures.first());
        }
    }
}

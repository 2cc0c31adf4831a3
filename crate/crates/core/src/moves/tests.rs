use super::*;
use crate::skein;
use crate::vinv;
use crate::diagrams::is_realizable;

fn gd(s: &str) -> Diagram {
    Diagram::Gauss(GaussDiagram::parse(s).unwrap())
}

fn pd(s: &str) -> Diagram {
    Diagram::Planar(PlanarDiagram::realize(&GaussDiagram::parse(s).unwrap()).unwrap())
}

const TREFOIL: &str = "O1+U2+O3+U1+O2+U3+";
const VTREFOIL: &str = "O1+U2+U1+O2+";

fn rules(names: &str) -> Vec<&'static MoveRule> {
    parse_rule_list(names).unwrap()
}

#[test]
fn registry_entries() {
    let cc = rule("cc").unwrap();
    assert!(!cc.preserves(Invariant::Jones));
    assert!(rule("xi").unwrap().preserves(Invariant::OddWrithe));
    assert!(rule("fo").unwrap().preserves(Invariant::LinkingMatrix));
    assert!(rule("fu").unwrap().preserves(Invariant::LinkingMatrix));
    for name in ["r1+", "r1-", "r2", "r3", "cc", "vc", "fo", "fu", "fm", "xi", "s1", "s2", "delta", "pass", "sharp", "wbp"] {
        assert!(rule(name).is_ok(), "{name}");
    }
    assert!(matches!(rule("bogus"), Err(Error::UnknownMove(_))));
}

#[test]
fn site_examples() {
    assert!(find_sites(&pd(""), rule("r1-").unwrap()).unwrap().is_empty());
    assert_eq!(find_sites(&pd(TREFOIL), rule("cc").unwrap()).unwrap().len(), 3);
    assert_eq!(find_sites(&gd(TREFOIL), rule("cc").unwrap()).unwrap().len(), 3);
    assert!(!find_sites(&gd(VTREFOIL), rule("fo").unwrap()).unwrap().is_empty());
    assert!(matches!(
        find_sites(&pd(TREFOIL), rule("fo").unwrap()),
        Err(Error::LevelMismatch { .. })
    ));
    assert!(matches!(
        find_sites(&gd(TREFOIL), rule("delta").unwrap()),
        Err(Error::LevelMismatch { .. })
    ));
}

#[test]
fn kink_round_trip() {
    for d in [pd(""), gd(""), pd(TREFOIL), gd(VTREFOIL)] {
        let key = d.canonical_key();
        for site in find_sites(&d, rule("r1+").unwrap()).unwrap() {
            let up = apply_move(&d, &site).unwrap();
            assert_eq!(up.num_crossings(), d.num_crossings() + 1);
            let back = find_sites(&up, rule("r1-").unwrap())
                .unwrap()
                .into_iter()
                .any(|s| apply_move(&up, &s).unwrap().canonical_key() == key);
            assert!(back);
        }
    }
}

#[test]
fn stale_site() {
    let d = pd(TREFOIL);
    let site = find_sites(&d, rule("cc").unwrap()).unwrap().remove(0);
    let other = apply_move(&d, &site).unwrap();
    assert!(matches!(apply_move(&other, &site), Err(Error::StaleSite(_))));
}

#[test]
fn unknot_neighbors() {
    let n = neighbors(&gd(""), &[], 3);
    let keys: Vec<String> = n.iter().map(|d| d.canonical_key()).collect();
    assert!(keys.contains(&"O1+U1+".to_string()));
    assert!(keys.contains(&"O1-U1-".to_string()));
    let mut sorted = keys.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), keys.len());
    assert!(n.iter().all(|d| d.num_crossings() <= 3));
}

#[test]
fn vc_everywhere_keeps_crossings() {
    let d = gd(TREFOIL);
    let mut g = d.gauss().clone();
    for a in 0..g.num_arrows() {
        g = g.reverse_arrow(a);
    }
    assert_eq!(g.num_arrows(), 3);
    assert_eq!(vinv::linking_matrix(&g), vinv::linking_matrix(d.gauss()));
}

#[test]
fn planar_moves_keep_jones() {
    let d = pd(TREFOIL);
    let j = skein::jones(match &d {
        Diagram::Planar(p) => p,
        _ => unreachable!(),
    });
    for (_, step) in neighbor_steps(&d, &[], 5) {
        let Diagram::Planar(p) = &step.result else { panic!() };
        assert_eq!(skein::jones(p), j, "{} {:?}", step.rule, step.anchor);
    }
}

#[test]
fn gauss_r3_on_classical_keeps_jones() {
    // classical diagrams with triangles, reached from the trefoil by r2
    let mut found = 0;
    for (_, step) in neighbor_steps(&pd(TREFOIL), &rules("r2"), 5) {
        let g = step.result.gauss().clone();
        let d = Diagram::Gauss(g.clone());
        for site in find_sites(&d, rule("r3").unwrap()).unwrap() {
            let h = apply_move(&d, &site).unwrap();
            assert!(is_realizable(h.gauss()));
            assert_eq!(skein::jones_of_gauss(h.gauss()), skein::jones_of_gauss(&g));
            found += 1;
        }
    }
    assert!(found > 0);
}

#[test]
fn searches() {
    let b = Bounds::default();
    let out = equivalent_mod(&pd(TREFOIL), &pd(""), &rules("cc"), b).unwrap();
    assert_eq!(out.verdict, Verdict::Equivalent);
    let out = equivalent_mod(&pd(TREFOIL), &pd(""), &[], b).unwrap();
    assert_eq!(out.verdict, Verdict::Distinguished);
    assert_eq!(out.certificate.unwrap().invariant, "jones");
    let out = equivalent_mod(&gd(VTREFOIL), &gd(""), &rules("fo,fu"), b).unwrap();
    assert_eq!(out.verdict, Verdict::Equivalent);
    let out = unknot_search(&pd(TREFOIL), &rules("delta"), b).unwrap();
    assert_eq!(out.verdict, Verdict::Equivalent, "{:?}", out.stats);
    let out = unknot_search(&pd(""), &[], b).unwrap();
    assert_eq!(out.verdict, Verdict::Equivalent);
    assert!(out.path.is_empty());
}

#[test]
fn path_replays() {
    let b = Bounds::default();
    let (d1, d2) = (gd(VTREFOIL), gd(""));
    for rs in ["fm", "fo,fu"] {
        let out = equivalent_mod(&d1, &d2, &rules(rs), b).unwrap();
        assert_eq!(out.verdict, Verdict::Equivalent);
        let mut cur = d1.clone();
        for step in &out.path {
            let site = MoveSite { rule: step.rule.clone(), anchor: step.anchor.clone(), source: cur.render() };
            cur = apply_move(&cur, &site).unwrap();
            assert_eq!(cur.canonical_key(), step.key);
        }
        assert_eq!(cur.canonical_key(), d2.canonical_key());
    }
}

#[test]
fn quotient_examples() {
    assert_eq!(decide_quotient(&gd(VTREFOIL), &gd(""), Quotient::Xi).unwrap(), QuotientVerdict::Inequivalent);
    assert_eq!(
        decide_quotient(&gd(TREFOIL), &gd("O1-U2+O3+U1-O4-U3+O2+U4-"), Quotient::Shell).unwrap(),
        QuotientVerdict::Equivalent
    );
    assert!(decide_quotient(&gd("O1+U2+ / U1+O2+"), &gd(""), Quotient::Xi).is_err());
}

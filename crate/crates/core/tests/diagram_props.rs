use knotskein::diagrams::PlanarMap;
use knotskein::random;
use knotskein::{table, GaussDiagram, PlanarDiagram};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn gauss_render_parse(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let g = random::random_virtual_link(&mut rng, 3, 6);
        let text = g.canonical_form().render();
        prop_assert_eq!(GaussDiagram::parse(&text).unwrap().render(), text);
        prop_assert_eq!(GaussDiagram::parse(&g.render()).unwrap().canonical_key(), g.canonical_key());
    }

    #[test]
    fn pd_render_parse(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let p = random::random_classical(&mut rng, 8);
        let once = PlanarDiagram::parse(&p.render()).unwrap();
        let text = once.render();
        prop_assert_eq!(PlanarDiagram::parse(&text).unwrap().render(), text.clone());
        prop_assert_eq!(once.num_crossings(), p.num_crossings());
        prop_assert_eq!(once.num_components(), p.num_components());
        if p.num_components() == 1 {
            prop_assert_eq!(once.canonical_key(), p.canonical_key());
        }
        // parsed diagrams pass the Euler check
        prop_assert!(PlanarMap::new(once.gauss()).is_planar(once.gauss()));
    }

    #[test]
    fn mirror_is_an_involution(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let g = random::random_virtual_link(&mut rng, 2, 6);
        prop_assert_eq!(g.mirror().mirror().canonical_key(), g.canonical_key());
        let p = random::random_classical(&mut rng, 7);
        prop_assert_eq!(p.mirror().mirror().canonical_key(), p.canonical_key());
    }
}

fn realize_round_trip(max_arrows: usize) {
    let mut n = 0;
    table::for_each_classical(max_arrows, |g| {
        n += 1;
        let p = PlanarDiagram::realize(&g).unwrap();
        let back = p.to_gauss();
        assert_eq!(back.num_arrows(), g.num_arrows());
        assert_eq!(back.num_circles(), g.num_circles());
        assert_eq!(back.writhe(), g.writhe());
        assert_eq!(back.canonical_key(), g.canonical_key(), "{}", g.render());
    });
    assert!(n > 0);
}

#[test]
fn realize_round_trip_on_table() {
    realize_round_trip(6);
}

/// The whole table up to 8 arrows; takes minutes, run with `--ignored`.
#[test]
#[ignore]
fn realize_round_trip_on_full_table() {
    realize_round_trip(8);
}

#[test]
fn realizable_full_table_round_trips() {
    let mut classical = 0;
    table::for_each_diagram(4, |g| {
        if PlanarDiagram::is_realizable(&g) {
            classical += 1;
            let p = PlanarDiagram::realize(&g).unwrap();
            assert_eq!(p.to_gauss().canonical_key(), g.canonical_key());
        }
    });
    assert!(classical > 0);
}

use knotskein::poly::{LaurentPoly, Var};
use knotskein::random;
use knotskein::{skein, table, vinv, PlanarDiagram};
use proptest::prelude::*;

fn invert_a(p: &LaurentPoly) -> LaurentPoly {
    p.substitute(&[(Var::A, LaurentPoly::var_pow(Var::A, -1))]).unwrap()
}

#[test]
fn jones_of_mirror_on_table() {
    table::for_each_classical(5, |g| {
        let p = PlanarDiagram::realize(&g).unwrap();
        assert_eq!(skein::jones(&p.mirror()), invert_a(&skein::jones(&p)), "{}", g.render());
    });
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn connected_sum_multiplies(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let k1 = random::random_classical_knot(&mut rng, 5);
        let k2 = random::random_classical_knot(&mut rng, 5);
        let sum = PlanarDiagram::realize(&k1.to_gauss().connected_sum(&k2.to_gauss()).unwrap()).unwrap();
        prop_assert_eq!(skein::conway(&sum), skein::conway(&k1) * skein::conway(&k2));
        prop_assert_eq!(skein::jones(&sum), skein::jones(&k1) * skein::jones(&k2));
        let arf = |d: &PlanarDiagram| skein::arf(d).unwrap();
        prop_assert_eq!(arf(&sum), (arf(&k1) + arf(&k2)) % 2);
    }

    #[test]
    fn seeds_do_not_change_results(seed in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let mut rng = random::rng(seed);
        let d = random::random_classical(&mut rng, 6);
        prop_assert_eq!(skein::conway_seeded(&d, s1), skein::conway_seeded(&d, s2));
        prop_assert_eq!(skein::homfly_seeded(&d, s1), skein::homfly_seeded(&d, s2));
    }

    #[test]
    fn odd_writhe_reads_off_the_index_polynomial(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let k = random::random_virtual_knot(&mut rng, 7);
        let w = vinv::index_polynomial(&k).unwrap();
        let odd: i64 = w
            .terms()
            .filter(|(e, _)| e[Var::T.index()] % 2 != 0)
            .map(|(_, c)| i64::try_from(c.clone()).unwrap())
            .sum();
        prop_assert_eq!(odd, vinv::odd_writhe(&k).unwrap());
        prop_assert_eq!(w.eval_at_unit(Var::T, 1), 0.into());
    }

    #[test]
    fn fast_index_matches_smoothing(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let k = random::random_virtual_knot(&mut rng, 7);
        for c in 0..k.num_arrows() {
            prop_assert_eq!(vinv::gaussian_index(&k, c).unwrap(), vinv::gaussian_index_by_smoothing(&k, c).unwrap());
        }
    }

    #[test]
    fn odd_writhe_adds(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let k1 = random::random_virtual_knot(&mut rng, 5);
        let k2 = random::random_virtual_knot(&mut rng, 5);
        let sum = k1.connected_sum(&k2).unwrap();
        let j = |g| vinv::odd_writhe(g).unwrap();
        prop_assert_eq!(j(&sum), j(&k1) + j(&k2));
    }

    #[test]
    fn wriggle_is_antisymmetric(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let l = random::random_virtual_link(&mut rng, 3, 7);
        for i in 0..l.num_circles() {
            for j in 0..l.num_circles() {
                if i != j {
                    prop_assert_eq!(vinv::wriggle_number(&l, i, j).unwrap(), -vinv::wriggle_number(&l, j, i).unwrap());
                }
            }
        }
    }

    #[test]
    fn classical_linking_is_symmetric(word in prop::collection::vec(prop_oneof![-2i32..=-1, 1i32..=2], 1..9)) {
        let l = random::braid_closure(3, &word);
        let m = vinv::linking_matrix(&l);
        for i in 0..m.size() {
            for j in 0..m.size() {
                prop_assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
    }
}

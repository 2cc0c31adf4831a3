//! Skein invariants of classical links: Kauffman bracket, Jones, Conway,
//! HOMFLY-PT and Arf.
//!
//! Conway and HOMFLY-PT are computed by the descending-diagram algorithm.
//! Walking the components in order from their basepoints, the first crossing
//! met as an under-pass is switched, and the smoothing there is evaluated
//! recursively. A diagram with no such crossing is a split unlink.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagrams::{End, GaussDiagram, PlanarDiagram};
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Var};

/// `(L+, L-, L0)` at one crossing.
#[derive(Clone, Debug)]
pub struct SkeinTriple {
    pub positive: PlanarDiagram,
    pub negative: PlanarDiagram,
    pub smoothed: PlanarDiagram,
}

/// The two unoriented resolutions of a crossing.
#[derive(Clone, Debug)]
pub struct BracketPair {
    pub a_smoothing: PlanarDiagram,
    pub b_smoothing: PlanarDiagram,
}

pub fn skein_triple(d: &PlanarDiagram, c: usize) -> Result<SkeinTriple> {
    d.check_crossing(c)?;
    let (positive, negative) = if d.sign(c) > 0 { (d.clone(), d.switch(c)?) } else { (d.switch(c)?, d.clone()) };
    Ok(SkeinTriple { positive, negative, smoothed: d.smooth_oriented(c)? })
}

/// The A-smoothing is the oriented one at a positive crossing and the
/// unoriented one at a negative crossing.
pub fn bracket_pair(d: &PlanarDiagram, c: usize) -> Result<BracketPair> {
    d.check_crossing(c)?;
    let oriented = d.smooth_oriented(c)?;
    let unoriented = d.smooth_unoriented(c)?;
    Ok(if d.sign(c) > 0 {
        BracketPair { a_smoothing: oriented, b_smoothing: unoriented }
    } else {
        BracketPair { a_smoothing: unoriented, b_smoothing: oriented }
    })
}

fn loop_value() -> LaurentPoly {
    -(LaurentPoly::var_pow(Var::A, 2) + LaurentPoly::var_pow(Var::A, -2))
}

pub fn kauffman_bracket(d: &PlanarDiagram) -> LaurentPoly {
    bracket_of_gauss(d.gauss())
}

/// State sum over all resolutions. Loops are counted with a union-find over
/// half-edges: `2i` enters endpoint `i`, `2i + 1` leaves it.
pub(crate) fn bracket_of_gauss(g: &GaussDiagram) -> LaurentPoly {
    let n = g.num_arrows();
    let free = g.circles().iter().filter(|c| c.is_empty()).count();
    let mut offsets = Vec::new();
    let mut edges = Vec::new();
    let mut total = 0;
    for c in g.circles() {
        offsets.push(total);
        for k in 0..c.len() {
            edges.push((2 * (total + k) + 1, 2 * (total + (k + 1) % c.len())));
        }
        total += c.len();
    }
    let mut ends = vec![[0usize; 2]; n];
    for (ci, c) in g.circles().iter().enumerate() {
        for (k, e) in c.iter().enumerate() {
            ends[e.arrow][e.head as usize] = offsets[ci] + k;
        }
    }
    // for each crossing: the pairing of the A-smoothing, then of the B-smoothing
    let pairings: Vec<[[(usize, usize); 2]; 2]> = ends
        .iter()
        .enumerate()
        .map(|(a, &[t, h])| {
            let oriented = [(2 * h, 2 * t + 1), (2 * t, 2 * h + 1)];
            let unoriented = [(2 * h, 2 * t), (2 * h + 1, 2 * t + 1)];
            if g.sign(a) > 0 {
                [oriented, unoriented]
            } else {
                [unoriented, oriented]
            }
        })
        .collect();
    let nd = 2 * total;
    let mut counts: HashMap<(i32, usize), u64> = HashMap::new();
    let mut parent = vec![0usize; nd];
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for state in 0u64..(1u64 << n) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut comps = nd;
        let mut union = |p: &mut Vec<usize>, x: usize, y: usize| {
            let (rx, ry) = (find(p, x), find(p, y));
            if rx != ry {
                p[rx] = ry;
                comps -= 1;
            }
        };
        for &(x, y) in &edges {
            union(&mut parent, x, y);
        }
        let mut a_minus_b = 0i32;
        for (c, pair) in pairings.iter().enumerate() {
            let b = (state >> c) & 1 == 1;
            a_minus_b += if b { -1 } else { 1 };
            for &(x, y) in &pair[b as usize] {
                union(&mut parent, x, y);
            }
        }
        *counts.entry((a_minus_b, comps + free)).or_default() += 1;
    }
    let delta = loop_value();
    let mut keys: Vec<_> = counts.into_iter().collect();
    keys.sort();
    let max_loops = keys.iter().map(|((_, l), _)| *l).max().unwrap_or(1);
    let mut powers = vec![LaurentPoly::one()];
    for i in 1..max_loops {
        powers.push(&powers[i - 1] * &delta);
    }
    let mut out = LaurentPoly::zero();
    for ((e, loops), k) in keys {
        out = out + LaurentPoly::var_pow(Var::A, e).scale(k) * &powers[loops - 1];
    }
    out
}

/// `(-a)^(-3w) <L>`.
pub fn jones(d: &PlanarDiagram) -> LaurentPoly {
    jones_of_gauss(d.gauss())
}

/// The same normalized state sum on any Gauss diagram; on non-realizable
/// diagrams this is the Jones polynomial of the virtual link.
pub fn jones_of_gauss(g: &GaussDiagram) -> LaurentPoly {
    let w = g.writhe() as i32;
    let factor = LaurentPoly::var_pow(Var::A, -3 * w).scale(if w % 2 == 0 { 1 } else { -1 });
    factor * bracket_of_gauss(g)
}

/// A skein relation `V(D_s) = alpha_s V(D_-s) + beta_s V(D_0)` together with
/// the value of a descending `k`-component diagram.
trait Relation {
    fn alpha(&self, sign: i8) -> LaurentPoly;
    fn beta(&self, sign: i8) -> LaurentPoly;
    fn unlink(&self, k: usize) -> LaurentPoly;
}

struct ConwayRel;

impl Relation for ConwayRel {
    fn alpha(&self, _: i8) -> LaurentPoly {
        LaurentPoly::one()
    }
    fn beta(&self, sign: i8) -> LaurentPoly {
        LaurentPoly::var(Var::Z).scale(sign as i64)
    }
    fn unlink(&self, k: usize) -> LaurentPoly {
        if k == 1 {
            LaurentPoly::one()
        } else {
            LaurentPoly::zero()
        }
    }
}

struct HomflyRel;

impl Relation for HomflyRel {
    fn alpha(&self, sign: i8) -> LaurentPoly {
        -LaurentPoly::var_pow(Var::L, -2 * sign as i32)
    }
    fn beta(&self, sign: i8) -> LaurentPoly {
        LaurentPoly::monomial(1, exps(&[(Var::L, -(sign as i32)), (Var::M, 1)]))
    }
    fn unlink(&self, k: usize) -> LaurentPoly {
        let delta = (LaurentPoly::var(Var::L) + LaurentPoly::var_pow(Var::L, -1)) * LaurentPoly::var_pow(Var::M, -1);
        delta.pow(k as u32 - 1)
    }
}

fn exps(pairs: &[(Var, i32)]) -> [i32; crate::poly::NVARS] {
    let mut e = [0; crate::poly::NVARS];
    for &(v, x) in pairs {
        e[v.index()] = x;
    }
    e
}

/// Evaluator for the descending-diagram algorithm. Results are memoized by
/// canonical key, so one evaluator reused across many diagrams shares work;
/// the memo is dropped once it holds `MEMO_LIMIT` entries. A nonzero seed
/// picks basepoints and the component order pseudo-randomly at every node;
/// the value does not depend on it.
pub struct SkeinEvaluator {
    seed: u64,
    conway_memo: HashMap<String, LaurentPoly>,
    homfly_memo: HashMap<String, LaurentPoly>,
}

impl Default for SkeinEvaluator {
    fn default() -> Self {
        Self::new(0)
    }
}

impl SkeinEvaluator {
    pub fn new(seed: u64) -> Self {
        SkeinEvaluator { seed, conway_memo: HashMap::new(), homfly_memo: HashMap::new() }
    }

    pub fn conway(&mut self, d: &PlanarDiagram) -> LaurentPoly {
        let seed = self.seed;
        descend(&ConwayRel, d.gauss(), seed, &mut self.conway_memo)
    }

    pub fn homfly(&mut self, d: &PlanarDiagram) -> LaurentPoly {
        let seed = self.seed;
        descend(&HomflyRel, d.gauss(), seed, &mut self.homfly_memo)
    }
}

fn first_under_crossing(g: &GaussDiagram) -> Option<usize> {
    let mut seen = vec![false; g.num_arrows()];
    for e in g.circles().iter().flatten() {
        if !seen[e.arrow] {
            if e.head {
                return Some(e.arrow);
            }
            seen[e.arrow] = true;
        }
    }
    None
}

fn reorder(g: &GaussDiagram, seed: u64, key: &str) -> GaussDiagram {
    let mut h = DefaultHasher::new();
    seed.hash(&mut h);
    key.hash(&mut h);
    let mut rng = ChaCha8Rng::seed_from_u64(h.finish());
    let mut circles: Vec<Vec<End>> = g
        .circles()
        .iter()
        .map(|c| {
            let mut c = c.clone();
            if !c.is_empty() {
                let r = rng.gen_range(0..c.len());
                c.rotate_left(r);
            }
            c
        })
        .collect();
    circles.shuffle(&mut rng);
    GaussDiagram::from_parts_unchecked(circles, g.signs().to_vec())
}

const MEMO_LIMIT: usize = 1 << 20;

fn descend<R: Relation>(rel: &R, g: &GaussDiagram, seed: u64, memo: &mut HashMap<String, LaurentPoly>) -> LaurentPoly {
    if memo.len() >= MEMO_LIMIT {
        memo.clear();
    }
    let canon = g.canonical_form();
    let key = canon.render();
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut cur = if seed == 0 { canon } else { reorder(&canon, seed, &key) };
    let mut coef = LaurentPoly::one();
    let mut acc = LaurentPoly::zero();
    while let Some(c) = first_under_crossing(&cur) {
        let s = cur.sign(c);
        let smoothed = descend(rel, &cur.smooth_oriented(c), seed, memo);
        acc = acc + &coef * &rel.beta(s) * smoothed;
        coef = coef * rel.alpha(s);
        cur = cur.crossing_change(c);
    }
    acc = acc + coef * rel.unlink(cur.num_circles());
    memo.insert(key, acc.clone());
    acc
}

pub fn conway(d: &PlanarDiagram) -> LaurentPoly {
    SkeinEvaluator::new(0).conway(d)
}

pub fn conway_seeded(d: &PlanarDiagram, seed: u64) -> LaurentPoly {
    SkeinEvaluator::new(seed).conway(d)
}

pub fn homfly(d: &PlanarDiagram) -> LaurentPoly {
    SkeinEvaluator::new(0).homfly(d)
}

pub fn homfly_seeded(d: &PlanarDiagram, seed: u64) -> LaurentPoly {
    SkeinEvaluator::new(seed).homfly(d)
}

/// The `z^2` coefficient of the Conway polynomial, mod 2.
pub fn arf(d: &PlanarDiagram) -> Result<u8> {
    arf_of_conway(d, &conway(d))
}

pub fn arf_of_conway(d: &PlanarDiagram, conway: &LaurentPoly) -> Result<u8> {
    if d.num_components() != 1 {
        return Err(Error::NotAKnot(d.num_components()));
    }
    let c2 = conway.coeff_of(Var::Z, 2);
    Ok(if (c2 % 2u8) == 0.into() { 0 } else { 1 })
}

/// `P(l = i, m = i z)`: the Conway polynomial.
pub fn homfly_to_conway(p: &LaurentPoly) -> Result<LaurentPoly> {
    let t = LaurentPoly::var(Var::T);
    let image = p.substitute(&[(Var::L, t.clone()), (Var::M, &t * &LaurentPoly::var(Var::Z))])?;
    let (re, im) = image.reduce_imaginary(Var::T);
    if !im.is_zero() {
        return Err(Error::BadInput(format!("imaginary part {im} in Conway specialization")));
    }
    Ok(re)
}

/// `P(l = i a^4, m = i (a^-2 - a^2))`: the Jones polynomial in the bracket
/// variable. The binomial image of `m` is handled by clearing negative
/// powers of `m` and dividing exactly at the end.
pub fn homfly_to_jones(p: &LaurentPoly) -> Result<LaurentPoly> {
    let t = LaurentPoly::var(Var::T);
    let staged = p.substitute(&[
        (Var::L, &t * &LaurentPoly::var_pow(Var::A, 4)),
        (Var::M, &t * &LaurentPoly::var(Var::Z)),
    ])?;
    let (re, im) = staged.reduce_imaginary(Var::T);
    if !im.is_zero() {
        return Err(Error::BadInput(format!("imaginary part {im} in Jones specialization")));
    }
    let k = re.degree_range(Var::Z).map_or(0, |(lo, _)| (-lo).max(0));
    let b = LaurentPoly::var_pow(Var::A, -2) - LaurentPoly::var_pow(Var::A, 2);
    let cleared = re.shift(Var::Z, k).compose(Var::Z, &b)?;
    Ok(cleared.div_exact_univariate(Var::A, &b.pow(k as u32))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(g: &str) -> PlanarDiagram {
        PlanarDiagram::realize(&GaussDiagram::parse(g).unwrap()).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    const TREFOIL: &str = "O1+U2+O3+U1+O2+U3+";
    const FIG8: &str = "O1-U2+O3+U1-O4-U3+O2+U4-";

    #[test]
    fn bracket_base_cases() {
        assert_eq!(kauffman_bracket(&PlanarDiagram::unknot()), p("1"));
        assert_eq!(kauffman_bracket(&PlanarDiagram::unlink(2)), p("-a^2-a^-2"));
        assert_eq!(kauffman_bracket(&pd("O1+U1+")), p("-a^3"));
        assert_eq!(kauffman_bracket(&pd("O1-U1-")), p("-a^-3"));
    }

    #[test]
    fn jones_normalization() {
        assert_eq!(jones(&PlanarDiagram::unknot()), p("1"));
        assert_eq!(jones(&pd("O1+U1+")), p("1"));
        assert_eq!(jones(&pd("U1-O1-")), p("1"));
    }

    #[test]
    fn trefoil_bracket_by_recursion() {
        let t = pd(TREFOIL);
        let direct = kauffman_bracket(&t);
        for c in 0..3 {
            let bp = bracket_pair(&t, c).unwrap();
            let rec = LaurentPoly::var(Var::A) * kauffman_bracket(&bp.a_smoothing)
                + LaurentPoly::var_pow(Var::A, -1) * kauffman_bracket(&bp.b_smoothing);
            assert_eq!(direct, rec);
        }
    }

    #[test]
    fn conway_examples() {
        assert_eq!(conway(&PlanarDiagram::unknot()), p("1"));
        assert_eq!(conway(&PlanarDiagram::unlink(2)), p("0"));
        assert_eq!(conway(&pd(TREFOIL)), p("z^2+1"));
        assert_eq!(conway(&pd(FIG8)), p("1-z^2"));
        assert_eq!(conway(&pd("O1+U2+ / U1+O2+")), p("z"));
    }

    #[test]
    fn homfly_examples() {
        assert_eq!(homfly(&PlanarDiagram::unknot()), p("1"));
        assert_eq!(homfly(&PlanarDiagram::unlink(2)), p("lm^-1+l^-1m^-1"));
        let t = pd(TREFOIL);
        let h = homfly(&t);
        assert_eq!(homfly_to_conway(&h).unwrap(), conway(&t));
        assert_eq!(homfly_to_jones(&h).unwrap(), jones(&t));
    }

    #[test]
    fn arf_examples() {
        assert_eq!(arf(&PlanarDiagram::unknot()).unwrap(), 0);
        assert_eq!(arf(&pd(TREFOIL)).unwrap(), 1);
        assert_eq!(arf(&pd(FIG8)).unwrap(), 1);
        assert!(matches!(arf(&PlanarDiagram::unlink(2)), Err(Error::NotAKnot(2))));
    }

    #[test]
    fn triple_shapes() {
        let t = pd(TREFOIL);
        let tr = skein_triple(&t, 0).unwrap();
        assert_eq!(tr.positive, t);
        assert_eq!(tr.smoothed.num_components(), 2);
        assert_eq!(tr.smoothed.num_crossings(), 2);
        assert_eq!(jones(&tr.negative), p("1"));
        let k = skein_triple(&pd("O1+U1+"), 0).unwrap();
        assert_eq!(k.smoothed, PlanarDiagram::unlink(2));
        assert!(matches!(skein_triple(&PlanarDiagram::unknot(), 0), Err(Error::UnknownCrossing(0))));
    }

    #[test]
    fn seeds_agree() {
        let f = pd(FIG8);
        for s in 1..5 {
            assert_eq!(conway_seeded(&f, s), conway(&f));
            assert_eq!(homfly_seeded(&f, s), homfly(&f));
        }
    }
}

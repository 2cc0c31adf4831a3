//! Seeded random diagrams for the property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagrams::{End, GaussDiagram, PlanarDiagram};

pub type DiagramRng = ChaCha8Rng;

pub fn rng(seed: u64) -> DiagramRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Closure of a braid word. Letter `±(i+1)` crosses the strands at
/// positions `i` and `i+1` with the letter's sign; the strand coming from
/// position `i` passes over for a positive letter. Strands that never cross
/// become free loops.
pub fn braid_closure(strands: usize, word: &[i32]) -> GaussDiagram {
    // passes[s] collects the endpoints met by the strand starting at s
    let mut passes: Vec<Vec<End>> = vec![Vec::new(); strands];
    let mut at: Vec<usize> = (0..strands).collect();
    let mut signs = Vec::with_capacity(word.len());
    for (a, &letter) in word.iter().enumerate() {
        let i = letter.unsigned_abs() as usize - 1;
        assert!(i + 1 < strands, "braid letter out of range");
        let (over, under) = if letter > 0 { (at[i], at[i + 1]) } else { (at[i + 1], at[i]) };
        passes[over].push(End::tail(a));
        passes[under].push(End::head(a));
        signs.push(if letter > 0 { 1 } else { -1 });
        at.swap(i, i + 1);
    }
    // the strand starting at s ends at position p with at[p] = s
    let mut end_pos = vec![0; strands];
    for (p, &s) in at.iter().enumerate() {
        end_pos[s] = p;
    }
    let mut seen = vec![false; strands];
    let mut circles = Vec::new();
    for s0 in 0..strands {
        if seen[s0] {
            continue;
        }
        let mut circle = Vec::new();
        let mut s = s0;
        while !seen[s] {
            seen[s] = true;
            circle.extend_from_slice(&passes[s]);
            s = end_pos[s];
        }
        circles.push(circle);
    }
    GaussDiagram::new(circles, signs).expect("braid closure is well formed")
}

/// Random braid closure with at most `max_crossings` crossings on 2 to 4
/// strands.
pub fn random_classical(rng: &mut DiagramRng, max_crossings: usize) -> PlanarDiagram {
    let strands = rng.gen_range(2..=4);
    let len = rng.gen_range(1..=max_crossings.max(1));
    let word: Vec<i32> = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..strands) as i32;
            if rng.gen_bool(0.5) { i } else { -i }
        })
        .collect();
    PlanarDiagram::realize(&braid_closure(strands, &word)).expect("braid closures are planar")
}

/// Random classical knot: braid closures retried until one circle remains.
pub fn random_classical_knot(rng: &mut DiagramRng, max_crossings: usize) -> PlanarDiagram {
    loop {
        let d = random_classical(rng, max_crossings);
        if d.num_components() == 1 {
            return d;
        }
    }
}

/// Random Gauss diagram with `arrows` arrows spread over `circles` circles;
/// every circle receives at least one endpoint when there are enough.
pub fn random_gauss(rng: &mut DiagramRng, circles: usize, arrows: usize) -> GaussDiagram {
    assert!(circles >= 1);
    let mut ends: Vec<End> = (0..arrows).flat_map(|a| [End::tail(a), End::head(a)]).collect();
    ends.shuffle(rng);
    let mut out: Vec<Vec<End>> = vec![Vec::new(); circles];
    for (i, e) in ends.into_iter().enumerate() {
        let c = if i < circles { i } else { rng.gen_range(0..circles) };
        out[c].push(e);
    }
    let signs = (0..arrows).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    GaussDiagram::new(out, signs).expect("random diagram is well formed")
}

/// Random one-circle virtual knot with 1..=max_arrows arrows.
pub fn random_virtual_knot(rng: &mut DiagramRng, max_arrows: usize) -> GaussDiagram {
    let n = rng.gen_range(1..=max_arrows.max(1));
    random_gauss(rng, 1, n)
}

/// Random welded (or virtual) link with 2..=max_circles circles.
pub fn random_virtual_link(rng: &mut DiagramRng, max_circles: usize, max_arrows: usize) -> GaussDiagram {
    let k = rng.gen_range(2..=max_circles.max(2));
    let n = rng.gen_range(1..=max_arrows.max(1));
    random_gauss(rng, k, n)
}

//! Enumeration of one-circle Gauss diagrams up to canonical key.
//!
//! Chord words are generated in first-appearance form and only the
//! rotation-minimal word of each class is expanded, so every canonical class
//! is met while expanding exactly one word and deduplication stays local.

use crate::diagrams::{is_realizable, End, GaussDiagram};

/// Largest arrow count accepted by the table commands.
pub const MAX_ARROWS: usize = 8;

/// Calls `f` on every first-appearance word with `n` letters, each used
/// twice, that is minimal among its rotations.
pub fn for_each_chord_word(n: usize, mut f: impl FnMut(&[u8])) {
    let mut word = Vec::with_capacity(2 * n);
    let mut count = vec![0u8; n];
    grow(n, &mut word, &mut count, 0, &mut f);
}

fn grow(n: usize, word: &mut Vec<u8>, count: &mut [u8], next: u8, f: &mut impl FnMut(&[u8])) {
    if word.len() == 2 * n {
        if rotation_minimal(word) {
            f(word);
        }
        return;
    }
    for x in 0..=next {
        let i = x as usize;
        if i >= n || count[i] == 2 {
            continue;
        }
        count[i] += 1;
        word.push(x);
        grow(n, word, count, if x == next { next + 1 } else { next }, f);
        word.pop();
        count[i] -= 1;
    }
}

fn relabel_from(word: &[u8], r: usize, out: &mut Vec<u8>) {
    let mut map = [u8::MAX; 64];
    let mut next = 0;
    out.clear();
    for j in 0..word.len() {
        let x = word[(r + j) % word.len()] as usize;
        if map[x] == u8::MAX {
            map[x] = next;
            next += 1;
        }
        out.push(map[x]);
    }
}

fn rotation_minimal(word: &[u8]) -> bool {
    let mut buf = Vec::with_capacity(word.len());
    (1..word.len()).all(|r| {
        relabel_from(word, r, &mut buf);
        buf.as_slice() >= word
    })
}

/// Each chord crosses an even number of others: necessary for a planar
/// curve.
pub fn evenly_interlaced(word: &[u8]) -> bool {
    let n = word.len() / 2;
    let mut first = vec![usize::MAX; n];
    let mut span = vec![(0, 0); n];
    for (i, &x) in word.iter().enumerate() {
        let x = x as usize;
        if first[x] == usize::MAX {
            first[x] = i;
        } else {
            span[x] = (first[x], i);
        }
    }
    (0..n).all(|a| {
        let (s, e) = span[a];
        let crossing = (0..n)
            .filter(|&b| {
                let (p, q) = span[b];
                b != a && ((s < p && p < e) != (s < q && q < e))
            })
            .count();
        crossing % 2 == 0
    })
}

/// Diagram on `word`: bit `a` of `orient` puts the head of arrow `a` first,
/// bit `a` of `negative` makes it negative.
pub fn diagram(word: &[u8], orient: u32, negative: u32) -> GaussDiagram {
    let n = word.len() / 2;
    let mut seen = vec![false; n];
    let circle: Vec<End> = word
        .iter()
        .map(|&x| {
            let a = x as usize;
            let first = !seen[a];
            seen[a] = true;
            let head_first = orient >> a & 1 == 1;
            End { arrow: a, head: first == head_first }
        })
        .collect();
    let signs = (0..n).map(|a| if negative >> a & 1 == 1 { -1 } else { 1 }).collect();
    GaussDiagram::new(vec![circle], signs).expect("chord word is well formed")
}

/// Rotations of a word onto itself, as arrow permutations together with
/// the arrows whose first occurrence moves to the second.
fn symmetries(word: &[u8]) -> Vec<(Vec<usize>, u32)> {
    let n = word.len() / 2;
    let mut span = vec![(usize::MAX, 0); n];
    for (i, &x) in word.iter().enumerate() {
        let e = &mut span[x as usize];
        if e.0 == usize::MAX {
            e.0 = i;
        } else {
            e.1 = i;
        }
    }
    let mut buf = Vec::with_capacity(word.len());
    let mut out = Vec::new();
    for r in 1..word.len() {
        relabel_from(word, r, &mut buf);
        if buf != word {
            continue;
        }
        let mut perm = vec![0; n];
        for j in 0..word.len() {
            perm[word[(r + j) % word.len()] as usize] = buf[j] as usize;
        }
        let flip = (0..n).filter(|&x| span[x].0 < r && r <= span[x].1).fold(0, |m, x| m | 1 << x);
        out.push((perm, flip));
    }
    out
}

fn image(perm: &[usize], flip: u32, orient: u32, negative: u32) -> (u32, u32) {
    let (mut o, mut s) = (0, 0);
    for (x, &y) in perm.iter().enumerate() {
        o |= ((orient ^ flip) >> x & 1) << y;
        s |= (negative >> x & 1) << y;
    }
    (o, s)
}

/// Emits `diagram(w, o, s)` for the pairs that are least in their orbit
/// under the symmetries of `w`.
fn emit_orbits(w: &[u8], pairs: impl Iterator<Item = (u32, u32)>, f: &mut impl FnMut(GaussDiagram)) {
    let sym = symmetries(w);
    for (o, s) in pairs {
        if sym.iter().all(|(perm, flip)| image(perm, *flip, o, s) >= (o, s)) {
            f(diagram(w, o, s));
        }
    }
}

/// Every one-circle Gauss diagram with at most `max_arrows` arrows, once per
/// canonical key, in a deterministic order. Exponential: practical up to
/// about five arrows.
pub fn for_each_diagram(max_arrows: usize, mut f: impl FnMut(GaussDiagram)) {
    for n in 0..=max_arrows {
        for_each_chord_word(n, |w| {
            let pairs = (0..1u32 << n).flat_map(|o| (0..1u32 << n).map(move |s| (o, s)));
            emit_orbits(w, pairs, &mut f);
        });
    }
}

/// Every realizable one-circle Gauss diagram with at most `max_arrows`
/// arrows, once per canonical key, in the same order as `for_each_diagram`.
///
/// Realizability depends on each arrow only through sign times orientation,
/// so the sign vectors realizing a word are found once for one orientation
/// and carried over to the others.
pub fn for_each_classical(max_arrows: usize, mut f: impl FnMut(GaussDiagram)) {
    for n in 0..=max_arrows {
        for_each_chord_word(n, |w| {
            if !evenly_interlaced(w) {
                return;
            }
            let base: Vec<u32> = (0..1u32 << n).filter(|&s| is_realizable(&diagram(w, 0, s))).collect();
            let pairs = (0..1u32 << n).flat_map(|o| base.iter().map(move |&s| (o, s ^ o)));
            emit_orbits(w, pairs, &mut f);
        });
    }
}

pub fn classical_table(max_arrows: usize) -> Vec<GaussDiagram> {
    let mut out = Vec::new();
    for_each_classical(max_arrows, |g| out.push(g));
    out
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn count_words(n: usize) -> usize {
        let mut k = 0;
        for_each_chord_word(n, |_| k += 1);
        k
    }

    #[test]
    fn chord_diagram_counts() {
        // chord diagrams up to rotation
        assert_eq!((0..=5).map(count_words).collect::<Vec<_>>(), [1, 1, 2, 5, 18, 105]);
    }

    #[test]
    fn small_tables() {
        let mut all = Vec::new();
        for_each_diagram(1, |g| all.push(g.canonical_key()));
        assert_eq!(all, ["", "O1+U1+", "O1-U1-"]);
    }

    #[test]
    fn one_record_per_key() {
        let mut keys = Vec::new();
        for_each_diagram(4, |g| keys.push(g.canonical_key()));
        let distinct: BTreeSet<_> = keys.iter().collect();
        assert_eq!(distinct.len(), keys.len());
        // every diagram on every word lands on one of the emitted keys
        for n in 0..=3 {
            for_each_chord_word(n, |w| {
                for o in 0..1u32 << n {
                    for s in 0..1u32 << n {
                        assert!(distinct.contains(&diagram(w, o, s).canonical_key()));
                    }
                }
            });
        }
    }

    #[test]
    fn classical_matches_filtered_full_table() {
        for n in 0..=4 {
            let mut full = BTreeSet::new();
            for_each_diagram(n, |g| {
                if is_realizable(&g) {
                    full.insert(g.canonical_key());
                }
            });
            let table = classical_table(n);
            let fast: BTreeSet<String> = table.iter().map(|g| g.canonical_key()).collect();
            assert_eq!(fast.len(), table.len());
            assert_eq!(full, fast, "n = {n}");
        }
    }
}


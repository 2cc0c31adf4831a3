//! Planar-level moves, matched on faces of the map induced by the diagram.
//!
//! Reidemeister insertions reuse the Gauss-level encodings and keep only
//! results that are planar and, for `r2`, where the new bigon is a face.
//! The triangle and square moves use anchors listing the first position of
//! each adjacent pair along the face boundary:
//! - `r3`, `delta`: `[c1, k1, c2, k2, c3, k3]` (sorted), a triangle face with
//!   layered (`r3`) or cyclic (`delta`) heights; each pair is exchanged.
//! - `pass`, `sharp`: the four corner arrows (sorted) of a square face; all
//!   four crossings are changed.

use std::collections::BTreeSet;

use super::gauss_rules::{self, gaps, swap_pairs, Ctx};
use crate::diagrams::{GaussDiagram, PlanarDiagram, PlanarMap, Pos};

struct Edge {
    /// Global endpoint the edge leaves from, and the one it reaches.
    from: usize,
    to: usize,
    /// The face walk runs along the orientation of the strand.
    forward: bool,
}

struct Faces<'a> {
    g: &'a GaussDiagram,
    map: PlanarMap,
}

impl<'a> Faces<'a> {
    fn new(g: &'a GaussDiagram) -> Self {
        Faces { g, map: PlanarMap::new(g) }
    }

    fn pos(&self, gi: usize) -> Pos {
        self.map.locate(gi)
    }

    fn end(&self, gi: usize) -> crate::diagrams::End {
        let (c, k) = self.pos(gi);
        self.g.circles()[c][k]
    }

    fn next(&self, gi: usize) -> usize {
        let (c, k) = self.pos(gi);
        self.map.offsets[c] + (k + 1) % self.map.lens[c]
    }

    fn global(&self, p: Pos) -> usize {
        self.map.offsets[p.0] + p.1
    }

    fn edges(&self, face: &[usize]) -> Vec<Edge> {
        face.iter()
            .map(|&d| {
                let (gi, forward) = self.map.side_of_dart(d);
                Edge { from: gi, to: self.next(gi), forward }
            })
            .collect()
    }

    /// Faces of size `k` whose edges meet `k` distinct crossings, each at
    /// two distinct endpoints.
    fn simple_faces(&self, k: usize) -> Vec<Vec<Edge>> {
        let mut out = Vec::new();
        for face in &self.map.faces {
            if face.len() != k {
                continue;
            }
            let edges = self.edges(face);
            let mut ends = BTreeSet::new();
            let mut arrows = BTreeSet::new();
            for e in &edges {
                ends.insert(e.from);
                ends.insert(e.to);
                arrows.insert(self.end(e.from).arrow);
                arrows.insert(self.end(e.to).arrow);
            }
            if ends.len() == 2 * k && arrows.len() == k {
                out.push(edges);
            }
        }
        out
    }

    fn tails_on(&self, e: &Edge) -> usize {
        (!self.end(e.from).head) as usize + (!self.end(e.to).head) as usize
    }

    /// Gaps of a circle joining positions `p` and `q` (two on a circle of
    /// length 2).
    fn gaps_between(&self, p: Pos, q: Pos) -> Vec<usize> {
        let (gp, gq) = (self.global(p), self.global(q));
        let mut out = Vec::new();
        if self.next(gp) == gq {
            out.push(gp);
        }
        if self.next(gq) == gp {
            out.push(gq);
        }
        out
    }

    fn gap_darts(&self, gi: usize) -> [usize; 2] {
        [2 * gi + 1, 2 * self.next(gi)]
    }

    /// Arrows `a`, `b` with adjacent tails and adjacent heads bound a bigon
    /// face.
    fn bigon_is_face(&self, ctx: &Ctx, a: usize, b: usize) -> bool {
        let tg = self.gaps_between(ctx.tail(a), ctx.tail(b));
        let hg = self.gaps_between(ctx.head(a), ctx.head(b));
        let h_darts: Vec<usize> = hg.iter().flat_map(|&g| self.gap_darts(g)).collect();
        tg.iter().flat_map(|&g| self.gap_darts(g)).any(|d| {
            let f = &self.map.faces[self.map.face_of[d]];
            f.len() == 2 && f.iter().any(|x| h_darts.contains(x))
        })
    }

    /// Gaps that can meet inside one face: both sides of each edge.
    fn gap_faces(&self, gi: usize) -> [usize; 2] {
        let [d1, d2] = self.gap_darts(gi);
        [self.map.face_of[d1], self.map.face_of[d2]]
    }
}

fn realize(g: GaussDiagram) -> Option<PlanarDiagram> {
    PlanarDiagram::realize(&g).ok()
}

fn triangle_sites(p: &PlanarDiagram, layered: bool) -> Vec<Vec<usize>> {
    let g = p.gauss();
    let f = Faces::new(g);
    let mut out = Vec::new();
    for edges in f.simple_faces(3) {
        let mut heights: Vec<usize> = edges.iter().map(|e| f.tails_on(e)).collect();
        heights.sort();
        let ok = if layered { heights == [0, 1, 2] } else { heights == [1, 1, 1] };
        if !ok {
            continue;
        }
        let mut pairs: Vec<Pos> = edges.iter().map(|e| f.pos(e.from)).collect();
        pairs.sort();
        let anchor: Vec<usize> = pairs.iter().flat_map(|&(c, k)| [c, k]).collect();
        if !out.contains(&anchor) && realize(swap_pairs(g, &pairs)).is_some() {
            out.push(anchor);
        }
    }
    out
}

fn square_sites(p: &PlanarDiagram, woven: bool) -> Vec<Vec<usize>> {
    let g = p.gauss();
    let f = Faces::new(g);
    let mut out = Vec::new();
    for edges in f.simple_faces(4) {
        let t: Vec<usize> = edges.iter().map(|e| f.tails_on(e)).collect();
        let ok = if woven {
            t.iter().all(|&x| x == 1)
        } else {
            (t[0] == 2 && t[2] == 2) || (t[1] == 2 && t[3] == 2)
        };
        if !ok || edges[0].forward != edges[2].forward || edges[1].forward != edges[3].forward {
            continue;
        }
        let mut arrows: Vec<usize> = edges.iter().map(|e| f.end(e.from).arrow).collect();
        arrows.sort();
        if !out.contains(&arrows) {
            out.push(arrows);
        }
    }
    out
}

fn r2_removals(p: &PlanarDiagram) -> Vec<Vec<usize>> {
    let g = p.gauss();
    let ctx = Ctx::new(g);
    let f = Faces::new(g);
    let n = g.num_arrows();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if gauss_rules::is_r2_pair(&ctx, a, b) && f.bigon_is_face(&ctx, a, b) {
                out.push(vec![0, a, b]);
            }
        }
    }
    out
}

fn r2_insertion_ok(g: &GaussDiagram, anchor: &[usize]) -> Option<PlanarDiagram> {
    let &[1, c1, k1, c2, k2, v] = anchor else { return None };
    let h = gauss_rules::r2_insert(g, c1, k1, c2, k2, v)?;
    let f = Faces::new(&h);
    if !f.map.is_planar(&h) {
        return None;
    }
    let n = g.num_arrows();
    if !f.bigon_is_face(&Ctx::new(&h), n, n + 1) {
        return None;
    }
    realize(h)
}

fn r2_insertions(p: &PlanarDiagram, cap: usize) -> Vec<Vec<usize>> {
    let g = p.gauss();
    if g.num_arrows() + 2 > cap {
        return Vec::new();
    }
    let f = Faces::new(g);
    let gs = gaps(g);
    let faces_of = |(c, k): Pos| -> Option<[usize; 2]> {
        if g.circles()[c].is_empty() {
            None
        } else {
            Some(f.gap_faces(f.global((c, k))))
        }
    };
    let mut out = Vec::new();
    for &p1 in &gs {
        for &p2 in &gs {
            let share = match (faces_of(p1), faces_of(p2)) {
                (Some(a), Some(b)) => a.iter().any(|x| b.contains(x)),
                _ => true,
            };
            if !share {
                continue;
            }
            let vs = if p1 == p2 { 8 } else { 4 };
            for v in 0..vs {
                let anchor = vec![1, p1.0, p1.1, p2.0, p2.1, v];
                if r2_insertion_ok(g, &anchor).is_some() {
                    out.push(anchor);
                }
            }
        }
    }
    out
}

pub(super) fn sites(p: &PlanarDiagram, rule: &str, cap: usize) -> Vec<Vec<usize>> {
    let g = p.gauss();
    match rule {
        "r1+" => gauss_rules::sites(g, "r1+", cap)
            .into_iter()
            .filter(|a| gauss_rules::r1_insert(g, a[0], a[1], a[2]).and_then(realize).is_some())
            .collect(),
        "r1-" | "cc" => gauss_rules::sites(g, rule, cap),
        "r2" => {
            let mut out = r2_removals(p);
            out.extend(r2_insertions(p, cap));
            out
        }
        "r3" => triangle_sites(p, true),
        "delta" => triangle_sites(p, false),
        "pass" => square_sites(p, false),
        "sharp" => square_sites(p, true),
        _ => Vec::new(),
    }
}

fn build(p: &PlanarDiagram, rule: &str, anchor: &[usize]) -> Option<PlanarDiagram> {
    let g = p.gauss();
    match rule {
        "r1+" | "r1-" | "cc" => realize(gauss_rules::apply_unchecked(g, rule, anchor)?),
        "r2" if anchor.first() == Some(&0) => realize(gauss_rules::apply_unchecked(g, rule, anchor)?),
        "r2" => r2_insertion_ok(g, anchor),
        "r3" | "delta" => {
            let pairs: Vec<Pos> = anchor.chunks(2).map(|c| (c[0], c[1])).collect();
            realize(swap_pairs(g, &pairs))
        }
        "pass" | "sharp" => {
            let mut h = g.clone();
            for &a in anchor {
                h = h.crossing_change(a);
            }
            realize(h)
        }
        _ => None,
    }
}

pub(super) fn apply(p: &PlanarDiagram, rule: &str, anchor: &[usize]) -> Option<PlanarDiagram> {
    let valid = match rule {
        "r1+" => gauss_rules::sites(p.gauss(), rule, usize::MAX).iter().any(|a| a == anchor),
        "r2" if anchor.first() == Some(&1) => gauss_rules::sites(p.gauss(), rule, usize::MAX).iter().any(|a| a == anchor),
        "r2" => r2_removals(p).iter().any(|a| a == anchor),
        _ => sites(p, rule, usize::MAX).iter().any(|a| a == anchor),
    };
    if !valid {
        return None;
    }
    build(p, rule, anchor)
}

/// Applies an anchor produced by `sites` on the same diagram.
pub(super) fn apply_unchecked(p: &PlanarDiagram, rule: &str, anchor: &[usize]) -> Option<PlanarDiagram> {
    build(p, rule, anchor)
}

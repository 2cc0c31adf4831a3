//! Gauss-level encodings of the moves.
//!
//! Anchors by rule:
//! - `r1+`: `[circle, gap, variant]`, a kink inserted after position `gap`;
//!   variant bit 0 picks the sign, bit 1 puts the head first.
//! - `r1-`, `cc`, `vc`: `[arrow]`.
//! - `r2`: `[0, a, b]` cancels arrows `a < b`; `[1, c1, k1, c2, k2, variant]`
//!   inserts two tails after `(c1, k1)` and two heads after `(c2, k2)`.
//! - `r3`: `[a, b, c]` with `a` from the top strand to the middle one, `b`
//!   from top to bottom and `c` from middle to bottom.
//! - `fo`, `fu`, `fm`, `xi`: `[circle, k]`, the run starting at position `k`.
//! - `s1`: `[c1, k1, c2, k2]`, the two adjacent pairs exchanged.
//! - `s2`: `[circle, k, forward]`, the shell at `k, k + 1`.
//! - `wbp`: `[u, v, w, x]`, tails `u v` and `w x` adjacent, heads `u w` and
//!   `v x` adjacent.

use crate::diagrams::{End, GaussDiagram, Pos};

pub(super) struct Ctx<'a> {
    pub g: &'a GaussDiagram,
    pub pos: Vec<[Pos; 2]>,
}

impl<'a> Ctx<'a> {
    pub fn new(g: &'a GaussDiagram) -> Self {
        Ctx { g, pos: g.positions() }
    }

    pub fn len(&self, c: usize) -> usize {
        self.g.circles()[c].len()
    }

    pub fn at(&self, c: usize, k: usize) -> End {
        let l = self.len(c);
        self.g.circles()[c][k % l]
    }

    pub fn tail(&self, a: usize) -> Pos {
        self.pos[a][0]
    }

    pub fn head(&self, a: usize) -> Pos {
        self.pos[a][1]
    }

    /// `q` comes right after `p`.
    pub fn before(&self, p: Pos, q: Pos) -> bool {
        p.0 == q.0 && (p.1 + 1) % self.len(p.0) == q.1
    }

    pub fn adjacent(&self, p: Pos, q: Pos) -> bool {
        p != q && (self.before(p, q) || self.before(q, p))
    }

    /// Orientation of an adjacent pair: `Some(+1)` if `p` comes first,
    /// `None` when both orders hold (a circle of length 2).
    pub fn order(&self, p: Pos, q: Pos) -> Option<i8> {
        match (self.before(p, q), self.before(q, p)) {
            (true, true) => None,
            (true, false) => Some(1),
            _ => Some(-1),
        }
    }

    fn sign(&self, a: usize) -> i8 {
        self.g.sign(a)
    }
}

fn n_arrows(g: &GaussDiagram) -> usize {
    g.num_arrows()
}

/// Exchanges the endpoint at each given position with its successor, in
/// the order given.
pub(super) fn swap_pairs(g: &GaussDiagram, pairs: &[Pos]) -> GaussDiagram {
    let mut circles: Vec<Vec<End>> = g.circles().to_vec();
    for &(c, k) in pairs {
        let l = circles[c].len();
        circles[c].swap(k % l, (k + 1) % l);
    }
    GaussDiagram::from_parts_unchecked(circles, g.signs().to_vec())
}

/// Inserts blocks of endpoints after the given positions (position 0 of an
/// empty circle means the whole circle). New arrows get the given signs.
fn insert_blocks(g: &GaussDiagram, blocks: &[(Pos, Vec<End>)], new_signs: &[i8]) -> GaussDiagram {
    let mut circles: Vec<Vec<End>> = Vec::with_capacity(g.num_circles());
    for (ci, c) in g.circles().iter().enumerate() {
        let mut out = Vec::with_capacity(c.len() + 4);
        if c.is_empty() {
            for (p, b) in blocks {
                if p.0 == ci {
                    out.extend(b.iter().copied());
                }
            }
        } else {
            for (k, e) in c.iter().enumerate() {
                out.push(*e);
                for (p, b) in blocks {
                    if *p == (ci, k) {
                        out.extend(b.iter().copied());
                    }
                }
            }
        }
        circles.push(out);
    }
    let mut signs = g.signs().to_vec();
    signs.extend_from_slice(new_signs);
    GaussDiagram::from_parts_unchecked(circles, signs)
}

pub(super) fn gaps(g: &GaussDiagram) -> Vec<Pos> {
    let mut out = Vec::new();
    for (ci, c) in g.circles().iter().enumerate() {
        for k in 0..c.len().max(1) {
            out.push((ci, k));
        }
    }
    out
}

fn valid_gap(g: &GaussDiagram, c: usize, k: usize) -> bool {
    c < g.num_circles() && k < g.circles()[c].len().max(1)
}

pub(super) fn r1_insert(g: &GaussDiagram, c: usize, k: usize, v: usize) -> Option<GaussDiagram> {
    if !valid_gap(g, c, k) || v >= 4 {
        return None;
    }
    let n = n_arrows(g);
    let sign = if v & 1 == 0 { 1 } else { -1 };
    let block = if v & 2 == 0 { vec![End::tail(n), End::head(n)] } else { vec![End::head(n), End::tail(n)] };
    Some(insert_blocks(g, &[((c, k), block)], &[sign]))
}

pub(super) fn is_kink(ctx: &Ctx, a: usize) -> bool {
    a < n_arrows(ctx.g) && ctx.adjacent(ctx.tail(a), ctx.head(a))
}

pub(super) fn is_r2_pair(ctx: &Ctx, a: usize, b: usize) -> bool {
    let n = n_arrows(ctx.g);
    a < b
        && b < n
        && ctx.sign(a) != ctx.sign(b)
        && ctx.adjacent(ctx.tail(a), ctx.tail(b))
        && ctx.adjacent(ctx.head(a), ctx.head(b))
}

pub(super) fn r2_insert(g: &GaussDiagram, c1: usize, k1: usize, c2: usize, k2: usize, v: usize) -> Option<GaussDiagram> {
    let same = (c1, k1) == (c2, k2);
    if !valid_gap(g, c1, k1) || !valid_gap(g, c2, k2) || v >= if same { 8 } else { 4 } {
        return None;
    }
    let n = n_arrows(g);
    let s: i8 = if v & 1 == 0 { 1 } else { -1 };
    let tails = vec![End::tail(n), End::tail(n + 1)];
    let heads = if v & 2 == 0 { vec![End::head(n), End::head(n + 1)] } else { vec![End::head(n + 1), End::head(n)] };
    let blocks = if same {
        let mut b = if v & 4 == 0 { tails } else { heads.clone() };
        b.extend(if v & 4 == 0 { heads } else { vec![End::tail(n), End::tail(n + 1)] });
        vec![((c1, k1), b)]
    } else {
        vec![((c1, k1), tails), ((c2, k2), heads)]
    };
    Some(insert_blocks(g, &blocks, &[s, -s]))
}

/// Orders of the three adjacent pairs of an R3 configuration, or `None` if
/// the arrows do not form one.
fn r3_orders(ctx: &Ctx, a: usize, b: usize, c: usize) -> Option<[Option<i8>; 3]> {
    let n = n_arrows(ctx.g);
    if a >= n || b >= n || c >= n || a == b || b == c || a == c {
        return None;
    }
    let pairs = [(ctx.tail(a), ctx.tail(b)), (ctx.head(a), ctx.tail(c)), (ctx.head(b), ctx.head(c))];
    if pairs.iter().any(|&(p, q)| !ctx.adjacent(p, q)) {
        return None;
    }
    Some([ctx.order(pairs[0].0, pairs[0].1), ctx.order(pairs[1].0, pairs[1].1), ctx.order(pairs[2].0, pairs[2].1)])
}

pub(super) fn is_r3(ctx: &Ctx, a: usize, b: usize, c: usize) -> bool {
    let Some(orders) = r3_orders(ctx, a, b, c) else { return false };
    let (ea, eb, ec) = (ctx.sign(a), ctx.sign(b), ctx.sign(c));
    let choices = |o: Option<i8>| -> Vec<i8> { o.map_or(vec![1, -1], |x| vec![x]) };
    for s1 in choices(orders[0]) {
        for s2 in choices(orders[1]) {
            for s3 in choices(orders[2]) {
                if s1 * ea == s3 * ec && s2 * ea == s3 * eb {
                    return true;
                }
            }
        }
    }
    false
}

/// First position of each of the adjacent pairs of the triangle `a, b, c`.
pub(super) fn triangle_pairs(ctx: &Ctx, a: usize, b: usize, c: usize) -> [Pos; 3] {
    let first = |p: Pos, q: Pos| if ctx.before(p, q) { p } else { q };
    [
        first(ctx.tail(a), ctx.tail(b)),
        first(ctx.head(a), ctx.tail(c)),
        first(ctx.head(b), ctx.head(c)),
    ]
}

fn swap_run_ok(ctx: &Ctx, c: usize, k: usize, run: usize) -> Option<Vec<End>> {
    if c >= ctx.g.num_circles() || ctx.len(c) < 3 || k >= ctx.len(c) || run > ctx.len(c) {
        return None;
    }
    let ends: Vec<End> = (0..run).map(|i| ctx.at(c, k + i)).collect();
    for i in 0..run {
        for j in i + 1..run {
            if ends[i].arrow == ends[j].arrow {
                return None;
            }
        }
    }
    Some(ends)
}

fn forbidden_ok(ctx: &Ctx, rule: &str, c: usize, k: usize) -> bool {
    let Some(e) = swap_run_ok(ctx, c, k, 2) else { return false };
    match rule {
        "fo" => !e[0].head && !e[1].head,
        "fu" => e[0].head && e[1].head,
        _ => e[0].head != e[1].head,
    }
}

fn s1_ok(ctx: &Ctx, c1: usize, k1: usize, c2: usize, k2: usize) -> bool {
    let nc = ctx.g.num_circles();
    if c1 >= nc || c2 >= nc || (c1, k1) >= (c2, k2) {
        return false;
    }
    let (l1, l2) = (ctx.len(c1), ctx.len(c2));
    if l1 < 3 || l2 < 3 || k1 >= l1 || k2 >= l2 {
        return false;
    }
    let (x, y) = (ctx.at(c1, k1), ctx.at(c1, k1 + 1));
    let (yp, xp) = (ctx.at(c2, k2), ctx.at(c2, k2 + 1));
    if x.arrow == y.arrow || yp.arrow != y.arrow || xp.arrow != x.arrow || yp.head == y.head || xp.head == x.head {
        return false;
    }
    // the pairs must not share a position
    let p1 = [(c1, k1), (c1, (k1 + 1) % l1)];
    let p2 = [(c2, k2), (c2, (k2 + 1) % l2)];
    !p1.iter().any(|p| p2.contains(p))
}

fn s2_ok(ctx: &Ctx, c: usize, k: usize, forward: usize) -> bool {
    if c >= ctx.g.num_circles() || ctx.len(c) < 3 || k >= ctx.len(c) || forward > 1 {
        return false;
    }
    ctx.at(c, k).arrow == ctx.at(c, k + 1).arrow
}

fn apply_s2(g: &GaussDiagram, c: usize, k: usize, forward: usize) -> GaussDiagram {
    let l = g.circles()[c].len();
    if forward == 1 {
        // x at k+2 moves in front of the shell
        swap_pairs(g, &[(c, (k + 1) % l), (c, k % l)])
    } else {
        // the endpoint before the shell moves behind it
        swap_pairs(g, &[(c, (k + l - 1) % l), (c, k % l)])
    }
}

fn wbp_ok(ctx: &Ctx, q: [usize; 4]) -> bool {
    let n = n_arrows(ctx.g);
    let [u, v, w, x] = q;
    if q.iter().any(|&a| a >= n) || !(u < v && u < w && u < x) || v == w || v == x || w == x {
        return false;
    }
    let adj_t = |a: usize, b: usize| ctx.adjacent(ctx.tail(a), ctx.tail(b));
    let adj_h = |a: usize, b: usize| ctx.adjacent(ctx.head(a), ctx.head(b));
    if !(adj_t(u, v) && adj_t(w, x) && adj_h(u, w) && adj_h(v, x)) {
        return false;
    }
    let s = ctx.sign(u);
    if ctx.sign(v) != -s || ctx.sign(w) != -s || ctx.sign(x) != s {
        return false;
    }
    // every component is touched an even number of times by the
    // inter-component arrows of the grid
    let mut touch = vec![0usize; ctx.g.num_circles()];
    for a in q {
        let (t, h) = (ctx.tail(a).0, ctx.head(a).0);
        if t != h {
            touch[t] += 1;
            touch[h] += 1;
        }
    }
    touch.iter().all(|x| x % 2 == 0)
}

fn check(ctx: &Ctx, rule: &str, a: &[usize], cap: usize) -> bool {
    let g = ctx.g;
    let n = n_arrows(g);
    match (rule, a) {
        ("r1+", &[c, k, v]) => n < cap && valid_gap(g, c, k) && v < 4,
        ("r1-", &[x]) => is_kink(ctx, x),
        ("r2", &[0, x, y]) => is_r2_pair(ctx, x, y),
        ("r2", &[1, c1, k1, c2, k2, v]) => {
            n + 2 <= cap
                && valid_gap(g, c1, k1)
                && valid_gap(g, c2, k2)
                && v < if (c1, k1) == (c2, k2) { 8 } else { 4 }
        }
        ("r3", &[x, y, z]) => is_r3(ctx, x, y, z),
        ("cc" | "vc", &[x]) => x < n,
        ("fo" | "fu" | "fm", &[c, k]) => forbidden_ok(ctx, rule, c, k),
        ("xi", &[c, k]) => swap_run_ok(ctx, c, k, 3).is_some(),
        ("s1", &[c1, k1, c2, k2]) => s1_ok(ctx, c1, k1, c2, k2),
        ("s2", &[c, k, f]) => s2_ok(ctx, c, k, f),
        ("wbp", &[u, v, w, x]) => wbp_ok(ctx, [u, v, w, x]),
        _ => false,
    }
}

fn build(g: &GaussDiagram, ctx: &Ctx, rule: &str, a: &[usize]) -> Option<GaussDiagram> {
    Some(match (rule, a) {
        ("r1+", &[c, k, v]) => r1_insert(g, c, k, v)?,
        ("r1-", &[x]) => g.remove_arrows(&[x]),
        ("r2", &[0, x, y]) => g.remove_arrows(&[x, y]),
        ("r2", &[1, c1, k1, c2, k2, v]) => r2_insert(g, c1, k1, c2, k2, v)?,
        ("r3", &[x, y, z]) => swap_pairs(g, &triangle_pairs(ctx, x, y, z)),
        ("cc", &[x]) => g.crossing_change(x),
        ("vc", &[x]) => g.reverse_arrow(x),
        ("fo" | "fu" | "fm", &[c, k]) => swap_pairs(g, &[(c, k)]),
        ("xi", &[c, k]) => {
            let mut circles = g.circles().to_vec();
            let l = circles[c].len();
            circles[c].swap(k % l, (k + 2) % l);
            GaussDiagram::from_parts_unchecked(circles, g.signs().to_vec())
        }
        ("s1", &[c1, k1, c2, k2]) => swap_pairs(g, &[(c1, k1), (c2, k2)]),
        ("s2", &[c, k, f]) => apply_s2(g, c, k, f),
        ("wbp", &[u, v, w, x]) => {
            let mut h = g.clone();
            for a in [u, v, w, x] {
                h = h.crossing_change(a);
            }
            h
        }
        _ => return None,
    })
}

fn candidates(ctx: &Ctx, rule: &str, cap: usize) -> Vec<Vec<usize>> {
    let g = ctx.g;
    let n = n_arrows(g);
    let mut out = Vec::new();
    match rule {
        "r1+" => {
            if n < cap {
                for (c, k) in gaps(g) {
                    for v in 0..4 {
                        out.push(vec![c, k, v]);
                    }
                }
            }
        }
        "r1-" | "cc" | "vc" => out.extend((0..n).map(|x| vec![x])),
        "r2" => {
            for x in 0..n {
                for y in x + 1..n {
                    out.push(vec![0, x, y]);
                }
            }
            if n + 2 <= cap {
                let gs = gaps(g);
                for &(c1, k1) in &gs {
                    for &(c2, k2) in &gs {
                        let vs = if (c1, k1) == (c2, k2) { 8 } else { 4 };
                        for v in 0..vs {
                            out.push(vec![1, c1, k1, c2, k2, v]);
                        }
                    }
                }
            }
        }
        "r3" => {
            for x in 0..n {
                for y in 0..n {
                    if x != y && ctx.adjacent(ctx.tail(x), ctx.tail(y)) {
                        for z in 0..n {
                            out.push(vec![x, y, z]);
                        }
                    }
                }
            }
        }
        "fo" | "fu" | "fm" | "xi" => {
            for c in 0..g.num_circles() {
                for k in 0..ctx.len(c) {
                    out.push(vec![c, k]);
                }
            }
        }
        "s1" => {
            for (c1, k1) in gaps(g) {
                for (c2, k2) in gaps(g) {
                    out.push(vec![c1, k1, c2, k2]);
                }
            }
        }
        "s2" => {
            for c in 0..g.num_circles() {
                for k in 0..ctx.len(c) {
                    out.push(vec![c, k, 0]);
                    out.push(vec![c, k, 1]);
                }
            }
        }
        "wbp" => {
            for u in 0..n {
                for v in 0..n {
                    if v == u || !ctx.adjacent(ctx.tail(u), ctx.tail(v)) {
                        continue;
                    }
                    for w in 0..n {
                        if w == u || w == v || !ctx.adjacent(ctx.head(u), ctx.head(w)) {
                            continue;
                        }
                        for x in 0..n {
                            out.push(vec![u, v, w, x]);
                        }
                    }
                }
            }
        }
        _ => {}
    }
    out
}

pub(super) fn sites(g: &GaussDiagram, rule: &str, cap: usize) -> Vec<Vec<usize>> {
    let ctx = Ctx::new(g);
    candidates(&ctx, rule, cap).into_iter().filter(|a| check(&ctx, rule, a, cap)).collect()
}

pub(super) fn apply(g: &GaussDiagram, rule: &str, anchor: &[usize]) -> Option<GaussDiagram> {
    let ctx = Ctx::new(g);
    if !check(&ctx, rule, anchor, usize::MAX) {
        return None;
    }
    build(g, &ctx, rule, anchor)
}

/// Applies an anchor already known to match.
pub(super) fn apply_unchecked(g: &GaussDiagram, rule: &str, anchor: &[usize]) -> Option<GaussDiagram> {
    let ctx = Ctx::new(g);
    build(g, &ctx, rule, anchor)
}

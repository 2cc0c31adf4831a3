//! Signed Gauss diagrams: oriented circles carrying arrows from the
//! over-passage (tail) to the under-passage (head) of each crossing.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// One endpoint of an arrow on a circle. `head` marks the under-passage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    pub arrow: usize,
    pub head: bool,
}

impl End {
    pub fn tail(arrow: usize) -> Self {
        End { arrow, head: false }
    }
    pub fn head(arrow: usize) -> Self {
        End { arrow, head: true }
    }
}

/// Position of an endpoint: `(circle, index)`.
pub type Pos = (usize, usize);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    circles: Vec<Vec<End>>,
    signs: Vec<i8>,
}

impl GaussDiagram {
    /// Builds a diagram after checking that every arrow has exactly one
    /// tail and one head and that all signs are ±1.
    pub fn new(circles: Vec<Vec<End>>, signs: Vec<i8>) -> Result<Self> {
        let n = signs.len();
        if let Some(s) = signs.iter().find(|s| s.abs() != 1) {
            return Err(Error::Semantics(format!("arrow sign {s} is not ±1")));
        }
        let mut seen = vec![[0u8; 2]; n];
        for e in circles.iter().flatten() {
            if e.arrow >= n {
                return Err(Error::Semantics(format!("arrow {} has no sign", e.arrow + 1)));
            }
            seen[e.arrow][e.head as usize] += 1;
        }
        if let Some(a) = seen.iter().position(|s| *s != [1, 1]) {
            return Err(Error::Semantics(format!(
                "arrow {} must have exactly one tail and one head",
                a + 1
            )));
        }
        if circles.is_empty() {
            return Err(Error::Semantics("a diagram needs at least one circle".into()));
        }
        Ok(GaussDiagram { circles, signs })
    }

    pub(crate) fn from_parts_unchecked(circles: Vec<Vec<End>>, signs: Vec<i8>) -> Self {
        debug_assert!(GaussDiagram::new(circles.clone(), signs.clone()).is_ok());
        GaussDiagram { circles, signs }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn unlink(k: usize) -> Self {
        GaussDiagram { circles: vec![Vec::new(); k.max(1)], signs: Vec::new() }
    }

    pub fn circles(&self) -> &[Vec<End>] {
        &self.circles
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign(&self, arrow: usize) -> i8 {
        self.signs[arrow]
    }

    pub fn num_arrows(&self) -> usize {
        self.signs.len()
    }

    pub fn num_circles(&self) -> usize {
        self.circles.len()
    }

    pub fn is_knot(&self) -> bool {
        self.circles.len() == 1
    }

    pub fn require_knot(&self) -> Result<()> {
        if self.is_knot() {
            Ok(())
        } else {
            Err(Error::NotAKnot(self.circles.len()))
        }
    }

    pub fn num_endpoints(&self) -> usize {
        2 * self.signs.len()
    }

    /// `[tail, head]` positions of every arrow.
    pub fn positions(&self) -> Vec<[Pos; 2]> {
        let mut out = vec![[(0, 0); 2]; self.signs.len()];
        for (ci, c) in self.circles.iter().enumerate() {
            for (k, e) in c.iter().enumerate() {
                out[e.arrow][e.head as usize] = (ci, k);
            }
        }
        out
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// Reflection through the projection plane: every arrow reversed and
    /// its sign negated.
    pub fn mirror(&self) -> Self {
        let circles = self
            .circles
            .iter()
            .map(|c| c.iter().map(|e| End { arrow: e.arrow, head: !e.head }).collect())
            .collect();
        GaussDiagram { circles, signs: self.signs.iter().map(|s| -s).collect() }
    }

    /// Crossing change at one arrow.
    pub fn crossing_change(&self, arrow: usize) -> Self {
        let mut g = self.reverse_arrow(arrow);
        g.signs[arrow] = -g.signs[arrow];
        g
    }

    /// Swaps tail and head of one arrow, keeping its sign.
    pub fn reverse_arrow(&self, arrow: usize) -> Self {
        let mut g = self.clone();
        for e in g.circles.iter_mut().flatten() {
            if e.arrow == arrow {
                e.head = !e.head;
            }
        }
        g
    }

    pub fn with_sign(&self, arrow: usize, sign: i8) -> Self {
        if self.signs[arrow] == sign {
            self.clone()
        } else {
            self.crossing_change(arrow)
        }
    }

    /// Deletes the given arrows and renumbers the rest, preserving order.
    pub fn remove_arrows(&self, remove: &[usize]) -> Self {
        let mut new_index = vec![usize::MAX; self.signs.len()];
        let mut signs = Vec::new();
        for (a, &s) in self.signs.iter().enumerate() {
            if !remove.contains(&a) {
                new_index[a] = signs.len();
                signs.push(s);
            }
        }
        let circles = self
            .circles
            .iter()
            .map(|c| {
                c.iter()
                    .filter(|e| new_index[e.arrow] != usize::MAX)
                    .map(|e| End { arrow: new_index[e.arrow], head: e.head })
                    .collect()
            })
            .collect();
        GaussDiagram { circles, signs }
    }

    /// Renumbers arrows in order of first appearance along the circles.
    pub fn relabeled(&self) -> Self {
        let mut map = vec![usize::MAX; self.signs.len()];
        let mut signs = Vec::with_capacity(self.signs.len());
        for e in self.circles.iter().flatten() {
            if map[e.arrow] == usize::MAX {
                map[e.arrow] = signs.len();
                signs.push(self.signs[e.arrow]);
            }
        }
        let circles = self
            .circles
            .iter()
            .map(|c| c.iter().map(|e| End { arrow: map[e.arrow], head: e.head }).collect())
            .collect();
        GaussDiagram { circles, signs }
    }

    /// Splices the circle of `other` into the first circle, right after
    /// endpoint 0 (or into the empty circle). Both must be knots.
    pub fn connected_sum(&self, other: &GaussDiagram) -> Result<Self> {
        self.require_knot()?;
        other.require_knot()?;
        let shift = self.signs.len();
        let inserted: Vec<End> = other.circles[0]
            .iter()
            .map(|e| End { arrow: e.arrow + shift, head: e.head })
            .collect();
        let base = &self.circles[0];
        let mut circle = Vec::with_capacity(base.len() + inserted.len());
        if let Some(first) = base.first() {
            circle.push(*first);
        }
        circle.extend(inserted);
        circle.extend(base.iter().skip(1).copied());
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        Ok(GaussDiagram { circles: vec![circle], signs })
    }

    /// Oriented smoothing at `arrow`: splits a circle in two or merges two
    /// circles into one. The arrow is removed and later arrows renumbered.
    pub fn smooth_oriented(&self, arrow: usize) -> Self {
        self.smooth(arrow, false)
    }

    /// The non-orientation-respecting smoothing at `arrow`. One strand
    /// segment is traversed backwards; crossings met by it exactly once
    /// change sign.
    pub fn smooth_unoriented(&self, arrow: usize) -> Self {
        self.smooth(arrow, true)
    }

    fn smooth(&self, arrow: usize, unoriented: bool) -> Self {
        let pos = self.positions()[arrow];
        let (c1, k1) = pos[0];
        let (c2, k2) = pos[1];
        let mut circles: Vec<Vec<End>> = Vec::new();
        let mut reversed: Vec<End> = Vec::new();
        if c1 == c2 {
            let c = &self.circles[c1];
            let (lo, hi) = if k1 < k2 { (k1, k2) } else { (k2, k1) };
            let inner: Vec<End> = c[lo + 1..hi].to_vec();
            let outer: Vec<End> = c[hi + 1..].iter().chain(c[..lo].iter()).copied().collect();
            for (ci, cc) in self.circles.iter().enumerate() {
                if ci == c1 {
                    if unoriented {
                        let mut merged = outer.clone();
                        merged.extend(inner.iter().rev());
                        reversed = inner.clone();
                        circles.push(merged);
                    } else {
                        circles.push(outer.clone());
                        circles.push(inner.clone());
                    }
                } else {
                    circles.push(cc.clone());
                }
            }
        } else {
            let rot = |ci: usize, k: usize| -> Vec<End> {
                let c = &self.circles[ci];
                c[k + 1..].iter().chain(c[..k].iter()).copied().collect()
            };
            let x = rot(c1, k1);
            let y = rot(c2, k2);
            let (first, second) = (c1.min(c2), c1.max(c2));
            let (xa, ya) = if c1 == first { (x, y) } else { (y, x) };
            for (ci, cc) in self.circles.iter().enumerate() {
                if ci == first {
                    let mut merged = xa.clone();
                    if unoriented {
                        merged.extend(ya.iter().rev());
                        reversed = ya.clone();
                    } else {
                        merged.extend(ya.iter());
                    }
                    circles.push(merged);
                } else if ci != second {
                    circles.push(cc.clone());
                }
            }
        }
        let mut signs = self.signs.clone();
        let mut count = vec![0u8; signs.len()];
        for e in &reversed {
            count[e.arrow] += 1;
        }
        for (a, s) in signs.iter_mut().enumerate() {
            if count[a] == 1 {
                *s = -*s;
            }
        }
        GaussDiagram { circles, signs }.remove_arrows(&[arrow])
    }

    /// Canonical encoding: minimal token sequence over circle orders,
    /// rotations and arrow relabelings. Circles are separated by `0`.
    pub fn canonical_code(&self) -> Vec<u32> {
        self.canonical_search().0
    }

    /// Canonical representative (same ordering as `canonical_code`).
    pub fn canonical_form(&self) -> GaussDiagram {
        self.canonical_search().1
    }

    pub fn canonical_key(&self) -> String {
        self.canonical_form().render()
    }

    fn canonical_search(&self) -> (Vec<u32>, GaussDiagram) {
        #[derive(Clone)]
        struct State {
            used: Vec<bool>,
            labels: Vec<u32>,
            next: u32,
            order: Vec<(usize, usize)>,
        }
        let n = self.signs.len();
        let k = self.circles.len();
        let mut states = vec![State { used: vec![false; k], labels: vec![u32::MAX; n], next: 0, order: Vec::new() }];
        let mut code: Vec<u32> = Vec::new();
        let encode = |s: &State, ci: usize, r: usize| -> (Vec<u32>, Vec<u32>, u32) {
            let c = &self.circles[ci];
            let mut labels = s.labels.clone();
            let mut next = s.next;
            let mut seg = Vec::with_capacity(c.len() + 1);
            for j in 0..c.len() {
                let e = c[(r + j) % c.len()];
                if labels[e.arrow] == u32::MAX {
                    labels[e.arrow] = next;
                    next += 1;
                }
                let neg = (self.signs[e.arrow] < 0) as u32;
                seg.push(1 + labels[e.arrow] * 4 + (e.head as u32) * 2 + neg);
            }
            seg.push(0);
            (seg, labels, next)
        };
        for _ in 0..k {
            let mut best: Option<Vec<u32>> = None;
            let mut next_states: Vec<State> = Vec::new();
            for s in &states {
                for ci in 0..k {
                    if s.used[ci] {
                        continue;
                    }
                    let len = self.circles[ci].len().max(1);
                    for r in 0..len {
                        let (seg, labels, next) = encode(s, ci, r);
                        let better = match &best {
                            None => true,
                            Some(b) => seg < *b,
                        };
                        if better {
                            best = Some(seg.clone());
                            next_states.clear();
                        }
                        if best.as_ref() == Some(&seg) {
                            let mut ns = s.clone();
                            ns.used[ci] = true;
                            ns.labels = labels;
                            ns.next = next;
                            ns.order.push((ci, r));
                            next_states.push(ns);
                        }
                    }
                }
            }
            code.extend(best.unwrap());
            // Keep one representative per distinct label assignment.
            next_states.sort_by(|a, b| a.labels.cmp(&b.labels).then(a.used.cmp(&b.used)));
            next_states.dedup_by(|a, b| a.labels == b.labels && a.used == b.used);
            states = next_states;
        }
        let s = &states[0];
        let mut signs = vec![0i8; n];
        for a in 0..n {
            signs[s.labels[a] as usize] = self.signs[a];
        }
        let circles = s
            .order
            .iter()
            .map(|&(ci, r)| {
                let c = &self.circles[ci];
                (0..c.len())
                    .map(|j| {
                        let e = c[(r + j) % c.len()];
                        End { arrow: s.labels[e.arrow] as usize, head: e.head }
                    })
                    .collect()
            })
            .collect();
        (code, GaussDiagram { circles, signs })
    }

    /// Text form: `O1+U2+U1+O2+`, circles separated by ` / `.
    pub fn render(&self) -> String {
        self.circles
            .iter()
            .map(|c| {
                c.iter()
                    .map(|e| {
                        format!(
                            "{}{}{}",
                            if e.head { 'U' } else { 'O' },
                            e.arrow + 1,
                            if self.signs[e.arrow] > 0 { '+' } else { '-' }
                        )
                    })
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join(" / ")
    }

    /// Parses signed Gauss code. Labels are renumbered by first appearance.
    pub fn parse(text: &str) -> Result<Self> {
        let mut circles = Vec::new();
        let mut labels: BTreeMap<u64, usize> = BTreeMap::new();
        let mut signs: Vec<i8> = Vec::new();
        let mut seen: Vec<[u8; 2]> = Vec::new();
        for part in text.split('/') {
            let chars: Vec<char> = part.chars().collect();
            let mut i = 0;
            let mut circle = Vec::new();
            while i < chars.len() {
                if chars[i].is_whitespace() {
                    i += 1;
                    continue;
                }
                let start = i;
                let token_at = |end: usize| chars[start..end.min(chars.len())].iter().collect::<String>();
                let head = match chars[i] {
                    'O' | 'o' => false,
                    'U' | 'u' => true,
                    _ => {
                        let mut end = i + 1;
                        while end < chars.len() && !chars[end].is_whitespace() && !"OUou".contains(chars[end]) {
                            end += 1;
                        }
                        return Err(Error::syntax(token_at(end), "expected `O` or `U`"));
                    }
                };
                i += 1;
                let dstart = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i == dstart {
                    return Err(Error::syntax(token_at(i + 1), "expected a crossing label"));
                }
                let label: u64 = token_at(i)[1..]
                    .parse()
                    .map_err(|_| Error::syntax(token_at(i), "label out of range"))?;
                if label == 0 {
                    return Err(Error::syntax(token_at(i), "labels must be positive"));
                }
                let sign: i8 = match chars.get(i) {
                    Some('+') => 1,
                    Some('-') => -1,
                    _ => return Err(Error::syntax(token_at(i), "missing sign `+` or `-`")),
                };
                i += 1;
                let next = labels.len();
                let arrow = *labels.entry(label).or_insert(next);
                if arrow == signs.len() {
                    signs.push(sign);
                    seen.push([0, 0]);
                } else if signs[arrow] != sign {
                    return Err(Error::Semantics(format!("crossing {label} has conflicting signs")));
                }
                seen[arrow][head as usize] += 1;
                if seen[arrow][head as usize] > 1 {
                    return Err(Error::Semantics(format!(
                        "crossing {label} appears more than once as {}",
                        if head { "U" } else { "O" }
                    )));
                }
                circle.push(End { arrow, head });
            }
            circles.push(circle);
        }
        for (label, &a) in &labels {
            if seen[a] != [1, 1] {
                return Err(Error::Semantics(format!("crossing {label} must appear once as O and once as U")));
            }
        }
        GaussDiagram::new(circles, signs)
    }
}

impl fmt::Debug for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaussDiagram({:?})", self.render())
    }
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

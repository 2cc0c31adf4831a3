//! Classical link diagrams as planar-diagram (PD) codes.
//!
//! A crossing `X[a,b,c,d]` lists its four arcs counterclockwise starting at
//! the incoming under-strand, so `a -> c` is the under-strand. The
//! over-strand enters at `d` for a positive crossing and at `b` for a
//! negative one. Internally a diagram is kept as its signed Gauss diagram,
//! with crossing `i` being arrow `i` and crossingless loops stored as empty
//! circles at the end; the PD view is derived on demand.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use super::gauss::{End, GaussDiagram};
use super::map::PlanarMap;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlanarDiagram {
    gauss: GaussDiagram,
}

impl PlanarDiagram {
    pub fn unknot() -> Self {
        PlanarDiagram { gauss: GaussDiagram::unknot() }
    }

    pub fn unlink(k: usize) -> Self {
        PlanarDiagram { gauss: GaussDiagram::unlink(k) }
    }

    /// Builds the planar diagram of a realizable Gauss diagram. Crossing
    /// `i` is arrow `i`; crossingless circles become free loops.
    pub fn realize(g: &GaussDiagram) -> Result<Self> {
        if !PlanarMap::new(g).is_planar(g) {
            return Err(Error::NotRealizable);
        }
        let mut circles: Vec<Vec<End>> = g.circles().iter().filter(|c| !c.is_empty()).cloned().collect();
        let loops = g.num_circles() - circles.len();
        circles.extend(std::iter::repeat(Vec::new()).take(loops));
        Ok(PlanarDiagram { gauss: GaussDiagram::from_parts_unchecked(circles, g.signs().to_vec()) })
    }

    pub fn is_realizable(g: &GaussDiagram) -> bool {
        PlanarMap::new(g).is_planar(g)
    }

    pub fn to_gauss(&self) -> GaussDiagram {
        self.gauss.clone()
    }

    pub fn gauss(&self) -> &GaussDiagram {
        &self.gauss
    }

    pub fn num_crossings(&self) -> usize {
        self.gauss.num_arrows()
    }

    pub fn num_components(&self) -> usize {
        self.gauss.num_circles()
    }

    pub fn free_loops(&self) -> usize {
        self.gauss.circles().iter().filter(|c| c.is_empty()).count()
    }

    pub fn sign(&self, crossing: usize) -> i8 {
        self.gauss.sign(crossing)
    }

    pub fn writhe(&self) -> i64 {
        self.gauss.writhe()
    }

    pub fn mirror(&self) -> Self {
        PlanarDiagram { gauss: self.gauss.mirror() }
    }

    pub fn canonical_key(&self) -> String {
        self.gauss.canonical_key()
    }

    pub fn check_crossing(&self, c: usize) -> Result<()> {
        if c < self.num_crossings() {
            Ok(())
        } else {
            Err(Error::UnknownCrossing(c))
        }
    }

    /// Crossing change. The rotation system is unchanged, so the result
    /// stays planar.
    pub fn switch(&self, c: usize) -> Result<Self> {
        self.check_crossing(c)?;
        Ok(PlanarDiagram { gauss: self.gauss.crossing_change(c) })
    }

    /// Oriented smoothing at crossing `c`; later crossings are renumbered.
    pub fn smooth_oriented(&self, c: usize) -> Result<Self> {
        self.check_crossing(c)?;
        Self::realize(&self.gauss.smooth_oriented(c))
    }

    pub fn smooth_unoriented(&self, c: usize) -> Result<Self> {
        self.check_crossing(c)?;
        Self::realize(&self.gauss.smooth_unoriented(c))
    }

    /// Arc labels (1-based) of each crossing: arcs are numbered
    /// consecutively along each component.
    pub fn quads(&self) -> Vec<[usize; 4]> {
        let circles = self.gauss.circles();
        let mut out_edge: Vec<Vec<usize>> = Vec::new();
        let mut label = 0;
        for c in circles {
            let mut row = Vec::with_capacity(c.len());
            for _ in c {
                label += 1;
                row.push(label);
            }
            out_edge.push(row);
        }
        let mut ends = vec![[(0usize, 0usize); 2]; self.num_crossings()];
        for (ci, c) in circles.iter().enumerate() {
            for (k, e) in c.iter().enumerate() {
                ends[e.arrow][e.head as usize] = (ci, k);
            }
        }
        let in_edge = |(ci, k): (usize, usize)| {
            let len = circles[ci].len();
            out_edge[ci][(k + len - 1) % len]
        };
        let outp = |(ci, k): (usize, usize)| out_edge[ci][k];
        ends.iter()
            .enumerate()
            .map(|(a, &[t, h])| {
                if self.gauss.sign(a) > 0 {
                    [in_edge(h), outp(t), outp(h), in_edge(t)]
                } else {
                    [in_edge(h), in_edge(t), outp(h), outp(t)]
                }
            })
            .collect()
    }

    pub fn render(&self) -> String {
        let mut parts: Vec<String> = self
            .quads()
            .iter()
            .map(|q| format!("X[{},{},{},{}]", q[0], q[1], q[2], q[3]))
            .collect();
        let loops = self.free_loops();
        if loops > 0 {
            parts.push(format!("L{loops}"));
        }
        parts.join(" ")
    }

    /// Parses `X[a,b,c,d] ...` with an optional `L<k>` free-loop count.
    /// Empty text is the crossingless unknot.
    pub fn parse(text: &str) -> Result<Self> {
        let (quads, loops) = parse_pd_tokens(text)?;
        if quads.is_empty() {
            let k = loops.unwrap_or(1);
            if k == 0 {
                return Err(Error::syntax("L0", "a diagram needs at least one component"));
            }
            return Ok(Self::unlink(k));
        }
        let g = pd_quads_to_gauss(&quads, loops.unwrap_or(0))?;
        let map = PlanarMap::new(&g);
        let chi = map.euler_characteristics(&g);
        if let Some(x) = chi.iter().find(|&&x| x != 2) {
            return Err(Error::NonPlanar(format!("V - E + F = {x} on a connected piece")));
        }
        Self::realize(&g)
    }
}

fn parse_pd_tokens(text: &str) -> Result<(Vec<[u64; 4]>, Option<usize>)> {
    let mut quads = Vec::new();
    let mut loops = None;
    let s = text.trim();
    let mut rest = s;
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
        if rest.is_empty() {
            break;
        }
        if let Some(r) = rest.strip_prefix('X') {
            let close = r.find(']').ok_or_else(|| Error::syntax(first_word(rest), "unterminated crossing"))?;
            let token = &rest[..close + 2];
            let inner = r[..close]
                .strip_prefix('[')
                .ok_or_else(|| Error::syntax(token, "expected `[`"))?;
            let nums: Vec<&str> = inner.split(',').map(str::trim).collect();
            if nums.len() != 4 {
                return Err(Error::syntax(token, "a crossing needs exactly four arc labels"));
            }
            let mut q = [0u64; 4];
            for (i, n) in nums.iter().enumerate() {
                q[i] = n.parse().map_err(|_| Error::syntax(token, "arc labels must be positive integers"))?;
                if q[i] == 0 {
                    return Err(Error::syntax(token, "arc labels must be positive integers"));
                }
            }
            quads.push(q);
            rest = &r[close + 1..];
        } else if let Some(r) = rest.strip_prefix('L') {
            let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            let token = &rest[..end + 1];
            let k: usize = r[..end].parse().map_err(|_| Error::syntax(token, "expected a loop count"))?;
            if loops.is_some() {
                return Err(Error::syntax(token, "duplicate free-loop count"));
            }
            loops = Some(k);
            rest = &r[end..];
        } else {
            return Err(Error::syntax(first_word(rest), "expected `X[...]` or `L<k>`"));
        }
    }
    Ok((quads, loops))
}

fn first_word(s: &str) -> &str {
    s.split_whitespace().next().unwrap_or(s)
}

/// Orients every arc, then walks the components to produce Gauss code.
/// Under-strands are oriented by the slot convention; components that only
/// pass over are oriented from their smallest arc label to the next one.
fn pd_quads_to_gauss(quads: &[[u64; 4]], free_loops: usize) -> Result<GaussDiagram> {
    let n = quads.len();
    let mut where_: BTreeMap<u64, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, q) in quads.iter().enumerate() {
        for (s, &e) in q.iter().enumerate() {
            where_.entry(e).or_default().push((c, s));
        }
    }
    for (e, darts) in &where_ {
        if darts.len() != 2 {
            return Err(Error::Semantics(format!("arc {e} must occur exactly twice, found {}", darts.len())));
        }
    }
    let other_end = |e: u64, d: (usize, usize)| -> (usize, usize) {
        let ds = &where_[&e];
        if ds[0] == d {
            ds[1]
        } else {
            ds[0]
        }
    };
    // Some(true) = incoming, Some(false) = outgoing
    let mut dir: Vec<[Option<bool>; 4]> = vec![[None; 4]; n];
    let mut queue: VecDeque<((usize, usize), bool)> = VecDeque::new();
    for c in 0..n {
        queue.push_back(((c, 0), true));
        queue.push_back(((c, 2), false));
    }
    let propagate = |dir: &mut Vec<[Option<bool>; 4]>, queue: &mut VecDeque<((usize, usize), bool)>| -> Result<()> {
        while let Some(((c, s), incoming)) = queue.pop_front() {
            match dir[c][s] {
                Some(x) if x == incoming => continue,
                Some(_) => {
                    return Err(Error::InconsistentOrientation(format!(
                        "arc {} at crossing {} is both incoming and outgoing",
                        quads[c][s],
                        c + 1
                    )))
                }
                None => {}
            }
            dir[c][s] = Some(incoming);
            queue.push_back(((c, (s + 2) % 4), !incoming));
            let partner = other_end(quads[c][s], (c, s));
            queue.push_back((partner, !incoming));
        }
        Ok(())
    };
    propagate(&mut dir, &mut queue)?;
    loop {
        let mut unresolved: Option<u64> = None;
        for (c, q) in quads.iter().enumerate() {
            for s in 0..4 {
                if dir[c][s].is_none() && unresolved.map_or(true, |u| q[s] < u) {
                    unresolved = Some(q[s]);
                }
            }
        }
        let Some(m) = unresolved else { break };
        // prefer the crossing where arc m meets arc m+1
        let darts = &where_[&m];
        let pick = darts
            .iter()
            .copied()
            .find(|&(c, s)| quads[c][(s + 2) % 4] == m + 1)
            .unwrap_or(darts[0]);
        queue.push_back((pick, true));
        propagate(&mut dir, &mut queue)?;
    }

    // walk components
    let mut visited = vec![[false; 4]; n];
    let mut circles: Vec<Vec<End>> = Vec::new();
    let mut signs = vec![0i8; n];
    for (c, d) in dir.iter().enumerate() {
        signs[c] = if d[3] == Some(true) { 1 } else { -1 };
    }
    let labels: Vec<u64> = where_.keys().copied().collect();
    for &e in &labels {
        let darts = &where_[&e];
        let start = if dir[darts[0].0][darts[0].1] == Some(false) { darts[0] } else { darts[1] };
        if visited[start.0][start.1] {
            continue;
        }
        let mut circle = Vec::new();
        let mut cur = start; // outgoing dart
        loop {
            visited[cur.0][cur.1] = true;
            let (c, s) = cur;
            visited[c][(s + 2) % 4] = true;
            circle.push(End { arrow: c, head: s % 2 == 0 });
            let arrive = other_end(quads[c][s], cur);
            cur = (arrive.0, (arrive.1 + 2) % 4);
            if cur == start {
                break;
            }
        }
        circles.push(circle);
    }
    circles.extend(std::iter::repeat(Vec::new()).take(free_loops));
    GaussDiagram::new(circles, signs)
}

impl fmt::Debug for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlanarDiagram({:?})", self.render())
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL_PD: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn parse_trefoil() {
        let d = PlanarDiagram::parse(TREFOIL_PD).unwrap();
        assert_eq!(d.num_crossings(), 3);
        assert_eq!(d.writhe().abs(), 3);
        assert_eq!(d.num_components(), 1);
    }

    #[test]
    fn trefoil_pd_matches_gauss_code() {
        let d = PlanarDiagram::parse(TREFOIL_PD).unwrap();
        let g = GaussDiagram::parse("O1+U2+O3+U1+O2+U3+").unwrap();
        let key = d.canonical_key();
        assert!(key == g.canonical_key() || key == g.mirror().canonical_key());
    }

    #[test]
    fn empty_and_loops() {
        let u = PlanarDiagram::parse("").unwrap();
        assert_eq!(u.num_components(), 1);
        assert_eq!(u.num_crossings(), 0);
        assert_eq!(u.render(), "L1");
        assert_eq!(PlanarDiagram::parse("L2").unwrap().num_components(), 2);
        assert!(PlanarDiagram::parse("L0").is_err());
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(PlanarDiagram::parse("X[1,2,3]"), Err(Error::Syntax { .. })));
        assert!(matches!(PlanarDiagram::parse("X[1,2,3,x]"), Err(Error::Syntax { .. })));
        assert!(matches!(PlanarDiagram::parse("Y[1,2,3,4]"), Err(Error::Syntax { .. })));
        assert!(matches!(PlanarDiagram::parse("X[1,1,2,3]"), Err(Error::Semantics(_))));
    }

    #[test]
    fn inconsistent_orientation() {
        // arc 1 leaves both crossings along the under-strand
        assert!(matches!(
            PlanarDiagram::parse("X[2,3,1,4] X[4,3,1,2]"),
            Err(Error::InconsistentOrientation(_))
        ));
    }

    #[test]
    fn nonplanar_pd() {
        // the virtual trefoil, written as if it were planar
        let g = GaussDiagram::parse("O1+U2+U1+O2+").unwrap();
        // out-edge labels: 1 (O1->U2), 2 (U2->U1), 3 (U1->O2), 4 (O2->O1)
        // crossing 1: head at U1 (in 2, out 3), tail at O1 (in 4, out 1), positive
        // crossing 2: head at U2 (in 1, out 2), tail at O2 (in 3, out 4), positive
        assert_eq!(g.num_arrows(), 2);
        assert!(matches!(
            PlanarDiagram::parse("X[2,1,3,4] X[1,4,2,3]"),
            Err(Error::NonPlanar(_))
        ));
    }

    #[test]
    fn render_parse_round_trip() {
        let d = PlanarDiagram::parse(TREFOIL_PD).unwrap();
        let text = d.render();
        assert_eq!(PlanarDiagram::parse(&text).unwrap().render(), text);
        assert_eq!(PlanarDiagram::parse(&text).unwrap(), d.clone());
    }

    #[test]
    fn hopf_link() {
        let h = PlanarDiagram::parse("X[4,1,3,2] X[2,3,1,4]").unwrap();
        assert_eq!(h.num_components(), 2);
        assert_eq!(h.num_crossings(), 2);
        assert_eq!(h.writhe().abs(), 2);
    }
}

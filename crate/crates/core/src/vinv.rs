//! Gauss-diagram invariants of virtual and welded knots and links.
//!
//! Smoothing a one-circle diagram at an arrow `c` turns it into two
//! circles, its halves, and the Gaussian index is `sgn(c)` times their
//! wriggle number. Linking data is indexed by component labels; the
//! `*_unlabeled` forms forget the labeling.

use serde::Serialize;

use crate::diagrams::GaussDiagram;
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Var};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LinkingMatrix {
    pub lk: Vec<Vec<i64>>,
}

impl LinkingMatrix {
    pub fn size(&self) -> usize {
        self.lk.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.lk[i][j]
    }

    /// `lk_ij + lk_ji` for `i < j`.
    pub fn symmetric_part(&self) -> Vec<i64> {
        self.pairs().map(|(i, j)| self.lk[i][j] + self.lk[j][i]).collect()
    }

    /// `lk_ij - lk_ji` for `i < j`.
    pub fn wriggles(&self) -> Vec<i64> {
        self.pairs().map(|(i, j)| self.lk[i][j] - self.lk[j][i]).collect()
    }

    /// The mod-2 reductions `lk_ij + lk_ji` (for `i < j`) followed by the row
    /// sums `sum_j lk_ij`.
    pub fn mod2_invariants(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.symmetric_part().iter().map(|x| x.rem_euclid(2) as u8).collect();
        for row in &self.lk {
            out.push(row.iter().sum::<i64>().rem_euclid(2) as u8);
        }
        out
    }

    /// The matrix with components relabeled: entry `(i, j)` becomes
    /// `(perm[i], perm[j])`.
    pub fn relabeled(&self, perm: &[usize]) -> LinkingMatrix {
        let n = self.size();
        let mut lk = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                lk[perm[i]][perm[j]] = self.lk[i][j];
            }
        }
        LinkingMatrix { lk }
    }

    /// Least value of `f` over all relabelings of the components.
    pub fn unlabeled<T: Ord>(&self, f: impl Fn(&LinkingMatrix) -> T) -> T {
        let mut perm: Vec<usize> = (0..self.size()).collect();
        let mut best = f(self);
        while next_permutation(&mut perm) {
            best = best.min(f(&self.relabeled(&perm)));
        }
        best
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.lk.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("a larger element");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn linking_matrix(g: &GaussDiagram) -> LinkingMatrix {
    let n = g.num_circles();
    let mut lk = vec![vec![0i64; n]; n];
    for (a, [t, h]) in g.positions().into_iter().enumerate() {
        if t.0 != h.0 {
            lk[t.0][h.0] += g.sign(a) as i64;
        }
    }
    LinkingMatrix { lk }
}

pub fn wriggle_number(g: &GaussDiagram, i: usize, j: usize) -> Result<i64> {
    let n = g.num_circles();
    if i >= n || j >= n || i == j {
        return Err(Error::BadComponent(i, j));
    }
    let m = linking_matrix(g);
    Ok(m.lk[i][j] - m.lk[j][i])
}

fn check_arrow(g: &GaussDiagram, c: usize) -> Result<()> {
    g.require_knot()?;
    if c >= g.num_arrows() {
        return Err(Error::UnknownCrossing(c));
    }
    Ok(())
}

/// Signed count over arrows with exactly one endpoint on the arc running
/// from the tail of `c` to its head: `+sgn` when that endpoint is a tail,
/// `-sgn` when it is a head. That arc is the right half at a positive
/// crossing and the left half at a negative one, so the sign of `c` in
/// `sgn(c) W(right, left)` cancels.
pub fn gaussian_index(g: &GaussDiagram, c: usize) -> Result<i64> {
    check_arrow(g, c)?;
    Ok(all_indices(g)[c])
}

/// Smooths at `c` and takes the wriggle number of the two halves.
pub fn gaussian_index_by_smoothing(g: &GaussDiagram, c: usize) -> Result<i64> {
    check_arrow(g, c)?;
    let [t, h] = g.positions()[c];
    let s = g.smooth_oriented(c);
    // the smoothing lists the outer arc first, then the inner one
    let tail_to_head = if t.1 < h.1 { 1 } else { 0 };
    let right = if g.sign(c) > 0 { tail_to_head } else { 1 - tail_to_head };
    let left = 1 - right;
    Ok(g.sign(c) as i64 * wriggle_number(&s, right, left)?)
}

fn all_indices(g: &GaussDiagram) -> Vec<i64> {
    let circle = &g.circles()[0];
    let pos = g.positions();
    let len = circle.len();
    (0..g.num_arrows())
        .map(|c| {
            let [t, h] = pos[c];
            let in_right = |k: usize| (k + len - t.1) % len < (h.1 + len - t.1) % len;
            let mut w = 0i64;
            for (d, [dt, dh]) in pos.iter().enumerate() {
                if d == c {
                    continue;
                }
                match (in_right(dt.1), in_right(dh.1)) {
                    (true, false) => w += g.sign(d) as i64,
                    (false, true) => w -= g.sign(d) as i64,
                    _ => {}
                }
            }
            w
        })
        .collect()
}

pub fn indices(g: &GaussDiagram) -> Result<Vec<i64>> {
    g.require_knot()?;
    Ok(all_indices(g))
}

/// Sum of the signs of crossings with odd index.
pub fn odd_writhe(g: &GaussDiagram) -> Result<i64> {
    let ind = indices(g)?;
    Ok(ind.iter().enumerate().filter(|(_, &i)| i % 2 != 0).map(|(c, _)| g.sign(c) as i64).sum())
}

/// `sum_c sgn(c) (t^ind(c) - 1)`.
pub fn index_polynomial(g: &GaussDiagram) -> Result<LaurentPoly> {
    let ind = indices(g)?;
    let mut out = LaurentPoly::zero();
    for (c, &i) in ind.iter().enumerate() {
        let term = LaurentPoly::var_pow(Var::T, i as i32) - LaurentPoly::one();
        out = out + term.scale(g.sign(c) as i64);
    }
    Ok(out)
}

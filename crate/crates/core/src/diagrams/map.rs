//! The combinatorial map induced by a signed Gauss diagram.
//!
//! At a crossing the counterclockwise order of the four half-edges is fixed
//! by the sign: starting at the incoming under-strand, a positive crossing
//! continues with the outgoing over-strand, a negative one with the incoming
//! over-strand. So the rotation system, and with it the face structure, is
//! forced by the code; planarity reduces to an Euler characteristic check
//! on each connected piece.

use super::gauss::GaussDiagram;

/// Darts are numbered `2 * endpoint` (incoming half-edge) and
/// `2 * endpoint + 1` (outgoing half-edge), where endpoints are numbered
/// consecutively along the circles.
#[derive(Clone, Debug)]
pub struct PlanarMap {
    /// First global endpoint index of each circle.
    pub offsets: Vec<usize>,
    /// Circle lengths.
    pub lens: Vec<usize>,
    circle_of: Vec<usize>,
    pub alpha: Vec<usize>,
    pub sigma: Vec<usize>,
    /// Face cycles; consecutive darts `d`, `sigma(alpha(d))`.
    pub faces: Vec<Vec<usize>>,
    pub face_of: Vec<usize>,
    /// Connected piece of each circle.
    pub piece_of_circle: Vec<usize>,
    pub num_pieces: usize,
}

impl PlanarMap {
    pub fn new(g: &GaussDiagram) -> Self {
        let circles = g.circles();
        let mut offsets = Vec::with_capacity(circles.len());
        let mut lens = Vec::with_capacity(circles.len());
        let mut circle_of = Vec::new();
        let mut total = 0;
        for (ci, c) in circles.iter().enumerate() {
            offsets.push(total);
            lens.push(c.len());
            total += c.len();
            circle_of.extend(std::iter::repeat(ci).take(c.len()));
        }
        let nd = 2 * total;
        let mut alpha = vec![0; nd];
        let mut ends = vec![[0usize; 2]; g.num_arrows()];
        for (ci, c) in circles.iter().enumerate() {
            for (k, e) in c.iter().enumerate() {
                let gi = offsets[ci] + k;
                let next = offsets[ci] + (k + 1) % c.len();
                alpha[2 * gi + 1] = 2 * next;
                alpha[2 * next] = 2 * gi + 1;
                ends[e.arrow][e.head as usize] = gi;
            }
        }
        let mut sigma = vec![0; nd];
        for (a, [t, h]) in ends.iter().enumerate() {
            let quad = if g.sign(a) > 0 {
                [2 * h, 2 * t + 1, 2 * h + 1, 2 * t]
            } else {
                [2 * h, 2 * t, 2 * h + 1, 2 * t + 1]
            };
            for i in 0..4 {
                sigma[quad[i]] = quad[(i + 1) % 4];
            }
        }
        let mut face_of = vec![usize::MAX; nd];
        let mut faces = Vec::new();
        for start in 0..nd {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = faces.len();
                cycle.push(d);
                d = sigma[alpha[d]];
                if d == start {
                    break;
                }
            }
            faces.push(cycle);
        }

        // connected pieces: circles joined by shared arrows
        let mut parent: Vec<usize> = (0..circles.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for [t, h] in g.positions() {
            let (a, b) = (find(&mut parent, t.0), find(&mut parent, h.0));
            parent[a] = b;
        }
        let mut piece_ids = vec![usize::MAX; circles.len()];
        let mut piece_of_circle = vec![0; circles.len()];
        let mut num_pieces = 0;
        for ci in 0..circles.len() {
            let r = find(&mut parent, ci);
            if piece_ids[r] == usize::MAX {
                piece_ids[r] = num_pieces;
                num_pieces += 1;
            }
            piece_of_circle[ci] = piece_ids[r];
        }

        PlanarMap { offsets, lens, circle_of, alpha, sigma, faces, face_of, piece_of_circle, num_pieces }
    }

    pub fn endpoint_of_dart(&self, d: usize) -> usize {
        d / 2
    }

    /// `(circle, index)` of a global endpoint.
    pub fn locate(&self, gi: usize) -> (usize, usize) {
        let ci = self.circle_of[gi];
        (ci, gi - self.offsets[ci])
    }

    /// The gap (edge) a dart lies on, named by the endpoint it leaves from,
    /// and whether a face walk starting at this dart runs along the
    /// orientation.
    pub fn side_of_dart(&self, d: usize) -> (usize, bool) {
        let gi = d / 2;
        if d % 2 == 1 {
            (gi, true)
        } else {
            let (ci, k) = self.locate(gi);
            let prev = self.offsets[ci] + (k + self.lens[ci] - 1) % self.lens[ci];
            (prev, false)
        }
    }

    /// Euler characteristic `V - E + F` for each connected piece that has
    /// crossings; crossingless circles are skipped.
    pub fn euler_characteristics(&self, g: &GaussDiagram) -> Vec<i64> {
        let mut v = vec![0i64; self.num_pieces];
        for [t, _] in g.positions() {
            v[self.piece_of_circle[t.0]] += 1;
        }
        let mut f = vec![0i64; self.num_pieces];
        for face in &self.faces {
            let (ci, _) = self.locate(face[0] / 2);
            f[self.piece_of_circle[ci]] += 1;
        }
        (0..self.num_pieces).filter(|&p| v[p] > 0).map(|p| v[p] - 2 * v[p] + f[p]).collect()
    }

    pub fn is_planar(&self, g: &GaussDiagram) -> bool {
        self.euler_characteristics(g).iter().all(|&x| x == 2)
    }
}

pub fn is_realizable(g: &GaussDiagram) -> bool {
    PlanarMap::new(g).is_planar(g)
}

//! Realization of normal coordinates as explicit normal arcs in each
//! triangle, with tracing of components and the region decomposition used
//! for cutting.
//!
//! Inside triangle `t`, `n[t][k]` parallel corner arcs cut off corner `k`
//! (joining sides `k+1` and `k+2`, index 0 closest to the corner) and
//! `e[t][k]` end segments run from the puncture at corner `k` to side `k`.
//! On side `m` the crossing points are ordered from `V_{m+1}`: first the
//! corner `m+1` arcs, then the end segments, then the corner `m+2` arcs.

use crate::error::{Error, Result};
use crate::surface::{Corner, Side, Surface, UnionFind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Element {
    Arc { tri: usize, corner: usize, index: usize },
    End { tri: usize, corner: usize, index: usize },
}

pub(crate) struct Realization<'a> {
    pub s: &'a Surface,
    /// Weight of each side, indexed by triangle.
    pub w: Vec<[u32; 3]>,
    pub n: Vec<[u32; 3]>,
    pub e: Vec<[u32; 3]>,
    arc_base: Vec<[usize; 3]>,
    pub arc_count: usize,
}

impl<'a> Realization<'a> {
    /// `weights` is indexed by edge; `ends` lists the corners holding an arc end.
    pub fn new(s: &'a Surface, weights: &[u32], ends: &[Corner]) -> Result<Self> {
        if weights.len() != s.num_edges() {
            return Err(Error::NotRealizable("wrong coordinate length".into()));
        }
        let nt = s.num_triangles();
        let mut w = vec![[0u32; 3]; nt];
        for t in 0..nt {
            for m in 0..3 {
                w[t][m] = weights[s.edge_of[t][m] as usize];
            }
        }
        let mut e = vec![[0u32; 3]; nt];
        for c in ends {
            e[c.tri as usize][c.corner as usize] += 1;
        }
        let mut n = vec![[0u32; 3]; nt];
        let mut arc_base = vec![[0usize; 3]; nt];
        let mut next = 0usize;
        for t in 0..nt {
            if e[t].iter().filter(|&&x| x > 0).count() > 1 {
                return Err(Error::NotRealizable("end segments cross".into()));
            }
            for k in 0..3 {
                let (k1, k2) = ((k + 1) % 3, (k + 2) % 3);
                let num = w[t][k1] as i64 + w[t][k2] as i64 - w[t][k] as i64 - e[t][k1] as i64
                    - e[t][k2] as i64
                    + e[t][k] as i64;
                if num < 0 || num % 2 != 0 {
                    return Err(Error::NotRealizable(format!("triangle {t} fails matching")));
                }
                n[t][k] = (num / 2) as u32;
                if e[t][k] > 0 && n[t][k] > 0 {
                    return Err(Error::NotRealizable("end segment crosses a corner arc".into()));
                }
            }
            for k in 0..3 {
                arc_base[t][k] = next;
                next += n[t][k] as usize;
            }
        }
        Ok(Realization {
            s,
            w,
            n,
            e,
            arc_base,
            arc_count: next,
        })
    }

    pub fn arc_id(&self, tri: usize, corner: usize, index: usize) -> usize {
        self.arc_base[tri][corner] + index
    }

    fn element_at(&self, tri: usize, m: usize, p: u32) -> Element {
        let n1 = self.n[tri][(m + 1) % 3];
        let em = self.e[tri][m];
        if p < n1 {
            Element::Arc { tri, corner: (m + 1) % 3, index: p as usize }
        } else if p < n1 + em {
            Element::End { tri, corner: m, index: (p - n1) as usize }
        } else {
            Element::Arc {
                tri,
                corner: (m + 2) % 3,
                index: (self.w[tri][m] - 1 - p) as usize,
            }
        }
    }

    /// Position on side `m` of the endpoint of an arc lying on that side.
    fn arc_position(&self, tri: usize, corner: usize, index: usize, m: usize) -> u32 {
        if m == (corner + 2) % 3 {
            index as u32
        } else {
            self.w[tri][m] - 1 - index as u32
        }
    }

    fn across(&self, tri: usize, m: usize, p: u32) -> (usize, usize, u32) {
        let o = self.s.glue(Side::new(tri, m));
        (o.tri as usize, o.side as usize, self.w[tri][m] - 1 - p)
    }

    /// Follows a closed component starting at an arc; returns exit sides and
    /// the arc ids visited.
    pub fn trace_closed(&self, tri: usize, corner: usize, index: usize) -> (Vec<Side>, Vec<usize>) {
        let start = (tri, corner, index);
        let mut cur = start;
        let mut out_side = (corner + 2) % 3;
        let mut exits = Vec::new();
        let mut ids = Vec::new();
        loop {
            let (t, k, j) = cur;
            ids.push(self.arc_id(t, k, j));
            exits.push(Side::new(t, out_side));
            let p = self.arc_position(t, k, j, out_side);
            let (t2, m2, p2) = self.across(t, out_side, p);
            match self.element_at(t2, m2, p2) {
                Element::Arc { tri, corner, index } => {
                    cur = (tri, corner, index);
                    out_side = if m2 == (corner + 1) % 3 { (corner + 2) % 3 } else { (corner + 1) % 3 };
                }
                Element::End { .. } => unreachable!("closed trace reached an arc end"),
            }
            if cur == start {
                return (exits, ids);
            }
        }
    }

    /// Follows the arc component starting at the end segment at `start`.
    pub fn trace_open(&self, start: Corner) -> (Vec<Side>, Corner, Vec<usize>) {
        let (t0, k0) = (start.tri as usize, start.corner as usize);
        let mut exits = vec![Side::new(t0, k0)];
        let mut ids = Vec::new();
        let mut t = t0;
        let mut m = k0;
        let mut p = self.n[t0][(k0 + 1) % 3];
        loop {
            let (t2, m2, p2) = self.across(t, m, p);
            match self.element_at(t2, m2, p2) {
                Element::End { tri, corner, .. } => {
                    return (exits, Corner::new(tri, corner), ids);
                }
                Element::Arc { tri, corner, index } => {
                    ids.push(self.arc_id(tri, corner, index));
                    let out = if m2 == (corner + 1) % 3 { (corner + 2) % 3 } else { (corner + 1) % 3 };
                    exits.push(Side::new(tri, out));
                    p = self.arc_position(tri, corner, index, out);
                    t = tri;
                    m = out;
                }
            }
        }
    }

    /// All closed components, as (exit sides, arc ids). Requires no arc ends.
    pub fn closed_components(&self) -> Vec<(Vec<Side>, Vec<usize>)> {
        let mut seen = vec![false; self.arc_count];
        let mut out = Vec::new();
        for t in 0..self.s.num_triangles() {
            for k in 0..3 {
                for j in 0..self.n[t][k] as usize {
                    if seen[self.arc_id(t, k, j)] {
                        continue;
                    }
                    let comp = self.trace_closed(t, k, j);
                    for &id in &comp.1 {
                        seen[id] = true;
                    }
                    out.push(comp);
                }
            }
        }
        out
    }
}

/// Region decomposition of the complement of a realized multicurve.
pub(crate) struct Regions {
    central: Vec<usize>,
    corner: Vec<[usize; 3]>,
    strip_base: Vec<[usize; 3]>,
    pub count: usize,
}

impl Regions {
    pub fn new(r: &Realization) -> Self {
        let nt = r.s.num_triangles();
        let mut central = vec![0; nt];
        let mut corner = vec![[0; 3]; nt];
        let mut strip_base = vec![[0; 3]; nt];
        let mut next = 0;
        for t in 0..nt {
            central[t] = next;
            next += 1;
            for k in 0..3 {
                if r.n[t][k] > 0 {
                    corner[t][k] = next;
                    next += 1;
                } else {
                    corner[t][k] = central[t];
                }
                strip_base[t][k] = next;
                next += (r.n[t][k] as usize).saturating_sub(1);
            }
        }
        Regions {
            central,
            corner,
            strip_base,
            count: next,
        }
    }

    fn strip(&self, t: usize, k: usize, j: usize) -> usize {
        self.strip_base[t][k] + j - 1
    }

    /// Region containing segment `q` (0..=w) of side `m` of triangle `t`.
    pub fn at_segment(&self, r: &Realization, t: usize, m: usize, q: u32) -> usize {
        let k1 = (m + 1) % 3;
        let k2 = (m + 2) % 3;
        let n1 = r.n[t][k1];
        if q < n1 {
            if q == 0 {
                self.corner[t][k1]
            } else {
                self.strip(t, k1, q as usize)
            }
        } else if q == n1 {
            self.central[t]
        } else {
            let rr = r.w[t][m] - q;
            if rr == 0 {
                self.corner[t][k2]
            } else {
                self.strip(t, k2, rr as usize)
            }
        }
    }

    pub fn corner_region(&self, t: usize, k: usize) -> usize {
        self.corner[t][k]
    }

    /// Regions on the corner side and the far side of an arc.
    pub fn beside_arc(&self, r: &Realization, t: usize, k: usize, j: usize) -> (usize, usize) {
        let near = if j == 0 { self.corner[t][k] } else { self.strip(t, k, j) };
        let far = if j + 1 == r.n[t][k] as usize {
            self.central[t]
        } else {
            self.strip(t, k, j + 1)
        };
        (near, far)
    }

    /// Region adjacency through side segments: `(region, region, edge)` per gluing.
    pub fn gluings(&self, r: &Realization) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (e, [a, b]) in r.s.edges.iter().enumerate() {
            let (ta, ma) = (a.tri as usize, a.side as usize);
            let (tb, mb) = (b.tri as usize, b.side as usize);
            let w = r.w[ta][ma];
            for q in 0..=w {
                out.push((self.at_segment(r, ta, ma, q), self.at_segment(r, tb, mb, w - q), e));
            }
        }
        out
    }

    pub fn union_find(&self, r: &Realization) -> (UnionFind, Vec<(usize, usize, usize)>) {
        let mut uf = UnionFind::new(self.count);
        let gl = self.gluings(r);
        for &(a, b, _) in &gl {
            uf.union(a, b);
        }
        (uf, gl)
    }
}

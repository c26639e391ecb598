//! Combinatorial model of a compact orientable surface `S_{g,b}`.
//!
//! Each boundary component is collapsed to a puncture and the punctured
//! surface carries a fixed ideal triangulation. Triangle `t` has corners
//! `V0, V1, V2` in counterclockwise order; side `m` is the side opposite
//! `V_m`, running from `V_{m+1}` to `V_{m+2}`. Gluings reverse orientation:
//! side `m` of `t` glued to side `m'` of `t'` identifies `V_{m+1}` with
//! `V'_{m'+2}` and `V_{m+2}` with `V'_{m'+1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Version tag written into serialized surfaces.
pub const SURFACE_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Side {
    pub tri: u32,
    pub side: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Corner {
    pub tri: u32,
    pub corner: u8,
}

impl Side {
    pub fn new(tri: usize, side: usize) -> Self {
        Side {
            tri: tri as u32,
            side: side as u8,
        }
    }
}

impl Corner {
    pub fn new(tri: usize, corner: usize) -> Self {
        Corner {
            tri: tri as u32,
            corner: corner as u8,
        }
    }
}

/// Direction of travel around a puncture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Turn {
    /// Leave a corner `k` through side `k+1`.
    Plus,
    /// Leave a corner `k` through side `k+2`.
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surface {
    pub genus: usize,
    pub boundary_count: usize,
    /// Boundary label at each corner of each triangle.
    pub vertices: Vec<[u32; 3]>,
    /// Side glued to each side of each triangle.
    pub glue: Vec<[Side; 3]>,
    /// Edge index carried by each side.
    pub edge_of: Vec<[u32; 3]>,
    /// The two sides of each edge; `edges[e][0]` is the lexicographically smaller.
    pub edges: Vec<[Side; 2]>,
}

#[derive(Serialize, Deserialize)]
struct SurfaceDocument {
    version: u32,
    #[serde(flatten)]
    surface: Surface,
}

#[derive(Clone, Copy)]
struct EdgeUse {
    edge: usize,
    forward: bool,
}

/// Builds the reference triangulation of `S_{g,b}`.
///
/// The scheme is a fan-triangulated `4g`-gon with the standard gluing word
/// (or a doubled triangle when `g = 0`), followed by stellar subdivisions
/// that insert the remaining punctures.
pub fn build_surface(genus: usize, boundary: usize) -> Result<Surface> {
    let unsupported = |reason| Error::UnsupportedSurface {
        genus,
        boundary,
        reason,
    };
    if boundary == 0 {
        return Err(unsupported("closed surfaces have no ideal triangulation"));
    }
    if 2 * genus + boundary <= 2 {
        return Err(unsupported("Euler characteristic must be negative"));
    }

    let mut tris: Vec<[EdgeUse; 3]> = Vec::new();
    let mut next_edge;
    let base_punctures;
    if genus == 0 {
        let e = |edge, forward| EdgeUse { edge, forward };
        tris.push([e(0, true), e(1, true), e(2, true)]);
        tris.push([e(2, false), e(1, false), e(0, false)]);
        next_edge = 3;
        base_punctures = 3;
    } else {
        // Polygon sides 0..4g carry letters a_i, b_i, a_i^-1, b_i^-1.
        let n = 4 * genus;
        let letter = |j: usize| -> EdgeUse {
            let i = j / 4;
            match j % 4 {
                0 => EdgeUse { edge: 2 * i, forward: true },
                1 => EdgeUse { edge: 2 * i + 1, forward: true },
                2 => EdgeUse { edge: 2 * i, forward: false },
                _ => EdgeUse { edge: 2 * i + 1, forward: false },
            }
        };
        // Diagonal d_j from P_0 to P_j, 2 <= j <= n-2.
        let diag = |j: usize| 2 * genus + (j - 2);
        for j in 1..=n - 2 {
            let first = if j == 1 {
                letter(0)
            } else {
                EdgeUse { edge: diag(j), forward: true }
            };
            let last = if j + 1 == n - 1 {
                letter(n - 1)
            } else {
                EdgeUse { edge: diag(j + 1), forward: false }
            };
            tris.push([first, letter(j), last]);
        }
        next_edge = 2 * genus + (n - 3);
        base_punctures = 1;
    }

    for k in 0..boundary.saturating_sub(base_punctures) {
        let t = k % tris.len();
        let [u0, u1, u2] = tris[t];
        let (fx, fy, fz) = (next_edge, next_edge + 1, next_edge + 2);
        next_edge += 3;
        let e = |edge, forward| EdgeUse { edge, forward };
        tris[t] = [u0, e(fy, true), e(fx, false)];
        tris.push([u1, e(fz, true), e(fy, false)]);
        tris.push([u2, e(fx, true), e(fz, false)]);
    }

    let surface = assemble(genus, boundary, &tris, next_edge)?;
    Ok(surface)
}

fn assemble(genus: usize, boundary: usize, tris: &[[EdgeUse; 3]], edge_count: usize) -> Result<Surface> {
    // Edge-use slot i of a triangle runs from V_i to V_{i+1}: side (i+2) % 3.
    let slot_side = |i: usize| (i + 2) % 3;
    let mut uses: Vec<Vec<(Side, bool)>> = vec![Vec::new(); edge_count];
    for (t, tri) in tris.iter().enumerate() {
        for (i, u) in tri.iter().enumerate() {
            uses[u.edge].push((Side::new(t, slot_side(i)), u.forward));
        }
    }
    let placeholder = Side { tri: u32::MAX, side: 0 };
    let mut glue = vec![[placeholder; 3]; tris.len()];
    let mut edge_of = vec![[0u32; 3]; tris.len()];
    let mut pairs: Vec<[Side; 2]> = Vec::with_capacity(edge_count);
    for u in &uses {
        if u.len() != 2 || u[0].1 == u[1].1 {
            return Err(Error::UnsupportedSurface {
                genus,
                boundary,
                reason: "inconsistent gluing",
            });
        }
        let (a, b) = (u[0].0, u[1].0);
        pairs.push(if a < b { [a, b] } else { [b, a] });
    }
    // Renumber edges in order of their smallest side for a stable layout.
    pairs.sort();
    for (e, [a, b]) in pairs.iter().enumerate() {
        glue[a.tri as usize][a.side as usize] = *b;
        glue[b.tri as usize][b.side as usize] = *a;
        edge_of[a.tri as usize][a.side as usize] = e as u32;
        edge_of[b.tri as usize][b.side as usize] = e as u32;
    }

    // Identify corners across gluings.
    let n = tris.len() * 3;
    let mut uf = UnionFind::new(n);
    for t in 0..tris.len() {
        for m in 0..3 {
            let o = glue[t][m];
            let (t2, m2) = (o.tri as usize, o.side as usize);
            uf.union(3 * t + (m + 1) % 3, 3 * t2 + (m2 + 2) % 3);
            uf.union(3 * t + (m + 2) % 3, 3 * t2 + (m2 + 1) % 3);
        }
    }
    let mut label_of_root = vec![u32::MAX; n];
    let mut next_label = 0u32;
    let mut vertices = vec![[0u32; 3]; tris.len()];
    for t in 0..tris.len() {
        for k in 0..3 {
            let r = uf.find(3 * t + k);
            if label_of_root[r] == u32::MAX {
                label_of_root[r] = next_label;
                next_label += 1;
            }
            vertices[t][k] = label_of_root[r];
        }
    }
    let surface = Surface {
        genus,
        boundary_count: boundary,
        vertices,
        glue,
        edge_of,
        edges: pairs,
    };
    if next_label as usize != boundary || surface.euler_characteristic() != 2 - 2 * genus as i64 - boundary as i64 {
        return Err(Error::UnsupportedSurface {
            genus,
            boundary,
            reason: "triangulation has the wrong topology",
        });
    }
    Ok(surface)
}

impl Surface {
    pub fn num_triangles(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// χ of the compact surface: `V - E + T` of the closed-up triangulation
    /// minus one per puncture.
    pub fn euler_characteristic(&self) -> i64 {
        self.num_triangles() as i64 - self.num_edges() as i64
    }

    pub fn glue(&self, s: Side) -> Side {
        self.glue[s.tri as usize][s.side as usize]
    }

    pub fn edge(&self, s: Side) -> usize {
        self.edge_of[s.tri as usize][s.side as usize] as usize
    }

    pub fn label(&self, c: Corner) -> u32 {
        self.vertices[c.tri as usize][c.corner as usize]
    }

    /// Labels at the two ends of an edge.
    pub fn edge_labels(&self, e: usize) -> [u32; 2] {
        let s = self.edges[e][0];
        let t = s.tri as usize;
        let m = s.side as usize;
        [self.vertices[t][(m + 1) % 3], self.vertices[t][(m + 2) % 3]]
    }

    /// Moves from a corner to the next corner of the same puncture,
    /// returning the side crossed and the corner reached.
    pub fn rotate(&self, c: Corner, turn: Turn) -> (Side, Corner) {
        let k = c.corner as usize;
        let exit = match turn {
            Turn::Plus => Side::new(c.tri as usize, (k + 1) % 3),
            Turn::Minus => Side::new(c.tri as usize, (k + 2) % 3),
        };
        let o = self.glue(exit);
        let m2 = o.side as usize;
        let k2 = match turn {
            Turn::Plus => (m2 + 1) % 3,
            Turn::Minus => (m2 + 2) % 3,
        };
        (exit, Corner::new(o.tri as usize, k2))
    }

    /// Corners of one puncture in `Turn::Plus` order, starting at `start`.
    pub fn corner_cycle(&self, start: Corner) -> Vec<Corner> {
        let mut out = vec![start];
        let mut c = start;
        loop {
            c = self.rotate(c, Turn::Plus).1;
            if c == start {
                return out;
            }
            out.push(c);
        }
    }

    pub fn complexity(&self) -> i64 {
        complexity(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SurfaceDocument {
            version: SURFACE_FORMAT_VERSION,
            surface: self.clone(),
        })
        .expect("surface serializes")
    }

    pub fn from_json(s: &str) -> Result<Surface> {
        let doc: SurfaceDocument =
            serde_json::from_str(s).map_err(|e| Error::Config(format!("surface json: {e}")))?;
        if doc.version != SURFACE_FORMAT_VERSION {
            return Err(Error::Config(format!("unsupported surface version {}", doc.version)));
        }
        Ok(doc.surface)
    }
}

/// `3g + b - 4`.
pub fn complexity(s: &Surface) -> i64 {
    3 * s.genus as i64 + s.boundary_count as i64 - 4
}

/// Arc complexes are studied for `b >= 3`, `S != S_{0,4}` and positive complexity.
pub fn admissible_for_arcs(s: &Surface) -> bool {
    s.boundary_count >= 3 && !(s.genus == 0 && s.boundary_count == 4) && complexity(s) > 0
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

//! Cutting the surface along a realized system of disjoint curves.
//!
//! The normal realization of the system splits every triangle into
//! polygonal regions; gluing regions across side segments and taking
//! connected components gives the pieces. Every region is a disk and every
//! segment gluing an interval, so `χ(piece) = #regions − #gluings`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::classes::{Class, CurveClass, Tracked};
use crate::error::{Error, Result};
use crate::normal::{Realization, Regions};
use crate::surface::Surface;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Piece {
    pub genus: u32,
    /// Boundary circles of the piece: original boundaries plus cut sides.
    pub boundary_circles: u32,
    pub original_boundaries: BTreeSet<u32>,
    /// Index into the cut system of each cut circle bounding the piece; a
    /// curve with the piece on both sides appears twice.
    pub cut_circles: Vec<usize>,
    pub euler: i64,
}

impl Piece {
    pub fn topo_type(&self) -> (u32, u32) {
        (self.genus, self.boundary_circles)
    }

    /// A disk, or an annulus between one cut circle and one original boundary.
    pub fn is_disk_or_peripheral(&self) -> bool {
        self.euler == 1
            || (self.euler == 0 && self.original_boundaries.len() == 1 && self.cut_circles.len() == 1)
    }
}

/// Full result of a cut: pieces plus, per input curve, the pieces on its two sides.
#[derive(Clone, Debug)]
pub struct Cut {
    pub pieces: Vec<Piece>,
    pub sides: Vec<[usize; 2]>,
}

pub fn cut_along(s: &Surface, system: &[CurveClass]) -> Result<Vec<Piece>> {
    Ok(cut_detailed(s, system)?.pieces)
}

pub fn cut_detailed(s: &Surface, system: &[CurveClass]) -> Result<Cut> {
    let tracked: Vec<Tracked> = system.iter().map(|c| Tracked::new(s, Class::Curve(c.clone()))).collect();
    for i in 0..tracked.len() {
        for j in i + 1..tracked.len() {
            if tracked[i].intersection(s, &tracked[j]) > 0 {
                return Err(Error::Crossing);
            }
        }
    }
    cut_unchecked(s, system)
}

/// Cut without the pairwise disjointness check; the caller guarantees it.
pub(crate) fn cut_unchecked(s: &Surface, system: &[CurveClass]) -> Result<Cut> {
    let ne = s.num_edges();
    let mut total = vec![0u32; ne];
    for c in system {
        if c.coords.len() != ne {
            return Err(Error::NotRealizable("wrong coordinate length".into()));
        }
        for e in 0..ne {
            total[e] += c.coords[e] as u32;
        }
    }
    let r = Realization::new(s, &total, &[])?;
    let comps = r.closed_components();
    if comps.len() != system.len() {
        return Err(Error::Crossing);
    }
    // Match realized components to input curves by coordinates.
    let mut owner: Vec<Option<usize>> = vec![None; comps.len()];
    let mut used = vec![false; system.len()];
    for (ci, (exits, _)) in comps.iter().enumerate() {
        let mut w = vec![0i32; ne];
        for x in exits {
            w[s.edge(*x)] += 1;
        }
        let idx = (0..system.len()).find(|&i| !used[i] && system[i].coords == w);
        let Some(i) = idx else {
            return Err(Error::Crossing);
        };
        used[i] = true;
        owner[ci] = Some(i);
    }

    let regions = Regions::new(&r);
    let (mut uf, gluings) = regions.union_find(&r);
    let mut root_index = std::collections::HashMap::new();
    let mut comp_of = vec![0usize; regions.count];
    for x in 0..regions.count {
        let root = uf.find(x);
        let n = root_index.len();
        comp_of[x] = *root_index.entry(root).or_insert(n);
    }
    let np = root_index.len();
    let mut reg_count = vec![0i64; np];
    for x in 0..regions.count {
        reg_count[comp_of[x]] += 1;
    }
    let mut glue_count = vec![0i64; np];
    for &(a, _, _) in &gluings {
        glue_count[comp_of[a]] += 1;
    }
    let mut labels = vec![BTreeSet::new(); np];
    for t in 0..s.num_triangles() {
        for k in 0..3 {
            let reg = regions.corner_region(t, k);
            labels[comp_of[reg]].insert(s.vertices[t][k]);
        }
    }
    let mut circles: Vec<Vec<usize>> = vec![Vec::new(); np];
    let mut sides_raw = vec![[0usize; 2]; system.len()];
    for (ci, (_, ids)) in comps.iter().enumerate() {
        let i = owner[ci].unwrap();
        let (t, k, j) = locate_arc(&r, ids[0]);
        let (near, far) = regions.beside_arc(&r, t, k, j);
        let (a, b) = (comp_of[near], comp_of[far]);
        circles[a].push(i);
        circles[b].push(i);
        sides_raw[i] = [a, b];
    }
    let mut raw: Vec<(Piece, usize)> = (0..np)
        .map(|p| {
            circles[p].sort();
            let euler = reg_count[p] - glue_count[p];
            let bc = (labels[p].len() + circles[p].len()) as i64;
            let genus = (2 - euler - bc) / 2;
            (
                Piece {
                    genus: genus as u32,
                    boundary_circles: bc as u32,
                    original_boundaries: labels[p].clone(),
                    cut_circles: circles[p].clone(),
                    euler,
                },
                p,
            )
        })
        .collect();
    raw.sort();
    let mut new_index = vec![0; np];
    for (i, (_, old)) in raw.iter().enumerate() {
        new_index[*old] = i;
    }
    let sides = sides_raw.iter().map(|[a, b]| [new_index[*a], new_index[*b]]).collect();
    Ok(Cut {
        pieces: raw.into_iter().map(|(p, _)| p).collect(),
        sides,
    })
}

fn locate_arc(r: &Realization, id: usize) -> (usize, usize, usize) {
    for t in 0..r.s.num_triangles() {
        for k in 0..3 {
            let base = r.arc_id(t, k, 0);
            if id >= base && id < base + r.n[t][k] as usize {
                return (t, k, id - base);
            }
        }
    }
    unreachable!("arc id out of range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::build_surface;

    #[test]
    fn empty_cut_is_the_surface() {
        for (g, b) in [(0, 5), (1, 3), (0, 6), (2, 1)] {
            let s = build_surface(g, b).unwrap();
            let pieces = cut_along(&s, &[]).unwrap();
            assert_eq!(pieces.len(), 1);
            assert_eq!(pieces[0].genus as usize, g);
            assert_eq!(pieces[0].boundary_circles as usize, b);
            assert_eq!(pieces[0].euler, s.euler_characteristic());
        }
    }
}

//! Exhaustive enumeration of essential curve and arc classes by norm.
//!
//! Coordinate vectors are generated edge by edge with triangle-inequality
//! pruning; every candidate is realized, traced and kept when it gives a
//! single essential component. Work is split on the first coordinate and
//! the merged output is sorted, so results do not depend on scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::{curve_from_coords, ArcClass, CurveClass};
use crate::normal::Realization;
use crate::surface::{Corner, Surface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Curve,
    Arc,
}

struct Lattice<'a> {
    s: &'a Surface,
    bound: u32,
    /// Slack allowed in the triangle inequality (0 for curves, 2 for arcs).
    slack: u32,
    /// Triangles whose last edge (in assignment order) is each edge.
    closes: Vec<Vec<usize>>,
}

impl<'a> Lattice<'a> {
    fn new(s: &'a Surface, bound: u32, slack: u32) -> Self {
        let mut closes = vec![Vec::new(); s.num_edges()];
        for t in 0..s.num_triangles() {
            let last = *s.edge_of[t].iter().max().unwrap() as usize;
            closes[last].push(t);
        }
        Lattice { s, bound, slack, closes }
    }

    fn triangle_ok(&self, w: &[u32], t: usize) -> bool {
        let x: Vec<u32> = (0..3).map(|m| w[self.s.edge_of[t][m] as usize]).collect();
        (0..3).all(|m| x[m] <= x[(m + 1) % 3] + x[(m + 2) % 3] + self.slack)
    }

    fn walk(&self, w: &mut Vec<u32>, used: u32, out: &mut Vec<Vec<u32>>) {
        let e = w.len();
        if e == self.s.num_edges() {
            if used > 0 {
                out.push(w.clone());
            }
            return;
        }
        for v in 0..=(self.bound - used) {
            w.push(v);
            if self.closes[e].iter().all(|&t| self.triangle_ok(w, t)) {
                self.walk(w, used + v, out);
            }
            w.pop();
        }
    }

    fn vectors(&self) -> Vec<Vec<u32>> {
        (0..=self.bound)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut out = Vec::new();
                let mut w = vec![first];
                if self.closes[0].iter().all(|&t| self.triangle_ok(&w, t)) {
                    self.walk(&mut w, first, &mut out);
                }
                out
            })
            .collect()
    }
}

pub fn enumerate_curves(s: &Surface, norm_bound: u32) -> Vec<CurveClass> {
    if norm_bound == 0 {
        return Vec::new();
    }
    let lat = Lattice::new(s, norm_bound, 0);
    let mut out: Vec<CurveClass> = lat
        .vectors()
        .into_par_iter()
        .filter(|w| {
            (0..s.num_triangles()).all(|t| (0..3).map(|m| w[s.edge_of[t][m] as usize]).sum::<u32>() % 2 == 0)
        })
        .filter_map(|w| {
            let coords: Vec<i32> = w.iter().map(|&x| x as i32).collect();
            curve_from_coords(s, &coords).ok()
        })
        .collect();
    out.sort();
    out
}

pub fn enumerate_arcs(s: &Surface, norm_bound: u32) -> Vec<ArcClass> {
    if norm_bound == 0 {
        return Vec::new();
    }
    let lat = Lattice::new(s, norm_bound, 2);
    let mut out: Vec<ArcClass> = lat
        .vectors()
        .into_par_iter()
        .flat_map_iter(|w| arcs_with_weights(s, &w))
        .collect();
    out.extend((0..s.num_edges()).map(|e| ArcClass::edge(s, e)));
    out.sort();
    out
}

/// All arcs whose normal coordinates are exactly `w`.
fn arcs_with_weights(s: &Surface, w: &[u32]) -> Vec<ArcClass> {
    let nt = s.num_triangles();
    let side = |t: usize, m: usize| w[s.edge_of[t][m] as usize];
    let perim = |t: usize| (0..3).map(|m| side(t, m)).sum::<u32>();
    let odd: Vec<usize> = (0..nt).filter(|&t| perim(t) % 2 == 1).collect();
    // Corner `k` of `t` can hold `e` ends only if no corner arc cuts it off.
    let end_corners = |t: usize, e: u32| -> Vec<Corner> {
        (0..3)
            .filter(|&k| side(t, k) == side(t, (k + 1) % 3) + side(t, (k + 2) % 3) + e)
            .map(|k| Corner::new(t, k))
            .collect()
    };
    let mut candidates: Vec<[Corner; 2]> = Vec::new();
    match odd.len() {
        2 => {
            for a in end_corners(odd[0], 1) {
                for b in end_corners(odd[1], 1) {
                    candidates.push([a, b]);
                }
            }
        }
        0 => {
            for t in 0..nt {
                for c in end_corners(t, 2) {
                    candidates.push([c, c]);
                }
            }
        }
        _ => {}
    }
    let mut out = Vec::new();
    for ends in candidates {
        let Ok(r) = Realization::new(s, w, &ends) else {
            continue;
        };
        let (_, end, ids) = r.trace_open(ends[0]);
        if end == ends[1] && ids.len() == r.arc_count {
            out.push(ArcClass {
                coords: w.iter().map(|&x| x as i32).collect(),
                ends: Some(ends),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::build_surface;

    #[test]
    fn empty_at_zero_and_monotone() {
        let s = build_surface(0, 5).unwrap();
        assert!(enumerate_curves(&s, 0).is_empty());
        let a = enumerate_curves(&s, 5);
        let b = enumerate_curves(&s, 6);
        assert!(!a.is_empty());
        assert!(a.iter().all(|c| b.binary_search(c).is_ok()));
        let a = enumerate_arcs(&s, 2);
        let b = enumerate_arcs(&s, 3);
        assert!(a.iter().all(|c| b.binary_search(c).is_ok()));
    }
}

//! Independent reference computations used to cross-check the library.
//!
//! Curves and arcs are drawn as polylines: every crossing with an edge gets
//! a point on that edge (in an arbitrary, seeded order) and consecutive
//! points are joined by straight chords inside each triangle. Crossings of
//! two polylines are grouped by the pair of lifts to the universal cover
//! they come from; crossings of one group cancel in pairs through bigons,
//! so the geometric intersection number is the number of groups of odd
//! size. Lifts are compared by walking the dual tree.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use curvecx::path::RawPath;
use curvecx::surface::{Corner, Side, Surface};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    Side(usize),
    Corner(usize),
}

#[derive(Clone, Debug)]
struct Poly {
    closed: bool,
    /// Triangle, entry and exit of every passage.
    passages: Vec<(usize, End, End)>,
    /// Exit side of every passage (None for the final passage of an arc).
    exits: Vec<Option<Side>>,
}

fn glue(s: &Surface, x: Side) -> Side {
    s.glue[x.tri as usize][x.side as usize]
}

fn poly(s: &Surface, p: &RawPath) -> Poly {
    match p {
        RawPath::Closed { exits } => {
            let n = exits.len();
            let passages = (0..n)
                .map(|i| {
                    let prev = exits[(i + n - 1) % n];
                    (
                        exits[i].tri as usize,
                        End::Side(glue(s, prev).side as usize),
                        End::Side(exits[i].side as usize),
                    )
                })
                .collect();
            Poly {
                closed: true,
                passages,
                exits: exits.iter().map(|&e| Some(e)).collect(),
            }
        }
        RawPath::Open { start, exits, end } => {
            let mut passages = Vec::new();
            let mut entry = End::Corner(start.corner as usize);
            for e in exits {
                passages.push((e.tri as usize, entry, End::Side(e.side as usize)));
                entry = End::Side(glue(s, *e).side as usize);
            }
            passages.push((end.tri as usize, entry, End::Corner(end.corner as usize)));
            let mut ex: Vec<Option<Side>> = exits.iter().map(|&e| Some(e)).collect();
            ex.push(None);
            Poly {
                closed: false,
                passages,
                exits: ex,
            }
        }
    }
}

/// Sides crossed walking `d` passages along the polyline from passage `i`.
fn walk(s: &Surface, p: &Poly, i: usize, d: isize) -> Option<Vec<Side>> {
    let n = p.passages.len() as isize;
    let idx = |k: isize| -> Option<usize> {
        if p.closed {
            Some(k.rem_euclid(n) as usize)
        } else if k >= 0 && k < n {
            Some(k as usize)
        } else {
            None
        }
    };
    let mut out = Vec::new();
    let i = i as isize;
    if d >= 0 {
        for k in i..i + d {
            out.push(p.exits[idx(k)?]?);
        }
        idx(i + d)?;
    } else {
        for k in (i + d..i).rev() {
            out.push(glue(s, p.exits[idx(k)?]?));
        }
    }
    Some(out)
}

fn reduces_to_empty(s: &Surface, word: &[Side]) -> bool {
    let mut st: Vec<Side> = Vec::new();
    for &x in word {
        if st.last().is_some_and(|&t| glue(s, t) == x) {
            st.pop();
        } else {
            st.push(x);
        }
    }
    st.is_empty()
}

/// Do walking `d` steps on `a` from `i` and `e` steps on `b` from `j` end in
/// the same lifted triangle?
fn same_target(s: &Surface, a: &Poly, i: usize, d: isize, b: &Poly, j: usize, e: isize) -> bool {
    let (Some(wa), Some(wb)) = (walk(s, a, i, d), walk(s, b, j, e)) else {
        return false;
    };
    let mut word = wa;
    word.extend(wb.iter().rev().map(|&x| glue(s, x)));
    reduces_to_empty(s, &word)
}

fn offsets(p: &Poly, from: usize, to: usize, reach: isize) -> Vec<isize> {
    let n = p.passages.len() as isize;
    let base = to as isize - from as isize;
    if !p.closed {
        return vec![base];
    }
    (-reach..=reach).filter(|d| (d - base).rem_euclid(n) == 0).collect()
}

/// Same pair of lifts through crossing (i, j) and crossing (i2, j2)?
fn same_lift_pair(s: &Surface, a: &Poly, b: &Poly, x: (usize, usize), y: (usize, usize)) -> bool {
    let reach = 2 * (a.passages.len() + b.passages.len()) as isize + 4;
    for d in offsets(a, x.0, y.0, reach) {
        for e in offsets(b, x.1, y.1, reach) {
            if d.abs() == e.abs() && same_target(s, a, x.0, d, b, x.1, e) {
                return true;
            }
        }
    }
    false
}

/// Boundary coordinate of a chord end inside a triangle, counterclockwise
/// from `V0`; side points are ordered by their rank along the side.
fn boundary_coord(end: End, rank: usize) -> u64 {
    const BIG: u64 = 1 << 20;
    match end {
        End::Corner(k) => 2 * k as u64 * BIG,
        End::Side(m) => ((2 * m as u64 + 3) % 6) * BIG + 1 + rank as u64,
    }
}

fn interleave(a: (u64, u64), b: (u64, u64)) -> bool {
    if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
        return false;
    }
    let inside = |x: u64| {
        let (lo, hi) = (a.0.min(a.1), a.0.max(a.1));
        x > lo && x < hi
    };
    inside(b.0) != inside(b.1)
}

/// Chord endpoints of every passage of every polyline, with points on each
/// edge placed in a seeded random order.
fn chords(s: &Surface, polys: &[&Poly], seed: u64) -> Vec<Vec<(u64, u64)>> {
    // Points on edge e: (poly, passage whose exit crosses e).
    let mut on_edge: Vec<Vec<(usize, usize)>> = vec![Vec::new(); s.edges.len()];
    for (pi, p) in polys.iter().enumerate() {
        for (k, ex) in p.exits.iter().enumerate() {
            if let Some(x) = ex {
                on_edge[s.edge_of[x.tri as usize][x.side as usize] as usize].push((pi, k));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Rank of each point measured from V_{m+1} of the canonical side edges[e][0].
    let mut rank: HashMap<(usize, usize), usize> = HashMap::new();
    for pts in on_edge.iter_mut() {
        pts.shuffle(&mut rng);
        for (r, &pt) in pts.iter().enumerate() {
            rank.insert(pt, r);
        }
    }
    let side_rank = |x: Side, pt: (usize, usize)| -> usize {
        let e = s.edge_of[x.tri as usize][x.side as usize] as usize;
        let r = rank[&pt];
        if s.edges[e][0] == x {
            r
        } else {
            on_edge[e].len() - 1 - r
        }
    };
    polys
        .iter()
        .enumerate()
        .map(|(pi, p)| {
            let n = p.passages.len();
            (0..n)
                .map(|k| {
                    let (_, entry, exit) = p.passages[k];
                    let c_in = match entry {
                        End::Corner(_) => boundary_coord(entry, 0),
                        End::Side(_) => {
                            let prev = if p.closed { (k + n - 1) % n } else { k - 1 };
                            let x = glue(s, p.exits[prev].unwrap());
                            boundary_coord(entry, side_rank(x, (pi, prev)))
                        }
                    };
                    let c_out = match exit {
                        End::Corner(_) => boundary_coord(exit, 0),
                        End::Side(_) => boundary_coord(exit, side_rank(p.exits[k].unwrap(), (pi, k))),
                    };
                    (c_in, c_out)
                })
                .collect()
        })
        .collect()
}

/// Ends of an open polyline as (offset from passage `i`, corner).
fn ends_from(p: &Poly, i: usize) -> Vec<(isize, End)> {
    if p.closed {
        return Vec::new();
    }
    let n = p.passages.len();
    vec![
        (-(i as isize), p.passages[0].1),
        ((n - 1 - i) as isize, p.passages[n - 1].2),
    ]
}

/// Do the two lifts through crossing `x` end at the same puncture? Reduced
/// arcs reach a shared puncture through the same lifted corner.
fn share_an_end(s: &Surface, a: &Poly, b: &Poly, x: (usize, usize)) -> bool {
    for (d, ca) in ends_from(a, x.0) {
        for (e, cb) in ends_from(b, x.1) {
            let ta = a.passages[(x.0 as isize + d) as usize].0;
            let tb = b.passages[(x.1 as isize + e) as usize].0;
            if ta == tb && ca == cb && same_target(s, a, x.0, d, b, x.1, e) {
                return true;
            }
        }
    }
    false
}

fn odd_groups(s: &Surface, a: &Poly, b: &Poly, crossings: &[(usize, usize)], symmetric: bool) -> u32 {
    let mut groups: Vec<Vec<(usize, usize)>> = Vec::new();
    for &x in crossings {
        let found = groups.iter_mut().find(|g| {
            let y = g[0];
            same_lift_pair(s, a, b, x, y) || (symmetric && same_lift_pair(s, a, b, x, (y.1, y.0)))
        });
        match found {
            Some(g) => g.push(x),
            None => groups.push(vec![x]),
        }
    }
    groups
        .iter()
        .filter(|g| g.len() % 2 == 1 && !share_an_end(s, a, b, g[0]))
        .count() as u32
}

/// Geometric intersection number of two distinct classes given as paths
/// without backtracking.
pub fn intersection(s: &Surface, x: &RawPath, y: &RawPath, seed: u64) -> u32 {
    let (a, b) = (poly(s, x), poly(s, y));
    let ch = chords(s, &[&a, &b], seed);
    let mut crossings = Vec::new();
    for i in 0..a.passages.len() {
        for j in 0..b.passages.len() {
            if a.passages[i].0 == b.passages[j].0 && interleave(ch[0][i], ch[1][j]) {
                crossings.push((i, j));
            }
        }
    }
    odd_groups(s, &a, &b, &crossings, false)
}

/// Self-intersection number of a path without backtracking.
pub fn self_intersection(s: &Surface, x: &RawPath, seed: u64) -> u32 {
    let a = poly(s, x);
    let ch = chords(s, &[&a], seed);
    let mut crossings = Vec::new();
    for i in 0..a.passages.len() {
        for j in i + 1..a.passages.len() {
            if a.passages[i].0 == a.passages[j].0 && interleave(ch[0][i], ch[0][j]) {
                crossings.push((i, j));
            }
        }
    }
    odd_groups(s, &a, &a, &crossings, true)
}

fn reversed_cycle(s: &Surface, w: &[Side]) -> Vec<Side> {
    w.iter().rev().map(|&x| glue(s, x)).collect()
}

fn min_rotation(w: &[Side]) -> Vec<Side> {
    (0..w.len())
        .map(|r| w[r..].iter().chain(&w[..r]).copied().collect::<Vec<_>>())
        .min()
        .unwrap()
}

fn primitive(w: &[Side]) -> bool {
    let n = w.len();
    !(1..n).any(|p| n % p == 0 && (0..n).all(|i| w[i] == w[(i + p) % n]))
}

fn peripheral_words(s: &Surface) -> BTreeSet<Vec<Side>> {
    let mut out = BTreeSet::new();
    for t in 0..s.vertices.len() {
        for k in 0..3 {
            let start = Corner::new(t, k);
            let mut c = start;
            let mut w = Vec::new();
            loop {
                // Counterclockwise around the corner: leave through side k+1.
                let x = Side::new(c.tri as usize, (c.corner as usize + 1) % 3);
                let o = glue(s, x);
                w.push(x);
                c = Corner::new(o.tri as usize, (o.side as usize + 1) % 3);
                if c == start {
                    break;
                }
            }
            out.insert(min_rotation(&w));
            out.insert(min_rotation(&reversed_cycle(s, &w)));
        }
    }
    out
}

/// Closed walks without backtracking (cyclically) of length exactly `len`
/// starting at each side, as exit words.
fn closed_walks(s: &Surface, len: usize) -> Vec<Vec<Side>> {
    let mut out = Vec::new();
    let mut w: Vec<Side> = Vec::new();
    fn rec(s: &Surface, len: usize, w: &mut Vec<Side>, out: &mut Vec<Vec<Side>>) {
        if w.len() == len {
            let first = w[0];
            let last = *w.last().unwrap();
            let back = glue(s, last);
            if back.tri == first.tri && back.side != first.side {
                out.push(w.clone());
            }
            return;
        }
        let last = *w.last().unwrap();
        let into = glue(s, last);
        for m in 0..3u8 {
            if m != into.side {
                w.push(Side { tri: into.tri, side: m });
                rec(s, len, w, out);
                w.pop();
            }
        }
    }
    for t in 0..s.vertices.len() {
        for m in 0..3 {
            w.push(Side::new(t, m));
            rec(s, len, &mut w, &mut out);
            w.pop();
        }
    }
    out
}

/// Essential simple closed curves of each crossing length `1..=n`, found by
/// enumerating closed walks.
pub fn curve_counts(s: &Surface, n: usize) -> Vec<usize> {
    let periph = peripheral_words(s);
    (1..=n)
        .map(|len| {
            let mut classes = BTreeSet::new();
            for w in closed_walks(s, len) {
                if !primitive(&w) {
                    continue;
                }
                let key = min_rotation(&w).min(min_rotation(&reversed_cycle(s, &w)));
                if classes.contains(&key) || periph.contains(&min_rotation(&w)) {
                    continue;
                }
                if self_intersection(s, &RawPath::Closed { exits: w.clone() }, 1) == 0 {
                    classes.insert(key);
                }
            }
            classes.len()
        })
        .collect()
}

/// Essential simple arcs of each crossing length `0..=n` (length 0 being the
/// edges), found by enumerating normal walks between corners.
pub fn arc_counts(s: &Surface, n: usize) -> Vec<usize> {
    let mut counts = vec![0usize; n + 1];
    counts[0] = s.edges.len();
    let mut seen = BTreeSet::new();
    fn rec(
        s: &Surface,
        n: usize,
        start: Corner,
        w: &mut Vec<Side>,
        seen: &mut BTreeSet<(Corner, Vec<Side>, Corner)>,
        counts: &mut Vec<usize>,
    ) {
        let into = glue(s, *w.last().unwrap());
        let end = Corner::new(into.tri as usize, into.side as usize);
        let path = RawPath::Open {
            start,
            exits: w.clone(),
            end,
        };
        let rev = (end, reversed_cycle(s, w), start);
        let key = (start, w.clone(), end).min(rev);
        if !seen.contains(&key) && self_intersection(s, &path, 1) == 0 {
            counts[w.len()] += 1;
            seen.insert(key);
        }
        if w.len() == n {
            return;
        }
        for m in 0..3u8 {
            if m != into.side {
                w.push(Side { tri: into.tri, side: m });
                rec(s, n, start, w, seen, counts);
                w.pop();
            }
        }
    }
    for t in 0..s.vertices.len() {
        for k in 0..3 {
            let start = Corner::new(t, k);
            let mut w = vec![Side::new(t, k)];
            rec(s, n, start, &mut w, &mut seen, &mut counts);
        }
    }
    counts
}

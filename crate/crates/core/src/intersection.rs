//! Geometric intersection numbers from reduced crossing sequences.
//!
//! Two reduced paths interact only along maximal runs of triangles they
//! traverse together. Lifting to the universal cover, a run is an ideal
//! polygon crossed by both lifts, and the lifts cross iff their entry and
//! exit points interleave around that polygon. The polygon boundary meets
//! the first and last triangle of the run in contiguous counterclockwise
//! blocks, so interleaving reduces to comparing ranks inside those blocks.
//! Runs are enumerated once per deck orbit by anchoring them at their first
//! triangle along the first path.

use crate::path::{Passage, Slot, Track};
use crate::surface::{Side, Surface};

/// Counterclockwise rank of a slot among the three boundary slots of a
/// triangle strictly between the endpoints of side `reference`.
fn rank(slot: Slot, reference: u8) -> u8 {
    let k = reference as usize;
    match slot {
        Slot::Side(m) if m as usize == (k + 1) % 3 => 0,
        Slot::Corner(c) if c as usize == k => 1,
        Slot::Side(m) if m as usize == (k + 2) % 3 => 2,
        _ => unreachable!("slot {slot:?} does not lie opposite side {reference}"),
    }
}

fn chords_cross_in_triangle(a: &Passage, b: &Passage) -> bool {
    let (a1, a2) = (a.entry.hexagon_position(), a.exit.hexagon_position());
    let (b1, b2) = (b.entry.hexagon_position(), b.exit.hexagon_position());
    if a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2 {
        return false;
    }
    let between = |x: u8| {
        let span = (a2 + 6 - a1) % 6;
        let off = (x + 6 - a1) % 6;
        off > 0 && off < span
    };
    between(b1) != between(b2)
}

struct View<'a> {
    ps: &'a [Passage],
    closed: bool,
}

impl View<'_> {
    fn get(&self, i: isize) -> Option<Passage> {
        let n = self.ps.len() as isize;
        if self.closed {
            Some(self.ps[i.rem_euclid(n) as usize])
        } else if i >= 0 && i < n {
            Some(self.ps[i as usize])
        } else {
            None
        }
    }
}

/// A crossing between two tracks: the run starts at passage `i` of the
/// first track and passage `j` of the second, which runs along it forward
/// or backward for `len` shared sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingRun {
    pub i: usize,
    pub j: usize,
    pub forward: bool,
    pub len: usize,
}

/// Number of linked runs between two passage sequences.
pub(crate) fn linked_runs(a: &[Passage], a_closed: bool, b: &[Passage], b_closed: bool) -> u32 {
    let mut count = 0;
    for_each_crossing(a, a_closed, b, b_closed, |_| count += 1);
    count
}

pub(crate) fn crossing_runs(a: &[Passage], a_closed: bool, b: &[Passage], b_closed: bool) -> Vec<CrossingRun> {
    let mut out = Vec::new();
    for_each_crossing(a, a_closed, b, b_closed, |r| out.push(r));
    out
}

fn for_each_crossing(a: &[Passage], a_closed: bool, b: &[Passage], b_closed: bool, mut f: impl FnMut(CrossingRun)) {
    let av = View { ps: a, closed: a_closed };
    let bv = View { ps: b, closed: b_closed };
    let cap = (a.len() + b.len() + 2) as isize;
    for (i, pa) in a.iter().enumerate() {
        for (j, pb) in b.iter().enumerate() {
            if pa.tri != pb.tri {
                continue;
            }
            let shares = |x: Slot, y: Slot| x.side().is_some() && x == y;
            let forward = if shares(pa.exit, pb.exit) || shares(pa.entry, pb.entry) {
                Some(true)
            } else if shares(pa.exit, pb.entry) || shares(pa.entry, pb.exit) {
                Some(false)
            } else {
                None
            };
            let Some(forward) = forward else {
                if chords_cross_in_triangle(pa, pb) {
                    f(CrossingRun { i, j, forward: true, len: 0 });
                }
                continue;
            };
            let (i, j) = (i as isize, j as isize);
            let bo = |d: isize| -> Option<Passage> {
                if forward {
                    bv.get(j + d)
                } else {
                    bv.get(j - d).map(Passage::reversed)
                }
            };
            let b0 = bo(0).unwrap();
            if shares(pa.entry, b0.entry) {
                continue;
            }
            let mut d = 0isize;
            let mut identical = false;
            loop {
                let (x, y) = (av.get(i + d).unwrap(), bo(d).unwrap());
                if !shares(x.exit, y.exit) {
                    break;
                }
                d += 1;
                if d > cap {
                    identical = true;
                    break;
                }
            }
            if identical || d == 0 {
                continue;
            }
            let s1 = pa.exit.side().unwrap();
            let (ra_s, rb_s) = (rank(pa.entry, s1), rank(b0.entry, s1));
            let (ae, be) = (av.get(i + d).unwrap(), bo(d).unwrap());
            let s_last = ae.entry.side().unwrap();
            let (ra_e, rb_e) = (rank(ae.exit, s_last), rank(be.exit, s_last));
            if ra_s == rb_s || ra_e == rb_e {
                continue;
            }
            if (ra_s < rb_s) == (ra_e < rb_e) {
                f(CrossingRun {
                    i: i as usize,
                    j: j as usize,
                    forward,
                    len: d as usize,
                });
            }
        }
    }
}

fn crossings_with_edge(s: &Surface, e: usize, t: &Track) -> u32 {
    t.passages()
        .iter()
        .filter(|p| matches!(p.exit, Slot::Side(m) if s.edge(Side { tri: p.tri, side: m }) == e))
        .count() as u32
}

/// Geometric intersection number of two reduced tracks of distinct or equal
/// simple classes.
pub fn track_intersection(s: &Surface, a: &Track, b: &Track) -> u32 {
    match (a, b) {
        (Track::Edge(_), Track::Edge(_)) => 0,
        (Track::Edge(e), t) | (t, Track::Edge(e)) => crossings_with_edge(s, *e, t),
        _ => linked_runs(a.passages(), a.is_closed(), b.passages(), b.is_closed()),
    }
}

/// Number of ordered pairs of distinct lifts of the track that cross, i.e.
/// twice the self-intersection number. Zero exactly for simple tracks.
pub fn self_crossings(t: &Track) -> u32 {
    match t {
        Track::Edge(_) => 0,
        _ => linked_runs(t.passages(), t.is_closed(), t.passages(), t.is_closed()),
    }
}

/// True if the cyclic sequence is a proper power of a shorter one.
pub fn is_proper_power<T: PartialEq>(cycle: &[T]) -> bool {
    let n = cycle.len();
    (1..n).any(|p| n % p == 0 && (0..n).all(|i| cycle[i] == cycle[(i + p) % n]))
}

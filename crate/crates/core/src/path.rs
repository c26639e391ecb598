//! Crossing sequences on the reference triangulation.
//!
//! A closed path is the cyclic list of sides it exits through; an open path
//! (an arc) additionally starts and ends at a corner, i.e. at a puncture.
//! Reduction removes bigons with the triangulation edges (a path leaving a
//! triangle through the side it entered) and slides arc endpoints around
//! their puncture until the path is normal.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{Corner, Side, Surface};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RawPath {
    Closed { exits: Vec<Side> },
    Open { start: Corner, exits: Vec<Side>, end: Corner },
}

/// Where a path meets the boundary of a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    Side(u8),
    Corner(u8),
}

impl Slot {
    /// Position in the counterclockwise cyclic order
    /// `V0, S2, V1, S0, V2, S1` of a triangle's boundary.
    pub fn hexagon_position(self) -> u8 {
        match self {
            Slot::Corner(k) => 2 * k,
            Slot::Side(m) => (2 * m + 3) % 6,
        }
    }

    pub fn side(self) -> Option<u8> {
        match self {
            Slot::Side(m) => Some(m),
            Slot::Corner(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Passage {
    pub tri: u32,
    pub entry: Slot,
    pub exit: Slot,
}

impl Passage {
    pub fn reversed(self) -> Passage {
        Passage {
            tri: self.tri,
            entry: self.exit,
            exit: self.entry,
        }
    }
}

/// A reduced path in the form used by intersection computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Track {
    /// Cyclic sequence of passages of a closed curve.
    Closed(Vec<Passage>),
    /// Passages of an arc that crosses at least one edge.
    Open(Vec<Passage>),
    /// An arc isotopic to an edge of the triangulation.
    Edge(usize),
}

impl Track {
    pub fn passages(&self) -> &[Passage] {
        match self {
            Track::Closed(p) | Track::Open(p) => p,
            Track::Edge(_) => &[],
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Track::Closed(_))
    }
}

/// Outcome of reducing a raw path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduced {
    /// Null-homotopic closed path or arc homotopic into its puncture.
    Trivial,
    Closed(Vec<Side>),
    Open { start: Corner, exits: Vec<Side>, end: Corner },
    /// Arc isotopic to the edge with this index.
    Edge(usize),
}

impl RawPath {
    pub fn check(&self, s: &Surface) -> Result<()> {
        let bad = |msg: &str| Err(Error::MalformedPath(msg.to_string()));
        let in_range = |side: &Side| (side.tri as usize) < s.num_triangles() && side.side < 3;
        match self {
            RawPath::Closed { exits } => {
                if !exits.iter().all(in_range) {
                    return bad("side out of range");
                }
                for i in 0..exits.len() {
                    let next = exits[(i + 1) % exits.len()];
                    if s.glue(exits[i]).tri != next.tri {
                        return bad("consecutive crossings are not in adjacent triangles");
                    }
                }
                Ok(())
            }
            RawPath::Open { start, exits, end } => {
                if (start.tri as usize) >= s.num_triangles()
                    || (end.tri as usize) >= s.num_triangles()
                    || start.corner > 2
                    || end.corner > 2
                    || !exits.iter().all(in_range)
                {
                    return bad("index out of range");
                }
                let mut tri = start.tri;
                for e in exits {
                    if e.tri != tri {
                        return bad("crossing does not leave the current triangle");
                    }
                    tri = s.glue(*e).tri;
                }
                if tri != end.tri {
                    return bad("path does not end in the end corner's triangle");
                }
                Ok(())
            }
        }
    }

    pub fn reduce(&self, s: &Surface) -> Result<Reduced> {
        self.check(s)?;
        match self {
            RawPath::Closed { exits } => {
                let mut stack = free_reduce(s, exits);
                // Cyclic cancellation between the last and first crossing.
                while stack.len() >= 2 && stack[0] == s.glue(*stack.last().unwrap()) {
                    stack.pop();
                    stack.remove(0);
                }
                if stack.is_empty() {
                    Ok(Reduced::Trivial)
                } else {
                    Ok(Reduced::Closed(stack))
                }
            }
            RawPath::Open { start, exits, end } => {
                let mut ex = free_reduce(s, exits);
                let mut start = *start;
                let mut end = *end;
                let mut head = 0usize;
                loop {
                    let mut changed = false;
                    if head < ex.len() && ex[head].side != start.corner {
                        start = slide_forward(s, start, ex[head]);
                        head += 1;
                        changed = true;
                    }
                    if head < ex.len() {
                        let last = *ex.last().unwrap();
                        let into = s.glue(last);
                        if into.side != end.corner {
                            end = slide_back(s, end, last);
                            ex.pop();
                            changed = true;
                        }
                    }
                    if !changed {
                        break;
                    }
                }
                let ex: Vec<Side> = ex[head..].to_vec();
                if ex.is_empty() {
                    if start.corner == end.corner {
                        return Ok(Reduced::Trivial);
                    }
                    let m = 3 - start.corner - end.corner;
                    return Ok(Reduced::Edge(s.edge(Side { tri: start.tri, side: m })));
                }
                Ok(Reduced::Open { start, exits: ex, end })
            }
        }
    }
}

fn free_reduce(s: &Surface, exits: &[Side]) -> Vec<Side> {
    let mut stack: Vec<Side> = Vec::with_capacity(exits.len());
    for &e in exits {
        if let Some(&top) = stack.last() {
            if s.glue(top) == e {
                stack.pop();
                continue;
            }
        }
        stack.push(e);
    }
    stack
}

/// The start corner lies on the exit side; move it into the next triangle.
fn slide_forward(s: &Surface, start: Corner, exit: Side) -> Corner {
    let k = start.corner as usize;
    let m = exit.side as usize;
    let o = s.glue(exit);
    let m2 = o.side as usize;
    let k2 = if m == (k + 1) % 3 { (m2 + 1) % 3 } else { (m2 + 2) % 3 };
    Corner::new(o.tri as usize, k2)
}

/// The end corner lies on the entry side; move it back across `last`.
fn slide_back(s: &Surface, end: Corner, last: Side) -> Corner {
    let into = s.glue(last);
    let k = end.corner as usize;
    let m2 = into.side as usize;
    let m = last.side as usize;
    // V'_{m2+1} <-> V_{m+2}, V'_{m2+2} <-> V_{m+1}.
    let k_back = if k == (m2 + 1) % 3 { (m + 2) % 3 } else { (m + 1) % 3 };
    Corner::new(last.tri as usize, k_back)
}

impl Reduced {
    /// Passages of a reduced path; `None` for trivial paths.
    pub fn track(&self, s: &Surface) -> Option<Track> {
        match self {
            Reduced::Trivial => None,
            Reduced::Edge(e) => Some(Track::Edge(*e)),
            Reduced::Closed(exits) => {
                let n = exits.len();
                let ps = (0..n)
                    .map(|i| {
                        let prev = exits[(i + n - 1) % n];
                        Passage {
                            tri: exits[i].tri,
                            entry: Slot::Side(s.glue(prev).side),
                            exit: Slot::Side(exits[i].side),
                        }
                    })
                    .collect();
                Some(Track::Closed(ps))
            }
            Reduced::Open { start, exits, end } => {
                let mut ps = Vec::with_capacity(exits.len() + 1);
                let mut entry = Slot::Corner(start.corner);
                for e in exits {
                    ps.push(Passage {
                        tri: e.tri,
                        entry,
                        exit: Slot::Side(e.side),
                    });
                    entry = Slot::Side(s.glue(*e).side);
                }
                ps.push(Passage {
                    tri: end.tri,
                    entry,
                    exit: Slot::Corner(end.corner),
                });
                Some(Track::Open(ps))
            }
        }
    }
}

/// Exits of the reversed closed path.
pub fn reverse_exits(s: &Surface, exits: &[Side]) -> Vec<Side> {
    exits.iter().rev().map(|e| s.glue(*e)).collect()
}

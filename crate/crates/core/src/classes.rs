//! Isotopy classes of essential simple closed curves and arcs.
//!
//! A curve class is stored as its normal coordinates: the number of times
//! its normal representative crosses each edge of the reference
//! triangulation. An arc additionally records the two corners its end
//! segments occupy; an arc isotopic to an edge `e` is stored with `-1` at
//! `e`, zeros elsewhere and no end corners. Classes compare
//! lexicographically by coordinates, which is the total order used wherever
//! a choice has to be made.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cut::cut_along;
use crate::error::{Error, Result};
use crate::intersection::{is_proper_power, self_crossings, track_intersection};
use crate::normal::Realization;
use crate::path::{RawPath, Reduced, Track};
use crate::surface::{Corner, Side, Surface};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveClass {
    pub coords: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcClass {
    pub coords: Vec<i32>,
    /// Corners holding the end segments, sorted; `None` for edge arcs.
    pub ends: Option<[Corner; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Class {
    Curve(CurveClass),
    Arc(ArcClass),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoundaryGraphClass {
    pub arc: ArcClass,
    pub touched: BTreeSet<u32>,
}

/// Input accepted by [`canonicalize`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "input", rename_all = "snake_case")]
pub enum RawClass {
    Path(RawPath),
    Curve { coords: Vec<i32> },
    Arc { coords: Vec<i32>, ends: Option<[Corner; 2]> },
}

fn weights_of(s: &Surface, exits: &[Side]) -> Vec<u32> {
    let mut w = vec![0u32; s.num_edges()];
    for e in exits {
        w[s.edge(*e)] += 1;
    }
    w
}

fn to_i32(w: &[u32]) -> Vec<i32> {
    w.iter().map(|&x| x as i32).collect()
}

impl CurveClass {
    pub fn norm(&self) -> u32 {
        self.coords.iter().map(|x| x.unsigned_abs()).sum()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.coords.iter().map(|&x| x as u32).collect()
    }

    /// Cyclic exit sequence of the normal representative.
    pub fn exits(&self, s: &Surface) -> Vec<Side> {
        let r = Realization::new(s, &self.weights(), &[]).expect("canonical curve realizes");
        let mut comps = r.closed_components();
        comps.swap_remove(0).0
    }

    pub fn track(&self, s: &Surface) -> Track {
        Reduced::Closed(self.exits(s)).track(s).expect("nonempty curve")
    }

    pub fn raw_path(&self, s: &Surface) -> RawPath {
        RawPath::Closed { exits: self.exits(s) }
    }
}

impl ArcClass {
    pub fn edge(s: &Surface, e: usize) -> ArcClass {
        let mut coords = vec![0; s.num_edges()];
        coords[e] = -1;
        ArcClass { coords, ends: None }
    }

    pub fn edge_index(&self) -> Option<usize> {
        match self.ends {
            None => self.coords.iter().position(|&x| x < 0),
            Some(_) => None,
        }
    }

    pub fn norm(&self) -> u32 {
        self.coords.iter().map(|x| x.unsigned_abs()).sum()
    }

    /// Normal representative as start corner, exits and end corner. Edge
    /// arcs are returned as an empty crossing list inside one triangle.
    pub fn open_path(&self, s: &Surface) -> (Corner, Vec<Side>, Corner) {
        if let Some(e) = self.edge_index() {
            let side = s.edges[e][0];
            let m = side.side as usize;
            return (
                Corner::new(side.tri as usize, (m + 1) % 3),
                Vec::new(),
                Corner::new(side.tri as usize, (m + 2) % 3),
            );
        }
        let ends = self.ends.expect("non-edge arc has ends");
        let w: Vec<u32> = self.coords.iter().map(|&x| x as u32).collect();
        let r = Realization::new(s, &w, &ends).expect("canonical arc realizes");
        let (exits, end, _) = r.trace_open(ends[0]);
        (ends[0], exits, end)
    }

    pub fn raw_path(&self, s: &Surface) -> RawPath {
        let (start, exits, end) = self.open_path(s);
        RawPath::Open { start, exits, end }
    }

    pub fn track(&self, s: &Surface) -> Track {
        if let Some(e) = self.edge_index() {
            return Track::Edge(e);
        }
        let (start, exits, end) = self.open_path(s);
        Reduced::Open { start, exits, end }.track(s).expect("nonempty arc")
    }

    /// Boundary labels at the two ends, sorted.
    pub fn endpoints(&self, s: &Surface) -> [u32; 2] {
        let (a, _, b) = self.open_path(s);
        let (x, y) = (s.label(a), s.label(b));
        [x.min(y), x.max(y)]
    }
}

impl Class {
    pub fn track(&self, s: &Surface) -> Track {
        match self {
            Class::Curve(c) => c.track(s),
            Class::Arc(a) => a.track(s),
        }
    }

    pub fn norm(&self) -> u32 {
        match self {
            Class::Curve(c) => c.norm(),
            Class::Arc(a) => a.norm(),
        }
    }
}

/// Reduces any accepted input to its canonical class.
pub fn canonicalize(s: &Surface, raw: &RawClass) -> Result<Class> {
    match raw {
        RawClass::Path(p) => match p.reduce(s)? {
            Reduced::Trivial => Err(Error::Inessential),
            Reduced::Closed(exits) => curve_from_exits(s, &exits).map(Class::Curve),
            red @ Reduced::Edge(_) | red @ Reduced::Open { .. } => arc_from_reduced(s, &red).map(Class::Arc),
        },
        RawClass::Curve { coords } => curve_from_coords(s, coords).map(Class::Curve),
        RawClass::Arc { coords, ends } => arc_from_coords(s, coords, *ends).map(Class::Arc),
    }
}

pub fn curve_from_path(s: &Surface, p: &RawPath) -> Result<CurveClass> {
    match canonicalize(s, &RawClass::Path(p.clone()))? {
        Class::Curve(c) => Ok(c),
        Class::Arc(_) => Err(Error::MalformedPath("expected a closed path".into())),
    }
}

pub fn arc_from_path(s: &Surface, p: &RawPath) -> Result<ArcClass> {
    match canonicalize(s, &RawClass::Path(p.clone()))? {
        Class::Arc(a) => Ok(a),
        Class::Curve(_) => Err(Error::MalformedPath("expected an open path".into())),
    }
}

/// Curve class of a reduced (backtrack-free) cyclic exit sequence.
fn curve_from_exits(s: &Surface, exits: &[Side]) -> Result<CurveClass> {
    if is_proper_power(exits) {
        return Err(Error::NotSimple);
    }
    let track = Reduced::Closed(exits.to_vec()).track(s).expect("nonempty");
    if self_crossings(&track) > 0 {
        return Err(Error::NotSimple);
    }
    curve_from_coords(s, &to_i32(&weights_of(s, exits)))
}

fn arc_from_reduced(s: &Surface, red: &Reduced) -> Result<ArcClass> {
    match red {
        Reduced::Edge(e) => Ok(ArcClass::edge(s, *e)),
        Reduced::Open { start, exits, end } => {
            let track = red.track(s).expect("nonempty");
            if self_crossings(&track) > 0 {
                return Err(Error::NotSimple);
            }
            let mut ends = [*start, *end];
            ends.sort();
            arc_from_coords(s, &to_i32(&weights_of(s, exits)), Some(ends))
        }
        _ => Err(Error::Inessential),
    }
}

pub fn curve_from_coords(s: &Surface, coords: &[i32]) -> Result<CurveClass> {
    if coords.len() != s.num_edges() || coords.iter().any(|&x| x < 0) {
        return Err(Error::NotRealizable("curve coordinates must be nonnegative, one per edge".into()));
    }
    let w: Vec<u32> = coords.iter().map(|&x| x as u32).collect();
    let r = Realization::new(s, &w, &[])?;
    match r.closed_components().len() {
        0 => return Err(Error::Inessential),
        1 => {}
        _ => return Err(Error::Disconnected),
    }
    let c = CurveClass { coords: coords.to_vec() };
    let pieces = cut_along(s, std::slice::from_ref(&c))?;
    if pieces.iter().any(|p| p.is_disk_or_peripheral()) {
        return Err(Error::Inessential);
    }
    Ok(c)
}

pub fn arc_from_coords(s: &Surface, coords: &[i32], ends: Option<[Corner; 2]>) -> Result<ArcClass> {
    if coords.len() != s.num_edges() {
        return Err(Error::NotRealizable("wrong coordinate length".into()));
    }
    let Some(mut ends) = ends else {
        let neg: Vec<usize> = (0..coords.len()).filter(|&e| coords[e] != 0).collect();
        if neg.len() == 1 && coords[neg[0]] == -1 {
            return Ok(ArcClass::edge(s, neg[0]));
        }
        return Err(Error::NotRealizable("an arc without end corners must be an edge".into()));
    };
    if coords.iter().any(|&x| x < 0) {
        return Err(Error::NotRealizable("negative coordinate on a non-edge arc".into()));
    }
    for c in &ends {
        if c.tri as usize >= s.num_triangles() || c.corner > 2 {
            return Err(Error::NotRealizable("end corner out of range".into()));
        }
    }
    ends.sort();
    let w: Vec<u32> = coords.iter().map(|&x| x as u32).collect();
    let r = Realization::new(s, &w, &ends)?;
    let (_, end, ids) = r.trace_open(ends[0]);
    if ids.len() != r.arc_count {
        return Err(Error::Disconnected);
    }
    if end != ends[1] {
        return Err(Error::NotRealizable("end segments are not joined".into()));
    }
    Ok(ArcClass { coords: coords.to_vec(), ends: Some(ends) })
}

/// Geometric intersection number.
pub fn intersection_number(s: &Surface, x: &Class, y: &Class) -> u32 {
    if x == y {
        return 0;
    }
    track_intersection(s, &x.track(s), &y.track(s))
}

pub fn are_disjoint(s: &Surface, x: &Class, y: &Class) -> bool {
    intersection_number(s, x, y) == 0
}

/// Essentiality of a class given in any accepted form: canonicalization
/// succeeds exactly for essential simple inputs.
pub fn is_essential(s: &Surface, raw: &RawClass) -> Result<bool> {
    match canonicalize(s, raw) {
        Ok(_) => Ok(true),
        Err(Error::Inessential) => Ok(false),
        Err(e) => Err(e),
    }
}

pub fn boundary_graph(s: &Surface, a: &ArcClass) -> BoundaryGraphClass {
    BoundaryGraphClass {
        arc: a.clone(),
        touched: a.endpoints(s).into_iter().collect(),
    }
}

pub fn boundary_graphs_disjoint(s: &Surface, g1: &BoundaryGraphClass, g2: &BoundaryGraphClass) -> bool {
    g1.touched.is_disjoint(&g2.touched)
        && are_disjoint(s, &Class::Arc(g1.arc.clone()), &Class::Arc(g2.arc.clone()))
}

/// A class with its track precomputed, for repeated intersection queries.
#[derive(Clone, Debug)]
pub struct Tracked {
    pub class: Class,
    pub track: Track,
}

impl Tracked {
    pub fn new(s: &Surface, class: Class) -> Self {
        let track = class.track(s);
        Tracked { class, track }
    }

    pub fn intersection(&self, s: &Surface, other: &Tracked) -> u32 {
        if self.class == other.class {
            0
        } else {
            track_intersection(s, &self.track, &other.track)
        }
    }
}

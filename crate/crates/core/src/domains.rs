//! Domains: annuli around essential curves and proper connected subsurfaces
//! bounded by essential curves and boundary components.
//!
//! A non-annular domain is one piece of the cut along its essential
//! boundary curves (a domain's interior meets none of its boundary curves,
//! so it fills exactly one piece). It is stored as the sorted list of
//! distinct boundary classes plus the piece descriptor; `tie` separates
//! pieces of one cut that happen to share a descriptor.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::{arc_from_path, curve_from_path, ArcClass, BoundaryGraphClass, Class, CurveClass, Tracked};
use crate::cut::{cut_detailed, cut_unchecked, Cut, Piece};
use crate::enumerate::{enumerate_arcs, enumerate_curves};
use crate::error::{Error, Result};
use crate::path::{reverse_exits, RawPath, Reduced};
use crate::surface::{Corner, Side, Surface, Turn};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DomainClass {
    Annulus {
        core: CurveClass,
    },
    Region {
        boundary: Vec<CurveClass>,
        piece: Piece,
        tie: u32,
    },
}

/// Pairs of pants are domains of type `(0, 3)`.
pub type PantsClass = DomainClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Peripherality {
    None,
    Mono,
    Bi,
}

impl DomainClass {
    pub fn topo_type(&self) -> (u32, u32) {
        match self {
            DomainClass::Annulus { .. } => (0, 2),
            DomainClass::Region { piece, .. } => piece.topo_type(),
        }
    }

    pub fn euler(&self) -> i64 {
        let (g, b) = self.topo_type();
        2 - 2 * g as i64 - b as i64
    }

    pub fn original_boundaries(&self) -> BTreeSet<u32> {
        match self {
            DomainClass::Annulus { .. } => BTreeSet::new(),
            DomainClass::Region { piece, .. } => piece.original_boundaries.clone(),
        }
    }

    pub fn essential_boundary(&self) -> Vec<CurveClass> {
        match self {
            DomainClass::Annulus { core } => vec![core.clone()],
            DomainClass::Region { boundary, .. } => boundary.clone(),
        }
    }

    pub fn is_annulus(&self) -> bool {
        matches!(self, DomainClass::Annulus { .. })
    }

    pub fn is_pants(&self) -> bool {
        self.topo_type() == (0, 3)
    }

    /// Mono- or biperipheral by the number of boundary circles lying on `∂S`.
    pub fn peripherality(&self) -> Peripherality {
        if !self.is_pants() {
            return Peripherality::None;
        }
        match self.original_boundaries().len() {
            0 => Peripherality::None,
            1 => Peripherality::Mono,
            _ => Peripherality::Bi,
        }
    }

    pub fn is_peripheral_pants(&self) -> bool {
        self.peripherality() != Peripherality::None
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("domain serializes")
    }
}

pub fn annulus_domain(c: &CurveClass) -> DomainClass {
    DomainClass::Annulus { core: c.clone() }
}

/// Canonical domain for piece `index` of the cut along `system`.
pub fn domain_of_piece(s: &Surface, system: &[CurveClass], cut: &Cut, index: usize) -> Result<DomainClass> {
    let p = &cut.pieces[index];
    let mut boundary: Vec<CurveClass> = p.cut_circles.iter().map(|&i| system[i].clone()).collect();
    boundary.sort();
    boundary.dedup();
    if boundary.is_empty() {
        return Err(Error::InvalidDomain("a domain needs an essential boundary curve".into()));
    }
    if boundary.len() == system.len() && boundary.iter().zip(system).all(|(a, b)| a == b) {
        return region_in_cut(&boundary, cut, index);
    }
    let recut = cut_unchecked(s, &boundary)?;
    // Same piece, re-expressed in the cut along its own boundary.
    let labels = &p.original_boundaries;
    let circles: Vec<usize> = {
        let mut v: Vec<usize> = p
            .cut_circles
            .iter()
            .map(|&i| boundary.binary_search(&system[i]).unwrap())
            .collect();
        v.sort();
        v
    };
    let found = recut
        .pieces
        .iter()
        .position(|q| &q.original_boundaries == labels && q.cut_circles == circles && q.genus == p.genus)
        .ok_or_else(|| Error::InvalidDomain("piece not found after recutting".into()))?;
    region_in_cut(&boundary, &recut, found)
}

fn region_in_cut(boundary: &[CurveClass], cut: &Cut, index: usize) -> Result<DomainClass> {
    let piece = cut.pieces[index].clone();
    let tie = cut.pieces[..index].iter().filter(|q| **q == piece).count() as u32;
    if piece.euler == 0 {
        return Err(Error::InvalidDomain("annular piece between parallel curves".into()));
    }
    Ok(DomainClass::Region {
        boundary: boundary.to_vec(),
        piece,
        tie,
    })
}

/// Pieces of `cut` (along `system`) making up the region domain `x`.
fn pieces_of(system: &[CurveClass], cut: &Cut, boundary: &[CurveClass], piece: &Piece, tie: u32) -> Option<Vec<usize>> {
    let np = cut.pieces.len();
    let mut parent: Vec<usize> = (0..np).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let in_boundary = |c: &CurveClass| boundary.binary_search(c).is_ok();
    for (i, c) in system.iter().enumerate() {
        if !in_boundary(c) {
            let [a, b] = cut.sides[i];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in 0..np {
        let r = find(&mut parent, p);
        groups.entry(r).or_default().push(p);
    }
    let mut merged: Vec<(Piece, Vec<usize>)> = groups
        .into_values()
        .map(|members| {
            let mut labels = BTreeSet::new();
            let mut euler = 0;
            for &m in &members {
                labels.extend(cut.pieces[m].original_boundaries.iter().copied());
                euler += cut.pieces[m].euler;
            }
            let mut circles = Vec::new();
            for (i, c) in system.iter().enumerate() {
                if let Ok(bi) = boundary.binary_search(c) {
                    for side in cut.sides[i] {
                        if members.contains(&side) {
                            circles.push(bi);
                        }
                    }
                }
            }
            circles.sort();
            let bc = (labels.len() + circles.len()) as i64;
            let genus = ((2 - euler - bc) / 2) as u32;
            (
                Piece {
                    genus,
                    boundary_circles: bc as u32,
                    original_boundaries: labels,
                    cut_circles: circles,
                    euler,
                },
                members,
            )
        })
        .collect();
    merged.sort();
    merged
        .into_iter()
        .filter(|(p, _)| p == piece)
        .nth(tie as usize)
        .map(|(_, m)| m)
}

/// Whether two distinct domains can be realized disjointly.
///
/// All boundary curves are realized together; two region domains are
/// disjoint when they share no piece of that cut, and an annulus is
/// disjoint from a region unless its core lies in the region's interior.
/// Parallel boundary curves are treated as disjoint copies with the annulus
/// between them belonging to neither domain.
pub fn domains_disjoint(s: &Surface, x: &DomainClass, y: &DomainClass) -> Result<bool> {
    if x == y {
        return Err(Error::NotDistinct);
    }
    let mut system: Vec<CurveClass> = x.essential_boundary();
    system.extend(y.essential_boundary());
    system.sort();
    system.dedup();
    let tracked: Vec<Tracked> = system.iter().map(|c| Tracked::new(s, Class::Curve(c.clone()))).collect();
    for i in 0..tracked.len() {
        for j in i + 1..tracked.len() {
            if tracked[i].intersection(s, &tracked[j]) > 0 {
                return Ok(false);
            }
        }
    }
    disjoint_given_boundaries(s, &system, x, y)
}

/// As [`domains_disjoint`], for callers that already know all boundary
/// curves of both domains are pairwise disjoint.
pub fn disjoint_given_boundaries(s: &Surface, system: &[CurveClass], x: &DomainClass, y: &DomainClass) -> Result<bool> {
    match (x, y) {
        (DomainClass::Annulus { .. }, DomainClass::Annulus { .. }) => Ok(true),
        (DomainClass::Annulus { core }, r @ DomainClass::Region { .. })
        | (r @ DomainClass::Region { .. }, DomainClass::Annulus { core }) => {
            let DomainClass::Region { boundary, piece, tie } = r else { unreachable!() };
            if boundary.binary_search(core).is_ok() {
                return Ok(true);
            }
            let cut = cut_unchecked(s, system)?;
            let mine = pieces_of(system, &cut, boundary, piece, *tie)
                .ok_or_else(|| Error::InvalidDomain("region not found in joint cut".into()))?;
            let i = system.binary_search(core).unwrap();
            Ok(!mine.contains(&cut.sides[i][0]))
        }
        (
            DomainClass::Region { boundary: bx, piece: px, tie: tx },
            DomainClass::Region { boundary: by, piece: py, tie: ty },
        ) => {
            let cut = cut_unchecked(s, system)?;
            let a = pieces_of(system, &cut, bx, px, *tx);
            let b = pieces_of(system, &cut, by, py, *ty);
            match (a, b) {
                (Some(a), Some(b)) => Ok(a.iter().all(|p| !b.contains(p))),
                _ => Err(Error::InvalidDomain("region not found in joint cut".into())),
            }
        }
    }
}

fn rotation(s: &Surface, from: Corner, to: Corner, turn: Turn, allow_zero: bool) -> Vec<Side> {
    let mut out = Vec::new();
    let mut c = from;
    if allow_zero && from == to {
        return out;
    }
    loop {
        let (x, next) = s.rotate(c, turn);
        out.push(x);
        c = next;
        if c == to {
            return out;
        }
    }
}

/// A closed curve reduced and classified as essential, peripheral (with its
/// label) or null-homotopic.
enum Boundary {
    Curve(CurveClass),
    Label(u32),
}

fn classify(s: &Surface, exits: Vec<Side>) -> Result<Boundary> {
    let raw = RawPath::Closed { exits };
    match curve_from_path(s, &raw) {
        Ok(c) => Ok(Boundary::Curve(c)),
        Err(Error::Inessential) => match raw.reduce(s)? {
            Reduced::Closed(ex) => {
                let n = ex.len();
                let entry = s.glue(ex[n - 1]).side as usize;
                let exit = ex[0].side as usize;
                let corner = 3 - entry - exit;
                Ok(Boundary::Label(s.vertices[ex[0].tri as usize][corner]))
            }
            _ => Err(Error::InvalidDomain("neighborhood boundary bounds a disk".into())),
        },
        Err(e) => Err(e),
    }
}

/// The pair of pants given by a regular neighborhood of a boundary graph.
pub fn regular_neighborhood_pants(s: &Surface, g: &BoundaryGraphClass) -> Result<PantsClass> {
    let (cs, exits, ce) = g.arc.open_path(s);
    let (p, q) = (s.label(cs), s.label(ce));
    let back = reverse_exits(s, &exits);
    let mut loops = Vec::new();
    if p != q {
        let mut w = exits.clone();
        w.extend(rotation(s, ce, ce, Turn::Plus, false));
        w.extend(back);
        w.extend(rotation(s, cs, cs, Turn::Plus, false));
        loops.push(w);
    } else {
        // Both ends on one puncture: follow the arc, then close up around
        // the puncture on either side. When both ends sit in one corner the
        // start segment is the clockwise one.
        for turn in [Turn::Plus, Turn::Minus] {
            let mut w = exits.clone();
            w.extend(rotation(s, ce, cs, turn, turn == Turn::Minus));
            loops.push(w);
        }
    }
    let mut labels: BTreeSet<u32> = [p, q].into_iter().collect();
    let mut curves = Vec::new();
    for w in loops {
        match classify(s, w)? {
            Boundary::Curve(c) => curves.push(c),
            Boundary::Label(l) => {
                labels.insert(l);
            }
        }
    }
    curves.sort();
    curves.dedup();
    if curves.is_empty() {
        return Err(Error::InvalidDomain("regular neighborhood is the whole surface".into()));
    }
    let cut = cut_detailed(s, &curves)?;
    let matches: Vec<usize> = (0..cut.pieces.len())
        .filter(|&i| {
            let pc = &cut.pieces[i];
            pc.topo_type() == (0, 3) && pc.original_boundaries == labels
        })
        .collect();
    if matches.len() != 1 {
        return Err(Error::InvalidDomain(format!(
            "{} candidate pants for the neighborhood",
            matches.len()
        )));
    }
    domain_of_piece(s, &curves, &cut, matches[0])
}

pub fn pants_from_arc(s: &Surface, a: &ArcClass) -> Result<PantsClass> {
    regular_neighborhood_pants(s, &crate::classes::boundary_graph(s, a))
}

/// Norm bound guaranteed to contain the defining arcs of a pants: an arc
/// inside the pants is at most as long as its longest essential boundary
/// curve plus the puncture degrees it may wrap around.
fn defining_arc_bound(s: &Surface, pants: &PantsClass) -> u32 {
    let longest = pants.essential_boundary().iter().map(|c| c.norm()).max().unwrap_or(0);
    let max_degree = (0..s.num_triangles())
        .flat_map(|t| (0..3).map(move |k| Corner::new(t, k)))
        .map(|c| s.corner_cycle(c).len() as u32)
        .max()
        .unwrap_or(0);
    longest + max_degree
}

/// All arcs whose boundary-graph neighborhood is `pants`, sorted.
pub fn pants_defining_arcs(s: &Surface, pants: &PantsClass) -> Result<Vec<ArcClass>> {
    if !pants.is_peripheral_pants() {
        return Err(Error::NotPeripheral);
    }
    let labels = pants.original_boundaries();
    let walls: Vec<Tracked> = pants
        .essential_boundary()
        .into_iter()
        .map(|c| Tracked::new(s, Class::Curve(c)))
        .collect();
    let mut out: Vec<ArcClass> = enumerate_arcs(s, defining_arc_bound(s, pants))
        .into_par_iter()
        .filter(|a| a.endpoints(s).iter().all(|l| labels.contains(l)))
        .filter(|a| {
            let t = Tracked::new(s, Class::Arc(a.clone()));
            walls.iter().all(|w| w.intersection(s, &t) == 0)
        })
        .filter(|a| pants_from_arc(s, a).as_ref() == Ok(pants))
        .collect();
    out.sort();
    Ok(out)
}

/// For an arc joining two distinct boundary components, the two loops
/// around either end; together with the arc they define the same pants.
pub fn companion_loops(s: &Surface, a: &ArcClass) -> Result<Vec<ArcClass>> {
    let (cs, exits, ce) = a.open_path(s);
    if s.label(cs) == s.label(ce) {
        return Ok(Vec::new());
    }
    let back = reverse_exits(s, &exits);
    let mut around_end = exits.clone();
    around_end.extend(rotation(s, ce, ce, Turn::Plus, false));
    around_end.extend(back.iter().copied());
    let mut around_start = back;
    around_start.extend(rotation(s, cs, cs, Turn::Plus, false));
    around_start.extend(exits);
    let mut out = vec![
        arc_from_path(s, &RawPath::Open { start: cs, exits: around_end, end: cs })?,
        arc_from_path(s, &RawPath::Open { start: ce, exits: around_start, end: ce })?,
    ];
    out.sort();
    Ok(out)
}

/// Peripheral pants of a set of arcs, with the arcs defining each.
#[derive(Clone, Debug, Default)]
pub struct PantsIndex {
    pub of_arc: BTreeMap<ArcClass, PantsClass>,
    pub arcs_of: BTreeMap<PantsClass, Vec<ArcClass>>,
}

impl PantsIndex {
    pub fn build(s: &Surface, arcs: &[ArcClass]) -> Self {
        let pairs: Vec<(ArcClass, PantsClass)> = arcs
            .par_iter()
            .filter_map(|a| pants_from_arc(s, a).ok().map(|p| (a.clone(), p)))
            .collect();
        let mut idx = PantsIndex::default();
        for (a, p) in pairs {
            idx.arcs_of.entry(p.clone()).or_default().push(a.clone());
            idx.of_arc.insert(a, p);
        }
        for v in idx.arcs_of.values_mut() {
            v.sort();
        }
        idx
    }

    pub fn defining_arcs(&self, p: &PantsClass) -> &[ArcClass] {
        self.arcs_of.get(p).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Arcs of a pants, falling back to a dedicated search when the index
    /// was built with too small a bound to hold them all.
    pub fn complete_arcs(&self, s: &Surface, p: &PantsClass) -> Result<Vec<ArcClass>> {
        let have = self.defining_arcs(p);
        let want = match p.peripherality() {
            Peripherality::Mono => 1,
            Peripherality::Bi => 3,
            Peripherality::None => return Err(Error::NotPeripheral),
        };
        if have.len() == want {
            return Ok(have.to_vec());
        }
        if let Some(a) = have.iter().find(|a| {
            let [x, y] = a.endpoints(s);
            x != y
        }) {
            let mut all = companion_loops(s, a)?;
            all.push(a.clone());
            all.sort();
            if all.iter().all(|b| pants_from_arc(s, b).as_ref() == Ok(p)) {
                return Ok(all);
            }
        }
        pants_defining_arcs(s, p)
    }
}

/// Domains bounded by at most `max_boundary_curves` enumerated curves of
/// norm at most `norm_bound`, together with the annuli of those curves.
pub fn enumerate_domains(s: &Surface, norm_bound: u32, max_boundary_curves: usize) -> Vec<DomainClass> {
    let curves = enumerate_curves(s, norm_bound);
    domains_from_curves(s, &curves, max_boundary_curves)
}

/// Disjointness table of a list of curves.
pub fn disjointness(s: &Surface, curves: &[CurveClass]) -> Vec<Vec<bool>> {
    let tracked: Vec<Tracked> = curves.iter().map(|c| Tracked::new(s, Class::Curve(c.clone()))).collect();
    (0..curves.len())
        .into_par_iter()
        .map(|i| {
            (0..curves.len())
                .map(|j| i != j && tracked[i].intersection(s, &tracked[j]) == 0)
                .collect()
        })
        .collect()
}

pub fn domains_from_curves(s: &Surface, curves: &[CurveClass], max_boundary_curves: usize) -> Vec<DomainClass> {
    let disjoint = disjointness(s, curves);
    let mut systems: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..curves.len()).map(|i| vec![i]).collect();
    for _ in 0..max_boundary_curves {
        let mut next = Vec::new();
        for sys in &frontier {
            let last = *sys.last().unwrap();
            for j in last + 1..curves.len() {
                if sys.iter().all(|&i| disjoint[i][j]) {
                    let mut n = sys.clone();
                    n.push(j);
                    next.push(n);
                }
            }
        }
        systems.append(&mut frontier);
        frontier = next;
    }
    let found: Vec<DomainClass> = systems
        .par_iter()
        .flat_map_iter(|sys| {
            let system: Vec<CurveClass> = sys.iter().map(|&i| curves[i].clone()).collect();
            let mut out = Vec::new();
            if let Ok(cut) = cut_unchecked(s, &system) {
                for i in 0..cut.pieces.len() {
                    if let Ok(d) = domain_of_piece(s, &system, &cut, i) {
                        out.push(d);
                    }
                }
            }
            out
        })
        .collect();
    let mut set: BTreeSet<DomainClass> = found.into_iter().collect();
    set.extend(curves.iter().map(annulus_domain));
    set.into_iter().collect()
}

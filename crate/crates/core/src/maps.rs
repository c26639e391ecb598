//! The maps between complexes: inclusions, coarse projections, path
//! transports, genus-0 rectification and the wrap-curve construction.

use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::classes::{arc_from_path, curve_from_coords, ArcClass, Class, CurveClass, Tracked};
use crate::complex::{ComplexBall, ComplexKind, PathWitness, Vertex};
use crate::cut::cut_detailed;
use crate::domains::{annulus_domain, domain_of_piece, domains_disjoint, pants_defining_arcs, DomainClass, PantsClass, PantsIndex};
use crate::enumerate::enumerate_curves;
use crate::error::{Error, Result};
use crate::intersection::crossing_runs;
use crate::path::{Passage, RawPath, Slot};
use crate::surface::{Side, Surface};

pub use crate::domains::pants_from_arc;

/// How a "choice" among several classes is made.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectionRule {
    CanonicalMin,
    CanonicalMax,
    /// Orders classes by a seeded hash, ties broken canonically.
    SeededRandom(u64),
}

/// FNV-1a, for a hash that is stable across builds. Integers go in as
/// little-endian bytes and `usize` as 64 bits, so the order is the same on
/// every target.
struct Fnv(u64);

impl Hasher for Fnv {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for b in bytes {
            self.0 ^= *b as u64;
            self.0 = self.0.wrapping_mul(0x100000001b3);
        }
    }

    fn write_u16(&mut self, i: u16) {
        self.write(&i.to_le_bytes());
    }

    fn write_u32(&mut self, i: u32) {
        self.write(&i.to_le_bytes());
    }

    fn write_u64(&mut self, i: u64) {
        self.write(&i.to_le_bytes());
    }

    fn write_u128(&mut self, i: u128) {
        self.write(&i.to_le_bytes());
    }

    fn write_usize(&mut self, i: usize) {
        self.write_u64(i as u64);
    }
}

impl ProjectionRule {
    pub fn presets(seed: u64) -> [ProjectionRule; 3] {
        [ProjectionRule::CanonicalMin, ProjectionRule::CanonicalMax, ProjectionRule::SeededRandom(seed)]
    }

    fn key<T: Hash>(seed: u64, x: &T) -> u64 {
        let mut h = Fnv(0xcbf29ce484222325);
        seed.hash(&mut h);
        x.hash(&mut h);
        h.finish()
    }

    pub fn pick<'a, T: Ord + Hash>(&self, items: &'a [T]) -> Option<&'a T> {
        match self {
            ProjectionRule::CanonicalMin => items.iter().min(),
            ProjectionRule::CanonicalMax => items.iter().max(),
            ProjectionRule::SeededRandom(seed) => items.iter().min_by(|a, b| (Self::key(*seed, *a), *a).cmp(&(Self::key(*seed, *b), *b))),
        }
    }

    /// `items` sorted by preference.
    pub fn order<T: Ord + Hash + Clone>(&self, items: &[T]) -> Vec<T> {
        let mut v = items.to_vec();
        match self {
            ProjectionRule::CanonicalMin => v.sort(),
            ProjectionRule::CanonicalMax => v.sort_by(|a, b| b.cmp(a)),
            ProjectionRule::SeededRandom(seed) => v.sort_by_key(|x| (Self::key(*seed, x), x.clone())),
        }
        v
    }
}

impl std::str::FromStr for ProjectionRule {
    type Err = Error;

    /// `min`, `max` or `random:SEED`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" | "canonical-min" => Ok(ProjectionRule::CanonicalMin),
            "max" | "canonical-max" => Ok(ProjectionRule::CanonicalMax),
            _ => s
                .strip_prefix("random:")
                .or_else(|| s.strip_prefix("seeded-random:"))
                .and_then(|x| x.parse().ok())
                .map(ProjectionRule::SeededRandom)
                .ok_or_else(|| Error::Config(format!("unknown rule `{s}`"))),
        }
    }
}

pub fn include_curve_as_annulus(s: &Surface, c: &CurveClass) -> Result<DomainClass> {
    if &curve_from_coords(s, &c.coords)? != c {
        return Err(Error::InvalidDomain("curve is not in canonical form".into()));
    }
    Ok(annulus_domain(c))
}

/// The rule's essential boundary curve of `x`.
pub fn coarse_project(x: &DomainClass, rule: ProjectionRule) -> CurveClass {
    rule.pick(&x.essential_boundary()).expect("domains have an essential boundary").clone()
}

fn vertex_curve(v: &Vertex, rule: ProjectionRule) -> Result<CurveClass> {
    match v {
        Vertex::Curve(c) => Ok(c.clone()),
        Vertex::Domain(d) => Ok(coarse_project(d, rule)),
        Vertex::Arc(_) => Err(Error::InvalidPath("arcs have no coarse projection to curves here".into())),
    }
}

/// Projects a path of domains between two annuli to a curve path.
pub fn project_path_to_curves(s: &Surface, p: &PathWitness, rule: ProjectionRule) -> Result<PathWitness> {
    p.validate(s)?;
    let is_curve = |v: &Vertex| matches!(v, Vertex::Curve(_) | Vertex::Domain(DomainClass::Annulus { .. }));
    if !p.first().is_some_and(is_curve) || !p.last().is_some_and(is_curve) {
        return Err(Error::InvalidPath("endpoints must be curves or annuli".into()));
    }
    let walk = p
        .vertices
        .iter()
        .map(|v| vertex_curve(v, rule).map(Vertex::Curve))
        .collect::<Result<Vec<_>>>()?;
    Ok(PathWitness::from_walk(ComplexKind::C, walk))
}

/// A shortest `A_B` path from `x` to `y` inside `ab_ball` of length at most `max_len`.
pub fn bgraph_connector(ab_ball: &ComplexBall, x: &ArcClass, y: &ArcClass, max_len: u32) -> Result<PathWitness> {
    if ab_ball.kind != ComplexKind::AB {
        return Err(Error::Config("connector search needs an A_B ball".into()));
    }
    let (vx, vy) = (Vertex::Arc(x.clone()), Vertex::Arc(y.clone()));
    let find = |v: &Vertex| {
        ab_ball.index_of(v).ok_or_else(|| Error::SearchFailed(format!("{} lies outside the A_B ball", v.label())))
    };
    let (i, j) = (find(&vx)?, find(&vy)?);
    let path = ab_ball
        .shortest_path_indices(i, j, Some(max_len))
        .ok_or_else(|| Error::SearchFailed(format!("no A_B connector of length <= {max_len} between {} and {}", vx.label(), vy.label())))?;
    Ok(ab_ball.witness(&path))
}

/// Transports an arc-complex path to the boundary-graph complex, replacing
/// each edge by a connector of length at most `max_connector`.
pub fn arc_path_to_bgraph_path(s: &Surface, p: &PathWitness, ab_ball: &ComplexBall, max_connector: u32) -> Result<PathWitness> {
    if p.kind != ComplexKind::A {
        return Err(Error::InvalidPath(format!("expected an A path, got {}", p.kind)));
    }
    p.validate(s)?;
    let arc = |v: &Vertex| match v {
        Vertex::Arc(a) => a.clone(),
        _ => unreachable!("validated A path"),
    };
    let mut walk = vec![p.vertices[0].clone()];
    for w in p.vertices.windows(2) {
        let c = bgraph_connector(ab_ball, &arc(&w[0]), &arc(&w[1]), max_connector)?;
        walk.extend(c.vertices.into_iter().skip(1));
    }
    Ok(PathWitness::from_walk(ComplexKind::AB, walk))
}

/// The rule's defining arc of a peripheral pants.
pub fn arc_from_pants(s: &Surface, p: &PantsClass, rule: ProjectionRule, index: Option<&PantsIndex>) -> Result<ArcClass> {
    let arcs = match index {
        Some(idx) => idx.complete_arcs(s, p)?,
        None => pants_defining_arcs(s, p)?,
    };
    rule.pick(&arcs)
        .cloned()
        .ok_or_else(|| Error::SearchFailed("no defining arc within the search bound".into()))
}

/// Turns a domain path between peripheral pants on a genus-0 surface into a
/// path of peripheral pants that is no longer.
///
/// Interior domains that are not peripheral pants are first replaced by one
/// of their essential boundary curves; each interior curve is then replaced
/// by a peripheral pants from `pool` disjoint from its neighbours, or
/// dropped when its neighbours are already disjoint.
pub fn rectify_genus0_path(s: &Surface, p: &PathWitness, pool: &[PantsClass], rule: ProjectionRule) -> Result<PathWitness> {
    if s.genus != 0 || s.boundary_count < 5 {
        return Err(Error::Inadmissible("rectification needs genus 0 and at least 5 boundary components".into()));
    }
    p.validate(s)?;
    let dom = |v: &Vertex| match v {
        Vertex::Domain(d) => Ok(d.clone()),
        _ => Err(Error::InvalidPath("rectification takes a path of domains".into())),
    };
    let ends = [dom(p.first().unwrap())?, dom(p.last().unwrap())?];
    if ends.iter().any(|d| !d.is_peripheral_pants()) {
        return Err(Error::InvalidPath("endpoints must be peripheral pants".into()));
    }
    if p.vertices.iter().all(|v| matches!(v, Vertex::Domain(d) if d.is_peripheral_pants())) {
        return Ok(PathWitness {
            kind: ComplexKind::PBoundary,
            vertices: p.vertices.clone(),
        });
    }
    let n = p.vertices.len();
    // Step 1: interior domains become curves (annuli) unless already pants.
    let mut mid: Vec<DomainClass> = Vec::with_capacity(n);
    for (k, v) in p.vertices.iter().enumerate() {
        let d = dom(v)?;
        if k == 0 || k == n - 1 || d.is_peripheral_pants() || d.is_annulus() {
            mid.push(d);
        } else {
            mid.push(annulus_domain(&coarse_project(&d, rule)));
        }
    }
    mid.dedup();
    // Step 2: replace each annulus, left to right.
    let ordered_pool = rule.order(pool);
    let mut out: Vec<DomainClass> = vec![mid[0].clone()];
    for k in 1..mid.len() {
        let x = &mid[k];
        if !x.is_annulus() {
            out.push(x.clone());
            continue;
        }
        let prev = out.last().unwrap().clone();
        let next = &mid[k + 1];
        if next == &prev || (!next.is_annulus() && domains_disjoint(s, &prev, next)?) {
            continue;
        }
        let found = ordered_pool
            .iter()
            .find(|q| {
                *q != &prev
                    && *q != next
                    && domains_disjoint(s, q, &prev).unwrap_or(false)
                    && domains_disjoint(s, q, next).unwrap_or(false)
            })
            .ok_or_else(|| {
                Error::SearchFailed(format!(
                    "no peripheral pants disjoint from {} and {}",
                    Vertex::Domain(prev.clone()).label(),
                    Vertex::Domain(next.clone()).label()
                ))
            })?;
        out.push(found.clone());
    }
    let w = PathWitness::from_walk(ComplexKind::PBoundary, out.into_iter().map(Vertex::Domain).collect());
    w.validate(s)?;
    Ok(w)
}

/// A curve `c` cutting the surface into a sphere `b_side` holding every
/// boundary component and a one-holed piece `c_side` holding the genus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wrap {
    pub c: CurveClass,
    pub b_side: DomainClass,
    pub c_side: DomainClass,
}

/// Shortest (then canonically least) curve wrapping around all boundary
/// components.
pub fn wrap_construction(s: &Surface) -> Result<Wrap> {
    if s.genus == 0 {
        return Err(Error::Inadmissible("the wrap curve needs positive genus".into()));
    }
    if s.boundary_count < 3 {
        return Err(Error::Inadmissible("the wrap curve needs at least 3 boundary components".into()));
    }
    let b = s.boundary_count as u32;
    for bound in 1..=32 {
        let mut found: Vec<CurveClass> = enumerate_curves(s, bound)
            .into_iter()
            .filter(|c| c.norm() == bound)
            .filter(|c| {
                cut_detailed(s, std::slice::from_ref(c)).is_ok_and(|cut| {
                    cut.pieces.iter().any(|p| p.topo_type() == (0, b + 1) && p.original_boundaries.len() == b as usize)
                })
            })
            .collect();
        found.sort();
        if let Some(c) = found.into_iter().next() {
            let system = vec![c.clone()];
            let cut = cut_detailed(s, &system)?;
            let bi = cut.pieces.iter().position(|p| p.genus == 0).unwrap();
            let ci = 1 - bi;
            return Ok(Wrap {
                b_side: domain_of_piece(s, &system, &cut, bi)?,
                c_side: domain_of_piece(s, &system, &cut, ci)?,
                c,
            });
        }
    }
    Err(Error::SearchFailed("no wrap curve of norm <= 32".into()))
}

/// Arcs obtained from `a` by keeping its segments before the first and
/// after the last crossing with `c` and joining them along `c`; every
/// returned arc is disjoint from `c`.
pub fn reroute_along(s: &Surface, a: &ArcClass, c: &CurveClass) -> Vec<ArcClass> {
    let (cs, exits, ce) = a.open_path(s);
    let passages: Vec<Passage> = if exits.is_empty() {
        vec![Passage {
            tri: cs.tri,
            entry: Slot::Corner(cs.corner),
            exit: Slot::Corner(ce.corner),
        }]
    } else {
        a.track(s).passages().to_vec()
    };
    let cexits = c.exits(s);
    let ctrack = c.track(s);
    let nc = cexits.len();
    let runs = crossing_runs(&passages, false, ctrack.passages(), true);
    if runs.is_empty() {
        return vec![a.clone()];
    }
    let key = |r: &crate::intersection::CrossingRun| (r.i, r.i + r.len);
    let lo = runs.iter().map(key).min().unwrap();
    let hi = runs.iter().map(key).max().unwrap();
    let firsts: Vec<_> = runs.iter().filter(|r| key(r) == lo).collect();
    let lasts: Vec<_> = runs.iter().filter(|r| key(r) == hi).collect();
    let endpoints = a.endpoints(s);
    let wall = Tracked::new(s, Class::Curve(c.clone()));
    let mut out = Vec::new();
    for f in &firsts {
        for l in &lasts {
            if runs.len() > 1 && f == l {
                continue;
            }
            let d = (l.j + nc - f.j) % nc;
            let mut walks: Vec<(bool, usize)> = Vec::new();
            if runs.len() == 1 || d == 0 {
                walks.extend([(true, 0), (true, nc), (false, nc)]);
            } else {
                walks.extend([(true, d), (false, nc - d)]);
            }
            for (forward, steps) in walks {
                let mut ex: Vec<Side> = exits[..f.i].to_vec();
                for k in 0..steps {
                    if forward {
                        ex.push(cexits[(f.j + k) % nc]);
                    } else {
                        ex.push(s.glue(cexits[(f.j + 2 * nc - 1 - k) % nc]));
                    }
                }
                ex.extend_from_slice(&exits[l.i.min(exits.len())..]);
                let raw = RawPath::Open { start: cs, exits: ex, end: ce };
                let Ok(b) = arc_from_path(s, &raw) else {
                    continue;
                };
                if b.endpoints(s) == endpoints && wall.intersection(s, &Tracked::new(s, Class::Arc(b.clone()))) == 0 {
                    out.push(b);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Every pants of the sphere side obtained by rerouting a defining arc of
/// `q` along the wrap curve (just `q` when it already lies there), sorted.
pub fn b_images(s: &Surface, q: &PantsClass, wrap: &Wrap, index: Option<&PantsIndex>) -> Result<Vec<PantsClass>> {
    if !q.is_peripheral_pants() {
        return Err(Error::NotPeripheral);
    }
    let ann = annulus_domain(&wrap.c);
    let inside = |p: &PantsClass| -> Result<bool> {
        Ok(p != &ann && domains_disjoint(s, p, &ann)? && (p == &wrap.b_side || domains_disjoint(s, p, &wrap.c_side)?))
    };
    if inside(q)? {
        return Ok(vec![q.clone()]);
    }
    let arcs = match index {
        Some(idx) => idx.complete_arcs(s, q)?,
        None => pants_defining_arcs(s, q)?,
    };
    let mut images = Vec::new();
    for a in &arcs {
        for b in reroute_along(s, a, &wrap.c) {
            if let Ok(p) = pants_from_arc(s, &b) {
                if inside(&p)? {
                    images.push(p);
                }
            }
        }
    }
    images.sort();
    images.dedup();
    if images.is_empty() {
        return Err(Error::SearchFailed(format!(
            "no rerouted arc of {} stays inside B",
            Vertex::Domain(q.clone()).label()
        )));
    }
    Ok(images)
}

/// Projects a peripheral pants of the surface into the sphere side of the
/// wrap curve: the rule's choice among [`b_images`].
pub fn project_pants_into_b(s: &Surface, q: &PantsClass, wrap: &Wrap, rule: ProjectionRule, index: Option<&PantsIndex>) -> Result<PantsClass> {
    let images = b_images(s, q, wrap, index)?;
    Ok(rule.pick(&images).unwrap().clone())
}

/// Projects a path of peripheral pants into the sphere side, choosing
/// each vertex's image among [`b_images`] so that consecutive images are
/// equal or disjoint; among consistent choices the rule's order decides,
/// earliest vertex first. Repeats collapse.
pub fn project_path_into_b(s: &Surface, p: &PathWitness, wrap: &Wrap, rule: ProjectionRule, index: Option<&PantsIndex>) -> Result<PathWitness> {
    let images = p
        .vertices
        .iter()
        .map(|v| match v {
            Vertex::Domain(d) => b_images(s, d, wrap, index).map(|im| rule.order(&im)),
            _ => Err(Error::InvalidPath("expected peripheral pants".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    let n = images.len();
    if n == 0 {
        return Err(Error::InvalidPath("empty path".into()));
    }
    let compatible = |x: &PantsClass, y: &PantsClass| -> Result<bool> { Ok(x == y || domains_disjoint(s, x, y)?) };
    // alive[k][i]: image i of vertex k extends to a consistent choice of
    // images for every later vertex.
    let mut alive: Vec<Vec<bool>> = images.iter().map(|im| vec![false; im.len()]).collect();
    alive[n - 1].iter_mut().for_each(|x| *x = true);
    for k in (0..n - 1).rev() {
        for i in 0..images[k].len() {
            let mut ok = false;
            for j in 0..images[k + 1].len() {
                if alive[k + 1][j] && compatible(&images[k][i], &images[k + 1][j])? {
                    ok = true;
                    break;
                }
            }
            alive[k][i] = ok;
        }
        if !alive[k].iter().any(|&x| x) {
            return Err(Error::SearchFailed(format!(
                "no strip images of {} and {} are equal or disjoint",
                p.vertices[k].label(),
                p.vertices[k + 1].label()
            )));
        }
    }
    let mut walk = Vec::with_capacity(n);
    let mut prev: Option<&PantsClass> = None;
    for k in 0..n {
        let mut pick = None;
        for (i, x) in images[k].iter().enumerate() {
            if alive[k][i] && prev.map_or(Ok(true), |y| compatible(y, x))? {
                pick = Some(x);
                break;
            }
        }
        let x = pick.expect("alive images chain");
        walk.push(Vertex::Domain(x.clone()));
        prev = Some(x);
    }
    Ok(PathWitness::from_walk(ComplexKind::PBoundary, walk))
}

//! Truncated balls of the complexes as metric graphs.
//!
//! Every complex is handled through its 1-skeleton: vertices are canonical
//! classes, edges are disjointness of the appropriate flavour. A ball holds
//! the induced subgraph on all vertices within its enumeration bounds, so
//! distances measured inside it are upper bounds for the true distances.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::{arc_from_coords, curve_from_coords, ArcClass, Class, CurveClass, Tracked};
use crate::cut::cut_detailed;
use crate::domains::{disjoint_given_boundaries, disjointness, domain_of_piece, domains_disjoint, enumerate_domains, DomainClass};
use crate::enumerate::{enumerate_arcs, enumerate_curves};
use crate::error::{Error, Result};
use crate::surface::{admissible_for_arcs, Surface};

/// Which domains besides annuli a `SpanWithC` complex keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainFilter {
    Pants,
    PeripheralPants,
    /// Domains of one topological type `(genus, boundary circles)`.
    TopoType(u32, u32),
}

impl DomainFilter {
    pub fn accepts(&self, d: &DomainClass) -> bool {
        match self {
            DomainFilter::Pants => d.is_pants(),
            DomainFilter::PeripheralPants => d.is_peripheral_pants(),
            DomainFilter::TopoType(g, b) => d.topo_type() == (*g, *b),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComplexKind {
    C,
    A,
    #[serde(rename = "A_B")]
    AB,
    #[serde(rename = "P_boundary")]
    PBoundary,
    D,
    AC,
    #[serde(rename = "A_BC")]
    ABC,
    #[serde(rename = "P_boundary_C")]
    PBoundaryC,
    SpanWithC(DomainFilter),
}

impl ComplexKind {
    pub fn uses_arcs(&self) -> bool {
        matches!(self, ComplexKind::A | ComplexKind::AB | ComplexKind::AC | ComplexKind::ABC)
    }

    pub fn uses_domains(&self) -> bool {
        matches!(
            self,
            ComplexKind::D | ComplexKind::PBoundary | ComplexKind::PBoundaryC | ComplexKind::SpanWithC(_)
        )
    }

    /// Arc–arc edges ask for disjoint boundary graphs rather than disjoint arcs.
    fn boundary_graph_edges(&self) -> bool {
        matches!(self, ComplexKind::AB | ComplexKind::ABC)
    }

    pub fn accepts(&self, v: &Vertex) -> bool {
        match (self, v) {
            (ComplexKind::C, Vertex::Curve(_)) => true,
            (ComplexKind::A | ComplexKind::AB, Vertex::Arc(_)) => true,
            (ComplexKind::AC | ComplexKind::ABC, Vertex::Arc(_) | Vertex::Curve(_)) => true,
            (ComplexKind::D, Vertex::Domain(_)) => true,
            (ComplexKind::PBoundary, Vertex::Domain(d)) => d.is_peripheral_pants(),
            (ComplexKind::PBoundaryC, Vertex::Domain(d)) => d.is_annulus() || d.is_peripheral_pants(),
            (ComplexKind::SpanWithC(f), Vertex::Domain(d)) => d.is_annulus() || f.accepts(d),
            _ => false,
        }
    }
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexKind::C => write!(f, "C"),
            ComplexKind::A => write!(f, "A"),
            ComplexKind::AB => write!(f, "AB"),
            ComplexKind::PBoundary => write!(f, "P"),
            ComplexKind::D => write!(f, "D"),
            ComplexKind::AC => write!(f, "AC"),
            ComplexKind::ABC => write!(f, "ABC"),
            ComplexKind::PBoundaryC => write!(f, "PC"),
            ComplexKind::SpanWithC(DomainFilter::Pants) => write!(f, "span:pants"),
            ComplexKind::SpanWithC(DomainFilter::PeripheralPants) => write!(f, "span:peripheral"),
            ComplexKind::SpanWithC(DomainFilter::TopoType(g, b)) => write!(f, "span:{g},{b}"),
        }
    }
}

impl FromStr for ComplexKind {
    type Err = Error;

    /// Short names: `C A AB P D AC ABC PC`, and `span:pants`,
    /// `span:peripheral` or `span:G,B` for the spans with C.
    fn from_str(s: &str) -> Result<Self> {
        let k = match s {
            "C" => ComplexKind::C,
            "A" => ComplexKind::A,
            "AB" | "A_B" => ComplexKind::AB,
            "P" | "P_boundary" => ComplexKind::PBoundary,
            "D" => ComplexKind::D,
            "AC" => ComplexKind::AC,
            "ABC" | "A_BC" => ComplexKind::ABC,
            "PC" | "P_boundary_C" => ComplexKind::PBoundaryC,
            "span:pants" => ComplexKind::SpanWithC(DomainFilter::Pants),
            "span:peripheral" => ComplexKind::SpanWithC(DomainFilter::PeripheralPants),
            other => {
                let bad = || Error::Config(format!("unknown complex kind `{other}`"));
                let rest = other.strip_prefix("span:").ok_or_else(bad)?;
                let (g, b) = rest.split_once(',').ok_or_else(bad)?;
                let g = g.trim().parse().map_err(|_| bad())?;
                let b = b.trim().parse().map_err(|_| bad())?;
                ComplexKind::SpanWithC(DomainFilter::TopoType(g, b))
            }
        };
        Ok(k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "vertex", rename_all = "snake_case")]
pub enum Vertex {
    Curve(CurveClass),
    Arc(ArcClass),
    Domain(DomainClass),
}

impl Vertex {
    /// Short human-readable label.
    pub fn label(&self) -> String {
        let coords = |c: &[i32]| c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        match self {
            Vertex::Curve(c) => format!("c[{}]", coords(&c.coords)),
            Vertex::Arc(a) => format!("a[{}]", coords(&a.coords)),
            Vertex::Domain(DomainClass::Annulus { core }) => format!("ann[{}]", coords(&core.coords)),
            Vertex::Domain(d) => {
                let (g, b) = d.topo_type();
                let labels: Vec<String> = d.original_boundaries().iter().map(|l| l.to_string()).collect();
                let walls: Vec<String> = d.essential_boundary().iter().map(|c| format!("[{}]", coords(&c.coords))).collect();
                format!("S({g},{b}) {{{}}} {}", labels.join(","), walls.join(""))
            }
        }
    }
}

/// Re-derives `v` from its coordinates: rejects payloads that do not name
/// a canonical essential class (or, for domains, a piece of the cut along
/// the stated boundary).
pub fn check_vertex(s: &Surface, v: &Vertex) -> Result<()> {
    let bad = || Error::NotAVertex { kind: "any".into(), detail: v.label() };
    match v {
        Vertex::Curve(c) => (curve_from_coords(s, &c.coords)? == *c).then_some(()).ok_or_else(bad),
        Vertex::Arc(a) => (arc_from_coords(s, &a.coords, a.ends)? == *a).then_some(()).ok_or_else(bad),
        Vertex::Domain(DomainClass::Annulus { core }) => check_vertex(s, &Vertex::Curve(core.clone())),
        Vertex::Domain(d) => {
            let boundary = d.essential_boundary();
            for c in &boundary {
                check_vertex(s, &Vertex::Curve(c.clone()))?;
            }
            let cut = cut_detailed(s, &boundary)?;
            for i in 0..cut.pieces.len() {
                if domain_of_piece(s, &boundary, &cut, i).as_ref() == Ok(d) {
                    return Ok(());
                }
            }
            Err(Error::InvalidDomain(format!("no piece of the cut along its boundary matches {}", v.label())))
        }
    }
}

/// Kind-dispatched edge predicate, computed from scratch.
pub fn is_edge(s: &Surface, kind: ComplexKind, u: &Vertex, v: &Vertex) -> Result<bool> {
    for x in [u, v] {
        if !kind.accepts(x) {
            return Err(Error::NotAVertex {
                kind: kind.to_string(),
                detail: x.label(),
            });
        }
    }
    if u == v {
        return Err(Error::NotDistinct);
    }
    match (u, v) {
        (Vertex::Domain(x), Vertex::Domain(y)) => domains_disjoint(s, x, y),
        _ => {
            let (a, b) = (class_of(u), class_of(v));
            if kind.boundary_graph_edges() {
                if let (Class::Arc(x), Class::Arc(y)) = (&a, &b) {
                    let (ex, ey) = (x.endpoints(s), y.endpoints(s));
                    if ex.iter().any(|l| ey.contains(l)) {
                        return Ok(false);
                    }
                }
            }
            Ok(Tracked::new(s, a).intersection(s, &Tracked::new(s, b)) == 0)
        }
    }
}

fn class_of(v: &Vertex) -> Class {
    match v {
        Vertex::Curve(c) => Class::Curve(c.clone()),
        Vertex::Arc(a) => Class::Arc(a.clone()),
        Vertex::Domain(_) => unreachable!("domains have no single class"),
    }
}

/// 0 if equal, 1 if distinct, 2 if distinct and not adjacent.
pub fn certified_lower_bound(s: &Surface, kind: ComplexKind, u: &Vertex, v: &Vertex) -> Result<u32> {
    if u == v {
        if !kind.accepts(u) {
            return Err(Error::NotAVertex {
                kind: kind.to_string(),
                detail: u.label(),
            });
        }
        return Ok(0);
    }
    Ok(if is_edge(s, kind, u, v)? { 1 } else { 2 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallParams {
    /// Bound on curve norms (curves and domain boundaries).
    pub curve_norm: u32,
    /// Bound on arc norms.
    pub arc_norm: u32,
    /// Most essential boundary curves a domain may have.
    pub max_boundary_curves: usize,
}

impl BallParams {
    /// Bounds `n` for everything, with enough boundary curves for every
    /// domain of the surface.
    pub fn uniform(s: &Surface, n: u32) -> Self {
        BallParams {
            curve_norm: n,
            arc_norm: n,
            max_boundary_curves: (3 * s.genus + s.boundary_count).saturating_sub(3).max(1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComplexBall {
    pub kind: ComplexKind,
    pub genus: usize,
    pub boundary_count: usize,
    pub params: BallParams,
    pub vertices: Vec<Vertex>,
    pub adjacency: Vec<Vec<usize>>,
    /// Whether all neighbours of a vertex in the full complex are present;
    /// truncation makes this false in general.
    pub complete: Vec<bool>,
    index: HashMap<Vertex, usize>,
}

/// Versioned on-disk form of a ball.
#[derive(Serialize, Deserialize)]
struct BallDoc {
    schema: String,
    kind: ComplexKind,
    genus: usize,
    boundary_count: usize,
    params: BallParams,
    vertices: Vec<Vertex>,
    edges: Vec<[usize; 2]>,
    complete: Vec<bool>,
}

const BALL_SCHEMA: &str = "curvecx.ball/1";

impl ComplexBall {
    fn assemble(kind: ComplexKind, s: &Surface, params: BallParams, vertices: Vec<Vertex>, adjacency: Vec<Vec<usize>>) -> Self {
        let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        ComplexBall {
            kind,
            genus: s.genus,
            boundary_count: s.boundary_count,
            params,
            complete: vec![false; vertices.len()],
            vertices,
            adjacency,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.index.contains_key(v)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Breadth-first distances from `src`, `None` where unreachable.
    pub fn distances_from(&self, src: usize) -> Vec<Option<u32>> {
        self.bfs(src, u32::MAX).0
    }

    fn bfs(&self, src: usize, max_depth: u32) -> (Vec<Option<u32>>, Vec<usize>) {
        let n = self.len();
        let mut dist = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            if d == max_depth {
                continue;
            }
            for &y in &self.adjacency[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        (dist, parent)
    }

    /// Shortest path by index within the ball, optionally capped in length.
    pub fn shortest_path_indices(&self, u: usize, v: usize, max_len: Option<u32>) -> Option<Vec<usize>> {
        let (dist, parent) = self.bfs(u, max_len.unwrap_or(u32::MAX));
        dist[v]?;
        let mut path = vec![v];
        let mut x = v;
        while x != u {
            x = parent[x];
            path.push(x);
        }
        path.reverse();
        Some(path)
    }

    pub fn witness(&self, path: &[usize]) -> PathWitness {
        PathWitness {
            kind: self.kind,
            vertices: path.iter().map(|&i| self.vertices[i].clone()).collect(),
        }
    }

    pub fn connected_components(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut count = 0;
        for i in 0..self.len() {
            if seen[i] {
                continue;
            }
            count += 1;
            for (j, d) in self.distances_from(i).into_iter().enumerate() {
                if d.is_some() {
                    seen[j] = true;
                }
            }
        }
        count
    }

    pub fn to_json(&self) -> String {
        let mut edges = Vec::new();
        for (i, adj) in self.adjacency.iter().enumerate() {
            for &j in adj {
                if i < j {
                    edges.push([i, j]);
                }
            }
        }
        let doc = BallDoc {
            schema: BALL_SCHEMA.into(),
            kind: self.kind,
            genus: self.genus,
            boundary_count: self.boundary_count,
            params: self.params,
            vertices: self.vertices.clone(),
            edges,
            complete: self.complete.clone(),
        };
        serde_json::to_string(&doc).expect("ball serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: BallDoc = serde_json::from_str(text).map_err(|e| Error::Config(format!("bad ball document: {e}")))?;
        if doc.schema != BALL_SCHEMA {
            return Err(Error::Config(format!("unsupported ball schema `{}`", doc.schema)));
        }
        let n = doc.vertices.len();
        let mut adjacency = vec![Vec::new(); n];
        for [i, j] in doc.edges {
            if i >= n || j >= n || i == j {
                return Err(Error::Config(format!("bad edge {i}-{j}")));
            }
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for a in &mut adjacency {
            a.sort();
            a.dedup();
        }
        let index = doc.vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        Ok(ComplexBall {
            kind: doc.kind,
            genus: doc.genus,
            boundary_count: doc.boundary_count,
            params: doc.params,
            complete: doc.complete,
            vertices: doc.vertices,
            adjacency,
            index,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("graph \"{}\" {{\n", self.kind);
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  {i} [label=\"{}\"];\n", v.label().replace('"', "'")));
        }
        for (i, adj) in self.adjacency.iter().enumerate() {
            for &j in adj {
                if i < j {
                    out.push_str(&format!("  {i} -- {j};\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// All vertices of `kind` within `params`, sorted.
pub fn ball_vertices(s: &Surface, kind: ComplexKind, params: &BallParams) -> Vec<Vertex> {
    let mut v: Vec<Vertex> = Vec::new();
    if matches!(kind, ComplexKind::C | ComplexKind::AC | ComplexKind::ABC) {
        v.extend(enumerate_curves(s, params.curve_norm).into_iter().map(Vertex::Curve));
    }
    if kind.uses_arcs() {
        v.extend(enumerate_arcs(s, params.arc_norm).into_iter().map(Vertex::Arc));
    }
    if kind.uses_domains() {
        v.extend(
            enumerate_domains(s, params.curve_norm, params.max_boundary_curves)
                .into_iter()
                .map(Vertex::Domain)
                .filter(|d| kind.accepts(d)),
        );
    }
    v.sort();
    v
}

pub fn build_ball(s: &Surface, kind: ComplexKind, params: BallParams) -> Result<ComplexBall> {
    if kind.uses_arcs() && !admissible_for_arcs(s) {
        return Err(Error::Inadmissible(format!(
            "arc complexes need b >= 3 and S != S_(0,4); got S_({},{})",
            s.genus, s.boundary_count
        )));
    }
    let vertices = ball_vertices(s, kind, &params);
    Ok(induced_ball(s, kind, params, vertices))
}

/// The induced subgraph on a given vertex list (which must be sorted and
/// accepted by `kind`).
pub fn induced_ball(s: &Surface, kind: ComplexKind, params: BallParams, vertices: Vec<Vertex>) -> ComplexBall {
    let edges = EdgeCache::new(s, kind, &vertices);
    let n = vertices.len();
    let adjacency: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).filter(|&j| j != i && edges.edge(i, j)).collect())
        .collect();
    ComplexBall::assemble(kind, s, params, vertices, adjacency)
}

/// Precomputed data making repeated edge queries on a vertex list cheap.
struct EdgeCache<'a> {
    s: &'a Surface,
    kind: ComplexKind,
    vertices: &'a [Vertex],
    tracked: Vec<Option<Tracked>>,
    ends: Vec<Option<[u32; 2]>>,
    curves: Vec<CurveClass>,
    walls: Vec<Vec<usize>>,
    curve_disjoint: Vec<Vec<bool>>,
}

impl<'a> EdgeCache<'a> {
    fn new(s: &'a Surface, kind: ComplexKind, vertices: &'a [Vertex]) -> Self {
        let tracked = vertices
            .iter()
            .map(|v| match v {
                Vertex::Domain(_) => None,
                other => Some(Tracked::new(s, class_of(other))),
            })
            .collect();
        let ends = vertices
            .iter()
            .map(|v| match v {
                Vertex::Arc(a) => Some(a.endpoints(s)),
                _ => None,
            })
            .collect();
        let curves: Vec<CurveClass> = vertices
            .iter()
            .filter_map(|v| match v {
                Vertex::Domain(d) => Some(d.essential_boundary()),
                _ => None,
            })
            .flatten()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let walls = vertices
            .iter()
            .map(|v| match v {
                Vertex::Domain(d) => d
                    .essential_boundary()
                    .iter()
                    .map(|c| curves.binary_search(c).unwrap())
                    .collect(),
                _ => Vec::new(),
            })
            .collect();
        let curve_disjoint = disjointness(s, &curves);
        EdgeCache {
            s,
            kind,
            vertices,
            tracked,
            ends,
            curves,
            walls,
            curve_disjoint,
        }
    }

    fn edge(&self, i: usize, j: usize) -> bool {
        match (&self.vertices[i], &self.vertices[j]) {
            (Vertex::Domain(x), Vertex::Domain(y)) => {
                let mut ids: Vec<usize> = self.walls[i].iter().chain(&self.walls[j]).copied().collect();
                ids.sort();
                ids.dedup();
                for (k, &a) in ids.iter().enumerate() {
                    for &b in &ids[k + 1..] {
                        if !self.curve_disjoint[a][b] {
                            return false;
                        }
                    }
                }
                let system: Vec<CurveClass> = ids.iter().map(|&k| self.curves[k].clone()).collect();
                disjoint_given_boundaries(self.s, &system, x, y).unwrap_or(false)
            }
            _ => {
                if self.kind.boundary_graph_edges() {
                    if let (Some(a), Some(b)) = (self.ends[i], self.ends[j]) {
                        if a.iter().any(|l| b.contains(l)) {
                            return false;
                        }
                    }
                }
                let (a, b) = (self.tracked[i].as_ref().unwrap(), self.tracked[j].as_ref().unwrap());
                a.intersection(self.s, b) == 0
            }
        }
    }
}

/// An explicit edge path in a named complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitness {
    pub kind: ComplexKind,
    pub vertices: Vec<Vertex>,
}

impl PathWitness {
    /// A path from a walk: consecutive repeats collapse and closed loops are
    /// cut out, so the result visits distinct vertices and is never longer.
    pub fn from_walk(kind: ComplexKind, walk: Vec<Vertex>) -> Self {
        let mut out: Vec<Vertex> = Vec::with_capacity(walk.len());
        for v in walk {
            if let Some(k) = out.iter().position(|x| *x == v) {
                out.truncate(k + 1);
            } else {
                out.push(v);
            }
        }
        PathWitness { kind, vertices: out }
    }

    pub fn length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn first(&self) -> Option<&Vertex> {
        self.vertices.first()
    }

    pub fn last(&self) -> Option<&Vertex> {
        self.vertices.last()
    }

    /// Re-checks every edge from scratch and that vertices are distinct.
    pub fn validate(&self, s: &Surface) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::InvalidPath("empty path".into()));
        }
        let distinct: BTreeSet<&Vertex> = self.vertices.iter().collect();
        if distinct.len() != self.vertices.len() {
            return Err(Error::InvalidPath("path repeats a vertex".into()));
        }
        if let Some(v) = self.vertices.iter().find(|v| !self.kind.accepts(v)) {
            return Err(Error::NotAVertex {
                kind: self.kind.to_string(),
                detail: v.label(),
            });
        }
        for (k, w) in self.vertices.windows(2).enumerate() {
            if !is_edge(s, self.kind, &w[0], &w[1])? {
                return Err(Error::InvalidPath(format!("step {k} is not an edge: {} / {}", w[0].label(), w[1].label())));
            }
        }
        Ok(())
    }
}

/// Shortest path within the ball, or `None` if `v` is unreachable from `u`
/// inside it.
pub fn distance_upper(ball: &ComplexBall, u: &Vertex, v: &Vertex) -> Result<Option<(u32, PathWitness)>> {
    let find = |x: &Vertex| {
        ball.index_of(x).ok_or_else(|| Error::NotAVertex {
            kind: format!("{} ball", ball.kind),
            detail: x.label(),
        })
    };
    let (i, j) = (find(u)?, find(v)?);
    Ok(ball
        .shortest_path_indices(i, j, None)
        .map(|p| ((p.len() - 1) as u32, ball.witness(&p))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub radius: u32,
    /// A vertex realizing the radius.
    pub worst: Option<Vertex>,
    /// Constructed subset members lying outside the ball.
    pub outside_ball: usize,
}

/// Largest distance from a ball vertex to the subset, each distance
/// certified by an explicitly constructed path whose edges are re-checked.
///
/// `construct` returns a path starting at the given vertex and ending in
/// the subset; it is not consulted for subset members.
pub fn density_radius<P, F>(s: &Surface, ball: &ComplexBall, in_subset: P, construct: F) -> Result<DensityReport>
where
    P: Fn(&Vertex) -> bool + Sync,
    F: Fn(&Vertex) -> Result<Vec<Vertex>> + Sync,
{
    let per: Vec<Result<(u32, bool)>> = ball
        .vertices
        .par_iter()
        .map(|v| {
            if in_subset(v) {
                return Ok((0, false));
            }
            let fail = |why: String| Error::SearchFailed(format!("no path to the subset from {}: {why}", v.label()));
            let path = construct(v).map_err(|e| fail(e.to_string()))?;
            if path.first() != Some(v) || !path.last().is_some_and(&in_subset) {
                return Err(fail("construction has the wrong endpoints".into()));
            }
            let w = PathWitness { kind: ball.kind, vertices: path };
            w.validate(s).map_err(|e| fail(e.to_string()))?;
            Ok((w.length() as u32, !ball.contains(w.last().unwrap())))
        })
        .collect();
    let mut report = DensityReport { radius: 0, worst: None, outside_ball: 0 };
    for (v, r) in ball.vertices.iter().zip(per) {
        let (d, outside) = r?;
        if outside {
            report.outside_ball += 1;
        }
        if d > report.radius || report.worst.is_none() && d == report.radius {
            report.radius = d;
            report.worst = Some(v.clone());
        }
    }
    Ok(report)
}

//! Verification checks T1–T8 over truncated balls.
//!
//! Each check states its claims as criteria with exact integer bounds and
//! backs every pass by witnesses re-validated edge by edge. Claims whose
//! lower bounds cannot be certified inside a finite ball are reported as
//! evidence only and never fail a run.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classes::{intersection_number, ArcClass, Class};
use crate::complex::{build_ball, certified_lower_bound, density_radius, induced_ball, is_edge, BallParams, ComplexBall, ComplexKind, PathWitness, Vertex};
use crate::domains::{annulus_domain, domains_disjoint, pants_from_arc, DomainClass, PantsClass, PantsIndex, Peripherality};
use crate::enumerate::enumerate_arcs;
use crate::error::{Error, Result};
use crate::maps::{arc_from_pants, arc_path_to_bgraph_path, b_images, bgraph_connector, coarse_project, project_path_into_b, project_path_to_curves, rectify_genus0_path, wrap_construction, ProjectionRule, Wrap};
use crate::surface::{admissible_for_arcs, build_surface, complexity, Surface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CheckId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
}

impl CheckId {
    pub const ALL: [CheckId; 8] = [CheckId::T1, CheckId::T2, CheckId::T3, CheckId::T4, CheckId::T5, CheckId::T6, CheckId::T7, CheckId::T8];

    /// Whether the check's hypotheses hold on `s`.
    pub fn applies_to(&self, s: &Surface) -> bool {
        let arcs = admissible_for_arcs(s);
        match self {
            CheckId::T1 | CheckId::T2 => complexity(s) > 0,
            CheckId::T3 | CheckId::T4 | CheckId::T5 | CheckId::T8 => arcs,
            CheckId::T6 => s.genus == 0 && s.boundary_count >= 5,
            CheckId::T7 => s.genus >= 1 && s.boundary_count >= 3,
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown check `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    EvidenceOnly,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Criterion {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
    /// Replayable inputs for a failure (or for an evidence-level anomaly).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: CheckId,
    pub surface: [usize; 2],
    pub params: Value,
    pub verdict: Verdict,
    pub criteria: Vec<Criterion>,
    pub stats: BTreeMap<String, Value>,
    pub runtime_ms: u128,
}

impl CheckReport {
    pub fn summary_line(&self) -> String {
        let v = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::EvidenceOnly => "EVIDENCE",
        };
        format!(
            "{} S_({},{}) {v} ({} criteria, {} ms)",
            self.check,
            self.surface[0],
            self.surface[1],
            self.criteria.len(),
            self.runtime_ms
        )
    }
}

/// Collects criteria and statistics while a check runs.
struct Recorder {
    criteria: Vec<Criterion>,
    stats: BTreeMap<String, Value>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { criteria: Vec::new(), stats: BTreeMap::new() }
    }

    fn assert(&mut self, name: &str, ok: bool, detail: String, counterexample: Option<Value>) {
        self.criteria.push(Criterion {
            name: name.into(),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            detail,
            counterexample: if ok { None } else { counterexample },
        });
    }

    fn evidence(&mut self, name: &str, detail: String, payload: Option<Value>) {
        self.criteria.push(Criterion {
            name: name.into(),
            verdict: Verdict::EvidenceOnly,
            detail,
            counterexample: payload,
        });
    }

    fn stat(&mut self, key: &str, v: impl Serialize) {
        self.stats.insert(key.into(), json!(v));
    }

    fn finish(self, check: CheckId, s: &Surface, params: Value, start: Instant) -> CheckReport {
        let verdict = if self.criteria.iter().any(|c| c.verdict == Verdict::Fail) {
            Verdict::Fail
        } else if self.criteria.iter().any(|c| c.verdict == Verdict::Pass) {
            Verdict::Pass
        } else {
            Verdict::EvidenceOnly
        };
        CheckReport {
            check,
            surface: [s.genus, s.boundary_count],
            params,
            verdict,
            criteria: self.criteria,
            stats: self.stats,
            runtime_ms: start.elapsed().as_millis(),
        }
    }
}

/// Tally of a property over many cases, keeping the first counterexample.
struct Tally {
    tested: usize,
    failed: usize,
    first: Option<Value>,
}

impl Tally {
    fn new() -> Self {
        Tally { tested: 0, failed: 0, first: None }
    }

    fn record(&mut self, ok: bool, payload: impl FnOnce() -> Value) {
        self.tested += 1;
        if !ok {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(payload());
            }
        }
    }

    fn ok(&self) -> bool {
        self.failed == 0
    }

    /// No failures, and at least one case was tested.
    fn ok_nonempty(&self) -> bool {
        self.ok() && self.tested > 0
    }

    /// The first failing case, or why there is none to show.
    fn counterexample(&self) -> Option<Value> {
        match (&self.first, self.tested) {
            (Some(x), _) => Some(x.clone()),
            (None, 0) => Some(json!({"reason": "no cases at this bound"})),
            (None, _) => None,
        }
    }

    fn detail(&self, what: &str) -> String {
        format!("{}/{} {what}", self.tested - self.failed, self.tested)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub surfaces: Vec<(usize, usize)>,
    pub checks: Vec<CheckId>,
    /// Curve norm bound for balls.
    pub norm: u32,
    /// Minimum number of sampled cases where a check samples.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            surfaces: vec![(0, 5), (0, 6), (1, 3)],
            checks: CheckId::ALL.to_vec(),
            norm: 12,
            samples: 500,
            seed: 7,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.surfaces.is_empty() || self.checks.is_empty() {
            return Err(Error::Config("nothing to run".into()));
        }
        if self.norm < 4 {
            return Err(Error::Config("norm must be at least 4".into()));
        }
        for &(g, b) in &self.surfaces {
            build_surface(g, b)?;
        }
        Ok(())
    }

    /// Bounds for a surface: curve norm, sampled-arc norm, A_B-ball arc norm.
    ///
    /// Connectors between short arcs may leave a ball of the same radius,
    /// so the A_B ball is taken wider than the sampled arcs; the margins
    /// are sized for a single-core run of the whole suite.
    pub fn arc_bounds(&self, s: &Surface) -> (u32, u32) {
        let n = self.norm;
        match (s.genus, s.boundary_count) {
            (0, 5) => (n / 2, n + 4),
            (1, 3) => (n / 2 - 1, n + 2),
            _ => (n / 2 - 1, n - 2),
        }
    }

    fn rng(&self, check: CheckId, s: &Surface) -> ChaCha8Rng {
        let tag = (check as u64) << 16 | (s.genus as u64) << 8 | s.boundary_count as u64;
        ChaCha8Rng::seed_from_u64(self.seed ^ tag.wrapping_mul(0x9e3779b97f4a7c15))
    }
}

pub fn run_check(id: CheckId, s: &Surface, cfg: &SuiteConfig) -> Result<CheckReport> {
    if !id.applies_to(s) {
        return Err(Error::Inadmissible(format!("{id} does not apply to S_({},{})", s.genus, s.boundary_count)));
    }
    match id {
        CheckId::T1 => check_t1_isometric_inclusion(s, cfg),
        CheckId::T2 => check_t2_coarse_projection(s, cfg),
        CheckId::T3 => check_t3_boundary_graph_lemma(s, cfg),
        CheckId::T4 => check_t4_bilipschitz(s, cfg),
        CheckId::T5 => check_t5_pants_duality(s, cfg),
        CheckId::T6 => check_t6_genus0(s, cfg),
        CheckId::T7 => check_t7_genus_positive(s, cfg),
        CheckId::T8 => check_t8_ac_diagram(s, cfg),
    }
}

/// Runs every configured check on every configured surface where it applies.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for &(g, b) in &cfg.surfaces {
        let s = build_surface(g, b)?;
        for &id in &cfg.checks {
            if id.applies_to(&s) {
                out.push(run_check(id, &s, cfg)?);
            }
        }
    }
    Ok(out)
}

pub fn suite_failed(reports: &[CheckReport]) -> bool {
    reports.iter().any(|r| r.verdict == Verdict::Fail)
}

fn vjson<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn domain(v: &Vertex) -> &DomainClass {
    match v {
        Vertex::Domain(d) => d,
        _ => unreachable!("domain ball"),
    }
}

fn arc(v: &Vertex) -> &ArcClass {
    match v {
        Vertex::Arc(a) => a,
        _ => unreachable!("arc vertex"),
    }
}

/// A random walk from a vertex satisfying `start`, continued until it ends
/// at a different vertex satisfying `end` after at least `min_len` steps,
/// turned into a simple path.
fn random_path<R: Rng>(
    ball: &ComplexBall,
    rng: &mut R,
    starts: &[usize],
    end: impl Fn(usize) -> bool,
    min_len: usize,
    max_len: usize,
) -> Option<PathWitness> {
    let &u = starts.choose(rng)?;
    let target = rng.gen_range(min_len..=max_len);
    let mut walk = vec![u];
    let mut x = u;
    for step in 0..4 * max_len {
        let &y = ball.adjacency[x].choose(rng)?;
        walk.push(y);
        x = y;
        if step + 1 >= target && end(x) && x != u {
            let p = PathWitness::from_walk(ball.kind, walk.iter().map(|&i| ball.vertices[i].clone()).collect());
            return (p.length() >= 1).then_some(p);
        }
    }
    None
}

/// Sampled paths: random walks plus ball geodesics between random pairs.
fn sample_paths<R: Rng>(ball: &ComplexBall, rng: &mut R, starts: &[usize], end: impl Fn(usize) -> bool + Copy, count: usize) -> Vec<PathWitness> {
    let ends: Vec<usize> = (0..ball.len()).filter(|&i| end(i)).collect();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 20 * count {
        attempts += 1;
        if attempts % 4 == 0 {
            let (Some(&u), Some(&v)) = (starts.choose(rng), ends.choose(rng)) else { break };
            if u != v {
                if let Some(p) = ball.shortest_path_indices(u, v, None) {
                    out.push(ball.witness(&p));
                }
            }
        } else if let Some(p) = random_path(ball, rng, starts, end, 1, 8) {
            out.push(p);
        }
    }
    out
}

fn check_t1_isometric_inclusion(s: &Surface, cfg: &SuiteConfig) -> Result<CheckReport> {
    let start = Instant::now();
    let mut rec = Recorder::new();
    let params = BallParams::uniform(s, cfg.norm);
    let c_ball = build_ball(s, ComplexKind::C, params)?;
    let d_ball = build_ball(s, ComplexKind::D, params)?;
    rec.stat("c_vertices", c_ball.len());
    rec.stat("d_vertices", d_ball.len());
    rec.stat("d_edges", d_ball.edge_count());
    let ann_index: Vec<usize> = c_ball
        .vertices
        .iter()
        .map(|v| match v {
            Vertex::Curve(c) => d_ball.index_of(&Vertex::Domain(annulus_domain(c))).expect("annuli are in the D ball"),
            _ => unreachable!(),
        })
        .collect();

    // (a) i preserves and reflects edges, re-checked from scratch.
    let mut edges = Tally::new();
    for i in 0..c_ball.len() {
        for j in i + 1..c_ball.len() {
            let (ai, aj) = (&d_ball.vertices[ann_index[i]], &d_ball.vertices[ann_index[j]]);
            let c_edge = c_ball.adjacent(i, j);
            let d_edge = is_edge(s, ComplexKind::D, ai, aj)?;
            edges.record(c_edge == d_edge, || json!({"u": c_ball.vertices[i], "v": c_ball.vertices[j], "c_edge": c_edge, "d_edge": d_edge}));
        }
    }
    rec.assert("inclusion preserves and reflects edges", edges.ok(), edges.detail("curve pairs agree"), edges.first);

    // Certified distance-2 pairs agree in both complexes.
    let mut twos = Tally::new();
    let mut exact_two = 0;
    for i in 0..c_ball.len() {
        let dc = c_ball.distances_from(i);
        let dd = d_ball.distances_from(ann_index[i]);
        for j in i + 1..c_ball.len() {
            if c_ball.adjacent(i, j) {
                continue;
            }
            let (c2, d2) = (dc[j] == Some(2), dd[ann_index[j]] == Some(2));
            if c2 {
                exact_two += 1;
            }
            twos.record(c2 == d2, || json!({"u": c_ball.vertices[i], "v": c_ball.vertices[j], "d_c": dc[j], "d_d": dd[ann_index[j]]}));
        }
    }
    rec.stat("certified_distance_two_pairs", exact_two);
    rec.assert("certified distance 2 agrees", twos.ok(), twos.detail("crossing pairs with matching distance-2 certificates"), twos.first);

    // (b) projecting sampled D paths never increases length.
    let mut rng = cfg.rng(CheckId::T1, s);
    let starts: Vec<usize> = ann_index.clone();
    let is_ann = |i: usize| domain(&d_ball.vertices[i]).is_annulus();
    let paths = sample_paths(&d_ball, &mut rng, &starts, is_ann, cfg.samples.max(1000));
    let results: Vec<(bool, Value)> = paths
        .par_iter()
        .map(|p| {
            let out = project_path_to_curves(s, p, ProjectionRule::CanonicalMin);
            let ok = match &out {
                Ok(q) => {
                    let ends_ok = q.first() == Some(&Vertex::Curve(coarse_project(domain(p.first().unwrap()), ProjectionRule::CanonicalMin)))
                        && q.last() == Some(&Vertex::Curve(coarse_project(domain(p.last().unwrap()), ProjectionRule::CanonicalMin)));
                    ends_ok && q.length() <= p.length() && q.validate(s).is_ok()
                }
                Err(_) => false,
            };
            (ok, json!({"path": p, "error": out.err().map(|e| e.to_string())}))
        })
        .collect();
    let mut proj = Tally::new();
    for (ok, payload) in results {
        proj.record(ok, || payload);
    }
    rec.stat("max_sampled_path_length", paths.iter().map(|p| p.length()).max().unwrap_or(0));
    rec.assert("path projection never lengthens", proj.ok() && proj.tested >= 1000.min(cfg.samples.max(1000)), proj.detail("sampled D paths project to valid, no longer C paths"), proj.first);

    // (c) density of the annuli by the essential-boundary construction.
    let density = density_radius(
        s,
        &d_ball,
        |v| domain(v).is_annulus(),
        |v| Ok(vec![v.clone(), Vertex::Domain(annulus_domain(&coarse_project(domain(v), ProjectionRule::CanonicalMin)))]),
    );
    match density {
        Ok(r) => {
            rec.stat("density_outside_ball", r.outside_ball);
            rec.assert("annuli are exactly 1-dense", r.radius == 1, format!("radius {}", r.radius), r.worst.map(|w| vjson(&w)));
        }
        Err(e) => rec.assert("annuli are exactly 1-dense", false, e.to_string(), None),
    }
    Ok(rec.finish(CheckId::T1, s, vjson(&params), start))
}

fn check_t2_coarse_projection(s: &Surface, cfg: &SuiteConfig) -> Result<CheckReport> {
    let start = Instant::now();
    let mut rec = Recorder::new();
    let params = BallParams::uniform(s, cfg.norm);
    let d_ball = build_ball(s, ComplexKind::D, params)?;
    let rules = ProjectionRule::presets(cfg.seed);
    rec.stat("domains", d_ball.len());
    rec.stat("rules", rules);

    let mut ident = Tally::new();
    let mut pull = Tally::new();
    let mut pairs = Tally::new();
    for v in &d_ball.vertices {
        let x = domain(v);
        if let DomainClass::Annulus { core } = x {
            for r in rules {
                ident.record(&coarse_project(x, r) == core, || json!({"curve": core, "rule": r}));
            }
            continue;
        }
        for r in rules {
            let c = coarse_project(x, r);
            let ok = is_edge(s, ComplexKind::D, v, &Vertex::Domain(annulus_domain(&c)))?;
            pull.record(ok, || json!({"domain": x, "rule": r}));
        }
        for (k, &r1) in rules.iter().enumerate() {
            for &r2 in &rules[k + 1..] {
                let (a, b) = (coarse_project(x, r1), coarse_project(x, r2));
                let ok = a == b || is_edge(s, ComplexKind::C, &Vertex::Curve(a.clone()), &Vertex::Curve(b.clone()))?;
                pairs.record(ok, || json!({"domain": x, "rules": [r1, r2]}));
            }
        }
    }
    rec.assert("projection after inclusion is the identity", ident.ok(), ident.detail("curve/rule cases"), ident.first);
    rec.assert("every domain is within 1 of its projection", pull.ok(), pull.detail("domain/rule cases"), pull.first);
    rec.assert("projections under two rules are equal or adjacent", pairs.ok(), pairs.detail("domain/rule-pair cases"), pairs.first);

    // Adjacent domains project to equal or disjoint curves.
    let mut lip = Tally::new();
    for i in 0..d_ball.len() {
        for &j in &d_ball.adjacency[i] {
            if j < i {
                continue;
            }
            for r in rules {
                let (a, b) = (coarse_project(domain(&d_ball.vertices[i]), r), coarse_project(domain(&d_ball.vertices[j]), r));
                let ok = a == b || is_edge(s, ComplexKind::C, &Vertex::Curve(a), &Vertex::Curve(b))?;
                lip.record(ok, || json!({"x": d_ball.vertices[i], "y": d_ball.vertices[j], "rule": r}));
            }
        }
    }
    rec.assert("adjacent domains project within distance 1", lip.ok(), lip.detail("edge/rule cases"), lip.first);
    Ok(rec.finish(CheckId::T2, s, vjson(&params), start))
}

/// Sample arcs, an A ball on them and a wider A_B ball for connectors.
struct ArcBalls {
    a_ball: ComplexBall,
    ab_ball: ComplexBall,
    sample_norm: u32,
    ab_norm: u32,
}

fn arc_balls(s: &Surface, cfg: &SuiteConfig) -> Result<ArcBalls> {
    let (sample_norm, ab_norm) = cfg.arc_bounds(s);
    let mut p = BallParams::uniform(s, cfg.norm);
    p.arc_norm = sample_norm;
    let a_ball = build_ball(s, ComplexKind::A, p)?;
    p.arc_norm = ab_norm;
    let ab_ball = build_ball(s, ComplexKind::AB, p)?;
    Ok(ArcBalls { a_ball, ab_ball, sample_norm, ab_norm })
}

fn lemma_bound(s: &Surface) -> u32 {
    if s.genus == 0 && s.boundary_count >= 5 {
        2
    } else {
        4
    }
}

fn check_t3_boundary_graph_lemma(s: &Surface, cfg: &SuiteConfig) -> Result<CheckReport> {
    let start = Instant::now();
    let mut rec = Recorder::new();
    let balls = arc_balls(s, cfg)?;
    let bound = lemma_bound(s);
    let a = &balls.a_ball;
    let mut pairs: Vec<(usize, usize)> = (0..a.len()).flat_map(|i| a.adjacency[i].iter().filter(move |&&j| j > i).map(move |&j| (i, j))).collect();
    let mut rng = cfg.rng(CheckId::T3, s);
    pairs.shuffle(&mut rng);
    pairs.truncate(cfg.samples.max(500));
    pairs.sort();
    let results: Vec<std::result::Result<u32, Value>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = (arc(&a.vertices[i]), arc(&a.vertices[j]));
            let fail = |why: String| json!({"a": x, "b": y, "why": why});
            let w = bgraph_connector(&balls.ab_ball, x, y, bound).map_err(|e| fail(e.to_string()))?;
            w.validate(s).map_err(|e| fail(e.to_string()))?;
            Ok(w.length() as u32)
        })
        .collect();
    let mut t = Tally::new();
    let mut hist: BTreeMap<u32, usize> = BTreeMap::new();
    for r in results {
        match r {
            Ok(l) => {
                *hist.entry(l).or_default() += 1;
                t.record(l <= bound, || Value::Null);
            }
            Err(payload) => t.record(false, || payload),
        }
    }
    rec.stat("sample_arc_norm", balls.sample_norm);
    rec.stat("ab_ball_arc_norm", balls.ab_norm);
    rec.stat("ab_ball_vertices", balls.ab_ball.len());
    rec.stat("connector_length_histogram", &hist);
    rec.assert(
        &format!("disjoint arcs are within {bound} in A_B"),
        t.ok() && t.tested >= 500.min(a.edge_count()),
        t.detail("sampled disjoint pairs with a validated connector"),
        t.first,
    );
    Ok(rec.finish(CheckId::T3, s, json!({"norm": cfg.norm, "sample_arc_norm": balls.sample_norm, "ab_arc_norm": balls.ab_norm}), start))
}

fn check_t4_bilipschitz(s: &Surface, cfg: &SuiteConfig) -> Result<CheckReport> {
    let start = Instant::now();
    let mut rec = Recorder::new();
    let balls = arc_balls(s, cfg)?;
    let a = &balls.a_ball;
    let mut rng = cfg.rng(CheckId::T4, s);
    let all: Vec<usize> = (0..a.len()).collect();
    let paths = sample_paths(a, &mut rng, &all, |_| true, cfg.samples);
    let results: Vec<(bool, usize, Value)> = paths
        .par_iter()
        .map(|p| match arc_path_to_bgraph_path(s, p, &balls.ab_ball, 4) {
            Ok(q) => {
                let ok = q.validate(s).is_ok() && q.length() <= 4 * p.length() && q.first() == p.first() && q.last() == p.last();
                (ok, q.length(), json!({"path": p, "transported": q}))
            }
            Err(e) => (false, 0, json!({"path": p, "error": e.to_string()})),
        })
        .collect();
    let mut t = Tally::new();
    let mut worst_ratio = 0.0f64;
    for ((ok, len, payload), p) in results.into_iter().zip(&paths) {
        worst_ratio = worst_ratio.max(len as f64 / p.length() as f64);
        t.record(ok, || payload);
    }
    rec.stat("paths", paths.len());
    rec.stat("worst_length_ratio", worst_ratio);
    rec.assert("transported paths at most 4 times longer", t.ok() && !paths.is_empty(), t.detail("sampled A paths"), t.first);

    // d_A <= d_A_B where both are certified: A_B edges are A edges, and
    // A_B witnesses of length 2 are A paths.
    let mut cert = Tally::new();
    let ab = &balls.ab_ball;
    for i in 0..a.len() {
        let Some(ai) = ab.index_of(&a.vertices[i]) else { continue };
        let dist = ab.distances_from(ai);
        for j in i + 1..a.len() {
            let Some(aj) = ab.index_of(&a.vertices[j]) else { continue };
            let d_ab = dist[aj];
            let lower_a = certified_lower_bound(s, ComplexKind::A, &a.vertices[i], &a.vertices[j])?;
            if let Some(d) = d_ab.filter(|&d| d <= 2) {
                let ok = lower_a <= d && {
                    let w = PathWitness {
                        kind: ComplexKind::A,
                        vertices: ab.witness(&ab.shortest_path_indices(ai, aj, Some(2)).unwrap()).vertices,
                    };
                    w.validate(s).is_ok()
                };
                cert.record(ok, || json!({"a": a.vertices[i], "b": a.vertices[j], "d_ab": d, "lower_a": lower_a}));
            }
        }
    }
    rec.assert("d_A <= d_A_B on certified pairs", cert.ok(), cert.detail("pairs with A_B distance <= 2"), cert.first);
    Ok(rec.finish(CheckId::T4, s, json!({"norm": cfg.norm, "sample_arc_norm": balls.sample_norm, "ab_arc_norm": balls.ab_norm}), start))
}

/// Peripheral pants of the P ball with their complete defining-arc fibres.
struct PantsData {
    p_ball: ComplexBall,
    index: PantsIndex,
    fibres: BTreeMap<PantsClass, Vec<ArcClass>>,
}

fn pants_data(s: &Surface, cfg: &SuiteConfig, arc_norm: u32) -> Result<PantsData> {
    let p_ball = build_ball(s, ComplexKind::PBoundary, BallParams::uniform(s, cfg.norm))?;
    let index = PantsIndex::build(s, &enumerate_arcs(s, arc_norm));
    let fibres: Vec<(PantsClass, Result<Vec<ArcClass>>)> = p_ball
        .vertices
        .par_iter()
        .map(|v| (domain(v).clone(), index.complete_arcs(s, domain(v))))
        .collect();
    let mut map = BTreeMap::new();
    for (p, f) in fibres {
        map.insert(p, f?);
    }
    Ok(PantsData { p_ball, index, fibres: map })
}

fn check_t5_pants_duality(s: &Surface, cfg: &SuiteConfig) -> Result<CheckReport> {
    let start = Instant::now();
    let mut rec = Recorder::new();
    let rules = ProjectionRule::presets(cfg.seed);
    let (sample_norm, ab_norm) = cfg.arc_bounds(s);
    let data = pants_data(s, cfg, ab_norm.min(cfg.norm))?;
    rec.stat("pants", data.p_ball.len());

    let mut round = Tally::new();
    let mut sizes = Tally::new();
    for (p, fibre) in &data.fibres {
        let want = if p.peripherality() == Peripherality::Mono { 1 } else { 3 };
        sizes.record(fibre.len() == want, || json!({"pants": p, "arcs": fibre}));
        for r in rules {
            let a = arc_from_pants(s, p, r, Some(&data.index))?;
            round.record(pants_from_arc(s, &a).as_ref() == Ok(p), || json!({"pants": p, "rule": r}));
        }
        for a in fibre {
            round.record(pants_from_arc(s, a).as_ref() == Ok(p), || json!({"pants": p, "arc": a}));
        }
    }
    rec.assert("pants -> arc -> pants is the identity", round.ok(), round.detail("pants/rule and fibre cases"), round.first);
    rec.assert("fibres have 1 (mono) or 3 (bi) arcs", sizes.ok(), sizes.detail("pants"), sizes.first);

    // A_B ball over short arcs plus every fibre arc.
    let mut verts: BTreeSet<Vertex> = enumerate_arcs(s, ab_norm).into_iter().map(Vertex::Arc).collect();
    for f in data.fibres.values() {
        verts.extend(f.iter().cloned().map(Vertex::Arc));
    }
    let mut params = BallParams::uniform(s, cfg.norm);
    params.arc_norm = ab_norm;
    let ab = induced_ball(s, ComplexKind::AB, params, verts.into_iter().collect());
    rec.stat("ab_ball_vertices", ab.len());
    let ab_dist = |x: &ArcClass, y: &ArcClass| -> Option<u32> {
        let (i, j) = (ab.index_of(&Vertex::Arc(x.clone()))?, ab.index_of(&Vertex::Arc(y.clone()))?);
        ab.shortest_path_indices(i, j, Some(8)).map(|p| (p.len() - 1) as u32)
    };

    let mut fibre_diam = Tally::new();
    let mut max_fibre = 0;
    for (p, f) in &data.fibres {
        for (k, x) in f.iter().enumerate() {
            for y in &f[k + 1..] {
                let d = ab_dist(x, y);
                max_fibre = max_fibre.max(d.unwrap_or(99));
                fibre_diam.record(d.is_some_and(|d| d <= 8), || json!({"pants": p, "a": x, "b": y, "d": d}));
            }
        }
    }
    rec.stat("max_fibre_distance", max_fibre);
    rec.assert("bi-pants fibres have A_B diameter <= 8", fibre_diam.ok(), fibre_diam.detail("fibre pairs"), fibre_diam.first);

    let arcs = enumerate_arcs(s, sample_norm);
    let mut back = Tally::new();
    for x in &arcs {
        let p = pants_from_arc(s, x)?;
        let fibre = match data.fibres.get(&p) {
            Some(f) => f.clone(),
            None => data.index.complete_arcs(s, &p)?,
        };
        let y = ProjectionRule::CanonicalMin.pick(&fibre).unwrap();
        let d = if x == y { Some(0) } else { ab_dist(x, y) };
        back.record(d.is_some_and(|d| d <= 8), || json!({"arc": x, "image": y, "d": d}));
    }
    rec.assert("every arc is within 8 of i(pi(arc)) in A_B", back.ok(), back.detail("arcs"), back.first);

    // Edge preservation in both directions.
    let mut fwd = Tally::new();
    for i in 0..ab.len() {
        let x = arc(&ab.vertices[i]);
        if x.norm() > sample_norm {
            continue;
        }
        for &j in &ab.adjacency[i] {
            let y = arc(&ab.vertices[j]);
            if j < i || y.norm() > sample_norm {
                continue;
            }
            let (p, q) = (pants_from_arc(s, x)?, pants_from_arc(s, y)?);
            fwd.record(p != q && domains_disjoint(s, &p, &q)?, || json!({"a": x, "b": y}));
        }
    }
    rec.assert("disjoint boundary graphs give disjoint pants", fwd.ok(), fwd.detail("A_B edges"), fwd.first);
    let mut bwd = Tally::new();
    let mut canonical_bad = 0usize;
    let mut canonical_example = None;
    for i in 0..data.p_ball.len() {
        for &j in &data.p_ball.adjacency[i] {
            if j < i {
                continue;
            }
            let (p, q) = (domain(&data.p_ball.vertices[i]), domain(&data.p_ball.vertices[j]));
            let (fp, fq) = (&data.fibres[p], &data.fibres[q]);
            let bg_disjoint = |x: &ArcClass, y: &ArcClass| is_edge(s, ComplexKind::AB, &Vertex::Arc(x.clone()), &Vertex::Arc(y.clone())).unwrap_or(false);
            let some = fp.iter().any(|x| fq.iter().any(|y| bg_disjoint(x, y)));
            bwd.record(some, || json!({"p": p, "q": q}));
            if !bg_disjoint(&fp[0], &fq[0]) {
                canonical_bad += 1;
                canonical_example.get_or_insert_with(|| json!({"p": p, "q": q, "a": fp[0], "b": fq[0]}));
            }
        }
    }
    rec.assert("disjoint pants have disjoint defining boundary graphs", bwd.ok(), bwd.detail("P edges with some disjoint pair of defining arcs"), bwd.first);
    rec.evidence(
        "canonical defining arcs of disjoint pants",
        format!("{canonical_bad}/{} P edges whose canonical arcs are not A_B-adjacent", bwd.tested),
        canonical_example,
    );

    // Inclusion rules move ball distances by at most 16.
    let mut rng = cfg.rng(CheckId::T5, s);
    let n = data.p_ball.len();
    let mut quad = Tally::new();
    let mut worst = 0i64;
    for _ in 0..cfg.samples.min(n * n) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let (p, q) = (domain(&data.p_ball.vertices[i]), domain(&data.p_ball.vertices[j]));
        let (a1, b1) = (arc_from_pants(s, p, rules[0], Some(&data.index))?, arc_from_pants(s, q, rules[0], Some(&data.index))?);
        let (a2, b2) = (arc_from_pants(s, p, rules[1], Some(&data.index))?, arc_from_pants(s, q, rules[1], Some(&data.index))?);
        let full = |x: &ArcClass, y: &ArcClass| -> Option<i64> {
            if x == y {
                return Some(0);
            }
            let (i, j) = (ab.index_of(&Vertex::Arc(x.clone()))?, ab.index_of(&Vertex::Arc(y.clone()))?);
            ab.shortest_path_indices(i, j, None).map(|p| (p.len() - 1) as i64)
        };
        if let (Some(l1), Some(l2)) = (full(&a1, &b1), full(&a2, &b2)) {
            worst = worst.max((l1 - l2).abs());
            quad.record((l1 - l2).abs() <= 16, || json!({"p": p, "q": q, "l1": l1, "l2": l2}));
        }
    }
    rec.stat("max_rule_discrepancy", worst);
    rec.assert("two inclusion rules differ by at most 16", quad.ok_nonempty(), quad.detail("sampled pants pairs"), quad.counterexample());
    Ok(rec.finish(CheckId::T5, s, json!({"norm": cfg.norm, "sample_arc_norm": sample_norm, "ab_arc_norm": ab_norm}), start))
}

fn check_t6_genus0(s: &Surface, cfg: &SuiteConfig) -> Result<CheckReport> {
    let start = Instant::now();
    let mut rec = Recorder::new();
    let params = BallParams::uniform(s, cfg.norm);
    let d_ball = build_ball(s, ComplexKind::D, params)?;
    let pool: Vec<PantsClass> = d_ball.vertices.iter().map(domain).filter(|d| d.is_peripheral_pants()).cloned().collect();
    let peri: Vec<usize> = (0..d_ball.len()).filter(|&i| domain(&d_ball.vertices[i]).is_peripheral_pants()).collect();
    rec.stat("d_vertices", d_ball.len());
    rec.stat("peripheral_pants", pool.len());
    let mut rng = cfg.rng(CheckId::T6, s);
    let is_peri = |i: usize| domain(&d_ball.vertices[i]).is_peripheral_pants();
    let mut paths = sample_paths(&d_ball, &mut rng, &peri, is_peri, cfg.samples.max(200));
    // The length-2 configuration P1 C P2 with P1, P2 crossing.
    let mut length_two = 0;
    for i in 0..d_ball.len() {
        if !domain(&d_ball.vertices[i]).is_annulus() || length_two >= 20 {
            continue;
        }
        let nb: Vec<usize> = d_ball.adjacency[i].iter().copied().filter(|&j| is_peri(j)).collect();
        'outer: for (k, &x) in nb.iter().enumerate() {
            for &y in &nb[k + 1..] {
                if !d_ball.adjacent(x, y) {
                    paths.push(d_ball.witness(&[x, i, y]));
                    length_two += 1;
                    break 'outer;
                }
            }
        }
    }
    rec.stat("length_two_cases", length_two);
    let results: Vec<(bool, Value)> = paths
        .par_iter()
        .map(|p| match rectify_genus0_path(s, p, &pool, ProjectionRule::CanonicalMin) {
            Ok(q) => {
                let ok = q.validate(s).is_ok() && q.length() <= p.length() && q.first() == p.first() && q.last() == p.last();
                (ok, json!({"path": p, "rectified": q}))
            }
            Err(e) => (false, json!({"path": p, "error": e.to_string()})),
        })
        .collect();
    let mut t = Tally::new();
    for (ok, payload) in results {
        t.record(ok, || payload);
    }
    rec.assert(
        "rectification yields no longer peripheral-pants paths",
        t.ok() && t.tested >= 200.min(cfg.samples.max(200)),
        t.detail("sampled D paths between peripheral pants"),
        t.first,
    );

    // 2-density: a boundary annulus, then a peripheral pants next to it.
    let pants_next_to = |ann: &Vertex| -> Result<Vertex> {
        let i = d_ball.index_of(ann).ok_or_else(|| Error::SearchFailed("annulus outside the ball".into()))?;
        d_ball.adjacency[i]
            .iter()
            .map(|&j| &d_ball.vertices[j])
            .find(|v| domain(v).is_peripheral_pants())
            .cloned()
            .ok_or_else(|| Error::SearchFailed("no peripheral pants next to the annulus".into()))
    };
    let density = density_radius(
        s,
        &d_ball,
        |v| domain(v).is_peripheral_pants(),
        |v| {
            let x = domain(v);
            if x.is_annulus() {
                return Ok(vec![v.clone(), pants_next_to(v)?]);
            }
            let ann = Vertex::Domain(annulus_domain(&coarse_project(x, ProjectionRule::CanonicalMin)));
            Ok(vec![v.clone(), ann.clone(), pants_next_to(&ann)?])
        },
    );
    match density {
        Ok(r) => rec.assert("peripheral pants are 2-dense", r.radius <= 2, format!("radius {}", r.radius), r.worst.map(|w| vjson(&w))),
        Err(e) => rec.assert("peripheral pants are 2-dense", false, e.to_string(), None),
    }
    Ok(rec.finish(CheckId::T6, s, vjson(&params), start))
}

fn inside_b(s: &Surface, p: &PantsClass, wrap: &Wrap) -> Result<bool> {
    let ann = annulus_domain(&wrap.c);
    Ok(p != &ann && domains_disjoint(s, p, &ann)? && domains_disjoint(s, p, &wrap.c_side)?)
}

/// Largest P-ball distance between crossing peripheral pants inside B.
fn farthest_pair_in_b(s: &Surface, ball: &ComplexBall, wrap: &Wrap) -> Result<Option<(u32, usize, usize)>> {
    let inside: Vec<usize> = (0..ball.len()).filter(|&i| inside_b(s, domain(&ball.vertices[i]), wrap).unwrap_or(false)).collect();
    let mut best: Option<(u32, usize, usize)> = None;
    for &i in &inside {
        let dist = ball.distances_from(i);
        for &j in &inside {
            if j <= i {
                continue;
            }
            if let Some(d) = dist[j] {
                if d >= 2 && best.is_none_or(|b| d > b.0) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    Ok(best)
}

fn check_t7_genus_positive(s: &Surface, cfg: &SuiteConfig) -> Result<CheckReport> {
    let start = Instant::now();
    let mut rec = Recorder::new();
    let wrap = wrap_construction(s)?;
    let b = s.boundary_count as u32;
    let types_ok = wrap.b_side.topo_type() == (0, b + 1)
        && wrap.b_side.original_boundaries().len() == s.boundary_count
        && wrap.c_side.topo_type() == (s.genus as u32, 1)
        && wrap.c_side.essential_boundary() == vec![wrap.c.clone()];
    rec.assert(
        "wrap curve cuts off B = S(0,b+1) and C = S(g,1)",
        types_ok,
        format!("B {:?}, C {:?}", wrap.b_side.topo_type(), wrap.c_side.topo_type()),
        Some(vjson(&wrap)),
    );
    let chi = wrap.b_side.euler() + wrap.c_side.euler();
    rec.assert("Euler characteristics add up", chi == s.euler_characteristic(), format!("{chi} = {}", s.euler_characteristic()), Some(vjson(&wrap)));
    rec.stat("wrap_curve_norm", wrap.c.norm());

    // Defining arcs up to norm + 2 cover every pants of the wider ball.
    let index_norm = cfg.norm + 2;
    let data = pants_data(s, cfg, index_norm)?;
    let ball = &data.p_ball;
    rec.stat("p_vertices", ball.len());

    // Pants inside B need boundary curves longer than the wrap curve, so
    // the P ball for P0, Pn and the growth evidence is taken wider.
    let mut growth = Vec::new();
    let mut endpoints = None;
    let mut wide = None;
    for n in [cfg.norm + 4, cfg.norm + 6, cfg.norm + 8] {
        let g = build_ball(s, ComplexKind::PBoundary, BallParams::uniform(s, n))?;
        let far = farthest_pair_in_b(s, &g, &wrap)?;
        if endpoints.is_none() {
            endpoints = far.map(|(d, i, j)| (d, g.vertices[i].clone(), g.vertices[j].clone()));
        }
        growth.push((n, far.map(|x| x.0)));
        wide.get_or_insert(g);
    }
    let wide = wide.expect("three bounds");

    // Two crossing pants inside B are at D-distance exactly 2.
    match endpoints {
        Some((d, p0, pn)) => {
            let lower = certified_lower_bound(s, ComplexKind::D, &p0, &pn)?;
            let w = PathWitness {
                kind: ComplexKind::D,
                vertices: vec![p0.clone(), Vertex::Domain(wrap.c_side.clone()), pn.clone()],
            };
            let ok = lower == 2 && w.validate(s).is_ok();
            rec.assert("d_D(P0, Pn) = 2 exactly", ok, format!("lower bound {lower}, witness P0 C Pn"), Some(json!({"p0": p0, "pn": pn})));
            rec.stat("p_ball_distance_p0_pn", d);
        }
        None => rec.assert("d_D(P0, Pn) = 2 exactly", false, "no crossing pants pair inside B".into(), None),
    }

    // Growth of P-ball distances inside B with the bound (evidence only).
    let monotone = growth.windows(2).all(|w| w[0].1 <= w[1].1);
    let top = growth.last().and_then(|x| x.1).unwrap_or(0);
    rec.evidence(
        "P_boundary distances inside B grow with the bound",
        format!("farthest crossing pair by norm bound {growth:?}; non-decreasing {monotone}; exceeds 4 at the largest bound: {}", top > 4),
        Some(json!(growth)),
    );

    // Strip projection lands in B.
    let mut rng = cfg.rng(CheckId::T7, s);
    let mut crossing: Vec<usize> = (0..ball.len()).filter(|&i| !inside_b(s, domain(&ball.vertices[i]), &wrap).unwrap_or(false)).collect();
    crossing.shuffle(&mut rng);
    crossing.truncate(cfg.samples);
    let images: BTreeMap<usize, Result<Vec<PantsClass>>> = (0..ball.len())
        .into_par_iter()
        .map(|i| (i, b_images(s, domain(&ball.vertices[i]), &wrap, Some(&data.index))))
        .collect();
    let mut member = Tally::new();
    for &i in &crossing {
        let q = domain(&ball.vertices[i]);
        match &images[&i] {
            Ok(im) => {
                let ok = !im.is_empty() && im.iter().all(|p| p.is_peripheral_pants() && inside_b(s, p, &wrap).unwrap_or(false));
                member.record(ok, || json!({"pants": q, "images": im}));
            }
            Err(e) => member.record(false, || json!({"pants": q, "error": e.to_string()})),
        }
    }
    rec.assert("strip projections of crossing pants lie in B", member.ok_nonempty(), member.detail("crossing pants"), member.counterexample());

    // Paths between pants of B project to valid, no longer paths in B:
    // first on paths whose pants meet C in a single strip (boundary
    // meeting c in 4 points), then on arbitrary paths.
    let strip_like = |v: &Vertex| -> bool {
        let k: u32 = domain(v)
            .essential_boundary()
            .into_iter()
            .map(|x| intersection_number(s, &Class::Curve(x), &Class::Curve(wrap.c.clone())))
            .sum();
        k == 0 || k == 4
    };
    let strip_vertices: Vec<Vertex> = wide.vertices.iter().filter(|v| strip_like(v)).cloned().collect();
    let strip_ball = induced_ball(s, ComplexKind::PBoundary, wide.params, strip_vertices);
    rec.stat("single_strip_pants", strip_ball.len());
    let project_paths = |g: &ComplexBall, rng: &mut ChaCha8Rng| -> Tally {
        let in_b: Vec<usize> = (0..g.len()).filter(|&i| inside_b(s, domain(&g.vertices[i]), &wrap).unwrap_or(false)).collect();
        let mut paths = Vec::new();
        for (k, &i) in in_b.iter().enumerate() {
            for &j in &in_b[k + 1..] {
                if let Some(p) = g.shortest_path_indices(i, j, None) {
                    paths.push(g.witness(&p));
                }
            }
        }
        let in_b_set: BTreeSet<usize> = in_b.iter().copied().collect();
        paths.extend(sample_paths(g, rng, &in_b, |i| in_b_set.contains(&i), cfg.samples / 5));
        let results: Vec<(bool, Value)> = paths
            .par_iter()
            .map(|p| match project_path_into_b(s, p, &wrap, ProjectionRule::CanonicalMin, Some(&data.index)) {
                Ok(q) => {
                    let ok = q.validate(s).is_ok()
                        && q.length() <= p.length()
                        && q.vertices.iter().all(|v| inside_b(s, domain(v), &wrap).unwrap_or(false));
                    (ok, json!({"path": p, "projected": q}))
                }
                Err(e) => (false, json!({"path": p, "error": e.to_string()})),
            })
            .collect();
        let mut t = Tally::new();
        for (ok, payload) in results {
            t.record(ok, || payload);
        }
        t
    };
    let strips = project_paths(&strip_ball, &mut rng);
    rec.assert(
        "paths of single-strip pants project to no longer paths in B",
        strips.ok_nonempty(),
        strips.detail("P paths between pants of B through single-strip pants"),
        strips.counterexample(),
    );
    let general = project_paths(&wide, &mut rng);
    rec.stat("wide_ball_norm", cfg.norm + 4);
    rec.assert(
        "paths between pants of B project to no longer paths in B",
        general.ok_nonempty(),
        general.detail("P paths between pants of B"),
        general.counterexample(),
    );

    // Edge by edge, how often some choice of strips keeps disjointness.
    let mut compatible = Tally::new();
    for i in 0..ball.len() {
        for &j in &ball.adjacency[i] {
            if j < i {
                continue;
            }
            let (Ok(a), Ok(b)) = (&images[&i], &images[&j]) else { continue };
            let ok = a.iter().any(|x| b.iter().any(|y| x == y || domains_disjoint(s, x, y).unwrap_or(false)));
            compatible.record(ok, || json!({"q1": ball.vertices[i], "q2": ball.vertices[j], "images1": a, "images2": b}));
        }
    }
    rec.evidence(
        "strip projection keeps disjoint pants disjoint",
        format!("{} (edges where some choice of strips keeps the images equal or disjoint)", compatible.detail("P edges")),
        compatible.first,
    );
    Ok(rec.finish(CheckId::T7, s, json!({"norm": cfg.norm, "wide_norm": cfg.norm + 4, "arc_index_norm": index_norm}), start))
}

fn check_t8_ac_diagram(s: &Surface, cfg: &SuiteConfig) -> Result<CheckReport> {
    let start = Instant::now();
    let mut rec = Recorder::new();
    let (sample_norm, _) = cfg.arc_bounds(s);
    let mut params = BallParams::uniform(s, cfg.norm);
    params.arc_norm = sample_norm;
    let ac = build_ball(s, ComplexKind::AC, params)?;
    let index = PantsIndex::build(s, &enumerate_arcs(s, sample_norm));
    rec.stat("ac_vertices", ac.len());
    let rules = ProjectionRule::presets(cfg.seed);

    let mut curves = Tally::new();
    let mut arcs = Tally::new();
    for v in &ac.vertices {
        match v {
            Vertex::Curve(c) => {
                for r in rules {
                    // C -> AC -> C and C -> D -> C.
                    curves.record(&coarse_project(&annulus_domain(c), r) == c, || json!({"curve": c, "rule": r}));
                }
            }
            Vertex::Arc(x) => {
                let p = pants_from_arc(s, x)?;
                for r in rules {
                    // Through P_boundary and back through A versus directly.
                    let again = pants_from_arc(s, &arc_from_pants(s, &p, r, Some(&index))?)?;
                    let (c1, c2) = (coarse_project(&p, r), coarse_project(&again, r));
                    let edge = is_edge(s, ComplexKind::AC, v, &Vertex::Curve(c1.clone()))?;
                    arcs.record(again == p && c1 == c2 && edge, || json!({"arc": x, "rule": r}));
                }
            }
            Vertex::Domain(_) => unreachable!(),
        }
    }
    rec.assert("both routes agree on curves", curves.ok(), curves.detail("curve/rule cases"), curves.first);
    rec.assert("both routes agree on arcs and land next to the arc", arcs.ok(), arcs.detail("arc/rule cases"), arcs.first);

    // Edge relations nest: A_B inside A, A_BC inside AC.
    let mut nest = Tally::new();
    for i in 0..ac.len() {
        for &j in &ac.adjacency[i] {
            if j < i {
                continue;
            }
            let (u, v) = (&ac.vertices[i], &ac.vertices[j]);
            if let (Vertex::Arc(_), Vertex::Arc(_)) = (u, v) {
                let a_edge = is_edge(s, ComplexKind::A, u, v)?;
                nest.record(a_edge, || json!({"u": u, "v": v}));
            } else {
                nest.record(is_edge(s, ComplexKind::ABC, u, v)?, || json!({"u": u, "v": v}));
            }
        }
    }
    rec.assert("AC edges restrict to A and A_BC edges", nest.ok(), nest.detail("AC edges"), nest.first);

    let density = density_radius(
        s,
        &ac,
        |v| matches!(v, Vertex::Curve(_)),
        |v| {
            let p = pants_from_arc(s, arc(v))?;
            Ok(vec![v.clone(), Vertex::Curve(coarse_project(&p, ProjectionRule::CanonicalMin))])
        },
    );
    match density {
        Ok(r) => {
            rec.stat("density_targets_outside_ball", r.outside_ball);
            rec.assert("curves are 1-dense in AC", r.radius <= 1, format!("radius {}", r.radius), r.worst.map(|w| vjson(&w)));
        }
        Err(e) => rec.assert("curves are 1-dense in AC", false, e.to_string(), None),
    }
    Ok(rec.finish(CheckId::T8, s, vjson(&params), start))
}

pub const REPORT_SCHEMA: &str = "curvecx.report/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: String,
    pub config: SuiteConfig,
    pub failed: bool,
    pub reports: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn new(config: SuiteConfig, reports: Vec<CheckReport>) -> Self {
        SuiteReport {
            schema: REPORT_SCHEMA.into(),
            failed: suite_failed(&reports),
            config,
            reports,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: SuiteReport = serde_json::from_str(text).map_err(|e| Error::Config(format!("bad report: {e}")))?;
        if r.schema != REPORT_SCHEMA {
            return Err(Error::Config(format!("unsupported report schema `{}`", r.schema)));
        }
        Ok(r)
    }

    /// One line per check, then one indented line per criterion.
    pub fn human(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&r.summary_line());
            out.push('\n');
            for c in &r.criteria {
                let tag = match c.verdict {
                    Verdict::Pass => "ok  ",
                    Verdict::Fail => "FAIL",
                    Verdict::EvidenceOnly => "info",
                };
                out.push_str(&format!("    {tag} {}: {}\n", c.name, c.detail));
            }
        }
        out
    }
}

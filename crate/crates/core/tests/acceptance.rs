//! One line per acceptance criterion; exits non-zero if any fails.
//!
//! Runs the default suite (norm 12, S_(0,5), S_(0,6), S_(1,3)) once and
//! reads the verdicts off the reports, then runs the reference oracles.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::oracle;
use curvecx::classes::{intersection_number, Class};
use curvecx::enumerate::{enumerate_arcs, enumerate_curves};
use curvecx::harness::{run_suite, CheckId, CheckReport, Criterion, SuiteConfig, Verdict};
use curvecx::surface::build_surface;

struct Sheet {
    lines: Vec<(String, bool, String)>,
}

impl Sheet {
    fn record(&mut self, name: &str, ok: bool, detail: String) {
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        self.lines.push((name.into(), ok, detail));
    }
}

fn report<'a>(reports: &'a [CheckReport], id: CheckId, g: usize, b: usize) -> &'a CheckReport {
    reports
        .iter()
        .find(|r| r.check == id && r.surface == [g, b])
        .unwrap_or_else(|| panic!("{id} did not run on S_({g},{b})"))
}

fn criterion<'a>(r: &'a CheckReport, prefix: &str) -> &'a Criterion {
    r.criteria
        .iter()
        .find(|c| c.name.starts_with(prefix))
        .unwrap_or_else(|| panic!("{} has no criterion `{prefix}`", r.check))
}

/// The `tested` of a detail starting `passed/tested`, if it does.
fn tested(c: &Criterion) -> Option<usize> {
    c.detail.split_whitespace().next()?.split_once('/')?.1.parse().ok()
}

/// All named criteria pass; returns the combined detail.
fn all_pass(parts: &[(&CheckReport, &str)], min_cases: usize) -> (bool, String) {
    let mut ok = true;
    let mut detail = Vec::new();
    for &(r, prefix) in parts {
        let c = criterion(r, prefix);
        ok &= c.verdict == Verdict::Pass && tested(c).is_none_or(|n| n >= min_cases);
        detail.push(format!("S_({},{}) {}", r.surface[0], r.surface[1], c.detail));
    }
    (ok, detail.join("; "))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut sheet = Sheet { lines: Vec::new() };
    let cfg = SuiteConfig::default();
    let reports = run_suite(&cfg).expect("suite runs");
    let r = |id, g, b| report(&reports, id, g, b);

    let t1 = r(CheckId::T1, 0, 5);
    let (ok, d) = all_pass(
        &[(t1, "inclusion preserves"), (t1, "path projection"), (t1, "annuli are exactly 1-dense")],
        1,
    );
    let enough = tested(criterion(t1, "path projection")).is_some_and(|n| n >= 1000);
    let fast = t1.runtime_ms < 120_000;
    sheet.record("T1 isometric inclusion on S_(0,5)", ok && enough && fast, format!("{d}; {} ms", t1.runtime_ms));

    let mut parts = Vec::new();
    for (g, b) in [(0, 5), (1, 3)] {
        let t = r(CheckId::T2, g, b);
        parts.extend([(t, "projection after inclusion"), (t, "every domain is within 1"), (t, "projections under two rules")]);
    }
    let (ok, d) = all_pass(&parts, 1);
    sheet.record("T2 coarse projection on S_(0,5), S_(1,3)", ok, d);

    let parts: Vec<_> = [(0, 5), (0, 6), (1, 3)].into_iter().map(|(g, b)| (r(CheckId::T3, g, b), "disjoint arcs are within")).collect();
    let bounds_ok = criterion(r(CheckId::T3, 0, 5), "").name.contains("within 2") && criterion(r(CheckId::T3, 1, 3), "").name.contains("within 4");
    let (ok, d) = all_pass(&parts, 500);
    sheet.record("T3 boundary-graph connectors (<= 2 genus 0, <= 4 genus 1)", ok && bounds_ok, d);

    let mut parts = Vec::new();
    for (g, b) in [(0, 5), (0, 6), (1, 3)] {
        let t = r(CheckId::T4, g, b);
        parts.extend([(t, "transported paths"), (t, "d_A <= d_A_B")]);
    }
    let (ok, d) = all_pass(&parts, 1);
    sheet.record("T4 A and A_B are bi-Lipschitz", ok, d);

    let mut parts = Vec::new();
    for (g, b) in [(0, 5), (0, 6), (1, 3)] {
        let t = r(CheckId::T5, g, b);
        parts.extend([(t, "pants -> arc -> pants"), (t, "bi-pants fibres"), (t, "every arc is within 8")]);
    }
    let (ok, d) = all_pass(&parts, 1);
    sheet.record("T5 pants and defining arcs", ok, d);

    let t6 = r(CheckId::T6, 0, 5);
    let (ok, d) = all_pass(&[(t6, "rectification"), (t6, "peripheral pants are 2-dense")], 200);
    sheet.record("T6 genus-0 rectification on S_(0,5)", ok, d);

    let t7 = r(CheckId::T7, 1, 3);
    let (ok, d) = all_pass(
        &[(t7, "wrap curve"), (t7, "Euler"), (t7, "d_D(P0, Pn) = 2"), (t7, "strip projections of crossing pants lie in B")],
        1,
    );
    let growth = criterion(t7, "P_boundary distances inside B grow");
    let growth_ok = growth.verdict == Verdict::EvidenceOnly && growth.detail.contains("non-decreasing true") && growth.detail.contains("exceeds 4 at the largest bound: true");
    sheet.record("T7 wrap curve on S_(1,3)", ok && growth_ok, format!("{d}; evidence: {}", growth.detail));

    let mut parts = Vec::new();
    for (g, b) in [(0, 5), (1, 3)] {
        let t = r(CheckId::T8, g, b);
        parts.extend([(t, "both routes agree on curves"), (t, "both routes agree on arcs"), (t, "AC edges restrict"), (t, "curves are 1-dense")]);
    }
    let (ok, d) = all_pass(&parts, 1);
    sheet.record("T8 arc-and-curve diagram", ok, d);

    let (mut pairs, mut bad) = (0usize, 0usize);
    for (g, b) in [(0, 5), (0, 6), (1, 3)] {
        let s = build_surface(g, b).unwrap();
        let mut classes: Vec<Class> = enumerate_curves(&s, 8).into_iter().map(Class::Curve).collect();
        classes.extend(enumerate_arcs(&s, 8).into_iter().map(Class::Arc));
        let paths: Vec<_> = classes
            .iter()
            .map(|c| match c {
                Class::Curve(x) => x.raw_path(&s),
                Class::Arc(a) => a.raw_path(&s),
            })
            .collect();
        for i in 0..classes.len() {
            for j in i + 1..classes.len() {
                pairs += 1;
                bad += (intersection_number(&s, &classes[i], &classes[j]) != oracle::intersection(&s, &paths[i], &paths[j], (i * 7919 + j) as u64)) as usize;
            }
        }
    }
    let mut counts = Vec::new();
    for (g, b) in [(0, 5), (0, 6), (1, 3)] {
        let s = build_surface(g, b).unwrap();
        let mut curves = vec![0; 6];
        for c in enumerate_curves(&s, 6) {
            curves[c.norm() as usize - 1] += 1;
        }
        let mut arcs = vec![0; 7];
        for a in enumerate_arcs(&s, 6) {
            arcs[if a.edge_index().is_some() { 0 } else { a.norm() as usize }] += 1;
        }
        counts.push(curves == oracle::curve_counts(&s, 6) && arcs == oracle::arc_counts(&s, 6));
    }
    sheet.record(
        "Oracle equivalence",
        bad == 0 && counts.iter().all(|&x| x),
        format!("{}/{pairs} intersection pairs agree at norm <= 8; counts agree at norm <= 6 on {}/3 surfaces", pairs - bad, counts.iter().filter(|&&x| x).count()),
    );

    let elapsed = start.elapsed();
    sheet.record("Wall clock under 10 minutes", elapsed < Duration::from_secs(600), format!("{:.1} s", elapsed.as_secs_f64()));

    let failed: Vec<&str> = sheet.lines.iter().filter(|l| !l.1).map(|l| l.0.as_str()).collect();
    if failed.is_empty() {
        println!("all {} criteria pass", sheet.lines.len());
        ExitCode::SUCCESS
    } else {
        println!("failed: {}", failed.join(", "));
        ExitCode::FAILURE
    }
}

mod common;

use common::oracle;
use curvecx::classes::{intersection_number, Class};
use curvecx::enumerate::{enumerate_arcs, enumerate_curves};
use curvecx::surface::build_surface;

fn by_norm(norms: impl Iterator<Item = u32>, n: usize) -> Vec<usize> {
    let mut out = vec![0; n + 1];
    for k in norms {
        out[k as usize] += 1;
    }
    out
}

#[test]
fn curve_counts_match_walk_enumeration() {
    for (g, b) in [(0, 5), (1, 3), (0, 6)] {
        let s = build_surface(g, b).unwrap();
        let n = 7;
        let lib = by_norm(enumerate_curves(&s, n as u32).iter().map(|c| c.norm()), n);
        let reference = oracle::curve_counts(&s, n);
        assert_eq!(&lib[1..], &reference[..], "S_({g},{b})");
    }
}

#[test]
fn arc_counts_match_walk_enumeration() {
    for (g, b) in [(0, 5), (1, 3), (0, 6)] {
        let s = build_surface(g, b).unwrap();
        let n = 6;
        let lib = by_norm(
            enumerate_arcs(&s, n as u32)
                .iter()
                .map(|a| if a.edge_index().is_some() { 0 } else { a.norm() }),
            n,
        );
        let reference = oracle::arc_counts(&s, n);
        assert_eq!(lib, reference, "S_({g},{b})");
    }
}

#[test]
fn intersection_numbers_match_polyline_reference() {
    for (g, b) in [(0, 5), (1, 3), (0, 6)] {
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
                let lib = intersection_number(&s, &classes[i], &classes[j]);
                let reference = oracle::intersection(&s, &paths[i], &paths[j], (i * 7919 + j) as u64);
                assert_eq!(lib, reference, "S_({g},{b}) {:?} vs {:?}", classes[i], classes[j]);
            }
        }
    }
}

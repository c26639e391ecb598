use std::collections::BTreeSet;
use std::sync::OnceLock;

use curvecx::classes::{boundary_graph, Class, CurveClass, Tracked};
use curvecx::complex::{check_vertex, Vertex};
use curvecx::cut::cut_along;
use curvecx::domains::{
    annulus_domain, domains_disjoint, enumerate_domains, pants_defining_arcs, pants_from_arc, regular_neighborhood_pants, DomainClass, PantsIndex, Peripherality,
};
use curvecx::enumerate::{enumerate_arcs, enumerate_curves};
use curvecx::maps::{coarse_project, wrap_construction, ProjectionRule};
use curvecx::surface::{build_surface, Surface};
use curvecx::Error;
use proptest::prelude::*;

fn s05_domains() -> &'static (Surface, Vec<DomainClass>) {
    static F: OnceLock<(Surface, Vec<DomainClass>)> = OnceLock::new();
    F.get_or_init(|| {
        let s = build_surface(0, 5).unwrap();
        let d = enumerate_domains(&s, 10, 2);
        (s, d)
    })
}

fn s13_domains() -> &'static (Surface, Vec<DomainClass>) {
    static F: OnceLock<(Surface, Vec<DomainClass>)> = OnceLock::new();
    F.get_or_init(|| {
        let s = build_surface(1, 3).unwrap();
        let d = enumerate_domains(&s, 10, 3);
        (s, d)
    })
}

/// Domains counted from scratch: every piece of the cut along a system of
/// pairwise disjoint curves that is bounded by all of them is one domain,
/// and every curve adds its annulus. No canonical forms are involved.
fn piece_subset_count(s: &Surface, curves: &[CurveClass], max: usize) -> usize {
    let t: Vec<Tracked> = curves.iter().map(|c| Tracked::new(s, Class::Curve(c.clone()))).collect();
    let mut count = curves.len();
    let mut stack: Vec<Vec<usize>> = (0..curves.len()).map(|i| vec![i]).collect();
    while let Some(sys) = stack.pop() {
        let system: Vec<CurveClass> = sys.iter().map(|&i| curves[i].clone()).collect();
        for p in cut_along(s, &system).unwrap() {
            let bounded: BTreeSet<usize> = p.cut_circles.iter().copied().collect();
            if bounded.len() == sys.len() {
                count += 1;
            }
        }
        if sys.len() < max {
            let last = *sys.last().unwrap();
            for j in last + 1..curves.len() {
                if sys.iter().all(|&i| t[i].intersection(s, &t[j]) == 0) {
                    let mut n = sys.clone();
                    n.push(j);
                    stack.push(n);
                }
            }
        }
    }
    count
}

#[test]
fn domain_counts_match_piece_subset_oracle() {
    for (g, b, norm, max) in [(0, 5, 10, 2), (1, 3, 8, 3), (0, 6, 8, 3)] {
        let s = build_surface(g, b).unwrap();
        let lib = enumerate_domains(&s, norm, max).len();
        let oracle = piece_subset_count(&s, &enumerate_curves(&s, norm), max);
        assert_eq!(lib, oracle, "S_({g},{b}) norm {norm}");
    }
}

#[test]
fn enumerated_domains_are_valid_and_push_off_their_boundary() {
    for (s, ds) in [s05_domains(), s13_domains()] {
        for d in ds {
            let boundary = d.essential_boundary();
            assert!(!boundary.is_empty());
            let (g, b) = d.topo_type();
            assert_eq!(d.euler(), 2 - 2 * g as i64 - b as i64);
            check_vertex(s, &Vertex::Domain(d.clone())).unwrap();
            for c in boundary {
                let a = annulus_domain(&c);
                if &a != d {
                    assert!(domains_disjoint(s, d, &a).unwrap(), "{d:?} and its boundary annulus");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn disjointness_is_symmetric(which: bool, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let (s, ds) = if which { s05_domains() } else { s13_domains() };
        let (x, y) = (i.get(ds), j.get(ds));
        prop_assume!(x != y);
        prop_assert_eq!(domains_disjoint(s, x, y).unwrap(), domains_disjoint(s, y, x).unwrap());
    }
}

#[test]
fn equal_domains_are_rejected() {
    let (s, ds) = s05_domains();
    assert!(matches!(domains_disjoint(s, &ds[0], &ds[0]), Err(Error::NotDistinct)));
}

#[test]
fn annuli_are_the_curves() {
    let (s, _) = s05_domains();
    for c in enumerate_curves(s, 8) {
        let a = annulus_domain(&c);
        assert_eq!(a.topo_type(), (0, 2));
        assert_eq!(a.essential_boundary(), vec![c.clone()]);
        for r in ProjectionRule::presets(3) {
            assert_eq!(coarse_project(&a, r), c);
        }
    }
}

#[test]
fn pants_crossing_a_curve_meet_its_annulus() {
    let (s, ds) = s05_domains();
    let curves = enumerate_curves(s, 10);
    let mut seen = 0;
    for p in ds.iter().filter(|d| d.is_pants()) {
        let walls: Vec<Tracked> = p.essential_boundary().into_iter().map(|c| Tracked::new(s, Class::Curve(c))).collect();
        for c in &curves {
            let t = Tracked::new(s, Class::Curve(c.clone()));
            if walls.iter().any(|w| w.intersection(s, &t) > 0) {
                assert!(!domains_disjoint(s, p, &annulus_domain(c)).unwrap());
                seen += 1;
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn the_two_sides_of_a_separating_curve_are_disjoint() {
    let (s, ds) = s05_domains();
    for c in enumerate_curves(s, 8) {
        let sides: Vec<&DomainClass> = ds.iter().filter(|d| !d.is_annulus() && d.essential_boundary() == vec![c.clone()]).collect();
        assert_eq!(sides.len(), 2);
        assert!(domains_disjoint(s, sides[0], sides[1]).unwrap());
    }
}

#[test]
fn wrap_sides_have_the_expected_boundary() {
    let s = build_surface(1, 3).unwrap();
    let w = wrap_construction(&s).unwrap();
    assert_eq!(w.c_side.essential_boundary(), vec![w.c.clone()]);
    assert_eq!(w.b_side.original_boundaries().len(), 3);
    assert!(domains_disjoint(&s, &w.b_side, &annulus_domain(&w.c)).unwrap());
    assert!(domains_disjoint(&s, &w.c_side, &annulus_domain(&w.c)).unwrap());
}

#[test]
fn neighbourhoods_of_arcs_are_peripheral_pants() {
    for (g, b, n) in [(0, 5, 6), (0, 6, 5), (1, 3, 6)] {
        let s = build_surface(g, b).unwrap();
        for a in enumerate_arcs(&s, n) {
            let gr = boundary_graph(&s, &a);
            let p = regular_neighborhood_pants(&s, &gr).unwrap();
            assert_eq!(pants_from_arc(&s, &a).unwrap(), p);
            assert!(p.is_pants());
            assert_eq!(p.euler(), -1);
            assert!(gr.touched.is_subset(&p.original_boundaries()));
            // A loop around a single boundary component has a neighbourhood
            // circle parallel to that component, so it can define a bi pants.
            match p.peripherality() {
                Peripherality::Mono => assert_eq!(gr.touched.len(), 1),
                Peripherality::Bi => assert!(gr.touched.len() == 2 || p.original_boundaries().len() == 2),
                Peripherality::None => panic!("not peripheral: {a:?}"),
            }
            if gr.touched.len() == 2 {
                assert_eq!(p.peripherality(), Peripherality::Bi);
            }
            check_vertex(&s, &Vertex::Domain(p)).unwrap();
        }
    }
}

fn check_fibre(s: &Surface, p: &DomainClass, arcs: &[curvecx::classes::ArcClass]) {
    let want = match p.peripherality() {
        Peripherality::Mono => 1,
        _ => 3,
    };
    assert_eq!(arcs.len(), want, "{p:?}");
    for a in arcs {
        assert_eq!(&pants_from_arc(s, a).unwrap(), p);
    }
    if want == 3 {
        // The seam between the two labels misses both loops, which cross
        // each other: the fibre is a path of length 2 in A.
        let disjoint = |x: &curvecx::classes::ArcClass, y: &curvecx::classes::ArcClass| {
            curvecx::classes::are_disjoint(s, &Class::Arc(x.clone()), &Class::Arc(y.clone()))
        };
        let is_loop = |a: &curvecx::classes::ArcClass| a.endpoints(s)[0] == a.endpoints(s)[1];
        let seams: Vec<_> = arcs.iter().filter(|a| !is_loop(a)).collect();
        let loops: Vec<_> = arcs.iter().filter(|a| is_loop(a)).collect();
        assert_eq!(seams.len(), 1);
        assert!(loops.iter().all(|l| disjoint(seams[0], l)));
        assert!(!disjoint(loops[0], loops[1]));
    }
}

#[test]
fn defining_arcs_round_trip_with_fibres_of_one_or_three() {
    let s = build_surface(0, 5).unwrap();
    let pants: BTreeSet<DomainClass> = enumerate_arcs(&s, 4).iter().map(|a| pants_from_arc(&s, a).unwrap()).collect();
    // The exhaustive search is slow; every seventh pants covers both kinds.
    for p in pants.iter().step_by(7) {
        check_fibre(&s, p, &pants_defining_arcs(&s, p).unwrap());
    }
}

#[test]
fn indexed_fibres_agree_with_the_exhaustive_search() {
    let s = build_surface(1, 3).unwrap();
    let arcs = enumerate_arcs(&s, 10);
    let index = PantsIndex::build(&s, &arcs);
    let pants: BTreeSet<DomainClass> = enumerate_arcs(&s, 4).iter().map(|a| pants_from_arc(&s, a).unwrap()).collect();
    for (k, p) in pants.iter().enumerate() {
        let fibre = index.complete_arcs(&s, p).unwrap();
        check_fibre(&s, p, &fibre);
        if k % 60 == 0 {
            assert_eq!(pants_defining_arcs(&s, p).unwrap(), fibre);
        }
    }
}

#[test]
fn non_peripheral_pants_have_no_defining_arcs() {
    let s = build_surface(0, 6).unwrap();
    let ds = enumerate_domains(&s, 8, 3);
    let p = ds.iter().find(|d| d.is_pants() && !d.is_peripheral_pants()).expect("S_(0,6) has a pants with no boundary label");
    assert!(matches!(pants_defining_arcs(&s, p), Err(Error::NotPeripheral)));
}

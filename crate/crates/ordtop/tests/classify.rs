use ordtop::classify::{
    audit_products, cocompact_topology, has_dual_base, is_c_space, is_locally_strongly_connected, is_web, is_wide_web,
    space_profile,
};
use ordtop::finstruct::{enumerate_topologies, Carrier, FinTopology, PointSet};
use ordtop::speclat::specialization_order;
use proptest::prelude::*;

fn topologies(max: usize) -> Vec<FinTopology> {
    (1..=max)
        .flat_map(|n| enumerate_topologies(n, false).unwrap())
        .collect()
}

fn irreducible(t: &FinTopology, a: PointSet) -> bool {
    let proper: Vec<PointSet> = t.closed_sets().iter().filter(|&c| c.is_subset(a) && c != a).collect();
    !a.is_empty() && proper.iter().all(|&b| proper.iter().all(|&c| (b | c) != a))
}

fn chain_holds(t: &FinTopology) -> bool {
    let (dual, lsc, wide, web) = (
        has_dual_base(t),
        is_locally_strongly_connected(t),
        is_wide_web(t),
        is_web(t),
    );
    (!dual || lsc) && (!lsc || wide) && (!wide || web)
}

#[test]
fn finite_spaces_collapse() {
    for t in topologies(4) {
        let p = space_profile(&t);
        assert!(p.web && p.wide_web && p.c_space, "{:?}", t.opens());
        for (name, routes) in &p.route_agreement {
            assert!(routes.iter().all(|&v| v == routes[0]), "{name} on {:?}", t.opens());
        }
        assert!(chain_holds(&t));
    }
}

#[test]
fn sobriety() {
    for t in topologies(4) {
        let p = space_profile(&t);
        let points: Vec<PointSet> = (0..t.n()).map(|x| t.closure(PointSet::singleton(x))).collect();
        let irr_are_points = t
            .closed_sets()
            .iter()
            .filter(|&a| irreducible(&t, a))
            .all(|a| points.contains(&a));
        assert_eq!(p.sober, p.t0 && irr_are_points);
        if p.t0 {
            assert!(p.sober);
        }
    }
}

#[test]
fn cocompact_is_lower_set_topology() {
    for t in topologies(4) {
        let q = specialization_order(&t);
        let lower: Vec<PointSet> = t.full().subsets().filter(|&s| q.down_set(s) == s).collect();
        assert_eq!(cocompact_topology(&t).opens().members(), &lower[..]);
    }
}

#[test]
fn products_preserve_the_finite_profile() {
    let r = audit_products(3).unwrap();
    assert!(r.violations.is_empty(), "{:?}", r.violations);
    assert_eq!(r.checked, 13 * 13);
}

proptest! {
    #[test]
    fn larger_random_spaces(n in 5usize..=7, sub in prop::collection::vec(any::<u32>(), 0..8)) {
        let t = FinTopology::generated_by(Carrier::standard(n), sub.into_iter().map(|b| PointSet::from_bits(b) & PointSet::full(n)));
        prop_assert!(is_web(&t) && is_wide_web(&t) && is_c_space(&t));
        prop_assert!(chain_holds(&t));
    }
}

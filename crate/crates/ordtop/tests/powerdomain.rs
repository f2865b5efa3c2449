use ordtop::finstruct::{enumerate_posets, enumerate_topologies, FinPoset, PointSet};
use ordtop::powerdomain::{
    audit_powerdomains, hoare, plotkin, plotkin_from_order, rho_bar, PowerAuditBounds, CLAIM_FREE_LIFT, CLAIM_HOARE,
    CLAIM_IDEAL_LIFT, CLAIM_PLOTKIN_DEGENERACY, CLAIM_RHO_BAR, CLAIM_RHO_BAR_SEPARATED, CLAIM_TRIANGLES,
};
use ordtop::speclat::{enumerate_c_relations, validate_c_relation};

#[test]
fn rho_bar_matches_its_definition() {
    for n in 1..=3 {
        for rho in enumerate_c_relations(n) {
            let pc = rho_bar(&rho).unwrap();
            let r = rho.rel();
            let below = |f: PointSet| (0..n).filter(|&x| f.iter().any(|y| r.holds(x, y))).collect::<Vec<_>>();
            let above = |e: PointSet| (0..n).filter(|&y| e.iter().any(|x| r.holds(x, y))).collect::<Vec<_>>();
            for (a, &e) in pc.elements.iter().enumerate() {
                for (b, &f) in pc.elements.iter().enumerate() {
                    let expected = e.iter().all(|x| below(f).contains(&x)) && f.iter().all(|y| above(e).contains(&y));
                    assert_eq!(pc.rho_bar.rel().holds(a, b), expected);
                }
            }
        }
    }
}

/// Separation of the lifted relation over C-orders fails on a fixed set of
/// small bases; see the decisions ledger.
#[test]
fn rho_bar_separation_failures_are_the_known_ones() {
    let mut failures = 0;
    for n in 1..=3 {
        for rho in enumerate_c_relations(n).into_iter().filter(|r| r.is_c_order()) {
            let pc = rho_bar(&rho).unwrap();
            let cert = validate_c_relation(pc.rho_bar.carrier(), pc.rho_bar.rel());
            assert!(cert.c_quasi_order);
            failures += usize::from(!cert.c_order);
        }
    }
    assert_eq!(failures, 6);
}

#[test]
fn audit_is_clean_apart_from_separation() {
    let r = audit_powerdomains(PowerAuditBounds::default());
    for claim in [
        CLAIM_RHO_BAR,
        CLAIM_FREE_LIFT,
        CLAIM_TRIANGLES,
        CLAIM_IDEAL_LIFT,
        CLAIM_HOARE,
        CLAIM_PLOTKIN_DEGENERACY,
    ] {
        let t = &r.claims[claim];
        assert!(
            t.instances > 0 && t.violations.is_empty(),
            "{claim}: {:?}",
            t.violations
        );
    }
    assert_eq!(r.claims[CLAIM_RHO_BAR_SEPARATED].violations.len(), 6);
}

fn convex_hull(p: &FinPoset, f: PointSet) -> PointSet {
    let q = p.qoset();
    q.up_set(f) & q.down_set(f)
}

#[test]
fn plotkin_of_a_finite_poset_is_convex_sets_under_egli_milner() {
    for n in 1..=3 {
        for p in enumerate_posets(n).unwrap() {
            let q = p.qoset();
            let pd = plotkin(&p).unwrap();
            assert_eq!(pd.output(), plotkin_from_order(&p).unwrap().output());
            let elems = &pd.free.power.elements;
            let done = &pd.result.completion;
            let cls = |i: usize| done.embedding[i];
            for (a, &e) in elems.iter().enumerate() {
                for (b, &f) in elems.iter().enumerate() {
                    let (ce, cf) = (convex_hull(&p, e), convex_hull(&p, f));
                    assert_eq!(cls(a) == cls(b), ce == cf);
                    let egli_milner = ce.is_subset(q.down_set(cf)) && cf.is_subset(q.up_set(ce));
                    assert_eq!(done.poset.qoset().leq(cls(a), cls(b)), egli_milner);
                    let union = elems.iter().position(|&g| g == (e | f)).unwrap();
                    assert_eq!(pd.result.op[cls(a)][cls(b)], cls(union));
                }
            }
        }
    }
}

#[test]
fn hoare_points_are_closed_sets() {
    for n in 1..=3 {
        for s in enumerate_topologies(n, false).unwrap() {
            let h = hoare(&s).unwrap();
            assert_eq!(h.closed, s.closed_sets());
            assert_eq!(h.lattice.n(), h.closed.len());
            for x in 0..n {
                assert_eq!(h.closed.members()[h.eta[x]], s.closure(PointSet::singleton(x)));
            }
        }
    }
}

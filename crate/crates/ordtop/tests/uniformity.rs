use ordtop::finstruct::{enumerate_topologies, Carrier, FinTopology, PointSet, Relation};
use ordtop::speclat::specialization_order;
use ordtop::uniformity::{audit_quasi_uniformities, coarsest_quasi_uniformity, tau, QuasiUniformity};
use proptest::prelude::*;

fn all_topologies(max: usize) -> Vec<FinTopology> {
    (1..=max)
        .flat_map(|n| enumerate_topologies(n, false).unwrap())
        .collect()
}

#[test]
fn every_entourage_has_a_square_root_in_the_filter() {
    for t in all_topologies(4) {
        let q = coarsest_quasi_uniformity(&t);
        for u in q.base() {
            assert!(q.base().iter().any(|v| v.compose(v).is_subset(u)));
        }
    }
}

#[test]
fn intersection_of_the_filter_is_the_specialization_order() {
    for t in all_topologies(4) {
        let q = coarsest_quasi_uniformity(&t);
        let n = t.n();
        let meet = Relation::from_fn(n, |x, y| q.base().iter().all(|u| u.holds(x, y)));
        assert_eq!(&meet, specialization_order(&t).rel());
        assert_eq!(q.kernel(), meet);
    }
}

#[test]
fn induced_topology_from_neighbourhood_definition() {
    for t in all_topologies(4) {
        let q = coarsest_quasi_uniformity(&t);
        let opens: Vec<PointSet> = t
            .full()
            .subsets()
            .filter(|&o| {
                o.iter().all(|x| {
                    q.base()
                        .iter()
                        .any(|u| (0..t.n()).all(|y| !u.holds(x, y) || o.contains(y)))
                })
            })
            .collect();
        assert_eq!(opens, t.opens().members());
        assert_eq!(tau(&q).opens(), t.opens());
    }
}

#[test]
fn audit_is_clean() {
    let r = audit_quasi_uniformities(4).unwrap();
    assert!(r.is_clean(), "{r:?}");
}

proptest! {
    #[test]
    fn principal_filters_induce_upper_set_topologies(n in 1usize..=5, bits in any::<u32>()) {
        let w = Relation::from_fn(n, |x, y| (bits >> ((x * n + y) % 32)) & 1 == 1)
            .union(&Relation::identity(n))
            .reflexive_transitive_closure();
        let q = QuasiUniformity::generated_by(Carrier::standard(n), vec![w.clone()]).unwrap();
        let upper: Vec<PointSet> = PointSet::full(n).subsets().filter(|&o| w.image(o) == o).collect();
        let t = tau(&q);
        prop_assert_eq!(t.opens().members(), &upper[..]);
        prop_assert_eq!(q.kernel(), w);
    }
}

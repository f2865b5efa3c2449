//! Classifiers for finite spaces.
//!
//! Each flag of [`SpaceProfile`] is computed pointwise from its definition and,
//! where a lattice characterization exists, again from the open or closed set
//! lattice. The routes must agree; a disagreement is a bug and panics.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::finstruct::{
    closed_set_lattice, enumerate_topologies, open_set_lattice, validate_topology, Carrier, FinLattice, FinQoset,
    FinTopology, PointSet, SetFamily, StructError, MAX_POINTS,
};
use crate::laws;
use crate::speclat::specialization_order;

/// Lattice routes are only run when the open set lattice fits in a point set.
pub const LATTICE_ROUTE_MAX: usize = PointSet::CAPACITY;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetProfile {
    pub strongly_connected: bool,
    pub filtered: bool,
    pub supercompact: bool,
    pub hypercompact: bool,
    pub irreducible_closed: bool,
}

/// `Y` is nonempty and no two opens cover it without one of them containing it.
/// A cover `A ∪ B` can be shrunk to the saturations of `Y ∩ A` and `Y ∖ A`, so
/// it is enough to scan the splittings of `Y`.
fn strongly_connected_by_covers(t: &FinTopology, y: PointSet) -> bool {
    if y.is_empty() {
        return false;
    }
    let sat = |s: PointSet| s.iter().fold(PointSet::EMPTY, |a, x| a | t.least_nbhd(x));
    y.subsets().all(|p| {
        let (a, b) = (sat(p), sat(y - p));
        y.is_subset(a) || y.is_subset(b)
    })
}

/// Same scan for closed sets: `↓` in the specialization order is the closure.
fn irreducible_by_covers(t: &FinTopology, y: PointSet) -> bool {
    if y.is_empty() || !t.is_closed(y) {
        return false;
    }
    y.subsets().all(|p| {
        let (a, b) = (t.closure(p), t.closure(y - p));
        y.is_subset(a) || y.is_subset(b)
    })
}

/// `Y` is contained in some member of every open cover.
fn supercompact_by_covers(t: &FinTopology, y: PointSet) -> bool {
    let missing = t
        .opens()
        .iter()
        .filter(|u| !y.is_subset(*u))
        .fold(PointSet::EMPTY, |a, b| a | b);
    !y.is_subset(missing)
}

pub fn subset_profile(t: &FinTopology, y: PointSet) -> SubsetProfile {
    assert!(y.is_subset(t.full()), "subset outside the carrier");
    let q = specialization_order(t);
    let filtered = q.is_filtered(y);
    let strongly_connected = strongly_connected_by_covers(t, y);
    assert_eq!(
        strongly_connected,
        filtered,
        "strongly connected routes disagree on {}",
        t.carrier().render(y)
    );
    let supercompact = supercompact_by_covers(t, y);
    let sat = q.up_set(y);
    let is_core = y.iter().any(|x| q.up(x) == sat);
    assert_eq!(
        supercompact,
        is_core,
        "supercompact routes disagree on {}",
        t.carrier().render(y)
    );
    let minimal = y
        .iter()
        .filter(|&x| y.iter().all(|z| !q.leq(z, x) || q.leq(x, z)))
        .fold(PointSet::EMPTY, PointSet::with);
    let hypercompact = q.up_set(minimal) == sat;
    let irreducible_closed = irreducible_by_covers(t, y);
    let directed_lower = t.is_closed(y) && q.is_directed(y);
    assert_eq!(
        irreducible_closed,
        directed_lower,
        "irreducibility routes disagree on {}",
        t.carrier().render(y)
    );
    SubsetProfile {
        strongly_connected,
        filtered,
        supercompact,
        hypercompact,
        irreducible_closed,
    }
}

/// Cores `↑z` that contain `x`: a neighbourhood base at `x`.
fn basic_nbhds(t: &FinTopology, x: usize) -> impl Iterator<Item = PointSet> + '_ {
    (0..t.n()).map(|z| t.least_nbhd(z)).filter(move |u| u.contains(x))
}

/// Largest web around `x` inside `u`.
fn max_web(t: &FinTopology, x: usize, u: PointSet) -> PointSet {
    let below_x = u.iter().filter(|&w| t.least_nbhd(w).contains(x));
    let mut web = PointSet::EMPTY;
    for w in below_x {
        web = web | (t.least_nbhd(w) & u);
    }
    web
}

/// Every point has a neighbourhood base of webs around it.
pub fn is_web(t: &FinTopology) -> bool {
    (0..t.n()).all(|x| basic_nbhds(t, x).all(|u| t.interior(max_web(t, x, u)).contains(x)))
}

/// Every finite subset of `v` has a lower bound in `u`. The reachable
/// intersections `u ∩ ↓y1 ∩ ... ∩ ↓yk` are closed off; one of them is empty
/// exactly when some finite subset has no lower bound.
pub fn dashv(t: &FinTopology, v: PointSet, u: PointSet) -> bool {
    dashv_in(&specialization_order(t), v, u)
}

fn dashv_in(q: &FinQoset, v: PointSet, u: PointSet) -> bool {
    let mut seen = vec![u];
    let mut i = 0;
    while i < seen.len() {
        let cur = seen[i];
        if cur.is_empty() {
            return false;
        }
        for y in v.iter() {
            let next = cur & q.down(y);
            if !seen.contains(&next) {
                seen.push(next);
            }
        }
        i += 1;
    }
    true
}

/// Every neighbourhood `u` of a point contains a neighbourhood `v` with `v ⊣ u`.
pub fn is_wide_web(t: &FinTopology) -> bool {
    let q = specialization_order(t);
    (0..t.n()).all(|x| basic_nbhds(t, x).all(|u| basic_nbhds(t, x).any(|v| v.is_subset(u) && dashv_in(&q, v, u))))
}

/// Every point has a neighbourhood base of cores.
pub fn is_c_space(t: &FinTopology) -> bool {
    (0..t.n()).all(|x| {
        basic_nbhds(t, x).all(|u| {
            u.iter()
                .any(|y| t.least_nbhd(y).is_subset(u) && t.interior(t.least_nbhd(y)).contains(x))
        })
    })
}

/// Every point has a base of strongly connected neighbourhoods.
pub fn is_locally_strongly_connected(t: &FinTopology) -> bool {
    (0..t.n()).all(|x| {
        let core = t.least_nbhd(x);
        basic_nbhds(t, x).all(|u| {
            (u - core)
                .subsets()
                .any(|extra| strongly_connected_by_covers(t, core | extra))
        })
    })
}

/// Local strong connectedness with strong connectedness read off the order.
fn is_locally_filtered(t: &FinTopology) -> bool {
    let q = specialization_order(t);
    (0..t.n()).all(|x| {
        let core = t.least_nbhd(x);
        basic_nbhds(t, x).all(|u| (u - core).subsets().any(|extra| q.is_filtered(core | extra)))
    })
}

/// A base of open strongly connected sets.
pub fn has_dual_base(t: &FinTopology) -> bool {
    let sc: Vec<PointSet> = t
        .opens()
        .iter()
        .filter(|&v| strongly_connected_by_covers(t, v))
        .collect();
    (0..t.n()).all(|x| basic_nbhds(t, x).all(|u| sc.iter().any(|v| v.contains(x) && v.is_subset(u))))
}

/// The open cores form a base.
pub fn is_b_space(t: &FinTopology) -> bool {
    let open_cores: Vec<PointSet> = (0..t.n())
        .map(|y| specialization_order(t).up(y))
        .filter(|&c| t.is_open(c))
        .collect();
    t.opens().iter().all(|u| {
        open_cores
            .iter()
            .filter(|c| c.is_subset(u))
            .fold(PointSet::EMPTY, |a, &b| a | b)
            == u
    })
}

/// Every core is open.
pub fn is_a_space(t: &FinTopology) -> bool {
    let q = specialization_order(t);
    (0..t.n()).all(|x| t.is_open(q.up(x)))
}

/// The dual of the open set lattice is again (isomorphic to) a topology: the
/// sets `{j ∈ J : j ≤ d}` for `J` the join-irreducibles of the dual.
fn dual_is_topology(l: &FinLattice) -> bool {
    let d = l.dual();
    let joins: Vec<usize> = (0..d.n())
        .filter(|&j| j != d.bottom() && d.join_of(d.down(j).without(j)) != j)
        .collect();
    let carrier = Carrier::standard(joins.len().max(1));
    let sets: Vec<PointSet> = (0..d.n())
        .map(|e| PointSet::from_indices(joins.iter().enumerate().filter(|&(_, &j)| d.leq(j, e)).map(|(i, _)| i)))
        .collect();
    let family = SetFamily::new(sets.clone());
    if family.len() != d.n() {
        return false;
    }
    if joins.is_empty() {
        return d.n() == 1;
    }
    let order_iso = (0..d.n()).all(|a| (0..d.n()).all(|b| d.leq(a, b) == sets[a].is_subset(sets[b])));
    order_iso && validate_topology(&carrier, family).is_ok()
}

fn is_sober_by_scan(t: &FinTopology) -> bool {
    let q = specialization_order(t);
    t.closed_sets()
        .iter()
        .filter(|&c| irreducible_by_covers(t, c))
        .all(|c| {
            let gens: Vec<usize> = (0..t.n()).filter(|&x| t.closure(PointSet::singleton(x)) == c).collect();
            gens.len() == 1 && q.down(gens[0]) == c
        })
}

/// Directed sets have joins that they converge to.
fn is_d_space_literal(t: &FinTopology) -> bool {
    let q = specialization_order(t);
    if !q.is_partial_order() {
        return false;
    }
    let candidates: Vec<PointSet> = if t.n() <= 12 {
        t.full().subsets().filter(|&d| q.is_directed(d)).collect()
    } else {
        q.lower_sets().iter().filter(|&d| q.is_directed(d)).collect()
    };
    candidates.into_iter().all(|d| {
        let sup = q.joins(d);
        match sup.first() {
            Some(s) if sup.len() == 1 => t.open_nbhds(s).all(|u| u.meets(d)),
            _ => false,
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceProfile {
    pub t0: bool,
    pub web: bool,
    pub wide_web: bool,
    pub c_space: bool,
    pub locally_strongly_connected: bool,
    pub has_dual_base: bool,
    pub b_space: bool,
    pub a_space: bool,
    pub sober: bool,
    pub d_space: bool,
    pub supercompact_space: bool,
    pub route_agreement: BTreeMap<&'static str, Vec<bool>>,
}

fn agree(routes: &mut BTreeMap<&'static str, Vec<bool>>, name: &'static str, values: Vec<bool>) -> bool {
    let first = values[0];
    assert!(
        values.iter().all(|&v| v == first),
        "routes for {name} disagree: {values:?}"
    );
    routes.insert(name, values);
    first
}

pub fn space_profile(t: &FinTopology) -> SpaceProfile {
    let q = specialization_order(t);
    let n = t.n();
    let lattices = if t.opens().len() <= LATTICE_ROUTE_MAX {
        Some((
            open_set_lattice(t).expect("size checked"),
            closed_set_lattice(t).expect("size checked"),
        ))
    } else {
        None
    };
    let with_lattice = |pointwise: bool, f: &dyn Fn(&FinLattice, &FinLattice) -> bool| {
        let mut v = vec![pointwise];
        if let Some((o, c)) = &lattices {
            v.push(f(o, c));
        }
        v
    };
    let mut r = BTreeMap::new();

    let cores_distinct = (0..n).all(|x| (0..x).all(|y| t.least_nbhd(x) != t.least_nbhd(y)));
    let t0 = agree(&mut r, "t0", vec![q.is_partial_order(), cores_distinct]);

    let web = agree(
        &mut r,
        "web",
        with_lattice(is_web(t), &|o, _| laws::coframe_law(o).is_ok()),
    );
    let wide_web = agree(
        &mut r,
        "wide_web",
        with_lattice(is_wide_web(t), &|o, _| laws::wide_coframe_law(o).is_ok()),
    );

    let upper_union_route = || {
        q.upper_sets()
            .iter()
            .all(|y| t.interior(y) == y.iter().fold(PointSet::EMPTY, |a, x| a | t.interior(q.up(x))))
    };
    let mut c_routes = with_lattice(is_c_space(t), &|o, c| {
        laws::completely_distributive_law(o).is_ok() && laws::continuous_law(c).is_ok()
    });
    if t.opens().len() <= 4096 {
        c_routes.push(upper_union_route());
    }
    let c_space = agree(&mut r, "c_space", c_routes);

    let lsc = agree(
        &mut r,
        "locally_strongly_connected",
        vec![is_locally_strongly_connected(t)],
    );
    let dual = agree(
        &mut r,
        "has_dual_base",
        with_lattice(has_dual_base(t), &|o, _| dual_is_topology(o)),
    );
    let b_space = agree(
        &mut r,
        "b_space",
        with_lattice(is_b_space(t), &|o, _| laws::spectral_profile(o).superalgebraic),
    );
    let nbhd_meets_open = (0..n).all(|x| t.is_open(t.open_nbhds(x).fold(t.full(), |a, b| a & b)));
    let a_space = agree(&mut r, "a_space", vec![is_a_space(t), nbhd_meets_open]);

    let ideal_count = q.lower_sets().iter().filter(|&d| q.is_directed(d)).count();
    let sober = agree(&mut r, "sober", vec![is_sober_by_scan(t), t0 && ideal_count == n]);
    let mut d_routes = vec![is_d_space_literal(t)];
    if c_space {
        d_routes.push(sober);
    }
    let d_space = agree(&mut r, "d_space", d_routes);

    let supercompact_space = agree(
        &mut r,
        "supercompact_space",
        with_lattice(supercompact_by_covers(t, t.full()), &|o, _| {
            laws::is_coprime(o, o.top())
        }),
    );

    assert!(!dual || lsc, "dual base without local strong connectedness");
    assert!(!lsc || wide_web, "locally strongly connected but not wide web");
    assert!(!wide_web || web, "wide web but not web");
    assert!(!a_space || b_space, "A-space but not B-space");
    assert!(!b_space || c_space, "B-space but not C-space");
    assert!(!c_space || wide_web, "C-space but not wide web");
    // A finite space is Alexandroff. When it is T0, an irreducible closed set is a
    // directed lower set, whose maximal element is unique and generates it.
    assert!(
        a_space && b_space && c_space && wide_web && web,
        "finite space outside the A-space class"
    );
    assert!(!t0 || sober, "finite T0 space that is not sober");

    SpaceProfile {
        t0,
        web,
        wide_web,
        c_space,
        locally_strongly_connected: lsc,
        has_dual_base: dual,
        b_space,
        a_space,
        sober,
        d_space,
        supercompact_space,
        route_agreement: r,
    }
}

/// Generated by complements of compact saturated sets. On a finite carrier all
/// saturated sets are compact, so this is the topology of lower sets of the
/// specialization order; it also equals the weak lower topology, which is
/// checked.
pub fn cocompact_topology(t: &FinTopology) -> FinTopology {
    let q = specialization_order(t);
    let n = t.n();
    let compact_saturated: Vec<PointSet> = t.full().subsets().filter(|&s| q.is_upper(s)).collect();
    let cocompact = FinTopology::generated_by(t.carrier().clone(), compact_saturated.iter().map(|s| s.complement(n)));
    let weak_lower = FinTopology::generated_by(t.carrier().clone(), (0..n).map(|x| q.up(x).complement(n)));
    assert_eq!(
        cocompact.opens(),
        weak_lower.opens(),
        "cocompact and weak lower topologies differ"
    );
    cocompact
}

/// Pairs are labelled `x.y`; point `(i, j)` has index `i * n2 + j`.
pub fn product_space(a: &FinTopology, b: &FinTopology) -> Result<FinTopology, StructError> {
    let (n1, n2) = (a.n(), b.n());
    if n1 * n2 > MAX_POINTS {
        return Err(StructError::TooLarge {
            n: n1 * n2,
            max: MAX_POINTS,
        });
    }
    let names: Vec<String> = (0..n1)
        .flat_map(|i| (0..n2).map(move |j| (i, j)))
        .map(|(i, j)| format!("{}.{}", a.carrier().name(i), b.carrier().name(j)))
        .collect();
    let carrier = Carrier::new(names)?;
    let boxes =
        |u: PointSet, v: PointSet| PointSet::from_indices(u.iter().flat_map(|i| v.iter().map(move |j| i * n2 + j)));
    let sub = a
        .opens()
        .iter()
        .map(|u| boxes(u, b.full()))
        .chain(b.opens().iter().map(|v| boxes(a.full(), v)));
    Ok(FinTopology::generated_by(carrier, sub.collect::<Vec<_>>()))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ProductAuditReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

type Predicate = fn(&FinTopology) -> bool;

/// Binary products of spaces with at most `n_bound` points (one per
/// homeomorphism class) and at most [`MAX_POINTS`] points in the product.
pub fn audit_products(n_bound: usize) -> Result<ProductAuditReport, StructError> {
    let mut spaces = Vec::new();
    for k in 1..=n_bound {
        spaces.extend(enumerate_topologies(k, true)?);
    }
    let mut report = ProductAuditReport::default();
    for a in &spaces {
        for b in spaces.iter().filter(|b| a.n() * b.n() <= MAX_POINTS) {
            let p = product_space(a, b)?;
            report.checked += 1;
            let checks: [(&str, Predicate); 4] = [
                ("web", is_web),
                ("wide web", is_wide_web),
                ("locally strongly connected", is_locally_filtered),
                ("C-space", is_c_space),
            ];
            for (name, f) in checks {
                if f(&p) != (f(a) && f(b)) {
                    report
                        .violations
                        .push(format!("{name} fails on {:?} x {:?}", a.opens(), b.opens()));
                }
            }
            let (qa, qb, qp) = (
                specialization_order(a),
                specialization_order(b),
                specialization_order(&p),
            );
            let n2 = b.n();
            let product_order = (0..p.n())
                .all(|x| (0..p.n()).all(|y| qp.leq(x, y) == (qa.leq(x / n2, y / n2) && qb.leq(x % n2, y % n2))));
            if !product_order {
                report.violations.push(format!(
                    "specialization is not the product order on {:?} x {:?}",
                    a.opens(),
                    b.opens()
                ));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(bits: u32) -> PointSet {
        PointSet::from_bits(bits)
    }

    #[test]
    fn sierpinski_profile() {
        let s = FinTopology::sierpinski();
        let p = space_profile(&s);
        assert!(p.web && p.wide_web && p.c_space && p.sober && p.a_space && p.t0 && p.d_space);
        assert!(p.route_agreement["web"].len() >= 2);
        assert!(subset_profile(&s, set(0b11)).supercompact);
    }

    #[test]
    fn indiscrete_is_not_sober() {
        let p = space_profile(&FinTopology::indiscrete(Carrier::standard(2)));
        assert!(p.c_space && !p.t0 && !p.sober);
    }

    #[test]
    fn one_point() {
        let p = space_profile(&FinTopology::discrete(Carrier::standard(1)));
        assert!(p.t0 && p.web && p.wide_web && p.c_space && p.locally_strongly_connected && p.has_dual_base);
        assert!(p.b_space && p.a_space && p.sober && p.d_space && p.supercompact_space);
    }

    #[test]
    fn subset_edges() {
        let d = FinTopology::discrete(Carrier::standard(2));
        assert!(!subset_profile(&d, set(0b11)).strongly_connected);
        let e = subset_profile(&d, PointSet::EMPTY);
        assert!(!e.strongly_connected && e.hypercompact && !e.supercompact);
    }

    #[test]
    fn cocompact() {
        let s = FinTopology::sierpinski();
        assert_eq!(cocompact_topology(&s).opens().members(), &[set(0), set(1), set(3)]);
        let d = FinTopology::discrete(Carrier::standard(3));
        assert_eq!(cocompact_topology(&d).opens(), d.opens());
        let i = FinTopology::indiscrete(Carrier::standard(3));
        assert_eq!(cocompact_topology(&i).opens(), i.opens());
    }

    #[test]
    fn products() {
        let s = FinTopology::sierpinski();
        let p = product_space(&s, &s).unwrap();
        assert_eq!(p.n(), 4);
        assert!(is_c_space(&p));
        let q = specialization_order(&p);
        assert!(q.leq(0, 3) && !q.leq(1, 2));
        let one = FinTopology::discrete(Carrier::standard(1));
        assert_eq!(product_space(&s, &one).unwrap().opens(), s.opens());
        let d = FinTopology::discrete(Carrier::standard(2));
        assert_eq!(product_space(&d, &d).unwrap().opens().len(), 16);
        assert!(product_space(&FinTopology::discrete(Carrier::standard(5)), &d).is_ok());
        assert!(product_space(
            &FinTopology::discrete(Carrier::standard(7)),
            &FinTopology::discrete(Carrier::standard(3))
        )
        .is_err());
    }

    #[test]
    fn all_small_spaces_agree() {
        for n in 1..=4 {
            for t in enumerate_topologies(n, false).unwrap() {
                let p = space_profile(&t);
                assert!(p.web && p.wide_web && p.c_space && p.has_dual_base);
            }
        }
    }
}

//! Specialization order, cores, the interior relation, C-relations and the
//! relation/topology round trip; cut closures and generalized Scott topologies.

use serde::Serialize;

use crate::finstruct::{Carrier, FinPoset, FinQoset, FinTopology, PointSet, Relation, SetFamily};

/// `x <= y` iff every open set containing `x` contains `y`.
pub fn specialization_order(t: &FinTopology) -> FinQoset {
    FinQoset::new(t.carrier().clone(), t.nbhd_relation()).expect("least neighbourhoods form a preorder")
}

/// Intersection of all neighbourhoods of `y`, i.e. `up(y)` in the specialization order.
pub fn saturation(t: &FinTopology, y: PointSet) -> PointSet {
    y.iter().fold(PointSet::EMPTY, |a, x| a | t.least_nbhd(x))
}

pub fn core(t: &FinTopology, x: usize) -> PointSet {
    t.least_nbhd(x)
}

pub fn closure(t: &FinTopology, y: PointSet) -> PointSet {
    t.closure(y)
}

/// `x rho y` iff `y` lies in the interior of the core of `x`.
pub fn interior_relation(t: &FinTopology) -> Relation {
    Relation::from_rows((0..t.n()).map(|x| t.interior(core(t, x))).collect())
}

/// `x <=_rho y` iff `rho x` is contained in `rho y`, where `rho y = {x : x rho y}`.
pub fn lower_quasiorder(carrier: &Carrier, rel: &Relation) -> FinQoset {
    let cols: Vec<PointSet> = (0..rel.n()).map(|y| rel.pred(y)).collect();
    let q = Relation::from_fn(rel.n(), |x, y| cols[x].is_subset(cols[y]));
    FinQoset::new(carrier.clone(), q).expect("inclusion of columns is a preorder")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RefutationKind {
    /// `x rho z` with no `y` such that `x rho y rho z`.
    NoInterpolant,
    /// `x rho y rho z` but not `x rho z`.
    NotTransitive,
    /// `rho y` is empty.
    EmptyIdeal,
    /// `x' <=_rho x`, `x` in `rho y`, `x'` not in `rho y`.
    NotLower,
    /// `a, b` in `rho y` without a common upper bound there.
    NotDirected,
    /// `rho x = rho y` with `x != y`.
    NotSeparated,
}

/// A failed condition with the points that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub kind: RefutationKind,
    #[serde(skip)]
    pub points: Vec<usize>,
    #[serde(rename = "points")]
    pub labels: Vec<String>,
    pub detail: String,
}

impl Refutation {
    fn new(carrier: &Carrier, kind: RefutationKind, points: Vec<usize>) -> Self {
        let labels: Vec<String> = points.iter().map(|&i| carrier.name(i).to_string()).collect();
        let l = |i: usize| labels[i].as_str();
        let detail = match kind {
            RefutationKind::NoInterpolant => format!("{} rho {} has no interpolant", l(0), l(1)),
            RefutationKind::NotTransitive => {
                format!("{} rho {} rho {} but not {} rho {}", l(0), l(1), l(2), l(0), l(2))
            }
            RefutationKind::EmptyIdeal => format!("rho {} is empty", l(0)),
            RefutationKind::NotLower => {
                format!(
                    "{} <=_rho {} and {} rho {}, but not {} rho {}",
                    l(2),
                    l(1),
                    l(1),
                    l(0),
                    l(2),
                    l(0)
                )
            }
            RefutationKind::NotDirected => format!("{} and {} have no upper bound in rho {}", l(1), l(2), l(0)),
            RefutationKind::NotSeparated => format!("rho {} = rho {}", l(0), l(1)),
        };
        Refutation {
            kind,
            points,
            labels,
            detail,
        }
    }
}

/// Outcome of checking the C-quasi-order conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub c_quasi_order: bool,
    pub c_order: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Refutation>,
}

/// Checks idempotency, that every `rho y` is a nonempty directed lower set for
/// `<=_rho`, and separation. The witness is the first failure in that order.
pub fn validate_c_relation(carrier: &Carrier, rel: &Relation) -> Certificate {
    let n = rel.n();
    let refute = |kind, points| Certificate {
        c_quasi_order: false,
        c_order: false,
        witness: Some(Refutation::new(carrier, kind, points)),
    };
    for x in 0..n {
        for z in 0..n {
            let via: PointSet = rel.succ(x) & rel.pred(z);
            if rel.holds(x, z) && via.is_empty() {
                return refute(RefutationKind::NoInterpolant, vec![x, z]);
            }
            if !rel.holds(x, z) {
                if let Some(y) = via.first() {
                    return refute(RefutationKind::NotTransitive, vec![x, y, z]);
                }
            }
        }
    }
    let cols: Vec<PointSet> = (0..n).map(|y| rel.pred(y)).collect();
    let below = |a: usize, b: usize| cols[a].is_subset(cols[b]);
    for (y, &ideal) in cols.iter().enumerate() {
        if ideal.is_empty() {
            return refute(RefutationKind::EmptyIdeal, vec![y]);
        }
        for x in ideal.iter() {
            if let Some(lower) = (0..n).find(|&v| below(v, x) && !ideal.contains(v)) {
                return refute(RefutationKind::NotLower, vec![y, x, lower]);
            }
        }
        for a in ideal.iter() {
            for b in ideal.iter() {
                if !ideal.iter().any(|c| below(a, c) && below(b, c)) {
                    return refute(RefutationKind::NotDirected, vec![y, a, b]);
                }
            }
        }
    }
    for x in 0..n {
        if let Some(y) = (x + 1..n).find(|&y| cols[x] == cols[y]) {
            return Certificate {
                c_quasi_order: true,
                c_order: false,
                witness: Some(Refutation::new(carrier, RefutationKind::NotSeparated, vec![x, y])),
            };
        }
    }
    Certificate {
        c_quasi_order: true,
        c_order: true,
        witness: None,
    }
}

/// A relation certified to be a C-quasi-order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CRelation {
    carrier: Carrier,
    rel: Relation,
    c_order: bool,
}

impl CRelation {
    pub fn certify(carrier: &Carrier, rel: &Relation) -> Result<Self, Refutation> {
        let cert = validate_c_relation(carrier, rel);
        if cert.c_quasi_order {
            Ok(CRelation {
                carrier: carrier.clone(),
                rel: rel.clone(),
                c_order: cert.c_order,
            })
        } else {
            Err(cert.witness.expect("refutations carry a witness"))
        }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn rel(&self) -> &Relation {
        &self.rel
    }

    pub fn n(&self) -> usize {
        self.rel.n()
    }

    pub fn is_c_order(&self) -> bool {
        self.c_order
    }

    /// `rho y = {x : x rho y}`.
    pub fn below(&self, y: usize) -> PointSet {
        self.rel.pred(y)
    }

    /// `rho Y = {x : x rho y for some y in Y}`.
    pub fn round(&self, ys: PointSet) -> PointSet {
        self.rel.preimage(ys)
    }

    pub fn lower_quasiorder(&self) -> FinQoset {
        lower_quasiorder(&self.carrier, &self.rel)
    }
}

/// Topology whose opens are the unions of the sets `y rho = {x : y rho x}`.
pub fn topology_from_relation(rho: &CRelation) -> FinTopology {
    let base: Vec<PointSet> = (0..rho.n()).map(|y| rho.rel().succ(y)).collect();
    let mut opens = vec![PointSet::EMPTY];
    for &b in &base {
        let extra: Vec<PointSet> = opens.iter().map(|&u| u | b).collect();
        opens.extend(extra);
        opens.sort_unstable();
        opens.dedup();
    }
    crate::finstruct::validate_topology(rho.carrier(), SetFamily::new(opens))
        .expect("a C-quasi-order generates a topology")
}

/// The family of rounded sets `rho Y`, `Y` ranging over all subsets.
pub fn rounded_sets(rho: &CRelation) -> SetFamily {
    let mut out = vec![PointSet::EMPTY];
    for y in 0..rho.n() {
        let col = rho.below(y);
        let extra: Vec<PointSet> = out.iter().map(|&u| u | col).collect();
        out.extend(extra);
        out.sort_unstable();
        out.dedup();
    }
    SetFamily::new(out)
}

/// Largest carrier for which every relation is tried.
pub const MAX_ENUM_RELATION: usize = 4;

/// Every C-quasi-order on the standard carrier of `n` points, in order of the relation bits.
pub fn enumerate_c_relations(n: usize) -> Vec<CRelation> {
    assert!(n <= MAX_ENUM_RELATION, "{n} points: too many relations to enumerate");
    let carrier = Carrier::standard(n);
    (0u64..1 << (n * n))
        .filter_map(|bits| {
            let rel = Relation::from_fn(n, |x, y| bits >> (x * n + y) & 1 == 1);
            CRelation::certify(&carrier, &rel).ok()
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RoundTripReport {
    pub relations: usize,
    pub topologies: usize,
    pub violations: Vec<String>,
}

/// `rho -> O_rho -> rho_S` on C-quasi-orders with at most `rel_bound` points and
/// `S -> rho_S -> O_rho` on labeled topologies with at most `top_bound` points.
pub fn audit_roundtrips(rel_bound: usize, top_bound: usize) -> RoundTripReport {
    let mut report = RoundTripReport::default();
    for n in 1..=rel_bound {
        for rho in enumerate_c_relations(n) {
            report.relations += 1;
            let t = topology_from_relation(&rho);
            if &interior_relation(&t) != rho.rel() {
                report
                    .violations
                    .push(format!("interior relation of O_rho differs from rho = {:?}", rho.rel()));
            }
            if specialization_order(&t).rel() != rho.lower_quasiorder().rel() {
                report.violations.push(format!(
                    "specialization of O_rho differs from <=_rho for {:?}",
                    rho.rel()
                ));
            }
        }
    }
    for n in 1..=top_bound {
        for t in crate::finstruct::enumerate_topologies(n, false).expect("bounded") {
            report.topologies += 1;
            let rho = CRelation::certify(t.carrier(), &interior_relation(&t));
            match rho {
                Ok(rho) if topology_from_relation(&rho).opens() == t.opens() => {}
                Ok(_) => report
                    .violations
                    .push(format!("O of rho_S differs from S = {:?}", t.opens())),
                Err(r) => report
                    .violations
                    .push(format!("rho_S not a C-quasi-order: {}", r.detail)),
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpeclatError {
    #[error("{0} is not closed")]
    NotClosed(String),
    #[error("{0} is not an ideal")]
    NotAnIdeal(String),
    #[error("principal ideal of `{0}` missing")]
    MissingPrincipal(String),
}

/// `rho A` for the interior relation: the least lower set whose closure is `A`.
pub fn least_lower_set_with_closure(t: &FinTopology, a: PointSet) -> Result<PointSet, SpeclatError> {
    if !t.is_closed(a) {
        return Err(SpeclatError::NotClosed(t.carrier().render(a)));
    }
    Ok(interior_relation(t).preimage(a))
}

/// Intersection of the principal ideals containing `i` (the whole carrier if there are none).
pub fn cut_closure(p: &FinQoset, i: PointSet) -> PointSet {
    let full = p.carrier().full();
    p.upper_bounds(i).iter().fold(full, |acc, z| acc & p.down(z))
}

/// Ideals of a poset containing at least the principal ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealExtension {
    poset: FinPoset,
    ideals: SetFamily,
}

impl IdealExtension {
    pub fn new(poset: FinPoset, ideals: SetFamily) -> Result<Self, SpeclatError> {
        if let Some(bad) = ideals.iter().find(|&i| !poset.is_ideal(i)) {
            return Err(SpeclatError::NotAnIdeal(poset.carrier().render(bad)));
        }
        if let Some(x) = (0..poset.n()).find(|&x| !ideals.contains(poset.down(x))) {
            return Err(SpeclatError::MissingPrincipal(poset.carrier().name(x).to_string()));
        }
        Ok(IdealExtension { poset, ideals })
    }

    pub fn principal(poset: FinPoset) -> Self {
        let ideals = (0..poset.n()).map(|x| poset.down(x)).collect();
        IdealExtension { poset, ideals }
    }

    /// All nonempty directed lower sets.
    pub fn all_ideals(poset: FinPoset) -> Self {
        let ideals = poset.lower_sets().iter().filter(|&s| poset.is_directed(s)).collect();
        IdealExtension { poset, ideals }
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn ideals(&self) -> &SetFamily {
        &self.ideals
    }
}

fn scott_condition(z: &IdealExtension, u: PointSet) -> bool {
    z.ideals
        .iter()
        .all(|i| u.meets(i) || !u.meets(cut_closure(&z.poset, i)))
}

/// Upper sets `U` such that `U` meets `ΔI` only if it meets `I`, for each `I` in `Z`.
pub fn generalized_scott(z: &IdealExtension) -> FinTopology {
    let family: SetFamily = z.poset.upper_sets().iter().filter(|&u| scott_condition(z, u)).collect();
    crate::finstruct::validate_topology(z.poset.carrier(), family).expect("upper sets with the cut condition")
}

/// The same condition over arbitrary subsets; generally not a topology of upper sets.
pub fn generalized_scott_raw(z: &IdealExtension) -> SetFamily {
    z.poset
        .carrier()
        .full()
        .subsets()
        .filter(|&u| scott_condition(z, u))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproximationClass {
    pub locally: bool,
    pub globally: bool,
    pub strongly: bool,
    /// The generalized Scott space is a web space (checked when locally approximating).
    pub scott_web: Option<bool>,
    /// The generalized Scott space is a C-space (checked when strongly approximating).
    pub scott_c_space: Option<bool>,
}

pub fn approximation_class(z: &IdealExtension) -> ApproximationClass {
    let p = &z.poset;
    let n = p.n();
    let with_join = |x: usize| z.ideals.iter().filter(move |&j| p.join(j) == Some(x));
    let locally = z
        .ideals
        .iter()
        .all(|i| cut_closure(p, i).iter().all(|x| with_join(x).any(|j| j.is_subset(i))));
    // J_x: the first ideal with join x below every I whose cut closure holds x.
    let choice: Vec<Option<PointSet>> = (0..n)
        .map(|x| {
            let holders: Vec<PointSet> = z.ideals.iter().filter(|&i| cut_closure(p, i).contains(x)).collect();
            with_join(x).find(|&j| holders.iter().all(|&i| j.is_subset(i)))
        })
        .collect();
    let globally = choice.iter().all(Option::is_some);
    let strongly = globally && {
        let js: Vec<PointSet> = choice.iter().map(|j| j.expect("global")).collect();
        (0..n).all(|zz| (0..n).all(|x| js[zz].contains(x) == js[zz].iter().any(|y| js[y].contains(x))))
    };
    assert!(
        !globally || locally,
        "globally approximating must imply locally approximating"
    );
    let scott = generalized_scott(z);
    let scott_web = locally.then(|| crate::classify::is_web(&scott));
    let scott_c_space = strongly.then(|| crate::classify::is_c_space(&scott));
    ApproximationClass {
        locally,
        globally,
        strongly,
        scott_web,
        scott_c_space,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> FinPoset {
        FinPoset::new(FinQoset::chain(2)).unwrap()
    }

    #[test]
    fn sierpinski_basics() {
        let s = FinTopology::sierpinski();
        let q = specialization_order(&s);
        assert!(q.leq(0, 1) && !q.leq(1, 0));
        assert_eq!(core(&s, 0), PointSet::full(2));
        assert_eq!(core(&s, 1), PointSet::singleton(1));
        assert_eq!(closure(&s, PointSet::singleton(1)), PointSet::full(2));
        assert_eq!(saturation(&s, PointSet::EMPTY), PointSet::EMPTY);
        assert_eq!(interior_relation(&s), Relation::from_pairs(2, [(0, 0), (0, 1), (1, 1)]));
    }

    #[test]
    fn interior_relation_extremes() {
        let c = Carrier::standard(2);
        assert_eq!(
            interior_relation(&FinTopology::discrete(c.clone())),
            Relation::identity(2)
        );
        assert_eq!(
            interior_relation(&FinTopology::indiscrete(c.clone())),
            Relation::full(2)
        );
        assert!(!specialization_order(&FinTopology::indiscrete(c)).is_partial_order());
    }

    #[test]
    fn certificates() {
        let c = Carrier::standard(2);
        let chain = Relation::from_pairs(2, [(0, 0), (0, 1), (1, 1)]);
        let cert = validate_c_relation(&c, &chain);
        assert!(cert.c_order && cert.witness.is_none());

        let bad = Relation::from_pairs(2, [(0, 0), (0, 1)]);
        let cert = validate_c_relation(&c, &bad);
        assert!(!cert.c_quasi_order);
        let w = cert.witness.unwrap();
        assert_eq!(w.kind, RefutationKind::NotLower);
        assert_eq!(w.labels, vec!["a", "a", "b"]);

        let one = Carrier::standard(1);
        let w = validate_c_relation(&one, &Relation::empty(1)).witness.unwrap();
        assert_eq!(w.kind, RefutationKind::EmptyIdeal);

        let full = validate_c_relation(&c, &Relation::full(2));
        assert!(full.c_quasi_order && !full.c_order);
        let json = serde_json::to_string(&full).unwrap();
        assert!(json.contains("\"witness\""), "{json}");
    }

    #[test]
    fn relation_to_topology() {
        let c = Carrier::standard(2);
        let chain = CRelation::certify(&c, &Relation::from_pairs(2, [(0, 0), (0, 1), (1, 1)])).unwrap();
        let t = topology_from_relation(&chain);
        assert_eq!(
            t.opens().members(),
            &[PointSet::EMPTY, PointSet::singleton(1), PointSet::full(2)]
        );
        let id = CRelation::certify(&Carrier::standard(3), &Relation::identity(3)).unwrap();
        assert_eq!(topology_from_relation(&id).opens().len(), 8);
        let full = CRelation::certify(&c, &Relation::full(2)).unwrap();
        assert_eq!(topology_from_relation(&full).opens().len(), 2);
    }

    #[test]
    fn lower_quasiorders() {
        let c = Carrier::standard(2);
        let q = lower_quasiorder(&c, &Relation::from_pairs(2, [(0, 0), (0, 1), (1, 1)]));
        assert_eq!(q, FinQoset::chain(2));
        assert_eq!(
            lower_quasiorder(&c, &Relation::identity(2)),
            FinQoset::discrete(c.clone())
        );
        assert_eq!(lower_quasiorder(&c, &Relation::full(2)).rel(), &Relation::full(2));
    }

    #[test]
    fn least_lower_sets() {
        let s = FinTopology::sierpinski();
        assert_eq!(
            least_lower_set_with_closure(&s, PointSet::singleton(0)),
            Ok(PointSet::singleton(0))
        );
        assert_eq!(
            least_lower_set_with_closure(&s, PointSet::full(2)),
            Ok(PointSet::full(2))
        );
        assert_eq!(least_lower_set_with_closure(&s, PointSet::EMPTY), Ok(PointSet::EMPTY));
        assert!(least_lower_set_with_closure(&s, PointSet::singleton(1)).is_err());
    }

    #[test]
    fn cut_closures() {
        let chain = FinQoset::chain(2);
        assert_eq!(cut_closure(&chain, PointSet::singleton(0)), PointSet::singleton(0));
        let anti = FinQoset::discrete(Carrier::standard(2));
        assert_eq!(cut_closure(&anti, PointSet::full(2)), PointSet::full(2));
        assert_eq!(cut_closure(&anti, PointSet::EMPTY), PointSet::EMPTY);
        assert_eq!(cut_closure(&chain, PointSet::EMPTY), PointSet::singleton(0));
    }

    #[test]
    fn scott_topologies() {
        let z = IdealExtension::all_ideals(chain2());
        assert_eq!(z.ideals().len(), 2);
        let t = generalized_scott(&z);
        assert_eq!(
            t.opens().members(),
            &[PointSet::EMPTY, PointSet::singleton(1), PointSet::full(2)]
        );
        // the literal formula admits the non-upper set {0}
        assert!(generalized_scott_raw(&z).contains(PointSet::singleton(0)));

        let anti = FinPoset::new(FinQoset::discrete(Carrier::standard(2))).unwrap();
        assert_eq!(generalized_scott(&IdealExtension::principal(anti)).opens().len(), 4);
        let one = FinPoset::new(FinQoset::chain(1)).unwrap();
        assert_eq!(generalized_scott(&IdealExtension::principal(one)).opens().len(), 2);
    }

    #[test]
    fn ideal_extension_validation() {
        let anti = FinPoset::new(FinQoset::discrete(Carrier::standard(2))).unwrap();
        let bad = SetFamily::new(vec![PointSet::singleton(0), PointSet::singleton(1), PointSet::full(2)]);
        assert!(matches!(
            IdealExtension::new(anti.clone(), bad),
            Err(SpeclatError::NotAnIdeal(_))
        ));
        let short = SetFamily::new(vec![PointSet::singleton(0)]);
        assert!(matches!(
            IdealExtension::new(anti, short),
            Err(SpeclatError::MissingPrincipal(_))
        ));
    }

    #[test]
    fn approximation() {
        let c = approximation_class(&IdealExtension::all_ideals(chain2()));
        assert!(c.locally && c.globally && c.strongly);
        assert_eq!(c.scott_c_space, Some(true));
        assert_eq!(c.scott_web, Some(true));
        let p = approximation_class(&IdealExtension::principal(chain2()));
        assert!(p.globally);
    }

    #[test]
    fn roundtrips() {
        assert_eq!(enumerate_c_relations(1).len(), 1);
        let r = audit_roundtrips(3, 3);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert_eq!(r.topologies, 1 + 4 + 29);
    }
}

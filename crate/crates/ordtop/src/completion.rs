//! Way-below relation, rounded-ideal completion, bases and core bases, and
//! the equality of weight, density and cofinality for finite spaces.

use itertools::Itertools;
use serde::Serialize;

use crate::finstruct::{
    join_irreducibles, Carrier, FinPoset, FinQoset, FinTopology, PointSet, Relation, SetFamily, StructError,
};
use crate::patchwork::{patch, CoselectionKind};
use crate::speclat::{interior_relation, specialization_order, CRelation, Refutation};

/// Largest carrier for the exact minimum-cardinality searches.
pub const MAX_EXACT_SEARCH: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompletionError {
    #[error("{component}: carrier of {n} points exceeds the exact search bound {max}")]
    TooLarge {
        component: &'static str,
        n: usize,
        max: usize,
    },
    #[error("not a basis: the elements of the basis way below `{witness}` are not directed with join `{witness}`")]
    NotABasis { witness: String },
    #[error("not a C-quasi-order: {}", .0.detail)]
    Uncertified(Refutation),
    #[error(transparent)]
    Struct(#[from] StructError),
}

/// Ideals of a poset that have a join.
fn ideals_with_join(p: &FinQoset) -> Vec<(PointSet, usize)> {
    p.lower_sets()
        .iter()
        .filter(|&d| p.is_directed(d))
        .filter_map(|d| {
            let j = p.joins(d);
            (j.len() == 1).then(|| (d, j.first().expect("one join")))
        })
        .collect()
}

/// `x ≪ y` iff every ideal whose join is above `y` contains `x`.
pub fn way_below_of(p: &FinQoset) -> Relation {
    let ideals = ideals_with_join(p);
    Relation::from_fn(p.n(), |x, y| ideals.iter().all(|&(d, j)| !p.leq(y, j) || d.contains(x)))
}

pub fn way_below(p: &FinPoset) -> Relation {
    let r = way_below_of(p.qoset());
    // finite ideals are principal, so ≪ collapses to ≤
    assert_eq!(&r, p.rel(), "way-below differs from the order on a finite poset");
    r
}

/// Carriers up to this size also have their rounded ideals found among all rounded sets.
const LITERAL_IDEAL_SEARCH: usize = 12;

/// Rounded ideals of a C-quasi-order, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct RoundedIdealPoset {
    pub base: CRelation,
    pub ideals: SetFamily,
    pub poset: FinPoset,
    /// `embedding[x]` is the index in `ideals` of `ρx = {z : z ρ x}`.
    pub embedding: Vec<usize>,
}

impl RoundedIdealPoset {
    pub fn render(&self, i: usize) -> String {
        self.base.carrier().render(self.ideals.members()[i])
    }

    pub fn n(&self) -> usize {
        self.ideals.len()
    }
}

pub fn rounded_ideal_completion(rho: &CRelation) -> RoundedIdealPoset {
    // a finite directed set has a largest element up to <=_rho, so every rounded ideal is a column
    let ideals: SetFamily = (0..rho.n()).map(|y| rho.below(y)).collect();
    if rho.n() <= LITERAL_IDEAL_SEARCH {
        let q = rho.lower_quasiorder();
        let literal: SetFamily = crate::speclat::rounded_sets(rho)
            .iter()
            .filter(|&i| !i.is_empty() && rho.round(i) == i && q.is_lower(i) && q.is_directed(i))
            .collect();
        assert_eq!(literal, ideals, "rounded ideals are not the columns of rho");
    }
    let labels: Vec<String> = ideals.iter().map(|i| rho.carrier().join_label(i)).collect();
    let carrier = Carrier::new(labels).expect("distinct join labels");
    let m = ideals.members();
    let rel = Relation::from_fn(m.len(), |a, b| m[a].is_subset(m[b]));
    let poset = FinPoset::new(FinQoset::new(carrier, rel).expect("inclusion is a preorder")).expect("antisymmetric");
    let embedding = (0..rho.n())
        .map(|x| {
            m.binary_search(&rho.below(x))
                .expect("columns of a C-quasi-order are rounded ideals")
        })
        .collect();
    let literal = way_below_of(poset.qoset());
    let by_witness = Relation::from_fn(m.len(), |a, b| m[b].iter().any(|x| m[a].is_subset(rho.below(x))));
    assert_eq!(literal, by_witness, "way-below on the completion: routes disagree");
    RoundedIdealPoset {
        base: rho.clone(),
        ideals,
        poset,
        embedding,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BasisProfile {
    pub rho_dense: bool,
    pub rho_cofinal: bool,
    pub core_basis: bool,
    pub skula_dense: bool,
    pub closures_join_dense: bool,
}

/// Topology generated by the opens and the closed sets.
pub fn skula_topology(s: &FinTopology) -> FinTopology {
    FinTopology::generated_by(
        s.carrier().clone(),
        s.opens().iter().chain(s.closed_sets().iter()).collect::<Vec<_>>(),
    )
}

fn is_dense(t: &FinTopology, b: PointSet) -> bool {
    t.opens().iter().all(|u| u.is_empty() || u.meets(b))
}

fn rho_cofinal(rho: &Relation, b: PointSet) -> bool {
    rho.pairs()
        .all(|(x, y)| b.iter().any(|c| rho.pred(x).is_subset(rho.pred(c)) && rho.holds(c, y)))
}

pub fn basis_profile(s: &FinTopology, b: PointSet) -> BasisProfile {
    let rho = interior_relation(s);
    let rho_dense = rho
        .pairs()
        .all(|(x, y)| b.iter().any(|c| rho.holds(x, c) && rho.holds(c, y)));
    let rho_cofinal = rho_cofinal(&rho, b);
    let core_basis = s.opens().iter().all(|u| u.iter().all(|y| rho.pred(y).meets(b & u)));
    let skula_dense = is_dense(&skula_topology(s), b);
    let closed = s.closed_sets();
    let down = |x: usize| s.closure(PointSet::singleton(x));
    let closures_join_dense = closed.iter().all(|c| {
        let parts = b
            .iter()
            .filter(|&x| down(x).is_subset(c))
            .fold(PointSet::EMPTY, |a, x| a | down(x));
        s.closure(parts) == c
    });
    let p = BasisProfile {
        rho_dense,
        rho_cofinal,
        core_basis,
        skula_dense,
        closures_join_dense,
    };
    let all = [rho_dense, rho_cofinal, core_basis, skula_dense, closures_join_dense];
    assert!(
        all.iter().all(|&v| v == all[0]),
        "core basis characterizations disagree on {}: {p:?}",
        s.carrier().render(b)
    );
    p
}

/// `Ok` when `{b ∈ B : b ≪ y}` is directed with join `y` for every `y`; else the first failing `y`.
pub fn poset_basis_check(p: &FinPoset, b: PointSet) -> Result<(), usize> {
    let wb = way_below(p);
    let q = p.qoset();
    for y in 0..p.n() {
        let below = wb.pred(y) & b;
        let joins = q.joins(below);
        if !q.is_directed(below) || joins != PointSet::singleton(y) {
            return Err(y);
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoCertificate {
    /// `(y, B_y)` for every point `y`.
    pub pairs: Vec<(String, String)>,
}

/// Completes `(B, ≪|B)` and checks that `y ↦ {b ∈ B : b ≪ y}` is an order isomorphism.
pub fn based_domain_roundtrip(p: &FinPoset, b: PointSet) -> Result<IsoCertificate, CompletionError> {
    poset_basis_check(p, b).map_err(|y| CompletionError::NotABasis {
        witness: p.carrier().name(y).to_string(),
    })?;
    let wb = way_below(p);
    let idx: Vec<usize> = b.iter().collect();
    let carrier = Carrier::new(idx.iter().map(|&i| p.carrier().name(i).to_string()))?;
    let rho = CRelation::certify(&carrier, &wb.restrict(b)).map_err(CompletionError::Uncertified)?;
    let done = rounded_ideal_completion(&rho);
    let image: Vec<usize> = (0..p.n())
        .map(|y| {
            let by = PointSet::from_indices(idx.iter().enumerate().filter(|&(_, &x)| wb.holds(x, y)).map(|(i, _)| i));
            done.ideals
                .members()
                .binary_search(&by)
                .expect("B_y is a rounded ideal")
        })
        .collect();
    assert_eq!(image.iter().unique().count(), done.n(), "y ↦ B_y is not a bijection");
    for x in 0..p.n() {
        for y in 0..p.n() {
            assert_eq!(
                p.leq(x, y),
                done.poset.leq(image[x], image[y]),
                "y ↦ B_y does not preserve order"
            );
        }
    }
    Ok(IsoCertificate {
        pairs: (0..p.n())
            .map(|y| (p.carrier().name(y).to_string(), done.render(image[y])))
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricsReport {
    pub weight_s: usize,
    pub weight_sc: usize,
    pub weight_s_upsilon: usize,
    pub density_s_alpha: usize,
    pub rho_cofinality: usize,
    #[serde(serialize_with = "serialize_labels")]
    pub minimal_core_basis: (PointSet, Carrier),
}

fn serialize_labels<S: serde::Serializer>(v: &(PointSet, Carrier), s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.0.iter().map(|i| v.1.name(i)))
}

/// Least `k` such that some `k`-subset of the carrier satisfies `pred`, with the first such subset.
fn least_subset(n: usize, pred: impl Fn(PointSet) -> bool) -> (usize, PointSet) {
    for k in 0..=n {
        if let Some(c) = (0..n).combinations(k).map(PointSet::from_indices).find(|&c| pred(c)) {
            return (k, c);
        }
    }
    unreachable!("the whole carrier always qualifies")
}

pub fn metrics(s: &FinTopology) -> Result<MetricsReport, CompletionError> {
    let n = s.n();
    if n > MAX_EXACT_SEARCH {
        return Err(CompletionError::TooLarge {
            component: "density and cofinality",
            n,
            max: MAX_EXACT_SEARCH,
        });
    }
    // opens that are not unions of smaller opens form the least base
    let weight_s = s.join_irreducible_opens().len();
    // closed sets join by union; the join-irreducibles are the least join-dense subset
    let weight_sc = join_irreducibles(&s.closed_sets()).len();
    let weak_patch = patch(s, CoselectionKind::Upsilon);
    let weight_s_upsilon = weak_patch.topology().join_irreducible_opens().len();
    let skula = skula_topology(s);
    let (density_s_alpha, _) = least_subset(n, |b| is_dense(&skula, b));
    let rho = interior_relation(s);
    let (rho_cofinality, basis) = least_subset(n, |b| rho_cofinal(&rho, b));
    assert!(
        basis_profile(s, basis).core_basis,
        "minimal cofinal set is not a core basis"
    );
    let all = [weight_s, weight_sc, weight_s_upsilon, density_s_alpha, rho_cofinality];
    assert!(
        all.iter().all(|&v| v == weight_s),
        "weight/density chain broken: {all:?}"
    );
    Ok(MetricsReport {
        weight_s,
        weight_sc,
        weight_s_upsilon,
        density_s_alpha,
        rho_cofinality,
        minimal_core_basis: (basis, s.carrier().clone()),
    })
}

/// Rounded-ideal completion of the interior relation of a T0 space is the
/// specialization poset (finite spaces are sober).
pub fn completion_matches_specialization(s: &FinTopology) -> bool {
    let q = specialization_order(s);
    if !q.is_partial_order() {
        return false;
    }
    let rho = CRelation::certify(s.carrier(), &interior_relation(s)).expect("interior relation of a finite space");
    let done = rounded_ideal_completion(&rho);
    done.n() == s.n()
        && (0..s.n()).all(|x| (0..s.n()).all(|y| q.leq(x, y) == done.poset.leq(done.embedding[x], done.embedding[y])))
}

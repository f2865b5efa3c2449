//! Theorem registry with an exhaustive audit driver, smallest-witness search
//! over small structures, and a gallery of named examples with golden profiles.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{is_web, space_profile};
use crate::completion::{
    based_domain_roundtrip, basis_profile, completion_matches_specialization, metrics, poset_basis_check,
    rounded_ideal_completion, way_below,
};
use crate::finstruct::enumerate::canonical_relation;
use crate::finstruct::{
    enumerate_lattices, enumerate_posets, enumerate_posets_upto_iso, enumerate_qosets, enumerate_topologies,
    permutations, Carrier, FinLattice, FinPoset, FinQoset, FinTopology, OrderedSpace, PointSet, Relation, StructError,
    Structure,
};
use crate::laws::{law_profile, literal_complete_distributivity, spectral_profile, weak_upper_space};
use crate::patchwork::{
    audit_ordered_space, audit_patch_of, is_fan, is_sector, is_web_around, ordered_space_profile, patch,
    CoselectionKind, OrderedSpaceProfile, CLAIM_C_STABLE_SPLIT, CLAIM_C_STABLE_UPPER, CLAIM_DIAMOND_SPLIT,
    CLAIM_DOMAIN_POSPACE, CLAIM_SEMILATTICE, CLAIM_WEB_VEE, CLAIM_WEDGE_IDEALS,
};
use crate::powerdomain::{
    audit_free, audit_hoare, audit_ideal_lift, enumerate_c_semilattices, enumerate_dcpo_semilattices,
    enumerate_semilattice_ops, plotkin, plotkin_from_order, rho_bar, CSemilattice, DcpoSemilattice,
    CLAIM_PLOTKIN_DEGENERACY, CLAIM_RHO_BAR, CLAIM_RHO_BAR_SEPARATED,
};
use crate::report::ClaimReport;
use crate::speclat::{
    enumerate_c_relations, generalized_scott, interior_relation, least_lower_set_with_closure, rounded_sets,
    specialization_order, topology_from_relation, CRelation, IdealExtension, MAX_ENUM_RELATION,
};
use crate::uniformity;

static CANCELLED: AtomicBool = AtomicBool::new(false);

/// Ask running audits and searches to stop; their reports come back marked incomplete.
pub fn request_cancel() {
    CANCELLED.store(true, Ordering::SeqCst);
}

pub fn reset_cancel() {
    CANCELLED.store(false, Ordering::SeqCst);
}

fn cancelled() -> bool {
    CANCELLED.load(Ordering::Relaxed)
}

#[derive(Debug, thiserror::Error)]
pub enum ExplorerError {
    #[error("unknown theorem `{0}` (run `ordtop audit --list`)")]
    UnknownTheorem(String),
    #[error("size {n} outside 1..={max} for {what}")]
    SizeOutOfRange { what: String, n: usize, max: usize },
    #[error("unknown predicate `{name}` for {kind} (known: {known})")]
    UnknownFlag {
        name: String,
        kind: &'static str,
        known: String,
    },
    #[error("unknown structure kind `{0}`")]
    UnknownKind(String),
    #[error("unknown gallery entry `{0}`")]
    UnknownGallery(String),
    #[error(transparent)]
    Struct(#[from] StructError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

// ---------------------------------------------------------------------------
// Domains

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Topology,
    OrderedSpace,
    Lattice,
    Poset,
    CRelation,
}

impl Domain {
    pub fn name(self) -> &'static str {
        match self {
            Domain::Topology => "topology",
            Domain::OrderedSpace => "ordered_space",
            Domain::Lattice => "lattice",
            Domain::Poset => "poset",
            Domain::CRelation => "c_relation",
        }
    }
}

impl std::str::FromStr for Domain {
    type Err = ExplorerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "topology" => Domain::Topology,
            "ordered_space" => Domain::OrderedSpace,
            "lattice" => Domain::Lattice,
            "poset" => Domain::Poset,
            "c_relation" => Domain::CRelation,
            _ => return Err(ExplorerError::UnknownKind(s.to_string())),
        })
    }
}

/// One enumerated structure.
#[derive(Clone, Debug)]
pub enum Instance {
    Topology(FinTopology),
    OrderedSpace(OrderedSpace),
    Lattice(FinLattice),
    Poset(FinPoset),
    Relation(CRelation),
}

impl Instance {
    pub fn structure(&self) -> Structure {
        match self {
            Instance::Topology(t) => Structure::of_topology(t),
            Instance::OrderedSpace(s) => s.structure(),
            Instance::Lattice(l) => Structure::of_order(l.poset().qoset()),
            Instance::Poset(p) => Structure::of_order(p.qoset()),
            Instance::Relation(r) => Structure::of_relation(r.carrier(), r.rel()),
        }
    }

    pub fn describe(&self) -> String {
        self.structure().to_text().trim_end().replace('\n', "; ")
    }
}

/// Every topology paired with every quasi-order on `n` points. With `upto_iso`,
/// one pair per isomorphism class: homeomorphism representatives of the
/// topology, and orders up to the automorphisms of that representative.
pub fn enumerate_ordered_spaces(n: usize, upto_iso: bool) -> Result<Vec<OrderedSpace>, StructError> {
    let orders = enumerate_qosets(n)?;
    let all_perms = permutations(n);
    let mut out = Vec::new();
    for t in enumerate_topologies(n, upto_iso)? {
        if upto_iso {
            let autos: Vec<Vec<usize>> = all_perms.iter().filter(|p| &t.map(p) == t.opens()).cloned().collect();
            let mut keys: Vec<Relation> = orders.iter().map(|q| canonical_relation(q.rel(), &autos)).collect();
            keys.sort();
            keys.dedup();
            for k in keys {
                let q = FinQoset::new(t.carrier().clone(), k)?;
                out.push(OrderedSpace::new(q, t.clone())?);
            }
        } else {
            for q in &orders {
                out.push(OrderedSpace::new(q.clone(), t.clone())?);
            }
        }
    }
    Ok(out)
}

fn enumerate_relations(n: usize, upto_iso: bool) -> Vec<CRelation> {
    let all = enumerate_c_relations(n);
    if !upto_iso {
        return all;
    }
    let perms = permutations(n);
    let mut keys: Vec<Relation> = all.iter().map(|r| canonical_relation(r.rel(), &perms)).collect();
    keys.sort();
    keys.dedup();
    let carrier = Carrier::standard(n);
    keys.iter()
        .map(|k| CRelation::certify(&carrier, k).expect("relabeling keeps certification"))
        .collect()
}

/// Largest size each domain's enumerator accepts. Labeled ordered spaces on 5
/// points number about 48 million, so only their isomorphism classes go that far.
pub fn domain_limit(d: Domain, upto_iso: bool) -> usize {
    use crate::finstruct::enumerate::{MAX_ENUM_LATTICE, MAX_ENUM_POSET, MAX_ENUM_TOPOLOGY};
    match d {
        Domain::Topology => MAX_ENUM_TOPOLOGY,
        Domain::OrderedSpace if upto_iso => 5,
        Domain::OrderedSpace => 4,
        Domain::Lattice => MAX_ENUM_LATTICE,
        Domain::Poset => MAX_ENUM_POSET,
        Domain::CRelation => MAX_ENUM_RELATION,
    }
}

/// Structures with exactly `n` points (elements, for lattices). Lattices are
/// always enumerated up to isomorphism.
pub fn enumerate_domain(d: Domain, n: usize, upto_iso: bool) -> Result<Vec<Instance>, ExplorerError> {
    let max = domain_limit(d, upto_iso);
    if n == 0 || n > max {
        return Err(ExplorerError::SizeOutOfRange {
            what: d.name().to_string(),
            n,
            max,
        });
    }
    Ok(match d {
        Domain::Topology => enumerate_topologies(n, upto_iso)?
            .into_iter()
            .map(Instance::Topology)
            .collect(),
        Domain::OrderedSpace => enumerate_ordered_spaces(n, upto_iso)?
            .into_iter()
            .map(Instance::OrderedSpace)
            .collect(),
        Domain::Lattice => enumerate_lattices(n)?.into_iter().map(Instance::Lattice).collect(),
        Domain::Poset => {
            let ps = if upto_iso {
                enumerate_posets_upto_iso(n)?
            } else {
                enumerate_posets(n)?
            };
            ps.into_iter().map(Instance::Poset).collect()
        }
        Domain::CRelation => enumerate_relations(n, upto_iso)
            .into_iter()
            .map(Instance::Relation)
            .collect(),
    })
}

// ---------------------------------------------------------------------------
// Registry

#[derive(Clone, Copy)]
enum Check {
    Topology(fn(&FinTopology) -> ClaimReport),
    OrderedSpace(fn(&OrderedSpace) -> ClaimReport),
    Lattice(fn(&FinLattice) -> ClaimReport),
    Poset(fn(&FinPoset) -> ClaimReport),
    Relation(fn(&CRelation) -> ClaimReport),
}

impl Check {
    fn domain(self) -> Domain {
        match self {
            Check::Topology(_) => Domain::Topology,
            Check::OrderedSpace(_) => Domain::OrderedSpace,
            Check::Lattice(_) => Domain::Lattice,
            Check::Poset(_) => Domain::Poset,
            Check::Relation(_) => Domain::CRelation,
        }
    }

    fn run(self, i: &Instance) -> ClaimReport {
        match (self, i) {
            (Check::Topology(f), Instance::Topology(t)) => f(t),
            (Check::OrderedSpace(f), Instance::OrderedSpace(s)) => f(s),
            (Check::Lattice(f), Instance::Lattice(l)) => f(l),
            (Check::Poset(f), Instance::Poset(p)) => f(p),
            (Check::Relation(f), Instance::Relation(r)) => f(r),
            _ => unreachable!("instances come from the check's own domain"),
        }
    }
}

/// An auditable statement: a claim checked on every structure of one size.
pub struct Theorem {
    pub id: &'static str,
    pub claim: &'static str,
    /// Largest size the audit accepts.
    pub max_size: usize,
    check: Check,
    /// Whole-domain checks run once after the per-instance pass.
    global: Option<fn(usize, bool) -> ClaimReport>,
}

impl Theorem {
    pub fn domain(&self) -> Domain {
        self.check.domain()
    }
}

fn theorem(id: &'static str, claim: &'static str, max_size: usize, check: Check) -> Theorem {
    Theorem {
        id,
        claim,
        max_size,
        check,
        global: None,
    }
}

fn only(r: ClaimReport, claim: &str) -> ClaimReport {
    ClaimReport {
        claims: r.claims.into_iter().filter(|(k, _)| *k == claim).collect(),
    }
}

pub fn registry() -> &'static [Theorem] {
    static REGISTRY: OnceLock<Vec<Theorem>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        use Check::*;
        vec![
            Theorem {
                global: Some(roundtrip_global),
                ..theorem(
                    "T3.3-roundtrip",
                    "a finite topology is recovered from its interior relation, and a C-quasi-order from its topology",
                    5,
                    Topology(check_roundtrip),
                )
            },
            theorem(
                "T3.3-closure",
                "closure maps rounded sets isomorphically onto closed sets; rho A is the least lower set with closure A",
                MAX_ENUM_RELATION,
                Relation(check_closure),
            ),
            theorem(
                "T3.3-irreducible",
                "irreducible closed sets are the closures of directed sets, and point closures when T0",
                5,
                Topology(check_irreducible),
            ),
            theorem(
                "T3.3-scott",
                "a T0 topology is finer than the Scott topology of its specialization order",
                5,
                Topology(check_scott),
            ),
            theorem(
                "routes",
                "pointwise web, wide-web and C-space tests agree with the lattice laws, and all hold",
                5,
                Topology(check_routes),
            ),
            theorem(
                "T5.3",
                "the upper space of a patch is the original space; the weak patch is a fan space",
                5,
                Topology(audit_patch_of),
            ),
            theorem(
                "P5.5",
                "the coarsest quasi-uniformity induces the space, its weak lower and weak patch topologies, and its kernel is the specialization order",
                4,
                Topology(uniformity::audit_space),
            ),
            theorem("T10.3", "weight, cotopology weight, weak patch weight, strong patch density and rho-cofinality coincide", 5, Topology(check_metrics)),
            theorem("P10.1", "five descriptions of a core basis agree on every subset", 5, Topology(check_bases)),
            theorem(
                "P9.1",
                "continuous maps into Scott lattices extend uniquely along the closed-set embedding",
                3,
                Topology(check_hoare),
            ),
            theorem(
                "completion-sober",
                "the rounded-ideal completion of a T0 space's interior relation is its specialization poset",
                5,
                Topology(check_completion_sober),
            ),
            theorem(
                "L4.1-2",
                "a semi-qospace is C-stable iff it is up-stable with a C-space as upper space",
                4,
                OrderedSpace(|s| only(audit_ordered_space(s), CLAIM_C_STABLE_UPPER)),
            ),
            theorem(
                "L4.1-3",
                "a semi-qospace is C-stable iff it is upper regular, locally filtered and d-stable",
                4,
                OrderedSpace(|s| only(audit_ordered_space(s), CLAIM_C_STABLE_SPLIT)),
            ),
            theorem(
                "L6.1-1",
                "web-ordered spaces are vee-stable",
                4,
                OrderedSpace(|s| only(audit_ordered_space(s), CLAIM_WEB_VEE)),
            ),
            theorem(
                "L6.1-3",
                "wedge-stable iff the interior columns are ideals",
                4,
                OrderedSpace(|s| only(audit_ordered_space(s), CLAIM_WEDGE_IDEALS)),
            ),
            theorem(
                "L6.1-4",
                "diamond-stable iff vee-stable and wedge-stable",
                4,
                OrderedSpace(|s| only(audit_ordered_space(s), CLAIM_DIAMOND_SPLIT)),
            ),
            theorem(
                "domain-pospaces",
                "the characterizations of continuous-domain pospaces agree",
                4,
                OrderedSpace(|s| only(audit_ordered_space(s), CLAIM_DOMAIN_POSPACE)),
            ),
            theorem(
                "semilattices",
                "the semilattice conditions on hyperconvex spaces agree",
                4,
                OrderedSpace(|s| only(audit_ordered_space(s), CLAIM_SEMILATTICE)),
            ),
            theorem(
                "L1.1",
                "finite frames are weakly atomic and spatial; frames that are coframes are superalgebraic",
                7,
                Lattice(check_frames),
            ),
            theorem(
                "E1.1",
                "a distributive lattice is a frame iff its weak upper space is a web space",
                7,
                Lattice(check_weak_upper),
            ),
            theorem("laws", "the distributivity checkers agree with each other and with the literal law", 6, Lattice(check_laws)),
            theorem("way-below", "way-below on a finite poset is the order", 6, Poset(check_way_below)),
            theorem(
                "based-domains",
                "the whole poset is its only basis, and the based domain it generates is the poset again",
                5,
                Poset(check_based_domains),
            ),
            theorem(
                "C9.4",
                "the convex powerdomain built from way-below equals the one built from the order",
                4,
                Poset(check_plotkin),
            ),
            theorem(
                "rounded-ideals",
                "rounded ideals are the columns, ordered like the lower quasi-order, forming a domain",
                MAX_ENUM_RELATION,
                Relation(check_rounded_ideals),
            ),
            theorem(
                "L9.2",
                "the finite-subset relation is a C-quasi-order, and separated over C-orders",
                MAX_ENUM_RELATION,
                Relation(check_rho_bar),
            ),
            theorem(
                "T9.3",
                "free C-semilattices and rounded-ideal completions have unique lifts, and the triangle identities hold",
                3,
                Relation(check_adjunctions),
            ),
        ]
    })
}

pub fn lookup(id: &str) -> Result<&'static Theorem, ExplorerError> {
    registry()
        .iter()
        .find(|t| t.id == id)
        .ok_or_else(|| ExplorerError::UnknownTheorem(id.to_string()))
}

// --- topology checks

const CLAIM_S_RHO_S: &str = "topology-from-interior-relation";
const CLAIM_RHO_O_RHO: &str = "interior-relation-of-generated-topology";
const CLAIM_BIJECTION: &str = "c-quasi-orders-biject-with-topologies";

fn check_roundtrip(t: &FinTopology) -> ClaimReport {
    let mut r = ClaimReport::default();
    let what = || format!("{:?}", t.opens());
    match CRelation::certify(t.carrier(), &interior_relation(t)) {
        Ok(rho) => {
            let o = topology_from_relation(&rho);
            r.record(CLAIM_S_RHO_S, o.opens() == t.opens(), what);
            let back =
                &interior_relation(&o) == rho.rel() && specialization_order(&o).rel() == rho.lower_quasiorder().rel();
            r.record(CLAIM_RHO_O_RHO, back, what);
        }
        Err(e) => r.record(CLAIM_S_RHO_S, false, || e.detail),
    }
    r
}

fn relation_roundtrip(rho: &CRelation) -> bool {
    let o = topology_from_relation(rho);
    &interior_relation(&o) == rho.rel() && specialization_order(&o).rel() == rho.lower_quasiorder().rel()
}

fn roundtrip_global(n: usize, upto_iso: bool) -> ClaimReport {
    let mut r = ClaimReport::default();
    if n > MAX_ENUM_RELATION {
        return r;
    }
    let rels = enumerate_relations(n, upto_iso);
    for rho in &rels {
        r.record(CLAIM_RHO_O_RHO, relation_roundtrip(rho), || format!("{:?}", rho.rel()));
    }
    let tops = enumerate_topologies(n, upto_iso).expect("bounded").len();
    r.record(CLAIM_BIJECTION, rels.len() == tops, || {
        format!("{} C-quasi-orders, {tops} topologies", rels.len())
    });
    r
}

const CLAIM_IRREDUCIBLE: &str = "irreducible-iff-closure-of-directed";
const CLAIM_SOBER: &str = "t0-irreducible-is-point-closure";

fn check_irreducible(t: &FinTopology) -> ClaimReport {
    let mut r = ClaimReport::default();
    let q = specialization_order(t);
    let closed = t.closed_sets();
    for a in closed.iter().filter(|a| !a.is_empty()) {
        let reducible = closed
            .iter()
            .any(|b| b != a && b.is_subset(a) && closed.iter().any(|c| c != a && c.is_subset(a) && (b | c) == a));
        let directed_closure = a.subsets().any(|d| q.is_directed(d) && t.closure(d) == a);
        r.record(CLAIM_IRREDUCIBLE, !reducible == directed_closure, || {
            format!("{} in {:?}", t.carrier().render(a), t.opens())
        });
        if q.is_partial_order() && !reducible {
            let points = (0..t.n())
                .filter(|&x| t.closure(PointSet::from_indices([x])) == a)
                .count();
            r.record(CLAIM_SOBER, points == 1, || {
                format!("{} in {:?}", t.carrier().render(a), t.opens())
            });
        }
    }
    r
}

const CLAIM_SCOTT_FINER: &str = "finer-than-scott";
const CLAIM_SCOTT_UPPER: &str = "finite-scott-is-upper-sets";

fn check_scott(t: &FinTopology) -> ClaimReport {
    let mut r = ClaimReport::default();
    let q = specialization_order(t);
    if let Ok(p) = FinPoset::new(q.clone()) {
        let sigma = generalized_scott(&IdealExtension::all_ideals(p));
        let what = || format!("{:?}", t.opens());
        r.record(CLAIM_SCOTT_FINER, sigma.opens().iter().all(|u| t.is_open(u)), what);
        r.record(CLAIM_SCOTT_UPPER, sigma.opens() == &q.upper_sets(), what);
    }
    r
}

const CLAIM_ROUTES: &str = "routes-agree";
const CLAIM_COLLAPSE: &str = "finite-spaces-are-a-spaces";

fn check_routes(t: &FinTopology) -> ClaimReport {
    let mut r = ClaimReport::default();
    let p = space_profile(t);
    let what = || format!("{:?}", t.opens());
    let agree = p.route_agreement.values().all(|v| v.iter().all(|&b| b == v[0]));
    let lattice_routes = ["web", "wide_web", "c_space"]
        .iter()
        .all(|k| p.route_agreement[k].len() > 1);
    r.record(CLAIM_ROUTES, agree && lattice_routes, what);
    r.record(
        CLAIM_COLLAPSE,
        p.web && p.wide_web && p.c_space && p.b_space && p.a_space,
        what,
    );
    r
}

const CLAIM_METRICS: &str = "weight-density-cofinality-chain";

fn check_metrics(t: &FinTopology) -> ClaimReport {
    let mut r = ClaimReport::default();
    let ok = match metrics(t) {
        Ok(m) => [m.weight_sc, m.weight_s_upsilon, m.density_s_alpha, m.rho_cofinality]
            .iter()
            .all(|&v| v == m.weight_s),
        Err(_) => false,
    };
    r.record(CLAIM_METRICS, ok, || format!("{:?}", t.opens()));
    r
}

const CLAIM_BASES: &str = "core-basis-descriptions-agree";

fn check_bases(t: &FinTopology) -> ClaimReport {
    let mut r = ClaimReport::default();
    for b in PointSet::full(t.n()).subsets() {
        let p = basis_profile(t, b);
        let v = [
            p.rho_dense,
            p.rho_cofinal,
            p.core_basis,
            p.skula_dense,
            p.closures_join_dense,
        ];
        r.record(CLAIM_BASES, v.iter().all(|&x| x == v[0]), || {
            format!("{} in {:?}: {v:?}", t.carrier().render(b), t.opens())
        });
    }
    r
}

fn small_lattices() -> &'static [FinLattice] {
    static L: OnceLock<Vec<FinLattice>> = OnceLock::new();
    L.get_or_init(|| (1..=4).flat_map(|m| enumerate_lattices(m).expect("bounded")).collect())
}

fn check_hoare(t: &FinTopology) -> ClaimReport {
    let mut r = ClaimReport::default();
    audit_hoare(&mut r, t, small_lattices());
    r
}

const CLAIM_COMPLETION_SOBER: &str = "completion-is-specialization-poset";

fn check_completion_sober(t: &FinTopology) -> ClaimReport {
    let mut r = ClaimReport::default();
    if specialization_order(t).is_partial_order() {
        r.record(CLAIM_COMPLETION_SOBER, completion_matches_specialization(t), || {
            format!("{:?}", t.opens())
        });
    }
    r
}

// --- lattice and poset checks

const CLAIM_FRAME_SPATIAL: &str = "frame-weakly-atomic-and-spatial";
const CLAIM_SUPERALGEBRAIC: &str = "frame-and-coframe-superalgebraic";

fn lattice_text(l: &FinLattice) -> String {
    Structure::of_order(l.poset().qoset())
        .to_text()
        .trim_end()
        .replace('\n', "; ")
}

fn check_frames(l: &FinLattice) -> ClaimReport {
    let mut r = ClaimReport::default();
    let p = law_profile(l);
    if p.frame {
        r.record(CLAIM_FRAME_SPATIAL, p.weakly_atomic && p.spatial, || lattice_text(l));
    }
    if p.frame && p.coframe {
        r.record(CLAIM_SUPERALGEBRAIC, p.superalgebraic, || lattice_text(l));
    }
    r
}

const CLAIM_WEAK_UPPER: &str = "frame-iff-weak-upper-web";

fn check_weak_upper(l: &FinLattice) -> ClaimReport {
    let mut r = ClaimReport::default();
    if l.is_distributive() {
        let frame = law_profile(l).frame;
        r.record(CLAIM_WEAK_UPPER, frame == is_web(&weak_upper_space(l)), || {
            lattice_text(l)
        });
    }
    r
}

const CLAIM_LAWS: &str = "distributivity-checkers-agree";

fn check_laws(l: &FinLattice) -> ClaimReport {
    let mut r = ClaimReport::default();
    let p = law_profile(l);
    let literal = literal_complete_distributivity(l).is_none_or(|v| v == p.completely_distributive);
    r.record(CLAIM_LAWS, literal && p.frame == l.is_distributive(), || {
        lattice_text(l)
    });
    r
}

const CLAIM_WAY_BELOW: &str = "way-below-is-order";

fn check_way_below(p: &FinPoset) -> ClaimReport {
    let mut r = ClaimReport::default();
    r.record(CLAIM_WAY_BELOW, &way_below(p) == p.rel(), || format!("{:?}", p.rel()));
    r
}

const CLAIM_ONLY_BASIS: &str = "whole-poset-is-only-basis";
const CLAIM_BASED_ROUNDTRIP: &str = "based-domain-roundtrip";

fn check_based_domains(p: &FinPoset) -> ClaimReport {
    let mut r = ClaimReport::default();
    let full = PointSet::full(p.n());
    for b in full.subsets() {
        r.record(CLAIM_ONLY_BASIS, poset_basis_check(p, b).is_ok() == (b == full), || {
            format!("{} in {:?}", p.carrier().render(b), p.rel())
        });
    }
    r.record(CLAIM_BASED_ROUNDTRIP, based_domain_roundtrip(p, full).is_ok(), || {
        format!("{:?}", p.rel())
    });
    r
}

fn check_plotkin(p: &FinPoset) -> ClaimReport {
    let mut r = ClaimReport::default();
    let same = match (plotkin(p), plotkin_from_order(p)) {
        (Ok(a), Ok(b)) => a.output() == b.output(),
        _ => false,
    };
    r.record(CLAIM_PLOTKIN_DEGENERACY, same, || format!("{:?}", p.rel()));
    r
}

// --- relation checks

const CLAIM_CLOSURE_ISO: &str = "closure-rounded-sets-isomorphism";
const CLAIM_LEAST_LOWER: &str = "least-lower-set-with-closure";

fn check_closure(rho: &CRelation) -> ClaimReport {
    let mut r = ClaimReport::default();
    let t = topology_from_relation(rho);
    let q = specialization_order(&t);
    let what = || format!("{:?}", rho.rel());
    let rounded = rounded_sets(rho);
    let closed = t.closed_sets();
    let mut image: Vec<PointSet> = rounded.iter().map(|y| t.closure(y)).collect();
    let monotone = rounded.iter().all(|a| {
        rounded
            .iter()
            .all(|b| a.is_subset(b) == t.closure(a).is_subset(t.closure(b)))
    });
    image.sort();
    image.dedup();
    r.record(
        CLAIM_CLOSURE_ISO,
        monotone && image.len() == rounded.len() && image == closed.members(),
        what,
    );
    let lowers = q.lower_sets();
    for a in closed.iter() {
        let ok = match least_lower_set_with_closure(&t, a) {
            Ok(l) => {
                q.is_lower(l)
                    && t.closure(l) == a
                    && lowers.iter().filter(|&d| t.closure(d) == a).all(|d| l.is_subset(d))
            }
            Err(_) => false,
        };
        r.record(CLAIM_LEAST_LOWER, ok, || {
            format!("{} for {:?}", t.carrier().render(a), rho.rel())
        });
    }
    r
}

const CLAIM_COLUMNS: &str = "rounded-ideals-are-columns";

fn check_rounded_ideals(rho: &CRelation) -> ClaimReport {
    let mut r = ClaimReport::default();
    let done = rounded_ideal_completion(rho);
    let lower = rho.lower_quasiorder();
    let n = rho.n();
    let ordered =
        (0..n).all(|y| (0..n).all(|z| lower.leq(y, z) == done.poset.leq(done.embedding[y], done.embedding[z])));
    let mut columns: Vec<PointSet> = (0..n).map(|y| rho.below(y)).collect();
    columns.sort();
    columns.dedup();
    let domain = &way_below(&done.poset) == done.poset.rel();
    r.record(CLAIM_COLUMNS, ordered && columns.len() == done.n() && domain, || {
        format!("{:?}", rho.rel())
    });
    r
}

fn check_rho_bar(rho: &CRelation) -> ClaimReport {
    let mut r = ClaimReport::default();
    match rho_bar(rho) {
        Ok(p) => {
            r.record(CLAIM_RHO_BAR, true, String::new);
            if rho.is_c_order() {
                r.record(CLAIM_RHO_BAR_SEPARATED, p.rho_bar.is_c_order(), || {
                    format!("{:?}", rho.rel())
                });
            }
        }
        Err(e) => r.record(CLAIM_RHO_BAR, false, || format!("{e} for {:?}", rho.rel())),
    }
    r
}

fn targets() -> &'static (Vec<CSemilattice>, Vec<DcpoSemilattice>) {
    static T: OnceLock<(Vec<CSemilattice>, Vec<DcpoSemilattice>)> = OnceLock::new();
    T.get_or_init(|| {
        (
            (1..=3).flat_map(enumerate_c_semilattices).collect(),
            (1..=3).flat_map(enumerate_dcpo_semilattices).collect(),
        )
    })
}

fn check_adjunctions(rho: &CRelation) -> ClaimReport {
    let mut r = ClaimReport::default();
    let (cs, dcpos) = targets();
    audit_free(&mut r, rho, cs);
    // the finite-subset relation itself is L9.2's business
    r.claims
        .retain(|k, _| *k != CLAIM_RHO_BAR && *k != CLAIM_RHO_BAR_SEPARATED);
    for op in enumerate_semilattice_ops(rho.n()) {
        if let Ok(s) = CSemilattice::new(rho.clone(), op) {
            audit_ideal_lift(&mut r, &s, dcpos);
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Audit driver

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditSpec {
    pub theorem_id: String,
    /// Structures with exactly this many points are audited.
    pub size: usize,
    pub upto_iso: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub theorem_id: &'static str,
    pub claim: &'static str,
    pub domain: Domain,
    pub size: usize,
    pub upto_iso: bool,
    pub instances: usize,
    /// Instances actually checked; less than `instances` only after cancellation.
    pub checked: usize,
    pub complete: bool,
    pub violations: usize,
    pub claims: ClaimReport,
    pub wall_ms: u128,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.complete && self.violations == 0
    }

    /// 0 when clean, 1 on a violation or an interrupted run.
    pub fn exit_code(&self) -> i32 {
        if self.is_clean() {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let iso = if self.upto_iso { "up to isomorphism" } else { "labeled" };
        let mut out = format!("audit {}: {}\n", self.theorem_id, self.claim);
        out += &format!("domain: {} of size {}, {iso}\n", self.domain.name(), self.size);
        out += &format!("instances: {}", self.instances);
        if !self.complete {
            out += &format!(" (interrupted after {}; report incomplete)", self.checked);
        }
        out += "\n";
        for (name, tally) in &self.claims.claims {
            out += &format!(
                "  {name}: {} checks, {} violations\n",
                tally.instances,
                tally.violations.len()
            );
            for v in tally.violations.iter().take(5) {
                out += &format!("    {v}\n");
            }
            if tally.violations.len() > 5 {
                out += &format!("    ... {} more\n", tally.violations.len() - 5);
            }
        }
        out += &format!("violations: {}\nwall time: {} ms\n", self.violations, self.wall_ms);
        out
    }
}

const CLAIM_NO_PANIC: &str = "checks-complete-without-internal-assertion";

fn panic_text(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".to_string()
    }
}

/// A failed internal assertion (routes disagreeing, a broken chain) counts as a violation.
fn guarded(check: Check, i: &Instance) -> ClaimReport {
    match catch_unwind(AssertUnwindSafe(|| check.run(i))) {
        Ok(r) => r,
        Err(p) => {
            let mut r = ClaimReport::default();
            let msg = panic_text(p);
            r.record(CLAIM_NO_PANIC, false, || format!("{msg} on {}", i.describe()));
            r
        }
    }
}

/// Runs the registered audit over every structure of the requested size.
/// Per-instance results are merged in enumeration order, so the report does
/// not depend on the number of worker threads.
pub fn run_audit(spec: &AuditSpec) -> Result<AuditReport, ExplorerError> {
    let th = lookup(&spec.theorem_id)?;
    let max = th.max_size.min(domain_limit(th.domain(), spec.upto_iso));
    if spec.size == 0 || spec.size > max {
        return Err(ExplorerError::SizeOutOfRange {
            what: th.id.to_string(),
            n: spec.size,
            max,
        });
    }
    let start = Instant::now();
    let items = enumerate_domain(th.domain(), spec.size, spec.upto_iso)?;
    let results: Vec<Option<ClaimReport>> = items
        .par_iter()
        .map(|i| if cancelled() { None } else { Some(guarded(th.check, i)) })
        .collect();
    let checked = results.iter().filter(|r| r.is_some()).count();
    let mut claims = results
        .into_iter()
        .flatten()
        .fold(ClaimReport::default(), ClaimReport::merge);
    let mut complete = checked == items.len();
    if let Some(g) = th.global {
        if complete && !cancelled() {
            claims = claims.merge(g(spec.size, spec.upto_iso));
        } else {
            complete = false;
        }
    }
    Ok(AuditReport {
        theorem_id: th.id,
        claim: th.claim,
        domain: th.domain(),
        size: spec.size,
        upto_iso: spec.upto_iso || th.domain() == Domain::Lattice,
        instances: items.len(),
        checked,
        complete,
        violations: claims.violation_count(),
        claims,
        wall_ms: start.elapsed().as_millis(),
    })
}

// ---------------------------------------------------------------------------
// Witness search

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    Topology,
    Poset,
    OrderedSpace,
    Lattice,
}

impl StructureKind {
    pub fn name(self) -> &'static str {
        match self {
            StructureKind::Topology => "topology",
            StructureKind::Poset => "poset",
            StructureKind::OrderedSpace => "ordered_space",
            StructureKind::Lattice => "lattice",
        }
    }

    fn domain(self) -> Domain {
        match self {
            StructureKind::Topology => Domain::Topology,
            StructureKind::Poset => Domain::Poset,
            StructureKind::OrderedSpace => Domain::OrderedSpace,
            StructureKind::Lattice => Domain::Lattice,
        }
    }
}

impl std::str::FromStr for StructureKind {
    type Err = ExplorerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "topology" => StructureKind::Topology,
            "poset" => StructureKind::Poset,
            "ordered_space" => StructureKind::OrderedSpace,
            "lattice" => StructureKind::Lattice,
            _ => return Err(ExplorerError::UnknownKind(s.to_string())),
        })
    }
}

const TOPOLOGY_FLAGS: &[&str] = &[
    "t0",
    "web",
    "wide_web",
    "c_space",
    "locally_strongly_connected",
    "has_dual_base",
    "b_space",
    "a_space",
    "sober",
    "d_space",
    "supercompact_space",
];

const LATTICE_FLAGS: &[&str] = &[
    "frame",
    "coframe",
    "wide_frame",
    "wide_coframe",
    "completely_distributive",
    "spatial",
    "weakly_atomic",
    "superalgebraic",
    "meet_continuous",
    "continuous",
    "distributive",
];

const POSET_FLAGS: &[&str] = &[
    "chain",
    "antichain",
    "has_top",
    "has_bottom",
    "join_semilattice",
    "meet_semilattice",
    "lattice",
    "distributive",
];

/// Predicate names accepted by queries of each kind.
pub fn flag_names(kind: StructureKind) -> &'static [&'static str] {
    match kind {
        StructureKind::Topology => TOPOLOGY_FLAGS,
        StructureKind::Poset => POSET_FLAGS,
        StructureKind::OrderedSpace => OrderedSpaceProfile::FLAG_NAMES,
        StructureKind::Lattice => LATTICE_FLAGS,
    }
}

fn bool_fields(v: Value, names: &[&'static str]) -> BTreeMap<&'static str, bool> {
    names
        .iter()
        .filter_map(|&k| v.get(k).and_then(Value::as_bool).map(|b| (k, b)))
        .collect()
}

fn poset_flags(p: &FinPoset) -> BTreeMap<&'static str, bool> {
    let n = p.n();
    let full = PointSet::full(n);
    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    let joins = pairs().all(|(x, y)| p.join(PointSet::from_indices([x, y])).is_some());
    let meets = pairs().all(|(x, y)| p.meet(PointSet::from_indices([x, y])).is_some());
    let lattice = joins && meets;
    let distributive = lattice
        && FinLattice::from_poset(p.clone())
            .map(|l| l.is_distributive())
            .unwrap_or(false);
    BTreeMap::from([
        ("chain", pairs().all(|(x, y)| p.leq(x, y) || p.leq(y, x))),
        ("antichain", pairs().all(|(x, y)| x == y || !p.leq(x, y))),
        ("has_top", !p.greatest_in(full).is_empty()),
        ("has_bottom", !p.least_in(full).is_empty()),
        ("join_semilattice", joins),
        ("meet_semilattice", meets),
        ("lattice", lattice),
        ("distributive", distributive),
    ])
}

/// Every predicate of the kind, evaluated on one structure.
pub fn instance_flags(i: &Instance) -> BTreeMap<&'static str, bool> {
    match i {
        Instance::Topology(t) => bool_fields(
            serde_json::to_value(space_profile(t)).expect("plain data"),
            TOPOLOGY_FLAGS,
        ),
        Instance::Lattice(l) => {
            let mut m = bool_fields(serde_json::to_value(law_profile(l)).expect("plain data"), LATTICE_FLAGS);
            m.insert("distributive", l.is_distributive());
            m
        }
        Instance::Poset(p) => poset_flags(p),
        Instance::OrderedSpace(s) => {
            let p = ordered_space_profile(s);
            OrderedSpaceProfile::FLAG_NAMES
                .iter()
                .map(|&k| (k, p.flag(k).expect("listed flag")))
                .collect()
        }
        Instance::Relation(_) => BTreeMap::new(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessQuery {
    pub kind: StructureKind,
    pub required: Vec<String>,
    pub forbidden: Vec<String>,
    pub size_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeTally {
    pub size: usize,
    pub candidates: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub size: usize,
    /// Position among the canonical representatives of this size.
    pub index: usize,
    pub structure: String,
    pub flags: BTreeMap<String, bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub kind: StructureKind,
    pub required: Vec<String>,
    pub forbidden: Vec<String>,
    pub size_bound: usize,
    pub witness: Option<Witness>,
    /// Sizes searched and their candidate counts; with no witness and a
    /// complete run this is the exhaustion certificate.
    pub examined: Vec<SizeTally>,
    pub complete: bool,
}

impl SearchReport {
    pub fn is_exhausted(&self) -> bool {
        self.complete && self.witness.is_none()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "search {}: require [{}] forbid [{}] up to size {}\n",
            self.kind.name(),
            self.required.join(","),
            self.forbidden.join(","),
            self.size_bound
        );
        for t in &self.examined {
            out += &format!("  size {}: {} candidates\n", t.size, t.candidates);
        }
        match &self.witness {
            Some(w) => {
                out += &format!("witness of size {} (candidate {}):\n", w.size, w.index);
                out += &w.structure;
                let flags: Vec<String> = w.flags.iter().map(|(k, v)| format!("{k}={v}")).collect();
                out += &format!("flags: {}\n", flags.join(" "));
            }
            None if self.complete => out += "exhausted: no structure satisfies the query up to this size\n",
            None => out += "interrupted: search incomplete\n",
        }
        out
    }
}

/// Smallest structure (size ascending, then canonical order) with every
/// required predicate true and every forbidden one false.
pub fn witness_search(q: &WitnessQuery) -> Result<SearchReport, ExplorerError> {
    let known = flag_names(q.kind);
    for name in q.required.iter().chain(&q.forbidden) {
        if !known.contains(&name.as_str()) {
            return Err(ExplorerError::UnknownFlag {
                name: name.clone(),
                kind: q.kind.name(),
                known: known.join(","),
            });
        }
    }
    let max = domain_limit(q.kind.domain(), true);
    if q.size_bound == 0 || q.size_bound > max {
        return Err(ExplorerError::SizeOutOfRange {
            what: q.kind.name().to_string(),
            n: q.size_bound,
            max,
        });
    }
    let mut report = SearchReport {
        kind: q.kind,
        required: q.required.clone(),
        forbidden: q.forbidden.clone(),
        size_bound: q.size_bound,
        witness: None,
        examined: Vec::new(),
        complete: true,
    };
    for n in 1..=q.size_bound {
        let candidates = enumerate_domain(q.kind.domain(), n, true)?;
        let matches = |i: &Instance| {
            let f = instance_flags(i);
            q.required.iter().all(|k| f[k.as_str()]) && q.forbidden.iter().all(|k| !f[k.as_str()])
        };
        let hit = candidates.par_iter().position_first(|i| !cancelled() && matches(i));
        report.examined.push(SizeTally {
            size: n,
            candidates: candidates.len(),
        });
        if cancelled() {
            report.complete = false;
            return Ok(report);
        }
        if let Some(index) = hit {
            let i = &candidates[index];
            let f = instance_flags(i);
            let flags = q
                .required
                .iter()
                .chain(&q.forbidden)
                .map(|k| (k.clone(), f[k.as_str()]))
                .collect();
            report.witness = Some(Witness {
                size: n,
                index,
                structure: i.structure().to_text(),
                flags,
            });
            return Ok(report);
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Gallery

pub const GALLERY: &[&str] = &[
    "sierpinski",
    "chain3",
    "boolean2",
    "boolean3",
    "m3",
    "n5",
    "weak-upper-chain3",
    "broom5",
    "grid3x3-fan",
    "plotkin-chain2",
    "plotkin-antichain2",
];

#[derive(Clone, Debug)]
pub struct GalleryItem {
    pub name: &'static str,
    pub structure: Structure,
    pub profile: Value,
}

impl GalleryItem {
    /// Golden-file form: the structure text, a `---` line, then the profile as pretty JSON.
    pub fn render(&self) -> String {
        let json = serde_json::to_string_pretty(&self.profile).expect("plain data");
        format!("{}---\n{json}\n", self.structure.to_text())
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data")
}

fn label_pairs(c: &Carrier, r: &Relation) -> Vec<String> {
    r.pairs()
        .map(|(x, y)| format!("{}->{}", c.name(x), c.name(y)))
        .collect()
}

fn lattice_item(name: &'static str, l: FinLattice) -> GalleryItem {
    GalleryItem {
        name,
        structure: Structure::of_order(l.poset().qoset()),
        profile: json!({ "law_profile": to_json(&law_profile(&l)), "spectral_profile": to_json(&spectral_profile(&l)) }),
    }
}

fn grid(k: usize) -> FinQoset {
    let names: Vec<String> = (0..k * k).map(|i| format!("{}{}", i / k, i % k)).collect();
    let carrier = Carrier::new(names).expect("distinct labels");
    let rel = Relation::from_fn(k * k, |a, b| a / k <= b / k && a % k <= b % k);
    FinQoset::new(carrier, rel).expect("product order")
}

/// Smallest convex open web (around some point) that is not a sector.
fn web_not_sector(s: &OrderedSpace) -> Option<(usize, PointSet)> {
    let q = s.order();
    let mut opens: Vec<PointSet> = s.topology().opens().iter().filter(|&w| q.is_convex(w)).collect();
    opens.sort_by_key(|w| (w.len(), *w));
    opens.into_iter().find_map(|w| {
        let x = w.iter().find(|&x| is_web_around(q, x, w))?;
        (!is_sector(s, w)).then_some((x, w))
    })
}

fn plotkin_item(name: &'static str, p: FinPoset) -> GalleryItem {
    let out = plotkin(&p).expect("small poset").output();
    let text: Vec<String> = out.to_text().lines().map(str::to_string).collect();
    GalleryItem {
        name,
        structure: Structure::of_order(p.qoset()),
        profile: json!({ "elements": out.elements.len(), "plotkin": text }),
    }
}

fn ordered_flags(p: &OrderedSpaceProfile) -> Value {
    let m: BTreeMap<&str, bool> = ["c1", "c2", "c3", "c4"]
        .iter()
        .map(|&k| (k, p.flag(k).expect("listed")))
        .collect();
    to_json(&m)
}

/// Builds a named example and derives its profile.
pub fn gallery(name: &str) -> Result<GalleryItem, ExplorerError> {
    let name = *GALLERY
        .iter()
        .find(|&&g| g == name)
        .ok_or_else(|| ExplorerError::UnknownGallery(name.to_string()))?;
    Ok(match name {
        "sierpinski" => {
            let s = FinTopology::sierpinski();
            let m = metrics(&s).map_err(|e| StructError::BadLabel(e.to_string()))?;
            GalleryItem {
                name,
                structure: Structure::of_topology(&s),
                profile: json!({
                    "space_profile": to_json(&space_profile(&s)),
                    "metrics": to_json(&m),
                    "interior_relation": label_pairs(s.carrier(), &interior_relation(&s)),
                }),
            }
        }
        "chain3" => lattice_item(name, FinLattice::chain(3)),
        "boolean2" => lattice_item(name, FinLattice::boolean(2)),
        "boolean3" => lattice_item(name, FinLattice::boolean(3)),
        "m3" => lattice_item(name, FinLattice::m3()),
        "n5" => lattice_item(name, FinLattice::n5()),
        "weak-upper-chain3" => {
            let l = FinLattice::chain(3);
            let s = weak_upper_space(&l);
            GalleryItem {
                name,
                structure: Structure::of_topology(&s),
                profile: json!({ "lattice_is_frame": law_profile(&l).frame, "space_profile": to_json(&space_profile(&s)) }),
            }
        }
        "broom5" => {
            // b0 = 0 below the chain b1 < b2 and the side element a, all below the top 1
            let l = FinLattice::bounded(&["b1", "b2", "a"], &[(0, 1)]);
            let discrete = FinTopology::discrete(l.poset().carrier().clone());
            let s = OrderedSpace::new(l.poset().qoset().clone(), discrete)?;
            let p = ordered_space_profile(&s);
            GalleryItem {
                name,
                structure: s.structure(),
                profile: json!({
                    "law_profile": to_json(&law_profile(&l)),
                    "conditions": ordered_flags(&p),
                    "ordered_space_profile": to_json(&p),
                }),
            }
        }
        "grid3x3-fan" => {
            let q = grid(3);
            let s = patch(&FinTopology::alexandroff(&q), CoselectionKind::Upsilon);
            let p = ordered_space_profile(&s);
            let c = s.carrier();
            let web = web_not_sector(&s)
                .map(|(x, w)| json!({ "around": c.name(x), "set": c.render(w), "is_fan": is_fan(s.order(), w) }));
            let discrete = s.topology().opens().len() == 1 << s.n();
            let sectors_are_fans = s
                .topology()
                .opens()
                .iter()
                .all(|w| !is_sector(&s, w) || is_fan(s.order(), w));
            GalleryItem {
                name,
                structure: s.structure(),
                profile: json!({
                    "weak_patch_is_discrete": discrete,
                    "open_web_not_sector": web,
                    "every_sector_is_a_fan": sectors_are_fans,
                    "conditions": ordered_flags(&p),
                    "ordered_space_profile": to_json(&p),
                }),
            }
        }
        "plotkin-chain2" => plotkin_item(name, FinPoset::new(FinQoset::chain(2))?),
        "plotkin-antichain2" => plotkin_item(name, FinPoset::new(FinQoset::discrete(Carrier::standard(2)))?),
        _ => unreachable!("listed in GALLERY"),
    })
}

/// Where the committed golden files live.
pub fn default_golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn golden_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{name}.golden"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoldenStatus {
    Match,
    Missing,
    /// First differing line (1-based) with the expected and actual text.
    Differs {
        line: usize,
        expected: String,
        actual: String,
    },
}

pub fn check_golden(item: &GalleryItem, dir: &Path) -> Result<GoldenStatus, ExplorerError> {
    let path = golden_path(dir, item.name);
    let expected = match std::fs::read_to_string(&path) {
        Ok(s) => s,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(GoldenStatus::Missing),
        Err(source) => return Err(ExplorerError::Io { path, source }),
    };
    let actual = item.render();
    if expected == actual {
        return Ok(GoldenStatus::Match);
    }
    let mut e = expected.lines();
    let mut a = actual.lines();
    let mut line = 1;
    loop {
        match (e.next(), a.next()) {
            (Some(x), Some(y)) if x == y => line += 1,
            (x, y) => {
                return Ok(GoldenStatus::Differs {
                    line,
                    expected: x.unwrap_or("<end of file>").to_string(),
                    actual: y.unwrap_or("<end of file>").to_string(),
                })
            }
        }
    }
}

pub fn bless(item: &GalleryItem, dir: &Path) -> Result<PathBuf, ExplorerError> {
    let path = golden_path(dir, item.name);
    std::fs::create_dir_all(dir).map_err(|source| ExplorerError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    std::fs::write(&path, item.render()).map_err(|source| ExplorerError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn audit(id: &str, size: usize, upto_iso: bool) -> AuditReport {
        run_audit(&AuditSpec {
            theorem_id: id.to_string(),
            size,
            upto_iso,
        })
        .unwrap()
    }

    #[test]
    fn registry_keys_are_unique() {
        let mut ids: Vec<&str> = registry().iter().map(|t| t.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), registry().len());
        assert!(matches!(lookup("T0.0"), Err(ExplorerError::UnknownTheorem(_))));
    }

    #[test]
    fn spec_examples() {
        let r = audit("T10.3", 3, false);
        assert_eq!((r.instances, r.violations, r.exit_code()), (29, 0, 0));
        let r = audit("P5.5", 1, false);
        assert_eq!((r.instances, r.violations), (1, 0));
    }

    #[test]
    fn ordered_space_counts() {
        assert_eq!(enumerate_ordered_spaces(2, false).unwrap().len(), 16);
        // 4 topologies up to homeomorphism on 2 points; discrete and indiscrete
        // have the swap as automorphism (3 orders each), the two others are rigid
        assert_eq!(enumerate_ordered_spaces(2, true).unwrap().len(), 3 + 3 + 4);
    }

    #[test]
    fn size_errors() {
        let bad = AuditSpec {
            theorem_id: "T9.3".into(),
            size: 4,
            upto_iso: false,
        };
        assert!(matches!(run_audit(&bad), Err(ExplorerError::SizeOutOfRange { .. })));
    }

    #[test]
    fn flags_cover_names() {
        let t = Instance::Topology(FinTopology::sierpinski());
        assert_eq!(instance_flags(&t).len(), TOPOLOGY_FLAGS.len());
        let l = Instance::Lattice(FinLattice::m3());
        assert_eq!(instance_flags(&l).len(), LATTICE_FLAGS.len());
        let p = Instance::Poset(FinPoset::new(FinQoset::chain(2)).unwrap());
        assert_eq!(instance_flags(&p).len(), POSET_FLAGS.len());
    }

    #[test]
    fn search_basics() {
        let q = WitnessQuery {
            kind: StructureKind::Lattice,
            required: vec![],
            forbidden: vec!["distributive".into()],
            size_bound: 5,
        };
        let r = witness_search(&q).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.size, 5);
        let q = WitnessQuery {
            kind: StructureKind::Poset,
            required: vec!["bogus".into()],
            forbidden: vec![],
            size_bound: 2,
        };
        assert!(matches!(witness_search(&q), Err(ExplorerError::UnknownFlag { .. })));
    }

    #[test]
    fn grid_has_web_that_is_not_sector() {
        let item = gallery("grid3x3-fan").unwrap();
        assert_eq!(item.profile["weak_patch_is_discrete"], true);
        assert_eq!(item.profile["open_web_not_sector"]["set"], "{01 10 11}");
        assert_eq!(item.profile["every_sector_is_a_fan"], true);
    }
}

//! Ordered spaces with independent order and topology: separation and
//! convexity axioms, stability of the interior operator, patch topologies,
//! sectors and fans.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{is_c_space, is_web, product_space, space_profile};
use crate::finstruct::{
    enumerate_qosets, enumerate_topologies, FinQoset, FinTopology, OrderedSpace, PointSet, SetFamily, StructError,
};
use crate::report::ClaimReport;
use crate::speclat::specialization_order;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoselectionKind {
    Upsilon,
    Alpha,
    Sigma,
}

impl CoselectionKind {
    pub const ALL: [CoselectionKind; 3] = [CoselectionKind::Upsilon, CoselectionKind::Alpha, CoselectionKind::Sigma];

    pub fn name(self) -> &'static str {
        match self {
            CoselectionKind::Upsilon => "upsilon",
            CoselectionKind::Alpha => "alpha",
            CoselectionKind::Sigma => "sigma",
        }
    }
}

impl std::str::FromStr for CoselectionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "upsilon" | "weak" => Ok(CoselectionKind::Upsilon),
            "alpha" | "skula" => Ok(CoselectionKind::Alpha),
            "sigma" | "scott" => Ok(CoselectionKind::Sigma),
            other => Err(format!(
                "unknown coselection {other:?} (expected upsilon, alpha or sigma)"
            )),
        }
    }
}

/// Directed subsets of a qoset, all of them.
fn directed_subsets(q: &FinQoset) -> Vec<PointSet> {
    q.carrier().full().subsets().filter(|&d| q.is_directed(d)).collect()
}

/// Scott-open sets: upper sets meeting every directed set that has a least
/// upper bound inside them.
fn scott_opens(q: &FinQoset) -> SetFamily {
    let directed = directed_subsets(q);
    q.upper_sets()
        .iter()
        .filter(|&u| {
            directed.iter().all(|&d| {
                let sups = q.joins(d);
                sups.is_empty() || !sups.meets(u) || d.meets(u)
            })
        })
        .collect()
}

/// A topology on `Q` whose specialization order is `Q`.
pub fn coselection_topology(q: &FinQoset, kind: CoselectionKind) -> FinTopology {
    let n = q.n();
    match kind {
        CoselectionKind::Upsilon => FinTopology::generated_by(
            q.carrier().clone(),
            (0..n).map(|x| q.down(x).complement(n)).collect::<Vec<_>>(),
        ),
        CoselectionKind::Alpha => FinTopology::alexandroff(q),
        CoselectionKind::Sigma => {
            let opens = scott_opens(q);
            // finite directed sets contain their joins, so every upper set qualifies
            assert_eq!(
                opens,
                q.upper_sets(),
                "Scott topology of a finite qoset is not Alexandroff"
            );
            FinTopology::alexandroff(q)
        }
    }
}

/// The subbase `ζ𝒮` of a cotopology chosen for a space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coselection {
    pub kind: CoselectionKind,
    #[serde(skip)]
    pub subbase: SetFamily,
}

impl Coselection {
    pub fn of(s: &FinTopology, kind: CoselectionKind) -> Coselection {
        let dual = specialization_order(s).dual();
        let n = s.n();
        let subbase = match kind {
            CoselectionKind::Upsilon => (0..n).map(|x| dual.down(x).complement(n)).collect(),
            CoselectionKind::Alpha | CoselectionKind::Sigma => coselection_topology(&dual, kind).opens().clone(),
        };
        Coselection { kind, subbase }
    }

    pub fn cotopology(&self, s: &FinTopology) -> FinTopology {
        FinTopology::generated_by(s.carrier().clone(), self.subbase.members().to_vec())
    }
}

/// Open upper sets.
pub fn upper_space(t: &OrderedSpace) -> FinTopology {
    let q = t.order();
    let opens: SetFamily = t.topology().opens().iter().filter(|&o| q.is_upper(o)).collect();
    crate::finstruct::validate_topology(t.carrier(), opens).expect("open upper sets form a topology")
}

/// Open lower sets.
pub fn lower_space(t: &OrderedSpace) -> FinTopology {
    let q = t.order();
    let opens: SetFamily = t.topology().opens().iter().filter(|&o| q.is_lower(o)).collect();
    crate::finstruct::validate_topology(t.carrier(), opens).expect("open lower sets form a topology")
}

/// `(X, ≤_S, S ∨ τ_ζ S)`.
pub fn patch(s: &FinTopology, kind: CoselectionKind) -> OrderedSpace {
    let cos = Coselection::of(s, kind);
    let topology = FinTopology::generated_by(
        s.carrier().clone(),
        s.opens().iter().chain(cos.subbase.iter()).collect::<Vec<_>>(),
    );
    OrderedSpace::new(specialization_order(s), topology).expect("same carrier")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilterFamilies {
    /// Finite unions of principal filters.
    pub vee: SetFamily,
    /// Finite intersections of principal filters.
    pub wedge: SetFamily,
    /// Lattice generated by principal filters, with `∅` and `X`.
    pub diamond: SetFamily,
}

fn close_under(seed: Vec<PointSet>, union: bool, meet: bool) -> SetFamily {
    let mut all = SetFamily::new(seed);
    loop {
        let m = all.members();
        let mut next: Vec<PointSet> = m.to_vec();
        for &a in m {
            for &b in m {
                if union {
                    next.push(a | b);
                }
                if meet {
                    next.push(a & b);
                }
            }
        }
        let next = SetFamily::new(next);
        if next.len() == all.len() {
            return all;
        }
        all = next;
    }
}

pub fn filter_families(q: &FinQoset) -> FilterFamilies {
    let n = q.n();
    let filters: Vec<PointSet> = (0..n).map(|x| q.up(x)).collect();
    let with = |extra: &[PointSet]| filters.iter().copied().chain(extra.iter().copied()).collect::<Vec<_>>();
    FilterFamilies {
        vee: close_under(with(&[PointSet::EMPTY]), true, false),
        wedge: close_under(with(&[q.carrier().full()]), false, true),
        diamond: close_under(with(&[PointSet::EMPTY, q.carrier().full()]), true, true),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ZetaFlags {
    pub upsilon: bool,
    pub alpha: bool,
    pub sigma: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SemilatticeProfile {
    pub semitopological: bool,
    pub topological: bool,
    pub small_semilattices: bool,
    pub compatible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderedSpaceProfile {
    pub lower_semi: bool,
    pub upper_semi: bool,
    pub semi_qospace: bool,
    pub qospace: bool,
    pub pospace: bool,
    pub t2_ordered: bool,
    pub upper_regular: bool,
    pub upper_t3: bool,
    pub locally_convex: bool,
    pub strongly_convex: bool,
    pub hyperconvex: bool,
    pub zeta_convex: ZetaFlags,
    pub up_stable: bool,
    pub web_ordered: bool,
    /// Every point has a base of filtered neighbourhoods (no stability required).
    pub filtered_bases: bool,
    pub locally_filtered: bool,
    pub locally_lower_bounded: bool,
    pub c_stable: bool,
    pub d_stable: bool,
    pub vee_stable: bool,
    pub wedge_stable: bool,
    pub diamond_stable: bool,
    pub sector_space: bool,
    pub fan_space: bool,
    pub mc_ordered: bool,
    pub semitopological: Option<bool>,
    pub topological_semilattice: Option<bool>,
    pub small_semilattices: Option<bool>,
    pub witnesses: BTreeMap<&'static str, String>,
}

impl OrderedSpaceProfile {
    /// Flag by name, as used by witness queries.
    pub fn flag(&self, name: &str) -> Option<bool> {
        Some(match name {
            "lower_semi" => self.lower_semi,
            "upper_semi" => self.upper_semi,
            "semi_qospace" => self.semi_qospace,
            "qospace" => self.qospace,
            "pospace" => self.pospace,
            "t2_ordered" => self.t2_ordered,
            "upper_regular" | "c1" => self.upper_regular,
            "upper_t3" => self.upper_t3,
            "locally_convex" => self.locally_convex,
            "strongly_convex" => self.strongly_convex,
            "hyperconvex" => self.hyperconvex,
            "upsilon_convex" => self.zeta_convex.upsilon,
            "alpha_convex" => self.zeta_convex.alpha,
            "sigma_convex" => self.zeta_convex.sigma,
            "up_stable" | "c3" => self.up_stable,
            "web_ordered" => self.web_ordered,
            "filtered_bases" | "c2" => self.filtered_bases,
            "locally_filtered" => self.locally_filtered,
            "locally_lower_bounded" => self.locally_lower_bounded,
            "c_stable" => self.c_stable,
            "d_stable" | "c4" => self.d_stable,
            "vee_stable" => self.vee_stable,
            "wedge_stable" => self.wedge_stable,
            "diamond_stable" => self.diamond_stable,
            "sector_space" => self.sector_space,
            "fan_space" => self.fan_space,
            "mc_ordered" => self.mc_ordered,
            "semitopological" => self.semitopological.unwrap_or(false),
            "topological_semilattice" => self.topological_semilattice.unwrap_or(false),
            "small_semilattices" => self.small_semilattices.unwrap_or(false),
            _ => return None,
        })
    }

    pub const FLAG_NAMES: &'static [&'static str] = &[
        "lower_semi",
        "upper_semi",
        "semi_qospace",
        "qospace",
        "pospace",
        "t2_ordered",
        "upper_regular",
        "upper_t3",
        "locally_convex",
        "strongly_convex",
        "hyperconvex",
        "upsilon_convex",
        "alpha_convex",
        "sigma_convex",
        "up_stable",
        "web_ordered",
        "filtered_bases",
        "locally_filtered",
        "locally_lower_bounded",
        "c_stable",
        "d_stable",
        "vee_stable",
        "wedge_stable",
        "diamond_stable",
        "sector_space",
        "fan_space",
        "mc_ordered",
        "semitopological",
        "topological_semilattice",
        "small_semilattices",
        "c1",
        "c2",
        "c3",
        "c4",
    ];
}

/// Shared data for the checks on one ordered space.
struct Ctx<'a> {
    t: &'a FinTopology,
    q: &'a FinQoset,
    n: usize,
    upper: FinTopology,
    lower: FinTopology,
}

impl<'a> Ctx<'a> {
    fn new(s: &'a OrderedSpace) -> Self {
        Ctx {
            t: s.topology(),
            q: s.order(),
            n: s.n(),
            upper: upper_space(s),
            lower: lower_space(s),
        }
    }

    fn render(&self, s: PointSet) -> String {
        self.t.carrier().render(s)
    }

    fn name(&self, x: usize) -> &str {
        self.t.carrier().name(x)
    }

    fn full(&self) -> PointSet {
        self.t.full()
    }

    fn int(&self, s: PointSet) -> PointSet {
        self.t.interior(s)
    }

    /// Neighbourhood base at `x`: the least open neighbourhoods containing it.
    fn base(&self, x: usize) -> impl Iterator<Item = PointSet> + '_ {
        (0..self.n).map(|z| self.t.least_nbhd(z)).filter(move |u| u.contains(x))
    }

    fn up_closure(&self, s: PointSet) -> PointSet {
        self.q.up_set(s)
    }
}

type Check = Result<(), String>;

fn flag(witnesses: &mut BTreeMap<&'static str, String>, name: &'static str, r: Check) -> bool {
    match r {
        Ok(()) => true,
        Err(w) => {
            witnesses.insert(name, w);
            false
        }
    }
}

fn lower_semi(c: &Ctx) -> Check {
    match (0..c.n).find(|&x| !c.t.is_closed(c.q.down(x))) {
        None => Ok(()),
        Some(x) => Err(format!("principal ideal of {} is not closed", c.name(x))),
    }
}

fn upper_semi(c: &Ctx) -> Check {
    match (0..c.n).find(|&x| !c.t.is_closed(c.q.up(x))) {
        None => Ok(()),
        Some(x) => Err(format!("principal filter of {} is not closed", c.name(x))),
    }
}

fn qospace(c: &Ctx) -> Check {
    for x in 0..c.n {
        for y in (0..c.n).filter(|&y| !c.q.leq(x, y)) {
            let separated = c
                .base(x)
                .any(|u| c.base(y).any(|v| !c.up_closure(u).meets(c.q.down_set(v))));
            if !separated {
                return Err(format!("{} and {} cannot be separated", c.name(x), c.name(y)));
            }
        }
    }
    Ok(())
}

/// The order is closed in the square of the space.
fn qospace_by_product(c: &Ctx) -> Option<bool> {
    let sq = product_space(c.t, c.t).ok()?;
    let graph = PointSet::from_indices(
        (0..c.n)
            .flat_map(|x| (0..c.n).map(move |y| (x, y)))
            .filter(|&(x, y)| c.q.leq(x, y))
            .map(|(x, y)| x * c.n + y),
    );
    Some(sq.is_closed(graph))
}

fn t2_ordered(c: &Ctx) -> Check {
    for x in 0..c.n {
        for y in (0..c.n).filter(|&y| !c.q.leq(x, y)) {
            let ok = c
                .upper
                .open_nbhds(x)
                .any(|u| c.lower.open_nbhds(y).any(|v| !u.meets(v)));
            if !ok {
                return Err(format!(
                    "no disjoint open upper/lower sets around {} and {}",
                    c.name(x),
                    c.name(y)
                ));
            }
        }
    }
    Ok(())
}

fn upper_regular(c: &Ctx) -> Check {
    let closed_upper: Vec<PointSet> = c.lower.opens().iter().map(|v| v.complement(c.n)).collect();
    for o in c.upper.opens().iter() {
        for x in o.iter() {
            let ok = c
                .upper
                .open_nbhds(x)
                .any(|u| closed_upper.iter().any(|&b| u.is_subset(b) && b.is_subset(o)));
            if !ok {
                return Err(format!(
                    "{} in open upper {} has no closed upper neighbourhood inside",
                    c.name(x),
                    c.render(o)
                ));
            }
        }
    }
    Ok(())
}

fn upper_regular_by_separation(c: &Ctx) -> bool {
    c.upper.opens().iter().all(|o| {
        let a = o.complement(c.n);
        (0..c.n).filter(|&x| !a.contains(x)).all(|x| {
            c.upper
                .open_nbhds(x)
                .any(|u| c.lower.opens().iter().any(|v| a.is_subset(v) && !u.meets(v)))
        })
    })
}

fn is_convex_open_base(c: &Ctx) -> Check {
    let convex: Vec<PointSet> = c.t.opens().iter().filter(|&o| c.q.is_convex(o)).collect();
    for x in 0..c.n {
        for u in c.base(x) {
            if !convex.iter().any(|v| v.contains(x) && v.is_subset(u)) {
                return Err(format!("no convex open set between {} and {}", c.name(x), c.render(u)));
            }
        }
    }
    Ok(())
}

fn generated_equals(c: &Ctx, subbase: impl IntoIterator<Item = PointSet>) -> bool {
    FinTopology::generated_by(c.t.carrier().clone(), subbase.into_iter().collect::<Vec<_>>()).opens() == c.t.opens()
}

fn strongly_convex(c: &Ctx) -> Check {
    if generated_equals(c, c.upper.opens().iter().chain(c.lower.opens().iter())) {
        Ok(())
    } else {
        Err("topology is not generated by its open upper and open lower sets".into())
    }
}

/// Sets `U ∖ ↑F` with `U` open upper and `F` finite are open and form a base.
fn hyperconvex(c: &Ctx) -> Check {
    let mut sets = Vec::new();
    for u in c.upper.opens().iter() {
        // on a finite carrier the sets ↑F are exactly the upper sets
        for f in c.q.upper_sets().iter() {
            sets.push(u - f);
        }
    }
    sets.sort();
    sets.dedup();
    if let Some(s) = sets.iter().find(|&&s| !c.t.is_open(s)) {
        return Err(format!("{} is not open", c.render(*s)));
    }
    for x in 0..c.n {
        for u in c.base(x) {
            if !sets.iter().any(|s| s.contains(x) && s.is_subset(u)) {
                return Err(format!("no set U∖↑F between {} and {}", c.name(x), c.render(u)));
            }
        }
    }
    Ok(())
}

fn zeta_convex(c: &Ctx, kind: CoselectionKind) -> bool {
    patch(&c.upper, kind).topology().opens() == c.t.opens()
}

fn u1(c: &Ctx) -> Check {
    match c.t.opens().iter().find(|&o| !c.t.is_open(c.up_closure(o))) {
        None => Ok(()),
        Some(o) => Err(format!(
            "{} is open but its up-closure {} is not",
            c.render(o),
            c.render(c.up_closure(o))
        )),
    }
}

fn u2(c: &Ctx) -> bool {
    let ups: SetFamily = c.t.opens().iter().map(|o| c.up_closure(o)).collect();
    &ups == c.upper.opens()
}

fn u3(c: &Ctx) -> bool {
    c.q.upper_sets().iter().all(|y| c.t.interior(y) == c.upper.interior(y))
}

/// Largest web around `x` inside `u`, for the given order.
fn max_web(q: &FinQoset, x: usize, u: PointSet) -> PointSet {
    u.iter()
        .filter(|&w| q.leq(w, x))
        .fold(PointSet::EMPTY, |acc, w| acc | (q.up(w) & u))
}

/// `w` is a web around `x`: it contains `x` and each member shares a lower bound with `x` inside `w`.
pub fn is_web_around(q: &FinQoset, x: usize, w: PointSet) -> bool {
    w.contains(x) && max_web(q, x, w) == w
}

/// `w = ↑u ∩ V` for some point `u` and open lower set `V`.
pub fn is_sector(s: &OrderedSpace, w: PointSet) -> bool {
    if w.is_empty() {
        return false;
    }
    let q = s.order();
    let lower = lower_space(s);
    (0..s.n()).any(|u| {
        let up = q.up(u);
        let v = lower
            .opens()
            .iter()
            .filter(|&v| (up & v).is_subset(w))
            .fold(PointSet::EMPTY, |a, b| a | b);
        (up & v) == w
    })
}

/// `w = ↑u ∖ ↑F` for some `u ∈ w` and finite `F`.
pub fn is_fan(q: &FinQoset, w: PointSet) -> bool {
    w.iter().any(|u| {
        let up = q.up(u);
        up - q.up_set(up - w) == w
    })
}

fn web_bases(c: &Ctx) -> Check {
    for x in 0..c.n {
        for u in c.base(x) {
            if !c.int(max_web(c.q, x, u)).contains(x) {
                return Err(format!("{} has no web neighbourhood inside {}", c.name(x), c.render(u)));
            }
        }
    }
    Ok(())
}

fn dashv(q: &FinQoset, v: PointSet, u: PointSet) -> bool {
    let mut seen = vec![u];
    let mut i = 0;
    while i < seen.len() {
        if seen[i].is_empty() {
            return false;
        }
        for y in v.iter() {
            let next = seen[i] & q.down(y);
            if !seen.contains(&next) {
                seen.push(next);
            }
        }
        i += 1;
    }
    true
}

fn lower_bounded_bases(c: &Ctx) -> Check {
    for x in 0..c.n {
        for u in c.base(x) {
            if !c.base(x).any(|v| v.is_subset(u) && dashv(c.q, v, u)) {
                return Err(format!("no neighbourhood V ⊣ {} at {}", c.render(u), c.name(x)));
            }
        }
    }
    Ok(())
}

/// A neighbourhood of `x` contains the least open neighbourhood, so candidates
/// are the supersets of it inside `u`.
fn filtered_bases(c: &Ctx) -> Check {
    for x in 0..c.n {
        let core = c.t.least_nbhd(x);
        for u in c.base(x) {
            if !(u - core).subsets().any(|extra| c.q.is_filtered(core | extra)) {
                return Err(format!(
                    "no filtered neighbourhood of {} inside {}",
                    c.name(x),
                    c.render(u)
                ));
            }
        }
    }
    Ok(())
}

fn c_stable(c: &Ctx) -> Check {
    for o in c.t.opens().iter() {
        let cover = o.iter().fold(PointSet::EMPTY, |a, u| a | c.int(c.q.up(u)));
        if cover != c.up_closure(o) {
            return Err(format!(
                "↑{} differs from the union of interiors of its cores",
                c.render(o)
            ));
        }
    }
    Ok(())
}

fn d_stable(c: &Ctx) -> Check {
    for d in c.full().subsets().filter(|&d| c.q.is_filtered(d)) {
        let hull = c.lower.closure(d);
        let cover = hull.iter().fold(PointSet::EMPTY, |a, u| a | c.int(c.q.up(u)));
        if !c.int(d).is_subset(cover) {
            return Err(format!("interior of filtered {} is not covered", c.render(d)));
        }
    }
    Ok(())
}

fn zeta_stable(c: &Ctx, family: &SetFamily) -> Check {
    for y in family.iter() {
        let cover = y.iter().fold(PointSet::EMPTY, |a, x| a | c.upper.interior(c.q.up(x)));
        if c.upper.interior(y) != cover {
            return Err(format!(
                "interior of {} is not the union of interiors of its cores",
                c.render(y)
            ));
        }
    }
    Ok(())
}

/// `ρy = {x : y ∈ (↑x)°}` is an ideal for every `y`.
fn interior_columns_are_ideals(c: &Ctx) -> bool {
    (0..c.n).all(|y| {
        let col = PointSet::from_indices((0..c.n).filter(|&x| c.upper.interior(c.q.up(x)).contains(y)));
        c.q.is_lower(col) && c.q.is_directed(col)
    })
}

/// Best sector for `u` inside `w`: the largest open lower `V` with `↑u ∩ V ⊆ w`.
fn sector_bases(c: &Ctx) -> Check {
    for x in 0..c.n {
        for w in c.base(x) {
            let ok = (0..c.n).any(|u| {
                let up = c.q.up(u);
                let v = c
                    .lower
                    .opens()
                    .iter()
                    .filter(|&v| (up & v).is_subset(w))
                    .fold(PointSet::EMPTY, |a, b| a | b);
                c.int(up & v).contains(x)
            });
            if !ok {
                return Err(format!(
                    "{} has no sector neighbourhood inside {}",
                    c.name(x),
                    c.render(w)
                ));
            }
        }
    }
    Ok(())
}

/// Best fan for `u` inside `w`: `↑u ∖ ↑(↑u ∖ w)`.
fn fan_bases(c: &Ctx) -> Check {
    for x in 0..c.n {
        for w in c.base(x) {
            let ok = (0..c.n).any(|u| {
                let up = c.q.up(u);
                c.int(up - c.q.up_set(up - w)).contains(x)
            });
            if !ok {
                return Err(format!("{} has no fan neighbourhood inside {}", c.name(x), c.render(w)));
            }
        }
    }
    Ok(())
}

/// Every directed set, as a net indexed by itself, converges to a supremum.
fn mc_ordered(c: &Ctx) -> Check {
    for d in directed_subsets(c.q) {
        let sups = c.q.joins(d);
        let converges = |s: usize| {
            c.t.open_nbhds(s)
                .all(|u| d.iter().any(|d0| (d & c.q.up(d0)).is_subset(u)))
        };
        if !sups.iter().any(converges) {
            return Err(format!("directed {} does not converge to a supremum", c.render(d)));
        }
    }
    Ok(())
}

fn binary_meets(q: &FinQoset) -> Option<Vec<Vec<usize>>> {
    if !q.is_partial_order() {
        return None;
    }
    let n = q.n();
    let mut m = vec![vec![0; n]; n];
    for (x, row) in m.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            let g = q.greatest_in(q.lower_bounds(PointSet::singleton(x).with(y)));
            *cell = g.first()?;
        }
    }
    Some(m)
}

/// `None` when the order is not a meet-semilattice.
pub fn semilattice_profile(s: &OrderedSpace) -> Option<SemilatticeProfile> {
    let (t, q) = (s.topology(), s.order());
    let meet = binary_meets(q)?;
    let n = s.n();
    let image = |a: PointSet, b: PointSet| {
        a.iter()
            .flat_map(|x| b.iter().map(|y| meet[x][y]).collect::<Vec<_>>())
            .fold(PointSet::EMPTY, PointSet::with)
    };
    let semitopological = (0..n).all(|x| {
        t.opens()
            .iter()
            .all(|o| t.is_open(PointSet::from_indices((0..n).filter(|&y| o.contains(meet[x][y])))))
    });
    // with least neighbourhoods, continuity at (a, b) means core(a) ∧ core(b) ⊆ core(a ∧ b)
    let topological =
        (0..n).all(|a| (0..n).all(|b| image(t.least_nbhd(a), t.least_nbhd(b)).is_subset(t.least_nbhd(meet[a][b]))));
    let small_semilattices = (0..n).all(|x| {
        let mut sub = t.least_nbhd(x);
        loop {
            let next = sub | image(sub, sub);
            if next == sub {
                break;
            }
            sub = next;
        }
        (0..n)
            .map(|z| t.least_nbhd(z))
            .filter(|u| u.contains(x))
            .all(|u| sub.is_subset(u))
    });
    let compatible = specialization_order(t).rel() == q.rel();
    Some(SemilatticeProfile {
        semitopological,
        topological,
        small_semilattices,
        compatible,
    })
}

pub fn ordered_space_profile(s: &OrderedSpace) -> OrderedSpaceProfile {
    let c = Ctx::new(s);
    let mut w = BTreeMap::new();
    let lower_semi = flag(&mut w, "lower_semi", lower_semi(&c));
    let upper_semi = flag(&mut w, "upper_semi", upper_semi(&c));
    let semi_qospace = lower_semi && upper_semi;
    let qospace = flag(&mut w, "qospace", qospace(&c));
    if let Some(by_product) = qospace_by_product(&c) {
        assert_eq!(qospace, by_product, "qospace routes disagree");
    }
    let partial = c.q.is_partial_order();
    let pospace = qospace && partial;
    let t2_ordered = flag(&mut w, "t2_ordered", t2_ordered(&c));
    let upper_regular = flag(&mut w, "upper_regular", upper_regular(&c));
    assert_eq!(
        upper_regular,
        upper_regular_by_separation(&c),
        "upper regularity routes disagree"
    );
    let upper_t3 = upper_regular && semi_qospace && partial;
    let locally_convex = flag(&mut w, "locally_convex", is_convex_open_base(&c));
    let strongly_convex = flag(&mut w, "strongly_convex", strongly_convex(&c));
    let hyperconvex = flag(&mut w, "hyperconvex", hyperconvex(&c));
    let zeta = ZetaFlags {
        upsilon: zeta_convex(&c, CoselectionKind::Upsilon),
        alpha: zeta_convex(&c, CoselectionKind::Alpha),
        sigma: zeta_convex(&c, CoselectionKind::Sigma),
    };
    let up_stable = flag(&mut w, "up_stable", u1(&c));
    assert_eq!(up_stable, u2(&c), "up-stability formulations disagree");
    assert_eq!(up_stable, u3(&c), "up-stability formulations disagree");
    let webs = flag(&mut w, "web_ordered", web_bases(&c));
    let filtered = flag(&mut w, "filtered_bases", filtered_bases(&c));
    let lower_bounded = flag(&mut w, "locally_lower_bounded", lower_bounded_bases(&c));
    let c_stable = flag(&mut w, "c_stable", c_stable(&c));
    let d_stable = flag(&mut w, "d_stable", d_stable(&c));
    let fams = filter_families(c.q);
    let vee_stable = flag(&mut w, "vee_stable", zeta_stable(&c, &fams.vee));
    let wedge_stable = flag(&mut w, "wedge_stable", zeta_stable(&c, &fams.wedge));
    assert_eq!(
        wedge_stable,
        interior_columns_are_ideals(&c),
        "wedge stability routes disagree"
    );
    let diamond_stable = flag(&mut w, "diamond_stable", zeta_stable(&c, &fams.diamond));
    assert_eq!(
        diamond_stable,
        vee_stable && wedge_stable,
        "diamond stability does not split"
    );
    let sectors = flag(&mut w, "sector_space", sector_bases(&c));
    let fans = flag(&mut w, "fan_space", fan_bases(&c));
    let mc = flag(&mut w, "mc_ordered", mc_ordered(&c));
    if partial {
        assert!(mc, "a finite ordered space that is not mc-ordered");
    }
    // finite filtered sets have least elements, so d-stability never fails
    assert!(d_stable, "a finite space that is not d-stable");
    let sl = semilattice_profile(s);
    let p = OrderedSpaceProfile {
        lower_semi,
        upper_semi,
        semi_qospace,
        qospace,
        pospace,
        t2_ordered,
        upper_regular,
        upper_t3,
        locally_convex,
        strongly_convex,
        hyperconvex,
        zeta_convex: zeta,
        up_stable,
        web_ordered: up_stable && webs,
        filtered_bases: filtered,
        locally_filtered: up_stable && filtered,
        locally_lower_bounded: up_stable && lower_bounded,
        c_stable,
        d_stable,
        vee_stable,
        wedge_stable,
        diamond_stable,
        sector_space: up_stable && semi_qospace && sectors,
        fan_space: up_stable && semi_qospace && fans,
        mc_ordered: mc,
        semitopological: sl.map(|p| p.semitopological),
        topological_semilattice: sl.map(|p| p.topological),
        small_semilattices: sl.map(|p| p.small_semilattices),
        witnesses: w,
    };
    assert!(!p.fan_space || p.sector_space, "fan space that is not a sector space");
    assert!(!p.sector_space || p.web_ordered, "sector space that is not web ordered");
    // U ∖ ↑F only matches the weak patch subbase when ↓x is closed
    assert!(
        !(p.hyperconvex && p.lower_semi) || p.zeta_convex.upsilon,
        "hyperconvex but not upsilon-convex"
    );
    assert!(
        !p.zeta_convex.upsilon || p.strongly_convex,
        "upsilon-convex but not strongly convex"
    );
    assert!(
        !p.strongly_convex || p.locally_convex,
        "strongly convex but not locally convex"
    );
    p
}

/// One row of the audit table.
pub const CLAIM_UPPER_ROUNDTRIP: &str = "upper-space-of-patch";
pub const CLAIM_FAN_PROFILE: &str = "weak-patch-is-fan-space";
pub const CLAIM_C_STABLE_UPPER: &str = "c-stable-iff-up-stable-with-c-upper-space";
pub const CLAIM_C_STABLE_SPLIT: &str = "c-stable-iff-regular-filtered-d-stable";
pub const CLAIM_WEB_VEE: &str = "web-ordered-implies-vee-stable";
pub const CLAIM_WEDGE_IDEALS: &str = "wedge-stable-iff-interior-columns-ideals";
pub const CLAIM_DIAMOND_SPLIT: &str = "diamond-stable-iff-vee-and-wedge";
pub const CLAIM_DOMAIN_POSPACE: &str = "continuous-domain-pospace-characterizations";
pub const CLAIM_SEMILATTICE: &str = "hyperconvex-semilattice-groups";

fn describe(s: &OrderedSpace) -> String {
    s.structure().to_text().replace('\n', "; ")
}

/// Claims about patch spaces of every topology on at most `n_bound` points.
pub fn audit_patch_spaces(n_bound: usize) -> Result<ClaimReport, StructError> {
    let mut spaces = Vec::new();
    for n in 1..=n_bound {
        spaces.extend(enumerate_topologies(n, false)?);
    }
    Ok(spaces
        .par_iter()
        .map(audit_patch_of)
        .reduce(ClaimReport::default, ClaimReport::merge))
}

/// Patch claims for a single topology.
pub fn audit_patch_of(s: &FinTopology) -> ClaimReport {
    let mut r = ClaimReport::default();
    for kind in [CoselectionKind::Upsilon, CoselectionKind::Alpha] {
        let p = patch(s, kind);
        r.record(CLAIM_UPPER_ROUNDTRIP, upper_space(&p).opens() == s.opens(), || {
            format!("{} patch of {:?}", kind.name(), s.opens())
        });
    }
    let p = patch(s, CoselectionKind::Upsilon);
    let f = ordered_space_profile(&p);
    let one = f.fan_space;
    let two = f.hyperconvex && f.c_stable && f.qospace;
    let three = f.hyperconvex && f.upper_regular && f.locally_filtered && f.d_stable && f.qospace;
    r.record(CLAIM_FAN_PROFILE, one && two && three && is_c_space(s), || {
        format!(
            "weak patch of {:?}: fan {one}, hyperconvex c-stable qospace {two}, split {three}",
            s.opens()
        )
    });
    r
}

/// Claims that quantify over all ordered spaces: every topology paired with
/// every quasi-order on at most `n_bound` points.
pub fn audit_ordered_spaces(n_bound: usize) -> Result<ClaimReport, StructError> {
    let mut pairs = Vec::new();
    for n in 1..=n_bound {
        let orders = enumerate_qosets(n)?;
        for t in enumerate_topologies(n, false)? {
            for q in &orders {
                pairs.push((q.clone(), t.clone()));
            }
        }
    }
    Ok(pairs
        .par_iter()
        .map(|(q, t)| audit_ordered_space(&OrderedSpace::new(q.clone(), t.clone()).expect("same size")))
        .reduce(ClaimReport::default, ClaimReport::merge))
}

pub fn audit_ordered_space(s: &OrderedSpace) -> ClaimReport {
    let mut r = ClaimReport::default();
    let p = ordered_space_profile(s);
    let upper = upper_space(s);
    if p.semi_qospace {
        let upper_c = is_c_space(&upper);
        r.record(CLAIM_C_STABLE_UPPER, p.c_stable == (p.up_stable && upper_c), || {
            describe(s)
        });
        r.record(
            CLAIM_C_STABLE_SPLIT,
            p.c_stable == (p.upper_regular && p.locally_filtered && p.d_stable),
            || describe(s),
        );
    }
    r.record(CLAIM_WEB_VEE, !p.web_ordered || p.vee_stable, || describe(s));
    r.record(
        CLAIM_WEDGE_IDEALS,
        p.wedge_stable == interior_columns_are_ideals(&Ctx::new(s)),
        || describe(s),
    );
    r.record(
        CLAIM_DIAMOND_SPLIT,
        p.diamond_stable == (p.vee_stable && p.wedge_stable),
        || describe(s),
    );
    if s.order().is_partial_order() {
        let up = space_profile(&upper);
        let three = p.fan_space && up.sober;
        let four = p.hyperconvex && p.c_stable && p.pospace && up.d_space;
        let five = p.hyperconvex && p.mc_ordered && p.diamond_stable && p.up_stable && p.t2_ordered;
        let shape = !three
            || (upper.opens() == &s.order().upper_sets()
                && patch(&upper, CoselectionKind::Upsilon).topology().opens() == s.topology().opens());
        r.record(CLAIM_DOMAIN_POSPACE, three == four && four == five && shape, || {
            format!(
                "{}: fan+sober {three}, hyperconvex c-stable pospace {four}, mc etc. {five}",
                describe(s)
            )
        });
    }
    if p.hyperconvex && p.semi_qospace && s.order().is_partial_order() {
        if let Some(sl) = semilattice_profile(s) {
            let weak_patch_of = |pred: fn(&FinTopology) -> bool| {
                pred(&upper) && patch(&upper, CoselectionKind::Upsilon).topology().opens() == s.topology().opens()
            };
            let g1 = [weak_patch_of(is_web), p.web_ordered, sl.semitopological];
            let g2 = [
                weak_patch_of(crate::classify::is_wide_web),
                p.locally_filtered,
                sl.topological && sl.small_semilattices,
            ];
            let g3 = [
                weak_patch_of(is_c_space),
                p.c_stable && p.pospace,
                sl.topological && sl.small_semilattices,
            ];
            let same = |g: [bool; 3]| g[0] == g[1] && g[1] == g[2];
            r.record(CLAIM_SEMILATTICE, same(g1) && same(g2) && same(g3), || {
                format!("{}: {g1:?} {g2:?} {g3:?}", describe(s))
            });
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finstruct::Carrier;

    fn set(bits: u32) -> PointSet {
        PointSet::from_bits(bits)
    }

    fn space(q: FinQoset, opens: &[u32]) -> OrderedSpace {
        let t = crate::finstruct::validate_topology(q.carrier(), opens.iter().map(|&b| set(b)).collect()).unwrap();
        OrderedSpace::new(q, t).unwrap()
    }

    #[test]
    fn upper_and_lower_spaces() {
        let s = space(FinQoset::chain(2), &[0, 1, 2, 3]);
        assert_eq!(upper_space(&s).opens().members(), &[set(0), set(2), set(3)]);
        assert_eq!(lower_space(&s).opens().members(), &[set(0), set(1), set(3)]);
        let eq = space(FinQoset::discrete(Carrier::standard(2)), &[0, 2, 3]);
        assert_eq!(upper_space(&eq).opens(), eq.topology().opens());
        let ind = space(FinQoset::chain(2), &[0, 3]);
        assert_eq!(upper_space(&ind).opens().len(), 2);
        assert_eq!(lower_space(&ind).opens().len(), 2);
    }

    #[test]
    fn coselections() {
        let up = coselection_topology(&FinQoset::chain(2), CoselectionKind::Upsilon);
        assert_eq!(up.opens().members(), &[set(0), set(2), set(3)]);
        let anti = coselection_topology(&FinQoset::discrete(Carrier::standard(2)), CoselectionKind::Upsilon);
        assert_eq!(anti.opens().len(), 4);
        for kind in CoselectionKind::ALL {
            assert_eq!(coselection_topology(&FinQoset::chain(1), kind).opens().len(), 2);
            for t in enumerate_topologies(3, false).unwrap() {
                let cot = Coselection::of(&t, kind).cotopology(&t);
                assert_eq!(
                    specialization_order(&cot).rel(),
                    &specialization_order(&t).rel().transpose()
                );
            }
        }
    }

    #[test]
    fn patches() {
        let s = FinTopology::sierpinski();
        let p = patch(&s, CoselectionKind::Upsilon);
        assert!(p.order().leq(0, 1) && !p.order().leq(1, 0));
        assert_eq!(p.topology().opens().len(), 4);
        let ind = FinTopology::indiscrete(Carrier::standard(2));
        let p = patch(&ind, CoselectionKind::Upsilon);
        assert_eq!(p.order().rel().pair_count(), 4);
        assert_eq!(p.topology().opens().len(), 2);
        let d = FinTopology::discrete(Carrier::standard(3));
        let p = patch(&d, CoselectionKind::Alpha);
        assert_eq!(p.topology().opens(), d.opens());
        assert_eq!(p.order().rel().pair_count(), 3);
    }

    #[test]
    fn sierpinski_weak_patch_profile() {
        let p = ordered_space_profile(&patch(&FinTopology::sierpinski(), CoselectionKind::Upsilon));
        assert!(p.fan_space && p.c_stable && p.hyperconvex && p.pospace);
        assert_eq!(p.semitopological, Some(true));
        assert_eq!(p.topological_semilattice, Some(true));
        assert_eq!(p.small_semilattices, Some(true));
    }

    #[test]
    fn chain_with_lower_topology_is_not_lower_semi() {
        let p = ordered_space_profile(&space(FinQoset::chain(2), &[0, 1, 3]));
        assert!(!p.lower_semi);
        assert!(p.witnesses["lower_semi"].contains('a'));
    }

    #[test]
    fn equality_order_with_discrete_topology() {
        let p = ordered_space_profile(&space(
            FinQoset::discrete(Carrier::standard(3)),
            &[0, 1, 2, 3, 4, 5, 6, 7],
        ));
        assert!(p.qospace && p.up_stable && p.fan_space);
    }

    #[test]
    fn families() {
        let f = filter_families(&FinQoset::chain(2));
        assert_eq!(f.vee.members(), &[set(0), set(2), set(3)]);
        assert_eq!(f.wedge.members(), &[set(2), set(3)]);
        let anti = filter_families(&FinQoset::discrete(Carrier::standard(2)));
        assert!(anti.wedge.contains(PointSet::EMPTY));
        let one = filter_families(&FinQoset::chain(1));
        assert_eq!(one.vee.members(), &[set(0), set(1)]);
        assert_eq!(one.wedge.members(), &[set(1)]);
        assert_eq!(one.diamond.members(), &[set(0), set(1)]);
    }

    #[test]
    fn audits_small() {
        let r = audit_patch_spaces(3).unwrap();
        assert_eq!(r.violation_count(), 0, "{:#?}", r);
        let r = audit_ordered_spaces(2).unwrap();
        assert_eq!(r.violation_count(), 0, "{:#?}", r);
    }
}

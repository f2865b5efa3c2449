//! Finite-subset bases, free C-semilattices, rounded-ideal completions of
//! C-semilattices, the lower (Hoare) construction and the convex (Plotkin)
//! composite.

use serde::Serialize;

use crate::completion::{rounded_ideal_completion, way_below, RoundedIdealPoset};
use crate::finstruct::{Carrier, FinLattice, FinPoset, FinTopology, PointSet, Relation, SetFamily, StructError};
use crate::report::ClaimReport;
use crate::speclat::{enumerate_c_relations, validate_c_relation, CRelation, Refutation};

/// Largest base carrier for the finite-subset construction (`2^5 - 1` subsets).
pub const MAX_POWER_BASE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PowerError {
    #[error("base of {n} points exceeds {max}")]
    TooLarge { n: usize, max: usize },
    #[error("operation is not {law}: {witness}")]
    Algebra { law: &'static str, witness: String },
    #[error("rho({x}·{y}) differs from rho(rho {x} · rho {y})")]
    Law { x: String, y: String },
    #[error("not a C-quasi-order: {}", .0.detail)]
    Uncertified(Refutation),
    #[error("map is not {0}")]
    NotAMorphism(&'static str),
    #[error(transparent)]
    Struct(#[from] StructError),
}

/// Nonempty subsets of a base carrier with `E rho_bar F` iff `E ⊆ rho F` and `F ⊆ E rho`.
#[derive(Clone, Debug)]
pub struct PowerCarrier {
    pub base: CRelation,
    /// Subsets in ascending bit order; index `i` is the point `i` of `rho_bar`.
    pub elements: Vec<PointSet>,
    pub rho_bar: CRelation,
}

impl PowerCarrier {
    pub fn index_of(&self, e: PointSet) -> usize {
        self.elements.binary_search(&e).expect("nonempty subset of the base")
    }
}

/// `a|b` label of a finite subset.
fn subset_label(c: &Carrier, s: PointSet) -> String {
    s.iter().map(|i| c.name(i)).collect::<Vec<_>>().join("|")
}

pub fn rho_bar(rho: &CRelation) -> Result<PowerCarrier, PowerError> {
    let n = rho.n();
    if n > MAX_POWER_BASE {
        return Err(PowerError::TooLarge { n, max: MAX_POWER_BASE });
    }
    let elements: Vec<PointSet> = rho.carrier().full().subsets().filter(|s| !s.is_empty()).collect();
    let carrier = Carrier::new(elements.iter().map(|&e| subset_label(rho.carrier(), e)))?;
    let r = rho.rel();
    let rel = Relation::from_fn(elements.len(), |a, b| {
        let (e, f) = (elements[a], elements[b]);
        e.is_subset(r.preimage(f)) && f.is_subset(r.image(e))
    });
    let cert = validate_c_relation(&carrier, &rel);
    assert!(
        cert.c_quasi_order,
        "rho_bar over a C-quasi-order must be one: {:?}",
        cert.witness
    );
    let rho_bar = CRelation::certify(&carrier, &rel).map_err(PowerError::Uncertified)?;
    Ok(PowerCarrier {
        base: rho.clone(),
        elements,
        rho_bar,
    })
}

/// C-quasi-order with a semilattice operation satisfying `rho(x·y) = rho(rho x · rho y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CSemilattice {
    rel: CRelation,
    op: Vec<Vec<usize>>,
}

/// Checks idempotence, commutativity and associativity of an operation table.
pub fn check_semilattice(c: &Carrier, op: &[Vec<usize>]) -> Result<(), PowerError> {
    let n = op.len();
    let name = |i: usize| c.name(i).to_string();
    if let Some(x) = (0..n).find(|&x| op[x][x] != x) {
        return Err(PowerError::Algebra {
            law: "idempotent",
            witness: name(x),
        });
    }
    for x in 0..n {
        for y in 0..n {
            if op[x][y] != op[y][x] {
                return Err(PowerError::Algebra {
                    law: "commutative",
                    witness: format!("{} {}", name(x), name(y)),
                });
            }
            for z in 0..n {
                if op[op[x][y]][z] != op[x][op[y][z]] {
                    let witness = format!("{} {} {}", name(x), name(y), name(z));
                    return Err(PowerError::Algebra {
                        law: "associative",
                        witness,
                    });
                }
            }
        }
    }
    Ok(())
}

impl CSemilattice {
    pub fn new(rel: CRelation, op: Vec<Vec<usize>>) -> Result<Self, PowerError> {
        let n = rel.n();
        assert!(
            op.len() == n && op.iter().all(|row| row.len() == n && row.iter().all(|&v| v < n)),
            "op table shape"
        );
        check_semilattice(rel.carrier(), &op)?;
        for x in 0..n {
            for y in x..n {
                let products = product_set(&op, rel.below(x), rel.below(y));
                if rel.below(op[x][y]) != rel.round(products) {
                    let c = rel.carrier();
                    return Err(PowerError::Law {
                        x: c.name(x).into(),
                        y: c.name(y).into(),
                    });
                }
            }
        }
        Ok(CSemilattice { rel, op })
    }

    pub fn rel(&self) -> &CRelation {
        &self.rel
    }

    pub fn n(&self) -> usize {
        self.rel.n()
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.op
    }

    /// Product of a nonempty set of elements.
    pub fn fold(&self, s: PointSet) -> usize {
        let mut it = s.iter();
        let first = it.next().expect("nonempty product");
        it.fold(first, |a, x| self.op[a][x])
    }
}

fn product_set(op: &[Vec<usize>], a: PointSet, b: PointSet) -> PointSet {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| op[x][y]))
        .fold(PointSet::EMPTY, PointSet::with)
}

/// `rho' f(y) = rho' f[rho y]` for every `y`: interpolating and isotone.
pub fn is_cq_morphism(src: &CRelation, dst: &CRelation, f: &[usize]) -> bool {
    (0..src.n()).all(|y| {
        let image = src.below(y).iter().fold(PointSet::EMPTY, |a, x| a.with(f[x]));
        dst.below(f[y]) == dst.round(image)
    })
}

pub fn is_homomorphism(src: &[Vec<usize>], dst: &[Vec<usize>], f: &[usize]) -> bool {
    (0..src.len()).all(|x| (0..src.len()).all(|y| f[src[x][y]] == dst[f[x]][f[y]]))
}

/// `(FX, rho_bar, ∪)` with its unit `x ↦ {x}`.
#[derive(Clone, Debug)]
pub struct FreeSemilattice {
    pub power: PowerCarrier,
    pub semilattice: CSemilattice,
    pub unit: Vec<usize>,
}

pub fn free_c_semilattice(rho: &CRelation) -> Result<FreeSemilattice, PowerError> {
    let power = rho_bar(rho)?;
    let el = &power.elements;
    let op: Vec<Vec<usize>> = el
        .iter()
        .map(|&e| el.iter().map(|&f| power.index_of(e | f)).collect())
        .collect();
    let semilattice = CSemilattice::new(power.rho_bar.clone(), op)?;
    let unit: Vec<usize> = (0..rho.n()).map(|x| power.index_of(PointSet::singleton(x))).collect();
    if !is_cq_morphism(rho, &power.rho_bar, &unit) {
        return Err(PowerError::NotAMorphism("an interpolating isotone unit"));
    }
    Ok(FreeSemilattice {
        power,
        semilattice,
        unit,
    })
}

impl FreeSemilattice {
    /// `F ↦ f(y1)·…·f(yk)`, the homomorphic extension of `f` along the unit.
    pub fn lift(&self, target: &CSemilattice, f: &[usize]) -> Vec<usize> {
        self.power
            .elements
            .iter()
            .map(|&e| e.iter().map(|y| f[y]).reduce(|a, b| target.op(a, b)).expect("nonempty"))
            .collect()
    }

    /// Number of semilattice homomorphisms `h` with `h ∘ unit = f`, by enumeration of
    /// every map that agrees with `f` on singletons.
    pub fn count_extensions(&self, target: &CSemilattice, f: &[usize]) -> usize {
        let el = &self.power.elements;
        let free: Vec<usize> = (0..el.len()).filter(|&i| el[i].len() > 1).collect();
        let mut h = vec![0; el.len()];
        for (x, &u) in self.unit.iter().enumerate() {
            h[u] = f[x];
        }
        let m = target.n();
        let mut count = 0;
        for code in 0..m.pow(free.len() as u32) {
            let mut c = code;
            for &i in &free {
                h[i] = c % m;
                c /= m;
            }
            count += usize::from(is_homomorphism(self.semilattice.table(), target.table(), &h));
        }
        count
    }
}

/// `I ·rho J = rho{x·y : x ∈ I, y ∈ J}`.
pub fn ideal_product(s: &CSemilattice, i: PointSet, j: PointSet) -> PointSet {
    s.rel().round(product_set(s.table(), i, j))
}

/// Rounded-ideal completion of a C-semilattice with the induced operation.
#[derive(Clone, Debug)]
pub struct IdealSemilattice {
    pub completion: RoundedIdealPoset,
    pub op: Vec<Vec<usize>>,
}

impl IdealSemilattice {
    pub fn n(&self) -> usize {
        self.completion.n()
    }
}

pub fn i_bullet(s: &CSemilattice) -> Result<IdealSemilattice, PowerError> {
    let completion = rounded_ideal_completion(s.rel());
    let m = completion.ideals.members().to_vec();
    let index = |i: PointSet| m.binary_search(&i).ok();
    let mut op = vec![vec![0; m.len()]; m.len()];
    for a in 0..m.len() {
        for b in 0..m.len() {
            let p = ideal_product(s, m[a], m[b]);
            op[a][b] = index(p).ok_or(PowerError::NotAMorphism("closed on rounded ideals"))?;
        }
    }
    check_semilattice(completion.poset.carrier(), &op)?;
    let po = &completion.poset;
    // Scott continuity of a finite operation is monotonicity
    let monotone =
        (0..m.len()).all(|a| (0..m.len()).all(|b| (0..m.len()).all(|c| !po.leq(a, b) || po.leq(op[a][c], op[b][c]))));
    if !monotone {
        return Err(PowerError::NotAMorphism("a monotone operation on the completion"));
    }
    let unit = &completion.embedding;
    if !is_homomorphism(s.table(), &op, unit) {
        return Err(PowerError::NotAMorphism("a homomorphic unit"));
    }
    let wb = CRelation::certify(po.carrier(), &crate::completion::way_below_of(po.qoset()))
        .map_err(PowerError::Uncertified)?;
    if !is_cq_morphism(s.rel(), &wb, unit) {
        return Err(PowerError::NotAMorphism("an interpolating isotone unit"));
    }
    Ok(IdealSemilattice { completion, op })
}

/// Finite poset with a monotone semilattice operation (a finite dcpo-semilattice).
#[derive(Clone, Debug)]
pub struct DcpoSemilattice {
    pub poset: FinPoset,
    pub op: Vec<Vec<usize>>,
}

impl IdealSemilattice {
    /// `I ↦ ⋁ f[I]` for a morphism `f` from the generating C-semilattice into `(P, ≪, ·)`.
    pub fn lift(&self, target: &DcpoSemilattice, f: &[usize]) -> Option<Vec<usize>> {
        self.completion
            .ideals
            .iter()
            .map(|i| target.poset.join(i.iter().fold(PointSet::EMPTY, |a, x| a.with(f[x]))))
            .collect()
    }

    /// Monotone homomorphisms `h` into `target` with `h ∘ unit = f`, counted by enumerating all maps.
    pub fn count_extensions(&self, target: &DcpoSemilattice, f: &[usize]) -> usize {
        let n = self.n();
        let m = target.poset.n();
        let emb = &self.completion.embedding;
        let po = &self.completion.poset;
        let mut count = 0;
        'maps: for code in 0..m.pow(n as u32) {
            let h: Vec<usize> = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
            for (x, &e) in emb.iter().enumerate() {
                if h[e] != f[x] {
                    continue 'maps;
                }
            }
            let monotone = (0..n).all(|a| (0..n).all(|b| !po.leq(a, b) || target.poset.leq(h[a], h[b])));
            count += usize::from(monotone && is_homomorphism(&self.op, &target.op, &h));
        }
        count
    }
}

/// Closed sets of a space as a lattice with its Scott (upper-set) topology, and `x ↦ {x}⁻`.
#[derive(Clone, Debug)]
pub struct HoareSpace {
    pub closed: SetFamily,
    pub lattice: FinLattice,
    pub space: FinTopology,
    pub eta: Vec<usize>,
}

pub fn scott_space(l: &FinLattice) -> FinTopology {
    FinTopology::alexandroff(l.poset().qoset())
}

fn is_continuous(src: &FinTopology, dst: &FinTopology, f: &[usize]) -> bool {
    dst.opens()
        .iter()
        .all(|u| src.is_open(PointSet::from_indices((0..src.n()).filter(|&x| u.contains(f[x])))))
}

pub fn hoare(s: &FinTopology) -> Result<HoareSpace, PowerError> {
    let closed = s.closed_sets();
    let lattice = FinLattice::of_family(&closed, s.carrier())?;
    let space = scott_space(&lattice);
    let eta: Vec<usize> = (0..s.n())
        .map(|x| {
            closed
                .members()
                .binary_search(&s.closure(PointSet::singleton(x)))
                .expect("point closure")
        })
        .collect();
    if !is_continuous(s, &space, &eta) {
        return Err(PowerError::NotAMorphism("continuous"));
    }
    Ok(HoareSpace {
        closed,
        lattice,
        space,
        eta,
    })
}

impl HoareSpace {
    /// `A ↦ ⋁ f[A]` for a continuous `f` into the Scott space of a finite lattice.
    pub fn lift(&self, s: &FinTopology, target: &FinLattice, f: &[usize]) -> Result<Vec<usize>, PowerError> {
        if !is_continuous(s, &scott_space(target), f) {
            return Err(PowerError::NotAMorphism("continuous"));
        }
        let h: Vec<usize> = self
            .closed
            .iter()
            .map(|a| target.join_of(a.iter().fold(PointSet::EMPTY, |u, x| u.with(f[x]))))
            .collect();
        if !self.preserves_finite_joins(target, &h) || !is_continuous(&self.space, &scott_space(target), &h) {
            return Err(PowerError::NotAMorphism("a finite-join-preserving continuous lift"));
        }
        if (0..s.n()).any(|x| h[self.eta[x]] != f[x]) {
            return Err(PowerError::NotAMorphism("a lift through the unit"));
        }
        Ok(h)
    }

    fn preserves_finite_joins(&self, target: &FinLattice, h: &[usize]) -> bool {
        let l = &self.lattice;
        h[l.bottom()] == target.bottom()
            && (0..l.n()).all(|a| (0..l.n()).all(|b| h[l.join(a, b)] == target.join(h[a], h[b])))
    }

    /// Finite-join-preserving continuous maps `h` with `h ∘ eta = f`, by enumeration.
    pub fn count_extensions(&self, target: &FinLattice, f: &[usize]) -> usize {
        let n = self.lattice.n();
        let m = target.n();
        let mut fixed: Vec<Option<usize>> = vec![None; n];
        fixed[self.lattice.bottom()] = Some(target.bottom());
        for (x, &e) in self.eta.iter().enumerate() {
            match fixed[e] {
                Some(v) if v != f[x] => return 0,
                _ => fixed[e] = Some(f[x]),
            }
        }
        let free: Vec<usize> = (0..n).filter(|&i| fixed[i].is_none()).collect();
        let scott = scott_space(target);
        let mut h: Vec<usize> = fixed.iter().map(|v| v.unwrap_or(0)).collect();
        let mut count = 0;
        for code in 0..m.pow(free.len() as u32) {
            let mut c = code;
            for &i in &free {
                h[i] = c % m;
                c /= m;
            }
            count += usize::from(self.preserves_finite_joins(target, &h) && is_continuous(&self.space, &scott, &h));
        }
        count
    }
}

/// Convex powerdomain of a finite poset with every intermediate stage.
#[derive(Clone, Debug)]
pub struct Plotkin {
    pub way_below: CRelation,
    pub free: FreeSemilattice,
    pub result: IdealSemilattice,
}

pub fn plotkin(p: &FinPoset) -> Result<Plotkin, PowerError> {
    if p.n() > 4 {
        return Err(PowerError::TooLarge { n: p.n(), max: 4 });
    }
    let wb = CRelation::certify(p.carrier(), &way_below(p)).map_err(PowerError::Uncertified)?;
    plotkin_over(wb)
}

/// The same composite with the order itself as the basis relation.
pub fn plotkin_from_order(p: &FinPoset) -> Result<Plotkin, PowerError> {
    plotkin_over(CRelation::certify(p.carrier(), p.rel()).map_err(PowerError::Uncertified)?)
}

fn plotkin_over(wb: CRelation) -> Result<Plotkin, PowerError> {
    let free = free_c_semilattice(&wb)?;
    let result = i_bullet(&free.semilattice)?;
    Ok(Plotkin {
        way_below: wb,
        free,
        result,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerdomainOutput {
    pub elements: Vec<String>,
    pub order: Vec<(String, String)>,
    pub op: Vec<Vec<String>>,
}

impl Plotkin {
    /// Elements are rendered as sets of finite subsets, e.g. `{a a|b}`.
    pub fn output(&self) -> PowerdomainOutput {
        let r = &self.result;
        let elements: Vec<String> = (0..r.n()).map(|i| r.completion.render(i)).collect();
        let po = &r.completion.poset;
        let order = po
            .rel()
            .pairs()
            .map(|(a, b)| (elements[a].clone(), elements[b].clone()))
            .collect();
        let op =
            r.op.iter()
                .map(|row| row.iter().map(|&v| elements[v].clone()).collect())
                .collect();
        PowerdomainOutput { elements, order, op }
    }
}

impl PowerdomainOutput {
    /// Canonical text form used by the golden files.
    pub fn to_text(&self) -> String {
        let mut out = String::from("elements\n");
        for e in &self.elements {
            out += &format!("  {e}\n");
        }
        out += "order\n";
        for (a, b) in &self.order {
            out += &format!("  {a} <= {b}\n");
        }
        out += "op\n";
        for (a, row) in self.elements.iter().zip(&self.op) {
            for (b, v) in self.elements.iter().zip(row) {
                out += &format!("  {a} . {b} = {v}\n");
            }
        }
        out
    }
}

/// Every commutative idempotent associative table on `n` points.
pub fn enumerate_semilattice_ops(n: usize) -> Vec<Vec<Vec<usize>>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    let carrier = Carrier::standard(n);
    let mut out = Vec::new();
    for code in 0..n.pow(pairs.len() as u32) {
        let mut op: Vec<Vec<usize>> = (0..n).map(|x| vec![x; n]).collect();
        let mut c = code;
        for &(x, y) in &pairs {
            op[x][y] = c % n;
            op[y][x] = c % n;
            c /= n;
        }
        if check_semilattice(&carrier, &op).is_ok() {
            out.push(op);
        }
    }
    out
}

pub fn enumerate_c_semilattices(n: usize) -> Vec<CSemilattice> {
    let ops = enumerate_semilattice_ops(n);
    enumerate_c_relations(n)
        .into_iter()
        .flat_map(|rho| {
            ops.iter()
                .filter_map(move |op| CSemilattice::new(rho.clone(), op.clone()).ok())
        })
        .collect()
}

/// Finite posets with a monotone semilattice operation, on `n` points.
pub fn enumerate_dcpo_semilattices(n: usize) -> Vec<DcpoSemilattice> {
    let ops = enumerate_semilattice_ops(n);
    let mut out = Vec::new();
    for p in crate::finstruct::enumerate_posets(n).expect("bounded") {
        for op in &ops {
            let monotone = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !p.leq(a, b) || p.leq(op[a][c], op[b][c]))));
            if monotone {
                out.push(DcpoSemilattice {
                    poset: p.clone(),
                    op: op.clone(),
                });
            }
        }
    }
    out
}

fn all_maps(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..m.pow(n as u32)).map(move |code| (0..n).map(|i| code / m.pow(i as u32) % m).collect())
}

pub const CLAIM_RHO_BAR: &str = "rho-bar-is-c-quasi-order";
pub const CLAIM_RHO_BAR_SEPARATED: &str = "rho-bar-over-c-order-is-separated";
pub const CLAIM_FREE_LIFT: &str = "free-semilattice-lift-unique";
pub const CLAIM_TRIANGLES: &str = "free-forgetful-triangle-identities";
pub const CLAIM_IDEAL_LIFT: &str = "rounded-ideal-lift-unique";
pub const CLAIM_HOARE: &str = "hoare-lift-unique";
pub const CLAIM_PLOTKIN_DEGENERACY: &str = "plotkin-way-below-equals-order";

/// Sizes used by the exhaustive adjunction checks.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PowerAuditBounds {
    /// Base C-quasi-orders for the finite-subset construction.
    pub base: usize,
    /// Target C-semilattices and dcpo-semilattices.
    pub target: usize,
    /// Spaces for the lower construction.
    pub space: usize,
    /// Target lattices for the lower construction.
    pub lattice: usize,
    /// Posets for the convex composite.
    pub poset: usize,
}

impl Default for PowerAuditBounds {
    fn default() -> Self {
        PowerAuditBounds {
            base: 3,
            target: 3,
            space: 3,
            lattice: 4,
            poset: 4,
        }
    }
}

pub fn audit_powerdomains(b: PowerAuditBounds) -> ClaimReport {
    let mut r = ClaimReport::default();
    let targets: Vec<CSemilattice> = (1..=b.target).flat_map(enumerate_c_semilattices).collect();
    let dcpos: Vec<DcpoSemilattice> = (1..=b.target).flat_map(enumerate_dcpo_semilattices).collect();
    for n in 1..=b.base {
        for rho in enumerate_c_relations(n) {
            audit_free(&mut r, &rho, &targets);
        }
    }
    for n in 1..=b.base {
        for rho in enumerate_c_relations(n) {
            for op in enumerate_semilattice_ops(n) {
                if let Ok(s) = CSemilattice::new(rho.clone(), op) {
                    audit_ideal_lift(&mut r, &s, &dcpos);
                }
            }
        }
    }
    let lattices: Vec<FinLattice> = (1..=b.lattice)
        .flat_map(|m| crate::finstruct::enumerate_lattices(m).expect("bounded"))
        .collect();
    for n in 1..=b.space {
        for s in crate::finstruct::enumerate_topologies(n, false).expect("bounded") {
            audit_hoare(&mut r, &s, &lattices);
        }
    }
    for n in 1..=b.poset {
        for p in crate::finstruct::enumerate_posets(n).expect("bounded") {
            let same = match (plotkin(&p), plotkin_from_order(&p)) {
                (Ok(a), Ok(b)) => a.output() == b.output(),
                _ => false,
            };
            r.record(CLAIM_PLOTKIN_DEGENERACY, same, || format!("poset {:?}", p.rel()));
        }
    }
    r
}

/// Free-semilattice claims over one base, against every target.
pub fn audit_free(r: &mut ClaimReport, rho: &CRelation, targets: &[CSemilattice]) {
    let free = match free_c_semilattice(rho) {
        Ok(f) => f,
        Err(e) => {
            r.record(CLAIM_RHO_BAR, false, || format!("{e} for {:?}", rho.rel()));
            return;
        }
    };
    r.record(CLAIM_RHO_BAR, true, String::new);
    if rho.is_c_order() {
        let w = validate_c_relation(free.power.rho_bar.carrier(), free.power.rho_bar.rel()).witness;
        r.record(CLAIM_RHO_BAR_SEPARATED, free.power.rho_bar.is_c_order(), || {
            format!("{} over rho = {:?}", w.map(|w| w.detail).unwrap_or_default(), rho.rel())
        });
    }
    // ε_{FR} ∘ F(ι_R) = id: the union of the singletons of E is E
    let el = &free.power.elements;
    let first = el
        .iter()
        .all(|&e| e.iter().map(|x| el[free.unit[x]]).fold(PointSet::EMPTY, |a, s| a | s) == e);
    // G(ε_S) ∘ ι_{GS} = id on every target, and ε_S is a morphism of C-semilattices
    let second = targets
        .iter()
        .filter(|t| t.n() <= 3)
        .all(|t| match free_c_semilattice(t.rel()) {
            Ok(ft) => {
                let counit: Vec<usize> = ft.power.elements.iter().map(|&e| t.fold(e)).collect();
                ft.unit.iter().enumerate().all(|(x, &u)| counit[u] == x)
                    && is_homomorphism(ft.semilattice.table(), t.table(), &counit)
                    && is_cq_morphism(ft.semilattice.rel(), t.rel(), &counit)
            }
            Err(_) => false,
        });
    r.record(CLAIM_TRIANGLES, first && second, || {
        format!("triangle identity fails over {:?}", rho.rel())
    });
    for t in targets {
        for f in all_maps(rho.n(), t.n()).filter(|f| is_cq_morphism(rho, t.rel(), f)) {
            let lift = free.lift(t, &f);
            let ok = free.unit.iter().enumerate().all(|(x, &u)| lift[u] == f[x])
                && is_homomorphism(free.semilattice.table(), t.table(), &lift)
                && is_cq_morphism(free.semilattice.rel(), t.rel(), &lift)
                && free.count_extensions(t, &f) == 1;
            r.record(CLAIM_FREE_LIFT, ok, || format!("map {f:?} from {:?}", rho.rel()));
        }
    }
}

/// Rounded-ideal lift claims for one C-semilattice.
pub fn audit_ideal_lift(r: &mut ClaimReport, s: &CSemilattice, dcpos: &[DcpoSemilattice]) {
    let done = match i_bullet(s) {
        Ok(d) => d,
        Err(e) => {
            r.record(CLAIM_IDEAL_LIFT, false, || format!("{e}"));
            return;
        }
    };
    for t in dcpos {
        let wb = CRelation::certify(t.poset.carrier(), t.poset.rel()).expect("finite order");
        for f in all_maps(s.n(), t.poset.n()) {
            if !is_cq_morphism(s.rel(), &wb, &f) || !is_homomorphism(s.table(), &t.op, &f) {
                continue;
            }
            let ok = match done.lift(t, &f) {
                Some(h) => {
                    let emb = &done.completion.embedding;
                    emb.iter().enumerate().all(|(x, &e)| h[e] == f[x])
                        && is_homomorphism(&done.op, &t.op, &h)
                        && done.count_extensions(t, &f) == 1
                }
                None => false,
            };
            r.record(CLAIM_IDEAL_LIFT, ok, || format!("map {f:?} from {:?}", s.rel().rel()));
        }
    }
}

/// Lower-construction lift claims for one space.
pub fn audit_hoare(r: &mut ClaimReport, s: &FinTopology, lattices: &[FinLattice]) {
    let h = match hoare(s) {
        Ok(h) => h,
        Err(e) => {
            r.record(CLAIM_HOARE, false, || format!("{e} on {:?}", s.opens()));
            return;
        }
    };
    for l in lattices {
        let scott = scott_space(l);
        for f in all_maps(s.n(), l.n()).filter(|f| is_continuous(s, &scott, f)) {
            let ok = h.lift(s, l, &f).is_ok() && h.count_extensions(l, &f) == 1;
            r.record(CLAIM_HOARE, ok, || format!("map {f:?} from {:?}", s.opens()));
        }
    }
}

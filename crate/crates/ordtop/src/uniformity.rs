//! The coarsest quasi-uniformity of a finite space and its induced topologies.

use rayon::prelude::*;

use crate::classify::cocompact_topology;
use crate::completion::way_below_of;
use crate::finstruct::{enumerate_topologies, open_set_lattice, Carrier, FinTopology, PointSet, Relation, StructError};
use crate::patchwork::{coselection_topology, patch, CoselectionKind};
use crate::report::ClaimReport;
use crate::speclat::{interior_relation, specialization_order};

/// `U → V = (X∖U)×X ∪ X×V`: pairs `(u, v)` with `u ∈ U ⇒ v ∈ V`.
pub fn entourage(n: usize, u: PointSet, v: PointSet) -> Relation {
    Relation::from_fn(n, |a, b| !u.contains(a) || v.contains(b))
}

/// A filter on `X × X` given by a base closed under finite intersections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiUniformity {
    carrier: Carrier,
    base: Vec<Relation>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UniformityError {
    #[error("entourage misses the diagonal at `{0}`")]
    NotReflexive(String),
    #[error("no entourage V in the filter has V∘V inside {0:?}")]
    NoSquareRoot(Relation),
    #[error("empty base")]
    EmptyBase,
}

/// Intersection closure of a family of relations, sorted and deduplicated.
fn intersection_closure(gens: Vec<Relation>) -> Vec<Relation> {
    let mut out: Vec<Relation> = gens;
    out.sort();
    out.dedup();
    loop {
        let mut extra = Vec::new();
        for a in &out {
            for b in &out {
                let c = a.intersection(b);
                if out.binary_search(&c).is_err() && !extra.contains(&c) {
                    extra.push(c);
                }
            }
        }
        if extra.is_empty() {
            return out;
        }
        out.extend(extra);
        out.sort();
    }
}

impl QuasiUniformity {
    /// The filter generated by `gens`, with both axioms checked.
    pub fn generated_by(carrier: Carrier, gens: Vec<Relation>) -> Result<Self, UniformityError> {
        if gens.is_empty() {
            return Err(UniformityError::EmptyBase);
        }
        for g in &gens {
            if let Some(x) = (0..carrier.len()).find(|&x| !g.holds(x, x)) {
                return Err(UniformityError::NotReflexive(carrier.name(x).to_string()));
            }
        }
        let base = intersection_closure(gens);
        for u in &base {
            if !base.iter().any(|v| v.compose(v).is_subset(u)) {
                return Err(UniformityError::NoSquareRoot(u.clone()));
            }
        }
        Ok(QuasiUniformity { carrier, base })
    }

    pub fn base(&self) -> &[Relation] {
        &self.base
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn n(&self) -> usize {
        self.carrier.len()
    }

    /// Whether `r` is a member of the filter.
    pub fn contains(&self, r: &Relation) -> bool {
        self.base.iter().any(|b| b.is_subset(r))
    }

    /// Same filter, i.e. each base refines the other.
    pub fn same_filter(&self, other: &QuasiUniformity) -> bool {
        self.base.iter().all(|r| other.contains(r)) && other.base.iter().all(|r| self.contains(r))
    }

    /// The least entourage; a finite filter is principal.
    pub fn kernel(&self) -> Relation {
        let n = self.n();
        self.base.iter().fold(Relation::full(n), |a, b| a.intersection(b))
    }

    pub fn invert(&self) -> QuasiUniformity {
        let gens = self.base.iter().map(Relation::transpose).collect();
        QuasiUniformity::generated_by(self.carrier.clone(), gens).expect("inverse of a quasi-uniformity")
    }

    pub fn symmetrize(&self) -> QuasiUniformity {
        let gens = self.base.iter().flat_map(|r| [r.clone(), r.transpose()]).collect();
        QuasiUniformity::generated_by(self.carrier.clone(), gens).expect("join of a quasi-uniformity and its inverse")
    }
}

/// `O` is open iff every `x ∈ O` has an entourage `U` with `xU ⊆ O`.
pub fn tau(q: &QuasiUniformity) -> FinTopology {
    let n = q.n();
    let opens: Vec<PointSet> = PointSet::full(n)
        .subsets()
        .filter(|&o| o.iter().all(|x| q.base.iter().any(|u| u.succ(x).is_subset(o))))
        .collect();
    crate::finstruct::validate_topology(&q.carrier, opens.into_iter().collect()).expect("tau of a quasi-uniformity")
}

/// Generated by `yρ → xρ` for `x ρ y`, `ρ` the interior relation.
pub fn coarsest_quasi_uniformity(s: &FinTopology) -> QuasiUniformity {
    let rho = interior_relation(s);
    let gens = rho
        .pairs()
        .map(|(x, y)| entourage(s.n(), rho.succ(y), rho.succ(x)))
        .collect();
    QuasiUniformity::generated_by(s.carrier().clone(), gens).expect("finite spaces carry a coarsest quasi-uniformity")
}

/// Generated by `U → V` for opens `U ≪ V`, with `≪` evaluated in the open-set lattice.
pub fn open_way_below_quasi_uniformity(s: &FinTopology) -> Result<QuasiUniformity, StructError> {
    let lattice = open_set_lattice(s)?;
    let wb = way_below_of(lattice.poset().qoset());
    let opens = s.opens().members();
    let by_inclusion = Relation::from_fn(opens.len(), |a, b| opens[a].is_subset(opens[b]));
    assert_eq!(wb, by_inclusion, "way-below on a finite frame differs from inclusion");
    let gens = wb.pairs().map(|(a, b)| entourage(s.n(), opens[a], opens[b])).collect();
    Ok(QuasiUniformity::generated_by(s.carrier().clone(), gens).expect("open entourages"))
}

/// Whether `q` is contained in every principal quasi-uniformity `↑W` with `τ = S`
/// (`W` ranging over all preorders on the carrier).
pub fn is_coarsest(q: &QuasiUniformity, s: &FinTopology) -> bool {
    let n = s.n();
    assert!(n <= 3, "preorder enumeration bound");
    (0u64..1 << (n * n))
        .map(|bits| Relation::from_fn(n, |x, y| bits >> (x * n + y) & 1 == 1))
        .filter(|w| w.is_preorder())
        .filter(|w| {
            let p =
                QuasiUniformity::generated_by(s.carrier().clone(), vec![w.clone()]).expect("preorders are entourages");
            tau(&p).opens() == s.opens()
        })
        .all(|w| q.base.iter().all(|u| w.is_subset(u)))
}

pub const CLAIM_TAU: &str = "tau-is-the-topology";
pub const CLAIM_TAU_INVERSE: &str = "tau-of-inverse-is-weak-lower";
pub const CLAIM_TAU_SYMMETRIC: &str = "tau-of-symmetrization-is-weak-patch";
pub const CLAIM_KERNEL: &str = "kernel-is-specialization";
pub const CLAIM_OPEN_BASE: &str = "open-way-below-base-generates-same-filter";
pub const CLAIM_COARSEST: &str = "coarsest-among-principal-quasi-uniformities";

/// Largest carrier for the base comparison and the coarsest check.
pub const COARSEST_BOUND: usize = 3;

pub fn audit_quasi_uniformities(n_bound: usize) -> Result<ClaimReport, StructError> {
    let mut spaces = Vec::new();
    for n in 1..=n_bound {
        spaces.extend(enumerate_topologies(n, false)?);
    }
    Ok(spaces
        .par_iter()
        .map(audit_space)
        .reduce(ClaimReport::default, ClaimReport::merge))
}

/// Every claim above for one space.
pub fn audit_space(s: &FinTopology) -> ClaimReport {
    let mut r = ClaimReport::default();
    let q = coarsest_quasi_uniformity(s);
    let spec = specialization_order(s);
    let what = || format!("{:?}", s.opens());
    r.record(CLAIM_TAU, tau(&q).opens() == s.opens(), what);
    let weak_lower = coselection_topology(&spec.dual(), CoselectionKind::Upsilon);
    let inv = tau(&q.invert());
    r.record(
        CLAIM_TAU_INVERSE,
        inv.opens() == weak_lower.opens() && inv.opens() == cocompact_topology(s).opens(),
        what,
    );
    let weak_patch = patch(s, CoselectionKind::Upsilon);
    r.record(
        CLAIM_TAU_SYMMETRIC,
        tau(&q.symmetrize()).opens() == weak_patch.topology().opens(),
        what,
    );
    r.record(CLAIM_KERNEL, &q.kernel() == spec.rel(), what);
    if s.n() <= COARSEST_BOUND {
        let same = open_way_below_quasi_uniformity(s)
            .map(|l| l.same_filter(&q))
            .unwrap_or(false);
        r.record(CLAIM_OPEN_BASE, same, what);
        r.record(CLAIM_COARSEST, is_coarsest(&q, s), what);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(bits: u32) -> PointSet {
        PointSet::from_bits(bits)
    }

    #[test]
    fn entourages() {
        assert_eq!(
            entourage(2, set(2), set(2)),
            Relation::from_pairs(2, [(0, 0), (0, 1), (1, 1)])
        );
        assert_eq!(entourage(3, set(0), set(1)), Relation::full(3));
        assert_eq!(entourage(3, set(5), set(7)), Relation::full(3));
    }

    #[test]
    fn sierpinski() {
        let s = FinTopology::sierpinski();
        let q = coarsest_quasi_uniformity(&s);
        let small = Relation::from_pairs(2, [(0, 0), (0, 1), (1, 1)]);
        assert_eq!(q.base(), &[small.clone(), Relation::full(2)]);
        assert_eq!(tau(&q).opens(), s.opens());
        assert_eq!(tau(&q.invert()).opens().members(), &[set(0), set(1), set(3)]);
        assert_eq!(tau(&q.symmetrize()).opens().len(), 4);
        assert_eq!(q.kernel(), small);
    }

    #[test]
    fn discrete_and_point() {
        let d = coarsest_quasi_uniformity(&FinTopology::discrete(Carrier::standard(2)));
        assert!(d.contains(&Relation::identity(2)));
        let one = coarsest_quasi_uniformity(&FinTopology::discrete(Carrier::standard(1)));
        assert_eq!(one.base(), &[Relation::full(1)]);
    }

    #[test]
    fn rejects_bad_bases() {
        let c = Carrier::standard(2);
        assert!(matches!(
            QuasiUniformity::generated_by(c.clone(), vec![]),
            Err(UniformityError::EmptyBase)
        ));
        let e = Relation::from_pairs(2, [(0, 0)]);
        assert!(matches!(
            QuasiUniformity::generated_by(c, vec![e]),
            Err(UniformityError::NotReflexive(_))
        ));
        let c3 = Carrier::standard(3);
        let path = Relation::from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]);
        assert!(matches!(
            QuasiUniformity::generated_by(c3, vec![path]),
            Err(UniformityError::NoSquareRoot(_))
        ));
    }

    #[test]
    fn audit_small() {
        let r = audit_quasi_uniformities(3).unwrap();
        assert!(r.is_clean(), "{r:?}");
        assert_eq!(r.claims[CLAIM_TAU].instances, 34);
        assert_eq!(r.claims[CLAIM_COARSEST].instances, 34);
    }
}

use super::relation::upper_sets_of;
use super::{Carrier, FinQoset, PointSet, Relation, SetFamily, StructError};

/// Why a family of sets is not a topology.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TopologyError {
    #[error("set {0} is not contained in the carrier")]
    OutOfCarrier(String),
    #[error("empty set missing")]
    MissingEmpty,
    #[error("whole carrier {0} missing")]
    MissingWhole(String),
    #[error("union {union} of {left} and {right} missing")]
    MissingUnion { left: String, right: String, union: String },
    #[error("intersection {meet} of {left} and {right} missing")]
    MissingIntersection { left: String, right: String, meet: String },
}

/// Finite topology, stored as the full family of open sets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinTopology {
    carrier: Carrier,
    opens: SetFamily,
    /// Least open neighbourhood of each point.
    cores: Vec<PointSet>,
}

pub fn validate_topology(carrier: &Carrier, family: SetFamily) -> Result<FinTopology, TopologyError> {
    let full = carrier.full();
    if let Some(s) = family.iter().find(|s| !s.is_subset(full)) {
        return Err(TopologyError::OutOfCarrier(format!("{:?}", s)));
    }
    if !family.contains(PointSet::EMPTY) {
        return Err(TopologyError::MissingEmpty);
    }
    if !family.contains(full) {
        return Err(TopologyError::MissingWhole(carrier.render(full)));
    }
    let m = family.members();
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            if !family.contains(a | b) {
                return Err(TopologyError::MissingUnion {
                    left: carrier.render(a),
                    right: carrier.render(b),
                    union: carrier.render(a | b),
                });
            }
            if !family.contains(a & b) {
                return Err(TopologyError::MissingIntersection {
                    left: carrier.render(a),
                    right: carrier.render(b),
                    meet: carrier.render(a & b),
                });
            }
        }
    }
    Ok(FinTopology::new_unchecked(carrier.clone(), family))
}

fn cores_of(n: usize, sets: &[PointSet]) -> Vec<PointSet> {
    (0..n)
        .map(|x| {
            sets.iter()
                .filter(|s| s.contains(x))
                .fold(PointSet::full(n), |a, &b| a & b)
        })
        .collect()
}

impl FinTopology {
    pub(crate) fn new_unchecked(carrier: Carrier, opens: SetFamily) -> Self {
        let cores = cores_of(carrier.len(), opens.members());
        FinTopology { carrier, opens, cores }
    }

    /// Topology generated by a subbase: finite intersections, then unions.
    pub fn generated_by(carrier: Carrier, subbase: impl IntoIterator<Item = PointSet>) -> Self {
        let n = carrier.len();
        let subbase: Vec<PointSet> = subbase.into_iter().map(|s| s & PointSet::full(n)).collect();
        // On a finite carrier the least neighbourhood of x is the intersection of
        // the subbasic sets containing x, and the opens are exactly its unions.
        let cores = cores_of(n, &subbase);
        let opens = upper_sets_of(&Relation::from_rows(cores.clone()));
        FinTopology { carrier, opens, cores }
    }

    /// All upper sets of a quasi-order.
    pub fn alexandroff(q: &FinQoset) -> Self {
        FinTopology::new_unchecked(q.carrier().clone(), q.upper_sets())
    }

    pub fn discrete(carrier: Carrier) -> Self {
        let n = carrier.len();
        FinTopology::generated_by(carrier, (0..n).map(PointSet::singleton))
    }

    pub fn indiscrete(carrier: Carrier) -> Self {
        let full = carrier.full();
        FinTopology::new_unchecked(carrier, SetFamily::new(vec![PointSet::EMPTY, full]))
    }

    /// Points `0, 1` with opens `{}, {1}, {0 1}`.
    pub fn sierpinski() -> Self {
        FinTopology::new_unchecked(
            Carrier::new(["0", "1"]).expect("static labels"),
            SetFamily::new(vec![PointSet::EMPTY, PointSet::singleton(1), PointSet::full(2)]),
        )
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn n(&self) -> usize {
        self.carrier.len()
    }

    pub fn full(&self) -> PointSet {
        self.carrier.full()
    }

    pub fn opens(&self) -> &SetFamily {
        &self.opens
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        self.opens.contains(s)
    }

    pub fn is_closed(&self, s: PointSet) -> bool {
        self.opens.contains(s.complement(self.n()))
    }

    pub fn closed_sets(&self) -> SetFamily {
        let n = self.n();
        self.opens.iter().map(|u| u.complement(n)).collect()
    }

    pub fn open_nbhds(&self, x: usize) -> impl Iterator<Item = PointSet> + '_ {
        self.opens.iter().filter(move |u| u.contains(x))
    }

    /// Largest open subset.
    pub fn interior(&self, s: PointSet) -> PointSet {
        self.opens
            .iter()
            .filter(|u| u.is_subset(s))
            .fold(PointSet::EMPTY, |a, b| a | b)
    }

    /// Least closed superset.
    pub fn closure(&self, s: PointSet) -> PointSet {
        let n = self.n();
        self.interior(s.complement(n)).complement(n)
    }

    /// Intersection of the open sets containing `x` (open, since there are finitely many).
    pub fn least_nbhd(&self, x: usize) -> PointSet {
        self.cores[x]
    }

    /// `rows[x]` = least neighbourhood of `x`.
    pub fn nbhd_relation(&self) -> Relation {
        Relation::from_rows(self.cores.clone())
    }

    /// Opens that are not unions of strictly smaller opens (the least base).
    pub fn join_irreducible_opens(&self) -> Vec<PointSet> {
        join_irreducibles(&self.opens)
    }

    /// Topology generated by both families of opens.
    pub fn join(&self, other: &FinTopology) -> FinTopology {
        FinTopology::generated_by(self.carrier.clone(), self.opens.iter().chain(other.opens.iter()))
    }

    pub fn is_coarser_than(&self, other: &FinTopology) -> bool {
        self.opens.iter().all(|u| other.is_open(u))
    }

    /// Same opens, relabelled carrier.
    pub fn with_carrier(&self, carrier: Carrier) -> FinTopology {
        assert_eq!(carrier.len(), self.n());
        FinTopology {
            carrier,
            opens: self.opens.clone(),
            cores: self.cores.clone(),
        }
    }

    pub fn map(&self, perm: &[usize]) -> SetFamily {
        self.opens.map(perm)
    }
}

/// Members of a union-closed family that are not unions of strictly smaller members.
pub fn join_irreducibles(family: &SetFamily) -> Vec<PointSet> {
    family
        .iter()
        .filter(|&u| {
            let below = family
                .iter()
                .filter(|&v| v != u && v.is_subset(u))
                .fold(PointSet::EMPTY, |a, b| a | b);
            !u.is_empty() && below != u
        })
        .collect()
}

impl From<TopologyError> for StructError {
    fn from(e: TopologyError) -> Self {
        StructError::Topology(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(bits: &[u32]) -> SetFamily {
        bits.iter().map(|&b| PointSet::from_bits(b)).collect()
    }

    #[test]
    fn validates_examples() {
        let c = Carrier::standard(2);
        assert!(validate_topology(&c, fam(&[0, 2, 3])).is_ok());
        assert!(validate_topology(&c, fam(&[0, 1, 2, 3])).is_ok());
        assert_eq!(validate_topology(&c, fam(&[2, 3])), Err(TopologyError::MissingEmpty));
        match validate_topology(&c, fam(&[0, 1, 2])) {
            Err(TopologyError::MissingWhole(_)) => {}
            other => panic!("{other:?}"),
        }
        match validate_topology(&c, fam(&[0, 1, 2, 3, 4])) {
            Err(TopologyError::OutOfCarrier(_)) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reports_union_witness() {
        let c = Carrier::standard(3);
        let err = validate_topology(&c, fam(&[0, 1, 2, 7])).unwrap_err();
        assert_eq!(
            err,
            TopologyError::MissingUnion {
                left: "{a}".into(),
                right: "{b}".into(),
                union: "{a b}".into()
            }
        );
    }

    #[test]
    fn generation_matches_naive_closure() {
        let c = Carrier::standard(4);
        let sub = [
            PointSet::from_bits(0b0011),
            PointSet::from_bits(0b0110),
            PointSet::from_bits(0b1000),
        ];
        let t = FinTopology::generated_by(c.clone(), sub);
        // naive: close under pairwise union and intersection, add {} and X
        let mut fam: Vec<PointSet> = sub.to_vec();
        fam.push(PointSet::EMPTY);
        fam.push(c.full());
        loop {
            let mut next = fam.clone();
            for &a in &fam {
                for &b in &fam {
                    next.push(a | b);
                    next.push(a & b);
                }
            }
            next.sort();
            next.dedup();
            if next.len() == fam.len() {
                break;
            }
            fam = next;
        }
        assert_eq!(t.opens().members(), &fam[..]);
    }

    #[test]
    fn interior_and_closure() {
        let s = FinTopology::sierpinski();
        assert_eq!(s.interior(PointSet::singleton(0)), PointSet::EMPTY);
        assert_eq!(s.closure(PointSet::singleton(1)), PointSet::full(2));
        assert_eq!(s.closure(PointSet::singleton(0)), PointSet::singleton(0));
        assert_eq!(
            s.join_irreducible_opens(),
            vec![PointSet::singleton(1), PointSet::full(2)]
        );
    }
}

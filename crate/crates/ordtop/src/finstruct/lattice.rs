use super::{Carrier, FinPoset, FinQoset, FinTopology, PointSet, Relation, SetFamily, StructError};

/// Finite bounded lattice with precomputed meet and join tables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinLattice {
    poset: FinPoset,
    meet: Vec<Vec<u8>>,
    join: Vec<Vec<u8>>,
    bottom: usize,
    top: usize,
}

impl FinLattice {
    pub fn from_poset(poset: FinPoset) -> Result<Self, StructError> {
        let n = poset.n();
        let mut meet = vec![vec![0u8; n]; n];
        let mut join = vec![vec![0u8; n]; n];
        for a in 0..n {
            for b in 0..n {
                let pair = PointSet::singleton(a).with(b);
                match (poset.meet(pair), poset.join(pair)) {
                    (Some(m), Some(j)) => {
                        meet[a][b] = m as u8;
                        join[a][b] = j as u8;
                    }
                    _ => {
                        return Err(StructError::NotALattice(
                            poset.carrier().name(a).to_string(),
                            poset.carrier().name(b).to_string(),
                        ))
                    }
                }
            }
        }
        let full = poset.carrier().full();
        let bottom = poset
            .meet(full)
            .ok_or(StructError::NotALattice("bottom".into(), "".into()))?;
        let top = poset
            .join(full)
            .ok_or(StructError::NotALattice("top".into(), "".into()))?;
        Ok(FinLattice {
            poset,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// Lattice of a union- and intersection-closed family ordered by inclusion.
    pub fn of_family(family: &SetFamily, labels: &Carrier) -> Result<Self, StructError> {
        let m = family.members();
        if m.len() > PointSet::CAPACITY {
            return Err(StructError::TooLarge {
                n: m.len(),
                max: PointSet::CAPACITY,
            });
        }
        let names: Vec<String> = m
            .iter()
            .map(|&s| {
                if s.is_empty() {
                    "_".to_string()
                } else {
                    labels.join_label(s)
                }
            })
            .collect();
        let carrier = Carrier::new(names)?;
        let rel = Relation::from_fn(m.len(), |i, j| m[i].is_subset(m[j]));
        FinLattice::from_poset(FinPoset::new_unchecked(FinQoset::new_unchecked(carrier, rel)))
    }

    pub fn chain(k: usize) -> Self {
        let q = FinQoset::chain(k);
        FinLattice::from_poset(FinPoset::new_unchecked(q)).expect("chains are lattices")
    }

    /// Boolean lattice of subsets of a `k`-set, elements indexed by bitmask.
    pub fn boolean(k: usize) -> Self {
        let m = 1usize << k;
        let rel = Relation::from_fn(m, |i, j| i & !j == 0);
        let q = FinQoset::new_unchecked(Carrier::standard(m), rel);
        FinLattice::from_poset(FinPoset::new_unchecked(q)).expect("boolean lattices are lattices")
    }

    /// `0 < a, b, c < 1`, labels `0 a b c 1`.
    pub fn m3() -> Self {
        Self::bounded(&["a", "b", "c"], &[])
    }

    /// `0 < a < b < 1`, `0 < c < 1`, labels `0 a b c 1`.
    pub fn n5() -> Self {
        Self::bounded(&["a", "b", "c"], &[(0, 1)])
    }

    /// Bottom `0`, the given middle elements, top `1`; `below` pairs index the middle list.
    pub fn bounded(middle: &[&str], below: &[(usize, usize)]) -> Self {
        let k = middle.len();
        let mut names = vec!["0".to_string()];
        names.extend(middle.iter().map(|s| s.to_string()));
        names.push("1".to_string());
        let carrier = Carrier::new(names).expect("distinct labels");
        let pairs = (0..k + 2)
            .map(|i| (0, i))
            .chain((0..k + 2).map(|i| (i, k + 1)))
            .chain(below.iter().map(|&(a, b)| (a + 1, b + 1)));
        let q = FinQoset::generated(carrier, pairs);
        FinLattice::from_poset(FinPoset::new(q).expect("acyclic")).expect("bounded lattice")
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    pub fn label(&self, x: usize) -> &str {
        self.poset.carrier().name(x)
    }

    pub fn render(&self, s: PointSet) -> String {
        self.poset.carrier().render(s)
    }

    pub fn all(&self) -> PointSet {
        self.poset.carrier().full()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b] as usize
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b] as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join_of(&self, s: PointSet) -> usize {
        s.iter().fold(self.bottom, |a, b| self.join(a, b))
    }

    pub fn meet_of(&self, s: PointSet) -> usize {
        s.iter().fold(self.top, |a, b| self.meet(a, b))
    }

    pub fn up(&self, x: usize) -> PointSet {
        self.poset.up(x)
    }

    pub fn down(&self, x: usize) -> PointSet {
        self.poset.down(x)
    }

    pub fn dual(&self) -> FinLattice {
        FinLattice {
            poset: self.poset.dual(),
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.n();
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))))
        })
    }
}

pub fn open_set_lattice(t: &FinTopology) -> Result<FinLattice, StructError> {
    FinLattice::of_family(t.opens(), t.carrier())
}

pub fn closed_set_lattice(t: &FinTopology) -> Result<FinLattice, StructError> {
    FinLattice::of_family(&t.closed_sets(), t.carrier())
}

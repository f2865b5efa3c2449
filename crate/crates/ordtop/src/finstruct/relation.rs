use std::fmt;

use super::{Carrier, PointSet, SetFamily, StructError};

/// Binary relation on `{0..n-1}`; `rows[x]` is the set of `y` with `x R y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    n: usize,
    rows: Vec<PointSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            rows: vec![PointSet::EMPTY; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Relation {
            n,
            rows: (0..n).map(PointSet::singleton).collect(),
        }
    }

    pub fn full(n: usize) -> Self {
        Relation {
            n,
            rows: vec![PointSet::full(n); n],
        }
    }

    pub fn from_rows(rows: Vec<PointSet>) -> Self {
        let n = rows.len();
        debug_assert!(rows.iter().all(|r| r.is_subset(PointSet::full(n))));
        Relation { n, rows }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Relation::empty(n);
        for (x, y) in pairs {
            r.rows[x].insert(y);
        }
        r
    }

    /// `(x, y) -> cond(x, y)` over the full square.
    pub fn from_fn(n: usize, cond: impl Fn(usize, usize) -> bool) -> Self {
        Relation {
            n,
            rows: (0..n)
                .map(|x| PointSet::from_indices((0..n).filter(|&y| cond(x, y))))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[PointSet] {
        &self.rows
    }

    pub fn holds(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.rows[x].insert(y);
    }

    /// `{y : x R y}`.
    pub fn succ(&self, x: usize) -> PointSet {
        self.rows[x]
    }

    /// `{x : x R y}`.
    pub fn pred(&self, y: usize) -> PointSet {
        PointSet::from_indices((0..self.n).filter(|&x| self.rows[x].contains(y)))
    }

    /// `{y : some x in s has x R y}`.
    pub fn image(&self, s: PointSet) -> PointSet {
        s.iter().fold(PointSet::EMPTY, |acc, x| acc | self.rows[x])
    }

    /// `{x : x R y for some y in s}`.
    pub fn preimage(&self, s: PointSet) -> PointSet {
        PointSet::from_indices((0..self.n).filter(|&x| self.rows[x].meets(s)))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |x| self.rows[x].iter().map(move |y| (x, y)))
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// `x (R;S) z` iff `x R y S z` for some `y`.
    pub fn compose(&self, other: &Relation) -> Relation {
        Relation {
            n: self.n,
            rows: self.rows.iter().map(|&r| other.image(r)).collect(),
        }
    }

    pub fn transpose(&self) -> Relation {
        Relation {
            n: self.n,
            rows: (0..self.n).map(|y| self.pred(y)).collect(),
        }
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        Relation {
            n: self.n,
            rows: self.rows.iter().zip(&other.rows).map(|(&a, &b)| a & b).collect(),
        }
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation {
            n: self.n,
            rows: self.rows.iter().zip(&other.rows).map(|(&a, &b)| a | b).collect(),
        }
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(&a, &b)| a.is_subset(b))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.rows[x].contains(x))
    }

    pub fn is_transitive(&self) -> bool {
        self.compose(self).is_subset(self)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.pairs().all(|(x, y)| x == y || !self.holds(y, x))
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    pub fn reflexive_transitive_closure(&self) -> Relation {
        let mut r = self.union(&Relation::identity(self.n));
        loop {
            let next = r.union(&r.compose(&r));
            if next == r {
                return r;
            }
            r = next;
        }
    }

    /// Relabel points: `(x, y)` becomes `(perm[x], perm[y])`.
    pub fn map(&self, perm: &[usize]) -> Relation {
        let mut rows = vec![PointSet::EMPTY; self.n];
        for x in 0..self.n {
            rows[perm[x]] = self.rows[x].map(perm);
        }
        Relation { n: self.n, rows }
    }

    /// Restriction to `sub`, reindexed in ascending order of `sub`.
    pub fn restrict(&self, sub: PointSet) -> Relation {
        let idx: Vec<usize> = sub.iter().collect();
        Relation::from_fn(idx.len(), |i, j| self.holds(idx[i], idx[j]))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// Upper sets of a preorder (given as `rows[x] = up(x)`), in canonical order.
pub fn upper_sets_of(rel: &Relation) -> SetFamily {
    let n = rel.n();
    // One representative per equivalence class, top classes first: a strictly
    // larger element has a strictly smaller up-set.
    let mut classes: Vec<(PointSet, PointSet)> = Vec::new();
    let mut seen = PointSet::EMPTY;
    for x in 0..n {
        if seen.contains(x) {
            continue;
        }
        let class = rel.succ(x) & rel.pred(x);
        seen = seen | class;
        classes.push((class, rel.succ(x) - class));
    }
    classes.sort_by_key(|(c, above)| (above.len(), c.bits()));
    let mut out = Vec::new();
    fn rec(classes: &[(PointSet, PointSet)], cur: PointSet, out: &mut Vec<PointSet>) {
        match classes.split_first() {
            None => out.push(cur),
            Some((&(class, above), rest)) => {
                rec(rest, cur, out);
                if above.is_subset(cur) {
                    rec(rest, cur | class, out);
                }
            }
        }
    }
    rec(&classes, PointSet::EMPTY, &mut out);
    SetFamily::new(out)
}

/// Quasi-ordered set: reflexive, transitive relation on a carrier.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinQoset {
    carrier: Carrier,
    rel: Relation,
}

impl FinQoset {
    pub fn new(carrier: Carrier, rel: Relation) -> Result<Self, StructError> {
        if rel.n() != carrier.len() {
            return Err(StructError::SizeMismatch);
        }
        if let Some(x) = (0..rel.n()).find(|&x| !rel.holds(x, x)) {
            return Err(StructError::NotReflexive(carrier.name(x).to_string()));
        }
        for (x, y) in rel.pairs() {
            if let Some(z) = (rel.succ(y) - rel.succ(x)).first() {
                return Err(StructError::NotTransitive(
                    carrier.name(x).to_string(),
                    carrier.name(y).to_string(),
                    carrier.name(z).to_string(),
                ));
            }
        }
        Ok(FinQoset { carrier, rel })
    }

    /// Reflexive-transitive closure of arbitrary generating pairs.
    pub fn generated(carrier: Carrier, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let rel = Relation::from_pairs(carrier.len(), pairs).reflexive_transitive_closure();
        FinQoset { carrier, rel }
    }

    pub(crate) fn new_unchecked(carrier: Carrier, rel: Relation) -> Self {
        debug_assert!(rel.is_preorder());
        FinQoset { carrier, rel }
    }

    pub fn discrete(carrier: Carrier) -> Self {
        let n = carrier.len();
        FinQoset {
            carrier,
            rel: Relation::identity(n),
        }
    }

    pub fn chain(n: usize) -> Self {
        FinQoset {
            carrier: Carrier::standard(n),
            rel: Relation::from_fn(n, |x, y| x <= y),
        }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn n(&self) -> usize {
        self.carrier.len()
    }

    pub fn rel(&self) -> &Relation {
        &self.rel
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.rel.holds(x, y)
    }

    pub fn up(&self, x: usize) -> PointSet {
        self.rel.succ(x)
    }

    pub fn down(&self, x: usize) -> PointSet {
        self.rel.pred(x)
    }

    pub fn up_set(&self, s: PointSet) -> PointSet {
        self.rel.image(s)
    }

    pub fn down_set(&self, s: PointSet) -> PointSet {
        self.rel.preimage(s)
    }

    pub fn is_upper(&self, s: PointSet) -> bool {
        self.up_set(s) == s
    }

    pub fn is_lower(&self, s: PointSet) -> bool {
        self.down_set(s) == s
    }

    pub fn is_partial_order(&self) -> bool {
        self.rel.is_antisymmetric()
    }

    pub fn dual(&self) -> FinQoset {
        FinQoset {
            carrier: self.carrier.clone(),
            rel: self.rel.transpose(),
        }
    }

    pub fn upper_sets(&self) -> SetFamily {
        upper_sets_of(&self.rel)
    }

    pub fn lower_sets(&self) -> SetFamily {
        upper_sets_of(&self.rel.transpose())
    }

    /// Lower bounds of `s` (all of `X` when `s` is empty).
    pub fn lower_bounds(&self, s: PointSet) -> PointSet {
        s.iter().fold(self.carrier.full(), |acc, x| acc & self.down(x))
    }

    pub fn upper_bounds(&self, s: PointSet) -> PointSet {
        s.iter().fold(self.carrier.full(), |acc, x| acc & self.up(x))
    }

    /// Least elements of `s` (an equivalence class, or empty).
    pub fn least_in(&self, s: PointSet) -> PointSet {
        s & self.lower_bounds(s)
    }

    pub fn greatest_in(&self, s: PointSet) -> PointSet {
        s & self.upper_bounds(s)
    }

    /// Least upper bounds of `s` (a class, or empty when there is none).
    pub fn joins(&self, s: PointSet) -> PointSet {
        self.least_in(self.upper_bounds(s))
    }

    pub fn meets(&self, s: PointSet) -> PointSet {
        self.greatest_in(self.lower_bounds(s))
    }

    /// Nonempty and every pair has an upper bound inside `s`.
    pub fn is_directed(&self, s: PointSet) -> bool {
        !s.is_empty() && s.iter().all(|x| s.iter().all(|y| (self.up(x) & self.up(y)).meets(s)))
    }

    /// Nonempty and every pair has a lower bound inside `s`.
    pub fn is_filtered(&self, s: PointSet) -> bool {
        !s.is_empty()
            && s.iter()
                .all(|x| s.iter().all(|y| (self.down(x) & self.down(y)).meets(s)))
    }

    pub fn is_ideal(&self, s: PointSet) -> bool {
        self.is_lower(s) && self.is_directed(s)
    }

    pub fn is_convex(&self, s: PointSet) -> bool {
        self.up_set(s) & self.down_set(s) == s
    }

    pub fn map(&self, perm: &[usize]) -> Relation {
        self.rel.map(perm)
    }
}

/// Antisymmetric quasi-order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinPoset(FinQoset);

impl FinPoset {
    pub fn new(q: FinQoset) -> Result<Self, StructError> {
        let rel = q.rel();
        if let Some((x, y)) = rel.pairs().find(|&(x, y)| x != y && rel.holds(y, x)) {
            return Err(StructError::NotAntisymmetric(
                q.carrier().name(x).to_string(),
                q.carrier().name(y).to_string(),
            ));
        }
        Ok(FinPoset(q))
    }

    pub(crate) fn new_unchecked(q: FinQoset) -> Self {
        debug_assert!(q.is_partial_order());
        FinPoset(q)
    }

    pub fn qoset(&self) -> &FinQoset {
        &self.0
    }

    pub fn into_qoset(self) -> FinQoset {
        self.0
    }

    /// The unique supremum of `s`, if any.
    pub fn join(&self, s: PointSet) -> Option<usize> {
        self.0.joins(s).first()
    }

    pub fn meet(&self, s: PointSet) -> Option<usize> {
        self.0.meets(s).first()
    }

    pub fn dual(&self) -> FinPoset {
        FinPoset(self.0.dual())
    }
}

impl std::ops::Deref for FinPoset {
    type Target = FinQoset;
    fn deref(&self) -> &FinQoset {
        &self.0
    }
}

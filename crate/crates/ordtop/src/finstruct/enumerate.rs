use std::collections::BTreeMap;

use itertools::Itertools;

use super::{Carrier, FinLattice, FinPoset, FinQoset, FinTopology, PointSet, Relation, StructError};

pub const MAX_ENUM_TOPOLOGY: usize = 5;
pub const MAX_ENUM_POSET: usize = 6;
pub const MAX_ENUM_LATTICE: usize = 7;

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

/// Labeled preorders on `n` points, built one point at a time: a new top index
/// `z` is attached below an upper set `U` and above a lower set `D` with
/// `D x U` already inside the order.
fn extend_preorders(n: usize, antisymmetric: bool) -> Vec<Relation> {
    let mut level = vec![Relation::empty(0)];
    for k in 0..n {
        let mut next = Vec::new();
        for r in &level {
            let q = r.reflexive_transitive_closure();
            let ups = super::relation::upper_sets_of(&q);
            let downs = super::relation::upper_sets_of(&q.transpose());
            for d in downs.iter() {
                let allowed = d.iter().fold(PointSet::full(k), |a, x| a & q.succ(x));
                for u in ups.iter().filter(|u| u.is_subset(allowed)) {
                    if antisymmetric && d.meets(u) {
                        continue;
                    }
                    let mut rows: Vec<PointSet> = q.rows().to_vec();
                    for x in d.iter() {
                        rows[x].insert(k);
                    }
                    rows.push(u.with(k));
                    next.push(Relation::from_rows(rows));
                }
            }
        }
        level = next;
    }
    level
}

fn check_bound(n: usize, max: usize) -> Result<(), StructError> {
    if n == 0 || n > max {
        Err(StructError::EnumerationBound { n, max })
    } else {
        Ok(())
    }
}

/// Lexicographically least image of a relation under relabelling.
pub fn canonical_relation(r: &Relation, perms: &[Vec<usize>]) -> Relation {
    perms.iter().map(|p| r.map(p)).min().expect("at least one permutation")
}

/// Every topology on `n` labeled points exactly once, sorted by open-set family.
/// With `upto_iso`, one representative per homeomorphism class.
pub fn enumerate_topologies(n: usize, upto_iso: bool) -> Result<Vec<FinTopology>, StructError> {
    check_bound(n, MAX_ENUM_TOPOLOGY)?;
    let mut rels = extend_preorders(n, false);
    if upto_iso {
        let perms = permutations(n);
        rels = rels.iter().map(|r| canonical_relation(r, &perms)).collect();
        rels.sort();
        rels.dedup();
    }
    let carrier = Carrier::standard(n);
    let mut out: Vec<FinTopology> = rels
        .into_iter()
        .map(|r| FinTopology::alexandroff(&FinQoset::new_unchecked(carrier.clone(), r)))
        .collect();
    out.sort_by(|a, b| a.opens().members().cmp(b.opens().members()));
    Ok(out)
}

/// Every quasi-order on `n` labeled points, sorted by relation rows.
pub fn enumerate_qosets(n: usize) -> Result<Vec<FinQoset>, StructError> {
    check_bound(n, MAX_ENUM_TOPOLOGY)?;
    let carrier = Carrier::standard(n);
    let mut rels = extend_preorders(n, false);
    rels.sort();
    Ok(rels
        .into_iter()
        .map(|r| FinQoset::new_unchecked(carrier.clone(), r))
        .collect())
}

/// Every partial order on `n` labeled points, sorted by relation rows.
pub fn enumerate_posets(n: usize) -> Result<Vec<FinPoset>, StructError> {
    check_bound(n, MAX_ENUM_POSET)?;
    let carrier = Carrier::standard(n);
    let mut rels = extend_preorders(n, true);
    rels.sort();
    Ok(rels
        .into_iter()
        .map(|r| FinPoset::new_unchecked(FinQoset::new_unchecked(carrier.clone(), r)))
        .collect())
}

/// Partial orders up to isomorphism.
pub fn enumerate_posets_upto_iso(n: usize) -> Result<Vec<FinPoset>, StructError> {
    check_bound(n, MAX_ENUM_POSET)?;
    let perms = permutations(n);
    let carrier = Carrier::standard(n);
    let mut rels: Vec<Relation> = extend_preorders(n, true)
        .iter()
        .map(|r| canonical_relation(r, &perms))
        .collect();
    rels.sort();
    rels.dedup();
    Ok(rels
        .into_iter()
        .map(|r| FinPoset::new_unchecked(FinQoset::new_unchecked(carrier.clone(), r)))
        .collect())
}

/// All lattices with exactly `m` elements, up to isomorphism. Labels are `0`
/// (bottom), `a, b, ...` (the rest) and `1` (top).
pub fn enumerate_lattices(m: usize) -> Result<Vec<FinLattice>, StructError> {
    check_bound(m, MAX_ENUM_LATTICE)?;
    if m == 1 {
        let q = FinQoset::discrete(Carrier::new(["0"])?);
        return Ok(vec![FinLattice::from_poset(FinPoset::new_unchecked(q))?]);
    }
    let k = m - 2;
    let perms = permutations(k);
    let mut names = vec!["0".to_string()];
    names.extend(Carrier::standard(k.max(1)).names().iter().take(k).cloned());
    names.push("1".to_string());
    let carrier = Carrier::new(names)?;
    let mut found: BTreeMap<Relation, FinLattice> = BTreeMap::new();
    for mid in extend_preorders(k, true) {
        let key = canonical_relation(&mid, &perms);
        if found.contains_key(&key) {
            continue;
        }
        let rel = Relation::from_fn(m, |x, y| {
            x == 0 || y == m - 1 || (x > 0 && y > 0 && x < m - 1 && y < m - 1 && key.holds(x - 1, y - 1))
        });
        let poset = FinPoset::new_unchecked(FinQoset::new_unchecked(carrier.clone(), rel));
        if let Ok(l) = FinLattice::from_poset(poset) {
            found.insert(key, l);
        }
    }
    Ok(found.into_values().collect())
}

/// All lattices with at most `m` elements.
pub fn enumerate_lattices_upto(m: usize) -> Result<Vec<FinLattice>, StructError> {
    let mut out = Vec::new();
    for k in 1..=m {
        out.extend(enumerate_lattices(k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let topo: Vec<usize> = (1..=4).map(|n| enumerate_topologies(n, false).unwrap().len()).collect();
        assert_eq!(topo, vec![1, 4, 29, 355]);
        let posets: Vec<usize> = (1..=4).map(|n| enumerate_posets(n).unwrap().len()).collect();
        assert_eq!(posets, vec![1, 3, 19, 219]);
        let iso: Vec<usize> = (1..=4).map(|n| enumerate_topologies(n, true).unwrap().len()).collect();
        assert_eq!(iso, vec![1, 3, 9, 33]);
        let lat: Vec<usize> = (1..=6).map(|m| enumerate_lattices(m).unwrap().len()).collect();
        assert_eq!(lat, vec![1, 1, 1, 2, 5, 15]);
    }

    #[test]
    fn bounds() {
        assert!(enumerate_topologies(0, false).is_err());
        assert!(enumerate_topologies(6, false).is_err());
        assert!(enumerate_posets(7).is_err());
    }
}

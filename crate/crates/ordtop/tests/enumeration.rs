use std::collections::BTreeSet;

use ordtop::explorer::enumerate_ordered_spaces;
use ordtop::finstruct::{
    closed_set_lattice, enumerate_lattices, enumerate_posets, enumerate_posets_upto_iso, enumerate_qosets,
    enumerate_topologies, open_set_lattice, validate_topology, Carrier, PointSet, SetFamily,
};

/// Every family of subsets of `n` points that contains both extremes and is
/// closed under binary unions and intersections, as sorted bitmask lists.
fn naive_topologies(n: usize) -> BTreeSet<Vec<u32>> {
    let subsets = 1usize << n;
    let full = (subsets - 1) as u32;
    let mut out = BTreeSet::new();
    for fam in 0u64..1 << subsets {
        let has = |s: u32| fam >> s & 1 == 1;
        if !has(0) || !has(full) {
            continue;
        }
        let members: Vec<u32> = (0..subsets as u32).filter(|&s| has(s)).collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| has(a | b) && has(a & b)));
        if closed {
            out.insert(members);
        }
    }
    out
}

fn relations(n: usize) -> impl Iterator<Item = Vec<Vec<bool>>> {
    (0u64..1 << (n * n)).map(move |bits| {
        (0..n)
            .map(|x| (0..n).map(|y| bits >> (x * n + y) & 1 == 1).collect())
            .collect()
    })
}

fn is_preorder(r: &[Vec<bool>]) -> bool {
    let n = r.len();
    (0..n).all(|x| r[x][x]) && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(r[x][y] && r[y][z]) || r[x][z])))
}

fn is_antisymmetric(r: &[Vec<bool>]) -> bool {
    let n = r.len();
    (0..n).all(|x| (0..n).all(|y| x == y || !(r[x][y] && r[y][x])))
}

fn bits_of(fam: &SetFamily) -> Vec<u32> {
    fam.iter().map(PointSet::bits).collect()
}

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn permute_set(s: u32, p: &[usize]) -> u32 {
    (0..p.len()).filter(|&i| s >> i & 1 == 1).fold(0, |a, i| a | 1 << p[i])
}

fn canonical_family(fam: &[u32], ps: &[Vec<usize>]) -> Vec<u32> {
    ps.iter()
        .map(|p| {
            let mut v: Vec<u32> = fam.iter().map(|&s| permute_set(s, p)).collect();
            v.sort_unstable();
            v
        })
        .min()
        .unwrap()
}

#[test]
fn labeled_topologies_match_naive_filter() {
    for (n, expected) in [(1, 1), (2, 4), (3, 29), (4, 355)] {
        let naive = naive_topologies(n);
        let ours: BTreeSet<Vec<u32>> = enumerate_topologies(n, false)
            .unwrap()
            .iter()
            .map(|t| bits_of(t.opens()))
            .collect();
        assert_eq!(naive.len(), expected);
        assert_eq!(ours, naive, "n = {n}");
    }
}

#[test]
fn labeled_orders_match_naive_filter() {
    for (n, qosets, posets) in [(1, 1, 1), (2, 4, 3), (3, 29, 19), (4, 355, 219)] {
        let pre: Vec<_> = relations(n).filter(|r| is_preorder(r)).collect();
        let part = pre.iter().filter(|r| is_antisymmetric(r)).count();
        assert_eq!((pre.len(), part), (qosets, posets));
        assert_eq!(enumerate_qosets(n).unwrap().len(), qosets);
        assert_eq!(enumerate_posets(n).unwrap().len(), posets);
    }
}

#[test]
fn topologies_up_to_homeomorphism() {
    for (n, expected) in [(1, 1), (2, 3), (3, 9), (4, 33)] {
        let ps = perms(n);
        let classes: BTreeSet<Vec<u32>> = naive_topologies(n).iter().map(|f| canonical_family(f, &ps)).collect();
        assert_eq!(classes.len(), expected);
        assert_eq!(enumerate_topologies(n, true).unwrap().len(), expected);
    }
    assert_eq!(enumerate_topologies(5, true).unwrap().len(), 139);
}

#[test]
fn posets_and_lattices_up_to_iso() {
    for (n, expected) in [(1, 1), (2, 2), (3, 5), (4, 16), (5, 63)] {
        assert_eq!(enumerate_posets_upto_iso(n).unwrap().len(), expected);
    }
    for (m, expected) in [(1, 1), (2, 1), (3, 1), (4, 2), (5, 5), (6, 15), (7, 53)] {
        assert_eq!(enumerate_lattices(m).unwrap().len(), expected, "m = {m}");
    }
}

#[test]
fn lattice_count_matches_naive_filter() {
    // order relations on m points with a join for every pair, up to relabeling
    for (m, expected) in [(1, 1), (2, 1), (3, 1), (4, 2), (5, 5)] {
        let ps = perms(m);
        let mut classes = BTreeSet::new();
        for r in relations(m).filter(|r| is_preorder(r) && is_antisymmetric(r)) {
            let joins = (0..m).all(|a| {
                (0..m).all(|b| {
                    let ub: Vec<usize> = (0..m).filter(|&z| r[a][z] && r[b][z]).collect();
                    ub.iter().any(|&j| ub.iter().all(|&z| r[j][z]))
                })
            });
            let bottom = (0..m).any(|x| (0..m).all(|y| r[x][y]));
            if joins && bottom {
                let down: Vec<u32> = (0..m)
                    .map(|y| (0..m).filter(|&x| r[x][y]).fold(0, |a, x| a | 1 << x))
                    .collect();
                classes.insert(canonical_family(&down, &ps));
            }
        }
        assert_eq!(classes.len(), expected, "m = {m}");
    }
}

#[test]
fn validator_accepts_every_enumerated_topology() {
    for n in 1..=4 {
        for t in enumerate_topologies(n, false).unwrap() {
            let again = validate_topology(t.carrier(), t.opens().clone()).unwrap();
            assert_eq!(again.opens(), t.opens());
        }
    }
}

#[test]
fn open_and_closed_lattices_are_anti_isomorphic() {
    for n in 1..=4 {
        for t in enumerate_topologies(n, false).unwrap() {
            let opens = open_set_lattice(&t).unwrap();
            let closed = closed_set_lattice(&t).unwrap();
            assert_eq!(opens.n(), closed.n());
            let sets: Vec<PointSet> = t.opens().members().to_vec();
            let comp: Vec<PointSet> = sets.iter().map(|s| s.complement(n)).collect();
            let pos = |s: PointSet| t.closed_sets().members().iter().position(|&c| c == s).unwrap();
            for a in 0..sets.len() {
                for b in 0..sets.len() {
                    let opens_leq = sets[a].is_subset(sets[b]);
                    assert_eq!(opens_leq, opens.leq(a, b));
                    assert_eq!(opens_leq, closed.leq(pos(comp[b]), pos(comp[a])));
                }
            }
        }
    }
}

/// Burnside: classes of (topology, preorder) pairs under relabeling.
fn burnside_ordered_spaces(n: usize) -> usize {
    let tops: Vec<Vec<u32>> = naive_topologies(n).into_iter().collect();
    let pres: Vec<Vec<u32>> = relations(n)
        .filter(|r| is_preorder(r))
        .map(|r| {
            (0..n)
                .map(|x| (0..n).filter(|&y| r[x][y]).fold(0, |a, y| a | 1 << y))
                .collect()
        })
        .collect();
    let ps = perms(n);
    let fixed_top = |p: &[usize], f: &Vec<u32>| {
        let mut v: Vec<u32> = f.iter().map(|&s| permute_set(s, p)).collect();
        v.sort_unstable();
        &v == f
    };
    let fixed_rel = |p: &[usize], rows: &Vec<u32>| (0..n).all(|x| rows[p[x]] == permute_set(rows[x], p));
    let total: usize = ps
        .iter()
        .map(|p| tops.iter().filter(|f| fixed_top(p, f)).count() * pres.iter().filter(|r| fixed_rel(p, r)).count())
        .sum();
    assert_eq!(total % ps.len(), 0);
    total / ps.len()
}

#[test]
fn ordered_space_counts() {
    for n in 1..=4 {
        let labeled = enumerate_ordered_spaces(n, false).unwrap().len();
        let tops = naive_topologies(n).len();
        let qosets = relations(n).filter(|r| is_preorder(r)).count();
        assert_eq!(labeled, tops * qosets);
        assert_eq!(
            enumerate_ordered_spaces(n, true).unwrap().len(),
            burnside_ordered_spaces(n),
            "n = {n}"
        );
    }
}

#[test]
fn enumeration_is_labeled_on_standard_carriers() {
    for t in enumerate_topologies(3, false).unwrap() {
        assert_eq!(t.carrier(), &Carrier::standard(3));
    }
}

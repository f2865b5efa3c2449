//! Distributive laws and spectral notions on finite lattices.
//!
//! Every law has its own checker written from its definition; on finite
//! lattices most of them coincide, and the agreement is what the tests check.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::finstruct::{enumerate_lattices_upto, FinLattice, FinTopology, PointSet, StructError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawWitness {
    pub elements: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawProfile {
    pub frame: bool,
    pub coframe: bool,
    pub wide_frame: bool,
    pub wide_coframe: bool,
    pub completely_distributive: bool,
    pub spatial: bool,
    pub weakly_atomic: bool,
    pub superalgebraic: bool,
    pub meet_continuous: bool,
    pub continuous: bool,
    pub witnesses: BTreeMap<&'static str, LawWitness>,
}

fn labels(l: &FinLattice, s: PointSet) -> Vec<String> {
    s.iter().map(|x| l.label(x).to_string()).collect()
}

/// `x ∧ ⋁Y = ⋁{x ∧ y : y ∈ Y}` for every element `x` and lower set `Y`.
pub fn frame_law(l: &FinLattice) -> Result<(), LawWitness> {
    restricted_frame_law(l, |_| true)
}

fn restricted_frame_law(l: &FinLattice, admit: impl Fn(PointSet) -> bool) -> Result<(), LawWitness> {
    for ys in l.poset().lower_sets().iter().filter(|&y| admit(y)) {
        let sup = l.join_of(ys);
        for x in 0..l.n() {
            let lhs = l.meet(x, sup);
            let rhs = ys.iter().fold(l.bottom(), |a, y| l.join(a, l.meet(x, y)));
            if lhs != rhs {
                return Err(LawWitness {
                    elements: std::iter::once(l.label(x).to_string()).chain(labels(l, ys)).collect(),
                    detail: format!(
                        "{} ∧ ⋁{} = {} but ⋁ of the meets is {}",
                        l.label(x),
                        l.render(ys),
                        l.label(lhs),
                        l.label(rhs)
                    ),
                });
            }
        }
    }
    Ok(())
}

/// The order dual of the frame law, over upper sets.
pub fn coframe_law(l: &FinLattice) -> Result<(), LawWitness> {
    for ys in l.poset().upper_sets().iter() {
        let inf = l.meet_of(ys);
        for x in 0..l.n() {
            let lhs = l.join(x, inf);
            let rhs = ys.iter().fold(l.top(), |a, y| l.meet(a, l.join(x, y)));
            if lhs != rhs {
                return Err(LawWitness {
                    elements: std::iter::once(l.label(x).to_string()).chain(labels(l, ys)).collect(),
                    detail: format!(
                        "{} ∨ ⋀{} = {} but ⋀ of the joins is {}",
                        l.label(x),
                        l.render(ys),
                        l.label(lhs),
                        l.label(rhs)
                    ),
                });
            }
        }
    }
    Ok(())
}

/// `x ⊲ y`: every lower set whose join is above `y` contains `x`.
pub fn totally_below(l: &FinLattice) -> Vec<PointSet> {
    let lowers = l.poset().lower_sets();
    (0..l.n())
        .map(|y| {
            lowers
                .iter()
                .filter(|&s| l.leq(y, l.join_of(s)))
                .fold(l.all(), |acc, s| acc & s)
        })
        .collect()
}

/// Complete distributivity as `y = ⋁{x : x ⊲ y}` for every `y`.
pub fn completely_distributive_law(l: &FinLattice) -> Result<(), LawWitness> {
    let tb = totally_below(l);
    match (0..l.n()).find(|&y| l.join_of(tb[y]) != y) {
        None => Ok(()),
        Some(y) => Err(LawWitness {
            elements: vec![l.label(y).to_string()],
            detail: format!(
                "{} is not the join of {} (its totally below elements)",
                l.label(y),
                l.render(tb[y])
            ),
        }),
    }
}

/// Finite subsets used by the wide laws: all subsets when that is cheap,
/// otherwise the antichains (maximal or minimal elements of lower/upper sets),
/// which impose the same constraints.
fn finite_sets(l: &FinLattice, lower: bool) -> Vec<PointSet> {
    if l.n() <= 16 {
        return l.all().subsets().collect();
    }
    let q = l.poset();
    if lower {
        q.lower_sets()
            .iter()
            .map(|s| q.greatest_in(s) | (s - q.down_set(s - q.greatest_in(s)) - s))
            .collect()
    } else {
        q.upper_sets().iter().collect()
    }
}

/// `x ⊣ y`: `x ∈ ↓F` for every finite `F` with `y ≤ ⋁F`.
pub fn dashv_below(l: &FinLattice) -> Vec<PointSet> {
    let mut allowed = vec![l.all(); l.n()];
    for f in finite_sets(l, true) {
        let (sup, down) = (l.join_of(f), l.poset().down_set(f));
        for (y, a) in allowed.iter_mut().enumerate() {
            if l.leq(y, sup) {
                *a = *a & down;
            }
        }
    }
    allowed
}

/// Wide coframe: every `y` is the join of the `x ⊣ y`.
pub fn wide_coframe_law(l: &FinLattice) -> Result<(), LawWitness> {
    let d = dashv_below(l);
    match (0..l.n()).find(|&y| l.join_of(d[y]) != y) {
        None => Ok(()),
        Some(y) => Err(LawWitness {
            elements: vec![l.label(y).to_string()],
            detail: format!("{} is not the join of {}", l.label(y), l.render(d[y])),
        }),
    }
}

/// Wide frame: for `x ≰ y` some `z ≱ x` lies in `↑G` for every finite `G` with `⋀G ≤ y`.
pub fn wide_frame_law(l: &FinLattice) -> Result<(), LawWitness> {
    let mut allowed = vec![l.all(); l.n()];
    for g in finite_sets(l, false) {
        let (inf, up) = (l.meet_of(g), l.poset().up_set(g));
        for (y, a) in allowed.iter_mut().enumerate() {
            if l.leq(inf, y) {
                *a = *a & up;
            }
        }
    }
    for x in 0..l.n() {
        for (y, row) in allowed.iter().enumerate() {
            if !l.leq(x, y) && !row.iter().any(|z| !l.leq(x, z)) {
                return Err(LawWitness {
                    elements: vec![l.label(x).to_string(), l.label(y).to_string()],
                    detail: format!(
                        "no z with {} ≰ z separates {} from {}",
                        l.label(x),
                        l.label(x),
                        l.label(y)
                    ),
                });
            }
        }
    }
    Ok(())
}

/// Meet-continuity: the frame law restricted to ideals.
pub fn meet_continuous_law(l: &FinLattice) -> Result<(), LawWitness> {
    restricted_frame_law(l, |s| l.poset().is_directed(s))
}

/// Continuity: every `y` is the join of the elements way below it, where
/// `x ≪ y` means every ideal with join above `y` contains `x`.
pub fn continuous_law(l: &FinLattice) -> Result<(), LawWitness> {
    let q = l.poset();
    let ideals: Vec<PointSet> = q.lower_sets().iter().filter(|&s| q.is_directed(s)).collect();
    for y in 0..l.n() {
        let wb = ideals
            .iter()
            .filter(|&&d| l.leq(y, l.join_of(d)))
            .fold(l.all(), |a, &d| a & d);
        if l.join_of(wb) != y {
            return Err(LawWitness {
                elements: vec![l.label(y).to_string()],
                detail: format!(
                    "{} is not the join of {} (its way below elements)",
                    l.label(y),
                    l.render(wb)
                ),
            });
        }
    }
    Ok(())
}

/// Literal identity `⋀{⋁Y : Y ∈ 𝒴} = ⋁⋂𝒴` over every collection of lower sets.
/// `None` when the lattice has more than 16 lower sets.
pub fn literal_complete_distributivity(l: &FinLattice) -> Option<bool> {
    let lowers: Vec<PointSet> = l.poset().lower_sets().into_members();
    if lowers.len() > 16 {
        return None;
    }
    let total = 1u32 << lowers.len();
    Some((0..total).all(|mask| {
        let coll = PointSet::from_bits(mask);
        let lhs = coll.iter().fold(l.top(), |a, i| l.meet(a, l.join_of(lowers[i])));
        let common = coll.iter().fold(l.all(), |a, i| a & lowers[i]);
        lhs == l.join_of(common)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralProfile {
    pub primes: Vec<String>,
    pub coprimes: Vec<String>,
    pub supercompact: Vec<String>,
    pub jumps: Vec<(String, String)>,
    pub spatial: bool,
    pub superalgebraic: bool,
    pub weakly_atomic: bool,
    #[serde(skip)]
    pub sets: SpectralSets,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SpectralSets {
    pub primes: PointSet,
    pub coprimes: PointSet,
    pub supercompact: PointSet,
}

/// `p ≠ 1` with `a ∧ b ≤ p ⇒ a ≤ p or b ≤ p`.
pub fn is_prime(l: &FinLattice, p: usize) -> bool {
    let n = l.n();
    p != l.top() && (0..n).all(|a| (0..n).all(|b| !l.leq(l.meet(a, b), p) || l.leq(a, p) || l.leq(b, p)))
}

pub fn is_coprime(l: &FinLattice, c: usize) -> bool {
    let n = l.n();
    c != l.bottom() && (0..n).all(|a| (0..n).all(|b| !l.leq(c, l.join(a, b)) || l.leq(c, a) || l.leq(c, b)))
}

/// `L ∖ ↑q` is a principal ideal.
pub fn is_supercompact(l: &FinLattice, q: usize) -> bool {
    let rest = l.all() - l.up(q);
    (0..l.n()).any(|p| l.down(p) == rest)
}

pub fn spectral_profile(l: &FinLattice) -> SpectralProfile {
    let n = l.n();
    let pick = |f: &dyn Fn(usize) -> bool| PointSet::from_indices((0..n).filter(|&x| f(x)));
    let primes = pick(&|p| is_prime(l, p));
    let coprimes = pick(&|c| is_coprime(l, c));
    let supercompact = pick(&|q| is_supercompact(l, q));
    let jumps: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v && l.leq(u, v) && (0..n).all(|w| w == u || w == v || !(l.leq(u, w) && l.leq(w, v))))
        .collect();
    let spatial = (0..n).all(|x| l.meet_of(primes & l.up(x)) == x);
    let superalgebraic = (0..n).all(|x| l.join_of(supercompact & l.down(x)) == x);
    let weakly_atomic = (0..n)
        .all(|x| (0..n).all(|y| x == y || !l.leq(x, y) || jumps.iter().any(|&(u, v)| l.leq(x, u) && l.leq(v, y))));
    let names = |s: PointSet| s.iter().map(|x| l.label(x).to_string()).collect();
    SpectralProfile {
        primes: names(primes),
        coprimes: names(coprimes),
        supercompact: names(supercompact),
        jumps: jumps
            .iter()
            .map(|&(u, v)| (l.label(u).to_string(), l.label(v).to_string()))
            .collect(),
        spatial,
        superalgebraic,
        weakly_atomic,
        sets: SpectralSets {
            primes,
            coprimes,
            supercompact,
        },
    }
}

pub fn law_profile(l: &FinLattice) -> LawProfile {
    let mut witnesses = BTreeMap::new();
    let mut flag = |name: &'static str, r: Result<(), LawWitness>| match r {
        Ok(()) => true,
        Err(w) => {
            witnesses.insert(name, w);
            false
        }
    };
    let frame = flag("frame", frame_law(l));
    let coframe = flag("coframe", coframe_law(l));
    let wide_frame = flag("wide_frame", wide_frame_law(l));
    let wide_coframe = flag("wide_coframe", wide_coframe_law(l));
    let completely_distributive = flag("completely_distributive", completely_distributive_law(l));
    let meet_continuous = flag("meet_continuous", meet_continuous_law(l));
    let continuous = flag("continuous", continuous_law(l));
    let sp = spectral_profile(l);
    let n = l.n();
    if !sp.spatial {
        let x = (0..n)
            .find(|&x| l.meet_of(sp.sets.primes & l.up(x)) != x)
            .expect("a non-spatial element");
        witnesses.insert(
            "spatial",
            LawWitness {
                elements: vec![l.label(x).to_string()],
                detail: "not a meet of primes".into(),
            },
        );
    }
    if !sp.superalgebraic {
        let x = (0..n)
            .find(|&x| l.join_of(sp.sets.supercompact & l.down(x)) != x)
            .expect("a witness");
        witnesses.insert(
            "superalgebraic",
            LawWitness {
                elements: vec![l.label(x).to_string()],
                detail: "not a join of supercompact elements".into(),
            },
        );
    }
    if !sp.weakly_atomic {
        witnesses.insert(
            "weakly_atomic",
            LawWitness {
                elements: vec![],
                detail: "an interval without jumps".into(),
            },
        );
    }
    let distributive = l.is_distributive();
    assert!(
        frame == coframe && coframe == completely_distributive && frame == distributive,
        "finite distributivity checkers disagree: frame {frame}, coframe {coframe}, cd {completely_distributive}, distributive {distributive}"
    );
    assert!(!completely_distributive || (wide_frame && wide_coframe && meet_continuous && continuous));
    LawProfile {
        frame,
        coframe,
        wide_frame,
        wide_coframe,
        completely_distributive,
        spatial: sp.spatial,
        weakly_atomic: sp.weakly_atomic,
        superalgebraic: sp.superalgebraic,
        meet_continuous,
        continuous,
        witnesses,
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LatticeAuditReport {
    pub checked: usize,
    pub skipped: usize,
    pub violations: Vec<String>,
}

fn describe(l: &FinLattice) -> String {
    let covers: Vec<String> = (0..l.n())
        .flat_map(|u| (0..l.n()).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v && l.leq(u, v))
        .map(|(u, v)| format!("{}<={}", l.label(u), l.label(v)))
        .collect();
    format!("lattice [{}]", covers.join(", "))
}

/// Frames are weakly atomic and spatial; frames that are also coframes are superalgebraic.
pub fn audit_lemma_1_1(n_bound: usize) -> Result<LatticeAuditReport, StructError> {
    let mut report = LatticeAuditReport::default();
    for l in enumerate_lattices_upto(n_bound)? {
        let p = law_profile(&l);
        if !p.frame {
            report.skipped += 1;
            continue;
        }
        report.checked += 1;
        if !(p.weakly_atomic && p.spatial) {
            report
                .violations
                .push(format!("frame not weakly atomic and spatial: {}", describe(&l)));
        }
        if p.coframe && !p.superalgebraic {
            report
                .violations
                .push(format!("frame and coframe not superalgebraic: {}", describe(&l)));
        }
    }
    Ok(report)
}

/// Weak upper topology: generated by the complements of principal ideals.
pub fn weak_upper_space(l: &FinLattice) -> FinTopology {
    let c = l.poset().carrier().clone();
    let sub: Vec<PointSet> = (0..l.n()).map(|x| l.all() - l.down(x)).collect();
    FinTopology::generated_by(c, sub)
}

/// For distributive lattices: frame, wide frame and complete distributivity of
/// `L` match web, wide web and C-space of the weak upper space. Non-distributive
/// lattices are outside the hypothesis and are skipped.
pub fn audit_example_1_1(n_bound: usize) -> Result<LatticeAuditReport, StructError> {
    let mut report = LatticeAuditReport::default();
    for l in enumerate_lattices_upto(n_bound)? {
        if !l.is_distributive() {
            report.skipped += 1;
            continue;
        }
        report.checked += 1;
        let p = law_profile(&l);
        let s = weak_upper_space(&l);
        let pairs = [
            ("frame/web", p.frame, crate::classify::is_web(&s)),
            ("wide frame/wide web", p.wide_frame, crate::classify::is_wide_web(&s)),
            (
                "completely distributive/C-space",
                p.completely_distributive,
                crate::classify::is_c_space(&s),
            ),
        ];
        for (name, a, b) in pairs {
            if a != b {
                report
                    .violations
                    .push(format!("{name}: {a} vs {b} on {}", describe(&l)));
            }
        }
    }
    Ok(report)
}

//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! A criterion whose only failing sub-check is listed in `KNOWN_IMPOSSIBLE`
//! still prints FAIL, but does not fail the process; the decisions ledger
//! explains each entry. Any other failure exits with status 1.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use ordtop::classify::space_profile;
use ordtop::completion::metrics;
use ordtop::explorer::{
    check_golden, default_golden_dir, gallery, run_audit, witness_search, AuditReport, AuditSpec, GoldenStatus,
    SearchReport, StructureKind, WitnessQuery,
};
use ordtop::finstruct::{enumerate_posets, enumerate_topologies, FinLattice, FinTopology, PointSet};
use ordtop::laws::{audit_lemma_1_1, coframe_law, completely_distributive_law, frame_law};
use ordtop::powerdomain::{
    audit_powerdomains, PowerAuditBounds, CLAIM_FREE_LIFT, CLAIM_HOARE, CLAIM_IDEAL_LIFT, CLAIM_RHO_BAR,
    CLAIM_RHO_BAR_SEPARATED, CLAIM_TRIANGLES,
};
use ordtop::speclat::audit_roundtrips;

/// Sub-checks that cannot pass as stated, with the ledger entry explaining why.
const KNOWN_IMPOSSIBLE: &[(&str, &str)] = &[(
    "rho-bar separation",
    "decisions ledger, entry \"Finite-subset relation rho_bar\"",
)];

#[derive(Default)]
struct Outcome {
    failed: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn check(&mut self, name: &str, ok: bool, note: impl Into<String>) {
        let note = note.into();
        if !ok {
            self.failed.push(name.to_string());
        }
        self.notes
            .push(format!("{} {name}: {note}", if ok { "ok  " } else { "FAIL" }));
    }
}

fn audit(id: &str, n: usize, iso: bool) -> AuditReport {
    run_audit(&AuditSpec {
        theorem_id: id.into(),
        size: n,
        upto_iso: iso,
    })
    .expect("registered id and size")
}

fn audits(o: &mut Outcome, ids: &[&str], sizes: std::ops::RangeInclusive<usize>) {
    for id in ids {
        let (mut instances, mut violations, mut complete) = (0, 0, true);
        for n in sizes.clone() {
            let r = audit(id, n, false);
            instances += r.instances;
            violations += r.violations;
            complete &= r.complete;
        }
        o.check(
            id,
            complete && violations == 0,
            format!("{instances} structures, {violations} violations"),
        );
    }
}

fn within(o: &mut Outcome, what: &str, start: Instant, limit: Duration) {
    let took = start.elapsed();
    o.check(
        what,
        took < limit,
        format!("{:.2} s (limit {} s)", took.as_secs_f64(), limit.as_secs()),
    );
}

fn naive_topologies(n: usize) -> BTreeSet<Vec<u32>> {
    let subsets = 1u32 << n;
    let full = subsets - 1;
    (0u64..1 << subsets)
        .filter(|fam| fam & 1 == 1 && fam >> full & 1 == 1)
        .map(|fam| (0..subsets).filter(|&s| fam >> s & 1 == 1).collect::<Vec<u32>>())
        .filter(|m| {
            m.iter().all(|&a| {
                m.iter()
                    .all(|&b| m.binary_search(&(a | b)).is_ok() && m.binary_search(&(a & b)).is_ok())
            })
        })
        .collect()
}

fn naive_posets(n: usize) -> BTreeSet<Vec<u32>> {
    (0u64..1 << (n * n))
        .map(|bits| {
            (0..n)
                .map(|x| (bits >> (x * n) & ((1 << n) - 1)) as u32)
                .collect::<Vec<u32>>()
        })
        .filter(|rows| {
            let r = |x: usize, y: usize| rows[x] >> y & 1 == 1;
            (0..n).all(|x| r(x, x))
                && (0..n).all(|x| (0..n).all(|y| x == y || !(r(x, y) && r(y, x))))
                && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(r(x, y) && r(y, z)) || r(x, z))))
        })
        .collect()
}

fn criterion_1(o: &mut Outcome) {
    for n in [3, 4] {
        let start = Instant::now();
        let ours: BTreeSet<Vec<u32>> = enumerate_topologies(n, false)
            .unwrap()
            .iter()
            .map(|t| t.opens().iter().map(PointSet::bits).collect())
            .collect();
        if n == 4 {
            within(o, "n=4 topology enumeration time", start, Duration::from_secs(10));
        }
        let oracle = naive_topologies(n);
        o.check(
            &format!("topologies n={n}"),
            ours == oracle,
            format!("{} enumerated, {} by naive filter", ours.len(), oracle.len()),
        );
        let posets: BTreeSet<Vec<u32>> = enumerate_posets(n)
            .unwrap()
            .iter()
            .map(|p| p.rel().rows().iter().map(|r| r.bits()).collect())
            .collect();
        let oracle = naive_posets(n);
        o.check(
            &format!("posets n={n}"),
            posets == oracle,
            format!("{} enumerated, {} by naive filter", posets.len(), oracle.len()),
        );
    }
    let counts = [
        naive_topologies(3).len(),
        naive_topologies(4).len(),
        naive_posets(3).len(),
        naive_posets(4).len(),
    ];
    o.check(
        "anchors 29/355/19/219",
        counts == [29, 355, 19, 219],
        format!("{counts:?}"),
    );
}

fn criterion_2(o: &mut Outcome) {
    let start = Instant::now();
    let r = audit_roundtrips(3, 4);
    let fours = enumerate_topologies(4, false).unwrap().len();
    o.check(
        "round trips",
        r.violations.is_empty() && r.topologies == 389 && fours == 355,
        format!(
            "{} C-quasi-orders, {} topologies ({fours} on 4 points), {} violations",
            r.relations,
            r.topologies,
            r.violations.len()
        ),
    );
    within(o, "round trip time", start, Duration::from_secs(60));
}

fn criterion_3(o: &mut Outcome) {
    audits(o, &["routes"], 1..=4);
    let mut all_true = true;
    for n in 1..=4 {
        for t in enumerate_topologies(n, false).unwrap() {
            let p = space_profile(&t);
            let unanimous = p.route_agreement.values().all(|v| v.iter().all(|&b| b == v[0]));
            all_true &= p.web && p.wide_web && p.c_space && unanimous;
        }
    }
    o.check(
        "finite collapse",
        all_true,
        "web, wide web and C-space on every topology with n <= 4",
    );
    for (name, l) in [("M3", FinLattice::m3()), ("N5", FinLattice::n5())] {
        let any = frame_law(&l).is_ok() || coframe_law(&l).is_ok() || completely_distributive_law(&l).is_ok();
        o.check(
            &format!("lattice laws on {name}"),
            !any,
            "frame, coframe and complete distributivity all false",
        );
    }
}

fn criterion_4(o: &mut Outcome) {
    let start = Instant::now();
    audits(o, &["T5.3"], 1..=4);
    audits(o, &["L4.1-2", "L4.1-3", "L6.1-1", "L6.1-3", "L6.1-4"], 1..=3);
    within(o, "patch suite time", start, Duration::from_secs(300));
}

fn criterion_5(o: &mut Outcome) {
    audits(o, &["T10.3"], 1..=4);
    let m = metrics(&FinTopology::sierpinski()).unwrap();
    let chain = [
        m.rho_cofinality,
        m.weight_s,
        m.weight_sc,
        m.weight_s_upsilon,
        m.density_s_alpha,
    ];
    o.check("Sierpinski space", chain == [2; 5], format!("{chain:?}"));
    audits(o, &["P10.1"], 1..=3);
}

fn criterion_6(o: &mut Outcome) {
    audits(o, &["P5.5"], 1..=4);
}

fn criterion_7(o: &mut Outcome) {
    let (mut lifted, mut c_qo_bad, mut sep_bad) = (0, 0, 0);
    for n in 1..=3 {
        let r = audit("L9.2", n, false);
        lifted += r.claims.claims.get(CLAIM_RHO_BAR).map_or(0, |t| t.instances);
        c_qo_bad += r.claims.claims.get(CLAIM_RHO_BAR).map_or(0, |t| t.violations.len());
        sep_bad += r
            .claims
            .claims
            .get(CLAIM_RHO_BAR_SEPARATED)
            .map_or(0, |t| t.violations.len());
    }
    o.check(
        "rho-bar C-quasi-order",
        c_qo_bad == 0 && lifted > 0,
        format!("{lifted} bases, {c_qo_bad} violations"),
    );
    o.check(
        "rho-bar separation",
        sep_bad == 0,
        format!("{sep_bad} C-orders on <= 3 points give a non-separated lift"),
    );
    audits(o, &["T9.3"], 1..=3);
    let r = audit_powerdomains(PowerAuditBounds::default());
    for claim in [CLAIM_TRIANGLES, CLAIM_FREE_LIFT, CLAIM_IDEAL_LIFT, CLAIM_HOARE] {
        let t = &r.claims[claim];
        o.check(
            claim,
            t.instances > 0 && t.violations.is_empty(),
            format!("{} checks, {} violations", t.instances, t.violations.len()),
        );
    }
    for name in ["plotkin-chain2", "plotkin-antichain2"] {
        let status = check_golden(&gallery(name).unwrap(), &default_golden_dir()).unwrap();
        o.check(
            &format!("{name} golden"),
            status == GoldenStatus::Match,
            format!("{status:?}"),
        );
    }
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

fn query(required: &[&str], forbidden: &[&str], bound: usize) -> WitnessQuery {
    WitnessQuery {
        kind: StructureKind::OrderedSpace,
        required: required.iter().map(|s| s.to_string()).collect(),
        forbidden: forbidden.iter().map(|s| s.to_string()).collect(),
        size_bound: bound,
    }
}

fn stable(q: &WitnessQuery) -> (SearchReport, bool) {
    let one = in_pool(1, || witness_search(q).unwrap());
    let four = in_pool(4, || witness_search(q).unwrap());
    let again = witness_search(q).unwrap();
    let ok = one == four && one == again && one.complete;
    (one, ok)
}

fn outcome(r: &SearchReport) -> String {
    match &r.witness {
        Some(w) => format!("witness on {} points", w.size),
        None => format!(
            "exhausted {:?}",
            r.examined.iter().map(|t| t.candidates).collect::<Vec<_>>()
        ),
    }
}

fn criterion_8(o: &mut Outcome) {
    let names = ["c1", "c2", "c3"];
    for bits in 0..8u8 {
        let mut required = vec!["c4", "semi_qospace"];
        let mut forbidden = vec![];
        for (i, &name) in names.iter().enumerate() {
            if bits >> i & 1 == 1 {
                required.push(name);
            } else {
                forbidden.push(name);
            }
        }
        let (r, ok) = stable(&query(&required, &forbidden, 4));
        o.check(
            &format!("require {} forbid {}", required.join(","), forbidden.join(",")),
            ok,
            outcome(&r),
        );
    }
    let (r, ok) = stable(&query(&["c1", "c2", "c3", "semi_qospace"], &["c4"], 4));
    o.check("c4 alone fails", ok && r.is_exhausted(), outcome(&r));
    let r = witness_search(&query(&["c1", "c2", "c4", "semi_qospace"], &["c3"], 5)).unwrap();
    o.check("require c1,c2,c4 forbid c3 at bound 5", r.complete, outcome(&r));
}

fn criterion_9(o: &mut Outcome) {
    let r = audit_lemma_1_1(6).unwrap();
    o.check(
        "finite frames",
        r.violations.is_empty() && r.checked > 0,
        format!(
            "{} frames among {} lattices, {} violations",
            r.checked,
            r.checked + r.skipped,
            r.violations.len()
        ),
    );
}

type Criterion = fn(&mut Outcome);

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("enumeration anchors", criterion_1),
        ("relation/topology round trips", criterion_2),
        ("classifier route agreement", criterion_3),
        ("patch and fan suite", criterion_4),
        ("weight and density chain", criterion_5),
        ("coarsest quasi-uniformity", criterion_6),
        ("finite subsets, lifts and powerdomains", criterion_7),
        ("independence study", criterion_8),
        ("finite frames", criterion_9),
    ];
    let mut unexpected = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = Outcome::default();
        if let Err(p) = catch_unwind(AssertUnwindSafe(|| run(&mut o))) {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            o.check("no panic", false, msg.unwrap_or_default());
        }
        let secs = start.elapsed().as_secs_f64();
        let verdict = if o.failed.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} {title} ({secs:.1} s)", i + 1);
        for note in &o.notes {
            println!("    {note}");
        }
        for f in &o.failed {
            match KNOWN_IMPOSSIBLE.iter().find(|(name, _)| name == f) {
                Some((_, why)) => println!("    known impossible: {f}, see {why}"),
                None => unexpected += 1,
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failures");
        std::process::exit(1);
    }
}

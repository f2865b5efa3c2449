//! Per-claim instance and violation tallies shared by the exhaustive audits.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Debug, Default, Serialize)]
pub struct ClaimTally {
    pub instances: usize,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ClaimReport {
    pub claims: BTreeMap<&'static str, ClaimTally>,
}

impl ClaimReport {
    pub fn is_clean(&self) -> bool {
        self.violation_count() == 0
    }

    pub fn instances(&self) -> usize {
        self.claims.values().map(|c| c.instances).sum()
    }

    pub fn violation_count(&self) -> usize {
        self.claims.values().map(|c| c.violations.len()).sum()
    }

    pub fn record(&mut self, claim: &'static str, ok: bool, what: impl FnOnce() -> String) {
        let tally = self.claims.entry(claim).or_default();
        tally.instances += 1;
        if !ok {
            tally.violations.push(what());
        }
    }

    pub fn merge(mut self, other: ClaimReport) -> ClaimReport {
        for (k, v) in other.claims {
            let t = self.claims.entry(k).or_default();
            t.instances += v.instances;
            t.violations.extend(v.violations);
        }
        self
    }
}

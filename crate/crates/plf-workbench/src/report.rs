//! Suite reports: one record per claim per subject, with explicit gating.
//!
//! Claims are gated `Naked` when they hold on every finite distributive
//! carrier, or `CompletelyRegular` when their proofs lean on the standing
//! regularity hypothesis. A gated claim that diverges on a frame failing
//! complete regularity is recorded as `OffContract` — an observation, not a
//! failure. Anything else that does not hold is a `Fail` and carries a
//! witness.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Gate {
    Naked,
    CompletelyRegular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    OffContract,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimRecord {
    pub claim: String,
    pub subject: String,
    pub gate: Gate,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub records: Vec<ClaimRecord>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        !self.records.iter().any(|r| r.status == Status::Fail)
    }

    /// (pass, fail, off-contract) counts.
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for r in &self.records {
            match r.status {
                Status::Pass => c.0 += 1,
                Status::Fail => c.1 += 1,
                Status::OffContract => c.2 += 1,
            }
        }
        c
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn off_contract(&self) -> impl Iterator<Item = &ClaimRecord> {
        self.records.iter().filter(|r| r.status == Status::OffContract)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (pass, fail, off) = self.counts();
        writeln!(
            f,
            "suite {}: {} pass, {} fail, {} off-contract ({} ms)",
            self.suite, pass, fail, off, self.elapsed_ms
        )?;
        for r in self.failures() {
            writeln!(
                f,
                "  FAIL {} on {}{}",
                r.claim,
                r.subject,
                r.witness.as_deref().map(|w| format!(" [{w}]")).unwrap_or_default()
            )?;
        }
        for r in self.off_contract() {
            writeln!(f, "  off-contract {} on {}", r.claim, r.subject)?;
        }
        Ok(())
    }
}

/// Accumulates claim records during a suite run.
#[derive(Default)]
pub struct Recorder {
    pub records: Vec<ClaimRecord>,
}

impl Recorder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one claim instance. `cr_subject` states whether the subject
    /// satisfies the regularity hypothesis; a gated claim failing on a
    /// non-regular subject is off-contract.
    pub fn check(
        &mut self,
        claim: &str,
        subject: &str,
        gate: Gate,
        cr_subject: bool,
        holds: bool,
        witness: impl FnOnce() -> String,
    ) {
        let status = if holds {
            Status::Pass
        } else if gate == Gate::CompletelyRegular && !cr_subject {
            Status::OffContract
        } else {
            Status::Fail
        };
        self.records.push(ClaimRecord {
            claim: claim.to_string(),
            subject: subject.to_string(),
            gate,
            status,
            witness: (status != Status::Pass).then(witness),
        });
    }

    pub fn into_report(self, suite: &str, seed: u64, elapsed_ms: u128) -> SuiteReport {
        SuiteReport { suite: suite.to_string(), seed, records: self.records, elapsed_ms }
    }
}

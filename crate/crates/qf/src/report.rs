use std::fmt;
use std::time::Instant;

use qf_core::Error;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
        })
    }
}

/// One checked claim. Failures carry the data that shows the failure.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub claim: String,
    pub verdict: Verdict,
    pub witness: Value,
    pub millis: u128,
}

impl Report {
    pub fn new(claim: impl Into<String>, verdict: Verdict, witness: Value) -> Self {
        Report { claim: claim.into(), verdict, witness, millis: 0 }
    }

    /// Runs `body` and turns its outcome into a verdict. A cap error becomes
    /// `Skipped`; any other error is a failure whose witness is the message.
    pub fn run(claim: impl Into<String>, body: impl FnOnce() -> qf_core::Result<(bool, Value)>) -> Self {
        let start = Instant::now();
        let (verdict, witness) = match body() {
            Ok((true, w)) => (Verdict::Pass, w),
            Ok((false, w)) => (Verdict::Fail, w),
            Err(e @ Error::CapExceeded { .. }) => (Verdict::Skipped, json!({ "reason": e.to_string() })),
            Err(e) => (Verdict::Fail, json!({ "error": e.to_string() })),
        };
        Report { claim: claim.into(), verdict, witness, millis: start.elapsed().as_millis() }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<7} {} ({} ms)", self.verdict, self.claim, self.millis)
    }
}

/// 0 when nothing failed (and, under `strict`, nothing was skipped), else 1.
pub fn exit_code(reports: &[Report], strict: bool) -> i32 {
    let bad = reports
        .iter()
        .any(|r| r.verdict == Verdict::Fail || (strict && r.verdict == Verdict::Skipped));
    i32::from(bad)
}

//! Exact verification suites with a pass/fail/flagged report.
//!
//! "Flagged" marks a published closed form that the exact computation
//! contradicts. It is shown with the derived correction and never fails a run.

pub mod sample;
mod suites;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use suites::{chebyshev_suite, darboux_suite, euler_suite, riccati_suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Flagged => "flagged",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

impl Case {
    pub fn check(id: impl Into<String>, ok: bool, detail: impl Into<String>) -> Case {
        Case {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    pub fn flagged(id: impl Into<String>, detail: impl Into<String>) -> Case {
        Case {
            id: id.into(),
            status: Status::Flagged,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<Case>,
    pub overall: Status,
}

impl VerificationReport {
    /// Sorts cases by id and derives the overall status.
    pub fn new(suite: impl Into<String>, mut cases: Vec<Case>) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let overall = if cases.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        };
        VerificationReport {
            suite: suite.into(),
            cases,
            overall,
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn count(&self, status: Status) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }

    pub fn case(&self, id: &str) -> Option<&Case> {
        self.cases.iter().find(|c| c.id == id)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            writeln!(f, "[{:<7}] {}: {}", c.status, c.id, c.detail)?;
        }
        write!(
            f,
            "suite {}: {} ({} passed, {} failed, {} flagged)",
            self.suite,
            self.overall,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Flagged)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Riccati,
    Chebyshev,
    Darboux,
    Euler,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Riccati => "riccati",
            Suite::Chebyshev => "chebyshev",
            Suite::Darboux => "darboux",
            Suite::Euler => "euler",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "riccati" => Ok(Suite::Riccati),
            "chebyshev" => Ok(Suite::Chebyshev),
            "darboux" => Ok(Suite::Darboux),
            "euler" => Ok(Suite::Euler),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite {other:?} (expected riccati, chebyshev, darboux, euler or all)"
            )),
        }
    }
}

/// Run a suite. `max_n` bounds the ladder depth and the Chebyshev degree; the
/// operator suites use fixed sample sizes.
pub fn run(suite: Suite, max_n: usize) -> VerificationReport {
    let cases = match suite {
        Suite::Riccati => riccati_suite(max_n),
        Suite::Chebyshev => chebyshev_suite(max_n),
        Suite::Darboux => darboux_suite(),
        Suite::Euler => euler_suite(),
        Suite::All => {
            let mut all = riccati_suite(max_n);
            all.extend(chebyshev_suite(max_n));
            all.extend(darboux_suite());
            all.extend(euler_suite());
            all
        }
    };
    VerificationReport::new(suite.name(), cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_status_ignores_flags() {
        let r = VerificationReport::new(
            "t",
            vec![
                Case::check("b", true, ""),
                Case::flagged("a", "known misprint"),
            ],
        );
        assert!(r.passed());
        assert_eq!(r.cases[0].id, "a");
        let r = VerificationReport::new("t", vec![Case::check("a", false, "")]);
        assert_eq!(r.overall, Status::Fail);
    }

    #[test]
    fn suite_names() {
        for s in ["riccati", "chebyshev", "darboux", "euler", "all"] {
            assert_eq!(s.parse::<Suite>().unwrap().name(), s);
        }
        assert!("bessel".parse::<Suite>().is_err());
    }
}

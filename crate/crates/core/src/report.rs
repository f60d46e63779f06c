use std::fmt;

/// One failed comparison with enough context to re-run it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: String,
    pub witness: String,
    pub observed: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckSummary {
    pub name: String,
    pub runs: u64,
    pub failures: u64,
}

/// Outcome of a verification suite. PASS iff `failures` is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyReport {
    pub suite: String,
    pub checks: Vec<CheckSummary>,
    pub failures: Vec<Failure>,
    /// Constants discovered while checking, e.g. the gadget base cost.
    pub constants: Vec<(String, String)>,
}

impl PropertyReport {
    pub fn new(suite: impl Into<String>) -> Self {
        PropertyReport {
            suite: suite.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn checks_run(&self) -> u64 {
        self.checks.iter().map(|c| c.runs).sum()
    }

    fn summary_mut(&mut self, check: &str) -> &mut CheckSummary {
        if let Some(i) = self.checks.iter().position(|c| c.name == check) {
            return &mut self.checks[i];
        }
        self.checks.push(CheckSummary {
            name: check.to_string(),
            runs: 0,
            failures: 0,
        });
        self.checks.last_mut().unwrap()
    }

    /// Records one run of `check`; returns `ok` so callers can chain.
    pub fn record(
        &mut self,
        check: &str,
        ok: bool,
        witness: impl FnOnce() -> (String, String, String),
    ) -> bool {
        let summary = self.summary_mut(check);
        summary.runs += 1;
        if !ok {
            summary.failures += 1;
            let (witness, observed, expected) = witness();
            self.failures.push(Failure {
                check: check.to_string(),
                witness,
                observed,
                expected,
            });
        }
        ok
    }

    pub fn pass(&mut self, check: &str) {
        self.summary_mut(check).runs += 1;
    }

    pub fn constant(&mut self, name: impl Into<String>, value: impl fmt::Display) {
        self.constants.push((name.into(), value.to_string()));
    }

    /// Appends another report's checks and failures under this suite.
    pub fn absorb(&mut self, other: PropertyReport) {
        for c in other.checks {
            let s = self.summary_mut(&c.name);
            s.runs += c.runs;
            s.failures += c.failures;
        }
        self.failures.extend(other.failures);
        self.constants.extend(other.constants);
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "suite {} {verdict} checks={} failures={}",
            self.suite,
            self.checks_run(),
            self.failures.len()
        )?;
        for c in &self.checks {
            let v = if c.failures == 0 { "PASS" } else { "FAIL" };
            writeln!(f, "check {} {v} runs={} failures={}", c.name, c.runs, c.failures)?;
        }
        for (k, v) in &self.constants {
            writeln!(f, "const {k} {v}")?;
        }
        for fail in &self.failures {
            writeln!(
                f,
                "witness {}: {} observed={} expected={}",
                fail.check, fail.witness, fail.observed, fail.expected
            )?;
        }
        Ok(())
    }
}

//! Invariant suites over trees, series groups, Hopf algebras and the
//! dualities between them, with deterministic reports.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Mutex;

use serde_json::{json, Value};

use crate::sample::Sampler;

mod duality;
mod groups;
mod hopf;
mod morphisms;
mod oracles;
mod structure;
mod trees;

pub use duality::{alpha_duality, dif_duality, inv_duality, rho_duality};
pub use groups::group_checks;
pub use hopf::{
    alpha_recursion, antipode_identities, coassociativity, coaction_axioms, coactions_coincide,
    cocommutativity, comodule_coalgebra,
};
pub use morphisms::{fdb_formulas, hopf_morphism, projection_p, projection_r};

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of instances examined.
    pub cases: usize,
    pub detail: String,
}

impl Check {
    pub fn from_result(name: impl Into<String>, r: Result<usize, String>) -> Check {
        let name = name.into();
        match r {
            Ok(cases) => Check {
                name,
                passed: true,
                cases,
                detail: String::new(),
            },
            Err(detail) => Check {
                name,
                passed: false,
                cases: 0,
                detail,
            },
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "detail": self.detail,
        })
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "PASS {} ({} cases)", self.name, self.cases)
        } else {
            write!(f, "FAIL {}: {}", self.name, self.detail)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Trees,
    Groups,
    Hopf,
    Duality,
    Morphisms,
    Structure,
    Oracles,
    All,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Trees,
        Suite::Groups,
        Suite::Hopf,
        Suite::Duality,
        Suite::Morphisms,
        Suite::Structure,
        Suite::Oracles,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Trees => "trees",
            Suite::Groups => "groups",
            Suite::Hopf => "hopf",
            Suite::Duality => "duality",
            Suite::Morphisms => "morphisms",
            Suite::Structure => "structure",
            Suite::Oracles => "oracles",
            Suite::All => "all",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Size at which the suite runs when none is given.
    pub fn default_order(self) -> usize {
        match self {
            Suite::Groups => 6,
            Suite::Trees | Suite::Hopf => 5,
            _ => 4,
        }
    }

    fn jobs(self, n: usize, seed: u64) -> Vec<Job> {
        match self {
            Suite::Trees => trees::jobs(n, seed),
            Suite::Groups => groups::jobs(n, seed),
            Suite::Hopf => hopf::jobs(n),
            Suite::Duality => duality::jobs(n, seed),
            Suite::Morphisms => morphisms::jobs(n, seed),
            Suite::Structure => structure::jobs(n, seed),
            Suite::Oracles => oracles::jobs(n, seed),
            Suite::All => Suite::ALL[..7].iter().flat_map(|s| s.jobs(n, seed)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    /// `None` when every suite ran at its default size.
    pub max_order: Option<usize>,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "max_order": self.max_order,
            "seed": self.seed,
            "passed": self.passed(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "failures": self.failures().map(|c| c.name.clone()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.max_order.map_or_else(|| "default".to_string(), |n| n.to_string());
        writeln!(f, "suite {} max-order {n} seed {}", self.suite, self.seed)?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} passed, {} failed", self.checks.len() - failed, failed)
    }
}

pub type Job = (String, Box<dyn FnOnce() -> Result<usize, String> + Send>);

pub(crate) fn job<F>(name: impl Into<String>, f: F) -> Job
where
    F: FnOnce() -> Result<usize, String> + Send + 'static,
{
    (name.into(), Box::new(f))
}

/// A sampler seeded from the suite seed and the check name, so results do
/// not depend on scheduling.
pub(crate) fn sampler(seed: u64, name: &str) -> Sampler {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    Sampler::new(seed ^ h)
}

/// Run the jobs on a small thread pool; the report keeps job order.
pub fn execute(jobs: Vec<Job>) -> Vec<Check> {
    let n = jobs.len();
    let queue: Mutex<VecDeque<(usize, Job)>> = Mutex::new(jobs.into_iter().enumerate().collect());
    let results: Mutex<Vec<Option<Check>>> = Mutex::new(vec![None; n]);
    let workers = std::thread::available_parallelism().map_or(1, |p| p.get()).min(n.max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let Some((i, (name, f))) = queue.lock().expect("queue").pop_front() else {
                    return;
                };
                let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
                    .unwrap_or_else(|_| Err("panicked".into()));
                results.lock().expect("results")[i] = Some(Check::from_result(name, outcome));
            });
        }
    });
    results
        .into_inner()
        .expect("results")
        .into_iter()
        .map(|c| c.expect("every job ran"))
        .collect()
}

/// Run a suite with size parameter `n` (the maximal order or truncation),
/// or at each suite's default size.
pub fn run(suite: Suite, n: Option<usize>, seed: u64) -> Report {
    let jobs = match (suite, n) {
        (_, Some(n)) => suite.jobs(n, seed),
        (Suite::All, None) => Suite::ALL[..7]
            .iter()
            .flat_map(|s| s.jobs(s.default_order(), seed))
            .collect(),
        (_, None) => suite.jobs(suite.default_order(), seed),
    };
    Report {
        suite: suite.name().into(),
        max_order: n,
        seed,
        checks: execute(jobs),
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}
pub(crate) use ensure;

/// Map any displayable error into a check failure.
pub(crate) fn fail<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

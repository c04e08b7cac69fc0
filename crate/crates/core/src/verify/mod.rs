//! Scenario runner: reproducible checks that emit [`Verdict`]s.

mod cfsg;
mod laws;
mod patterns;
pub mod schur;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::{HgError, Result};
use crate::group::{are_isomorphic, derived_series, is_simple, GroupTable};
use crate::regular::SearchConfig;

pub use cfsg::{cfsg_desk_checks, prime_power_cases};
pub use laws::{law_suite_pair, law_suite_split, oracle_tier, LawTally};
pub use patterns::{quasisimple_preflight, verify_336, verify_extreme_pattern};
pub use schur::{schur_lookup, SimpleLabel, SMALL_MULTIPLIERS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Every check run agreed, but coverage or budget fell short.
    Partial,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Partial => "partial",
        }
    }
}

/// Outcome of one scenario. A failing verdict always carries a witness.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub scenario: String,
    #[serde(rename = "verdict")]
    pub status: Status,
    pub expected: Value,
    pub observed: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub metadata: BTreeMap<String, Value>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Verdict {
    pub fn new(scenario: impl Into<String>, expected: Value, observed: Value) -> Self {
        Verdict {
            scenario: scenario.into(),
            status: Status::Pass,
            expected,
            observed,
            witness: None,
            metadata: BTreeMap::new(),
            elapsed: Duration::ZERO,
        }
    }

    /// Marks the verdict failed; the first witness recorded is kept.
    pub fn fail(&mut self, witness: Value) {
        self.status = Status::Fail;
        self.witness.get_or_insert(witness);
    }

    /// Downgrades a pass to partial.
    pub fn partial(&mut self, reason: impl Into<String>) {
        if self.status == Status::Pass {
            self.status = Status::Partial;
        }
        self.meta("partial_reason", reason.into());
    }

    pub fn meta(&mut self, key: &str, value: impl Serialize) {
        self.metadata
            .insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub(crate) fn timed(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }
}

/// Named scenario groups accepted by the runner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scenario {
    Order15,
    Order60,
    Order120,
    Order336,
    Crossed,
    Oracle,
}

impl Scenario {
    pub const ALL: [Scenario; 6] = [
        Scenario::Order15,
        Scenario::Order60,
        Scenario::Order120,
        Scenario::Order336,
        Scenario::Crossed,
        Scenario::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Order15 => "15",
            Scenario::Order60 => "60",
            Scenario::Order120 => "120",
            Scenario::Order336 => "336",
            Scenario::Crossed => "crossed",
            Scenario::Oracle => "oracle",
        }
    }

    /// `all`, one scenario name, or a comma-separated list.
    pub fn parse_list(s: &str) -> Result<Vec<Scenario>> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(Scenario::ALL.to_vec());
        }
        s.split(',').map(|p| p.trim().parse()).collect()
    }
}

impl FromStr for Scenario {
    type Err = HgError;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                HgError::UsageError(format!(
                    "unknown scenario {s:?}; expected 15, 60, 120, 336, crossed, oracle or all"
                ))
            })
    }
}

/// Shared settings for scenario runs.
#[derive(Clone, Debug, Default)]
pub struct VerifyContext {
    pub cfg: SearchConfig,
    pub census_dir: Option<PathBuf>,
}

/// Runs the scenarios independently and returns verdicts ordered by name.
pub fn run_scenarios(scenarios: &[Scenario], ctx: &VerifyContext) -> Result<Vec<Verdict>> {
    let mut list = scenarios.to_vec();
    list.sort();
    list.dedup();
    let runs: Vec<Result<Vec<Verdict>>> = ctx.cfg.install(|| list.par_iter().map(|&s| run_scenario(s, ctx)).collect());
    let mut out = Vec::new();
    for r in runs {
        out.extend(r?);
    }
    out.sort_by(|a, b| a.scenario.cmp(&b.scenario));
    Ok(out)
}

/// Verdicts for a single scenario.
pub fn run_scenario(s: Scenario, ctx: &VerifyContext) -> Result<Vec<Verdict>> {
    use crate::catalog::{census, cyclic, sl2};
    let dir = ctx.census_dir.as_deref();
    Ok(match s {
        Scenario::Order15 => {
            let g = cyclic(15)?.with_label("C15");
            vec![verify_extreme_pattern(&g, &census(15, dir)?, &ctx.cfg)]
        }
        Scenario::Order60 => {
            let g = crate::catalog::alt(5)?.with_label("A5");
            vec![
                verify_extreme_pattern(&g, &census(60, dir)?, &ctx.cfg),
                quasisimple_preflight(&g),
            ]
        }
        Scenario::Order120 => {
            let g = sl2(5)?.with_label("SL2(5)");
            vec![
                verify_extreme_pattern(&g, &census(120, dir)?, &ctx.cfg),
                quasisimple_preflight(&g),
            ]
        }
        Scenario::Order336 => {
            let mut v = verify_336(&census(336, dir)?, &ctx.cfg)?;
            v.push(quasisimple_preflight(&sl2(7)?.with_label("SL2(7)")));
            v
        }
        Scenario::Crossed => laws::crossed_scenario(&ctx.cfg)?,
        Scenario::Oracle => laws::oracle_scenario(&ctx.cfg)?,
    })
}

/// Known simple groups reachable by the constructors, with every name each
/// one goes by.
const SIMPLE_ALIASES: [(usize, &[&str], &str); 6] = [
    (60, &["A5", "PSL2(4)", "PSL2(5)"], "alt(5)"),
    (168, &["PSL2(7)", "PSL3(2)"], "psl2(7)"),
    (360, &["A6", "PSL2(9)"], "alt(6)"),
    (504, &["PSL2(8)"], "psl2(8)"),
    (660, &["PSL2(11)"], "psl2(11)"),
    (2520, &["A7"], "alt(7)"),
];

/// Names of the simple group `q`, if it is one the catalog can build.
/// Cyclic groups of prime order are reported as `C<p>`.
pub fn identify_simple(q: &GroupTable) -> Option<Vec<String>> {
    let n = q.order();
    if n > 1 && q.is_abelian() && (2..n).all(|d| n % d != 0) {
        return Some(vec![format!("C{n}")]);
    }
    let (_, names, spec) = SIMPLE_ALIASES.iter().find(|e| e.0 == n)?;
    if !is_simple(q) {
        return None;
    }
    let t = crate::catalog::build(spec).ok()?;
    are_isomorphic(&t, q).map(|_| names.iter().map(|s| s.to_string()).collect())
}

/// Perfect with simple central quotient.
pub fn is_quasisimple(g: &GroupTable) -> bool {
    if !derived_series(g).is_perfect() || g.order() == 1 {
        return false;
    }
    let z = crate::group::center(g);
    match crate::group::quotient(g, &z) {
        Ok((q, _)) => q.order() > 1 && is_simple(&q),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{alt, build, psl2, sl2};

    #[test]
    fn scenario_names() {
        assert_eq!("336".parse::<Scenario>().unwrap(), Scenario::Order336);
        assert_eq!(Scenario::parse_list("all").unwrap().len(), 6);
        assert_eq!(Scenario::parse_list("15, 336").unwrap(), vec![Scenario::Order15, Scenario::Order336]);
        assert!(Scenario::parse_list("15,").is_err());
        assert!(matches!("77".parse::<Scenario>(), Err(HgError::UsageError(_))));
    }

    #[test]
    fn identifies_small_simple_groups() {
        assert_eq!(identify_simple(&alt(5).unwrap()).unwrap()[0], "A5");
        assert_eq!(identify_simple(&psl2(5).unwrap()).unwrap()[0], "A5");
        assert_eq!(identify_simple(&psl2(7).unwrap()).unwrap()[1], "PSL3(2)");
        assert_eq!(identify_simple(&build("cyclic(7)").unwrap()).unwrap(), vec!["C7"]);
        assert!(identify_simple(&build("sym(5)").unwrap()).is_none());
    }

    #[test]
    fn quasisimple_detection() {
        assert!(is_quasisimple(&sl2(5).unwrap()));
        assert!(is_quasisimple(&alt(5).unwrap()));
        assert!(!is_quasisimple(&build("sym(5)").unwrap()));
        assert!(!is_quasisimple(&build("direct(alt(5),cyclic(2))").unwrap()));
        assert!(!is_quasisimple(&build("cyclic(5)").unwrap()));
    }

    #[test]
    fn failing_verdict_keeps_first_witness() {
        let mut v = Verdict::new("x", Value::Null, Value::Null);
        v.partial("budget");
        assert_eq!(v.status, Status::Partial);
        v.fail(Value::from(1));
        v.fail(Value::from(2));
        assert_eq!(v.status, Status::Fail);
        assert_eq!(v.witness, Some(Value::from(1)));
        v.partial("again");
        assert_eq!(v.status, Status::Fail);
    }
}

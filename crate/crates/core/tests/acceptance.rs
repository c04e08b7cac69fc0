//! Acceptance suite: one PASS/FAIL line per criterion, with runtime limits.
//! Runs without the default harness so the lines are always printed.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hg_core::catalog::{alt, bundled_census, bundled_tiers, census, cyclic, psl2, sl2, CensusTier};
use hg_core::group::{are_isomorphic, derived_series, GroupTable};
use hg_core::holomorph::HolElement;
use hg_core::regular::{count_e, gp_direct_count, regular_subgroups_iso, CensusReport, SearchConfig};
use hg_core::verify::{cfsg_desk_checks, run_scenario, verify_336, Scenario, Status, VerifyContext};
use hg_core::HgError;

const LIMIT_C15: Duration = Duration::from_secs(1);
const LIMIT_A5: Duration = Duration::from_secs(5 * 60);
const LIMIT_SL25: Duration = Duration::from_secs(15 * 60);
const LIMIT_336: Duration = Duration::from_secs(30 * 60);
const LIMIT_ORACLE: Duration = Duration::from_secs(10 * 60);
const LIMIT_CFSG: Duration = Duration::from_secs(5 * 60);

/// One `(G, N)` run as seen by the cross-cutting criteria.
struct Run {
    g: String,
    n: String,
    report: Result<CensusReport, HgError>,
    g_quasisimple: bool,
    n_perfect: bool,
    n_is_g: bool,
    /// Set equality with `{λ(N), ρ(N)}` when `N ≅ G` and the count is nonzero.
    lambda_rho: Option<bool>,
}

#[derive(Default)]
struct Ledger {
    runs: Vec<Run>,
}

impl Ledger {
    fn run(&mut self, g: &GroupTable, n: &GroupTable, qs: bool) -> Result<&Run, String> {
        let cfg = SearchConfig::default();
        let report = count_e(g, n, &cfg);
        let n_is_g = are_isomorphic(g, n).is_some();
        let nonzero = report.as_ref().map(|r| r.raw_count > 0).unwrap_or(false);
        let lambda_rho = if n_is_g && nonzero {
            Some(lambda_rho_by_hand(g, n)?)
        } else {
            None
        };
        self.runs.push(Run {
            g: g.label().to_string(),
            n: n.label().to_string(),
            report,
            g_quasisimple: qs,
            n_perfect: derived_series(n).is_perfect(),
            n_is_g,
            lambda_rho,
        });
        Ok(self.runs.last().unwrap())
    }

    fn e(&mut self, g: &GroupTable, n: &GroupTable, qs: bool) -> Result<u64, String> {
        let r = self.run(g, n, qs)?;
        match &r.report {
            Ok(rep) => Ok(rep.e),
            Err(e) => Err(format!("e({}, {}) failed: {e}", r.g, r.n)),
        }
    }
}

/// Regular subgroups of `Hol(N)` isomorphic to `G` compared with `λ(N)` and
/// `ρ(N)` built directly from the holomorph operations.
fn lambda_rho_by_hand(g: &GroupTable, n: &GroupTable) -> Result<bool, String> {
    let en = regular_subgroups_iso(g, n, &SearchConfig::default()).map_err(|e| e.to_string())?;
    let canon = |f: &dyn Fn(usize) -> HolElement| {
        let mut v: Vec<HolElement> = (0..n.order()).map(f).collect();
        v.sort();
        v
    };
    let expected: BTreeSet<Vec<HolElement>> =
        [canon(&|x| en.hol.lambda(x)), canon(&|x| en.hol.rho(x))].into_iter().collect();
    let found: BTreeSet<Vec<HolElement>> = en.subgroups.iter().map(|s| s.elements.clone()).collect();
    Ok(expected == found)
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(format!("{:.2}s <= {}s", t.as_secs_f64(), limit.as_secs()))
    } else {
        Err(format!("took {:.2}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
    }
}

fn labelled(g: GroupTable, label: &str) -> GroupTable {
    g.with_label(label)
}

/// `e(G, G)` plus `e(G, N) = 0` for every other entry of the tier.
fn extreme_over_tier(ledger: &mut Ledger, g: &GroupTable, tier: &CensusTier, self_e: u64) -> Result<String, String> {
    let mut zeros = 0;
    let mut saw_self = false;
    for entry in &tier.entries {
        let e = ledger.e(g, &entry.table, true)?;
        if are_isomorphic(g, &entry.table).is_some() {
            saw_self = true;
            if e != self_e {
                return Err(format!("e({0}, {0}) = {e}, expected {self_e}", g.label()));
            }
            let run = ledger.runs.last().unwrap();
            if run.lambda_rho != Some(true) {
                return Err(format!("regular subgroups of Hol({}) are not exactly lambda and rho", entry.label));
            }
        } else if e != 0 {
            return Err(format!("e({}, {}) = {e}, expected 0", g.label(), entry.label));
        } else {
            zeros += 1;
        }
    }
    if !saw_self {
        return Err(format!("tier lacks {}", g.label()));
    }
    Ok(format!("e({0},{0})={self_e}, {zeros} other N with e=0", g.label()))
}

fn c1(ledger: &mut Ledger) -> Result<String, String> {
    let start = Instant::now();
    let c15 = labelled(cyclic(15).map_err(|e| e.to_string())?, "C15");
    let e = ledger.e(&c15, &c15, false)?;
    if e != 1 {
        return Err(format!("e(C15, C15) = {e}"));
    }
    // gcd(15, φ(15)) = gcd(15, 8) = 1 and C15 is the only group of order 15.
    let tier = bundled_census(15).map_err(|e| e.to_string())?;
    if tier.entries.len() != 1 || !tier.exhaustive {
        return Err("order-15 tier is not the single exhaustive entry".into());
    }
    Ok(format!("e(C15,C15)=1, {}", within(start, LIMIT_C15)?))
}

fn c2(ledger: &mut Ledger) -> Result<String, String> {
    let start = Instant::now();
    let a5 = labelled(alt(5).map_err(|e| e.to_string())?, "A5");
    let tier = bundled_census(60).map_err(|e| e.to_string())?;
    let msg = extreme_over_tier(ledger, &a5, &tier, 2)?;
    Ok(format!("{msg}, {}", within(start, LIMIT_A5)?))
}

fn c3(ledger: &mut Ledger) -> Result<String, String> {
    let start = Instant::now();
    let g = labelled(sl2(5).map_err(|e| e.to_string())?, "SL2(5)");
    let tier = bundled_census(120).map_err(|e| e.to_string())?;
    for needed in ["S5", "A5xC2"] {
        if tier.get(needed).is_none() {
            return Err(format!("order-120 tier lacks {needed}"));
        }
    }
    let solvable = tier.entries.iter().filter(|e| e.solvable).count();
    let msg = extreme_over_tier(ledger, &g, &tier, 2)?;
    Ok(format!("{msg} ({solvable} solvable samples), {}", within(start, LIMIT_SL25)?))
}

fn c4(ledger: &mut Ledger) -> Result<String, String> {
    let start = Instant::now();
    let g = labelled(sl2(7).map_err(|e| e.to_string())?, "SL2(7)");
    let tier = census(336, None).map_err(|e| e.to_string())?;
    let mut observed = Vec::new();
    for (label, want, want_perfect) in [("PGL2(7)", 0u64, false), ("PSL2(7)xC2", 0, false), ("SL2(7)", 2, true)] {
        let n = &tier.get(label).ok_or(format!("order-336 tier lacks {label}"))?.table;
        let run = ledger.run(&g, n, true)?;
        if run.n_perfect != want_perfect {
            return Err(format!("{label}: perfect = {}", run.n_perfect));
        }
        let raw = run.report.as_ref().map_err(|e| e.to_string())?.raw_count;
        if raw != want {
            return Err(format!("{label}: raw count {raw}, expected {want}"));
        }
        if want > 0 && run.lambda_rho != Some(true) {
            return Err(format!("{label}: subgroups are not exactly lambda and rho"));
        }
        observed.push(raw);
    }
    // The library scenario must agree with the direct runs above.
    let verdicts = verify_336(&tier, &SearchConfig::default()).map_err(|e| e.to_string())?;
    if verdicts.iter().any(|v| v.status != Status::Pass) {
        return Err("verify_336 verdicts disagree".into());
    }
    Ok(format!("raw counts {observed:?}, SL2(7) pair = {{lambda, rho}}, {}", within(start, LIMIT_336)?))
}

fn c5(ledger: &mut Ledger) -> Result<String, String> {
    let start = Instant::now();
    let mut pairs = 0;
    for tier in bundled_tiers(8).map_err(|e| e.to_string())?.values() {
        for ge in &tier.entries {
            for ne in &tier.entries {
                let e = ledger.e(&ge.table, &ne.table, false)?;
                let direct = gp_direct_count(&ge.table, &ne.table).map_err(|e| e.to_string())?;
                if e != direct {
                    return Err(format!("e({}, {}) = {e} but direct count {direct}", ge.label, ne.label));
                }
                pairs += 1;
            }
        }
    }
    let tier4 = bundled_census(4).map_err(|e| e.to_string())?;
    let c4 = &tier4.get("C4").unwrap().table;
    let v4 = &tier4.get("V4").unwrap().table;
    for (g, n, want) in [(c4, v4, 1), (v4, c4, 3), (c4, c4, 1), (v4, v4, 1)] {
        let direct = gp_direct_count(g, n).map_err(|e| e.to_string())?;
        if direct != want {
            return Err(format!("direct count for ({}, {}) is {direct}, expected {want}", g.label(), n.label()));
        }
    }
    Ok(format!("{pairs} ordered pairs agree, {}", within(start, LIMIT_ORACLE)?))
}

fn c6() -> Result<String, String> {
    let ctx = VerifyContext::default();
    let verdicts = run_scenario(Scenario::Crossed, &ctx).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for v in &verdicts {
        if v.status != Status::Pass {
            return Err(format!("{} failed: {:?}", v.scenario, v.witness));
        }
        pairs += v.metadata["pairs"].as_u64().unwrap_or(0);
    }
    Ok(format!("{} groups of checks, {pairs} crossed pairs, zero failures", verdicts.len()))
}

fn c7(ledger: &Ledger) -> Result<String, String> {
    let mut checked = 0;
    for r in &ledger.runs {
        let rep = r.report.as_ref().map_err(|e| format!("({}, {}): {e}", r.g, r.n))?;
        if rep.bijective_count != rep.aut_g * rep.raw_count {
            return Err(format!(
                "({}, {}): {} bijective pairs vs {} x {}",
                r.g, r.n, rep.bijective_count, rep.aut_g, rep.raw_count
            ));
        }
        checked += 1;
    }
    Ok(format!("exact on {checked} runs"))
}

fn c8(ledger: &Ledger) -> Result<String, String> {
    let bad: Vec<String> = ledger
        .runs
        .iter()
        .filter(|r| matches!(r.report, Err(HgError::NonIntegral { .. })))
        .map(|r| format!("({}, {})", r.g, r.n))
        .collect();
    if bad.is_empty() {
        Ok(format!("no NonIntegral in {} runs", ledger.runs.len()))
    } else {
        Err(format!("NonIntegral at {}", bad.join(", ")))
    }
}

fn c9() -> Result<String, String> {
    let start = Instant::now();
    let a5 = cfsg_desk_checks(&alt(5).map_err(|e| e.to_string())?, "A5").map_err(|e| e.to_string())?;
    let p = cfsg_desk_checks(&psl2(7).map_err(|e| e.to_string())?, "PSL2(7)").map_err(|e| e.to_string())?;
    // Required: fixed points on both groups, Szep and indices on A5.
    let required = [&a5[0], &a5[1], &a5[2], &p[0]];
    for v in required {
        if v.status != Status::Pass {
            return Err(format!("{} failed: {:?}", v.scenario, v.witness));
        }
    }
    let indices = &a5[2].observed["indices"];
    if indices != &serde_json::json!([1, 5]) {
        return Err(format!("A5 prime-power indices {indices}"));
    }
    let autos = (a5[0].metadata["automorphisms"].clone(), p[0].metadata["automorphisms"].clone());
    Ok(format!(
        "fixed points over {} + {} automorphisms, no factorization, indices {indices}, {}",
        autos.0,
        autos.1,
        within(start, LIMIT_CFSG)?
    ))
}

fn c10(ledger: &Ledger) -> Result<String, String> {
    let mut qs_runs = 0;
    for r in ledger.runs.iter().filter(|r| r.g_quasisimple) {
        qs_runs += 1;
        let raw = r.report.as_ref().map(|x| x.raw_count).unwrap_or(0);
        if raw > 0 && !r.n_perfect {
            return Err(format!("nonzero count for ({}, {}) with N not perfect", r.g, r.n));
        }
        if raw > 0 && r.n_is_g && r.lambda_rho != Some(true) {
            return Err(format!("({}, {}): subgroups differ from lambda and rho", r.g, r.n));
        }
        if raw > 0 && !r.n_is_g {
            return Err(format!("({}, {}): nonzero count at N not isomorphic to G", r.g, r.n));
        }
    }
    if qs_runs == 0 {
        return Err("no quasisimple runs recorded".into());
    }
    Ok(format!("{qs_runs} quasisimple runs consistent"))
}

fn main() -> ExitCode {
    let mut ledger = Ledger::default();
    let mut results: Vec<(u32, &str, Result<String, String>)> = Vec::new();
    results.push((1, "abelian criterion e(C15,C15)", c1(&mut ledger)));
    results.push((2, "simple case A5", c2(&mut ledger)));
    results.push((3, "quasisimple case SL2(5)", c3(&mut ledger)));
    results.push((4, "order-336 reproduction", c4(&mut ledger)));
    results.push((5, "oracle equivalence up to order 8", c5(&mut ledger)));
    results.push((6, "crossed-homomorphism law suite", c6()));
    results.push((7, "labeling identity", c7(&ledger)));
    results.push((8, "Byott integrality", c8(&ledger)));
    results.push((9, "desk instances on A5 and PSL2(7)", c9()));
    results.push((10, "quasisimple pattern assertions", c10(&ledger)));
    let mut failed = 0;
    for (id, name, r) in &results {
        match r {
            Ok(msg) => println!("PASS [{id:>2}] {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{id:>2}] {name}: {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

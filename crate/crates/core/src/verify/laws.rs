use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use super::Verdict;
use crate::automorphisms::{automorphism_group_arc, characteristic_subgroups_with, AutGroup};
use crate::catalog::{bundled_tiers, CensusTier};
use crate::crossed::{
    cocycle_check, descend_regular_in, enumerate_pairs, fuse, h_properties, induce_quotient, lambda_pair,
    preimage_subgroup, quotient_reduction, rho_pair, Budget, CrossedPair, QuotientReduction,
};
use crate::error::Result;
use crate::group::{subgroup_table, GroupTable};
use crate::holomorph::{build_hol, HolGroup};
use crate::regular::{count_e, gp_direct_count, SearchConfig, GP_DEGREE_CAP};

/// Largest order whose census pairs go through the full crossed-pair suite.
pub const LAW_SUITE_MAX_ORDER: usize = 24;

/// Groups for the law suite at orders in range that have no bundled tier.
/// These are samples, not complete lists of each order.
const LAW_SAMPLES: [(usize, &[(&str, &str)]); 11] = [
    (9, &[("C9", "cyclic(9)"), ("C3xC3", "abelian(3,3)")]),
    (10, &[("C10", "cyclic(10)"), ("D5", "dihedral(5)")]),
    (11, &[("C11", "cyclic(11)")]),
    (13, &[("C13", "cyclic(13)")]),
    (14, &[("C14", "cyclic(14)"), ("D7", "dihedral(7)")]),
    (16, &[("C16", "cyclic(16)"), ("D8", "dihedral(8)"), ("Q16", "dicyclic(4)"), ("C8xC2", "abelian(8,2)")]),
    (18, &[("C18", "cyclic(18)"), ("D9", "dihedral(9)"), ("S3xC3", "direct(sym(3),cyclic(3))")]),
    (20, &[("C20", "cyclic(20)"), ("D10", "dihedral(10)"), ("Dic5", "dicyclic(5)")]),
    (21, &[("C21", "cyclic(21)"), ("C7:C3", "semidirect(cyclic(7),cyclic(3),pow2)")]),
    (22, &[("C22", "cyclic(22)"), ("D11", "dihedral(11)")]),
    (24, &[("C24", "cyclic(24)"), ("S4", "sym(4)"), ("SL2(3)", "sl2(3)"), ("D12", "dihedral(12)"), ("A4xC2", "direct(alt(4),cyclic(2))")]),
];

/// Counters and failures from the crossed-pair law checks.
#[derive(Clone, Debug, Default, Serialize)]
pub struct LawTally {
    pub pairs: u64,
    pub bijective: u64,
    pub quotient_checks: u64,
    pub descents: u64,
    pub failures: Vec<Value>,
}

impl LawTally {
    fn merge(&mut self, other: LawTally) {
        self.pairs += other.pairs;
        self.bijective += other.bijective;
        self.quotient_checks += other.quotient_checks;
        self.descents += other.descents;
        self.failures.extend(other.failures);
    }
}

/// `Aut(N)` with, per characteristic subgroup `Λ`, its quotient reduction
/// and `Hol(Λ)`.
struct Target {
    label: String,
    aut: Arc<AutGroup>,
    hol: HolGroup,
    reductions: Vec<(QuotientReduction, HolGroup)>,
}

impl Target {
    fn new(label: &str, n: &GroupTable) -> Result<Self> {
        let aut = Arc::new(automorphism_group_arc(Arc::new(n.clone()))?);
        let reductions = characteristic_subgroups_with(&aut)
            .iter()
            .map(|c| {
                let hol = build_hol(&subgroup_table(n, &c.subgroup))?;
                Ok((quotient_reduction(&aut, &c.subgroup)?, hol))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Target {
            label: label.to_string(),
            hol: HolGroup::new(aut.clone()),
            aut,
            reductions,
        })
    }
}

/// Every law applied to one crossed pair: cocycle identity, the four
/// `h`-map properties, regular image exactly when `g` is bijective, and for
/// each characteristic `Λ` the induced quotient pair, the preimage subgroup
/// and (when bijective) the descended regular subgroup of `Hol(Λ)`.
fn check_pair(g: &GroupTable, g_label: &str, t: &Target, pair: &CrossedPair, tally: &mut LawTally) {
    let mut fail = |law: &str, detail: String| {
        tally.failures.push(json!({ "g": g_label, "n": t.label, "law": law, "detail": detail, "f": pair.f, "cocycle": pair.g }));
    };
    if let Err(e) = cocycle_check(g, &t.aut, pair) {
        fail("cocycle", format!("{e:?}"));
    }
    if let Err(e) = h_properties(g, &t.aut, pair) {
        fail("h-map", e);
    }
    match t.hol.is_regular(&fuse(pair)) {
        Ok(r) if r == pair.is_bijective() => {}
        Ok(r) => fail("regular-iff-bijective", format!("regular = {r}")),
        Err(e) => fail("regular-iff-bijective", e.to_string()),
    }
    let bijective = pair.is_bijective();
    for (red, hol_lambda) in &t.reductions {
        tally.quotient_checks += 1;
        if let Err(e) = induce_quotient(g, pair, red) {
            fail("quotient-cocycle", e.to_string());
        }
        if let Err(e) = preimage_subgroup(g, pair, &red.lambda) {
            fail("preimage-subgroup", e.to_string());
        }
        if bijective {
            tally.descents += 1;
            if let Err(e) = descend_regular_in(g, &t.aut, pair, &red.lambda, hol_lambda.clone()) {
                fail("descent", e.to_string());
            }
        }
    }
    tally.pairs += 1;
    tally.bijective += bijective as u64;
}

/// Law suite over every crossed pair for `G` and `N`.
pub fn law_suite_pair(g: &GroupTable, n: &GroupTable, budget: &Budget) -> Result<LawTally> {
    let t = Target::new(n.label(), n)?;
    suite_on(g, &t, budget)
}

fn suite_on(g: &GroupTable, t: &Target, budget: &Budget) -> Result<LawTally> {
    let mut tally = LawTally::default();
    for pair in enumerate_pairs(g, &t.aut, false, budget)? {
        check_pair(g, g.label(), t, &pair, &mut tally);
    }
    Ok(tally)
}

/// Law suite on the ρ- and λ-split pairs of the identity `N → N`.
pub fn law_suite_split(n: &GroupTable) -> Result<LawTally> {
    let t = Target::new(n.label(), n)?;
    let id: Vec<usize> = (0..n.order()).collect();
    let mut tally = LawTally::default();
    for pair in [rho_pair(&id), lambda_pair(&t.aut, &id)] {
        check_pair(n, n.label(), &t, &pair, &mut tally);
    }
    Ok(tally)
}

fn tally_verdict(name: String, tally: LawTally, start: Instant) -> Verdict {
    let mut v = Verdict::new(name, json!({ "failures": 0 }), json!({ "failures": tally.failures.len() }));
    if let Some(w) = tally.failures.first() {
        v.fail(w.clone());
    }
    v.meta("pairs", tally.pairs);
    v.meta("bijective", tally.bijective);
    v.meta("quotient_checks", tally.quotient_checks);
    v.meta("descents", tally.descents);
    v.timed(start)
}

pub(super) fn crossed_scenario(cfg: &SearchConfig) -> Result<Vec<Verdict>> {
    let budget = Budget::new(cfg.budget);
    let mut out = Vec::new();
    for (order, tier) in bundled_tiers(LAW_SUITE_MAX_ORDER)? {
        let start = Instant::now();
        let mut tally = LawTally::default();
        for ne in &tier.entries {
            let t = Target::new(&ne.label, &ne.table)?;
            let parts: Vec<Result<LawTally>> = tier
                .entries
                .par_iter()
                .map(|ge| suite_on(&ge.table, &t, &budget))
                .collect();
            for p in parts {
                tally.merge(p?);
            }
        }
        out.push(tally_verdict(format!("crossed/order-{order:02}"), tally, start));
    }
    for (order, specs) in LAW_SAMPLES {
        let start = Instant::now();
        let groups = specs
            .iter()
            .map(|(label, spec)| Ok(crate::catalog::build(spec)?.with_label(*label)))
            .collect::<Result<Vec<_>>>()?;
        let mut tally = LawTally::default();
        for n in &groups {
            let t = Target::new(n.label(), n)?;
            let parts: Vec<Result<LawTally>> = groups.par_iter().map(|g| suite_on(g, &t, &budget)).collect();
            for p in parts {
                tally.merge(p?);
            }
        }
        let mut v = tally_verdict(format!("crossed/order-{order:02}"), tally, start);
        v.meta("sample", true);
        out.push(v);
    }
    for order in [60, 120] {
        let start = Instant::now();
        let tier = crate::catalog::bundled_census(order)?;
        let mut tally = LawTally::default();
        for e in &tier.entries {
            tally.merge(law_suite_split(&e.table)?);
        }
        out.push(tally_verdict(format!("crossed/splits-{order}"), tally, start));
    }
    Ok(out)
}

/// `count_e` against the direct permutation count for every ordered pair of
/// the tier.
pub fn oracle_tier(tier: &CensusTier, cfg: &SearchConfig) -> Result<Verdict> {
    let start = Instant::now();
    let mut expected = Map::new();
    let mut observed = Map::new();
    let mut v = Verdict::new(format!("oracle/order-{}", tier.order), Value::Null, Value::Null);
    for ge in &tier.entries {
        for ne in &tier.entries {
            let key = format!("({},{})", ge.label, ne.label);
            let direct = gp_direct_count(&ge.table, &ne.table)?;
            let r = count_e(&ge.table, &ne.table, cfg)?;
            if r.e != direct {
                v.fail(json!({ "pair": key, "direct": direct, "count_e": r.e }));
            }
            if r.bijective_count != r.aut_g * r.raw_count {
                v.fail(json!({ "pair": key, "check": "labeling", "bijective_count": r.bijective_count }));
            }
            expected.insert(key.clone(), json!(direct));
            observed.insert(key, json!(r.e));
        }
    }
    v.expected = Value::Object(expected);
    v.observed = Value::Object(observed);
    v.meta("exhaustive", tier.exhaustive);
    Ok(v.timed(start))
}

pub(super) fn oracle_scenario(cfg: &SearchConfig) -> Result<Vec<Verdict>> {
    bundled_tiers(GP_DEGREE_CAP)?
        .values()
        .map(|tier| oracle_tier(tier, cfg))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{bundled_census, cyclic, sl2, sym};

    #[test]
    fn small_suite_has_no_failures() {
        let s3 = sym(3).unwrap();
        let c6 = cyclic(6).unwrap();
        let t = law_suite_pair(&s3, &c6, &Budget::unlimited()).unwrap();
        assert!(t.failures.is_empty(), "{:?}", t.failures);
        // Bijective pairs are |Aut(S3)| times the raw count 1.
        assert_eq!(t.bijective, 6);
        assert!(t.pairs > t.bijective);
    }

    #[test]
    fn splits_of_sl25() {
        let t = law_suite_split(&sl2(5).unwrap()).unwrap();
        assert!(t.failures.is_empty(), "{:?}", t.failures);
        assert_eq!(t.pairs, 2);
        assert!(t.descents >= 4);
    }

    #[test]
    fn oracle_order_4() {
        let v = oracle_tier(&bundled_census(4).unwrap(), &SearchConfig::default()).unwrap();
        assert!(v.passed(), "{v:?}");
        assert_eq!(v.observed["(V4,C4)"], json!(3));
        assert_eq!(v.observed["(C4,V4)"], json!(1));
    }
}

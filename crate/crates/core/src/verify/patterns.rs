use std::time::Instant;

use serde_json::{json, Map, Value};

use super::{identify_simple, is_quasisimple, schur_lookup, Verdict};
use crate::automorphisms::count_automorphisms;
use crate::catalog::{cyclic, pgl2, product, psl2, sl2, CensusTier};
use crate::error::{HgError, Result};
use crate::group::{are_isomorphic, center, derived_series, fingerprint, is_simple, normal_subgroups, quotient, GroupTable};
use crate::regular::{regular_subgroups_iso, report_from, RegularEnumeration, SearchConfig};

fn isomorphic(a: &GroupTable, b: &GroupTable) -> bool {
    fingerprint(a) == fingerprint(b) && are_isomorphic(a, b).is_some()
}

/// Checks done on every enumeration of a census run. Returns the report
/// fields on success.
fn audit_run(
    v: &mut Verdict,
    g: &GroupTable,
    n_label: &str,
    n: &GroupTable,
    aut_g: u64,
    qs: bool,
    iso: bool,
    en: &RegularEnumeration,
) -> Option<Value> {
    let raw = en.raw_count() as u64;
    let report = match report_from(g, n, aut_g, en, Default::default()) {
        Ok(r) => r,
        Err(e) => {
            v.fail(json!({ "n": n_label, "error": e.to_string() }));
            return None;
        }
    };
    if en.bijective_count != aut_g * raw {
        v.fail(json!({
            "n": n_label,
            "check": "labeling",
            "bijective_count": en.bijective_count,
            "aut_g_times_raw": aut_g * raw,
        }));
    }
    if qs && raw > 0 && !derived_series(n).is_perfect() {
        v.fail(json!({ "n": n_label, "check": "nonzero count at non-perfect N", "raw_count": raw }));
    }
    if qs && iso && raw > 0 && !en.is_lambda_rho() {
        v.fail(json!({ "n": n_label, "check": "regular subgroups differ from lambda and rho", "raw_count": raw }));
    }
    Some(json!({
        "e": report.e,
        "raw_count": raw,
        "bijective_count": en.bijective_count,
        "aut_n": report.aut_n,
        "nodes": en.stats.nodes,
    }))
}

/// `e(G, G) = 1` for abelian `G` and 2 otherwise, and `e(G, N) = 0` for every
/// other census group `N`. Quasisimple `G` also gets the perfectness and
/// `{λ, ρ}` checks on each run.
///
/// The verdict is partial when the tier is neither exhaustive nor complete
/// on insolvable groups, or when the budget runs out.
pub fn verify_extreme_pattern(g: &GroupTable, tier: &CensusTier, cfg: &SearchConfig) -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new(format!("{}/{}", tier.order, g.label()), Value::Null, Value::Null);
    v.meta("order", tier.order);
    v.meta("exhaustive", tier.exhaustive);
    v.meta("insolvable_complete", tier.insolvable_complete);
    v.meta("budget", cfg.budget);
    if g.order() != tier.order {
        v.fail(json!({ "error": format!("|G| = {} but tier order is {}", g.order(), tier.order) }));
        return v.timed(start);
    }
    let qs = is_quasisimple(g);
    let aut_g = count_automorphisms(g);
    v.meta("quasisimple", qs);
    v.meta("aut_g", aut_g);

    let mut targets: Vec<(String, &GroupTable, bool)> = tier
        .entries
        .iter()
        .map(|e| (e.label.clone(), e.table.as_ref(), isomorphic(g, &e.table)))
        .collect();
    if !targets.iter().any(|t| t.2) {
        targets.push((g.label().to_string(), g, true));
    }
    targets.sort_by(|a, b| a.0.cmp(&b.0));

    let expected_self = if g.is_abelian() { 1 } else { 2 };
    let mut expected = Map::new();
    let mut observed = Map::new();
    let mut details = Map::new();
    for (label, n, iso) in targets {
        let want = if iso { expected_self } else { 0 };
        expected.insert(label.clone(), json!(want));
        match regular_subgroups_iso(g, n, cfg) {
            Err(HgError::CapExceeded { .. }) => {
                observed.insert(label.clone(), Value::Null);
                v.partial(format!("budget exhausted at {label}"));
            }
            Err(e) => {
                observed.insert(label.clone(), Value::Null);
                v.fail(json!({ "n": label, "error": e.to_string() }));
            }
            Ok(en) => {
                if let Some(d) = audit_run(&mut v, g, &label, n, aut_g, qs, iso, &en) {
                    let e = d["e"].as_u64().unwrap_or(0);
                    if e != want {
                        v.fail(json!({ "n": label, "expected_e": want, "observed_e": e }));
                    }
                    observed.insert(label.clone(), json!(e));
                    details.insert(label, d);
                }
            }
        }
    }
    v.expected = Value::Object(expected);
    v.observed = Value::Object(observed);
    v.meta("runs", details);
    if !tier.exhaustive && !tier.insolvable_complete {
        v.partial("census tier is a sample");
    }
    v.timed(start)
}

/// Regular subgroups isomorphic to `SL2(7)` in the holomorphs of the three
/// insolvable groups of order 336: none for `PGL2(7)` and `PSL2(7)×C2`, and
/// exactly `λ` and `ρ` for `SL2(7)`. Perfectness of each `N` is confirmed
/// first.
pub fn verify_336(tier: &CensusTier, cfg: &SearchConfig) -> Result<Vec<Verdict>> {
    let g = sl2(7)?.with_label("SL2(7)");
    let aut_g = count_automorphisms(&g);
    let targets = [
        ("PGL2(7)", pgl2(7)?, 0u64, false),
        ("PSL2(7)xC2", product(&psl2(7)?, &cyclic(2)?, None)?, 0, false),
        ("SL2(7)", g.clone(), 2, true),
    ];
    let mut out = Vec::new();
    for (name, built, want_raw, want_perfect) in targets {
        let start = Instant::now();
        let entry = tier
            .identify(&built)
            .ok_or_else(|| HgError::UsageError(format!("order-336 census lacks {name}")))?;
        let n = entry.table.as_ref();
        let iso = want_perfect;
        let mut v = Verdict::new(
            format!("336/{name}"),
            json!({ "raw_count": want_raw, "perfect": want_perfect }),
            Value::Null,
        );
        v.meta("census_label", &entry.label);
        v.meta("budget", cfg.budget);
        v.meta("insolvable_complete", tier.insolvable_complete);
        let perfect = derived_series(n).is_perfect();
        if perfect != want_perfect {
            v.fail(json!({ "n": name, "check": "perfectness", "perfect": perfect }));
        }
        match regular_subgroups_iso(&g, n, cfg) {
            Err(HgError::CapExceeded { what, limit }) => {
                v.observed = json!({ "raw_count": null, "perfect": perfect });
                v.partial(format!("{what} exceeded {limit}"));
            }
            Err(e) => return Err(e),
            Ok(en) => {
                let raw = en.raw_count() as u64;
                v.observed = json!({ "raw_count": raw, "perfect": perfect });
                if raw != want_raw {
                    v.fail(json!({ "n": name, "expected_raw": want_raw, "observed_raw": raw }));
                }
                if let Some(d) = audit_run(&mut v, &g, name, n, aut_g, true, iso, &en) {
                    v.meta("run", d);
                }
                if iso {
                    v.meta("lambda_rho", en.is_lambda_rho());
                }
            }
        }
        out.push(v.timed(start));
    }
    Ok(out)
}

/// Perfect, simple central quotient, `|Z(G)|` dividing the multiplier of the
/// quotient, and every proper normal subgroup central.
pub fn quasisimple_preflight(g: &GroupTable) -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new(
        format!("preflight/{}", g.label()),
        json!({
            "perfect": true,
            "quotient_simple": true,
            "center_divides_multiplier": true,
            "normals_central": true,
        }),
        Value::Null,
    );
    let perfect = derived_series(g).is_perfect();
    if !perfect {
        v.fail(json!({ "check": "perfect", "derived_order": derived_series(g).derived_subgroup().len() }));
    }
    let z = center(g);
    let q = match quotient(g, &z) {
        Ok((q, _)) => q,
        Err(e) => {
            v.fail(json!({ "check": "quotient", "error": e.to_string() }));
            return v.timed(start);
        }
    };
    let simple = q.order() > 1 && is_simple(&q);
    if !simple {
        v.fail(json!({ "check": "quotient_simple", "quotient_order": q.order() }));
    }
    let names = if simple { identify_simple(&q) } else { None };
    let multiplier = names.as_ref().and_then(|n| schur_lookup(&n[0]).ok());
    let divides = multiplier.map(|m| m % z.len() as u64 == 0);
    match divides {
        Some(false) => v.fail(json!({ "check": "center_divides_multiplier", "center": z.len(), "multiplier": multiplier })),
        None if simple => v.partial("central quotient is not in the alias table"),
        _ => {}
    }
    let mut normals_central = true;
    for nsub in normal_subgroups(g) {
        if nsub.len() < g.order() && !nsub.is_subset_of(&z) {
            normals_central = false;
            v.fail(json!({ "check": "normals_central", "normal_subgroup_order": nsub.len() }));
            break;
        }
    }
    v.observed = json!({
        "perfect": perfect,
        "quotient_simple": simple,
        "center_divides_multiplier": divides,
        "normals_central": normals_central,
    });
    v.meta("center_order", z.len());
    v.meta("quotient", names);
    v.meta("multiplier", multiplier);
    v.timed(start)
}

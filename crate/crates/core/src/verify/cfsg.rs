use std::collections::BTreeSet;
use std::time::Instant;

use serde_json::{json, Value};

use super::schur::{prime_power, SimpleLabel};
use super::{identify_simple, Verdict};
use crate::automorphisms::automorphism_group;
use crate::error::{HgError, Result};
use crate::group::{all_subgroups, center, is_simple, subgroup_table, BitSet, GroupTable, Subgroup, SUBGROUP_CAP};

/// Desk instances for a small simple group `a`: every automorphism fixes a
/// non-identity element; no factorization `A = B₁B₂` into subgroups with
/// non-trivial centers; every prime-power subgroup index fits the known case
/// list for the type of `a`.
pub fn cfsg_desk_checks(a: &GroupTable, label: &str) -> Result<Vec<Verdict>> {
    if a.is_abelian() || !is_simple(a) {
        return Err(HgError::UsageError(format!("{label} is not a non-abelian simple group")));
    }
    let subs = all_subgroups(a, SUBGROUP_CAP)?;
    Ok(vec![
        fixed_points(a, label)?,
        szep_sweep(a, label, &subs),
        prime_power_indices(a, label, &subs),
    ])
}

fn fixed_points(a: &GroupTable, label: &str) -> Result<Verdict> {
    let start = Instant::now();
    let aut = automorphism_group(a)?;
    let mut v = Verdict::new(format!("cfsg/{label}/fixed-points"), json!({ "without_fixed_point": 0 }), Value::Null);
    let mut min_fixed = usize::MAX;
    let mut bad = 0u64;
    for (i, phi) in aut.elements().iter().enumerate() {
        let fixed = phi.fixed_points().into_iter().filter(|&x| x != 0).count();
        min_fixed = min_fixed.min(fixed);
        if fixed == 0 {
            bad += 1;
            v.fail(json!({ "automorphism": i, "images": phi.images() }));
        }
    }
    v.observed = json!({ "without_fixed_point": bad });
    v.meta("automorphisms", aut.len());
    v.meta("min_nontrivial_fixed", min_fixed);
    Ok(v.timed(start))
}

/// Pairs are screened by `|B₁||B₂| / |B₁ ∩ B₂| = |A|` before the product set
/// is built.
fn szep_sweep(a: &GroupTable, label: &str, subs: &[Subgroup]) -> Verdict {
    let start = Instant::now();
    let n = a.order();
    let mut v = Verdict::new(format!("cfsg/{label}/szep"), json!({ "factorizations": 0 }), Value::Null);
    let central: Vec<(&Subgroup, BitSet)> = subs
        .iter()
        .filter(|s| !s.is_trivial() && !center(&subgroup_table(a, s)).is_trivial())
        .map(|s| (s, s.to_bitset(n)))
        .collect();
    let mut pairs = 0u64;
    let mut screened = 0u64;
    let mut found = 0u64;
    for i in 0..central.len() {
        for j in i..central.len() {
            pairs += 1;
            let (b1, s1) = &central[i];
            let (b2, s2) = &central[j];
            if b1.len() * b2.len() < n {
                continue;
            }
            let meet = s1.intersection_len(s2);
            if b1.len() * b2.len() != n * meet {
                continue;
            }
            screened += 1;
            let mut prod = BitSet::new(n);
            for x in b1.iter() {
                for y in b2.iter() {
                    prod.insert(a.mul(x, y));
                }
            }
            if prod.iter().count() == n {
                found += 1;
                v.fail(json!({ "b1": b1.elements(), "b2": b2.elements() }));
            }
        }
    }
    v.observed = json!({ "factorizations": found });
    v.meta("subgroups", subs.len());
    v.meta("central_subgroups", central.len());
    v.meta("pairs", pairs);
    v.meta("size_matches", screened);
    v.timed(start)
}

/// Prime-power indices `p^a > 1` permitted for each name of a simple group.
pub fn prime_power_cases(names: &[String]) -> Vec<(u64, String)> {
    let mut out = Vec::new();
    for name in names {
        let Ok(l) = SimpleLabel::parse(name) else {
            continue;
        };
        match l {
            SimpleLabel::Alt(m) if m >= 5 && prime_power(m).is_some() => {
                out.push((m, format!("a: {name}")));
            }
            SimpleLabel::Psl(d, q) => {
                let idx = (q.pow(d as u32) - 1) / (q - 1);
                if prime_power(idx).is_some() {
                    out.push((idx, format!("b: {name}")));
                }
                if (d, q) == (2, 11) {
                    out.push((11, format!("c: {name}")));
                }
            }
            SimpleLabel::Sporadic("M11") => out.push((11, "d: M11".into())),
            SimpleLabel::Sporadic("M23") => out.push((23, "d: M23".into())),
            SimpleLabel::Psu(4, 2) => out.push((27, format!("e: {name}"))),
            _ => {}
        }
    }
    out
}

fn prime_power_indices(a: &GroupTable, label: &str, subs: &[Subgroup]) -> Verdict {
    let start = Instant::now();
    let n = a.order() as u64;
    let names = identify_simple(a).unwrap_or_default();
    let cases = prime_power_cases(&names);
    let allowed: BTreeSet<u64> = std::iter::once(1).chain(cases.iter().map(|c| c.0)).collect();
    let found: BTreeSet<u64> = subs
        .iter()
        .map(|s| n / s.len() as u64)
        .filter(|&i| i == 1 || prime_power(i).is_some())
        .collect();
    let mut v = Verdict::new(
        format!("cfsg/{label}/prime-power-index"),
        json!({ "allowed": allowed }),
        json!({ "indices": found }),
    );
    if names.is_empty() {
        v.partial("group type not identified");
    }
    if let Some(bad) = found.iter().find(|i| !allowed.contains(i)) {
        v.fail(json!({ "index": bad }));
    }
    let matched: Vec<&String> = cases.iter().filter(|c| found.contains(&c.0)).map(|c| &c.1).collect();
    v.meta("names", &names);
    v.meta("matched_cases", matched);
    v.timed(start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{alt, psl2, sym};
    use crate::verify::Status;

    #[test]
    fn a5_desk_checks() {
        let v = cfsg_desk_checks(&alt(5).unwrap(), "A5").unwrap();
        assert!(v.iter().all(|x| x.status == Status::Pass), "{v:?}");
        assert_eq!(v[0].metadata["automorphisms"], json!(120));
        assert_eq!(v[1].metadata["subgroups"], json!(59));
        assert_eq!(v[2].observed, json!({ "indices": [1, 5] }));
        let cases = v[2].metadata["matched_cases"].as_array().unwrap();
        assert!(cases.contains(&json!("a: A5")));
    }

    #[test]
    fn psl27_desk_checks() {
        let v = cfsg_desk_checks(&psl2(7).unwrap(), "PSL2(7)").unwrap();
        assert!(v.iter().all(|x| x.status == Status::Pass), "{v:?}");
        assert_eq!(v[0].metadata["automorphisms"], json!(336));
        assert_eq!(v[2].observed, json!({ "indices": [1, 7, 8] }));
    }

    #[test]
    fn non_simple_rejected() {
        assert!(matches!(cfsg_desk_checks(&sym(4).unwrap(), "S4"), Err(HgError::UsageError(_))));
    }

    #[test]
    fn case_list() {
        let c = prime_power_cases(&["PSL2(11)".into(), "A8".into(), "PSL3(2)".into()]);
        let idx: Vec<u64> = c.iter().map(|x| x.0).collect();
        assert_eq!(idx, vec![11, 8, 7]);
    }
}

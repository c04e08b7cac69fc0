//! Regular subgroups of holomorphs and the count `e(G, N)`.
//!
//! `e(G, N) = |Aut(G)| / |Aut(N)| · #{regular S ≤ Hol(N) : S ≅ G}`.

mod gp;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::automorphisms::{automorphism_group, automorphism_group_arc, AutGroup};
use crate::catalog::CensusTier;
use crate::crossed::{enumerate_homs_with, Budget, CocycleSearch, CrossedPair, SourcePlan, DEFAULT_BUDGET};
use crate::error::{HgError, Result};
use crate::group::{are_isomorphic, fingerprint, GroupTable};
use crate::holomorph::{HolElement, HolGroup};

pub use gp::{gp_direct_count, GP_DEGREE_CAP};

/// Limits for one enumeration.
#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub budget: u64,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub jobs: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            jobs: None,
        }
    }
}

impl SearchConfig {
    /// Runs `op` inside a pool of `jobs` threads when set.
    pub fn install<T: Send>(&self, op: impl FnOnce() -> T + Send) -> T {
        match self.jobs {
            Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build() {
                Ok(pool) => pool.install(op),
                Err(_) => op(),
            },
            None => op(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Homomorphisms `G → Aut(N)` examined.
    pub homs: u64,
    /// Search nodes spent.
    pub nodes: u64,
}

/// A regular subgroup of `Hol(N)` in canonical form (sorted pairs).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RegularSubgroup {
    pub elements: Vec<HolElement>,
    pub iso_type: String,
}

/// Result of [`regular_subgroups_iso`].
#[derive(Debug)]
pub struct RegularEnumeration {
    pub hol: HolGroup,
    pub subgroups: Vec<RegularSubgroup>,
    /// Number of bijective crossed pairs, i.e. injective homomorphisms
    /// `G → Hol(N)` with regular image.
    pub bijective_count: u64,
    pub stats: SearchStats,
}

impl RegularEnumeration {
    pub fn raw_count(&self) -> usize {
        self.subgroups.len()
    }

    /// True when the subgroups are exactly `λ(N)` and `ρ(N)` (or the single
    /// common set when they coincide).
    pub fn is_lambda_rho(&self) -> bool {
        let (l, r) = self.hol.lambda_rho_embed();
        let mut expected = vec![l, r];
        expected.sort();
        expected.dedup();
        let found: Vec<&Vec<HolElement>> = self.subgroups.iter().map(|s| &s.elements).collect();
        found.len() == expected.len() && found.iter().zip(&expected).all(|(a, b)| *a == b)
    }
}

fn check_orders(g: &GroupTable, n: &GroupTable) -> Result<()> {
    if g.order() != n.order() {
        return Err(HgError::UsageError(format!(
            "|G| = {} differs from |N| = {}",
            g.order(),
            n.order()
        )));
    }
    Ok(())
}

/// Regular subgroups of `Hol(N)` isomorphic to `G`.
pub fn regular_subgroups_iso(g: &GroupTable, n: &GroupTable, cfg: &SearchConfig) -> Result<RegularEnumeration> {
    check_orders(g, n)?;
    let aut = Arc::new(automorphism_group_arc(Arc::new(n.clone()))?);
    regular_subgroups_with(g, &aut, cfg)
}

/// As [`regular_subgroups_iso`] with a precomputed `Aut(N)`.
pub fn regular_subgroups_with(g: &GroupTable, aut: &Arc<AutGroup>, cfg: &SearchConfig) -> Result<RegularEnumeration> {
    check_orders(g, aut.base())?;
    let hol = HolGroup::new(aut.clone());
    let budget = Budget::new(cfg.budget);
    let plan = SourcePlan::new(g);
    let (homs, found) = cfg.install(|| -> Result<_> {
        let homs = enumerate_homs_with(g, &plan, aut.as_ref(), &budget, |_| true)?;
        let found: Vec<Result<Vec<Vec<u32>>>> = homs
            .par_iter()
            .map(|f| CocycleSearch::new(g, &plan, aut, &f.images, true).collect(&budget))
            .collect();
        Ok((homs, found))
    })?;
    let mut bijective_count = 0u64;
    let mut sets: BTreeSet<Vec<HolElement>> = BTreeSet::new();
    for (f, cocycles) in homs.iter().zip(found) {
        for gmap in cocycles? {
            bijective_count += 1;
            let pair = CrossedPair {
                f: f.images.clone(),
                g: gmap,
            };
            let theta = crate::crossed::fuse(&pair);
            debug_assert!(pair.is_bijective());
            if !sets.contains(&theta_sorted(&theta)) {
                verify_embedding(g, &hol, &theta)?;
                sets.insert(theta_sorted(&theta));
            }
        }
    }
    let label = g.label().to_string();
    let subgroups = sets
        .into_iter()
        .map(|elements| RegularSubgroup {
            elements,
            iso_type: label.clone(),
        })
        .collect();
    Ok(RegularEnumeration {
        hol,
        subgroups,
        bijective_count,
        stats: SearchStats {
            homs: homs.len() as u64,
            nodes: budget.used(),
        },
    })
}

fn theta_sorted(theta: &[HolElement]) -> Vec<HolElement> {
    let mut s = theta.to_vec();
    s.sort_unstable();
    s
}

/// `θ` must be a homomorphism with regular image; then the image is a regular
/// subgroup isomorphic to `G` via `θ` itself.
fn verify_embedding(g: &GroupTable, hol: &HolGroup, theta: &[HolElement]) -> Result<()> {
    for s in 0..g.order() {
        for t in 0..g.order() {
            if hol.compose(theta[s], theta[t]) != theta[g.mul(s, t)] {
                return Err(HgError::NotASubgroup(format!("θ fails at ({s}, {t})")));
            }
        }
    }
    if !hol.is_regular(theta)? {
        return Err(HgError::NotASubgroup("image is not regular".into()));
    }
    Ok(())
}

/// `e(G, N)` with its supporting counts.
#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub g: String,
    pub n: String,
    pub e: u64,
    pub raw_count: u64,
    pub aut_g: u64,
    pub aut_n: u64,
    pub bijective_count: u64,
    pub stats: SearchStats,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// `e(G, N)` through Byott's formula, with exact division.
pub fn count_e(g: &GroupTable, n: &GroupTable, cfg: &SearchConfig) -> Result<CensusReport> {
    check_orders(g, n)?;
    let start = Instant::now();
    let aut_n = Arc::new(automorphism_group_arc(Arc::new(n.clone()))?);
    let aut_g = automorphism_group(g)?.len() as u64;
    let en = regular_subgroups_with(g, &aut_n, cfg)?;
    report_from(g, n, aut_g, &en, start.elapsed())
}

pub(crate) fn report_from(
    g: &GroupTable,
    n: &GroupTable,
    aut_g: u64,
    en: &RegularEnumeration,
    elapsed: Duration,
) -> Result<CensusReport> {
    let raw = en.raw_count() as u64;
    let aut_n = en.hol.aut().len() as u64;
    let num = aut_g * raw;
    if num % aut_n != 0 {
        return Err(HgError::NonIntegral { aut_g, raw, aut_n });
    }
    Ok(CensusReport {
        g: g.label().to_string(),
        n: n.label().to_string(),
        e: num / aut_n,
        raw_count: raw,
        aut_g,
        aut_n,
        bijective_count: en.bijective_count,
        stats: en.stats,
        elapsed,
    })
}

/// Regular subgroups of `Hol(N)` grouped by isomorphism type.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub n: String,
    /// Type label to number of regular subgroups of that type.
    pub counts: BTreeMap<String, u64>,
    /// Set when the census tier is not exhaustive and no type-agnostic sweep
    /// confirmed completeness.
    pub partial: bool,
    /// Labels invented for types missing from the census.
    pub synthetic: Vec<String>,
}

/// Holomorphs up to this order also get a type-agnostic sweep in
/// [`classify_regulars`].
pub const AGNOSTIC_HOL_LIMIT: usize = 20_000;

/// For every census group `G` of order `|N|`, the number of regular subgroups
/// of `Hol(N)` isomorphic to `G`.
pub fn classify_regulars(n: &GroupTable, tier: &CensusTier, cfg: &SearchConfig) -> Result<Classification> {
    if tier.order != n.order() {
        return Err(HgError::UnknownOrder(n.order()));
    }
    let aut = Arc::new(automorphism_group_arc(Arc::new(n.clone()))?);
    let mut counts = BTreeMap::new();
    let mut entries: Vec<_> = tier.entries.iter().collect();
    entries.sort_by(|a, b| a.label.cmp(&b.label));
    let mut total = 0u64;
    for e in &entries {
        let en = regular_subgroups_with(&e.table, &aut, cfg)?;
        total += en.raw_count() as u64;
        counts.insert(e.label.clone(), en.raw_count() as u64);
    }
    let mut partial = !tier.exhaustive;
    let mut synthetic = Vec::new();
    let hol = HolGroup::new(aut.clone());
    if partial && hol.order() <= AGNOSTIC_HOL_LIMIT {
        let all = all_regular_subgroups(&hol, &Budget::new(cfg.budget))?;
        if all.len() as u64 != total {
            // identify the missing types
            let mut unknown: Vec<GroupTable> = Vec::new();
            let mut unknown_counts: Vec<u64> = Vec::new();
            for set in &all {
                let t = hol.subgroup_table(set, "regular")?;
                if entries.iter().any(|e| {
                    fingerprint(&e.table) == fingerprint(&t) && are_isomorphic(&e.table, &t).is_some()
                }) {
                    continue;
                }
                match unknown.iter().position(|u| are_isomorphic(u, &t).is_some()) {
                    Some(i) => unknown_counts[i] += 1,
                    None => {
                        unknown.push(t);
                        unknown_counts.push(1);
                    }
                }
            }
            for (i, c) in unknown_counts.into_iter().enumerate() {
                let label = format!("unlisted-{}-{}", n.order(), i + 1);
                counts.insert(label.clone(), c);
                synthetic.push(label);
            }
        }
        partial = false;
    }
    Ok(Classification {
        n: n.label().to_string(),
        counts,
        partial,
        synthetic,
    })
}

/// Every regular subgroup of `Hol(N)`, regardless of type, in canonical form.
///
/// A regular subgroup holds exactly one element `(x⁻¹, α)` sending 0 to each
/// `x`; the search adds such elements one at a time and closes, abandoning any
/// closure that is not semiregular or exceeds `|N|`.
pub fn all_regular_subgroups(hol: &HolGroup, budget: &Budget) -> Result<Vec<Vec<HolElement>>> {
    let n = hol.base().order();
    let mut found: BTreeSet<Vec<HolElement>> = BTreeSet::new();
    let mut visited: HashSet<Vec<HolElement>> = HashSet::new();
    let start = vec![HolElement::IDENTITY];
    agnostic_descend(hol, n, start, &mut found, &mut visited, budget)?;
    Ok(found.into_iter().collect())
}

fn agnostic_descend(
    hol: &HolGroup,
    n: usize,
    current: Vec<HolElement>,
    found: &mut BTreeSet<Vec<HolElement>>,
    visited: &mut HashSet<Vec<HolElement>>,
    budget: &Budget,
) -> Result<()> {
    if current.len() == n {
        found.insert(current);
        return Ok(());
    }
    let base = hol.base();
    let mut covered = vec![false; n];
    for &h in &current {
        covered[hol.act(h, 0)] = true;
    }
    let x = (0..n).find(|&x| !covered[x]).expect("a point is uncovered");
    let eta = base.inv(x);
    for alpha in 0..hol.aut().len() {
        budget.spend(1)?;
        let h = HolElement::new(eta, alpha);
        if let Some(closed) = semiregular_closure(hol, &current, h) {
            if visited.insert(closed.clone()) {
                agnostic_descend(hol, n, closed, found, visited, budget)?;
            }
        }
    }
    Ok(())
}

/// Closure of `set ∪ {h}` if it stays semiregular; sorted.
fn semiregular_closure(hol: &HolGroup, set: &[HolElement], h: HolElement) -> Option<Vec<HolElement>> {
    let n = hol.base().order();
    let mut by_point: Vec<Option<HolElement>> = vec![None; n];
    let mut list: Vec<HolElement> = Vec::with_capacity(n);
    let mut push = |e: HolElement, list: &mut Vec<HolElement>| -> Option<bool> {
        let p = hol.act(e, 0);
        match by_point[p] {
            Some(old) if old == e => Some(false),
            Some(_) => None,
            None => {
                by_point[p] = Some(e);
                list.push(e);
                Some(true)
            }
        }
    };
    for &e in set {
        push(e, &mut list)?;
    }
    push(h, &mut list)?;
    let gens: Vec<HolElement> = set.iter().copied().filter(|&e| e != HolElement::IDENTITY).chain([h]).collect();
    let mut i = 0;
    while i < list.len() {
        let a = list[i];
        for &s in &gens {
            push(hol.compose(a, s), &mut list)?;
        }
        i += 1;
    }
    list.sort_unstable();
    Some(list)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{abelian, alt, build, bundled_census, cyclic};
    use crate::holomorph::build_hol;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn small_regular_counts() {
        let c4 = cyclic(4).unwrap();
        let v4 = abelian(&[2, 2]).unwrap();
        assert_eq!(regular_subgroups_iso(&c4, &v4, &cfg()).unwrap().raw_count(), 3);
        assert_eq!(regular_subgroups_iso(&v4, &c4, &cfg()).unwrap().raw_count(), 1);
        assert_eq!(count_e(&v4, &c4, &cfg()).unwrap().e, 3);
        assert_eq!(count_e(&c4, &v4, &cfg()).unwrap().e, 1);
    }

    #[test]
    fn a5_lambda_rho() {
        let a5 = alt(5).unwrap();
        let en = regular_subgroups_iso(&a5, &a5, &cfg()).unwrap();
        assert_eq!(en.raw_count(), 2);
        assert!(en.is_lambda_rho());
        assert_eq!(en.bijective_count, 120 * 2);
    }

    #[test]
    fn c15_extreme() {
        let c15 = cyclic(15).unwrap();
        let r = count_e(&c15, &c15, &cfg()).unwrap();
        assert_eq!((r.e, r.raw_count), (1, 1));
    }

    #[test]
    fn classify_small() {
        let c4 = cyclic(4).unwrap();
        let cls = classify_regulars(&c4, &bundled_census(4).unwrap(), &cfg()).unwrap();
        assert_eq!(cls.counts, BTreeMap::from([("C4".into(), 1), ("V4".into(), 1)]));
        assert!(!cls.partial);
        let v4 = abelian(&[2, 2]).unwrap();
        let cls = classify_regulars(&v4, &bundled_census(4).unwrap(), &cfg()).unwrap();
        assert_eq!(cls.counts, BTreeMap::from([("C4".into(), 3), ("V4".into(), 1)]));
    }

    #[test]
    fn agnostic_sweep_matches_typed_counts() {
        for order in [4, 6, 8] {
            let tier = bundled_census(order).unwrap();
            for e in &tier.entries {
                let hol = build_hol(&e.table).unwrap();
                let all = all_regular_subgroups(&hol, &Budget::unlimited()).unwrap();
                let typed: usize = tier
                    .entries
                    .iter()
                    .map(|g| regular_subgroups_with(&g.table, hol.aut_arc(), &cfg()).unwrap().raw_count())
                    .sum();
                assert_eq!(all.len(), typed, "Hol({})", e.label);
                assert!(all.iter().all(|s| hol.is_regular(s).unwrap()));
            }
        }
    }

    #[test]
    fn synthetic_labels_for_missing_types() {
        let mut tier = bundled_census(6).unwrap();
        tier.entries.retain(|e| e.label == "C6");
        tier.exhaustive = false;
        let s3 = build("sym(3)").unwrap();
        let cls = classify_regulars(&s3, &tier, &cfg()).unwrap();
        assert_eq!(cls.synthetic.len(), 1);
        assert_eq!(cls.counts[&cls.synthetic[0]], 2);
        assert_eq!(cls.counts["C6"], 6);
    }

    #[test]
    fn order_mismatch_is_usage_error() {
        let err = count_e(&cyclic(3).unwrap(), &cyclic(4).unwrap(), &cfg()).unwrap_err();
        assert!(matches!(err, HgError::UsageError(_)));
    }
}

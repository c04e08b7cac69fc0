//! Homomorphism enumeration and crossed homomorphisms.
//!
//! A homomorphism `θ: G → Hol(N)` splits as `θ(σ) = (g(σ), f(σ))` with
//! `f ∈ Hom(G, Aut(N))` and `g` a cocycle for `f`:
//! `g(στ) = g(σ) · f(σ)(g(τ))`. The image is regular exactly when `g` is a
//! bijection. `f` trivial and `g` an isomorphism gives `ρ(N)`; `h` trivial
//! (see [`h_map`]) gives `λ(N)`.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use crate::automorphisms::{automorphism_group, is_characteristic, restrict, AutGroup, Automorphism};
use crate::error::{HgError, Result};
use crate::group::{
    are_isomorphic, center, minimal_generating_set, quotient, subgroup_table, CayleyScript,
    GroupTable, MulOracle, Stamp, Subgroup,
};
use crate::holomorph::{HolElement, HolGroup};

/// Default node budget for a single search.
pub const DEFAULT_BUDGET: u64 = 500_000_000;

/// Shared node counter; exceeding the limit aborts with `CapExceeded`.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    #[inline]
    pub fn spend(&self, nodes: u64) -> Result<()> {
        let used = self.used.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if used > self.limit {
            Err(HgError::cap("search nodes", self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET)
    }
}

/// A homomorphism given as its full image table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hom {
    pub images: Vec<u32>,
}

impl Hom {
    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|&x| x == 0)
    }

    /// Exhaustive check of `images[στ] = images[σ] * images[τ]`.
    pub fn verify<K: MulOracle + ?Sized>(&self, g: &GroupTable, k: &K) -> bool {
        let n = g.order();
        self.images.len() == n
            && (0..n).all(|x| {
                (0..n).all(|y| self.images[g.mul(x, y)] == k.op(self.images[x], self.images[y]))
            })
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.images.len()).filter(|&x| self.images[x] == 0).collect()
    }
}

/// Generating set and Cayley scripts shared by every search over a source group.
#[derive(Clone, Debug)]
pub struct SourcePlan {
    pub gens: Vec<usize>,
    pub script: CayleyScript,
    /// `prefix[i]` walks the subgroup generated by `gens[..=i]`.
    prefix: Vec<CayleyScript>,
}

impl SourcePlan {
    pub fn new(g: &GroupTable) -> Self {
        let gens = minimal_generating_set(g);
        let prefix = (0..gens.len())
            .map(|i| CayleyScript::over_subgroup(g, &gens[..=i]))
            .collect();
        SourcePlan {
            script: CayleyScript::new(g, &gens),
            gens,
            prefix,
        }
    }
}

/// All homomorphisms `G → K` accepted by `filter`, in lexicographic order of
/// generator images.
///
/// Generator images must have order dividing the generator's order; each
/// prefix of generators is checked for consistency on the subgroup it
/// generates before the next is assigned. The first generator's choices run in
/// parallel and are merged in order.
pub fn enumerate_homs<K, F>(g: &GroupTable, k: &K, budget: &Budget, filter: F) -> Result<Vec<Hom>>
where
    K: MulOracle + ?Sized,
    F: Fn(&[u32]) -> bool + Sync,
{
    let plan = SourcePlan::new(g);
    enumerate_homs_with(g, &plan, k, budget, filter)
}

pub fn enumerate_homs_with<K, F>(
    g: &GroupTable,
    plan: &SourcePlan,
    k: &K,
    budget: &Budget,
    filter: F,
) -> Result<Vec<Hom>>
where
    K: MulOracle + ?Sized,
    F: Fn(&[u32]) -> bool + Sync,
{
    let n = g.order();
    if plan.gens.is_empty() {
        let images = vec![0u32; n];
        return Ok(if filter(&images) { vec![Hom { images }] } else { Vec::new() });
    }
    let orders: Vec<u32> = (0..k.size() as u32).map(|y| k.order_of(y)).collect();
    let cands: Vec<Vec<u32>> = plan
        .gens
        .iter()
        .map(|&s| {
            let os = g.elt_order(s) as u32;
            (0..k.size() as u32).filter(|&y| os % orders[y as usize] == 0).collect()
        })
        .collect();
    let parts: Vec<Result<Vec<Hom>>> = cands[0]
        .par_iter()
        .map(|&y0| {
            let mut out = Vec::new();
            let mut images = vec![0u32; plan.gens.len()];
            let mut vals = vec![0u32; n];
            images[0] = y0;
            hom_descend(plan, k, &cands, 1, &mut images, &mut vals, budget, &filter, &mut out)?;
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for p in parts {
        all.extend(p?);
    }
    Ok(all)
}

#[allow(clippy::too_many_arguments)]
fn hom_descend<K, F>(
    plan: &SourcePlan,
    k: &K,
    cands: &[Vec<u32>],
    depth: usize,
    images: &mut [u32],
    vals: &mut [u32],
    budget: &Budget,
    filter: &F,
    out: &mut Vec<Hom>,
) -> Result<()>
where
    K: MulOracle + ?Sized,
    F: Fn(&[u32]) -> bool + Sync,
{
    budget.spend(1)?;
    let script = &plan.prefix[depth - 1];
    vals[0] = 0;
    if !script.run(vals, |_, v, gi| k.op(v, images[gi]), |_| true) {
        return Ok(());
    }
    if depth == images.len() {
        if filter(vals) {
            out.push(Hom {
                images: vals.to_vec(),
            });
        }
        return Ok(());
    }
    for &y in &cands[depth] {
        images[depth] = y;
        hom_descend(plan, k, cands, depth + 1, images, vals, budget, filter, out)?;
    }
    Ok(())
}

/// A crossed homomorphism: `f: G → Aut(N)` as automorphism indices and a
/// cocycle `g: G → N` for it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossedPair {
    pub f: Vec<u32>,
    pub g: Vec<u32>,
}

impl CrossedPair {
    pub fn is_bijective(&self) -> bool {
        let mut hit = vec![false; self.g.len()];
        self.g
            .iter()
            .all(|&x| (x as usize) < hit.len() && !std::mem::replace(&mut hit[x as usize], true))
    }
}

/// Splits `θ(σ) = (η, α)` into `g(σ) = η`, `f(σ) = α`.
pub fn split_hom(theta: &[HolElement]) -> CrossedPair {
    CrossedPair {
        f: theta.iter().map(|h| h.alpha).collect(),
        g: theta.iter().map(|h| h.eta).collect(),
    }
}

/// Inverse of [`split_hom`].
pub fn fuse(pair: &CrossedPair) -> Vec<HolElement> {
    pair.f
        .iter()
        .zip(&pair.g)
        .map(|(&alpha, &eta)| HolElement { eta, alpha })
        .collect()
}

/// Where the cocycle identity (or `g(1) = 1`, or the homomorphism property of
/// `f`) first fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleFailure {
    IdentityNotFixed,
    NotAHom { sigma: usize, tau: usize },
    Cocycle { sigma: usize, tau: usize },
}

/// Exhaustive cocycle check over all pairs.
pub fn cocycle_check(
    g: &GroupTable,
    aut: &AutGroup,
    pair: &CrossedPair,
) -> std::result::Result<(), CocycleFailure> {
    let n = aut.base();
    if pair.g[0] != 0 || pair.f[0] != 0 {
        return Err(CocycleFailure::IdentityNotFixed);
    }
    for s in 0..g.order() {
        let (gs, fs) = (pair.g[s] as usize, pair.f[s] as usize);
        for t in 0..g.order() {
            let st = g.mul(s, t);
            if pair.f[st] as usize != aut.compose(fs, pair.f[t] as usize) {
                return Err(CocycleFailure::NotAHom { sigma: s, tau: t });
            }
            if pair.g[st] as usize != n.mul(gs, aut.apply(fs, pair.g[t] as usize)) {
                return Err(CocycleFailure::Cocycle { sigma: s, tau: t });
            }
        }
    }
    Ok(())
}

/// `h(σ) = conj(g(σ)) ∘ f(σ)`.
pub fn h_map(aut: &AutGroup, pair: &CrossedPair) -> Vec<u32> {
    pair.f
        .iter()
        .zip(&pair.g)
        .map(|(&f, &g)| aut.compose(aut.conj_index(g as usize), f as usize) as u32)
        .collect()
}

/// Checks the four structural properties of the `h`-map:
/// (a) `h` is a homomorphism; (b) `f(σ) = h(σ)` iff `g(σ) ∈ Z(N)`;
/// (c) `g` is a homomorphism on `ker f`; (d) `σ ↦ g(σ)⁻¹` is a homomorphism
/// on `ker h`. Returns the first failing property.
pub fn h_properties(g: &GroupTable, aut: &AutGroup, pair: &CrossedPair) -> std::result::Result<(), String> {
    let n = aut.base();
    let h = h_map(aut, pair);
    let hom = Hom { images: h.clone() };
    if !hom.verify(g, aut) {
        return Err("(a) h is not a homomorphism".into());
    }
    let z = center(n);
    for s in 0..g.order() {
        if (pair.f[s] == h[s]) != z.contains(pair.g[s] as usize) {
            return Err(format!("(b) fails at {s}"));
        }
    }
    let ker_f: Vec<usize> = (0..g.order()).filter(|&s| pair.f[s] == 0).collect();
    let ker_h: Vec<usize> = (0..g.order()).filter(|&s| h[s] == 0).collect();
    for &s in &ker_f {
        for &t in &ker_f {
            let st = g.mul(s, t);
            if pair.g[st] as usize != n.mul(pair.g[s] as usize, pair.g[t] as usize) {
                return Err(format!("(c) fails at ({s}, {t})"));
            }
        }
    }
    let ginv = |s: usize| n.inv(pair.g[s] as usize);
    for &s in &ker_h {
        for &t in &ker_h {
            if ginv(g.mul(s, t)) != n.mul(ginv(s), ginv(t)) {
                return Err(format!("(d) fails at ({s}, {t})"));
            }
        }
    }
    Ok(())
}

/// Cocycles `g` for a fixed homomorphism `f: G → Aut(N)`.
///
/// `g` is determined by its values on the generators. Candidates for each
/// generator `s` of order `m` must satisfy the twisted norm condition
/// `g(s^m) = 1`, where `g(s^{j+1}) = g(s^j) · f(s)^j(g(s))`; with
/// `bijective` the values `g(s^j)` must also be distinct. Products of
/// generator pairs are checked the same way before the full extension.
pub struct CocycleSearch<'a> {
    g: &'a GroupTable,
    plan: &'a SourcePlan,
    aut: &'a AutGroup,
    f: &'a [u32],
    bijective: bool,
}

impl<'a> CocycleSearch<'a> {
    pub fn new(g: &'a GroupTable, plan: &'a SourcePlan, aut: &'a AutGroup, f: &'a [u32], bijective: bool) -> Self {
        CocycleSearch {
            g,
            plan,
            aut,
            f,
            bijective,
        }
    }

    /// Walks `σ^j` for `j = 1..=m` from `g(σ) = c`; true when `g(σ^m) = 1`
    /// (and, if bijective, the intermediate values are distinct and non-trivial).
    fn twisted_norm_ok(&self, sigma: usize, c: usize, stamp: &mut Stamp) -> bool {
        let n = self.aut.base();
        let m = self.g.elt_order(sigma);
        let alpha = self.f[sigma] as usize;
        let mut val = 0usize;
        let mut power = 0usize;
        if self.bijective {
            stamp.advance();
            stamp.mark(0);
        }
        for j in 0..m {
            val = n.mul(val, self.aut.apply(power, c));
            power = self.aut.compose(power, alpha);
            if j + 1 < m && self.bijective && !stamp.mark(val) {
                return false;
            }
        }
        val == 0
    }

    /// Calls `visit` with each cocycle; stops when it returns false.
    pub fn for_each(&self, budget: &Budget, mut visit: impl FnMut(&[u32]) -> bool) -> Result<()> {
        let n = self.aut.base();
        let k = self.plan.gens.len();
        let mut stamp = Stamp::new(n.order());
        let mut vals = vec![0u32; self.g.order()];
        if k == 0 {
            visit(&vals);
            return Ok(());
        }
        let cands: Vec<Vec<u32>> = self
            .plan
            .gens
            .iter()
            .map(|&s| {
                (0..n.order())
                    .filter(|&c| self.twisted_norm_ok(s, c, &mut stamp))
                    .map(|c| c as u32)
                    .collect()
            })
            .collect();
        budget.spend(n.order() as u64 * k as u64)?;
        if cands.iter().any(|c| c.is_empty()) {
            return Ok(());
        }
        let mut images = vec![0u32; k];
        self.descend(0, &cands, &mut images, &mut vals, &mut stamp, budget, &mut visit)?;
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        depth: usize,
        cands: &[Vec<u32>],
        images: &mut [u32],
        vals: &mut [u32],
        stamp: &mut Stamp,
        budget: &Budget,
        visit: &mut impl FnMut(&[u32]) -> bool,
    ) -> Result<bool> {
        let n = self.aut.base();
        let gens = &self.plan.gens;
        if depth == gens.len() {
            budget.spend(1)?;
            let f = self.f;
            let aut = self.aut;
            let ok = if self.bijective {
                stamp.advance();
                stamp.mark(0);
                vals[0] = 0;
                self.plan.script.run(
                    vals,
                    |x, gx, gi| n.mul(gx as usize, aut.apply(f[x] as usize, images[gi] as usize)) as u32,
                    |v| stamp.mark(v as usize),
                )
            } else {
                vals[0] = 0;
                self.plan.script.run(
                    vals,
                    |x, gx, gi| n.mul(gx as usize, aut.apply(f[x] as usize, images[gi] as usize)) as u32,
                    |_| true,
                )
            };
            return Ok(!ok || visit(vals));
        }
        for &c in &cands[depth] {
            images[depth] = c;
            // g(s_i s_d) = g(s_i) · f(s_i)(g(s_d)) must pass the norm test too
            let mut ok = true;
            for i in 0..depth {
                let p = self.g.mul(gens[i], gens[depth]);
                let gp = n.mul(images[i] as usize, self.aut.apply(self.f[gens[i]] as usize, c as usize));
                if !self.twisted_norm_ok(p, gp, stamp) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            if !self.descend(depth + 1, cands, images, vals, stamp, budget, visit)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All cocycles, collected.
    pub fn collect(&self, budget: &Budget) -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        self.for_each(budget, |v| {
            out.push(v.to_vec());
            true
        })?;
        Ok(out)
    }
}

/// Every crossed pair `(f, g)` for `G` and `N` (all of `Z¹_f(G, N)` for every
/// `f`), optionally only bijective ones.
pub fn enumerate_pairs(
    g: &GroupTable,
    aut: &AutGroup,
    bijective: bool,
    budget: &Budget,
) -> Result<Vec<CrossedPair>> {
    let plan = SourcePlan::new(g);
    let homs = enumerate_homs_with(g, &plan, aut, budget, |_| true)?;
    let mut out = Vec::new();
    for f in homs {
        let search = CocycleSearch::new(g, &plan, aut, &f.images, bijective);
        for gmap in search.collect(budget)? {
            out.push(CrossedPair {
                f: f.images.clone(),
                g: gmap,
            });
        }
    }
    Ok(out)
}

/// The ρ-split pair of an isomorphism `φ: G → N`: `f` trivial, `g = φ`.
pub fn rho_pair(phi: &[usize]) -> CrossedPair {
    CrossedPair {
        f: vec![0; phi.len()],
        g: phi.iter().map(|&x| x as u32).collect(),
    }
}

/// The λ-split pair of `φ`: `g(σ) = φ(σ)⁻¹`, `f(σ) = conj(φ(σ))`.
pub fn lambda_pair(aut: &AutGroup, phi: &[usize]) -> CrossedPair {
    let n = aut.base();
    CrossedPair {
        f: phi.iter().map(|&x| aut.conj_index(x) as u32).collect(),
        g: phi.iter().map(|&x| n.inv(x) as u32).collect(),
    }
}

/// Reduction data for a characteristic subgroup `Λ ⊴ N`.
#[derive(Debug)]
pub struct QuotientReduction {
    pub lambda: Subgroup,
    pub quotient: Arc<GroupTable>,
    /// Element of `N` to coset index.
    pub proj: Vec<usize>,
    pub aut_quotient: Arc<AutGroup>,
    /// Index in `Aut(N)` to index of the induced automorphism in `Aut(N/Λ)`.
    pub reduce: Vec<u32>,
}

/// Builds `N/Λ` and the reduction `Aut(N) → Aut(N/Λ)`.
pub fn quotient_reduction(aut: &AutGroup, lambda: &Subgroup) -> Result<QuotientReduction> {
    let n = aut.base();
    if !is_characteristic(aut, lambda) {
        return Err(HgError::NotCharacteristic(lambda.len()));
    }
    let (q, proj) = quotient(n, lambda)?;
    let aut_q = automorphism_group(&q)?;
    let m = q.order();
    let mut rep = vec![usize::MAX; m];
    for x in 0..n.order() {
        if rep[proj[x]] == usize::MAX {
            rep[proj[x]] = x;
        }
    }
    let reduce = aut
        .elements()
        .iter()
        .map(|a| {
            let images: Vec<u32> = (0..m).map(|c| proj[a.apply(rep[c])] as u32).collect();
            aut_q
                .index_of(&Automorphism::from_raw(images))
                .map(|i| i as u32)
                .ok_or_else(|| HgError::BadAction("induced map is not an automorphism".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QuotientReduction {
        lambda: lambda.clone(),
        quotient: Arc::new(q),
        proj,
        aut_quotient: Arc::new(aut_q),
        reduce,
    })
}

/// `(f̄, ḡ)` on `(G, N/Λ)`, re-verified as a crossed pair.
pub fn induce_quotient(g: &GroupTable, pair: &CrossedPair, red: &QuotientReduction) -> Result<CrossedPair> {
    let out = CrossedPair {
        f: pair.f.iter().map(|&a| red.reduce[a as usize]).collect(),
        g: pair.g.iter().map(|&x| red.proj[x as usize] as u32).collect(),
    };
    cocycle_check(g, &red.aut_quotient, &out)
        .map_err(|e| HgError::BadAction(format!("induced pair fails: {e:?}")))?;
    Ok(out)
}

/// `{σ : g(σ) ∈ Λ}`, verified to be a subgroup.
pub fn preimage_subgroup(g: &GroupTable, pair: &CrossedPair, lambda: &Subgroup) -> Result<Subgroup> {
    let elems = (0..g.order()).filter(|&s| lambda.contains(pair.g[s] as usize));
    Subgroup::from_elements(g, elems)
}

/// A regular subgroup of `Hol(Λ)` obtained by restricting a bijective pair.
#[derive(Debug)]
pub struct Descent {
    pub hol: HolGroup,
    /// Canonical sorted elements of the regular subgroup.
    pub elements: Vec<HolElement>,
    pub preimage: Subgroup,
}

/// `{(g(σ), f(σ)|_Λ) : σ ∈ g⁻¹(Λ)}` inside `Hol(Λ)`, checked regular and
/// isomorphic to `g⁻¹(Λ)`.
pub fn descend_regular(
    g: &GroupTable,
    aut: &AutGroup,
    pair: &CrossedPair,
    lambda: &Subgroup,
) -> Result<Descent> {
    if !pair.is_bijective() {
        return Err(HgError::NotBijective);
    }
    if !is_characteristic(aut, lambda) {
        return Err(HgError::NotCharacteristic(lambda.len()));
    }
    let hol = crate::holomorph::build_hol(&subgroup_table(aut.base(), lambda))?;
    descend_regular_in(g, aut, pair, lambda, hol)
}

/// As [`descend_regular`] with `Hol(Λ)` supplied; `hol` must be built on the
/// table of `Λ` with elements in the subgroup's sorted order.
pub fn descend_regular_in(
    g: &GroupTable,
    aut: &AutGroup,
    pair: &CrossedPair,
    lambda: &Subgroup,
    hol: HolGroup,
) -> Result<Descent> {
    if !pair.is_bijective() {
        return Err(HgError::NotBijective);
    }
    let pre = preimage_subgroup(g, pair, lambda)?;
    let mut elements = Vec::with_capacity(pre.len());
    for s in pre.iter() {
        let eta = lambda.position(pair.g[s] as usize).expect("g(σ) lies in Λ");
        let r = restrict(aut.get(pair.f[s] as usize), lambda)?;
        let alpha = hol
            .aut()
            .index_of(&r)
            .ok_or_else(|| HgError::BadAction("restriction is not an automorphism".into()))?;
        elements.push(HolElement::new(eta, alpha));
    }
    elements.sort_unstable();
    if !hol.is_regular(&elements)? {
        return Err(HgError::NotASubgroup("descended set is not regular".into()));
    }
    let st = hol.subgroup_table(&elements, "descent")?;
    if are_isomorphic(&st, &subgroup_table(g, &pre)).is_none() {
        return Err(HgError::NotASubgroup("descended subgroup has the wrong type".into()));
    }
    Ok(Descent {
        hol,
        elements,
        preimage: pre,
    })
}

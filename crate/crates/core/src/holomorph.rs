//! The holomorph `Hol(N) = ρ(N) ⋊ Aut(N)` as pairs `(η, α)`.
//!
//! Law: `(η1, α1)(η2, α2) = (η1 · α1(η2), α1 ∘ α2)`.
//! Action on `N`: `(η, α) · x = α(x) · η⁻¹`.
//! Embeddings: `ρ(η) = (η, id)` and `λ(η) = (η⁻¹, conj(η))`, so
//! `ρ(η) · x = x η⁻¹` and `λ(η) · x = η x`.

use std::collections::HashMap;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::automorphisms::{automorphism_group_arc, AutGroup};
use crate::error::{HgError, Result};
use crate::group::{GroupTable, MulOracle, TABLE_CAP};

/// Holomorphs up to this order get exhaustive law checks.
pub const HOL_EXHAUSTIVE_LIMIT: usize = 10_000;

const LAW_SAMPLES: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HolElement {
    pub eta: u32,
    /// Index into the owning [`AutGroup`].
    pub alpha: u32,
}

impl HolElement {
    pub const IDENTITY: HolElement = HolElement { eta: 0, alpha: 0 };

    pub fn new(eta: usize, alpha: usize) -> Self {
        HolElement {
            eta: eta as u32,
            alpha: alpha as u32,
        }
    }
}

#[derive(Clone, Debug)]
pub struct HolGroup {
    base: Arc<GroupTable>,
    aut: Arc<AutGroup>,
}

/// Builds `Hol(n)` and checks its laws.
pub fn build_hol(n: &GroupTable) -> Result<HolGroup> {
    let aut = automorphism_group_arc(Arc::new(n.clone()))?;
    let hol = HolGroup::new(Arc::new(aut));
    hol.verify_laws()?;
    Ok(hol)
}

impl HolGroup {
    pub fn new(aut: Arc<AutGroup>) -> Self {
        HolGroup {
            base: aut.base_arc().clone(),
            aut,
        }
    }

    pub fn base(&self) -> &GroupTable {
        &self.base
    }

    pub fn aut(&self) -> &AutGroup {
        &self.aut
    }

    pub fn aut_arc(&self) -> &Arc<AutGroup> {
        &self.aut
    }

    pub fn order(&self) -> usize {
        self.base.order() * self.aut.len()
    }

    #[inline]
    pub fn compose(&self, a: HolElement, b: HolElement) -> HolElement {
        let (a1, a2) = (a.alpha as usize, b.alpha as usize);
        HolElement {
            eta: self.base.mul(a.eta as usize, self.aut.apply(a1, b.eta as usize)) as u32,
            alpha: self.aut.compose(a1, a2) as u32,
        }
    }

    #[inline]
    pub fn inverse(&self, h: HolElement) -> HolElement {
        let ai = self.aut.inverse(h.alpha as usize);
        HolElement {
            eta: self.aut.apply(ai, self.base.inv(h.eta as usize)) as u32,
            alpha: ai as u32,
        }
    }

    #[inline]
    pub fn act(&self, h: HolElement, x: usize) -> usize {
        self.base
            .mul(self.aut.apply(h.alpha as usize, x), self.base.inv(h.eta as usize))
    }

    pub fn rho(&self, eta: usize) -> HolElement {
        HolElement::new(eta, 0)
    }

    pub fn lambda(&self, eta: usize) -> HolElement {
        HolElement::new(self.base.inv(eta), self.aut.conj_index(eta))
    }

    /// `h` as a permutation of `N`.
    pub fn to_perm(&self, h: HolElement) -> Vec<u32> {
        (0..self.base.order()).map(|x| self.act(h, x) as u32).collect()
    }

    #[inline]
    pub fn index(&self, h: HolElement) -> usize {
        h.eta as usize * self.aut.len() + h.alpha as usize
    }

    #[inline]
    pub fn element(&self, i: usize) -> HolElement {
        let m = self.aut.len();
        HolElement::new(i / m, i % m)
    }

    /// Group-law checks: identity, inverses, and compatibility of `compose`
    /// with the action. Exhaustive against a generating set up to
    /// [`HOL_EXHAUSTIVE_LIMIT`]; sampled beyond. Associativity is sampled.
    pub fn verify_laws(&self) -> Result<()> {
        let total = self.order();
        let n = self.base.order();
        let fail = |what: &str, a: HolElement, b: HolElement| HgError::NotAGroup {
            reason: format!("holomorph {what} law fails"),
            witness: (self.index(a), self.index(b), 0),
        };
        let mut gens: Vec<HolElement> = self
            .aut
            .key_generators()
            .iter()
            .map(|&g| self.rho(g))
            .collect();
        gens.extend(self.aut.generators().iter().map(|&a| HolElement::new(0, a)));
        let check_one = |h: HolElement| -> Result<()> {
            let hi = self.inverse(h);
            if self.compose(h, hi) != HolElement::IDENTITY || self.compose(hi, h) != HolElement::IDENTITY {
                return Err(fail("inverse", h, hi));
            }
            if self.compose(HolElement::IDENTITY, h) != h || self.compose(h, HolElement::IDENTITY) != h {
                return Err(fail("identity", h, h));
            }
            for &s in &gens {
                let hs = self.compose(h, s);
                if (0..n).any(|x| self.act(hs, x) != self.act(h, self.act(s, x))) {
                    return Err(fail("action", h, s));
                }
            }
            Ok(())
        };
        let mut rng = StdRng::seed_from_u64(0x5eed);
        if total <= HOL_EXHAUSTIVE_LIMIT {
            for i in 0..total {
                check_one(self.element(i))?;
            }
        } else {
            for _ in 0..LAW_SAMPLES / gens.len().max(1) {
                check_one(self.element(rng.gen_range(0..total)))?;
            }
        }
        for _ in 0..LAW_SAMPLES {
            let a = self.element(rng.gen_range(0..total));
            let b = self.element(rng.gen_range(0..total));
            let c = self.element(rng.gen_range(0..total));
            if self.compose(self.compose(a, b), c) != self.compose(a, self.compose(b, c)) {
                return Err(fail("associativity", a, b));
            }
        }
        Ok(())
    }

    /// `(λ(N), ρ(N))`, each in canonical sorted form.
    pub fn lambda_rho_embed(&self) -> (Vec<HolElement>, Vec<HolElement>) {
        let n = self.base.order();
        let mut l: Vec<HolElement> = (0..n).map(|e| self.lambda(e)).collect();
        let mut r: Vec<HolElement> = (0..n).map(|e| self.rho(e)).collect();
        l.sort_unstable();
        r.sort_unstable();
        (l, r)
    }

    /// Checks that `set` is a subgroup; returns it sorted and deduplicated.
    pub fn check_subgroup(&self, set: &[HolElement]) -> Result<Vec<HolElement>> {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.binary_search(&HolElement::IDENTITY).is_err() {
            return Err(HgError::NotASubgroup("identity missing".into()));
        }
        for &a in &s {
            for &b in &s {
                let c = self.compose(a, b);
                if s.binary_search(&c).is_err() {
                    return Err(HgError::NotASubgroup(format!(
                        "{:?} * {:?} = {:?} leaves the set",
                        a, b, c
                    )));
                }
            }
        }
        Ok(s)
    }

    /// True iff `set` is a subgroup of order `|N|` whose orbit map at the
    /// identity is a bijection.
    pub fn is_regular(&self, set: &[HolElement]) -> Result<bool> {
        let s = self.check_subgroup(set)?;
        let n = self.base.order();
        if s.len() != n {
            return Ok(false);
        }
        let mut hit = vec![false; n];
        Ok(s.iter().all(|&h| !std::mem::replace(&mut hit[self.act(h, 0)], true)))
    }

    /// Cayley table of a subgroup given in canonical sorted form; element `i`
    /// is `set[i]`.
    pub fn subgroup_table(&self, set: &[HolElement], label: impl Into<String>) -> Result<GroupTable> {
        let m = set.len();
        if m > TABLE_CAP {
            return Err(HgError::cap("subgroup table order", TABLE_CAP as u64));
        }
        let pos: HashMap<HolElement, u32> =
            set.iter().enumerate().map(|(i, &h)| (h, i as u32)).collect();
        let mut mul = vec![0u32; m * m];
        for (i, &a) in set.iter().enumerate() {
            for (j, &b) in set.iter().enumerate() {
                mul[i * m + j] = *pos
                    .get(&self.compose(a, b))
                    .ok_or_else(|| HgError::NotASubgroup("not closed".into()))?;
            }
        }
        if set.first() != Some(&HolElement::IDENTITY) {
            return Err(HgError::NotASubgroup("identity must come first".into()));
        }
        GroupTable::from_flat(m, mul, label, false)
    }

    /// The whole holomorph as a Cayley table (small cases only).
    pub fn table(&self) -> Result<GroupTable> {
        let all: Vec<HolElement> = (0..self.order()).map(|i| self.element(i)).collect();
        self.subgroup_table(&all, format!("Hol({})", self.base.label()))
    }
}

impl MulOracle for HolGroup {
    fn size(&self) -> usize {
        self.order()
    }

    #[inline]
    fn op(&self, a: u32, b: u32) -> u32 {
        self.index(self.compose(self.element(a as usize), self.element(b as usize))) as u32
    }

    fn order_of(&self, a: u32) -> u32 {
        let h = self.element(a as usize);
        let mut x = h;
        let mut k = 1;
        while x != HolElement::IDENTITY {
            x = self.compose(x, h);
            k += 1;
        }
        k
    }
}

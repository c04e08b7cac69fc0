use super::bitset::BitSet;
use super::script::{CayleyScript, Stamp};
use super::subgroup::{class_sizes, closure_list, center, derived_series};
use super::table::GroupTable;

/// Isomorphism invariants used to reject pairs cheaply. Equal fingerprints
/// are necessary, never sufficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsoFingerprint {
    pub order: usize,
    pub element_orders: Vec<u32>,
    pub center_size: usize,
    pub derived_size: usize,
    pub class_sizes: Vec<u32>,
    pub abelian: bool,
}

pub fn fingerprint(g: &GroupTable) -> IsoFingerprint {
    let mut element_orders = g.elt_orders().to_vec();
    element_orders.sort_unstable();
    let mut class_sizes = class_sizes(g);
    class_sizes.sort_unstable();
    let series = derived_series(g);
    IsoFingerprint {
        order: g.order(),
        element_orders,
        center_size: center(g).len(),
        derived_size: series.derived_subgroup().len(),
        class_sizes,
        abelian: g.is_abelian(),
    }
}

/// Per-element invariant: (element order, conjugacy class size).
pub(crate) fn element_keys(g: &GroupTable) -> Vec<(u32, u32)> {
    let sizes = class_sizes(g);
    g.elt_orders()
        .iter()
        .zip(sizes)
        .map(|(&o, c)| (o, c))
        .collect()
}

/// Work budget (closure steps) for the exact minimal-generating-set search
/// before falling back to greedy extension.
const MIN_GEN_WORK: usize = 50_000_000;

/// A minimum-size generating set.
///
/// Candidates are scanned rarest invariant class first (fewest elements
/// sharing order and class size), ties by index; the first generating tuple
/// in that order wins. Rare generators keep isomorphism and automorphism
/// searches narrow.
pub fn minimal_generating_set(g: &GroupTable) -> Vec<usize> {
    let n = g.order();
    if n == 1 {
        return Vec::new();
    }
    let keys = element_keys(g);
    candidate_generating_set(g, &keys)
}

pub(crate) fn candidate_order(g: &GroupTable, keys: &[(u32, u32)]) -> Vec<usize> {
    let mut freq = std::collections::HashMap::new();
    for k in keys {
        *freq.entry(*k).or_insert(0usize) += 1;
    }
    let mut cand: Vec<usize> = (1..g.order()).collect();
    cand.sort_by_key(|&x| (freq[&keys[x]], std::cmp::Reverse(keys[x].0), x));
    cand
}

fn candidate_generating_set(g: &GroupTable, keys: &[(u32, u32)]) -> Vec<usize> {
    let n = g.order();
    let cand = candidate_order(g, keys);
    let limit = (MIN_GEN_WORK / n).max(1000);
    for k in 1..=usize::BITS as usize {
        let mut nodes = 0usize;
        let mut chosen = Vec::with_capacity(k);
        match search_gens(g, &cand, k, 0, &mut chosen, &mut nodes, limit) {
            Some(found) => return found,
            None if nodes >= limit => break,
            None => {}
        }
    }
    // greedy fallback: add the first candidate outside the current closure
    let mut gens = Vec::new();
    let mut current = BitSet::new(n);
    current.insert(0);
    for &x in &cand {
        if !current.contains(x) {
            gens.push(x);
            let (set, list) = closure_list(g, &gens);
            current = set;
            if list.len() == n {
                break;
            }
        }
    }
    gens
}

fn search_gens(
    g: &GroupTable,
    cand: &[usize],
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    nodes: &mut usize,
    limit: usize,
) -> Option<Vec<usize>> {
    let (current, list) = closure_list(g, chosen);
    *nodes += 1;
    if list.len() == g.order() {
        return Some(chosen.clone());
    }
    if chosen.len() == k || *nodes >= limit {
        return None;
    }
    for (i, &x) in cand.iter().enumerate().skip(start) {
        if current.contains(x) {
            continue;
        }
        chosen.push(x);
        let r = search_gens(g, cand, k, i + 1, chosen, nodes, limit);
        chosen.pop();
        if r.is_some() {
            return r;
        }
        if *nodes >= limit {
            return None;
        }
    }
    None
}

/// Backtracking enumerator of bijective homomorphisms `a -> b` between groups
/// of equal order, driven by images of a generating set of `a`.
pub(crate) struct BijectionSearch<'a> {
    a: &'a GroupTable,
    b: &'a GroupTable,
    script: CayleyScript,
    a_keys: Vec<(u32, u32)>,
    b_keys: Vec<(u32, u32)>,
    pub nodes: u64,
}

impl<'a> BijectionSearch<'a> {
    pub fn new(a: &'a GroupTable, b: &'a GroupTable) -> Self {
        let a_keys = element_keys(a);
        let b_keys = if std::ptr::eq(a, b) {
            a_keys.clone()
        } else {
            element_keys(b)
        };
        let gens = if a.order() == 1 {
            Vec::new()
        } else {
            candidate_generating_set(a, &a_keys)
        };
        BijectionSearch {
            a,
            b,
            script: CayleyScript::new(a, &gens),
            a_keys,
            b_keys,
            nodes: 0,
        }
    }

    pub fn gens(&self) -> &[usize] {
        self.script.gens()
    }

    /// Calls `visit` with every bijective homomorphism; stops early when
    /// `visit` returns false.
    pub fn for_each(&mut self, mut visit: impl FnMut(&[u32]) -> bool) {
        if self.a.order() != self.b.order() {
            return;
        }
        let gens = self.script.gens().to_vec();
        let cands: Vec<Vec<u32>> = gens
            .iter()
            .map(|&x| {
                (0..self.b.order() as u32)
                    .filter(|&y| self.b_keys[y as usize] == self.a_keys[x])
                    .collect()
            })
            .collect();
        let mut images = vec![0u32; gens.len()];
        let mut vals = vec![0u32; self.a.order()];
        let mut stamp = Stamp::new(self.b.order());
        self.descend(0, &gens, &cands, &mut images, &mut vals, &mut stamp, &mut visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &mut self,
        depth: usize,
        gens: &[usize],
        cands: &[Vec<u32>],
        images: &mut [u32],
        vals: &mut [u32],
        stamp: &mut Stamp,
        visit: &mut impl FnMut(&[u32]) -> bool,
    ) -> bool {
        if depth == gens.len() {
            self.nodes += 1;
            if self.script.extend_injective(self.b, images, vals, stamp) {
                return visit(vals);
            }
            return true;
        }
        for &y in &cands[depth] {
            // products with earlier generators must carry matching invariants
            let ok = (0..depth).all(|i| {
                let pa = self.a.mul(gens[i], gens[depth]);
                let pb = self.b.mul(images[i] as usize, y as usize);
                self.a_keys[pa] == self.b_keys[pb]
            });
            if !ok {
                continue;
            }
            images[depth] = y;
            if !self.descend(depth + 1, gens, cands, images, vals, stamp, visit) {
                return false;
            }
        }
        true
    }
}

/// An isomorphism `a -> b` as an element-index map, or `None`.
pub fn are_isomorphic(a: &GroupTable, b: &GroupTable) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    if fingerprint(a) != fingerprint(b) {
        return None;
    }
    let mut search = BijectionSearch::new(a, b);
    let mut found = None;
    search.for_each(|vals| {
        found = Some(vals.iter().map(|&v| v as usize).collect::<Vec<_>>());
        false
    });
    debug_assert!(found.as_ref().map_or(true, |m| a.is_hom_to(b, m)));
    found
}

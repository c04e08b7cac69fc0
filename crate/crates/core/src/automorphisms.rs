//! Automorphism groups, inner automorphisms and characteristic subgroups.

use std::collections::HashMap;
use std::sync::Arc;

use crate::catalog::product;
use crate::error::{HgError, Result};
use crate::group::{
    are_isomorphic, center, is_simple, normal_subgroups, subgroup_table, BijectionSearch, BitSet,
    GroupTable, MulOracle, Subgroup, TABLE_CAP,
};

/// Largest automorphism group that is enumerated in full.
pub const AUT_CAP: usize = 50_000;

/// Automorphism groups up to this size carry a dense composition table.
pub const DENSE_AUT_LIMIT: usize = 2048;

/// A bijection of element indices respecting the table; `images[0] = 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automorphism {
    images: Vec<u32>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Automorphism {
            images: (0..n as u32).collect(),
        }
    }

    /// Validates `images` against `g`.
    pub fn from_images(g: &GroupTable, images: Vec<usize>) -> Result<Self> {
        let n = g.order();
        let mut hit = vec![false; n];
        if images.len() != n || images.iter().any(|&v| v >= n || std::mem::replace(&mut hit[v], true)) {
            return Err(HgError::NotBijective);
        }
        if !g.is_hom_to(g, &images) {
            return Err(HgError::BadAction("image table is not a homomorphism".into()));
        }
        Ok(Automorphism {
            images: images.into_iter().map(|v| v as u32).collect(),
        })
    }

    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        Automorphism { images }
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Automorphism { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    pub fn is_automorphism_of(&self, g: &GroupTable) -> bool {
        let map: Vec<usize> = self.images.iter().map(|&v| v as usize).collect();
        let mut hit = vec![false; g.order()];
        map.len() == g.order()
            && map.iter().all(|&v| v < g.order() && !std::mem::replace(&mut hit[v], true))
            && g.is_hom_to(g, &map)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.images.len())
            .filter(|&x| self.images[x] as usize == x)
            .collect()
    }
}

/// `x -> eta x eta^-1`.
pub fn conj_map(n: &GroupTable, eta: usize) -> Automorphism {
    Automorphism {
        images: (0..n.order()).map(|x| n.conj(eta, x) as u32).collect(),
    }
}

enum KeyIndex {
    /// Generator images packed in 16-bit lanes; at most 8 generators.
    Packed(HashMap<u128, u32>),
    Wide(HashMap<Vec<u32>, u32>),
}

/// The full automorphism group of a table.
///
/// Elements are sorted by image table, so the identity is index 0. Each
/// automorphism is determined by its images of `key_gens`, a generating set
/// of the base group; composition looks up that key.
pub struct AutGroup {
    base: Arc<GroupTable>,
    key_gens: Vec<usize>,
    elements: Vec<Automorphism>,
    index: KeyIndex,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    dense: Option<Vec<u32>>,
    generators: Vec<usize>,
    inner: Subgroup,
}

impl std::fmt::Debug for AutGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AutGroup")
            .field("base", &self.base.label())
            .field("order", &self.elements.len())
            .field("generators", &self.generators)
            .finish()
    }
}

fn pack(images: impl Iterator<Item = u32>) -> u128 {
    images.fold(0u128, |acc, v| (acc << 16) | v as u128)
}

/// Enumerates `Aut(n)` in full.
pub fn automorphism_group(n: &GroupTable) -> Result<AutGroup> {
    automorphism_group_arc(Arc::new(n.clone()))
}

pub fn automorphism_group_arc(base: Arc<GroupTable>) -> Result<AutGroup> {
    let mut raw: Vec<Vec<u32>> = Vec::new();
    let mut overflow = false;
    let key_gens;
    {
        let mut search = BijectionSearch::new(&base, &base);
        key_gens = search.gens().to_vec();
        search.for_each(|vals| {
            if raw.len() == AUT_CAP {
                overflow = true;
                return false;
            }
            raw.push(vals.to_vec());
            true
        });
    }
    if overflow {
        return Err(HgError::cap("automorphism group order", AUT_CAP as u64));
    }
    raw.sort_unstable();
    let elements: Vec<Automorphism> = raw.into_iter().map(Automorphism::from_raw).collect();
    Ok(AutGroup::from_sorted(base, key_gens, elements))
}

/// `|Aut(n)|` without storing the elements.
pub fn count_automorphisms(n: &GroupTable) -> u64 {
    let mut search = BijectionSearch::new(n, n);
    let mut count = 0u64;
    search.for_each(|_| {
        count += 1;
        true
    });
    count
}

impl AutGroup {
    fn from_sorted(base: Arc<GroupTable>, key_gens: Vec<usize>, elements: Vec<Automorphism>) -> Self {
        let index = if key_gens.len() <= 8 {
            KeyIndex::Packed(
                elements
                    .iter()
                    .enumerate()
                    .map(|(i, a)| (pack(key_gens.iter().map(|&g| a.images[g])), i as u32))
                    .collect(),
            )
        } else {
            KeyIndex::Wide(
                elements
                    .iter()
                    .enumerate()
                    .map(|(i, a)| (key_gens.iter().map(|&g| a.images[g]).collect(), i as u32))
                    .collect(),
            )
        };
        let mut aut = AutGroup {
            base,
            key_gens,
            elements,
            index,
            inverses: Vec::new(),
            orders: Vec::new(),
            dense: None,
            generators: Vec::new(),
            inner: Subgroup::trivial(),
        };
        let m = aut.elements.len();
        aut.inverses = (0..m)
            .map(|i| aut.index_of(&aut.elements[i].inverse()).expect("closed under inverses") as u32)
            .collect();
        if m <= DENSE_AUT_LIMIT {
            let mut dense = vec![0u32; m * m];
            for a in 0..m {
                for b in 0..m {
                    dense[a * m + b] = aut.compose_lookup(a, b) as u32;
                }
            }
            aut.dense = Some(dense);
        }
        aut.orders = (0..m as u32)
            .map(|a| {
                let mut k = 1;
                let mut x = a;
                while x != 0 {
                    x = aut.op(x, a);
                    k += 1;
                }
                k
            })
            .collect();
        aut.generators = aut.greedy_generators();
        let mut inner: Vec<u32> = (0..aut.base.order())
            .map(|eta| aut.index_of(&conj_map(&aut.base, eta)).expect("inner automorphism") as u32)
            .collect();
        inner.sort_unstable();
        inner.dedup();
        aut.inner = Subgroup::from_sorted_unchecked(inner);
        aut
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let m = self.elements.len();
        let mut gens = Vec::new();
        let mut seen = BitSet::new(m);
        seen.insert(0);
        let mut list = vec![0u32];
        for a in 1..m {
            if seen.contains(a) {
                continue;
            }
            gens.push(a);
            // re-close from scratch so the set stays a subgroup
            seen = BitSet::new(m);
            seen.insert(0);
            list.clear();
            list.push(0);
            let mut i = 0;
            while i < list.len() {
                for &s in &gens {
                    let y = self.op(list[i], s as u32);
                    if seen.insert(y as usize) {
                        list.push(y);
                    }
                }
                i += 1;
            }
            if list.len() == m {
                break;
            }
        }
        gens
    }

    fn compose_lookup(&self, a: usize, b: usize) -> usize {
        let (ea, eb) = (&self.elements[a], &self.elements[b]);
        let imgs = self.key_gens.iter().map(|&g| ea.images[eb.images[g] as usize]);
        self.lookup(imgs).expect("closed under composition")
    }

    fn lookup(&self, imgs: impl Iterator<Item = u32>) -> Option<usize> {
        match &self.index {
            KeyIndex::Packed(map) => map.get(&pack(imgs)).map(|&i| i as usize),
            KeyIndex::Wide(map) => map.get(&imgs.collect::<Vec<_>>()).map(|&i| i as usize),
        }
    }

    pub fn base(&self) -> &GroupTable {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<GroupTable> {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Automorphism {
        &self.elements[i]
    }

    /// Generators of the base group that key each automorphism.
    pub fn key_generators(&self) -> &[usize] {
        &self.key_gens
    }

    /// A generating set of the automorphism group itself (element indices).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Indices of the inner automorphisms, sorted.
    pub fn inner(&self) -> &Subgroup {
        &self.inner
    }

    pub fn index_of(&self, a: &Automorphism) -> Option<usize> {
        let i = self.lookup(self.key_gens.iter().map(|&g| a.images[g]))?;
        (self.elements[i] == *a).then_some(i)
    }

    /// Index of the automorphism sending each key generator to `images[i]`.
    pub fn index_of_key(&self, images: &[u32]) -> Option<usize> {
        self.lookup(images.iter().copied())
    }

    /// Index of `x -> eta x eta^-1`.
    pub fn conj_index(&self, eta: usize) -> usize {
        let b = &self.base;
        self.lookup(self.key_gens.iter().map(|&g| b.conj(eta, g) as u32))
            .expect("inner automorphism")
    }

    #[inline]
    pub fn apply(&self, a: usize, x: usize) -> usize {
        self.elements[a].images[x] as usize
    }

    /// Index of `a ∘ b`.
    #[inline]
    pub fn compose(&self, a: usize, b: usize) -> usize {
        match &self.dense {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.compose_lookup(a, b),
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn elt_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn is_inner(&self, a: usize) -> bool {
        self.inner.contains(a)
    }

    /// `|Out| = |Aut| / |Inn|`.
    pub fn out_order(&self) -> usize {
        self.len() / self.inner.len()
    }

    /// The automorphism group as a Cayley table over its element indices.
    pub fn table(&self) -> Result<GroupTable> {
        let m = self.len();
        if m > TABLE_CAP {
            return Err(HgError::cap("automorphism table order", TABLE_CAP as u64));
        }
        let mut mul = vec![0u32; m * m];
        for a in 0..m {
            for b in 0..m {
                mul[a * m + b] = self.compose(a, b) as u32;
            }
        }
        GroupTable::from_flat(m, mul, format!("Aut({})", self.base.label()), false)
    }

    /// True when every automorphism maps `sub` into itself.
    pub fn preserves(&self, sub: &Subgroup) -> bool {
        self.generators
            .iter()
            .all(|&a| sub.iter().all(|x| sub.contains(self.apply(a, x))))
    }
}

impl MulOracle for AutGroup {
    fn size(&self) -> usize {
        self.len()
    }

    #[inline]
    fn op(&self, a: u32, b: u32) -> u32 {
        self.compose(a as usize, b as usize) as u32
    }

    fn order_of(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }
}

/// A characteristic subgroup and whether it is maximal among the proper ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicSubgroup {
    pub subgroup: Subgroup,
    pub maximal: bool,
}

/// All characteristic subgroups, sorted by `(size, elements)`.
pub fn characteristic_subgroups(n: &GroupTable) -> Result<Vec<CharacteristicSubgroup>> {
    let aut = automorphism_group(n)?;
    Ok(characteristic_subgroups_with(&aut))
}

pub fn characteristic_subgroups_with(aut: &AutGroup) -> Vec<CharacteristicSubgroup> {
    let n = aut.base();
    // characteristic subgroups are normal
    let chars: Vec<Subgroup> = normal_subgroups(n)
        .into_iter()
        .filter(|s| aut.preserves(s))
        .collect();
    let proper: Vec<&Subgroup> = chars.iter().filter(|s| s.len() < n.order()).collect();
    chars
        .iter()
        .map(|s| {
            let maximal = s.len() < n.order()
                && !proper.iter().any(|t| t.len() > s.len() && s.is_subset_of(t));
            CharacteristicSubgroup {
                subgroup: s.clone(),
                maximal,
            }
        })
        .collect()
}

pub fn is_characteristic(aut: &AutGroup, sub: &Subgroup) -> bool {
    sub.is_normal_in(aut.base()) && aut.preserves(sub)
}

/// The automorphism induced on `lambda`, indexed through
/// `subgroup_table(n, lambda)`.
pub fn restrict(phi: &Automorphism, lambda: &Subgroup) -> Result<Automorphism> {
    let mut images = Vec::with_capacity(lambda.len());
    for x in lambda.iter() {
        let y = phi.apply(x);
        match lambda.position(y) {
            Some(p) => images.push(p as u32),
            None => return Err(HgError::NotPreserved(x)),
        }
    }
    Ok(Automorphism::from_raw(images))
}

/// Outcome of [`char_simple_decompose`].
#[derive(Clone, Debug)]
pub enum CharSimple {
    /// `Q ≅ T^m` with `T` simple.
    Power { t: GroupTable, m: usize },
    NotCharSimple,
}

/// Orders above this skip the explicit characteristic-subgroup scan and rely on
/// the `T^m` isomorphism test alone.
const CHAR_SCAN_LIMIT: usize = 1000;

/// Decides whether `q` is characteristically simple and, if so, finds the
/// simple `T` and exponent `m` with `q ≅ T^m`.
///
/// `T` is the smallest minimal normal subgroup; the power is verified by an
/// explicit isomorphism. The trivial group is reported as not
/// characteristically simple.
pub fn char_simple_decompose(q: &GroupTable) -> CharSimple {
    let n = q.order();
    if n == 1 {
        return CharSimple::NotCharSimple;
    }
    let normals = normal_subgroups(q);
    let nontrivial: Vec<&Subgroup> = normals.iter().filter(|s| !s.is_trivial()).collect();
    let minimal: Vec<&Subgroup> = nontrivial
        .iter()
        .copied()
        .filter(|s| !nontrivial.iter().any(|t| t.len() < s.len() && t.is_subset_of(s)))
        .collect();
    let Some(m0) = minimal.iter().min_by_key(|s| (s.len(), s.elements().to_vec())) else {
        return CharSimple::NotCharSimple;
    };
    let t = subgroup_table(q, m0);
    if !is_simple(&t) {
        return CharSimple::NotCharSimple;
    }
    // n must be a power of |T|
    let (tn, mut rest, mut m) = (t.order(), n, 0);
    while rest % tn == 0 && rest > 1 {
        rest /= tn;
        m += 1;
    }
    if rest != 1 {
        return CharSimple::NotCharSimple;
    }
    if n <= CHAR_SCAN_LIMIT {
        match automorphism_group(q) {
            Ok(aut) => {
                if normals
                    .iter()
                    .any(|s| !s.is_trivial() && s.len() < n && aut.preserves(s))
                {
                    return CharSimple::NotCharSimple;
                }
            }
            Err(_) => {}
        }
    }
    let mut power = t.clone();
    for _ in 1..m {
        power = match product(&power, &t, None) {
            Ok(p) => p,
            Err(_) => return CharSimple::NotCharSimple,
        };
    }
    if are_isomorphic(q, &power).is_none() {
        return CharSimple::NotCharSimple;
    }
    CharSimple::Power {
        t: t.with_label(format!("T{tn}")),
        m,
    }
}

/// `|Inn(n)| = |n| / |Z(n)|`.
pub fn inner_order(n: &GroupTable) -> usize {
    n.order() / center(n).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{abelian, alt, build, cyclic, sym};
    use crate::group::derived_series;

    #[test]
    fn small_automorphism_group_orders() {
        assert_eq!(automorphism_group(&cyclic(15).unwrap()).unwrap().len(), 8);
        assert_eq!(automorphism_group(&abelian(&[2, 2]).unwrap()).unwrap().len(), 6);
        assert_eq!(automorphism_group(&sym(3).unwrap()).unwrap().len(), 6);
        assert_eq!(automorphism_group(&cyclic(1).unwrap()).unwrap().len(), 1);
        assert_eq!(automorphism_group(&build("dihedral(4)").unwrap()).unwrap().len(), 8);
        assert_eq!(automorphism_group(&build("dicyclic(2)").unwrap()).unwrap().len(), 24);
    }

    #[test]
    fn aut_sl25() {
        let g = build("SL2(5)").unwrap();
        let aut = automorphism_group(&g).unwrap();
        assert_eq!(aut.len(), 120);
        assert_eq!(aut.inner().len(), 60);
        assert_eq!(aut.out_order(), 2);
        assert!(aut.elements().iter().all(|a| a.is_automorphism_of(&g)));
    }

    #[test]
    fn identity_first_and_oracle_consistent() {
        let g = alt(4).unwrap();
        let aut = automorphism_group(&g).unwrap();
        assert!(aut.get(0).is_identity());
        for a in 0..aut.len() {
            assert_eq!(aut.compose(a, aut.inverse(a)), 0);
            for b in 0..aut.len() {
                let direct = aut.get(a).compose(aut.get(b));
                assert_eq!(aut.get(aut.compose(a, b)), &direct);
            }
        }
        let t = aut.table().unwrap();
        assert!(are_isomorphic(&t, &sym(4).unwrap()).is_some());
    }

    #[test]
    fn conj_map_examples() {
        let s3 = sym(3).unwrap();
        assert!(conj_map(&s3, 0).is_identity());
        let c5 = cyclic(5).unwrap();
        assert!((0..5).all(|e| conj_map(&c5, e).is_identity()));
        let t = (1..6).find(|&x| s3.elt_order(x) == 2).unwrap();
        let c = conj_map(&s3, t);
        assert!(!c.is_identity());
        assert!(c.compose(&c).is_identity());
        let aut = automorphism_group(&s3).unwrap();
        assert!(aut.is_inner(aut.index_of(&c).unwrap()));
    }

    #[test]
    fn characteristic_examples() {
        let a5 = alt(5).unwrap();
        let cs = characteristic_subgroups(&a5).unwrap();
        assert_eq!(cs.len(), 2);
        assert!(cs[0].maximal && cs[0].subgroup.is_trivial());
        assert!(!cs[1].maximal);

        let c4 = cyclic(4).unwrap();
        let cs = characteristic_subgroups(&c4).unwrap();
        let sizes: Vec<usize> = cs.iter().map(|c| c.subgroup.len()).collect();
        assert_eq!(sizes, [1, 2, 4]);
        let maximal: Vec<usize> = cs.iter().filter(|c| c.maximal).map(|c| c.subgroup.len()).collect();
        assert_eq!(maximal, [2]);

        let sl = build("SL2(5)").unwrap();
        let cs = characteristic_subgroups(&sl).unwrap();
        assert_eq!(cs.len(), 3);
        let maximal: Vec<&Subgroup> = cs.iter().filter(|c| c.maximal).map(|c| &c.subgroup).collect();
        assert_eq!(maximal, [&center(&sl)]);
    }

    #[test]
    fn v4_has_no_proper_characteristic() {
        let v4 = abelian(&[2, 2]).unwrap();
        let cs = characteristic_subgroups(&v4).unwrap();
        assert_eq!(cs.len(), 2);
    }

    #[test]
    fn restrict_examples() {
        let c4 = cyclic(4).unwrap();
        let aut = automorphism_group(&c4).unwrap();
        let c2 = Subgroup::from_elements(&c4, [0, 2]).unwrap();
        assert!(restrict(aut.get(0), &c2).unwrap().is_identity());
        let inversion = aut.get(1);
        assert!(!inversion.is_identity());
        assert!(restrict(inversion, &c2).unwrap().is_identity());
        // a non-characteristic subgroup is not preserved by every automorphism
        let v4 = abelian(&[2, 2]).unwrap();
        let aut = automorphism_group(&v4).unwrap();
        let h = Subgroup::from_elements(&v4, [0, 1]).unwrap();
        let failures = aut.elements().iter().filter(|a| restrict(a, &h).is_err()).count();
        assert_eq!(failures, 4);
    }

    #[test]
    fn char_simple_examples() {
        match char_simple_decompose(&abelian(&[2, 2]).unwrap()) {
            CharSimple::Power { t, m } => assert_eq!((t.order(), m), (2, 2)),
            other => panic!("{other:?}"),
        }
        match char_simple_decompose(&alt(5).unwrap()) {
            CharSimple::Power { t, m } => assert_eq!((t.order(), m), (60, 1)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(char_simple_decompose(&cyclic(4).unwrap()), CharSimple::NotCharSimple));
        assert!(matches!(char_simple_decompose(&sym(3).unwrap()), CharSimple::NotCharSimple));
        assert!(matches!(
            char_simple_decompose(&build("SL2(5)").unwrap()),
            CharSimple::NotCharSimple
        ));
    }

    #[test]
    fn center_and_derived_are_characteristic() {
        for s in ["sym(4)", "dihedral(6)", "dicyclic(3)", "SL2(3)", "direct(sym(3),cyclic(2))"] {
            let g = build(s).unwrap();
            let aut = automorphism_group(&g).unwrap();
            assert!(is_characteristic(&aut, &center(&g)), "{s}");
            assert!(is_characteristic(&aut, derived_series(&g).derived_subgroup()), "{s}");
            assert_eq!(aut.inner().len(), inner_order(&g), "{s}");
        }
    }

    #[test]
    fn fixed_points_a5_and_psl27() {
        for s in ["alt(5)", "PSL2(7)"] {
            let g = build(s).unwrap();
            let aut = automorphism_group(&g).unwrap();
            for a in aut.elements() {
                assert!(a.fixed_points().len() > 1, "{s}");
            }
        }
    }
}

use std::collections::HashSet;

use super::bitset::BitSet;
use super::table::GroupTable;
use crate::error::{HgError, Result};

/// Default cap on the order of groups whose full subgroup lattice we enumerate.
pub const SUBGROUP_CAP: usize = 360;

/// A subgroup, stored as the strictly increasing list of its element indices.
///
/// The parent table is not stored; every operation takes it explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<u32>,
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.elements.len(), &self.elements).cmp(&(other.elements.len(), &other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup { elements: vec![0] }
    }

    pub fn whole(g: &GroupTable) -> Self {
        Subgroup {
            elements: (0..g.order() as u32).collect(),
        }
    }

    /// Checks closure, identity and the Lagrange condition.
    pub fn from_elements(g: &GroupTable, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut elements: Vec<u32> = elements.into_iter().map(|x| x as u32).collect();
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&x| x as usize >= g.order()) {
            return Err(HgError::NotASubgroup("index out of range".into()));
        }
        let s = Subgroup { elements };
        if !s.contains(0) {
            return Err(HgError::NotASubgroup("missing identity".into()));
        }
        if g.order() % s.len() != 0 {
            return Err(HgError::NotASubgroup(format!(
                "size {} does not divide {}",
                s.len(),
                g.order()
            )));
        }
        for &x in &s.elements {
            for &y in &s.elements {
                if !s.contains(g.mul(x as usize, y as usize)) {
                    return Err(HgError::NotASubgroup(format!("{x}*{y} escapes")));
                }
            }
        }
        Ok(s)
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<u32>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { elements }
    }

    pub(crate) fn from_bitset(set: &BitSet) -> Self {
        Subgroup {
            elements: set.iter().map(|x| x as u32).collect(),
        }
    }

    pub(crate) fn to_bitset(&self, n: usize) -> BitSet {
        BitSet::from_iter(n, self.iter())
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().map(|&x| x as usize)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&(x as u32)).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x as usize))
    }

    /// Position of `x` in the sorted element list, which is its index in
    /// [`subgroup_table`].
    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&(x as u32)).ok()
    }

    /// Returns a pair `(k, g)` with `g k g^-1` outside the subgroup, if any.
    pub fn normality_witness(&self, g: &GroupTable) -> Option<(usize, usize)> {
        for y in 0..g.order() {
            for k in self.iter() {
                if !self.contains(g.conj(y, k)) {
                    return Some((k, y));
                }
            }
        }
        None
    }

    pub fn is_normal_in(&self, g: &GroupTable) -> bool {
        self.normality_witness(g).is_none()
    }
}

/// BFS closure of `gens` under right multiplication. Returns the elements in
/// discovery order.
pub(crate) fn closure_list(g: &GroupTable, gens: &[usize]) -> (BitSet, Vec<usize>) {
    let mut seen = BitSet::new(g.order());
    seen.insert(0);
    let mut list = vec![0];
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for &s in gens {
            let y = g.mul(x, s);
            if seen.insert(y) {
                list.push(y);
            }
        }
        i += 1;
    }
    (seen, list)
}

/// Smallest subgroup containing `gens`.
pub fn close_generated(g: &GroupTable, gens: &[usize]) -> Subgroup {
    let (set, _) = closure_list(g, gens);
    Subgroup::from_bitset(&set)
}

/// Every subgroup of `g` exactly once, sorted by `(size, elements)`.
///
/// Starts from the cyclic subgroups and repeatedly joins a known subgroup with
/// a cyclic one; every subgroup is a join of cyclic subgroups.
pub fn all_subgroups(g: &GroupTable, cap: usize) -> Result<Vec<Subgroup>> {
    let n = g.order();
    if n > cap {
        return Err(HgError::cap("all_subgroups group order", cap as u64));
    }
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut cyclic: Vec<(usize, BitSet)> = Vec::new();
    for x in 0..n {
        let (set, _) = closure_list(g, &[x]);
        if seen.insert(set.clone()) {
            cyclic.push((x, set));
        }
    }
    let mut all: Vec<(BitSet, Vec<usize>)> =
        cyclic.iter().map(|(x, s)| (s.clone(), vec![*x])).collect();
    let mut frontier: Vec<usize> = (0..all.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &hi in &frontier {
            for (x, cset) in &cyclic {
                if cset.is_subset(&all[hi].0) {
                    continue;
                }
                let mut gens = all[hi].1.clone();
                gens.push(*x);
                let (set, _) = closure_list(g, &gens);
                if seen.insert(set.clone()) {
                    all.push((set, gens));
                    next.push(all.len() - 1);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Subgroup> = all.iter().map(|(s, _)| Subgroup::from_bitset(s)).collect();
    out.sort();
    Ok(out)
}

pub fn center(g: &GroupTable) -> Subgroup {
    let n = g.order();
    let elems = (0..n)
        .filter(|&x| (0..n).all(|y| g.mul(x, y) == g.mul(y, x)))
        .map(|x| x as u32)
        .collect();
    Subgroup::from_sorted_unchecked(elems)
}

/// Centralizer of a set of elements.
pub fn centralizer(g: &GroupTable, of: &[usize]) -> Subgroup {
    let elems = (0..g.order())
        .filter(|&x| of.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
        .map(|x| x as u32)
        .collect();
    Subgroup::from_sorted_unchecked(elems)
}

/// The commutator subgroup `[H, H]` of a subgroup `H` of `g`.
pub fn commutator_subgroup(g: &GroupTable, h: &Subgroup) -> Subgroup {
    let n = g.order();
    let mut comms = BitSet::new(n);
    let mut gens = Vec::new();
    for x in h.iter() {
        for y in h.iter() {
            let c = g.commutator(x, y);
            if comms.insert(c) {
                gens.push(c);
            }
        }
    }
    let gens = prune_generators(g, &gens);
    close_generated(g, &gens)
}

/// Drops generators already in the closure of the earlier ones.
pub(crate) fn prune_generators(g: &GroupTable, gens: &[usize]) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    let mut current = BitSet::new(g.order());
    current.insert(0);
    for &x in gens {
        if !current.contains(x) {
            kept.push(x);
            current = closure_list(g, &kept).0;
        }
    }
    kept
}

/// The derived series `G ⊇ G' ⊇ G'' ⊇ ...`, stopping once it stabilizes.
#[derive(Clone, Debug)]
pub struct DerivedSeries {
    pub terms: Vec<Subgroup>,
}

impl DerivedSeries {
    pub fn is_perfect(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_solvable(&self) -> bool {
        self.terms.last().map_or(true, |t| t.is_trivial())
    }

    pub fn derived_subgroup(&self) -> &Subgroup {
        self.terms.get(1).unwrap_or(&self.terms[0])
    }
}

pub fn derived_series(g: &GroupTable) -> DerivedSeries {
    let mut terms = vec![Subgroup::whole(g)];
    loop {
        let last = terms.last().unwrap();
        if last.is_trivial() {
            break;
        }
        let next = commutator_subgroup(g, last);
        if next.len() == last.len() {
            break;
        }
        terms.push(next);
    }
    DerivedSeries { terms }
}

/// Conjugacy classes, each sorted, ordered by smallest element.
pub fn conjugacy_classes(g: &GroupTable) -> Vec<Vec<u32>> {
    let n = g.order();
    let mut class_of = vec![u32::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        let mut cls = Vec::new();
        for y in 0..n {
            let c = g.conj(y, x);
            if class_of[c] == u32::MAX {
                class_of[c] = id;
                cls.push(c as u32);
            }
        }
        cls.sort_unstable();
        classes.push(cls);
    }
    classes
}

/// Class size of every element.
pub fn class_sizes(g: &GroupTable) -> Vec<u32> {
    let mut sizes = vec![0; g.order()];
    for cls in conjugacy_classes(g) {
        for &x in &cls {
            sizes[x as usize] = cls.len() as u32;
        }
    }
    sizes
}

/// Smallest normal subgroup containing `set`.
pub fn normal_closure(g: &GroupTable, set: &[usize]) -> Subgroup {
    let n = g.order();
    let mut all = BitSet::new(n);
    let mut gens = Vec::new();
    for &x in set {
        for y in 0..n {
            let c = g.conj(y, x);
            if all.insert(c) {
                gens.push(c);
            }
        }
    }
    let gens = prune_generators(g, &gens);
    close_generated(g, &gens)
}

/// All normal subgroups, sorted by `(size, elements)`.
///
/// Normal subgroups are joins of normal closures of conjugacy classes, so this
/// runs without the full subgroup lattice.
pub fn normal_subgroups(g: &GroupTable) -> Vec<Subgroup> {
    let classes = conjugacy_classes(g);
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut seeds: Vec<(BitSet, Vec<usize>)> = Vec::new();
    for cls in &classes {
        let members: Vec<usize> = cls.iter().map(|&x| x as usize).collect();
        let gens = prune_generators(g, &members);
        let (set, _) = closure_list(g, &gens);
        if seen.insert(set.clone()) {
            seeds.push((set, gens));
        }
    }
    let mut all = seeds.clone();
    let mut frontier: Vec<usize> = (0..all.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &hi in &frontier {
            for (sset, sgens) in &seeds {
                if sset.is_subset(&all[hi].0) {
                    continue;
                }
                let mut gens = all[hi].1.clone();
                gens.extend_from_slice(sgens);
                let gens = prune_generators(g, &gens);
                let (set, _) = closure_list(g, &gens);
                if seen.insert(set.clone()) {
                    all.push((set, gens));
                    next.push(all.len() - 1);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Subgroup> = all.iter().map(|(s, _)| Subgroup::from_bitset(s)).collect();
    out.sort();
    out
}

/// True when the only normal subgroups are trivial and the whole group.
pub fn is_simple(g: &GroupTable) -> bool {
    g.order() > 1 && normal_subgroups(g).len() == 2
}

/// The quotient `g / k` together with the projection `element -> coset index`.
///
/// Cosets are numbered by their smallest element, so the identity coset is 0.
pub fn quotient(g: &GroupTable, k: &Subgroup) -> Result<(GroupTable, Vec<usize>)> {
    if let Some((element, by)) = k.normality_witness(g) {
        return Err(HgError::NotNormal { element, by });
    }
    let n = g.order();
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for y in k.iter() {
            coset[g.mul(x, y)] = id;
        }
    }
    let m = reps.len();
    let mut mul = vec![0u32; m * m];
    for i in 0..m {
        for j in 0..m {
            mul[i * m + j] = coset[g.mul(reps[i], reps[j])] as u32;
        }
    }
    let label = format!("{}/{}", g.label(), k.len());
    let q = GroupTable::from_flat(m, mul, label, false)?;
    Ok((q, coset))
}

/// The subgroup as a group in its own right; element `i` is `h.elements()[i]`.
pub fn subgroup_table(g: &GroupTable, h: &Subgroup) -> GroupTable {
    let m = h.len();
    let mut pos = vec![u32::MAX; g.order()];
    for (i, x) in h.iter().enumerate() {
        pos[x] = i as u32;
    }
    let mut mul = vec![0u32; m * m];
    for (i, x) in h.iter().enumerate() {
        for (j, y) in h.iter().enumerate() {
            mul[i * m + j] = pos[g.mul(x, y)];
        }
    }
    GroupTable::from_flat(m, mul, format!("{}<{}>", g.label(), m), false)
        .expect("subgroup of a group is a group")
}

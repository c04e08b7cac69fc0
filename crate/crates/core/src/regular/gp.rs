//! Direct count in the symmetric group on the elements of `G`: regular
//! subgroups isomorphic to `N` that are normalized by the left translations
//! `λ(G)`. Independent of holomorphs and cocycles.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::catalog::all_perms;
use crate::error::{HgError, Result};
use crate::group::{are_isomorphic, GroupTable};

/// Largest degree the direct count accepts.
pub const GP_DEGREE_CAP: usize = 8;

type Perm = [u8; GP_DEGREE_CAP];

fn compose(p: &Perm, q: &Perm, n: usize) -> Perm {
    let mut r = [0u8; GP_DEGREE_CAP];
    for x in 0..n {
        r[x] = p[q[x] as usize];
    }
    r
}

fn identity(n: usize) -> Perm {
    let mut r = [0u8; GP_DEGREE_CAP];
    for (x, v) in r.iter_mut().enumerate().take(n) {
        *v = x as u8;
    }
    r
}

/// Fixed-point-free with all cycles of one length.
fn uniform_fpf(p: &Perm, n: usize) -> bool {
    let mut seen = [false; GP_DEGREE_CAP];
    let mut len = None;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut l = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            l += 1;
        }
        if l == 1 || len.is_some_and(|m| m != l) {
            return false;
        }
        len = Some(l);
    }
    true
}

/// Closure of `gens` if every non-identity element is fixed-point-free and
/// the size stays at most `n`.
fn semiregular_closure(gens: &[Perm], n: usize) -> Option<BTreeSet<Perm>> {
    let id = identity(n);
    let mut set: HashSet<Perm> = HashSet::from([id]);
    let mut list = vec![id];
    let mut i = 0;
    while i < list.len() {
        for g in gens {
            let y = compose(&list[i], g, n);
            if set.insert(y) {
                if (0..n).any(|x| y[x] as usize == x) || list.len() == n {
                    return None;
                }
                list.push(y);
            }
        }
        i += 1;
    }
    Some(list.into_iter().collect())
}

/// Number of regular subgroups of `Sym(G)` isomorphic to `N` and normalized
/// by `λ(G)`; equals `e(G, N)`.
///
/// Every non-identity element of a regular subgroup is fixed-point-free with
/// uniform cycle type, and a `λ(G)`-stable subgroup contains the closure of
/// each element's `λ(G)`-conjugacy orbit. Those closures are the seeds;
/// joins of seeds are taken layer by layer, keeping only semiregular ones.
pub fn gp_direct_count(g: &GroupTable, n_group: &GroupTable) -> Result<u64> {
    let n = g.order();
    if n > GP_DEGREE_CAP {
        return Err(HgError::cap("direct-count degree", GP_DEGREE_CAP as u64));
    }
    if n_group.order() != n {
        return Err(HgError::UsageError("orders differ".into()));
    }
    let lambda: Vec<Perm> = (0..n)
        .map(|a| {
            let mut p = [0u8; GP_DEGREE_CAP];
            for x in 0..n {
                p[x] = g.mul(a, x) as u8;
            }
            p
        })
        .collect();
    let lambda_inv: Vec<Perm> = (0..n).map(|a| lambda[g.inv(a)]).collect();
    let mut seeds: Vec<BTreeSet<Perm>> = Vec::new();
    let mut seen_seeds: HashSet<Vec<Perm>> = HashSet::new();
    let mut done: HashSet<Perm> = HashSet::new();
    for raw in all_perms(n) {
        let mut p = [0u8; GP_DEGREE_CAP];
        for (x, &v) in raw.iter().enumerate() {
            p[x] = v as u8;
        }
        if n > 1 && !uniform_fpf(&p, n) || n == 1 || done.contains(&p) {
            continue;
        }
        let orbit: Vec<Perm> = (0..n)
            .map(|a| compose(&compose(&lambda[a], &p, n), &lambda_inv[a], n))
            .collect();
        done.extend(orbit.iter().copied());
        if let Some(c) = semiregular_closure(&orbit, n) {
            if seen_seeds.insert(c.iter().copied().collect()) {
                seeds.push(c);
            }
        }
    }
    let mut all: HashSet<Vec<Perm>> = seen_seeds.clone();
    let mut frontier: Vec<BTreeSet<Perm>> = seeds.clone();
    let mut full: Vec<BTreeSet<Perm>> = Vec::new();
    if n == 1 {
        full.push(BTreeSet::from([identity(1)]));
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in frontier {
            if s.len() == n {
                full.push(s);
                continue;
            }
            for seed in &seeds {
                if seed.is_subset(&s) {
                    continue;
                }
                let gens: Vec<Perm> = s.iter().chain(seed.iter()).copied().collect();
                if let Some(c) = semiregular_closure(&gens, n) {
                    if n % c.len() == 0 && all.insert(c.iter().copied().collect()) {
                        next.push(c);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut count = 0;
    for s in &full {
        if are_isomorphic(&perm_table(s, n)?, n_group).is_some() {
            count += 1;
        }
    }
    Ok(count)
}

fn perm_table(set: &BTreeSet<Perm>, n: usize) -> Result<GroupTable> {
    let id = identity(n);
    let mut elems: Vec<Perm> = vec![id];
    elems.extend(set.iter().copied().filter(|p| *p != id));
    let index: HashMap<Perm, u32> = elems.iter().enumerate().map(|(i, p)| (*p, i as u32)).collect();
    let m = elems.len();
    let mut mul = vec![0u32; m * m];
    for (i, p) in elems.iter().enumerate() {
        for (j, q) in elems.iter().enumerate() {
            mul[i * m + j] = index[&compose(p, q, n)];
        }
    }
    GroupTable::from_flat(m, mul, "regular", false)
}

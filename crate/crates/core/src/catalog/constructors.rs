use std::collections::HashMap;

use super::field::SmallField;
use crate::error::{HgError, Result};
use crate::group::{quotient, GroupTable, Subgroup, TABLE_CAP};

pub fn cyclic(n: usize) -> Result<GroupTable> {
    abelian(&[n]).map(|g| g.with_label(format!("cyclic({n})")))
}

/// Direct product of cyclic groups of the given orders, mixed-radix indexed.
pub fn abelian(dims: &[usize]) -> Result<GroupTable> {
    if dims.iter().any(|&d| d == 0) {
        return Err(HgError::SpecOutOfRange("cyclic factor of order 0".into()));
    }
    let n: usize = dims.iter().product();
    check_order(n)?;
    let digits = |mut x: usize| -> Vec<usize> {
        dims.iter()
            .map(|&d| {
                let r = x % d;
                x /= d;
                r
            })
            .collect()
    };
    let mut mul = vec![0u32; n * n];
    for x in 0..n {
        let dx = digits(x);
        for y in 0..n {
            let dy = digits(y);
            let mut v = 0;
            for i in (0..dims.len()).rev() {
                v = v * dims[i] + (dx[i] + dy[i]) % dims[i];
            }
            mul[x * n + y] = v as u32;
        }
    }
    let label = format!(
        "abelian({})",
        dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    );
    GroupTable::from_flat(n, mul, label, false)
}

/// Dihedral group of order `2n`; element `i + n*j` is `r^i s^j`.
pub fn dihedral(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(HgError::SpecOutOfRange("dihedral(0)".into()));
    }
    let order = 2 * n;
    check_order(order)?;
    let mut mul = vec![0u32; order * order];
    for x in 0..order {
        let (i, a) = (x % n, x / n);
        for y in 0..order {
            let (k, b) = (y % n, y / n);
            let r = if a == 0 { (i + k) % n } else { (i + n - k) % n };
            mul[x * order + y] = (r + n * ((a + b) % 2)) as u32;
        }
    }
    GroupTable::from_flat(order, mul, format!("dihedral({n})"), false)
}

/// Dicyclic group of order `4n`: `<a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>`.
/// Element `i + 2n*j` is `a^i x^j`.
pub fn dicyclic(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(HgError::SpecOutOfRange("dicyclic(0)".into()));
    }
    let m = 2 * n;
    let order = 2 * m;
    check_order(order)?;
    let mut mul = vec![0u32; order * order];
    for x in 0..order {
        let (i, j) = (x % m, x / m);
        for y in 0..order {
            let (k, l) = (y % m, y / m);
            let v = match (j, l) {
                (0, _) => (i + k) % m + m * l,
                (1, 0) => (i + m - k) % m + m,
                _ => (i + m - k + n) % m,
            };
            mul[x * order + y] = v as u32;
        }
    }
    GroupTable::from_flat(order, mul, format!("dicyclic({n})"), false)
}

pub fn sym(n: usize) -> Result<GroupTable> {
    if n == 0 || n > 7 {
        return Err(HgError::SpecOutOfRange(format!("sym({n}): degree must be 1..=7")));
    }
    let perms = all_perms(n);
    table_from_perms(perms, format!("sym({n})"))
}

pub fn alt(n: usize) -> Result<GroupTable> {
    if n == 0 || n > 7 {
        return Err(HgError::SpecOutOfRange(format!("alt({n}): degree must be 1..=7")));
    }
    let perms = all_perms(n).into_iter().filter(|p| is_even(p)).collect();
    table_from_perms(perms, format!("alt({n})"))
}

pub(crate) fn all_perms(n: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur: Vec<u16> = (0..n as u16).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

fn is_even(p: &[u16]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

/// Cayley table of a set of permutations closed under composition.
///
/// Elements are sorted lexicographically (so the identity is index 0) and
/// multiplied as `(p * q)(x) = p(q(x))`.
pub(crate) fn table_from_perms(mut perms: Vec<Vec<u16>>, label: String) -> Result<GroupTable> {
    perms.sort();
    perms.dedup();
    let n = perms.len();
    check_order(n)?;
    let index: HashMap<&[u16], u32> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i as u32))
        .collect();
    let degree = perms[0].len();
    let mut buf = vec![0u16; degree];
    let mut mul = vec![0u32; n * n];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            for x in 0..degree {
                buf[x] = p[q[x] as usize];
            }
            mul[i * n + j] = *index.get(buf.as_slice()).ok_or_else(|| HgError::NotAGroup {
                reason: "permutation set not closed".into(),
                witness: (i, j, 0),
            })?;
        }
    }
    GroupTable::from_flat(n, mul, label, false)
}

/// Closure of permutation generators, with an element cap.
pub(crate) fn perm_closure(gens: &[Vec<u16>], cap: usize) -> Result<Vec<Vec<u16>>> {
    let degree = gens.first().map_or(0, |g| g.len());
    let id: Vec<u16> = (0..degree as u16).collect();
    let mut seen: std::collections::HashSet<Vec<u16>> = std::collections::HashSet::new();
    seen.insert(id.clone());
    let mut list = vec![id];
    let mut i = 0;
    while i < list.len() {
        for g in gens {
            let next: Vec<u16> = list[i].iter().map(|&x| g[x as usize]).collect();
            if seen.insert(next.clone()) {
                list.push(next);
                if list.len() > cap {
                    return Err(HgError::cap("permutation group order", cap as u64));
                }
            }
        }
        i += 1;
    }
    Ok(list)
}

fn field(q: usize) -> Result<SmallField> {
    SmallField::new(q)
        .ok_or_else(|| HgError::SpecOutOfRange(format!("q = {q} is not a supported prime power <= 11")))
}

/// `SL_2(q)` as 2x2 matrices of determinant 1, identity first.
pub fn sl2(q: usize) -> Result<GroupTable> {
    let f = field(q)?;
    let mut mats: Vec<[usize; 4]> = Vec::new();
    mats.push([1, 0, 0, 1]);
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let m = [a, b, c, d];
                    if m != [1, 0, 0, 1] && f.sub(f.mul(a, d), f.mul(b, c)) == 1 {
                        mats.push(m);
                    }
                }
            }
        }
    }
    let n = mats.len();
    let key = |m: &[usize; 4]| ((m[0] * q + m[1]) * q + m[2]) * q + m[3];
    let mut index = vec![u32::MAX; q * q * q * q];
    for (i, m) in mats.iter().enumerate() {
        index[key(m)] = i as u32;
    }
    let mut mul = vec![0u32; n * n];
    for (i, x) in mats.iter().enumerate() {
        for (j, y) in mats.iter().enumerate() {
            let p = [
                f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])),
                f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
                f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])),
                f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3])),
            ];
            mul[i * n + j] = index[key(&p)];
        }
    }
    GroupTable::from_flat(n, mul, format!("SL2({q})"), false)
}

/// `PSL_2(q) = SL_2(q) / {±I}`.
pub fn psl2(q: usize) -> Result<GroupTable> {
    let sl = sl2(q)?;
    let f = field(q)?;
    let minus_one = f.neg(1);
    // -I is the unique central element of order dividing 2 other than I when q is odd
    let centre: Vec<usize> = if minus_one == 1 {
        vec![0]
    } else {
        let z = (1..sl.order())
            .find(|&x| sl.elt_order(x) == 2 && (0..sl.order()).all(|y| sl.mul(x, y) == sl.mul(y, x)))
            .expect("SL2(q) has central -I for odd q");
        vec![0, z]
    };
    let (q_table, _) = quotient(&sl, &Subgroup::from_elements(&sl, centre)?)?;
    Ok(q_table.with_label(format!("PSL2({q})")))
}

/// `PGL_2(q)` as its permutation action on the `q + 1` points of the
/// projective line.
pub fn pgl2(q: usize) -> Result<GroupTable> {
    let f = field(q)?;
    let inf = q;
    // point [x : 1] is x, [1 : 0] is q
    let normalize = |x: usize, y: usize| -> usize {
        if y == 0 {
            inf
        } else {
            f.mul(x, f.inv(y).unwrap())
        }
    };
    let mut perms = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if f.sub(f.mul(a, d), f.mul(b, c)) == 0 {
                        continue;
                    }
                    let p: Vec<u16> = (0..=q)
                        .map(|pt| {
                            let (x, y) = if pt == inf { (1, 0) } else { (pt, 1) };
                            let nx = f.add(f.mul(a, x), f.mul(b, y));
                            let ny = f.add(f.mul(c, x), f.mul(d, y));
                            normalize(nx, ny) as u16
                        })
                        .collect();
                    perms.push(p);
                }
            }
        }
    }
    table_from_perms(perms, format!("PGL2({q})"))
}

/// Direct product when `action` is `None`; otherwise the semidirect product
/// `a ⋊ b` with `((x1, y1), (x2, y2)) -> (x1 * action(y1)(x2), y1 * y2)`.
///
/// `action[y]` is the image table of the automorphism of `a` attached to
/// `y`. Element `(x, y)` has index `x + |a| * y`.
pub fn product(a: &GroupTable, b: &GroupTable, action: Option<&[Vec<usize>]>) -> Result<GroupTable> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    check_order(n)?;
    if let Some(act) = action {
        validate_action(a, b, act)?;
    }
    let mut mul = vec![0u32; n * n];
    for y1 in 0..nb {
        for x1 in 0..na {
            let row = (x1 + na * y1) * n;
            for y2 in 0..nb {
                let y = b.mul(y1, y2);
                for x2 in 0..na {
                    let x2t = match action {
                        Some(act) => act[y1][x2],
                        None => x2,
                    };
                    mul[row + x2 + na * y2] = (a.mul(x1, x2t) + na * y) as u32;
                }
            }
        }
    }
    let label = match action {
        None => format!("direct({},{})", a.label(), b.label()),
        Some(_) => format!("semidirect({},{})", a.label(), b.label()),
    };
    GroupTable::from_flat(n, mul, label, false)
}

fn validate_action(a: &GroupTable, b: &GroupTable, act: &[Vec<usize>]) -> Result<()> {
    if act.len() != b.order() {
        return Err(HgError::BadAction(format!(
            "{} automorphisms given for a group of order {}",
            act.len(),
            b.order()
        )));
    }
    for (y, img) in act.iter().enumerate() {
        if img.len() != a.order() {
            return Err(HgError::BadAction(format!("image table {y} has wrong length")));
        }
        let mut hit = vec![false; a.order()];
        for &v in img {
            if v >= a.order() || std::mem::replace(&mut hit[v], true) {
                return Err(HgError::BadAction(format!("image table {y} is not a bijection")));
            }
        }
        if !a.is_hom_to(a, img) {
            return Err(HgError::BadAction(format!("image table {y} is not an automorphism")));
        }
    }
    for y1 in 0..b.order() {
        for y2 in 0..b.order() {
            let composed: Vec<usize> = (0..a.order()).map(|x| act[y1][act[y2][x]]).collect();
            if composed != act[b.mul(y1, y2)] {
                return Err(HgError::BadAction(format!(
                    "action({y1}) * action({y2}) != action({})",
                    b.mul(y1, y2)
                )));
            }
        }
    }
    Ok(())
}

fn check_order(n: usize) -> Result<()> {
    if n > TABLE_CAP {
        Err(HgError::cap("group order", TABLE_CAP as u64))
    } else {
        Ok(())
    }
}

/// Generator of a cyclic group: the smallest index of full order.
pub(crate) fn cyclic_generator(g: &GroupTable) -> Option<usize> {
    (0..g.order()).find(|&x| g.elt_order(x) == g.order())
}

/// Action of a cyclic `b` on `a` in which the chosen generator of `b` acts by
/// the automorphism `alpha` (given as an image table).
pub(crate) fn cyclic_action(b: &GroupTable, alpha: &[usize]) -> Result<Vec<Vec<usize>>> {
    let t = cyclic_generator(b)
        .ok_or_else(|| HgError::BadAction(format!("{} is not cyclic", b.label())))?;
    let na = alpha.len();
    let mut act = vec![Vec::new(); b.order()];
    let mut cur: Vec<usize> = (0..na).collect();
    let mut y = 0;
    for _ in 0..b.order() {
        act[y] = cur.clone();
        cur = cur.iter().map(|&x| alpha[x]).collect();
        y = b.mul(y, t);
    }
    Ok(act)
}

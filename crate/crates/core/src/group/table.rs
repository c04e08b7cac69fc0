use crate::error::{HgError, Result};

/// Tables up to this order get an exhaustive associativity check when built
/// from raw input.
pub const ASSOC_CHECK_LIMIT: usize = 512;

/// Largest order any table may have.
pub const TABLE_CAP: usize = 5040;

/// A finite group stored as its Cayley table.
///
/// Elements are the indices `0..order`; index 0 is always the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elt_orders: Vec<u32>,
    label: String,
}

impl GroupTable {
    /// Validates a raw `n x n` table, moving the identity to index 0 if needed.
    pub fn build_table(rows: &[Vec<usize>], label: impl Into<String>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(HgError::NotAGroup {
                reason: "empty table".into(),
                witness: (0, 0, 0),
            });
        }
        if n > TABLE_CAP {
            return Err(HgError::cap("table order", TABLE_CAP as u64));
        }
        if n > ASSOC_CHECK_LIMIT {
            return Err(HgError::cap(
                "raw table order (associativity cannot be verified)",
                ASSOC_CHECK_LIMIT as u64,
            ));
        }
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(HgError::NotAGroup {
                    reason: format!("row {x} has length {}, expected {n}", row.len()),
                    witness: (x, 0, 0),
                });
            }
            if let Some(y) = row.iter().position(|&v| v >= n) {
                return Err(HgError::NotAGroup {
                    reason: format!("entry {} out of range", row[y]),
                    witness: (x, y, 0),
                });
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or_else(|| HgError::NotAGroup {
                reason: "no two-sided identity".into(),
                witness: (0, 0, 0),
            })?;
        // swap the identity into slot 0
        let relabel = |x: usize| -> usize {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let v = rows[relabel(x)][relabel(y)];
                mul[x * n + y] = relabel(v) as u32;
            }
        }
        Self::from_flat(n, mul, label, true)
    }

    /// Builds from a flat row-major table whose identity is already at 0.
    ///
    /// Constructors with known provenance pass `check_assoc = false`; the Latin
    /// square, identity and inverse checks always run.
    pub(crate) fn from_flat(
        n: usize,
        mul: Vec<u32>,
        label: impl Into<String>,
        check_assoc: bool,
    ) -> Result<Self> {
        assert_eq!(mul.len(), n * n);
        if n > TABLE_CAP {
            return Err(HgError::cap("table order", TABLE_CAP as u64));
        }
        let mut seen = vec![u32::MAX; n];
        for x in 0..n {
            for y in 0..n {
                let v = mul[x * n + y] as usize;
                if v >= n || seen[v] == x as u32 {
                    return Err(HgError::NotAGroup {
                        reason: format!("row {x} is not a permutation"),
                        witness: (x, y, 0),
                    });
                }
                seen[v] = x as u32;
            }
        }
        seen.fill(u32::MAX);
        for y in 0..n {
            for x in 0..n {
                let v = mul[x * n + y] as usize;
                if seen[v] == y as u32 {
                    return Err(HgError::NotAGroup {
                        reason: format!("column {y} is not a permutation"),
                        witness: (x, y, 0),
                    });
                }
                seen[v] = y as u32;
            }
        }
        for x in 0..n {
            if mul[x] as usize != x || mul[x * n] as usize != x {
                return Err(HgError::NotAGroup {
                    reason: "index 0 is not the identity".into(),
                    witness: (0, x, 0),
                });
            }
        }
        let mut inv = vec![0u32; n];
        for x in 0..n {
            let row = &mul[x * n..(x + 1) * n];
            let y = row.iter().position(|&v| v == 0).unwrap();
            if mul[y * n + x] != 0 {
                return Err(HgError::NotAGroup {
                    reason: "left and right inverses differ".into(),
                    witness: (x, y, 0),
                });
            }
            inv[x] = y as u32;
        }
        if check_assoc && n <= ASSOC_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = mul[a * n + b] as usize;
                    let row_ab = &mul[ab * n..(ab + 1) * n];
                    let row_b = &mul[b * n..(b + 1) * n];
                    let row_a = &mul[a * n..(a + 1) * n];
                    for c in 0..n {
                        if row_ab[c] != row_a[row_b[c] as usize] {
                            return Err(HgError::NotAGroup {
                                reason: "associativity fails".into(),
                                witness: (a, b, c),
                            });
                        }
                    }
                }
            }
        }
        let mut elt_orders = vec![1u32; n];
        for x in 1..n {
            let mut k = 1;
            let mut p = x;
            while p != 0 {
                p = mul[p * n + x] as usize;
                k += 1;
            }
            elt_orders[x] = k;
        }
        Ok(GroupTable {
            order: n,
            mul,
            inv,
            elt_orders,
            label: label.into(),
        })
    }

    pub fn trivial() -> Self {
        Self::from_flat(1, vec![0], "C1", false).unwrap()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn elt_order(&self, a: usize) -> usize {
        self.elt_orders[a] as usize
    }

    pub fn elt_orders(&self) -> &[u32] {
        &self.elt_orders
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.mul[a * self.order..(a + 1) * self.order]
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Row-major copy of the table as nested vectors.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|x| self.row(x).iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| (x + 1..n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let k = k % self.elt_order(a);
        let mut r = 0;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    /// `g x g^-1`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `x y x^-1 y^-1`
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))
    }

    /// Relabels elements through `perm` (old index -> new index); `perm[0]` must be 0.
    pub fn relabel(&self, perm: &[usize]) -> GroupTable {
        let n = self.order;
        assert_eq!(perm.len(), n);
        assert_eq!(perm[0], 0);
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                mul[perm[x] * n + perm[y]] = perm[self.mul(x, y)] as u32;
            }
        }
        Self::from_flat(n, mul, self.label.clone(), false).expect("relabeling preserves group laws")
    }

    /// Checks the homomorphism identity of `map: self -> other` on all pairs.
    pub fn is_hom_to(&self, other: &GroupTable, map: &[usize]) -> bool {
        map.len() == self.order
            && (0..self.order).all(|x| {
                (0..self.order).all(|y| map[self.mul(x, y)] == other.mul(map[x], map[y]))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_rows(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect()
    }

    #[test]
    fn trivial_group() {
        let g = GroupTable::build_table(&[vec![0]], "1").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.inv(0), 0);
    }

    #[test]
    fn z3_orders() {
        let g = GroupTable::build_table(&cyclic_rows(3), "Z3").unwrap();
        assert_eq!(g.elt_orders(), &[1, 3, 3]);
        assert!(g.is_abelian());
    }

    #[test]
    fn perturbed_z4_rejected() {
        let mut rows = cyclic_rows(4);
        rows[1][2] = 0;
        let err = GroupTable::build_table(&rows, "bad").unwrap_err();
        assert!(matches!(err, HgError::NotAGroup { .. }));
    }

    #[test]
    fn latin_square_but_not_associative() {
        // a loop of order 5 that is not a group
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = GroupTable::build_table(&rows, "loop").unwrap_err();
        match err {
            HgError::NotAGroup { reason, witness } => {
                assert!(reason.contains("associativity"), "{reason}");
                let (a, b, c) = witness;
                let m = |x: usize, y: usize| rows[x][y];
                assert_ne!(m(m(a, b), c), m(a, m(b, c)));
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn identity_is_relabeled_to_zero() {
        // Z2 with identity stored at index 1
        let rows = vec![vec![1, 0], vec![0, 1]];
        let g = GroupTable::build_table(&rows, "Z2").unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn ragged_table_rejected() {
        let rows = vec![vec![0, 1], vec![1]];
        assert!(GroupTable::build_table(&rows, "x").is_err());
    }
}

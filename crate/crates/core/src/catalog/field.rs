//! Arithmetic in the small finite fields used by the matrix-group constructors.

/// A finite field of order `q <= 11`, elements `0..q` with 0 and 1 the
/// additive and multiplicative identities.
#[derive(Clone, Debug)]
pub struct SmallField {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl SmallField {
    /// Supported orders: 2, 3, 4, 5, 7, 8, 9, 11.
    pub fn new(q: usize) -> Option<Self> {
        // modulus coefficients, constant term first
        let (p, modulus): (usize, &[usize]) = match q {
            2 | 3 | 5 | 7 | 11 => (q, &[0, 1]),
            4 => (2, &[1, 1, 1]),
            8 => (2, &[1, 1, 0, 1]),
            9 => (3, &[1, 0, 1]),
            _ => return None,
        };
        let k = modulus.len() - 1;
        let digits = |mut x: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let undigits = |ds: &[usize]| -> usize { ds.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for x in 0..q {
            for y in 0..q {
                let (dx, dy) = (digits(x), digits(y));
                let sum: Vec<usize> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[x * q + y] = undigits(&sum) as u8;
                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0usize; 2 * k];
                for i in 0..k {
                    for j in 0..k {
                        prod[i + j] = (prod[i + j] + dx[i] * dy[j]) % p;
                    }
                }
                for deg in (k..2 * k).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for (i, &m) in modulus.iter().enumerate() {
                            let t = deg - k + i;
                            prod[t] = (prod[t] + p * p - c * m % p) % p;
                        }
                    }
                }
                mul[x * q + y] = undigits(&prod[..k]) as u8;
            }
        }
        Some(SmallField { q, add, mul })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.q + y] as usize
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.q + y] as usize
    }

    pub fn neg(&self, x: usize) -> usize {
        (0..self.q).find(|&y| self.add(x, y) == 0).unwrap()
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn inv(&self, x: usize) -> Option<usize> {
        (1..self.q).find(|&y| self.mul(x, y) == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11] {
            let f = SmallField::new(q).unwrap();
            for x in 0..q {
                assert_eq!(f.add(x, 0), x);
                assert_eq!(f.mul(x, 1), x);
                if x != 0 {
                    assert!(f.inv(x).is_some(), "q={q} x={x}");
                }
                for y in 0..q {
                    for z in 0..q {
                        assert_eq!(
                            f.mul(x, f.add(y, z)),
                            f.add(f.mul(x, y), f.mul(x, z)),
                            "distributivity q={q}"
                        );
                        assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn unsupported_orders() {
        assert!(SmallField::new(6).is_none());
        assert!(SmallField::new(13).is_none());
    }
}

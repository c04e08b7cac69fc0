use super::table::GroupTable;

/// Multiplication oracle for a finite group whose elements are `0..size()`
/// with identity 0.
pub trait MulOracle: Sync {
    fn size(&self) -> usize;
    fn op(&self, a: u32, b: u32) -> u32;
    fn order_of(&self, a: u32) -> u32;
}

impl MulOracle for GroupTable {
    fn size(&self) -> usize {
        self.order()
    }

    #[inline]
    fn op(&self, a: u32, b: u32) -> u32 {
        self.mul(a as usize, b as usize) as u32
    }

    fn order_of(&self, a: u32) -> u32 {
        self.elt_order(a as usize) as u32
    }
}

#[derive(Clone, Copy, Debug)]
struct Step {
    from: u32,
    gen: u32,
    to: u32,
    tree: bool,
}

/// The breadth-first walk of a group's right Cayley graph for a fixed
/// generating list.
///
/// Running the script assigns a value to each element along tree edges and
/// compares along the remaining edges. A map defined on the generators extends
/// to a homomorphism (or crossed homomorphism) exactly when no comparison
/// fails; this is the closure of the generator graph `{(g_i, k_i)}` inside
/// `G x K` having exactly `|G|` elements.
#[derive(Clone, Debug)]
pub struct CayleyScript {
    gens: Vec<usize>,
    steps: Vec<Step>,
    order: usize,
}

impl CayleyScript {
    pub fn new(g: &GroupTable, gens: &[usize]) -> Self {
        let script = Self::over_subgroup(g, gens);
        assert_eq!(script.order, g.order(), "generators do not generate the group");
        script
    }

    /// Script for the subgroup generated by `gens`; `order()` is its size.
    pub fn over_subgroup(g: &GroupTable, gens: &[usize]) -> Self {
        let n = g.order();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut steps = Vec::with_capacity(n * gens.len());
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (gi, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                let tree = !seen[y];
                if tree {
                    seen[y] = true;
                    queue.push(y);
                }
                steps.push(Step {
                    from: x as u32,
                    gen: gi as u32,
                    to: y as u32,
                    tree,
                });
            }
            i += 1;
        }
        CayleyScript {
            gens: gens.to_vec(),
            steps,
            order: queue.len(),
        }
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Runs the script. `vals[0]` must hold the image of the identity.
    ///
    /// `next(x, val_x, gen_index)` computes the value of `x * gen`; `accept`
    /// sees every newly assigned value and may veto it (injectivity pruning).
    /// On success `vals` holds the full map.
    #[inline]
    pub fn run<F, A>(&self, vals: &mut [u32], mut next: F, mut accept: A) -> bool
    where
        F: FnMut(usize, u32, usize) -> u32,
        A: FnMut(u32) -> bool,
    {
        for st in &self.steps {
            let v = next(st.from as usize, vals[st.from as usize], st.gen as usize);
            if st.tree {
                if !accept(v) {
                    return false;
                }
                vals[st.to as usize] = v;
            } else if vals[st.to as usize] != v {
                return false;
            }
        }
        true
    }

    /// Extends generator images to a homomorphism into `target`, if possible.
    pub fn extend_hom<K: MulOracle + ?Sized>(
        &self,
        target: &K,
        images: &[u32],
        vals: &mut [u32],
    ) -> bool {
        vals[0] = 0;
        self.run(vals, |_, v, gi| target.op(v, images[gi]), |_| true)
    }

    /// Like [`extend_hom`](Self::extend_hom) but rejects non-injective maps as
    /// early as possible. `stamp` is scratch space of length `target.size()`.
    pub fn extend_injective<K: MulOracle + ?Sized>(
        &self,
        target: &K,
        images: &[u32],
        vals: &mut [u32],
        stamp: &mut Stamp,
    ) -> bool {
        stamp.advance();
        stamp.mark(0);
        vals[0] = 0;
        self.run(
            vals,
            |_, v, gi| target.op(v, images[gi]),
            |v| stamp.mark(v as usize),
        )
    }
}

/// Generation-stamped membership set, reused across many runs.
#[derive(Clone, Debug)]
pub struct Stamp {
    marks: Vec<u32>,
    current: u32,
}

impl Stamp {
    pub fn new(n: usize) -> Self {
        Stamp {
            marks: vec![0; n],
            current: 0,
        }
    }

    pub fn advance(&mut self) {
        self.current = self.current.wrapping_add(1);
        if self.current == 0 {
            self.marks.fill(0);
            self.current = 1;
        }
    }

    /// Returns false if `x` was already marked in this generation.
    #[inline]
    pub fn mark(&mut self, x: usize) -> bool {
        if self.marks[x] == self.current {
            false
        } else {
            self.marks[x] = self.current;
            true
        }
    }
}

use crate::group::{GrpError, Group};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default cap on the group order for class enumeration.
pub const CLASS_CAP: usize = 1_000_000;

/// Conjugacy classes, each represented by its least element index.
#[derive(Clone, Debug)]
pub struct ConjClasses {
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    /// Class number of every element.
    pub class_of: Vec<u32>,
}

impl ConjClasses {
    pub fn count(&self) -> usize {
        self.reps.len()
    }
}

impl Group {
    /// A small generating set, found by adding seeded random elements until they generate.
    pub fn generators(&self) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut gens: Vec<usize> = Vec::new();
        if self.order() == 1 {
            return vec![0];
        }
        loop {
            let g = rng.gen_range(0..self.order());
            if gens.contains(&g) {
                continue;
            }
            gens.push(g);
            if gens.len() >= 2 && self.closure(&gens) == self.order() {
                return gens;
            }
        }
    }

    fn closure(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order()];
        let id = self.index_of(&self.identity()).expect("identity");
        seen[id] = true;
        let mut stack = vec![id];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul_index(x, g);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }

    pub fn conjugacy_classes(&self) -> Result<ConjClasses, GrpError> {
        self.conjugacy_classes_capped(CLASS_CAP)
    }

    /// Orbits under conjugation by a generating set; the least index of each orbit is its
    /// representative.
    pub fn conjugacy_classes_capped(&self, cap: usize) -> Result<ConjClasses, GrpError> {
        if self.order() > cap {
            return Err(GrpError::CapExceeded { order: self.order() as u128, cap: cap as u128 });
        }
        let gens: Vec<_> = self.generators().into_iter().map(|g| self.element(g).clone()).collect();
        let inv: Vec<_> = gens.iter().map(|g| self.inv(g)).collect();
        let mut class_of = vec![u32::MAX; self.order()];
        let (mut reps, mut sizes) = (Vec::new(), Vec::new());
        for start in 0..self.order() {
            if class_of[start] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            class_of[start] = c;
            let mut stack = vec![start];
            let mut size = 1;
            while let Some(x) = stack.pop() {
                let xe = self.element(x);
                for (g, gi) in gens.iter().zip(&inv) {
                    let y = self.index_of(&self.mul(&self.mul(g, xe), gi)).expect("closed");
                    if class_of[y] == u32::MAX {
                        class_of[y] = c;
                        size += 1;
                        stack.push(y);
                    }
                }
            }
            reps.push(start);
            sizes.push(size);
        }
        Ok(ConjClasses { reps, sizes, class_of })
    }
}

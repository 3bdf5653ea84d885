//! Group, torus and Frobenius actions on the flat digit space of the coordinate model.
//!
//! G_h and T_h act F̄-linearly on digits with coefficients in F_{q^n}, so each element is
//! recorded as a `D × D` matrix over the tower. Frobenius acts digit-wise.

use crate::model::Model;
use coxdl_gf::{FieldOps, Fq, Tower};
use coxdl_grp::{GhElement, Group, Model as GroupModel};
use coxdl_witt::Witt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    dim: usize,
    /// Row-major entries.
    entries: Vec<Fq>,
}

impl LinearMap {
    pub fn identity(dim: usize) -> LinearMap {
        let mut entries = vec![Fq::ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Fq::ONE;
        }
        LinearMap { dim, entries }
    }

    pub fn zero(dim: usize) -> LinearMap {
        LinearMap { dim, entries: vec![Fq::ZERO; dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Fq {
        self.entries[r * self.dim + c]
    }

    fn add_at(&mut self, t: &Tower, r: usize, c: usize, v: Fq) {
        let e = &mut self.entries[r * self.dim + c];
        *e = t.add(*e, v);
    }

    /// `self ∘ other`.
    pub fn compose(&self, t: &Tower, other: &LinearMap) -> LinearMap {
        let d = self.dim;
        let mut out = LinearMap::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(t, i, j, t.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, t: &Tower, other: &LinearMap) -> LinearMap {
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| t.add(a, b)).collect();
        LinearMap { dim: self.dim, entries }
    }

    /// Multiplicative order (the map must be invertible).
    pub fn order(&self, t: &Tower) -> u64 {
        let id = LinearMap::identity(self.dim);
        let mut cur = self.clone();
        let mut k = 1;
        while cur != id {
            cur = cur.compose(t, self);
            k += 1;
            assert!(k < 1 << 20, "map is not of finite small order");
        }
        k
    }

    /// Applies the map to a flat vector over a field containing the tower.
    pub fn apply<F: FieldOps>(&self, f: &F, emb: &impl Fn(Fq) -> F::Elem, x: &[F::Elem]) -> Vec<F::Elem> {
        let d = self.dim;
        (0..d)
            .map(|i| {
                let mut acc = f.zero();
                for (j, xj) in x.iter().enumerate() {
                    let a = self.entries[i * d + j];
                    if !a.is_zero() && !f.is_zero(xj) {
                        acc = f.add(&acc, &f.mul(&emb(a), xj));
                    }
                }
                acc
            })
            .collect()
    }
}

/// Digit-wise Frobenius `σ^s`.
pub fn frobenius<F: FieldOps>(f: &F, x: &[F::Elem], s: i64) -> Vec<F::Elem> {
    x.iter().map(|c| f.frob(c, s)).collect()
}

impl Model {
    /// Right action of a torus element: every coordinate is multiplied by `t`.
    pub fn torus_map(&self, tw: &Tower, t: &Witt) -> LinearMap {
        let mut m = LinearMap::zero(self.dim());
        for i in 0..self.n() {
            let p = self.precision(i);
            for b in 0..p {
                for d in b..p {
                    m.add_at(tw, self.slot(i, d), self.slot(i, b), t.digit(d - b));
                }
            }
        }
        m
    }

    /// `x ↦ C x = (ϖ x_n, x_1, …, x_{n−1})`, used by the division-algebra model (n₀ = n).
    fn shift_map(&self) -> LinearMap {
        let n = self.n();
        let mut m = LinearMap::zero(self.dim());
        for i in 0..n {
            let src = (i + n - 1) % n;
            let raise = usize::from(i == 0);
            for d in raise..self.precision(i) {
                if d - raise < self.precision(src) {
                    m.entries[self.slot(i, d) * self.dim() + self.slot(src, d - raise)] = Fq::ONE;
                }
            }
        }
        m
    }

    /// `[a] = diag(…)` with `σ^i(a)` at position `1 + i·k₀ mod n` (0-based `i·k₀ mod n`).
    fn diag_map(&self, tw: &Tower, a: Fq) -> LinearMap {
        let n = self.n();
        let k0 = self.spec().k0() as usize;
        let mut m = LinearMap::zero(self.dim());
        for i in 0..n {
            let pos = (i * k0) % n;
            let v = tw.frob(a, i as i64);
            for d in 0..self.precision(pos) {
                m.entries[self.slot(pos, d) * self.dim() + self.slot(pos, d)] = v;
            }
        }
        m
    }

    /// Left action of a group element.
    pub fn group_map(&self, group: &Group, g: &GhElement) -> LinearMap {
        let tw = group.tower().as_ref();
        let n = self.n();
        let h = self.h();
        match group.model() {
            GroupModel::Matrix => {
                let mut m = LinearMap::zero(self.dim());
                for i in 0..n {
                    for j in 0..n {
                        let e = group.entry(g, i, j);
                        for b in 0..h {
                            for d in b..h {
                                if !e[d - b].is_zero() {
                                    m.add_at(tw, self.slot(i, d), self.slot(j, b), e[d - b]);
                                }
                            }
                        }
                    }
                }
                m
            }
            GroupModel::Division { .. } => {
                let c = self.shift_map();
                let mut power = LinearMap::identity(self.dim());
                let mut total = LinearMap::zero(self.dim());
                for &a in &g.digits {
                    if !a.is_zero() {
                        total = total.add(tw, &self.diag_map(tw, a).compose(tw, &power));
                    }
                    power = c.compose(tw, &power);
                }
                total
            }
        }
    }
}

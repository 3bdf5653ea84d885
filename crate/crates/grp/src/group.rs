use coxdl_gf::{Fq, GfError, Tower};
use coxdl_torus::{GroupSpec, Torus};
use coxdl_witt::{series, Witt};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

/// Largest group this crate will enumerate.
pub const ENUMERATION_CAP: u128 = 4_000_000;

#[derive(Debug, Error)]
pub enum GrpError {
    #[error("no explicit group model for {0} (need κ = 0 or gcd(n, κ) = 1)")]
    Unsupported(GroupSpec),
    #[error("group of order {order} exceeds the cap {cap}")]
    CapExceeded { order: u128, cap: u128 },
    #[error("{0} has no proper rational parabolic subgroup")]
    NoParabolic(GroupSpec),
    #[error("parabolic index i0 = {i0} outside 1..={max}")]
    ParabolicIndex { i0: u32, max: u32 },
    #[error(transparent)]
    Field(#[from] GfError),
}

/// `#G_h = q^{n²(h−1)} · ∏_{i<n'} (q^{n₀n'} − q^{n₀i})`.
pub fn group_order(spec: &GroupSpec) -> u128 {
    let q = spec.q as u128;
    let (n, n0, np) = (spec.n, spec.n0(), spec.n_prime());
    let top = q.pow(n0 * np);
    let base: u128 = (0..np).map(|i| top - q.pow(n0 * i)).product();
    q.pow(n * n * (spec.h as u32 - 1)) * base
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GhElement {
    pub digits: Vec<Fq>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// `GL_n(W_h(F_q))`.
    Matrix,
    /// Units of the truncated maximal order of the division algebra, with `l·k₀ ≡ 1 mod n`.
    Division { l: u32, len: usize },
}

pub struct ParabolicRadical {
    pub spec: GroupSpec,
    pub i0: u32,
    /// Indices into the group's element list.
    pub elements: Vec<usize>,
}

pub struct Group {
    spec: GroupSpec,
    tower: Arc<Tower>,
    model: Model,
    elems: Vec<GhElement>,
    index: HashMap<GhElement, usize>,
}

impl Group {
    pub fn new(spec: &GroupSpec) -> Result<Group, GrpError> {
        let tower = Arc::new(Tower::new(spec.p(), spec.f(), &[spec.n])?);
        Group::with_tower(spec, tower)
    }

    /// Builds the group over an existing tower, which must contain F_{q^n}.
    pub fn with_tower(spec: &GroupSpec, tower: Arc<Tower>) -> Result<Group, GrpError> {
        let model = if spec.kappa == 0 {
            Model::Matrix
        } else if spec.n_prime() == 1 {
            let n = spec.n;
            let l = (1..n).find(|l| (l * spec.k0()) % n == 1).unwrap_or(1);
            Model::Division { l, len: n as usize * (spec.h - 1) + 1 }
        } else {
            return Err(GrpError::Unsupported(*spec));
        };
        let order = group_order(spec);
        if order > ENUMERATION_CAP {
            return Err(GrpError::CapExceeded { order, cap: ENUMERATION_CAP });
        }
        let mut g = Group { spec: *spec, tower, model, elems: Vec::new(), index: HashMap::new() };
        g.elems = g.enumerate();
        debug_assert_eq!(g.elems.len() as u128, order);
        g.index = g.elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Ok(g)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[GhElement] {
        &self.elems
    }

    pub fn element(&self, i: usize) -> &GhElement {
        &self.elems[i]
    }

    pub fn index_of(&self, g: &GhElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    fn n(&self) -> usize {
        self.spec.n as usize
    }

    fn h(&self) -> usize {
        self.spec.h
    }

    fn enumerate(&self) -> Vec<GhElement> {
        let t = &self.tower;
        match self.model {
            Model::Matrix => {
                let n = self.n();
                let fq = t.elements(1).expect("base level").to_vec();
                let residues: Vec<Vec<Fq>> = tuples(&fq, n * n)
                    .into_iter()
                    .filter(|m| {
                        let rows: Vec<Vec<Fq>> = m.chunks(n).map(|r| r.to_vec()).collect();
                        !series::field_det(t.as_ref(), &rows).is_zero()
                    })
                    .collect();
                let tails = tuples(&fq, n * n * (self.h() - 1));
                let mut out = Vec::with_capacity(residues.len() * tails.len());
                for r in &residues {
                    for tail in &tails {
                        let mut digits = r.clone();
                        digits.extend_from_slice(tail);
                        out.push(GhElement { digits });
                    }
                }
                out
            }
            Model::Division { len, .. } => {
                let fqn = t.elements(self.spec.n).expect("level n").to_vec();
                let tails = tuples(&fqn, len - 1);
                let mut out = Vec::with_capacity((fqn.len() - 1) * tails.len());
                for &a0 in fqn.iter().filter(|a| !a.is_zero()) {
                    for tail in &tails {
                        let mut digits = vec![a0];
                        digits.extend_from_slice(tail);
                        out.push(GhElement { digits });
                    }
                }
                out
            }
        }
    }

    pub fn identity(&self) -> GhElement {
        match self.model {
            Model::Matrix => {
                let n = self.n();
                let mut digits = vec![Fq::ZERO; n * n * self.h()];
                for i in 0..n {
                    digits[i * n + i] = Fq::ONE;
                }
                GhElement { digits }
            }
            Model::Division { len, .. } => {
                let mut digits = vec![Fq::ZERO; len];
                digits[0] = Fq::ONE;
                GhElement { digits }
            }
        }
    }

    /// Matrix entry (i, j) as a digit vector (κ = 0 only).
    pub fn entry(&self, g: &GhElement, i: usize, j: usize) -> Vec<Fq> {
        let n = self.n();
        (0..self.h()).map(|d| g.digits[(d * n + i) * n + j]).collect()
    }

    fn from_entries(&self, m: &[Vec<Vec<Fq>>]) -> GhElement {
        let n = self.n();
        let mut digits = vec![Fq::ZERO; n * n * self.h()];
        for (i, row) in m.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                for (d, &x) in e.iter().enumerate() {
                    digits[(d * n + i) * n + j] = x;
                }
            }
        }
        GhElement { digits }
    }

    /// Entries as an n×n array of digit vectors (κ = 0 only).
    pub fn entries(&self, g: &GhElement) -> Vec<Vec<Vec<Fq>>> {
        let n = self.n();
        (0..n).map(|i| (0..n).map(|j| self.entry(g, i, j)).collect()).collect()
    }

    pub fn mul(&self, a: &GhElement, b: &GhElement) -> GhElement {
        let t = self.tower.as_ref();
        match self.model {
            Model::Matrix => {
                let (n, h) = (self.n(), self.h());
                let mut digits = vec![Fq::ZERO; n * n * h];
                for da in 0..h {
                    for db in 0..h - da {
                        let d = da + db;
                        for i in 0..n {
                            for k in 0..n {
                                let x = a.digits[(da * n + i) * n + k];
                                if x.is_zero() {
                                    continue;
                                }
                                for j in 0..n {
                                    let y = b.digits[(db * n + k) * n + j];
                                    let slot = &mut digits[(d * n + i) * n + j];
                                    *slot = t.add(*slot, t.mul(x, y));
                                }
                            }
                        }
                    }
                }
                GhElement { digits }
            }
            Model::Division { l, len } => {
                let mut digits = vec![Fq::ZERO; len];
                for (i, &x) in a.digits.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let tw = -((l as i64) * i as i64);
                    for (j, &y) in b.digits[..len - i].iter().enumerate() {
                        digits[i + j] = t.add(digits[i + j], t.mul(x, t.frob(y, tw)));
                    }
                }
                GhElement { digits }
            }
        }
    }

    pub fn inv(&self, a: &GhElement) -> GhElement {
        let t = self.tower.as_ref();
        match self.model {
            Model::Matrix => {
                let (n, h) = (self.n(), self.h());
                let mut m = self.entries(a);
                let mut r: Vec<Vec<Vec<Fq>>> = self.entries(&self.identity());
                for col in 0..n {
                    let piv = (col..n)
                        .find(|&row| series::is_unit(t, &m[row][col]))
                        .expect("invertible over the local ring");
                    m.swap(piv, col);
                    r.swap(piv, col);
                    let pinv = series::inv(t, &m[col][col], h).expect("unit pivot");
                    for k in 0..n {
                        m[col][k] = series::mul(t, &m[col][k], &pinv, h);
                        r[col][k] = series::mul(t, &r[col][k], &pinv, h);
                    }
                    for row in 0..n {
                        if row == col || m[row][col].iter().all(|x| x.is_zero()) {
                            continue;
                        }
                        let factor = m[row][col].clone();
                        for k in 0..n {
                            let dm = series::mul(t, &factor, &m[col][k], h);
                            let dr = series::mul(t, &factor, &r[col][k], h);
                            m[row][k] = series::sub(t, &m[row][k], &dm, h);
                            r[row][k] = series::sub(t, &r[row][k], &dr, h);
                        }
                    }
                }
                self.from_entries(&r)
            }
            Model::Division { l, len } => {
                let a0i = t.inv(a.digits[0]).expect("unit");
                let mut b = vec![Fq::ZERO; len];
                b[0] = a0i;
                for k in 1..len {
                    let mut s = Fq::ZERO;
                    for i in 1..=k {
                        let tw = -((l as i64) * i as i64);
                        s = t.add(s, t.mul(a.digits[i], t.frob(b[k - i], tw)));
                    }
                    b[k] = t.neg(t.mul(a0i, s));
                }
                GhElement { digits: b }
            }
        }
    }

    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        self.index[&self.mul(&self.elems[i], &self.elems[j])]
    }

    pub fn inv_index(&self, i: usize) -> usize {
        self.index[&self.inv(&self.elems[i])]
    }

    /// `g x g^{-1}`.
    pub fn conjugate(&self, g: &GhElement, x: &GhElement) -> GhElement {
        self.mul(&self.mul(g, x), &self.inv(g))
    }

    /// Determinant in W_h(F_q), for the matrix model.
    pub fn det(&self, g: &GhElement) -> Option<Vec<Fq>> {
        (self.model == Model::Matrix).then(|| series::det(self.tower.as_ref(), &self.entries(g), self.h()))
    }

    /// The unipotent radical N_h of the standard maximal parabolic of type (i₀, n − i₀):
    /// identity plus arbitrary entries in rows `< i₀` and columns `≥ i₀`.
    pub fn parabolic_radical(&self, i0: u32) -> Result<ParabolicRadical, GrpError> {
        if self.model != Model::Matrix {
            return Err(GrpError::NoParabolic(self.spec));
        }
        let n = self.spec.n;
        if i0 < 1 || i0 >= n {
            return Err(GrpError::ParabolicIndex { i0, max: n - 1 });
        }
        let (n, i0u, h) = (n as usize, i0 as usize, self.h());
        let slots: Vec<usize> = (0..h)
            .flat_map(|d| (0..i0u).flat_map(move |i| (i0u..n).map(move |j| (d * n + i) * n + j)))
            .collect();
        let fq = self.tower.elements(1)?.to_vec();
        let id = self.identity();
        let elements = tuples(&fq, slots.len())
            .into_iter()
            .map(|vals| {
                let mut g = id.clone();
                for (&s, v) in slots.iter().zip(vals) {
                    g.digits[s] = v;
                }
                self.index[&g]
            })
            .collect();
        Ok(ParabolicRadical { spec: self.spec, i0, elements })
    }

    /// The image of a torus element `t ∈ W_h^×(F_{q^n})`.
    ///
    /// For κ = 0 this is multiplication by t on W_h(F_{q^n}) in the basis `1, ω, …, ω^{n−1}`
    /// with ω the chosen generator of F_{q^n}; for n' = 1 it is t placed in degrees `Π^{nk}`.
    pub fn embed_torus_element(&self, x: &Witt) -> GhElement {
        let t = self.tower.as_ref();
        let (n, h) = (self.n(), self.h());
        match self.model {
            Model::Matrix => {
                let coords = self.basis_coordinates();
                let omega = t.generator(self.spec.n).expect("level n");
                let mut m = vec![vec![vec![Fq::ZERO; h]; n]; n];
                for j in 0..n {
                    let wj = t.pow(omega, j as u128);
                    for d in 0..h {
                        let c = &coords[&t.mul(x.digit(d), wj)];
                        for i in 0..n {
                            m[i][j][d] = c[i];
                        }
                    }
                }
                self.from_entries(&m)
            }
            Model::Division { len, .. } => {
                let mut digits = vec![Fq::ZERO; len];
                for k in 0..h {
                    digits[n * k] = x.digit(k);
                }
                GhElement { digits }
            }
        }
    }

    /// Coordinates over F_q of each element of F_{q^n} in the basis `1, ω, …, ω^{n−1}`.
    fn basis_coordinates(&self) -> HashMap<Fq, Vec<Fq>> {
        let t = self.tower.as_ref();
        let n = self.n();
        let omega = t.generator(self.spec.n).expect("level n");
        let powers: Vec<Fq> = (0..n).map(|j| t.pow(omega, j as u128)).collect();
        let fq = t.elements(1).expect("base level");
        tuples(fq, n)
            .into_iter()
            .map(|c| {
                let v = c.iter().zip(&powers).fold(Fq::ZERO, |acc, (&a, &w)| t.add(acc, t.mul(a, w)));
                (v, c)
            })
            .collect()
    }
}

/// Torus elements whose residue has trivial stabilizer in Gal(F_{q^n}/F_q).
pub fn very_regular_elements(torus: &Torus) -> Vec<usize> {
    let t = torus.tower();
    (0..torus.order()).filter(|&i| t.level_of(torus.residue(i)) == torus.n()).collect()
}

/// All tuples of length `k` over `vals`, first coordinate slowest.
fn tuples(vals: &[Fq], k: usize) -> Vec<Vec<Fq>> {
    let mut out = vec![Vec::with_capacity(k)];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                vals.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

//! A finite quotient of the relative Weil group W_{L/K} for L/K unramified of degree n.
//!
//! M is generated by A = W_h^×(F_{q^n}) × ⟨ϖ⟩/⟨ϖ^{nm}⟩ and F with F a F⁻¹ = σ(a),
//! F^n = ϖ. Every element is a·ϖ^k·F^j with a ∈ W_h^×, k < nm, j < n.

use coxdl_gf::Tower;
use coxdl_torus::{Cyclo, Torus, TorusChar};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParamError {
    #[error("ϖ-value ζ_{e}^{k} times μ(ϖ) does not have order dividing {order}")]
    InconsistentPiValue { e: u64, k: i64, order: u64 },
    #[error(transparent)]
    Field(#[from] coxdl_gf::GfError),
    #[error(transparent)]
    Spec(#[from] coxdl_torus::SpecError),
    #[error("degree formula: {0}")]
    Formula(String),
    #[error(transparent)]
    Dl(#[from] coxdl_dlchar::DlError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeilElement {
    pub unit: usize,
    pub pi: u64,
    pub frob: u32,
}

pub struct WeilModel {
    torus: Arc<Torus>,
    n: u32,
    /// Order of ϖ in M is n·m.
    depth: u64,
}

/// μ(ϖ) = (−1)^{n−1}; μ is trivial on units.
pub fn rectifier(n: u32) -> i64 {
    if n % 2 == 1 {
        1
    } else {
        -1
    }
}

impl WeilModel {
    pub fn new(q: u64, n: u32, h: usize, m: u64) -> Result<WeilModel, ParamError> {
        let (p, f) = coxdl_torus::prime_power(q).ok_or(coxdl_torus::SpecError::NotPrimePower(q))?;
        let tower = Arc::new(Tower::new(p, f, &[n])?);
        Ok(WeilModel::with_torus(Arc::new(Torus::new(tower, n, h)), m))
    }

    pub fn with_torus(torus: Arc<Torus>, m: u64) -> WeilModel {
        let n = torus.n();
        WeilModel { torus, n, depth: n as u64 * m }
    }

    pub fn torus(&self) -> &Arc<Torus> {
        &self.torus
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn pi_order(&self) -> u64 {
        self.depth
    }

    /// #A = #W_h^× · nm.
    pub fn a_order(&self) -> usize {
        self.torus.order() * self.depth as usize
    }

    pub fn order(&self) -> usize {
        self.a_order() * self.n as usize
    }

    pub fn index(&self, g: WeilElement) -> usize {
        g.unit + self.torus.order() * (g.pi as usize + self.depth as usize * g.frob as usize)
    }

    pub fn element(&self, i: usize) -> WeilElement {
        let t = self.torus.order();
        let unit = i % t;
        let rest = i / t;
        WeilElement { unit, pi: (rest % self.depth as usize) as u64, frob: (rest / self.depth as usize) as u32 }
    }

    pub fn elements(&self) -> impl Iterator<Item = WeilElement> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn identity(&self) -> WeilElement {
        WeilElement { unit: 0, pi: 0, frob: 0 }
    }

    /// (aϖ^kF^j)(bϖ^lF^i) = a·σ^j(b)·ϖ^{k+l}·F^{j+i}, with F^n = ϖ.
    pub fn mul(&self, x: WeilElement, y: WeilElement) -> WeilElement {
        let b = self.torus.sigma_index(y.unit, x.frob as i64);
        let f = x.frob + y.frob;
        let carry = u64::from(f >= self.n);
        WeilElement { unit: self.torus.mul_index(x.unit, b), pi: (x.pi + y.pi + carry) % self.depth, frob: f % self.n }
    }

    /// (aϖ^kF^j)⁻¹ = σ^{−j}(a⁻¹)·ϖ^{−k−1}·F^{n−j} for j > 0.
    pub fn inv(&self, x: WeilElement) -> WeilElement {
        let a = self.torus.sigma_index(self.torus.inv_index(x.unit), -(x.frob as i64));
        let borrow = u64::from(x.frob > 0);
        let d = self.depth;
        WeilElement { unit: a, pi: (2 * d - x.pi % d - borrow) % d, frob: (self.n - x.frob) % self.n }
    }

    pub fn in_a(&self, x: WeilElement) -> bool {
        x.frob == 0
    }
}

/// A class function on M.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamChar {
    pub values: Vec<Cyclo>,
    pub dim: i128,
}

/// The character χ = θ·μ·(ϖ ↦ ϖ_value) of A, with ϖ_value = ζ_e^k.
pub struct InducingChar {
    /// χ on A, indexed like the elements of M with j = 0.
    table: Vec<Cyclo>,
    units: usize,
}

impl InducingChar {
    pub fn new(model: &WeilModel, theta: &TorusChar, pi_value: (u64, i64)) -> Result<InducingChar, ParamError> {
        let (e, k) = pi_value;
        let v = Cyclo::root(e, k).scale(rectifier(model.n) as i128, 1);
        let mut acc = Cyclo::from_int(1, 1);
        for _ in 0..model.depth {
            acc = &acc * &v;
        }
        if acc != Cyclo::from_int(1, 1) {
            return Err(ParamError::InconsistentPiValue { e, k, order: model.depth });
        }
        let units: Vec<Cyclo> = (0..model.torus.order()).map(|i| model.torus.char_eval(theta, i)).collect();
        let mut table = Vec::with_capacity(model.a_order());
        let mut pk = Cyclo::from_int(1, 1);
        for _ in 0..model.depth {
            table.extend(units.iter().map(|u| u * &pk));
            pk = &pk * &v;
        }
        Ok(InducingChar { table, units: units.len() })
    }

    /// χ(aϖ^k) for an element of A.
    pub fn eval(&self, x: WeilElement) -> &Cyclo {
        debug_assert_eq!(x.frob, 0);
        &self.table[x.unit + self.units * x.pi as usize]
    }
}

impl WeilModel {
    /// σ_θ = Ind_A^M χ by the conjugation-sum formula (1/#A)·Σ_{s∈M} χ°(s g s⁻¹).
    pub fn sigma_theta(&self, theta: &TorusChar, pi_value: (u64, i64)) -> Result<ParamChar, ParamError> {
        let chi = InducingChar::new(self, theta, pi_value)?;
        let na = self.a_order() as i128;
        let values: Vec<Cyclo> = self
            .elements()
            .map(|g| {
                let mut acc = Cyclo::from_int(1, 0);
                for s in self.elements() {
                    let c = self.mul(self.mul(s, g), self.inv(s));
                    if self.in_a(c) {
                        acc = &acc + chi.eval(c);
                    }
                }
                acc.scale(1, na)
            })
            .collect();
        let dim = values[0].as_integer().expect("integer degree");
        Ok(ParamChar { values, dim })
    }

    /// (1/#M)·Σ_g f₁(g)·conj(f₂(g)).
    pub fn inner_product(&self, f1: &ParamChar, f2: &ParamChar) -> Cyclo {
        let mut acc = Cyclo::from_int(1, 0);
        for (a, b) in f1.values.iter().zip(&f2.values) {
            acc = &acc + &(a * &b.conj());
        }
        acc.scale(1, self.order() as i128)
    }
}

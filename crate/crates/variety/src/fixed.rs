//! Fixed points of `x ↦ A·σ^s(x)` on the digit space.
//!
//! With A of order K over F_{q^n}, every fixed point has coordinates in F_{q^{sK}}, since
//! `(Aσ^s)^K = σ^{sK}`. The fixed set is the kernel of the F_p-linear map `I − Aσ^s` on
//! `F_{q^{M}}^D` (M = lcm(sK, ambient)), computed exactly by Gaussian elimination.

use crate::action::LinearMap;
use crate::linalg;
use crate::VarietyError;
use coxdl_gf::{ExtElem, ExtField, Fq, Tower, TowerEmbedding};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub struct BigField {
    pub ext: ExtField,
    pub emb: TowerEmbedding,
}

impl BigField {
    pub fn embed(&self, tower: &Tower, x: Fq) -> ExtElem {
        self.emb.map(tower, &self.ext, x)
    }
}

/// Extensions of the tower's ambient field, built on demand and shared.
pub struct FieldCache {
    tower: Arc<Tower>,
    fields: Mutex<HashMap<u32, Arc<BigField>>>,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FieldCache {
    pub fn new(tower: Arc<Tower>) -> FieldCache {
        FieldCache { tower, fields: Mutex::new(HashMap::new()) }
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    /// F_{q^M} with M the least common multiple of `m` and the ambient degree.
    pub fn get(&self, m: u32) -> Result<Arc<BigField>, VarietyError> {
        let amb = self.tower.ambient_degree();
        let m = m / gcd(m, amb) * amb;
        if let Some(b) = self.fields.lock().unwrap().get(&m) {
            return Ok(b.clone());
        }
        let t = &self.tower;
        let ext = ExtField::new(t.p(), t.f(), (t.f() * m) as usize)?;
        let emb = TowerEmbedding::new(t, &ext)?;
        let b = Arc::new(BigField { ext, emb });
        self.fields.lock().unwrap().insert(m, b.clone());
        Ok(b)
    }
}

/// An F_p-basis of a fixed-point set.
pub struct FixedSpace {
    pub field: Arc<BigField>,
    pub basis: Vec<Vec<ExtElem>>,
}

impl FixedSpace {
    pub fn p(&self) -> u32 {
        self.field.ext.p() as u32
    }

    /// Calls `visit` on every F_p-combination of the basis (p^{dim} points).
    pub fn for_each_point(&self, mut visit: impl FnMut(&[ExtElem])) {
        let ext = &self.field.ext;
        let dim = self.basis.len();
        let size = self.basis.first().map_or(0, |v| v.len());
        let mut x: Vec<ExtElem> = vec![ext.zero(); size];
        let mut digits = vec![0u32; dim];
        let p = self.p();
        loop {
            visit(&x);
            // Odometer step: bump the first digit that does not wrap; wrapped digits
            // went from p−1 to 0, which is one more addition of their vector.
            let mut i = 0;
            loop {
                if i == dim {
                    return;
                }
                for (xc, bc) in x.iter_mut().zip(&self.basis[i]) {
                    ext.add_assign(xc, bc);
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }
}

/// Flattens a vector over the big field into F_p coordinates.
pub fn flatten(x: &[ExtElem]) -> Vec<u32> {
    x.iter().flat_map(|c| c.iter().copied()).collect()
}

pub fn unflatten(v: &[u32], d: usize) -> Vec<ExtElem> {
    v.chunks(d).map(|c| c.to_vec()).collect()
}

/// Basis of `{x : A σ^s(x) = x}` over F_p; the dimension is asserted to be `f·s·D`.
pub fn solve_twisted_fixed(cache: &FieldCache, a: &LinearMap, s: u32) -> Result<FixedSpace, VarietyError> {
    let tower = cache.tower().as_ref();
    let k = a.order(tower) as u32;
    let field = cache.get(s * k)?;
    let ext = &field.ext;
    let d = ext.degree();
    let dim = a.dim();
    let p = ext.p() as u32;
    let emb = |x: Fq| field.embed(tower, x);
    let mut columns = Vec::with_capacity(dim * d);
    for slot in 0..dim {
        for c in 0..d {
            let mut e = ext.zero();
            e[c] = 1;
            let mut x = vec![ext.zero(); dim];
            x[slot] = ext.frob(&e, s as i64);
            let mut y = a.apply(ext, &emb, &x);
            y[slot] = ext.sub(&y[slot], &e);
            columns.push(flatten(&y));
        }
    }
    let kernel = linalg::kernel(&columns, p);
    let expected = (tower.f() * s) as usize * dim;
    if kernel.len() != expected {
        return Err(VarietyError::Solver(format!("fixed space has F_p-dimension {} instead of {expected}", kernel.len())));
    }
    let basis = kernel.iter().map(|v| unflatten(v, d)).collect();
    Ok(FixedSpace { field, basis })
}

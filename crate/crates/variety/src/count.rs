//! Exact counts of `S_{g,t} = {x ∈ X_{h,n'} : g·σ^n(x)·t = x}` and of rational points.

use crate::action::LinearMap;
use crate::fixed::{flatten, solve_twisted_fixed, FieldCache, FixedSpace};
use crate::linalg;
use crate::model::Model;
use crate::VarietyError;
use coxdl_gf::{ExtElem, ExtField, FieldOps, Fq, Tower};
use coxdl_grp::{GhElement, Group};
use coxdl_torus::{GroupSpec, Torus};
use std::sync::Arc;

/// Largest number of candidate points enumerated for a single count.
pub const POINT_CAP: u128 = 1 << 28;

pub struct Counter {
    model: Model,
    group: Arc<Group>,
    torus: Arc<Torus>,
    cache: FieldCache,
    tmaps: Vec<LinearMap>,
}

impl Counter {
    /// `torus` must be built on the group's tower.
    pub fn new(group: Arc<Group>, torus: Arc<Torus>) -> Counter {
        let model = Model::new(group.spec());
        let tw = group.tower().clone();
        let tmaps = torus.elements().iter().map(|t| model.torus_map(&tw, t)).collect();
        Counter { model, cache: FieldCache::new(tw), group, torus, tmaps }
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn torus(&self) -> &Arc<Torus> {
        &self.torus
    }

    pub fn field_cache(&self) -> &FieldCache {
        &self.cache
    }

    fn tower(&self) -> &Tower {
        self.group.tower().as_ref()
    }

    /// The semilinear twist `x ↦ g·σ^n(x)·t` as the matrix of its linear part.
    pub fn twist_map(&self, g: &GhElement, t: usize) -> LinearMap {
        self.model.group_map(&self.group, g).compose(self.tower(), &self.tmaps[t])
    }

    pub fn fixed_space(&self, g: &GhElement, t: usize) -> Result<FixedSpace, VarietyError> {
        solve_twisted_fixed(&self.cache, &self.twist_map(g, t), self.group.spec().n)
    }

    /// `#S_{g,t}`; uses the digit-by-digit method when κ = 0 and h ≥ 2.
    pub fn count_s(&self, g: &GhElement, t: usize) -> Result<u64, VarietyError> {
        let spec = self.group.spec();
        if spec.kappa == 0 && spec.h >= 2 {
            self.count_s_layered(g, t)
        } else {
            self.count_s_enumerate(g, t)
        }
    }

    /// Enumerates the whole fixed space and filters.
    pub fn count_s_enumerate(&self, g: &GhElement, t: usize) -> Result<u64, VarietyError> {
        let spec = self.group.spec();
        let total = (spec.q as u128).pow(spec.n * self.model.dim() as u32);
        if total > POINT_CAP {
            return Err(VarietyError::Capacity { points: total, cap: POINT_CAP });
        }
        let fix = self.fixed_space(g, t)?;
        let ext = &fix.field.ext;
        let mut count = 0u64;
        fix.for_each_point(|x| {
            if self.model.in_stratum_point(ext, &self.model.split(x)) {
                count += 1;
            }
        });
        Ok(count)
    }

    /// κ = 0, h ≥ 2. On the closed stratum the residue x̄ is F_{q^n}-rational, so it is
    /// enumerated in the tower first; most pairs (g, t) have no admissible residue. Each
    /// residue is lifted into the fixed space, and the remaining freedom `ϖ^j C₀` is fixed
    /// one digit at a time. The j-th determinant digit is affine in the digit-j parameters
    /// for j ≥ 1, so each step is an F_p-linear system.
    pub fn count_s_layered(&self, g: &GhElement, t: usize) -> Result<u64, VarietyError> {
        let model = &self.model;
        let tw = self.tower();
        let spec = *self.group.spec();
        let n = spec.n as usize;
        let gbar: Vec<Vec<Fq>> =
            (0..n).map(|i| (0..n).map(|j| self.group.entry(g, i, j)[0]).collect()).collect();
        let tbar = self.torus.element(t).digit(0);
        let residues: Vec<Vec<Fq>> = rational_vectors(tw, spec.n, n)
            .into_iter()
            .filter(|x| {
                let gx: Vec<Fq> = (0..n)
                    .map(|i| (0..n).fold(Fq::ZERO, |acc, j| tw.add(acc, tw.mul(gbar[i][j], x[j]))))
                    .map(|v| tw.mul(v, tbar))
                    .collect();
                if gx != *x {
                    return false;
                }
                let pt: Vec<Vec<Fq>> = x.iter().map(|&c| vec![c]).collect();
                let d0 = Model::new(&spec.with_h(1)).det(tw, &pt);
                model.det_condition(tw, &d0)
            })
            .collect();
        if residues.is_empty() {
            return Ok(0);
        }
        let fix = self.fixed_space(g, t)?;
        let ext = &fix.field.ext;
        let p = fix.p();
        let d = ext.degree();
        let h = spec.h;
        let residue_of = |v: &[ExtElem]| -> Vec<u32> { flatten(&(0..n).map(|i| v[model.slot(i, 0)].clone()).collect::<Vec<_>>()) };
        let res_cols: Vec<Vec<u32>> = fix.basis.iter().map(|v| residue_of(v)).collect();
        let mut rows: Vec<Vec<u32>> = (0..n * d).map(|i| res_cols.iter().map(|c| c[i]).collect()).collect();
        let pivots = linalg::rref(&mut rows, p);
        let expected = (spec.f() * spec.n) as usize * n;
        if pivots.len() != expected {
            return Err(VarietyError::Solver(format!("residue image has dimension {} instead of {expected}", pivots.len())));
        }
        let c0: Vec<Vec<ExtElem>> = pivots.iter().map(|&b| fix.basis[b].clone()).collect();
        let layers: Vec<Vec<Vec<ExtElem>>> =
            (1..h).map(|j| c0.iter().map(|v| shift_point(ext, model, v, j)).collect()).collect();

        let mut total = 0u64;
        for xbar in &residues {
            let target: Vec<ExtElem> = xbar.iter().map(|&c| fix.field.embed(tw, c)).collect();
            let (lam, _) = linalg::solve_affine(&res_cols, &flatten(&target), p)
                .ok_or_else(|| VarietyError::Solver("rational residue has no lift".into()))?;
            let mut x = vec![ext.zero(); model.dim()];
            for (l, v) in lam.iter().zip(&fix.basis) {
                for (xc, vc) in x.iter_mut().zip(v) {
                    *xc = ext.add(xc, &ext.scale(vc, *l));
                }
            }
            total += self.extend(ext, &x, 1, &layers);
        }
        Ok(total)
    }

    fn extend(&self, ext: &ExtField, x: &[ExtElem], j: usize, layers: &[Vec<Vec<ExtElem>>]) -> u64 {
        let model = &self.model;
        let h = model.h();
        let p = ext.p() as u32;
        let psi = |u: &ExtElem| -> ExtElem {
            let fu = ext.frob(u, 1);
            if model.epsilon() == 1 {
                ext.sub(&fu, u)
            } else {
                ext.add(&fu, u)
            }
        };
        let base = psi(&model.det(ext, &model.split(x))[j]);
        let layer = &layers[j - 1];
        let cols: Vec<Vec<u32>> = layer
            .iter()
            .map(|y| {
                let xy: Vec<ExtElem> = x.iter().zip(y).map(|(a, b)| ext.add(a, b)).collect();
                ext.sub(&psi(&model.det(ext, &model.split(&xy))[j]), &base)
            })
            .collect();
        let Some((part, kern)) = linalg::solve_affine(&cols, &ext.neg(&base), p) else {
            return 0;
        };
        if j + 1 == h {
            return (p as u64).pow(kern.len() as u32);
        }
        let mut total = 0;
        let mut coeffs = vec![0u32; kern.len()];
        loop {
            let mut lam = part.clone();
            for (c, k) in coeffs.iter().zip(&kern) {
                for (l, kv) in lam.iter_mut().zip(k) {
                    *l = (*l + c * kv) % p;
                }
            }
            let mut y = x.to_vec();
            for (l, v) in lam.iter().zip(layer) {
                if *l != 0 {
                    for (yc, vc) in y.iter_mut().zip(v) {
                        *yc = ext.add(yc, &ext.scale(vc, *l));
                    }
                }
            }
            total += self.extend(ext, &y, j + 1, layers);
            let mut i = 0;
            loop {
                if i == coeffs.len() {
                    return total;
                }
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }
}

/// `ϖ^j · v` on the flat layout.
fn shift_point(ext: &ExtField, model: &Model, v: &[ExtElem], j: usize) -> Vec<ExtElem> {
    let mut out = vec![ext.zero(); v.len()];
    for i in 0..model.n() {
        let p = model.precision(i);
        for dgt in j..p {
            out[model.slot(i, dgt)] = v[model.slot(i, dgt - j)].clone();
        }
    }
    out
}

/// All vectors of length `k` over F_{q^m}.
fn rational_vectors(tw: &Tower, m: u32, k: usize) -> Vec<Vec<Fq>> {
    let elems = tw.elements(m).expect("supported level");
    let mut out = vec![Vec::with_capacity(k)];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|pre: Vec<Fq>| {
                elems.iter().map(move |&e| {
                    let mut v = pre.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out
}

/// `#X_{h,n'}(F_{q^m})` by direct enumeration of `F_{q^m}^D`.
pub fn count_points(spec: &GroupSpec, m: u32) -> Result<u64, VarietyError> {
    let model = Model::new(spec);
    let total = (spec.q as u128).pow(m * model.dim() as u32);
    if total > POINT_CAP {
        return Err(VarietyError::Capacity { points: total, cap: POINT_CAP });
    }
    let tw = Tower::new(spec.p(), spec.f(), &[m])?;
    let elems = tw.elements(m)?.to_vec();
    let dim = model.dim();
    let mut idx = vec![0usize; dim];
    let mut count = 0;
    loop {
        let flat: Vec<Fq> = idx.iter().map(|&i| elems[i]).collect();
        if model.in_stratum_point(&tw, &model.split(&flat)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == dim {
                return Ok(count);
            }
            idx[i] += 1;
            if idx[i] < elems.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Evaluates the X_h condition on a flat point over any field (for tests and tools).
pub fn in_stratum_flat<F: FieldOps>(model: &Model, f: &F, x: &[F::Elem]) -> bool {
    model.in_stratum_point(f, &model.split(x))
}

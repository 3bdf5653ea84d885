//! Fibers of R_h → R_{h−1} for R_h = {(y, x) ∈ U¹ × U¹ : Nm_r(σ(y)/y) = Nm_s(x)}.

use crate::{LemmaError, LemmaVerdict};
use coxdl_gf::Tower;
use coxdl_torus::prime_power;
use coxdl_witt::{enumerate_units, Witt};
use num_integer::Integer;
use std::collections::HashMap;

/// Points of R_h over F_{q^m}.
pub fn rh_points(t: &Tower, r: u32, s: u32, h: usize, m: u32) -> Result<Vec<(Witt, Witt)>, LemmaError> {
    let units = enumerate_units(t, m, h, 1);
    let mut by_norm: HashMap<Witt, Vec<&Witt>> = HashMap::new();
    for x in &units {
        by_norm.entry(x.nm(t, s, 1)?).or_default().push(x);
    }
    let mut out = Vec::new();
    for y in &units {
        let lhs = y.sigma(t, 1).mul(t, &y.inv(t)?).nm(t, r, 1)?;
        for &x in by_norm.get(&lhs).into_iter().flatten() {
            out.push((y.clone(), x.clone()));
        }
    }
    Ok(out)
}

/// Checks that R_1 is a point and every fiber of R_h(F_{q^m}) → R_{h−1}(F_{q^m}) has q^m
/// points for m ≤ m_max. With `force`, runs even when p ≤ s.
pub fn verify_rh_fibers(q: u64, r: u32, s: u32, h: usize, m_max: u32, force: bool) -> Result<LemmaVerdict, LemmaError> {
    let mut v = LemmaVerdict::new("rh-fibers", format!("q={q} r={r} s={s} h={h} m≤{m_max}"));
    let (p, f) = prime_power(q).ok_or(coxdl_torus::SpecError::NotPrimePower(q))?;
    if r <= s || s == 0 || r.gcd(&s) != 1 || h < 2 || m_max == 0 {
        return Ok(v.skip("need r > s ≥ 1 coprime, h ≥ 2, m_max ≥ 1"));
    }
    if p <= s as u64 {
        if !force {
            return Ok(v.skip(format!("p = {p} ≤ s = {s}")));
        }
        v.note(format!("forced run outside the hypothesis p > s (p = {p}, s = {s})"));
    }
    let degrees: Vec<u32> = (1..=m_max).collect();
    let t = Tower::new(p, f, &degrees)?;
    for m in 1..=m_max {
        let base = rh_points(&t, r, s, 1, m)?;
        if base.len() != 1 {
            v.fail(format!("#R_1(F_{{q^{m}}}) = {}", base.len()));
        }
        let qm = q.pow(m);
        for level in 2..=h {
            let below = rh_points(&t, r, s, level - 1, m)?;
            let mut fibers: HashMap<(Witt, Witt), u64> = below.into_iter().map(|k| (k, 0)).collect();
            for (y, x) in rh_points(&t, r, s, level, m)? {
                *fibers.entry((y.truncate(level - 1), x.truncate(level - 1))).or_insert(0) += 1;
            }
            let mut sizes: Vec<u64> = fibers.values().copied().collect();
            sizes.sort_unstable();
            sizes.dedup();
            v.note(format!("m={m} level {level}: {} base points, fiber sizes {sizes:?}", fibers.len()));
            if let Some(((y, x), c)) = fibers.iter().find(|(_, &c)| c != qm) {
                v.fail(format!("m={m} level {level}: fiber over y={:?} x={:?} has {c} points, expected {qm}", y.digits(), x.digits()));
            }
        }
    }
    Ok(v)
}

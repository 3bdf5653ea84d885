//! Point counts of the Artin–Schreier curves a·tr_c(x) + b·tr_d(x) = tr_d(y^q − y) along
//! the Euclidean reduction (a, b, c, d) ↦ (b, a + bγ, r, c), d = γc + r.

use crate::{LemmaError, LemmaVerdict};
use coxdl_gf::{Fq, Tower};
use coxdl_torus::prime_power;
use std::collections::HashMap;

/// #{(x, y) ∈ F_{q^m}² : a·tr_c(x) + b·tr_d(x) = tr_d(y^q − y)}.
pub fn curve_count(t: &Tower, a: i64, b: i64, c: u32, d: u32, m: u32) -> Result<u64, LemmaError> {
    let (a, b) = (t.from_i64(a), t.from_i64(b));
    let elems = t.elements(m)?;
    let mut lhs: HashMap<Fq, u64> = HashMap::new();
    for &x in elems {
        let v = t.add(t.mul(a, t.trace(x, c)), t.mul(b, t.trace(x, d)));
        *lhs.entry(v).or_insert(0) += 1;
    }
    let mut total = 0;
    for &y in elems {
        let v = t.trace(t.sub(t.frob(y, 1), y), d);
        total += lhs.get(&v).copied().unwrap_or(0);
    }
    Ok(total)
}

/// The reduction chain from (a, b, c, d) down to c = 0.
pub fn reduction_chain(a: i64, b: i64, c: u32, d: u32) -> Vec<(i64, i64, u32, u32)> {
    let mut chain = vec![(a, b, c, d)];
    let (mut a, mut b, mut c, mut d) = (a, b, c, d);
    while c > 0 {
        let (gamma, r) = (d / c, d % c);
        (a, b, c, d) = (b, a + b * gamma as i64, r, c);
        chain.push((a, b, c, d));
    }
    chain
}

pub fn verify_curve_reduction(q: u64, a: i64, b: i64, c: u32, d: u32, m_max: u32) -> Result<LemmaVerdict, LemmaError> {
    let mut v = LemmaVerdict::new("curve-reduction", format!("q={q} a={a} b={b} c={c} d={d} m≤{m_max}"));
    let (p, f) = prime_power(q).ok_or(coxdl_torus::SpecError::NotPrimePower(q))?;
    if !(0 < a && a < p as i64 && 0 < b && b < p as i64 && 0 < c && c < d) {
        return Ok(v.skip("need 0 < a, b < p and 0 < c < d"));
    }
    let degrees: Vec<u32> = (1..=m_max).collect();
    let t = Tower::new(p, f, &degrees)?;
    let chain = reduction_chain(a, b, c, d);
    v.note(format!("chain {chain:?}"));
    for m in 1..=m_max {
        let counts = chain.iter().map(|&(a, b, c, d)| curve_count(&t, a, b, c, d, m)).collect::<Result<Vec<_>, _>>()?;
        v.note(format!("m={m}: counts {counts:?}, q^m = {}", q.pow(m)));
        if counts[0] != counts[1] {
            v.fail(format!("m={m}: #C₁ = {} ≠ #C₂ = {}", counts[0], counts[1]));
        }
        if counts.iter().any(|&k| k != counts[0]) {
            v.fail(format!("m={m}: counts along the chain differ: {counts:?}"));
        }
        let &(_, bt, _, dt) = chain.last().unwrap();
        if dt == 1 && bt.rem_euclid(p as i64) != 0 && *counts.last().unwrap() != q.pow(m) {
            v.fail(format!("m={m}: terminal curve has {} points, expected {}", counts.last().unwrap(), q.pow(m)));
        }
    }
    Ok(v)
}

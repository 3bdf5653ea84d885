//! The image of y ↦ σ^{n−m}(y)/y on units whose norm to F_{q^g} is rational.

use crate::{LemmaError, LemmaVerdict};
use coxdl_gf::Tower;
use coxdl_torus::prime_power;
use coxdl_witt::{enumerate_units, Witt};
use num_integer::Integer;
use std::collections::HashSet;

pub fn verify_norm_image(q: u64, n: u32, m: u32, h: usize) -> Result<LemmaVerdict, LemmaError> {
    let mut v = LemmaVerdict::new("norm-image", format!("q={q} n={n} m={m} h={h}"));
    let (p, f) = prime_power(q).ok_or(coxdl_torus::SpecError::NotPrimePower(q))?;
    if (n as u64).gcd(&p) != 1 {
        return Ok(v.skip(format!("gcd(n, p) = gcd({n}, {p}) ≠ 1")));
    }
    if m == 0 || m >= n || h < 2 {
        return Ok(v.skip("need 1 ≤ m ≤ n − 1 and h ≥ 2"));
    }
    let g = n.gcd(&m);
    let t = Tower::new(p, f, &[n])?;
    let units = enumerate_units(&t, n, h, 1);
    let one = Witt::one(n, h);

    let ker_n: HashSet<Witt> = units.iter().filter(|y| y.nm(&t, n, g).map(|z| z == one).unwrap_or(false)).cloned().collect();
    let mut image = HashSet::new();
    let mut ker_alpha = 0u64;
    let mut source = 0u64;
    for y in &units {
        if !y.nm(&t, n, g)?.is_rational(&t, 1) {
            continue;
        }
        source += 1;
        let a = y.sigma(&t, (n - m) as i64).mul(&t, &y.inv(&t)?);
        if a == one {
            ker_alpha += 1;
        }
        image.insert(a);
    }
    v.note(format!("#source = {source}, #im = {}, #ker N = {}, #ker α = {ker_alpha}", image.len(), ker_n.len()));
    if let Some(z) = image.symmetric_difference(&ker_n).next() {
        let side = if image.contains(z) { "in im α but not in ker N" } else { "in ker N but not in im α" };
        v.fail(format!("{:?} {side}", z.digits()));
    }
    let expect = q.pow(h as u32 - 1);
    if ker_alpha != expect {
        v.fail(format!("#ker α = {ker_alpha}, expected {expect}"));
    }
    Ok(v)
}

//! Finite field towers realised inside one ambient Zech-log field.
//!
//! Every supported level F_{q^m} is the subfield of the ambient field F_{q^M}, M the lcm of
//! the requested degrees, so embeddings between levels are inclusions and automatically
//! compatible. Each level carries its own polynomial basis `1, ω_m, ω_m^2, ...` where `ω_m`
//! is the least (in ambient coefficient order) root of the lexicographically-least
//! irreducible polynomial of degree `f·m` over F_p; that basis fixes enumeration order.

use crate::error::GfError;
use crate::poly::{self, Poly};
use std::collections::BTreeMap;

/// Largest ambient field handled by log tables.
pub const TABLE_BOUND: u64 = 1 << 20;

/// A field element: 0 is zero, `k + 1` encodes `g^k` for the ambient generator `g`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Opaque integer usable as a dense table index (`< ambient size`).
    pub fn raw(self) -> u32 {
        self.0
    }
}

#[derive(Debug, Clone)]
struct Level {
    poly: Poly,
    root: Fq,
    elems: Vec<Fq>,
    /// Position of each ambient element (by raw value) in `elems`, or `u32::MAX`.
    index: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct Tower {
    p: u32,
    f: u32,
    m_amb: u32,
    order: u32,
    modulus: Poly,
    /// Coefficient integer of `g^k`.
    exp: Vec<u32>,
    /// Discrete log of a coefficient integer (index 0 unused).
    log: Vec<u32>,
    /// `zech[k]` is the element `1 + g^k`.
    zech: Vec<Fq>,
    half: u32,
    levels: BTreeMap<u32, Level>,
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl Tower {
    /// Builds the tower over F_q, q = p^f, supporting every divisor of lcm(`degrees`).
    pub fn new(p: u64, f: u32, degrees: &[u32]) -> Result<Tower, GfError> {
        if !poly::is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        let m_amb = degrees.iter().copied().filter(|&d| d > 0).fold(1, lcm);
        let n_amb = f * m_amb;
        let size = (p as u128).checked_pow(n_amb).unwrap_or(u128::MAX);
        if size > TABLE_BOUND as u128 {
            return Err(GfError::Capacity { p, degree: n_amb, bound: TABLE_BOUND });
        }
        let p32 = p as u32;
        let size = size as u32;
        let order = size - 1;
        let modulus = poly::lex_least_irreducible(p32, n_amb as usize);

        let to_int = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &d| acc * p32 + d) };
        let from_int = |mut v: u32| -> Poly {
            let mut c = Vec::with_capacity(n_amb as usize);
            for _ in 0..n_amb {
                c.push(v % p32);
                v /= p32;
            }
            c
        };

        // Least primitive element by coefficient integer.
        let factors = poly::prime_factors(order as u128);
        let mut gen = None;
        for cand in 1..size {
            let c = from_int(cand);
            if factors
                .iter()
                .all(|&l| poly::pow_mod_poly(&c, (order as u128) / l, &modulus, p32) != vec![1])
            {
                gen = Some(c);
                break;
            }
        }
        let gen = gen.expect("multiplicative group is cyclic");

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; size as usize];
        let mut cur: Poly = vec![1];
        for k in 0..order {
            let v = to_int(&cur);
            exp.push(v);
            log[v as usize] = k;
            cur = poly::mul_mod(&cur, &gen, &modulus, p32);
        }
        let zech = (0..order)
            .map(|k| {
                let mut c = from_int(exp[k as usize]);
                c[0] = (c[0] + 1) % p32;
                let v = to_int(&c);
                if v == 0 {
                    Fq::ZERO
                } else {
                    Fq(log[v as usize] + 1)
                }
            })
            .collect();
        let half = if p == 2 { 0 } else { order / 2 };

        let mut tower = Tower {
            p: p32,
            f,
            m_amb,
            order,
            modulus,
            exp,
            log,
            zech,
            half,
            levels: BTreeMap::new(),
        };
        for m in (1..=m_amb).filter(|m| m_amb % m == 0) {
            let level = tower.build_level(m);
            tower.levels.insert(m, level);
        }
        Ok(tower)
    }

    fn build_level(&self, m: u32) -> Level {
        let d = (self.f * m) as usize;
        let poly = poly::lex_least_irreducible(self.p, d);
        let sub_order = self.q_pow(m) - 1;
        let step = self.order / sub_order as u32;
        let mut candidates: Vec<Fq> = vec![Fq::ZERO];
        candidates.extend((0..sub_order as u32).map(|j| Fq(j * step + 1)));
        let root = candidates
            .into_iter()
            .filter(|&x| self.eval_prime_poly(&poly, x).is_zero())
            .min_by_key(|&x| self.ambient_int(x))
            .expect("subfield contains a root");
        let basis: Vec<Fq> = (0..d).map(|i| self.pow(root, i as u128)).collect();
        let count = self.q_pow(m) as usize;
        let mut elems = Vec::with_capacity(count);
        let mut index = vec![u32::MAX; self.order as usize + 1];
        for k in 0..count {
            let mut v = k as u32;
            let mut x = Fq::ZERO;
            for b in &basis {
                x = self.add(x, self.mul(self.from_u64((v % self.p) as u64), *b));
                v /= self.p;
            }
            index[x.0 as usize] = k as u32;
            elems.push(x);
        }
        Level { poly, root, elems, index }
    }

    fn eval_prime_poly(&self, f: &[u32], x: Fq) -> Fq {
        f.iter()
            .rev()
            .fold(Fq::ZERO, |acc, &c| self.add(self.mul(acc, x), self.from_u64(c as u64)))
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.f)
    }

    /// q^m as an integer.
    pub fn q_pow(&self, m: u32) -> u64 {
        self.q().pow(m)
    }

    /// Degree of the ambient field over F_q.
    pub fn ambient_degree(&self) -> u32 {
        self.m_amb
    }

    pub fn ambient_size(&self) -> u64 {
        self.order as u64 + 1
    }

    pub fn supports(&self, m: u32) -> bool {
        self.levels.contains_key(&m)
    }

    pub fn supported_degrees(&self) -> Vec<u32> {
        self.levels.keys().copied().collect()
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }

    pub fn one(&self) -> Fq {
        Fq::ONE
    }

    /// Image of an integer in the prime field.
    pub fn from_u64(&self, c: u64) -> Fq {
        let c = (c % self.p as u64) as u32;
        if c == 0 {
            Fq::ZERO
        } else {
            Fq(self.log[c as usize] + 1)
        }
    }

    pub fn from_i64(&self, c: i64) -> Fq {
        self.from_u64(c.rem_euclid(self.p as i64) as u64)
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let (i, j) = (a.0 - 1, b.0 - 1);
        let k = if j >= i { j - i } else { j + self.order - i };
        let z = self.zech[k as usize];
        if z.0 == 0 {
            Fq::ZERO
        } else {
            self.mul(a, z)
        }
    }

    pub fn neg(&self, a: Fq) -> Fq {
        if a.0 == 0 || self.p == 2 {
            return a;
        }
        let k = (a.0 - 1 + self.half) % self.order;
        Fq(k + 1)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        let s = (a.0 - 1) as u64 + (b.0 - 1) as u64;
        Fq((s % self.order as u64) as u32 + 1)
    }

    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.0 == 0 {
            return None;
        }
        let k = a.0 - 1;
        Some(Fq(if k == 0 { 0 } else { self.order - k } + 1))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Option<Fq> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fq, e: u128) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        let k = ((a.0 - 1) as u128 * (e % self.order as u128)) % self.order as u128;
        Fq(k as u32 + 1)
    }

    /// Signed power, negative exponents through the inverse.
    pub fn pow_i(&self, a: Fq, e: i64) -> Option<Fq> {
        if e >= 0 {
            Some(self.pow(a, e as u128))
        } else {
            self.inv(a).map(|ai| self.pow(ai, e.unsigned_abs() as u128))
        }
    }

    /// `x^(q^i)`; negative `i` applies the inverse Frobenius.
    pub fn frob(&self, x: Fq, i: i64) -> Fq {
        if x.0 == 0 {
            return x;
        }
        let i = i.rem_euclid(self.m_amb as i64) as u32;
        let e = poly::pow_mod(self.q(), i as u64, self.order as u64);
        let k = (x.0 - 1) as u64 * e % self.order as u64;
        Fq(k as u32 + 1)
    }

    pub fn log(&self, x: Fq) -> Option<u32> {
        if x.0 == 0 {
            None
        } else {
            Some(x.0 - 1)
        }
    }

    /// `g^k` for the ambient generator `g`.
    pub fn from_log(&self, k: u64) -> Fq {
        Fq((k % self.order as u64) as u32 + 1)
    }

    /// Least degree m with x in F_{q^m}.
    pub fn level_of(&self, x: Fq) -> u32 {
        self.levels
            .keys()
            .copied()
            .find(|&m| self.frob(x, m as i64) == x)
            .unwrap_or(self.m_amb)
    }

    pub fn contains(&self, m: u32, x: Fq) -> bool {
        self.levels.get(&m).is_some_and(|l| l.index[x.0 as usize] != u32::MAX)
    }

    fn level(&self, m: u32) -> Result<&Level, GfError> {
        self.levels.get(&m).ok_or(GfError::Unsupported(m))
    }

    /// The defining polynomial of F_{q^m} over F_p.
    pub fn defining_poly(&self, m: u32) -> Result<&[u32], GfError> {
        Ok(&self.level(m)?.poly)
    }

    /// The chosen root `ω_m` of the defining polynomial.
    pub fn generator(&self, m: u32) -> Result<Fq, GfError> {
        Ok(self.level(m)?.root)
    }

    /// A generator of the cyclic group F_{q^m}^×.
    pub fn primitive(&self, m: u32) -> Result<Fq, GfError> {
        self.level(m)?;
        let sub_order = self.q_pow(m) - 1;
        Ok(self.from_log(self.order as u64 / sub_order))
    }

    /// All elements of F_{q^m}, in order of their coefficient integers in the basis of `ω_m`.
    pub fn elements(&self, m: u32) -> Result<&[Fq], GfError> {
        Ok(&self.level(m)?.elems)
    }

    /// Position of `x` in [`Tower::elements`], if it lies in F_{q^m}.
    pub fn index_of(&self, m: u32, x: Fq) -> Option<usize> {
        let l = self.levels.get(&m)?;
        let i = l.index[x.0 as usize];
        (i != u32::MAX).then_some(i as usize)
    }

    pub fn from_index(&self, m: u32, k: usize) -> Result<Fq, GfError> {
        Ok(self.level(m)?.elems[k])
    }

    /// Coordinates over F_p in the basis `1, ω_m, ..., ω_m^{fm-1}`.
    pub fn coeffs(&self, m: u32, x: Fq) -> Option<Vec<u32>> {
        let mut k = self.index_of(m, x)? as u32;
        let d = self.f * m;
        let mut c = Vec::with_capacity(d as usize);
        for _ in 0..d {
            c.push(k % self.p);
            k /= self.p;
        }
        Some(c)
    }

    pub fn from_coeffs(&self, m: u32, c: &[u32]) -> Result<Fq, GfError> {
        let l = self.level(m)?;
        let k = c.iter().rev().fold(0usize, |acc, &d| acc * self.p as usize + (d % self.p) as usize);
        Ok(l.elems[k])
    }

    /// Inclusion F_{q^a} ⊂ F_{q^b}.
    pub fn embed(&self, x: Fq, from: u32, to: u32) -> Result<Fq, GfError> {
        if to % from != 0 || !self.supports(to) || !self.supports(from) {
            return Err(GfError::NotDivisor { from, to });
        }
        if !self.contains(from, x) {
            return Err(GfError::NotDivisor { from: self.level_of(x), to: from });
        }
        Ok(x)
    }

    /// Defining polynomial of the ambient field over F_p.
    pub fn ambient_modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Coordinates of `x` over F_p in the ambient polynomial basis.
    pub fn ambient_coeffs(&self, x: Fq) -> Vec<u32> {
        let n = (self.f * self.m_amb) as usize;
        let mut v = if x.0 == 0 { 0 } else { self.exp[(x.0 - 1) as usize] };
        let mut c = Vec::with_capacity(n);
        for _ in 0..n {
            c.push(v % self.p);
            v /= self.p;
        }
        c
    }

    fn ambient_int(&self, x: Fq) -> u32 {
        if x.0 == 0 {
            0
        } else {
            self.exp[(x.0 - 1) as usize]
        }
    }

    /// Σ_{i<s} x^{q^i}.
    pub fn trace(&self, x: Fq, s: u32) -> Fq {
        (0..s).fold(Fq::ZERO, |acc, i| self.add(acc, self.frob(x, i as i64)))
    }

    /// ∏_{i<r/s} x^{q^{si}}.
    pub fn norm(&self, x: Fq, r: u32, s: u32) -> Fq {
        (0..r / s).fold(Fq::ONE, |acc, i| self.mul(acc, self.frob(x, (s * i) as i64)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_relation() {
        let t = Tower::new(2, 1, &[2]).unwrap();
        let w = t.generator(2).unwrap();
        assert_eq!(t.mul(w, w), t.add(w, t.one()));
        assert_eq!(t.frob(w, 1), t.add(w, t.one()));
        assert_eq!(t.elements(2).unwrap().len(), 4);
    }

    #[test]
    fn capacity_error() {
        assert!(matches!(Tower::new(2, 1, &[21]), Err(GfError::Capacity { .. })));
        assert!(matches!(Tower::new(4, 1, &[1]), Err(GfError::NotPrime(4))));
    }
}

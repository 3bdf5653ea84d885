//! Large extensions F_{p^d} in a polynomial basis, for fields beyond the log-table bound.
//!
//! Frobenius powers are precomputed as F_p-linear maps, and a [`TowerEmbedding`] carries the
//! ambient field of a [`Tower`] into an extension by a root of its defining polynomial.

use crate::error::GfError;
use crate::poly::{self, Poly};
use crate::tower::{Fq, Tower};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::sync::Mutex;

/// Coefficient vector of length `d` over F_p, low degree first.
pub type ExtElem = Vec<u32>;

#[derive(Debug)]
pub struct ExtField {
    p: u32,
    f: u32,
    d: usize,
    modulus: Poly,
    /// `frob[k]` is the column-major matrix of `x ↦ x^{q^k}`, k in 0..d/f.
    frob: Vec<Vec<u32>>,
}

impl ExtField {
    /// F_{p^d} viewed over F_q with q = p^f; requires `f | d` and p^d < 2^126.
    pub fn new(p: u64, f: u32, d: usize) -> Result<ExtField, GfError> {
        if !poly::is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        let bits = (d as f64) * (p as f64).log2();
        if bits >= 126.0 || d % f as usize != 0 {
            return Err(GfError::Capacity { p, degree: d as u32, bound: 1 << 63 });
        }
        let p32 = p as u32;
        let modulus = poly::lex_least_irreducible(p32, d);
        let mut field = ExtField { p: p32, f, d, modulus, frob: Vec::new() };
        // Matrix of the p-power map, then its f-th power for q, then the q-powers.
        let xp: Vec<ExtElem> = (0..d)
            .map(|i| {
                let mut e = vec![0; d];
                e[i] = 1;
                field.pow(&e, p as u128)
            })
            .collect();
        let apply_cols = |cols: &[ExtElem], x: &ExtElem, p: u32| -> ExtElem {
            let mut out = vec![0u64; d];
            for (i, &c) in x.iter().enumerate() {
                if c != 0 {
                    for (o, &v) in out.iter_mut().zip(&cols[i]) {
                        *o += c as u64 * v as u64;
                    }
                }
            }
            out.into_iter().map(|v| (v % p as u64) as u32).collect()
        };
        let mut q_cols: Vec<ExtElem> = (0..d)
            .map(|i| {
                let mut e = vec![0; d];
                e[i] = 1;
                e
            })
            .collect();
        for _ in 0..f {
            q_cols = q_cols.iter().map(|c| apply_cols(&xp, c, p32)).collect();
        }
        let steps = d / f as usize;
        let mut cur: Vec<ExtElem> = (0..d)
            .map(|i| {
                let mut e = vec![0; d];
                e[i] = 1;
                e
            })
            .collect();
        let mut frob = Vec::with_capacity(steps);
        for _ in 0..steps {
            frob.push(cur.iter().flat_map(|c| c.iter().copied()).collect());
            cur = cur.iter().map(|c| apply_cols(&q_cols, c, p32)).collect();
        }
        field.frob = frob;
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    /// Degree over F_p.
    pub fn degree(&self) -> usize {
        self.d
    }

    /// Degree over F_q.
    pub fn q_degree(&self) -> usize {
        self.d / self.f as usize
    }

    pub fn size(&self) -> u128 {
        (self.p as u128).pow(self.d as u32)
    }

    pub fn zero(&self) -> ExtElem {
        vec![0; self.d]
    }

    pub fn one(&self) -> ExtElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> ExtElem {
        let mut e = self.zero();
        e[0] = (c % self.p as u64) as u32;
        e
    }

    pub fn is_zero(&self, a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> ExtElem {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn add_assign(&self, a: &mut [u32], b: &[u32]) {
        for (x, &y) in a.iter_mut().zip(b) {
            *x = (*x + y) % self.p;
        }
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> ExtElem {
        a.iter().zip(b).map(|(&x, &y)| (x + self.p - y) % self.p).collect()
    }

    pub fn neg(&self, a: &[u32]) -> ExtElem {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn scale(&self, a: &[u32], c: u32) -> ExtElem {
        a.iter().map(|&x| (x as u64 * c as u64 % self.p as u64) as u32).collect()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> ExtElem {
        let d = self.d;
        let p = self.p as u64;
        let mut acc = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u64;
            for (slot, &y) in acc[i..i + d].iter_mut().zip(b) {
                *slot += x * y as u64;
            }
        }
        for c in acc.iter_mut() {
            *c %= p;
        }
        for i in (d..2 * d - 1).rev() {
            let c = acc[i];
            if c == 0 {
                continue;
            }
            let m = p - c;
            for (k, &fk) in self.modulus[..d].iter().enumerate() {
                if fk != 0 {
                    acc[i - d + k] = (acc[i - d + k] + m * fk as u64) % p;
                }
            }
        }
        acc.truncate(d);
        acc.into_iter().map(|c| c as u32).collect()
    }

    pub fn pow(&self, a: &[u32], mut e: u128) -> ExtElem {
        let mut r = self.one();
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    pub fn inv(&self, a: &[u32]) -> Option<ExtElem> {
        if self.is_zero(a) {
            return None;
        }
        let mut r = poly::inv_mod_poly(a, &self.modulus, self.p)?;
        r.resize(self.d, 0);
        Some(r)
    }

    /// `x^(q^i)`, i taken modulo the degree over F_q.
    pub fn frob(&self, x: &[u32], i: i64) -> ExtElem {
        let k = i.rem_euclid(self.frob.len() as i64) as usize;
        if k == 0 {
            return x.to_vec();
        }
        let m = &self.frob[k];
        let d = self.d;
        let mut out = vec![0u64; d];
        for (j, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let col = &m[j * d..(j + 1) * d];
            for (o, &v) in out.iter_mut().zip(col) {
                *o += c as u64 * v as u64;
            }
        }
        out.into_iter().map(|v| (v % self.p as u64) as u32).collect()
    }

    /// The F_p-linear map `x ↦ x^(q^i)` as a column-major matrix.
    pub fn frob_matrix(&self, i: i64) -> &[u32] {
        let k = i.rem_euclid(self.frob.len() as i64) as usize;
        &self.frob[k]
    }

    /// Canonical key for hashing and ordering.
    pub fn key(&self, a: &[u32]) -> Vec<u32> {
        a.to_vec()
    }

    /// Roots in this field of a monic polynomial over F_p that splits here.
    fn roots_of_prime_poly(&self, f: &[u32]) -> Vec<ExtElem> {
        let coeffs: Vec<ExtElem> = f.iter().map(|&c| self.from_u64(c as u64)).collect();
        let mut out = Vec::new();
        // Fixed seed: the chosen root (the least one) does not depend on it.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        self.split(coeffs, &mut out, &mut rng);
        out.sort();
        out
    }

    fn split(&self, f: Vec<ExtElem>, out: &mut Vec<ExtElem>, rng: &mut ChaCha8Rng) {
        let deg = f.len() - 1;
        if deg == 0 {
            return;
        }
        if deg == 1 {
            let inv = self.inv(&f[1]).expect("monic linear factor");
            out.push(self.neg(&self.mul(&f[0], &inv)));
            return;
        }
        loop {
            let a: ExtElem = (0..self.d).map(|_| rng.gen_range(0..self.p)).collect();
            let g = if self.p == 2 {
                // Absolute trace of aX modulo f.
                let ax = vec![self.zero(), a];
                let mut t = ax.clone();
                let mut cur = ax;
                for _ in 1..self.d {
                    cur = self.pmul_mod(&cur, &cur, &f);
                    t = self.padd(&t, &cur);
                }
                self.pgcd(&f, &t)
            } else {
                let xa = vec![a, self.one()];
                let e = (self.size() - 1) / 2;
                let mut h = self.ppow_mod(&xa, e, &f);
                if h.is_empty() {
                    h.push(self.zero());
                }
                h[0] = self.sub(&h[0], &self.one());
                self.pgcd(&f, &h)
            };
            let dg = g.len().saturating_sub(1);
            if dg > 0 && dg < deg {
                let (q, _) = self.pdivrem(&f, &g);
                self.split(g, out, rng);
                self.split(q, out, rng);
                return;
            }
        }
    }

    fn ptrim(&self, a: &mut Vec<ExtElem>) {
        while a.last().is_some_and(|c| self.is_zero(c)) {
            a.pop();
        }
    }

    fn padd(&self, a: &[ExtElem], b: &[ExtElem]) -> Vec<ExtElem> {
        let n = a.len().max(b.len());
        let z = self.zero();
        let mut r: Vec<ExtElem> =
            (0..n).map(|i| self.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
        self.ptrim(&mut r);
        r
    }

    fn pdivrem(&self, a: &[ExtElem], b: &[ExtElem]) -> (Vec<ExtElem>, Vec<ExtElem>) {
        let db = b.len() - 1;
        let inv = if b[db] == self.one() { self.one() } else { self.inv(&b[db]).expect("nonzero leading coefficient") };
        let mut r: Vec<ExtElem> = a.to_vec();
        self.ptrim(&mut r);
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![self.zero(); r.len() - db];
        while r.len() > db {
            let i = r.len() - 1;
            let c = self.mul(&r[i], &inv);
            let s = i - db;
            for (k, bk) in b.iter().enumerate() {
                r[s + k] = self.sub(&r[s + k], &self.mul(&c, bk));
            }
            q[s] = c;
            self.ptrim(&mut r);
            if r.len() > i {
                r.truncate(i);
            }
        }
        (q, r)
    }

    fn pmul_mod(&self, a: &[ExtElem], b: &[ExtElem], f: &[ExtElem]) -> Vec<ExtElem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let m = self.mul(x, y);
                self.add_assign(&mut r[i + j], &m);
            }
        }
        self.pdivrem(&r, f).1
    }

    fn ppow_mod(&self, a: &[ExtElem], mut e: u128, f: &[ExtElem]) -> Vec<ExtElem> {
        let mut r = vec![self.one()];
        let mut b = self.pdivrem(a, f).1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.pmul_mod(&r, &b, f);
            }
            e >>= 1;
            if e > 0 {
                b = self.pmul_mod(&b, &b, f);
            }
        }
        r
    }

    fn pgcd(&self, a: &[ExtElem], b: &[ExtElem]) -> Vec<ExtElem> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        self.ptrim(&mut x);
        self.ptrim(&mut y);
        while !y.is_empty() {
            let r = self.pdivrem(&x, &y).1;
            x = y;
            y = r;
        }
        if let Some(l) = x.last().cloned() {
            let inv = self.inv(&l).expect("nonzero");
            x = x.iter().map(|c| self.mul(c, &inv)).collect();
        }
        x
    }
}

/// The ring map from a tower's ambient field into an extension containing it.
#[derive(Debug)]
pub struct TowerEmbedding {
    images: Vec<ExtElem>,
    cache: Mutex<HashMap<Fq, ExtElem>>,
}

impl TowerEmbedding {
    /// Sends the ambient generator to the least root of the ambient modulus.
    pub fn new(tower: &Tower, ext: &ExtField) -> Result<TowerEmbedding, GfError> {
        let n = tower.ambient_modulus().len() - 1;
        if tower.p() != ext.p() || ext.degree() % n != 0 {
            return Err(GfError::NotDivisor { from: n as u32, to: ext.degree() as u32 });
        }
        let roots = ext.roots_of_prime_poly(tower.ambient_modulus());
        let r = roots.into_iter().next().ok_or(GfError::NoRoot)?;
        let mut images = Vec::with_capacity(n);
        let mut cur = ext.one();
        for _ in 0..n {
            images.push(cur.clone());
            cur = ext.mul(&cur, &r);
        }
        Ok(TowerEmbedding { images, cache: Mutex::new(HashMap::new()) })
    }

    pub fn map(&self, tower: &Tower, ext: &ExtField, x: Fq) -> ExtElem {
        if let Some(v) = self.cache.lock().unwrap().get(&x) {
            return v.clone();
        }
        let c = tower.ambient_coeffs(x);
        let mut out = vec![0u64; ext.degree()];
        for (ci, img) in c.iter().zip(&self.images) {
            if *ci != 0 {
                for (o, &v) in out.iter_mut().zip(img) {
                    *o += *ci as u64 * v as u64;
                }
            }
        }
        let v: ExtElem = out.into_iter().map(|v| (v % ext.p()) as u32).collect();
        self.cache.lock().unwrap().insert(x, v.clone());
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_of_generator_f16() {
        let e = ExtField::new(2, 1, 4).unwrap();
        let mut x = e.zero();
        x[1] = 1;
        assert_eq!(e.frob(&x, 1), e.mul(&x, &x));
        assert_eq!(e.frob(&x, 4), x);
        assert_eq!(e.mul(&e.inv(&x).unwrap(), &x), e.one());
    }

    #[test]
    fn embedding_of_f9_into_f81() {
        let t = Tower::new(3, 1, &[2]).unwrap();
        let e = ExtField::new(3, 1, 4).unwrap();
        let emb = TowerEmbedding::new(&t, &e).unwrap();
        for &a in t.elements(2).unwrap() {
            for &b in t.elements(2).unwrap() {
                let lhs = emb.map(&t, &e, t.mul(a, b));
                let rhs = e.mul(&emb.map(&t, &e, a), &emb.map(&t, &e, b));
                assert_eq!(lhs, rhs);
                let lhs = emb.map(&t, &e, t.add(a, b));
                assert_eq!(lhs, e.add(&emb.map(&t, &e, a), &emb.map(&t, &e, b)));
            }
            assert_eq!(emb.map(&t, &e, t.frob(a, 1)), e.frob(&emb.map(&t, &e, a), 1));
        }
    }

    #[test]
    fn inverses_agree_with_fermat() {
        for (p, d) in [(2u64, 60usize), (3, 20), (5, 7)] {
            let e = ExtField::new(p, 1, d).unwrap();
            for k in 1..40u64 {
                let a: ExtElem = (0..d).map(|i| ((k * 7919 + i as u64 * 31) % p) as u32).collect();
                let inv = e.inv(&a).unwrap();
                assert_eq!(e.mul(&a, &inv), e.one());
                assert_eq!(inv, e.pow(&a, e.size() - 2));
            }
        }
    }

    #[test]
    fn embedding_into_f2_120() {
        let t = Tower::new(2, 2, &[2]).unwrap();
        let e = ExtField::new(2, 2, 120).unwrap();
        let emb = TowerEmbedding::new(&t, &e).unwrap();
        let g = t.generator(2).unwrap();
        assert_eq!(emb.map(&t, &e, t.frob(g, 1)), e.frob(&emb.map(&t, &e, g), 1));
    }
}

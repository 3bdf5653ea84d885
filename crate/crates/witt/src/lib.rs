//! The rings W_h(F_{q^m}) = F_{q^m}[ϖ]/(ϖ^h) and their unit filtrations.
//!
//! An element stores its residue level `m`, its length `h` and the digits `a_0, …, a_{h-1}`
//! of `Σ a_j ϖ^j`. Mixing lengths is an error; use [`Witt::truncate`] or [`Witt::lift`]
//! to move between precisions. Lifting pads with zero digits, which is the canonical lift
//! of `ϖ·y` for `y` of length `h − 1` once shifted by [`Witt::shift`].

use coxdl_gf::{Fq, Tower};
use thiserror::Error;

pub mod series;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WittError {
    #[error("element is not a unit")]
    NonUnit,
    #[error("length mismatch: {0} vs {1}")]
    Length(usize, usize),
    #[error("{s} does not divide {r}")]
    NotDivisor { r: u32, s: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Witt {
    m: u32,
    digits: Vec<Fq>,
}

impl Witt {
    pub fn new(m: u32, digits: Vec<Fq>) -> Witt {
        Witt { m, digits }
    }

    pub fn zero(m: u32, h: usize) -> Witt {
        Witt { m, digits: vec![Fq::ZERO; h] }
    }

    pub fn one(m: u32, h: usize) -> Witt {
        Witt::constant(m, h, Fq::ONE)
    }

    /// The Teichmüller-style constant `a + 0·ϖ + …`.
    pub fn constant(m: u32, h: usize, a: Fq) -> Witt {
        let mut w = Witt::zero(m, h);
        if h > 0 {
            w.digits[0] = a;
        }
        w
    }

    /// `ϖ^k` in length `h`.
    pub fn uniformizer_pow(m: u32, h: usize, k: usize) -> Witt {
        let mut w = Witt::zero(m, h);
        if k < h {
            w.digits[k] = Fq::ONE;
        }
        w
    }

    pub fn level_m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[Fq] {
        &self.digits
    }

    pub fn digit(&self, j: usize) -> Fq {
        self.digits.get(j).copied().unwrap_or(Fq::ZERO)
    }

    pub fn set_digit(&mut self, j: usize, a: Fq) {
        self.digits[j] = a;
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|d| d.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        self.digits.first().is_some_and(|d| !d.is_zero())
    }

    /// Largest `v` with `ϖ^v | x`, or the length for zero.
    pub fn valuation(&self) -> usize {
        self.digits.iter().position(|d| !d.is_zero()).unwrap_or(self.digits.len())
    }

    pub fn with_level(mut self, m: u32) -> Witt {
        self.m = m;
        self
    }

    /// Reduction to length `h ≤ len`.
    pub fn truncate(&self, h: usize) -> Witt {
        Witt { m: self.m, digits: self.digits[..h.min(self.len())].to_vec() }
    }

    /// Extension to length `h ≥ len` by zero digits.
    pub fn lift(&self, h: usize) -> Witt {
        let mut digits = self.digits.clone();
        digits.resize(h.max(self.len()), Fq::ZERO);
        Witt { m: self.m, digits }
    }

    /// Multiplication by `ϖ^k`, keeping the length.
    pub fn shift(&self, k: usize) -> Witt {
        let h = self.len();
        let mut digits = vec![Fq::ZERO; h];
        for j in 0..h.saturating_sub(k) {
            digits[j + k] = self.digits[j];
        }
        Witt { m: self.m, digits }
    }

    fn check(&self, other: &Witt) -> Result<(), WittError> {
        if self.len() != other.len() {
            Err(WittError::Length(self.len(), other.len()))
        } else {
            Ok(())
        }
    }

    fn lvl(&self, other: &Witt) -> u32 {
        self.m.max(other.m)
    }

    pub fn add(&self, t: &Tower, o: &Witt) -> Witt {
        self.check(o).expect("matching lengths");
        let digits = self.digits.iter().zip(&o.digits).map(|(&a, &b)| t.add(a, b)).collect();
        Witt { m: self.lvl(o), digits }
    }

    pub fn sub(&self, t: &Tower, o: &Witt) -> Witt {
        self.check(o).expect("matching lengths");
        let digits = self.digits.iter().zip(&o.digits).map(|(&a, &b)| t.sub(a, b)).collect();
        Witt { m: self.lvl(o), digits }
    }

    pub fn neg(&self, t: &Tower) -> Witt {
        Witt { m: self.m, digits: self.digits.iter().map(|&a| t.neg(a)).collect() }
    }

    pub fn scale(&self, t: &Tower, c: Fq) -> Witt {
        Witt { m: self.m, digits: self.digits.iter().map(|&a| t.mul(a, c)).collect() }
    }

    pub fn mul(&self, t: &Tower, o: &Witt) -> Witt {
        self.check(o).expect("matching lengths");
        let h = self.len();
        let mut digits = vec![Fq::ZERO; h];
        for (i, &a) in self.digits.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.digits[..h - i].iter().enumerate() {
                digits[i + j] = t.add(digits[i + j], t.mul(a, b));
            }
        }
        Witt { m: self.lvl(o), digits }
    }

    pub fn try_add(&self, t: &Tower, o: &Witt) -> Result<Witt, WittError> {
        self.check(o)?;
        Ok(self.add(t, o))
    }

    pub fn try_mul(&self, t: &Tower, o: &Witt) -> Result<Witt, WittError> {
        self.check(o)?;
        Ok(self.mul(t, o))
    }

    /// Inverse by Newton iteration on the digits.
    pub fn inv(&self, t: &Tower) -> Result<Witt, WittError> {
        let a0 = self.digits.first().copied().unwrap_or(Fq::ZERO);
        let a0i = t.inv(a0).ok_or(WittError::NonUnit)?;
        let h = self.len();
        let mut b = vec![Fq::ZERO; h];
        b[0] = a0i;
        for k in 1..h {
            let mut s = Fq::ZERO;
            for i in 1..=k {
                s = t.add(s, t.mul(self.digits[i], b[k - i]));
            }
            b[k] = t.neg(t.mul(s, a0i));
        }
        Ok(Witt { m: self.m, digits: b })
    }

    pub fn pow(&self, t: &Tower, mut e: u64) -> Witt {
        let mut r = Witt::one(self.m, self.len());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(t, &b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(t, &b);
            }
        }
        r
    }

    /// Digit-wise `σ^i`.
    pub fn sigma(&self, t: &Tower, i: i64) -> Witt {
        Witt { m: self.m, digits: self.digits.iter().map(|&a| t.frob(a, i)).collect() }
    }

    /// Twisted norm ∏_{i<r/s} σ^{si}(x).
    pub fn nm(&self, t: &Tower, r: u32, s: u32) -> Result<Witt, WittError> {
        if s == 0 || r % s != 0 {
            return Err(WittError::NotDivisor { r, s });
        }
        let mut acc = Witt::one(self.m, self.len());
        for i in 0..r / s {
            acc = acc.mul(t, &self.sigma(t, (s * i) as i64));
        }
        Ok(acc)
    }

    /// Additive trace Σ_{i<s} σ^i(x).
    pub fn tr_additive(&self, t: &Tower, s: u32) -> Witt {
        let mut acc = Witt::zero(self.m, self.len());
        for i in 0..s {
            acc = acc.add(t, &self.sigma(t, i as i64));
        }
        acc
    }

    /// Largest `a` with `x ≡ 1 mod ϖ^a` (0 when the residue is not 1, `h` for 1).
    pub fn unit_level(&self) -> Result<usize, WittError> {
        if !self.is_unit() {
            return Err(WittError::NonUnit);
        }
        if self.digits[0] != Fq::ONE {
            return Ok(0);
        }
        Ok(self.digits[1..].iter().position(|d| !d.is_zero()).map_or(self.len(), |j| j + 1))
    }

    /// Whether every digit lies in F_{q^s}.
    pub fn is_rational(&self, t: &Tower, s: u32) -> bool {
        self.digits.iter().all(|&a| t.frob(a, s as i64) == a)
    }
}

/// All elements of W_h(F_{q^m}), digits enumerated lexicographically with digit 0 slowest.
pub fn enumerate(t: &Tower, m: u32, h: usize) -> Vec<Witt> {
    let elems = t.elements(m).expect("supported level");
    let mut out = vec![Witt::zero(m, 0)];
    for _ in 0..h {
        let mut next = Vec::with_capacity(out.len() * elems.len());
        for w in &out {
            for &a in elems {
                let mut d = w.digits.clone();
                d.push(a);
                next.push(Witt { m, digits: d });
            }
        }
        out = next;
    }
    out
}

/// The units of W_h(F_{q^m}) whose level is at least `a` (all units for `a = 0`).
pub fn enumerate_units(t: &Tower, m: u32, h: usize, a: usize) -> Vec<Witt> {
    enumerate(t, m, h)
        .into_iter()
        .filter(|w| w.is_unit() && w.unit_level().map(|l| a == 0 || l >= a).unwrap_or(false))
        .collect()
}

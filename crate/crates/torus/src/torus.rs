//! The finite torus T_h = W_h^×(F_{q^n}) and its characters.
//!
//! Generators are fixed as follows: first a Teichmüller lift of the primitive element of
//! F_{q^n}, then `1 + ω^i ϖ^j` for `1 ≤ j < h` prime to p and `0 ≤ i < [F_{q^n}:F_p]`,
//! in that order (j outer). The element `1 + βϖ^j` has order p^{ℓ_j} with ℓ_j the number
//! of k ≥ 0 with j p^k < h, and these elements form a basis of U^1/U^h.

use crate::cyclo::Cyclo;
use crate::spec::GroupSpec;
use coxdl_gf::{Fq, Tower};
use coxdl_witt::Witt;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("cannot parse character string: {0}")]
    Parse(String),
    #[error("generator index {0} out of range")]
    Generator(usize),
    #[error("degree exponent {0}/2 is not an integer")]
    NonIntegralExponent(i64),
}

/// A character, by the exponent it assigns to each generator: θ(g_i) = ζ_{ord_i}^{e_i}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusChar {
    pub exps: Vec<u64>,
}

impl std::fmt::Display for TorusChar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, e)| format!("{i}:{e}"))
            .collect();
        if parts.is_empty() {
            write!(f, "theta=trivial")
        } else {
            write!(f, "theta={}", parts.join(","))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoweDecomposition {
    /// Number of tower steps.
    pub t: usize,
    /// `r_k = [L_k : K]` for k = 1..t, increasing, `r_t = n` for characters in general position.
    pub r: Vec<u32>,
    /// Levels `h_1 ≥ … ≥ h_t`.
    pub levels: Vec<usize>,
    /// `d_k = [L : L_k]`.
    pub d: Vec<u32>,
    /// Whether θ is a character of K^× composed with the norm (degenerate form).
    pub norm_only: bool,
}

pub struct Torus {
    tower: Arc<Tower>,
    n: u32,
    h: usize,
    gens: Vec<Witt>,
    orders: Vec<u64>,
    strides: Vec<usize>,
    elems: Vec<Witt>,
    index: HashMap<Witt, usize>,
    sigma: Vec<usize>,
    levels: Vec<usize>,
    e: u64,
}

impl Torus {
    /// The torus for `(q, n, h)`; `tower` must contain F_{q^n}.
    pub fn new(tower: Arc<Tower>, n: u32, h: usize) -> Torus {
        let t = &*tower;
        let p = t.p();
        let q = t.q();
        let mut gens = vec![Witt::constant(n, h, t.primitive(n).expect("F_{q^n} supported"))];
        let mut orders = vec![q.pow(n) - 1];
        let omega = t.generator(n).expect("supported");
        let fn_deg = t.f() * n;
        for j in (1..h).filter(|j| *j as u64 % p != 0) {
            let mut ell = 0u32;
            let mut v = j;
            while v < h {
                ell += 1;
                v *= p as usize;
            }
            for i in 0..fn_deg {
                let mut g = Witt::one(n, h);
                g.set_digit(j, t.pow(omega, i as u128));
                gens.push(g);
                orders.push(p.pow(ell));
            }
        }
        let total: usize = orders.iter().product::<u64>() as usize;
        let mut strides = vec![1usize; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1] as usize;
        }
        // Enumerate by mixed radix with the last generator fastest.
        let mut elems: Vec<Witt> = vec![Witt::one(n, h)];
        for (g, &o) in gens.iter().zip(&orders) {
            let mut next = Vec::with_capacity(elems.len() * o as usize);
            for x in &elems {
                let mut cur = x.clone();
                for _ in 0..o {
                    next.push(cur.clone());
                    cur = cur.mul(t, g);
                }
            }
            elems = next;
        }
        assert_eq!(elems.len(), total);
        let index: HashMap<Witt, usize> = elems.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        assert_eq!(index.len(), total, "generators do not form a basis");
        let sigma = elems.iter().map(|x| index[&x.sigma(t, 1)]).collect();
        let levels = elems.iter().map(|x| x.unit_level().expect("unit")).collect();
        let e = (q.pow(n) - 1) * p.pow(h as u32 - 1);
        Torus { tower, n, h, gens, orders, strides, elems, index, sigma, levels, e }
    }

    pub fn for_spec(tower: Arc<Tower>, spec: &GroupSpec) -> Torus {
        Torus::new(tower, spec.n, spec.h)
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn h(&self) -> usize {
        self.h
    }

    /// Generators and their orders.
    pub fn structure(&self) -> (&[Witt], &[u64]) {
        (&self.gens, &self.orders)
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    /// Conductor E = (q^n − 1) p^{h−1} of the value field.
    pub fn conductor(&self) -> u64 {
        self.e
    }

    pub fn elements(&self) -> &[Witt] {
        &self.elems
    }

    pub fn element(&self, i: usize) -> &Witt {
        &self.elems[i]
    }

    pub fn index_of(&self, x: &Witt) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Exponent vector of the element with the given index.
    pub fn exponents(&self, i: usize) -> Vec<u64> {
        self.strides.iter().zip(&self.orders).map(|(&s, &o)| ((i / s) as u64) % o).collect()
    }

    /// Index of σ^s(t_i).
    pub fn sigma_index(&self, i: usize, s: i64) -> usize {
        let s = s.rem_euclid(self.n as i64);
        (0..s).fold(i, |j, _| self.sigma[j])
    }

    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        let mut k = 0;
        for (&s, &o) in self.strides.iter().zip(&self.orders) {
            let a = (i / s) as u64 % o;
            let b = (j / s) as u64 % o;
            k += ((a + b) % o) as usize * s;
        }
        k
    }

    pub fn inv_index(&self, i: usize) -> usize {
        let mut k = 0;
        for (&s, &o) in self.strides.iter().zip(&self.orders) {
            let a = (i / s) as u64 % o;
            k += ((o - a) % o) as usize * s;
        }
        k
    }

    /// Unit level of t_i (0 if the residue is not 1).
    pub fn unit_level(&self, i: usize) -> usize {
        self.levels[i]
    }

    pub fn residue(&self, i: usize) -> Fq {
        self.elems[i].digit(0)
    }

    pub fn trivial(&self) -> TorusChar {
        TorusChar { exps: vec![0; self.orders.len()] }
    }

    /// All characters, in mixed-radix order of their exponent vectors.
    pub fn characters(&self) -> Vec<TorusChar> {
        (0..self.order()).map(|i| TorusChar { exps: self.exponents(i) }).collect()
    }

    /// θ(t_i) as an exponent of ζ_E.
    pub fn value_exp(&self, theta: &TorusChar, i: usize) -> u64 {
        let mut acc = 0u64;
        for ((&a, &o), &s) in theta.exps.iter().zip(&self.orders).zip(&self.strides) {
            let x = (i / s) as u64 % o;
            acc = (acc + (a % o) * x % o * (self.e / o)) % self.e;
        }
        acc
    }

    /// Table of θ over all elements, as exponents of ζ_E.
    pub fn value_table(&self, theta: &TorusChar) -> Vec<u64> {
        (0..self.order()).map(|i| self.value_exp(theta, i)).collect()
    }

    pub fn char_eval(&self, theta: &TorusChar, i: usize) -> Cyclo {
        Cyclo::root(self.e, self.value_exp(theta, i) as i64)
    }

    pub fn char_mul(&self, a: &TorusChar, b: &TorusChar) -> TorusChar {
        TorusChar {
            exps: a.exps.iter().zip(&b.exps).zip(&self.orders).map(|((&x, &y), &o)| (x + y) % o).collect(),
        }
    }

    pub fn char_inv(&self, a: &TorusChar) -> TorusChar {
        TorusChar { exps: a.exps.iter().zip(&self.orders).map(|(&x, &o)| (o - x % o) % o).collect() }
    }

    /// The character with a given value table (exponents of ζ_E), if it is one.
    fn from_table_on_gens(&self, f: impl Fn(usize) -> u64) -> TorusChar {
        let exps = self
            .strides
            .iter()
            .zip(&self.orders)
            .map(|(&s, &o)| {
                let v = f(s);
                debug_assert_eq!(v % (self.e / o), 0);
                v / (self.e / o)
            })
            .collect();
        TorusChar { exps }
    }

    /// θ∘σ^s.
    pub fn compose_sigma(&self, theta: &TorusChar, s: i64) -> TorusChar {
        self.from_table_on_gens(|gi| self.value_exp(theta, self.sigma_index(gi, s)))
    }

    /// Smallest a ≥ 0 with θ trivial on U^a (U^0 = T_h); 0 for the trivial character.
    pub fn level(&self, theta: &TorusChar) -> usize {
        let mut lvl = 0;
        for i in 0..self.order() {
            if self.value_exp(theta, i) != 0 {
                lvl = lvl.max(self.levels[i] + 1);
            }
        }
        lvl.min(self.h)
    }

    fn in_filtration(&self, i: usize, a: usize) -> bool {
        a == 0 || self.levels[i] >= a
    }

    /// Whether θ restricted to U^a is invariant under σ^s.
    pub fn is_sigma_stable(&self, theta: &TorusChar, s: i64, a: usize) -> bool {
        (0..self.order())
            .filter(|&i| self.in_filtration(i, a))
            .all(|i| self.value_exp(theta, self.sigma_index(i, s)) == self.value_exp(theta, i))
    }

    /// Whether θ restricted to U^a is trivial on the kernel of N_{n/r}.
    pub fn factors_through_norm(&self, theta: &TorusChar, r: u32, a: usize) -> bool {
        let t = &*self.tower;
        let one = Witt::one(self.n, self.h);
        (0..self.order()).filter(|&i| self.in_filtration(i, a)).all(|i| {
            self.elems[i].nm(t, self.n, r).expect("r divides n") != one || self.value_exp(theta, i) == 0
        })
    }

    /// Trivial σ-stabilizer (on U^1 when `restrict_to_u1`), checked through both the σ^s
    /// test and the norm factorisation test, which must agree.
    pub fn is_general_position(&self, theta: &TorusChar, restrict_to_u1: bool) -> bool {
        let a = usize::from(restrict_to_u1);
        let by_sigma = (1..self.n).all(|s| !self.is_sigma_stable(theta, s as i64, a));
        let by_norm = (1..self.n)
            .filter(|r| self.n % r == 0)
            .all(|r| !self.factors_through_norm(theta, r, a));
        assert_eq!(by_sigma, by_norm, "stability and norm criteria disagree for {theta}");
        by_sigma
    }

    /// The distinct characters θ∘σ^i.
    pub fn galois_orbit(&self, theta: &TorusChar) -> Vec<TorusChar> {
        let set: BTreeSet<TorusChar> = (0..self.n as i64).map(|s| self.compose_sigma(theta, s)).collect();
        set.into_iter().collect()
    }

    /// Smallest divisor r of n with θ|U^a σ^r-stable.
    pub fn stabilizer_degree(&self, theta: &TorusChar, a: usize) -> u32 {
        (1..=self.n)
            .filter(|r| self.n % r == 0)
            .find(|&r| self.is_sigma_stable(theta, r as i64, a))
            .unwrap_or(self.n)
    }

    /// Tower and jump data from the level-by-level stabilizers r(a).
    pub fn howe_decompose(&self, theta: &TorusChar) -> HoweDecomposition {
        let r_of: Vec<u32> = (0..self.h).map(|a| self.stabilizer_degree(theta, a)).collect();
        let mut rs: Vec<u32> = r_of.iter().copied().filter(|&r| r > 1).collect();
        rs.sort_unstable();
        rs.dedup();
        if rs.is_empty() {
            return HoweDecomposition {
                t: 1,
                r: vec![self.n],
                levels: vec![self.level(theta)],
                d: vec![1],
                norm_only: true,
            };
        }
        let jump = |rk: u32| (0..self.h).find(|&a| r_of[a] < rk).unwrap_or(self.h);
        let mut levels: Vec<usize> = rs.iter().map(|&rk| jump(rk)).collect();
        if *rs.last().unwrap() < self.n {
            rs.push(self.n);
            levels.push(0);
        }
        let d = rs.iter().map(|&rk| self.n / rk).collect();
        HoweDecomposition { t: rs.len(), r: rs, levels, d, norm_only: false }
    }

    /// Parses `theta=g0:e0,g1:e1` (the `theta=` prefix is optional; `trivial` allowed).
    pub fn parse_char(&self, s: &str) -> Result<TorusChar, TorusError> {
        let body = s.trim().strip_prefix("theta=").unwrap_or(s.trim());
        let mut exps = vec![0u64; self.orders.len()];
        if body.is_empty() || body == "trivial" {
            return Ok(TorusChar { exps });
        }
        for part in body.split(',') {
            let (g, e) = part.split_once(':').ok_or_else(|| TorusError::Parse(part.to_string()))?;
            let g: usize = g.trim().parse().map_err(|_| TorusError::Parse(part.to_string()))?;
            let e: i64 = e.trim().parse().map_err(|_| TorusError::Parse(part.to_string()))?;
            let o = *self.orders.get(g).ok_or(TorusError::Generator(g))?;
            exps[g] = e.rem_euclid(o as i64) as u64;
        }
        Ok(TorusChar { exps })
    }
}

/// r_θ = (n' − n) + h_t + (n − 2)h + Σ_{k<t} d_k (h_k − h_{k+1}), with h = h_1.
pub fn r_theta(hd: &HoweDecomposition, spec: &GroupSpec) -> i64 {
    let n = spec.n as i64;
    let np = spec.n_prime() as i64;
    let h1 = hd.levels[0] as i64;
    let ht = *hd.levels.last().unwrap() as i64;
    let tail: i64 = (0..hd.t.saturating_sub(1))
        .map(|k| hd.d[k] as i64 * (hd.levels[k] as i64 - hd.levels[k + 1] as i64))
        .sum();
    (np - n) + ht + (n - 2) * h1 + tail
}

/// q^{(n/2)[n(h_1−1) − (h_t−1) − Σ_{k<t} d_k(h_k − h_{k+1})]} · ∏_{i=1}^{n'−1}(q^{n_0(n'−i)} − 1).
pub fn degree_formula(hd: &HoweDecomposition, spec: &GroupSpec) -> Result<u128, TorusError> {
    let n = spec.n as i64;
    let h1 = hd.levels[0] as i64;
    let ht = *hd.levels.last().unwrap() as i64;
    let tail: i64 = (0..hd.t.saturating_sub(1))
        .map(|k| hd.d[k] as i64 * (hd.levels[k] as i64 - hd.levels[k + 1] as i64))
        .sum();
    let twice = n * (n * (h1 - 1) - (ht - 1) - tail);
    if twice % 2 != 0 || twice < 0 {
        return Err(TorusError::NonIntegralExponent(twice));
    }
    let q = spec.q as u128;
    let mut deg = q.pow((twice / 2) as u32);
    let (np, n0) = (spec.n_prime(), spec.n0());
    for i in 1..np {
        deg *= q.pow(n0 * (np - i)) - 1;
    }
    Ok(deg)
}

/// Macdonald's volume (1/n) ∏_{i=1}^{n'−1}(q^{n_0 i} − 1) as a reduced fraction.
pub fn macdonald_volume(spec: &GroupSpec) -> (u128, u128) {
    let q = spec.q as u128;
    let (np, n0) = (spec.n_prime(), spec.n0());
    let num: u128 = (1..np).map(|i| q.pow(n0 * i) - 1).product();
    let den = spec.n as u128;
    let g = num_integer::gcd(num, den);
    (num / g, den / g)
}

//! Exact arithmetic in Q(ζ_E).
//!
//! Elements are stored as integer coordinates over a common positive denominator in the
//! power basis `1, ζ, …, ζ^{φ(E)-1}`, reduced modulo the E-th cyclotomic polynomial, so
//! equality is coordinate equality.

use num_integer::Integer;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug)]
pub struct CycloBasis {
    e: u64,
    phi: usize,
    /// `powers[k]` holds the reduced coordinates of `ζ^k`.
    powers: Vec<Vec<i64>>,
}

fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] / b[db];
        q[i] = c;
        for (k, &bk) in b.iter().enumerate() {
            r[i + k] -= c * bk;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

fn cyclotomic_poly(e: u64, memo: &mut HashMap<u64, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&e) {
        return p.clone();
    }
    let mut num = vec![0i64; e as usize + 1];
    num[0] = -1;
    num[e as usize] = 1;
    for d in (1..e).filter(|d| e % d == 0) {
        let pd = cyclotomic_poly(d, memo);
        num = poly_div_exact(&num, &pd);
    }
    memo.insert(e, num.clone());
    num
}

impl CycloBasis {
    fn build(e: u64) -> CycloBasis {
        let phi_poly = cyclotomic_poly(e, &mut HashMap::new());
        let phi = phi_poly.len() - 1;
        let mut powers = Vec::with_capacity(e as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..e {
            powers.push(cur.clone());
            // Multiply by ζ and reduce with the monic relation.
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            next[1..phi].copy_from_slice(&cur[..(phi - 1)]);
            for (k, n) in next.iter_mut().enumerate() {
                *n -= top * phi_poly[k];
            }
            cur = next;
        }
        CycloBasis { e, phi, powers }
    }

    /// The shared basis for conductor `e` (cached process-wide).
    pub fn get(e: u64) -> Arc<CycloBasis> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard.entry(e.max(1)).or_insert_with(|| Arc::new(CycloBasis::build(e.max(1)))).clone()
    }

    pub fn conductor(&self) -> u64 {
        self.e
    }

    pub fn degree(&self) -> usize {
        self.phi
    }
}

#[derive(Clone)]
pub struct Cyclo {
    basis: Arc<CycloBasis>,
    num: Vec<i128>,
    den: i128,
}

impl Cyclo {
    pub fn zero(e: u64) -> Cyclo {
        let basis = CycloBasis::get(e);
        let num = vec![0; basis.phi];
        Cyclo { basis, num, den: 1 }
    }

    pub fn from_int(e: u64, v: i128) -> Cyclo {
        Cyclo::from_ratio(e, v, 1)
    }

    pub fn from_ratio(e: u64, n: i128, d: i128) -> Cyclo {
        let mut z = Cyclo::zero(e);
        z.num[0] = n;
        z.den = d;
        z.normalize();
        z
    }

    /// `ζ_E^k`.
    pub fn root(e: u64, k: i64) -> Cyclo {
        let basis = CycloBasis::get(e);
        let k = k.rem_euclid(basis.e as i64) as usize;
        let num = basis.powers[k].iter().map(|&c| c as i128).collect();
        Cyclo { basis, num, den: 1 }
    }

    /// `Σ_k a_k ζ^k / den` from a group-ring vector of length E.
    pub fn from_group_ring(e: u64, a: &[i128], den: i128) -> Cyclo {
        let basis = CycloBasis::get(e);
        let mut num = vec![0i128; basis.phi];
        for (k, &c) in a.iter().enumerate() {
            if c != 0 {
                let pk = &basis.powers[k % basis.e as usize];
                for (n, &v) in num.iter_mut().zip(pk) {
                    *n += c * v as i128;
                }
            }
        }
        let mut z = Cyclo { basis, num, den };
        z.normalize();
        z
    }

    fn normalize(&mut self) {
        if self.den < 0 {
            self.den = -self.den;
            self.num.iter_mut().for_each(|c| *c = -*c);
        }
        let g = self.num.iter().fold(self.den, |g, &c| g.gcd(&c));
        if g > 1 {
            self.den /= g;
            self.num.iter_mut().for_each(|c| *c /= g);
        }
    }

    pub fn conductor(&self) -> u64 {
        self.basis.e
    }

    pub fn coords(&self) -> (&[i128], i128) {
        (&self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&c| c == 0)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|&c| c == 0)
    }

    /// `(numerator, denominator)` when rational.
    pub fn as_rational(&self) -> Option<(i128, i128)> {
        self.is_rational().then_some((self.num[0], self.den))
    }

    pub fn as_integer(&self) -> Option<i128> {
        self.as_rational().filter(|&(_, d)| d == 1).map(|(n, _)| n)
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Cyclo {
        let e = self.basis.e as usize;
        let mut ring = vec![0i128; e];
        for (k, &c) in self.num.iter().enumerate() {
            ring[(e - k) % e] += c;
        }
        Cyclo::from_group_ring(self.basis.e, &ring, self.den)
    }

    /// Galois action `ζ ↦ ζ^a`, `a` prime to E.
    pub fn galois(&self, a: u64) -> Cyclo {
        let e = self.basis.e as usize;
        let mut ring = vec![0i128; e];
        for (k, &c) in self.num.iter().enumerate() {
            ring[(k * a as usize) % e] += c;
        }
        Cyclo::from_group_ring(self.basis.e, &ring, self.den)
    }

    pub fn scale(&self, n: i128, d: i128) -> Cyclo {
        let mut z = Cyclo {
            basis: self.basis.clone(),
            num: self.num.iter().map(|&c| c * n).collect(),
            den: self.den * d,
        };
        z.normalize();
        z
    }

    /// Floating-point value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let e = self.basis.e as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, &c) in self.num.iter().enumerate() {
            let a = 2.0 * std::f64::consts::PI * k as f64 / e;
            re += c as f64 * a.cos();
            im += c as f64 * a.sin();
        }
        (re / self.den as f64, im / self.den as f64)
    }

    fn lift(&self, e: u64) -> Cyclo {
        if e == self.basis.e {
            return self.clone();
        }
        assert!(e % self.basis.e == 0, "conductor {} does not divide {}", self.basis.e, e);
        let f = (e / self.basis.e) as usize;
        let mut ring = vec![0i128; e as usize];
        for (k, &c) in self.num.iter().enumerate() {
            ring[k * f] += c;
        }
        Cyclo::from_group_ring(e, &ring, self.den)
    }

    fn common(&self, o: &Cyclo) -> (Cyclo, Cyclo) {
        if self.basis.e == o.basis.e {
            return (self.clone(), o.clone());
        }
        let e = self.basis.e.lcm(&o.basis.e);
        (self.lift(e), o.lift(e))
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, o: &Cyclo) -> bool {
        if self.basis.e == o.basis.e {
            self.den == o.den && self.num == o.num
        } else {
            let (a, b) = self.common(o);
            a == b
        }
    }
}

impl Eq for Cyclo {}

impl Hash for Cyclo {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.e.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &c) in self.num.iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match k {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            });
        }
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if self.den == 1 {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, o: &Cyclo) -> Cyclo {
        let (a, b) = self.common(o);
        let num = a.num.iter().zip(&b.num).map(|(&x, &y)| x * b.den + y * a.den).collect();
        let mut z = Cyclo { basis: a.basis.clone(), num, den: a.den * b.den };
        z.normalize();
        z
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, o: &Cyclo) -> Cyclo {
        self + &(-o)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { basis: self.basis.clone(), num: self.num.iter().map(|&c| -c).collect(), den: self.den }
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, o: &Cyclo) -> Cyclo {
        let (a, b) = self.common(o);
        let e = a.basis.e as usize;
        let mut ring = vec![0i128; e];
        for (i, &x) in a.num.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.num.iter().enumerate() {
                ring[(i + j) % e] += x * y;
            }
        }
        Cyclo::from_group_ring(a.basis.e, &ring, a.den * b.den)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclo {
            type Output = Cyclo;
            fn $m(self, o: Cyclo) -> Cyclo {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = &(&Cyclo::root(3, 0) + &Cyclo::root(3, 1)) + &Cyclo::root(3, 2);
        assert!(s.is_zero());
        assert_eq!(&Cyclo::root(3, 1) + &Cyclo::root(3, 2), Cyclo::from_int(3, -1));
    }

    #[test]
    fn conjugation_and_norm() {
        let z = Cyclo::root(24, 5);
        assert_eq!(&z * &z.conj(), Cyclo::from_int(24, 1));
        assert_eq!(Cyclo::root(24, 12), Cyclo::from_int(24, -1));
        assert_eq!(Cyclo::root(8, 1).galois(3), Cyclo::root(8, 3));
    }

    #[test]
    fn mixed_conductors() {
        let a = Cyclo::root(3, 1);
        let b = Cyclo::root(6, 2);
        assert_eq!(a, b);
        assert_eq!((&a - &b).as_integer(), Some(0));
    }
}

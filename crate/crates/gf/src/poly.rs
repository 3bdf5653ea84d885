//! Dense polynomials over a prime field F_p, coefficients stored low degree first.

pub type Poly = Vec<u32>;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

pub fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    let mut r: Poly = (0..n)
        .map(|i| {
            let x = *a.get(i).unwrap_or(&0);
            let y = *b.get(i).unwrap_or(&0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut r);
    r
}

pub fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += x as u64 * y as u64;
        }
        if i % 1024 == 1023 {
            acc.iter_mut().for_each(|c| *c %= p as u64);
        }
    }
    let mut r: Poly = acc.into_iter().map(|c| (c % p as u64) as u32).collect();
    trim(&mut r);
    r
}

/// Remainder of `a` modulo the nonzero polynomial `f`.
pub fn rem(a: &[u32], f: &[u32], p: u32) -> Poly {
    let df = degree(f).expect("division by zero polynomial");
    let lead_inv = inv_mod(f[df], p) as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let pp = p as u64;
    let mut i = r.len();
    while i > df {
        i -= 1;
        let c = r[i] % pp * lead_inv % pp;
        if c == 0 {
            continue;
        }
        let shift = i - df;
        for (k, &fk) in f[..=df].iter().enumerate() {
            r[shift + k] = (r[shift + k] + (pp - c) * fk as u64) % pp;
        }
    }
    r.truncate(df);
    let mut out: Poly = r.into_iter().map(|c| (c % pp) as u32).collect();
    trim(&mut out);
    out
}

pub fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), f, p)
}

/// `a^e mod f`, exponent as a big integer given by its base-2^64 digits is not needed here.
pub fn pow_mod_poly(a: &[u32], mut e: u128, f: &[u32], p: u32) -> Poly {
    let mut r: Poly = vec![1];
    let mut b = rem(a, f, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(&r, &b, f, p);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(&b, &b, f, p);
        }
    }
    r
}

pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(d) = degree(&x) {
        let inv = inv_mod(x[d], p) as u64;
        x.iter_mut().for_each(|c| *c = (*c as u64 * inv % p as u64) as u32);
    }
    x
}

/// Inverse of `a` modulo `f` by the extended Euclidean algorithm.
pub fn inv_mod_poly(a: &[u32], f: &[u32], p: u32) -> Option<Poly> {
    let (mut r0, mut r1) = (f.to_vec(), rem(a, f, p));
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![1]);
    trim(&mut r0);
    while let Some(d1) = degree(&r1) {
        let d0 = degree(&r0).expect("nonzero");
        if d0 < d1 {
            std::mem::swap(&mut r0, &mut r1);
            std::mem::swap(&mut s0, &mut s1);
            continue;
        }
        // One leading-term step: r0 -= c X^k r1, s0 -= c X^k s1.
        let c = (r0[d0] as u64 * inv_mod(r1[d1], p) as u64 % p as u64) as u32;
        let mut mono = vec![0u32; d0 - d1 + 1];
        mono[d0 - d1] = c;
        r0 = sub(&r0, &mul(&mono, &r1, p), p);
        s0 = sub(&s0, &mul(&mono, &s1, p), p);
        if degree(&r0).is_none() {
            break;
        }
    }
    // The last nonzero remainder is r1 when the loop stopped on r0 = 0.
    let (g, s) = if degree(&r0).is_none() { (r1, s1) } else { (r0, s0) };
    if degree(&g) != Some(0) {
        return None;
    }
    let c = inv_mod(g[0], p) as u64;
    let mut out: Poly = s.iter().map(|&x| (x as u64 * c % p as u64) as u32).collect();
    out = rem(&out, f, p);
    Some(out)
}

/// `X^(p^k) mod f` by repeated p-th powering.
fn x_pow_p_iter(f: &[u32], p: u32, k: usize) -> Poly {
    let mut r: Poly = rem(&[0, 1], f, p);
    for _ in 0..k {
        r = pow_mod_poly(&r, p as u128, f, p);
    }
    r
}

/// Rabin's irreducibility test for a monic polynomial.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = match degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x: Poly = vec![0, 1];
    if sub(&x_pow_p_iter(f, p, d), &x, p).iter().any(|&c| c != 0) {
        return false;
    }
    for l in prime_factors(d as u128) {
        let k = d / l as usize;
        let g = gcd(f, &sub(&x_pow_p_iter(f, p, k), &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// The monic irreducible polynomial of degree `d` whose lower coefficients, read as
/// base-p digits with the constant term least significant, form the smallest integer.
pub fn lex_least_irreducible(p: u32, d: usize) -> Poly {
    let mut low = vec![0u32; d];
    loop {
        let mut f = low.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        let mut i = 0;
        loop {
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
            i += 1;
            assert!(i < d, "no irreducible polynomial found");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles() {
        assert_eq!(lex_least_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(lex_least_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(lex_least_irreducible(2, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(lex_least_irreducible(3, 2), vec![1, 0, 1]);
        assert!(!is_irreducible(&[1, 0, 1], 2));
    }

    #[test]
    fn irreducible_count_degree_four_over_f2() {
        let count = (0..16u32)
            .filter(|m| {
                let mut f: Poly = (0..4).map(|i| (m >> i) & 1).collect();
                f.push(1);
                is_irreducible(&f, 2)
            })
            .count();
        assert_eq!(count, 3);
    }
}

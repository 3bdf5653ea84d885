//! Truncated power series `Σ a_j ϖ^j` over any [`FieldOps`] field, as plain digit slices.
//!
//! Shorter inputs are read as zero-padded; every result has the requested length `h`.

use coxdl_gf::FieldOps;

pub fn zero<F: FieldOps>(f: &F, h: usize) -> Vec<F::Elem> {
    vec![f.zero(); h]
}

pub fn one<F: FieldOps>(f: &F, h: usize) -> Vec<F::Elem> {
    let mut v = zero(f, h);
    if h > 0 {
        v[0] = f.one();
    }
    v
}

fn at<F: FieldOps>(f: &F, a: &[F::Elem], j: usize) -> F::Elem {
    a.get(j).cloned().unwrap_or_else(|| f.zero())
}

pub fn add<F: FieldOps>(f: &F, a: &[F::Elem], b: &[F::Elem], h: usize) -> Vec<F::Elem> {
    (0..h).map(|j| f.add(&at(f, a, j), &at(f, b, j))).collect()
}

pub fn sub<F: FieldOps>(f: &F, a: &[F::Elem], b: &[F::Elem], h: usize) -> Vec<F::Elem> {
    (0..h).map(|j| f.sub(&at(f, a, j), &at(f, b, j))).collect()
}

pub fn neg<F: FieldOps>(f: &F, a: &[F::Elem], h: usize) -> Vec<F::Elem> {
    (0..h).map(|j| f.neg(&at(f, a, j))).collect()
}

pub fn mul<F: FieldOps>(f: &F, a: &[F::Elem], b: &[F::Elem], h: usize) -> Vec<F::Elem> {
    let mut out = zero(f, h);
    for (i, x) in a.iter().enumerate().take(h) {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(h - i) {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    out
}

/// Multiplication by a constant digit.
pub fn scale<F: FieldOps>(f: &F, a: &[F::Elem], c: &F::Elem, h: usize) -> Vec<F::Elem> {
    (0..h).map(|j| f.mul(&at(f, a, j), c)).collect()
}

/// Multiplication by `ϖ^k`.
pub fn shift<F: FieldOps>(f: &F, a: &[F::Elem], k: usize, h: usize) -> Vec<F::Elem> {
    (0..h).map(|j| if j < k { f.zero() } else { at(f, a, j - k) }).collect()
}

pub fn frob<F: FieldOps>(f: &F, a: &[F::Elem], i: i64) -> Vec<F::Elem> {
    a.iter().map(|x| f.frob(x, i)).collect()
}

pub fn is_unit<F: FieldOps>(f: &F, a: &[F::Elem]) -> bool {
    a.first().is_some_and(|x| !f.is_zero(x))
}

pub fn inv<F: FieldOps>(f: &F, a: &[F::Elem], h: usize) -> Option<Vec<F::Elem>> {
    let a0i = f.inv(a.first()?)?;
    let mut b = zero(f, h);
    if h == 0 {
        return Some(b);
    }
    b[0] = a0i.clone();
    for k in 1..h {
        let mut s = f.zero();
        for i in 1..=k {
            s = f.add(&s, &f.mul(&at(f, a, i), &b[k - i]));
        }
        b[k] = f.neg(&f.mul(&s, &a0i));
    }
    Some(b)
}

/// Determinant of a square matrix of series (Leibniz expansion, exact for any entries).
pub fn det<F: FieldOps>(f: &F, m: &[Vec<Vec<F::Elem>>], h: usize) -> Vec<F::Elem> {
    let n = m.len();
    let mut total = zero(f, h);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1i64;
    let term = |perm: &[usize], sign: i64, total: &mut Vec<F::Elem>| {
        let mut prod = one(f, h);
        for (i, &j) in perm.iter().enumerate() {
            prod = mul(f, &prod, &m[i][j], h);
        }
        *total = if sign > 0 { add(f, total, &prod, h) } else { sub(f, total, &prod, h) };
    };
    term(&perm, sign, &mut total);
    // Heap's algorithm; each swap flips the sign.
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            term(&perm, sign, &mut total);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

/// Determinant over the base field by Gaussian elimination.
pub fn field_det<F: FieldOps>(f: &F, m: &[Vec<F::Elem>]) -> F::Elem {
    let n = m.len();
    let mut a: Vec<Vec<F::Elem>> = m.to_vec();
    let mut d = f.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !f.is_zero(&a[r][col])) else {
            return f.zero();
        };
        if piv != col {
            a.swap(piv, col);
            d = f.neg(&d);
        }
        d = f.mul(&d, &a[col][col]);
        let pinv = f.inv(&a[col][col]).expect("nonzero pivot");
        for r in col + 1..n {
            if f.is_zero(&a[r][col]) {
                continue;
            }
            let factor = f.mul(&a[r][col], &pinv);
            for k in col..n {
                let v = f.mul(&factor, &a[col][k]);
                a[r][k] = f.sub(&a[r][k], &v);
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use coxdl_gf::Tower;

    #[test]
    fn det_agrees_with_gauss_at_h1() {
        let t = Tower::new(3, 1, &[2]).unwrap();
        let el = t.elements(2).unwrap().to_vec();
        let m: Vec<Vec<_>> = (0..3).map(|i| (0..3).map(|j| el[(i * 5 + j * 7 + i * j) % 9]).collect()).collect();
        let series: Vec<Vec<Vec<_>>> = m.iter().map(|r| r.iter().map(|&x| vec![x]).collect()).collect();
        assert_eq!(det(&t, &series, 1)[0], field_det(&t, &m));
    }

    #[test]
    fn inverse_round_trip() {
        let t = Tower::new(2, 1, &[2]).unwrap();
        let a = vec![t.generator(2).unwrap(), t.one(), t.zero()];
        let b = inv(&t, &a, 3).unwrap();
        assert_eq!(mul(&t, &a, &b, 3), one(&t, 3));
    }
}

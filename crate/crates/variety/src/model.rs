//! The coordinate model of X_h.
//!
//! A point is `x = (x_1, …, x_n)` with `x_i ∈ W_h` when `i ≡ 1 mod n₀` and `x_i ∈ W_{h−1}`
//! otherwise (all of precision h when κ = 0). Flattened, coordinate i occupies a
//! contiguous run of digits. The column matrix has i-th column
//! `ϖ^{−⌊(i−1)k₀/n₀⌋} (bσ)^{i−1}(x)` with `b` block-diagonal in `c = C^{k₀}`, where
//! `C y = (ϖ y_{n₀}, y_1, …, y_{n₀−1})` on each block.
//!
//! X_h is cut out by: `D = det` is a unit and `σ(D) = ε·D` with
//! `ε = (−1)^{n−1+(n₀−1)κ}`. This sign makes the first coefficient of
//! `σ^n(x)` in the column basis equal to 1, which is the normalisation in the defining
//! relation `(bσ)^n(v) = ϖ^κ(v + Σ a_i (bσ)^i(v))`.

use coxdl_gf::FieldOps;
use coxdl_torus::GroupSpec;
use coxdl_witt::series;

pub type Point<E> = Vec<Vec<E>>;

#[derive(Clone, Debug)]
pub struct Model {
    spec: GroupSpec,
    n: usize,
    n0: usize,
    k0: usize,
    h: usize,
    prec: Vec<usize>,
    offsets: Vec<usize>,
    dim: usize,
    eps: i64,
}

impl Model {
    pub fn new(spec: &GroupSpec) -> Model {
        let (n, n0, k0, h) = (spec.n as usize, spec.n0() as usize, spec.k0() as usize, spec.h);
        let prec: Vec<usize> = (0..n).map(|i| if i % n0 == 0 { h } else { h - 1 }).collect();
        let mut offsets = Vec::with_capacity(n);
        let mut acc = 0;
        for &p in &prec {
            offsets.push(acc);
            acc += p;
        }
        let exp = (n - 1) + (n0 - 1) * spec.kappa as usize;
        let eps = if exp % 2 == 0 { 1 } else { -1 };
        Model { spec: *spec, n, n0, k0, h, prec, offsets, dim: acc, eps }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> usize {
        self.h
    }

    /// Number of digits of a point: `h + (n − 1)(h − 1)` summed over blocks (nh for κ = 0).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn precision(&self, i: usize) -> usize {
        self.prec[i]
    }

    /// Position of digit `d` of coordinate `i` in the flat layout.
    pub fn slot(&self, i: usize, d: usize) -> usize {
        self.offsets[i] + d
    }

    /// The sign ε in `σ(D) = ε·D`.
    pub fn epsilon(&self) -> i64 {
        self.eps
    }

    pub fn split<E: Clone>(&self, flat: &[E]) -> Point<E> {
        (0..self.n).map(|i| flat[self.offsets[i]..self.offsets[i] + self.prec[i]].to_vec()).collect()
    }

    pub fn join<E: Clone>(&self, x: &Point<E>) -> Vec<E> {
        x.iter().flat_map(|c| c.iter().cloned()).collect()
    }

    /// Column matrix with entries in W_h; short coordinates are lifted by zero digits.
    pub fn column_matrix<F: FieldOps>(&self, f: &F, x: &Point<F::Elem>) -> Vec<Vec<Vec<F::Elem>>> {
        let (n, n0, h) = (self.n, self.n0, self.h);
        let mut m = vec![vec![Vec::new(); n]; n];
        for col in 0..n {
            let k = col * self.k0;
            let kr = k % n0;
            let sx: Point<F::Elem> = x.iter().map(|c| series::frob(f, c, col as i64)).collect();
            for row in 0..n {
                let block = row / n0;
                let j = row % n0;
                let src = block * n0 + (j + n0 - kr) % n0;
                let raise = usize::from(j < kr);
                m[row][col] = series::shift(f, &sx[src], raise, h);
            }
        }
        m
    }

    pub fn det<F: FieldOps>(&self, f: &F, x: &Point<F::Elem>) -> Vec<F::Elem> {
        series::det(f, &self.column_matrix(f, x), self.h)
    }

    /// Whether `D` satisfies the defining condition of X_h.
    pub fn det_condition<F: FieldOps>(&self, f: &F, d: &[F::Elem]) -> bool {
        series::is_unit(f, d) && d.iter().all(|c| self.twisted_rational(f, c))
    }

    /// `c^q = ε c`.
    pub fn twisted_rational<F: FieldOps>(&self, f: &F, c: &F::Elem) -> bool {
        let fc = f.frob(c, 1);
        if self.eps == 1 {
            fc == *c
        } else {
            fc == f.neg(c)
        }
    }

    pub fn in_xh<F: FieldOps>(&self, f: &F, x: &Point<F::Elem>) -> bool {
        self.det_condition(f, &self.det(f, x))
    }

    /// The solution `y` of `g(x)·y = σ^n(x)` over W_h, if the column matrix is invertible.
    pub fn coefficients<F: FieldOps>(&self, f: &F, x: &Point<F::Elem>) -> Option<Vec<Vec<F::Elem>>> {
        let (n, h) = (self.n, self.h);
        let mut m = self.column_matrix(f, x);
        let mut rhs: Vec<Vec<F::Elem>> =
            x.iter().map(|c| series::add(f, &series::frob(f, c, n as i64), &[], h)).collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| series::is_unit(f, &m[r][col]))?;
            m.swap(piv, col);
            rhs.swap(piv, col);
            let pinv = series::inv(f, &m[col][col], h)?;
            for k in 0..n {
                m[col][k] = series::mul(f, &m[col][k], &pinv, h);
            }
            rhs[col] = series::mul(f, &rhs[col], &pinv, h);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = m[r][col].clone();
                if factor.iter().all(|c| f.is_zero(c)) {
                    continue;
                }
                for k in 0..n {
                    let v = series::mul(f, &factor, &m[col][k], h);
                    m[r][k] = series::sub(f, &m[r][k], &v, h);
                }
                let v = series::mul(f, &factor, &rhs[col], h);
                rhs[r] = series::sub(f, &rhs[r], &v, h);
            }
        }
        Some(rhs)
    }

    /// `(y_2, …, y_n)`: the coefficients of `σ^n(x)` on the columns after the first.
    pub fn a_coeffs<F: FieldOps>(&self, f: &F, x: &Point<F::Elem>) -> Option<Vec<Vec<F::Elem>>> {
        self.coefficients(f, x).map(|y| y[1..].to_vec())
    }

    /// The closed stratum: `y_{i+1} ≡ 0 mod ϖ` whenever `n₀ | i`, `1 ≤ i ≤ n − 1`.
    /// At h = 1 the stratum is all of X_1.
    pub fn in_closed_stratum<F: FieldOps>(&self, f: &F, x: &Point<F::Elem>) -> bool {
        if self.h == 1 || self.n0 == self.n {
            return true;
        }
        let Some(y) = self.coefficients(f, x) else {
            return false;
        };
        (1..self.n).filter(|i| i % self.n0 == 0).all(|i| f.is_zero(&y[i][0]))
    }

    /// Membership in X_{h,n'}.
    pub fn in_stratum_point<F: FieldOps>(&self, f: &F, x: &Point<F::Elem>) -> bool {
        self.in_xh(f, x) && self.in_closed_stratum(f, x)
    }
}

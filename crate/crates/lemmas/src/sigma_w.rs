//! Weyl-group combinatorics for the cells Σ̂_w: the emptiness predicate, the staircase
//! shape of the remaining w, the integer criterion for the tori S_χ, and a direct count of
//! Σ̂_w at level one.

use crate::{LemmaError, LemmaVerdict};
use coxdl_gf::{Fq, Tower};
use coxdl_torus::{prime_power, GroupSpec};
use num_integer::Integer;

/// A permutation of {1, …, n}, stored as `w[i − 1] = w(i)`.
pub type Perm = Vec<usize>;

fn wrap(a: usize, n: usize) -> usize {
    (a + n - 1) % n + 1
}

/// All permutations preserving residues mod n₀.
pub fn weyl_o(n: usize, n0: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fn rec(n: usize, n0: usize, cur: &mut Perm, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        let i = cur.len() + 1;
        if i > n {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] && v % n0 == i % n0 {
                used[v] = true;
                cur.push(v);
                rec(n, n0, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, n0, &mut cur, &mut used, &mut out);
    out
}

/// ∃ 2 ≤ i ≤ n with [w(i)] > [w(i−1) + 1] > 1.
pub fn emptiness_predicate(w: &Perm) -> bool {
    let n = w.len();
    (2..=n).any(|i| {
        let b = wrap(w[i - 2] + 1, n);
        w[i - 1] > b && b > 1
    })
}

/// The breakpoints i₁ < … < i_s = n with w(i) = n − i_{j−1} − (i_j − i) on each block,
/// if w has this shape.
pub fn staircase(w: &Perm) -> Option<Vec<usize>> {
    let n = w.len();
    let mut cuts = Vec::new();
    let mut prev = 0;
    while prev < n {
        let top = n - prev;
        let ij = (prev + 1..=n).find(|&i| w[i - 1] == top)?;
        if (prev + 1..=ij).any(|i| w[i - 1] != n - prev - (ij - i)) {
            return None;
        }
        cuts.push(ij);
        prev = ij;
    }
    Some(cuts)
}

/// Σ_{k<n} q^k (δ(i−k) − δ(j−k)) for δ on Z/n given by `delta[a − 1] = δ(a)`.
pub fn delta_sum(delta: &[u8], q: i128, i: usize, j: usize) -> i128 {
    let n = delta.len();
    let at = |a: i64| delta[(a - 1).rem_euclid(n as i64) as usize] as i128;
    (0..n).map(|k| q.pow(k as u32) * (at(i as i64 - k as i64) - at(j as i64 - k as i64))).sum()
}

fn factors_through(delta: &[u8], d: usize) -> bool {
    (0..delta.len()).all(|k| delta[k] == delta[(k + d) % delta.len()])
}

/// For every w ∈ W_O: the emptiness predicate fails iff w has staircase shape; for
/// w ≠ 1 with staircase shape, δ = 1_{[1,i₁]} is a shift of w·δ and the sum criterion
/// separates exactly the pairs (i, j) along which δ is not periodic.
pub fn sigma_w_criteria(n: usize, kappa: usize) -> Result<LemmaVerdict, LemmaError> {
    let mut v = LemmaVerdict::new("sigma-w", format!("n={n} κ={kappa}"));
    if n < 2 || kappa >= n {
        return Ok(v.skip("need n ≥ 2 and 0 ≤ κ < n"));
    }
    let n0 = n / n.gcd(&kappa);
    let ws = weyl_o(n, n0);
    let identity: Perm = (1..=n).collect();
    let (mut empty, mut stairs) = (0, 0);
    for w in &ws {
        let pred = emptiness_predicate(w);
        let st = staircase(w);
        empty += usize::from(pred);
        if pred == st.is_some() {
            v.fail(format!("w = {w:?}: predicate {pred}, staircase {st:?}"));
            continue;
        }
        let Some(cuts) = st else { continue };
        if *w == identity {
            if cuts != vec![n] {
                v.fail(format!("identity has staircase {cuts:?}"));
            }
            continue;
        }
        stairs += 1;
        let i1 = cuts[0];
        if i1 >= n {
            v.fail(format!("w = {w:?}: first block is everything"));
        }
        let delta: Vec<u8> = (1..=n).map(|i| u8::from(i <= i1)).collect();
        let mut winv = vec![0; n];
        for (i, &wi) in w.iter().enumerate() {
            winv[wi - 1] = i + 1;
        }
        let wdelta: Vec<u8> = (1..=n).map(|i| delta[winv[i - 1] - 1]).collect();
        if !(0..n).any(|l| (0..n).all(|i| wdelta[i] == delta[(i + l) % n])) {
            v.fail(format!("w = {w:?}: w·δ is not a shift of δ"));
        }
        for i in 2..=n {
            for j in 1..i {
                let periodic = factors_through(&delta, (i - j).gcd(&n));
                for q in [2i128, 3, 4, 5, 7] {
                    let zero = delta_sum(&delta, q, i, j) == 0;
                    if zero != periodic {
                        v.fail(format!("w = {w:?}, δ = {delta:?}, (i, j) = ({i}, {j}), q = {q}: sum zero {zero}, periodic {periodic}"));
                    }
                }
            }
        }
    }
    v.note(format!("#W_O = {}, predicate true for {empty}, staircase w ≠ 1: {stairs}", ws.len()));
    Ok(v)
}

type Mat = Vec<Vec<Fq>>;

fn matmul(t: &Tower, a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).fold(Fq::ZERO, |acc, k| t.add(acc, t.mul(a[i][k], b[k][j])))).collect()).collect()
}

fn matinv(t: &Tower, a: &Mat) -> Option<Mat> {
    let n = a.len();
    let mut m: Vec<Vec<Fq>> = a.iter().enumerate().map(|(i, r)| r.iter().copied().chain((0..n).map(|j| if i == j { Fq::ONE } else { Fq::ZERO })).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(p, c);
        let inv = t.inv(m[c][c])?;
        m[c].iter_mut().for_each(|e| *e = t.mul(*e, inv));
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c];
                let row_c = m[c].clone();
                for (e, &x) in m[r].iter_mut().zip(&row_c) {
                    *e = t.sub(*e, t.mul(f, x));
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn perm_matrix(w: &Perm) -> Mat {
    let n = w.len();
    let mut m = vec![vec![Fq::ZERO; n]; n];
    for (i, &wi) in w.iter().enumerate() {
        m[wi - 1][i] = Fq::ONE;
    }
    m
}

/// Upper unitriangular matrices with the given strictly-upper entries.
fn unipotent(n: usize, vals: &[Fq]) -> Mat {
    let mut m: Mat = (0..n).map(|i| (0..n).map(|j| if i == j { Fq::ONE } else { Fq::ZERO }).collect()).collect();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            m[i][j] = vals[k];
            k += 1;
        }
    }
    m
}

fn tuples(elems: &[Fq], len: usize) -> Vec<Vec<Fq>> {
    (0..len).fold(vec![Vec::new()], |acc, _| acc.iter().flat_map(|p| elems.iter().map(move |&e| [p.clone(), vec![e]].concat())).collect())
}

/// #Σ̂_w(F_{q^m}) at level one for κ = 0: tuples (x, y₁, τ, y₂) ∈ FU × U × T × U with
/// x·F(τẇ) ∈ y₁τẇy₂·FU, where F(g) = b₀σ(g)b₀⁻¹ and b₀ is the cyclic shift.
pub fn sigma_hat_count(t: &Tower, n: usize, m: u32, w: &Perm) -> Result<u64, LemmaError> {
    let elems = t.elements(m)?;
    let units: Vec<Fq> = elems.iter().copied().filter(|e| !e.is_zero()).collect();
    let b0 = perm_matrix(&(1..=n).map(|i| i % n + 1).collect());
    let b0i = matinv(t, &b0).expect("permutation");
    let frob = |g: &Mat| -> Mat {
        let s: Mat = g.iter().map(|r| r.iter().map(|&e| t.frob(e, 1)).collect()).collect();
        matmul(t, &matmul(t, &b0, &s), &b0i)
    };
    let in_fu = |g: &Mat| -> bool {
        let u = matmul(t, &matmul(t, &b0i, g), &b0);
        (0..n).all(|i| (0..n).all(|j| u[i][j] == if i == j { Fq::ONE } else if i > j { Fq::ZERO } else { u[i][j] }))
    };
    let k = n * (n - 1) / 2;
    let us: Vec<Mat> = tuples(elems, k).iter().map(|v| unipotent(n, v)).collect();
    let fus: Vec<Mat> = us.iter().map(|u| matmul(t, &matmul(t, &b0, u), &b0i)).collect();
    let wd = perm_matrix(w);
    let mut count = 0;
    for tau in tuples(&units, n) {
        let tm: Mat = (0..n).map(|i| (0..n).map(|j| if i == j { tau[i] } else { Fq::ZERO }).collect()).collect();
        let tw = matmul(t, &tm, &wd);
        let ftw = frob(&tw);
        for y1 in &us {
            let left = matmul(t, y1, &tw);
            for y2 in &us {
                let inv = matinv(t, &matmul(t, &left, y2)).expect("invertible");
                for x in &fus {
                    if in_fu(&matmul(t, &matmul(t, &inv, x), &ftw)) {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

/// Direct enumeration of Σ̂_w(F_{q^m}) at h = 1, κ = 0, for every w ∈ S_n: cells with the
/// emptiness predicate must have no points.
pub fn verify_sigma_hat_emptiness(q: u64, n: usize, m: u32) -> Result<LemmaVerdict, LemmaError> {
    let mut v = LemmaVerdict::new("sigma-w-enumeration", format!("q={q} n={n} κ=0 h=1 m={m}"));
    GroupSpec::new(q, n as u32, 0, 1)?;
    let (p, f) = prime_power(q).ok_or(coxdl_torus::SpecError::NotPrimePower(q))?;
    let t = Tower::new(p, f, &[m])?;
    let mut counts = Vec::new();
    for w in weyl_o(n, 1) {
        let c = sigma_hat_count(&t, n, m, &w)?;
        if emptiness_predicate(&w) && c != 0 {
            v.fail(format!("w = {w:?} satisfies the predicate but Σ̂_w has {c} points"));
        }
        counts.push(format!("{w:?}{}:{c}", if emptiness_predicate(&w) { "*" } else { "" }));
    }
    v.note(format!("counts (* = predicate true): {}", counts.join(" ")));
    Ok(v)
}

//! Tableaux with boxes over a finite field, and randomized checks of the identities
//! used for the minor identity.
//!
//! An s × n tableau has entries in F^n; its value is the product of the determinants of its
//! rows. Boxing a set A of entries replaces the value by Σ sgn(π)·π(T) over coset
//! representatives π of Sym(A) modulo the permutations that keep every entry in its row.

use crate::LemmaVerdict;
use coxdl_gf::{Fq, Tower};
use coxdl_witt::series;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Vector = Vec<Fq>;

/// Rows of vectors; every row has n entries in F^n.
#[derive(Clone, Debug)]
pub struct Tableau {
    pub rows: Vec<Vec<Vector>>,
}

impl Tableau {
    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    fn plain(&self, t: &Tower) -> Fq {
        self.rows.iter().fold(Fq::ONE, |acc, row| t.mul(acc, series::field_det(t, row)))
    }

    /// Value with boxes at the given (row, column) positions.
    pub fn value(&self, t: &Tower, boxes: &[(usize, usize)]) -> Fq {
        let mut pos = boxes.to_vec();
        pos.sort_unstable();
        pos.dedup();
        let entries: Vec<&Vector> = pos.iter().map(|&(r, c)| &self.rows[r][c]).collect();
        let mut caps: Vec<(usize, usize)> = Vec::new();
        for &(r, _) in &pos {
            match caps.last_mut() {
                Some((row, k)) if *row == r => *k += 1,
                _ => caps.push((r, 1)),
            }
        }
        let mut total = Fq::ZERO;
        let mut placed = Vec::with_capacity(pos.len());
        let mut used = vec![false; pos.len()];
        self.cosets(t, &pos, &entries, &caps, 0, &mut used, &mut placed, &mut total);
        total
    }

    #[allow(clippy::too_many_arguments)]
    fn cosets(
        &self,
        t: &Tower,
        pos: &[(usize, usize)],
        entries: &[&Vector],
        caps: &[(usize, usize)],
        row: usize,
        used: &mut Vec<bool>,
        placed: &mut Vec<usize>,
        total: &mut Fq,
    ) {
        if row == caps.len() {
            let mut tab = self.clone();
            for (&(r, c), &e) in pos.iter().zip(placed.iter()) {
                tab.rows[r][c] = entries[e].clone();
            }
            let v = tab.plain(t);
            *total = if sign(placed) { t.add(*total, v) } else { t.sub(*total, v) };
            return;
        }
        let free: Vec<usize> = (0..entries.len()).filter(|&e| !used[e]).collect();
        for pick in combinations(&free, caps[row].1) {
            for &e in &pick {
                used[e] = true;
                placed.push(e);
            }
            self.cosets(t, pos, entries, caps, row + 1, used, placed, total);
            for &e in &pick {
                used[e] = false;
                placed.pop();
            }
        }
    }
}

/// Whether the permutation is even.
fn sign(p: &[usize]) -> bool {
    let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    inversions % 2 == 0
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out: Vec<Vec<usize>> = combinations(&items[1..], k - 1)
        .into_iter()
        .map(|mut c| {
            c.insert(0, items[0]);
            c
        })
        .collect();
    out.extend(combinations(&items[1..], k));
    out
}

fn random_vector(t: &Tower, rng: &mut ChaCha8Rng, n: usize) -> Vector {
    let elems = t.elements(t.ambient_degree()).expect("ambient level");
    (0..n).map(|_| elems[rng.gen_range(0..elems.len())]).collect()
}

fn unit(t: &Tower, n: usize, i: usize) -> Vector {
    (0..n).map(|k| if k == i { t.one() } else { t.zero() }).collect()
}

fn random_tableau(t: &Tower, rng: &mut ChaCha8Rng, s: usize, n: usize) -> Tableau {
    Tableau { rows: (0..s).map(|_| (0..n).map(|_| random_vector(t, rng, n)).collect()).collect() }
}

/// The identity Σ_{i≤i₀} (−1)^{i+1} m_i·|V_1…V_{n−1}|_{rows≠i} = |V_0…V_{n−1}|·|V_1…V_{n−i₀}|_{rows>i₀}
/// for independent vectors V_k (standing for σ^k(x)), together with its tableau form: the
/// boxed tableau (e_1 … e_{i₀} V_1 … V_{n−i₀} / V_0 … V_{n−1}) with e_1, …, e_{i₀}, V_0
/// boxed equals ±(rhs − lhs), is unchanged when V_1, …, V_{n−i₀} are boxed too, and so
/// vanishes. Returns (lhs == rhs, tableau checks hold).
pub fn intermediate_identity(t: &Tower, v: &[Vector], i0: usize) -> (bool, bool) {
    let n = v.len();
    let det_rows = |cols: &[&Vector], rows: &[usize]| -> Fq {
        let m: Vec<Vector> = cols.iter().map(|c| rows.iter().map(|&r| c[r]).collect()).collect();
        series::field_det(t, &m)
    };
    let all: Vec<usize> = (0..n).collect();
    let tail_rows: Vec<usize> = (i0..n).collect();
    let mut lhs = Fq::ZERO;
    for i in 0..i0 {
        let rows: Vec<usize> = std::iter::once(i).chain(i0..n).collect();
        let mi = det_rows(&v[..=n - i0].iter().collect::<Vec<_>>(), &rows);
        let others: Vec<usize> = (0..n).filter(|&r| r != i).collect();
        let d = det_rows(&v[1..n].iter().collect::<Vec<_>>(), &others);
        let term = t.mul(mi, d);
        lhs = if i % 2 == 0 { t.add(lhs, term) } else { t.sub(lhs, term) };
    }
    let rhs = t.mul(det_rows(&v.iter().collect::<Vec<_>>(), &all), det_rows(&v[1..=n - i0].iter().collect::<Vec<_>>(), &tail_rows));
    let top: Vec<Vector> = (0..i0).map(|i| unit(t, n, i)).chain(v[1..=n - i0].iter().cloned()).collect();
    let tab = Tableau { rows: vec![top, v.to_vec()] };
    let mut boxes: Vec<(usize, usize)> = (0..i0).map(|c| (0, c)).collect();
    boxes.push((1, 0));
    let small = tab.value(t, &boxes);
    let diff = t.sub(rhs, lhs);
    let sign_ok = small == diff || small == t.neg(diff);
    boxes.extend((i0..n).map(|c| (0, c)));
    let big = tab.value(t, &boxes);
    (lhs == rhs, sign_ok && big == small && big.is_zero())
}

/// Randomized identity tests over the ambient field of `t` (F_{2^12} in the suite).
pub fn verify_turnbull(t: &Tower, trials: usize, seed: u64) -> LemmaVerdict {
    let size = t.ambient_size();
    let mut v = LemmaVerdict::new("turnbull", format!("|F|={size} trials={trials} seed={seed}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0usize;
    for trial in 0..trials {
        // Vanishing for k > n boxed entries, including the 2 × 2 tableau with three boxes.
        let (s, n) = if trial % 4 == 0 { (2, 2) } else { (rng.gen_range(2..=3), rng.gen_range(2..=5)) };
        let tab = random_tableau(t, &mut rng, s, n);
        let mut cells: Vec<(usize, usize)> = (0..s).flat_map(|r| (0..n).map(move |c| (r, c))).collect();
        let k = if (s, n) == (2, 2) { 3 } else { rng.gen_range(n + 1..=(s * n).min(n + 3)) };
        for i in 0..k {
            let j = rng.gen_range(i..cells.len());
            cells.swap(i, j);
        }
        worst = worst.max(s * n);
        if !tab.value(t, &cells[..k]).is_zero() {
            v.fail(format!("trial {trial}: {s}×{n} tableau with {k} boxes {:?} does not vanish", &cells[..k]));
        }

        // Definition on the 2 × 4 example with boxes a_1, b_3, b_4.
        let tab = random_tableau(t, &mut rng, 2, 4);
        let swap = |r: usize, c: usize| {
            let mut u = tab.clone();
            let a1 = u.rows[0][0].clone();
            u.rows[0][0] = u.rows[r][c].clone();
            u.rows[r][c] = a1;
            u.plain(t)
        };
        let expanded = t.sub(t.sub(tab.plain(t), swap(1, 2)), swap(1, 3));
        if tab.value(t, &[(0, 0), (1, 2), (1, 3)]) != expanded {
            v.fail(format!("trial {trial}: 2×4 example expansion differs"));
        }

        // No boxes or a single box: the product of row determinants.
        let tab = random_tableau(t, &mut rng, s, n);
        let prod = tab.rows.iter().fold(t.one(), |acc, r| t.mul(acc, series::field_det(t, r)));
        if tab.value(t, &[]) != prod || tab.value(t, &[(s - 1, n - 1)]) != prod {
            v.fail(format!("trial {trial}: unboxed value is not the product of determinants"));
        }

        // Box transport: an entry that also appears in every other row may be boxed freely.
        let n = rng.gen_range(3..=5);
        let s = rng.gen_range(2..=3);
        let mut tab = random_tableau(t, &mut rng, s, n);
        let shared = random_vector(t, &mut rng, n);
        let cols: Vec<usize> = (0..s).map(|_| rng.gen_range(0..n)).collect();
        for (r, &c) in cols.iter().enumerate() {
            tab.rows[r][c] = shared.clone();
        }
        let mut boxes: Vec<(usize, usize)> = Vec::new();
        for r in 1..s {
            let c = (cols[r] + 1 + rng.gen_range(0..n - 1)) % n;
            boxes.push((r, c));
        }
        let before = tab.value(t, &boxes);
        boxes.push((0, cols[0]));
        if tab.value(t, &boxes) != before {
            v.fail(format!("trial {trial}: boxing a shared entry changed the value"));
        }

        // The determinantal identity behind the minor identity.
        let n = rng.gen_range(3..=5);
        let i0 = rng.gen_range(1..n);
        let vs: Vec<Vector> = (0..n).map(|_| random_vector(t, &mut rng, n)).collect();
        let (eq, tableau) = intermediate_identity(t, &vs, i0);
        if !eq || !tableau {
            v.fail(format!("trial {trial}: n={n} i0={i0} identity {eq}, tableau form {tableau}"));
        }
        worst = worst.max(2 * n);
    }
    v.note(format!("per-trial Schwartz–Zippel bound ≤ {worst}/{size}; seed {seed}"));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_enumeration() {
        assert_eq!(combinations(&[0, 1, 2, 3], 2).len(), 6);
        assert!(sign(&[0, 1, 2]) && !sign(&[1, 0, 2]) && sign(&[2, 0, 1]));
    }
}

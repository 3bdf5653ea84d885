//! Dense linear algebra over F_p on `u32` vectors.

/// Row-reduces `rows` in place (reduced echelon form) and returns the pivot columns.
pub fn rref(rows: &mut [Vec<u32>], p: u32) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = (*v as u64 * inv as u64 % p as u64) as u32;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = (p - row[c]) as u64;
            for (v, &pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                *v = ((*v as u64 + factor * pv as u64) % p as u64) as u32;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r, mut base, mut e) = (1u64, a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Basis of the kernel of the matrix with the given columns (each of length `m`).
pub fn kernel(columns: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let ncols = columns.len();
    let m = columns.first().map_or(0, |c| c.len());
    let mut rows: Vec<Vec<u32>> = (0..m).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    let pivots = rref(&mut rows, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[r][fc]) % p;
            }
            v
        })
        .collect()
}

/// Solutions of `Σ λ_i columns[i] = target`: a particular solution and a kernel basis.
pub fn solve_affine(columns: &[Vec<u32>], target: &[u32], p: u32) -> Option<(Vec<u32>, Vec<Vec<u32>>)> {
    let ncols = columns.len();
    let m = target.len();
    let mut rows: Vec<Vec<u32>> = (0..m)
        .map(|i| {
            let mut r: Vec<u32> = columns.iter().map(|c| c[i]).collect();
            r.push(target[i]);
            r
        })
        .collect();
    let pivots = rref(&mut rows, p);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut part = vec![0u32; ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        part[pc] = rows[r][ncols];
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let kern = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0u32; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[r][fc]) % p;
            }
            v
        })
        .collect();
    Some((part, kern))
}

pub fn rank(columns: &[Vec<u32>], p: u32) -> usize {
    let m = columns.first().map_or(0, |c| c.len());
    let mut rows: Vec<Vec<u32>> = (0..m).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    rref(&mut rows, p).len()
}

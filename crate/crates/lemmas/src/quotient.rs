//! Fibers of α: X_h → (m, x') for κ = 0, compared with #N_h.

use crate::minor::MinorSetup;
use crate::{LemmaError, LemmaVerdict};
use coxdl_gf::{Fq, Tower};
use coxdl_grp::Group;
use coxdl_torus::GroupSpec;
use coxdl_variety::{Model, Point};
use coxdl_witt::series;
use std::collections::BTreeMap;
use std::sync::Arc;

type Target = (Point<Fq>, Point<Fq>);

/// All points of X_h with coordinates in F_{q^m}.
pub fn enumerate_xh(model: &Model, t: &Tower, m: u32, cap: u128) -> Result<Vec<Point<Fq>>, LemmaError> {
    let elems = t.elements(m)?;
    let dim = model.dim();
    let total = (elems.len() as u128).pow(dim as u32);
    if total > cap {
        return Err(LemmaError::Capacity(format!("{total} candidates exceed {cap}")));
    }
    let mut out = Vec::new();
    for k in 0..total {
        let mut r = k;
        let flat: Vec<Fq> = (0..dim)
            .map(|_| {
                let d = elems[(r % elems.len() as u128) as usize];
                r /= elems.len() as u128;
                d
            })
            .collect();
        let x = model.split(&flat);
        if model.in_xh(t, &x) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Number of x with coordinates in F_{q^m} and α(x) = (minors, tail), found by solving
/// m_i(x) = minors_i one ϖ-digit of x_i at a time.
pub fn solve_fiber(setup: &MinorSetup, t: &Tower, target: &Target, m: u32) -> Result<u64, LemmaError> {
    let (minors, tail) = target;
    let (n, h, s) = (setup.full.n(), setup.full.h(), setup.s);
    let elems = t.elements(m)?;
    let mut total = 1u64;
    for i in 0..s {
        // Partial solutions for x_i, extended digit by digit.
        let mut partial: Vec<Vec<Fq>> = vec![vec![Fq::ZERO; h]];
        for j in 0..h {
            let mut next = Vec::new();
            for p in &partial {
                for &c in elems {
                    let mut xi = p.clone();
                    xi[j] = c;
                    let mut x: Point<Fq> = vec![vec![Fq::ZERO; h]; n];
                    x[i] = xi.clone();
                    x[s..].clone_from_slice(tail);
                    let mi = &setup.minors(t, &x)[i];
                    if mi[..=j] == minors[i][..=j] {
                        next.push(xi);
                    }
                }
            }
            partial = next;
        }
        total *= partial.len() as u64;
    }
    Ok(total)
}

/// Checks, for κ = 0 and each M in the schedule: α is N_h-invariant; every fiber of
/// X_h(F_{q^M}) → α-image has #N_h points and agrees with the digit-wise solution count;
/// |g_{i₀}(m)| is a unit; the leading and constant coefficients of the digit equations are
/// units, so each digit has q^{n−i₀} separable solutions over F̄_q; the buckets sum to #X_h.
pub fn verify_quotient_fibers(spec: &GroupSpec, i0: usize, schedule: &[u32]) -> Result<LemmaVerdict, LemmaError> {
    let mut v = LemmaVerdict::new("quotient-fibers", format!("spec={spec} i0={i0} M∈{schedule:?}"));
    if spec.kappa != 0 {
        return Ok(v.skip("only κ = 0 is modelled"));
    }
    let Some(setup) = MinorSetup::new(spec, i0) else {
        return Ok(v.skip(format!("need 1 ≤ i₀ ≤ n − 1 = {}", spec.n - 1)));
    };
    let (q, n, h) = (spec.q, spec.n as usize, spec.h);
    let mut degrees = vec![spec.n];
    degrees.extend_from_slice(schedule);
    let t = Arc::new(Tower::new(spec.p(), spec.f(), &degrees)?);
    let group = Group::with_tower(spec, t.clone())?;
    let radical = group.parabolic_radical(i0 as u32)?;
    let n_order = radical.elements.len() as u64;
    let expect = q.pow((i0 * (n - i0) * h) as u32);
    if n_order != expect {
        v.fail(format!("#N_h = {n_order}, expected q^(i0(n−i0)h) = {expect}"));
    }
    let maps: Vec<_> = radical.elements.iter().map(|&k| setup.full.group_map(&group, group.element(k))).collect();
    let alpha = |x: &Point<Fq>| -> Target { (setup.minors(t.as_ref(), x), setup.tail_of(x)) };
    let tail_n = n - i0;

    for &m in schedule {
        let xs = enumerate_xh(&setup.full, &t, m, 1 << 24)?;
        let mut buckets: BTreeMap<Target, u64> = BTreeMap::new();
        for x in &xs {
            let a = alpha(x);
            for u in &maps {
                let ux = setup.full.split(&u.apply(t.as_ref(), &|c| c, &setup.full.join(x)));
                if alpha(&ux) != a {
                    v.fail(format!("M={m}: α not invariant at x = {x:?}"));
                }
            }
            *buckets.entry(a).or_insert(0) += 1;
        }
        let sum: u64 = buckets.values().sum();
        if sum != xs.len() as u64 {
            v.fail(format!("M={m}: buckets sum to {sum}, #X = {}", xs.len()));
        }
        for (target, &size) in &buckets {
            if size != n_order {
                v.fail(format!("M={m}: fiber over {target:?} has {size} points, #N = {n_order}"));
            }
            let solved = solve_fiber(&setup, &t, target, m)?;
            if solved != size {
                v.fail(format!("M={m}: digit solving finds {solved} points over {target:?}, bucket has {size}"));
            }
            if !series::is_unit(t.as_ref(), &setup.head.det(t.as_ref(), &target.0)) {
                v.fail(format!("M={m}: |g(m)| not a unit at {target:?}"));
            }
            // Coefficients of σ^0 and σ^{n−i₀} in the expansion of m_i along its first row.
            let g = setup.tail.column_matrix(t.as_ref(), &target.1);
            let mut ext = g.clone();
            for row in ext.iter_mut() {
                row.push(series::frob(t.as_ref(), &row[0], tail_n as i64));
            }
            let drop = |k: usize| -> Vec<Vec<Vec<Fq>>> {
                ext.iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != k).map(|(_, e)| e.clone()).collect()).collect()
            };
            let c0 = series::det(t.as_ref(), &drop(0), h);
            let ctop = series::det(t.as_ref(), &drop(tail_n), h);
            if !series::is_unit(t.as_ref(), &c0) || !series::is_unit(t.as_ref(), &ctop) {
                v.fail(format!("M={m}: extreme coefficients not units at {target:?}"));
            }
        }
        let over_closure = q.pow(tail_n as u32).pow((i0 * h) as u32);
        if over_closure != n_order {
            v.fail(format!("separable count {over_closure} ≠ #N = {n_order}"));
        }
        v.note(format!("M={m}: #X = {}, {} fibers, all of size {n_order}", xs.len(), buckets.len()));
    }
    Ok(v)
}

use coxdl_gf::{FieldOps, Fq, Tower};
use coxdl_grp::Group;
use coxdl_torus::{GroupSpec, Torus};
use coxdl_variety::{frobenius, CountCache, Counter, Model};
use coxdl_witt::series;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn spec(q: u64, n: u32, k: u32, h: usize) -> GroupSpec {
    GroupSpec::new(q, n, k, h).unwrap()
}

fn random_flat(tw: &Tower, m: u32, len: usize, rng: &mut ChaCha8Rng) -> Vec<Fq> {
    let el = tw.elements(m).unwrap();
    (0..len).map(|_| el[rng.gen_range(0..el.len())]).collect()
}

/// Random points of X_h over F_{q^m} by rejection.
fn random_points(s: &GroupSpec, tw: &Tower, m: u32, count: usize, seed: u64) -> Vec<Vec<Fq>> {
    let model = Model::new(s);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 200_000 {
        tries += 1;
        let x = random_flat(tw, m, model.dim(), &mut rng);
        if model.in_xh(tw, &model.split(&x)) {
            out.push(x);
        }
    }
    out
}

#[test]
fn a_coefficients() {
    let s = spec(2, 2, 0, 1);
    let model = Model::new(&s);
    let tw = Tower::new(2, 1, &[6]).unwrap();
    for x in tw.elements(2).unwrap() {
        for y in tw.elements(2).unwrap() {
            let p = vec![vec![*x], vec![*y]];
            if model.in_xh(&tw, &p) {
                assert_eq!(model.a_coeffs(&tw, &p).unwrap(), vec![vec![Fq::ZERO]]);
            }
        }
    }
    // Off F_4 (over F_64), the coefficient vanishes exactly when σ²x = x, i.e. never.
    let mut off = 0;
    for x in tw.elements(6).unwrap() {
        for y in tw.elements(6).unwrap() {
            let p = vec![vec![*x], vec![*y]];
            if model.in_xh(&tw, &p) && !(tw.contains(2, *x) && tw.contains(2, *y)) {
                assert!(!model.a_coeffs(&tw, &p).unwrap()[0][0].is_zero());
                off += 1;
            }
        }
    }
    assert!(off > 0);
}

#[test]
fn defining_relation_is_reproduced() {
    for (s, m) in [(spec(2, 2, 0, 2), 4u32), (spec(3, 2, 0, 2), 4), (spec(2, 3, 0, 1), 6), (spec(2, 2, 1, 2), 4), (spec(2, 4, 2, 2), 4)] {
        let model = Model::new(&s);
        let tw = Tower::new(s.p(), s.f(), &[m]).unwrap();
        let h = s.h;
        for x in random_points(&s, &tw, m, 40, 3) {
            let p = model.split(&x);
            let y = model.coefficients(&tw, &p).unwrap();
            assert_eq!(y[0], series::one(&tw, h), "{s}: leading coefficient");
            let cm = model.column_matrix(&tw, &p);
            for (row, cmr) in cm.iter().enumerate() {
                let mut acc = series::zero(&tw, h);
                for (e, yc) in cmr.iter().zip(&y) {
                    acc = series::add(&tw, &acc, &series::mul(&tw, e, yc, h), h);
                }
                let target = series::add(&tw, &series::frob(&tw, &p[row], s.n as i64), &[], h);
                let keep = model.precision(row);
                assert_eq!(acc[..keep], target[..keep], "{s}");
            }
        }
    }
}

#[test]
fn determinant_is_independent_of_lift() {
    // Coordinates of precision h − 1 only enter the determinant multiplied by ϖ.
    for s in [spec(2, 2, 1, 2), spec(2, 3, 1, 2), spec(2, 4, 2, 2)] {
        let model = Model::new(&s);
        let tw = Tower::new(2, 1, &[4]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let x = model.split(&random_flat(&tw, 4, model.dim(), &mut rng));
            let base = model.det(&tw, &x);
            let mut lifted = x.clone();
            for (i, c) in lifted.iter_mut().enumerate() {
                if model.precision(i) < s.h {
                    c.push(tw.elements(4).unwrap()[rng.gen_range(0..16)]);
                }
            }
            let cm = model.column_matrix(&tw, &lifted);
            assert_eq!(series::det(&tw, &cm, s.h), base, "{s}");
        }
    }
}

#[test]
fn stratum_is_everything_when_n_prime_is_one() {
    let s = spec(2, 2, 1, 2);
    let model = Model::new(&s);
    let tw = Tower::new(2, 1, &[4]).unwrap();
    for x in random_points(&s, &tw, 4, 30, 1) {
        assert!(model.in_closed_stratum(&tw, &model.split(&x)));
    }
    let s = spec(2, 2, 0, 1);
    let model = Model::new(&s);
    for x in random_points(&s, &tw, 4, 30, 1) {
        assert!(model.in_closed_stratum(&tw, &model.split(&x)));
    }
}

#[test]
fn actions_preserve_x_and_scale_determinant() {
    for s in [spec(2, 2, 0, 2), spec(2, 2, 1, 2), spec(3, 2, 0, 1), spec(2, 3, 1, 2)] {
        let group = Group::new(&s).unwrap();
        let model = Model::new(&s);
        let m = 2 * s.n;
        let tw = Tower::new(s.p(), s.f(), &[m]).unwrap();
        let gt = group.tower();
        // Identify the group's F_{q^n} inside the larger tower through matching polynomials.
        let emb = |x: Fq| -> Fq {
            let c = gt.coeffs(s.n, x).unwrap();
            let w = tw.generator(s.n).unwrap();
            c.iter().enumerate().fold(Fq::ZERO, |acc, (i, &ci)| tw.add(acc, tw.mul(tw.from_u64(ci as u64), tw.pow(w, i as u128))))
        };
        let torus = Torus::for_spec(gt.clone(), &s);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for x in random_points(&s, &tw, m, 10, 2) {
            let d = model.det(&tw, &model.split(&x));
            for _ in 0..10 {
                let gi = rng.gen_range(0..group.order());
                let g = group.element(gi);
                let gx = model.group_map(&group, g).apply(&tw, &emb, &x);
                assert!(model.in_xh(&tw, &model.split(&gx)), "{s}");
                if let Some(dg) = group.det(g) {
                    let dg: Vec<Fq> = dg.into_iter().map(emb).collect();
                    assert_eq!(model.det(&tw, &model.split(&gx)), series::mul(&tw, &dg, &d, s.h));
                }
                let ti = rng.gen_range(0..torus.order());
                let tx = model.torus_map(gt, torus.element(ti)).apply(&tw, &emb, &x);
                assert!(model.in_xh(&tw, &model.split(&tx)));
                let nm: Vec<Fq> = torus.element(ti).nm(gt, s.n, 1).unwrap().digits().iter().map(|&c| emb(c)).collect();
                assert_eq!(model.det(&tw, &model.split(&tx)), series::mul(&tw, &nm, &d, s.h));
                // Actions commute with each other and with F^n.
                let gtx = model.group_map(&group, g).apply(&tw, &emb, &tx);
                let tgx = model.torus_map(gt, torus.element(ti)).apply(&tw, &emb, &gx);
                assert_eq!(gtx, tgx);
                let fgx = frobenius(&tw, &gx, s.n as i64);
                let gfx = model.group_map(&group, g).apply(&tw, &emb, &frobenius(&tw, &x, s.n as i64));
                assert_eq!(fgx, gfx);
            }
        }
    }
}

#[test]
fn action_is_a_homomorphism() {
    for s in [spec(2, 2, 0, 2), spec(2, 2, 1, 3), spec(2, 3, 2, 2)] {
        let group = Group::new(&s).unwrap();
        let model = Model::new(&s);
        let tw = group.tower().as_ref();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let a = group.element(rng.gen_range(0..group.order()));
            let b = group.element(rng.gen_range(0..group.order()));
            let lhs = model.group_map(&group, &group.mul(a, b));
            let rhs = model.group_map(&group, a).compose(tw, &model.group_map(&group, b));
            assert_eq!(lhs, rhs, "{s}");
        }
    }
}

#[test]
fn counts_are_class_functions() {
    let s = spec(2, 2, 0, 2);
    let group = Arc::new(Group::new(&s).unwrap());
    let torus = Arc::new(Torus::for_spec(group.tower().clone(), &s));
    let c = Counter::new(group.clone(), torus.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..25 {
        let g = group.element(rng.gen_range(0..group.order()));
        let k = group.element(rng.gen_range(0..group.order()));
        let t = rng.gen_range(0..torus.order());
        assert_eq!(c.count_s(&group.conjugate(k, g), t).unwrap(), c.count_s(g, t).unwrap());
    }
    let s = spec(2, 2, 1, 2);
    let group = Arc::new(Group::new(&s).unwrap());
    let torus = Arc::new(Torus::for_spec(group.tower().clone(), &s));
    let c = Counter::new(group.clone(), torus.clone());
    for _ in 0..25 {
        let g = group.element(rng.gen_range(0..group.order()));
        let k = group.element(rng.gen_range(0..group.order()));
        let t = rng.gen_range(0..torus.order());
        assert_eq!(c.count_s(&group.conjugate(k, g), t).unwrap(), c.count_s(g, t).unwrap());
    }
}

#[test]
fn untwisted_fixed_space() {
    let s = spec(2, 2, 0, 1);
    let group = Arc::new(Group::new(&s).unwrap());
    let torus = Arc::new(Torus::for_spec(group.tower().clone(), &s));
    let c = Counter::new(group.clone(), torus);
    let fix = c.fixed_space(&group.identity(), 0).unwrap();
    let ext = &fix.field.ext;
    let mut n = 0;
    fix.for_each_point(|x| {
        assert!(x.iter().all(|v| ext.frob(v, 2) == *v));
        n += 1;
    });
    assert_eq!(n, 16);
    assert_eq!(FieldOps::from_i64(ext, 3), ext.one());
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    {
        let mut c = CountCache::open(dir.path()).unwrap();
        c.insert([2, 2, 0, 1], 1, 2, 99, 6).unwrap();
        c.insert([2, 2, 0, 1], 2, 0, 98, 0).unwrap();
    }
    let mut c = CountCache::open(dir.path()).unwrap();
    assert_eq!(c.len(), 2);
    assert_eq!(c.get([2, 2, 0, 1], 1, 2, 99), Some(6));
    assert_eq!(c.get([2, 2, 0, 1], 1, 2, 5), None);
    assert_eq!((c.hits, c.misses), (1, 1));
}

#[test]
fn cache_per_spec_files_and_compaction() {
    let dir = tempfile::tempdir().unwrap();
    {
        let mut c = CountCache::open(dir.path()).unwrap();
        c.insert([2, 2, 0, 1], 0, 0, 1, 6).unwrap();
        c.insert([2, 2, 0, 1], 0, 0, 1, 6).unwrap();
        c.insert([3, 2, 0, 1], 0, 1, 2, 0).unwrap();
    }
    let a = dir.path().join("scounts-2-2-0-1.jsonl");
    assert!(dir.path().join("scounts-3-2-0-1.jsonl").exists());
    let mut text = std::fs::read_to_string(&a).unwrap();
    text.push_str("{not json\n");
    text.push_str(&text.lines().next().unwrap().replace("\"v\":1", "\"v\":0"));
    text.push('\n');
    std::fs::write(&a, text).unwrap();
    let c = CountCache::open(dir.path()).unwrap();
    assert_eq!((c.len(), c.skipped), (2, 2));
    c.compact().unwrap();
    assert_eq!(std::fs::read_to_string(&a).unwrap().lines().count(), 1);
    let mut c = CountCache::open(dir.path()).unwrap();
    assert_eq!((c.get([2, 2, 0, 1], 0, 0, 1), c.skipped), (Some(6), 0));
}

use coxdl_grp::Group;
use coxdl_torus::{GroupSpec, Torus};
use coxdl_variety::{frobenius, Counter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn counter(q: u64, n: u32, k: u32, h: usize) -> Counter {
    let s = GroupSpec::new(q, n, k, h).unwrap();
    let g = Arc::new(Group::new(&s).unwrap());
    let t = Arc::new(Torus::for_spec(g.tower().clone(), &s));
    Counter::new(g, t)
}

#[test]
fn layered_matches_enumeration() {
    let c = counter(2, 2, 0, 2);
    let cc = c.group().conjugacy_classes().unwrap();
    let mut nonzero = 0;
    for &r in &cc.reps {
        let g = c.group().element(r);
        for t in 0..c.torus().order() {
            let a = c.count_s_layered(g, t).unwrap();
            let b = c.count_s_enumerate(g, t).unwrap();
            assert_eq!(a, b, "class {r} t {t}");
            nonzero += usize::from(a > 0);
        }
    }
    assert!(nonzero > 1);
}

#[test]
fn layered_matches_enumeration_q3() {
    let c = counter(3, 2, 0, 2);
    let cc = c.group().conjugacy_classes().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for &r in &cc.reps {
        let g = c.group().element(r);
        for t in 0..c.torus().order() {
            let a = c.count_s_layered(g, t).unwrap();
            if a > 0 || rng.gen_ratio(1, 200) {
                if checked < 6 {
                    assert_eq!(a, c.count_s_enumerate(g, t).unwrap(), "class {r} t {t}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 3);
}

#[test]
fn fixed_points_are_fixed() {
    let c = counter(2, 2, 0, 2);
    let tw = c.group().tower().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let g = c.group().element(rng.gen_range(0..c.group().order())).clone();
        let t = rng.gen_range(0..c.torus().order());
        let fix = c.fixed_space(&g, t).unwrap();
        assert_eq!(fix.basis.len(), 8);
        let a = c.twist_map(&g, t);
        let ext = &fix.field.ext;
        let emb = |x| fix.field.embed(&tw, x);
        let mut seen = 0;
        fix.for_each_point(|x| {
            assert_eq!(a.apply(ext, &emb, &frobenius(ext, x, 2)), x.to_vec());
            seen += 1;
        });
        assert_eq!(seen, 256);
    }
}

use coxdl_gf::{Fq, Tower};
use coxdl_grp::{group_order, Group};
use coxdl_torus::{GroupSpec, Torus};
use coxdl_variety::{count_points, Counter, Model};
use std::sync::Arc;

fn spec(q: u64, n: u32, k: u32, h: usize) -> GroupSpec {
    GroupSpec::new(q, n, k, h).unwrap()
}

fn counter(s: &GroupSpec) -> Counter {
    let g = Arc::new(Group::new(s).unwrap());
    let t = Arc::new(Torus::for_spec(g.tower().clone(), s));
    Counter::new(g, t)
}

#[test]
fn rational_points_equal_group_order() {
    for s in [spec(2, 2, 0, 1), spec(2, 2, 0, 2), spec(2, 3, 0, 1), spec(2, 2, 1, 1), spec(2, 2, 1, 2), spec(3, 2, 0, 2)] {
        assert_eq!(count_points(&s, s.n).unwrap() as u128, group_order(&s), "{s}");
    }
    assert_eq!(count_points(&spec(2, 2, 0, 1), 1).unwrap(), 0);
}

#[test]
fn untwisted_counts() {
    for s in [spec(2, 2, 0, 1), spec(2, 2, 0, 2), spec(2, 2, 1, 2), spec(3, 2, 0, 1)] {
        let c = counter(&s);
        let id = c.group().identity();
        assert_eq!(c.count_s(&id, 0).unwrap() as u128, group_order(&s), "{s}");
        for t in 1..c.torus().order() {
            assert_eq!(c.count_s(&id, t).unwrap(), 0, "{s} t={t}");
        }
    }
}

#[test]
fn column_matrix_example() {
    let s = spec(2, 2, 0, 1);
    let m = Model::new(&s);
    let tw = Tower::new(2, 1, &[2]).unwrap();
    let w = tw.generator(2).unwrap();
    let x = vec![vec![Fq::ONE], vec![w]];
    let cm = m.column_matrix(&tw, &x);
    assert_eq!(cm[0][0], vec![Fq::ONE]);
    assert_eq!(cm[0][1], vec![Fq::ONE]);
    assert_eq!(cm[1][0], vec![w]);
    assert_eq!(cm[1][1], vec![tw.mul(w, w)]);
    assert_eq!(m.det(&tw, &x), vec![Fq::ONE]);
    assert!(m.in_xh(&tw, &x));
    assert!(!m.in_xh(&tw, &vec![vec![Fq::ONE], vec![Fq::ONE]]));
}

use coxdl_dlchar::Pipeline;
use coxdl_langlands::{formal_degree_check, rectifier, verify_param_bijection, WeilModel};
use coxdl_torus::{Cyclo, GroupSpec};

#[test]
fn rectifier_values() {
    assert_eq!(rectifier(2), -1);
    assert_eq!(rectifier(3), 1);
    assert_eq!(rectifier(4), -1);
}

#[test]
fn group_law() {
    for (q, n, h, m) in [(2u64, 2u32, 1usize, 1u64), (2, 3, 1, 2), (3, 2, 2, 1)] {
        let w = WeilModel::new(q, n, h, m).unwrap();
        assert_eq!(w.order(), n as usize * w.a_order());
        let e = w.identity();
        let els: Vec<_> = w.elements().collect();
        for (i, &x) in els.iter().enumerate() {
            assert_eq!(w.index(x), i);
            assert_eq!(w.mul(x, w.inv(x)), e);
            assert_eq!(w.mul(w.inv(x), x), e);
        }
        for &x in els.iter().step_by(5) {
            for &y in els.iter().step_by(3) {
                for &z in els.iter().step_by(11) {
                    assert_eq!(w.mul(w.mul(x, y), z), w.mul(x, w.mul(y, z)));
                }
                // A is normal.
                if w.in_a(y) {
                    assert!(w.in_a(w.mul(w.mul(x, y), w.inv(x))));
                }
            }
        }
        // F^n = ϖ.
        let f = w.element(w.index(coxdl_langlands::WeilElement { unit: 0, pi: 0, frob: 1 }));
        let mut p = e;
        for _ in 0..n {
            p = w.mul(p, f);
        }
        assert_eq!(p, coxdl_langlands::WeilElement { unit: 0, pi: 1 % w.pi_order(), frob: 0 });
    }
}

#[test]
fn quadratic_example() {
    let w = WeilModel::new(2, 2, 1, 1).unwrap();
    assert_eq!((w.a_order(), w.order()), (6, 12));
    let t = w.torus().clone();
    let chars = t.characters();
    let gp: Vec<_> = chars.iter().filter(|c| t.is_general_position(c, false)).collect();
    let s = w.sigma_theta(gp[0], (1, 0)).unwrap();
    assert_eq!(s.values[0], Cyclo::from_int(1, 2));
    assert_eq!(w.inner_product(&s, &s).as_integer(), Some(1));
    assert_eq!(w.sigma_theta(gp[1], (1, 0)).unwrap(), s);
    let triv = w.sigma_theta(&t.trivial(), (1, 0)).unwrap();
    assert_eq!(w.inner_product(&triv, &triv).as_integer(), Some(2));
    let v = verify_param_bijection(&w, &chars, (1, 0)).unwrap();
    assert!(v.pass, "{v}");
}

#[test]
fn pi_value_consistency() {
    let w = WeilModel::new(2, 2, 1, 1).unwrap();
    let t = w.torus().clone();
    // (ζ·μ(ϖ))^2 = 1 needs ζ = ±1.
    assert!(w.sigma_theta(&t.trivial(), (2, 1)).is_ok());
    assert!(w.sigma_theta(&t.trivial(), (4, 1)).is_err());
    let w = WeilModel::new(2, 2, 1, 2).unwrap();
    let v = verify_param_bijection(&w, &t.characters(), (4, 1)).unwrap();
    assert!(v.pass, "{v}");
}

#[test]
fn exhaustive_small() {
    for (q, n) in [(2u64, 2u32), (3, 2), (2, 3)] {
        let w = WeilModel::new(q, n, 1, 1).unwrap();
        let chars = w.torus().characters();
        if (q, n) == (3, 2) {
            assert_eq!(chars.len(), 8);
        }
        let v = verify_param_bijection(&w, &chars, (1, 0)).unwrap();
        assert!(v.pass, "{v}");
    }
    let w = WeilModel::new(3, 2, 1, 2).unwrap();
    let v = verify_param_bijection(&w, &w.torus().characters(), (4, 1)).unwrap();
    assert!(v.pass, "{v}");
}

#[test]
fn level_two_sample() {
    let w = WeilModel::new(2, 2, 2, 1).unwrap();
    let chars: Vec<_> = w.torus().characters().into_iter().step_by(2).collect();
    let v = verify_param_bijection(&w, &chars, (1, 0)).unwrap();
    assert!(v.pass, "{v}");
}

#[test]
fn formal_degrees() {
    for (spec, deg, vol) in [
        (GroupSpec::new(3, 2, 0, 2).unwrap(), 6u128, (1u128, 1u128)),
        (GroupSpec::new(2, 2, 1, 2).unwrap(), 2, (1, 2)),
        (GroupSpec::new(3, 2, 0, 1).unwrap(), 2, (1, 1)),
    ] {
        let p = Pipeline::new(&spec).unwrap();
        let theta = p.general_position_characters().into_iter().next().unwrap();
        let (v, fd) = formal_degree_check(&p, &theta).unwrap();
        assert!(v.pass, "{v}");
        assert_eq!((fd.formula, fd.volume), (deg, vol));
        let g = num_integer::gcd(deg * vol.1, vol.0);
        assert_eq!(fd.formal_degree, (deg * vol.1 / g, vol.0 / g));
    }
}

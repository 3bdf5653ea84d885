use coxdl_dlchar::{classical_gl2_oracle, DlError, Pipeline};
use coxdl_torus::{Cyclo, GroupSpec};

fn pipeline(q: u64, n: u32, kappa: u32, h: usize) -> Pipeline {
    Pipeline::new(&GroupSpec::new(q, n, kappa, h).unwrap()).unwrap()
}

#[test]
fn matches_classical_gl2_characters() {
    for q in [2u64, 3, 4] {
        let p = pipeline(q, 2, 0, 1);
        let gp = p.general_position_characters();
        assert_eq!(gp.len() as u64, q * q - q);
        for theta in gp {
            let rep = p.extract(&theta).unwrap();
            assert_eq!(rep.chi, classical_gl2_oracle(&p, &theta).unwrap(), "q={q} {theta}");
            assert_eq!(rep.degree(), q as i128 - 1);
        }
    }
}

#[test]
fn frobenius_scalars() {
    let cases = [((2, 2, 0, 1), 2, 1, -2, 1), ((3, 2, 0, 2), 54, 2, 9, 6), ((2, 2, 1, 2), 4, 1, -2, 2)];
    for ((q, n, k, h), c1, r, lambda, deg) in cases {
        let p = pipeline(q, n, k, h);
        let one = p.identity_class();
        for theta in p.general_position_characters() {
            let c = p.c_function(&theta);
            assert_eq!(c.values[one].as_integer().map(i128::abs), Some(c1));
            let rep = p.extract(&theta).unwrap();
            assert_eq!((rep.r, rep.lambda, rep.degree()), (r, lambda, deg), "{theta} at ({q},{n},{k},{h})");
            assert!(rep.r_matches());
            assert_eq!(rep.flipped, r % 2 == 1);
        }
    }
}

#[test]
fn projections_sum_to_the_untwisted_count() {
    for (q, n, k, h) in [(2, 2, 0, 2), (2, 2, 1, 2), (2, 3, 0, 1)] {
        let p = pipeline(q, n, k, h);
        let e = p.torus().conductor();
        let mut total = vec![Cyclo::zero(e); p.classes().count()];
        for theta in p.torus().characters() {
            for (acc, v) in total.iter_mut().zip(p.c_function(&theta).values) {
                *acc = &*acc + &v;
            }
        }
        for (c, v) in total.iter().enumerate() {
            assert_eq!(v.as_integer(), Some(p.table().counts[c][0] as i128));
        }
    }
}

#[test]
fn galois_conjugates_give_the_same_character() {
    let p = pipeline(3, 2, 0, 2);
    for theta in p.general_position_characters().into_iter().take(12) {
        let chi = p.extract(&theta).unwrap().chi;
        for other in p.torus().galois_orbit(&theta) {
            assert_eq!(p.extract(&other).unwrap().chi, chi);
        }
    }
}

#[test]
fn non_general_position_is_reported() {
    let p = pipeline(2, 2, 0, 1);
    assert!(matches!(p.extract(&p.torus().trivial()), Err(DlError::Concentration { .. })));
}

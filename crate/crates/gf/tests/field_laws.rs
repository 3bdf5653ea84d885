use coxdl_gf::{ExtField, Fq, Tower, TowerEmbedding};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn towers() -> Vec<Tower> {
    vec![
        Tower::new(2, 1, &[1, 2, 4]).unwrap(),
        Tower::new(2, 1, &[6]).unwrap(),
        Tower::new(3, 1, &[2, 3]).unwrap(),
        Tower::new(5, 1, &[2]).unwrap(),
        Tower::new(2, 2, &[2]).unwrap(),
    ]
}

#[test]
fn supported_levels_are_divisor_closed() {
    let t = Tower::new(2, 1, &[1, 2, 4]).unwrap();
    assert_eq!(t.supported_degrees(), vec![1, 2, 4]);
    assert_eq!(t.elements(2).unwrap().len(), 4);
    assert_eq!(t.elements(4).unwrap().len(), 16);
    let t = Tower::new(2, 1, &[3]).unwrap();
    assert_eq!(t.elements(3).unwrap().len(), 8);
}

#[test]
fn prime_field_enumeration_order() {
    let t = Tower::new(2, 1, &[2]).unwrap();
    assert_eq!(t.elements(1).unwrap(), &[t.zero(), t.one()]);
    let t = Tower::new(3, 1, &[1]).unwrap();
    assert_eq!(t.elements(1).unwrap(), &[t.zero(), t.one(), t.from_u64(2)]);
}

#[test]
fn enumeration_is_a_bijection_onto_the_subfield() {
    for t in towers() {
        for m in t.supported_degrees() {
            let elems = t.elements(m).unwrap();
            let mut seen = std::collections::HashSet::new();
            for &x in elems {
                assert!(seen.insert(x));
                assert_eq!(t.frob(x, m as i64), x);
            }
            assert_eq!(elems.len() as u64, t.q_pow(m));
            assert_eq!(elems.iter().filter(|x| x.is_zero()).count(), 1);
            for (k, &x) in elems.iter().enumerate() {
                assert_eq!(t.index_of(m, x), Some(k));
                let c = t.coeffs(m, x).unwrap();
                assert_eq!(t.from_coeffs(m, &c).unwrap(), x);
            }
        }
    }
}

#[test]
fn multiplicative_order_divides_field_order_exhaustive() {
    for t in towers() {
        for m in t.supported_degrees() {
            let e = t.q_pow(m) as u128 - 1;
            for &x in t.elements(m).unwrap().iter().filter(|x| !x.is_zero()) {
                assert_eq!(t.pow(x, e), t.one());
            }
        }
    }
    let t = Tower::new(2, 1, &[16]).unwrap();
    let e = (1u128 << 16) - 1;
    for &x in t.elements(16).unwrap().iter().filter(|x| !x.is_zero()) {
        assert_eq!(t.pow(x, e), t.one());
    }
}

#[test]
fn frobenius_is_a_ring_map_exhaustive_small() {
    let t = Tower::new(2, 1, &[10]).unwrap();
    let xs = t.elements(10).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for &x in xs {
        let y = xs[rng.gen_range(0..xs.len())];
        for i in [-3i64, -1, 1, 2, 5] {
            assert_eq!(t.frob(t.add(x, y), i), t.add(t.frob(x, i), t.frob(y, i)));
            assert_eq!(t.frob(t.mul(x, y), i), t.mul(t.frob(x, i), t.frob(y, i)));
        }
        assert_eq!(t.frob(t.frob(x, 1), -1), x);
    }
}

#[test]
fn embeddings_preserve_minimal_polynomials_and_compose() {
    let t = Tower::new(2, 1, &[8]).unwrap();
    let w = t.generator(2).unwrap();
    let z = t.embed(w, 2, 4).unwrap();
    assert_eq!(t.add(t.add(t.mul(z, z), z), t.one()), t.zero());
    let direct = t.embed(w, 2, 8).unwrap();
    let chained = t.embed(t.embed(w, 2, 4).unwrap(), 4, 8).unwrap();
    assert_eq!(direct, chained);
    assert_eq!(t.embed(t.one(), 1, 8).unwrap(), t.one());
    assert!(t.embed(w, 2, 3).is_err());
    assert!(t.embed(t.generator(4).unwrap(), 2, 8).is_err());
}

#[test]
fn generators_satisfy_their_defining_polynomials() {
    for t in towers() {
        for m in t.supported_degrees() {
            let w = t.generator(m).unwrap();
            let f = t.defining_poly(m).unwrap();
            let v = f.iter().rev().fold(Fq::ZERO, |acc, &c| t.add(t.mul(acc, w), t.from_u64(c as u64)));
            assert!(v.is_zero());
            assert_eq!(t.level_of(t.primitive(m).unwrap()), m);
        }
    }
}

#[test]
fn large_extension_contains_tower() {
    for (p, d, amb) in [(2u64, 84usize, 6u32), (3, 48, 2), (2, 24, 3)] {
        let e = ExtField::new(p, 1, d).unwrap();
        let t = Tower::new(p, 1, &[amb]).unwrap();
        let emb = TowerEmbedding::new(&t, &e).unwrap();
        let g = t.primitive(amb).unwrap();
        let gi = emb.map(&t, &e, g);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = t.from_log(rng.gen_range(0..1000));
            let b = t.from_log(rng.gen_range(0..1000));
            let ea = emb.map(&t, &e, a);
            let eb = emb.map(&t, &e, b);
            assert_eq!(emb.map(&t, &e, t.mul(a, b)), e.mul(&ea, &eb));
            assert_eq!(emb.map(&t, &e, t.add(a, b)), e.add(&ea, &eb));
            assert_eq!(emb.map(&t, &e, t.frob(a, 1)), e.frob(&ea, 1));
        }
        assert_eq!(e.frob(&gi, amb as i64), gi);
    }
}

proptest! {
    #[test]
    fn ring_axioms(a in 0u64..4095, b in 0u64..4095, c in 0u64..4095, which in 0usize..5) {
        let ts = towers();
        let t = &ts[which];
        let n = t.ambient_size() - 1;
        let pick = |k: u64| if k % 17 == 0 { t.zero() } else { t.from_log(k % n) };
        let (x, y, z) = (pick(a), pick(b), pick(c));
        prop_assert_eq!(t.add(x, y), t.add(y, x));
        prop_assert_eq!(t.mul(x, y), t.mul(y, x));
        prop_assert_eq!(t.add(t.add(x, y), z), t.add(x, t.add(y, z)));
        prop_assert_eq!(t.mul(t.mul(x, y), z), t.mul(x, t.mul(y, z)));
        prop_assert_eq!(t.mul(x, t.add(y, z)), t.add(t.mul(x, y), t.mul(x, z)));
        prop_assert_eq!(t.add(x, t.neg(x)), t.zero());
        prop_assert_eq!(t.sub(t.add(x, y), y), x);
        if !x.is_zero() {
            prop_assert_eq!(t.mul(x, t.inv(x).unwrap()), t.one());
        }
    }

    #[test]
    fn ext_ring_axioms(seed in 0u64..1000) {
        let e = ExtField::new(3, 1, 10).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut r = || (0..10).map(|_| rng.gen_range(0..3)).collect::<Vec<u32>>();
        let (x, y, z) = (r(), r(), r());
        prop_assert_eq!(e.mul(&x, &e.add(&y, &z)), e.add(&e.mul(&x, &y), &e.mul(&x, &z)));
        prop_assert_eq!(e.mul(&e.mul(&x, &y), &z), e.mul(&x, &e.mul(&y, &z)));
        prop_assert_eq!(e.frob(&e.mul(&x, &y), 3), e.mul(&e.frob(&x, 3), &e.frob(&y, 3)));
        if !e.is_zero(&x) {
            prop_assert_eq!(e.mul(&x, &e.inv(&x).unwrap()), e.one());
        }
    }
}

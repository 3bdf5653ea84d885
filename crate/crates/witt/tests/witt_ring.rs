use coxdl_gf::Tower;
use coxdl_witt::{enumerate, enumerate_units, Witt, WittError};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn w(t: &Tower, m: u32, digits: &[coxdl_gf::Fq]) -> Witt {
    let _ = t;
    Witt::new(m, digits.to_vec())
}

#[test]
fn basic_identities_in_w2_f2() {
    let t = Tower::new(2, 1, &[2]).unwrap();
    let one_plus = w(&t, 1, &[t.one(), t.one()]);
    assert_eq!(one_plus.mul(&t, &one_plus), Witt::one(1, 2));
    assert_eq!(one_plus.inv(&t).unwrap(), one_plus);
    let pi = Witt::uniformizer_pow(1, 3, 1);
    assert!(pi.pow(&t, 3).is_zero());
    assert_eq!(pi.inv(&t), Err(WittError::NonUnit));
    assert_eq!(Witt::one(1, 2).unit_level().unwrap(), 2);
    assert_eq!(one_plus.unit_level().unwrap(), 1);
    let om = t.generator(2).unwrap();
    assert_eq!(Witt::constant(2, 2, om).unit_level().unwrap(), 0);
    assert_eq!(Witt::zero(2, 2).unit_level(), Err(WittError::NonUnit));
}

#[test]
fn norm_and_trace_examples_in_f4() {
    let t = Tower::new(2, 1, &[2]).unwrap();
    let om = t.generator(2).unwrap();
    let x = Witt::constant(2, 1, om);
    assert_eq!(x.nm(&t, 2, 1).unwrap(), Witt::one(2, 1));
    assert_eq!(x.nm(&t, 2, 2).unwrap(), x);
    let y = w(&t, 2, &[t.one(), om]);
    assert_eq!(y.nm(&t, 2, 1).unwrap(), w(&t, 2, &[t.one(), t.one()]));
    assert_eq!(x.tr_additive(&t, 2), Witt::one(2, 1));
    assert_eq!(x.tr_additive(&t, 1), x);
    assert_eq!(x.nm(&t, 3, 2), Err(WittError::NotDivisor { r: 3, s: 2 }));
}

#[test]
fn sigma_examples() {
    let t = Tower::new(3, 1, &[2]).unwrap();
    let a = t.generator(2).unwrap();
    let b = t.add(a, t.one());
    let x = w(&t, 2, &[a, b]);
    assert_eq!(x.sigma(&t, 1), w(&t, 2, &[t.frob(a, 1), t.frob(b, 1)]));
    assert_eq!(x.sigma(&t, 2), x);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let all = enumerate(&t, 2, 2);
    for _ in 0..1000 {
        let u = &all[rng.gen_range(0..all.len())];
        let v = &all[rng.gen_range(0..all.len())];
        assert_eq!(u.mul(&t, v).sigma(&t, 1), u.sigma(&t, 1).mul(&t, &v.sigma(&t, 1)));
    }
}

#[test]
fn trace_telescopes() {
    let t = Tower::new(2, 1, &[12]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let y = Witt::constant(12, 1, t.from_log(rng.gen_range(0..4095)));
        for d in [1u32, 2, 3, 5] {
            let lhs = y.sigma(&t, 1).sub(&t, &y).tr_additive(&t, d);
            assert_eq!(lhs, y.sigma(&t, d as i64).sub(&t, &y));
        }
    }
}

fn cases() -> Vec<(u64, u32)> {
    vec![(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)]
}

#[test]
fn norm_is_multiplicative_and_transitive() {
    for (q, n) in cases() {
        let t = Tower::new(q, 1, &[n]).unwrap();
        let units = enumerate_units(&t, n, 2, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(q * 10 + n as u64);
        let divs: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
        for x in &units {
            let y = &units[rng.gen_range(0..units.len())];
            for &s in &divs {
                let nx = x.nm(&t, n, s).unwrap();
                assert!(nx.is_rational(&t, s));
                assert_eq!(x.mul(&t, y).nm(&t, n, s).unwrap(), nx.mul(&t, &y.nm(&t, n, s).unwrap()));
                for &s2 in divs.iter().filter(|&&s2| s2 % s == 0) {
                    let two_step = x.nm(&t, n, s2).unwrap().nm(&t, s2, s).unwrap();
                    assert_eq!(two_step, nx);
                }
            }
        }
    }
}

#[test]
fn norm_surjective_on_filtration_quotients() {
    for (q, n) in cases() {
        let t = Tower::new(q, 1, &[n]).unwrap();
        for h in 2..=3usize {
            let divs: Vec<u32> = (1..n).filter(|d| n % d == 0).collect();
            for a in 1..h {
                let units = enumerate_units(&t, n, h, a);
                for &s in &divs {
                    let image: BTreeSet<Witt> = units.iter().map(|x| x.nm(&t, n, s).unwrap()).collect();
                    let target: BTreeSet<Witt> =
                        units.iter().filter(|x| x.is_rational(&t, s)).cloned().collect();
                    assert_eq!(image, target, "q={q} n={n} h={h} a={a} s={s}");
                }
            }
        }
    }
}

#[test]
fn hilbert_90_on_units() {
    for (q, n) in cases() {
        let t = Tower::new(q, 1, &[n]).unwrap();
        let units = enumerate_units(&t, n, 2, 0);
        for s in (1..n).filter(|d| n % d == 0) {
            let image: BTreeSet<Witt> =
                units.iter().map(|x| x.inv(&t).unwrap().mul(&t, &x.sigma(&t, s as i64))).collect();
            let kernel: BTreeSet<Witt> = units
                .iter()
                .filter(|x| x.nm(&t, n, s).unwrap() == Witt::one(n, 2))
                .cloned()
                .collect();
            assert_eq!(image, kernel, "q={q} n={n} s={s}");
        }
    }
}

proptest! {
    #[test]
    fn ring_laws(seed in 0u64..10_000) {
        let t = Tower::new(3, 1, &[2]).unwrap();
        let all = enumerate(&t, 2, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = || all[rng.gen_range(0..all.len())].clone();
        let (x, y, z) = (pick(), pick(), pick());
        prop_assert_eq!(x.mul(&t, &y.add(&t, &z)), x.mul(&t, &y).add(&t, &x.mul(&t, &z)));
        prop_assert_eq!(x.mul(&t, &y).mul(&t, &z), x.mul(&t, &y.mul(&t, &z)));
        prop_assert_eq!(x.sub(&t, &y).add(&t, &y), x.clone());
        if x.is_unit() {
            prop_assert_eq!(x.inv(&t).unwrap().mul(&t, &x), Witt::one(2, 3));
        } else {
            prop_assert!(x.inv(&t).is_err());
        }
        prop_assert_eq!(x.shift(1).truncate(1), Witt::zero(2, 1));
        prop_assert_eq!(x.truncate(2).lift(3).truncate(2), x.truncate(2));
    }
}

use coxdl_lemmas::{verify_minor_identity, MinorSetup, Sampling};
use coxdl_torus::GroupSpec;

fn spec(q: u64, n: u32, kappa: u32, h: usize) -> GroupSpec {
    GroupSpec::new(q, n, kappa, h).unwrap()
}

#[test]
fn exhaustive_split_case() {
    for i0 in [1, 2] {
        let v = verify_minor_identity(&spec(2, 3, 0, 1), i0, 6, Sampling::Exhaustive).unwrap();
        assert!(v.ok(), "{v}");
        // Unit determinants among the 2^18 points: (64^3 − #singular).
        assert!(v.notes[0].starts_with("234360 points"), "{:?}", v.notes);
    }
}

#[test]
fn random_division_blocks() {
    let v = verify_minor_identity(&spec(2, 4, 2, 1), 1, 6, Sampling::Random { samples: 1000, seed: 1 }).unwrap();
    assert!(v.ok(), "{v}");
    // With n₀ = 2 the σ-product is not empty at i₀ = 1, and dropping it fails.
    assert!(!v.notes[0].contains(", j < i₀ holds on 928"), "{:?}", v.notes);
    for (s, i0, m, seed) in [(spec(2, 4, 2, 2), 1, 6, 2), (spec(2, 4, 0, 2), 2, 6, 3), (spec(2, 6, 2, 2), 1, 4, 4), (spec(2, 6, 3, 2), 2, 6, 5)] {
        let v = verify_minor_identity(&s, i0, m, Sampling::Random { samples: 60, seed }).unwrap();
        assert!(v.ok(), "{v} {:?}", v.notes);
    }
}

#[test]
fn first_minor_is_the_determinant_when_split() {
    // κ = 0, i₀ = 1: m = (m_1) with m_1 = |g_n(x)|, and the head model has n = 1.
    let s = MinorSetup::new(&spec(3, 3, 0, 2), 1).unwrap();
    assert_eq!((s.s, s.head.n(), s.tail.n()), (1, 1, 2));
    assert!(MinorSetup::new(&spec(2, 2, 1, 2), 1).is_none());
    let v = verify_minor_identity(&spec(3, 3, 0, 2), 1, 3, Sampling::Random { samples: 50, seed: 9 }).unwrap();
    assert!(v.ok(), "{v}");
    assert!(verify_minor_identity(&spec(2, 2, 1, 1), 1, 2, Sampling::Exhaustive).unwrap().skipped.is_some());
}

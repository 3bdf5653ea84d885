use coxdl_gf::Tower;
use coxdl_lemmas::{intermediate_identity, verify_turnbull, Tableau};

fn f4096() -> Tower {
    Tower::new(2, 1, &[12]).unwrap()
}

#[test]
fn pit_suite() {
    let t = f4096();
    let v = verify_turnbull(&t, 1000, 20240917);
    assert!(v.ok(), "{v}");
    assert!(v.notes[0].contains("seed 20240917"));
}

#[test]
fn boxes_detect_a_wrong_identity() {
    // Over a generic tableau, a 2 × 2 tableau with only two boxes (k = n) does not vanish.
    let t = f4096();
    let e = |k: u64| t.from_u64(k);
    let tab = Tableau { rows: vec![vec![vec![e(1), e(0)], vec![e(0), e(1)]], vec![vec![e(1), e(1)], vec![e(1), e(0)]]] };
    assert_eq!(tab.value(&t, &[]), t.one());
    assert!(!tab.value(&t, &[(0, 0), (1, 0)]).is_zero());
}

#[test]
fn identity_in_characteristic_three() {
    let t = Tower::new(3, 1, &[8]).unwrap();
    let elems = t.elements(8).unwrap();
    let mut k = 7usize;
    for n in 3..=5 {
        for i0 in 1..n {
            let vs: Vec<Vec<_>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            k = (k * 2654435761 + 12345) % elems.len();
                            elems[k]
                        })
                        .collect()
                })
                .collect();
            assert_eq!(intermediate_identity(&t, &vs, i0), (true, true), "n={n} i0={i0}");
        }
    }
}

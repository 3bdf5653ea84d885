use coxdl_lemmas::{emptiness_predicate, sigma_w_criteria, staircase, verify_sigma_hat_emptiness, weyl_o};

#[test]
fn criteria_up_to_six() {
    for n in 2..=6 {
        for kappa in 0..n {
            let v = sigma_w_criteria(n, kappa).unwrap();
            assert!(v.ok(), "{v}");
        }
        // Staircases w ≠ 1 for κ = 0 are the nontrivial compositions of n.
        let v = sigma_w_criteria(n, 0).unwrap();
        assert!(v.notes[0].ends_with(&format!("staircase w ≠ 1: {}", (1 << (n - 1)) - 1)), "{:?}", v.notes);
    }
}

#[test]
fn small_cases_by_hand() {
    let s2 = weyl_o(2, 1);
    assert_eq!(s2, vec![vec![1, 2], vec![2, 1]]);
    assert!(!emptiness_predicate(&vec![2, 1]));
    assert_eq!(staircase(&vec![2, 1]), Some(vec![1, 2]));
    assert_eq!(staircase(&vec![1, 2]), Some(vec![2]));
    assert!(emptiness_predicate(&vec![1, 3, 2]));
    assert_eq!(staircase(&vec![1, 3, 2]), None);
    // W_O for n₀ = 2 inside S_4 is S_2 × S_2 acting on {1, 3} and {2, 4}.
    assert_eq!(weyl_o(4, 2).len(), 4);
    assert!(weyl_o(4, 2).iter().all(|w| w.iter().enumerate().all(|(i, &v)| (i + 1) % 2 == v % 2)));
}

#[test]
fn level_one_enumeration() {
    for (q, n, m) in [(2, 2, 1), (2, 2, 2), (2, 3, 1)] {
        let v = verify_sigma_hat_emptiness(q, n, m).unwrap();
        assert!(v.ok(), "{v}");
    }
    let v = verify_sigma_hat_emptiness(2, 3, 1).unwrap();
    assert!(v.notes[0].contains("[1, 3, 2]*:0 [2, 1, 3]*:0"), "{:?}", v.notes);
}

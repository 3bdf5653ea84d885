use coxdl_lemmas::{verify_curve_reduction, verify_norm_image, verify_rh_fibers};

#[test]
fn norm_image() {
    for (q, n, h) in [(3u64, 2u32, 2usize), (2, 3, 2), (3, 2, 3)] {
        for m in 1..n {
            let v = verify_norm_image(q, n, m, h).unwrap();
            println!("{v} {:?}", v.notes);
            assert!(v.ok(), "{v}");
        }
    }
    let v = verify_norm_image(3, 2, 1, 2).unwrap();
    assert!(v.notes[0].contains("#im = 3, #ker N = 3, #ker α = 3"), "{:?}", v.notes);
    assert!(verify_norm_image(2, 2, 1, 2).unwrap().skipped.is_some());
}

#[test]
fn rh_fibers() {
    let v = verify_rh_fibers(3, 2, 1, 2, 3, false).unwrap();
    println!("{v} {:?}", v.notes);
    assert!(v.ok(), "{v}");
    let v = verify_rh_fibers(3, 2, 1, 3, 2, false).unwrap();
    assert!(v.ok(), "{v}");
    assert!(verify_rh_fibers(2, 3, 2, 2, 3, false).unwrap().skipped.is_some());
}

#[test]
fn rh_fibers_outside_hypothesis() {
    // p = s = 2: the fibers are Y^8 − Y = X^2 + X + c, which has 2·q^m points.
    let v = verify_rh_fibers(2, 3, 2, 2, 3, true).unwrap();
    assert!(!v.pass);
    for (m, size) in [(1, 4), (2, 8), (3, 16)] {
        assert!(v.notes.iter().any(|s| s == &format!("m={m} level 2: 1 base points, fiber sizes [{size}]")), "{:?}", v.notes);
    }
}

#[test]
fn curve_reduction() {
    for (q, a, b, c, d) in [(3u64, 1i64, 1i64, 1u32, 2u32), (2, 1, 1, 1, 2), (5, 2, 3, 2, 3), (5, 1, 1, 2, 3), (7, 1, 2, 2, 5)] {
        let v = verify_curve_reduction(q, a, b, c, d, 3).unwrap();
        assert!(v.ok(), "{v}");
    }
    // Terminal b ≡ 0 mod p: the reduction still matches counts, but the curve is not a line.
    let v = verify_curve_reduction(3, 1, 1, 1, 2, 2).unwrap();
    assert!(v.notes.contains(&"m=1: counts [9, 9], q^m = 3".to_string()), "{:?}", v.notes);
    assert!(verify_curve_reduction(3, 3, 1, 1, 2, 1).unwrap().skipped.is_some());
}

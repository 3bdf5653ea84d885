use coxdl_lemmas::verify_quotient_fibers;
use coxdl_torus::GroupSpec;

#[test]
fn fibers_have_n_points() {
    let v = verify_quotient_fibers(&GroupSpec::new(2, 2, 0, 1).unwrap(), 1, &[2, 4, 6]).unwrap();
    assert!(v.ok(), "{v}");
    assert_eq!(v.notes[2], "M=6: #X = 78, 39 fibers, all of size 2");
    let v = verify_quotient_fibers(&GroupSpec::new(2, 2, 0, 2).unwrap(), 1, &[2, 4]).unwrap();
    assert!(v.ok(), "{v}");
}

#[test]
fn other_shapes() {
    for (s, i0, sched) in [((2, 3), 1, vec![3, 6]), ((2, 3), 2, vec![3, 6]), ((3, 2), 1, vec![2, 4])] {
        let spec = GroupSpec::new(s.0, s.1, 0, 1).unwrap();
        let v = verify_quotient_fibers(&spec, i0, &sched).unwrap();
        assert!(v.ok(), "{v} {:?}", v.notes);
    }
    assert!(verify_quotient_fibers(&GroupSpec::new(2, 2, 1, 1).unwrap(), 1, &[2]).unwrap().skipped.is_some());
    assert!(verify_quotient_fibers(&GroupSpec::new(2, 2, 0, 1).unwrap(), 2, &[2]).unwrap().skipped.is_some());
}

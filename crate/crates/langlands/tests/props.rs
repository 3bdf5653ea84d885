use coxdl_langlands::WeilModel;
use proptest::prelude::*;
use std::sync::OnceLock;

fn model() -> &'static WeilModel {
    static M: OnceLock<WeilModel> = OnceLock::new();
    M.get_or_init(|| WeilModel::new(2, 2, 2, 2).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associative(a in 0usize..96, b in 0usize..96, c in 0usize..96) {
        let w = model();
        let (x, y, z) = (w.element(a), w.element(b), w.element(c));
        prop_assert_eq!(w.mul(w.mul(x, y), z), w.mul(x, w.mul(y, z)));
        prop_assert_eq!(w.inv(w.mul(x, y)), w.mul(w.inv(y), w.inv(x)));
    }

    #[test]
    fn mackey_count(i in 0usize..12, j in 0usize..12) {
        let w = model();
        let t = w.torus();
        let chars = t.characters();
        let (a, b) = (&chars[i], &chars[j]);
        let sa = w.sigma_theta(a, (1, 0)).unwrap();
        let sb = w.sigma_theta(b, (1, 0)).unwrap();
        let pred = (0..2).filter(|&g| t.compose_sigma(a, g) == *b).count() as i128;
        prop_assert_eq!(w.inner_product(&sa, &sb).as_integer(), Some(pred));
    }
}

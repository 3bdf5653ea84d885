use crate::pipeline::{ClassFunction, Pipeline};
use coxdl_torus::{Cyclo, TorusChar};

/// The classical cuspidal character of GL_2(F_q) attached to θ on F_{q^2}^×.
///
/// Central `z`: (q−1)θ(z); `z·u` with u unipotent ≠ 1: −θ(z); split non-central: 0;
/// elliptic with eigenvalues x, x^q: −(θ(x) + θ(x^q)).
pub fn classical_gl2_oracle(p: &Pipeline, theta: &TorusChar) -> Option<ClassFunction> {
    let spec = p.spec();
    if spec.n != 2 || spec.kappa != 0 || spec.h != 1 {
        return None;
    }
    let torus = p.torus();
    let tw = torus.tower();
    let group = p.group();
    let q = spec.q as i128;
    let mut values = vec![None; p.classes().count()];
    // Elements of F_{q^2}^× give the central and elliptic classes.
    for x in 0..torus.order() {
        let g = group.embed_torus_element(torus.element(x));
        let c = p.class_of(&g);
        let v = if torus.sigma_index(x, 1) == x {
            torus.char_eval(theta, x).scale(q - 1, 1)
        } else {
            -&(&torus.char_eval(theta, x) + &torus.char_eval(theta, torus.sigma_index(x, 1)))
        };
        values[c] = Some(v);
    }
    for (c, &rep) in p.classes().reps.iter().enumerate() {
        if values[c].is_some() {
            continue;
        }
        let g = group.element(rep);
        let e = |i, j| group.entry(g, i, j)[0];
        let (a, b, cc, d) = (e(0, 0), e(0, 1), e(1, 0), e(1, 1));
        let tr = tw.add(a, d);
        let det = tw.sub(tw.mul(a, d), tw.mul(b, cc));
        // Repeated eigenvalue z iff tr² = 4 det; then z = tr/2 (q odd) or z = √det (q even).
        let disc = tw.sub(tw.mul(tr, tr), tw.mul(tw.from_i64(4), det));
        values[c] = Some(if disc.is_zero() {
            let z = if spec.q % 2 == 1 {
                tw.mul(tr, tw.inv(tw.from_i64(2)).expect("odd"))
            } else {
                tw.pow(det, (spec.q / 2) as u128)
            };
            let zi = (0..torus.order()).find(|&i| torus.residue(i) == z).expect("z in F_q^×");
            -&torus.char_eval(theta, zi)
        } else {
            Cyclo::zero(1)
        });
    }
    Some(ClassFunction { values: values.into_iter().map(|v| v.expect("every class")).collect(), genuine: true })
}

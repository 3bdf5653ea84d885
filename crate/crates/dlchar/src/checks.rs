use crate::pipeline::{ExtractionReport, Pipeline};
use coxdl_grp::very_regular_elements;
use coxdl_torus::{degree_formula, Cyclo, TorusChar};
use serde::Serialize;

/// Outcome of one check on one character.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub theta: String,
    pub pass: bool,
    /// The check does not apply (for example no proper parabolic exists).
    pub skipped: bool,
    pub detail: String,
}

impl Verdict {
    fn new(name: &str, theta: &TorusChar, pass: bool, detail: String) -> Verdict {
        Verdict { name: name.into(), theta: theta.to_string(), pass, skipped: false, detail }
    }

    fn skip(name: &str, theta: &TorusChar, detail: &str) -> Verdict {
        Verdict { name: name.into(), theta: theta.to_string(), pass: true, skipped: true, detail: detail.into() }
    }
}

/// `χ(1)` against the closed-form degree.
pub fn degree_check(p: &Pipeline, rep: &ExtractionReport) -> Verdict {
    let hd = p.torus().howe_decompose(&rep.theta);
    let measured = rep.degree();
    match degree_formula(&hd, p.spec()) {
        Ok(expected) => Verdict::new(
            "degree",
            &rep.theta,
            measured == expected as i128,
            format!("chi(1) = {measured}, formula = {expected}"),
        ),
        Err(e) => Verdict::new("degree", &rep.theta, false, e.to_string()),
    }
}

/// `Σ_{u ∈ N} χ(u) = 0` for the unipotent radical of every maximal parabolic.
pub fn cuspidal_check(p: &Pipeline, rep: &ExtractionReport) -> Verdict {
    if p.spec().n_prime() == 1 {
        return Verdict::skip("cuspidal", &rep.theta, "anisotropic group: no proper parabolic");
    }
    let mut sums = Vec::new();
    let mut pass = true;
    for i0 in 1..p.spec().n {
        let radical = match p.group().parabolic_radical(i0) {
            Ok(r) => r,
            Err(e) => return Verdict::new("cuspidal", &rep.theta, false, e.to_string()),
        };
        let mut acc = Cyclo::zero(1);
        for &u in &radical.elements {
            acc = &acc + &rep.chi.values[p.classes().class_of[u] as usize];
        }
        pass &= acc.is_zero();
        sums.push(format!("i0={i0}: {acc}"));
    }
    Verdict::new("cuspidal", &rep.theta, pass, sums.join("; "))
}

/// `χ(x) = s·Σ_γ θ(σ^γ x)` on very regular torus elements, with one sign s per θ.
///
/// γ runs over the Galois elements realised in G_h, the powers of σ^{n₀}; for κ = 0 that
/// is all of Gal(L/K). The detail also reports whether the sum over all of Gal(L/K) fits.
pub fn very_regular_check(p: &Pipeline, rep: &ExtractionReport) -> Verdict {
    let spec = p.spec();
    let gammas: Vec<i64> = (0..spec.n_prime()).map(|j| (spec.n0() * j) as i64).collect();
    let full: Vec<i64> = (0..spec.n as i64).collect();
    let (pass, checked, sign) = trace_matches(p, rep, &gammas);
    let literal = trace_matches(p, rep, &full).0;
    let detail = format!("{checked} very regular elements, sign {sign}, full Galois sum fits: {literal}");
    Verdict::new("very_regular", &rep.theta, pass, detail)
}

fn trace_matches(p: &Pipeline, rep: &ExtractionReport, gammas: &[i64]) -> (bool, usize, i128) {
    let torus = p.torus();
    let mut sign: Option<i128> = None;
    let mut checked = 0usize;
    for x in very_regular_elements(torus) {
        let g = p.group().embed_torus_element(torus.element(x));
        let chi = &rep.chi.values[p.class_of(&g)];
        let mut sum = Cyclo::zero(torus.conductor());
        for &gamma in gammas {
            sum = &sum + &torus.char_eval(&rep.theta, torus.sigma_index(x, gamma));
        }
        checked += 1;
        if sum.is_zero() {
            if !chi.is_zero() {
                return (false, checked, sign.unwrap_or(0));
            }
            continue;
        }
        let s = if *chi == sum {
            1
        } else if *chi == -&sum {
            -1
        } else {
            return (false, checked, sign.unwrap_or(0));
        };
        if *sign.get_or_insert(s) != s {
            return (false, checked, s);
        }
    }
    (true, checked, sign.unwrap_or(0))
}

/// `χ(z·g) = θ(z)·χ(g)` for central z, checked at g = 1.
pub fn central_check(p: &Pipeline, rep: &ExtractionReport) -> Verdict {
    let torus = p.torus();
    let deg = &rep.chi.values[p.identity_class()];
    let mut pass = true;
    let mut count = 0;
    for z in (0..torus.order()).filter(|&z| torus.sigma_index(z, 1) == z) {
        let g = p.group().embed_torus_element(torus.element(z));
        pass &= rep.chi.values[p.class_of(&g)] == &torus.char_eval(&rep.theta, z) * deg;
        count += 1;
    }
    Verdict::new("central", &rep.theta, pass, format!("{count} central elements"))
}

/// `c_{θ·(φ∘Nm)}(g) = φ(det g)·c_θ(g)` for every σ-stable φ, on the matrix model.
pub fn twist_check(p: &Pipeline, theta: &TorusChar) -> Verdict {
    let spec = *p.spec();
    if spec.kappa != 0 {
        return Verdict::skip("twist", theta, "needs the matrix model");
    }
    let torus = p.torus();
    let tw = torus.tower();
    // A torus element of each norm value.
    let mut by_norm = std::collections::HashMap::new();
    for t in 0..torus.order() {
        let nm = torus.element(t).nm(tw, spec.n, 1).expect("n divides n");
        by_norm.entry(nm.digits().to_vec()).or_insert(t);
    }
    let base = p.c_function(theta);
    let mut pass = true;
    let mut tried = 0;
    for phi in torus.characters().into_iter().filter(|c| torus.is_sigma_stable(c, 1, 0)) {
        let twisted = p.c_function(&torus.char_mul(theta, &phi));
        for (c, &rep) in p.classes().reps.iter().enumerate() {
            let det = p.group().det(p.group().element(rep)).expect("matrix model");
            let t = by_norm[&det];
            pass &= twisted.values[c] == &base.values[c] * &torus.char_eval(&phi, t);
        }
        tried += 1;
    }
    Verdict::new("twist", theta, pass, format!("{tried} norm characters"))
}

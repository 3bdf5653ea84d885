use crate::weil::{InducingChar, ParamChar, ParamError, WeilModel};
use coxdl_dlchar::Pipeline;
use coxdl_torus::{degree_formula, macdonald_volume, Cyclo, GroupSpec, TorusChar};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct ParamVerdict {
    pub name: String,
    pub params: String,
    pub pass: bool,
    pub detail: Vec<String>,
}

impl ParamVerdict {
    fn new(name: &str, params: String) -> ParamVerdict {
        ParamVerdict { name: name.into(), params, pass: true, detail: Vec::new() }
    }

    fn fail(&mut self, msg: String) {
        self.pass = false;
        self.detail.push(msg);
    }
}

impl std::fmt::Display for ParamVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {} {}", if self.pass { "PASS" } else { "FAIL" }, self.name, self.params)?;
        for d in &self.detail {
            write!(f, "; {d}")?;
        }
        Ok(())
    }
}

/// Number of γ ∈ Z/n with θ∘σ^γ = θ'.
fn galois_matches(model: &WeilModel, a: &TorusChar, b: &TorusChar) -> i128 {
    (0..model.n() as i64).filter(|&g| model.torus().compose_sigma(a, g) == *b).count() as i128
}

/// ⟨σ_θ|_A, χ^γ⟩_A for the restriction to A.
fn restriction_multiplicity(model: &WeilModel, sigma: &ParamChar, chi: &InducingChar) -> Cyclo {
    let mut acc = Cyclo::from_int(1, 0);
    for i in 0..model.a_order() {
        let x = model.element(i);
        acc = &acc + &(&sigma.values[i] * &chi.eval(x).conj());
    }
    acc.scale(1, model.a_order() as i128)
}

/// For all pairs in Θ: σ_θ = σ_θ' iff θ, θ' are Galois conjugate; ⟨σ_θ, σ_θ'⟩ is the Mackey
/// count; σ_θ is irreducible iff θ is in general position; σ_θ vanishes off A when the orbit
/// is free; det σ_θ on A is ∏_γ χ∘σ^γ.
pub fn verify_param_bijection(
    model: &WeilModel,
    thetas: &[TorusChar],
    pi_value: (u64, i64),
) -> Result<ParamVerdict, ParamError> {
    let t = model.torus();
    let n = model.n() as i128;
    let mut v = ParamVerdict::new(
        "param-bijection",
        format!("n={} h={} #A={} #M={} #Θ={}", n, t.h(), model.a_order(), model.order(), thetas.len()),
    );
    let sigmas: Vec<ParamChar> =
        thetas.iter().map(|th| model.sigma_theta(th, pi_value)).collect::<Result<_, _>>()?;
    let mut irreducible = 0usize;
    let mut classes: Vec<&ParamChar> = Vec::new();
    for (i, (a, sa)) in thetas.iter().zip(&sigmas).enumerate() {
        if sa.dim != n {
            v.fail(format!("dim σ_{a} = {}", sa.dim));
        }
        let gp = t.is_general_position(a, false);
        let norm = model.inner_product(sa, sa).as_integer();
        if norm == Some(1) {
            irreducible += 1;
        }
        if (norm == Some(1)) != gp {
            v.fail(format!("{a}: ⟨σ,σ⟩ = {norm:?}, general position {gp}"));
        }
        if *a == t.trivial() && norm != Some(n) {
            v.fail(format!("trivial θ: ⟨σ,σ⟩ = {norm:?}, expected {n}"));
        }
        if gp {
            if let Some(g) = model.elements().find(|&g| !model.in_a(g) && !sa.values[model.index(g)].is_zero()) {
                v.fail(format!("{a}: σ nonzero off A at {g:?}"));
            }
        }
        for (b, sb) in thetas.iter().zip(&sigmas).skip(i) {
            let orbit = t.galois_orbit(a).contains(b);
            if (sa == sb) != orbit {
                v.fail(format!("{a}, {b}: equal σ {}, same orbit {orbit}", sa == sb));
            }
            let ip = model.inner_product(sa, sb).as_integer();
            let pred = galois_matches(model, a, b);
            if ip != Some(pred) {
                v.fail(format!("⟨σ_{a}, σ_{b}⟩ = {ip:?}, Mackey {pred}"));
            }
        }
        if !classes.contains(&sa) {
            classes.push(sa);
        }
        det_check(model, a, sa, pi_value, &mut v)?;
    }
    let orbits = {
        let mut seen: Vec<TorusChar> = Vec::new();
        let mut count = 0;
        for a in thetas {
            if !seen.contains(a) {
                count += 1;
                seen.extend(t.galois_orbit(a));
            }
        }
        count
    };
    if orbits != classes.len() {
        v.fail(format!("{orbits} orbits but {} distinct σ", classes.len()));
    }
    v.detail.push(format!("{} orbits, {} distinct σ, {irreducible} irreducible", orbits, classes.len()));
    Ok(v)
}

/// det σ_θ|_A = ∏_{γ<n} χ∘σ^γ, through the multiplicities of the conjugates χ^γ in σ_θ|_A.
fn det_check(
    model: &WeilModel,
    theta: &TorusChar,
    sigma: &ParamChar,
    pi_value: (u64, i64),
    v: &mut ParamVerdict,
) -> Result<(), ParamError> {
    let t = model.torus();
    let mut distinct: Vec<TorusChar> = Vec::new();
    for g in 0..model.n() as i64 {
        let c = t.compose_sigma(theta, g);
        if !distinct.contains(&c) {
            distinct.push(c);
        }
    }
    let mut factors = Vec::new();
    let mut total = 0i128;
    for c in &distinct {
        let chi = InducingChar::new(model, c, pi_value)?;
        let Some(m) = restriction_multiplicity(model, sigma, &chi).as_integer() else {
            v.fail(format!("{theta}: non-integral multiplicity of {c}"));
            return Ok(());
        };
        total += m;
        factors.push((chi, m));
    }
    if total != model.n() as i128 {
        v.fail(format!("{theta}: conjugate multiplicities sum to {total}"));
        return Ok(());
    }
    let chi = InducingChar::new(model, theta, pi_value)?;
    for i in 0..model.a_order() {
        let x = model.element(i);
        let mut det = Cyclo::from_int(1, 1);
        for (c, m) in &factors {
            for _ in 0..*m {
                det = &det * c.eval(x);
            }
        }
        let mut expected = Cyclo::from_int(1, 1);
        for g in 0..model.n() as i64 {
            let y = crate::weil::WeilElement { unit: t.sigma_index(x.unit, g), ..x };
            expected = &expected * chi.eval(y);
        }
        if det != expected {
            v.fail(format!("{theta}: det σ at {x:?} is {det}, expected {expected}"));
            return Ok(());
        }
    }
    Ok(())
}

/// Formal degree bookkeeping: χ_θ(1) from the point counts against the closed form, with
/// d(π_θ) = χ_θ(1) / vol(G_O Z/Z) reported exactly.
#[derive(Clone, Debug, Serialize)]
pub struct FormalDegree {
    pub spec: GroupSpec,
    pub theta: String,
    pub measured: i128,
    pub formula: u128,
    pub volume: (u128, u128),
    pub formal_degree: (u128, u128),
}

pub fn formal_degree_check(p: &Pipeline, theta: &TorusChar) -> Result<(ParamVerdict, FormalDegree), ParamError> {
    let spec = *p.spec();
    let rep = p.extract(theta)?;
    let hd = p.torus().howe_decompose(theta);
    let formula = degree_formula(&hd, &spec).map_err(|e| ParamError::Formula(e.to_string()))?;
    let volume = macdonald_volume(&spec);
    let (num, den) = (formula * volume.1, volume.0);
    let g = num_integer::gcd(num, den).max(1);
    let fd = FormalDegree {
        spec,
        theta: theta.to_string(),
        measured: rep.degree,
        formula,
        volume,
        formal_degree: (num / g, den / g),
    };
    let mut v = ParamVerdict::new("formal-degree", format!("{spec} θ={theta}"));
    if rep.degree != formula as i128 {
        v.fail(format!("degree identity: measured χ(1) = {}, closed form {formula}", rep.degree));
    }
    v.detail.push(format!(
        "χ(1) = {}, formula = {formula}, vol = {}/{}, d = {}/{}",
        rep.degree, volume.0, volume.1, fd.formal_degree.0, fd.formal_degree.1
    ));
    Ok((v, fd))
}

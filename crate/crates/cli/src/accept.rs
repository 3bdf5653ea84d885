//! The acceptance matrix: eleven criteria, each a list of exact checks.

use crate::commands::Session;
use crate::config::Profile;
use crate::report::Verdict;
use coxdl_dlchar::{classical_gl2_oracle, cuspidal_check, degree_check, very_regular_check, Pipeline};
use coxdl_gf::Tower;
use coxdl_langlands::{formal_degree_check, verify_param_bijection, WeilModel};
use coxdl_lemmas as lemmas;
use coxdl_torus::GroupSpec;
use coxdl_variety::count_points;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Checks that fail for a documented reason. The acceptance test requires the failing set to
/// be exactly this.
pub const KNOWN_FAILURES: &[(u32, &str)] = &[(9, "rh-fibers (2,3,2) forced")];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub title: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl CriterionOutcome {
    pub fn failing(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn verdict(&self) -> Verdict {
        let failing = self.failing();
        let detail = if failing.is_empty() {
            vec![format!("{} checks", self.checks.len())]
        } else {
            failing.iter().map(|c| format!("{}: {}", c.name, c.detail)).collect()
        };
        Verdict { name: format!("criterion {}", self.id), params: self.title.clone(), pass: self.pass, skipped: false, detail }
    }

    /// `criterion N: PASS|FAIL title (k/m checks)`.
    pub fn line(&self) -> String {
        let ok = self.checks.iter().filter(|c| c.pass).count();
        let mut s = format!(
            "criterion {}: {} {} ({ok}/{} checks)",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.checks.len()
        );
        for c in self.failing() {
            s.push_str(&format!("\n    failed {}: {}", c.name, c.detail));
        }
        s
    }
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), pass, detail: detail.into() }
}

fn error_check(name: impl Into<String>, e: impl std::fmt::Display) -> Check {
    check(name, false, format!("error: {e}"))
}

fn lemma_check(name: impl Into<String>, r: Result<lemmas::LemmaVerdict, lemmas::LemmaError>) -> Check {
    match r {
        Ok(v) => {
            let mut detail = v.notes.join("; ");
            if let Some(s) = &v.skipped {
                detail = format!("skipped: {s}");
            }
            if let Some(w) = &v.witness {
                detail.push_str(&format!("; witness {w}"));
            }
            check(name, v.ok(), detail)
        }
        Err(e) => error_check(name, e),
    }
}

fn spec(q: u64, n: u32, k: u32, h: usize) -> GroupSpec {
    GroupSpec::new(q, n, k, h).expect("valid acceptance spec")
}

/// Criterion 1's specs with their group orders.
const ORDERS: [((u64, u32, u32, usize), u128); 6] = [
    ((2, 2, 0, 1), 6),
    ((2, 2, 0, 2), 96),
    ((2, 3, 0, 1), 168),
    ((2, 2, 1, 1), 3),
    ((2, 2, 1, 2), 48),
    ((3, 2, 0, 2), 3888),
];

/// Criterion 6's specs with the degree of every general-position χ_θ.
const DEGREES: [((u64, u32, u32, usize), i128); 4] =
    [((2, 2, 0, 1), 1), ((3, 2, 0, 1), 2), ((3, 2, 0, 2), 6), ((2, 2, 1, 2), 2)];

pub struct Acceptance {
    pub profile: Profile,
    pub seed: u64,
    pipelines: BTreeMap<GroupSpec, Arc<Pipeline>>,
}

impl Acceptance {
    pub fn new(profile: Profile, seed: u64) -> Acceptance {
        Acceptance { profile, seed, pipelines: BTreeMap::new() }
    }

    fn pipeline(&mut self, s: &mut Session, spec: GroupSpec) -> Result<Arc<Pipeline>, String> {
        if let Some(p) = self.pipelines.get(&spec) {
            return Ok(p.clone());
        }
        let p = Arc::new(s.pipeline(&spec).map_err(|e| e.to_string())?);
        self.pipelines.insert(spec, p.clone());
        Ok(p)
    }

    /// Runs the selected criteria (all when `only` is empty) in order.
    pub fn run(mut self, s: &mut Session, only: &[u32]) -> Vec<CriterionOutcome> {
        (1..=11).filter(|id| only.is_empty() || only.contains(id)).map(|id| self.criterion(s, id)).collect()
    }

    pub fn criterion(&mut self, s: &mut Session, id: u32) -> CriterionOutcome {
        let start = std::time::Instant::now();
        let (title, checks) = match id {
            1 => ("point count equals group order", self.c1()),
            2 => ("vanishing twisted counts S_{1,t}", self.c2(s)),
            3 => ("GL_2 cuspidal oracle", self.c3(s)),
            4 => ("Mackey matrix", self.c4(s)),
            5 => ("irreducibility and orbit injectivity", self.c5(s)),
            6 => ("degree formula", self.c6(s)),
            7 => ("cuspidality", self.c7(s)),
            8 => ("very regular traces", self.c8(s)),
            9 => ("lemma suite", self.c9()),
            10 => ("combinatorial criteria", self.c10()),
            11 => ("parameter bookkeeping", self.c11(s)),
            _ => ("unknown criterion", vec![check("id", false, format!("no criterion {id}"))]),
        };
        s.timings.insert(format!("criterion {id:02}"), start.elapsed().as_secs_f64());
        let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        CriterionOutcome { id, title: title.into(), pass, checks }
    }

    fn c1(&mut self) -> Vec<Check> {
        ORDERS
            .iter()
            .map(|&((q, n, k, h), order)| {
                let sp = spec(q, n, k, h);
                let formula = coxdl_grp::group_order(&sp);
                match count_points(&sp, n) {
                    Ok(c) => check(
                        format!("#X {sp}"),
                        c as u128 == order && formula == order,
                        format!("#X = {c}, #G_h = {formula}, expected {order}"),
                    ),
                    Err(e) => error_check(format!("#X {sp}"), e),
                }
            })
            .collect()
    }

    fn c2(&mut self, s: &mut Session) -> Vec<Check> {
        let mut out = Vec::new();
        for &((q, n, k, h), order) in &ORDERS {
            let sp = spec(q, n, k, h);
            let name = format!("S_(1,t) {sp}");
            let p = match self.pipeline(s, sp) {
                Ok(p) => p,
                Err(e) => {
                    out.push(error_check(name, e));
                    continue;
                }
            };
            let row = &p.table().counts[p.identity_class()];
            let nonzero: Vec<usize> = (1..row.len()).filter(|&t| row[t] != 0).collect();
            out.push(check(
                name,
                nonzero.is_empty() && row[0] as u128 == order,
                format!("S_(1,1) = {}, {} of {} twists t ≠ 1 nonzero", row[0], nonzero.len(), row.len() - 1),
            ));
        }
        out
    }

    fn c3(&mut self, s: &mut Session) -> Vec<Check> {
        let mut out = Vec::new();
        for q in [2u64, 3] {
            let sp = spec(q, 2, 0, 1);
            let p = match self.pipeline(s, sp) {
                Ok(p) => p,
                Err(e) => {
                    out.push(error_check(format!("oracle {sp}"), e));
                    continue;
                }
            };
            for theta in p.general_position_characters() {
                let name = format!("oracle {sp} {theta}");
                match (p.extract(&theta), classical_gl2_oracle(&p, &theta)) {
                    (Ok(rep), Some(oracle)) => {
                        out.push(check(name, rep.chi == oracle, format!("χ(1) = {}", rep.degree)))
                    }
                    (Err(e), _) => out.push(error_check(name, e)),
                    (_, None) => out.push(check(name, false, "no oracle value")),
                }
            }
        }
        out
    }

    fn c4(&mut self, s: &mut Session) -> Vec<Check> {
        let mut out = Vec::new();
        match self.pipeline(s, spec(2, 2, 1, 2)) {
            Ok(p) => {
                let thetas = p.torus().characters();
                let r = p.mackey_matrix(&thetas);
                let ext: Vec<usize> = (0..thetas.len()).filter(|&i| r.measured[i][i].is_some()).collect();
                let identity = ext.iter().all(|&i| ext.iter().all(|&j| r.measured[i][j] == Some(i128::from(i == j))));
                out.push(check(
                    "mackey (2,2,1,2) all θ",
                    r.pass && identity && ext.len() == 12,
                    format!("{} of {} θ extracted, identity matrix {identity}", ext.len(), thetas.len()),
                ));
            }
            Err(e) => out.push(error_check("mackey (2,2,1,2)", e)),
        }
        match self.pipeline(s, spec(3, 2, 0, 2)) {
            Ok(p) => {
                let gp = p.general_position_characters();
                let r = p.mackey_matrix(&gp);
                let all = r.measured.iter().flatten().all(Option::is_some);
                out.push(check(
                    "mackey (3,2,0,2) gp θ",
                    r.pass && all,
                    format!("{}×{} matrix, all extracted {all}", gp.len(), gp.len()),
                ));
            }
            Err(e) => out.push(error_check("mackey (3,2,0,2)", e)),
        }
        out
    }

    fn c5(&mut self, s: &mut Session) -> Vec<Check> {
        let mut out = Vec::new();
        for sp in [spec(3, 2, 0, 2), spec(2, 2, 1, 2)] {
            let name = format!("irreducible {sp}");
            let p = match self.pipeline(s, sp) {
                Ok(p) => p,
                Err(e) => {
                    out.push(error_check(name, e));
                    continue;
                }
            };
            let gp = p.general_position_characters();
            let reps: Result<Vec<_>, _> = gp.iter().map(|t| p.extract(t)).collect();
            let reps = match reps {
                Ok(r) => r,
                Err(e) => {
                    out.push(error_check(name, e));
                    continue;
                }
            };
            let mut bad = Vec::new();
            for (i, a) in reps.iter().enumerate() {
                for b in &reps[i..] {
                    let ip = p.inner_product(&a.chi, &b.chi).as_integer();
                    // Orbits under W_O^F, realised by σ^{n₀}: all of Gal(L/K) when κ = 0,
                    // trivial when n' = 1.
                    let same = p.mackey_prediction(&a.theta, &b.theta) > 0;
                    let expect = if std::ptr::eq(a, b) { 1 } else { i128::from(same) };
                    if ip != Some(expect) || (same && a.chi != b.chi) {
                        bad.push(format!("⟨{}, {}⟩ = {ip:?}", a.theta, b.theta));
                    }
                }
            }
            out.push(check(name, bad.is_empty(), format!("{} gp θ; {}", gp.len(), bad.join(", "))));
        }
        out
    }

    fn per_gp(
        &mut self,
        s: &mut Session,
        specs: &[(u64, u32, u32, usize)],
        label: &str,
        mut f: impl FnMut(&Pipeline, &coxdl_torus::TorusChar) -> Check,
    ) -> Vec<Check> {
        let mut out = Vec::new();
        for &(q, n, k, h) in specs {
            let sp = spec(q, n, k, h);
            match self.pipeline(s, sp) {
                Ok(p) => {
                    let gp = p.general_position_characters();
                    if gp.is_empty() {
                        out.push(check(format!("{label} {sp}"), false, "no general-position θ"));
                    }
                    out.extend(gp.iter().map(|t| f(&p, t)));
                }
                Err(e) => out.push(error_check(format!("{label} {sp}"), e)),
            }
        }
        out
    }

    fn c6(&mut self, s: &mut Session) -> Vec<Check> {
        let specs: Vec<_> = DEGREES.iter().map(|d| d.0).collect();
        self.per_gp(s, &specs, "degree", |p, t| {
            let sp = *p.spec();
            let expected = DEGREES.iter().find(|d| spec(d.0 .0, d.0 .1, d.0 .2, d.0 .3) == sp).expect("listed").1;
            match p.extract(t) {
                Ok(rep) => {
                    let v = degree_check(p, &rep);
                    check(format!("degree {sp} {t}"), v.pass && rep.degree == expected, v.detail)
                }
                Err(e) => error_check(format!("degree {sp} {t}"), e),
            }
        })
    }

    fn c7(&mut self, s: &mut Session) -> Vec<Check> {
        self.per_gp(s, &[(2, 2, 0, 1), (3, 2, 0, 1), (3, 2, 0, 2)], "cuspidal", |p, t| {
            let name = format!("cuspidal {} {t}", p.spec());
            match p.extract(t) {
                Ok(rep) => {
                    let v = cuspidal_check(p, &rep);
                    check(name, v.pass && !v.skipped, v.detail)
                }
                Err(e) => error_check(name, e),
            }
        })
    }

    fn c8(&mut self, s: &mut Session) -> Vec<Check> {
        let specs: Vec<_> = DEGREES.iter().map(|d| d.0).collect();
        self.per_gp(s, &specs, "very regular", |p, t| {
            let name = format!("very regular {} {t}", p.spec());
            match p.extract(t) {
                Ok(rep) => {
                    let v = very_regular_check(p, &rep);
                    check(name, v.pass, v.detail)
                }
                Err(e) => error_check(name, e),
            }
        })
    }

    fn c9(&mut self) -> Vec<Check> {
        let full = self.profile == Profile::Full;
        let mut out = Vec::new();
        for (q, n, h) in [(3u64, 2u32, 2usize), (2, 3, 2), (3, 2, 3)] {
            for m in 1..n {
                out.push(lemma_check(format!("norm-image ({q},{n},{h}) m={m}"), lemmas::verify_norm_image(q, n, m, h)));
            }
        }
        // (2,3,2) has p = s, outside the lemma's hypothesis; the full profile runs it anyway.
        let name = if full { "rh-fibers (2,3,2) forced" } else { "rh-fibers (2,3,2)" };
        let r = lemmas::verify_rh_fibers(2, 3, 2, 2, 3, full);
        out.push(match (&r, full) {
            (Ok(v), false) if v.skipped.is_some() => check(name, true, format!("skipped: {}", v.skipped.as_ref().unwrap())),
            _ => lemma_check(name, r),
        });
        out.push(lemma_check("rh-fibers (3,2,1)", lemmas::verify_rh_fibers(3, 2, 1, 2, 3, false)));
        for (q, a, b, c, d) in [(3u64, 1i64, 1i64, 1u32, 2u32), (2, 1, 1, 1, 2), (5, 2, 3, 2, 3), (5, 1, 1, 2, 3), (7, 1, 2, 2, 5)] {
            out.push(lemma_check(
                format!("curve-reduction q={q} ({a},{b},{c},{d})"),
                lemmas::verify_curve_reduction(q, a, b, c, d, 3),
            ));
        }
        for i0 in [1, 2] {
            out.push(lemma_check(
                format!("minor-identity (2,3,0,1) i0={i0} exhaustive"),
                lemmas::verify_minor_identity(&spec(2, 3, 0, 1), i0, 6, lemmas::Sampling::Exhaustive),
            ));
        }
        let samples = if full { 1000 } else { 200 };
        out.push(lemma_check(
            format!("minor-identity (2,4,2,1) {samples} samples"),
            lemmas::verify_minor_identity(&spec(2, 4, 2, 1), 1, 6, lemmas::Sampling::Random { samples, seed: self.seed }),
        ));
        out.push(lemma_check(
            "quotient-fibers (2,2,0,1)",
            lemmas::verify_quotient_fibers(&spec(2, 2, 0, 1), 1, &[2, 4, 6]),
        ));
        out.push(lemma_check("quotient-fibers (2,2,0,2)", lemmas::verify_quotient_fibers(&spec(2, 2, 0, 2), 1, &[2, 4])));
        let trials = if full { 1000 } else { 200 };
        out.push(match Tower::new(2, 1, &[12]) {
            Ok(t) => lemma_check(format!("turnbull {trials} trials"), Ok(lemmas::verify_turnbull(&t, trials, self.seed))),
            Err(e) => error_check("turnbull", e),
        });
        out
    }

    fn c10(&mut self) -> Vec<Check> {
        let mut out = Vec::new();
        for n in 2..=6usize {
            for kappa in 0..n {
                out.push(lemma_check(format!("staircase n={n} κ={kappa}"), lemmas::sigma_w_criteria(n, kappa)));
            }
        }
        for n in [2usize, 3] {
            out.push(lemma_check(format!("Σ̂_w emptiness (2,{n},0,1)"), lemmas::verify_sigma_hat_emptiness(2, n, 1)));
        }
        out
    }

    fn c11(&mut self, s: &mut Session) -> Vec<Check> {
        let mut out = Vec::new();
        for (q, n) in [(2u64, 2u32), (3, 2)] {
            let name = format!("param bijection ({q},{n}) level 1");
            let r = WeilModel::new(q, n, 1, 1)
                .and_then(|w| verify_param_bijection(&w, &w.torus().characters(), (1, 0)));
            out.push(match r {
                Ok(v) => check(name, v.pass, v.detail.join("; ")),
                Err(e) => error_check(name, e),
            });
        }
        let specs: Vec<_> = DEGREES.iter().map(|d| d.0).collect();
        out.extend(self.per_gp(s, &specs, "formal degree", |p, t| {
            let sp = *p.spec();
            let expected = DEGREES.iter().find(|d| spec(d.0 .0, d.0 .1, d.0 .2, d.0 .3) == sp).expect("listed").1;
            let name = format!("formal degree {sp} {t}");
            match formal_degree_check(p, t) {
                Ok((v, fd)) => check(name, v.pass && fd.formula as i128 == expected, v.detail.join("; ")),
                Err(e) => error_check(name, e),
            }
        }));
        out
    }
}

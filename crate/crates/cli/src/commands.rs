use crate::accept::Acceptance;
use crate::config::{Cli, Command, LemmaArgs, LemmaId, Opts};
use crate::report::{CacheStats, CliError, Report, Verdict};
use coxdl_dlchar::{character_table_csv, character_table_json, degree_check, Pipeline};
use coxdl_gf::Tower;
use coxdl_langlands::{formal_degree_check, verify_param_bijection, WeilModel};
use coxdl_lemmas as lemmas;
use coxdl_torus::{degree_formula, r_theta, GroupSpec, Torus, TorusChar};
use coxdl_variety::{count_points, CountCache, POINT_CAP};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

/// State shared by one invocation: options, the count cache and the timing log.
pub struct Session {
    pub opts: Opts,
    pub cache: CountCache,
    pub timings: BTreeMap<String, f64>,
}

impl Session {
    pub fn new(opts: &Opts) -> Result<Session, CliError> {
        let cache = match &opts.cache_dir {
            Some(dir) => CountCache::open(dir).map_err(CliError::task("cache"))?,
            None => CountCache::in_memory(),
        };
        Ok(Session { opts: opts.clone(), cache, timings: BTreeMap::new() })
    }

    pub fn timed<T>(&mut self, label: &str, f: impl FnOnce(&mut Session) -> T) -> T {
        let start = Instant::now();
        let out = f(self);
        *self.timings.entry(label.to_string()).or_default() += start.elapsed().as_secs_f64();
        out
    }

    pub fn spec(&self) -> Result<GroupSpec, CliError> {
        let q = self.opts.q.ok_or_else(|| CliError::Usage("--q is required".into()))?;
        let n = self.opts.n.ok_or_else(|| CliError::Usage("--n is required".into()))?;
        GroupSpec::new(q, n, self.opts.kappa, self.opts.h).map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn pipeline(&mut self, spec: &GroupSpec) -> Result<Pipeline, CliError> {
        let label = format!("pipeline {spec}");
        self.timed(&label, |s| Pipeline::with_cache(spec, &mut s.cache)).map_err(CliError::task(&label))
    }

    /// `--theta` values, or `default` when none were given.
    pub fn thetas(&self, torus: &Torus, default: impl FnOnce() -> Vec<TorusChar>) -> Result<Vec<TorusChar>, CliError> {
        if self.opts.theta.is_empty() {
            return Ok(default());
        }
        self.opts.theta.iter().map(|s| torus.parse_char(s).map_err(|e| CliError::Usage(e.to_string()))).collect()
    }

    fn cache_stats(&self) -> CacheStats {
        CacheStats {
            dir: self.opts.cache_dir.as_ref().map(|d| d.display().to_string()),
            entries: self.cache.len(),
            hits: self.cache.hits,
            misses: self.cache.misses,
            skipped_lines: self.cache.skipped,
        }
    }
}

pub fn config_value(cli: &Cli) -> Value {
    json!({
        "command": cli.command,
        "options": cli.opts,
        "caps": { "points": POINT_CAP.to_string(), "group": coxdl_grp::ENUMERATION_CAP.to_string(), "classes": coxdl_grp::CLASS_CAP },
    })
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    if let Some(t) = cli.opts.threads {
        // Ignored if a pool already exists (as in tests running several commands).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let mut s = Session::new(&cli.opts)?;
    let mut csv = None;
    let (results, verdicts) = match &cli.command {
        Command::Count => count(&mut s)?,
        Command::Chartab => {
            let (r, v, c) = chartab(&mut s)?;
            csv = Some(c);
            (r, v)
        }
        Command::Mackey { all } => mackey(&mut s, *all)?,
        Command::Verify { lemma, args } => verify(&mut s, *lemma, args)?,
        Command::Howe => howe(&mut s)?,
        Command::Param { m, pi } => param(&mut s, *m, pi)?,
        Command::Degree => degree(&mut s)?,
        Command::Accept { only } => {
            let acc = Acceptance::new(cli.opts.profile, cli.opts.seed);
            let outcomes = acc.run(&mut s, only);
            let verdicts = outcomes.iter().map(|o| o.verdict()).collect();
            (serde_json::to_value(&outcomes).expect("serializable"), verdicts)
        }
    };
    s.cache.compact().map_err(CliError::task("cache"))?;
    Ok(Report {
        config: config_value(cli),
        results,
        verdicts,
        cache_stats: s.cache_stats(),
        timings: s.timings,
        csv,
    })
}

type Outcome = Result<(Value, Vec<Verdict>), CliError>;

fn count(s: &mut Session) -> Outcome {
    let spec = s.spec()?;
    let m = s.opts.ext.unwrap_or(spec.n);
    let points = s.timed("count", |_| count_points(&spec, m)).map_err(CliError::task("count"))?;
    let mut verdicts = Vec::new();
    if m == spec.n {
        let order = coxdl_grp::group_order(&spec);
        verdicts.push(Verdict {
            name: "points-equal-group-order".into(),
            params: spec.to_string(),
            pass: points as u128 == order,
            skipped: false,
            detail: vec![format!("#X = {points}, #G_h = {order}")],
        });
    }
    Ok((json!({ "points": points }), verdicts))
}

fn chartab(s: &mut Session) -> Result<(Value, Vec<Verdict>, String), CliError> {
    let spec = s.spec()?;
    let p = s.pipeline(&spec)?;
    let thetas = s.thetas(p.torus(), || p.general_position_characters())?;
    let mut rows = Vec::new();
    let mut verdicts = Vec::new();
    for theta in thetas {
        match p.extract(&theta) {
            Ok(rep) => {
                verdicts.push(degree_check(&p, &rep).into());
                rows.push((theta, rep.chi));
            }
            Err(e) => verdicts.push(Verdict {
                name: "extract".into(),
                params: theta.to_string(),
                pass: false,
                skipped: false,
                detail: vec![e.to_string()],
            }),
        }
    }
    let csv = character_table_csv(&p, &rows).map_err(|e| CliError::Failed(e.to_string()))?;
    Ok((character_table_json(&p, &rows), verdicts, csv))
}

fn mackey(s: &mut Session, all: bool) -> Outcome {
    let spec = s.spec()?;
    let p = s.pipeline(&spec)?;
    let thetas =
        s.thetas(p.torus(), || if all { p.torus().characters() } else { p.general_position_characters() })?;
    let report = s.timed("mackey", |_| p.mackey_matrix(&thetas));
    let v = Verdict {
        name: "mackey".into(),
        params: format!("{spec} #Θ={}", thetas.len()),
        pass: report.pass,
        skipped: false,
        detail: vec![],
    };
    Ok((serde_json::to_value(&report).expect("serializable"), vec![v]))
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this lemma")))
}

fn verify(s: &mut Session, lemma: LemmaId, a: &LemmaArgs) -> Outcome {
    let o = s.opts.clone();
    let name = format!("{lemma:?}");
    let v: Result<lemmas::LemmaVerdict, lemmas::LemmaError> = s.timed(&name, |_| match lemma {
        LemmaId::NormImage => Ok(lemmas::verify_norm_image(need(o.q, "q")?, need(o.n, "n")?, a.m.unwrap_or(1), o.h)),
        LemmaId::RhFibers => Ok(lemmas::verify_rh_fibers(
            need(o.q, "q")?,
            need(a.r, "r")?,
            need(a.s, "s")?,
            o.h.max(2),
            a.m.unwrap_or(3),
            a.force,
        )),
        LemmaId::CurveReduction => Ok(lemmas::verify_curve_reduction(
            need(o.q, "q")?,
            need(a.a, "a")?,
            need(a.b, "b")?,
            need(a.c, "c")?,
            need(a.d, "d")?,
            a.m.unwrap_or(3),
        )),
        LemmaId::MinorIdentity => {
            let spec = s_spec(&o)?;
            let mode = match a.samples {
                Some(samples) => lemmas::Sampling::Random { samples, seed: o.seed },
                None => lemmas::Sampling::Exhaustive,
            };
            Ok(lemmas::verify_minor_identity(&spec, o.i0.unwrap_or(1), need(o.ext, "ext")?, mode))
        }
        LemmaId::QuotientFibers => {
            let spec = s_spec(&o)?;
            let schedule = if a.schedule.is_empty() { vec![spec.n, 2 * spec.n] } else { a.schedule.clone() };
            Ok(lemmas::verify_quotient_fibers(&spec, o.i0.unwrap_or(1), &schedule))
        }
        LemmaId::Turnbull => {
            let q = o.q.unwrap_or(2);
            let (p, f) = coxdl_torus::prime_power(q).ok_or_else(|| CliError::Usage(format!("q = {q} is not a prime power")))?;
            let tower = Tower::new(p, f, &[o.ext.unwrap_or(12)]).map_err(CliError::task("turnbull"))?;
            Ok(Ok(lemmas::verify_turnbull(&tower, a.trials, o.seed)))
        }
        LemmaId::SigmaW => {
            let n = need(o.n, "n")? as usize;
            match (o.q, o.ext) {
                (Some(q), Some(m)) if o.kappa == 0 => Ok(lemmas::verify_sigma_hat_emptiness(q, n, m)),
                _ => Ok(lemmas::sigma_w_criteria(n, o.kappa as usize)),
            }
        }
    })?;
    let v = v.map_err(CliError::task(&name))?;
    let verdict: Verdict = v.into();
    Ok((json!({ "lemma": lemma, "notes": verdict.detail }), vec![verdict]))
}

fn s_spec(o: &Opts) -> Result<GroupSpec, CliError> {
    GroupSpec::new(need(o.q, "q")?, need(o.n, "n")?, o.kappa, o.h).map_err(|e| CliError::Usage(e.to_string()))
}

fn torus_for(spec: &GroupSpec) -> Result<Torus, CliError> {
    let tower = Tower::new(spec.p(), spec.f(), &[spec.n]).map_err(CliError::task("tower"))?;
    Ok(Torus::for_spec(Arc::new(tower), spec))
}

fn howe(s: &mut Session) -> Outcome {
    let spec = s.spec()?;
    let t = torus_for(&spec)?;
    let thetas = s.thetas(&t, || t.characters())?;
    let restrict = spec.h >= 2;
    let rows: Vec<Value> = thetas
        .iter()
        .map(|c| {
            let hd = t.howe_decompose(c);
            let gp = t.is_general_position(c, restrict);
            let degree = if gp { degree_formula(&hd, &spec).ok().map(|d| d.to_string()) } else { None };
            json!({
                "theta": c.to_string(),
                "level": t.level(c),
                "general_position": gp,
                "howe": hd,
                "degree": degree,
                "r": if gp { Some(r_theta(&hd, &spec)) } else { None },
            })
        })
        .collect();
    Ok((json!({ "spec": spec, "characters": rows }), vec![]))
}

fn parse_pi(pi: &str) -> Result<(u64, i64), CliError> {
    let bad = || CliError::Usage(format!("--pi expects e:k, got {pi}"));
    let (e, k) = pi.split_once(':').ok_or_else(bad)?;
    Ok((e.trim().parse().map_err(|_| bad())?, k.trim().parse().map_err(|_| bad())?))
}

fn param(s: &mut Session, m: u64, pi: &str) -> Outcome {
    let q = need(s.opts.q, "q")?;
    let n = need(s.opts.n, "n")?;
    let pi = parse_pi(pi)?;
    let w = WeilModel::new(q, n, s.opts.h, m).map_err(CliError::task("param"))?;
    let thetas = s.thetas(w.torus(), || w.torus().characters())?;
    let verdict = s.timed("param", |_| verify_param_bijection(&w, &thetas, pi)).map_err(CliError::task("param"))?;
    let mut chars = Vec::new();
    for theta in &thetas {
        let sigma = w.sigma_theta(theta, pi).map_err(CliError::task("param"))?;
        chars.push(json!({
            "theta": theta.to_string(),
            "dim": sigma.dim,
            "norm": w.inner_product(&sigma, &sigma).to_string(),
            "values": sigma.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        }));
    }
    let results = json!({
        "q": q, "n": n, "h": s.opts.h, "m": m, "pi": [pi.0, pi.1],
        "a_order": w.a_order(), "m_order": w.order(), "characters": chars,
    });
    Ok((results, vec![verdict.into()]))
}

fn degree(s: &mut Session) -> Outcome {
    let spec = s.spec()?;
    let p = s.pipeline(&spec)?;
    let thetas = s.thetas(p.torus(), || p.general_position_characters())?;
    let mut rows = Vec::new();
    let mut verdicts = Vec::new();
    for theta in &thetas {
        let (v, fd) = formal_degree_check(&p, theta).map_err(CliError::task("degree"))?;
        rows.push(fd);
        verdicts.push(v.into());
    }
    Ok((serde_json::to_value(&rows).expect("serializable"), verdicts))
}

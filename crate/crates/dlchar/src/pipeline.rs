use coxdl_grp::{ConjClasses, GhElement, Group, GrpError};
use coxdl_torus::{r_theta, Cyclo, GroupSpec, Torus, TorusChar};
use coxdl_variety::{digit_hash, CountCache, Counter, VarietyError};
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DlError {
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Group(#[from] GrpError),
    #[error("⟨c_θ, c_θ⟩ = {norm} is not q^(n·r) for {theta}: cohomology not concentrated")]
    Concentration { theta: String, norm: String },
    #[error("{0}")]
    Unsupported(String),
}

/// `#S_{g,t}` for every class representative g and torus element t.
#[derive(Clone, Debug, Serialize)]
pub struct SCountTable {
    pub spec: GroupSpec,
    /// `counts[class][t]`.
    pub counts: Vec<Vec<u64>>,
}

/// A class function, one value per conjugacy class.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    pub values: Vec<Cyclo>,
    pub genuine: bool,
}

impl ClassFunction {
    pub fn scale(&self, n: i128, d: i128) -> ClassFunction {
        ClassFunction { values: self.values.iter().map(|v| v.scale(n, d)).collect(), genuine: self.genuine }
    }
}

#[derive(Clone, Debug)]
pub struct ExtractionReport {
    pub theta: TorusChar,
    /// `⟨c_θ, c_θ⟩` as a rational number.
    pub norm: (i128, i128),
    pub r: u32,
    /// `ε = (−1)^r`.
    pub sign: i64,
    /// `λ = ε·q^{nr/2}`.
    pub lambda: i128,
    pub chi: ClassFunction,
    /// `χ(1)`.
    pub degree: i128,
    /// Whether `c/λ` had negative degree and was negated.
    pub flipped: bool,
    /// The closed-form prediction of r from the Howe decomposition.
    pub r_formula: i64,
}

impl ExtractionReport {
    pub fn degree(&self) -> i128 {
        self.degree
    }

    pub fn r_matches(&self) -> bool {
        self.r as i64 == self.r_formula
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MackeyReport {
    pub thetas: Vec<String>,
    /// `⟨χ_θ, χ_θ'⟩`, or `None` where extraction failed.
    pub measured: Vec<Vec<Option<i128>>>,
    pub predicted: Vec<Vec<u32>>,
    pub pass: bool,
}

pub struct Pipeline {
    spec: GroupSpec,
    group: Arc<Group>,
    torus: Arc<Torus>,
    classes: ConjClasses,
    counter: Counter,
    table: SCountTable,
}

impl Pipeline {
    pub fn new(spec: &GroupSpec) -> Result<Pipeline, DlError> {
        Pipeline::with_cache(spec, &mut CountCache::in_memory())
    }

    /// Builds the group, its classes and the full S-count table, reusing cached counts.
    pub fn with_cache(spec: &GroupSpec, cache: &mut CountCache) -> Result<Pipeline, DlError> {
        let group = Arc::new(Group::new(spec)?);
        let torus = Arc::new(Torus::for_spec(group.tower().clone(), spec));
        let classes = group.conjugacy_classes()?;
        let counter = Counter::new(group.clone(), torus.clone());
        let nt = torus.order();
        let key = |c: usize, t: usize| -> u64 {
            let g: Vec<u32> = group.element(classes.reps[c]).digits.iter().map(|d| d.raw()).collect();
            let x: Vec<u32> = torus.element(t).digits().iter().map(|d| d.raw()).collect();
            digit_hash(&[&g, &x])
        };
        let st = spec.tuple();
        let mut counts = vec![vec![None; nt]; classes.count()];
        let mut todo = Vec::new();
        for (c, row) in counts.iter_mut().enumerate() {
            for (t, slot) in row.iter_mut().enumerate() {
                match cache.get(st, c, t, key(c, t)) {
                    Some(v) => *slot = Some(v),
                    None => todo.push((c, t)),
                }
            }
        }
        let computed: Vec<((usize, usize), Result<u64, VarietyError>)> = todo
            .par_iter()
            .map(|&(c, t)| ((c, t), counter.count_s(group.element(classes.reps[c]), t)))
            .collect();
        for ((c, t), res) in computed {
            let v = res?;
            cache.insert(st, c, t, key(c, t), v)?;
            counts[c][t] = Some(v);
        }
        let counts = counts.into_iter().map(|r| r.into_iter().map(|v| v.expect("filled")).collect()).collect();
        let table = SCountTable { spec: *spec, counts };
        Ok(Pipeline { spec: *spec, group, torus, classes, counter, table })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn torus(&self) -> &Arc<Torus> {
        &self.torus
    }

    pub fn classes(&self) -> &ConjClasses {
        &self.classes
    }

    pub fn counter(&self) -> &Counter {
        &self.counter
    }

    pub fn table(&self) -> &SCountTable {
        &self.table
    }

    pub fn class_of(&self, g: &GhElement) -> usize {
        self.classes.class_of[self.group.index_of(g).expect("element of G_h")] as usize
    }

    /// Class containing the identity.
    pub fn identity_class(&self) -> usize {
        self.class_of(&self.group.identity())
    }

    /// `c_θ(g) = (1/#T) Σ_t θ(t)^{-1}·#S_{g,t}`.
    ///
    /// The inverse matches the classical GL_2 characters under the action `g·σ^n(x)·t = x`.
    pub fn c_function(&self, theta: &TorusChar) -> ClassFunction {
        let e = self.torus.conductor();
        let nt = self.torus.order() as i128;
        let table = self.torus.value_table(theta);
        let values = self
            .table
            .counts
            .iter()
            .map(|row| {
                let mut ring = vec![0i128; e as usize];
                for (t, &cnt) in row.iter().enumerate() {
                    ring[((e - table[t]) % e) as usize] += cnt as i128;
                }
                Cyclo::from_group_ring(e, &ring, nt)
            })
            .collect();
        ClassFunction { values, genuine: false }
    }

    /// `(1/#G) Σ_g f1(g)·conj(f2(g))`.
    pub fn inner_product(&self, f1: &ClassFunction, f2: &ClassFunction) -> Cyclo {
        let e = self.torus.conductor();
        let mut acc = Cyclo::zero(e);
        for ((a, b), &size) in f1.values.iter().zip(&f2.values).zip(&self.classes.sizes) {
            acc = &acc + &(a * &b.conj()).scale(size as i128, 1);
        }
        acc.scale(1, self.group.order() as i128)
    }

    /// Divides c_θ by the Frobenius scalar read off from `⟨c_θ, c_θ⟩ = q^{n·r}`.
    pub fn extract(&self, theta: &TorusChar) -> Result<ExtractionReport, DlError> {
        let c = self.c_function(theta);
        let nn = self.inner_product(&c, &c);
        let fail = || DlError::Concentration { theta: theta.to_string(), norm: nn.to_string() };
        let (num, den) = nn.as_rational().ok_or_else(fail)?;
        let qn = (self.spec.q as i128).pow(self.spec.n);
        if den != 1 || num < 1 {
            return Err(fail());
        }
        let mut r = 0u32;
        let mut v = num;
        while v % qn == 0 {
            v /= qn;
            r += 1;
        }
        if v != 1 || (self.spec.n * r) % 2 != 0 {
            return Err(fail());
        }
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let lambda = sign as i128 * (self.spec.q as i128).pow(self.spec.n * r / 2);
        let mut chi = c.scale(1, lambda);
        let mut degree = chi.values[self.identity_class()].as_integer().ok_or_else(fail)?;
        let flipped = degree < 0;
        if flipped {
            chi = chi.scale(-1, 1);
            degree = -degree;
        }
        chi.genuine = true;
        let r_formula = r_theta(&self.torus.howe_decompose(theta), &self.spec);
        Ok(ExtractionReport { theta: theta.clone(), norm: (num, den), r, sign, lambda, chi, degree, flipped, r_formula })
    }

    /// `#{j ∈ Z/n' : θ' = θ∘σ^{n₀ j}}`.
    pub fn mackey_prediction(&self, a: &TorusChar, b: &TorusChar) -> u32 {
        let (np, n0) = (self.spec.n_prime(), self.spec.n0());
        (0..np).filter(|&j| self.torus.compose_sigma(a, (n0 * j) as i64) == *b).count() as u32
    }

    /// Measured `⟨χ_θ, χ_θ'⟩` against the predicted stabilizer counts.
    pub fn mackey_matrix(&self, thetas: &[TorusChar]) -> MackeyReport {
        let reports: Vec<Option<ExtractionReport>> = thetas.par_iter().map(|t| self.extract(t).ok()).collect();
        let mut pass = true;
        let mut measured = Vec::new();
        let mut predicted = Vec::new();
        for (a, ra) in thetas.iter().zip(&reports) {
            let mut mrow = Vec::new();
            let mut prow = Vec::new();
            for (b, rb) in thetas.iter().zip(&reports) {
                let pred = self.mackey_prediction(a, b);
                let meas = match (ra, rb) {
                    (Some(x), Some(y)) => self.inner_product(&x.chi, &y.chi).as_integer(),
                    _ => None,
                };
                if let Some(m) = meas {
                    pass &= m == pred as i128;
                }
                mrow.push(meas);
                prow.push(pred);
            }
            measured.push(mrow);
            predicted.push(prow);
        }
        MackeyReport { thetas: thetas.iter().map(|t| t.to_string()).collect(), measured, predicted, pass }
    }

    /// Characters that are in general position (on U¹ when h ≥ 2).
    pub fn general_position_characters(&self) -> Vec<TorusChar> {
        let restrict = self.spec.h >= 2;
        self.torus.characters().into_iter().filter(|c| self.torus.is_general_position(c, restrict)).collect()
    }
}

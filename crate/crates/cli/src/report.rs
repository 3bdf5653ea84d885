use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("capacity exceeded in {task}: {msg}")]
    Capacity { task: String, msg: String },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Capacity { .. } => 3,
            CliError::Failed(_) => 1,
        }
    }

    pub fn task<E: CapacityAware>(task: &str) -> impl FnOnce(E) -> CliError + '_ {
        move |e| {
            if e.is_capacity() {
                CliError::Capacity { task: task.into(), msg: e.to_string() }
            } else {
                CliError::Failed(format!("{task}: {e}"))
            }
        }
    }
}

/// Errors that can report a capacity overrun.
pub trait CapacityAware: std::fmt::Display {
    fn is_capacity(&self) -> bool;
}

impl CapacityAware for coxdl_variety::VarietyError {
    fn is_capacity(&self) -> bool {
        matches!(self, coxdl_variety::VarietyError::Capacity { .. })
    }
}

impl CapacityAware for coxdl_grp::GrpError {
    fn is_capacity(&self) -> bool {
        matches!(self, coxdl_grp::GrpError::CapExceeded { .. })
    }
}

impl CapacityAware for coxdl_dlchar::DlError {
    fn is_capacity(&self) -> bool {
        match self {
            coxdl_dlchar::DlError::Variety(e) => e.is_capacity(),
            coxdl_dlchar::DlError::Group(e) => e.is_capacity(),
            _ => false,
        }
    }
}

impl CapacityAware for coxdl_lemmas::LemmaError {
    fn is_capacity(&self) -> bool {
        match self {
            coxdl_lemmas::LemmaError::Capacity(_) => true,
            coxdl_lemmas::LemmaError::Group(e) => e.is_capacity(),
            _ => false,
        }
    }
}

impl CapacityAware for coxdl_langlands::ParamError {
    fn is_capacity(&self) -> bool {
        matches!(self, coxdl_langlands::ParamError::Dl(e) if e.is_capacity())
    }
}

macro_rules! plain_errors {
    ($($t:ty),*) => {$(
        impl CapacityAware for $t {
            fn is_capacity(&self) -> bool {
                false
            }
        }
    )*};
}
plain_errors!(coxdl_gf::GfError, coxdl_torus::SpecError, coxdl_torus::TorusError);

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub params: String,
    pub pass: bool,
    pub skipped: bool,
    pub detail: Vec<String>,
}

impl From<coxdl_lemmas::LemmaVerdict> for Verdict {
    fn from(v: coxdl_lemmas::LemmaVerdict) -> Verdict {
        let mut detail = v.notes.clone();
        if let Some(w) = &v.witness {
            detail.push(format!("witness: {w}"));
        }
        if let Some(s) = &v.skipped {
            detail.push(format!("skipped: {s}"));
        }
        Verdict { name: v.id.to_string(), params: v.params.clone(), pass: v.pass, skipped: v.skipped.is_some(), detail }
    }
}

impl From<coxdl_dlchar::Verdict> for Verdict {
    fn from(v: coxdl_dlchar::Verdict) -> Verdict {
        Verdict { name: v.name, params: v.theta, pass: v.pass, skipped: v.skipped, detail: vec![v.detail] }
    }
}

impl From<coxdl_langlands::ParamVerdict> for Verdict {
    fn from(v: coxdl_langlands::ParamVerdict) -> Verdict {
        Verdict { name: v.name, params: v.params, pass: v.pass, skipped: false, detail: v.detail }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CacheStats {
    pub dir: Option<String>,
    pub entries: usize,
    pub hits: u64,
    pub misses: u64,
    pub skipped_lines: u64,
}

/// Everything a command produces. `timings` is the only nondeterministic field.
#[derive(Debug, Serialize)]
pub struct Report {
    pub config: Value,
    pub results: Value,
    pub verdicts: Vec<Verdict>,
    pub timings: BTreeMap<String, f64>,
    pub cache_stats: CacheStats,
    /// CSV rendering for commands that have a table, used with `--format csv`.
    #[serde(skip)]
    pub csv: Option<String>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass || v.skipped)
    }

    pub fn verdicts_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "params", "pass", "skipped", "detail"])?;
        for v in &self.verdicts {
            w.write_record([&v.name, &v.params, &v.pass.to_string(), &v.skipped.to_string(), &v.detail.join("; ")])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("utf-8"))
    }
}

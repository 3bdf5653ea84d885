use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LemmaError {
    #[error(transparent)]
    Field(#[from] coxdl_gf::GfError),
    #[error(transparent)]
    Witt(#[from] coxdl_witt::WittError),
    #[error(transparent)]
    Spec(#[from] coxdl_torus::SpecError),
    #[error(transparent)]
    Group(#[from] coxdl_grp::GrpError),
    #[error("{0}")]
    Capacity(String),
}

/// Outcome of one lemma check at one parameter tuple.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaVerdict {
    pub id: String,
    pub params: String,
    pub pass: bool,
    /// Reason when a hypothesis of the lemma is not met and nothing was checked.
    pub skipped: Option<String>,
    /// A concrete counterexample on failure.
    pub witness: Option<String>,
    pub notes: Vec<String>,
}

impl LemmaVerdict {
    pub fn new(id: &str, params: String) -> LemmaVerdict {
        LemmaVerdict { id: id.into(), params, pass: true, skipped: None, witness: None, notes: Vec::new() }
    }

    pub fn skip(mut self, reason: impl Into<String>) -> LemmaVerdict {
        self.skipped = Some(reason.into());
        self
    }

    /// Records a failure; the first witness is kept.
    pub fn fail(&mut self, witness: impl Into<String>) {
        self.pass = false;
        if self.witness.is_none() {
            self.witness = Some(witness.into());
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Passed and actually ran.
    pub fn ok(&self) -> bool {
        self.pass && self.skipped.is_none()
    }
}

impl std::fmt::Display for LemmaVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = match (&self.skipped, self.pass) {
            (Some(_), _) => "SKIP",
            (None, true) => "PASS",
            (None, false) => "FAIL",
        };
        write!(f, "{status} {} {}", self.id, self.params)?;
        if let Some(r) = &self.skipped {
            write!(f, " ({r})")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}

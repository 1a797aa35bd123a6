//! The scenario registry.

mod matrix;
mod nsub;
mod perm;
mod theorem;

use coxquot::coxeter::{facts, CoxeterError};
use coxquot::nsub::NsubError;
use coxquot::permgrp::PermGroupError;
use coxquot::tc::TcError;
use coxquot::unitary::UnitaryError;
use coxquot::words::WordError;
use coxquot::{catalog, enumerate, CatalogEntry, CosetTable, Fact, Limits, Perm, PermGroup, Strategy, Word};
use rayon::prelude::*;
use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("unknown scenario `{0}`; known: {list}", list = SCENARIOS.join(", "))]
    Unknown(String),
    #[error("resource limit in {scenario}: {msg}")]
    Resource { scenario: String, msg: String },
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Tc(TcError),
    #[error(transparent)]
    Perm(PermGroupError),
    #[error(transparent)]
    Unitary(#[from] UnitaryError),
    #[error(transparent)]
    Nsub(#[from] NsubError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("missing fact `{0}` in the manifest")]
    Fact(String),
}

impl ScenarioError {
    pub fn is_resource(&self) -> bool {
        matches!(self, ScenarioError::Resource { .. })
    }
}

impl From<PermGroupError> for ScenarioError {
    fn from(e: PermGroupError) -> Self {
        match e {
            PermGroupError::TooLarge { .. } => ScenarioError::Resource { scenario: "search".into(), msg: e.to_string() },
            e => ScenarioError::Perm(e),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Overrides every scenario's own coset limit.
    pub max_cosets: Option<usize>,
    pub strategy: Strategy,
    /// Bound on exhaustive searches.
    pub search_bound: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_cosets: None, strategy: Strategy::Hlt, search_bound: coxquot::permgrp::SEARCH_BOUND }
    }
}

pub const SCENARIOS: &[&str] = &[
    "q111",
    "q111-star",
    "q211",
    "y321",
    "y331",
    "w12-alpha-block",
    "q221-tc",
    "q221-matrix",
    "u6-order",
    "nsub-verify-rel1",
    "nsub-verify-rel2",
    "nsub-verify-rel3",
    "main-theorem-report",
];

pub fn run(name: &str, opts: &Options) -> Result<Report, ScenarioError> {
    let r = match name {
        "q111" => perm::q111(opts),
        "q111-star" => perm::q111_star(opts),
        "q211" => perm::q211(opts),
        "y321" => perm::y321(opts),
        "y331" => perm::y331(opts),
        "w12-alpha-block" => perm::w12_alpha_block(opts),
        "q221-tc" => perm::q221_tc(opts),
        "q221-matrix" => matrix::q221_matrix(),
        "u6-order" => matrix::u6_order(),
        "nsub-verify-rel1" => nsub::verify(coxquot::nsub::RelSet::Rel1),
        "nsub-verify-rel2" => nsub::verify(coxquot::nsub::RelSet::Rel2),
        "nsub-verify-rel3" => nsub::verify(coxquot::nsub::RelSet::Rel3),
        "main-theorem-report" => theorem::report(),
        _ => return Err(ScenarioError::Unknown(name.to_string())),
    };
    r.map_err(|e| match e {
        ScenarioError::Resource { msg, .. } => ScenarioError::Resource { scenario: name.to_string(), msg },
        e => e,
    })
}

/// Run every scenario in registry order. With `parallel`, independent scenarios run
/// concurrently; the output order is the registry order either way.
pub fn run_all(opts: &Options, parallel: bool) -> Vec<(String, Result<Report, ScenarioError>)> {
    let go = |n: &&str| (n.to_string(), run(n, opts));
    if parallel {
        SCENARIOS.par_iter().map(go).collect()
    } else {
        SCENARIOS.iter().map(go).collect()
    }
}

pub(crate) fn fact(id: &str) -> Result<Fact, ScenarioError> {
    let (all, _) = facts()?;
    all.into_iter().find(|f| f.id == id).ok_or_else(|| ScenarioError::Fact(id.to_string()))
}

pub(crate) fn facts_input(r: &mut Report) -> Result<(), ScenarioError> {
    let (_, file) = facts()?;
    r.input(&file);
    Ok(())
}

/// A catalog entry enumerated over the subgroup generated by single letters.
pub(crate) struct Image {
    pub entry: CatalogEntry,
    pub table: CosetTable,
    pub perms: Vec<Perm>,
}

impl Image {
    pub fn word(&self, name: &str) -> Result<Perm, ScenarioError> {
        let w = self.entry.word(name).ok_or_else(|| WordError::UnknownLabel(format!("${name}")))?;
        Ok(coxquot::evaluate(w, &self.perms)?)
    }

    pub fn group(&self) -> Result<PermGroup, ScenarioError> {
        Ok(PermGroup::new(self.table.index(), self.perms.clone())?)
    }

    pub fn gen(&self, label: &str) -> &Perm {
        &self.perms[self.entry.alphabet().position(label).expect("label of the entry")]
    }
}

pub(crate) fn enumerate_entry(
    r: &mut Report,
    name: &str,
    subgroup: &str,
    default_max: usize,
    opts: &Options,
) -> Result<Image, ScenarioError> {
    let entry = catalog(name)?;
    if let Some(f) = &entry.source {
        r.input(f);
    }
    let sub: Vec<Word> = subgroup.split_whitespace().map(|l| entry.alphabet().parse(l)).collect::<Result<_, _>>()?;
    let limits = Limits { strategy: opts.strategy, ..Limits::with_max(opts.max_cosets.unwrap_or(default_max)) };
    let label = if subgroup.is_empty() { "1".to_string() } else { subgroup.to_string() };
    let table = r
        .timed(&format!("enumerate {name} over <{label}>"), || enumerate(&entry.presentation, &sub, &limits))
        .map_err(|e| match e {
            TcError::LimitExceeded { .. } => ScenarioError::Resource { scenario: name.to_string(), msg: e.to_string() },
            e => ScenarioError::Tc(e),
        })?;
    r.value(&format!("max live cosets, {name} over <{label}>"), table.stats.max_live);
    let perms = table.perm_images();
    Ok(Image { entry, table, perms })
}

pub(crate) fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

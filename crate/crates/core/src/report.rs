//! Verification reports: named checks with verdicts and matrix witnesses.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::exactlin::FpMatrix;
use crate::repcat::{RepMorphism, Representation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Fail => "fail",
        }
    }
}

/// A matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MatrixData {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u32>,
}

impl From<&FpMatrix> for MatrixData {
    fn from(m: &FpMatrix) -> Self {
        MatrixData { rows: m.rows(), cols: m.cols(), entries: m.entries().to_vec() }
    }
}

/// A morphism or object recorded as evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Witness {
    pub label: String,
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    /// One matrix per vertex for morphisms, one per arrow for objects.
    pub matrices: Vec<MatrixData>,
}

impl Witness {
    pub fn morphism(label: &str, f: &RepMorphism) -> Self {
        Witness {
            label: label.to_string(),
            source_dims: f.source().dims().to_vec(),
            target_dims: f.target().dims().to_vec(),
            matrices: f.vertex_maps().iter().map(MatrixData::from).collect(),
        }
    }

    pub fn object(label: &str, m: &Representation) -> Self {
        Witness {
            label: label.to_string(),
            source_dims: m.dims().to_vec(),
            target_dims: m.dims().to_vec(),
            matrices: m.arrow_maps().iter().map(MatrixData::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Report {
    pub title: String,
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: &str) -> Self {
        Report { title: title.to_string(), ..Default::default() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Worst verdict over all checks; an empty report passes.
    pub fn verdict(&self) -> Verdict {
        self.checks.iter().map(|c| c.verdict).max().unwrap_or(Verdict::Pass)
    }

    pub fn passed(&self) -> bool {
        self.verdict() == Verdict::Pass
    }

    pub fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) -> &mut Check {
        self.push(name, Verdict::from_bool(ok), detail)
    }

    pub fn push(&mut self, name: &str, verdict: Verdict, detail: impl Into<String>) -> &mut Check {
        self.checks.push(Check { name: name.to_string(), verdict, detail: detail.into(), witnesses: Vec::new() });
        self.checks.last_mut().expect("just pushed")
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}/{}", c.name);
            self.checks.push(c);
        }
        for n in other.notes {
            self.notes.push(format!("{prefix}: {n}"));
        }
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl Check {
    pub fn witness(&mut self, w: Witness) -> &mut Self {
        self.witnesses.push(w);
        self
    }
}

//! Structured verdicts returned by every verification routine.

use std::fmt;

use crate::linalg::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    /// The check ran but its result is outside the hypothesis it is meant for.
    Warn,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Warn => "warn",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// First counterexample found, in lexicographic index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<usize>,
    /// Left-hand side of the failing identity, evaluated.
    pub left: Option<Vector>,
    /// Right-hand side of the failing identity, evaluated.
    pub right: Option<Vector>,
}

impl Witness {
    pub fn at(indices: impl Into<Vec<usize>>) -> Self {
        Self {
            indices: indices.into(),
            left: None,
            right: None,
        }
    }

    pub fn with_sides(indices: impl Into<Vec<usize>>, left: Vector, right: Vector) -> Self {
        Self {
            indices: indices.into(),
            left: Some(left),
            right: Some(right),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::Pass,
            witness: None,
            note: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Option<Witness>) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::Fail,
            witness,
            note: None,
        }
    }

    pub fn warn(name: impl Into<String>, note: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::Warn,
            witness: None,
            note: Some(note.into()),
        }
    }

    /// Pass when `witness` is `None`, fail with it otherwise.
    pub fn from_witness(name: impl Into<String>, witness: Option<Witness>) -> Self {
        match witness {
            None => Self::pass(name),
            Some(w) => Self::fail(name, Some(w)),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

/// An ordered list of named checks. A report passes when none of its checks
/// failed; warnings do not count as failures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(check: Check) -> Self {
        Self { checks: vec![check] }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Copies `other` with every check name prefixed by `prefix.`.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        self.checks.extend(other.checks.into_iter().map(|mut c| {
            c.name = format!("{prefix}.{}", c.name);
            c
        }));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn has_warnings(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == Verdict::Warn)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.verdict == Verdict::Fail)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{}: {}", c.name, c.verdict)?;
            if let Some(w) = &c.witness {
                write!(f, " at {:?}", w.indices)?;
            }
            if let Some(n) = &c.note {
                write!(f, " ({n})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// First index tuple (in iteration order) where `eval` returns two unequal
/// sides.
pub(crate) fn first_mismatch<I, F>(indices: I, mut eval: F) -> Option<Witness>
where
    I: IntoIterator<Item = Vec<usize>>,
    F: FnMut(&[usize]) -> (Vector, Vector),
{
    indices.into_iter().find_map(|idx| {
        let (left, right) = eval(&idx);
        (left != right).then(|| Witness::with_sides(idx, left, right))
    })
}

pub(crate) fn ordered_pairs(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| vec![i, j]))
}

pub(crate) fn triples(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| vec![i, j, k])))
}

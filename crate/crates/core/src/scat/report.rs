use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Table lengths or entries out of range.
    Shape,
    /// `d_i d_j = d_{j-1} d_i` for `i < j`.
    FaceFace,
    /// The three mixed `d_i s_j` identities.
    FaceDegeneracy,
    /// `s_i s_j = s_{j+1} s_i` for `i ≤ j`.
    DegeneracyDegeneracy,
    /// A degeneracy map is not injective.
    DegeneracyInjectivity,
    /// A user-declared vertex list disagrees with the face tables.
    DeclaredVertices,
    CompositionUndefined,
    Associativity,
    Unit,
    MapFace,
    MapDegeneracy,
    MapDimension,
    /// Horizontal and vertical structure maps fail to commute.
    Bisimplicial,
    /// A degenerate edge is missing from a marking.
    Marking,
    /// A map sends a marked edge to an unmarked one.
    MarkedMap,
    Functoriality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

/// The outcome of a `validate` call. Violations are data, not errors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, kind: ViolationKind, detail: impl Into<String>) {
        self.violations.push(Violation {
            kind,
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn with_prefix(mut self, prefix: &str) -> Report {
        for v in &mut self.violations {
            v.detail = format!("{prefix}: {}", v.detail);
        }
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "{:?}: {}", v.kind, v.detail)?;
        }
        Ok(())
    }
}

pub trait Validate {
    fn validate(&self) -> Report;
}

//! Structural checks on arrangement data before any class is computed.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use super::{Arrangement, CompiledPencil};
use crate::charkit::GroupSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Note,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub diagnostics: Vec<Diagnostic>,
}

impl Report {
    pub fn push(&mut self, severity: Severity, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic {
            severity,
            message: message.into(),
        });
    }

    pub fn has_errors(&self) -> bool {
        self.errors().next().is_some()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics
            .iter()
            .filter(|d| d.severity == Severity::Error)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.diagnostics {
            let tag = match d.severity {
                Severity::Error => "error",
                Severity::Warning => "warning",
                Severity::Note => "note",
            };
            writeln!(f, "{tag}: {}", d.message)?;
        }
        Ok(())
    }
}

pub const TRANSLATED_WARNING: &str =
    "components of the characteristic variety not passing through the identity cannot be detected and are assumed absent";

/// Check pencils, points and jumping entries against the cover `spec`.
pub fn validate(arr: &Arrangement, spec: &GroupSpec) -> Report {
    let mut report = Report::default();
    if spec.sites().as_ref() != arr.lines.as_slice() {
        report.push(
            Severity::Error,
            "the group is defined on sites other than the arrangement lines",
        );
    }
    for p in &arr.points {
        let distinct: HashSet<&String> = p.lines.iter().collect();
        if distinct.len() != p.lines.len() {
            report.push(Severity::Error, format!("point {} repeats a line", p.id));
        }
        if distinct.len() < 2 {
            report.push(
                Severity::Error,
                format!("point {} lies on fewer than two lines", p.id),
            );
        }
    }
    let structural_errors = report.errors().count();
    let mut ids = HashSet::new();
    for p in arr.all_pencils() {
        if !ids.insert(p.id.clone()) {
            report.push(Severity::Error, format!("duplicate pencil id {}", p.id));
        }
        if p.fibers.len() < 3 {
            report.push(
                Severity::Error,
                format!(
                    "pencil {} has {} fibers; at least 3 are needed",
                    p.id,
                    p.fibers.len()
                ),
            );
        }
        let mut owner: HashMap<&str, usize> = HashMap::new();
        let mut degrees = HashSet::new();
        for (d, fiber) in p.fibers.iter().enumerate() {
            if fiber.is_empty() {
                report.push(
                    Severity::Error,
                    format!("pencil {}: fiber {d} is empty", p.id),
                );
            }
            for (line, &mult) in fiber {
                if mult == 0 {
                    report.push(
                        Severity::Error,
                        format!("pencil {}: line {line} has multiplicity 0", p.id),
                    );
                }
                if let Some(other) = owner.insert(line.as_str(), d) {
                    report.push(
                        Severity::Error,
                        format!(
                            "pencil {}: line {line} lies in fibers {other} and {d}",
                            p.id
                        ),
                    );
                }
            }
            degrees.insert(fiber.values().sum::<u64>());
        }
        if degrees.len() > 1 {
            let mut list: Vec<u64> = degrees.into_iter().collect();
            list.sort_unstable();
            report.push(
                Severity::Error,
                format!("pencil {}: fibers have different degrees {list:?}", p.id),
            );
        }
    }
    if report.errors().count() > structural_errors {
        report.push(Severity::Warning, TRANSLATED_WARNING);
        return report;
    }

    let pencils = arr.compile();
    for p in &pencils {
        if p.pullback_has_kernel(spec.modulus()) {
            report.push(
                Severity::Error,
                format!(
                    "pencil {}: fiber multiplicities share a factor with {} and distinct fiber characters pull back to the same character",
                    p.id,
                    spec.modulus()
                ),
            );
        }
    }
    for (i, entry) in arr.jumping.iter().enumerate() {
        check_jump(&mut report, &pencils, arr, i, entry);
    }
    report.push(Severity::Warning, TRANSLATED_WARNING);
    report
}

fn check_jump(
    report: &mut Report,
    pencils: &[CompiledPencil],
    arr: &Arrangement,
    i: usize,
    entry: &super::JumpEntry,
) {
    let m = entry.modulus;
    if m < 2 {
        report.push(
            Severity::Error,
            format!("jumping entry {i}: modulus {m} < 2"),
        );
        return;
    }
    if entry.exponents.len() != arr.lines.len() {
        report.push(
            Severity::Error,
            format!(
                "jumping entry {i}: {} exponents for {} lines",
                entry.exponents.len(),
                arr.lines.len()
            ),
        );
        return;
    }
    let chi: Vec<u64> = entry.exponents.iter().map(|j| j % m).collect();
    if chi.iter().sum::<u64>() % m != 0 {
        report.push(
            Severity::Error,
            format!("jumping entry {i}: exponents do not sum to 0 mod {m}"),
        );
        return;
    }
    if chi.iter().all(|&j| j == 0) {
        report.push(
            Severity::Error,
            format!("jumping entry {i}: trivial character"),
        );
        return;
    }
    if entry.depth == 0 {
        report.push(
            Severity::Error,
            format!("jumping entry {i}: depth must be positive"),
        );
    }
    let members: Vec<(&str, usize)> = pencils
        .iter()
        .filter_map(|p| {
            p.membership(m, &chi)
                .map(|v| (p.id.as_str(), v.iter().filter(|&&x| x != 0).count()))
        })
        .collect();
    match members.len() {
        0 => report.push(
            Severity::Note,
            format!("jumping entry {i} lies on no pencil and is treated as isolated"),
        ),
        1 => report.push(
            Severity::Error,
            format!(
                "jumping entry {i} lies only on pencil {}; a jumping character needs two",
                members[0].0
            ),
        ),
        _ => {
            let bound: usize = members.iter().map(|(_, s)| s.saturating_sub(2)).sum();
            if entry.depth as usize > bound {
                report.push(
                    Severity::Error,
                    format!(
                        "jumping entry {i}: depth {} exceeds {bound}, the sum of generic depths over its {} pencils",
                        entry.depth,
                        members.len()
                    ),
                );
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::corpus;
    use super::*;

    fn with_depth(depth: u64) -> Report {
        let mut df = corpus::dual_flex();
        df.jumping[0].depth = depth;
        validate(&df, &df.full_spec(3).unwrap())
    }

    #[test]
    fn dual_flex_depth_bound() {
        assert!(!with_depth(2).has_errors());
        assert!(!with_depth(4).has_errors());
        assert!(with_depth(5).has_errors());
        assert!(with_depth(9).has_errors());
        assert!(with_depth(0).has_errors());
    }

    #[test]
    fn pencil_with_two_fibers() {
        let mut ceva = corpus::ceva();
        ceva.pencils[0].fibers.pop();
        let r = validate(&ceva, &ceva.full_spec(5).unwrap());
        assert!(r.errors().any(|d| d.message.contains("2 fibers")));
    }

    #[test]
    fn overlapping_and_unequal_fibers() {
        let mut ceva = corpus::ceva();
        ceva.pencils[0].fibers[0].insert("L2".into(), 1);
        let r = validate(&ceva, &ceva.full_spec(5).unwrap());
        assert!(r.errors().any(|d| d.message.contains("fibers 0 and 1")));
        assert!(r.errors().any(|d| d.message.contains("different degrees")));
    }

    #[test]
    fn always_warns_about_translated_components() {
        let ceva = corpus::ceva();
        let r = validate(&ceva, &ceva.full_spec(5).unwrap());
        assert!(!r.has_errors());
        assert!(r
            .diagnostics
            .iter()
            .any(|d| d.message == TRANSLATED_WARNING));
    }
}

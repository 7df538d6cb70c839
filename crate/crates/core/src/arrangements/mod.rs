//! Line arrangements, their pencils, and the Albanese engine.
//!
//! Positive-dimensional components of the characteristic variety through the
//! identity come from pencils: maps from the complement onto `P¹` minus the
//! images of the degenerate fibers. Local pencils (projection from a point of
//! multiplicity ≥ 3) are detected; all others are declared in the input.

mod engine;
mod validate;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::inverse_mod;
use crate::charkit::{self, GroupSpec, RamChar, Sites};
use crate::error::{Error, Result};

pub use engine::{
    albanese, albanese_class, semiabelian_albanese, unramified_h1_rank,
    unramified_h1_rank_exhaustive, Albanese, AlbaneseOptions, ExhaustiveSummary, Granularity,
    OrbitExport, SemiAbelianClass, DEFAULT_BUDGET,
};
pub use validate::{validate, Diagnostic, Report, Severity};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Point {
    pub id: String,
    pub lines: Vec<String>,
}

/// A pencil: each fiber maps line ids to multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pencil {
    pub id: String,
    pub fibers: Vec<BTreeMap<String, u64>>,
}

impl Pencil {
    /// Union of the fiber lines.
    pub fn support(&self) -> HashSet<&str> {
        self.fibers
            .iter()
            .flat_map(|f| f.keys().map(String::as_str))
            .collect()
    }
}

/// A character of positive depth lying on several components, with its
/// depth taken from the literature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpEntry {
    pub exponents: Vec<u64>,
    pub modulus: u64,
    pub depth: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrangement {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub lines: Vec<String>,
    /// Documentation only.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub equations: BTreeMap<String, String>,
    #[serde(default)]
    pub points: Vec<Point>,
    #[serde(default)]
    pub pencils: Vec<Pencil>,
    #[serde(default)]
    pub jumping: Vec<JumpEntry>,
}

impl Arrangement {
    /// Parse and check references: every line named by a point, fiber or
    /// jumping entry must exist, and jumping entries must be zero-sum vectors
    /// of the right length.
    pub fn from_json(text: &str) -> Result<Self> {
        let arr: Arrangement =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        arr.check_references()?;
        Ok(arr)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("arrangement serializes")
    }

    fn check_references(&self) -> Result<()> {
        let known: HashSet<&str> = self.lines.iter().map(String::as_str).collect();
        if known.len() != self.lines.len() {
            return Err(Error::Malformed("duplicate line ids".into()));
        }
        if self.lines.is_empty() {
            return Err(Error::Malformed("no lines".into()));
        }
        let unknown =
            |id: &str, place: &str| Error::Malformed(format!("unknown line `{id}` in {place}"));
        for p in &self.points {
            for l in &p.lines {
                if !known.contains(l.as_str()) {
                    return Err(unknown(l, &format!("point {}", p.id)));
                }
            }
        }
        for p in &self.pencils {
            for f in &p.fibers {
                for l in f.keys() {
                    if !known.contains(l.as_str()) {
                        return Err(unknown(l, &format!("pencil {}", p.id)));
                    }
                }
            }
        }
        for (i, j) in self.jumping.iter().enumerate() {
            if j.modulus < 2 {
                return Err(Error::Malformed(format!("jumping entry {i}: modulus < 2")));
            }
            if j.exponents.len() != self.lines.len() {
                return Err(Error::Malformed(format!(
                    "jumping entry {i}: {} exponents for {} lines",
                    j.exponents.len(),
                    self.lines.len()
                )));
            }
            if j.exponents.iter().sum::<u64>() % j.modulus != 0 {
                return Err(Error::Malformed(format!(
                    "jumping entry {i}: exponents do not sum to 0 mod {}",
                    j.modulus
                )));
            }
        }
        Ok(())
    }

    pub fn sites(&self) -> Sites {
        self.lines.clone().into()
    }

    pub fn line_index(&self) -> HashMap<&str, usize> {
        self.lines
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect()
    }

    /// Declared pencils followed by the detected local ones.
    pub fn all_pencils(&self) -> Vec<Pencil> {
        let mut out = self.pencils.clone();
        out.extend(detect_local_pencils(self));
        out
    }

    /// The full cover with group `(Z/n)^lines / diagonal`.
    pub fn full_spec(&self, n: u64) -> Result<GroupSpec> {
        GroupSpec::full(n, self.sites())
    }

    pub fn relations_spec(&self, n: u64, relations: Vec<Vec<u64>>) -> Result<GroupSpec> {
        GroupSpec::with_relations(n, self.sites(), relations)
    }

    /// The cyclic cover `w^n = Π l_i`: characters that are multiples of the
    /// diagonal and vanish on the sum of all meridians.
    pub fn diagonal_spec(&self, n: u64) -> Result<GroupSpec> {
        let ones = vec![1; self.lines.len()];
        crate::towers::ray_spec(n, self.sites(), &ones)
    }

    pub(crate) fn compile(&self) -> Vec<CompiledPencil> {
        let index = self.line_index();
        self.all_pencils()
            .into_iter()
            .map(|p| CompiledPencil::new(&p, &index, self.lines.len()))
            .collect()
    }
}

/// One pencil per point of multiplicity at least three: the projection from
/// that point, with the incident lines as reduced fibers.
pub fn detect_local_pencils(arr: &Arrangement) -> Vec<Pencil> {
    arr.points
        .iter()
        .filter(|p| p.lines.len() >= 3)
        .map(|p| Pencil {
            id: format!("local:{}", p.id),
            fibers: p
                .lines
                .iter()
                .map(|l| BTreeMap::from([(l.clone(), 1)]))
                .collect(),
        })
        .collect()
}

/// Pencil data indexed by line position. Fibers are ordered by label, and a
/// label lists the fiber's lines by id, joined with `+`.
#[derive(Clone, Debug)]
pub(crate) struct CompiledPencil {
    pub id: String,
    pub labels: Vec<String>,
    pub fibers: Vec<Vec<(usize, u64)>>,
    pub outside: Vec<usize>,
}

impl CompiledPencil {
    fn new(p: &Pencil, index: &HashMap<&str, usize>, lines: usize) -> Self {
        let mut fibers: Vec<(String, Vec<(usize, u64)>)> = p
            .fibers
            .iter()
            .map(|f| {
                let label = f.keys().cloned().collect::<Vec<_>>().join("+");
                let members = f.iter().map(|(l, &m)| (index[l.as_str()], m)).collect();
                (label, members)
            })
            .collect();
        fibers.sort_by(|a, b| a.0.cmp(&b.0));
        let inside: HashSet<usize> = fibers
            .iter()
            .flat_map(|(_, f)| f.iter().map(|&(i, _)| i))
            .collect();
        CompiledPencil {
            id: p.id.clone(),
            labels: fibers.iter().map(|(l, _)| l.clone()).collect(),
            fibers: fibers.into_iter().map(|(_, f)| f).collect(),
            outside: (0..lines).filter(|i| !inside.contains(i)).collect(),
        }
    }

    pub fn fiber_count(&self) -> usize {
        self.fibers.len()
    }

    pub fn fiber_sites(&self) -> Result<Sites> {
        charkit::sites(self.labels.iter().cloned())
    }

    /// Line character `χ(L) = mult_L · v_d` for `L` in fiber `d`, zero outside.
    pub fn pullback(&self, n: u64, v: &[u64], lines: usize) -> Vec<u64> {
        let mut out = vec![0; lines];
        for (fiber, &vd) in self.fibers.iter().zip(v) {
            for &(l, mult) in fiber {
                out[l] = mult % n * vd % n;
            }
        }
        out
    }

    /// Fiber character pulling back to `chi`, if any; the lexicographically
    /// least one when several exist.
    pub fn membership(&self, n: u64, chi: &[u64]) -> Option<Vec<u64>> {
        if self.outside.iter().any(|&l| chi[l] != 0) {
            return None;
        }
        let mut candidates: Vec<Vec<u64>> = Vec::with_capacity(self.fibers.len());
        let mut unique = true;
        for fiber in &self.fibers {
            let solve = fiber
                .iter()
                .find_map(|&(l, m)| inverse_mod(m % n, n).map(|inv| chi[l] * inv % n));
            let found: Vec<u64> = match solve {
                Some(v) => {
                    if fiber.iter().all(|&(l, m)| m % n * v % n == chi[l]) {
                        vec![v]
                    } else {
                        vec![]
                    }
                }
                None => (0..n)
                    .filter(|&v| fiber.iter().all(|&(l, m)| m % n * v % n == chi[l]))
                    .collect(),
            };
            if found.is_empty() {
                return None;
            }
            unique &= found.len() == 1;
            candidates.push(found);
        }
        if unique {
            let v: Vec<u64> = candidates.into_iter().map(|c| c[0]).collect();
            return (v.iter().sum::<u64>() % n == 0).then_some(v);
        }
        let mut chosen = Vec::with_capacity(candidates.len());
        least_zero_sum(n, &candidates, 0, &mut chosen).then_some(chosen)
    }

    /// Whether some nontrivial fiber character pulls back to the trivial one.
    pub fn pullback_has_kernel(&self, n: u64) -> bool {
        let per_fiber: Vec<Vec<u64>> = self
            .fibers
            .iter()
            .map(|f| {
                (0..n)
                    .filter(|&v| f.iter().all(|&(_, m)| m % n * v % n == 0))
                    .collect()
            })
            .collect();
        has_nonzero_zero_sum(n, &per_fiber, 0, 0, false)
    }
}

fn least_zero_sum(n: u64, candidates: &[Vec<u64>], depth: usize, chosen: &mut Vec<u64>) -> bool {
    if depth == candidates.len() {
        return chosen.iter().sum::<u64>() % n == 0;
    }
    for &v in &candidates[depth] {
        chosen.push(v);
        if least_zero_sum(n, candidates, depth + 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn has_nonzero_zero_sum(n: u64, sets: &[Vec<u64>], depth: usize, sum: u64, nonzero: bool) -> bool {
    if depth == sets.len() {
        return nonzero && sum % n == 0;
    }
    sets[depth]
        .iter()
        .any(|&v| has_nonzero_zero_sum(n, sets, depth + 1, (sum + v) % n, nonzero || v != 0))
}

/// `χ` restricted to the fibers of `pencil`, as a character on the fiber
/// labels, if `χ` comes from the pencil.
pub fn pencil_membership(arr: &Arrangement, chi: &RamChar, pencil: &Pencil) -> Option<RamChar> {
    if chi.exponents().len() != arr.lines.len() {
        return None;
    }
    let compiled = CompiledPencil::new(pencil, &arr.line_index(), arr.lines.len());
    let v = compiled.membership(chi.modulus(), chi.exponents())?;
    RamChar::new(chi.modulus(), compiled.fiber_sites().ok()?, v).ok()
}

/// Bundled arrangement files.
pub mod corpus {
    use super::Arrangement;

    pub const CEVA: &str = include_str!("../../corpus/ceva6.json");
    pub const DUAL_FLEX: &str = include_str!("../../corpus/dualflex9.json");
    pub const HESSE: &str = include_str!("../../corpus/hesse12.json");

    /// Look up a bundled file by name (`ceva6`, `dualflex9`, `hesse12`, with or
    /// without `.json`).
    pub fn text(name: &str) -> Option<&'static str> {
        match name.trim_end_matches(".json") {
            "ceva6" | "ceva" => Some(CEVA),
            "dualflex9" | "dual-flex" => Some(DUAL_FLEX),
            "hesse12" | "hesse" => Some(HESSE),
            _ => None,
        }
    }

    pub fn ceva() -> Arrangement {
        Arrangement::from_json(CEVA).expect("bundled file parses")
    }

    pub fn dual_flex() -> Arrangement {
        Arrangement::from_json(DUAL_FLEX).expect("bundled file parses")
    }

    pub fn hesse() -> Arrangement {
        Arrangement::from_json(HESSE).expect("bundled file parses")
    }
}

//! Mordell–Weil ranks of isotrivial families `A_X = (X × A)/Γ`.
//!
//! The rank equals `dim Hom_Γ(Alb X, A) ⊗ Q`, which vanishes when no unit
//! orbit of characters of `Γ` occurs both in `Alb X` and in `H¹(A)`. Beyond
//! that test the contribution of a shared orbit is `mult_Alb · mult_A · e_O`,
//! with `e_O` an endomorphism dimension that must be supplied by the user.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arrangements::Albanese;
use crate::charkit::least_in_orbit;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitInfo {
    pub mult: u64,
    pub label: Option<String>,
    pub e: Option<u64>,
}

/// Unit orbits of characters of `Γ`, keyed by their least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSet {
    pub modulus: u64,
    pub sites: Vec<String>,
    pub orbits: BTreeMap<Vec<u64>, OrbitInfo>,
}

#[derive(Deserialize)]
struct OrbitFile {
    modulus: u64,
    sites: Vec<String>,
    orbits: Vec<OrbitRecord>,
}

#[derive(Deserialize)]
struct OrbitRecord {
    #[serde(alias = "representative")]
    exponents: Vec<u64>,
    #[serde(default = "one")]
    mult: u64,
    #[serde(default)]
    block: Option<String>,
    #[serde(default)]
    e: Option<u64>,
}

fn one() -> u64 {
    1
}

impl OrbitSet {
    pub fn new(modulus: u64, sites: Vec<String>) -> Self {
        OrbitSet {
            modulus,
            sites,
            orbits: BTreeMap::new(),
        }
    }

    /// Add the orbit of `exponents` (any member), merging multiplicities.
    pub fn add(
        &mut self,
        exponents: &[u64],
        mult: u64,
        label: Option<String>,
        e: Option<u64>,
    ) -> Result<()> {
        let n = self.modulus;
        if exponents.len() != self.sites.len() {
            return Err(Error::LengthMismatch {
                expected: self.sites.len(),
                got: exponents.len(),
            });
        }
        let j: Vec<u64> = exponents.iter().map(|x| x % n).collect();
        if j.iter().sum::<u64>() % n != 0 {
            return Err(Error::ZeroSum {
                modulus: n,
                exponents: j,
            });
        }
        let entry = self
            .orbits
            .entry(least_in_orbit(n, &j))
            .or_insert(OrbitInfo {
                mult: 0,
                label: None,
                e: None,
            });
        entry.mult += mult;
        entry.label = entry.label.take().or(label);
        entry.e = entry.e.or(e);
        Ok(())
    }

    /// Orbits carried by an Albanese computation.
    pub fn from_albanese(alb: &Albanese, lines: &[String]) -> Result<Self> {
        let mut set = OrbitSet::new(alb.modulus, lines.to_vec());
        for o in &alb.orbits {
            set.add(&o.representative, o.mult, Some(o.block.clone()), None)?;
        }
        Ok(set)
    }

    /// Either the JSON written by `albankit arr albanese --json` or an action
    /// file `{"modulus", "sites", "orbits": [{"exponents", "mult", "e"}]}`.
    pub fn from_json(value: &Value) -> Result<Self> {
        let file: OrbitFile = serde_json::from_value(value.clone())
            .map_err(|e| Error::Malformed(format!("orbit file: {e}")))?;
        if file.modulus < 2 {
            return Err(Error::Malformed("orbit file: modulus < 2".into()));
        }
        let mut set = OrbitSet::new(file.modulus, file.sites);
        for r in file.orbits {
            set.add(&r.exponents, r.mult, r.block, r.e)
                .map_err(|e| Error::Malformed(format!("orbit file: {e}")))?;
        }
        Ok(set)
    }

    fn check_compatible(&self, other: &OrbitSet) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::MismatchedGroups(format!(
                "modulus {} vs {}",
                self.modulus, other.modulus
            )));
        }
        if self.sites != other.sites {
            return Err(Error::MismatchedGroups("site lists differ".into()));
        }
        Ok(())
    }
}

/// True when the rank is zero: no orbit is shared.
pub fn mw_rank_zero_test(alb: &OrbitSet, action: &OrbitSet) -> Result<bool> {
    alb.check_compatible(action)?;
    Ok(alb.orbits.keys().all(|k| !action.orbits.contains_key(k)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MwTerm {
    pub representative: Vec<u64>,
    pub mult_alb: u64,
    pub mult_action: u64,
    pub e: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MwReport {
    pub terms: Vec<MwTerm>,
    /// Only when every shared orbit has `e` supplied.
    pub rank: Option<u64>,
}

pub fn mw_rank_report(alb: &OrbitSet, action: &OrbitSet) -> Result<MwReport> {
    alb.check_compatible(action)?;
    let terms: Vec<MwTerm> = alb
        .orbits
        .iter()
        .filter_map(|(k, a)| {
            action.orbits.get(k).map(|b| MwTerm {
                representative: k.clone(),
                mult_alb: a.mult,
                mult_action: b.mult,
                e: b.e.or(a.e),
            })
        })
        .collect();
    let rank = terms
        .iter()
        .map(|t| t.e.map(|e| t.mult_alb * t.mult_action * e))
        .sum::<Option<u64>>();
    Ok(MwReport { terms, rank })
}

impl fmt::Display for MwReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(rank) = self.rank {
            writeln!(f, "rank = {rank}")?;
        } else {
            let single = self.terms.len() == 1;
            let parts: Vec<String> = self
                .terms
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    let coeff = t.mult_alb * t.mult_action;
                    match t.e {
                        Some(e) => (coeff * e).to_string(),
                        None if single => format!("{coeff}·e_O"),
                        None => format!("{coeff}·e_O{}", i + 1),
                    }
                })
                .collect();
            writeln!(f, "rank = {}", parts.join(" + "))?;
        }
        for (i, t) in self.terms.iter().enumerate() {
            let name = if self.terms.len() == 1 {
                "O".to_string()
            } else {
                format!("O{}", i + 1)
            };
            writeln!(
                f,
                "  {name} = orbit of {:?}: mult in Alb {}, mult in H^1(A) {}",
                t.representative, t.mult_alb, t.mult_action
            )?;
        }
        Ok(())
    }
}

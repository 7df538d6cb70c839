//! Cyclic blocks and the formal algebra of isogeny classes.
//!
//! A [`CyclicBlock`] labels the primitive part of the Jacobian of the cyclic
//! cover `y^m = Π (x − p)^{a_p}`: the isotypical piece on which the covering
//! group acts through characters of exact order `m`. Its dimension is
//! `φ(m)·(s − 2)/2` for `s` branch points.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd_all, phi, units};
use crate::error::{Error, Result};

/// Configuration tag shared by all blocks with three branch points (any three
/// points of the line are projectively equivalent).
pub const THREE_POINTS: &str = "P1:3pts";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicBlock {
    order: u64,
    exponents: Vec<u64>,
    config: String,
}

impl CyclicBlock {
    /// Canonical representative of the block `(m; a)` on configuration
    /// `config`.
    ///
    /// The exponent list is replaced by its least unit rescaling; on three
    /// points it is then sorted, and the two steps repeat until stable. The
    /// result is invariant under unit rescaling of the input. Unit orbits on
    /// labelled sites keep distinct labels, so the three orbits of the full
    /// `Z/5` cover on three points label as `[1,1,3]`, `[1,1,3]`, `[1,2,2]`.
    pub fn canonicalize(order: u64, exponents: &[u64], config: &str) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidBlockData(format!("order {order} < 2")));
        }
        if exponents.len() < 3 {
            return Err(Error::InvalidBlockData(format!(
                "{} branch points; a block needs at least 3",
                exponents.len()
            )));
        }
        let mut a: Vec<u64> = exponents.iter().map(|x| x % order).collect();
        if a.contains(&0) {
            return Err(Error::InvalidBlockData(format!(
                "exponent divisible by {order} in {exponents:?}"
            )));
        }
        if a.iter().sum::<u64>() % order != 0 {
            return Err(Error::InvalidBlockData(format!(
                "exponents {exponents:?} do not sum to 0 mod {order}"
            )));
        }
        if gcd_all(order, &a) != 1 {
            return Err(Error::InvalidBlockData(format!(
                "gcd({order}, {exponents:?}) != 1"
            )));
        }
        let three = a.len() == 3;
        if !three && config == THREE_POINTS {
            return Err(Error::InvalidBlockData(format!(
                "configuration {THREE_POINTS} with {} points",
                a.len()
            )));
        }
        let unit_list = units(order);
        loop {
            let mut next = least_rescaling(order, &a, &unit_list);
            if three {
                next.sort_unstable();
            }
            if next == a {
                break;
            }
            a = next;
        }
        Ok(CyclicBlock {
            order,
            exponents: a,
            config: if three {
                THREE_POINTS.to_string()
            } else {
                config.to_string()
            },
        })
    }

    pub fn three_point(order: u64, exponents: [u64; 3]) -> Result<Self> {
        Self::canonicalize(order, &exponents, THREE_POINTS)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn config(&self) -> &str {
        &self.config
    }

    pub fn is_three_point(&self) -> bool {
        self.exponents.len() == 3
    }

    pub fn dimension(&self) -> u64 {
        phi(self.order) * (self.exponents.len() as u64 - 2) / 2
    }

    /// Name from the identification table, if any.
    pub fn name(&self) -> Option<&'static str> {
        match (self.order, self.exponents.as_slice()) {
            (3, [1, 1, 1]) => Some("E0"),
            (5, _) if self.is_three_point() => Some("Q(ζ5)-CM genus-2"),
            _ => None,
        }
    }

    fn short_name(&self) -> Option<&'static str> {
        self.name().filter(|n| *n == "E0")
    }

    /// `(m;[a,b,c])`, with the configuration appended for four or more points.
    pub fn label(&self) -> String {
        let exps = join(&self.exponents);
        if self.is_three_point() {
            format!("({};[{}])", self.order, exps)
        } else {
            format!("({};[{}];{})", self.order, exps, self.config)
        }
    }
}

fn least_rescaling(order: u64, a: &[u64], unit_list: &[u64]) -> Vec<u64> {
    let mut best = a.to_vec();
    let mut candidate = vec![0; a.len()];
    for &t in unit_list {
        for (c, &x) in candidate.iter_mut().zip(a) {
            *c = x * t % order;
        }
        if candidate < best {
            best.copy_from_slice(&candidate);
        }
    }
    best
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for CyclicBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// An isogeny factor: either a cyclic block or an unfactored abelian variety
/// kept whole under a name (e.g. the Jacobian of a four-point cover).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Cyclic(CyclicBlock),
    Opaque { name: String, dimension: u64 },
}

impl Factor {
    pub fn dimension(&self) -> u64 {
        match self {
            Factor::Cyclic(b) => b.dimension(),
            Factor::Opaque { dimension, .. } => *dimension,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Factor::Cyclic(b) => b.label(),
            Factor::Opaque { name, .. } => name.clone(),
        }
    }

    pub fn as_block(&self) -> Option<&CyclicBlock> {
        match self {
            Factor::Cyclic(b) => Some(b),
            Factor::Opaque { .. } => None,
        }
    }

    fn short_label(&self) -> String {
        match self {
            Factor::Cyclic(b) => b
                .short_name()
                .map(str::to_string)
                .unwrap_or_else(|| b.label()),
            Factor::Opaque { name, .. } => name.clone(),
        }
    }
}

impl From<CyclicBlock> for Factor {
    fn from(b: CyclicBlock) -> Self {
        Factor::Cyclic(b)
    }
}

/// A formal product of factors with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IsogenyClass {
    entries: BTreeMap<Factor, u64>,
}

impl IsogenyClass {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(factor: impl Into<Factor>, mult: u64) -> Self {
        let mut c = Self::new();
        c.insert(factor, mult);
        c
    }

    pub fn insert(&mut self, factor: impl Into<Factor>, mult: u64) {
        if mult > 0 {
            *self.entries.entry(factor.into()).or_insert(0) += mult;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, factor: &Factor) -> u64 {
        self.entries.get(factor).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Factor, u64)> {
        self.entries.iter().map(|(f, &m)| (f, m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn product(&self, other: &IsogenyClass) -> IsogenyClass {
        let mut out = self.clone();
        for (f, &m) in &other.entries {
            out.insert(f.clone(), m);
        }
        out
    }

    pub fn quotient(&self, other: &IsogenyClass) -> Result<IsogenyClass> {
        let mut out = self.clone();
        for (f, &m) in &other.entries {
            let have = out.multiplicity(f);
            if have < m {
                return Err(Error::NotDivisible(format!(
                    "{}^{m} does not divide {}^{have}",
                    f.label(),
                    f.label()
                )));
            }
            if have == m {
                out.entries.remove(f);
            } else {
                out.entries.insert(f.clone(), have - m);
            }
        }
        Ok(out)
    }

    pub fn dimension(&self) -> u64 {
        self.entries.iter().map(|(f, &m)| f.dimension() * m).sum()
    }

    /// Canonical text form, `(m;[a,b,c])^k * …`; the empty class renders as `0`.
    pub fn render(&self) -> String {
        self.render_with(Factor::label)
    }

    /// Like [`render`](Self::render) but with short names such as `E0`.
    pub fn render_named(&self) -> String {
        self.render_with(Factor::short_label)
    }

    fn render_with(&self, label: impl Fn(&Factor) -> String) -> String {
        if self.entries.is_empty() {
            return "0".to_string();
        }
        self.entries
            .iter()
            .map(|(f, m)| format!("{}^{m}", label(f)))
            .collect::<Vec<_>>()
            .join(" * ")
    }

    pub fn to_records(&self) -> Vec<FactorRecord> {
        self.entries
            .iter()
            .map(|(f, &mult)| match f {
                Factor::Cyclic(b) => FactorRecord {
                    m: Some(b.order),
                    exponents: Some(b.exponents.clone()),
                    config: Some(b.config.clone()),
                    mult,
                    name: b.name().map(str::to_string),
                    dimension: b.dimension(),
                },
                Factor::Opaque { name, dimension } => FactorRecord {
                    m: None,
                    exponents: None,
                    config: None,
                    mult,
                    name: Some(name.clone()),
                    dimension: *dimension,
                },
            })
            .collect()
    }

    pub fn from_records(records: &[FactorRecord]) -> Result<IsogenyClass> {
        let mut out = IsogenyClass::new();
        for r in records {
            let factor = match (&r.m, &r.exponents) {
                (Some(m), Some(a)) => Factor::Cyclic(CyclicBlock::canonicalize(
                    *m,
                    a,
                    r.config.as_deref().unwrap_or(THREE_POINTS),
                )?),
                _ => Factor::Opaque {
                    name: r.name.clone().ok_or_else(|| {
                        Error::Malformed("factor record without block data or name".into())
                    })?,
                    dimension: r.dimension,
                },
            };
            out.insert(factor, r.mult);
        }
        Ok(out)
    }
}

impl fmt::Display for IsogenyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// JSON form of one class entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub m: Option<u64>,
    pub exponents: Option<Vec<u64>>,
    pub config: Option<String>,
    pub mult: u64,
    pub name: Option<String>,
    pub dimension: u64,
}

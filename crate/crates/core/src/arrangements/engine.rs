//! Albanese classes of abelian covers of the plane branched over a line
//! arrangement.
//!
//! Fast path: each pencil `j` contributes the Jacobian decomposition of the
//! `P¹`-cover whose characters `Char Γ_j` are the fiber characters pulling
//! back into `Char Γ`. A jumping orbit lying on `κ` pencils is counted once
//! per pencil there, while its true multiplicity is `φ(m)·δ / (2 dim B)`; the
//! surplus copies of its block `B` are divided out.
//!
//! Exhaustive path: sum the depth of every character of `Γ` directly.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::validate::{validate, Report, Severity};
use super::{Arrangement, CompiledPencil};
use crate::arith::phi;
use crate::blocks::{CyclicBlock, Factor, IsogenyClass};
use crate::charkit::{char_order, least_in_orbit, GroupSpec};
use crate::error::{Error, Result};
use crate::p1covers;

/// Default cap on `|Char Γ|` for the exhaustive path.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// How far Jacobians of pencil covers are factored.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Granularity {
    /// Into cyclic blocks.
    #[default]
    Fine,
    /// Pencils with four or more fibers and no jumping characters keep their
    /// cover Jacobian as a single named factor.
    Coarse,
}

#[derive(Clone, Debug)]
pub struct AlbaneseOptions {
    pub granularity: Granularity,
    pub exhaustive: bool,
    pub budget: u128,
}

impl Default for AlbaneseOptions {
    fn default() -> Self {
        AlbaneseOptions {
            granularity: Granularity::Fine,
            exhaustive: false,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// A unit orbit of line characters with positive depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitExport {
    /// Least member of the orbit.
    pub representative: Vec<u64>,
    pub order: u64,
    pub block: String,
    pub mult: u64,
    pub pencils: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustiveSummary {
    pub characters: u64,
    pub ramified_depth: u64,
    pub unramified_rank: u64,
    pub q: u64,
    /// Undeclared characters found on two or more pencils (first few).
    pub shared: Vec<Vec<u64>>,
    pub shared_count: u64,
}

#[derive(Clone, Debug)]
pub struct Albanese {
    pub modulus: u64,
    pub q: u64,
    pub class: IsogenyClass,
    pub report: Report,
    pub orbits: Vec<OrbitExport>,
    pub exhaustive: Option<ExhaustiveSummary>,
}

impl Albanese {
    pub fn to_json(&self, lines: &[String]) -> Value {
        json!({
            "q": self.q,
            "modulus": self.modulus,
            "sites": lines,
            "class": self.class.to_records(),
            "rendered": self.class.render(),
            "named": self.class.render_named(),
            "orbits": self.orbits,
            "exhaustive": self.exhaustive,
            "diagnostics": self.report.diagnostics,
        })
    }
}

/// `0 → (C*)^torus_rank → Alb → abelian → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiAbelianClass {
    pub torus_rank: u64,
    pub abelian: IsogenyClass,
}

impl SemiAbelianClass {
    pub fn to_json(&self) -> Value {
        json!({
            "torus_rank": self.torus_rank,
            "q": self.abelian.dimension(),
            "class": self.abelian.to_records(),
            "rendered": self.abelian.render(),
            "named": self.abelian.render_named(),
        })
    }
}

impl fmt::Display for SemiAbelianClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "0 -> (C*)^{} -> Alb -> {} -> 0",
            self.torus_rank,
            self.abelian.render_named()
        )
    }
}

struct JumpOrbit {
    rep: Vec<u64>,
    order: u64,
    depth: u64,
    /// Member pencils with the fiber character of `rep`.
    members: Vec<(usize, Vec<u64>)>,
}

struct Prepared {
    n: u64,
    lines: usize,
    pencils: Vec<CompiledPencil>,
    /// Fiber characters of `Char Γ_j`, per pencil.
    images: Vec<Vec<Vec<u64>>>,
    jumps: Vec<JumpOrbit>,
    /// Every member of every jumping orbit, with the orbit index.
    jump_members: HashMap<Vec<u64>, usize>,
    report: Report,
}

fn prepare(arr: &Arrangement, spec: &GroupSpec) -> Result<Prepared> {
    if spec.sites().as_ref() != arr.lines.as_slice() {
        return Err(Error::MismatchedGroups(
            "group sites differ from the arrangement lines".into(),
        ));
    }
    let mut report = validate(arr, spec);
    if report.has_errors() {
        return Err(Error::Validation(report.to_string()));
    }
    let n = spec.modulus();
    let lines = arr.lines.len();
    let pencils = arr.compile();
    let images = pencils
        .par_iter()
        .map(|p| pencil_image(p, spec, lines))
        .collect::<Result<Vec<_>>>()?;

    let mut by_rep: BTreeMap<Vec<u64>, (u64, Option<String>)> = BTreeMap::new();
    for entry in &arr.jumping {
        let m = entry.modulus;
        if n % m != 0 {
            report.push(
                Severity::Note,
                format!("jumping entry of modulus {m} has no characters in a Z/{n} cover"),
            );
            continue;
        }
        let lifted: Vec<u64> = entry.exponents.iter().map(|j| j % m * (n / m)).collect();
        if !spec.contains(&lifted) || lifted.iter().all(|&j| j == 0) {
            continue;
        }
        let rep = least_in_orbit(n, &lifted);
        match by_rep.get(&rep) {
            Some((d, _)) if *d != entry.depth => {
                return Err(Error::BadJumpData(format!(
                    "orbit of {rep:?} declared with depths {d} and {}",
                    entry.depth
                )));
            }
            _ => {
                by_rep.insert(rep, (entry.depth, entry.source.clone()));
            }
        }
    }
    let mut jumps = Vec::new();
    let mut jump_members = HashMap::new();
    for (rep, (depth, _)) in by_rep {
        let members: Vec<(usize, Vec<u64>)> = pencils
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.membership(n, &rep).map(|v| (i, v)))
            .collect();
        let order = char_order(n, &rep);
        for t in crate::arith::units(order) {
            let member: Vec<u64> = rep.iter().map(|j| j * t % n).collect();
            jump_members.insert(member, jumps.len());
        }
        jumps.push(JumpOrbit {
            rep,
            order,
            depth,
            members,
        });
    }
    Ok(Prepared {
        n,
        lines,
        pencils,
        images,
        jumps,
        jump_members,
        report,
    })
}

/// Fiber characters whose pullback lies in `Char Γ`, in lexicographic order.
fn pencil_image(p: &CompiledPencil, spec: &GroupSpec, lines: usize) -> Result<Vec<Vec<u64>>> {
    let n = spec.modulus();
    let fibers = GroupSpec::full(n, p.fiber_sites()?)?;
    if spec.work_size() < fibers.work_size() {
        // small cover (e.g. a cyclic one): push its characters forward
        let mut out: Vec<Vec<u64>> = spec
            .exponent_vectors()
            .filter_map(|chi| p.membership(n, &chi))
            .collect();
        out.sort_unstable();
        out.dedup();
        return Ok(out);
    }
    if fibers.work_size() > DEFAULT_BUDGET {
        return Err(Error::TooLarge(fibers.work_size()));
    }
    Ok(fibers
        .exponent_vectors()
        .filter(|v| spec.contains(&p.pullback(n, v, lines)))
        .collect())
}

fn support_size(v: &[u64]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

fn pencil_block(p: &CompiledPencil, n: u64, v: &[u64]) -> Result<CyclicBlock> {
    p1covers::block_of(
        n,
        v,
        |idx| {
            idx.iter()
                .map(|&i| p.labels[i].as_str())
                .collect::<Vec<_>>()
                .join(",")
        },
        &p.id,
    )
}

/// Albanese class with the default options.
pub fn albanese_class(
    arr: &Arrangement,
    spec: &GroupSpec,
    granularity: Granularity,
) -> Result<(u64, IsogenyClass, Report)> {
    let out = albanese(
        arr,
        spec,
        &AlbaneseOptions {
            granularity,
            ..AlbaneseOptions::default()
        },
    )?;
    Ok((out.q, out.class, out.report))
}

pub fn albanese(arr: &Arrangement, spec: &GroupSpec, opts: &AlbaneseOptions) -> Result<Albanese> {
    let mut prep = prepare(arr, spec)?;
    let n = prep.n;
    let mut class = IsogenyClass::new();
    let jump_pencils: HashSet<usize> = prep
        .jumps
        .iter()
        .flat_map(|j| j.members.iter().map(|(i, _)| *i))
        .collect();

    for (i, p) in prep.pencils.iter().enumerate() {
        let image = &prep.images[i];
        if image.len() <= 1 {
            continue;
        }
        let gamma = GroupSpec::from_characters(n, p.fiber_sites()?, image)?;
        let k = p.fiber_count();
        if opts.granularity == Granularity::Coarse && k >= 4 && !jump_pencils.contains(&i) {
            let genus = p1covers::cover_genus(&gamma)?;
            if genus > 0 {
                let full = image.len() as u128 == (n as u128).pow(k as u32 - 1);
                let name = if full {
                    format!("Jac({k}pt-Z/{n}-cover)")
                } else {
                    format!("Jac({}-cover)", p.id)
                };
                class.insert(
                    Factor::Opaque {
                        name,
                        dimension: genus,
                    },
                    1,
                );
            }
        } else {
            class = class.product(&p1covers::decompose_abelian_cover_in(&gamma, &p.id)?);
        }
    }

    let mut jump_exports = Vec::new();
    for jump in &prep.jumps {
        let units = phi(jump.order);
        let total_depth = units * jump.depth;
        let names: Vec<String> = jump
            .members
            .iter()
            .map(|(i, _)| prep.pencils[*i].id.clone())
            .collect();
        match jump.members.len() {
            0 => {
                if total_depth % 2 != 0 {
                    return Err(Error::BadJumpData(format!(
                        "isolated orbit of {:?} has odd total depth {total_depth}",
                        jump.rep
                    )));
                }
                let name = format!("Isolated({})", render_exponents(&jump.rep, n));
                class.insert(
                    Factor::Opaque {
                        name: name.clone(),
                        dimension: total_depth / 2,
                    },
                    1,
                );
                jump_exports.push(OrbitExport {
                    representative: jump.rep.clone(),
                    order: jump.order,
                    block: name,
                    mult: 1,
                    pencils: names,
                });
                continue;
            }
            1 => {
                return Err(Error::BadJumpData(format!(
                    "{:?} lies on the single component {}",
                    jump.rep, names[0]
                )));
            }
            _ => {}
        }
        let mut block: Option<CyclicBlock> = None;
        let mut naive = 0;
        for (i, v) in &jump.members {
            if support_size(v) < 3 {
                continue;
            }
            naive += 1;
            let b = pencil_block(&prep.pencils[*i], n, v)?;
            match &block {
                Some(prev) if *prev != b => {
                    return Err(Error::InconsistentJump(format!(
                        "{:?}: {prev} on one pencil, {b} on {}",
                        jump.rep, prep.pencils[*i].id
                    )));
                }
                _ => block = Some(b),
            }
        }
        let block = block.ok_or_else(|| {
            Error::BadJumpData(format!(
                "{:?} has positive depth but is nontrivial on at most two fibers of every pencil",
                jump.rep
            ))
        })?;
        let dim = block.dimension();
        if total_depth % (2 * dim) != 0 {
            return Err(Error::BadJumpData(format!(
                "depth {} on the orbit of {:?} gives {total_depth}/{} copies of {block}",
                jump.depth,
                jump.rep,
                2 * dim
            )));
        }
        let true_mult = total_depth / (2 * dim);
        if true_mult > naive {
            return Err(Error::Maximality(format!(
                "{:?} needs {true_mult} copies of {block} but its pencils supply {naive}",
                jump.rep
            )));
        }
        class = class.quotient(&IsogenyClass::singleton(block.clone(), naive - true_mult))?;
        jump_exports.push(OrbitExport {
            representative: jump.rep.clone(),
            order: jump.order,
            block: block.label(),
            mult: true_mult,
            pencils: names,
        });
    }
    let q = class.dimension();
    let orbits = export_orbits(&prep, jump_exports)?;

    let exhaustive = if opts.exhaustive {
        let size = spec.work_size();
        if size > opts.budget {
            prep.report.push(
                Severity::Note,
                format!(
                    "fast-path only: {size} characters exceed the exhaustive budget of {}",
                    opts.budget
                ),
            );
            None
        } else {
            let summary = exhaustive(&prep, spec)?;
            if summary.q != q {
                prep.report.push(
                    Severity::Error,
                    format!(
                        "exhaustive depth sum gives q = {}, fast path {q}",
                        summary.q
                    ),
                );
            }
            let fast_unramified = fast_unramified(&prep);
            if summary.unramified_rank != fast_unramified {
                prep.report.push(
                    Severity::Error,
                    format!(
                        "exhaustive unramified rank {}, fast path {fast_unramified}",
                        summary.unramified_rank
                    ),
                );
            }
            if summary.shared_count > 0 {
                prep.report.push(
                    Severity::Error,
                    format!(
                        "{} undeclared characters lie on two or more pencils, e.g. {:?}",
                        summary.shared_count, summary.shared[0]
                    ),
                );
            }
            Some(summary)
        }
    } else {
        None
    };

    Ok(Albanese {
        modulus: n,
        q,
        class,
        report: prep.report,
        orbits,
        exhaustive,
    })
}

fn render_exponents(v: &[u64], n: u64) -> String {
    let body = v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    format!("({body}) mod {n}")
}

fn export_orbits(prep: &Prepared, jumps: Vec<OrbitExport>) -> Result<Vec<OrbitExport>> {
    let n = prep.n;
    let mut seen: BTreeMap<Vec<u64>, OrbitExport> = BTreeMap::new();
    for (i, p) in prep.pencils.iter().enumerate() {
        for v in &prep.images[i] {
            if support_size(v) < 3 || least_in_orbit(n, v) != *v {
                continue;
            }
            let line = p.pullback(n, v, prep.lines);
            if prep.jump_members.contains_key(&line) {
                continue;
            }
            let rep = least_in_orbit(n, &line);
            let block = pencil_block(p, n, v)?.label();
            let entry = seen.entry(rep.clone()).or_insert_with(|| OrbitExport {
                representative: rep,
                order: char_order(n, v),
                block,
                mult: 0,
                pencils: Vec::new(),
            });
            entry.mult += 1;
            entry.pencils.push(p.id.clone());
        }
    }
    for j in jumps {
        seen.insert(j.representative.clone(), j);
    }
    Ok(seen.into_values().filter(|o| o.mult > 0).collect())
}

#[derive(Default)]
struct Tally {
    characters: u64,
    ramified: u64,
    unramified: u64,
    shared: BTreeSet<Vec<u64>>,
    shared_count: u64,
}

const SHARED_KEPT: usize = 5;

fn exhaustive(prep: &Prepared, spec: &GroupSpec) -> Result<ExhaustiveSummary> {
    let n = prep.n;
    let tally = spec.par_fold(
        Tally::default,
        |mut t, chi| {
            t.characters += 1;
            if chi.iter().all(|&j| j == 0) {
                t.unramified += prep.lines as u64 - 1;
                return t;
            }
            if let Some(&o) = prep.jump_members.get(chi) {
                t.ramified += prep.jumps[o].depth;
                t.unramified += prep.jumps[o].depth;
                return t;
            }
            let mut members = 0;
            for p in &prep.pencils {
                if let Some(v) = p.membership(n, chi) {
                    members += 1;
                    t.ramified += support_size(&v).saturating_sub(2) as u64;
                    t.unramified += p.fiber_count() as u64 - 2;
                }
            }
            if members >= 2 {
                t.shared_count += 1;
                t.shared.insert(chi.to_vec());
                while t.shared.len() > SHARED_KEPT {
                    t.shared.pop_last();
                }
            }
            t
        },
        |mut a, b| {
            a.characters += b.characters;
            a.ramified += b.ramified;
            a.unramified += b.unramified;
            a.shared_count += b.shared_count;
            a.shared.extend(b.shared);
            while a.shared.len() > SHARED_KEPT {
                a.shared.pop_last();
            }
            a
        },
    )?;
    if tally.ramified % 2 != 0 {
        return Err(Error::Internal(format!(
            "odd ramified depth sum {}",
            tally.ramified
        )));
    }
    Ok(ExhaustiveSummary {
        characters: tally.characters,
        ramified_depth: tally.ramified,
        unramified_rank: tally.unramified,
        q: tally.ramified / 2,
        shared: tally.shared.into_iter().collect(),
        shared_count: tally.shared_count,
    })
}

fn fast_unramified(prep: &Prepared) -> u64 {
    let n = prep.n;
    let mut total = prep.lines as u64 - 1;
    for (p, image) in prep.pencils.iter().zip(&prep.images) {
        for v in image {
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            if prep
                .jump_members
                .contains_key(&p.pullback(n, v, prep.lines))
            {
                continue;
            }
            total += p.fiber_count() as u64 - 2;
        }
    }
    for j in &prep.jumps {
        total += phi(j.order) * j.depth;
    }
    total
}

/// `rk H₁` of the unbranched cover: `#lines − 1` from the trivial character,
/// `k_j − 2` for each pencil a nontrivial character lies on, and the declared
/// depth for jumping characters.
pub fn unramified_h1_rank(arr: &Arrangement, spec: &GroupSpec) -> Result<u64> {
    Ok(fast_unramified(&prepare(arr, spec)?))
}

/// [`unramified_h1_rank`] by enumerating every character.
pub fn unramified_h1_rank_exhaustive(arr: &Arrangement, spec: &GroupSpec) -> Result<u64> {
    let prep = prepare(arr, spec)?;
    Ok(exhaustive(&prep, spec)?.unramified_rank)
}

pub fn semiabelian_albanese(arr: &Arrangement, spec: &GroupSpec) -> Result<SemiAbelianClass> {
    let alb = albanese(arr, spec, &AlbaneseOptions::default())?;
    let rank = unramified_h1_rank(arr, spec)?;
    let torus_rank = rank.checked_sub(2 * alb.q).ok_or_else(|| {
        Error::Internal(format!(
            "first Betti number {rank} below 2q = {}",
            2 * alb.q
        ))
    })?;
    Ok(SemiAbelianClass {
        torus_rank,
        abelian: alb.class,
    })
}

#[cfg(test)]
mod tests {
    use super::super::corpus;
    use super::*;

    fn fine(arr: &Arrangement, spec: &GroupSpec) -> Albanese {
        albanese(
            arr,
            spec,
            &AlbaneseOptions {
                exhaustive: true,
                ..AlbaneseOptions::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn ceva_quintic() {
        let ceva = corpus::ceva();
        let out = fine(&ceva, &ceva.full_spec(5).unwrap());
        assert_eq!(out.q, 30);
        assert_eq!(out.class.render(), "(5;[1,1,3])^10 * (5;[1,2,2])^5");
        assert_eq!(out.exhaustive.as_ref().unwrap().q, 30);
        assert!(!out.report.has_errors(), "{}", out.report);
        assert_eq!(out.orbits.len(), 15);
    }

    #[test]
    fn ceva_cubic() {
        let ceva = corpus::ceva();
        let out = fine(&ceva, &ceva.full_spec(3).unwrap());
        assert_eq!(out.class.render_named(), "E0^5");
    }

    #[test]
    fn dual_flex_cubic() {
        let df = corpus::dual_flex();
        let out = fine(&df, &df.full_spec(3).unwrap());
        assert_eq!(out.class.render_named(), "E0^14");
        assert_eq!(out.exhaustive.as_ref().unwrap().q, 14);
        assert!(!out.report.has_errors(), "{}", out.report);
    }

    #[test]
    fn hesse_coarse() {
        let h = corpus::hesse();
        let (q, class, _) =
            albanese_class(&h, &h.full_spec(3).unwrap(), Granularity::Coarse).unwrap();
        assert_eq!(q, 154);
        assert_eq!(class.render_named(), "E0^54 * Jac(4pt-Z/3-cover)^10");
    }

    #[test]
    fn milnor_fiber() {
        let ceva = corpus::ceva();
        let spec = ceva.diagonal_spec(6).unwrap();
        assert_eq!(unramified_h1_rank(&ceva, &spec).unwrap(), 7);
        assert_eq!(unramified_h1_rank_exhaustive(&ceva, &spec).unwrap(), 7);
        let s = semiabelian_albanese(&ceva, &spec).unwrap();
        assert_eq!(s.torus_rank, 5);
        assert_eq!(s.abelian.render_named(), "E0^1");
    }

    #[test]
    fn dual_flex_diagonal() {
        let df = corpus::dual_flex();
        let spec = df.diagonal_spec(3).unwrap();
        assert_eq!(unramified_h1_rank(&df, &spec).unwrap(), 12);
        let s = semiabelian_albanese(&df, &spec).unwrap();
        assert_eq!(
            (s.torus_rank, s.abelian.render_named()),
            (8, "E0^2".to_string())
        );
    }

    #[test]
    fn trivial_group() {
        let ceva = corpus::ceva();
        let spec = GroupSpec::generated(5, ceva.sites(), vec![]).unwrap();
        let s = semiabelian_albanese(&ceva, &spec).unwrap();
        assert_eq!(s.torus_rank, 5);
        assert!(s.abelian.is_empty());
    }
}

//! Torsion characters of the first homology of a punctured line or of a
//! line-arrangement complement.
//!
//! A character is stored as an exponent vector `j` modulo `n`: the value on
//! the meridian of site `i` is `exp(2πi·j_i/n)`. Meridians of all sites sum to
//! zero in homology, so every character satisfies `Σ j_i ≡ 0 (mod n)`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::arith::{gcd_all, units};
use crate::error::{Error, Result};

/// Ordered, pairwise distinct site identifiers shared between characters.
pub type Sites = Arc<[String]>;

/// Build a [`Sites`] list, rejecting duplicates.
pub fn sites<I, S>(ids: I) -> Result<Sites>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let ids: Vec<String> = ids.into_iter().map(Into::into).collect();
    let mut seen = HashSet::new();
    for id in &ids {
        if !seen.insert(id.as_str()) {
            return Err(Error::DuplicateSite(id.clone()));
        }
    }
    Ok(ids.into())
}

/// Sites named `s0, s1, …`.
pub fn numbered_sites(count: usize) -> Sites {
    (0..count)
        .map(|i| format!("s{i}"))
        .collect::<Vec<_>>()
        .into()
}

/// A torsion character, immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RamChar {
    modulus: u64,
    sites: Sites,
    exponents: Vec<u64>,
}

/// Output of [`RamChar::reduce_to_cyclic`]: the order `m` and exponents
/// `a_i = j_i / gcd(n, j)` as residues mod `m` (zero off the support).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicReduction {
    pub order: u64,
    pub exponents: Vec<u64>,
}

impl RamChar {
    pub fn new(modulus: u64, sites: Sites, exponents: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus { min: 1, got: 0 });
        }
        if exponents.len() != sites.len() {
            return Err(Error::LengthMismatch {
                expected: sites.len(),
                got: exponents.len(),
            });
        }
        let exponents: Vec<u64> = exponents.into_iter().map(|j| j % modulus).collect();
        if exponents.iter().sum::<u64>() % modulus != 0 {
            return Err(Error::ZeroSum { modulus, exponents });
        }
        Ok(RamChar {
            modulus,
            sites,
            exponents,
        })
    }

    /// Character on `s0, s1, …` with the given exponents.
    pub fn on_numbered_sites(modulus: u64, exponents: Vec<u64>) -> Result<Self> {
        let sites = numbered_sites(exponents.len());
        Self::new(modulus, sites, exponents)
    }

    /// Takes exponents for all sites but the last; the last one is set to the
    /// negated sum, so the final site plays the role of the point at infinity.
    pub fn completing(modulus: u64, sites: Sites, partial: &[u64]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus { min: 1, got: 0 });
        }
        if partial.len() + 1 != sites.len() {
            return Err(Error::LengthMismatch {
                expected: sites.len().saturating_sub(1),
                got: partial.len(),
            });
        }
        let mut exponents: Vec<u64> = partial.iter().map(|j| j % modulus).collect();
        let sum = exponents.iter().sum::<u64>() % modulus;
        exponents.push((modulus - sum) % modulus);
        Self::new(modulus, sites, exponents)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn sites(&self) -> &Sites {
        &self.sites
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&j| j == 0)
    }

    /// `n / gcd(n, j_0, …, j_k)`.
    pub fn order(&self) -> u64 {
        char_order(self.modulus, &self.exponents)
    }

    /// Sites on which the character is nontrivial.
    pub fn support(&self) -> BTreeSet<&str> {
        self.support_indices()
            .into_iter()
            .map(|i| self.sites[i].as_str())
            .collect()
    }

    pub fn support_indices(&self) -> Vec<usize> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &j)| j != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// `t·χ`, componentwise mod `n`.
    pub fn scaled(&self, t: u64) -> RamChar {
        RamChar {
            modulus: self.modulus,
            sites: self.sites.clone(),
            exponents: scale(self.modulus, &self.exponents, t),
        }
    }

    pub fn conjugate(&self) -> RamChar {
        RamChar {
            modulus: self.modulus,
            sites: self.sites.clone(),
            exponents: self
                .exponents
                .iter()
                .map(|&j| (self.modulus - j) % self.modulus)
                .collect(),
        }
    }

    /// Galois conjugates `t·χ` for `t` a unit modulo the order of `χ`.
    pub fn unit_orbit(&self) -> Result<BTreeSet<RamChar>> {
        if self.is_trivial() {
            return Err(Error::OrbitOfTrivial);
        }
        Ok(units(self.order())
            .into_iter()
            .map(|t| self.scaled(t))
            .collect())
    }

    /// Lexicographically least member of the unit orbit (the character itself
    /// when trivial).
    pub fn orbit_representative(&self) -> RamChar {
        RamChar {
            modulus: self.modulus,
            sites: self.sites.clone(),
            exponents: least_in_orbit(self.modulus, &self.exponents),
        }
    }

    pub fn reduce_to_cyclic(&self) -> Result<CyclicReduction> {
        reduce_exponents(self.modulus, &self.exponents).ok_or(Error::TrivialCharacter)
    }

    /// Same character written with modulus `n' = k·n`.
    pub fn lift(&self, new_modulus: u64) -> Result<RamChar> {
        if new_modulus % self.modulus != 0 {
            return Err(Error::InvalidModulus {
                min: self.modulus,
                got: new_modulus,
            });
        }
        let k = new_modulus / self.modulus;
        RamChar::new(
            new_modulus,
            self.sites.clone(),
            self.exponents.iter().map(|j| j * k).collect(),
        )
    }
}

impl fmt::Display for RamChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, j) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, ") mod {}", self.modulus)
    }
}

pub fn char_order(modulus: u64, exponents: &[u64]) -> u64 {
    modulus / gcd_all(modulus, exponents)
}

pub fn scale(modulus: u64, exponents: &[u64], t: u64) -> Vec<u64> {
    exponents.iter().map(|&j| (j * t) % modulus).collect()
}

/// Least element of `{t·j : t a unit mod order(j)}`.
pub fn least_in_orbit(modulus: u64, exponents: &[u64]) -> Vec<u64> {
    let order = char_order(modulus, exponents);
    let mut best = exponents.to_vec();
    let mut candidate = vec![0; exponents.len()];
    for t in units(order).into_iter().skip(1) {
        for (c, &j) in candidate.iter_mut().zip(exponents) {
            *c = (j * t) % modulus;
        }
        if candidate < best {
            best.copy_from_slice(&candidate);
        }
    }
    best
}

/// `(m, a)` with `m = n / J`, `a_i = j_i / J`, `J = gcd(n, j)`. `None` for the
/// trivial character.
pub fn reduce_exponents(modulus: u64, exponents: &[u64]) -> Option<CyclicReduction> {
    let g = gcd_all(modulus, exponents);
    if g == modulus {
        return None;
    }
    Some(CyclicReduction {
        order: modulus / g,
        exponents: exponents.iter().map(|&j| j / g).collect(),
    })
}

/// Which subgroup of the zero-sum character group a [`GroupSpec`] describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subgroup {
    /// All zero-sum characters: the cover with group `(Z/n)^r / diagonal`.
    Full,
    /// Characters `χ` with `Σ ρ_i χ_i ≡ 0` for every relation `ρ`; these are
    /// the characters of the quotient of `H_1(−, Z/n)` by the relations.
    Relations(Vec<Vec<u64>>),
    /// The subgroup generated by the listed characters.
    Generated(Vec<Vec<u64>>),
}

/// A finite abelian cover, described through its character group.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    modulus: u64,
    sites: Sites,
    subgroup: Subgroup,
    closure: Option<Arc<Closure>>,
}

#[derive(Debug)]
struct Closure {
    elements: Vec<Vec<u64>>,
    index: HashSet<Vec<u64>>,
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && self.sites == other.sites
            && self.subgroup == other.subgroup
    }
}

const CHUNKS_PER_THREAD: usize = 8;

impl GroupSpec {
    pub fn full(modulus: u64, sites: Sites) -> Result<Self> {
        Self::build(modulus, sites, Subgroup::Full)
    }

    pub fn with_relations(modulus: u64, sites: Sites, relations: Vec<Vec<u64>>) -> Result<Self> {
        Self::build(modulus, sites, Subgroup::Relations(relations))
    }

    pub fn generated(modulus: u64, sites: Sites, generators: Vec<Vec<u64>>) -> Result<Self> {
        Self::build(modulus, sites, Subgroup::Generated(generators))
    }

    /// Wrap an explicit list of characters that must already form a subgroup.
    pub fn from_characters(modulus: u64, sites: Sites, characters: &[Vec<u64>]) -> Result<Self> {
        let mut generators: Vec<Vec<u64>> = Vec::new();
        let mut span: HashSet<Vec<u64>> = HashSet::from([vec![0; sites.len()]]);
        for chi in characters {
            if !span.contains(chi) {
                generators.push(chi.clone());
                span = close(modulus, &generators, sites.len(), None)?
                    .0
                    .into_iter()
                    .collect();
            }
        }
        let spec = Self::generated(modulus, sites, generators)?;
        if spec.closure.as_ref().map(|c| c.elements.len()) != Some(characters.len()) {
            return Err(Error::InconsistentRelations(
                "character list is not closed under multiplication".into(),
            ));
        }
        Ok(spec)
    }

    fn build(modulus: u64, sites: Sites, subgroup: Subgroup) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus {
                min: 2,
                got: modulus,
            });
        }
        if sites.is_empty() {
            return Err(Error::InconsistentRelations("no sites".into()));
        }
        let r = sites.len();
        let subgroup = match subgroup {
            Subgroup::Full => Subgroup::Full,
            Subgroup::Relations(rels) => {
                let mut reduced = Vec::with_capacity(rels.len());
                for rel in rels {
                    if rel.len() != r {
                        return Err(Error::InconsistentRelations(format!(
                            "relation {rel:?} has {} coefficients, expected {r}",
                            rel.len()
                        )));
                    }
                    reduced.push(rel.into_iter().map(|c| c % modulus).collect());
                }
                Subgroup::Relations(reduced)
            }
            Subgroup::Generated(gens) => {
                let mut reduced = Vec::with_capacity(gens.len());
                for g in gens {
                    if g.len() != r {
                        return Err(Error::InconsistentRelations(format!(
                            "generator {g:?} has {} entries, expected {r}",
                            g.len()
                        )));
                    }
                    let g: Vec<u64> = g.into_iter().map(|c| c % modulus).collect();
                    if g.iter().sum::<u64>() % modulus != 0 {
                        return Err(Error::InconsistentRelations(format!(
                            "generator {g:?} is not a zero-sum character mod {modulus}"
                        )));
                    }
                    reduced.push(g);
                }
                Subgroup::Generated(reduced)
            }
        };
        let closure = match &subgroup {
            Subgroup::Generated(gens) => {
                let bound = full_size(modulus, r);
                let (mut elements, index) = close(modulus, gens, r, bound)?;
                elements.sort_unstable();
                Some(Arc::new(Closure { elements, index }))
            }
            _ => None,
        };
        Ok(GroupSpec {
            modulus,
            sites,
            subgroup,
            closure,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn sites(&self) -> &Sites {
        &self.sites
    }

    pub fn rank(&self) -> usize {
        self.sites.len()
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Whether the exponent vector is a character of this group.
    pub fn contains(&self, exponents: &[u64]) -> bool {
        if exponents.len() != self.sites.len() {
            return false;
        }
        let n = self.modulus;
        if exponents.iter().any(|&j| j >= n) || exponents.iter().sum::<u64>() % n != 0 {
            return false;
        }
        match &self.subgroup {
            Subgroup::Full => true,
            Subgroup::Relations(rels) => satisfies(n, rels, exponents),
            Subgroup::Generated(_) => self
                .closure
                .as_ref()
                .is_some_and(|c| c.index.contains(exponents)),
        }
    }

    /// Number of exponent vectors the enumeration visits (an upper bound on
    /// `|Char Γ|`, exact unless relations are present).
    pub fn work_size(&self) -> u128 {
        match &self.closure {
            Some(c) => c.elements.len() as u128,
            None => (self.modulus as u128).pow(self.sites.len() as u32 - 1),
        }
    }

    /// `|Char Γ| = |Γ|`.
    pub fn order(&self) -> Result<u64> {
        match (&self.subgroup, &self.closure) {
            (_, Some(c)) => Ok(c.elements.len() as u64),
            (Subgroup::Full, _) => {
                full_size(self.modulus, self.sites.len()).ok_or(Error::TooLarge(self.work_size()))
            }
            _ => self.par_fold(|| 0u64, |acc, _| acc + 1, |a, b| a + b),
        }
    }

    /// Serial enumeration of exponent vectors in lexicographic order.
    pub fn exponent_vectors(&self) -> Box<dyn Iterator<Item = Vec<u64>> + '_> {
        match &self.closure {
            Some(c) => Box::new(c.elements.iter().cloned()),
            None => {
                let total = self.work_size();
                let odo = Odometer::starting_at(self.modulus, self.sites.len(), 0);
                Box::new(
                    odo.take(total as usize)
                        .filter(move |v| self.passes_relations(v)),
                )
            }
        }
    }

    /// Serial enumeration of the characters in canonical order.
    pub fn characters(&self) -> impl Iterator<Item = RamChar> + '_ {
        self.exponent_vectors().map(move |exponents| RamChar {
            modulus: self.modulus,
            sites: self.sites.clone(),
            exponents,
        })
    }

    /// All exponent vectors, gathered in parallel but returned in canonical order.
    pub fn collect_par(&self) -> Result<Vec<Vec<u64>>> {
        let chunks = self.chunk_ranges()?;
        let parts: Vec<Vec<Vec<u64>>> = chunks
            .into_par_iter()
            .map(|(start, len)| {
                let mut out = Vec::new();
                self.visit_range(start, len, |v| out.push(v.to_vec()));
                out
            })
            .collect();
        Ok(parts.into_iter().flatten().collect())
    }

    /// Parallel fold over every character. `reduce` must be associative and
    /// commutative for the result to be schedule independent.
    pub fn par_fold<T, ID, F, R>(&self, identity: ID, fold: F, reduce: R) -> Result<T>
    where
        T: Send,
        ID: Fn() -> T + Sync + Send,
        F: Fn(T, &[u64]) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        let chunks = self.chunk_ranges()?;
        Ok(chunks
            .into_par_iter()
            .map(|(start, len)| {
                let mut acc = Some(identity());
                self.visit_range(start, len, |v| {
                    acc = Some(fold(acc.take().unwrap(), v));
                });
                acc.unwrap()
            })
            .reduce(&identity, &reduce))
    }

    fn chunk_ranges(&self) -> Result<Vec<(u64, u64)>> {
        let total = self.work_size();
        if total > u64::MAX as u128 / 2 {
            return Err(Error::TooLarge(total));
        }
        let total = total as u64;
        let wanted = (rayon::current_num_threads() * CHUNKS_PER_THREAD) as u64;
        let chunk = total.div_ceil(wanted.max(1)).max(1024);
        let mut ranges = Vec::new();
        let mut start = 0;
        while start < total {
            let len = chunk.min(total - start);
            ranges.push((start, len));
            start += len;
        }
        Ok(ranges)
    }

    fn visit_range(&self, start: u64, len: u64, mut visit: impl FnMut(&[u64])) {
        match &self.closure {
            Some(c) => {
                for v in &c.elements[start as usize..(start + len) as usize] {
                    visit(v);
                }
            }
            None => {
                let mut odo = Odometer::starting_at(self.modulus, self.sites.len(), start);
                for _ in 0..len {
                    if self.passes_relations(&odo.current) {
                        visit(&odo.current);
                    }
                    odo.advance();
                }
            }
        }
    }

    fn passes_relations(&self, v: &[u64]) -> bool {
        match &self.subgroup {
            Subgroup::Relations(rels) => satisfies(self.modulus, rels, v),
            _ => true,
        }
    }
}

fn satisfies(n: u64, relations: &[Vec<u64>], v: &[u64]) -> bool {
    relations
        .iter()
        .all(|rel| rel.iter().zip(v).map(|(c, j)| c * j).sum::<u64>() % n == 0)
}

fn full_size(modulus: u64, rank: usize) -> Option<u64> {
    modulus.checked_pow(rank as u32 - 1)
}

/// Closure of a set of generators under addition.
fn close(
    modulus: u64,
    generators: &[Vec<u64>],
    rank: usize,
    bound: Option<u64>,
) -> Result<(Vec<Vec<u64>>, HashSet<Vec<u64>>)> {
    let zero = vec![0; rank];
    let mut index = HashSet::from([zero.clone()]);
    let mut elements = vec![zero];
    let mut cursor = 0;
    while cursor < elements.len() {
        let base = elements[cursor].clone();
        cursor += 1;
        for g in generators {
            let next: Vec<u64> = base.iter().zip(g).map(|(a, b)| (a + b) % modulus).collect();
            if index.insert(next.clone()) {
                elements.push(next);
                if let Some(b) = bound {
                    if elements.len() as u64 > b {
                        return Err(Error::Internal(
                            "subgroup closure exceeds ambient group".into(),
                        ));
                    }
                }
            }
        }
    }
    Ok((elements, index))
}

/// Lexicographic walk over `(Z/n)^(r-1)`, completed by the zero-sum entry.
struct Odometer {
    modulus: u64,
    current: Vec<u64>,
    partial_sum: u64,
}

impl Odometer {
    fn starting_at(modulus: u64, rank: usize, index: u64) -> Self {
        let free = rank - 1;
        let mut digits = vec![0; rank];
        let mut rest = index;
        for slot in (0..free).rev() {
            digits[slot] = rest % modulus;
            rest /= modulus;
        }
        let partial_sum = digits[..free].iter().sum::<u64>() % modulus;
        digits[free] = (modulus - partial_sum) % modulus;
        Odometer {
            modulus,
            current: digits,
            partial_sum,
        }
    }

    fn advance(&mut self) {
        let n = self.modulus;
        let free = self.current.len() - 1;
        let mut slot = free;
        while slot > 0 {
            slot -= 1;
            let d = &mut self.current[slot];
            if *d + 1 < n {
                *d += 1;
                self.partial_sum = (self.partial_sum + 1) % n;
                break;
            }
            *d = 0;
            self.partial_sum = (self.partial_sum + n - (n - 1)) % n;
        }
        self.current[free] = (n - self.partial_sum) % n;
    }
}

impl Iterator for Odometer {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.clone();
        self.advance();
        Some(out)
    }
}

/// Whether two characters on the same sites differ by a unit scaling.
pub fn same_orbit(modulus: u64, a: &[u64], b: &[u64]) -> bool {
    char_order(modulus, a) == char_order(modulus, b)
        && least_in_orbit(modulus, a) == least_in_orbit(modulus, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(n: u64, j: &[u64]) -> RamChar {
        RamChar::on_numbered_sites(n, j.to_vec()).unwrap()
    }

    #[test]
    fn order_examples() {
        assert_eq!(chi(6, &[2, 2, 2]).order(), 3);
        assert_eq!(chi(5, &[1, 1, 3]).order(), 5);
        assert_eq!(chi(4, &[0, 0, 0]).order(), 1);
    }

    #[test]
    fn support_examples() {
        let c = chi(3, &[1, 2, 0]);
        assert_eq!(c.support(), BTreeSet::from(["s0", "s1"]));
        assert_eq!(chi(3, &[1, 1, 1]).support().len(), 3);
        assert!(chi(5, &[0, 0, 0, 0]).support().is_empty());
    }

    #[test]
    fn unit_orbit_examples() {
        let orbit: Vec<Vec<u64>> = chi(3, &[1, 1, 1])
            .unit_orbit()
            .unwrap()
            .into_iter()
            .map(|c| c.exponents().to_vec())
            .collect();
        assert_eq!(orbit, vec![vec![1, 1, 1], vec![2, 2, 2]]);

        let orbit: BTreeSet<Vec<u64>> = chi(5, &[1, 1, 3])
            .unit_orbit()
            .unwrap()
            .into_iter()
            .map(|c| c.exponents().to_vec())
            .collect();
        let expected: BTreeSet<Vec<u64>> =
            [vec![1, 1, 3], vec![2, 2, 1], vec![3, 3, 4], vec![4, 4, 2]].into();
        assert_eq!(orbit, expected);

        assert_eq!(chi(2, &[1, 1]).unit_orbit().unwrap().len(), 1);
        assert!(matches!(
            chi(4, &[0, 0]).unit_orbit(),
            Err(Error::OrbitOfTrivial)
        ));
    }

    #[test]
    fn reduce_examples() {
        let r = chi(6, &[2, 2, 2]).reduce_to_cyclic().unwrap();
        assert_eq!((r.order, r.exponents), (3, vec![1, 1, 1]));
        let r = chi(5, &[1, 1, 3]).reduce_to_cyclic().unwrap();
        assert_eq!((r.order, r.exponents), (5, vec![1, 1, 3]));
        let r = chi(12, &[4, 8, 0, 0]).reduce_to_cyclic().unwrap();
        assert_eq!((r.order, r.exponents), (3, vec![1, 2, 0, 0]));
        assert!(chi(7, &[0, 0, 0]).reduce_to_cyclic().is_err());
    }

    #[test]
    fn construction_checks() {
        assert!(matches!(
            RamChar::on_numbered_sites(5, vec![1, 1, 1]),
            Err(Error::ZeroSum { .. })
        ));
        assert!(matches!(
            sites(["a", "b", "a"]),
            Err(Error::DuplicateSite(_))
        ));
        let c = RamChar::completing(5, numbered_sites(3), &[1, 1]).unwrap();
        assert_eq!(c.exponents(), &[1, 1, 3]);
    }

    #[test]
    fn enumerate_full_small() {
        let spec = GroupSpec::full(2, numbered_sites(3)).unwrap();
        let all: Vec<Vec<u64>> = spec.exponent_vectors().collect();
        assert_eq!(
            all,
            vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]
        );
        assert_eq!(
            GroupSpec::full(5, numbered_sites(6))
                .unwrap()
                .order()
                .unwrap(),
            3125
        );
        let nine = GroupSpec::full(3, numbered_sites(9)).unwrap();
        assert_eq!(nine.exponent_vectors().count(), 6561);
    }

    #[test]
    fn parallel_matches_serial() {
        for (n, r) in [(3, 5), (4, 4), (7, 3), (2, 9)] {
            let spec = GroupSpec::full(n, numbered_sites(r)).unwrap();
            let serial: Vec<Vec<u64>> = spec.exponent_vectors().collect();
            assert_eq!(spec.collect_par().unwrap(), serial);
            let rel =
                GroupSpec::with_relations(n, numbered_sites(r), vec![(0..r as u64).collect()])
                    .unwrap();
            let serial: Vec<Vec<u64>> = rel.exponent_vectors().collect();
            assert_eq!(rel.collect_par().unwrap(), serial);
            assert_eq!(rel.order().unwrap(), serial.len() as u64);
            assert!(serial.iter().all(|v| rel.contains(v)));
        }
    }

    #[test]
    fn generated_subgroup() {
        let spec = GroupSpec::generated(6, numbered_sites(6), vec![vec![1; 6]]).unwrap();
        assert_eq!(spec.order().unwrap(), 6);
        assert!(spec.contains(&[2; 6]));
        assert!(!spec.contains(&[1, 5, 0, 0, 0, 0]));
        assert!(GroupSpec::generated(4, numbered_sites(3), vec![vec![1, 1, 1]]).is_err());
        let listed = spec.collect_par().unwrap();
        let again = GroupSpec::from_characters(6, numbered_sites(6), &listed).unwrap();
        assert_eq!(again.order().unwrap(), 6);
        assert!(GroupSpec::from_characters(6, numbered_sites(6), &listed[..3]).is_err());
    }

    #[test]
    fn relation_length_is_checked() {
        assert!(matches!(
            GroupSpec::with_relations(5, numbered_sites(3), vec![vec![1, 2]]),
            Err(Error::InconsistentRelations(_))
        ));
    }
}

//! Holomorphic 1-forms on abelian covers of the projective line.
//!
//! For a character `χ` of an abelian cover of `P¹`, `h10_character` gives the
//! dimension of the `χ`-eigenspace of `H^{1,0}`. Restricted to its support and
//! reduced to order `m` with exponents `a_p`, it is
//! `−1 + Σ_p (m − a_p)/m`, and zero when the support has at most two points.
//! Summed over `χ` and `χ̄` this is the depth `|supp| − 2`.

use std::collections::HashMap;

use serde::Serialize;

use crate::arith::{gcd, gcd_all, phi};
use crate::blocks::{CyclicBlock, IsogenyClass, THREE_POINTS};
use crate::charkit::{least_in_orbit, reduce_exponents, GroupSpec, RamChar};
use crate::error::{Error, Result};

pub fn h10_character(chi: &RamChar) -> Result<u64> {
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    Ok(h10_exponents(chi.modulus(), chi.exponents()))
}

/// Slice form of [`h10_character`]; returns 0 for the trivial character.
pub fn h10_exponents(modulus: u64, exponents: &[u64]) -> u64 {
    let support: Vec<u64> = exponents.iter().copied().filter(|&j| j != 0).collect();
    if support.len() <= 2 {
        return 0;
    }
    let Some(r) = reduce_exponents(modulus, &support) else {
        return 0;
    };
    let m = r.order;
    let total: u64 = r.exponents.iter().map(|a| m - a).sum();
    total / m - 1
}

/// `h10(χ) + h10(χ̄)`; zero for the trivial character.
pub fn depth_ramified(chi: &RamChar) -> u64 {
    depth_exponents(chi.modulus(), chi.exponents())
}

pub fn depth_exponents(modulus: u64, exponents: &[u64]) -> u64 {
    let conj: Vec<u64> = exponents.iter().map(|&j| (modulus - j) % modulus).collect();
    h10_exponents(modulus, exponents) + h10_exponents(modulus, &conj)
}

/// Fractional-part formula for the `i`-th eigenspace of `y^n = Π (x − x_s)^{A_s}`
/// with `A` the exponents at the affine branch points:
/// `−⟨iΣA/n⟩ + Σ_s ⟨iA_s/n⟩`.
///
/// Only defined when the cover is branched over infinity; otherwise the
/// formula overcounts by one and callers should use [`h10_character`].
pub fn h10_cyclic_archinard(n: u64, affine: &[u64], i: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidModulus { min: 2, got: n });
    }
    if gcd(i, n) != 1 {
        return Err(Error::OutsideDomain(format!("gcd({i}, {n}) != 1")));
    }
    if let Some(a) = affine.iter().find(|&&a| a % n == 0) {
        return Err(Error::OutsideDomain(format!("{n} divides exponent {a}")));
    }
    let sum: u64 = affine.iter().map(|a| a % n).sum();
    let at_infinity = (i % n) * (sum % n) % n;
    if at_infinity == 0 {
        return Err(Error::UseUnifiedFormula);
    }
    let numerators: u64 = affine.iter().map(|a| (i % n) * (a % n) % n).sum();
    Ok((numerators - at_infinity) / n)
}

/// `floor(M/n)` with `M = Σ (n − j_s)` over the affine sites only; the point at
/// infinity carries the exponent forced by the zero-sum condition.
pub fn h10_affine_floor(n: u64, affine: &[u64]) -> u64 {
    affine.iter().map(|j| n - j % n).sum::<u64>() / n
}

/// Genus of `y^n = Π (x − p)^{A_p}` with exponents listed at every branch
/// point, infinity included.
pub fn genus_cyclic(n: u64, exponents: &[u64]) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidModulus { min: 2, got: n });
    }
    let a: Vec<u64> = exponents.iter().map(|x| x % n).collect();
    if a.iter().sum::<u64>() % n != 0 {
        return Err(Error::ZeroSum {
            modulus: n,
            exponents: a,
        });
    }
    let g = gcd_all(n, &a);
    if g != 1 {
        return Err(Error::NotConnected {
            generated: n / g,
            order: n,
        });
    }
    let ramification: u64 = a.iter().map(|&x| n - gcd(n, x)).sum();
    // 2 - 2g = 2n - ramification, and ramification >= 2n - 2 for a connected cover
    Ok((ramification + 2 - 2 * n) / 2)
}

/// One row of the eigenspace table of a cyclic cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenRow {
    pub i: u64,
    pub exponents: Vec<u64>,
    pub order: u64,
    pub h10: u64,
    pub h01: u64,
}

/// For `i = 1, …, n − 1`, the character `−i·A` acting on `H^{1,0}` of the
/// cyclic cover with exponents `A` (infinity included).
pub fn eigenspace_table(n: u64, exponents: &[u64]) -> Result<Vec<EigenRow>> {
    genus_cyclic(n, exponents)?;
    Ok((1..n)
        .map(|i| {
            let j: Vec<u64> = exponents.iter().map(|&a| (n - i * a % n) % n).collect();
            let conj: Vec<u64> = j.iter().map(|&x| (n - x) % n).collect();
            EigenRow {
                i,
                order: crate::charkit::char_order(n, &j),
                h10: h10_exponents(n, &j),
                h01: h10_exponents(n, &conj),
                exponents: j,
            }
        })
        .collect())
}

/// `Σ_χ h10(χ)` over the characters of the cover.
pub fn cover_genus(spec: &GroupSpec) -> Result<u64> {
    let n = spec.modulus();
    spec.par_fold(|| 0u64, |acc, j| acc + h10_exponents(n, j), |a, b| a + b)
}

/// Isogeny decomposition of the Jacobian of the abelian cover described by
/// `spec`, with configuration tags of the form `P1:<site ids>`.
pub fn decompose_abelian_cover(spec: &GroupSpec) -> Result<IsogenyClass> {
    decompose_abelian_cover_in(spec, "P1")
}

/// As [`decompose_abelian_cover`], with `context` naming the point set in
/// the configuration tag of blocks on four or more points.
pub fn decompose_abelian_cover_in(spec: &GroupSpec, context: &str) -> Result<IsogenyClass> {
    let n = spec.modulus();
    // one count per unit orbit: only orbit representatives are tallied
    let counts = spec.par_fold(
        HashMap::<(u64, Vec<u64>), u64>::new,
        |mut acc, j| {
            let support = j.iter().filter(|&&x| x != 0).count();
            if support >= 3 && least_in_orbit(n, j) == j {
                *acc.entry((n, j.to_vec())).or_insert(0) += 1;
            }
            acc
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    )?;
    let sites = spec.sites();
    let mut class = IsogenyClass::new();
    for ((modulus, j), count) in counts {
        let block = block_of(
            modulus,
            &j,
            |idx| {
                idx.iter()
                    .map(|&i| sites[i].as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            },
            context,
        )?;
        class.insert(block, count);
    }
    Ok(class)
}

/// Block attached to a nontrivial character with at least three support
/// points. `names` renders the support indices for the configuration tag.
pub(crate) fn block_of(
    modulus: u64,
    exponents: &[u64],
    names: impl Fn(&[usize]) -> String,
    context: &str,
) -> Result<CyclicBlock> {
    let support: Vec<usize> = (0..exponents.len())
        .filter(|&i| exponents[i] != 0)
        .collect();
    let r = reduce_exponents(modulus, exponents).ok_or(Error::TrivialCharacter)?;
    let a: Vec<u64> = support.iter().map(|&i| r.exponents[i]).collect();
    let config = if support.len() == 3 {
        THREE_POINTS.to_string()
    } else {
        format!("{context}:{}", names(&support))
    };
    CyclicBlock::canonicalize(r.order, &a, &config)
}

/// Multiplicity bookkeeping check: the number of characters of order `m`
/// landing in a block must be a multiple of `φ(m)`.
pub fn orbit_multiplicity(block: &CyclicBlock, characters: u64) -> Result<u64> {
    let p = phi(block.order());
    if characters % p != 0 {
        return Err(Error::Internal(format!(
            "{characters} characters in block {block}, not a multiple of φ = {p}"
        )));
    }
    Ok(characters / p)
}

/// Local Albanese variety of a non-reduced germ with an ordinary triple point
/// as reduced germ and multiplicities `a1, a2, a3` in the `n`-fold cover.
pub fn local_albanese_block(a1: u64, a2: u64, a3: u64, n: u64) -> Result<CyclicBlock> {
    let a = [a1, a2, a3];
    if a.iter().any(|&x| x == 0 || x >= n) || a1 + a2 + a3 != n {
        return Err(Error::InvalidBlockData(format!(
            "need 1 <= a_i < n and a1 + a2 + a3 = n, got ({a1},{a2},{a3}) for n = {n}"
        )));
    }
    CyclicBlock::three_point(n, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charkit::numbered_sites;

    fn h10(n: u64, j: &[u64]) -> u64 {
        h10_character(&RamChar::on_numbered_sites(n, j.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn h10_examples() {
        assert_eq!(h10(5, &[1, 1, 3]), 1);
        assert_eq!(h10(3, &[2, 2, 2]), 0);
        assert_eq!(h10(4, &[1, 3, 0]), 0);
        assert_eq!(h10(5, &[4, 4, 2]), 0);
        assert!(h10_character(&RamChar::on_numbered_sites(3, vec![0, 0, 0]).unwrap()).is_err());
    }

    #[test]
    fn depth_examples() {
        let d = |n, j: &[u64]| depth_ramified(&RamChar::on_numbered_sites(n, j.to_vec()).unwrap());
        assert_eq!(d(5, &[1, 1, 3]), 1);
        assert_eq!(d(3, &[1, 1, 2, 2]), 2);
        assert_eq!(d(3, &[1, 2, 0]), 0);
        assert_eq!(d(3, &[0, 0, 0]), 0);
    }

    #[test]
    fn archinard_examples() {
        assert_eq!(h10_cyclic_archinard(5, &[2, 2], 2).unwrap(), 1);
        assert_eq!(h10_cyclic_archinard(5, &[2, 2], 1).unwrap(), 0);
        let total: u64 = (1..5)
            .map(|i| h10_cyclic_archinard(5, &[2, 2], i).unwrap())
            .sum();
        assert_eq!(total, 2);
        assert!(matches!(
            h10_cyclic_archinard(5, &[2, 3], 1),
            Err(Error::UseUnifiedFormula)
        ));
        assert!(matches!(
            h10_cyclic_archinard(6, &[1, 1], 2),
            Err(Error::OutsideDomain(_))
        ));
    }

    #[test]
    fn archinard_matches_unified_at_negated_exponents() {
        let (n, a, i) = (7u64, [1u64, 2, 5], 3u64);
        let mut j: Vec<u64> = a.iter().map(|&x| (n - i * x % n) % n).collect();
        let s: u64 = j.iter().sum();
        j.push((n - s % n) % n);
        assert_eq!(
            h10_cyclic_archinard(n, &a, i).unwrap(),
            h10_exponents(n, &j)
        );
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus_cyclic(5, &[2, 2, 1]).unwrap(), 2);
        assert_eq!(genus_cyclic(3, &[1, 1, 1]).unwrap(), 1);
        assert_eq!(genus_cyclic(9, &[1, 8]).unwrap(), 0);
        assert!(genus_cyclic(5, &[1, 1, 1]).is_err());
        assert!(matches!(
            genus_cyclic(6, &[2, 2, 2]),
            Err(Error::NotConnected { .. })
        ));
    }

    #[test]
    fn eigenspaces_sum_to_genus() {
        let rows = eigenspace_table(5, &[2, 2, 1]).unwrap();
        assert_eq!(rows.iter().map(|r| r.h10).sum::<u64>(), 2);
        assert!(rows.iter().all(|r| r.h10 + r.h01 == 1));
    }

    #[test]
    fn fermat_decompositions() {
        let c3 = decompose_abelian_cover(&GroupSpec::full(3, numbered_sites(3)).unwrap()).unwrap();
        assert_eq!(c3.render(), "(3;[1,1,1])^1");
        assert_eq!(c3.render_named(), "E0^1");
        let c5 = decompose_abelian_cover(&GroupSpec::full(5, numbered_sites(3)).unwrap()).unwrap();
        assert_eq!(c5.render(), "(5;[1,1,3])^2 * (5;[1,2,2])^1");
        assert_eq!(c5.dimension(), 6);
    }

    #[test]
    fn four_point_z3_cover_has_genus_ten() {
        let spec = GroupSpec::full(3, numbered_sites(4)).unwrap();
        let class = decompose_abelian_cover(&spec).unwrap();
        assert_eq!(class.dimension(), 10);
        assert_eq!(cover_genus(&spec).unwrap(), 10);
    }

    #[test]
    fn local_albanese_examples() {
        assert_eq!(local_albanese_block(1, 1, 1, 3).unwrap().name(), Some("E0"));
        assert_eq!(
            local_albanese_block(1, 1, 3, 5).unwrap().exponents(),
            &[1, 1, 3]
        );
        // (2,2,1) is twice (1,1,3) mod 5
        assert_eq!(
            local_albanese_block(2, 2, 1, 5).unwrap().exponents(),
            &[1, 1, 3]
        );
        assert!(local_albanese_block(1, 1, 2, 5).is_err());
        assert!(local_albanese_block(2, 2, 2, 6).is_err());
    }
}

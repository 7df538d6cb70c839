//! Brute-force verifiers built from group-orbit counting alone.
//!
//! Nothing here calls the eigenspace formulas of [`crate::p1covers`]: the
//! genus comes from Riemann–Hurwitz applied to the covering group
//! `Γ = (Z/n)^s / K`, where `K` is the annihilator of the character group.
//! The [`battery`] compares the two sides.

use std::collections::HashSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{gcd, lcm};
use crate::charkit::{numbered_sites, GroupSpec, RamChar, Subgroup};
use crate::error::{Error, Result};
use crate::p1covers;

/// Kernel `K` of `(Z/n)^s → Γ`, as an explicit set.
fn kernel(spec: &GroupSpec) -> Result<HashSet<Vec<u64>>> {
    let n = spec.modulus();
    let s = spec.rank();
    match spec.subgroup() {
        Subgroup::Full => Ok(span(n, s, &[vec![1; s]])),
        Subgroup::Relations(rels) => {
            let mut gens = vec![vec![1; s]];
            gens.extend(rels.iter().cloned());
            Ok(span(n, s, &gens))
        }
        Subgroup::Generated(gens) => {
            let total = (n as u128).pow(s as u32);
            if total > 50_000_000 {
                return Err(Error::TooLarge(total));
            }
            let mut out = HashSet::new();
            let mut x = vec![0u64; s];
            for _ in 0..total {
                if gens
                    .iter()
                    .all(|g| g.iter().zip(&x).map(|(a, b)| a * b).sum::<u64>() % n == 0)
                {
                    out.insert(x.clone());
                }
                for slot in x.iter_mut().rev() {
                    *slot += 1;
                    if *slot < n {
                        break;
                    }
                    *slot = 0;
                }
            }
            Ok(out)
        }
    }
}

fn span(n: u64, s: usize, gens: &[Vec<u64>]) -> HashSet<Vec<u64>> {
    let zero = vec![0; s];
    let mut seen = HashSet::from([zero.clone()]);
    let mut queue = vec![zero];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y: Vec<u64> = x.iter().zip(g).map(|(a, b)| (a + b % n) % n).collect();
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen
}

/// Genus of the branched cover of `P¹` with covering group `Γ` dual to
/// `Char Γ`, from `χ_top = |Γ|(2 − s) + Σ_p |Γ| / ord(g_p)`.
pub fn euler_genus_oracle(spec: &GroupSpec) -> Result<u64> {
    let n = spec.modulus();
    let s = spec.rank();
    let k = kernel(spec)?;
    let ambient = (n as u128).pow(s as u32);
    let order = ambient / k.len() as u128;
    let mut chi_top: i128 = order as i128 * (2 - s as i128);
    for p in 0..s {
        let mut e = vec![0u64; s];
        let mut step = 1u64;
        loop {
            e[p] = step % n;
            if k.contains(&e) {
                break;
            }
            step += 1;
        }
        chi_top += (order / step as u128) as i128;
    }
    genus_from_euler(chi_top)
}

fn genus_from_euler(chi_top: i128) -> Result<u64> {
    if chi_top % 2 != 0 || chi_top > 2 {
        return Err(Error::Internal(format!(
            "Euler characteristic {chi_top} of a connected curve"
        )));
    }
    Ok((1 - chi_top / 2) as u64)
}

/// Genus of the cover of `P¹` with group `Π Z/d_i` (given by `invariants`)
/// and local monodromy `monodromy[p]` around branch point `p`.
pub fn euler_genus_from_monodromy(invariants: &[u64], monodromy: &[Vec<u64>]) -> Result<u64> {
    if invariants.is_empty() || invariants.contains(&0) {
        return Err(Error::Malformed(
            "invariant factors must be positive".into(),
        ));
    }
    for g in monodromy {
        if g.len() != invariants.len() {
            return Err(Error::LengthMismatch {
                expected: invariants.len(),
                got: g.len(),
            });
        }
    }
    for (i, &d) in invariants.iter().enumerate() {
        if monodromy.iter().map(|g| g[i]).sum::<u64>() % d != 0 {
            return Err(Error::Malformed(
                "local monodromies must multiply to the identity".into(),
            ));
        }
    }
    let order: u64 = invariants.iter().product();
    // subgroup generated by the monodromies
    let zero = vec![0u64; invariants.len()];
    let mut seen = HashSet::from([zero.clone()]);
    let mut queue = vec![zero];
    while let Some(x) = queue.pop() {
        for g in monodromy {
            let y: Vec<u64> = x
                .iter()
                .zip(g)
                .zip(invariants)
                .map(|((a, b), d)| (a + b % d) % d)
                .collect();
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    if seen.len() as u64 != order {
        return Err(Error::NotConnected {
            generated: seen.len() as u64,
            order,
        });
    }
    let s = monodromy.len() as i128;
    let mut chi_top = order as i128 * (2 - s);
    for g in monodromy {
        let ord = g
            .iter()
            .zip(invariants)
            .fold(1, |acc, (&x, &d)| lcm(acc, d / gcd(d, x % d)));
        chi_top += (order / ord) as i128;
    }
    genus_from_euler(chi_top)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DepthKind {
    /// Compactified cover: the local system extends over points where `χ`
    /// is trivial, so `χ` lives on `P¹` minus its support.
    Ramified,
    /// Open cover: `χ` lives on `P¹` minus all `s` sites.
    Unramified,
}

/// `Σ_χ d(χ)` with `d(χ) = dim H¹(U, L_χ)` computed as `−e(U)` for nontrivial
/// `χ` on the punctured line `U` (and `b_1(U)` for `χ = 1`).
pub fn depth_sum_oracle(spec: &GroupSpec, kind: DepthKind) -> Result<u64> {
    let s = spec.rank() as i64;
    spec.par_fold(
        || 0i64,
        |acc, j| {
            let punctures = match kind {
                DepthKind::Ramified => j.iter().filter(|&&x| x != 0).count() as i64,
                DepthKind::Unramified => s,
            };
            let trivial = j.iter().all(|&x| x == 0);
            let euler = 2 - punctures;
            let d = if trivial {
                // b_1 of P¹ minus `punctures` points
                (punctures - 1).max(0)
            } else {
                -euler
            };
            acc + d.max(0)
        },
        |a, b| a + b,
    )
    .map(|v| v as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Battery {
    Small,
    Full,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: u64,
    pub failures: Vec<String>,
    pub millis: u128,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

const MAX_REPORTED_FAILURES: usize = 10;

fn record(failures: &mut Vec<String>, total: &mut u64, msg: impl FnOnce() -> String) {
    *total += 1;
    if failures.len() < MAX_REPORTED_FAILURES {
        failures.push(msg());
    }
}

/// The verification suite behind `albankit verify`.
pub fn battery(kind: Battery, seed: u64) -> Vec<CheckOutcome> {
    let (random_specs, random_cases) = match kind {
        Battery::Small => (200, 10_000),
        Battery::Full => (1_000, 100_000),
    };
    vec![
        genus_check(random_specs, seed),
        archinard_check(random_cases, seed),
        affine_floor_check(random_cases, seed),
    ]
}

/// Specs for the genus comparison: every full cover with `n ≤ 12` on 3–5
/// sites, then `count` random subgroups given by generators or relations.
pub fn battery_specs(count: usize, seed: u64) -> Vec<GroupSpec> {
    let mut specs = Vec::new();
    for n in 2..=12 {
        for s in 3..=5 {
            specs.push(GroupSpec::full(n, numbered_sites(s)).expect("valid full spec"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while specs.len() < 33 + count {
        let n = rng.gen_range(2..=12u64);
        let s = rng.gen_range(3..=5usize);
        let sites = numbered_sites(s);
        let spec = if rng.gen_bool(0.5) {
            let gens: Vec<Vec<u64>> = (0..rng.gen_range(1..=3))
                .map(|_| random_zero_sum(&mut rng, n, s))
                .collect();
            GroupSpec::generated(n, sites, gens)
        } else {
            let rels: Vec<Vec<u64>> = (0..rng.gen_range(1..=2))
                .map(|_| (0..s).map(|_| rng.gen_range(0..n)).collect())
                .collect();
            GroupSpec::with_relations(n, sites, rels)
        };
        specs.push(spec.expect("random spec is well formed"));
    }
    specs
}

fn random_zero_sum(rng: &mut ChaCha8Rng, n: u64, s: usize) -> Vec<u64> {
    let mut v: Vec<u64> = (0..s - 1).map(|_| rng.gen_range(0..n)).collect();
    let sum: u64 = v.iter().sum();
    v.push((n - sum % n) % n);
    v
}

fn genus_check(count: usize, seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let specs = battery_specs(count, seed);
    let mut failures = Vec::new();
    let mut bad = 0;
    for spec in &specs {
        let label = || {
            format!(
                "n={} s={} {:?}",
                spec.modulus(),
                spec.rank(),
                spec.subgroup()
            )
        };
        let oracle = euler_genus_oracle(spec);
        let formula = p1covers::cover_genus(spec);
        let class = p1covers::decompose_abelian_cover(spec).map(|c| c.dimension());
        let depth = depth_sum_oracle(spec, DepthKind::Ramified);
        match (oracle, formula, class, depth) {
            (Ok(g), Ok(h), Ok(d), Ok(ds)) if g == h && h == d && ds == 2 * g => {}
            (g, h, d, ds) => record(&mut failures, &mut bad, || {
                format!(
                    "{}: oracle {g:?}, Σh10 {h:?}, class dim {d:?}, depth sum {ds:?}",
                    label()
                )
            }),
        }
    }
    CheckOutcome {
        name: "genus: Σ h10 = class dimension = Euler oracle, depth sum = 2g".into(),
        cases: specs.len() as u64,
        failures,
        millis: start.elapsed().as_millis(),
    }
}

fn archinard_check(count: usize, seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa5a5);
    let mut failures = Vec::new();
    let mut bad = 0;
    let mut done = 0;
    while done < count {
        let n = rng.gen_range(2..=100u64);
        let k = rng.gen_range(1..=6usize);
        let affine: Vec<u64> = (0..k).map(|_| rng.gen_range(1..n)).collect();
        let i = rng.gen_range(1..n);
        if gcd(i, n) != 1 || i * affine.iter().sum::<u64>() % n == 0 {
            continue;
        }
        done += 1;
        let mut j: Vec<u64> = affine.iter().map(|&a| (n - i * a % n) % n).collect();
        let sum: u64 = j.iter().sum();
        j.push((n - sum % n) % n);
        let chi = RamChar::on_numbered_sites(n, j).expect("zero-sum by construction");
        let unified = p1covers::h10_character(&chi);
        let frac = p1covers::h10_cyclic_archinard(n, &affine, i);
        if frac.as_ref().ok() != unified.as_ref().ok() || frac.is_err() {
            record(&mut failures, &mut bad, || {
                format!("n={n} A={affine:?} i={i}: fractional {frac:?}, unified {unified:?}")
            });
        }
    }
    CheckOutcome {
        name: "fractional-part formula = unified formula".into(),
        cases: count as u64,
        failures,
        millis: start.elapsed().as_millis(),
    }
}

fn affine_floor_check(count: usize, seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a5a);
    let mut failures = Vec::new();
    let mut bad = 0;
    let mut done = 0;
    while done < count {
        let n = rng.gen_range(2..=30u64);
        let k = rng.gen_range(2..=5usize);
        let affine: Vec<u64> = (0..k).map(|_| rng.gen_range(1..n)).collect();
        let sum: u64 = affine.iter().sum();
        let at_infinity = (n - sum % n) % n;
        if at_infinity == 0 || crate::arith::gcd_all(n, &affine) != 1 {
            continue;
        }
        done += 1;
        let mut j = affine.clone();
        j.push(at_infinity);
        let unified = p1covers::h10_exponents(n, &j);
        let floor = p1covers::h10_affine_floor(n, &affine);
        if unified != floor {
            record(&mut failures, &mut bad, || {
                format!("n={n} affine={affine:?}: floor {floor}, unified {unified}")
            });
        }
    }
    CheckOutcome {
        name: "floor(M/n) over affine sites = unified formula".into(),
        cases: count as u64,
        failures,
        millis: start.elapsed().as_millis(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        let spec = GroupSpec::full(5, numbered_sites(3)).unwrap();
        assert_eq!(euler_genus_oracle(&spec).unwrap(), 6);
        assert_eq!(depth_sum_oracle(&spec, DepthKind::Ramified).unwrap(), 12);
        let spec = GroupSpec::full(3, numbered_sites(4)).unwrap();
        assert_eq!(euler_genus_oracle(&spec).unwrap(), 10);
        let spec = GroupSpec::full(3, numbered_sites(3)).unwrap();
        assert_eq!(depth_sum_oracle(&spec, DepthKind::Ramified).unwrap(), 2);
        let spec = GroupSpec::full(7, numbered_sites(2)).unwrap();
        assert_eq!(euler_genus_oracle(&spec).unwrap(), 0);
    }

    #[test]
    fn trivial_group_has_zero_depth() {
        let spec = GroupSpec::generated(5, numbered_sites(4), vec![]).unwrap();
        assert_eq!(depth_sum_oracle(&spec, DepthKind::Ramified).unwrap(), 0);
        assert_eq!(euler_genus_oracle(&spec).unwrap(), 0);
    }

    #[test]
    fn monodromy_form() {
        // Fermat quintic: (Z/5)^2 with monodromies e1, e2, -(e1 + e2)
        let g = euler_genus_from_monodromy(&[5, 5], &[vec![1, 0], vec![0, 1], vec![4, 4]]).unwrap();
        assert_eq!(g, 6);
        assert!(matches!(
            euler_genus_from_monodromy(&[5, 5], &[vec![1, 0], vec![4, 0]]),
            Err(Error::NotConnected {
                generated: 5,
                order: 25
            })
        ));
    }

    #[test]
    fn small_battery_passes() {
        for outcome in battery(Battery::Small, 7) {
            assert!(outcome.passed(), "{}: {:?}", outcome.name, outcome.failures);
        }
    }
}

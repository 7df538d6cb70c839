//! Cyclic towers along a ray of characters.
//!
//! A linking vector `ε` (a surjection of `π₁` onto `Z`) gives at level `n` the
//! cyclic cover whose characters are `m·ε mod n`. Only torsion points of the
//! ray that lie on a component contribute, and their orders bound the period
//! of the sequence of Albanese classes.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{divisors, gcd, lcm, reduce_signed};
use crate::arrangements::{
    albanese, unramified_h1_rank, AlbaneseOptions, Arrangement, SemiAbelianClass,
};
use crate::blocks::IsogenyClass;
use crate::charkit::{char_order, GroupSpec, Sites};
use crate::error::{Error, Result};

/// Characters `m·ε mod n` vanishing on the sum of all meridians, i.e. the
/// subgroup generated by `(n / gcd(n, Σε))·ε`.
pub fn ray_spec(n: u64, sites: Sites, epsilon: &[i64]) -> Result<GroupSpec> {
    if epsilon.len() != sites.len() {
        return Err(Error::LengthMismatch {
            expected: sites.len(),
            got: epsilon.len(),
        });
    }
    if n < 2 {
        return Err(Error::InvalidModulus { min: 2, got: n });
    }
    let sum = reduce_signed(epsilon.iter().sum(), n);
    let step = n / gcd(n, sum);
    let generator: Vec<u64> = epsilon
        .iter()
        .map(|&e| reduce_signed(e, n) * step % n)
        .collect();
    GroupSpec::generated(n, sites, vec![generator])
}

#[derive(Clone, Debug)]
pub struct Ray<'a> {
    arr: &'a Arrangement,
    epsilon: Vec<i64>,
}

impl<'a> Ray<'a> {
    pub fn new(arr: &'a Arrangement, epsilon: Vec<i64>) -> Result<Self> {
        if epsilon.len() != arr.lines.len() {
            return Err(Error::LengthMismatch {
                expected: arr.lines.len(),
                got: epsilon.len(),
            });
        }
        if epsilon.iter().all(|&e| e == 0) {
            return Err(Error::Malformed("linking vector is zero".into()));
        }
        Ok(Ray { arr, epsilon })
    }

    /// `ε ≡ 1` on every line.
    pub fn diagonal(arr: &'a Arrangement) -> Self {
        Ray {
            arr,
            epsilon: vec![1; arr.lines.len()],
        }
    }

    pub fn epsilon(&self) -> &[i64] {
        &self.epsilon
    }

    pub fn spec(&self, n: u64) -> Result<GroupSpec> {
        ray_spec(n, self.arr.sites(), &self.epsilon)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLevel {
    pub n: u64,
    pub ramified: IsogenyClass,
    pub unramified_rank: u64,
    pub semiabelian: SemiAbelianClass,
}

impl TowerLevel {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "q": self.ramified.dimension(),
            "class": self.ramified.to_records(),
            "named": self.ramified.render_named(),
            "unramified_rank": self.unramified_rank,
            "torus_rank": self.semiabelian.torus_rank,
        })
    }
}

pub fn tower_level(ray: &Ray, n: u64) -> Result<TowerLevel> {
    let spec = ray.spec(n)?;
    let alb = albanese(ray.arr, &spec, &AlbaneseOptions::default())?;
    let rank = unramified_h1_rank(ray.arr, &spec)?;
    let torus_rank = rank.checked_sub(2 * alb.q).ok_or_else(|| {
        Error::Internal(format!(
            "first Betti number {rank} below 2q = {}",
            2 * alb.q
        ))
    })?;
    Ok(TowerLevel {
        n,
        ramified: alb.class.clone(),
        unramified_rank: rank,
        semiabelian: SemiAbelianClass {
            torus_rank,
            abelian: alb.class,
        },
    })
}

/// Levels `2..=max_n`, computed in parallel.
pub fn tower_levels(ray: &Ray, max_n: u64) -> Result<Vec<TowerLevel>> {
    (2..=max_n)
        .into_par_iter()
        .map(|n| tower_level(ray, n))
        .collect()
}

/// Torsion points of the ray of positive depth, as `order → sources`.
pub fn ray_torsion(ray: &Ray) -> Result<BTreeMap<u64, Vec<String>>> {
    let eps = &ray.epsilon;
    let total: i64 = eps.iter().sum();
    let mut found: BTreeMap<u64, Vec<String>> = BTreeMap::new();
    for p in ray.arr.compile() {
        // d must divide ε on lines off the pencil, the cross terms
        // mult_L'·ε_L − mult_L·ε_L' inside a fiber, and the fiber sum
        let mut g: u64 = 0;
        for &l in &p.outside {
            g = gcd(g, eps[l].unsigned_abs());
        }
        let mut reduced_lines = Vec::new();
        for fiber in &p.fibers {
            let (l0, m0) = fiber[0];
            for &(l, m) in &fiber[1..] {
                let cross = m as i64 * eps[l0] - m0 as i64 * eps[l];
                g = gcd(g, cross.unsigned_abs());
            }
            reduced_lines.push(fiber.iter().find(|&&(_, m)| m == 1).map(|&(l, _)| l));
        }
        if reduced_lines.iter().all(Option::is_some) {
            let s: i64 = reduced_lines.iter().map(|l| eps[l.unwrap()]).sum();
            g = gcd(g, s.unsigned_abs());
        }
        if g == 0 {
            let nontrivial = p
                .fibers
                .iter()
                .filter(|f| f.iter().any(|&(l, _)| eps[l] != 0))
                .count();
            if nontrivial >= 3 {
                return Err(Error::RayInComponent(p.id.clone()));
            }
            continue;
        }
        for d in divisors(g).into_iter().filter(|&d| d >= 2) {
            if reduce_signed(total, d) != 0 {
                continue;
            }
            let chi: Vec<u64> = eps.iter().map(|&e| reduce_signed(e, d)).collect();
            if let Some(v) = p.membership(d, &chi) {
                if v.iter().filter(|&&x| x != 0).count() >= 3 {
                    found
                        .entry(char_order(d, &chi))
                        .or_default()
                        .push(p.id.clone());
                }
            }
        }
    }
    for (i, entry) in ray.arr.jumping.iter().enumerate() {
        let m = entry.modulus;
        let on_ray = (1..m).any(|c| {
            eps.iter()
                .zip(&entry.exponents)
                .all(|(&e, &j)| reduce_signed(e * c as i64, m) == j % m)
        });
        if on_ray {
            found
                .entry(char_order(m, &entry.exponents))
                .or_default()
                .push(format!("jumping entry {i}"));
        }
    }
    Ok(found)
}

/// Least common multiple of the orders of the ray's torsion points of
/// positive depth (1 when there are none).
pub fn tower_period(ray: &Ray) -> Result<u64> {
    Ok(ray_torsion(ray)?.keys().fold(1, |acc, &d| lcm(acc, d)))
}

/// Period and rank table from the roots of an Alexander polynomial, given as
/// `(order, multiplicity)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlexanderPeriod {
    pub period: u64,
    roots: Vec<(u64, u64)>,
}

impl AlexanderPeriod {
    /// Number of roots `ξ` (with multiplicity) with `ξ^n = 1`.
    pub fn rank(&self, n: u64) -> u64 {
        self.roots
            .iter()
            .filter(|(order, _)| n % order == 0)
            .map(|(_, mult)| mult)
            .sum()
    }

    /// `(gcd(n, N), rank)` for each divisor of the period.
    pub fn table(&self) -> Vec<(u64, u64)> {
        divisors(self.period)
            .into_iter()
            .map(|d| (d, self.rank(d)))
            .collect()
    }
}

pub fn alexander_period(roots: &[(u64, u64)]) -> Result<AlexanderPeriod> {
    if roots.iter().any(|&(order, _)| order == 0) {
        return Err(Error::OrderZero);
    }
    Ok(AlexanderPeriod {
        period: roots.iter().fold(1, |acc, &(order, _)| lcm(acc, order)),
        roots: roots.to_vec(),
    })
}

/// Pairs of levels with the same `gcd(n, N)` but different classes.
pub fn periodicity_violations(levels: &[TowerLevel], period: u64) -> Vec<(u64, u64)> {
    let mut first: BTreeMap<u64, &TowerLevel> = BTreeMap::new();
    let mut out = Vec::new();
    for level in levels {
        let key = gcd(level.n, period);
        match first.get(&key) {
            Some(prev)
                if prev.ramified != level.ramified || prev.semiabelian != level.semiabelian =>
            {
                out.push((prev.n, level.n))
            }
            Some(_) => {}
            None => {
                first.insert(key, level);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangements::corpus;

    #[test]
    fn ceva_levels() {
        let ceva = corpus::ceva();
        let ray = Ray::diagonal(&ceva);
        let six = tower_level(&ray, 6).unwrap();
        assert_eq!(six.semiabelian.torus_rank, 5);
        assert_eq!(six.ramified.render_named(), "E0^1");
        let two = tower_level(&ray, 2).unwrap();
        assert_eq!(two.semiabelian.torus_rank, 5);
        assert!(two.ramified.is_empty());
    }

    #[test]
    fn periods() {
        let ceva = corpus::ceva();
        assert_eq!(tower_period(&Ray::diagonal(&ceva)).unwrap(), 3);
        let df = corpus::dual_flex();
        assert_eq!(tower_period(&Ray::diagonal(&df)).unwrap(), 3);
        let hesse = corpus::hesse();
        assert_eq!(tower_period(&Ray::diagonal(&hesse)).unwrap(), 4);
        let bare = Arrangement::from_json(r#"{"lines":["a","b","c"]}"#).unwrap();
        assert_eq!(tower_period(&Ray::diagonal(&bare)).unwrap(), 1);
    }

    #[test]
    fn ray_inside_component() {
        let ceva = corpus::ceva();
        // constant on each quadric fiber with zero fiber sum: on the pencil at every order
        let ray = Ray::new(&ceva, vec![1, 1, -2, 1, 1, -2]).unwrap();
        assert!(matches!(tower_period(&ray), Err(Error::RayInComponent(_))));
    }

    #[test]
    fn alexander_examples() {
        let a = alexander_period(&[(3, 2)]).unwrap();
        assert_eq!(a.period, 3);
        assert_eq!((a.rank(6), a.rank(4)), (2, 0));
        assert_eq!(alexander_period(&[]).unwrap().period, 1);
        let b = alexander_period(&[(2, 1), (3, 1)]).unwrap();
        assert_eq!(b.period, 6);
        assert_eq!(b.table(), vec![(1, 0), (2, 1), (3, 1), (6, 2)]);
        assert!(matches!(alexander_period(&[(0, 1)]), Err(Error::OrderZero)));
    }
}

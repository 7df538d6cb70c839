use std::collections::BTreeSet;

use proptest::prelude::*;
use serde_json::Value;

use albankit::arith::{gcd, gcd_all, phi, units};
use albankit::arrangements::{albanese, corpus, validate, AlbaneseOptions, Arrangement};
use albankit::blocks::{CyclicBlock, IsogenyClass};
use albankit::charkit::{least_in_orbit, numbered_sites, RamChar};
use albankit::mordell::{mw_rank_zero_test, OrbitSet};
use albankit::oracle::{battery_specs, euler_genus_oracle};
use albankit::p1covers::{cover_genus, depth_exponents, h10_cyclic_archinard, h10_exponents};
use albankit::towers::{periodicity_violations, tower_levels, tower_period, Ray};

/// `(n, j)` with `j` zero-sum mod `n` on `len` sites.
fn zero_sum(
    max_n: u64,
    len: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (u64, Vec<u64>)> {
    zero_sum_in(2..=max_n, len)
}

fn zero_sum_in(
    moduli: std::ops::RangeInclusive<u64>,
    len: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (u64, Vec<u64>)> {
    (moduli, len).prop_flat_map(|(n, k)| {
        prop::collection::vec(0..n, k - 1).prop_map(move |mut v| {
            let s: u64 = v.iter().sum();
            v.push((n - s % n) % n);
            (n, v)
        })
    })
}

/// Valid block data: nonzero exponents mod `m`, zero sum, `gcd = 1`.
fn block_data() -> impl Strategy<Value = (u64, Vec<u64>)> {
    zero_sum(30, 3..=5).prop_filter("block data", |(m, a)| {
        a.iter().all(|&x| x != 0) && gcd_all(*m, a) == 1
    })
}

fn block_pool() -> Vec<CyclicBlock> {
    [
        (3, [1, 1, 1]),
        (5, [1, 1, 3]),
        (5, [1, 2, 2]),
        (7, [1, 2, 4]),
        (7, [1, 1, 5]),
    ]
    .into_iter()
    .map(|(m, a)| CyclicBlock::three_point(m, a).unwrap())
    .collect()
}

fn class_from(mults: &[u64]) -> IsogenyClass {
    let mut c = IsogenyClass::new();
    for (b, &k) in block_pool().into_iter().zip(mults) {
        if k > 0 {
            c.insert(b, k);
        }
    }
    c
}

fn permuted(text: &str, perm: &[usize], reverse_pencils: bool) -> Arrangement {
    let mut v: Value = serde_json::from_str(text).unwrap();
    let lines = v["lines"].as_array().unwrap().clone();
    v["lines"] = Value::Array(perm.iter().map(|&i| lines[i].clone()).collect());
    if let Some(jumps) = v["jumping"].as_array_mut() {
        for j in jumps {
            let e = j["exponents"].as_array().unwrap().clone();
            j["exponents"] = Value::Array(perm.iter().map(|&i| e[i].clone()).collect());
        }
    }
    if reverse_pencils {
        v["pencils"].as_array_mut().unwrap().reverse();
    }
    Arrangement::from_json(&v.to_string()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_ignores_unit_rescaling((m, a) in block_data(), pick in any::<prop::sample::Index>()) {
        let u = units(m);
        let t = u[pick.index(u.len())];
        let b = CyclicBlock::canonicalize(m, &a, "cfg").unwrap();
        let scaled: Vec<u64> = a.iter().map(|x| x * t % m).collect();
        prop_assert_eq!(&b, &CyclicBlock::canonicalize(m, &scaled, "cfg").unwrap());
        prop_assert_eq!(&b, &CyclicBlock::canonicalize(m, b.exponents(), "cfg").unwrap());
    }

    #[test]
    fn quotient_undoes_product(a in prop::collection::vec(0u64..4, 5), b in prop::collection::vec(0u64..4, 5)) {
        let (a, b) = (class_from(&a), class_from(&b));
        let ab = a.product(&b);
        prop_assert_eq!(ab.dimension(), a.dimension() + b.dimension());
        prop_assert_eq!(ab.quotient(&b).unwrap(), a.clone());
        if !a.is_empty() {
            prop_assert!(b.quotient(&ab).is_err());
        }
        prop_assert_eq!(IsogenyClass::from_records(&ab.to_records()).unwrap(), ab);
    }

    #[test]
    fn unit_orbits((n, j) in zero_sum(24, 3..=5)) {
        let chi = RamChar::on_numbered_sites(n, j.clone()).unwrap();
        prop_assume!(!chi.is_trivial());
        let orbit = chi.unit_orbit().unwrap();
        prop_assert_eq!(orbit.len() as u64, phi(chi.order()));
        prop_assert!(orbit.contains(&chi.conjugate()));
        let rep = least_in_orbit(n, &j);
        for psi in &orbit {
            // every member names the same orbit
            prop_assert_eq!(least_in_orbit(n, psi.exponents()), rep.clone());
            prop_assert_eq!(psi.unit_orbit().unwrap(), orbit.clone());
        }
    }

    #[test]
    fn cyclic_reduction_round_trip((n, j) in zero_sum(60, 2..=6)) {
        let chi = RamChar::on_numbered_sites(n, j.clone()).unwrap();
        prop_assume!(!chi.is_trivial());
        let r = chi.reduce_to_cyclic().unwrap();
        prop_assert_eq!(r.order, chi.order());
        prop_assert_eq!(gcd_all(r.order, &r.exponents), 1);
        let back: Vec<u64> = r.exponents.iter().map(|a| a * (n / r.order)).collect();
        prop_assert_eq!(back, j);
    }

    #[test]
    fn block_dimension_is_half_the_orbit_depth((m, a) in block_data()) {
        let b = CyclicBlock::canonicalize(m, &a, "cfg").unwrap();
        let total: u64 = units(m)
            .into_iter()
            .map(|t| depth_exponents(m, &a.iter().map(|x| x * t % m).collect::<Vec<_>>()))
            .sum();
        prop_assert_eq!(2 * b.dimension(), total);
        let h10: u64 = units(m)
            .into_iter()
            .map(|t| h10_exponents(m, &a.iter().map(|x| x * t % m).collect::<Vec<_>>()))
            .sum();
        prop_assert_eq!(b.dimension(), h10);
    }

    #[test]
    fn fractional_part_formula(n in 2u64..=100, affine in prop::collection::vec(1u64..100, 1..=6), i in 1u64..100) {
        let affine: Vec<u64> = affine.into_iter().map(|a| 1 + a % (n - 1).max(1)).filter(|a| a % n != 0).collect();
        let i = i % n;
        prop_assume!(!affine.is_empty() && i != 0 && gcd(i, n) == 1);
        prop_assume!(i * affine.iter().sum::<u64>() % n != 0);
        let mut j: Vec<u64> = affine.iter().map(|&a| (n - i * a % n) % n).collect();
        let s: u64 = j.iter().sum();
        j.push((n - s % n) % n);
        prop_assert_eq!(h10_cyclic_archinard(n, &affine, i).unwrap(), h10_exponents(n, &j));
    }

    #[test]
    fn mordell_weil_zero_test_symmetric_and_monotone(
        a in prop::collection::vec(zero_sum_in(7..=7, 3..=3), 0..5),
        b in prop::collection::vec(zero_sum_in(7..=7, 3..=3), 0..5),
        extra in prop::collection::vec(zero_sum_in(7..=7, 3..=3), 0..3),
    ) {
        let build = |items: &[(u64, Vec<u64>)]| {
            let mut s = OrbitSet::new(7, vec!["a".into(), "b".into(), "c".into()]);
            for (_, j) in items {
                if j.iter().any(|&x| x != 0) {
                    s.add(j, 1, None, None).unwrap();
                }
            }
            s
        };
        let (sa, sb) = (build(&a), build(&b));
        let bigger = build(&[a.clone(), extra].concat());
        let zero = mw_rank_zero_test(&sa, &sb).unwrap();
        prop_assert_eq!(zero, mw_rank_zero_test(&sb, &sa).unwrap());
        if mw_rank_zero_test(&bigger, &sb).unwrap() {
            prop_assert!(zero);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn genus_matches_oracle(seed in any::<u64>()) {
        for spec in battery_specs(4, seed).into_iter().skip(33) {
            prop_assert_eq!(cover_genus(&spec).unwrap(), euler_genus_oracle(&spec).unwrap());
        }
    }

    #[test]
    fn serial_and_parallel_enumeration_agree((n, j) in zero_sum(8, 3..=4)) {
        let spec = albankit::charkit::GroupSpec::generated(n, numbered_sites(j.len()), vec![j]).unwrap();
        let serial: BTreeSet<Vec<u64>> = spec.exponent_vectors().collect();
        let parallel: BTreeSet<Vec<u64>> = spec.collect_par().unwrap().into_iter().collect();
        prop_assert_eq!(serial.len() as u64, spec.order().unwrap());
        prop_assert_eq!(serial, parallel);
    }

    #[test]
    fn albanese_ignores_line_and_pencil_order(perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(), rev in any::<bool>(), n in 2u64..=7) {
        let text = corpus::text("ceva6").unwrap();
        let base = corpus::ceva();
        let other = permuted(text, &perm, rev);
        let opts = AlbaneseOptions::default();
        let x = albanese(&base, &base.full_spec(n).unwrap(), &opts).unwrap();
        let y = albanese(&other, &other.full_spec(n).unwrap(), &opts).unwrap();
        prop_assert_eq!(x.q, y.q);
        prop_assert_eq!(x.class.render_named(), y.class.render_named());
    }

    #[test]
    fn dual_flex_jump_order_independence(perm in Just((0..9).collect::<Vec<usize>>()).prop_shuffle()) {
        let other = permuted(corpus::text("dualflex9").unwrap(), &perm, true);
        let alb = albanese(&other, &other.full_spec(3).unwrap(), &AlbaneseOptions::default()).unwrap();
        prop_assert_eq!(alb.class.render_named(), "E0^14");
    }

    #[test]
    fn validator_enforces_depth_bound(depth in 1u64..=40) {
        let mut df = corpus::dual_flex();
        df.jumping[0].depth = depth;
        let report = validate(&df, &df.full_spec(3).unwrap());
        prop_assert_eq!(report.has_errors(), depth > 4);
    }
}

#[test]
fn corpus_towers_are_periodic() {
    for arr in [corpus::ceva(), corpus::dual_flex(), corpus::hesse()] {
        let ray = Ray::diagonal(&arr);
        let period = tower_period(&ray).unwrap();
        let levels = tower_levels(&ray, 12 * period).unwrap();
        assert_eq!(
            periodicity_violations(&levels, period),
            vec![],
            "{:?}",
            arr.name
        );
    }
}

#[test]
fn ceva_tower_with_other_rays() {
    let ceva = corpus::ceva();
    for eps in [
        vec![1, 1, 1, 1, 1, 1],
        vec![1, 2, 1, 1, 2, 1],
        vec![1, 1, 1, 2, 2, 2],
        vec![2, 1, 1, 1, 1, 1],
    ] {
        let ray = Ray::new(&ceva, eps.clone()).unwrap();
        let period = tower_period(&ray).unwrap();
        let levels = tower_levels(&ray, 12 * period.max(2)).unwrap();
        assert_eq!(
            periodicity_violations(&levels, period),
            vec![],
            "ε = {eps:?}, period {period}"
        );
    }
}

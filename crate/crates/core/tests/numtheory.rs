mod common;

use common::int_set;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use patchscope_core::numtheory::{
    bhp_subsequence, classify_decay, find_3ap, gap_difference_g, gen_set, is_prime_trial, large_set_diagnostics,
    reciprocal_set, sieve_primes, DecayClass, Family, IntegerSequence, Provenance,
};
use patchscope_core::patch::contains_patch_exact;
use patchscope_core::{PointSet, Scalar};
use proptest::prelude::*;

/// Plain sieve of Eratosthenes over a byte array.
fn oracle_prime_count(n: usize) -> usize {
    let mut is = vec![true; n + 1];
    is[0] = false;
    is[1] = false;
    let mut i = 2;
    while i * i <= n {
        if is[i] {
            (i * i..=n).step_by(i).for_each(|j| is[j] = false);
        }
        i += 1;
    }
    is.iter().filter(|&&b| b).count()
}

#[test]
fn prime_counting() {
    assert_eq!(sieve_primes(1_000_000).unwrap().len(), 78_498);
    assert_eq!(oracle_prime_count(1_000_000), 78_498);
    for n in [2u64, 3, 100, 65_536, 262_143, 262_144, 262_145, 600_001] {
        assert_eq!(sieve_primes(n).unwrap().len(), oracle_prime_count(n as usize), "n={n}");
    }
}

#[test]
fn bhp_terms_are_prime_and_increasing() {
    let (seq, report) = bhp_subsequence(200).unwrap();
    let small: Vec<u64> = sieve_primes(10_000).unwrap();
    let mut previous = BigUint::from(0u8);
    for (row, p) in report.rows.iter().zip(seq.values()) {
        let k5 = BigUint::from(row.k).pow(5);
        assert!(*p >= k5 && *p > previous);
        // p_1 = 2 = 1^5 + 1^4 sits on the bound
        assert_eq!(row.below_k4, row.k > 1, "k={}", row.k);
        // no factor up to 10^4 besides itself
        assert!(small.iter().all(|&q| *p == BigUint::from(q) || p % q != BigUint::from(0u8)));
        if let Some(v) = p.to_u64().filter(|&v| v < 1 << 32) {
            assert!(is_prime_trial(v));
        }
        previous = p.clone();
    }
    assert_eq!(seq.values()[1], BigUint::from(37u8));
    assert_eq!(seq.values()[2], BigUint::from(251u16));
    assert!(!report.all_below_k4);
}

/// `a_{k+1} a_{k+2} + a_k a_{k+1} - 2 a_k a_{k+2}`.
fn normalized_oracle(a: &[BigUint], k: usize) -> Scalar {
    let (x, y, z) = (Scalar::from(a[k - 1].clone()), Scalar::from(a[k].clone()), Scalar::from(a[k + 1].clone()));
    &(&y * &z) + &(&x * &y) - Scalar::from(2i64) * &x * &z
}

#[test]
fn idealized_fifth_powers_approach_thirty() {
    let seq = IntegerSequence::powers(5, 1002).unwrap();
    let recips = seq.reciprocals().unwrap();
    let mut previous: Option<f64> = None;
    let mut at_100 = 0.0;
    for k in [10usize, 50, 100, 1000] {
        let g = gap_difference_g(&recips, k).unwrap();
        let normalized = g.normalized.unwrap();
        assert_eq!(normalized, normalized_oracle(seq.values(), k));
        let ratio = (normalized / Scalar::from(k as u64).pow(8)).to_f64();
        if let Some(prev) = previous {
            assert!((ratio - 30.0).abs() < (prev - 30.0).abs());
        }
        if k == 100 {
            at_100 = ratio;
        }
        previous = Some(ratio);
    }
    // the second difference is centred at k + 1, so the ratio is about 30 (1 + 1/k)^8
    assert!((at_100 - 32.484_639_856_8).abs() < 1e-9);
    assert!((29.0..=31.0).contains(&previous.unwrap()));
}

#[test]
fn convex_sequences_have_positive_gap_differences() {
    for m in 2..=5u32 {
        let seq = IntegerSequence::powers(m, 40).unwrap();
        let recips = seq.reciprocals().unwrap();
        for k in 1..=38 {
            let g = gap_difference_g(&recips, k).unwrap();
            assert_eq!(g.normalized.clone().unwrap(), normalized_oracle(seq.values(), k));
            assert!(g.value.is_positive(), "m={m} k={k}");
        }
    }
}

#[test]
fn bhp_reciprocals_decay_polynomially() {
    let (seq, _) = bhp_subsequence(200).unwrap();
    let report = classify_decay(&seq.reciprocals().unwrap()).unwrap();
    assert_eq!(report.class, DecayClass::Subexponential);
    assert!(report.decreasing_from <= 10);
    assert!((report.log_fit.slope + 5.0).abs() < 0.1);
}

#[test]
fn no_progressions_in_reciprocal_cubes() {
    let s = gen_set(&Family::EP { p: 3, n: 300 }).unwrap();
    assert_eq!(find_3ap(&s).unwrap(), None);
    // 1/a^3 + 1/c^3 = 2/b^3 iff (bc)^3 - 2 (ac)^3 + (ab)^3 = 0
    let cube = |x: u128| x * x * x;
    for a in 1..=300u128 {
        for b in a + 1..=300 {
            for c in b + 1..=300 {
                assert_ne!(cube(b * c) + cube(a * b), 2 * cube(a * c));
            }
        }
    }
}

#[test]
fn squares_progressions() {
    let s = gen_set(&Family::Squares { n: 100 }).unwrap();
    let (lo, mid, hi) = find_3ap(&s).unwrap().unwrap();
    assert_eq!((lo, mid, hi), (Scalar::one(), Scalar::from(25i64), Scalar::from(49i64)));
    let recips = reciprocal_set(&[1u32, 25, 49].map(BigUint::from)).unwrap();
    assert_eq!(find_3ap(&recips).unwrap(), None);
}

#[test]
fn union_patches_contain_each_size_exactly() {
    let s = gen_set(&Family::UnionPatches { base: 4, count: 6, dim: 1 }).unwrap();
    for n in 2..=6 {
        let p = contains_patch_exact(&s, n).unwrap().unwrap();
        assert_eq!(p.t(), &patchscope_core::Point::origin(1));
    }
    assert!(contains_patch_exact(&s, 7).unwrap().is_none());
}

fn brute_3ap(s: &PointSet) -> bool {
    let v: Vec<&Scalar> = s.values().collect();
    let two = Scalar::from(2i64);
    (0..v.len()).any(|i| (i + 1..v.len()).any(|j| (j + 1..v.len()).any(|l| &two * v[j] == v[i] + v[l])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn find_3ap_matches_brute_force(s in int_set(-30, 30, 9)) {
        let found = find_3ap(&s).unwrap();
        prop_assert_eq!(found.is_some(), brute_3ap(&s));
        if let Some((lo, mid, hi)) = found {
            prop_assert_eq!(Scalar::from(2i64) * &mid, &lo + &hi);
            prop_assert!(lo < mid && mid < hi);
        }
    }

    #[test]
    fn find_3ap_is_affine_equivariant(s in int_set(-30, 30, 9), t in -50i64..50, num in 1i64..9, den in 1i64..5) {
        let delta = Scalar::ratio(num, den);
        let shift = Scalar::from(t);
        let map = |x: &Scalar| &shift + &(&delta * x);
        let image = PointSet::on_line(s.values().map(map)).unwrap();
        let a = find_3ap(&s).unwrap().map(|(x, y, z)| (map(&x), map(&y), map(&z)));
        prop_assert_eq!(a, find_3ap(&image).unwrap());
    }

    #[test]
    fn covering_inequality_on_random_sets(values in prop::collection::btree_set(1u64..5000, 1..200)) {
        let seq = IntegerSequence::from_u64(values, Provenance::User).unwrap();
        let report = large_set_diagnostics(&seq, 12).unwrap();
        prop_assert!(report.all_hold);
        for row in &report.rows {
            prop_assert!(row.block_size <= row.greedy_cover && row.greedy_cover <= row.grid_cover);
        }
    }
}

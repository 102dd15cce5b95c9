//! Shared generators and enumerators for the integration suites.
#![allow(dead_code)]

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use signed_hammersley::{HeapForest, KMultiset, Polarity, SignedPermutation};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_polarity(rng: &mut ChaCha8Rng) -> Polarity {
    if rng.random::<bool>() {
        Polarity::Plus
    } else {
        Polarity::Minus
    }
}

/// Uniform signed permutation of `1..=n`.
pub fn random_signed_permutation(n: usize, rng: &mut ChaCha8Rng) -> SignedPermutation {
    let mut values: Vec<i64> = (1..=n as i64).collect();
    for i in (1..values.len()).rev() {
        let j = rng.random_range(0..=i);
        values.swap(i, j);
    }
    let signs = (0..n).map(|_| random_polarity(rng)).collect();
    SignedPermutation::new(values, signs).expect("distinct values")
}

/// Calls `f` with every signed permutation of `1..=n` (all orderings, all
/// sign patterns).
pub fn for_each_signed_permutation<F: FnMut(&SignedPermutation)>(n: usize, mut f: F) {
    let values: Vec<i64> = (1..=n as i64).collect();
    for ordering in orderings(&values) {
        for mask in 0..(1u64 << n) {
            let signs: Vec<Polarity> = (0..n)
                .map(|i| {
                    if mask >> i & 1 == 0 {
                        Polarity::Plus
                    } else {
                        Polarity::Minus
                    }
                })
                .collect();
            let p = SignedPermutation::new(ordering.clone(), signs).expect("distinct");
            f(&p);
        }
    }
}

/// Calls `f` with every ordering of `1..=n`.
pub fn for_each_permutation<F: FnMut(&[i64])>(n: usize, mut f: F) {
    let values: Vec<i64> = (1..=n as i64).collect();
    for ordering in orderings(&values) {
        f(&ordering);
    }
}

fn orderings(values: &[i64]) -> Vec<Vec<i64>> {
    if values.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        let mut rest = values.to_vec();
        rest.remove(i);
        for mut tail in orderings(&rest) {
            tail.insert(0, v);
            out.push(tail);
        }
    }
    out
}

/// Inserts `(value, sign)` at a uniformly random legal host (any compatible
/// slot or a new root).
pub fn random_legal_insert(
    forest: &HeapForest,
    value: i64,
    sign: Polarity,
    rng: &mut ChaCha8Rng,
) -> HeapForest {
    let hosts = forest.compatible_hosts(value, sign);
    let choice = rng.random_range(0..=hosts.len());
    let host = hosts.get(choice).copied();
    forest.insert_at(host, value, sign).expect("legal host")
}

/// A random `k`-multiset over a wide value range.
pub fn random_kmultiset(k: u32, rng: &mut ChaCha8Rng) -> KMultiset {
    let distinct = rng.random_range(0..=8usize);
    let pairs = (0..distinct)
        .map(|_| (rng.random_range(0..10_000i64), rng.random_range(1..=k)))
        .collect::<Vec<_>>();
    KMultiset::from_counts(k, pairs).expect("multiplicities bounded by k")
}

/// A pair `(a, b)` of random `k`-multisets of equal cardinality with `a`
/// dominating `b`: `b` is generated freely and `a` re-samples its sorted
/// expansion downward, entry by entry. Equal cardinality keeps the count of
/// elements below any threshold at least as large on the dominating side,
/// which insertion preservation depends on.
pub fn random_dominating_multisets(k: u32, rng: &mut ChaCha8Rng) -> (KMultiset, KMultiset) {
    loop {
        let b = random_kmultiset(k, rng);
        let b_sorted = b.sorted_elements();
        let mut a_values = Vec::with_capacity(b_sorted.len());
        let mut floor = -10_000i64;
        for &upper in &b_sorted {
            let v = rng.random_range(floor..=upper);
            a_values.push(v);
            floor = v;
        }
        if let Some(a) = kmultiset_from_sorted(k, &a_values) {
            assert!(a.dominates(&b), "generator must produce dominating pairs");
            return (a, b);
        }
    }
}

/// Builds a multiset from non-decreasing values; `None` when some value
/// would exceed multiplicity `k`.
pub fn kmultiset_from_sorted(k: u32, values: &[i64]) -> Option<KMultiset> {
    let mut pairs: Vec<(i64, u32)> = Vec::new();
    for &v in values {
        match pairs.last_mut() {
            Some((last, mult)) if *last == v => {
                *mult += 1;
                if *mult > k {
                    return None;
                }
            }
            _ => pairs.push((v, 1)),
        }
    }
    Some(KMultiset::from_counts(k, pairs).expect("multiplicities checked"))
}

/// A value present in neither multiset.
pub fn fresh_value(rng: &mut ChaCha8Rng, a: &KMultiset, b: &KMultiset) -> i64 {
    loop {
        let v = rng.random_range(-10_000..20_000i64);
        if !a.contains(v) && !b.contains(v) {
            return v;
        }
    }
}

/// A fresh value positioned so the kill cases stay symmetric: usually above
/// the dominated multiset's minimum (below-`x` victims then exist on both
/// sides), sometimes below both minima (neither side kills). The asymmetric
/// case, where only the dominating side could kill, does not preserve the
/// order and is excluded.
pub fn fresh_value_with_victims(rng: &mut ChaCha8Rng, a: &KMultiset, b: &KMultiset) -> i64 {
    let a_min = a.sorted_elements().first().copied();
    let b_min = b.sorted_elements().first().copied();
    loop {
        let v = match (a_min, b_min, rng.random_range(0..5u32)) {
            (Some(low), _, 0) => rng.random_range(low - 1000..low),
            (_, Some(min), _) => rng.random_range(min + 1..=min + 1000),
            _ => rng.random_range(-10_000..20_000i64),
        };
        if !a.contains(v) && !b.contains(v) {
            return v;
        }
    }
}

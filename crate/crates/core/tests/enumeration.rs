use std::collections::HashSet;

use proptest::prelude::*;
use zeroclass::catalog;
use zeroclass::census::{census_submonoids, enumerate_monoids};
use zeroclass::{FiniteMonoid, SubsetMask};

/// Every associative table on `0..n` with identity `0`, tried exhaustively.
fn labelled_monoids(n: usize) -> Vec<Vec<usize>> {
    let free = (n - 1) * (n - 1);
    let total = n.pow(free as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut t = vec![0; n * n];
        for a in 0..n {
            t[a] = a;
            t[a * n] = a;
        }
        for a in 1..n {
            for b in 1..n {
                t[a * n + b] = code % n;
                code /= n;
            }
        }
        let assoc = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]]))
        });
        if assoc {
            out.push(t);
        }
    }
    out
}

fn all_perms_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    let mut perms = vec![vec![0]];
    for k in 1..n {
        perms = perms
            .into_iter()
            .flat_map(|p| (0..k).map(move |pos| {
                let mut q = p.clone();
                q.insert(pos + 1, k);
                q
            }))
            .collect();
    }
    perms
}

/// Number of isomorphism classes, counted as orbits of the relabeling action.
fn orbit_count(n: usize) -> usize {
    let perms = all_perms_fixing_zero(n);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut orbits = 0;
    for t in labelled_monoids(n) {
        if seen.contains(&t) {
            continue;
        }
        orbits += 1;
        for p in &perms {
            let mut image = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    image[p[a] * n + p[b]] = p[t[a * n + b]];
                }
            }
            seen.insert(image);
        }
    }
    orbits
}

#[test]
fn monoid_counts_match_orbit_oracle() {
    for (order, expected) in [(1, 1), (2, 2), (3, 7), (4, 35)] {
        assert_eq!(orbit_count(order), expected, "oracle, order {order}");
        assert_eq!(enumerate_monoids(order).unwrap().len(), expected, "enumeration, order {order}");
    }
}

#[test]
fn order_five_count() {
    assert_eq!(enumerate_monoids(5).unwrap().len(), 228);
}

#[test]
fn enumerated_monoids_are_pairwise_non_isomorphic() {
    let perms = all_perms_fixing_zero(4);
    let monoids = enumerate_monoids(4).unwrap();
    let mut classes = HashSet::new();
    for m in &monoids {
        let canon = perms
            .iter()
            .map(|p| m.relabel(p).flat_table().to_vec())
            .min()
            .unwrap();
        assert!(classes.insert(canon));
    }
}

fn submonoids_by_seeds(m: &FiniteMonoid) -> Vec<SubsetMask> {
    let n = m.order();
    let mut out: Vec<SubsetMask> = (0..1u64 << n)
        .map(|bits| m.generate_submonoid(SubsetMask::from_bits(n, bits)))
        .collect();
    out.sort();
    out.dedup();
    out
}

fn small_monoid() -> impl Strategy<Value = FiniteMonoid> {
    let pool: Vec<FiniteMonoid> = (1..=4)
        .flat_map(|n| enumerate_monoids(n).unwrap())
        .chain([catalog::example_a(), catalog::symmetric3(), catalog::full_transformation(2), catalog::nil3()])
        .collect();
    proptest::sample::select(pool)
}

fn transformation_monoid() -> impl Strategy<Value = FiniteMonoid> {
    (2usize..=3)
        .prop_flat_map(|k| (Just(k), prop::collection::vec(prop::collection::vec(0..k, k), 1..=2)))
        .prop_map(|(k, gens)| catalog::transformation_monoid(k, &gens))
}

proptest! {
    #[test]
    fn submonoid_enumeration_matches_seed_closure(m in small_monoid()) {
        let listed = m.enumerate_submonoids().unwrap();
        prop_assert_eq!(&listed, &submonoids_by_seeds(&m));
        for s in listed {
            prop_assert!(m.is_submonoid(s));
        }
    }

    #[test]
    fn finite_monoids_are_dedekind_finite(m in transformation_monoid()) {
        prop_assert!(m.is_dedekind_finite());
        prop_assert!(m.dedekind_violation().is_none());
    }

    #[test]
    fn relabeling_preserves_counts(m in small_monoid(), seed in any::<u64>()) {
        let n = m.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            perm.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        let r = m.relabel(&perm);
        prop_assert_eq!(
            m.enumerate_submonoids().unwrap().len(),
            r.enumerate_submonoids().unwrap().len()
        );
        prop_assert_eq!(census_submonoids(&m).unwrap().summary, census_submonoids(&r).unwrap().summary);
    }
}

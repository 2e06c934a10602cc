use proptest::prelude::*;
use zeroclass::catalog;
use zeroclass::census::all_monoids_up_to;
use zeroclass::{BinaryRelation, FiniteMonoid, MonoidMorphism, RelationKind};

fn population() -> Vec<FiniteMonoid> {
    let mut pool = all_monoids_up_to(4).unwrap();
    pool.extend([catalog::example_a(), catalog::symmetric3(), catalog::full_transformation(2)]);
    pool
}

fn random_relation(n: usize, words: &[u64]) -> BinaryRelation {
    let mask = (1u64 << n) - 1;
    BinaryRelation::from_rows(words[..n].iter().map(|w| w & mask).collect())
}

/// A monoid from the population together with a sparse random relation on it.
fn monoid_and_relation() -> impl Strategy<Value = (FiniteMonoid, BinaryRelation)> {
    (proptest::sample::select(population()), prop::collection::vec(any::<u64>(), 6), any::<u64>())
        .prop_map(|(m, words, thin)| {
            let n = m.order();
            // and-ing with a second random word keeps the relation sparse
            let words: Vec<u64> = words.iter().map(|w| w & thin.rotate_left((*w % 64) as u32)).collect();
            let r = random_relation(n, &words);
            (m, r)
        })
}

fn warshall(r: &BinaryRelation) -> BinaryRelation {
    let n = r.size();
    let mut m: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| r.contains_pair(a, b)).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                m[i][j] = m[i][j] || (m[i][k] && m[k][j]);
            }
        }
    }
    BinaryRelation::from_pairs(n, (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| m[i][j]))
}

fn internal_reflexive(m: &FiniteMonoid, seed: &BinaryRelation) -> BinaryRelation {
    BinaryRelation::compatible_closure(m, seed.pairs().chain(m.elements().map(|a| (a, a))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn transitive_closure_is_a_closure_operator((_m, r) in monoid_and_relation(), extra in any::<u64>()) {
        let t = r.transitive_closure();
        prop_assert_eq!(&t, &warshall(&r));
        prop_assert!(r.is_subrelation_of(&t).unwrap());
        prop_assert!(t.is_transitive());
        prop_assert_eq!(&t.transitive_closure(), &t);
        let n = r.size();
        let bigger = r.union(&random_relation(n, &[extra; 8])).unwrap();
        prop_assert!(t.is_subrelation_of(&bigger.transitive_closure()).unwrap());
    }

    #[test]
    fn compatible_closure_is_least((m, r) in monoid_and_relation()) {
        let c = BinaryRelation::compatible_closure(&m, r.pairs());
        prop_assert!(c.is_compatible(&m));
        prop_assert!(r.is_subrelation_of(&c).unwrap());
        prop_assert_eq!(&BinaryRelation::compatible_closure(&m, c.pairs()), &c);
        prop_assert_eq!(&c, &BinaryRelation::compatible_closure_by_generators(&m, r.pairs()));
    }

    #[test]
    fn symmetric_and_reflexive_closures((_m, r) in monoid_and_relation()) {
        let s = r.symmetric_closure();
        prop_assert!(s.is_symmetric());
        prop_assert_eq!(&s, &r.union(&r.transpose()).unwrap());
        prop_assert!(r.reflexive_closure().is_reflexive());
    }

    #[test]
    fn intersection_of_compatible_relations_is_compatible(
        (m, r) in monoid_and_relation(),
        words in prop::collection::vec(any::<u64>(), 6),
    ) {
        let a = BinaryRelation::compatible_closure(&m, r.pairs());
        let b = BinaryRelation::compatible_closure(&m, random_relation(m.order(), &words).pairs());
        prop_assert!(a.intersect(&b).unwrap().is_compatible(&m));
    }

    #[test]
    fn transitive_closure_of_internal_reflexive_is_compatible((m, r) in monoid_and_relation()) {
        let refl = internal_reflexive(&m, &r);
        prop_assert!(refl.is_internal(&m, RelationKind::Reflexive));
        let t = refl.transitive_closure();
        prop_assert!(t.is_internal(&m, RelationKind::Preorder));
        let e = refl.symmetric_closure().transitive_closure();
        prop_assert!(e.is_internal(&m, RelationKind::Equivalence));
    }
}

fn small_pairs() -> Vec<(FiniteMonoid, FiniteMonoid)> {
    let pool: Vec<FiniteMonoid> = all_monoids_up_to(3).unwrap();
    pool.iter()
        .flat_map(|a| pool.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

proptest! {
    #[test]
    fn preimages_preserve_properties(
        (source, target) in proptest::sample::select(small_pairs()),
        words in prop::collection::vec(any::<u64>(), 6),
        pick in any::<prop::sample::Index>(),
    ) {
        let morphisms = MonoidMorphism::all(&source, &target);
        // the map to the identity is always a morphism, so the list is non-empty
        let f = &morphisms[pick.index(morphisms.len())];
        let seed = random_relation(target.order(), &words);
        let refl = internal_reflexive(&target, &seed);
        for (rel, kind) in [
            (refl.clone(), RelationKind::Reflexive),
            (refl.transitive_closure(), RelationKind::Preorder),
            (refl.symmetric_closure().transitive_closure(), RelationKind::Equivalence),
        ] {
            let back = BinaryRelation::preimage_along(f, &rel).unwrap();
            prop_assert!(back.is_internal(&source, kind));
        }
        let plain = BinaryRelation::preimage_along(f, &seed).unwrap();
        prop_assert_eq!(plain.is_symmetric() || !seed.is_symmetric(), true);
        prop_assert_eq!(plain.is_transitive() || !seed.is_transitive(), true);
        let ker = BinaryRelation::preimage_along(f, &BinaryRelation::diagonal(target.order())).unwrap();
        prop_assert_eq!(ker, BinaryRelation::kernel_pair(f.map()));
    }
}

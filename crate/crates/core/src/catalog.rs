//! Small named monoids.

use crate::monoid::FiniteMonoid;

fn named(table: Vec<Vec<usize>>, identity: usize, names: &[&str]) -> FiniteMonoid {
    FiniteMonoid::with_names(table, identity, names.iter().map(|s| s.to_string()).collect())
        .expect("catalog table is a monoid")
}

/// The four-element monoid `{1,2,3,4}` with `M = {1,2}` a submonoid that is not a clot.
pub fn example_a() -> FiniteMonoid {
    named(
        vec![vec![0, 1, 2, 3], vec![1, 1, 2, 2], vec![2, 1, 2, 1], vec![3, 1, 2, 0]],
        0,
        &["1", "2", "3", "4"],
    )
}

/// `ℤ/n` under addition.
pub fn cyclic(n: usize) -> FiniteMonoid {
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteMonoid::new(table, 0).expect("cyclic group")
}

/// `{1, a, 0}` with `a·a = 0` and `0` absorbing.
pub fn nil3() -> FiniteMonoid {
    named(vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]], 0, &["1", "a", "0"])
}

/// `{1, 0}` under multiplication.
pub fn semilattice2() -> FiniteMonoid {
    named(vec![vec![0, 1], vec![1, 1]], 0, &["1", "0"])
}

/// Permutations of `{1,2,3}` in cycle notation. The product `p·q` applies `q` first.
pub fn symmetric3() -> FiniteMonoid {
    // images of 1, 2, 3
    let perms: [([usize; 3], &str); 6] = [
        ([1, 2, 3], "e"),
        ([2, 1, 3], "(12)"),
        ([3, 2, 1], "(13)"),
        ([1, 3, 2], "(23)"),
        ([2, 3, 1], "(123)"),
        ([3, 1, 2], "(132)"),
    ];
    let index = |p: [usize; 3]| perms.iter().position(|(q, _)| *q == p).unwrap();
    let table = perms
        .iter()
        .map(|(p, _)| perms.iter().map(|(q, _)| index([p[q[0] - 1], p[q[1] - 1], p[q[2] - 1]])).collect())
        .collect();
    let names: Vec<&str> = perms.iter().map(|(_, n)| *n).collect();
    named(table, 0, &names)
}

/// All maps `{0..k} → {0..k}` under composition (`f·g` applies `g` first), for `k ≤ 3`.
pub fn full_transformation(k: usize) -> FiniteMonoid {
    assert!(k <= 3, "T_{k} exceeds the supported order");
    let maps: Vec<Vec<usize>> = (0..k.pow(k as u32))
        .map(|mut code| {
            (0..k)
                .map(|_| {
                    let v = code % k;
                    code /= k;
                    v
                })
                .collect()
        })
        .collect();
    transformation_monoid(k, &maps)
}

/// The monoid of maps `{0..k} → {0..k}` generated by `generators` under composition.
/// `f·g` applies `g` first; element 0 is the identity map.
pub fn transformation_monoid(k: usize, generators: &[Vec<usize>]) -> FiniteMonoid {
    let identity: Vec<usize> = (0..k).collect();
    let mut elements = vec![identity];
    let mut i = 0;
    while i < elements.len() {
        for g in generators {
            let composed: Vec<usize> = (0..k).map(|x| elements[i][g[x]]).collect();
            if !elements.contains(&composed) {
                elements.push(composed);
            }
        }
        i += 1;
    }
    let index = |f: &Vec<usize>| elements.iter().position(|e| e == f).unwrap();
    let table = elements
        .iter()
        .map(|f| elements.iter().map(|g| index(&(0..k).map(|x| f[g[x]]).collect())).collect())
        .collect();
    let names = elements
        .iter()
        .map(|f| f.iter().map(|v| v.to_string()).collect::<String>())
        .collect();
    FiniteMonoid::with_names(table, 0, names).expect("transformation monoid")
}

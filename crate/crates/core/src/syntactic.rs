//! Syntactic relations of a subset and the conditions (C), (P), (R), (F).
//!
//! Every scan runs `x`, `y`, then `u` in increasing element index, so the
//! reported witness is the lexicographically first violation.

use crate::monoid::{FiniteMonoid, SubsetMask};
use crate::relation::{BinaryRelation, CompatibilityViolation};
use crate::witness::{Witness, WitnessKind};

/// Pairs `(a, b)` such that for every context `x, y`, `pred(xay, xby)` holds.
fn context_relation(
    monoid: &FiniteMonoid,
    pred: impl Fn(usize, usize) -> bool,
) -> BinaryRelation {
    let n = monoid.order();
    let mut rel = BinaryRelation::empty(n);
    for a in 0..n {
        for b in 0..n {
            let all = monoid.elements().all(|x| {
                let (xa, xb) = (monoid.multiply(x, a), monoid.multiply(x, b));
                monoid.elements().all(|y| pred(monoid.multiply(xa, y), monoid.multiply(xb, y)))
            });
            if all {
                rel.insert(a, b);
            }
        }
    }
    rel
}

/// `a ~_M b` iff `xay ∈ M ⇔ xby ∈ M` for all `x, y`.
pub fn syntactic_congruence(monoid: &FiniteMonoid, m: SubsetMask) -> BinaryRelation {
    context_relation(monoid, |p, q| m.contains(p) == m.contains(q))
}

/// `a ≤_M b` iff `xay ∈ M ⇒ xby ∈ M` for all `x, y`.
pub fn syntactic_preorder(monoid: &FiniteMonoid, m: SubsetMask) -> BinaryRelation {
    context_relation(monoid, |p, q| !m.contains(p) || m.contains(q))
}

/// `R_M` together with the checks that decide whether it is internal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntacticReflexive {
    pub relation: BinaryRelation,
    pub reflexive: bool,
    pub compatibility: Option<CompatibilityViolation>,
}

impl SyntacticReflexive {
    pub fn is_internal(&self) -> bool {
        self.reflexive && self.compatibility.is_none()
    }
}

/// `a R_M b` iff `xay = 1 ⇒ xby ∈ M` for all `x, y`.
///
/// Reflexivity and compatibility are computed, never assumed.
pub fn syntactic_reflexive(monoid: &FiniteMonoid, m: SubsetMask) -> SyntacticReflexive {
    let one = monoid.identity();
    let relation = context_relation(monoid, |p, q| p != one || m.contains(q));
    SyntacticReflexive {
        reflexive: relation.is_reflexive(),
        compatibility: relation.compatibility_violation(monoid),
        relation,
    }
}

fn scan_triples(
    monoid: &FiniteMonoid,
    m: SubsetMask,
    kind: WitnessKind,
    violates: impl Fn(usize, usize, usize) -> bool,
) -> Result<(), Witness> {
    for x in monoid.elements() {
        for y in monoid.elements() {
            let xy = monoid.multiply(x, y);
            for u in m.iter() {
                if violates(xy, monoid.multiply(monoid.multiply(x, u), y), u) {
                    return Err(Witness::new(kind, &[x, y, u]));
                }
            }
        }
    }
    Ok(())
}

/// `xy ∈ M ⇔ xuy ∈ M` for all `x, y ∈ A`, `u ∈ M`.
pub fn condition_c(monoid: &FiniteMonoid, m: SubsetMask) -> Result<(), Witness> {
    scan_triples(monoid, m, WitnessKind::C, |xy, xuy, _| m.contains(xy) != m.contains(xuy))
}

/// `xy ∈ M ⇒ xuy ∈ M` for all `x, y ∈ A`, `u ∈ M`.
pub fn condition_p(monoid: &FiniteMonoid, m: SubsetMask) -> Result<(), Witness> {
    scan_triples(monoid, m, WitnessKind::P, |xy, xuy, _| m.contains(xy) && !m.contains(xuy))
}

/// `xy = 1 ⇒ xuy ∈ M` for all `x, y ∈ A`, `u ∈ M`.
pub fn condition_r(monoid: &FiniteMonoid, m: SubsetMask) -> Result<(), Witness> {
    let one = monoid.identity();
    scan_triples(monoid, m, WitnessKind::R, |xy, xuy, _| xy == one && !m.contains(xuy))
}

/// `xMy ∩ M ≠ ∅ ⇒ xMy ⊆ M` for all `x, y`.
pub fn condition_f(monoid: &FiniteMonoid, m: SubsetMask) -> Result<(), Witness> {
    for x in monoid.elements() {
        for y in monoid.elements() {
            let xmy = |u: usize| monoid.multiply(monoid.multiply(x, u), y);
            let hit = m.iter().find(|&u| m.contains(xmy(u)));
            let miss = m.iter().find(|&v| !m.contains(xmy(v)));
            if let (Some(u), Some(v)) = (hit, miss) {
                return Err(Witness::new(WitnessKind::F, &[x, y, u, v]));
            }
        }
    }
    Ok(())
}

/// `aM ⊆ Ma` for every `a ∈ A`.
pub fn right_normal(monoid: &FiniteMonoid, m: SubsetMask) -> Result<(), Witness> {
    for a in monoid.elements() {
        let ma = SubsetMask::from_elements(monoid.order(), m.iter().map(|v| monoid.multiply(v, a)));
        if let Some(u) = m.iter().find(|&u| !ma.contains(monoid.multiply(a, u))) {
            return Err(Witness::new(WitnessKind::RightNormal, &[a, u]));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn names(monoid: &FiniteMonoid, s: &[&str]) -> SubsetMask {
        monoid.subset_from_names(s).unwrap()
    }

    #[test]
    fn trivial_subsets_give_indiscrete() {
        let a = catalog::example_a();
        let all = SubsetMask::full(4);
        let none = SubsetMask::empty(4);
        let nabla = BinaryRelation::indiscrete(4);
        assert_eq!(syntactic_congruence(&a, all), nabla);
        assert_eq!(syntactic_congruence(&a, none), nabla);
        assert_eq!(syntactic_preorder(&a, all), nabla);
        assert_eq!(syntactic_reflexive(&a, all).relation, nabla);
    }

    #[test]
    fn example_a_syntactic_relations() {
        let a = catalog::example_a();
        let m = names(&a, &["1", "2"]);
        let cong = syntactic_congruence(&a, m);
        assert_eq!(a.subset_names(cong.zero_class(a.identity())), ["1"]);
        let pre = syntactic_preorder(&a, m);
        assert!(!pre.contains_pair(1, 0), "2 ≤_M 1 must fail");
        assert_eq!(cong, pre.intersect(&pre.transpose()).unwrap());

        let refl = syntactic_reflexive(&a, m);
        assert!(refl.is_internal());
        assert_eq!(a.subset_names(refl.relation.zero_class(a.identity())), ["1"]);
    }

    #[test]
    fn example_a_conditions() {
        let a = catalog::example_a();
        let m = names(&a, &["1", "2"]);
        let w = condition_r(&a, m).unwrap_err();
        assert_eq!(w.names(&a), ["4", "4", "2"]);
        assert!(w.replays(&a, m));
        assert!(condition_f(&a, m).is_err());
        let w = right_normal(&a, m).unwrap_err();
        assert_eq!(w.names(&a), ["3", "2"]);
        assert!(w.replays(&a, m));

        let full = SubsetMask::full(4);
        assert!(condition_c(&a, full).is_ok());
        assert!(condition_p(&a, full).is_ok());
        assert!(condition_r(&a, full).is_ok());
        assert!(condition_f(&a, full).is_ok());
    }

    #[test]
    fn nil3_cone_not_normal() {
        let a = catalog::nil3();
        let m = names(&a, &["1", "0"]);
        assert!(condition_p(&a, m).is_ok());
        let w = condition_c(&a, m).unwrap_err();
        assert_eq!(w.names(&a), ["1", "a", "0"]);
        assert!(w.replays(&a, m));
        let w = condition_f(&a, m).unwrap_err();
        assert!(w.replays(&a, m));
    }

    #[test]
    fn trivial_submonoid() {
        let t = FiniteMonoid::trivial();
        assert!(condition_c(&t, SubsetMask::full(1)).is_ok());
        for a in [catalog::example_a(), catalog::nil3(), catalog::symmetric3()] {
            let one = SubsetMask::from_elements(a.order(), [a.identity()]);
            assert!(right_normal(&a, one).is_ok());
        }
    }

    #[test]
    fn commutative_monoids_are_right_normal() {
        let z6 = catalog::cyclic(6);
        for m in z6.enumerate_submonoids().unwrap() {
            assert!(right_normal(&z6, m).is_ok());
        }
    }

    #[test]
    fn symmetric_group_congruence_is_discrete() {
        let s3 = catalog::symmetric3();
        let m = names(&s3, &["e", "(12)"]);
        let cong = syntactic_congruence(&s3, m);
        assert_eq!(cong, BinaryRelation::diagonal(6));
        assert_eq!(s3.subset_names(cong.zero_class(s3.identity())), ["e"]);
    }

    #[test]
    fn reflexive_relation_of_a_non_submonoid() {
        // 1 ∉ M: R_M loses reflexivity at every a admitting xay = 1
        let a = catalog::example_a();
        let r = syntactic_reflexive(&a, names(&a, &["2"]));
        assert!(!r.reflexive);
    }
}

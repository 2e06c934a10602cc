//! The smallest internal reflexive relation, preorder and congruence whose
//! zero-class contains a given submonoid.
//!
//! `R(m)` is the submonoid of `A × A` generated by `Δ_A ∪ ({1} × M)`.
//! `P(m)` is its transitive closure and `E(m)` the transitive closure of the
//! submonoid generated by `Δ_A ∪ (M × M)`. A single transitive closure is
//! expected to stay compatible; when it does not, the constructors fail with
//! [`GeneratedError::InternalInvariantBroken`] instead of iterating further.

use rayon::prelude::*;
use thiserror::Error;

use crate::monoid::{FiniteMonoid, SizeCapExceeded, SubsetMask};
use crate::relation::{quotient_by_congruence, BinaryRelation, RelationKind};

/// Largest order the exhaustive oracle accepts.
pub const ORACLE_CAP: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratedError {
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),
    #[error(transparent)]
    SizeCapExceeded(#[from] SizeCapExceeded),
}

fn reflexive_seed(monoid: &FiniteMonoid, m: SubsetMask) -> Vec<(usize, usize)> {
    let one = monoid.identity();
    monoid.elements().map(|a| (a, a)).chain(m.iter().map(|u| (one, u))).collect()
}

fn congruence_seed(monoid: &FiniteMonoid, m: SubsetMask) -> Vec<(usize, usize)> {
    monoid
        .elements()
        .map(|a| (a, a))
        .chain(m.iter().flat_map(|u| m.iter().map(move |v| (u, v))))
        .collect()
}

/// `R(m)`.
pub fn generated_reflexive(monoid: &FiniteMonoid, m: SubsetMask) -> BinaryRelation {
    BinaryRelation::compatible_closure(monoid, reflexive_seed(monoid, m))
}

/// `P(m)`, the transitive closure of `R(m)`.
pub fn generated_preorder(
    monoid: &FiniteMonoid,
    m: SubsetMask,
) -> Result<BinaryRelation, GeneratedError> {
    let p = generated_reflexive(monoid, m).transitive_closure();
    if let Some(v) = p.compatibility_violation(monoid) {
        return Err(GeneratedError::InternalInvariantBroken(format!(
            "transitive closure of R(m) is not compatible: {v:?}"
        )));
    }
    #[cfg(debug_assertions)]
    check_alternating(monoid, m, RelationKind::Preorder, &p)?;
    Ok(p)
}

/// `E(m)`, the transitive closure of the submonoid generated by `Δ_A ∪ (M × M)`.
pub fn generated_congruence(
    monoid: &FiniteMonoid,
    m: SubsetMask,
) -> Result<BinaryRelation, GeneratedError> {
    let symmetric = BinaryRelation::compatible_closure(monoid, congruence_seed(monoid, m));
    let e = symmetric.transitive_closure();
    if !e.is_equivalence() {
        return Err(GeneratedError::InternalInvariantBroken(
            "transitive closure of the M×M closure is not an equivalence".into(),
        ));
    }
    if let Some(v) = e.compatibility_violation(monoid) {
        return Err(GeneratedError::InternalInvariantBroken(format!(
            "transitive closure of the M×M closure is not compatible: {v:?}"
        )));
    }
    #[cfg(debug_assertions)]
    check_alternating(monoid, m, RelationKind::Equivalence, &e)?;
    Ok(e)
}

/// Dispatches on `kind`.
pub fn generated(
    monoid: &FiniteMonoid,
    m: SubsetMask,
    kind: RelationKind,
) -> Result<BinaryRelation, GeneratedError> {
    match kind {
        RelationKind::Reflexive => Ok(generated_reflexive(monoid, m)),
        RelationKind::Preorder => generated_preorder(monoid, m),
        RelationKind::Equivalence => generated_congruence(monoid, m),
    }
}

/// Alternates compatible closure with symmetric/transitive closure until
/// nothing changes. Always yields the least internal relation of `kind`
/// containing `{1} × M`, whether or not one transitive closure suffices.
pub fn alternating_fixpoint(
    monoid: &FiniteMonoid,
    m: SubsetMask,
    kind: RelationKind,
) -> BinaryRelation {
    let mut rel = BinaryRelation::compatible_closure(monoid, reflexive_seed(monoid, m));
    loop {
        let mut next = rel.clone();
        if kind == RelationKind::Equivalence {
            next = next.symmetric_closure();
        }
        if kind != RelationKind::Reflexive {
            next = next.transitive_closure();
        }
        next = BinaryRelation::compatible_closure(monoid, next.pairs().collect::<Vec<_>>());
        if next == rel {
            return rel;
        }
        rel = next;
    }
}

#[cfg(debug_assertions)]
fn check_alternating(
    monoid: &FiniteMonoid,
    m: SubsetMask,
    kind: RelationKind,
    single: &BinaryRelation,
) -> Result<(), GeneratedError> {
    if alternating_fixpoint(monoid, m, kind) == *single {
        Ok(())
    } else {
        Err(GeneratedError::InternalInvariantBroken(format!(
            "single transitive closure differs from the alternating fixed point ({})",
            kind.name()
        )))
    }
}

/// Intersection of every internal relation of `kind` whose zero-class contains
/// `M`, found by enumerating bit matrices.
///
/// Rows are assigned in element order. Each row must contain the diagonal bit
/// (and the identity's row must contain `M`); after each assignment every
/// reflexivity, symmetry, transitivity and compatibility constraint whose rows
/// are all assigned is checked, and failing branches are cut.
pub fn minimal_relation_oracle(
    monoid: &FiniteMonoid,
    m: SubsetMask,
    kind: RelationKind,
) -> Result<BinaryRelation, GeneratedError> {
    let n = monoid.order();
    if n > ORACLE_CAP {
        return Err(SizeCapExceeded { order: n, cap: ORACLE_CAP }.into());
    }
    let one = monoid.identity();
    // one parallel task per admissible first row
    let forced_first = forced_row(one, m, 0);
    let free_first = !forced_first & full(n);
    let first_rows: Vec<u64> = submasks(free_first).map(|s| forced_first | s).collect();
    let meet = first_rows
        .into_par_iter()
        .filter_map(|row0| {
            let mut search = OracleSearch {
                monoid,
                kind,
                m,
                rows: vec![0; n],
                meet: None,
            };
            search.rows[0] = row0;
            if search.consistent_through(0) {
                search.descend(1);
            }
            search.meet
        })
        .reduce_with(|a, b| a.iter().zip(&b).map(|(x, y)| x & y).collect());
    let rows = meet.expect("∇_A always qualifies");
    let rel = BinaryRelation::from_rows(rows);
    debug_assert!(rel.is_internal(monoid, kind));
    Ok(rel)
}

fn full(n: usize) -> u64 {
    crate::monoid::full_word(n)
}

/// Bits every candidate row must contain.
fn forced_row(one: usize, m: SubsetMask, row: usize) -> u64 {
    let mut bits = 1u64 << row;
    if row == one {
        bits |= m.bits() | 1 << one;
    }
    bits
}

fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == mask { None } else { Some(((current | !mask).wrapping_add(1)) & mask) };
        Some(current)
    })
}

struct OracleSearch<'a> {
    monoid: &'a FiniteMonoid,
    kind: RelationKind,
    m: SubsetMask,
    rows: Vec<u64>,
    meet: Option<Vec<u64>>,
}

impl OracleSearch<'_> {
    fn descend(&mut self, row: usize) {
        let n = self.monoid.order();
        if row == n {
            self.meet = Some(match self.meet.take() {
                None => self.rows.clone(),
                Some(acc) => acc.iter().zip(&self.rows).map(|(a, b)| a & b).collect(),
            });
            return;
        }
        let forced = forced_row(self.monoid.identity(), self.m, row);
        let free = !forced & full(n);
        for s in submasks(free) {
            self.rows[row] = forced | s;
            if self.consistent_through(row) {
                self.descend(row + 1);
            }
        }
        self.rows[row] = 0;
    }

    #[inline]
    fn related(&self, a: usize, b: usize) -> bool {
        self.rows[a] >> b & 1 == 1
    }

    /// Checks every constraint whose rows all lie in `0..=last` and which
    /// mentions row `last`.
    fn consistent_through(&self, last: usize) -> bool {
        let mon = self.monoid;
        let assigned = |r: usize| r <= last;
        if self.kind == RelationKind::Equivalence {
            for a in 0..=last {
                let (x, y) = (a, last);
                if self.related(x, y) != self.related(y, x) {
                    return false;
                }
            }
        }
        if self.kind != RelationKind::Reflexive {
            // (a,b), (b,c) ⇒ (a,c)
            for a in 0..=last {
                for b in 0..=last {
                    if (a == last || b == last) && self.related(a, b) && self.rows[b] & !self.rows[a] != 0
                    {
                        return false;
                    }
                }
            }
        }
        // (a,b), (c,d) ⇒ (ac, bd), for rows a, c and ac all assigned
        for a in 0..=last {
            for c in 0..=last {
                let ac = mon.multiply(a, c);
                if !assigned(ac) || (a != last && c != last && ac != last) {
                    continue;
                }
                for b in SubsetMask::from_bits(mon.order(), self.rows[a]).iter() {
                    for d in SubsetMask::from_bits(mon.order(), self.rows[c]).iter() {
                        if !self.related(ac, mon.multiply(b, d)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Builds `E(m)`, quotients by it, and checks that the kernel pair of the
/// projection is `E(m)` again.
pub fn cokernel_round_trip(monoid: &FiniteMonoid, m: SubsetMask) -> Result<bool, GeneratedError> {
    let e = generated_congruence(monoid, m)?;
    let q = quotient_by_congruence(monoid, &e)
        .map_err(|err| GeneratedError::InternalInvariantBroken(err.to_string()))?;
    Ok(q.kernel_pair() == e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn identity_submonoid_generates_diagonal() {
        for a in [catalog::example_a(), catalog::nil3(), catalog::symmetric3()] {
            let one = SubsetMask::from_elements(a.order(), [a.identity()]);
            for kind in RelationKind::ALL {
                assert_eq!(generated(&a, one, kind).unwrap(), BinaryRelation::diagonal(a.order()));
            }
        }
    }

    #[test]
    fn example_a_reflexive() {
        let a = catalog::example_a();
        let m = a.subset_from_names(&["1", "2"]).unwrap();
        let r = generated_reflexive(&a, m);
        let named: Vec<(String, String)> =
            r.pairs().map(|(x, y)| (a.name(x).into(), a.name(y).into())).collect();
        let expected = [
            ("1", "1"),
            ("1", "2"),
            ("1", "3"),
            ("2", "2"),
            ("2", "3"),
            ("3", "2"),
            ("3", "3"),
            ("4", "2"),
            ("4", "3"),
            ("4", "4"),
        ];
        assert_eq!(named.len(), 10);
        for ((x, y), (ex, ey)) in named.iter().zip(expected) {
            assert_eq!((x.as_str(), y.as_str()), (ex, ey));
        }
        assert_eq!(minimal_relation_oracle(&a, m, RelationKind::Reflexive).unwrap(), r);
        // the 10-pair relation is already transitive
        assert_eq!(generated_preorder(&a, m).unwrap(), r);
    }

    #[test]
    fn full_submonoid() {
        let a = catalog::example_a();
        let full = SubsetMask::full(4);
        assert_eq!(generated_reflexive(&a, full).zero_class(a.identity()), full);
        assert_eq!(generated_congruence(&a, full).unwrap(), BinaryRelation::indiscrete(4));
    }

    #[test]
    fn nil3_generated_relations() {
        // frozen from the exhaustive oracle below
        let a = catalog::nil3();
        let m = a.subset_from_names(&["1", "0"]).unwrap();
        let r = generated_reflexive(&a, m);
        assert_eq!(r, BinaryRelation::from_pairs(3, [(0, 0), (0, 2), (1, 1), (1, 2), (2, 2)]));
        assert_eq!(generated_preorder(&a, m).unwrap(), r);
        // (1,0)·(a,a) = (a,0), so a joins the class of 1 and 0
        assert_eq!(generated_congruence(&a, m).unwrap(), BinaryRelation::indiscrete(3));
        for kind in RelationKind::ALL {
            assert_eq!(
                minimal_relation_oracle(&a, m, kind).unwrap(),
                generated(&a, m, kind).unwrap()
            );
        }
    }

    #[test]
    fn oracle_cap() {
        let a = catalog::cyclic(6);
        assert!(matches!(
            minimal_relation_oracle(&a, SubsetMask::full(6), RelationKind::Reflexive),
            Err(GeneratedError::SizeCapExceeded(_))
        ));
    }

    #[test]
    fn round_trip() {
        let a = catalog::example_a();
        for m in a.enumerate_submonoids().unwrap() {
            assert!(cokernel_round_trip(&a, m).unwrap());
        }
    }

    #[test]
    fn submask_enumeration() {
        assert_eq!(submasks(0).collect::<Vec<_>>(), [0]);
        assert_eq!(submasks(0b101).collect::<Vec<_>>(), [0, 1, 4, 5]);
    }
}

//! Bounded witness search on computable, possibly infinite monoids.
//!
//! A refutation found here is a concrete tuple of elements and replays
//! without reference to the bound. Absence of a refutation only certifies the
//! enumerated region, except where a backend's structure settles the question
//! (see [`EffectiveMonoid::has_trivial_units`]).

mod backends;
mod corpus;

use std::fmt::Debug;

use serde_json::{json, Value};

pub use backends::{Bicyclic, Endofunction, Endofunctions, FreeMonoid, Integers, Naturals};
pub use corpus::{example_corpus, CorpusBounds, CorpusMismatch, CorpusReport, ExampleOutcome};

pub trait EffectiveMonoid {
    type Elem: Clone + PartialEq + Debug;

    fn identity(&self) -> Self::Elem;

    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Elements of size at most `bound`, in nondecreasing size, without repeats.
    fn enumerate(&self, bound: usize) -> Vec<Self::Elem>;

    fn show(&self, e: &Self::Elem) -> String;

    /// `xy = 1` forces `x = y = 1`.
    fn has_trivial_units(&self) -> bool {
        false
    }

    /// Equality is only certified on a finite tabulated domain.
    fn tabulated(&self) -> bool {
        false
    }

    fn is_identity(&self, e: &Self::Elem) -> bool {
        *e == self.identity()
    }

    fn product<'a, I>(&self, factors: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        factors.into_iter().fold(self.identity(), |acc, x| self.multiply(&acc, x))
    }
}

/// Checks associativity and the identity laws on every enumerated element,
/// returning the first offending triple (or single element).
pub fn law_violation<A: EffectiveMonoid>(mon: &A, bound: usize) -> Option<Vec<A::Elem>> {
    let es = mon.enumerate(bound);
    let one = mon.identity();
    for a in &es {
        if mon.multiply(&one, a) != *a || mon.multiply(a, &one) != *a {
            return Some(vec![a.clone()]);
        }
        for b in &es {
            let ab = mon.multiply(a, b);
            for c in &es {
                if mon.multiply(&ab, c) != mon.multiply(a, &mon.multiply(b, c)) {
                    return Some(vec![a.clone(), b.clone(), c.clone()]);
                }
            }
        }
    }
    None
}

/// Conditions checkable by bounded search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// `xy ∈ M ⇔ xuy ∈ M`; witness `[x, y, u]`
    C,
    /// `xy ∈ M ⇒ xuy ∈ M`; witness `[x, y, u]`
    P,
    /// `xy = 1 ⇒ xuy ∈ M`; witness `[x, y, u]`
    R,
    /// `xy = 1, xs ∈ M, ty ∈ M ⇒ ts ∈ M`; witness `[x, y, s, t]`
    Star,
    /// `xy = 1 ⇒ yx = 1`; witness `[x, y]`
    Dedekind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    /// `tabulated` marks witnesses certified only on a backend's finite domain.
    RefutedWith { witness: W, tabulated: bool },
    /// `holds_for_all` is set when the backend's structure proves the condition
    /// beyond the bound.
    NoWitnessUpTo { bound: usize, holds_for_all: bool },
}

impl<W> Verdict<W> {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::RefutedWith { .. })
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::RefutedWith { witness, .. } => Some(witness),
            Verdict::NoWitnessUpTo { .. } => None,
        }
    }
}

/// Rows of `(a_i, b_i)` pairs linking one element to the next.
type Chain<E> = Vec<Vec<(E, E)>>;

/// A monoid paired with a decidable membership predicate for a submonoid.
pub struct WithSubmonoid<'a, A: EffectiveMonoid> {
    pub monoid: &'a A,
    pub member: &'a dyn Fn(&A::Elem) -> bool,
}

impl<'a, A: EffectiveMonoid> WithSubmonoid<'a, A> {
    pub fn new(monoid: &'a A, member: &'a dyn Fn(&A::Elem) -> bool) -> Self {
        Self { monoid, member }
    }

    fn contains(&self, e: &A::Elem) -> bool {
        (self.member)(e)
    }

    fn members(&self, bound: usize) -> Vec<A::Elem> {
        self.monoid.enumerate(bound).into_iter().filter(|e| self.contains(e)).collect()
    }

    /// Scans `x`, `y` (and `s`, `t`) over `enumerate(bound)` and `u` over the
    /// enumerated members of `M`, returning the first violation found.
    pub fn bounded_condition(&self, which: Condition, bound: usize) -> Verdict<Vec<A::Elem>> {
        assert!(bound >= 1, "bound must be positive");
        let mon = self.monoid;
        let elems = mon.enumerate(bound);
        let members = self.members(bound);
        let refute = |w: Vec<A::Elem>| Verdict::RefutedWith { witness: w, tabulated: mon.tabulated() };
        for x in &elems {
            for y in &elems {
                let xy = mon.multiply(x, y);
                let unit = mon.is_identity(&xy);
                match which {
                    Condition::C | Condition::P | Condition::R => {
                        if which == Condition::R && !unit {
                            continue;
                        }
                        if which == Condition::P && !self.contains(&xy) {
                            continue;
                        }
                        for u in &members {
                            if self.violates_triple(which, x, y, u) {
                                return refute(vec![x.clone(), y.clone(), u.clone()]);
                            }
                        }
                    }
                    Condition::Dedekind => {
                        if unit && !mon.is_identity(&mon.multiply(y, x)) {
                            return refute(vec![x.clone(), y.clone()]);
                        }
                    }
                    Condition::Star => {
                        if !unit {
                            continue;
                        }
                        for s in elems.iter().filter(|s| self.contains(&mon.multiply(x, s))) {
                            for t in elems.iter().filter(|t| self.contains(&mon.multiply(t, y))) {
                                if !self.contains(&mon.multiply(t, s)) {
                                    return refute(vec![x.clone(), y.clone(), s.clone(), t.clone()]);
                                }
                            }
                        }
                    }
                }
            }
        }
        let structural = mon.has_trivial_units()
            && matches!(which, Condition::R | Condition::Dedekind | Condition::Star);
        Verdict::NoWitnessUpTo { bound, holds_for_all: structural }
    }

    fn violates_triple(&self, which: Condition, x: &A::Elem, y: &A::Elem, u: &A::Elem) -> bool {
        let mon = self.monoid;
        let xy = mon.multiply(x, y);
        let xuy = mon.product([x, u, y]);
        match which {
            Condition::C => self.contains(&xy) != self.contains(&xuy),
            Condition::P => self.contains(&xy) && !self.contains(&xuy),
            Condition::R => mon.is_identity(&xy) && !self.contains(&xuy),
            _ => unreachable!(),
        }
    }

    /// Re-evaluates a witness from [`Self::bounded_condition`].
    pub fn replay(&self, which: Condition, witness: &[A::Elem]) -> bool {
        let mon = self.monoid;
        match (which, witness) {
            (Condition::C | Condition::P | Condition::R, [x, y, u]) => {
                self.contains(u) && self.violates_triple(which, x, y, u)
            }
            (Condition::Dedekind, [x, y]) => {
                mon.is_identity(&mon.multiply(x, y)) && !mon.is_identity(&mon.multiply(y, x))
            }
            (Condition::Star, [x, y, s, t]) => {
                mon.is_identity(&mon.multiply(x, y))
                    && self.contains(&mon.multiply(x, s))
                    && self.contains(&mon.multiply(t, y))
                    && !self.contains(&mon.multiply(t, s))
            }
            _ => false,
        }
    }

    /// Elements related to the identity by the relation `R_M`, among `candidates`,
    /// quantifying contexts over `contexts`.
    pub fn bounded_syntactic_zero_class(
        &self,
        candidates: &[A::Elem],
        contexts: &[A::Elem],
    ) -> Vec<A::Elem> {
        let mon = self.monoid;
        let units: Vec<(&A::Elem, &A::Elem)> = contexts
            .iter()
            .flat_map(|x| contexts.iter().map(move |y| (x, y)))
            .filter(|(x, y)| mon.is_identity(&mon.multiply(x, y)))
            .collect();
        candidates
            .iter()
            .filter(|b| units.iter().all(|(x, y)| self.contains(&mon.product([*x, *b, *y]))))
            .cloned()
            .collect()
    }

    /// Searches chains of word sequences. Row `i` is a list of pairs
    /// `(a_ij, u_ij)` with `u_ij ∈ M`; the first row's `a`-product is `1`,
    /// each later row's `a`-product equals the previous row's interleaved
    /// product `a_1 u_1 … a_n u_n`, and a witness is a chain whose last
    /// interleaved product leaves `M`.
    ///
    /// With `rows = 1` this is the sequence form of the clot condition; with
    /// more rows it is the sequence form of the positive-cone condition.
    pub fn bounded_sequence_search(
        &self,
        rows: usize,
        terms: usize,
        bound: usize,
    ) -> Verdict<SequenceWitness<A::Elem>> {
        let mon = self.monoid;
        let pool = mon.enumerate(bound);
        let members = self.members(bound);
        // elements reached so far, with the chain reaching them
        let mut level: Vec<(A::Elem, Chain<A::Elem>)> = vec![(mon.identity(), vec![])];
        let mut seen: Vec<A::Elem> = vec![mon.identity()];
        for _ in 0..rows {
            let mut next = Vec::new();
            for (target, chain) in &level {
                for len in 1..=terms {
                    for a in tuples(&pool, len) {
                        if mon.product(a.iter().copied()) != *target {
                            continue;
                        }
                        for u in tuples(&members, len) {
                            let row: Vec<(A::Elem, A::Elem)> =
                                a.iter().zip(&u).map(|(x, y)| ((*x).clone(), (*y).clone())).collect();
                            let value = interleave(mon, &row);
                            let mut extended = chain.clone();
                            extended.push(row);
                            if !self.contains(&value) {
                                return Verdict::RefutedWith {
                                    witness: SequenceWitness { rows: extended },
                                    tabulated: mon.tabulated(),
                                };
                            }
                            if !seen.contains(&value) {
                                seen.push(value.clone());
                                next.push((value, extended));
                            }
                        }
                    }
                }
            }
            level = next;
        }
        Verdict::NoWitnessUpTo {
            bound,
            holds_for_all: rows == 1 && mon.has_trivial_units(),
        }
    }
}

fn interleave<A: EffectiveMonoid>(mon: &A, row: &[(A::Elem, A::Elem)]) -> A::Elem {
    row.iter().fold(mon.identity(), |acc, (a, u)| mon.multiply(&mon.multiply(&acc, a), u))
}

fn tuples<T>(pool: &[T], len: usize) -> Vec<Vec<&T>> {
    let mut out: Vec<Vec<&T>> = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                pool.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

/// A chain of rows of `(a, u)` pairs; see
/// [`WithSubmonoid::bounded_sequence_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceWitness<E> {
    pub rows: Vec<Vec<(E, E)>>,
}

impl<E: Clone + PartialEq + Debug> SequenceWitness<E> {
    pub fn replays<A: EffectiveMonoid<Elem = E>>(&self, m: &WithSubmonoid<'_, A>) -> bool {
        let mon = m.monoid;
        let mut target = mon.identity();
        for row in &self.rows {
            if row.iter().any(|(_, u)| !m.contains(u)) {
                return false;
            }
            if mon.product(row.iter().map(|(a, _)| a)) != target {
                return false;
            }
            target = interleave(mon, row);
        }
        !self.rows.is_empty() && !m.contains(&target)
    }

    pub fn show<A: EffectiveMonoid<Elem = E>>(&self, mon: &A) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    Value::Array(row.iter().map(|(a, u)| json!([mon.show(a), mon.show(u)])).collect())
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab_powers(w: &String) -> bool {
        w.len().is_multiple_of(2) && w.as_bytes().chunks(2).all(|c| c == b"ab")
    }

    #[test]
    fn free_monoid_clot_not_cone() {
        let f = FreeMonoid::new(&['a', 'b']);
        let member = |w: &String| ab_powers(w);
        let m = WithSubmonoid::new(&f, &member);
        let v = m.bounded_condition(Condition::P, 6);
        assert_eq!(v.witness().unwrap(), &vec!["a".to_string(), "b".into(), "ab".into()]);
        assert!(m.replay(Condition::P, v.witness().unwrap()));
        assert_eq!(
            m.bounded_condition(Condition::R, 6),
            Verdict::NoWitnessUpTo { bound: 6, holds_for_all: true }
        );
        // sequence forms: one row never refutes, two rows do
        assert!(!m.bounded_sequence_search(1, 2, 4).is_refuted());
        let chain = m.bounded_sequence_search(2, 2, 2);
        let w = chain.witness().unwrap();
        assert!(w.replays(&m));
        assert_eq!(w.rows.len(), 2);
    }

    #[test]
    fn integers_cone_not_normal() {
        let z = Integers;
        let member = |x: &i64| *x >= 0;
        let m = WithSubmonoid::new(&z, &member);
        assert!(!m.bounded_condition(Condition::P, 12).is_refuted());
        let v = m.bounded_condition(Condition::C, 12);
        assert!(m.replay(Condition::C, v.witness().unwrap()));
        assert!(m.replay(Condition::C, &[-1, 0, 1]));
    }

    #[test]
    fn bicyclic_not_dedekind() {
        let b = Bicyclic;
        let member = |_: &(u32, u32)| true;
        let m = WithSubmonoid::new(&b, &member);
        let v = m.bounded_condition(Condition::Dedekind, 1);
        assert_eq!(v.witness().unwrap(), &vec![Bicyclic::B, Bicyclic::C]);
        // M = A satisfies (*) even though A is not Dedekind finite
        assert!(!m.bounded_condition(Condition::Star, 4).is_refuted());
    }

    #[test]
    fn tuples_enumerates_cartesian_power() {
        let pool = [1, 2, 3];
        assert_eq!(tuples(&pool, 0).len(), 1);
        assert_eq!(tuples(&pool, 2).len(), 9);
    }
}

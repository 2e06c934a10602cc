//! Binary relations on the carrier of a finite monoid, stored as bit rows.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monoid::{full_word, FiniteMonoid, SubsetMask, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("relations live on carriers of different sizes ({0} and {1})")]
    BaseMismatch(usize, usize),
    #[error("map is not a monoid morphism: {0}")]
    NotAMorphism(String),
    #[error("relation is not a congruence: {0}")]
    NotACongruence(String),
}

/// The three relation types a submonoid can be normal to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Reflexive,
    Preorder,
    Equivalence,
}

impl RelationKind {
    pub const ALL: [RelationKind; 3] =
        [RelationKind::Reflexive, RelationKind::Preorder, RelationKind::Equivalence];

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Reflexive => "reflexive",
            RelationKind::Preorder => "preorder",
            RelationKind::Equivalence => "equivalence",
        }
    }
}

/// Why a relation fails to be a submonoid of `A × A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompatibilityViolation {
    MissingIdentityPair,
    /// `(a,b)` and `(c,d)` are related but `(ac, bd)` is not.
    NotClosed { left: (usize, usize), right: (usize, usize) },
}

/// `rows[a]` has bit `b` set iff `a` is related to `b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryRelation {
    rows: Vec<u64>,
}

impl BinaryRelation {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER);
        Self { rows: vec![0; n] }
    }

    /// `Δ_A`.
    pub fn diagonal(n: usize) -> Self {
        let mut r = Self::empty(n);
        for a in 0..n {
            r.insert(a, a);
        }
        r
    }

    /// `∇_A`.
    pub fn indiscrete(n: usize) -> Self {
        assert!(n <= MAX_ORDER);
        Self { rows: vec![full_word(n); n] }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut r = Self::empty(n);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    pub fn from_rows(rows: Vec<u64>) -> Self {
        let n = rows.len();
        assert!(n <= MAX_ORDER);
        assert!(rows.iter().all(|r| r & !full_word(n) == 0), "row bits outside carrier");
        Self { rows }
    }

    /// `{(a,b) : map[a] == map[b]}`.
    pub fn kernel_pair(map: &[usize]) -> Self {
        let n = map.len();
        Self::from_pairs(
            n,
            (0..n).flat_map(|a| (0..n).filter(move |&b| map[a] == map[b]).map(move |b| (a, b))),
        )
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn contains_pair(&self, a: usize, b: usize) -> bool {
        self.rows[a] >> b & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, a: usize, b: usize) {
        assert!(a < self.size() && b < self.size());
        self.rows[a] |= 1 << b;
    }

    /// The elements related to `a`.
    pub fn image_of(&self, a: usize) -> SubsetMask {
        SubsetMask::from_bits(self.size(), self.rows[a])
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, &row)| SubsetMask::from_bits(self.size(), row).iter().map(move |b| (a, b)))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|a| self.contains_pair(a, a))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.size()).all(|a| {
            let row = self.rows[a];
            SubsetMask::from_bits(self.size(), row).iter().all(|b| self.rows[b] & !row == 0)
        })
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    /// Whether the relation has the order-theoretic properties of `kind`.
    /// Compatibility is checked separately.
    pub fn has_kind_properties(&self, kind: RelationKind) -> bool {
        match kind {
            RelationKind::Reflexive => self.is_reflexive(),
            RelationKind::Preorder => self.is_reflexive() && self.is_transitive(),
            RelationKind::Equivalence => self.is_equivalence(),
        }
    }

    /// Whether the relation is an internal relation of type `kind` on `monoid`.
    pub fn is_internal(&self, monoid: &FiniteMonoid, kind: RelationKind) -> bool {
        self.has_kind_properties(kind) && self.compatibility_violation(monoid).is_none()
    }

    /// Whether the relation is a submonoid of `A × A`.
    pub fn is_compatible(&self, monoid: &FiniteMonoid) -> bool {
        self.compatibility_violation(monoid).is_none()
    }

    /// First violation of closure under componentwise products, scanning
    /// pairs in lexicographic order.
    pub fn compatibility_violation(&self, monoid: &FiniteMonoid) -> Option<CompatibilityViolation> {
        assert_eq!(self.size(), monoid.order());
        let one = monoid.identity();
        if !self.contains_pair(one, one) {
            return Some(CompatibilityViolation::MissingIdentityPair);
        }
        for (a, b) in self.pairs() {
            for (c, d) in self.pairs() {
                if !self.contains_pair(monoid.multiply(a, c), monoid.multiply(b, d)) {
                    return Some(CompatibilityViolation::NotClosed { left: (a, b), right: (c, d) });
                }
            }
        }
        None
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        let mut t = Self::empty(n);
        for (a, b) in self.pairs() {
            t.insert(b, a);
        }
        t
    }

    pub fn reflexive_closure(&self) -> Self {
        self.union(&Self::diagonal(self.size())).expect("same base")
    }

    pub fn symmetric_closure(&self) -> Self {
        self.union(&self.transpose()).expect("same base")
    }

    /// Least transitive relation containing `self`, by repeated squaring
    /// `R ← R ∪ R∘R` until nothing changes.
    pub fn transitive_closure(&self) -> Self {
        let mut current = self.clone();
        loop {
            let squared = current.compose(&current);
            let next = current.union(&squared).expect("same base");
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// `self ; other`: `a` relates to `c` when `a self b` and `b other c` for some `b`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.size(), other.size());
        let rows = self
            .rows
            .iter()
            .map(|&row| {
                SubsetMask::from_bits(self.size(), row)
                    .iter()
                    .fold(0u64, |acc, b| acc | other.rows[b])
            })
            .collect();
        Self { rows }
    }

    /// The least submonoid of `A × A` containing `seed` and `(1,1)`.
    ///
    /// Each newly added pair is multiplied on both sides by every pair already
    /// present, so the result is closed under arbitrary products.
    pub fn compatible_closure<I: IntoIterator<Item = (usize, usize)>>(
        monoid: &FiniteMonoid,
        seed: I,
    ) -> Self {
        let n = monoid.order();
        let one = monoid.identity();
        let mut rel = Self::empty(n);
        let mut members = Vec::new();
        let mut frontier = Vec::new();
        for (a, b) in std::iter::once((one, one)).chain(seed) {
            if !rel.contains_pair(a, b) {
                rel.insert(a, b);
                members.push((a, b));
                frontier.push((a, b));
            }
        }
        while let Some((a, b)) = frontier.pop() {
            let mut i = 0;
            while i < members.len() {
                let (c, d) = members[i];
                for (x, y) in [
                    (monoid.multiply(a, c), monoid.multiply(b, d)),
                    (monoid.multiply(c, a), monoid.multiply(d, b)),
                ] {
                    if !rel.contains_pair(x, y) {
                        rel.insert(x, y);
                        members.push((x, y));
                        frontier.push((x, y));
                    }
                }
                i += 1;
            }
        }
        rel
    }

    /// Same closure computed by right-multiplying reachable pairs by the
    /// generators only.
    pub fn compatible_closure_by_generators<I: IntoIterator<Item = (usize, usize)>>(
        monoid: &FiniteMonoid,
        seed: I,
    ) -> Self {
        let one = monoid.identity();
        let generators: Vec<(usize, usize)> = seed.into_iter().collect();
        let mut rel = Self::from_pairs(monoid.order(), [(one, one)]);
        let mut frontier = vec![(one, one)];
        while let Some((a, b)) = frontier.pop() {
            for &(c, d) in &generators {
                let (x, y) = (monoid.multiply(a, c), monoid.multiply(b, d));
                if !rel.contains_pair(x, y) {
                    rel.insert(x, y);
                    frontier.push((x, y));
                }
            }
        }
        rel
    }

    /// `[1]_R = {u : (1,u) ∈ R}`.
    pub fn zero_class(&self, identity: usize) -> SubsetMask {
        self.image_of(identity)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, RelationError> {
        self.check_base(other)?;
        Ok(Self { rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a & b).collect() })
    }

    pub fn union(&self, other: &Self) -> Result<Self, RelationError> {
        self.check_base(other)?;
        Ok(Self { rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a | b).collect() })
    }

    /// Whether `self ⊆ other`.
    pub fn is_subrelation_of(&self, other: &Self) -> Result<bool, RelationError> {
        self.check_base(other)?;
        Ok(self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0))
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool, RelationError> {
        other.is_subrelation_of(self)
    }

    fn check_base(&self, other: &Self) -> Result<(), RelationError> {
        if self.size() == other.size() {
            Ok(())
        } else {
            Err(RelationError::BaseMismatch(self.size(), other.size()))
        }
    }

    /// `{(a,b) : (f a, f b) ∈ target}`.
    pub fn preimage_along(f: &MonoidMorphism<'_>, target: &Self) -> Result<Self, RelationError> {
        if target.size() != f.target.order() {
            return Err(RelationError::BaseMismatch(target.size(), f.target.order()));
        }
        let n = f.source.order();
        Ok(Self::from_pairs(
            n,
            (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| target.contains_pair(f.map[a], f.map[b])),
        ))
    }
}

impl fmt::Debug for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// A verified monoid morphism between two finite monoids.
#[derive(Debug, Clone)]
pub struct MonoidMorphism<'a> {
    source: &'a FiniteMonoid,
    target: &'a FiniteMonoid,
    map: Vec<usize>,
}

impl<'a> MonoidMorphism<'a> {
    pub fn new(
        source: &'a FiniteMonoid,
        target: &'a FiniteMonoid,
        map: Vec<usize>,
    ) -> Result<Self, RelationError> {
        if map.len() != source.order() {
            return Err(RelationError::NotAMorphism(format!(
                "{} images for {} elements",
                map.len(),
                source.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.order()) {
            return Err(RelationError::NotAMorphism(format!("image {bad} out of range")));
        }
        if map[source.identity()] != target.identity() {
            return Err(RelationError::NotAMorphism("identity not preserved".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.multiply(a, b)] != target.multiply(map[a], map[b]) {
                    return Err(RelationError::NotAMorphism(format!(
                        "f({a}·{b}) ≠ f({a})·f({b})"
                    )));
                }
            }
        }
        Ok(Self { source, target, map })
    }

    pub fn identity(monoid: &'a FiniteMonoid) -> Self {
        Self { source: monoid, target: monoid, map: monoid.elements().collect() }
    }

    pub fn source(&self) -> &'a FiniteMonoid {
        self.source
    }

    pub fn target(&self) -> &'a FiniteMonoid {
        self.target
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image_of(&self, m: SubsetMask) -> SubsetMask {
        SubsetMask::from_elements(self.target.order(), m.iter().map(|a| self.map[a]))
    }

    /// Every morphism `source → target`, found by brute force over all maps.
    /// Only sensible for tiny monoids.
    pub fn all(source: &'a FiniteMonoid, target: &'a FiniteMonoid) -> Vec<Self> {
        let (n, k) = (source.order(), target.order());
        let total = k.checked_pow(n as u32).expect("too many maps");
        (0..total)
            .filter_map(|mut code| {
                let map = (0..n)
                    .map(|_| {
                        let v = code % k;
                        code /= k;
                        v
                    })
                    .collect();
                Self::new(source, target, map).ok()
            })
            .collect()
    }
}

/// The quotient of a monoid by a congruence, with its projection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub monoid: FiniteMonoid,
    /// `projection[a]` is the class index of `a`.
    pub projection: Vec<usize>,
}

impl Quotient {
    pub fn kernel_pair(&self) -> BinaryRelation {
        BinaryRelation::kernel_pair(&self.projection)
    }
}

/// `A/E`. Classes are numbered by their least element; each class is named
/// `[a]` after that element's name.
pub fn quotient_by_congruence(
    monoid: &FiniteMonoid,
    congruence: &BinaryRelation,
) -> Result<Quotient, RelationError> {
    if congruence.size() != monoid.order() {
        return Err(RelationError::BaseMismatch(congruence.size(), monoid.order()));
    }
    if !congruence.is_equivalence() {
        return Err(RelationError::NotACongruence("not an equivalence relation".into()));
    }
    if let Some(v) = congruence.compatibility_violation(monoid) {
        return Err(RelationError::NotACongruence(format!("{v:?}")));
    }
    let n = monoid.order();
    let mut projection = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    for a in 0..n {
        if projection[a] == usize::MAX {
            let class = representatives.len();
            representatives.push(a);
            for b in congruence.image_of(a).iter() {
                projection[b] = class;
            }
        }
    }
    let table = representatives
        .iter()
        .map(|&a| representatives.iter().map(|&b| projection[monoid.multiply(a, b)]).collect())
        .collect();
    let names = representatives.iter().map(|&a| format!("[{}]", monoid.name(a))).collect();
    let quotient = FiniteMonoid::with_names(table, projection[monoid.identity()], names)
        .map_err(|e| RelationError::NotACongruence(format!("{e:?}")))?;
    Ok(Quotient { monoid: quotient, projection })
}

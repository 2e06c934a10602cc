//! Finite monoids given by Cayley tables, and subsets of their carriers.

use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

/// Largest carrier supported. Subsets and relation rows are single `u64` words.
pub const MAX_ORDER: usize = 64;

/// Default cap on the order of monoids whose submonoids get enumerated.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// One reason a table fails to describe a monoid.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("table is not square (row {row} has {len} entries, expected {expected})")]
    RaggedTable { row: usize, len: usize, expected: usize },
    #[error("table is empty")]
    EmptyTable,
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooLarge(usize),
    #[error("entry ({row},{col}) = {value} is not an element index")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("identity {0} is not an element index")]
    IdentityOutOfRange(usize),
    #[error("identity law fails at element {0}")]
    BadIdentity(usize),
    #[error("associativity fails at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("{got} names given for {expected} elements")]
    NameCount { got: usize, expected: usize },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
}

impl MonoidError {
    /// Like `Display`, but naming elements by `names` where an index is in range.
    pub fn describe(&self, names: &[String]) -> String {
        let n = |i: &usize| names.get(*i).cloned().unwrap_or_else(|| format!("#{i}"));
        match self {
            MonoidError::EntryOutOfRange { row, col, value } => {
                format!("entry ({},{}) = {value} is not an element index", n(row), n(col))
            }
            MonoidError::BadIdentity(e) => format!("identity law fails at element {}", n(e)),
            MonoidError::NotAssociative(a, b, c) => {
                format!("({0}{1}){2} ≠ {0}({1}{2})", n(a), n(b), n(c))
            }
            other => other.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("order {order} exceeds the cap of {cap}")]
pub struct SizeCapExceeded {
    pub order: usize,
    pub cap: usize,
}

/// A finite monoid. `table[a * n + b]` is the product `a·b`, left factor first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteMonoid {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    names: Vec<String>,
}

impl FiniteMonoid {
    /// Validates `table` and `identity`, naming elements `0..n`.
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<Self, Vec<MonoidError>> {
        let names = (0..table.len()).map(|i| i.to_string()).collect();
        Self::with_names(table, identity, names)
    }

    /// Validates a table and attaches display names.
    ///
    /// On failure every violation is reported: ragged rows and bad entries
    /// first, then each element breaking the identity law, then each
    /// non-associative triple.
    pub fn with_names(
        table: Vec<Vec<usize>>,
        identity: usize,
        names: Vec<String>,
    ) -> Result<Self, Vec<MonoidError>> {
        let n = table.len();
        if n == 0 {
            return Err(vec![MonoidError::EmptyTable]);
        }
        if n > MAX_ORDER {
            return Err(vec![MonoidError::TooLarge(n)]);
        }
        let mut errors = Vec::new();
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                errors.push(MonoidError::RaggedTable { row, len: r.len(), expected: n });
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        for (row, r) in table.iter().enumerate() {
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    errors.push(MonoidError::EntryOutOfRange { row, col, value });
                }
            }
        }
        if identity >= n {
            errors.push(MonoidError::IdentityOutOfRange(identity));
        }
        if names.len() != n {
            errors.push(MonoidError::NameCount { got: names.len(), expected: n });
        } else {
            for (i, name) in names.iter().enumerate() {
                if names[..i].contains(name) {
                    errors.push(MonoidError::DuplicateName(name.clone()));
                }
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }

        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let m = |a: usize, b: usize| flat[a * n + b];
        for i in 0..n {
            if m(identity, i) != i || m(i, identity) != i {
                errors.push(MonoidError::BadIdentity(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = m(i, j);
                for k in 0..n {
                    if m(ij, k) != m(i, m(j, k)) {
                        errors.push(MonoidError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        Ok(Self { order: n, table: flat, identity, names })
    }

    pub fn trivial() -> Self {
        Self::new(vec![vec![0]], 0).expect("trivial monoid")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// Product of a sequence of elements, left to right.
    pub fn product<I: IntoIterator<Item = usize>>(&self, factors: I) -> usize {
        factors.into_iter().fold(self.identity, |acc, x| self.multiply(acc, x))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The table as nested rows.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    /// Hex SHA-256 of the order, identity and table. Names are not hashed.
    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.order as u64).to_le_bytes());
        hasher.update((self.identity as u64).to_le_bytes());
        for &v in &self.table {
            hasher.update([v as u8]);
        }
        hex::encode(hasher.finalize())
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.multiply(a, b) == self.multiply(b, a)))
    }

    /// Relabels elements: old element `i` becomes `perm[i]`.
    ///
    /// Panics if `perm` is not a permutation of the carrier.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.order;
        assert_eq!(perm.len(), n);
        let mut inverse = vec![usize::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            assert!(p < n && inverse[p] == usize::MAX, "not a permutation");
            inverse[p] = i;
        }
        let table = (0..n)
            .map(|a| (0..n).map(|b| perm[self.multiply(inverse[a], inverse[b])]).collect())
            .collect();
        let names = (0..n).map(|a| self.names[inverse[a]].clone()).collect();
        Self::with_names(table, perm[self.identity], names).expect("relabeling preserves laws")
    }

    /// Direct product, elements ordered lexicographically by (left, right).
    pub fn direct_product(&self, other: &Self) -> Result<Self, Vec<MonoidError>> {
        let (n, k) = (self.order, other.order);
        let mut table = vec![vec![0; n * k]; n * k];
        for (a, row) in table.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                let (a1, a2) = (a / k, a % k);
                let (b1, b2) = (b / k, b % k);
                *cell = self.multiply(a1, b1) * k + other.multiply(a2, b2);
            }
        }
        let names = (0..n * k)
            .map(|a| format!("({},{})", self.names[a / k], other.names[a % k]))
            .collect();
        Self::with_names(table, self.identity * k + other.identity, names)
    }

    /// The smallest submonoid containing `seed`.
    pub fn generate_submonoid(&self, seed: SubsetMask) -> SubsetMask {
        let mut set = seed.with(self.identity);
        let mut frontier: Vec<usize> = set.iter().collect();
        while let Some(a) = frontier.pop() {
            for b in set.iter() {
                for p in [self.multiply(a, b), self.multiply(b, a)] {
                    if !set.contains(p) {
                        set.insert(p);
                        frontier.push(p);
                    }
                }
            }
        }
        set
    }

    pub fn is_submonoid(&self, m: SubsetMask) -> bool {
        m.contains(self.identity)
            && m.iter().all(|a| m.iter().all(|b| m.contains(self.multiply(a, b))))
    }

    /// Every submonoid, sorted by bit pattern.
    pub fn enumerate_submonoids(&self) -> Result<Vec<SubsetMask>, SizeCapExceeded> {
        self.enumerate_submonoids_capped(DEFAULT_ENUMERATION_CAP)
    }

    pub fn enumerate_submonoids_capped(&self, cap: usize) -> Result<Vec<SubsetMask>, SizeCapExceeded> {
        if self.order > cap {
            return Err(SizeCapExceeded { order: self.order, cap });
        }
        // Grow submonoids one generator at a time; every submonoid is reached
        // from a smaller one by adding an element outside it.
        let mut found = std::collections::BTreeSet::new();
        let mut stack = vec![self.generate_submonoid(SubsetMask::empty(self.order))];
        while let Some(s) = stack.pop() {
            if !found.insert(s.bits()) {
                continue;
            }
            for e in s.complement().iter() {
                let next = self.generate_submonoid(s.with(e));
                if !found.contains(&next.bits()) {
                    stack.push(next);
                }
            }
        }
        Ok(found.into_iter().map(|b| SubsetMask::from_bits(self.order, b)).collect())
    }

    /// Looks for `x, y` with `xy = 1` but `yx ≠ 1`.
    pub fn dedekind_violation(&self) -> Option<(usize, usize)> {
        let one = self.identity;
        self.elements()
            .flat_map(|x| self.elements().map(move |y| (x, y)))
            .find(|&(x, y)| self.multiply(x, y) == one && self.multiply(y, x) != one)
    }

    pub fn is_dedekind_finite(&self) -> bool {
        self.dedekind_violation().is_none()
    }

    /// Looks for `x, y, s, t` with `xy = 1`, `xs ∈ M`, `ty ∈ M` but `ts ∉ M`.
    pub fn condition_star_violation(&self, m: SubsetMask) -> Option<[usize; 4]> {
        let one = self.identity;
        for x in self.elements() {
            for y in self.elements() {
                if self.multiply(x, y) != one {
                    continue;
                }
                for s in self.elements() {
                    if !m.contains(self.multiply(x, s)) {
                        continue;
                    }
                    for t in self.elements() {
                        if m.contains(self.multiply(t, y)) && !m.contains(self.multiply(t, s)) {
                            return Some([x, y, s, t]);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn subset_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<SubsetMask, String> {
        let mut m = SubsetMask::empty(self.order);
        for name in names {
            let name = name.as_ref();
            let e = self.index_of(name).ok_or_else(|| name.to_string())?;
            m.insert(e);
        }
        Ok(m)
    }

    pub fn subset_names(&self, m: SubsetMask) -> Vec<String> {
        m.iter().map(|e| self.names[e].clone()).collect()
    }
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FiniteMonoid(order {}, identity {})", self.order, self.names[self.identity])?;
        for a in self.elements() {
            let row: Vec<&str> = self.elements().map(|b| self.name(self.multiply(a, b))).collect();
            writeln!(f, "  {} | {}", self.names[a], row.join(" "))?;
        }
        Ok(())
    }
}

/// A subset of the carrier of a monoid of order at most [`MAX_ORDER`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    len: usize,
    bits: u64,
}

#[inline]
pub(crate) fn full_word(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl SubsetMask {
    pub fn empty(len: usize) -> Self {
        assert!(len <= MAX_ORDER);
        Self { len, bits: 0 }
    }

    pub fn full(len: usize) -> Self {
        assert!(len <= MAX_ORDER);
        Self { len, bits: full_word(len) }
    }

    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= MAX_ORDER && bits & !full_word(len) == 0, "bits outside carrier");
        Self { len, bits }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(len: usize, elements: I) -> Self {
        let mut s = Self::empty(len);
        for e in elements {
            s.insert(e);
        }
        s
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    /// Size of the ambient carrier.
    #[inline]
    pub fn universe(self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        e < self.len && self.bits >> e & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, e: usize) {
        assert!(e < self.len, "element {e} outside carrier of size {}", self.len);
        self.bits |= 1 << e;
    }

    #[must_use]
    pub fn with(mut self, e: usize) -> Self {
        self.insert(e);
        self
    }

    pub fn count(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn complement(self) -> Self {
        Self { len: self.len, bits: !self.bits & full_word(self.len) }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn example_a_products() {
        let a = catalog::example_a();
        let e = |s: &str| a.index_of(s).unwrap();
        assert_eq!(a.multiply(e("4"), e("4")), e("1"));
        assert_eq!(a.multiply(e("2"), e("4")), e("3"));
        for x in a.elements() {
            assert_eq!(a.multiply(e("1"), x), x);
        }
    }

    #[test]
    fn small_tables_validate() {
        assert_eq!(FiniteMonoid::trivial().order(), 1);
        assert!(FiniteMonoid::new(vec![vec![0, 1], vec![1, 0]], 0).is_ok());
    }

    #[test]
    fn reports_every_violation() {
        // right-zero band with a fake identity: identity law fails at 1
        let errs = FiniteMonoid::new(vec![vec![0, 1], vec![0, 1]], 0).unwrap_err();
        assert!(errs.contains(&MonoidError::BadIdentity(1)));

        let errs = FiniteMonoid::new(vec![vec![0, 1], vec![1]], 0).unwrap_err();
        assert_eq!(errs, vec![MonoidError::RaggedTable { row: 1, len: 1, expected: 2 }]);

        let errs = FiniteMonoid::new(vec![vec![0, 1], vec![1, 7]], 0).unwrap_err();
        assert_eq!(errs, vec![MonoidError::EntryOutOfRange { row: 1, col: 1, value: 7 }]);

        // identity 0, and 1·1 = 2, 1·2 = 0, 2·1 = 1, 2·2 = 2 breaks associativity
        let errs =
            FiniteMonoid::new(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 2]], 0).unwrap_err();
        assert!(errs.iter().all(|e| matches!(e, MonoidError::NotAssociative(..))));
        assert!(errs.contains(&MonoidError::NotAssociative(1, 1, 1)));
    }

    #[test]
    fn submonoid_generation() {
        let a = catalog::example_a();
        let m = a.generate_submonoid(SubsetMask::empty(4));
        assert_eq!(m, SubsetMask::from_elements(4, [a.identity()]));
        let two = a.index_of("2").unwrap();
        let m = a.generate_submonoid(SubsetMask::from_elements(4, [two]));
        assert_eq!(a.subset_names(m), ["1", "2"]);

        let z4 = catalog::cyclic(4);
        assert_eq!(z4.generate_submonoid(SubsetMask::from_elements(4, [1])), SubsetMask::full(4));
    }

    #[test]
    fn submonoid_enumeration() {
        let t = FiniteMonoid::trivial();
        assert_eq!(t.enumerate_submonoids().unwrap(), vec![SubsetMask::full(1)]);

        let z2 = catalog::cyclic(2);
        let subs = z2.enumerate_submonoids().unwrap();
        assert_eq!(subs, vec![SubsetMask::from_bits(2, 0b01), SubsetMask::from_bits(2, 0b11)]);

        // frozen from an exhaustive closure over all 16 seeds
        let a = catalog::example_a();
        let mut named: Vec<Vec<String>> =
            a.enumerate_submonoids().unwrap().into_iter().map(|m| a.subset_names(m)).collect();
        named.sort();
        let expected: Vec<Vec<&str>> = vec![
            vec!["1"],
            vec!["1", "2"],
            vec!["1", "2", "3"],
            vec!["1", "2", "3", "4"],
            vec!["1", "3"],
            vec!["1", "4"],
        ];
        assert_eq!(named, expected);
    }

    #[test]
    fn enumeration_cap() {
        let big = catalog::cyclic(13);
        assert_eq!(
            big.enumerate_submonoids(),
            Err(SizeCapExceeded { order: 13, cap: DEFAULT_ENUMERATION_CAP })
        );
    }

    #[test]
    fn dedekind_and_star() {
        for a in [FiniteMonoid::trivial(), catalog::cyclic(2), catalog::example_a()] {
            assert!(a.is_dedekind_finite());
            for m in a.enumerate_submonoids().unwrap() {
                assert_eq!(a.condition_star_violation(m), None);
            }
            assert_eq!(a.condition_star_violation(SubsetMask::full(a.order())), None);
        }
    }

    #[test]
    fn direct_product_and_relabel() {
        let p = catalog::cyclic(2).direct_product(&catalog::cyclic(3)).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.is_commutative());
        let a = catalog::example_a();
        let r = a.relabel(&[3, 2, 1, 0]);
        assert_eq!(r.identity(), 3);
        assert_eq!(r.name(r.multiply(0, 0)), "1");
    }

    #[test]
    fn subset_mask_basics() {
        let s = SubsetMask::from_elements(5, [0, 3]);
        assert_eq!(s.iter().collect::<Vec<_>>(), [0, 3]);
        assert_eq!(s.complement().iter().collect::<Vec<_>>(), [1, 2, 4]);
        assert!(s.is_subset_of(SubsetMask::full(5)));
        assert_eq!(SubsetMask::full(64).count(), 64);
    }
}

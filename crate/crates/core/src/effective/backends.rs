use std::fmt;
use std::sync::Arc;

use super::EffectiveMonoid;

/// Words over a finite alphabet under concatenation; size is length.
#[derive(Debug, Clone)]
pub struct FreeMonoid {
    alphabet: Vec<char>,
}

impl FreeMonoid {
    pub fn new(alphabet: &[char]) -> Self {
        assert!(!alphabet.is_empty(), "empty alphabet");
        Self { alphabet: alphabet.to_vec() }
    }
}

impl EffectiveMonoid for FreeMonoid {
    type Elem = String;

    fn identity(&self) -> String {
        String::new()
    }

    fn multiply(&self, a: &String, b: &String) -> String {
        let mut out = a.clone();
        out.push_str(b);
        out
    }

    /// Shortlex order.
    fn enumerate(&self, bound: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..bound {
            layer = layer
                .iter()
                .flat_map(|w| self.alphabet.iter().map(move |c| format!("{w}{c}")))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    fn show(&self, e: &String) -> String {
        if e.is_empty() { "ε".into() } else { e.clone() }
    }

    fn has_trivial_units(&self) -> bool {
        true
    }
}

/// The bicyclic monoid on `b`, `c` with `bc = 1`. The pair `(i, j)` is the
/// normal form `c^i b^j`.
#[derive(Debug, Clone, Copy)]
pub struct Bicyclic;

impl Bicyclic {
    pub const B: (u32, u32) = (0, 1);
    pub const C: (u32, u32) = (1, 0);
}

impl EffectiveMonoid for Bicyclic {
    type Elem = (u32, u32);

    fn identity(&self) -> (u32, u32) {
        (0, 0)
    }

    fn multiply(&self, &(i, j): &(u32, u32), &(k, l): &(u32, u32)) -> (u32, u32) {
        // b^j c^k cancels down to c^(k-j) or b^(j-k)
        (i + k.saturating_sub(j), l + j.saturating_sub(k))
    }

    fn enumerate(&self, bound: usize) -> Vec<(u32, u32)> {
        let bound = bound as u32;
        (0..=bound).flat_map(|s| (0..=s).map(move |i| (i, s - i))).collect()
    }

    fn show(&self, &(i, j): &(u32, u32)) -> String {
        let power = |g: char, n: u32| match n {
            0 => String::new(),
            1 => g.to_string(),
            _ => format!("{g}^{n}"),
        };
        match (i, j) {
            (0, 0) => "1".into(),
            _ => format!("{}{}", power('c', i), power('b', j)),
        }
    }
}

/// `(ℤ, +)` enumerated as `0, -1, 1, -2, 2, …`; size is `|z|`.
#[derive(Debug, Clone, Copy)]
pub struct Integers;

impl EffectiveMonoid for Integers {
    type Elem = i64;

    fn identity(&self) -> i64 {
        0
    }

    fn multiply(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }

    fn enumerate(&self, bound: usize) -> Vec<i64> {
        let bound = bound as i64;
        std::iter::once(0).chain((1..=bound).flat_map(|k| [-k, k])).collect()
    }

    fn show(&self, e: &i64) -> String {
        e.to_string()
    }
}

/// `(ℕ, +)`, the nonnegative part of [`Integers`].
#[derive(Debug, Clone, Copy)]
pub struct Naturals;

impl EffectiveMonoid for Naturals {
    type Elem = u64;

    fn identity(&self) -> u64 {
        0
    }

    fn multiply(&self, a: &u64, b: &u64) -> u64 {
        a + b
    }

    fn enumerate(&self, bound: usize) -> Vec<u64> {
        (0..=bound as u64).collect()
    }

    fn show(&self, e: &u64) -> String {
        e.to_string()
    }

    fn has_trivial_units(&self) -> bool {
        true
    }
}

type Rule = Arc<dyn Fn(u64) -> u64 + Send + Sync>;

/// A function `ℕ → ℕ` given by a rule, compared by its values on a finite
/// domain.
#[derive(Clone)]
pub struct Endofunction {
    name: String,
    rule: Rule,
    values: Vec<u64>,
}

impl Endofunction {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, x: u64) -> u64 {
        (self.rule)(x)
    }

    /// Values on the tabulated domain, in increasing argument order.
    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

impl PartialEq for Endofunction {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl fmt::Debug for Endofunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// Endofunctions of `ℕ` generated by named rules, with equality tabulated on
/// `{start..=cap}`. `f·g` applies `g` first. The size of an element is the
/// length of the shortest generator word producing it.
#[derive(Clone)]
pub struct Endofunctions {
    start: u64,
    cap: u64,
    generators: Vec<Endofunction>,
}

impl Endofunctions {
    pub fn new(start: u64, cap: u64) -> Self {
        assert!(start <= cap, "empty domain");
        Self { start, cap, generators: Vec::new() }
    }

    pub fn domain(&self) -> std::ops::RangeInclusive<u64> {
        self.start..=self.cap
    }

    /// Builds an element from a rule; it is not added to the generators.
    pub fn function(&self, name: &str, rule: impl Fn(u64) -> u64 + Send + Sync + 'static) -> Endofunction {
        let rule: Rule = Arc::new(rule);
        let values = self.domain().map(|x| rule(x)).collect();
        Endofunction { name: name.into(), rule, values }
    }

    pub fn with_generator(mut self, name: &str, rule: impl Fn(u64) -> u64 + Send + Sync + 'static) -> Self {
        let g = self.function(name, rule);
        self.generators.push(g);
        self
    }

    pub fn generator(&self, name: &str) -> Option<&Endofunction> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn power(&self, f: &Endofunction, n: usize) -> Endofunction {
        (0..n).fold(self.identity(), |acc, _| self.multiply(&acc, f))
    }
}

impl EffectiveMonoid for Endofunctions {
    type Elem = Endofunction;

    fn identity(&self) -> Endofunction {
        self.function("1", |x| x)
    }

    fn multiply(&self, a: &Endofunction, b: &Endofunction) -> Endofunction {
        let (f, g) = (a.rule.clone(), b.rule.clone());
        let name = match (a.name.as_str(), b.name.as_str()) {
            ("1", n) | (n, "1") => n.to_string(),
            (l, r) => format!("{l}{r}"),
        };
        self.function(&name, move |x| f(g(x)))
    }

    fn enumerate(&self, bound: usize) -> Vec<Endofunction> {
        let mut out = vec![self.identity()];
        let mut layer = out.clone();
        for _ in 0..bound {
            let mut next = Vec::new();
            for w in &layer {
                for g in &self.generators {
                    let p = self.multiply(w, g);
                    if !out.contains(&p) && !next.contains(&p) {
                        next.push(p);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    fn show(&self, e: &Endofunction) -> String {
        e.name.clone()
    }

    fn tabulated(&self) -> bool {
        true
    }
}

//! Refutation witnesses for membership conditions on finite monoids.

use serde::{Deserialize, Serialize};

use crate::monoid::{FiniteMonoid, SubsetMask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WitnessKind {
    C,
    P,
    R,
    F,
    Star,
    Dedekind,
    RightNormal,
}

impl WitnessKind {
    pub fn label(self) -> &'static str {
        match self {
            WitnessKind::C => "C",
            WitnessKind::P => "P",
            WitnessKind::R => "R",
            WitnessKind::F => "F",
            WitnessKind::Star => "Star",
            WitnessKind::Dedekind => "Dedekind",
            WitnessKind::RightNormal => "RightNormal",
        }
    }
}

/// A tuple of elements refuting a condition.
///
/// Element layout per kind:
/// - `C`, `P`, `R`: `[x, y, u]`
/// - `F`: `[x, y, u, v]` with `xuy ∈ M` and `xvy ∉ M`
/// - `Star`: `[x, y, s, t]`
/// - `Dedekind`: `[x, y]`
/// - `RightNormal`: `[a, u]` with `au ∉ Ma`
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub elements: Vec<usize>,
}

impl Witness {
    pub fn new(kind: WitnessKind, elements: &[usize]) -> Self {
        Self { kind, elements: elements.to_vec() }
    }

    pub fn names(&self, monoid: &FiniteMonoid) -> Vec<String> {
        self.elements.iter().map(|&e| monoid.name(e).to_string()).collect()
    }

    /// Re-evaluates the violated condition from scratch.
    pub fn replays(&self, monoid: &FiniteMonoid, m: SubsetMask) -> bool {
        let one = monoid.identity();
        let mul = |a, b| monoid.multiply(a, b);
        let e = &self.elements;
        match (self.kind, e.as_slice()) {
            (WitnessKind::C, &[x, y, u]) => {
                m.contains(u) && m.contains(mul(x, y)) != m.contains(monoid.product([x, u, y]))
            }
            (WitnessKind::P, &[x, y, u]) => {
                m.contains(u) && m.contains(mul(x, y)) && !m.contains(monoid.product([x, u, y]))
            }
            (WitnessKind::R, &[x, y, u]) => {
                m.contains(u) && mul(x, y) == one && !m.contains(monoid.product([x, u, y]))
            }
            (WitnessKind::F, &[x, y, u, v]) => {
                m.contains(u)
                    && m.contains(v)
                    && m.contains(monoid.product([x, u, y]))
                    && !m.contains(monoid.product([x, v, y]))
            }
            (WitnessKind::Star, &[x, y, s, t]) => {
                mul(x, y) == one
                    && m.contains(mul(x, s))
                    && m.contains(mul(t, y))
                    && !m.contains(mul(t, s))
            }
            (WitnessKind::Dedekind, &[x, y]) => mul(x, y) == one && mul(y, x) != one,
            (WitnessKind::RightNormal, &[a, u]) => {
                m.contains(u) && !m.iter().any(|v| mul(v, a) == mul(a, u))
            }
            _ => false,
        }
    }
}

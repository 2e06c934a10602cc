use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use super::{
    law_violation, Bicyclic, Condition, EffectiveMonoid, Endofunction, Endofunctions, FreeMonoid,
    Integers, Naturals, Verdict, WithSubmonoid,
};
use crate::catalog;
use crate::classify::classify_submonoid;
use crate::generated::generated_reflexive;
use crate::monoid::FiniteMonoid;
use crate::relation::BinaryRelation;
use crate::syntactic::{syntactic_congruence, syntactic_reflexive};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusBounds {
    pub word_length: usize,
    pub integers: usize,
    pub naturals: usize,
    pub bicyclic: usize,
    pub domain_cap: u64,
    /// Generator words used as candidates and contexts on endofunctions.
    pub function_words: usize,
    /// Highest power `u^k` tried when deciding membership in `{u^k}`.
    pub power_cap: usize,
}

impl Default for CorpusBounds {
    fn default() -> Self {
        Self {
            word_length: 6,
            integers: 12,
            naturals: 24,
            bicyclic: 8,
            domain_cap: 100,
            function_words: 3,
            power_cap: 10,
        }
    }
}

impl CorpusBounds {
    /// Uses `k` for every enumeration bound of the infinite backends.
    pub fn uniform(k: usize) -> Self {
        Self { word_length: k, integers: k, naturals: k, bicyclic: k, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleOutcome {
    pub id: &'static str,
    pub title: &'static str,
    pub checks: Vec<(String, bool)>,
}

impl ExampleOutcome {
    fn new(id: &'static str, title: &'static str) -> Self {
        Self { id, title, checks: Vec::new() }
    }

    fn check(&mut self, description: impl Into<String>, ok: bool) {
        self.checks.push((description.into(), ok));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &str> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(d, _)| d.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("example {id} does not reproduce: {}", failed.join("; "))]
pub struct CorpusMismatch {
    pub id: &'static str,
    pub failed: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusReport {
    pub bounds: CorpusBounds,
    pub outcomes: Vec<ExampleOutcome>,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(ExampleOutcome::passed)
    }

    pub fn outcome(&self, id: &str) -> Option<&ExampleOutcome> {
        self.outcomes.iter().find(|o| o.id == id)
    }

    /// The first failing example, if any.
    pub fn ensure(&self) -> Result<(), CorpusMismatch> {
        match self.outcomes.iter().find(|o| !o.passed()) {
            None => Ok(()),
            Some(o) => Err(CorpusMismatch {
                id: o.id,
                failed: o.failed_checks().map(String::from).collect(),
            }),
        }
    }

    pub fn to_json(&self) -> Value {
        let b = &self.bounds;
        json!({
            "allPassed": self.all_passed(),
            "bounds": {
                "wordLength": b.word_length,
                "integers": b.integers,
                "naturals": b.naturals,
                "bicyclic": b.bicyclic,
                "domainCap": b.domain_cap,
                "functionWords": b.function_words,
                "powerCap": b.power_cap,
            },
            "examples": self.outcomes.iter().map(|o| json!({
                "id": o.id,
                "title": o.title,
                "passed": o.passed(),
                "checks": o.checks.iter().map(|(d, ok)| json!({"check": d, "ok": ok})).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

type Runner = fn(&CorpusBounds) -> ExampleOutcome;

const EXAMPLES: [Runner; 11] = [
    example_a, example_b, example_c, example_d, example_e, example_f, example_g, example_h,
    example_i, example_j, example_k,
];

/// Runs every example independently and collects the outcomes in order.
pub fn example_corpus(bounds: &CorpusBounds) -> CorpusReport {
    let outcomes = EXAMPLES.par_iter().map(|run| run(bounds)).collect();
    CorpusReport { bounds: *bounds, outcomes }
}

fn shown<A: EffectiveMonoid>(mon: &A, w: &[A::Elem]) -> String {
    w.iter().map(|e| mon.show(e)).collect::<Vec<_>>().join(", ")
}

fn refuted_and_replays<A: EffectiveMonoid>(
    m: &WithSubmonoid<'_, A>,
    which: Condition,
    bound: usize,
) -> (bool, String) {
    match m.bounded_condition(which, bound) {
        Verdict::RefutedWith { witness, .. } => {
            (m.replay(which, &witness), format!("witness ({})", shown(m.monoid, &witness)))
        }
        Verdict::NoWitnessUpTo { .. } => (false, "no witness".into()),
    }
}

fn example_a(_: &CorpusBounds) -> ExampleOutcome {
    let mut out = ExampleOutcome::new("A", "four-element monoid, M = {1,2} is not a clot");
    let a = catalog::example_a();
    let m = a.subset_from_names(&["1", "2"]).expect("names exist");
    let r = generated_reflexive(&a, m);
    let expected = [
        ("1", "1"), ("1", "2"), ("1", "3"), ("2", "2"), ("2", "3"),
        ("3", "2"), ("3", "3"), ("4", "2"), ("4", "3"), ("4", "4"),
    ];
    let expected = BinaryRelation::from_pairs(
        a.order(),
        expected.iter().map(|(x, y)| (a.index_of(x).unwrap(), a.index_of(y).unwrap())),
    );
    out.check("R(m) is the ten listed pairs", r == expected);
    out.check(
        "zero class of R(m) is {1,2,3}",
        a.subset_names(r.zero_class(a.identity())) == ["1", "2", "3"],
    );
    let is_clot = |names: &[&str]| {
        classify_submonoid(&a, a.subset_from_names(names).unwrap()).map(|rep| rep.is_clot)
    };
    out.check("{1,2} is not a clot", is_clot(&["1", "2"]) == Ok(false));
    out.check("{1,2,3} is a clot", is_clot(&["1", "2", "3"]) == Ok(true));
    out
}

fn ab_power(w: &String) -> bool {
    w.len().is_multiple_of(2) && w.as_bytes().chunks(2).all(|c| c == b"ab")
}

fn example_b(b: &CorpusBounds) -> ExampleOutcome {
    let mut out = ExampleOutcome::new("B", "free monoid on a, b with M = {(ab)^n}: clot, not a cone");
    let f = FreeMonoid::new(&['a', 'b']);
    out.check("monoid laws on enumerated words", law_violation(&f, 3).is_none());
    let member = ab_power;
    let m = WithSubmonoid::new(&f, &member);
    out.check(
        format!("condition R: no witness up to {} and holds for all", b.word_length),
        m.bounded_condition(Condition::R, b.word_length)
            == Verdict::NoWitnessUpTo { bound: b.word_length, holds_for_all: true },
    );
    let p = m.bounded_condition(Condition::P, b.word_length);
    let expected = vec!["a".to_string(), "b".into(), "ab".into()];
    out.check("condition P refuted by (a, b, ab)", p.witness() == Some(&expected));
    out.check("the witness replays", m.replay(Condition::P, &expected));
    out.check("aabb is not in M", !ab_power(&"aabb".to_string()));
    out.check(
        "one-row word sequences never leave M",
        !m.bounded_sequence_search(1, 2, b.word_length.min(4)).is_refuted(),
    );
    let chain = m.bounded_sequence_search(2, 2, 2);
    out.check(
        "a two-row chain leaves M",
        chain.witness().is_some_and(|w| w.replays(&m)),
    );
    out
}

fn example_c(b: &CorpusBounds) -> ExampleOutcome {
    let mut out = ExampleOutcome::new("C", "ℕ in (ℤ, +): positive cone, not normal");
    let z = Integers;
    let member = |x: &i64| *x >= 0;
    let m = WithSubmonoid::new(&z, &member);
    out.check(
        format!("condition P: no witness up to {}", b.integers),
        !m.bounded_condition(Condition::P, b.integers).is_refuted(),
    );
    let (ok, detail) = refuted_and_replays(&m, Condition::C, b.integers);
    out.check(format!("condition C refuted, {detail}"), ok);
    out.check("(-1, 0, 1) violates condition C", m.replay(Condition::C, &[-1, 0, 1]));
    out
}

fn example_d(b: &CorpusBounds) -> ExampleOutcome {
    let mut out = ExampleOutcome::new("D", "even numbers in (ℕ, +): normal");
    let n = Naturals;
    let member = |x: &u64| x.is_multiple_of(2);
    let m = WithSubmonoid::new(&n, &member);
    out.check(
        format!("condition C: no witness up to {}", b.naturals),
        !m.bounded_condition(Condition::C, b.naturals).is_refuted(),
    );
    out
}

fn example_e(_: &CorpusBounds) -> ExampleOutcome {
    let mut out = ExampleOutcome::new("E", "finite monoids: the syntactic reflexive relation is internal");
    let monoids: [(&str, FiniteMonoid); 5] = [
        ("four-element example", catalog::example_a()),
        ("nilpotent of order 3", catalog::nil3()),
        ("S3", catalog::symmetric3()),
        ("full transformations of 2 points", catalog::full_transformation(2)),
        ("cyclic group of order 3", catalog::cyclic(3)),
    ];
    for (name, a) in &monoids {
        let all = a
            .enumerate_submonoids()
            .is_ok_and(|ms| ms.iter().all(|&m| syntactic_reflexive(a, m).is_internal()));
        out.check(format!("{name}: every submonoid"), all);
    }
    out
}

/// The functions of the example on `ℕ` where `xy = 1` but `(*)` fails for
/// `M = {1}`; `y(0)` is set to `1`, the value that makes `xy = 1`.
fn star_functions(cap: u64) -> Endofunctions {
    Endofunctions::new(0, cap)
        .with_generator("x", |n| n.saturating_sub(1))
        .with_generator("y", |n| n + 1)
        .with_generator("s", |n| if n == 0 { 0 } else { n + 1 })
        .with_generator("t", |n| if n == 0 { 5 } else { n - 1 })
}

fn example_f(b: &CorpusBounds) -> ExampleOutcome {
    let mut out = ExampleOutcome::new("F", "endofunctions of ℕ are not Dedekind finite");
    let e = star_functions(b.domain_cap);
    let member = |_: &Endofunction| true;
    let m = WithSubmonoid::new(&e, &member);
    let v = m.bounded_condition(Condition::Dedekind, 1);
    let names = v.witness().map(|w| shown(&e, w));
    out.check("Dedekind finiteness refuted by (x, y)", names.as_deref() == Some("x, y"));
    out.check("the refutation is marked tabulated", matches!(v, Verdict::RefutedWith { tabulated: true, .. }));
    out
}

fn example_g(b: &CorpusBounds) -> ExampleOutcome {
    let mut out = ExampleOutcome::new("G", "bicyclic monoid is not Dedekind finite");
    let bic = Bicyclic;
    out.check("monoid laws on enumerated elements", law_violation(&bic, 4).is_none());
    let member = |_: &(u32, u32)| true;
    let m = WithSubmonoid::new(&bic, &member);
    let v = m.bounded_condition(Condition::Dedekind, b.bicyclic);
    out.check(
        "Dedekind finiteness refuted by (b, c)",
        v.witness() == Some(&vec![Bicyclic::B, Bicyclic::C]),
    );
    out.check("bc = 1", bic.multiply(&Bicyclic::B, &Bicyclic::C) == bic.identity());
    out.check("cb ≠ 1", bic.multiply(&Bicyclic::C, &Bicyclic::B) != bic.identity());
    out
}

fn example_h(_: &CorpusBounds) -> ExampleOutcome {
    let mut out = ExampleOutcome::new("H", "S2 in S3: not normal, syntactic zero class {e}");
    let s3 = catalog::symmetric3();
    let m = s3.subset_from_names(&["e", "(12)"]).expect("names exist");
    let cong = syntactic_congruence(&s3, m);
    out.check(
        "zero class of the syntactic congruence is {e}",
        s3.subset_names(cong.zero_class(s3.identity())) == ["e"],
    );
    let idx = |n: &str| s3.index_of(n).expect("names exist");
    let conj = s3.product([idx("(13)"), idx("(12)"), idx("(13)")]);
    out.check("(13)(12)(13) = (23)", s3.name(conj) == "(23)");
    out.check("(23) is not in M", !m.contains(conj));
    out.check("M is not normal", classify_submonoid(&s3, m).is_ok_and(|r| !r.is_normal));
    out
}

fn example_i(b: &CorpusBounds) -> ExampleOutcome {
    let mut out = ExampleOutcome::new("I", "endofunctions: M = {1} fails (*)");
    let e = star_functions(b.domain_cap);
    let g = |n: &str| e.generator(n).expect("generator exists").clone();
    let (x, y, s, t) = (g("x"), g("y"), g("s"), g("t"));
    let one = e.identity();
    out.check("xy = 1 on the domain", e.multiply(&x, &y) == one);
    out.check("xs = 1 on the domain", e.multiply(&x, &s) == one);
    out.check("ty = 1 on the domain", e.multiply(&t, &y) == one);
    out.check("ts(0) = 5", e.multiply(&t, &s).apply(0) == 5);
    out.check("yx ≠ 1", e.multiply(&y, &x) != one);
    let member = |f: &Endofunction| *f == one;
    let m = WithSubmonoid::new(&e, &member);
    let v = m.bounded_condition(Condition::Star, 1);
    out.check(
        "(*) refuted by (x, y, s, t)",
        v.witness().map(|w| shown(&e, w)).as_deref() == Some("x, y, s, t"),
    );
    out
}

/// The functions on `{1, 2, …}` with `fg = 1` and `M = {u^k}`.
struct Doubling {
    e: Endofunctions,
    powers: Vec<Endofunction>,
}

impl Doubling {
    fn new(b: &CorpusBounds) -> Self {
        let e = Endofunctions::new(1, b.domain_cap)
            .with_generator("f", |x| if x > 1 { x - 1 } else { 1 })
            .with_generator("g", |x| x + 1)
            .with_generator("u", |x| 2 * x);
        let u = e.generator("u").expect("generator exists").clone();
        let powers = (0..=b.power_cap).map(|k| e.power(&u, k)).collect();
        Self { e, powers }
    }

    fn gen(&self, n: &str) -> Endofunction {
        self.e.generator(n).expect("generator exists").clone()
    }

    fn in_m(&self, h: &Endofunction) -> bool {
        self.powers.contains(h)
    }

    /// `f u^n g`.
    fn sandwich(&self, n: usize) -> Endofunction {
        let e = &self.e;
        e.product([&self.gen("f"), &self.powers[n], &self.gen("g")])
    }
}

fn example_j(b: &CorpusBounds) -> ExampleOutcome {
    let mut out = ExampleOutcome::new("J", "doubling functions: M = {u^n} is not a clot, [1] of R_M is {1}");
    let d = Doubling::new(b);
    let e = &d.e;
    out.check("fg = 1", e.multiply(&d.gen("f"), &d.gen("g")) == e.identity());
    for n in 1..=5.min(b.power_cap) {
        let h = d.sandwich(n);
        out.check(format!("f u^{n} g is not in M"), !d.in_m(&h));
        let formula = [1u64, 2, 7, 50].iter().all(|&x| h.apply(x) == (1 << n) * (x + 1) - 1);
        out.check(format!("f u^{n} g (x) = 2^{n}(x+1) - 1"), formula);
    }
    let member = |h: &Endofunction| d.in_m(h);
    let m = WithSubmonoid::new(e, &member);
    let pool = e.enumerate(b.function_words);
    let zero = m.bounded_syntactic_zero_class(&pool, &pool);
    out.check(
        "bounded zero class of R_M is {1}",
        zero.len() == 1 && zero[0] == e.identity(),
    );
    let (ok, detail) = refuted_and_replays(&m, Condition::R, 1);
    out.check(format!("condition R refuted, {detail}"), ok);
    out
}

fn example_k(b: &CorpusBounds) -> ExampleOutcome {
    let mut out = ExampleOutcome::new("K", "doubling functions: [1] of R_M ⊊ M ⊊ [1] of R(m)");
    let d = Doubling::new(b);
    let e = &d.e;
    let member = |h: &Endofunction| d.in_m(h);
    let m = WithSubmonoid::new(e, &member);
    let pool = e.enumerate(b.function_words);
    let u = d.gen("u");
    let zero = m.bounded_syntactic_zero_class(&pool, &pool);
    out.check("u is in M but not in the zero class of R_M", d.in_m(&u) && !zero.contains(&u));
    // (f, f)(1, u)(g, g) = (fg, fug) = (1, fug) lies in R(m)
    let (f, g) = (d.gen("f"), d.gen("g"));
    let left = e.product([&f, &e.identity(), &g]);
    let right = e.product([&f, &u, &g]);
    out.check("(1, fug) is a product of pairs in R(m)", left == e.identity());
    out.check("fug is not in M", !d.in_m(&right));
    let chain = m.bounded_sequence_search(1, 2, 1);
    out.check(
        "a one-row word sequence leaves M",
        chain.witness().is_some_and(|w| w.replays(&m)),
    );
    out
}

//! Clot / positive cone / normal submonoid classification.
//!
//! Each notion is decided along every route that applies to a finite monoid:
//! the elementwise condition, the zero-class of the syntactic relation, and
//! the zero-class of the generated relation. The routes are equivalent by
//! theorem, so any disagreement is reported as [`ClassifyError::RoutesDisagree`]
//! and no report is produced.

use serde_json::{json, Value};
use thiserror::Error;

use crate::generated::{self, GeneratedError};
use crate::monoid::{FiniteMonoid, SubsetMask};
use crate::relation::{BinaryRelation, RelationKind};
use crate::syntactic;
use crate::witness::{Witness, WitnessKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("{0:?} is not a submonoid")]
    NotASubmonoid(SubsetMask),
    #[error("routes disagree on {notion}: {routes:?}")]
    RoutesDisagree { notion: &'static str, routes: Routes, submonoid: SubsetMask },
    #[error("implication chain normal ⇒ cone ⇒ clot broken for {0:?}")]
    ChainBroken(SubsetMask),
    #[error("relation does not have the properties of an internal {0} relation")]
    KindMismatch(&'static str),
    #[error(transparent)]
    Generated(#[from] GeneratedError),
}

impl ClassifyError {
    /// Whether the error signals a bug or a falsified theorem rather than bad input.
    pub fn is_internal(&self) -> bool {
        !matches!(self, ClassifyError::NotASubmonoid(_) | ClassifyError::KindMismatch(_))
    }
}

/// Outcomes of the independent routes for one notion. `None` marks a route
/// that does not apply (the syntactic reflexive relation is not internal).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Routes {
    pub condition: Option<bool>,
    pub syntactic: Option<bool>,
    pub generated: bool,
}

impl Routes {
    fn agreed(self) -> Option<bool> {
        let g = self.generated;
        (self.condition.unwrap_or(g) == g && self.syntactic.unwrap_or(g) == g).then_some(g)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relations {
    pub syntactic_congruence: BinaryRelation,
    pub syntactic_preorder: BinaryRelation,
    pub syntactic_reflexive: BinaryRelation,
    pub generated_reflexive: BinaryRelation,
    pub generated_preorder: BinaryRelation,
    pub generated_congruence: BinaryRelation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub monoid_id: String,
    pub submonoid: SubsetMask,
    pub is_clot: bool,
    pub is_positive_cone: bool,
    pub is_normal: bool,
    pub is_kernel_f: bool,
    pub is_right_normal: bool,
    pub is_dedekind_finite_ambient: bool,
    pub syntactic_reflexive_internal: bool,
    pub clot_routes: Routes,
    pub cone_routes: Routes,
    pub normal_routes: Routes,
    pub witnesses: Vec<Witness>,
    pub relations: Relations,
}

/// Classifies `m` as a clot, positive cone and normal submonoid of `monoid`.
pub fn classify_submonoid(
    monoid: &FiniteMonoid,
    m: SubsetMask,
) -> Result<ClassificationReport, ClassifyError> {
    if !monoid.is_submonoid(m) {
        return Err(ClassifyError::NotASubmonoid(m));
    }
    let one = monoid.identity();
    let zero_is_m = |r: &BinaryRelation| r.zero_class(one) == m;

    let syn_cong = syntactic::syntactic_congruence(monoid, m);
    let syn_pre = syntactic::syntactic_preorder(monoid, m);
    let syn_refl = syntactic::syntactic_reflexive(monoid, m);
    let gen_refl = generated::generated_reflexive(monoid, m);
    let gen_pre = generated::generated_preorder(monoid, m)?;
    let gen_cong = generated::generated_congruence(monoid, m)?;

    let c = syntactic::condition_c(monoid, m);
    let p = syntactic::condition_p(monoid, m);
    let r = syntactic::condition_r(monoid, m);
    let f = syntactic::condition_f(monoid, m);
    let rn = syntactic::right_normal(monoid, m);
    let dedekind = monoid.dedekind_violation();

    let internal = syn_refl.is_internal();
    let clot_routes = Routes {
        condition: internal.then_some(r.is_ok()),
        syntactic: internal.then_some(zero_is_m(&syn_refl.relation)),
        generated: zero_is_m(&gen_refl),
    };
    let cone_routes = Routes {
        condition: Some(p.is_ok()),
        syntactic: Some(zero_is_m(&syn_pre)),
        generated: zero_is_m(&gen_pre),
    };
    let normal_routes = Routes {
        condition: Some(c.is_ok()),
        syntactic: Some(zero_is_m(&syn_cong)),
        generated: zero_is_m(&gen_cong),
    };
    let decide = |notion, routes: Routes| {
        routes.agreed().ok_or(ClassifyError::RoutesDisagree { notion, routes, submonoid: m })
    };
    let is_clot = decide("clot", clot_routes)?;
    let is_positive_cone = decide("positive cone", cone_routes)?;
    let is_normal = decide("normal", normal_routes)?;
    let is_kernel_f = f.is_ok();
    if is_kernel_f != is_normal {
        return Err(ClassifyError::RoutesDisagree {
            notion: "kernel (F)",
            routes: Routes { condition: Some(is_kernel_f), syntactic: None, generated: is_normal },
            submonoid: m,
        });
    }
    if (is_normal && !is_positive_cone) || (is_positive_cone && !is_clot) {
        return Err(ClassifyError::ChainBroken(m));
    }

    let is_right_normal = rn.is_ok();
    let mut witnesses: Vec<Witness> = [c, p, r, f, rn].into_iter().filter_map(Result::err).collect();
    if let Some((x, y)) = dedekind {
        witnesses.push(Witness::new(WitnessKind::Dedekind, &[x, y]));
    }
    if let Some(q) = monoid.condition_star_violation(m) {
        witnesses.push(Witness::new(WitnessKind::Star, &q));
    }

    Ok(ClassificationReport {
        monoid_id: monoid.content_hash(),
        submonoid: m,
        is_clot,
        is_positive_cone,
        is_normal,
        is_kernel_f,
        is_right_normal,
        is_dedekind_finite_ambient: dedekind.is_none(),
        syntactic_reflexive_internal: internal,
        clot_routes,
        cone_routes,
        normal_routes,
        witnesses,
        relations: Relations {
            syntactic_congruence: syn_cong,
            syntactic_preorder: syn_pre,
            syntactic_reflexive: syn_refl.relation,
            generated_reflexive: gen_refl,
            generated_preorder: gen_pre,
            generated_congruence: gen_cong,
        },
    })
}

/// Whether the unit `M → [1]_{F(m)}` is an isomorphism.
pub fn is_fix_eta(
    monoid: &FiniteMonoid,
    m: SubsetMask,
    kind: RelationKind,
) -> Result<bool, GeneratedError> {
    Ok(generated::generated(monoid, m, kind)?.zero_class(monoid.identity()) == m)
}

/// Whether `r` is the relation generated by its own zero-class.
pub fn is_fix_epsilon(
    monoid: &FiniteMonoid,
    r: &BinaryRelation,
    kind: RelationKind,
) -> Result<bool, ClassifyError> {
    if !r.is_internal(monoid, kind) {
        return Err(ClassifyError::KindMismatch(kind.name()));
    }
    let zero = r.zero_class(monoid.identity());
    Ok(generated::generated(monoid, zero, kind)? == *r)
}

/// `M` is normal to `r` iff `M` is the pullback of `r` along `⟨0,1⟩`, i.e. its zero-class.
pub fn normal_wrt_definition(monoid: &FiniteMonoid, m: SubsetMask, r: &BinaryRelation) -> bool {
    r.zero_class(monoid.identity()) == m
}

/// Pairs of element names in lexicographic index order.
pub fn relation_to_json(monoid: &FiniteMonoid, r: &BinaryRelation) -> Value {
    Value::Array(r.pairs().map(|(a, b)| json!([monoid.name(a), monoid.name(b)])).collect())
}

fn routes_json(r: Routes) -> Value {
    json!({ "condition": r.condition, "syntactic": r.syntactic, "generated": r.generated })
}

pub fn witness_to_json(monoid: &FiniteMonoid, w: &Witness) -> Value {
    json!({ "condition": w.kind.label(), "holds": false, "witness": w.names(monoid) })
}

impl ClassificationReport {
    pub fn witness(&self, kind: WitnessKind) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.kind == kind)
    }

    /// A JSON document with sorted keys and names in place of indices.
    pub fn to_json(&self, monoid: &FiniteMonoid) -> Value {
        let rel = |r: &BinaryRelation| relation_to_json(monoid, r);
        let one = monoid.identity();
        let zero = |r: &BinaryRelation| monoid.subset_names(r.zero_class(one));
        let rels = &self.relations;
        json!({
            "monoid": self.monoid_id,
            "submonoid": monoid.subset_names(self.submonoid),
            "isClot": self.is_clot,
            "isPositiveCone": self.is_positive_cone,
            "isNormal": self.is_normal,
            "isKernelF": self.is_kernel_f,
            "isRightNormal": self.is_right_normal,
            "isDedekindFiniteAmbient": self.is_dedekind_finite_ambient,
            "syntacticReflexiveInternal": self.syntactic_reflexive_internal,
            "routes": {
                "clot": routes_json(self.clot_routes),
                "positiveCone": routes_json(self.cone_routes),
                "normal": routes_json(self.normal_routes),
            },
            "witnesses": self.witnesses.iter().map(|w| witness_to_json(monoid, w)).collect::<Vec<_>>(),
            "relations": {
                "syntacticCongruence": rel(&rels.syntactic_congruence),
                "syntacticPreorder": rel(&rels.syntactic_preorder),
                "syntacticReflexive": rel(&rels.syntactic_reflexive),
                "generatedReflexive": rel(&rels.generated_reflexive),
                "generatedPreorder": rel(&rels.generated_preorder),
                "generatedCongruence": rel(&rels.generated_congruence),
            },
            "zeroClasses": {
                "syntacticCongruence": zero(&rels.syntactic_congruence),
                "syntacticPreorder": zero(&rels.syntactic_preorder),
                "syntacticReflexive": zero(&rels.syntactic_reflexive),
                "generatedReflexive": zero(&rels.generated_reflexive),
                "generatedPreorder": zero(&rels.generated_preorder),
                "generatedCongruence": zero(&rels.generated_congruence),
            },
        })
    }
}

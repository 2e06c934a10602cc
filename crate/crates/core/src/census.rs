//! Exhaustive sweeps: every submonoid of a monoid, every monoid of small order.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::classify::{classify_submonoid, ClassificationReport, ClassifyError};
use crate::io::MonoidDocument;
use crate::monoid::{FiniteMonoid, SizeCapExceeded, SubsetMask, DEFAULT_ENUMERATION_CAP};

/// Largest order [`enumerate_monoids`] accepts.
pub const MONOID_ENUMERATION_CAP: usize = 5;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CensusSummary {
    pub submonoids: usize,
    pub clots: usize,
    pub positive_cones: usize,
    pub normal: usize,
    pub right_normal: usize,
    pub cone_not_normal: usize,
    pub clot_not_cone: usize,
    pub right_normal_not_cone: usize,
    pub cone_not_right_normal: usize,
}

impl CensusSummary {
    fn add(&mut self, r: &ClassificationReport) {
        self.submonoids += 1;
        self.clots += r.is_clot as usize;
        self.positive_cones += r.is_positive_cone as usize;
        self.normal += r.is_normal as usize;
        self.right_normal += r.is_right_normal as usize;
        self.cone_not_normal += (r.is_positive_cone && !r.is_normal) as usize;
        self.clot_not_cone += (r.is_clot && !r.is_positive_cone) as usize;
        self.right_normal_not_cone += (r.is_right_normal && !r.is_positive_cone) as usize;
        self.cone_not_right_normal += (r.is_positive_cone && !r.is_right_normal) as usize;
    }

    pub fn merge(mut self, other: &Self) -> Self {
        self.submonoids += other.submonoids;
        self.clots += other.clots;
        self.positive_cones += other.positive_cones;
        self.normal += other.normal;
        self.right_normal += other.right_normal;
        self.cone_not_normal += other.cone_not_normal;
        self.clot_not_cone += other.clot_not_cone;
        self.right_normal_not_cone += other.right_normal_not_cone;
        self.cone_not_right_normal += other.cone_not_right_normal;
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "submonoids": self.submonoids,
            "clots": self.clots,
            "positiveCones": self.positive_cones,
            "normal": self.normal,
            "rightNormal": self.right_normal,
            "coneNotNormal": self.cone_not_normal,
            "clotNotCone": self.clot_not_cone,
            "rightNormalNotCone": self.right_normal_not_cone,
            "coneNotRightNormal": self.cone_not_right_normal,
        })
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let f = |k: &str| v.get(k)?.as_u64().map(|x| x as usize);
        Some(Self {
            submonoids: f("submonoids")?,
            clots: f("clots")?,
            positive_cones: f("positiveCones")?,
            normal: f("normal")?,
            right_normal: f("rightNormal")?,
            cone_not_normal: f("coneNotNormal")?,
            clot_not_cone: f("clotNotCone")?,
            right_normal_not_cone: f("rightNormalNotCone")?,
            cone_not_right_normal: f("coneNotRightNormal")?,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CensusTable {
    pub monoid_id: String,
    pub reports: Vec<ClassificationReport>,
    pub summary: CensusSummary,
}

impl CensusTable {
    pub fn to_json(&self, monoid: &FiniteMonoid) -> Value {
        json!({
            "key": self.monoid_id,
            "monoid": MonoidDocument::from_monoid(monoid),
            "summary": self.summary.to_json(),
            "submonoids": self.reports.iter().map(|r| r.to_json(monoid)).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CensusError {
    #[error(transparent)]
    SizeCap(#[from] SizeCapExceeded),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("census file {path}: {message}")]
    Store { path: PathBuf, message: String },
}

/// Classifies every submonoid of `monoid`, in submonoid bit order.
pub fn census_submonoids(monoid: &FiniteMonoid) -> Result<CensusTable, CensusError> {
    let subs = monoid.enumerate_submonoids_capped(DEFAULT_ENUMERATION_CAP)?;
    let reports = subs
        .into_iter()
        .map(|m| classify_submonoid(monoid, m))
        .collect::<Result<Vec<_>, _>>()?;
    let mut summary = CensusSummary::default();
    for r in &reports {
        summary.add(r);
    }
    Ok(CensusTable { monoid_id: monoid.content_hash(), reports, summary })
}

/// Every monoid of the given order up to isomorphism, with the identity as
/// element 0. Representatives are the lexicographically least tables among
/// all relabelings fixing the identity, returned in that order.
pub fn enumerate_monoids(order: usize) -> Result<Vec<FiniteMonoid>, SizeCapExceeded> {
    if order > MONOID_ENUMERATION_CAP {
        return Err(SizeCapExceeded { order, cap: MONOID_ENUMERATION_CAP });
    }
    if order == 0 {
        return Ok(Vec::new());
    }
    let n = order;
    let mut table = vec![UNSET; n * n];
    for a in 0..n {
        table[a] = a as u8;
        table[a * n] = a as u8;
    }
    let perms = permutations_fixing_zero(n);
    let mut canonical = BTreeSet::new();
    fill(&mut table, n, n + 1, &mut |t| {
        canonical.insert(canonical_table(t, n, &perms));
    });
    Ok(canonical.into_iter().map(|t| monoid_from_flat(&t, n)).collect())
}

const UNSET: u8 = u8::MAX;

fn fill(table: &mut [u8], n: usize, cell: usize, emit: &mut impl FnMut(&[u8])) {
    if cell >= n * n {
        emit(table);
        return;
    }
    if cell.is_multiple_of(n) {
        // column 0 is fixed by the identity law
        return fill(table, n, cell + 1, emit);
    }
    for v in 0..n as u8 {
        table[cell] = v;
        if associative_so_far(table, n) {
            fill(table, n, cell + 1, emit);
        }
    }
    table[cell] = UNSET;
}

fn associative_so_far(t: &[u8], n: usize) -> bool {
    let get = |a: u8, b: u8| t[a as usize * n + b as usize];
    for a in 0..n as u8 {
        for b in 0..n as u8 {
            let ab = get(a, b);
            if ab == UNSET {
                continue;
            }
            for c in 0..n as u8 {
                let bc = get(b, c);
                if bc == UNSET {
                    continue;
                }
                let (l, r) = (get(ab, c), get(a, bc));
                if l != UNSET && r != UNSET && l != r {
                    return false;
                }
            }
        }
    }
    true
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..n).collect();
    permute(&mut rest, 0, &mut |p| {
        let mut full = vec![0];
        full.extend_from_slice(p);
        out.push(full);
    });
    out
}

fn permute(items: &mut [usize], k: usize, emit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        emit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, emit);
        items.swap(k, i);
    }
}

/// Least relabeled table; `perm[i]` is the new label of element `i`.
pub(crate) fn canonical_table(t: &[u8], n: usize, perms: &[Vec<usize>]) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    let mut inverse = vec![0; n];
    for perm in perms {
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let candidate: Vec<u8> = (0..n * n)
            .map(|cell| {
                let (a, b) = (inverse[cell / n], inverse[cell % n]);
                perm[t[a * n + b] as usize] as u8
            })
            .collect();
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    }
    best.expect("at least the identity permutation")
}

fn monoid_from_flat(t: &[u8], n: usize) -> FiniteMonoid {
    const NAMES: [&str; MONOID_ENUMERATION_CAP] = ["1", "a", "b", "c", "d"];
    let table = t.chunks(n).map(|r| r.iter().map(|&v| v as usize).collect()).collect();
    let names = NAMES[..n].iter().map(|s| s.to_string()).collect();
    FiniteMonoid::with_names(table, 0, names).expect("enumerated tables are monoids")
}

/// Every monoid of order `1..=max_order`, smallest first.
pub fn all_monoids_up_to(max_order: usize) -> Result<Vec<FiniteMonoid>, SizeCapExceeded> {
    let mut out = Vec::new();
    for order in 1..=max_order {
        out.extend(enumerate_monoids(order)?);
    }
    Ok(out)
}

/// Runs [`census_submonoids`] over every monoid of the given order, in parallel,
/// preserving the canonical ordering.
pub fn census_all(order: usize) -> Result<Vec<(FiniteMonoid, CensusTable)>, CensusError> {
    let monoids = enumerate_monoids(order)?;
    monoids
        .into_par_iter()
        .map(|m| census_submonoids(&m).map(|t| (m, t)))
        .collect()
}

/// A submonoid in a specific monoid.
#[derive(Debug, Clone)]
pub struct Instance {
    pub monoid: FiniteMonoid,
    pub submonoid: SubsetMask,
}

#[derive(Debug, Clone)]
pub struct StrictInclusionReport {
    pub max_order: usize,
    pub cone_not_normal: Option<Instance>,
    pub clot_not_cone: Option<Instance>,
}

/// Smallest positive cone that is not normal and smallest clot that is not a
/// positive cone, among monoids of order at most `max_order`.
pub fn strict_inclusion_witnesses(max_order: usize) -> Result<StrictInclusionReport, CensusError> {
    let mut report = StrictInclusionReport { max_order, cone_not_normal: None, clot_not_cone: None };
    for order in 1..=max_order {
        for (monoid, table) in census_all(order)? {
            let mut reports: Vec<&ClassificationReport> = table.reports.iter().collect();
            reports.sort_by_key(|r| (r.submonoid.count(), r.submonoid.bits()));
            for r in reports {
                let instance = || Instance { monoid: monoid.clone(), submonoid: r.submonoid };
                if report.cone_not_normal.is_none() && r.is_positive_cone && !r.is_normal {
                    report.cone_not_normal = Some(instance());
                }
                if report.clot_not_cone.is_none() && r.is_clot && !r.is_positive_cone {
                    report.clot_not_cone = Some(instance());
                }
            }
        }
        if report.cone_not_normal.is_some() && report.clot_not_cone.is_some() {
            break;
        }
    }
    Ok(report)
}

/// Line-delimited JSON census results keyed by monoid content hash.
/// Re-opening an existing file makes completed monoids skippable.
pub struct CensusStore {
    path: PathBuf,
    entries: BTreeMap<String, CensusSummary>,
}

impl CensusStore {
    pub fn open(path: &Path) -> Result<Self, CensusError> {
        let err = |message: String| CensusError::Store { path: path.to_path_buf(), message };
        let mut entries = BTreeMap::new();
        if path.exists() {
            let file = File::open(path).map_err(|e| err(e.to_string()))?;
            for (i, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(|e| err(e.to_string()))?;
                if line.trim().is_empty() {
                    continue;
                }
                let v: Value = serde_json::from_str(&line)
                    .map_err(|e| err(format!("line {}: {e}", i + 1)))?;
                let key = v["key"].as_str().ok_or_else(|| err(format!("line {}: no key", i + 1)))?;
                let summary = CensusSummary::from_json(&v["summary"])
                    .ok_or_else(|| err(format!("line {}: bad summary", i + 1)))?;
                entries.insert(key.to_string(), summary);
            }
        }
        Ok(Self { path: path.to_path_buf(), entries })
    }

    pub fn get(&self, key: &str) -> Option<&CensusSummary> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn append(&mut self, monoid: &FiniteMonoid, table: &CensusTable) -> Result<(), CensusError> {
        if self.entries.contains_key(&table.monoid_id) {
            return Ok(());
        }
        let err = |e: std::io::Error| CensusError::Store { path: self.path.clone(), message: e.to_string() };
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path).map_err(err)?;
        let line = serde_json::to_string(&table.to_json(monoid)).expect("serializable");
        writeln!(file, "{line}").map_err(err)?;
        self.entries.insert(table.monoid_id.clone(), table.summary);
        Ok(())
    }

    /// Census of each monoid, reusing stored summaries and appending new ones.
    pub fn run(&mut self, monoids: &[FiniteMonoid]) -> Result<Vec<CensusSummary>, CensusError> {
        let pending: Vec<&FiniteMonoid> =
            monoids.iter().filter(|m| self.get(&m.content_hash()).is_none()).collect();
        let fresh: Vec<(&FiniteMonoid, CensusTable)> = pending
            .into_par_iter()
            .map(|m| census_submonoids(m).map(|t| (m, t)))
            .collect::<Result<_, _>>()?;
        for (m, t) in &fresh {
            self.append(m, t)?;
        }
        Ok(monoids.iter().map(|m| self.entries[&m.content_hash()]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn trivial_census() {
        let t = census_submonoids(&FiniteMonoid::trivial()).unwrap();
        assert_eq!(t.summary.submonoids, 1);
        let r = &t.reports[0];
        assert!(r.is_clot && r.is_positive_cone && r.is_normal && r.is_right_normal);
    }

    #[test]
    fn example_a_census() {
        let a = catalog::example_a();
        let t = census_submonoids(&a).unwrap();
        let find = |names: &[&str]| {
            let m = a.subset_from_names(names).unwrap();
            t.reports.iter().find(|r| r.submonoid == m).unwrap()
        };
        assert!(!find(&["1", "2"]).is_clot);
        assert!(find(&["1", "2", "3"]).is_clot);
    }

    #[test]
    fn nil3_census_has_cone_not_normal() {
        let t = census_submonoids(&catalog::nil3()).unwrap();
        assert!(t.summary.cone_not_normal >= 1);
    }

    #[test]
    fn small_orders() {
        assert_eq!(enumerate_monoids(1).unwrap().len(), 1);
        let two = enumerate_monoids(2).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two.iter().filter(|m| m.is_dedekind_finite()).count(), 2);
        assert!(matches!(enumerate_monoids(6), Err(SizeCapExceeded { order: 6, cap: 5 })));
    }

    #[test]
    fn strict_inclusions() {
        let none = strict_inclusion_witnesses(1).unwrap();
        assert!(none.cone_not_normal.is_none() && none.clot_not_cone.is_none());
        let three = strict_inclusion_witnesses(3).unwrap();
        let w = three.cone_not_normal.unwrap();
        assert_eq!(w.monoid.order(), 3);
    }

    #[test]
    fn store_resumes() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("census.jsonl");
        let monoids = enumerate_monoids(3).unwrap();
        let mut store = CensusStore::open(&path).unwrap();
        let first = store.run(&monoids[..3]).unwrap();
        assert_eq!(store.len(), 3);
        let mut reopened = CensusStore::open(&path).unwrap();
        assert_eq!(reopened.len(), 3);
        let all = reopened.run(&monoids).unwrap();
        assert_eq!(&all[..3], &first[..]);
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), monoids.len());
    }
}

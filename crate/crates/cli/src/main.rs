//! Command-line front end: classify submonoids of finite monoids given as
//! Cayley tables, print their syntactic and generated relations, sweep every
//! monoid of small order, and replay the bounded infinite examples.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use zeroclass::census::{self, CensusError, CensusStore, CensusSummary};
use zeroclass::classify::relation_to_json;
use zeroclass::effective::{example_corpus, CorpusBounds};
use zeroclass::generated::{generated, minimal_relation_oracle, GeneratedError};
use zeroclass::io::parse_monoid;
use zeroclass::syntactic::{syntactic_congruence, syntactic_preorder, syntactic_reflexive};
use zeroclass::{
    classify_submonoid, BinaryRelation, ClassifyError, FiniteMonoid, RelationKind, SubsetMask,
};

#[derive(Parser)]
#[command(name = "zeroclass", version, about = "Clots, positive cones and normal submonoids of finite monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that FILE holds a monoid table and report every violation.
    Validate { file: PathBuf },
    /// List every submonoid.
    Submonoids {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a submonoid is a clot, a positive cone and normal.
    Classify {
        file: PathBuf,
        /// Comma-separated element names.
        #[arg(long, value_delimiter = ',', required = true)]
        submonoid: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Print a syntactic relation of a submonoid.
    Syntactic {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        submonoid: Vec<String>,
        #[arg(long, value_enum)]
        kind: SyntacticKind,
        #[arg(long)]
        json: bool,
    },
    /// Print the least internal relation whose zero-class contains a submonoid.
    Generate {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        submonoid: Vec<String>,
        #[arg(long, value_enum)]
        kind: GeneratedKind,
        /// Also run the exhaustive search and require it to agree.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Classify every submonoid of FILE, or of every monoid of one order.
    Census {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        file: Option<PathBuf>,
        #[arg(long, requires = "order")]
        all: bool,
        #[arg(long)]
        order: Option<usize>,
        /// Resumable store of per-monoid results (with --all).
        #[arg(long, requires = "all")]
        jsonl: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Replay the bounded examples on infinite monoids.
    Examples {
        /// Use this bound for every enumeration instead of the defaults.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SyntacticKind {
    Cong,
    Preord,
    Refl,
}

#[derive(Clone, Copy, ValueEnum)]
enum GeneratedKind {
    Refl,
    Preord,
    Eq,
}

impl From<GeneratedKind> for RelationKind {
    fn from(k: GeneratedKind) -> Self {
        match k {
            GeneratedKind::Refl => RelationKind::Reflexive,
            GeneratedKind::Preord => RelationKind::Preorder,
            GeneratedKind::Eq => RelationKind::Equivalence,
        }
    }
}

/// Failures, split by exit code.
enum Failure {
    /// Bad input: exit 1.
    Domain { kind: &'static str, message: String, details: Value },
    /// A cross-check failed: exit 3.
    Internal { kind: &'static str, message: String },
}

impl Failure {
    fn domain(kind: &'static str, message: impl Into<String>) -> Self {
        Failure::Domain { kind, message: message.into(), details: Value::Null }
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Domain { .. } => 1,
            Failure::Internal { .. } => 3,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Failure::Domain { kind, message, details } => {
                let mut v = json!({"error": kind, "message": message});
                if !details.is_null() {
                    v["details"] = details.clone();
                }
                v
            }
            Failure::Internal { kind, message } => json!({"error": kind, "message": message}),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        let kind = match &e {
            ClassifyError::NotASubmonoid(_) => "NotASubmonoid",
            ClassifyError::KindMismatch(_) => "KindMismatch",
            ClassifyError::RoutesDisagree { .. } => "RoutesDisagree",
            ClassifyError::ChainBroken(_) => "ChainBroken",
            ClassifyError::Generated(_) => "InternalInvariantBroken",
        };
        if e.is_internal() {
            Failure::Internal { kind, message: e.to_string() }
        } else {
            Failure::domain(kind, e.to_string())
        }
    }
}

impl From<GeneratedError> for Failure {
    fn from(e: GeneratedError) -> Self {
        match e {
            GeneratedError::InternalInvariantBroken(_) => {
                Failure::Internal { kind: "InternalInvariantBroken", message: e.to_string() }
            }
            GeneratedError::SizeCapExceeded(_) => Failure::domain("SizeCapExceeded", e.to_string()),
        }
    }
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::Classify(c) => c.into(),
            CensusError::SizeCap(_) => Failure::domain("SizeCapExceeded", e.to_string()),
            CensusError::Store { .. } => Failure::domain("CensusStore", e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.to_json());
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate { file } => validate(&file),
        Command::Submonoids { file, json } => submonoids(&load(&file)?, json),
        Command::Classify { file, submonoid, json } => {
            let a = load(&file)?;
            let m = submonoid_arg(&a, &submonoid)?;
            let report = classify_submonoid(&a, m)?;
            if json {
                print_json(&report.to_json(&a));
            } else {
                let yes = |b: bool| if b { "yes" } else { "no" };
                println!("submonoid        {}", braces(&a, m));
                println!("clot             {}", yes(report.is_clot));
                println!("positive cone    {}", yes(report.is_positive_cone));
                println!("normal           {}", yes(report.is_normal));
                println!("right normal     {}", yes(report.is_right_normal));
                println!("dedekind finite  {}", yes(report.is_dedekind_finite_ambient));
                for w in &report.witnesses {
                    println!("witness {:<12} {}", w.kind.label(), w.names(&a).join(" "));
                }
            }
            Ok(())
        }
        Command::Syntactic { file, submonoid, kind, json } => {
            let a = load(&file)?;
            let m = submonoid_arg(&a, &submonoid)?;
            let (name, r) = match kind {
                SyntacticKind::Cong => ("congruence", syntactic_congruence(&a, m)),
                SyntacticKind::Preord => ("preorder", syntactic_preorder(&a, m)),
                SyntacticKind::Refl => ("reflexive", syntactic_reflexive(&a, m).relation),
            };
            let extra = match kind {
                SyntacticKind::Refl => json!({"internal": syntactic_reflexive(&a, m).is_internal()}),
                _ => json!({}),
            };
            print_relation(&a, name, &r, json, extra);
            Ok(())
        }
        Command::Generate { file, submonoid, kind, oracle, json } => {
            let a = load(&file)?;
            let m = submonoid_arg(&a, &submonoid)?;
            let kind = RelationKind::from(kind);
            let r = generated(&a, m, kind)?;
            let mut extra = json!({"oracle": false});
            if oracle {
                let o = minimal_relation_oracle(&a, m, kind)?;
                if o != r {
                    return Err(Failure::Internal {
                        kind: "OracleDisagrees",
                        message: format!(
                            "closure gives {:?}, exhaustive search gives {:?}",
                            relation_to_json(&a, &r),
                            relation_to_json(&a, &o)
                        ),
                    });
                }
                extra = json!({"oracle": true});
            }
            print_relation(&a, kind.name(), &r, json, extra);
            Ok(())
        }
        Command::Census { file: Some(file), json, .. } => census_one(&load(&file)?, json),
        Command::Census { file: None, order, jsonl, json, .. } => {
            census_order(order.expect("clap requires --order with --all"), jsonl.as_deref(), json)
        }
        Command::Examples { bound, json } => {
            let bounds = bound.map_or_else(CorpusBounds::default, CorpusBounds::uniform);
            let report = example_corpus(&bounds);
            if json {
                print_json(&report.to_json());
            } else {
                for o in &report.outcomes {
                    println!("{}  {}  {}", o.id, if o.passed() { "pass" } else { "FAIL" }, o.title);
                    for d in o.failed_checks() {
                        println!("      failed: {d}");
                    }
                }
            }
            report.ensure().map_err(|e| Failure::Domain {
                kind: "CorpusMismatch",
                message: e.to_string(),
                details: json!({"example": e.id, "failed": e.failed}),
            })
        }
    }
}

fn load(path: &Path) -> Result<FiniteMonoid, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::domain("Io", format!("{}: {e}", path.display())))?;
    parse_monoid(&text).map_err(|e| match e {
        zeroclass::io::FormatError::Invalid { errors, names } => Failure::Domain {
            kind: "InvalidMonoid",
            message: format!("{} is not a monoid", path.display()),
            details: errors.iter().map(|e| e.describe(&names)).collect(),
        },
        other => Failure::domain("InvalidMonoid", other.to_string()),
    })
}

fn submonoid_arg(a: &FiniteMonoid, names: &[String]) -> Result<SubsetMask, Failure> {
    let m = a.subset_from_names(names).map_err(|e| Failure::domain("UnknownElement", e))?;
    if !a.is_submonoid(m) {
        let closure = a.generate_submonoid(m);
        return Err(Failure::Domain {
            kind: "NotASubmonoid",
            message: format!("{} is not a submonoid", braces(a, m)),
            details: json!({"generated": a.subset_names(closure)}),
        });
    }
    Ok(m)
}

fn braces(a: &FiniteMonoid, m: SubsetMask) -> String {
    format!("{{{}}}", a.subset_names(m).join(", "))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn print_relation(a: &FiniteMonoid, kind: &str, r: &BinaryRelation, json: bool, extra: Value) {
    let zero = r.zero_class(a.identity());
    if json {
        let mut v = json!({
            "kind": kind,
            "pairs": relation_to_json(a, r),
            "zeroClass": a.subset_names(zero),
        });
        if let (Some(obj), Value::Object(more)) = (v.as_object_mut(), extra) {
            obj.extend(more);
        }
        print_json(&v);
    } else {
        for (x, y) in r.pairs() {
            println!("{} {}", a.name(x), a.name(y));
        }
        println!("zero-class {}", braces(a, zero));
    }
}

fn validate(path: &Path) -> Result<(), Failure> {
    let a = load(path)?;
    println!(
        "valid monoid: order {}, identity {}, {}commutative, id {}",
        a.order(),
        a.name(a.identity()),
        if a.is_commutative() { "" } else { "non-" },
        a.content_hash()
    );
    Ok(())
}

fn submonoids(a: &FiniteMonoid, json: bool) -> Result<(), Failure> {
    let subs = a
        .enumerate_submonoids()
        .map_err(|e| Failure::domain("SizeCapExceeded", e.to_string()))?;
    if json {
        print_json(&Value::Array(subs.iter().map(|&m| json!(a.subset_names(m))).collect()));
    } else {
        for m in subs {
            println!("{}", braces(a, m));
        }
    }
    Ok(())
}

fn summary_line(s: &CensusSummary) -> String {
    format!(
        "submonoids {}  clots {}  cones {}  normal {}  right-normal {}  cone-not-normal {}  clot-not-cone {}",
        s.submonoids, s.clots, s.positive_cones, s.normal, s.right_normal, s.cone_not_normal, s.clot_not_cone
    )
}

fn census_one(a: &FiniteMonoid, json: bool) -> Result<(), Failure> {
    let table = census::census_submonoids(a)?;
    if json {
        print_json(&table.to_json(a));
        return Ok(());
    }
    let mark = |b: bool| if b { "x" } else { "." };
    println!("{:<24} clot cone normal right", "submonoid");
    for r in &table.reports {
        println!(
            "{:<24} {:<4} {:<4} {:<6} {}",
            braces(a, r.submonoid),
            mark(r.is_clot),
            mark(r.is_positive_cone),
            mark(r.is_normal),
            mark(r.is_right_normal)
        );
    }
    println!("{}", summary_line(&table.summary));
    Ok(())
}

fn census_order(order: usize, jsonl: Option<&Path>, json: bool) -> Result<(), Failure> {
    let monoids = census::enumerate_monoids(order)
        .map_err(|e| Failure::domain("SizeCapExceeded", e.to_string()))?;
    let summaries: Vec<CensusSummary> = match jsonl {
        Some(path) => CensusStore::open(path)?.run(&monoids)?,
        None => census::census_all(order)?.into_iter().map(|(_, t)| t.summary).collect(),
    };
    let total = summaries.iter().fold(CensusSummary::default(), |acc, s| acc.merge(s));
    if json {
        print_json(&json!({
            "order": order,
            "monoids": monoids.len(),
            "total": total.to_json(),
            "perMonoid": monoids.iter().zip(&summaries).map(|(m, s)| json!({
                "key": m.content_hash(),
                "summary": s.to_json(),
            })).collect::<Vec<_>>(),
        }));
    } else {
        println!("order {order}: {} monoids", monoids.len());
        println!("{}", summary_line(&total));
    }
    Ok(())
}

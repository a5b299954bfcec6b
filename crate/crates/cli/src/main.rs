//! One binary, one subcommand per operation family.  Default output is
//! human-readable text; --json switches every subcommand to a single JSON
//! document on stdout.  Exit codes: 0 success, 1 domain error or failed
//! verification, 2 usage error.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use nccube_core::categories::{category_of_group, closure, group_of_category, CategorySpec, GroupCategory, NamedCategory};
use nccube_core::error::Error as CoreError;
use nccube_core::groups::{is_uniform, normalize_presentation, Decision, GroupOracle, GroupPresentation, Word};
use nccube_core::partition::{enumerate, Partition};
use nccube_core::schur_weyl::fix_dim;
use nccube_core::spheres::{sphere_presentation_from_group, standard_parametrization, MonomialRelation, MonomialRhs, SphereSpec};
use nccube_core::tensor::{mobius, span_dim, t_map, tbar_map, verify_mobius_identity, ExactMatrix};

#[derive(Parser)]
#[command(name = "nccube", version, about = "Two-row partition calculus: signatures, categories, reflection groups, spheres and cubes")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Cap the worker thread pool; default is all available cores.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupPreset {
    Free,
    Abelian,
    Half,
}

impl GroupPreset {
    fn presentation(self, generators: usize) -> GroupPresentation {
        match self {
            GroupPreset::Free => GroupPresentation::free(generators),
            GroupPreset::Abelian => GroupPresentation::abelian(generators),
            GroupPreset::Half => GroupPresentation::half(generators),
        }
    }

    fn oracle(self) -> GroupOracle {
        match self {
            GroupPreset::Free => GroupOracle::Free,
            GroupPreset::Abelian => GroupOracle::Abelian,
            GroupPreset::Half => GroupOracle::Half,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SpherePreset {
    Free,
    Commutative,
    Half,
}

impl SpherePreset {
    fn spec(self, n: usize) -> SphereSpec {
        match self {
            SpherePreset::Free => SphereSpec::free(n),
            SpherePreset::Commutative => SphereSpec::commutative(n),
            SpherePreset::Half => SphereSpec::half(n),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the partitions of a shape, optionally filtered by a named
    /// category.
    Enum {
        #[arg(long)]
        upper: usize,
        #[arg(long)]
        lower: usize,
        /// Category token such as P_even or NC_2.
        #[arg(long)]
        class: Option<NamedCategory>,
        /// Print only how many there are.
        #[arg(long)]
        count: bool,
    },
    /// Signature of an even partition: +1 or -1.
    Sig {
        /// Partition as JSON, e.g. '{"upper":2,"lower":2,"blocks":[["u1","l2"],["u2","l1"]]}'.
        #[arg(long)]
        partition: String,
    },
    /// Does a partition belong to a named category?
    Member {
        #[arg(long)]
        class: NamedCategory,
        #[arg(long)]
        partition: String,
    },
    /// Close a set of generator partitions under the category operations, up
    /// to a leg bound.  Results are cached under $NCCUBE_CACHE_DIR when set.
    Closure {
        /// JSON list of generator partitions.
        #[arg(long)]
        gen: String,
        #[arg(long)]
        legs: usize,
        /// Also write the closure to this path as a JSON list.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mobius function on the coarsening interval below a partition: one
    /// record per coarsening.
    Mobius {
        #[arg(long)]
        partition: String,
    },
    /// Matrix of the linear map attached to a partition on an n-dimensional
    /// space, plain or signed.
    Tmap {
        #[arg(long)]
        partition: String,
        #[arg(long = "N")]
        n: usize,
        /// Signed variant: entries carry the signature of the index kernel.
        #[arg(long)]
        twisted: bool,
    },
    /// Check that the signed map equals the Mobius-weighted sum of plain maps
    /// over the coarsenings.  Exit 1 on mismatch.
    VerifyMobius {
        #[arg(long)]
        partition: String,
        #[arg(long = "N")]
        n: usize,
    },
    /// Word problems in reflection groups.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Recover the partition category of a reflection group from its word
    /// problem, one shape at a time.
    CategoryOfGroup {
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long)]
        upper: usize,
        #[arg(long)]
        lower: usize,
        /// Kernels with more blocks than this stay undecided.
        #[arg(long)]
        index_bound: usize,
    },
    /// Present the reflection group attached to a category by the relations
    /// its members impose on n generators.
    GroupOfCategory {
        #[arg(long)]
        class: NamedCategory,
        #[arg(long = "N")]
        n: usize,
        /// Largest total leg count of the members to read relations from.
        #[arg(long)]
        legs: usize,
    },
    /// Noncommutative spheres and their cubes.
    #[command(subcommand)]
    Sphere(SphereCommand),
    /// Compare the fixed-space dimension of the k-th tensor powers of the
    /// signed permutation matrices with the span of the even partition maps.
    Schurweyl {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Output format, overriding --json.
        #[arg(long)]
        report: Option<ReportFormat>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(clap::Args)]
struct OracleArgs {
    /// One of the three exactly decidable groups.
    #[arg(long, conflicts_with = "presentation")]
    preset: Option<GroupPreset>,
    /// Presentation as JSON {"generators":N,"relations":[[[1,2,1],[2,1,2]]]}.
    #[arg(long)]
    presentation: Option<String>,
    /// Search budget beyond the longer input word, for --presentation.
    #[arg(long, default_value_t = 4)]
    slack: usize,
}

impl OracleArgs {
    fn oracle(&self) -> Result<GroupOracle, Failure> {
        match (&self.preset, &self.presentation) {
            (Some(p), None) => Ok(p.oracle()),
            (None, Some(json)) => {
                let pres: GroupPresentation = serde_json::from_str(json)?;
                pres.validate()?;
                Ok(GroupOracle::bounded(pres, self.slack))
            }
            _ => Err(Failure::Usage("exactly one of --preset and --presentation is required".into())),
        }
    }
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Are two words equal in the group?  Prints yes, no, or undecided.
    Equal {
        #[command(flatten)]
        oracle: OracleArgs,
        /// Comma-separated letters, e.g. 1,2,3; empty for the empty word.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        w: String,
        /// The word to compare against, in the same format as --w.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        v: String,
    },
    /// Free-reduce and canonically orient every relation of a presentation.
    Normalize {
        #[arg(long)]
        presentation: String,
    },
    /// Is the presented quotient invariant under permuting the generators?
    Uniform {
        #[command(flatten)]
        oracle: OracleArgs,
        /// Word length bound for the permutation check.
        #[arg(long, default_value_t = 6)]
        legs: usize,
    },
}

#[derive(Subcommand)]
enum SphereCommand {
    /// The monomial relation set of a sphere.
    Relations {
        #[arg(long)]
        spec: SpherePreset,
        #[arg(long = "N")]
        n: usize,
        /// Annihilate products of more than this many distinct letters.
        #[arg(long)]
        zero_degree: Option<usize>,
    },
    /// Which vertical partitions hold on the sphere, plain and signed, per
    /// word length.
    Param {
        #[arg(long)]
        spec: SpherePreset,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        zero_degree: Option<usize>,
    },
    /// Sphere presentation of a reflection group: the plain or signed
    /// monomial relations its word problem induces.
    Duality {
        #[arg(long)]
        group: GroupPreset,
        #[arg(long = "N")]
        n: usize,
        /// Emit the signed relation set instead of the plain one.
        #[arg(long)]
        twisted: bool,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Domain(format!("bad JSON: {e}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        // A second invocation in the same process would fail; harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn parse_partition(json: &str) -> Result<Partition, Failure> {
    Ok(serde_json::from_str::<Partition>(json)?)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let mut out = serde_json::to_string(value).map_err(|e| Failure::Domain(e.to_string()))?;
    out.push('\n');
    std::io::stdout().write_all(out.as_bytes())?;
    Ok(())
}

fn show_relation(rel: &MonomialRelation) -> String {
    match &rel.rhs {
        MonomialRhs::Zero => format!("{} = 0", rel.lhs),
        MonomialRhs::Word { word, sign } => {
            if sign.as_i64() < 0 {
                format!("{} = -{}", rel.lhs, word)
            } else {
                format!("{} = {}", rel.lhs, word)
            }
        }
    }
}

fn print_relations(json: bool, relations: &BTreeSet<MonomialRelation>) -> Result<(), Failure> {
    if json {
        print_json(relations)
    } else {
        for rel in relations {
            println!("{}", show_relation(rel));
        }
        Ok(())
    }
}

fn print_presentation(json: bool, pres: &GroupPresentation) -> Result<(), Failure> {
    if json {
        print_json(pres)
    } else {
        println!("generators: {}", pres.generators);
        for (lhs, rhs) in &pres.relations {
            println!("{lhs} = {rhs}");
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct MobiusRow {
    sigma: Partition,
    pi: Partition,
    mu: i64,
}

#[derive(Serialize)]
struct SchurWeylReport {
    #[serde(rename = "N")]
    n: usize,
    k: usize,
    fix_dim: usize,
    span_dim: usize,
    ok: bool,
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Enum { upper, lower, class, count } => {
            let spec = class.map(CategorySpec::named);
            let mut parts = Vec::new();
            for pi in enumerate(*upper, *lower)? {
                let keep = match &spec {
                    Some(s) => s.member(&pi)?,
                    None => true,
                };
                if keep {
                    parts.push(pi);
                }
            }
            if *count {
                if json {
                    print_json(&serde_json::json!({ "count": parts.len() }))?;
                } else {
                    println!("{}", parts.len());
                }
            } else if json {
                print_json(&parts)?;
            } else {
                for pi in &parts {
                    println!("{pi}");
                }
            }
        }
        Command::Sig { partition } => {
            let pi = parse_partition(partition)?;
            let sign = pi.signature()?;
            if json {
                print_json(&serde_json::json!({ "sign": sign.as_i64() }))?;
            } else {
                println!("{sign}");
            }
        }
        Command::Member { class, partition } => {
            let pi = parse_partition(partition)?;
            let answer = CategorySpec::named(*class).member(&pi)?;
            if json {
                print_json(&serde_json::json!({ "member": answer }))?;
            } else {
                println!("{answer}");
            }
        }
        Command::Closure { gen, legs, out } => {
            let generators: Vec<Partition> = serde_json::from_str(gen)?;
            let closed = cached_closure(&generators, *legs)?;
            if let Some(path) = out {
                std::fs::write(path, serde_json::to_string(&closed)?)?;
            }
            if json {
                print_json(&closed)?;
            } else {
                for pi in &closed {
                    println!("{pi}");
                }
            }
        }
        Command::Mobius { partition } => {
            let pi = parse_partition(partition)?;
            let mut rows = Vec::new();
            for sigma in pi.coarsenings() {
                let mu = bigint_to_i64(&mobius(&sigma, &pi))?;
                rows.push(MobiusRow { sigma, pi: pi.clone(), mu });
            }
            if json {
                print_json(&rows)?;
            } else {
                for row in &rows {
                    println!("mu({}, {}) = {}", row.sigma, row.pi, row.mu);
                }
            }
        }
        Command::Tmap { partition, n, twisted } => {
            let pi = parse_partition(partition)?;
            let m = if *twisted { tbar_map(&pi, *n)? } else { t_map(&pi, *n)? };
            if json {
                print_json(&m)?;
            } else {
                print_matrix(&m);
            }
        }
        Command::VerifyMobius { partition, n } => {
            let pi = parse_partition(partition)?;
            let ok = verify_mobius_identity(&pi, *n)?;
            if json {
                print_json(&serde_json::json!({ "ok": ok }))?;
            } else {
                println!("{}", if ok { "ok" } else { "mismatch" });
            }
            if !ok {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Group(sub) => return run_group(json, sub),
        Command::CategoryOfGroup { oracle, upper, lower, index_bound } => {
            let oracle = oracle.oracle()?;
            let cat: GroupCategory = category_of_group(&oracle, *upper, *lower, *index_bound)?;
            if json {
                print_json(&cat)?;
            } else {
                for pi in &cat.members {
                    println!("member: {pi}");
                }
                for pi in &cat.undecided {
                    println!("undecided: {pi}");
                }
                println!("stable: {}", cat.stable);
            }
        }
        Command::GroupOfCategory { class, n, legs } => {
            let pres = group_of_category(&CategorySpec::named(*class), *n, *legs)?;
            print_presentation(json, &pres)?;
        }
        Command::Sphere(sub) => run_sphere(json, sub)?,
        Command::Schurweyl { n, k, report } => {
            let fix = fix_dim(*n, *k)?;
            let parts: Vec<Partition> = enumerate(0, *k)?.filter(|pi| pi.is_even()).collect();
            let span = span_dim(&parts, *n)?;
            let ok = fix == span;
            let as_json = match report {
                Some(ReportFormat::Json) => true,
                Some(ReportFormat::Text) => false,
                None => json,
            };
            if as_json {
                print_json(&SchurWeylReport { n: *n, k: *k, fix_dim: fix, span_dim: span, ok })?;
            } else {
                println!("fix_dim={fix} span_dim={span} {}", if ok { "ok" } else { "MISMATCH" });
            }
            if !ok {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_group(json: bool, sub: &GroupCommand) -> Result<ExitCode, Failure> {
    match sub {
        GroupCommand::Equal { oracle, w, v } => {
            let oracle = oracle.oracle()?;
            let w = Word::parse(w)?;
            let v = Word::parse(v)?;
            let decision = oracle.equal(&w, &v);
            if json {
                print_json(&serde_json::json!({ "decision": decision }))?;
            } else {
                println!("{decision}");
            }
        }
        GroupCommand::Normalize { presentation } => {
            let pres: GroupPresentation = serde_json::from_str(presentation)?;
            pres.validate()?;
            print_presentation(json, &normalize_presentation(&pres)?)?;
        }
        GroupCommand::Uniform { oracle, legs } => {
            let answer = match oracle.oracle()? {
                // The three exact groups are uniform by construction.
                GroupOracle::Free | GroupOracle::Abelian | GroupOracle::Half => Decision::Yes,
                GroupOracle::Bounded { presentation, .. } => is_uniform(&presentation, *legs),
            };
            if json {
                print_json(&serde_json::json!({ "uniform": answer }))?;
            } else {
                println!("{answer}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_sphere(json: bool, sub: &SphereCommand) -> Result<(), Failure> {
    match sub {
        SphereCommand::Relations { spec, n, zero_degree } => {
            let mut sphere = spec.spec(*n);
            if let Some(d) = zero_degree {
                sphere = sphere.with_zero_degree(*d)?;
            }
            print_relations(json, &sphere.relations()?)?;
        }
        SphereCommand::Param { spec, n, kmax, zero_degree } => {
            let mut sphere = spec.spec(*n);
            if let Some(d) = zero_degree {
                sphere = sphere.with_zero_degree(*d)?;
            }
            let param = standard_parametrization(&sphere, *kmax)?;
            if json {
                print_json(&param)?;
            } else {
                for k in 1..=param.k_max {
                    println!("k={k} faithful={}", param.faithful[k - 1]);
                    for pi in &param.untwisted[k - 1] {
                        println!("  untwisted: {pi}");
                    }
                    for pi in &param.twisted[k - 1] {
                        println!("  twisted: {pi}");
                    }
                }
            }
        }
        SphereCommand::Duality { group, n, twisted } => {
            let pres = group.presentation(*n);
            let sphere = sphere_presentation_from_group(&pres)?;
            let relations = if *twisted { &sphere.twisted } else { &sphere.untwisted };
            print_relations(json, relations)?;
        }
    }
    Ok(())
}

fn print_matrix(m: &ExactMatrix) {
    println!("{}x{}", m.rows(), m.cols());
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
        println!("{}", row.join(" "));
    }
}

fn bigint_to_i64(v: &BigInt) -> Result<i64, Failure> {
    i64::try_from(v).map_err(|_| Failure::Domain(format!("value {v} exceeds i64")))
}

/// Closure results keyed by a stable hash of the canonical generator JSON
/// and the leg bound, stored under $NCCUBE_CACHE_DIR when it is set.
fn cached_closure(generators: &[Partition], legs: usize) -> Result<BTreeSet<Partition>, Failure> {
    let cache_file = std::env::var_os("NCCUBE_CACHE_DIR").map(|dir| {
        let canonical: BTreeSet<&Partition> = generators.iter().collect();
        let key = serde_json::to_string(&(&canonical, legs)).expect("serializable");
        PathBuf::from(dir).join(format!("closure-{:016x}.json", fnv1a64(key.as_bytes())))
    });
    // The cache is best effort: an unreadable or corrupt entry is
    // recomputed and overwritten, and a failed write never fails the
    // command.
    if let Some(path) = &cache_file {
        if let Ok(text) = std::fs::read_to_string(path) {
            if let Ok(closed) = serde_json::from_str(&text) {
                return Ok(closed);
            }
        }
    }
    let closed = closure(generators, legs)?;
    if let Some(path) = &cache_file {
        let text = serde_json::to_string(&closed).expect("serializable");
        let _ = path
            .parent()
            .map_or(Ok(()), std::fs::create_dir_all)
            .and_then(|()| std::fs::write(path, text));
    }
    Ok(closed)
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use tridend_core::axioms::check_axioms_par;
use tridend_core::coeff::{fmt_rational, parse_rational};
use tridend_core::free::{tree_axiom_scan, tree_basis};
use tridend_core::omega::{builtin, builtin_table, check_diassociative, check_eds, check_ets};
use tridend_core::operad::{assoc_verdicts, koszul_dual, listed_dual_relations, relation_space};
use tridend_core::rota_baxter::{check_rb, induced_tridend};
use tridend_core::tensor::{phi_properties, probe, Collapsed, ProbeMode};
use tridend_core::tree::{count, enumerate};
use tridend_core::words::check_matching;
use tridend_core::{
    AxiomReport, Builtin, Combo, Error, FreeTridend, LinComb, MatchingAlgebra, OmegaRbAlgebra,
    OmegaTable, Reading, Tagged, Tree, TriOp, Tridendriform, TripleSource, TypedWord, TypedWords,
};

const COVERAGE: &[&str] = &[
    "diassociative, extended diassociative and extended triassociative semigroup axioms",
    "opposite of an Ω-table",
    "Ω-tridendriform products on leaf-typed Schröder trees and freeness of that algebra",
    "leaf-typed tree counts",
    "equivalence between the ETS axioms and the tree axioms (bounded probe)",
    "typed quasi-shuffle products on typed words",
    "commutativity of typed words over a commutative table",
    "universal property of typed words via Φ",
    "Ω-Rota-Baxter families and their induced Ω-tridendriform structure",
    "φ maps and the collapsed tridendriform structure on kΩ ⊗ A",
    "generation and freeness of the collapsed free algebra (bounded probe)",
    "quadratic relations of the Ω-tridendriform operad",
    "Koszul dual relations",
    "associative combinations of the three products",
];

#[derive(Parser)]
#[command(
    name = "tridend",
    about = "Exact computations with Ω-tridendriform algebras",
    disable_version_flag = true
)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for axiom scans.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Print the version and the list of covered statements.
    #[arg(long)]
    version: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Ω-table checks and constructions.
    #[command(subcommand)]
    Ets(EtsCmd),
    /// Typed Schröder trees.
    #[command(subcommand)]
    Trees(TreesCmd),
    /// Randomized or exhaustive axiom checks.
    #[command(subcommand)]
    Axioms(AxiomsCmd),
    /// Typed words over a matching algebra.
    #[command(subcommand)]
    Words(WordsCmd),
    /// Ω-Rota-Baxter families.
    #[command(subcommand)]
    Rb(RbCmd),
    /// Tensor collapse kΩ ⊗ A.
    #[command(subcommand)]
    Tensor(TensorCmd),
    /// Weight-2 operad relations.
    #[command(subcommand)]
    Operad(OperadCmd),
}

#[derive(Args)]
struct TableArg {
    /// Ω-table JSON file, or `builtin:<name>:<n>`.
    #[arg(long)]
    table: String,
}

#[derive(Subcommand)]
enum EtsCmd {
    /// Check the diassociative, EDS and ETS axioms.
    Check { file: PathBuf },
    /// Print a named table.
    Builtin {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: usize,
        /// Semigroup for `family`, rows separated by `;`, e.g. `0,1;1,0`.
        #[arg(long)]
        aux: Option<String>,
        /// Optional `∗` table for `family`, same format as `--aux`.
        #[arg(long)]
        star: Option<String>,
        /// Skip the ETS check.
        #[arg(long)]
        raw: bool,
    },
    /// Print the opposite table.
    Opposite { file: PathBuf },
}

#[derive(Subcommand)]
enum TreesCmd {
    /// List 𝔗ₙ(X, Ω).
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Number of generators, named x, y, z, ... (or x0, x1, ... beyond 3).
        #[arg(long, default_value_t = 1)]
        x: usize,
        #[arg(long, default_value_t = 1)]
        omega: usize,
    },
    /// |𝔗ₙ(X, Ω)|.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        x: usize,
        #[arg(long, default_value_t = 1)]
        omega: usize,
    },
    /// Product of two trees; `|` stands for the unit.
    Product {
        #[arg(long, value_enum)]
        op: OpArg,
        #[arg(long)]
        omega: usize,
        #[command(flatten)]
        table: TableArg,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Validate a tree and print its canonical form.
    Parse { tree: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    Prec,
    Succ,
    Circ,
}

impl From<OpArg> for TriOp {
    fn from(o: OpArg) -> TriOp {
        match o {
            OpArg::Prec => TriOp::Prec,
            OpArg::Succ => TriOp::Succ,
            OpArg::Circ => TriOp::Circ,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Structure {
    Trees,
    Words,
    Rb,
    Tensor,
}

#[derive(Subcommand)]
enum AxiomsCmd {
    /// Check (tri1)-(tri7) on a structure.
    Fuzz {
        #[arg(long, value_enum, default_value = "trees")]
        structure: Structure,
        #[command(flatten)]
        table: TableArg,
        /// Matching algebra (words) or Rota-Baxter algebra (rb) JSON.
        #[arg(long)]
        algebra: Option<PathBuf>,
        /// Exhaustive bound on total leaves (trees) or total length (words).
        #[arg(long)]
        max_leaves: Option<usize>,
        /// Sample this many random triples instead.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum WordsCmd {
    /// Product of two typed words `a0 :w1 a1 ...`; `ε` is the empty word.
    Product {
        #[arg(long, value_enum)]
        op: OpArg,
        #[arg(long)]
        omega: usize,
        #[command(flatten)]
        table: TableArg,
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Check the matching associativity identities.
    CheckMatching {
        #[arg(long)]
        algebra: PathBuf,
    },
}

#[derive(Subcommand)]
enum RbCmd {
    /// Check the Ω-Rota-Baxter identity on basis pairs.
    Verify {
        #[command(flatten)]
        table: TableArg,
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Build the induced Ω-tridendriform algebra.
    Induce {
        #[command(flatten)]
        table: TableArg,
        #[arg(long)]
        algebra: PathBuf,
        /// Also check (tri1)-(tri7) on sampled triples.
        #[arg(long)]
        check_axioms: bool,
        /// Accept a table that is not ETS.
        #[arg(long)]
        relax_ets: bool,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Generation,
    Freeness,
}

#[derive(Subcommand)]
enum TensorCmd {
    /// Injectivity and surjectivity of φ_←, φ_→, φ_∗.
    Phi {
        #[command(flatten)]
        table: TableArg,
    },
    /// Rank probe of the collapsed free algebra up to degree n.
    Probe {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[command(flatten)]
        table: TableArg,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        x: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReadingArg {
    Printed,
    Corrected,
}

#[derive(Subcommand)]
enum OperadCmd {
    /// The relation space R.
    Relations {
        #[command(flatten)]
        table: TableArg,
    },
    /// The annihilator of R, compared with the listed dual families.
    KoszulDual {
        #[command(flatten)]
        table: TableArg,
        /// Print the dual relations as well.
        #[arg(long)]
        emit_presentation: bool,
        #[arg(long, value_enum, default_value = "printed")]
        reading: ReadingArg,
    },
    /// Whether `a·≺ + b·∘ + c·≻` is associative.
    Assoc {
        #[command(flatten)]
        table: TableArg,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
}

enum Failure {
    Usage(String),
    Fail(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotEts(_) | Error::Unverified(_) => Failure::Fail(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn usage(e: impl Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Result of a subcommand: text, JSON, and whether everything passed.
struct Outcome {
    text: String,
    json: Value,
    passed: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            passed: true,
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: tridend_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
        Failure::Fail(m) => Failure::Fail(format!("{}: {m}", path.display())),
    })
}

fn load_table_file(path: &Path) -> Result<OmegaTable, Failure> {
    let s = read_file(path)?;
    with_path(path, OmegaTable::from_json_str(&s))
}

fn load_table(spec: &str) -> Result<OmegaTable, Failure> {
    match spec.strip_prefix("builtin:") {
        Some(rest) => {
            let (name, n) = rest
                .split_once(':')
                .ok_or_else(|| usage(format!("expected builtin:<name>:<n>, got `{spec}`")))?;
            let n: usize = n.parse().map_err(|_| usage(format!("bad size `{n}`")))?;
            let name = Builtin::parse(name)?;
            let aux = (name == Builtin::Family).then(|| cyclic(n));
            Ok(builtin(name, n, aux.as_deref(), None)?)
        }
        None => load_table_file(Path::new(spec)),
    }
}

/// Z/n under addition.
fn cyclic(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect()
}

fn parse_rows(s: &str) -> Result<Vec<Vec<usize>>, Failure> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| usage(format!("bad table entry `{x}`")))
                })
                .collect()
        })
        .collect()
}

fn parse_vector(s: &str, n: usize, what: &str) -> Result<Vec<tridend_core::Rational>, Failure> {
    let v = s
        .split(',')
        .map(parse_rational)
        .collect::<tridend_core::Result<Vec<_>>>()?;
    if v.len() != n {
        return Err(usage(format!(
            "--{what} has {} entries, expected |Ω| = {n}",
            v.len()
        )));
    }
    Ok(v)
}

fn gen_names(x: usize) -> Vec<String> {
    if x <= 3 {
        ["x", "y", "z"][..x].iter().map(|s| s.to_string()).collect()
    } else {
        (0..x).map(|i| format!("x{i}")).collect()
    }
}

fn comb_json<K: Display + Ord>(c: &LinComb<K>) -> Value {
    Value::Array(
        c.iter()
            .map(|(k, q)| json!({"coeff": fmt_rational(q), "basis": k.to_string()}))
            .collect(),
    )
}

fn report_json(r: &AxiomReport) -> Value {
    serde_json::to_value(r).expect("serializes")
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializes")
}

fn family_line(label: &str, r: &AxiomReport) -> String {
    let failed = r.failed_axioms();
    let mut s = format!(
        "{label}: {} ({}/{} axiom families)",
        if r.passed() { "PASS" } else { "FAIL" },
        r.axioms.len() - failed.len(),
        r.axioms.len()
    );
    for v in r.violations.iter().take(8) {
        s.push_str(&format!(
            "\n  {} at {}: {} != {}",
            v.axiom, v.witness, v.lhs, v.rhs
        ));
    }
    if r.violations.len() > 8 {
        s.push_str(&format!("\n  ... {} more", r.violations.len() - 8));
    }
    s
}

fn axiom_outcome(label: &str, r: AxiomReport, extra: Value) -> Outcome {
    let mut j = json!({"report": report_json(&r)});
    if let (Value::Object(m), Value::Object(e)) = (&mut j, extra) {
        m.extend(e);
    }
    Outcome {
        text: format!("{label}: {r}"),
        json: j,
        passed: r.passed(),
    }
}

fn ets_cmd(cmd: EtsCmd) -> CmdResult {
    match cmd {
        EtsCmd::Check { file } => {
            let t = load_table_file(&file)?;
            let di = check_diassociative(&t);
            let eds = check_eds(&t);
            let ets = check_ets(&t);
            let text = [
                family_line("diassociative", &di),
                family_line("EDS", &eds),
                family_line("ETS", &ets),
            ]
            .join("\n");
            Ok(Outcome {
                text,
                json: json!({
                    "diassociative": report_json(&di),
                    "eds": report_json(&eds),
                    "ets": report_json(&ets),
                }),
                passed: ets.passed(),
            })
        }
        EtsCmd::Builtin {
            name,
            n,
            aux,
            star,
            raw,
        } => {
            let name = Builtin::parse(&name)?;
            let aux = aux.as_deref().map(parse_rows).transpose()?;
            let star = star.as_deref().map(parse_rows).transpose()?;
            let t = if raw {
                builtin_table(name, n, aux.as_deref(), star.as_deref())?
            } else {
                builtin(name, n, aux.as_deref(), star.as_deref())?
            };
            Ok(Outcome::ok(t.to_json_string(), to_value(&t.to_json())))
        }
        EtsCmd::Opposite { file } => {
            let t = load_table_file(&file)?.opposite();
            Ok(Outcome::ok(t.to_json_string(), to_value(&t.to_json())))
        }
    }
}

fn tree_operand(s: &str) -> Result<Option<Tree>, Failure> {
    if s.trim() == "|" {
        Ok(None)
    } else {
        Ok(Some(Tree::parse(s)?))
    }
}

fn trees_cmd(cmd: TreesCmd) -> CmdResult {
    match cmd {
        TreesCmd::Enumerate { n, x, omega } => {
            let names = gen_names(x);
            let xs: Vec<&str> = names.iter().map(String::as_str).collect();
            let ts = enumerate(n, &xs, omega)?;
            let text = ts.iter().map(Tree::render).collect::<Vec<_>>().join("\n");
            Ok(Outcome::ok(text, json!({"count": ts.len(), "trees": ts})))
        }
        TreesCmd::Count { n, x, omega } => {
            if n == 0 {
                return Err(usage("degree must be positive"));
            }
            let c = count(n, x, omega);
            Ok(Outcome::ok(c.to_string(), json!({"count": c.to_string()})))
        }
        TreesCmd::Product {
            op,
            omega,
            table,
            left,
            right,
        } => {
            let alg = FreeTridend::new(load_table(&table.table)?)?;
            alg.table().check_element(omega)?;
            let (l, r) = (tree_operand(&left)?, tree_operand(&right)?);
            let p = alg.unit_product(op.into(), omega, l.as_ref(), r.as_ref())?;
            Ok(Outcome::ok(p.to_string(), json!({"result": comb_json(&p)})))
        }
        TreesCmd::Parse { tree } => {
            let t = Tree::parse(&tree)?;
            let stats = t.stats();
            Ok(Outcome::ok(
                format!(
                    "{}\nleaves {}, angles {}",
                    t.render(),
                    stats.leaves,
                    stats.angles
                ),
                json!({"tree": t, "stats": stats, "degree": t.degree()}),
            ))
        }
    }
}

fn load_matching(path: &Path) -> Result<MatchingAlgebra, Failure> {
    let s = read_file(path)?;
    with_path(path, MatchingAlgebra::from_json_str(&s))
}

fn load_rb(path: &Path) -> Result<OmegaRbAlgebra, Failure> {
    let s = read_file(path)?;
    with_path(path, OmegaRbAlgebra::from_json_str(&s))
}

fn sampling(samples: Option<usize>, seed: u64) -> Value {
    match samples {
        Some(n) => json!({"sampler": "random", "samples": n, "seed": seed}),
        None => json!({"sampler": "exhaustive", "seed": seed}),
    }
}

fn axioms_cmd(cmd: AxiomsCmd, threads: usize) -> CmdResult {
    let AxiomsCmd::Fuzz {
        structure,
        table,
        algebra,
        max_leaves,
        samples,
        seed,
    } = cmd;
    let t = load_table(&table.table)?;
    let info = sampling(samples, seed);
    let label = format!("seed {seed}");
    match structure {
        Structure::Trees => {
            let alg = FreeTridend::new(t)?;
            let bound = max_leaves.unwrap_or(7);
            let r = match samples {
                None => tree_axiom_scan(&alg, &["x", "y"], bound, threads),
                Some(n) => {
                    let pool = tree_basis(&["x", "y"], alg.table().size(), 4)?;
                    let src = TripleSource::sampled_combos(&pool, n, 2, seed);
                    check_axioms_par(&alg, &src, threads)
                }
            };
            Ok(axiom_outcome(&label, r, json!({"sampling": info})))
        }
        Structure::Words => {
            let m = match &algebra {
                Some(p) => load_matching(p)?,
                None => MatchingAlgebra::pointwise(2, &vec![tridend_core::coeff::int(1); t.size()]),
            };
            let dim = m.dim();
            let omega = t.size();
            let words = TypedWords::new(t, m)?;
            let bound = max_leaves.unwrap_or(5);
            let pool: Vec<TypedWord> = (1..=bound.saturating_sub(2).max(1))
                .flat_map(|l| tridend_core::words::words_of_length(dim, omega, l))
                .collect();
            let src = match samples {
                None => TripleSource::exhaustive(&pool, TypedWord::len, bound),
                Some(n) => TripleSource::sampled_combos(&pool, n, 2, seed),
            };
            let r = check_axioms_par(&words, &src, threads);
            Ok(axiom_outcome(&label, r, json!({"sampling": info})))
        }
        Structure::Rb => {
            let path = algebra.ok_or_else(|| usage("--algebra is required for rb"))?;
            let alg = load_rb(&path)?;
            let dim = alg.dim();
            let rb = induced_tridend(&alg, &t, false)?;
            let pool: Vec<usize> = (0..dim).collect();
            let src = TripleSource::sampled_combos(&pool, samples.unwrap_or(512), 2, seed);
            let r = check_axioms_par(&rb, &src, threads);
            let info = json!({"sampler": "random", "samples": src.len(), "seed": seed});
            Ok(axiom_outcome(&label, r, json!({"sampling": info})))
        }
        Structure::Tensor => {
            let alg = FreeTridend::new(t)?;
            let coll = Collapsed::new(&alg);
            let pool: Vec<Tagged<Tree>> = alg
                .table()
                .elements()
                .flat_map(|w| {
                    tree_basis(&["x", "y"], alg.table().size(), 3)
                        .expect("small enumeration")
                        .into_iter()
                        .map(move |elem| Tagged { omega: w, elem })
                })
                .collect();
            let src = match samples {
                None => {
                    TripleSource::exhaustive(&pool, |g| g.elem.leaves(), max_leaves.unwrap_or(6))
                }
                Some(n) => TripleSource::sampled_combos(&pool, n, 2, seed),
            };
            let r = check_axioms_par(&coll, &src, threads);
            Ok(axiom_outcome(&label, r, json!({"sampling": info})))
        }
    }
}

fn words_cmd(cmd: WordsCmd) -> CmdResult {
    match cmd {
        WordsCmd::Product {
            op,
            omega,
            table,
            algebra,
            left,
            right,
        } => {
            let m = load_matching(&algebra)?;
            let names = m.names().map(<[String]>::to_vec);
            let words = TypedWords::new(load_table(&table.table)?, m)?;
            let operand = |s: &str| -> Result<Option<TypedWord>, Failure> {
                if s.trim() == "ε" {
                    return Ok(None);
                }
                Ok(Some(TypedWord::parse(s, names.as_deref())?))
            };
            let (l, r) = (operand(&left)?, operand(&right)?);
            let p = match (&l, &r) {
                (Some(a), Some(b)) => words.word_product(
                    op.into(),
                    omega,
                    &LinComb::basis(a.clone()),
                    &LinComb::basis(b.clone()),
                )?,
                _ => words.unit_product(op.into(), omega, l.as_ref(), r.as_ref())?,
            };
            let text = if p.is_zero() {
                "0".to_string()
            } else {
                p.iter()
                    .map(|(w, c)| format!("{} {}", fmt_rational(c), w.render(names.as_deref())))
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            Ok(Outcome::ok(text, json!({"result": comb_json(&p)})))
        }
        WordsCmd::CheckMatching { algebra } => {
            let m = load_matching(&algebra)?;
            Ok(axiom_outcome("matching", check_matching(&m), json!({})))
        }
    }
}

fn rb_cmd(cmd: RbCmd, threads: usize) -> CmdResult {
    match cmd {
        RbCmd::Verify { table, algebra } => {
            let t = load_table(&table.table)?;
            let alg = load_rb(&algebra)?;
            let r = check_rb(&alg, &t)?;
            Ok(axiom_outcome("Ω-Rota-Baxter", r, json!({})))
        }
        RbCmd::Induce {
            table,
            algebra,
            check_axioms,
            relax_ets,
            samples,
            seed,
        } => {
            let t = load_table(&table.table)?;
            let alg = load_rb(&algebra)?;
            let rb = induced_tridend(&alg, &t, relax_ets)?;
            let mut text = format!(
                "induced Ω-tridendriform algebra of dimension {} over |Ω| = {}",
                alg.dim(),
                t.size()
            );
            let mut j = json!({"dim": alg.dim(), "omega": t.size(), "relax_ets": relax_ets});
            let mut passed = true;
            if check_axioms {
                let pool: Vec<usize> = (0..alg.dim()).collect();
                let src = TripleSource::sampled_combos(&pool, samples, 2, seed);
                let r = check_axioms_par(&rb, &src, threads);
                text.push_str(&format!("\naxioms (seed {seed}): {r}"));
                j["report"] = report_json(&r);
                j["seed"] = json!(seed);
                passed = r.passed();
            }
            Ok(Outcome {
                text,
                json: j,
                passed,
            })
        }
    }
}

fn tensor_cmd(cmd: TensorCmd) -> CmdResult {
    match cmd {
        TensorCmd::Phi { table } => {
            let t = load_table(&table.table)?;
            let reps = phi_properties(&t);
            let text = reps
                .iter()
                .map(|r| {
                    let mut s = format!(
                        "φ_{}: image {}/{}, surjective {}, injective {}",
                        r.which.symbol(),
                        r.image_size,
                        t.size() * t.size(),
                        r.surjective,
                        r.injective
                    );
                    if let Some(m) = r.missing {
                        s.push_str(&format!(", missing {m:?}"));
                    }
                    if let Some((p, q)) = r.collision {
                        s.push_str(&format!(", collision {p:?} {q:?}"));
                    }
                    s
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::ok(text, to_value(&reps)))
        }
        TensorCmd::Probe { mode, table, n, x } => {
            let t = load_table(&table.table)?;
            let names = gen_names(x);
            let xs: Vec<&str> = names.iter().map(String::as_str).collect();
            let mode = match mode {
                ModeArg::Generation => ProbeMode::Generation,
                ModeArg::Freeness => ProbeMode::Freeness,
            };
            let r = probe(mode, &t, &xs, n)?;
            let mut text = format!(
                "{} up to degree {}",
                if r.holds { "HOLDS" } else { "FAILS" },
                r.n_max
            );
            for d in &r.degrees {
                text.push_str(&format!(
                    "\n  degree {}: rank {} / {}",
                    d.degree, d.rank, d.target
                ));
            }
            if let Some(m) = &r.missing {
                text.push_str(&format!("\n  not generated: {m}"));
            }
            if let Some(d) = &r.dependency {
                text.push_str(&format!("\n  relation: {d} ↦ 0"));
            }
            Ok(Outcome {
                text,
                json: to_value(&r),
                passed: r.holds,
            })
        }
    }
}

fn operad_cmd(cmd: OperadCmd) -> CmdResult {
    match cmd {
        OperadCmd::Relations { table } => {
            let t = load_table(&table.table)?;
            let r = relation_space(&t);
            let text = format!("{}rank {} in dimension {}", r, r.rank, r.basis.dim());
            let rows: Vec<Value> = r
                .labels
                .iter()
                .zip(&r.rows)
                .map(|(l, v)| json!({"label": l, "relation": r.basis.render(v, false)}))
                .collect();
            Ok(Outcome::ok(
                text,
                json!({"rank": r.rank, "dim": r.basis.dim(), "relations": rows}),
            ))
        }
        OperadCmd::KoszulDual {
            table,
            emit_presentation,
            reading,
        } => {
            let t = load_table(&table.table)?;
            let k = koszul_dual(&t);
            let reading = match reading {
                ReadingArg::Printed => Reading::Printed,
                ReadingArg::Corrected => Reading::Corrected,
            };
            let listed = listed_dual_relations(&t, reading);
            let same = listed.same_span(&k.space);
            let mut text = format!(
                "dual rank {} in dimension {} ({:?} pairing{})\nlisted families: rank {}, same span as dual: {}",
                k.space.rank,
                k.space.basis.dim(),
                k.pairing,
                if k.validated { ", validated" } else { ", not validated" },
                listed.rank,
                same
            );
            if emit_presentation {
                text.push('\n');
                text.push_str(&listed.to_string());
            }
            let mut j = json!({
                "rank": k.space.rank,
                "dim": k.space.basis.dim(),
                "pairing": k.pairing,
                "validated": k.validated,
                "reading": reading,
                "listed_rank": listed.rank,
                "same_span": same,
            });
            if emit_presentation {
                j["presentation"] = listed
                    .labels
                    .iter()
                    .zip(&listed.rows)
                    .map(|(l, v)| json!({"label": l, "relation": listed.basis.render(v, true)}))
                    .collect();
            }
            Ok(Outcome {
                text: text.trim_end().to_string(),
                json: j,
                passed: same,
            })
        }
        OperadCmd::Assoc { table, a, b, c } => {
            let t = load_table(&table.table)?;
            let n = t.size();
            let co = Combo {
                a: parse_vector(&a, n, "a")?,
                b: parse_vector(&b, n, "b")?,
                c: parse_vector(&c, n, "c")?,
            };
            let v = assoc_verdicts(&t, &co);
            let text = format!(
                "associative: {}\n  scalar conditions {}, tensor systems {}, relation span {}",
                v.conditions, v.conditions, v.tensor_systems, v.operadic
            );
            Ok(Outcome {
                text,
                json: json!({"associative": v.conditions, "verdicts": v, "agree": v.agree()}),
                passed: v.conditions && v.agree(),
            })
        }
    }
}

/// Prints a line, ignoring a closed stdout.
macro_rules! emit {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

fn version_text() -> String {
    let mut s = format!("tridend {}\ncovered statements:", env!("CARGO_PKG_VERSION"));
    for c in COVERAGE {
        s.push_str(&format!("\n  - {c}"));
    }
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.version {
        if cli.json {
            emit!(
                "{}",
                json!({"version": env!("CARGO_PKG_VERSION"), "coverage": COVERAGE})
            );
        } else {
            emit!("{}", version_text());
        }
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: a subcommand is required\n\nUsage: tridend [OPTIONS] <COMMAND>\n\nFor more information, try '--help'.");
        return ExitCode::from(2);
    };
    let threads = cli.threads.max(1);
    let result = match command {
        Command::Ets(c) => ets_cmd(c),
        Command::Trees(c) => trees_cmd(c),
        Command::Axioms(c) => axioms_cmd(c, threads),
        Command::Words(c) => words_cmd(c),
        Command::Rb(c) => rb_cmd(c, threads),
        Command::Tensor(c) => tensor_cmd(c),
        Command::Operad(c) => operad_cmd(c),
    };
    match result {
        Ok(o) => {
            if cli.json {
                let mut j = o.json;
                if let Value::Object(m) = &mut j {
                    m.insert("passed".into(), json!(o.passed));
                } else {
                    j = json!({"passed": o.passed, "result": j});
                }
                emit!("{}", serde_json::to_string_pretty(&j).expect("serializes"));
            } else {
                emit!("{}", o.text);
            }
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Fail(m)) => {
            if cli.json {
                emit!("{}", json!({"passed": false, "error": m}));
            } else {
                emit!("{m}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

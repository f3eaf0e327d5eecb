//! `pbw-crystal`: batch front end for the crystal engine.
//!
//! Exit codes: 0 success / pass, 1 verification failure, 2 usage or input
//! error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pbw_crystal::bracketing::{self, SemiAdaptedOutcome};
use pbw_crystal::harness::{self, Fixture, ModelName, ModelSpec, SuiteName, SuiteParams};
use pbw_crystal::tableaux::ReadingMode;
use pbw_crystal::weyl::{self, parse_letters};
use pbw_crystal::{CrystalError, Kind, ReducedWord, RootSystem};

#[derive(Parser)]
#[command(name = "pbw-crystal", version, about = "Crystal B(∞) on Kostant partitions and marginally large tableaux")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the positive roots (with β/γ names in type D).
    Roots {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        json: bool,
    },
    /// Print the convex order of a reduced word for w_0.
    ConvexOrder {
        #[command(flatten)]
        sys: SystemArgs,
        /// Digits ("123121"), a comma list ("1,2,10"), or auto-A / auto-D.
        #[arg(long)]
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Apply an operator string such as "f2 f4 e1" (left to right).
    Apply {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value = "")]
        ops: String,
        /// JSON element to start from; highest weight if absent.
        #[arg(long = "in", conflicts_with = "vector")]
        input: Option<PathBuf>,
        /// Lusztig datum on the model's word, e.g. "2,1,4,2".
        #[arg(long)]
        vector: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Show the bracket string before each operator (on stderr).
        #[arg(long)]
        explain: bool,
        /// Also print a human-readable rendering (on stderr).
        #[arg(long)]
        pretty: bool,
    },
    /// Decide whether a word is semi-adapted, with a witness.
    CheckSemiAdapted {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        word: String,
        #[arg(long, conflicts_with = "all")]
        i: Option<usize>,
        #[arg(long)]
        all: bool,
        /// Visited-state cap; past it the verdict is "inconclusive".
        #[arg(long, default_value_t = bracketing::DEFAULT_SEARCH_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Generate the crystal graph ball of a given radius.
    Graph {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        #[arg(long, default_value_t = harness::DEFAULT_MAX_NODES)]
        max_nodes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite or check fixture files.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SystemArgs {
    #[arg(long = "type", value_parser = parse_kind)]
    kind: Kind,
    #[arg(long)]
    rank: usize,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_parser = parse_model)]
    model: ModelName,
    #[arg(long = "type", value_parser = parse_kind)]
    kind: Option<Kind>,
    #[arg(long)]
    rank: usize,
    /// Word for the PBW models; i^A / i^D (or a fixed word for E) by default.
    #[arg(long)]
    word: Option<String>,
    /// Tableau reading: middle-eastern or far-eastern.
    #[arg(long, value_parser = parse_mode)]
    mode: Option<ReadingMode>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_suite, required_unless_present_any = ["fixture", "params"])]
    suite: Option<SuiteName>,
    /// JSON file of suite parameters (flags below override it).
    #[arg(long)]
    params: Option<PathBuf>,
    /// Fixture files to check instead of a suite.
    #[arg(long, conflicts_with_all = ["suite", "params"])]
    fixture: Vec<PathBuf>,
    #[arg(long = "type", value_parser = parse_kind)]
    kind: Option<Kind>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    word: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    cases: Option<usize>,
    #[arg(long)]
    max_nodes: Option<usize>,
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

fn parse_kind(s: &str) -> std::result::Result<Kind, String> {
    s.parse().map_err(|e: CrystalError| e.to_string())
}

fn parse_model(s: &str) -> std::result::Result<ModelName, String> {
    s.parse().map_err(|e: CrystalError| e.to_string())
}

fn parse_mode(s: &str) -> std::result::Result<ReadingMode, String> {
    s.parse().map_err(|e: CrystalError| e.to_string())
}

fn parse_suite(s: &str) -> std::result::Result<SuiteName, String> {
    s.parse().map_err(|e: CrystalError| e.to_string())
}

enum Failure {
    /// Bad input; exit 2.
    Usage(String),
    /// A check failed; exit 1.
    Verification(String),
}

impl From<CrystalError> for Failure {
    fn from(e: CrystalError) -> Self {
        match e {
            CrystalError::Invariant(msg) => Failure::Verification(format!("internal error: {msg}")),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn io_err(path: &std::path::Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn read_json(path: &std::path::Path) -> std::result::Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&PathBuf>) -> CmdResult {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_err(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn word_letters(rs: &RootSystem, word: &str) -> pbw_crystal::Result<Vec<usize>> {
    match word.trim() {
        "auto" | "auto-A" | "auto-D" => {
            let w = harness::canonical_word(rs)?;
            let wanted = match word.trim() {
                "auto-A" => Some(Kind::A),
                "auto-D" => Some(Kind::D),
                _ => None,
            };
            if let Some(k) = wanted.filter(|&k| k != rs.kind()) {
                return Err(CrystalError::WrongKind {
                    expected: k,
                    found: rs.kind(),
                });
            }
            Ok(w.letters().to_vec())
        }
        s => {
            let letters = parse_letters(s)?;
            if letters.is_empty() {
                return Err(CrystalError::Parse("empty word".into()));
            }
            Ok(letters)
        }
    }
}

fn parse_word(rs: &RootSystem, word: &str) -> pbw_crystal::Result<ReducedWord> {
    ReducedWord::longest(rs, word_letters(rs, word)?)
}

impl ModelArgs {
    fn spec(&self) -> pbw_crystal::Result<ModelSpec> {
        let kind = match (self.model, self.kind) {
            (ModelName::TableauxA, None) => Kind::A,
            (ModelName::TableauxD, None) => Kind::D,
            (_, Some(k)) => k,
            (_, None) => return Err(CrystalError::Parse("--type is required for PBW models".into())),
        };
        let word = match &self.word {
            Some(w) => Some(word_letters(&RootSystem::new(kind, self.rank)?, w)?),
            None => None,
        };
        Ok(ModelSpec {
            model: self.model,
            kind,
            rank: self.rank,
            word,
            mode: self.mode,
        })
    }
}

fn cmd_roots(sys: &SystemArgs, as_json: bool) -> CmdResult {
    let rs = RootSystem::new(sys.kind, sys.rank)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for (k, r) in rs.positive_roots().iter().enumerate() {
        let name = if rs.kind() == Kind::D { Some(rs.name_root_d(r)?) } else { None };
        rows.push(json!({"index": k + 1, "root": r, "label": r.label(), "height": r.height(), "name": name.map(|n| n.to_string())}));
        text.push_str(&format!("{:>3}  {:<12} {:?}", k + 1, r.label(), r.coeffs()));
        if let Some(n) = name {
            text.push_str(&format!("  {n}"));
        }
        text.push('\n');
    }
    text.push_str(&format!("{} positive roots\n", rs.num_positive()));
    if as_json {
        text = format!("{}\n", serde_json::to_string_pretty(&rows).expect("json"));
    }
    emit(&text, None)
}

fn cmd_convex_order(sys: &SystemArgs, word: &str, as_json: bool) -> CmdResult {
    let rs = RootSystem::new(sys.kind, sys.rank)?;
    let w = parse_word(&rs, word)?;
    let order = weyl::convex_order(&rs, &w)?;
    if as_json {
        let v = json!({"word": w.letters(), "roots": order.roots()});
        return emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("json")), None);
    }
    let labels: Vec<String> = order.roots().iter().map(|r| r.label()).collect();
    emit(&format!("word {w}\n{}\n", labels.join(" ≺ ")), None)
}

#[allow(clippy::too_many_arguments)]
fn cmd_apply(
    model_args: &ModelArgs,
    ops: &str,
    input: Option<&PathBuf>,
    vector: Option<&str>,
    out: Option<&PathBuf>,
    explain: bool,
    pretty: bool,
) -> CmdResult {
    let spec = model_args.spec()?;
    let model = spec.build()?;
    let ops = harness::parse_ops(ops)?;
    let start = match (input, vector) {
        (Some(path), _) => read_json(path)?,
        (None, Some(v)) => {
            let word = match &spec.word {
                Some(w) => w.clone(),
                None => harness::canonical_word(model.rs())?.letters().to_vec(),
            };
            let vector = parse_letters(&v.replace(' ', ","))?;
            json!({"word": word, "vector": vector})
        }
        (None, None) => model.highest_json(),
    };
    let mut cur = Some(model.normalize(&start)?);
    for op in &ops {
        let Some(x) = cur.as_ref() else { break };
        if explain {
            let i = match *op {
                harness::Op::F(i) | harness::Op::E(i) => i,
            };
            match model.explain_json(x, i)? {
                Some(text) => eprintln!("{op}:\n{text}\n"),
                None => eprintln!("{op}: no bracket rendering for {}", model.model_name()),
            }
        }
        cur = model.apply(x, std::slice::from_ref(op))?;
    }
    let text = match &cur {
        Some(v) => {
            if pretty {
                eprintln!("{}", model.pretty_json(v)?);
            }
            serde_json::to_string(v).expect("json")
        }
        None => "null".to_string(),
    };
    emit(&format!("{text}\n"), out)
}

fn cmd_check_semi_adapted(sys: &SystemArgs, word: &str, i: Option<usize>, all: bool, cap: usize, as_json: bool) -> CmdResult {
    let rs = RootSystem::new(sys.kind, sys.rank)?;
    let w = parse_word(&rs, word)?;
    let nodes: Vec<usize> = match (i, all) {
        (Some(i), _) => {
            rs.check_node(i)?;
            vec![i]
        }
        (None, true) => (1..=rs.rank()).collect(),
        (None, false) => return Err(Failure::Usage("give --i N or --all".into())),
    };
    let mut every = true;
    let mut report = Vec::new();
    let mut text = String::new();
    for i in nodes {
        let out = bracketing::is_semi_adapted_capped(&rs, &w, i, cap)?;
        let line = match &out {
            SemiAdaptedOutcome::Certified(wit) => {
                let moves: Vec<String> = wit.moves.iter().map(|m| m.to_string()).collect();
                let end = bracketing::validate_witness(&rs, &w, wit)?;
                format!("i={i}: yes ({} moves -> {end}) {}", moves.len(), moves.join(" "))
            }
            SemiAdaptedOutcome::NotSemiAdapted { explored } => {
                every = false;
                format!("i={i}: no (search exhausted after {explored} states)")
            }
            SemiAdaptedOutcome::Inconclusive { explored } => {
                every = false;
                format!("i={i}: inconclusive (cap {cap} reached, {explored} states)")
            }
        };
        text.push_str(line.trim_end());
        text.push('\n');
        report.push(json!({"i": i, "outcome": out}));
    }
    if as_json {
        text = format!("{}\n", serde_json::to_string_pretty(&json!({"word": w.letters(), "results": report})).expect("json"));
    }
    emit(&text, None)?;
    if every {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{w} is not certified semi-adapted for every requested i")))
    }
}

fn cmd_graph(model_args: &ModelArgs, depth: usize, format: GraphFormat, max_nodes: usize, out: Option<&PathBuf>) -> CmdResult {
    let model = model_args.spec()?.build()?;
    let g = model.ball(depth, max_nodes)?;
    let text = match format {
        GraphFormat::Dot => g.to_dot(),
        GraphFormat::Json => format!("{}\n", serde_json::to_string_pretty(&g).expect("json")),
    };
    emit(&text, out)?;
    if let Some(why) = &g.truncation {
        eprintln!("warning: {why}");
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let mut reports = Vec::new();
    if !args.fixture.is_empty() {
        for path in &args.fixture {
            let fx: Fixture = serde_json::from_value(read_json(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            reports.push(harness::check_fixture(&fx)?);
        }
    } else {
        let mut params = match &args.params {
            Some(path) => serde_json::from_value(read_json(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
            None => SuiteParams::default(),
        };
        let suite = match (args.suite, &args.params) {
            (Some(s), _) => s,
            (None, Some(path)) => {
                let v = read_json(path)?;
                let name = v.get("suite").and_then(Value::as_str).ok_or_else(|| Failure::Usage("params file names no suite".into()))?;
                name.parse()?
            }
            (None, None) => return Err(Failure::Usage("give --suite or --fixture".into())),
        };
        if let Some(k) = args.kind {
            params.kind = k;
        }
        if let Some(r) = args.rank {
            params.rank = r;
        }
        if let Some(d) = args.depth {
            params.depth = d;
        }
        if let Some(s) = args.seed {
            params.seed = s;
        }
        if let Some(c) = args.cases {
            params.cases = c;
        }
        if let Some(m) = args.max_nodes {
            params.max_nodes = m;
        }
        if let Some(c) = args.cap {
            params.search_cap = c;
        }
        if let Some(w) = &args.word {
            params.word = Some(word_letters(&RootSystem::new(params.kind, params.rank)?, w)?);
        }
        reports.push(harness::run_suite(suite, &params)?);
    }
    let passed = reports.iter().all(|r| r.passed);
    let body = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(&reports)
    }
    .expect("json");
    emit(&format!("{body}\n"), None)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification("verification failed".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Roots { sys, json } => cmd_roots(sys, *json),
        Command::ConvexOrder { sys, word, json } => cmd_convex_order(sys, word, *json),
        Command::Apply {
            model,
            ops,
            input,
            vector,
            out,
            explain,
            pretty,
        } => cmd_apply(model, ops, input.as_ref(), vector.as_deref(), out.as_ref(), *explain, *pretty),
        Command::CheckSemiAdapted {
            sys,
            word,
            i,
            all,
            cap,
            json,
        } => cmd_check_semi_adapted(sys, word, *i, *all, *cap, *json),
        Command::Graph {
            model,
            depth,
            format,
            max_nodes,
            out,
        } => cmd_graph(model, *depth, *format, *max_nodes, out.as_ref()),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("pbw-crystal: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("pbw-crystal: {msg}");
            ExitCode::from(2)
        }
    }
}

//! Command-line front end: proving, membership, translations, enumeration
//! and the language-equivalence checks.
//!
//! Exit codes: 0 positive verdict, 1 negative verdict, 2 usage or I/O
//! error, 3 search budget exceeded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use lpbvass::bvassam::{DeriveError, DerivationFile, EngineConfig, LBvassam, DEFAULT_MAX_EXPANSIONS};
use lpbvass::calculus::{parse_sequent, ProveError, Prover, ProverConfig};
use lpbvass::constructions::{
    check_theorem_bvass_to_lp, check_theorem_lp_to_bvass, lbam_of, lpg_division_only, lpg_of, ConstructionError,
    EquivalenceReport, HarnessConfig, LanguageBound,
};
use lpbvass::grammar::{self, GrammarError, LpGrammar, MultisetWord, Recognizer};
use lpbvass::quadratic::{self, QuadraticError};
use lpbvass::Vector;

/// `println!` that ignores a closed stdout (e.g. when piped into `head`).
macro_rules! say {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

macro_rules! say_raw {
    ($($arg:tt)*) => {{
        let _ = write!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "lpbvass", version, about = "LP sequents, LP-grammars and linearly-restricted BVASSAM")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include full proof or derivation trees.
    #[arg(long, global = true)]
    witness: bool,
    /// Search budget for both the prover and the derivation engine.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_EXPANSIONS)]
    max_nodes: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an LP sequent such as "p/q, q -> p".
    Prove { sequent: String },
    /// Decide membership of a multiset word (e.g. "a,a,b") or a Parikh vector.
    GrammarMember {
        grammar: PathBuf,
        word: Option<String>,
        #[arg(long, conflicts_with = "word")]
        vector: Option<Vector>,
    },
    /// Decide membership of a visible vector (e.g. "2,1") in a system's language.
    SystemMember {
        system: PathBuf,
        #[arg(long)]
        vector: Vector,
    },
    /// Translate between grammars and systems.
    Convert {
        #[command(subcommand)]
        what: Convert,
    },
    /// List a language within a bound.
    Enumerate {
        #[command(subcommand)]
        what: Enumerate,
    },
    /// Compare languages across a translation.
    Check {
        #[command(subcommand)]
        what: Check,
    },
    /// Built-in examples.
    Example {
        #[command(subcommand)]
        what: Example,
    },
}

#[derive(Subcommand)]
enum Convert {
    /// LP-grammar to lBVASSAM.
    LpToSys {
        grammar: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// lBVASSAM to LP-grammar.
    SysToLp {
        system: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// lBVASSAM to a product-free LP-grammar.
    SysToLpDivisionOnly {
        system: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Enumerate {
    Grammar {
        grammar: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    System {
        system: PathBuf,
        /// Componentwise upper bound on visible vectors.
        #[arg(long)]
        cap: Vector,
    },
}

#[derive(Subcommand)]
enum Check {
    /// L(G) against the Parikh image of L(LPG(G)).
    BvassToLp {
        system: PathBuf,
        #[arg(long, conflicts_with = "cap")]
        max_size: Option<u32>,
        #[arg(long)]
        cap: Option<Vector>,
    },
    /// The Parikh image of L(G) against L(lBAM(G)).
    LpToBvass {
        grammar: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: u32,
    },
    /// The quadratic system against l <= n^2.
    Quadratic {
        #[arg(long, default_value_t = 5)]
        n_max: u32,
        #[arg(long, default_value_t = 25)]
        l_max: u32,
    },
}

#[derive(Subcommand)]
enum Example {
    /// Print the quadratic system, or with --n and --l its typical derivation.
    Quadratic {
        #[arg(long, requires = "l")]
        n: Option<u32>,
        #[arg(long, requires = "n")]
        l: Option<u32>,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<ProveError> for Failure {
    fn from(e: ProveError) -> Self {
        Failure::Budget(e.to_string())
    }
}

impl From<DeriveError> for Failure {
    fn from(e: DeriveError) -> Self {
        match e {
            DeriveError::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            DeriveError::System(_) => Failure::Usage(e.to_string()),
        }
    }
}

impl From<GrammarError> for Failure {
    fn from(e: GrammarError) -> Self {
        match e {
            GrammarError::Prove(p) => p.into(),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Derive(d) => d.into(),
            ConstructionError::Grammar(g) => g.into(),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<QuadraticError> for Failure {
    fn from(e: QuadraticError) -> Self {
        match e {
            QuadraticError::Derive(d) => d.into(),
            e => Failure::Usage(e.to_string()),
        }
    }
}

/// A verdict: `true` maps to exit 0, `false` to exit 1.
type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            if cli.json {
                say!("{}", json!({ "error": f.message(), "exit_code": f.code() }));
            }
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_grammar(path: &Path) -> Result<LpGrammar, Failure> {
    LpGrammar::from_json(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_system(path: &Path) -> Result<LBvassam, Failure> {
    LBvassam::from_json(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            say!("{text}");
            Ok(())
        }
    }
}

fn print_json(v: &Value) {
    say!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn run(cli: &Cli) -> Outcome {
    let prover = ProverConfig { max_expansions: cli.max_nodes };
    let engine = EngineConfig { max_expansions: cli.max_nodes };
    let harness = HarnessConfig { engine, prover };
    match &cli.command {
        Command::Prove { sequent } => {
            let s = parse_sequent(sequent)
                .map_err(|e| Failure::Usage(format!("{sequent:?} at offset {}: {}", e.position, e.message)))?;
            let proof = Prover::new(prover).prove(&s)?;
            if cli.json {
                let mut out = json!({ "sequent": s.to_string(), "provable": proof.is_some() });
                if let (true, Some(p)) = (cli.witness, &proof) {
                    out["proof"] = serde_json::to_value(p).expect("proofs serialize");
                }
                print_json(&out);
            } else {
                say!("{}", if proof.is_some() { "provable" } else { "not provable" });
                if let (true, Some(p)) = (cli.witness, &proof) {
                    say_raw!("{p}");
                }
            }
            Ok(proof.is_some())
        }
        Command::GrammarMember { grammar: path, word, vector } => {
            let g = load_grammar(path)?;
            let v = match (word, vector) {
                (Some(w), _) => grammar::parikh(&w.parse::<MultisetWord>()?, g.alphabet())?,
                (None, Some(v)) => v.clone(),
                (None, None) => return Err(Failure::Usage("give a word or --vector".into())),
            };
            let witness = Recognizer::new(&g, prover).membership_vector(&v)?;
            if cli.json {
                let mut out = json!({ "vector": v, "member": witness.is_some() });
                if let (true, Some(w)) = (cli.witness, &witness) {
                    out["assignment"] = json!(w.assignment);
                    out["proof"] = serde_json::to_value(&w.proof).expect("proofs serialize");
                }
                print_json(&out);
            } else {
                say!("{} {}", v, if witness.is_some() { "is a member" } else { "is not a member" });
                if let (true, Some(w)) = (cli.witness, &witness) {
                    for (sym, t) in &w.assignment {
                        say!("  {sym} : {t}");
                    }
                    say_raw!("{}", w.proof);
                }
            }
            Ok(witness.is_some())
        }
        Command::SystemMember { system, vector } => {
            let g = load_system(system)?;
            let tree = g.member_with(vector, engine)?;
            let bound = g.bound() as u64 * vector.size();
            if cli.json {
                let mut out = json!({
                    "vector": vector,
                    "member": tree.is_some(),
                    "size_bound": bound,
                    "size": tree.as_ref().map(|t| t.size()),
                });
                if let (true, Some(t)) = (cli.witness, &tree) {
                    out["derivation"] = serde_json::to_value(DerivationFile::from_tree(g.system(), t)).expect("serializes");
                }
                print_json(&out);
            } else {
                match &tree {
                    Some(t) => say!("{vector} is a member (derivation size {}, bound {bound})", t.size()),
                    None => say!("{vector} is not a member (size bound {bound})"),
                }
                if let (true, Some(t)) = (cli.witness, &tree) {
                    say_raw!("{t}");
                }
            }
            Ok(tree.is_some())
        }
        Command::Convert { what } => {
            match what {
                Convert::LpToSys { grammar, output } => emit(&lbam_of(&load_grammar(grammar)?)?.to_json(), output.as_deref())?,
                Convert::SysToLp { system, output } => emit(&lpg_of(&load_system(system)?)?.to_json(), output.as_deref())?,
                Convert::SysToLpDivisionOnly { system, output } => {
                    emit(&lpg_division_only(&load_system(system)?)?.to_json(), output.as_deref())?
                }
            }
            Ok(true)
        }
        Command::Enumerate { what } => {
            let members: Vec<String> = match what {
                Enumerate::Grammar { grammar, max_len } => {
                    let g = load_grammar(grammar)?;
                    grammar::enumerate_language_with(&g, *max_len, prover)?.iter().map(|w| w.to_string()).collect()
                }
                Enumerate::System { system, cap } => {
                    let g = load_system(system)?;
                    g.enumerate_language_with(cap, engine)?.iter().map(|v| v.to_string()).collect()
                }
            };
            if cli.json {
                print_json(&json!({ "members": members }));
            } else {
                for m in &members {
                    say!("{m}");
                }
            }
            Ok(true)
        }
        Command::Check { what } => match what {
            Check::BvassToLp { system, max_size, cap } => {
                let g = load_system(system)?;
                let bound = match cap {
                    Some(c) => LanguageBound::Cap(c.clone()),
                    None => LanguageBound::MaxSize(max_size.unwrap_or(4)),
                };
                report(cli, check_theorem_bvass_to_lp(&system.display().to_string(), &g, &bound, harness)?)
            }
            Check::LpToBvass { grammar, max_len } => {
                let g = load_grammar(grammar)?;
                report(cli, check_theorem_lp_to_bvass(&grammar.display().to_string(), &g, *max_len, harness)?)
            }
            Check::Quadratic { n_max, l_max } => {
                let r = quadratic::check_language(*n_max, *l_max, engine)?;
                if cli.json {
                    print_json(&serde_json::to_value(&r).expect("serializes"));
                } else {
                    say!("{} points checked, {} disagreements", r.checked, r.disagreements.len());
                    for p in &r.disagreements {
                        say!("  (l, n) = ({}, {}): engine {}, l <= n^2 {}", p.l, p.n, p.member, p.expected);
                    }
                }
                Ok(r.agree)
            }
        },
        Command::Example { what: Example::Quadratic { n, l } } => {
            let g = quadratic::build_quadratic();
            let (Some(n), Some(l)) = (n, l) else {
                say!("{}", g.to_json());
                return Ok(true);
            };
            let (li, lpi) = quadratic::recipe(*n, *l)?;
            let tree = quadratic::typical_derivation(*n, &li, &lpi)?;
            if cli.json {
                print_json(&json!({
                    "n": n,
                    "l": l,
                    "rounds": li,
                    "size": tree.size(),
                    "derivation": DerivationFile::from_tree(g.system(), &tree),
                }));
            } else {
                say!("(l, n) = ({l}, {n}): rounds {li:?}, derivation size {}", tree.size());
                say_raw!("{tree}");
            }
            Ok(true)
        }
    }
}

fn report(cli: &Cli, r: EquivalenceReport) -> Outcome {
    if cli.json {
        print_json(&serde_json::to_value(&r).expect("serializes"));
    } else {
        say!(
            "{}: {} candidates, {} members, {}",
            r.instance,
            r.checked,
            r.members.len(),
            if r.agree { "languages agree" } else { "languages differ" }
        );
        for c in &r.counterexamples {
            say!("  {}: source {}, target {}", c.vector, c.in_source, c.in_target);
        }
    }
    Ok(r.agree)
}

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rpq::regex::parse_regex;
use rpq::sat::{build_reduction, SatInstance};
use rpq::semantics::{evaluate, tuple_membership, tuple_multiplicity, walk_membership};
use rpq::topo::{coding_expression, coding_expression_no_union, encode_word, encode_word_no_union};
use rpq::{Automaton, Database, Error, Guards, Query, RunDatabase, SemanticsMode, VertexId};

#[derive(Parser)]
#[command(name = "rpq", version, about = "Regular path queries over edge-labelled multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the answers, printing `<multiplicity>\t<walk>` lines.
    Eval {
        #[command(flatten)]
        query: QueryArgs,
        #[command(flatten)]
        ends: OptionalEnds,
        /// Print the operation count between consecutive answers on stderr.
        #[arg(long)]
        trace_delay: bool,
    },
    /// Decide whether some answer goes from --from to --to (exit 1 if not).
    Member {
        #[command(flatten)]
        query: QueryArgs,
        #[command(flatten)]
        ends: Ends,
    },
    /// Total multiplicity of the answers from --from to --to.
    Count {
        #[command(flatten)]
        query: QueryArgs,
        #[command(flatten)]
        ends: Ends,
    },
    /// Decide whether a given walk is an answer (exit 1 if not).
    WalkMember {
        #[command(flatten)]
        query: QueryArgs,
        /// The walk, as `v0 -e0-> v1 -e1-> ... vk`.
        #[arg(long)]
        walk: String,
    },
    /// Build the database and walk of the SAT reduction for a DIMACS file.
    GenSat {
        /// 3-CNF formula in DIMACS format.
        cnf: PathBuf,
        /// Write the database here instead of stdout.
        #[arg(long)]
        graph_out: Option<PathBuf>,
        /// Write the walk here instead of stdout.
        #[arg(long)]
        walk_out: Option<PathBuf>,
    },
    /// Encode a word through the topological coding of an automaton.
    Encode {
        /// Trim automaton file.
        #[arg(long)]
        automaton: PathBuf,
        /// Use the coding by an expression without union under a star.
        #[arg(long)]
        no_union: bool,
        /// Print the coding expression before the encoded word.
        #[arg(long)]
        expression: bool,
        /// Letters of the word; none for the empty word.
        word: Vec<String>,
    },
    /// Print the run database of a graph and a query in the graph format.
    ProductDump {
        #[command(flatten)]
        query: QueryArgs,
    },
}

#[derive(Args)]
struct QueryArgs {
    /// Graph file.
    #[arg(long)]
    graph: PathBuf,
    /// Regular expression.
    #[arg(long, conflicts_with = "automaton", required_unless_present = "automaton")]
    query: Option<String>,
    /// Automaton file, instead of --query.
    #[arg(long)]
    automaton: Option<PathBuf>,
    #[arg(long, default_value = "simple-run")]
    sem: SemanticsMode,
    /// Maximum walk length; required to evaluate under walk semantics.
    #[arg(long)]
    max_length: Option<usize>,
    #[arg(long, default_value_t = Guards::default().max_exhaustive_vertices)]
    max_exhaustive_vertices: usize,
    #[arg(long, default_value_t = Guards::default().max_steps)]
    max_steps: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct Ends {
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
}

#[derive(Args)]
struct OptionalEnds {
    #[arg(long, requires = "to")]
    from: Option<String>,
    #[arg(long, requires = "from")]
    to: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A failure together with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::GuardExceeded(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

struct Loaded {
    db: Database,
    query: Query,
    mode: SemanticsMode,
    guards: Guards,
    format: Format,
}

impl QueryArgs {
    fn load(&self) -> CliResult<Loaded> {
        let db = Database::parse(&read(&self.graph)?)?;
        let query = match (&self.query, &self.automaton) {
            (Some(text), _) => Query::Regex(parse_regex(text)?),
            (None, Some(path)) => Query::Automaton(Automaton::parse(&read(path)?)?),
            (None, None) => unreachable!("clap requires one of --query and --automaton"),
        };
        let symbols: Vec<String> = match &query {
            Query::Regex(r) => r.symbols().into_iter().collect(),
            Query::Automaton(a) => a.transitions().iter().map(|t| t.label.clone()).collect(),
        };
        let mut missing: Vec<&String> = symbols.iter().filter(|x| !db.alphabet().contains(*x)).collect();
        missing.sort();
        missing.dedup();
        if !missing.is_empty() {
            let list: Vec<&str> = missing.iter().map(|s| s.as_str()).collect();
            eprintln!("warning: query labels absent from the graph: {}", list.join(", "));
        }
        let guards = Guards {
            max_exhaustive_vertices: self.max_exhaustive_vertices,
            max_walk_length: self.max_length,
            max_steps: self.max_steps,
        };
        Ok(Loaded {
            db,
            query,
            mode: self.sem,
            guards,
            format: self.format,
        })
    }
}

fn endpoints(db: &Database, from: &str, to: &str) -> CliResult<(VertexId, VertexId)> {
    Ok((db.require_vertex(from)?, db.require_vertex(to)?))
}

#[derive(Serialize)]
struct Answer<'a> {
    multiplicity: u64,
    walk: &'a str,
}

fn print_json<T: Serialize>(out: &mut impl Write, value: &T) -> CliResult<()> {
    let line = serde_json::to_string(value).expect("plain data serializes");
    writeln!(out, "{line}")?;
    Ok(())
}

fn cmd_eval(args: &QueryArgs, ends: &OptionalEnds, trace_delay: bool) -> CliResult<ExitCode> {
    let l = args.load()?;
    let ends = match (&ends.from, &ends.to) {
        (Some(s), Some(t)) => Some(endpoints(&l.db, s, t)?),
        _ => None,
    };
    let mut answers = evaluate(&l.db, &l.query, l.mode, ends, &l.guards)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut last_ops = 0;
    while let Some((w, m)) = answers.next() {
        if trace_delay {
            let ops = answers.operations();
            eprintln!("delay\t{}", ops - last_ops);
            last_ops = ops;
        }
        let walk = l.db.format_walk(&w);
        match l.format {
            Format::Text => writeln!(out, "{m}\t{walk}")?,
            Format::Json => print_json(&mut out, &Answer { multiplicity: m, walk: &walk })?,
        }
        out.flush()?;
    }
    Ok(ExitCode::SUCCESS)
}

fn print_decision(format: Format, key: &str, value: bool) -> CliResult<ExitCode> {
    match format {
        Format::Text => println!("{value}"),
        Format::Json => print_json(&mut io::stdout(), &serde_json::json!({ key: value }))?,
    }
    Ok(if value { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_member(args: &QueryArgs, ends: &Ends) -> CliResult<ExitCode> {
    let l = args.load()?;
    let (s, t) = endpoints(&l.db, &ends.from, &ends.to)?;
    let found = tuple_membership(&l.db, &l.query, s, t, l.mode, &l.guards)?;
    print_decision(l.format, "member", found)
}

fn cmd_count(args: &QueryArgs, ends: &Ends) -> CliResult<ExitCode> {
    let l = args.load()?;
    let (s, t) = endpoints(&l.db, &ends.from, &ends.to)?;
    let n = tuple_multiplicity(&l.db, &l.query, s, t, l.mode, &l.guards)?;
    match l.format {
        Format::Text => println!("{n}"),
        Format::Json => print_json(&mut io::stdout(), &serde_json::json!({ "multiplicity": n }))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_walk_member(args: &QueryArgs, walk: &str) -> CliResult<ExitCode> {
    let l = args.load()?;
    let w = l.db.parse_walk(walk)?;
    let found = walk_membership(&l.db, &l.query, &w, l.mode, &l.guards)?;
    print_decision(l.format, "member", found)
}

fn cmd_gen_sat(cnf: &Path, graph_out: Option<&Path>, walk_out: Option<&Path>) -> CliResult<ExitCode> {
    let instance = SatInstance::parse_dimacs(&read(cnf)?)?;
    let reduction = build_reduction(&instance);
    let graph = reduction.database.to_text();
    let walk = reduction.database.format_walk(&reduction.walk) + "\n";
    match graph_out {
        Some(p) => write_file(p, &graph)?,
        None => print!("{graph}"),
    }
    match walk_out {
        Some(p) => write_file(p, &walk)?,
        None => print!("# walk: {walk}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_encode(path: &Path, no_union: bool, expression: bool, word: &[String]) -> CliResult<ExitCode> {
    let a = Automaton::parse(&read(path)?)?;
    let (r, encoded) = if no_union {
        (coding_expression_no_union(&a)?, encode_word_no_union(&a, word)?)
    } else {
        let (r, witness) = coding_expression(&a)?;
        let encoded = encode_word(&witness, word)?;
        (r, encoded)
    };
    if expression {
        println!("{r}");
    }
    println!("{}", encoded.join(" "));
    Ok(ExitCode::SUCCESS)
}

fn cmd_product_dump(args: &QueryArgs) -> CliResult<ExitCode> {
    let l = args.load()?;
    print!("{}", RunDatabase::build(&l.db, &l.query.automaton()).dump());
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match &cli.command {
        Command::Eval {
            query,
            ends,
            trace_delay,
        } => cmd_eval(query, ends, *trace_delay),
        Command::Member { query, ends } => cmd_member(query, ends),
        Command::Count { query, ends } => cmd_count(query, ends),
        Command::WalkMember { query, walk } => cmd_walk_member(query, walk),
        Command::GenSat {
            cnf,
            graph_out,
            walk_out,
        } => cmd_gen_sat(cnf, graph_out.as_deref(), walk_out.as_deref()),
        Command::Encode {
            automaton,
            no_union,
            expression,
            word,
        } => cmd_encode(automaton, *no_union, *expression, word),
        Command::ProductDump { query } => cmd_product_dump(query),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

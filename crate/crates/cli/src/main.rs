use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use recon_bench::{parse_int_list, run_experiment, summarize, write_summary, BenchError, CsvSink, ExperimentConfig};
use recon_core::overlap::recon_overlap_with;
use recon_core::{
    build_graph, format_word, is_member, min_exclusion_k, order_columns, parse_word, perfect_point,
    point_of_no_information, recon_2sat, recon_brute, recon_greedy, sparsity_bound, ColumnOrdering, Engine,
    Error, Exclusion, HittingSetInstance, Limits, Membership, OverlapOptions, ReconReport, Search, StringSet,
};

#[derive(Parser)]
#[command(name = "recon", version, about = "Reconstruct string sets from their k-way projections")]
struct Cli {
    /// Alphabet size of the input (default: largest digit + 1, at least 2).
    #[arg(long, global = true)]
    alphabet: Option<u8>,
    /// Worker threads for brute-force enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Largest candidate space an exhaustive search may walk.
    #[arg(long, global = true, default_value_t = Limits::default().max_enumeration)]
    max_enumeration: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReconEngine {
    Overlap,
    Greedy,
    Brute,
    /// 2-SAT enumeration (binary data, k = 2).
    Twosat,
}

#[derive(Clone, Copy, ValueEnum)]
enum PointEngine {
    Overlap,
    Greedy,
    Brute,
}

impl From<PointEngine> for Engine {
    fn from(e: PointEngine) -> Self {
        match e {
            PointEngine::Overlap => Engine::Overlap,
            PointEngine::Greedy => Engine::Greedy,
            PointEngine::Brute => Engine::Brute,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print Recon_k(S), one string per line, then `extras=E`.
    Recon {
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum, default_value = "overlap")]
        engine: ReconEngine,
        file: PathBuf,
    },
    /// Least k with Recon_k(S) = S.
    PerfectPoint {
        #[arg(long, value_enum, default_value = "overlap")]
        engine: PointEngine,
        /// Bisect over k instead of ascending.
        #[arg(long)]
        binary_search: bool,
        file: PathBuf,
    },
    /// Largest k at which every k-window projection is complete.
    NoinfoPoint { file: PathBuf },
    /// Whether x is in Recon_k(S); otherwise print an excluding window.
    Contains {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        x: String,
        file: PathBuf,
    },
    /// Least k whose reconstruction excludes x.
    MinK {
        #[arg(short)]
        x: String,
        file: PathBuf,
    },
    /// Majority-string witness for the sparsity lower bound.
    SparsityBound { file: PathBuf },
    /// Solve a hitting-set instance (`n m` header, one set per line).
    HsSolve {
        /// Budget for the bounded search.
        #[arg(long)]
        k: Option<usize>,
        /// Bounded search tree of depth k.
        #[arg(long, requires = "k", conflicts_with = "approx")]
        fpt: bool,
        /// The d-approximation.
        #[arg(long)]
        approx: bool,
        file: PathBuf,
    },
    /// Run the timing harness and write CSV.
    Bench(BenchArgs),
    /// Random binary dataset in draw order.
    Gen {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Adjacency listing of the overlap graph.
    GraphDump {
        #[arg(short)]
        k: usize,
        /// Keep the input column order.
        #[arg(long)]
        identity: bool,
        /// Print the dense 0/1 adjacency matrix instead.
        #[arg(long)]
        matrix: bool,
        file: PathBuf,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// TOML experiment file; flags below are ignored when given.
    #[arg(long)]
    config: Option<PathBuf>,
    /// String lengths, e.g. `14,16` or `10-20`.
    #[arg(long = "n", default_value = "10")]
    ns: String,
    #[arg(long = "m", default_value = "30")]
    ms: String,
    #[arg(long = "k", default_value = "5")]
    ks: String,
    /// Trials per cell (default 30, or 10 when m >= 500).
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated engines.
    #[arg(long, default_value = "brute,greedy,overlap")]
    engines: String,
    /// Output file (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write per-cell medians to this file.
    #[arg(long)]
    summary: Option<PathBuf>,
}

enum Failure {
    Core(Error),
    Bench(BenchError),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Core(e) => Failure::Core(e),
            other => Failure::Bench(other),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::Guard(_)) => 3,
            Failure::Core(Error::Unsupported(_)) => 4,
            _ => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Bench(e) => e.to_string(),
            Failure::Io(e) => e.clone(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn join(items: impl IntoIterator<Item = usize>) -> String {
    items.into_iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

struct Ctx {
    alphabet: Option<u8>,
    limits: Limits,
}

impl Ctx {
    fn dataset(&self, path: &Path) -> Result<StringSet, Failure> {
        Ok(StringSet::parse(&read_input(path)?, self.alphabet)?)
    }

    fn query(&self, set: &StringSet, x: &str) -> Result<Vec<u8>, Failure> {
        let word = parse_word(x)?;
        set.check_word(&word)?;
        Ok(word)
    }
}

fn recon(ctx: &Ctx, set: &StringSet, k: usize, engine: ReconEngine) -> Result<ReconReport, Failure> {
    Ok(match engine {
        ReconEngine::Brute => recon_brute(set, k, ctx.limits)?,
        ReconEngine::Greedy => recon_greedy(set, k, None)?.0,
        ReconEngine::Overlap => {
            let opts = OverlapOptions { limits: ctx.limits, ..OverlapOptions::default() };
            recon_overlap_with(set, k, &opts)?
        }
        ReconEngine::Twosat => {
            if k != 2 {
                return Err(Error::Input(format!("the twosat engine needs k = 2, got {k}")).into());
            }
            let mut words = recon_2sat(set)?;
            words.sort_unstable();
            let members = StringSet::new(set.n(), set.alphabet(), words)?;
            let extras = members.len() - set.len();
            ReconReport { k, members, extras }
        }
    })
}

fn run_bench(ctx: &Ctx, args: &BenchArgs, out: &mut dyn Write) -> Outcome {
    let cfg = match &args.config {
        Some(path) => ExperimentConfig::from_toml(&read_input(path)?)?,
        None => {
            let engines = args
                .engines
                .split(',')
                .map(|s| s.trim().parse::<Engine>())
                .collect::<Result<Vec<_>, _>>()?;
            let mut cfg = ExperimentConfig::new(
                parse_int_list(&args.ns)?,
                parse_int_list(&args.ms)?,
                parse_int_list(&args.ks)?,
                args.seed,
            );
            cfg.trials = args.trials;
            cfg.engines = engines;
            cfg
        }
    };
    let target: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(&mut *out),
    };
    let mut sink = CsvSink::new(target)?;
    let mut records = Vec::new();
    run_experiment(&cfg, ctx.limits, |rec| {
        if let Some(err) = &rec.error {
            eprintln!("n={} m={} k={} trial={} {}: {err}", rec.n, rec.m, rec.k, rec.trial, rec.engine);
        }
        sink.write(&rec)?;
        records.push(rec);
        Ok(())
    })?;
    sink.finish()?.flush()?;
    if let Some(path) = &args.summary {
        write_summary(BufWriter::new(File::create(path)?), &summarize(&records))?;
    }
    Ok(())
}

fn run(cli: Cli, out: &mut dyn Write) -> Outcome {
    let ctx = Ctx {
        alphabet: cli.alphabet,
        limits: Limits { max_enumeration: cli.max_enumeration, threads: cli.threads.max(1) },
    };
    let mut text = String::new();
    match cli.command {
        Command::Recon { k, engine, file } => {
            let set = ctx.dataset(&file)?;
            let report = recon(&ctx, &set, k, engine)?;
            for row in report.members.rows() {
                writeln!(text, "{}", format_word(row)).unwrap();
            }
            writeln!(text, "extras={}", report.extras).unwrap();
        }
        Command::PerfectPoint { engine, binary_search, file } => {
            let set = ctx.dataset(&file)?;
            let search = if binary_search { Search::Bisect } else { Search::Ascend };
            writeln!(text, "{}", perfect_point(&set, engine.into(), search, ctx.limits)?).unwrap();
        }
        Command::NoinfoPoint { file } => {
            writeln!(text, "{}", point_of_no_information(&ctx.dataset(&file)?)).unwrap();
        }
        Command::Contains { k, x, file } => {
            let set = ctx.dataset(&file)?;
            let x = ctx.query(&set, &x)?;
            match is_member(&set, &x, k)? {
                Membership::Member => writeln!(text, "yes").unwrap(),
                Membership::Excluded(w) => writeln!(text, "no witness={w}").unwrap(),
            }
        }
        Command::MinK { x, file } => {
            let set = ctx.dataset(&file)?;
            let x = ctx.query(&set, &x)?;
            match min_exclusion_k(&set, &x)? {
                Exclusion::At(k) => writeln!(text, "{k}").unwrap(),
                Exclusion::Never => writeln!(text, "never").unwrap(),
            }
        }
        Command::SparsityBound { file } => {
            let b = sparsity_bound(&ctx.dataset(&file)?);
            writeln!(text, "bound={} witness={}", b.bound, format_word(&b.witness)).unwrap();
        }
        Command::HsSolve { k, fpt, approx, file } => {
            let h = HittingSetInstance::parse(&read_input(&file)?)?;
            if approx {
                match h.approx_d() {
                    Some(a) => {
                        writeln!(text, "hitters={}", join(a.solution.elements())).unwrap();
                        writeln!(text, "size={}", a.solution.size()).unwrap();
                        writeln!(text, "selected={}", join(a.selected)).unwrap();
                    }
                    None => writeln!(text, "none").unwrap(),
                }
            } else {
                let solution = match (fpt, k) {
                    (true, Some(k)) => h.solve_fpt(k),
                    _ => h.solve_exact(),
                };
                match solution {
                    Some(s) => {
                        writeln!(text, "hitters={}", join(s.elements())).unwrap();
                        writeln!(text, "size={}", s.size()).unwrap();
                        if let (false, Some(k)) = (fpt, k) {
                            writeln!(text, "within_k={}", if s.size() <= k { "yes" } else { "no" }).unwrap();
                        }
                    }
                    None => writeln!(text, "none").unwrap(),
                }
            }
        }
        Command::Bench(args) => return run_bench(&ctx, &args, out),
        Command::Gen { n, m, seed } => {
            let set = recon_bench::gen_random_set(n, m, seed)?;
            write!(text, "{set}").unwrap();
        }
        Command::GraphDump { k, identity, matrix, file } => {
            let set = ctx.dataset(&file)?;
            let ord = if identity { ColumnOrdering::identity(&set) } else { order_columns(&set) };
            let g = build_graph(&set, k, &ord)?;
            if matrix {
                for row in g.dense_adjacency() {
                    writeln!(text, "{}", row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).unwrap();
                }
            } else {
                text = g.dump();
            }
        }
    }
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out).and_then(|()| out.flush().map_err(Failure::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

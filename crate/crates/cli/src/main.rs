//! Command-line driver: synthesize polymorphic netlists, verify them
//! against specifications, write generated benchmarks as PLA files, and
//! compare the two synthesis methods over benchmark suites.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polysynth::{
    gen_majority, gen_multiplier, gen_parity, gen_sorting_net, make_poly_spec, poly_design_spec,
    read_pla, transform_design_spec, verify, write_pla, Error, Netlist, PolySpec, SingleSpec,
    SynthOptions, VerifyOptions,
};

#[derive(Parser)]
#[command(name = "polysynth", version, about = "Polymorphic circuit synthesis toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a polymorphic netlist from a two-mode specification.
    Synth(SynthArgs),
    /// Check a netlist JSON file against a two-mode specification.
    Verify(VerifyArgs),
    /// Write a generated benchmark function as a PLA file.
    Bench(BenchArgs),
    /// Run both methods over a benchmark suite and emit a CSV report.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Method {
    /// Decompose through polymorphic gates directly.
    PolyBidec,
    /// Synthesize the merged function, then eliminate the mode variable.
    XformBidec,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::PolyBidec => "poly-bidec",
            Method::XformBidec => "xform-bidec",
        }
    }
}

/// One specification source per mode: a generator descriptor or a PLA file.
#[derive(Args, Clone)]
struct SpecArgs {
    /// Mode-1 descriptor: parity:N, majority:N, mul:AxB, sort:K, or pla:PATH.
    #[arg(long, conflicts_with = "pla1")]
    gen1: Option<String>,
    /// Mode-2 descriptor.
    #[arg(long, conflicts_with = "pla2")]
    gen2: Option<String>,
    /// Mode-1 PLA file.
    #[arg(long)]
    pla1: Option<PathBuf>,
    /// Mode-2 PLA file.
    #[arg(long)]
    pla2: Option<PathBuf>,
    /// Reverse the mode-2 output column order before pairing the modes.
    #[arg(long)]
    reverse_outputs: bool,
}

#[derive(Args, Clone)]
struct SynthKnobs {
    /// Require the polymorphic seed cell to pair two distinct gates.
    #[arg(long)]
    g2_distinct: bool,
    /// Abort once a netlist under construction exceeds this many cells.
    #[arg(long, default_value_t = 1 << 20)]
    max_cells: usize,
    /// Abort after this many decomposition steps.
    #[arg(long, default_value_t = 1 << 22)]
    max_steps: usize,
}

impl SynthKnobs {
    fn options(&self) -> SynthOptions {
        SynthOptions {
            g2_distinct: self.g2_distinct,
            max_cells: self.max_cells,
            max_steps: self.max_steps,
        }
    }
}

#[derive(Args, Clone)]
struct VerifyKnobs {
    /// Exhaustive verification up to this many inputs, sampling above.
    #[arg(long, default_value_t = 14)]
    exhaustive_limit: usize,
    /// Sampled assignments per run when beyond the exhaustive limit.
    #[arg(long, default_value_t = 4096)]
    samples: usize,
    /// Seed for sampled verification.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl VerifyKnobs {
    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            exhaustive_limit: self.exhaustive_limit,
            samples: self.samples,
            seed: self.seed,
        }
    }
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, value_enum)]
    method: Method,
    #[command(flatten)]
    spec: SpecArgs,
    #[command(flatten)]
    knobs: SynthKnobs,
    /// Write the netlist as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the netlist as Graphviz DOT.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Netlist JSON file to check.
    #[arg(long)]
    netlist: PathBuf,
    #[command(flatten)]
    spec: SpecArgs,
    #[command(flatten)]
    knobs: VerifyKnobs,
}

#[derive(Args)]
struct BenchArgs {
    /// Generator descriptor: parity:N, majority:N, mul:AxB, or sort:K.
    descriptor: String,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Suite {
    /// Multiplier/sorting-net pairs.
    Table2,
    /// Parity/majority pairs, n in {7, 9, 11, 13, 15}.
    Table3,
    /// Five pairings exercising the polymorphic-percentage trend.
    Trend,
}

#[derive(Args)]
struct CompareArgs {
    /// Built-in suite to run.
    #[arg(long, value_enum, conflicts_with = "entry")]
    suite: Option<Suite>,
    /// Custom entry "label,descriptor1,descriptor2"; repeatable.
    #[arg(long)]
    entry: Vec<String>,
    /// CSV output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory to write one netlist JSON per entry and method.
    #[arg(long)]
    netlist_dir: Option<PathBuf>,
    /// Report wall_ms as 0 so identical runs emit identical bytes.
    #[arg(long)]
    mask_timing: bool,
    #[command(flatten)]
    synth: SynthKnobs,
    #[command(flatten)]
    verify: VerifyKnobs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synth(args) => cmd_synth(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Bench(args) => cmd_bench(&args),
        Command::Compare(args) => cmd_compare(&args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceCap { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn parse_descriptor(desc: &str) -> polysynth::Result<SingleSpec> {
    let (kind, arg) = desc
        .split_once(':')
        .ok_or_else(|| Error::MalformedSpec(format!("descriptor {desc:?} has no ':'")))?;
    let count = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::MalformedSpec(format!("bad count {s:?} in descriptor {desc:?}")))
    };
    match kind {
        "parity" => gen_parity(count(arg)?),
        "majority" => gen_majority(count(arg)?),
        "sort" => gen_sorting_net(count(arg)?),
        "mul" => {
            let (a, b) = arg
                .split_once('x')
                .ok_or_else(|| Error::MalformedSpec(format!("mul wants AxB, got {arg:?}")))?;
            gen_multiplier(count(a)?, count(b)?)
        }
        "pla" => load_pla(Path::new(arg)),
        other => Err(Error::MalformedSpec(format!("unknown generator {other:?}"))),
    }
}

fn load_pla(path: &Path) -> polysynth::Result<SingleSpec> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::MalformedSpec(format!("cannot read {}: {e}", path.display())))?;
    read_pla(&text)
}

fn mode_spec(desc: &Option<String>, pla: &Option<PathBuf>, which: usize) -> polysynth::Result<SingleSpec> {
    match (desc, pla) {
        (Some(d), None) => parse_descriptor(d),
        (None, Some(p)) => load_pla(p),
        _ => Err(Error::MalformedSpec(format!(
            "mode {which} needs exactly one of --gen{which} or --pla{which}"
        ))),
    }
}

fn load_spec_pair(args: &SpecArgs) -> polysynth::Result<PolySpec> {
    let first = mode_spec(&args.gen1, &args.pla1, 1)?;
    let mut second = mode_spec(&args.gen2, &args.pla2, 2)?;
    if args.reverse_outputs {
        second.outputs.reverse();
    }
    make_poly_spec(&first, &second)
}

fn run_method(method: Method, spec: &PolySpec, opts: &SynthOptions) -> polysynth::Result<Netlist> {
    match method {
        Method::PolyBidec => poly_design_spec(spec, opts),
        Method::XformBidec => transform_design_spec(spec, opts).map(|(nl, _)| nl),
    }
}

fn write_out(path: &Path, text: &str) -> polysynth::Result<()> {
    fs::write(path, text)
        .map_err(|e| Error::MalformedSpec(format!("cannot write {}: {e}", path.display())))
}

fn cmd_synth(args: &SynthArgs) -> polysynth::Result<ExitCode> {
    let spec = load_spec_pair(&args.spec)?;
    let nl = run_method(args.method, &spec, &args.knobs.options())?;
    let stats = nl.stats();
    println!("total={} poly={} percent={:.1}", stats.total, stats.poly, stats.percent());
    if let Some(path) = &args.out {
        write_out(path, &nl.to_json())?;
    }
    if let Some(path) = &args.dot {
        write_out(path, &nl.to_dot())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> polysynth::Result<ExitCode> {
    let text = fs::read_to_string(&args.netlist)
        .map_err(|e| Error::MalformedSpec(format!("cannot read {}: {e}", args.netlist.display())))?;
    let nl = Netlist::from_json(&text)?;
    let spec = load_spec_pair(&args.spec)?;
    let report = verify(&nl, &spec, &args.knobs.options())?;
    if report.ok {
        let how = if report.exhaustive { "exhaustive" } else { "sampled" };
        println!("verified: {} assignments per mode ({how})", report.assignments);
        Ok(ExitCode::SUCCESS)
    } else {
        for m in &report.mismatches {
            println!(
                "counterexample: output {} mode {} minterm {:#b}: got {} expected {}",
                m.output,
                if m.mode2 { 2 } else { 1 },
                m.minterm,
                m.got as u8,
                m.expected as u8
            );
        }
        Ok(ExitCode::from(1))
    }
}

fn cmd_bench(args: &BenchArgs) -> polysynth::Result<ExitCode> {
    let spec = parse_descriptor(&args.descriptor)?;
    let text = write_pla(&spec);
    match &args.out {
        Some(path) => write_out(path, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

/// Published results for the built-in pairings: gates and polymorphic-gate
/// percentage per method, printed alongside measurements for context.
const REFERENCE_RESULTS: &[(&str, Method, usize, f64)] = &[
    ("2x3mul/5sort", Method::PolyBidec, 49, 8.6),
    ("2x3mul/5sort", Method::XformBidec, 65, 20.0),
    ("3x3mul/6sort", Method::PolyBidec, 145, 35.8),
    ("3x3mul/6sort", Method::XformBidec, 170, 22.3),
    ("3x4mul/7sort", Method::PolyBidec, 248, 27.0),
    ("3x4mul/7sort", Method::XformBidec, 263, 11.0),
    ("4x4mul/8sort", Method::PolyBidec, 570, 43.8),
    ("4x4mul/8sort", Method::XformBidec, 630, 13.5),
    ("5x5mul/10sort", Method::PolyBidec, 2507, 36.5),
    ("5x5mul/10sort", Method::XformBidec, 2667, 7.7),
    ("6x6mul/12sort", Method::PolyBidec, 10130, 25.1),
    ("6x6mul/12sort", Method::XformBidec, 10329, 5.1),
    ("parity7/majority7", Method::PolyBidec, 41, 2.4),
    ("parity7/majority7", Method::XformBidec, 64, 7.8),
    ("parity9/majority9", Method::PolyBidec, 59, 3.4),
    ("parity9/majority9", Method::XformBidec, 71, 2.8),
    ("parity11/majority11", Method::PolyBidec, 90, 1.1),
    ("parity11/majority11", Method::XformBidec, 181, 2.8),
    ("parity13/majority13", Method::PolyBidec, 128, 1.6),
    ("parity13/majority13", Method::XformBidec, 144, 1.4),
    ("parity15/majority15", Method::PolyBidec, 186, 0.5),
    ("parity15/majority15", Method::XformBidec, 999, 12.6),
    ("majority10/sao24", Method::PolyBidec, 206, 10.6),
    ("majority10/sao24", Method::XformBidec, 208, 5.7),
    ("parity10/sao24", Method::PolyBidec, 54, 40.7),
    ("parity10/sao24", Method::XformBidec, 119, 11.7),
    ("4x4mul/f51m", Method::PolyBidec, 354, 16.1),
    ("4x4mul/f51m", Method::XformBidec, 375, 5.3),
    ("sorting-net8/f51m", Method::PolyBidec, 175, 25.1),
    ("sorting-net8/f51m", Method::XformBidec, 235, 8.0),
    ("ex1010/sorting-net10", Method::PolyBidec, 2789, 23.8),
    ("ex1010/sorting-net10", Method::XformBidec, 3022, 6.1),
    ("5xp1/z5xp1", Method::PolyBidec, 98, 60.2),
    ("5xp1/z5xp1", Method::XformBidec, 152, 13.8),
    ("5x5mul/ex1010", Method::PolyBidec, 3587, 40.2),
    ("5x5mul/ex1010", Method::XformBidec, 3716, 9.1),
    ("misex3/misex3c", Method::PolyBidec, 4571, 48.5),
    ("misex3/misex3c", Method::XformBidec, 4682, 7.5),
];

fn reference(label: &str, method: Method) -> Option<(usize, f64)> {
    REFERENCE_RESULTS
        .iter()
        .find(|(l, m, _, _)| *l == label && *m == method)
        .map(|&(_, _, g, p)| (g, p))
}

struct Entry {
    label: String,
    desc1: String,
    desc2: String,
}

fn suite_entries(suite: Suite) -> Vec<Entry> {
    let mk = |label: &str, d1: &str, d2: &str| Entry {
        label: label.to_string(),
        desc1: d1.to_string(),
        desc2: d2.to_string(),
    };
    match suite {
        Suite::Table2 => vec![
            mk("2x3mul/5sort", "mul:2x3", "sort:5"),
            mk("3x3mul/6sort", "mul:3x3", "sort:6"),
            mk("3x4mul/7sort", "mul:3x4", "sort:7"),
            mk("4x4mul/8sort", "mul:4x4", "sort:8"),
        ],
        Suite::Table3 => [7usize, 9, 11, 13, 15]
            .iter()
            .map(|n| {
                mk(
                    &format!("parity{n}/majority{n}"),
                    &format!("parity:{n}"),
                    &format!("majority:{n}"),
                )
            })
            .collect(),
        Suite::Trend => vec![
            mk("2x3mul/5sort", "mul:2x3", "sort:5"),
            mk("3x3mul/6sort", "mul:3x3", "sort:6"),
            mk("4x4mul/8sort", "mul:4x4", "sort:8"),
            mk("parity10/majority10", "parity:10", "majority:10"),
            mk("4x4mul/sorting-net8", "mul:4x4", "sort:8"),
        ],
    }
}

fn parse_entry(text: &str) -> polysynth::Result<Entry> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 || parts.iter().any(|p| p.is_empty()) {
        return Err(Error::MalformedSpec(format!(
            "entry {text:?} is not \"label,descriptor1,descriptor2\""
        )));
    }
    Ok(Entry {
        label: parts[0].to_string(),
        desc1: parts[1].to_string(),
        desc2: parts[2].to_string(),
    })
}

struct Row {
    label: String,
    method: Method,
    outcome: polysynth::Result<(Netlist, bool)>,
    wall_ms: u128,
}

impl Row {
    fn csv(&self, mask_timing: bool) -> String {
        let wall = if mask_timing { 0 } else { self.wall_ms };
        let (gates, poly, percent, status) = match &self.outcome {
            Ok((nl, verified)) => {
                let s = nl.stats();
                let status = if *verified { "ok" } else { "FAILED" };
                (s.total.to_string(), s.poly.to_string(), format!("{:.1}", s.percent()), status)
            }
            Err(Error::ResourceCap { resource, .. }) => {
                (String::new(), String::new(), String::new(), *resource)
            }
            Err(_) => (String::new(), String::new(), String::new(), "error"),
        };
        let (rg, rp) = match reference(&self.label, self.method) {
            Some((g, p)) => (g.to_string(), format!("{p:.1}")),
            None => (String::new(), String::new()),
        };
        format!(
            "{},{},{gates},{poly},{percent},{wall},{status},{rg},{rp}",
            self.label,
            self.method.name()
        )
    }
}

fn compare_one(entry: &Entry, method: Method, args: &CompareArgs) -> Row {
    let started = Instant::now();
    let outcome = (|| {
        let first = parse_descriptor(&entry.desc1)?;
        let second = parse_descriptor(&entry.desc2)?;
        let spec = make_poly_spec(&first, &second)?;
        let nl = run_method(method, &spec, &args.synth.options())?;
        let report = verify(&nl, &spec, &args.verify.options())?;
        Ok((nl, report.ok))
    })();
    Row {
        label: entry.label.clone(),
        method,
        outcome,
        wall_ms: started.elapsed().as_millis(),
    }
}

fn cmd_compare(args: &CompareArgs) -> polysynth::Result<ExitCode> {
    let entries = match args.suite {
        Some(suite) => suite_entries(suite),
        None => {
            let parsed: polysynth::Result<Vec<Entry>> =
                args.entry.iter().map(|e| parse_entry(e)).collect();
            let parsed = parsed?;
            if parsed.is_empty() {
                return Err(Error::MalformedSpec(
                    "compare needs --suite or at least one --entry".into(),
                ));
            }
            parsed
        }
    };

    let jobs: Vec<(usize, &Entry, Method)> = entries
        .iter()
        .enumerate()
        .flat_map(|(i, e)| [(i, e, Method::PolyBidec), (i, e, Method::XformBidec)])
        .collect();
    let mut pool = rayon::ThreadPoolBuilder::new().stack_size(64 << 20);
    if let Ok(threads) = std::env::var("POLYSYNTH_THREADS") {
        let n = threads
            .parse::<usize>()
            .map_err(|_| Error::MalformedSpec(format!("bad POLYSYNTH_THREADS {threads:?}")))?;
        pool = pool.num_threads(n.max(1));
    }
    let pool = pool
        .build()
        .map_err(|e| Error::MalformedSpec(format!("cannot build thread pool: {e}")))?;
    let mut rows: Vec<(usize, Row)> = pool.install(|| {
        use rayon::prelude::*;
        jobs.par_iter()
            .map(|&(i, entry, method)| (i, compare_one(entry, method, args)))
            .collect()
    });
    rows.sort_by_key(|&(i, ref row)| (i, row.method as usize));

    let mut csv = String::from(
        "benchmark,method,gates,poly_gates,poly_percent,wall_ms,status,paper_ref_gates,paper_ref_poly_percent\n",
    );
    let mut all_ok = true;
    for (_, row) in &rows {
        csv.push_str(&row.csv(args.mask_timing));
        csv.push('\n');
        all_ok &= matches!(&row.outcome, Ok((_, true)));
    }
    match &args.out {
        Some(path) => write_out(path, &csv)?,
        None => print!("{csv}"),
    }
    if let Some(dir) = &args.netlist_dir {
        fs::create_dir_all(dir)
            .map_err(|e| Error::MalformedSpec(format!("cannot create {}: {e}", dir.display())))?;
        for (_, row) in &rows {
            if let Ok((nl, _)) = &row.outcome {
                let name = format!("{}-{}.json", row.label.replace('/', "_"), row.method.name());
                write_out(&dir.join(name), &nl.to_json())?;
            }
        }
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use pgarcs::bounds::{self, Bound};
use pgarcs::tables::{self, FigureKind, TableEntry};
use pgarcs::{
    brute_force_min_complete, eval_bounds, search_in_plane, transforms, verify_arc, ArcRecord,
    Field, Plane, SampleSize, SearchConfig, Witness,
};

/// Small complete arcs in PG(2,q).
#[derive(Parser)]
#[command(name = "pgarcs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the parameters of GF(q).
    Field(FieldArgs),
    /// Search for a small complete arc.
    Search(SearchArgs),
    /// Check that an arc file holds a complete arc.
    Verify {
        #[arg(long)]
        arc: PathBuf,
    },
    /// Smallest complete arc size by exhaustive search (q <= 9).
    Oracle {
        #[arg(long)]
        q: u64,
        /// Write one smallest arc here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the bound functions at q.
    Bounds(BoundsArgs),
    /// Check recorded sizes against the upper bounds.
    CheckTable {
        /// CSV files with `q,t2[,source]`; the bundled tables 1-4 when omitted.
        #[arg(long, num_args = 1..)]
        table: Vec<PathBuf>,
        /// Per-entry, per-bound report CSV.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write a plotting series for recorded sizes.
    Plotdata {
        #[arg(long, num_args = 1..)]
        table: Vec<PathBuf>,
        #[arg(long, value_parser = parse_kind)]
        kind: FigureKind,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long, conflicts_with_all = ["p", "h"], required_unless_present = "p")]
    q: Option<u64>,
    #[arg(long, requires = "h")]
    p: Option<u64>,
    #[arg(long, requires = "p")]
    h: Option<u32>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    q: u64,
    /// Second-stage attempts.
    #[arg(long, default_value_t = 50)]
    attempts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random steps at the start of the first stage [default: ceil(sqrt q)].
    #[arg(long)]
    delta: Option<usize>,
    /// Candidates sampled per random step, one value or a comma list
    /// [default: 2].
    #[arg(long, value_delimiter = ',')]
    d: Vec<usize>,
    /// Which of the first five steps of each attempt are random.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    random_steps: Vec<usize>,
    /// Start attempts from this many leading points of the first-stage arc.
    #[arg(long)]
    prefix: Option<usize>,
    #[arg(long)]
    max_steps: Option<usize>,
    /// Worker threads for the attempts [default: all cores].
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    q: f64,
    /// An arc size to transform.
    #[arg(long)]
    t: Option<u64>,
    #[arg(long = "D", default_value_t = 0.6)]
    d: f64,
    /// Print one CSV row instead of labelled text.
    #[arg(long)]
    csv: bool,
}

fn parse_kind(s: &str) -> Result<FigureKind, String> {
    s.parse().map_err(|e: tables::TableError| e.to_string())
}

/// A bad flag combination found after parsing; exits with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<Usage>() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Field(args) => field(args),
        Command::Search(args) => search(args),
        Command::Verify { arc } => verify(&arc),
        Command::Oracle { q, out } => oracle(q, out.as_deref()),
        Command::Bounds(args) => print_bounds(args),
        Command::CheckTable { table, report } => check_table(&table, report.as_deref()),
        Command::Plotdata { table, kind, out } => plotdata(&table, kind, &out),
    }
}

fn field(args: FieldArgs) -> Result<ExitCode> {
    let f = match (args.q, args.p, args.h) {
        (Some(q), _, _) => Field::with_order(q)?,
        (None, Some(p), Some(h)) => Field::new(p, h)?,
        _ => return Err(usage("give --q or both --p and --h")),
    };
    let modulus: Vec<String> = f.modulus().iter().map(u32::to_string).collect();
    println!("p = {}", f.characteristic());
    println!("h = {}", f.degree());
    println!("q = {}", f.order());
    println!(
        "modulus = {}",
        if modulus.is_empty() { "none".to_string() } else { modulus.join(" ") }
    );
    println!("primitive element = {}", f.primitive_element());
    Ok(ExitCode::SUCCESS)
}

fn search(args: SearchArgs) -> Result<ExitCode> {
    let sample_size = match args.d.as_slice() {
        [] => SampleSize::Fixed(2),
        [d] => SampleSize::Fixed(*d),
        ds => SampleSize::Schedule(ds.to_vec()),
    };
    let config = SearchConfig {
        seed: args.seed,
        attempts: args.attempts,
        stage1_random_steps: args.delta,
        sample_size,
        stage2_random_steps: args.random_steps,
        stage2_prefix: args.prefix,
        max_steps: args.max_steps,
    };
    config.validate().map_err(|e| usage(e.to_string()))?;
    if args.threads == Some(0) {
        return Err(usage("--threads must be at least 1"));
    }
    let plane = Plane::with_order(args.q)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads.unwrap_or(0))
        .build()?;
    let result = pool.install(|| search_in_plane(&plane, &config))?;

    // Independent re-check of exactly what is written out.
    let record = ArcRecord::new(&plane, &result.best);
    if !record.complete {
        bail!("search returned an arc that does not verify");
    }
    if let Some(path) = &args.out {
        fs::write(path, record.to_json())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    println!("q = {}", result.q);
    println!(
        "best size = {} (attempt {} of {})",
        result.best_size,
        result.best_attempt,
        result.attempt_sizes.len() - 1
    );
    println!("steps = {}", result.total_steps);
    println!("elapsed = {:.3}s", result.elapsed.as_secs_f64());
    println!("size histogram:");
    for (size, count) in result.histogram() {
        println!("  {size:>6} {count:>6}");
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(path: &Path) -> Result<ExitCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let record = ArcRecord::from_json(&text)?;
    let plane = record.plane()?;
    let points = record.point_indices(&plane)?;
    let v = verify_arc(&plane, &points);
    let coords = |p: u32| format!("{:?}", plane.codes(p));
    match (v.valid, v.complete, v.witness) {
        (true, true, _) => {
            println!("valid complete arc, size {}", v.size);
            return Ok(ExitCode::SUCCESS);
        }
        (true, _, Some(Witness::Uncovered(p))) => {
            println!("valid but incomplete arc, size {}: {} is uncovered", v.size, coords(p));
        }
        (_, _, Some(Witness::CollinearTriple(t))) => {
            let t: Vec<String> = t.iter().map(|&p| coords(p)).collect();
            println!("not an arc: {} are collinear", t.join(", "));
        }
        (_, _, Some(Witness::DuplicatePoint(p))) => {
            println!("not an arc: {} is repeated", coords(p));
        }
        (_, _, w) => println!("not an arc: {w:?}"),
    }
    Ok(ExitCode::FAILURE)
}

fn oracle(q: u64, out: Option<&Path>) -> Result<ExitCode> {
    let (size, witness) = brute_force_min_complete(q)?;
    if let Some(path) = out {
        let plane = Plane::with_order(q)?;
        fs::write(path, ArcRecord::new(&plane, &witness).to_json())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    println!("{size}");
    Ok(ExitCode::SUCCESS)
}

fn print_bounds(args: BoundsArgs) -> Result<ExitCode> {
    let b = eval_bounds(args.q).map_err(|e| usage(e.to_string()))?;
    let tr = match args.t {
        Some(t) => Some(transforms(args.q, t as f64, args.d).map_err(|e| usage(e.to_string()))?),
        None => None,
    };
    let min = bounds::min_bound(args.q).ok();
    let opt = |v: Option<f64>| v.map_or(String::new(), |x| x.to_string());
    let mut fields: Vec<(&str, String)> = vec![
        ("q", b.q.to_string()),
        ("lower_any", b.lower_any.to_string()),
        ("lower_cubefree", b.lower_cubefree.to_string()),
        ("lower_cubefree_applies", b.cubefree_applies.to_string()),
        ("fdl_0998", b.fdl_0998.to_string()),
        ("fdl_1006", b.fdl_1006.to_string()),
        ("log_power_0.7295", b.log_power.to_string()),
        ("c_up", b.c_up.to_string()),
        ("ddl_c", b.ddl_c.to_string()),
        ("phi_up", b.phi_up.to_string()),
        ("ddl_phi", b.ddl_phi.to_string()),
        ("conjectural", opt(b.conjectural)),
        ("sat_bound", b.sat_bound.to_string()),
        ("min_bound", opt(min.map(|m| m.0))),
        ("min_branch", min.map_or(String::new(), |m| m.1.name().to_string())),
    ];
    if let (Some(t), Some(tr)) = (args.t, tr) {
        fields.push(("t", t.to_string()));
        fields.push(("D", args.d.to_string()));
        fields.push(("c_bar", tr.c.to_string()));
        fields.push(("phi_bar", tr.phi.to_string()));
        fields.push(("h_bar", tr.h.to_string()));
    }
    if args.csv {
        let names: Vec<&str> = fields.iter().map(|f| f.0).collect();
        let values: Vec<&str> = fields.iter().map(|f| f.1.as_str()).collect();
        println!("{}", names.join(","));
        println!("{}", values.join(","));
    } else {
        for (name, value) in &fields {
            println!("{name:<24} {value}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn read_tables(paths: &[PathBuf]) -> Result<Vec<TableEntry>> {
    if paths.is_empty() {
        return Ok(tables::bundled_tables());
    }
    let mut all = Vec::new();
    for p in paths {
        let file = fs::File::open(p).with_context(|| format!("opening {}", p.display()))?;
        all.extend(tables::parse_table(file).with_context(|| format!("in {}", p.display()))?);
    }
    Ok(tables::merge(all))
}

fn check_table(paths: &[PathBuf], report: Option<&Path>) -> Result<ExitCode> {
    let entries = read_tables(paths)?;
    let r = tables::verify_table(&entries);
    if let Some(path) = report {
        let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        r.write_csv(std::io::BufWriter::new(file))?;
    }
    println!("{} entries", entries.len());
    println!("{:<18} {:>9} {:>11}", "bound", "in range", "violations");
    for b in Bound::ALL {
        let s = &r.summary[&b];
        println!("{:<18} {:>9} {:>11}", b.name(), s.in_range, s.violations);
    }
    Ok(if r.total_violations() == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn plotdata(paths: &[PathBuf], kind: FigureKind, out: &Path) -> Result<ExitCode> {
    let entries = read_tables(paths)?;
    let series = tables::figure_series(&entries, kind);
    let file = fs::File::create(out).with_context(|| format!("creating {}", out.display()))?;
    series.write_csv(std::io::BufWriter::new(file))?;
    println!("{} rows written to {}", series.rows.len(), out.display());
    Ok(ExitCode::SUCCESS)
}

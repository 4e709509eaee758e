//! `ht`: command-line front end for the enumeration pipelines.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 on input errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use ht_core::enumerate::{enumerate, enumerate_with, Backend};
use ht_core::fd::{
    agree_sets, concise_cover, conditional_fds, minimal_cover, parse_relation, FdCover, Relation,
};
use ht_core::genbench::{
    bench_csv, bench_run, gen_random, gen_worst_case, BenchAlgo, RandomSpec, RNG_ALGORITHM,
};
use ht_core::hypergraph::{
    min_reduce, parse_hypergraph, profile, serialize_hypergraph, Hypergraph, MtSet, VertexSet,
};
use ht_core::irredundant::{expand_mts, imt_extract, GeneralizedNodes};
use ht_core::localgen::enumerate_local_detailed;
use ht_core::tmm::{extract_tmm, TmmMode};
use ht_core::transversality::transversality_report;

#[derive(Parser)]
#[command(
    name = "ht",
    version,
    about = "Minimal transversal toolkit for hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Berge,
    Mtminer,
    Mmcs,
    Local,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    M2d,
    Om2d,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate all minimal traverses of an instance
    Mt {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = AlgoArg::Mmcs)]
        algo: AlgoArg,
        /// Emit traverses in discovery order with a trailing count line
        #[arg(long)]
        stream: bool,
        /// With --algo local, dump the decomposition first
        #[arg(long)]
        show_parts: bool,
    },
    /// Greedy and exact transversality number
    Tau { file: PathBuf },
    /// Multi-member minimal traverses
    Tmm {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Om2d)]
        mode: ModeArg,
    },
    /// Generalized nodes, irredundant hypergraph and irredundant traverses
    Irr {
        file: PathBuf,
        /// Also expand to the full traverse set and report the compaction rate
        #[arg(long)]
        expand: bool,
    },
    /// Expand an irredundant traverse file through a group file
    Expand { mt_file: PathBuf, gn_file: PathBuf },
    /// Functional-dependency covers of a CSV relation
    FdCover {
        csv: PathBuf,
        /// Print the concise cover and the attribute groups
        #[arg(long)]
        concise: bool,
        /// Also print conditional dependencies with their supporting tuples
        #[arg(long)]
        conditional: bool,
    },
    /// Generate an instance
    Gen {
        /// n m p_l p_u [seed]; HT_SEED supplies the seed when omitted
        #[arg(long, num_args = 4..=5, value_names = ["N", "M", "PL", "PU", "SEED"])]
        random: Option<Vec<String>>,
        /// m block
        #[arg(long, num_args = 2, value_names = ["M", "BLOCK"])]
        worst: Option<Vec<String>>,
        /// Output path (stdout when absent)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Benchmark instances from a directory, CSV on stdout
    Bench {
        #[arg(long)]
        dir: PathBuf,
        /// Comma-separated list: berge,mtminer,mmcs,local
        #[arg(long)]
        algos: String,
        /// Add the irredundant pipeline columns
        #[arg(long)]
        irr: bool,
    },
    /// Profile and transversality of an instance
    Stats { file: PathBuf },
}

enum CliError {
    Usage(String),
    Input(String),
}

impl From<ht_core::Error> for CliError {
    fn from(e: ht_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_hypergraph(path: &Path) -> Result<Hypergraph, CliError> {
    Ok(parse_hypergraph(&read_file(path)?)?)
}

/// Reduces to simple form when needed, with a notice on stderr.
fn load_simple(path: &Path) -> Result<Hypergraph, CliError> {
    let h = load_hypergraph(path)?;
    if h.is_simple() {
        return Ok(h);
    }
    let reduced = min_reduce(&h);
    eprintln!(
        "note: input is not simple; reduced from {} to {} edges",
        h.edge_count(),
        reduced.edge_count()
    );
    Ok(reduced)
}

fn print_mts_sorted(mts: &MtSet) {
    for t in mts.iter() {
        println!("{t}");
    }
}

fn main() {
    // die quietly on closed pipes, like other unix filters
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli.cmd) {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}

fn run(cmd: Cmd) -> CliResult {
    match cmd {
        Cmd::Mt {
            file,
            algo,
            stream,
            show_parts,
        } => cmd_mt(&file, algo, stream, show_parts),
        Cmd::Tau { file } => cmd_tau(&file),
        Cmd::Tmm { file, mode } => cmd_tmm(&file, mode),
        Cmd::Irr { file, expand } => cmd_irr(&file, expand),
        Cmd::Expand { mt_file, gn_file } => cmd_expand(&mt_file, &gn_file),
        Cmd::FdCover {
            csv,
            concise,
            conditional,
        } => cmd_fd_cover(&csv, concise, conditional),
        Cmd::Gen {
            random,
            worst,
            output,
        } => cmd_gen(random, worst, output),
        Cmd::Bench { dir, algos, irr } => cmd_bench(&dir, &algos, irr),
        Cmd::Stats { file } => cmd_stats(&file),
    }
}

fn cmd_mt(file: &Path, algo: AlgoArg, stream: bool, show_parts: bool) -> CliResult {
    if show_parts && algo != AlgoArg::Local {
        return Err(CliError::Usage("--show-parts requires --algo local".into()));
    }
    let h = load_simple(file)?;
    if algo == AlgoArg::Local {
        let (mts, decomposition, _) = enumerate_local_detailed(&h, Backend::Mmcs)?;
        if show_parts {
            for (i, (part, &pivot)) in decomposition
                .parts
                .iter()
                .zip(&decomposition.pivot)
                .enumerate()
            {
                println!("# part {} (pivot {})", i + 1, pivot);
                print!("{}", serialize_hypergraph(part));
            }
        }
        print_mts_sorted(&mts);
        if stream {
            println!("# count: {}", mts.len());
        }
        return Ok(());
    }
    let backend = match algo {
        AlgoArg::Berge => Backend::Berge,
        AlgoArg::Mtminer => Backend::MtMiner,
        AlgoArg::Mmcs => Backend::Mmcs,
        AlgoArg::Local => unreachable!(),
    };
    if stream {
        let mut count = 0u64;
        enumerate_with(&h, backend, |t| {
            println!("{t}");
            count += 1;
        })?;
        println!("# count: {count}");
    } else {
        print_mts_sorted(&enumerate(&h, backend)?);
    }
    Ok(())
}

fn cmd_tau(file: &Path) -> CliResult {
    let h = load_hypergraph(file)?;
    let r = transversality_report(&h)?;
    println!("{} {} {}", r.greedy_k, r.exact_tau, r.tight);
    Ok(())
}

fn cmd_tmm(file: &Path, mode: ModeArg) -> CliResult {
    // supports and coverage are taken over the edge list as given
    let h = load_hypergraph(file)?;
    let mode = match mode {
        ModeArg::M2d => TmmMode::M2d,
        ModeArg::Om2d => TmmMode::Om2d,
    };
    let r = extract_tmm(&h, mode)?;
    println!("{}", r.tau);
    for t in r.tmms.iter() {
        println!("{t}");
    }
    let best = r.coverage.values().max().copied().unwrap_or(0);
    println!("# coverage: {best}");
    Ok(())
}

fn group_line(g: &ht_core::irredundant::Group) -> String {
    let members = g
        .members
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    format!("{}: {members}", g.representative)
}

fn cmd_irr(file: &Path, expand: bool) -> CliResult {
    let h = load_simple(file)?;
    let r = imt_extract(&h, Backend::Mmcs)?;
    println!("# groups");
    for g in &r.generalized.groups {
        println!("{}", group_line(g));
    }
    println!("# irredundant hypergraph");
    print!("{}", serialize_hypergraph(&r.irredundant_h));
    println!("# irredundant mts");
    print_mts_sorted(&r.irredundant_mts);
    if expand {
        println!("# mts");
        let full = expand_mts(&r.irredundant_mts, &r.generalized)?;
        print_mts_sorted(&full);
        println!("# theta: {:.6}", r.compaction);
    }
    Ok(())
}

/// Parses "rep: m1 m2 ..." lines; comments and blank lines are skipped.
fn parse_gn_file(text: &str) -> Result<GeneralizedNodes, CliError> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (rep, members) = trimmed.split_once(':').ok_or_else(|| {
            CliError::Input(format!("line {}: expected \"rep: members\"", lineno + 1))
        })?;
        let rep: u32 = rep.trim().parse().map_err(|_| {
            CliError::Input(format!("line {}: bad representative {rep:?}", lineno + 1))
        })?;
        let members = members
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| CliError::Input(format!("line {}: bad member {t:?}", lineno + 1)))
            })
            .collect::<Result<Vec<u32>, _>>()?;
        rows.push((rep, VertexSet::new(members)));
    }
    if rows.is_empty() {
        return Err(CliError::Input("no groups in input".into()));
    }
    Ok(GeneralizedNodes::from_groups(rows)?)
}

fn cmd_expand(mt_file: &Path, gn_file: &Path) -> CliResult {
    let mts_h = parse_hypergraph(&read_file(mt_file)?)?;
    let mts: MtSet = mts_h.edges().map(VertexSet::from).collect();
    let gn = parse_gn_file(&read_file(gn_file)?)?;
    let full = expand_mts(&mts, &gn)?;
    print_mts_sorted(&full);
    Ok(())
}

fn print_cover(cover: &FdCover, r: &Relation) {
    for line in cover.rendered_lines(r.attributes()) {
        println!("{line}");
    }
    for d in &cover.diagnostics {
        eprintln!("note: {d}");
    }
}

fn cmd_fd_cover(csv: &Path, concise: bool, conditional: bool) -> CliResult {
    let r = parse_relation(&read_file(csv)?)?;
    let gn_map: Option<BTreeMap<u32, GeneralizedNodes>> = if concise || conditional {
        let cover = concise_cover(&r, Backend::Mmcs)?;
        if concise {
            print_cover(&cover, &r);
        }
        cover.per_attribute_gn
    } else {
        None
    };
    if concise {
        for (a, gn) in gn_map.as_ref().expect("computed above") {
            let groups = gn
                .groups
                .iter()
                .map(|g| {
                    let members = g
                        .members
                        .iter()
                        .map(|x| r.attribute_name(x).to_string())
                        .collect::<Vec<_>>()
                        .join(" ");
                    format!("{}: {members}", r.attribute_name(g.representative))
                })
                .collect::<Vec<_>>()
                .join("; ");
            println!("# groups {}: {groups}", r.attribute_name(*a));
        }
    } else {
        let cover = minimal_cover(&r, Backend::Mmcs)?;
        print_cover(&cover, &r);
    }
    if conditional {
        let ag = agree_sets(&r)?;
        for (a, gn) in gn_map.as_ref().expect("computed above") {
            for c in conditional_fds(&r, *a, gn, &ag)? {
                let tuples = c
                    .support_tuples
                    .iter()
                    .map(|i| format!("t{}", i + 1))
                    .collect::<Vec<_>>()
                    .join(" ");
                let marker = if c.holds { "" } else { " (unverified)" };
                println!(
                    "# conditional {}: {} on tuples {tuples}{marker}",
                    r.attribute_name(*a),
                    c.fd.render(r.attributes()),
                );
            }
        }
    }
    Ok(())
}

fn cmd_gen(
    random: Option<Vec<String>>,
    worst: Option<Vec<String>>,
    output: Option<PathBuf>,
) -> CliResult {
    let text = match (random, worst) {
        (Some(args), None) => {
            let n: u32 = parse_arg(&args[0], "n")?;
            let m: u32 = parse_arg(&args[1], "m")?;
            let p_l: f64 = parse_arg(&args[2], "p_l")?;
            let p_u: f64 = parse_arg(&args[3], "p_u")?;
            let seed: u64 = match args.get(4) {
                Some(s) => parse_arg(s, "seed")?,
                None => match std::env::var("HT_SEED") {
                    Ok(v) => parse_arg(&v, "HT_SEED")?,
                    Err(_) => 42,
                },
            };
            let spec = RandomSpec {
                n,
                m,
                p_l,
                p_u,
                seed,
            };
            // bad parameter combinations are usage errors, not input errors
            spec.validate()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let h = gen_random(&spec)?;
            let header = format!(
                "# rng: {RNG_ALGORITHM} seed: {seed} n: {n} m: {m} p_l: {p_l} p_u: {p_u}\n"
            );
            format!("{header}{}", serialize_hypergraph(&h))
        }
        (None, Some(args)) => {
            let m: u32 = parse_arg(&args[0], "m")?;
            let block: u32 = parse_arg(&args[1], "block")?;
            serialize_hypergraph(&gen_worst_case(m, block)?)
        }
        _ => {
            return Err(CliError::Usage(
                "exactly one of --random or --worst is required".into(),
            ))
        }
    };
    match output {
        Some(path) => fs::write(&path, text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_arg<T: std::str::FromStr>(s: &str, name: &str) -> Result<T, CliError> {
    s.parse()
        .map_err(|_| CliError::Usage(format!("invalid value {s:?} for {name}")))
}

fn cmd_bench(dir: &Path, algos: &str, irr: bool) -> CliResult {
    let algos: Vec<BenchAlgo> = algos
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<BenchAlgo>()
                .map_err(|e| CliError::Usage(e.to_string()))
        })
        .collect::<Result<_, _>>()?;
    if algos.is_empty() {
        return Err(CliError::Usage("--algos list is empty".into()));
    }
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "dat"))
        .collect();
    paths.sort();
    let mut instances = Vec::with_capacity(paths.len());
    for p in &paths {
        let name = p
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| p.display().to_string());
        instances.push((name, load_hypergraph(p)?));
    }
    let rows = bench_run(&instances, &algos, irr);
    let comments = vec![
        format!("dir: {}", dir.display()),
        format!(
            "algos: {}",
            algos
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
        format!("rng: {RNG_ALGORITHM}"),
    ];
    print!("{}", bench_csv(&rows, &comments));
    Ok(())
}

fn cmd_stats(file: &Path) -> CliResult {
    let h = load_hypergraph(file)?;
    let p = profile(&h);
    let r = transversality_report(&h)?;
    println!("n {}", p.n);
    println!("m {}", p.m);
    println!("rank {}", p.rank);
    println!("antirank {}", p.antirank);
    println!("simple {}", p.simple);
    println!("greedy_k {}", r.greedy_k);
    println!("exact_tau {}", r.exact_tau);
    println!("tight {}", r.tight);
    Ok(())
}

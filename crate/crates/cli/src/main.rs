use std::fs::{File, OpenOptions};
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use algconn_core::connectivity::{is_theta, theta_lengths};
use algconn_core::enumeration::{stream_graphs, EnumOptions, Predicate};
use algconn_core::families::{equality_family, realize, FamilySpec};
use algconn_core::verify::{
    csv_header, read_csv_entries, report_to_csv, verify_theorem_1_resumable, verify_theorem_2,
    write_csv_rows, Margins, VerificationReport,
};
use algconn_core::{fiedler_vector, graph6, rewire, suites, Graph};

/// Algebraic connectivity tools and exhaustive checks of the minimum-α
/// results for 2-connected graphs and θ-graphs.
#[derive(Parser)]
#[command(name = "algconn", version)]
struct Cli {
    /// Tolerance of the numeric equality filter on |α(G) − α(C_n)|.
    #[arg(long, global = true, default_value_t = Margins::default().alpha_filter)]
    tol: f64,
    /// Seed for randomized property suites and shuffled enumeration.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// α(G), a Fiedler vector and its multiplicity, as JSON.
    Alpha { graph: String },
    /// Family constructors.
    Families {
        #[command(subcommand)]
        command: FamiliesCommand,
    },
    /// θ-graph recognition.
    Theta {
        #[command(subcommand)]
        command: ThetaCommand,
    },
    /// Rewire a 2-connected graph into a spanning cycle and print the certificate.
    Rewire {
        graph: String,
        #[arg(long, value_enum, default_value_t = TextFormat::Json)]
        format: TextFormat,
    },
    /// Stream one graph6 line per isomorphism class of order `n`.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "biconnected")]
        predicate: Predicate,
        /// Relabel parents and shuffle augmentation order with `--seed`.
        #[arg(long)]
        shuffle: bool,
    },
    /// Exhaustive verification sweeps.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
    /// Run the seeded randomized property suites.
    CheckProps,
}

#[derive(Subcommand)]
enum FamiliesCommand {
    /// Realize a spec such as `cycle:7`, `h1:n=9:i=1,3` or `theta:2,2,3` as graph6.
    Gen { spec: String },
    /// The equality family of order `n`, one `spec graph6` line per class.
    Equality {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum ThetaCommand {
    /// Print `true` or `false`; with `--lengths` also the path lengths.
    Check {
        graph: String,
        #[arg(long)]
        lengths: bool,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// All 2-connected graphs of order `n` (4..=9).
    T1 {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: ReportOutput,
        /// CSV checkpoint: rows already present are reused, new rows are
        /// appended while the sweep runs.
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// All θ-graphs of order 4..=n_max (n_max ≤ 40).
    T2 {
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        output: ReportOutput,
    },
}

#[derive(clap::Args)]
struct ReportOutput {
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock runtime in JSON reports.
    #[arg(long)]
    runtime: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

/// A graph argument: family spec (contains `:`), edge list (contains `;`),
/// graph6, or `-` for stdin.
fn read_graph(arg: &str) -> anyhow::Result<Graph> {
    let text = if arg == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        arg.to_string()
    };
    let text = text.trim();
    if text.contains(':') && !text.starts_with(">>") {
        let spec: FamilySpec = text
            .parse()
            .with_context(|| format!("bad family spec {text:?}"))?;
        return Ok(realize(&spec)?);
    }
    text.parse()
        .with_context(|| format!("cannot read graph {text:?}"))
}

fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn report_json(reports: &[VerificationReport], runtime: bool, single: bool) -> String {
    let reports: Vec<VerificationReport> = reports
        .iter()
        .map(|r| if runtime { r.clone() } else { r.without_runtime() })
        .collect();
    let mut text = if single {
        reports[0].to_json()
    } else {
        serde_json::to_string_pretty(&reports).expect("reports serialize")
    };
    text.push('\n');
    text
}

/// Reports failures on stderr; returns whether every report passed.
fn summarize(reports: &[VerificationReport]) -> bool {
    let mut ok = true;
    for r in reports {
        match r.check() {
            Ok(()) => eprintln!(
                "{} n={}: {} graphs, min alpha {:.12}, alpha(C_n) {:.12}, {} extremal: ok",
                r.theorem,
                r.n,
                r.graph_count,
                r.min_alpha,
                r.alpha_cycle,
                r.extremal_ids().len()
            ),
            Err(msg) => {
                eprintln!("{} FAILED: {msg}", r.theorem);
                ok = false;
            }
        }
    }
    ok
}

fn verify_t1(
    n: usize,
    margins: &Margins,
    output: &ReportOutput,
    resume: Option<&Path>,
) -> anyhow::Result<bool> {
    let prior = match resume {
        Some(p) if p.exists() => {
            let file = File::open(p).with_context(|| format!("opening {}", p.display()))?;
            read_csv_entries(file, margins)?
        }
        _ => Vec::new(),
    };
    let mut checkpoint = match resume {
        Some(p) => {
            let fresh = !p.exists() || std::fs::metadata(p)?.len() == 0;
            let file = OpenOptions::new().create(true).append(true).open(p)?;
            let mut w = BufWriter::new(file);
            if fresh {
                writeln!(w, "{}", csv_header())?;
            }
            Some(w)
        }
        None => None,
    };
    if !prior.is_empty() {
        eprintln!("resuming with {} checkpointed entries", prior.len());
    }
    let alpha_cycle = algconn_core::alpha_cycle_closed_form(n)?;
    let report = verify_theorem_1_resumable(n, margins, &prior, |entry| {
        if let Some(w) = checkpoint.as_mut() {
            write_csv_rows(&mut *w, std::slice::from_ref(entry), alpha_cycle)?;
        }
        Ok(())
    })?;
    if let Some(mut w) = checkpoint {
        w.flush()?;
    }
    let text = match output.format {
        ReportFormat::Json => report_json(std::slice::from_ref(&report), output.runtime, true),
        ReportFormat::Csv => report_to_csv(&report),
    };
    write_output(output.out.as_deref(), &text)?;
    Ok(summarize(std::slice::from_ref(&report)))
}

fn verify_t2(n_max: usize, margins: &Margins, output: &ReportOutput) -> anyhow::Result<bool> {
    if n_max < 4 {
        bail!("--n-max must be at least 4");
    }
    let reports = verify_theorem_2(n_max, margins)?;
    let text = match output.format {
        ReportFormat::Json => report_json(&reports, output.runtime, false),
        ReportFormat::Csv => {
            let mut buf = Vec::new();
            writeln!(buf, "{}", csv_header())?;
            for r in &reports {
                write_csv_rows(&mut buf, &r.entries, r.alpha_cycle)?;
            }
            String::from_utf8(buf)?
        }
    };
    write_output(output.out.as_deref(), &text)?;
    Ok(summarize(&reports))
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    let defaults = Margins::default();
    if !(cli.tol.is_finite() && cli.tol >= defaults.strictness) {
        bail!(
            "--tol must be at least the strictness margin {:e}",
            defaults.strictness
        );
    }
    let margins = Margins {
        alpha_filter: cli.tol,
        ..defaults
    };
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Alpha { graph } => {
            let g = read_graph(&graph)?;
            let f = fiedler_vector(&g)?;
            let value = json!({
                "n": g.order(),
                "m": g.size(),
                "alpha": f.alpha,
                "fiedler_vector": f.vector,
                "multiplicity": f.multiplicity,
                "residual": f.residual,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        }
        Command::Families { command } => match command {
            FamiliesCommand::Gen { spec } => {
                let spec: FamilySpec = spec.parse()?;
                writeln!(out, "{}", graph6::encode(&realize(&spec)?)?)?;
            }
            FamiliesCommand::Equality { n } => {
                for member in equality_family(n)? {
                    writeln!(out, "{} {}", member.spec, member.code)?;
                }
            }
        },
        Command::Theta {
            command: ThetaCommand::Check { graph, lengths },
        } => {
            let g = read_graph(&graph)?;
            match theta_lengths(&g) {
                Some([a, b, c]) if lengths => writeln!(out, "true {a},{b},{c}")?,
                _ => writeln!(out, "{}", is_theta(&g))?,
            }
        }
        Command::Rewire { graph, format } => {
            let g = read_graph(&graph)?;
            let cert = rewire(&g, &fiedler_vector(&g)?)?;
            match format {
                TextFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&cert)?)?,
                TextFormat::Text => write!(out, "{}", cert.to_text())?,
            }
        }
        Command::Enumerate {
            n,
            predicate,
            shuffle,
        } => {
            let opts = EnumOptions {
                shuffle_seed: shuffle.then_some(cli.seed),
            };
            let mut w = BufWriter::new(out);
            let mut failed = None;
            stream_graphs(n, predicate, &opts, |e| {
                if failed.is_none() {
                    if let Err(err) = writeln!(w, "{}", e.code) {
                        failed = Some(err);
                    }
                }
            })?;
            if let Some(err) = failed {
                return Err(err.into());
            }
            w.flush()?;
        }
        Command::Verify { command } => {
            drop(out);
            return match command {
                VerifyCommand::T1 { n, output, resume } => verify_t1(n, &margins, &output, resume.as_deref()),
                VerifyCommand::T2 { n_max, output } => verify_t2(n_max, &margins, &output),
            };
        }
        Command::CheckProps => {
            let outcomes = suites::run_all(cli.seed)?;
            let mut ok = true;
            for o in &outcomes {
                writeln!(
                    out,
                    "{} {}: {} cases, worst {:.3e} (threshold {:.0e}) {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.name,
                    o.cases,
                    o.worst,
                    o.threshold,
                    o.detail
                )?;
                ok &= o.passed;
            }
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            if let Some(io) = err.downcast_ref::<io::Error>() {
                if io.kind() == io::ErrorKind::BrokenPipe {
                    return ExitCode::SUCCESS;
                }
            }
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

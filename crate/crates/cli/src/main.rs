use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

use kpres::abelian::abelianize;
use kpres::dps::{build_presentation, frame_map, Frame, Presentation, Variant};
use kpres::format::{from_json, parse_word, to_gap, to_json, to_magma, to_text};
use kpres::gproduct::check_identity;
use kpres::par::{configure_threads, Exec};
use kpres::tietze::{replay, structural_replay, ReplayReport, TietzeScript};
use kpres::verify::{verify, VerifyOptions};

#[derive(Parser)]
#[command(name = "kpres", version, about = "Presentations of the kernels K_r and their verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a presentation.
    Generate(GenerateArgs),
    /// Check relators, kernel membership, the identity corpus, mutants and b1.
    Verify(VerifyArgs),
    /// Print the first Betti number.
    Betti(Target),
    /// Decide whether two words are equal in G.
    CheckIdentity(IdentityArgs),
    /// Convert a JSON presentation (or a built one) to another format.
    Export(ExportArgs),
    /// Replay Tietze moves, by default the structural simplification.
    ReplayTietze(ReplayArgs),
}

#[derive(Args)]
struct Target {
    #[arg(short = 'r', long = "rank", visible_alias = "r")]
    rank: u16,
    #[arg(long, default_value = "thm1.1")]
    variant: Variant,
}

#[derive(Args)]
struct Jobs {
    /// Worker threads; defaults to the number of processors.
    #[arg(long)]
    jobs: Option<usize>,
}

impl Jobs {
    fn exec(&self) -> Exec {
        let n = self.jobs.unwrap_or(0);
        if let Err(e) = configure_threads(n) {
            log::warn!("thread pool: {e}");
        }
        Exec::for_jobs(n)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Gap,
    Magma,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    jobs: Jobs,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    target: Target,
    #[command(flatten)]
    jobs: Jobs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of single-letter mutants to try.
    #[arg(long = "mutate", default_value_t = 100)]
    mutate: usize,
    /// Skip the identity corpus.
    #[arg(long)]
    no_corpus: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FrameArg {
    Product,
    Kernel,
    Surface,
}

#[derive(Args)]
struct IdentityArgs {
    #[arg(short = 'r', long = "rank", visible_alias = "r")]
    rank: u16,
    #[arg(long)]
    lhs: String,
    #[arg(long)]
    rhs: String,
    /// How x, c[i,r] and del are read.
    #[arg(long, value_enum, default_value = "product")]
    frame: FrameArg,
}

#[derive(Args)]
struct ExportArgs {
    /// A presentation in the JSON format; without it one is built.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(short = 'r', long = "rank", visible_alias = "r")]
    rank: Option<u16>,
    #[arg(long, default_value = "thm1.1")]
    variant: Variant,
    #[arg(long, value_enum, default_value = "gap")]
    format: Format,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ReplayArgs {
    #[arg(short = 'r', long = "rank", visible_alias = "r", default_value_t = 4)]
    rank: u16,
    /// Replay this JSON script instead of the structural simplification.
    #[arg(long)]
    script: Option<PathBuf>,
    /// Write the script that was replayed.
    #[arg(long)]
    emit_script: Option<PathBuf>,
    #[command(flatten)]
    jobs: Jobs,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

/// A usage error (exit 2) or a failed verdict (exit 1).
enum Failure {
    Usage(String),
    Verdict(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn render(p: &Presentation, format: Format) -> String {
    match format {
        Format::Text => to_text(p),
        Format::Json => to_json(p),
        Format::Gap => to_gap(p),
        Format::Magma => to_magma(p),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn generate(a: &GenerateArgs) -> Outcome {
    a.jobs.exec();
    let p = build_presentation(a.target.rank, a.target.variant)?;
    emit(&a.output, &render(&p, a.format))?;
    Ok(true)
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let opts = VerifyOptions { exec: a.jobs.exec(), seed: a.seed, mutations: a.mutate, corpus: !a.no_corpus };
    let rep = verify(a.target.rank, a.target.variant, &opts)?;
    info!("verified in {} ms", rep.wall_time_ms);
    let text = match a.format {
        ReportFormat::Text => format!("{rep}wall time {} ms\n", rep.wall_time_ms),
        ReportFormat::Json => rep.to_json(),
    };
    emit(&a.output, &text)?;
    match rep.first_failure() {
        None => Ok(true),
        Some(what) => Err(Failure::Verdict(format!("FAIL: {what}"))),
    }
}

fn betti(t: &Target) -> Outcome {
    let p = build_presentation(t.rank, t.variant)?;
    println!("{}", abelianize(&p).rank);
    Ok(true)
}

fn identity(a: &IdentityArgs) -> Outcome {
    let frame = match a.frame {
        FrameArg::Product => Frame::Product,
        FrameArg::Kernel => Frame::Kernel,
        FrameArg::Surface => Frame::Surface,
    };
    let m = frame_map(frame, a.rank)?;
    let lhs = m.to_ambient(&parse_word(&a.lhs).map_err(|e| Failure::Usage(format!("--lhs: {e}")))?)?;
    let rhs = m.to_ambient(&parse_word(&a.rhs).map_err(|e| Failure::Usage(format!("--rhs: {e}")))?)?;
    let equal = check_identity(&lhs, &rhs)?;
    println!("{}", if equal { "EQUAL" } else { "NOT-EQUAL" });
    Ok(equal)
}

fn export(a: &ExportArgs) -> Outcome {
    let p = match (&a.input, a.rank) {
        (Some(path), _) => from_json(&read(path)?)?,
        (None, Some(r)) => build_presentation(r, a.variant)?,
        (None, None) => return Err(Failure::Usage("export needs --input or --rank".into())),
    };
    emit(&a.output, &render(&p, a.format))?;
    Ok(true)
}

fn summarize(report: &ReplayReport, out: &mut String) {
    for (n, s) in report.steps.iter().enumerate() {
        out.push_str(&format!(
            "step {}: {} -> {} generators, {} relators, {}\n",
            n + 1,
            s.description,
            s.generators,
            s.relators,
            s.abelianization
        ));
    }
    if let Some(c) = &report.comparison {
        out.push_str(&format!(
            "generators match: {}; missing relators: {}; extra relators: {}\n",
            c.generators_match,
            c.missing.len(),
            c.extra.len()
        ));
    }
}

fn replay_tietze(a: &ReplayArgs) -> Outcome {
    let exec = a.jobs.exec();
    let mut out = String::new();
    let (script, report) = match &a.script {
        Some(path) => {
            let script: TietzeScript = serde_json::from_str(&read(path)?)?;
            let report = replay(&script, exec)?;
            (script, report)
        }
        None => {
            let s = structural_replay(a.rank, exec)?;
            out.push_str(&format!(
                "relators added with certificates: {}; added by checked replacement: {}\n",
                s.completion.certified_additions, s.completion.checked_additions
            ));
            out.push_str(&format!(
                "relators removed with certificates: {}; removed by checked replacement: {}\n",
                s.completion.certified_removals, s.completion.checked_removals
            ));
            (s.script, s.report)
        }
    };
    let mut text = format!("replay {} r={} ({} moves)\n", script.start, script.rank, script.moves.len());
    summarize(&report, &mut text);
    text.push_str(&out);
    let ok = report.succeeded();
    text.push_str(&format!("verdict {}\n", if ok { "PASS" } else { "FAIL" }));
    emit(&a.output, &text)?;
    if let Some(path) = &a.emit_script {
        let json = serde_json::to_string_pretty(&script)? + "\n";
        emit(&Some(path.clone()), &json)?;
    }
    Ok(ok)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Generate(a) => generate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Betti(t) => betti(t),
        Command::CheckIdentity(a) => identity(a),
        Command::Export(a) => export(a),
        Command::ReplayTietze(a) => replay_tietze(a),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verdict(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

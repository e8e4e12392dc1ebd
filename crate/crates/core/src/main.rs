use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use fgmod::cli::{exit_code, run, Command, Format, JobSpec};
use fgmod::io::parse_field_flag;

/// Modules of finite soluble groups over finite fields.
#[derive(Parser, Debug)]
#[command(name = "fgmod", version)]
struct Args {
    /// Job document (JSON).
    #[arg(long)]
    input: Option<PathBuf>,
    /// classify | decompose | components | blocks | principal-block |
    /// cohomology | chief-series | verify | paper-example
    #[arg(long)]
    command: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Prime for the principal-block criterion, or the field GF(p) when the
    /// input names none.
    #[arg(long)]
    prime: Option<u32>,
    /// Normal subgroup generators, e.g. "(1 2 3);(4 5 6)".
    #[arg(long)]
    normal: Option<String>,
    /// Cohomology degree (1 or 2).
    #[arg(long, default_value_t = 1)]
    degree: u8,
    /// Field override, e.g. "p=2" or "p=2,k=2".
    #[arg(long)]
    field: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Text,
    Json,
}

fn build_job(args: &Args) -> anyhow::Result<JobSpec> {
    let command: Command = args.command.parse()?;
    let mut job = JobSpec::new(command);
    job.input = args.input.as_ref().map(std::fs::read_to_string).transpose()?;
    job.seed = args.seed;
    job.format = match args.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    job.prime = args.prime;
    job.normal = args.normal.clone();
    job.degree = args.degree;
    job.field = args.field.as_deref().map(parse_field_flag).transpose()?;
    Ok(job)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let job = match build_job(&args) {
        Ok(j) => j,
        Err(e) => {
            match e.downcast_ref::<fgmod::Error>() {
                Some(err) => eprintln!("error: {}: {err}", err.name()),
                None => eprintln!("error: {e}"),
            }
            return ExitCode::from(1);
        }
    };
    let result = run(&job);
    let code = exit_code(&result);
    match result {
        Ok(report) => {
            let text = report.render(job.format);
            match &args.output {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, text) {
                        eprintln!("error: {e}");
                        return ExitCode::from(1);
                    }
                }
                None => {
                    let mut out = std::io::stdout().lock();
                    if let Err(e) = writeln!(out, "{text}") {
                        if e.kind() != std::io::ErrorKind::BrokenPipe {
                            eprintln!("error: {e}");
                            return ExitCode::from(1);
                        }
                    }
                }
            }
        }
        Err(e) => eprintln!("error: {}: {e}", e.name()),
    }
    ExitCode::from(code as u8)
}

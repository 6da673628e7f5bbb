use clap::{Parser, Subcommand, ValueEnum};
use qclass_core::suite::{apply_env_caps, run_suite, Format, Suite, SuiteConfig, SuiteError};
use qclass_core::Mode;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qclass", version, about = "Exact verification suites for quantum conjugacy classes of SO_q(N)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit its report.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// JSON file holding the class, mode, caps and optional output settings.
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Worker threads; defaults to the number of cores.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Rmatrix,
    Verma,
    Singular,
    Tensor,
    Spectra,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Rmatrix => Suite::Rmatrix,
            SuiteArg::Verma => Suite::Verma,
            SuiteArg::Singular => Suite::Singular,
            SuiteArg::Tensor => Suite::Tensor,
            SuiteArg::Spectra => Suite::Spectra,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Generic,
    Specialized,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_CONFIG);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let Command::Verify { suite, config, mode, out, format, jobs } = cli.command;
    match verify(suite.into(), &config, mode, out, format, jobs) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("qclass: {e}");
            ExitCode::from(match e {
                SuiteError::Resource { .. } => EXIT_RESOURCE,
                SuiteError::Config(_) | SuiteError::Io(_) => EXIT_CONFIG,
            })
        }
    }
}

fn verify(
    suite: Suite,
    config_path: &PathBuf,
    mode: Option<ModeArg>,
    out: Option<PathBuf>,
    format: Option<FormatArg>,
    jobs: Option<usize>,
) -> Result<bool, SuiteError> {
    let text = std::fs::read_to_string(config_path)
        .map_err(|e| SuiteError::Config(format!("cannot read {}: {e}", config_path.display())))?;
    let mut config = SuiteConfig::from_json(&text)?;
    if let Some(m) = mode {
        config.mode = match m {
            ModeArg::Generic => Mode::Generic,
            ModeArg::Specialized => Mode::Specialized,
        };
    }
    apply_env_caps(&mut config)?;

    let output = config.output.clone();
    let format = match format {
        Some(FormatArg::Json) => Format::Json,
        Some(FormatArg::Text) => Format::Text,
        None => output.as_ref().map(|o| o.format).unwrap_or_default(),
    };
    let out = out.or_else(|| output.and_then(|o| o.path).map(PathBuf::from));

    if jobs == Some(0) {
        return Err(SuiteError::Config("--jobs must be positive".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| SuiteError::Config(e.to_string()))?;
    let report = pool.install(|| run_suite(suite, &config))?;

    let rendered = report.render(format);
    match out {
        Some(path) => {
            std::fs::write(&path, rendered)?;
            eprintln!("{} {}: {}", report.suite, report.class, if report.pass { "PASS" } else { "FAIL" });
        }
        None => println!("{rendered}"),
    }
    Ok(report.pass)
}

use std::fs;
use std::io::{self, Read, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use argrank::api::{payload_json, solve_framework, SolvePayload, SolveResult, Task};
use argrank::budget::Budget;
use argrank::format::parse_auto;
use argrank::properties::{search_counterexample, PropertyId, PropertyReport, SearchConfig};
use argrank::server::{serve, ServerConfig};
use argrank::{ArgumentationFramework, Error, PowerIndex, Semantics, DEFAULT_MAX_ARGS, HARD_MAX_ARGS};

#[derive(Parser)]
#[command(
    name = "argrank",
    version,
    about = "Rank arguments of abstract argumentation frameworks with power indexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score every argument and print the ranking.
    Rank(RankArgs),
    /// List the extensions of a semantics.
    Extensions(ExtensionsArgs),
    /// List the labellings induced by the extensions.
    Labellings(ExtensionsArgs),
    /// Check ranking properties on a framework, or search for a counterexample.
    Properties(PropertiesArgs),
    /// Run the JSON solve service.
    Serve(ServeArgs),
}

#[derive(Args)]
struct Input {
    /// APX or JSON framework file, `-` for stdin.
    file: PathBuf,
    #[arg(long, value_parser = parse_semantics)]
    semantics: Semantics,
    /// Largest framework accepted.
    #[arg(long, default_value_t = DEFAULT_MAX_ARGS)]
    max_args: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Tsv,
    Json,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_parser = parse_index)]
    index: PowerIndex,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Compare exact rationals and print them next to the 5-decimal values.
    #[arg(long)]
    exact: bool,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExtensionsArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Print only the number of extensions.
    #[arg(long)]
    count: bool,
}

#[derive(Args)]
struct PropertiesArgs {
    /// APX or JSON framework file, `-` for stdin. Not used with --search.
    file: Option<PathBuf>,
    #[arg(long, value_parser = parse_semantics)]
    semantics: Semantics,
    #[arg(long, value_parser = parse_index, default_value = "shapley")]
    index: PowerIndex,
    /// `all` or one property name.
    #[arg(long, default_value = "all")]
    property: String,
    /// Search generated frameworks for a violation of this property.
    #[arg(long, value_parser = parse_property, conflicts_with = "file")]
    search: Option<PropertyId>,
    /// Input size limit, or with --search the largest generated framework
    /// (default 6).
    #[arg(long)]
    max_args: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    host: IpAddr,
    #[arg(long, default_value_t = DEFAULT_MAX_ARGS)]
    max_args: usize,
    #[arg(long, default_value_t = 30_000)]
    timeout_ms: u64,
}

fn parse_semantics(s: &str) -> Result<Semantics, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_index(s: &str) -> Result<PowerIndex, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_property(s: &str) -> Result<PropertyId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Lib(Error::TooManyArguments { .. }) => 3,
            CliError::Lib(Error::InvalidRequest(_)) | CliError::Usage(_) => 4,
            CliError::Lib(_) => 2,
        }
    }
}

fn io_error(path: &std::path::Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn read_framework(path: &std::path::Path, max_args: usize) -> Result<ArgumentationFramework, CliError> {
    if max_args > HARD_MAX_ARGS {
        return Err(CliError::Usage(format!(
            "--max-args may not exceed {HARD_MAX_ARGS}"
        )));
    }
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map_err(io_error(path))?;
    } else {
        text = fs::read_to_string(path).map_err(io_error(path))?;
    }
    Ok(parse_auto(&text, max_args)?)
}

fn warn(payload: &SolvePayload) {
    for w in &payload.warnings {
        eprintln!("warning: {w}");
    }
}

fn render_rank(payload: &SolvePayload, format: OutputFormat) -> String {
    let SolveResult::Rank {
        scores,
        ranking,
        rendered,
        ..
    } = &payload.result
    else {
        unreachable!("rank task yields rank result")
    };
    let class_of = |a: &str| {
        ranking
            .iter()
            .position(|c| c.iter().any(|x| x == a))
            .map_or(0, |k| k + 1)
    };
    let exact = |s: &Option<String>| s.as_deref().map(|e| format!(" ({e})")).unwrap_or_default();
    let mut out = String::new();
    match format {
        OutputFormat::Json => {
            out = payload_json(payload);
            out.push('\n');
        }
        OutputFormat::Tsv => {
            out.push_str("argument\tpi_in\tpi_out\tclass\n");
            for s in scores {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    s.argument,
                    s.pi_in,
                    s.pi_out,
                    class_of(&s.argument)
                ));
            }
        }
        OutputFormat::Text => {
            if !scores.is_empty() {
                out.push_str(&format!("{:<12} {:>12} {:>12}\n", "argument", "pi_in", "pi_out"));
            }
            for s in scores {
                out.push_str(&format!(
                    "{:<12} {:>12} {:>12}{}{}\n",
                    s.argument,
                    s.pi_in,
                    s.pi_out,
                    exact(&s.pi_in_exact),
                    exact(&s.pi_out_exact)
                ));
            }
            out.push_str(rendered);
            out.push('\n');
        }
    }
    out
}

fn cmd_rank(args: RankArgs) -> Result<(), CliError> {
    let af = read_framework(&args.input.file, args.input.max_args)?;
    let payload = solve_framework(
        &af,
        args.input.semantics,
        Task::Rank,
        Some(args.index),
        args.exact,
        &Budget::unlimited(),
    )?;
    warn(&payload);
    let text = render_rank(&payload, args.format);
    match &args.output {
        Some(path) => fs::write(path, text).map_err(io_error(path)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_extensions(args: ExtensionsArgs, task: Task) -> Result<(), CliError> {
    if args.format == OutputFormat::Tsv {
        return Err(CliError::Usage("tsv output is only available for rank".into()));
    }
    let af = read_framework(&args.input.file, args.input.max_args)?;
    let payload = solve_framework(&af, args.input.semantics, task, None, false, &Budget::unlimited())?;
    warn(&payload);
    let braces = |v: &[String]| format!("{{{}}}", v.join(","));
    let mut out = io::stdout().lock();
    let written = match (&payload.result, args.count, args.format) {
        (SolveResult::Extensions { count, .. } | SolveResult::Labellings { count, .. }, true, _) => {
            writeln!(out, "{count}")
        }
        (_, false, OutputFormat::Json) => writeln!(out, "{}", payload_json(&payload)),
        (SolveResult::Extensions { extensions, .. }, false, _) => {
            extensions.iter().try_for_each(|e| writeln!(out, "{}", braces(e)))
        }
        (SolveResult::Labellings { labellings, .. }, false, _) => labellings.iter().try_for_each(|l| {
            writeln!(
                out,
                "in={} out={} undec={}",
                braces(&l.in_set),
                braces(&l.out),
                braces(&l.undec)
            )
        }),
        _ => unreachable!("enumeration tasks only"),
    };
    written.map_err(io_error(std::path::Path::new("stdout")))
}

fn report_line(r: &PropertyReport) -> String {
    let verdict = serde_json::to_value(r.verdict).expect("enum serializes");
    let verdict = verdict.as_str().unwrap_or_default();
    match &r.witness {
        Some(w) => format!("{}\t{verdict}\t{} vs {}", r.property, w.pair[0], w.pair[1]),
        None => format!("{}\t{verdict}", r.property),
    }
}

fn cmd_properties(args: PropertiesArgs) -> Result<(), CliError> {
    if args.format == OutputFormat::Tsv {
        return Err(CliError::Usage("tsv output is only available for rank".into()));
    }
    if let Some(property) = args.search {
        let config = SearchConfig {
            max_args: args.max_args.unwrap_or(6),
            samples: args.samples,
            seed: args.seed,
            ..SearchConfig::default()
        };
        let outcome = search_counterexample(property, args.semantics, args.index, &config)?;
        if args.format == OutputFormat::Json {
            println!("{}", serde_json::to_string(&outcome).expect("report serializes"));
        } else {
            println!("{}", report_line(&outcome.report));
            println!(
                "tested {} frameworks, skipped {} degenerate",
                outcome.tested, outcome.skipped_degenerate
            );
            if let Some(w) = &outcome.report.witness {
                println!("{}", w.apx);
            }
        }
        return Ok(());
    }
    let file = args
        .file
        .as_ref()
        .ok_or_else(|| CliError::Usage("a framework file is required unless --search is given".into()))?;
    let af = read_framework(file, args.max_args.unwrap_or(DEFAULT_MAX_ARGS))?;
    let wanted = match args.property.as_str() {
        "all" => None,
        name => Some(
            name.parse::<PropertyId>()
                .map_err(|e| CliError::Usage(e.to_string()))?,
        ),
    };
    let payload = solve_framework(
        &af,
        args.semantics,
        Task::Properties,
        Some(args.index),
        false,
        &Budget::unlimited(),
    )?;
    warn(&payload);
    let SolveResult::Properties { reports } = payload.result else {
        unreachable!("properties task yields reports")
    };
    let reports: Vec<_> = reports
        .into_iter()
        .filter(|r| wanted.is_none_or(|p| p == r.property))
        .collect();
    if args.format == OutputFormat::Json {
        println!("{}", serde_json::to_string(&reports).expect("report serializes"));
    } else {
        for r in &reports {
            println!("{}", report_line(r));
        }
    }
    Ok(())
}

fn cmd_serve(args: ServeArgs) -> Result<(), CliError> {
    if args.max_args > HARD_MAX_ARGS {
        return Err(CliError::Usage(format!(
            "--max-args may not exceed {HARD_MAX_ARGS}"
        )));
    }
    let config = ServerConfig {
        max_args: args.max_args,
        timeout: Duration::from_millis(args.timeout_ms),
    };
    let addr = SocketAddr::new(args.host, args.port);
    let runtime = tokio::runtime::Runtime::new().map_err(io_error(std::path::Path::new("runtime")))?;
    eprintln!("listening on http://{addr}");
    runtime
        .block_on(serve(addr, config))
        .map_err(io_error(std::path::Path::new("server")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Rank(a) => cmd_rank(a),
        Command::Extensions(a) => cmd_extensions(a, Task::Extensions),
        Command::Labellings(a) => cmd_extensions(a, Task::Labellings),
        Command::Properties(a) => cmd_properties(a),
        Command::Serve(a) => cmd_serve(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

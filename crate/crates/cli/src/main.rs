use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode as ProcessExit;

use clap::Parser;
use cosym::io::{self, corpus, CommandError, CommandOptions, ExitCode, FrameDoc, RingSpec};
use cosym::scalar::parse_rational;
use cosym::{Error, Rational};

/// Exact verifier for cosymplectic spheres and almost contact 3-structures.
#[derive(Parser, Debug)]
#[command(name = "cosym", version)]
struct Cli {
    /// One of: verify reeb classify class sphere taut round distribution
    /// symplectize couple recursion ac-verify ac3-verify nijenhuis ntensors
    /// lambda chardist hyperholo examples
    command: String,

    /// Frame file, `-` for stdin, or a built-in name such as `r7_pair.frame`.
    input: Option<String>,

    /// Coefficient ring the input must use: `rational` or `lambda:<p>`.
    #[arg(long, value_parser = RingSpec::parse)]
    ring: Option<RingSpec>,

    /// Maximum subdivision depth for sphere certificates.
    #[arg(long)]
    max_depth: Option<usize>,

    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,

    /// Directory searched for relative input names.
    #[arg(long, env = "COSYM_CORPUS")]
    corpus: Option<PathBuf>,

    /// Rational point `a,b,c` of the unit 2-sphere for `lambda`.
    #[arg(long, value_parser = parse_point)]
    point: Option<PointArg>,
}

#[derive(Clone, Debug)]
struct PointArg([Rational; 3]);

fn parse_point(s: &str) -> Result<PointArg, String> {
    let v = s.split(',').map(|t| parse_rational(t.trim())).collect::<Result<Vec<_>, _>>()?;
    let arr: [Rational; 3] = v.try_into().map_err(|_| "expected three comma-separated rationals".to_string())?;
    Ok(PointArg(arr))
}

fn load(input: &str, corpus_dir: Option<&Path>) -> Result<FrameDoc, Error> {
    let read = |p: &Path| {
        std::fs::read_to_string(p).map_err(|e| Error::Parse { line: 0, column: 0, message: format!("{}: {e}", p.display()) })
    };
    let text = if input == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| Error::Parse { line: 0, column: 0, message: format!("stdin: {e}") })?;
        Some(s)
    } else if Path::new(input).is_file() {
        Some(read(Path::new(input))?)
    } else {
        match corpus_dir.map(|d| d.join(input)).filter(|p| p.is_file()) {
            Some(p) => Some(read(&p)?),
            None => None,
        }
    };
    match text {
        Some(t) => {
            let mut doc = io::parse_frame_file(&t)?;
            if doc.name.is_none() {
                let stem = Path::new(input).file_stem().and_then(|s| s.to_str()).unwrap_or("-");
                doc.name = Some(stem.to_string());
            }
            Ok(doc)
        }
        None => corpus::builtin(input).ok_or_else(|| Error::UnknownName(format!("{input} (no such file, corpus entry or built-in)"))),
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CommandError> {
    let docs = match &cli.input {
        Some(i) => vec![load(i, cli.corpus.as_deref())?],
        None => Vec::new(),
    };
    let opts = CommandOptions { ring: cli.ring, max_depth: cli.max_depth, point: cli.point.clone().map(|p| p.0) };
    let mut report = io::run_command(&cli.command, &docs, &opts)?;
    report.stamp();
    let to_stdout = cli.json.as_deref() == Some(Path::new("-"));
    let text = if to_stdout {
        report.to_json() + "\n"
    } else if cli.command == "examples" {
        io::examples_table(&report)
    } else {
        report.text()
    };
    // A closed pipe downstream is not an error for us.
    let _ = std::io::stdout().write_all(text.as_bytes());
    if let Some(p) = cli.json.as_deref().filter(|_| !to_stdout) {
        std::fs::write(p, report.to_json() + "\n")
            .map_err(|e| CommandError::Usage(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(report.exit_code())
}

fn main() -> ProcessExit {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("cosym: {e}");
            e.exit_code()
        }
    };
    ProcessExit::from(code.code() as u8)
}

//! `netccs`: classify Petri nets, encode them into CCS, build transition
//! systems and check the encodings for bisimilarity.
//!
//! Exit codes: 0 success, 1 a requested verdict is false, 2 input or usage
//! error, 3 state limit exceeded.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use netccs::ccs::{build_ccs_lts, DefiningEquations, Process};
use netccs::encode::{encode_as, EncodingClass, PipelineOutput};
use netccs::equivalence::{has_divergent_path, strong_bisim, weak_bisim};
use netccs::io::{parse_ccs, parse_net_text, parse_pnml, print_ccs, write_aut};
use netccs::petri::classify;
use netccs::transform::{Selection, TransformOptions};
use netccs::{Error, ExplorationLimits, Lts, Marking, PetriNet};

use report::{
    EncodingStats, Failure, InputDigest, LtsStats, RunReport, TransformSummary, Verdicts,
};

#[derive(Parser)]
#[command(
    name = "netccs",
    version,
    about = "Petri net to CCS encoder and bisimulation checker"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Relation {
    Strong,
    Weak,
}

#[derive(Subcommand)]
enum Command {
    /// Print every class flag with the reasons for failed ones.
    Classify {
        /// Net in `.pn` or PNML (`.pnml`, `.xml`) form.
        file: PathBuf,
    },
    /// Encode a net into CCS.
    Encode {
        file: PathBuf,
        /// auto, ccs, 2tau, fcwf, fc or gc.
        #[arg(long, default_value = "auto", value_parser = parse_class)]
        class: ClassChoice,
        /// Write the CCS program here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run the pipeline even if the net is outside its class.
        #[arg(long)]
        force: bool,
        /// Seed for random rewrite selection; lexicographic when absent.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Build the transition system of a net (or of a CCS program with
    /// `--ccs`) in Aldebaran format.
    Lts {
        file: PathBuf,
        /// Treat the input as a CCS program.
        #[arg(long)]
        ccs: bool,
        #[arg(long, default_value_t = ExplorationLimits::DEFAULT_MAX_STATES)]
        max_states: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode a net and check the encoding against it.
    Check {
        file: PathBuf,
        /// Relation deciding the exit code. Defaults to strong for direct
        /// encodings and weak for pipelines that rewrite the net.
        #[arg(long, value_enum)]
        relation: Option<Relation>,
        /// Also require divergence to agree on both sides.
        #[arg(long)]
        divergence: bool,
        #[arg(long, default_value_t = ExplorationLimits::DEFAULT_MAX_STATES)]
        max_states: usize,
        #[arg(long, default_value = "auto", value_parser = parse_class)]
        class: ClassChoice,
        #[arg(long)]
        force: bool,
        #[arg(long)]
        seed: Option<u64>,
        /// Compare against this CCS program instead of the generated one.
        #[arg(long, value_name = "FILE")]
        ccs: Option<PathBuf>,
    },
}

#[derive(Clone, Copy)]
enum ClassChoice {
    Auto,
    Fixed(EncodingClass),
}

fn parse_class(s: &str) -> Result<ClassChoice, String> {
    if s == "auto" {
        return Ok(ClassChoice::Auto);
    }
    s.parse()
        .map(ClassChoice::Fixed)
        .map_err(|e: Error| e.to_string())
}

struct Failed {
    kind: &'static str,
    message: String,
    code: u8,
}

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        let (kind, code) = match &e {
            Error::ResourceLimit { .. } => ("resource_limit", 3),
            Error::Parse(_) => ("parse", 2),
            Error::Input(_) => ("input", 2),
            Error::Precondition(_) => ("precondition", 2),
            Error::Unsupported(_) => ("unsupported", 2),
        };
        Failed {
            kind,
            message: e.to_string(),
            code,
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Failed {
    Failed {
        kind: "io",
        message: format!("{}: {e}", path.display()),
        code: 2,
    }
}

/// What a successful command prints in text mode besides the report.
enum Success {
    Report,
    Payload(String),
    Verdict(bool),
}

fn read_input(path: &Path, report: &mut RunReport) -> Result<String, Failed> {
    let bytes = fs::read(path).map_err(|e| io_error(path, e))?;
    report
        .inputs
        .push(InputDigest::new(&path.display().to_string(), &bytes));
    String::from_utf8(bytes).map_err(|_| Failed {
        kind: "input",
        message: format!("{}: not valid UTF-8", path.display()),
        code: 2,
    })
}

fn load_net(path: &Path, report: &mut RunReport) -> Result<(PetriNet, Marking), Failed> {
    let text = read_input(path, report)?;
    let is_xml = matches!(
        path.extension().and_then(|e| e.to_str()),
        Some("pnml" | "xml")
    );
    let parsed = report.timed("parse", || {
        if is_xml {
            parse_pnml(&text)
        } else {
            parse_net_text(&text)
        }
    });
    parsed.map_err(|e| with_path(path, e))
}

fn load_ccs(path: &Path, report: &mut RunReport) -> Result<(Process, DefiningEquations), Failed> {
    let text = read_input(path, report)?;
    let parsed = report.timed("parse", || parse_ccs(&text));
    parsed.map_err(|e| with_path(path, e))
}

fn with_path(path: &Path, e: Error) -> Failed {
    let mut f = Failed::from(e);
    f.message = format!("{}: {}", path.display(), f.message);
    f
}

fn write_output(path: &Path, text: &str) -> Result<(), Failed> {
    fs::write(path, text).map_err(|e| io_error(path, e))
}

fn options(force: bool, seed: Option<u64>) -> TransformOptions {
    TransformOptions {
        selection: seed.map_or(Selection::Lexicographic, Selection::Seeded),
        force,
    }
}

fn limits(max_states: usize) -> Result<ExplorationLimits, Failed> {
    if max_states == 0 {
        return Err(Failed {
            kind: "input",
            message: "--max-states must be positive".into(),
            code: 2,
        });
    }
    Ok(ExplorationLimits::new(max_states))
}

fn pipeline(
    net: &PetriNet,
    m0: &Marking,
    choice: ClassChoice,
    opts: TransformOptions,
    report: &mut RunReport,
) -> Result<(EncodingClass, PipelineOutput), Failed> {
    let class = report.timed("classify", || classify(net));
    let narrowest = EncodingClass::narrowest(net);
    report.classification = Some(class);
    let class = match choice {
        ClassChoice::Fixed(c) => c,
        ClassChoice::Auto => narrowest.ok_or_else(|| Failed {
            kind: "precondition",
            message: "the net is in none of the supported classes (ccs, 2tau, fcwf, fc, gc)".into(),
            code: 2,
        })?,
    };
    let out = report.timed("encode", || encode_as(class, net, m0, opts))?;
    report.transform = Some(TransformSummary {
        steps: out.trace.len(),
        fresh_transitions: out
            .trace
            .records
            .iter()
            .map(|r| r.fresh_transition.to_string())
            .collect(),
        fresh_places: out
            .trace
            .records
            .iter()
            .map(|r| r.fresh_place.to_string())
            .collect(),
    });
    report.encoding = Some(EncodingStats {
        class,
        equations: out.encoding.defs.len(),
        restricted_names: out.encoding.restricted_names().len(),
        symbols: out.encoding.symbol_count(),
    });
    Ok((class, out))
}

fn lts_stats(role: &'static str, lts: &Lts) -> LtsStats {
    LtsStats {
        role,
        states: lts.num_states(),
        edges: lts.num_edges(),
    }
}

fn run(command: &Command, json: bool, report: &mut RunReport) -> Result<Success, Failed> {
    match command {
        Command::Classify { file } => {
            let (net, _) = load_net(file, report)?;
            report.classification = Some(report.timed("classify", || classify(&net)));
            Ok(Success::Report)
        }
        Command::Encode {
            file,
            class,
            out,
            force,
            seed,
        } => {
            let (net, m0) = load_net(file, report)?;
            let (_, output) = pipeline(&net, &m0, *class, options(*force, *seed), report)?;
            let text = print_ccs(&output.encoding);
            match out {
                Some(path) => {
                    write_output(path, &text)?;
                    Ok(Success::Report)
                }
                None if json => {
                    report.ccs = Some(text);
                    Ok(Success::Report)
                }
                None => Ok(Success::Payload(text)),
            }
        }
        Command::Lts {
            file,
            ccs,
            max_states,
            out,
        } => {
            let lim = limits(*max_states)?;
            let lts = if *ccs {
                let (q, defs) = load_ccs(file, report)?;
                report.timed("ccs_lts", || build_ccs_lts(&q, &defs, &lim))?
            } else {
                let (net, m0) = load_net(file, report)?;
                report.timed("net_lts", || net.build_lts(&m0, &lim))?
            };
            report
                .lts
                .push(lts_stats(if *ccs { "ccs" } else { "net" }, &lts));
            let text = write_aut(&lts);
            match out {
                Some(path) => {
                    write_output(path, &text)?;
                    Ok(Success::Report)
                }
                None if json => {
                    report.aut = Some(text);
                    Ok(Success::Report)
                }
                None => Ok(Success::Payload(text)),
            }
        }
        Command::Check {
            file,
            relation,
            divergence,
            max_states,
            class,
            force,
            seed,
            ccs,
        } => {
            let lim = limits(*max_states)?;
            let (net, m0) = load_net(file, report)?;
            let (class, output) = pipeline(&net, &m0, *class, options(*force, *seed), report)?;
            let (q, defs) = match ccs {
                Some(path) => load_ccs(path, report)?,
                None => (output.encoding.process, output.encoding.defs),
            };
            let net_lts = report.timed("net_lts", || net.build_lts(&m0, &lim))?;
            report.lts.push(lts_stats("net", &net_lts));
            let ccs_lts = report.timed("ccs_lts", || build_ccs_lts(&q, &defs, &lim))?;
            report.lts.push(lts_stats("ccs", &ccs_lts));

            let relation = relation.unwrap_or(if class.transforms() {
                Relation::Weak
            } else {
                Relation::Strong
            });
            let strong = report.timed("strong_bisim", || strong_bisim(&net_lts, &ccs_lts));
            let weak = report.timed("weak_bisim", || weak_bisim(&net_lts, &ccs_lts));
            let mut verdicts = Verdicts {
                strong: Some(strong.verdict),
                weak: Some(weak.verdict),
                ..Verdicts::default()
            };
            let decisive = match relation {
                Relation::Strong => strong,
                Relation::Weak => weak,
            };
            let mut ok = decisive.verdict;
            report.distinguisher = decisive.distinguisher;
            if *divergence {
                let (before, after) = report.timed("divergence", || {
                    (has_divergent_path(&net_lts), has_divergent_path(&ccs_lts))
                });
                verdicts.divergence_before = Some(before);
                verdicts.divergence_after = Some(after);
                ok &= before == after;
            }
            report.verdicts = Some(verdicts);
            Ok(Success::Verdict(ok))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let json = cli.format == Format::Json;
    let mut report = RunReport {
        command: std::env::args().skip(1).collect(),
        ..RunReport::default()
    };
    let (code, payload) = match run(&cli.command, json, &mut report) {
        Ok(Success::Report) => (0, None),
        Ok(Success::Payload(text)) => (0, Some(text)),
        Ok(Success::Verdict(ok)) => (if ok { 0 } else { 1 }, None),
        Err(f) => {
            eprintln!("error: {}", f.message);
            report.error = Some(Failure {
                kind: f.kind,
                message: f.message,
            });
            (f.code, None)
        }
    };
    report.exit_code = code.into();
    if json {
        print!("{}", report.to_json());
    } else if let Some(text) = payload {
        print!("{text}");
    } else if report.error.is_none() {
        print!("{}", report.to_text());
    }
    ExitCode::from(code)
}

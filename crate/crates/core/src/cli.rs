//! The `anonlevel` command line.
//!
//! Exit codes: 0 success, 1 requirement not met, 2 parse, validation or usage
//! error, 3 internal invariant failure.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classifier::{
    self, map_taxonomies, optional_participants, self_check, AnalysisParams, Classification, Level, Variant,
};
use crate::corpus;
use crate::diagnostic::{has_errors, Diagnostic, Severity};
use crate::dsl;
use crate::model::ServiceModel;
use crate::report::{self, Report, ReportParams, SweepReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    RequirementNotMet = 1,
    InputError = 2,
    InvariantFailure = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Parser)]
#[command(name = "anonlevel", version, about = "Classify anonymity services by the trust they demand")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct Investigation {
    /// Service description (`-` reads standard input)
    file: PathBuf,
    /// Role whose anonymity is examined; optional when the model has one role
    #[arg(long)]
    observee: Option<String>,
    /// Participants trusted besides the observee and the TTPs
    #[arg(long, value_delimiter = ',')]
    trust: Vec<String>,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a service for one observee and trusted set
    Classify {
        #[command(flatten)]
        investigation: Investigation,
        #[command(flatten)]
        output: Output,
    },
    /// Classify a service under every choice of trusted participants
    Sweep {
        /// Service description (`-` reads standard input)
        file: PathBuf,
        #[arg(long)]
        observee: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Exit 0 iff the service reaches the required level
    Check {
        #[command(flatten)]
        investigation: Investigation,
        #[arg(long, value_parser = parse_level)]
        require_level: Level,
        /// Also require the publicity constraint and no warnings
        #[arg(long)]
        strict: bool,
    },
    /// Report every problem in a service description
    Validate {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Print the corresponding notions of earlier taxonomies
    Map {
        #[arg(long, value_parser = parse_level)]
        level: Level,
        #[arg(long, value_parser = parse_variant)]
        variant: Option<Variant>,
        #[command(flatten)]
        output: Output,
    },
    /// List the bundled example services, or print one
    Corpus { name: Option<String> },
}

fn parse_level(s: &str) -> Result<Level, String> {
    s.parse::<Level>().map_err(|e| e.to_string())
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse::<Variant>()
}

struct Session<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    color: bool,
}

/// A failed step: the status to exit with, after its message was printed.
struct Stop(ExitStatus);

type Step<T> = Result<T, Stop>;

impl Session<'_> {
    fn paint(&self, text: &str, ansi: &str) -> String {
        if self.color {
            format!("\x1b[{ansi}m{text}\x1b[0m")
        } else {
            text.to_owned()
        }
    }

    fn diagnostic(&mut self, source: &str, d: &Diagnostic) {
        let (label, ansi) = match d.severity {
            Severity::Error => ("error", "1;31"),
            Severity::Warning => ("warning", "1;33"),
        };
        let location = d.location.map(|l| format!("{l}: ")).unwrap_or_default();
        let label = self.paint(label, ansi);
        let source = if source.is_empty() { String::new() } else { format!("{source}:") };
        let _ = writeln!(self.err, "{source}{location}{label}[{}]: {}", d.code, d.message);
    }

    fn diagnostics(&mut self, source: &str, ds: &[Diagnostic]) {
        for d in ds {
            self.diagnostic(source, d);
        }
    }

    fn emit(&mut self, text: &str, out: Option<&Path>) -> Step<()> {
        let written = match out {
            Some(path) => std::fs::write(path, text),
            None => self.out.write_all(text.as_bytes()),
        };
        written.map_err(|e| {
            let _ = writeln!(self.err, "error: cannot write output: {e}");
            Stop(ExitStatus::InputError)
        })
    }

    fn read(&mut self, file: &Path) -> Step<String> {
        let mut text = String::new();
        let read = if file == Path::new("-") {
            io::stdin().read_to_string(&mut text).map(|_| ())
        } else {
            std::fs::read_to_string(file).map(|t| text = t)
        };
        read.map_err(|e| {
            let _ = writeln!(self.err, "error: cannot read {}: {e}", file.display());
            Stop(ExitStatus::InputError)
        })?;
        Ok(text)
    }

    fn load(&mut self, file: &Path) -> Step<ServiceModel> {
        let text = self.read(file)?;
        let parsed = dsl::parse(&text);
        let source = file.display().to_string();
        self.diagnostics(&source, &parsed.diagnostics);
        parsed.model.ok_or(Stop(ExitStatus::InputError))
    }

    fn params(&mut self, model: &ServiceModel, file: &Path, observee: Option<&str>, trust: &[String]) -> Step<AnalysisParams> {
        let source = file.display().to_string();
        let observee = match observee {
            Some(name) => name,
            None => AnalysisParams::sole_role(model).map_err(|d| {
                self.diagnostic(&source, &d);
                Stop(ExitStatus::InputError)
            })?,
        };
        AnalysisParams::new(model, observee, trust).map_err(|d| {
            self.diagnostic(&source, &d);
            Stop(ExitStatus::InputError)
        })
    }

    /// Classifies and runs the engine's self-check.
    fn classify(&mut self, model: &ServiceModel, params: &AnalysisParams, file: &Path) -> Step<Classification> {
        let source = file.display().to_string();
        let classification = classifier::classify(model, params).map_err(|errors| {
            self.diagnostics(&source, &errors);
            Stop(ExitStatus::InputError)
        })?;
        let broken = self_check(model, params, &classification);
        if !broken.is_empty() {
            self.diagnostics(&source, &broken);
            return Err(Stop(ExitStatus::InvariantFailure));
        }
        Ok(classification)
    }

    fn run(&mut self, command: Command) -> Step<ExitStatus> {
        match command {
            Command::Classify { investigation: inv, output } => {
                let model = self.load(&inv.file)?;
                let params = self.params(&model, &inv.file, inv.observee.as_deref(), &inv.trust)?;
                let classification = self.classify(&model, &params, &inv.file)?;
                let report = Report {
                    params: Some(ReportParams::from(&params)),
                    classification: Some(classification),
                    ..Report::new(&model.name)
                };
                let text = match output.format {
                    Format::Json => report::to_json(&report),
                    Format::Text => report::render_text(&report),
                };
                self.emit(&text, output.out.as_deref())?;
                Ok(ExitStatus::Success)
            }
            Command::Sweep { file, observee, output } => {
                let model = self.load(&file)?;
                let params = self.params(&model, &file, observee.as_deref(), &[])?;
                let observee = params.observee();
                let entries = classifier::sweep(&model, observee).map_err(|d| {
                    self.diagnostic(&file.display().to_string(), &d);
                    Stop(ExitStatus::InputError)
                })?;
                let mut status = ExitStatus::Success;
                for entry in &entries {
                    if let Ok(c) = &entry.outcome {
                        let broken = self_check(&model, &entry.params, c);
                        if !broken.is_empty() {
                            self.diagnostics(&file.display().to_string(), &broken);
                            status = ExitStatus::InvariantFailure;
                        }
                    } else if status == ExitStatus::Success {
                        status = ExitStatus::InputError;
                    }
                }
                let report = SweepReport::new(&model.name, observee, optional_participants(&model, observee), &entries);
                let text = match output.format {
                    Format::Json => report::to_json(&report),
                    Format::Text => report::render_sweep_text(&report),
                };
                self.emit(&text, output.out.as_deref())?;
                Ok(status)
            }
            Command::Check {
                investigation: inv,
                require_level,
                strict,
            } => {
                let model = self.load(&inv.file)?;
                let params = self.params(&model, &inv.file, inv.observee.as_deref(), &inv.trust)?;
                let c = self.classify(&model, &params, &inv.file)?;
                let mut shortfalls = Vec::new();
                if c.level < require_level {
                    shortfalls.push(format!("requires {}", require_level.abbr()));
                }
                if strict && !c.publicity.satisfied {
                    shortfalls.push("publicity constraint violated".to_owned());
                }
                if strict && !c.warnings.is_empty() {
                    shortfalls.push(format!("{} warning(s)", c.warnings.len()));
                }
                let source = inv.file.display().to_string();
                self.diagnostics(&source, &c.warnings);
                let (verdict, status) = if shortfalls.is_empty() {
                    (self.paint("PASS", "1;32"), ExitStatus::Success)
                } else {
                    (self.paint("FAIL", "1;31"), ExitStatus::RequirementNotMet)
                };
                let mut line = format!(
                    "{verdict} {}: {} for {} (required {})",
                    model.name,
                    report::describe_type(c.level, c.variant),
                    params.observee(),
                    require_level.abbr()
                );
                if !shortfalls.is_empty() {
                    line.push_str(&format!("; {}", shortfalls.join("; ")));
                }
                self.emit(&format!("{line}\n"), None)?;
                Ok(status)
            }
            Command::Validate { file, output } => {
                let text = self.read(&file)?;
                let parsed = dsl::parse(&text);
                let status = if has_errors(&parsed.diagnostics) {
                    ExitStatus::InputError
                } else {
                    ExitStatus::Success
                };
                match output.format {
                    Format::Json => {
                        let name = parsed.model.as_ref().map(|m| m.name.clone()).unwrap_or_default();
                        let report = Report {
                            diagnostics: parsed.diagnostics,
                            ..Report::new(name)
                        };
                        self.emit(&report::to_json(&report), output.out.as_deref())?;
                    }
                    Format::Text => {
                        let source = file.display().to_string();
                        self.diagnostics(&source, &parsed.diagnostics);
                        if let Some(model) = &parsed.model {
                            self.emit(&format!("ok: {}\n", model.name), output.out.as_deref())?;
                        }
                    }
                }
                Ok(status)
            }
            Command::Map { level, variant, output } => {
                let variants = match variant {
                    Some(v) => vec![v],
                    None if level.has_variants() => vec![Variant::Linkable, Variant::Unlinkable],
                    None => vec![Variant::None],
                };
                let mut maps = Vec::new();
                for v in variants {
                    let map = map_taxonomies(level, v).map_err(|d| {
                        self.diagnostic("", &d);
                        Stop(ExitStatus::InputError)
                    })?;
                    maps.push((v, map));
                }
                let text = match output.format {
                    Format::Json => {
                        let rows: Vec<serde_json::Value> = maps
                            .iter()
                            .map(|(v, map)| {
                                serde_json::json!({ "level": level, "variant": v, "correspondences": map })
                            })
                            .collect();
                        report::to_json(&rows)
                    }
                    Format::Text => maps
                        .iter()
                        .map(|(v, map)| {
                            let cell = |c: &Option<classifier::Correspondence>| {
                                c.as_ref().map_or("X".to_owned(), |c| c.to_string())
                            };
                            format!(
                                "{}: {} / {} / {}\n",
                                report::describe_type(level, *v),
                                cell(&map.flinn_maurer),
                                cell(&map.kohntopp_pfitzmann),
                                cell(&map.seys)
                            )
                        })
                        .collect(),
                };
                self.emit(&text, output.out.as_deref())?;
                Ok(ExitStatus::Success)
            }
            Command::Corpus { name: None } => {
                let width = corpus::ENTRIES.iter().map(|e| e.name.len()).max().unwrap_or(0);
                let mut text = String::new();
                for e in corpus::ENTRIES {
                    text.push_str(&format!(
                        "{:<width$}  {}  {}\n",
                        e.name,
                        e.level.abbr(),
                        report::describe_type(e.level, e.variant)
                    ));
                }
                self.emit(&text, None)?;
                Ok(ExitStatus::Success)
            }
            Command::Corpus { name: Some(name) } => match corpus::find(&name) {
                Some(entry) => {
                    self.emit(entry.text, None)?;
                    Ok(ExitStatus::Success)
                }
                None => {
                    let _ = writeln!(self.err, "error: no bundled model named '{name}'");
                    Err(Stop(ExitStatus::InputError))
                }
            },
        }
    }
}

/// Runs one invocation. `args` includes the program name. ANSI colour is
/// used only when `color` is set.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, color: bool) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                ExitStatus::InputError
            } else {
                let _ = out.write_all(rendered.as_bytes());
                ExitStatus::Success
            };
        }
    };
    let mut session = Session { out, err, color };
    match session.run(cli.command) {
        Ok(status) | Err(Stop(status)) => status,
    }
}

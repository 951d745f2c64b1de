//! Command-line front end: verification, synthesis, epistemic simulation
//! and joke rendering.
//!
//! Exit codes: 0 when the requested guarantee holds or a result was
//! produced, 1 when a guarantee is violated, no strategy exists within the
//! budget, or a transcript is inconsistent, 2 on invalid input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use hatline::report::{DeduceDoc, ReportDoc, SynthDoc, TranscriptDoc, HAT_QUESTION};
use hatline::{
    min_guaranteed_mistakes, parse_supply, run_transcript, simulate, verify_exhaustive_capped,
    verify_sampled, Announcement, Builtin, KnowStatus, Palette, PuzzleSpec, Strategy, Transcript,
    VerificationReport, Visibility, DEFAULT_ENUMERATION_CAP,
};

mod joke;

#[derive(Parser)]
#[command(name = "hatline", version)]
#[command(about = "Hat-guessing puzzles: verify strategies, search for optimal ones, replay bar jokes")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the primary output to a file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Seed for sampled verification
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Number of random assignments checked in sampled mode
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: u64,

    /// Ceiling on exhaustive enumeration
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PuzzleKind {
    /// Unlimited hats per color, line visibility
    Repeated,
    /// One more distinct-colored hat than logicians, no repeated announcements
    Distinct,
    /// Fixed hat supply with know/don't-know announcements
    Limited,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VisibilityKind {
    Complete,
    Line,
}

#[derive(Subcommand)]
enum Command {
    /// Check a strategy's worst-case guarantee over every assignment
    Verify {
        #[arg(long, value_enum)]
        puzzle: PuzzleKind,
        /// Number of logicians
        #[arg(long)]
        n: usize,
        /// Palette size for the repeated puzzle
        #[arg(long, default_value_t = 2)]
        colors: u32,
        /// Hat supply for the limited puzzle, e.g. R:3,B:2
        #[arg(long)]
        supply: Option<String>,
        /// One of: copy_front, same_different, parity, modular_sum, distinct3
        #[arg(long)]
        strategy: String,
        /// Check random assignments instead of all of them
        #[arg(long)]
        sampled: bool,
        /// Play one assignment (e.g. R,R,B,B,R) and emit its transcript
        #[arg(long, value_name = "ASSIGNMENT")]
        run: Option<String>,
        /// Comma-separated color names overriding the default palette
        #[arg(long)]
        names: Option<String>,
    },
    /// Find the smallest guaranteed mistake count for a small instance
    Synth {
        #[arg(long, value_enum)]
        puzzle: PuzzleKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        colors: u32,
        /// Fail (exit 1) if even this many mistakes cannot be guaranteed
        #[arg(long)]
        max_mistakes: Option<usize>,
    },
    /// Simulate know/don't-know rounds, or deduce a color from observed ones
    Epistemic {
        /// Hat supply, e.g. R:3,B:2
        #[arg(long)]
        supply: String,
        #[arg(long)]
        logicians: usize,
        /// Actual hats to simulate, e.g. R,R,R
        #[arg(long)]
        assignment: Option<String>,
        /// Observed statuses, e.g. idk,idk,know
        #[arg(long)]
        transcript: Option<String>,
        /// Logician (1-based, in speaking order) whose color to deduce
        #[arg(long)]
        query: Option<usize>,
        /// Speaking order as 1-based logicians; defaults to 1,2,...
        #[arg(long)]
        order: Option<String>,
        #[arg(long, value_enum, default_value_t = VisibilityKind::Complete)]
        visibility: VisibilityKind,
    },
    /// Retell a transcript as a bar joke
    Joke {
        /// Transcript JSON written by `verify --run` or `epistemic --assignment`
        #[arg(long, value_name = "FILE")]
        from: Option<PathBuf>,
        #[arg(long, value_enum)]
        puzzle: Option<PuzzleKind>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        colors: u32,
        #[arg(long)]
        strategy: Option<String>,
        /// Hat supply for the announcement version, e.g. R:3,B:2
        #[arg(long)]
        supply: Option<String>,
        #[arg(long)]
        logicians: Option<usize>,
        #[arg(long)]
        assignment: Option<String>,
        /// The waitress's question
        #[arg(long)]
        question: Option<String>,
    },
}

/// Anything that stops a command, split by exit code.
enum Failure {
    /// Invalid input: exit 2.
    Invalid(String),
    /// A negative result: exit 1.
    Outcome(String),
}

impl From<hatline::Error> for Failure {
    fn from(e: hatline::Error) -> Failure {
        use hatline::Error::*;
        match e {
            InconsistentTranscript | InconsistentAnnouncement | InconsistentHistory => {
                Failure::Outcome(e.to_string())
            }
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Outcome(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// The global flags, detached from the subcommand so handlers can own both.
struct Globals {
    format: Format,
    out: Option<PathBuf>,
    seed: u64,
    samples: u64,
    cap: u64,
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let globals = Globals {
        format: cli.format,
        out: cli.out,
        seed: cli.seed,
        samples: cli.samples,
        cap: cli.cap,
    };
    match cli.command {
        Command::Verify { puzzle, n, colors, supply, strategy, sampled, run, names } => {
            cmd_verify(&globals, puzzle, n, colors, supply, strategy, sampled, run, names)
        }
        Command::Synth { puzzle, n, colors, max_mistakes } => {
            cmd_synth(&globals, puzzle, n, colors, max_mistakes)
        }
        Command::Epistemic { supply, logicians, assignment, transcript, query, order, visibility } => {
            cmd_epistemic(&globals, supply, logicians, assignment, transcript, query, order, visibility)
        }
        Command::Joke {
            from,
            puzzle,
            n,
            colors,
            strategy,
            supply,
            logicians,
            assignment,
            question,
        } => cmd_joke(&globals, from, puzzle, n, colors, strategy, supply, logicians, assignment, question),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn build_spec(
    kind: PuzzleKind,
    n: usize,
    colors: u32,
    supply: Option<&str>,
    names: Option<&str>,
) -> Result<(PuzzleSpec, Palette), Failure> {
    let (spec, supply_names) = match kind {
        PuzzleKind::Repeated => (PuzzleSpec::Repeated { n, colors }, None),
        PuzzleKind::Distinct => (PuzzleSpec::Distinct { n }, None),
        PuzzleKind::Limited => {
            let supply = supply.ok_or_else(|| invalid("the limited puzzle needs --supply"))?;
            let (counts, names) = parse_supply(supply)?;
            (
                PuzzleSpec::Limited { n, counts, visibility: Visibility::Complete },
                Some(names),
            )
        }
    };
    spec.validate()?;
    let palette = match names {
        Some(list) => {
            let names: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
            if names.len() as u32 != spec.colors() {
                return Err(invalid(format!(
                    "--names lists {} colors, the puzzle has {}",
                    names.len(),
                    spec.colors()
                )));
            }
            Palette::named(names)?
        }
        None => match supply_names {
            Some(names) => Palette::named(names)?,
            None => Palette::default_for(&spec),
        },
    };
    Ok((spec, palette))
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    globals: &Globals,
    puzzle: PuzzleKind,
    n: usize,
    colors: u32,
    supply: Option<String>,
    strategy: String,
    sampled: bool,
    run_one: Option<String>,
    names: Option<String>,
) -> Result<ExitCode, Failure> {
    let (spec, palette) = build_spec(puzzle, n, colors, supply.as_deref(), names.as_deref())?;
    let builtin = Builtin::from_id(&strategy).ok_or_else(|| {
        invalid(format!(
            "unknown strategy `{strategy}`; have: {}",
            Builtin::ALL.map(|b| b.name()).join(", ")
        ))
    })?;
    builtin.check_spec(&spec)?;

    if let Some(assignment) = run_one {
        let assignment = palette.parse_assignment(&assignment)?;
        spec.validate_assignment(&assignment)?;
        let run = run_transcript(&spec, &builtin, &assignment)?;
        let doc = TranscriptDoc::new(&spec, &palette, HAT_QUESTION, &run.transcript);
        let text = match globals.format {
            Format::Json => to_json(&doc)?,
            Format::Text => render_transcript_text(&run.transcript, &palette),
        };
        emit(&globals.out, &text)?;
        return Ok(ExitCode::SUCCESS);
    }

    let started = Instant::now();
    let report = if sampled {
        verify_sampled(&spec, &builtin, globals.samples, globals.seed)?
    } else {
        verify_exhaustive_capped(&spec, &builtin, globals.cap)?
    };
    let elapsed_ms = started.elapsed().as_millis() as u64;
    let doc = ReportDoc::new(&spec, &palette, builtin.name(), &report, elapsed_ms);
    let text = match globals.format {
        Format::Json => to_json(&doc)?,
        Format::Text => render_report_text(&doc, &spec, &palette, &report, &builtin)?,
    };
    emit(&globals.out, &text)?;
    let holds = report.worst_case_mistakes <= builtin.guaranteed_worst_case();
    Ok(if holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn render_transcript_text(transcript: &Transcript, palette: &Palette) -> String {
    transcript
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let what = match e.announcement {
                Announcement::Guess(c) => palette.title_name(c),
                Announcement::Know(c) => format!("know({})", palette.title_name(c)),
                Announcement::DontKnow => "idk".to_string(),
            };
            format!("speaker {} (position {}): {what}", i + 1, e.speaker)
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn render_report_text(
    doc: &ReportDoc,
    spec: &PuzzleSpec,
    palette: &Palette,
    report: &VerificationReport,
    builtin: &Builtin,
) -> Result<String, Failure> {
    let mut lines = vec![
        format!("puzzle: {}", doc.puzzle),
        format!("strategy: {}", doc.strategy_id),
        match report.mode {
            hatline::VerifyMode::Exhaustive => "mode: exhaustive".to_string(),
            hatline::VerifyMode::Sampled { seed, samples } => {
                format!("mode: sampled (seed {seed}, {samples} samples)")
            }
        },
        format!("assignments checked: {}", doc.assignments_checked),
        format!("worst-case mistakes: {}", doc.worst_case_mistakes),
        format!(
            "guaranteed correct: {}",
            if doc.guaranteed_correct_positions.is_empty() {
                "nobody".to_string()
            } else {
                format!(
                    "positions {}",
                    doc.guaranteed_correct_positions
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            }
        ),
    ];
    if let Some(cex) = &report.counterexample {
        let run = run_transcript(spec, builtin, cex)?;
        let n = spec.n();
        let mistaken = run
            .mistakes
            .iter()
            .map(|&p| format!("speaker {} (position {p})", n - p))
            .collect::<Vec<_>>()
            .join(", ");
        lines.push(format!("counterexample: {} — mistaken: {mistaken}", palette.assignment_string(cex)));
    }
    lines.push(format!("violations: {}", doc.violations_total));
    lines.push(format!("elapsed: {} ms", doc.elapsed_ms));
    Ok(lines.join("\n"))
}

fn cmd_synth(
    globals: &Globals,
    puzzle: PuzzleKind,
    n: usize,
    colors: u32,
    max_mistakes: Option<usize>,
) -> Result<ExitCode, Failure> {
    if puzzle == PuzzleKind::Limited {
        return Err(invalid("synthesis applies to the repeated and distinct puzzles"));
    }
    let (spec, _) = build_spec(puzzle, n, colors, None, None)?;
    let started = Instant::now();
    let result = min_guaranteed_mistakes(&spec)?;
    let elapsed_ms = started.elapsed().as_millis() as u64;
    if let Some(budget) = max_mistakes {
        if result.min_guaranteed_mistakes > budget {
            return Err(Failure::Outcome(format!(
                "no strategy guarantees at most {budget} mistake(s); the minimum is {}",
                result.min_guaranteed_mistakes
            )));
        }
    }
    let doc = SynthDoc::new(&spec, &result);
    let text = match globals.format {
        Format::Json => to_json(&doc)?,
        Format::Text => {
            let mut lines = vec![
                format!("puzzle: {}", doc.puzzle),
                format!("minimum guaranteed mistakes: {}", doc.min_guaranteed_mistakes),
                format!("nodes explored: {}", doc.nodes_explored),
                format!("witness ({} rows):", doc.witness.len()),
            ];
            for row in &doc.witness {
                lines.push(format!(
                    "  position {}: seen [{}] heard [{}] -> {}",
                    row.speaker,
                    row.seen.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
                    row.heard.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
                    row.announce
                ));
            }
            lines.push(format!("elapsed: {elapsed_ms} ms"));
            lines.join("\n")
        }
    };
    emit(&globals.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_epistemic(
    globals: &Globals,
    supply: String,
    logicians: usize,
    assignment: Option<String>,
    transcript: Option<String>,
    query: Option<usize>,
    order: Option<String>,
    visibility: VisibilityKind,
) -> Result<ExitCode, Failure> {
    let (counts, names) = parse_supply(&supply)?;
    let visibility = match visibility {
        VisibilityKind::Complete => Visibility::Complete,
        VisibilityKind::Line => Visibility::LineForward,
    };
    let spec = PuzzleSpec::Limited { n: logicians, counts, visibility };
    spec.validate()?;
    let palette = Palette::named(names)?;
    let order = parse_order(order.as_deref(), logicians)?;

    match (assignment, transcript) {
        (Some(assignment), None) => {
            let actual = palette.parse_assignment(&assignment)?;
            spec.validate_assignment(&actual)?;
            let transcript = simulate(&spec, &actual, &order)?;
            let text = match globals.format {
                Format::Json => {
                    to_json(&TranscriptDoc::new(&spec, &palette, HAT_QUESTION, &transcript))?
                }
                Format::Text => transcript
                    .entries
                    .iter()
                    .map(|e| match e.announcement {
                        Announcement::Know(c) => format!("know({})", palette.title_name(c)),
                        _ => "idk".to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join(", "),
            };
            emit(&globals.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        (None, Some(observed)) => {
            let query = query.ok_or_else(|| invalid("--transcript needs --query"))?;
            if query == 0 || query > logicians {
                return Err(invalid(format!(
                    "--query is 1-based; expected 1..={logicians}"
                )));
            }
            let statuses = parse_statuses(&observed)?;
            let position = order
                .get(query - 1)
                .copied()
                .ok_or_else(|| invalid(format!("--query {query} is beyond the speaking order")))?;
            let colors = hatline::deduce(&spec, &statuses, &order, position)?;
            let color_names: Vec<String> = colors.iter().map(|&c| palette.name(c)).collect();
            let text = match globals.format {
                Format::Json => to_json(&DeduceDoc {
                    puzzle: spec.description(),
                    query,
                    colors: color_names,
                })?,
                Format::Text => color_names
                    .iter()
                    .map(|n| {
                        let mut chars = n.chars();
                        match chars.next() {
                            Some(f) => f.to_uppercase().collect::<String>() + chars.as_str(),
                            None => String::new(),
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(", "),
            };
            emit(&globals.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        _ => Err(invalid("provide exactly one of --assignment or --transcript")),
    }
}

fn parse_order(order: Option<&str>, n: usize) -> Result<Vec<usize>, Failure> {
    match order {
        None => Ok((0..n).collect()),
        Some(list) => {
            let mut positions = Vec::new();
            for tok in list.split(',') {
                let speaker: usize = tok
                    .trim()
                    .parse()
                    .map_err(|_| invalid(format!("bad speaker `{tok}` in --order")))?;
                if speaker == 0 || speaker > n {
                    return Err(invalid(format!("--order entries are 1..={n}")));
                }
                positions.push(speaker - 1);
            }
            Ok(positions)
        }
    }
}

fn parse_statuses(list: &str) -> Result<Vec<KnowStatus>, Failure> {
    list.split(',')
        .map(|tok| match tok.trim().to_ascii_lowercase().as_str() {
            "idk" | "dontknow" | "no" => Ok(KnowStatus::DontKnow),
            "know" | "knows" | "yes" => Ok(KnowStatus::Know),
            other => Err(invalid(format!("bad status `{other}`; use idk or know"))),
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_joke(
    globals: &Globals,
    from: Option<PathBuf>,
    puzzle: Option<PuzzleKind>,
    n: Option<usize>,
    colors: u32,
    strategy: Option<String>,
    supply: Option<String>,
    logicians: Option<usize>,
    assignment: Option<String>,
    question: Option<String>,
) -> Result<ExitCode, Failure> {
    let (transcript, palette, question) = if let Some(path) = from {
        let raw = fs::read_to_string(&path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        let doc: TranscriptDoc = serde_json::from_str(&raw)
            .map_err(|e| invalid(format!("{} is not a transcript: {e}", path.display())))?;
        let (transcript, palette) = doc.decode()?;
        (transcript, palette, question.unwrap_or(doc.question))
    } else if let Some(supply) = supply {
        let logicians = logicians.ok_or_else(|| invalid("--supply needs --logicians"))?;
        let assignment = assignment.ok_or_else(|| invalid("--supply needs --assignment"))?;
        let (counts, names) = parse_supply(&supply)?;
        let spec =
            PuzzleSpec::Limited { n: logicians, counts, visibility: Visibility::Complete };
        spec.validate()?;
        let palette = Palette::named(names)?;
        let actual = palette.parse_assignment(&assignment)?;
        spec.validate_assignment(&actual)?;
        let order: Vec<usize> = (0..logicians).collect();
        let transcript = simulate(&spec, &actual, &order)?;
        (transcript, palette, question.unwrap_or_else(|| HAT_QUESTION.to_string()))
    } else if let Some(puzzle) = puzzle {
        let n = n.ok_or_else(|| invalid("--puzzle needs --n"))?;
        let strategy = strategy.ok_or_else(|| invalid("--puzzle needs --strategy"))?;
        let assignment = assignment.ok_or_else(|| invalid("--puzzle needs --assignment"))?;
        let (spec, palette) = build_spec(puzzle, n, colors, None, None)?;
        let builtin = Builtin::from_id(&strategy)
            .ok_or_else(|| invalid(format!("unknown strategy `{strategy}`")))?;
        builtin.check_spec(&spec)?;
        let actual = palette.parse_assignment(&assignment)?;
        spec.validate_assignment(&actual)?;
        let run = run_transcript(&spec, &builtin, &actual)?;
        (run.transcript, palette, question.unwrap_or_else(|| HAT_QUESTION.to_string()))
    } else {
        return Err(invalid("provide --from FILE, or --supply/--assignment, or --puzzle/--strategy/--assignment"));
    };
    let joke = joke::render_joke(&transcript, &palette, &question)?;
    emit(&globals.out, &joke)?;
    Ok(ExitCode::SUCCESS)
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map_err(|e| invalid(format!("serialization failed: {e}")))
}

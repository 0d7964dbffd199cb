//! Command line: author, play, simulate, match, validate, report.
//!
//! Exit codes: 0 success, 1 input error, 2 task not finished.

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use walkthrough_core::authoring::{validate_package, AuthoringSession, Clock, Phase};
use walkthrough_core::guidance::{Device, GuidanceEvent, LoggedEvent, MoreOptionsChoice, PlayPhase};
use walkthrough_core::matching::find_target;
use walkthrough_core::sim::{Condition, Episode, NavAction};
use walkthrough_core::{AppGraph, NodeId, ViewSnapshot};

use crate::formats;
use crate::harness::{self, ExperimentReport, ReportFormat};
use crate::script::{self, AuthoringCommand, AuthoringScript};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_NOT_FINISHED: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "walkthrough", version, about = "Author and play back step-by-step screen reader guidance")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Record a task package from an authoring script or an interactive session.
    Author(AuthorArgs),
    /// Play a task package on a simulated device.
    Play(PlayArgs),
    /// Run an experiment config and write its reports.
    Simulate(SimulateArgs),
    /// Locate a view snapshot on a screen.
    Match(MatchArgs),
    /// Check an app graph and, optionally, replay a task package over it.
    Validate(ValidateArgs),
    /// Re-render a JSON experiment report.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct AuthorArgs {
    /// App graph JSON.
    #[arg(long)]
    pub app: PathBuf,
    /// Authoring script JSON.
    #[arg(long, conflicts_with = "interactive", required_unless_present = "interactive")]
    pub trace: Option<PathBuf>,
    /// Read shell commands from standard input.
    #[arg(long)]
    pub interactive: bool,
    /// Task request this package answers.
    #[arg(long)]
    pub request: Option<PathBuf>,
    /// Where to write the task package.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PlayArgs {
    #[arg(long)]
    pub app: PathBuf,
    #[arg(long)]
    pub package: PathBuf,
    /// JSON list of gestures.
    #[arg(long, conflicts_with = "interactive", required_unless_present = "interactive")]
    pub script: Option<PathBuf>,
    /// Read keys from standard input.
    #[arg(long)]
    pub interactive: bool,
    /// Also write the event log, one JSON object per line.
    #[arg(long)]
    pub events: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Report path without extension, overriding the config.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report formats, overriding the config.
    #[arg(long = "format", value_enum)]
    pub formats: Vec<ReportFormat>,
}

#[derive(Debug, Args)]
pub struct MatchArgs {
    /// Screen tree JSON.
    #[arg(long)]
    pub screen: PathBuf,
    /// View snapshot JSON.
    #[arg(long)]
    pub snapshot: PathBuf,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub app: PathBuf,
    #[arg(long)]
    pub package: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// JSON report written by `simulate`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "table")]
    pub format: ReportFormat,
}

/// Parse `args` and run. Never panics on bad input; returns the exit code.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, input, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_INPUT
        }
    }
}

fn dispatch(command: Command, input: &mut dyn BufRead, out: &mut dyn Write) -> anyhow::Result<u8> {
    match command {
        Command::Author(a) => author(&a, input, out),
        Command::Play(a) => play(&a, input, out),
        Command::Simulate(a) => simulate(&a, out),
        Command::Match(a) => {
            let screen = formats::load_screen(&a.screen)?;
            let snapshot: ViewSnapshot = formats::load_json(&a.snapshot)?;
            out.write_all(formats::to_canonical(&find_target(&screen, &snapshot)).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Validate(a) => validate(&a, out),
        Command::Report(a) => {
            let report: ExperimentReport = formats::load_json(&a.input)?;
            out.write_all(harness::emit_report(&report, a.format).as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

fn author(args: &AuthorArgs, input: &mut dyn BufRead, out: &mut dyn Write) -> anyhow::Result<u8> {
    let app = formats::load_app_graph(&args.app)?;
    let request = args.request.as_deref().map(formats::load_request).transpose()?;
    let package = match &args.trace {
        Some(path) => {
            let script: AuthoringScript = formats::load_json(path)?;
            script::run_script(&app, request.as_ref(), &script).with_context(|| path.display().to_string())?
        }
        None => author_interactive(&app, request, input, out)?,
    };
    formats::save_json(&args.out, &package)?;
    let report = validate_package(&package, &app);
    writeln!(out, "wrote {} ({} steps)", args.out.display(), package.steps.len())?;
    out.write_all(formats::to_canonical(&report).as_bytes())?;
    Ok(EXIT_OK)
}

struct WallClock;

impl Clock for WallClock {
    fn now_ms(&mut self) -> u64 {
        SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis() as u64).unwrap_or(0)
    }
}

fn author_interactive(
    app: &AppGraph,
    request: Option<walkthrough_core::TaskRequest>,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> anyhow::Result<walkthrough_core::TaskPackage> {
    let mut session = AuthoringSession::begin(app.clone(), request)?.with_clock(WallClock);
    writeln!(out, "commands: describe <text> | accept | retry | click <node> | long <node> | type <node> <text>")?;
    writeln!(out, "          scroll <node> [back] | sensitive <node> | prompts <p1>; <p2> | finish [<title> | <description>]")?;
    let mut shown = None;
    let mut line = String::new();
    loop {
        if shown.as_deref() != Some(session.current_screen().screen_id.as_str()) {
            list_views(&session, out)?;
            shown = Some(session.current_screen().screen_id.clone());
        }
        write!(out, "[{:?}]> ", session.phase())?;
        out.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 {
            bail!("input ended before the task was finished");
        }
        if line.trim().is_empty() {
            continue;
        }
        let cmd = match script::parse_command(&line) {
            Ok(cmd) => cmd,
            Err(e) => {
                writeln!(out, "{e}")?;
                continue;
            }
        };
        if let AuthoringCommand::Finalize { title, description } = &cmd {
            match session.finalize_task(title.as_deref(), description.as_deref()) {
                Ok(pkg) => return Ok(pkg),
                Err(e) => {
                    writeln!(out, "{e}")?;
                    // finalize consumes the session only on success
                    bail!("could not finish the task");
                }
            }
        }
        if let Err(e) = script::apply(&mut session, &cmd) {
            writeln!(out, "{e}")?;
        } else if session.phase() == Phase::AddInformation {
            writeln!(out, "{} field(s) need a prompt", session.pending_edit_count())?;
        }
    }
}

fn list_views(session: &AuthoringSession, out: &mut dyn Write) -> std::io::Result<()> {
    let tree = session.current_screen();
    let index = tree.index();
    writeln!(out, "screen {}", tree.screen_id)?;
    for i in 0..index.len() {
        let node = index.node(i);
        if node.is_interactive() || node.capabilities.is_editable() || node.capabilities.is_scrollable() {
            writeln!(out, "  {:<20} {:<28} {:?}", node.id.as_str(), short(&node.class_name), index.closest_text(i))?;
        }
    }
    Ok(())
}

fn short(class: &str) -> &str {
    class.rsplit('.').next().unwrap_or(class)
}

fn play(args: &PlayArgs, input: &mut dyn BufRead, out: &mut dyn Write) -> anyhow::Result<u8> {
    let app = Arc::new(formats::load_app_graph(&args.app)?);
    let package = formats::load_package(&args.package)?;
    let mut episode = Episode::new(&package, Arc::clone(&app), Condition::Guided)?;
    let interactive = args.interactive;
    if interactive {
        print_spoken(episode.opening_events(), out)?;
    }
    match &args.script {
        Some(path) => {
            let actions: Vec<NavAction> = formats::load_json(path)?;
            for action in &actions {
                if episode.is_over() {
                    break;
                }
                // an illegal gesture is ignored, as a real device would
                let _ = episode.apply(action);
            }
        }
        None => play_interactive(&mut episode, input, out)?,
    }
    let guidance = episode.guidance().expect("guided episode");
    let log = formats::to_json_lines(guidance.events());
    if let Some(path) = &args.events {
        write_file(path, &log)?;
    }
    if !interactive {
        out.write_all(log.as_bytes())?;
    }
    Ok(if guidance.phase() == PlayPhase::Finished { EXIT_OK } else { EXIT_NOT_FINISHED })
}

fn play_interactive(episode: &mut Episode, input: &mut dyn BufRead, out: &mut dyn Write) -> anyhow::Result<()> {
    writeln!(out, "keys: n/p swipe, enter activate, l long-press, h hint, m more options [exit], t <text> type, x <node> touch, q quit")?;
    let mut line = String::new();
    while !episode.is_over() {
        write!(out, "> ")?;
        out.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 {
            break;
        }
        let (key, rest) = line.trim_end_matches(['\r', '\n']).split_once(' ').unwrap_or((line.trim_end(), ""));
        let action = match key.trim() {
            "n" => NavAction::SwipeNext,
            "p" => NavAction::SwipePrev,
            "" => NavAction::DoubleTapActivate,
            "l" => NavAction::LongPressActivate,
            "h" => NavAction::ActivateHint,
            "m" if rest.trim() == "exit" => NavAction::ActivateMoreOptions { choice: MoreOptionsChoice::Exit },
            "m" => NavAction::ActivateMoreOptions { choice: MoreOptionsChoice::Restart },
            "t" => NavAction::TypeText { text: rest.to_string() },
            "x" => NavAction::TouchExplore { node: NodeId::from(rest.trim()) },
            "q" => break,
            other => {
                writeln!(out, "unknown key {other:?}")?;
                continue;
            }
        };
        match episode.apply(&action) {
            Ok(events) => {
                if matches!(action, NavAction::SwipeNext | NavAction::SwipePrev | NavAction::TouchExplore { .. }) {
                    speak_focus(episode, out)?;
                }
                print_spoken(&events, out)?;
            }
            Err(e) => writeln!(out, "({e})")?,
        }
    }
    Ok(())
}

fn speak_focus(episode: &Episode, out: &mut dyn Write) -> std::io::Result<()> {
    let device = episode.device();
    let Some(focus) = device.focus() else { return Ok(()) };
    let index = device.screen().index();
    if let Some(i) = index.position(focus) {
        writeln!(out, "  {} , {}", index.closest_text(i), short(&index.node(i).class_name))?;
    }
    Ok(())
}

fn print_spoken(events: &[GuidanceEvent], out: &mut dyn Write) -> std::io::Result<()> {
    for event in events {
        match event {
            GuidanceEvent::Announcement { text } => writeln!(out, "{text}")?,
            GuidanceEvent::Beep => writeln!(out, "[beep]")?,
            GuidanceEvent::Bop => writeln!(out, "[bop]")?,
            GuidanceEvent::HintSpoken { hint, text } => writeln!(out, "hint {hint}: {text}")?,
            GuidanceEvent::RecoveryAnnounced { text, .. } => writeln!(out, "{text}")?,
            GuidanceEvent::SuccessMessage { text } => writeln!(out, "{text}")?,
            GuidanceEvent::SuccessTune => writeln!(out, "[success]")?,
            GuidanceEvent::Exited => writeln!(out, "[exited]")?,
            GuidanceEvent::Restarted => writeln!(out, "[restarted]")?,
            GuidanceEvent::OverlayShown { .. } | GuidanceEvent::OverlayRemoved => {}
        }
    }
    Ok(())
}

fn simulate(args: &SimulateArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    let mut config = harness::load_config(&args.config)?;
    if let Some(base) = &args.out {
        config.output = Some(base.clone());
    }
    if !args.formats.is_empty() {
        config.formats = args.formats.clone();
    }
    let report = harness::run_experiment(&config)?;
    match &config.output {
        Some(base) => {
            let formats = if config.formats.is_empty() { vec![ReportFormat::Table] } else { config.formats.clone() };
            for path in harness::write_reports(&report, base, &formats)? {
                writeln!(out, "wrote {}", path.display())?;
            }
        }
        None => out.write_all(harness::emit_report(&report, ReportFormat::Table).as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn validate(args: &ValidateArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    let app = formats::load_app_graph(&args.app)?;
    writeln!(out, "{}: {} screens, {} transitions, ok", args.app.display(), app.screen_count(), app.transitions().count())?;
    let Some(path) = &args.package else { return Ok(EXIT_OK) };
    let package = formats::load_package(path)?;
    let report = validate_package(&package, &app);
    out.write_all(formats::to_canonical(&report).as_bytes())?;
    Ok(if report.is_clean() { EXIT_OK } else { EXIT_INPUT })
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, text).with_context(|| path.display().to_string())
}

/// The event log in the line-delimited form written by `play`.
pub fn event_log(events: &[LoggedEvent]) -> String {
    formats::to_json_lines(events)
}

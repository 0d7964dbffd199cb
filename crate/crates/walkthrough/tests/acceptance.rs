//! Acceptance suite. Each criterion runs in turn and prints one PASS or FAIL
//! line to stderr; the test fails if any criterion does.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use walkthrough::corpus::{app_path, default_fixtures_dir, task_path, Corpus, ALL_TASKS};
use walkthrough::fixtures::script_path;
use walkthrough::formats;
use walkthrough::harness::{self, ExperimentConfig, ReportFormat, SeedRange};
use walkthrough::script::{run_script, AuthoringCommand, AuthoringScript};
use walkthrough_core::authoring::{AuthoringSession, Phase};
use walkthrough_core::guidance::{GuidanceEvent, HintType};
use walkthrough_core::matching::{find_target, sector_label, SectorLabel};
use walkthrough_core::sim::{run_episode, Agent, Condition, Episode, NavAction, Policy};
use walkthrough_core::{ActionKind, AppGraph, AuthoringError, Bounds, NodeId, TaskPackage};

fn fixtures() -> std::path::PathBuf {
    default_fixtures_dir()
}

fn corpus() -> Corpus {
    Corpus::load_all(&fixtures()).unwrap()
}

fn matcher_agrees_with_oracle() {
    let mut elapsed = Duration::ZERO;
    let mut checked = 0;
    for seed in 0..1000 {
        let tree = support::random_screen(seed, 4);
        for f in support::flatten(&tree).iter().filter(|f| f.node.is_interactive()) {
            let target = support::oracle_snapshot(&tree, &f.node.id);
            let start = Instant::now();
            let got = find_target(&tree, &target);
            elapsed += start.elapsed();
            let (winner, trace, count) = support::oracle_find_target(&tree, &target);
            assert_eq!((got.node_id, got.rank_trace, got.candidate_count), (winner, trace, count), "seed {seed}");
            checked += 1;
        }
    }
    assert!(checked > 5000);
    assert!(elapsed < Duration::from_secs(5), "{elapsed:?}");
}

fn sectors_agree_with_oracle() {
    let (w, h) = (support::W, support::H);
    assert_eq!(sector_label(Bounds::new(0, 0, w, 150), w, h), Ok(SectorLabel::TopLeftCorner));
    assert_eq!(SectorLabel::TopLeftCorner.to_string(), "top left corner");
    let grid = support::grid_elements();
    assert_eq!(grid.len(), 2500);
    for b in grid {
        assert_eq!(sector_label(b, w, h).unwrap(), support::oracle_sector(b, w, h), "{b:?}");
    }
}

/// Hint letters spoken for `n` successive hint requests.
fn hints(episode: &mut Episode, n: usize) -> Vec<HintType> {
    (0..n)
        .map(|_| {
            let events = episode.apply(&NavAction::ActivateHint).unwrap();
            events
                .iter()
                .find_map(|e| match e {
                    GuidanceEvent::HintSpoken { hint, .. } => Some(*hint),
                    _ => None,
                })
                .expect("a hint is spoken")
        })
        .collect()
}

fn start(corpus: &Corpus, task: &str) -> Episode {
    let (pkg, app) = corpus.task(task).unwrap();
    Episode::new(pkg, app, Condition::Guided).unwrap()
}

fn hint_cycles() {
    use HintType::*;
    let corpus = corpus();

    // YouTube: the Library tab is on screen and needs a plain click
    let mut ep = start(&corpus, "t1");
    assert_eq!(hints(&mut ep, 7), [C, G, H, C, G, H, C]);

    // Contacts: the save step carries two edit prompts
    let mut ep = start(&corpus, "tt1");
    let script: Vec<NavAction> = formats::load_json(&script_path(&fixtures(), "tt1")).unwrap();
    for action in &script {
        if ep.guidance().unwrap().step_index() == 2 {
            break;
        }
        ep.apply(action).unwrap();
    }
    assert_eq!(ep.guidance().unwrap().step_index(), 2);
    assert_eq!(hints(&mut ep, 8), [A, A, C, G, H, A, A, C]);

    // Contacts: opening a contact instead of the create button strands the
    // user where the target does not exist
    let mut ep = start(&corpus, "tt1");
    ep.apply(&NavAction::TouchExplore { node: "contact_0".into() }).unwrap();
    let events = ep.apply(&NavAction::DoubleTapActivate).unwrap();
    assert_eq!(events, [GuidanceEvent::Bop]);
    assert!(ep.guidance().unwrap().deviated());
    assert_eq!(hints(&mut ep, 6), [F, G, H, I, F, G]);
}

fn youtube_recovery() {
    let corpus = corpus();
    let mut ep = start(&corpus, "t1");
    let script: Vec<NavAction> = formats::load_json(&script_path(&fixtures(), "t1-recovery")).unwrap();
    let mut heard = Vec::new();
    for action in &script {
        heard.extend(ep.apply(action).unwrap());
    }
    let bop = heard.iter().position(|e| *e == GuidanceEvent::Bop).expect("a bop");
    assert_eq!(
        heard[bop + 1],
        GuidanceEvent::RecoveryAnnounced {
            step_index: 1,
            text: "You can resume the task from the step History that is currently at the bottom left corner".into()
        }
    );
    assert_eq!(heard.iter().filter(|e| **e == GuidanceEvent::Bop).count(), 1);
    assert_eq!(heard.last(), Some(&GuidanceEvent::SuccessTune));
    assert!(ep.guidance().unwrap().is_finished());
}

fn compliant_agents_complete_all_tasks() {
    let started = Instant::now();
    let corpus = corpus();
    let bin = env!("CARGO_BIN_EXE_walkthrough");
    for task in ALL_TASKS {
        let (pkg, app) = corpus.task(task).unwrap();
        let r = run_episode(pkg, Arc::clone(&app), &mut Agent::new(Policy::Compliant), 200, Condition::Guided).unwrap();
        assert!(r.success, "{task}");
        assert_eq!(r.deviations, 0, "{task}");
        let out = Command::new(bin)
            .args(["play", "--app"])
            .arg(app_path(&fixtures(), &pkg.app_id))
            .arg("--package")
            .arg(task_path(&fixtures(), task))
            .arg("--script")
            .arg(script_path(&fixtures(), task))
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{task}: {}", String::from_utf8_lossy(&out.stderr));
        let log = String::from_utf8(out.stdout).unwrap();
        assert!(!log.contains("\"type\":\"bop\""), "{task}");
    }
    let cfg = config(&ALL_TASKS, &[Condition::Guided], &[Policy::Compliant], 10);
    let (report, _) = harness::run_experiment_on(&cfg, &corpus).unwrap();
    for row in &report.rows {
        assert_eq!((row.success_rate, row.deviations), (1.0, 0), "{}", row.task_id);
    }
    assert!(started.elapsed() < Duration::from_secs(30), "{:?}", started.elapsed());
}

fn config(tasks: &[&str], conditions: &[Condition], agents: &[Policy], seeds: u32) -> ExperimentConfig {
    ExperimentConfig {
        fixtures: None,
        task_sets: vec![],
        tasks: tasks.iter().map(|t| t.to_string()).collect(),
        conditions: conditions.to_vec(),
        agents: agents.to_vec(),
        seeds: SeedRange { start: 0, count: seeds },
        budget: 200,
        output: None,
        formats: vec![],
        episodes: None,
    }
}

fn guidance_beats_random_exploration() {
    let corpus = corpus();
    let guided = config(&ALL_TASKS, &[Condition::Guided], &[Policy::Fallible { error_rate: 0.2, seed: 0 }], 100);
    let unguided = config(&ALL_TASKS, &[Condition::Unguided], &[Policy::RandomWalk { seed: 0 }], 100);
    let (g, _) = harness::run_experiment_on(&guided, &corpus).unwrap();
    let (u, _) = harness::run_experiment_on(&unguided, &corpus).unwrap();
    for task in ALL_TASKS {
        let gs = g.row(task, Condition::Guided, "fallible(0.2)").unwrap().success_rate;
        let us = u.row(task, Condition::Unguided, "random_walk").unwrap().success_rate;
        assert!(gs > us, "{task}: guided {gs} vs unguided {us}");
    }
}

fn outputs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    // the shipped experiment, cut down to a few seeds
    let mut shipped: serde_json::Value = formats::load_json(&fixtures().join("experiment.json")).unwrap();
    shipped["seeds"]["count"] = 8.into();
    shipped["fixtures"] = fixtures().to_str().unwrap().into();
    let config = dir.path().join("experiment.json");
    std::fs::write(&config, shipped.to_string()).unwrap();
    let bin = env!("CARGO_BIN_EXE_walkthrough");
    let simulate = |name: &str| {
        let base = dir.path().join(name);
        let out = Command::new(bin).arg("simulate").arg("--config").arg(&config).arg("--out").arg(&base).output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        [ReportFormat::Table, ReportFormat::Csv, ReportFormat::Json]
            .map(|f| std::fs::read(base.with_extension(f.extension())).unwrap())
    };
    assert_eq!(simulate("first"), simulate("second"));

    fn same<T: serde::Serialize + serde::de::DeserializeOwned>(path: &Path) {
        let first = formats::to_canonical(&formats::load_json::<T>(path).unwrap());
        let again: T = formats::from_str(&first, path).unwrap();
        assert_eq!(formats::to_canonical(&again), first, "{}", path.display());
    }
    for task in ALL_TASKS {
        let pkg = formats::load_package(&task_path(&fixtures(), task)).unwrap();
        same::<TaskPackage>(&task_path(&fixtures(), task));
        same::<AppGraph>(&app_path(&fixtures(), &pkg.app_id));
    }
}

fn authoring_properties() {
    let corpus = corpus();
    for task in ALL_TASKS {
        let (pkg, app) = corpus.task(task).unwrap();
        let script: AuthoringScript = formats::load_json(&walkthrough::corpus::trace_path(&fixtures(), task)).unwrap();
        let activations = script
            .commands
            .iter()
            .filter(|c| matches!(c, AuthoringCommand::Act { action, .. } if action.action_type().is_activation()))
            .count();
        assert_eq!(run_script(&app, None, &script).unwrap().steps.len(), activations, "{task}");
        assert_eq!(pkg.steps.len(), activations, "{task}");
    }

    // random command streams over the contacts app
    let (_, app) = corpus.task("tt1").unwrap();
    let nodes: Vec<NodeId> = app
        .screens()
        .flat_map(|s| support::flatten(s).into_iter().map(|f| f.node.id.clone()).collect::<Vec<_>>())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut mismatches, mut finished, mut with_steps) = (0, 0, 0);
    for _ in 0..300 {
        let mut s = AuthoringSession::begin((*app).clone(), None).unwrap();
        let mut activations = 0;
        for _ in 0..40 {
            let before = s.phase();
            let pending = s.pending_edit_count();
            let result = match rng.gen_range(0..7) {
                0 => s.record_screen_description(if rng.gen_bool(0.9) { "screen" } else { "" }),
                1 => s.review_description(rng.gen_bool(0.8)),
                2..=4 => {
                    let node = &nodes[rng.gen_range(0..nodes.len())];
                    let kind = if rng.gen_bool(0.7) { ActionKind::Click } else { ActionKind::set_text("x") };
                    let activation = kind.action_type().is_activation();
                    let r = s.demonstrate_action(node, kind);
                    activations += usize::from(r.is_ok() && activation);
                    r
                }
                5 => s.provide_edit_prompts(&vec!["p".to_string(); rng.gen_range(0..3)]),
                _ => s.finalize_task(Some("t"), Some("d")).map(|_| ()),
            };
            if let Err(e) = &result {
                // a rejected command changes nothing
                assert_eq!(s.phase(), before, "{e}");
                assert_eq!(s.pending_edit_count(), pending);
                if let AuthoringError::PromptCountMismatch { expected, got } = e {
                    assert_ne!(expected, got);
                    assert_eq!(before, Phase::AddInformation);
                    mismatches += 1;
                }
            }
            assert_eq!(s.recorded_steps().len(), activations);
        }
        for (from, to) in s.phase_log() {
            assert!(from.can_transition(*to), "{from:?} -> {to:?}");
        }
        finished += usize::from(s.phase() == Phase::Done);
        with_steps += usize::from(activations > 0);
    }
    assert!(finished > 0 && with_steps > 0, "{finished} {with_steps}");

    // the contacts trace saves two typed fields: any other prompt count is refused
    let script: AuthoringScript = formats::load_json(&walkthrough::corpus::trace_path(&fixtures(), "tt1")).unwrap();
    let mut s = AuthoringSession::begin((*app).clone(), None).unwrap();
    for cmd in script.commands.iter().take_while(|c| !matches!(c, AuthoringCommand::Prompts { .. })) {
        walkthrough::script::apply(&mut s, cmd).unwrap();
    }
    assert_eq!((s.phase(), s.pending_edit_count()), (Phase::AddInformation, 2));
    for n in [0, 1, 3] {
        let err = s.provide_edit_prompts(&vec!["p".to_string(); n]).unwrap_err();
        assert_eq!(err, AuthoringError::PromptCountMismatch { expected: 2, got: n });
        assert_eq!(s.phase(), Phase::AddInformation);
        mismatches += 1;
    }
    s.provide_edit_prompts(&["name".to_string(), "number".to_string()]).unwrap();
    assert_eq!(s.phase(), Phase::DescribeInterface);
    assert_eq!(mismatches, 3);

    // out-of-order commands are refused
    let mut s = AuthoringSession::begin((*app).clone(), None).unwrap();
    assert!(matches!(s.demonstrate_action(&"fab".into(), ActionKind::Click), Err(AuthoringError::WrongPhase(_))));
    assert!(matches!(s.review_description(true), Err(AuthoringError::WrongPhase(_))));
    assert!(matches!(s.provide_edit_prompts(&[]), Err(AuthoringError::WrongPhase(_))));
    assert!(matches!(s.finalize_task(None, None), Err(AuthoringError::NoSteps)));
    assert!(!Phase::DescribeInterface.can_transition(Phase::PerformStep));
    assert!(!Phase::Done.can_transition(Phase::DescribeInterface));
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn()); 8] = [
        ("1 matcher agrees with the exhaustive oracle on 1000 trees", matcher_agrees_with_oracle),
        ("2 sector labels agree with the cell-intersection oracle", sectors_agree_with_oracle),
        ("3 hint cycles", hint_cycles),
        ("4 recovery on the YouTube task", youtube_recovery),
        ("5 compliant agents complete every task", compliant_agents_complete_all_tasks),
        ("6 guided fallible users beat unguided random walks", guidance_beats_random_exploration),
        ("7 reports and file formats are reproducible", outputs_are_reproducible),
        ("8 authoring state machine properties", authoring_properties),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let started = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(check)).is_ok();
        let verdict = if ok { "PASS" } else { "FAIL" };
        let _ = writeln!(std::io::stderr(), "{verdict} {name} ({:.2?})", started.elapsed());
        if !ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}

//! Scripted demonstrations: a JSON list of authoring commands replayed
//! against an app graph to produce a task package.

use serde::{Deserialize, Serialize};
use walkthrough_core::authoring::{AuthoringSession, SteppingClock};
use walkthrough_core::{ActionKind, AppGraph, AuthoringError, NodeId, TaskPackage, TaskRequest};

/// One author command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "cmd", rename_all = "snake_case")]
pub enum AuthoringCommand {
    Describe { text: String },
    Review { accept: bool },
    MarkSensitive { node: NodeId },
    Act { node: NodeId, action: ActionKind },
    Prompts { prompts: Vec<String> },
    Finalize {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        title: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        description: Option<String>,
    },
}

/// A whole demonstration. The last command must be `finalize`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuthoringScript {
    pub app_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task_id: Option<String>,
    #[serde(default = "default_author")]
    pub author_id: String,
    pub commands: Vec<AuthoringCommand>,
}

fn default_author() -> String {
    "anonymous".into()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScriptError {
    #[error("script is for app {script}, but the app graph is {app}")]
    WrongApp { script: String, app: String },
    #[error("command {index}: {source}")]
    Command {
        index: usize,
        #[source]
        source: AuthoringError,
    },
    #[error("script ended without a finalize command")]
    NotFinalized,
    #[error("command {0} follows finalize")]
    TrailingCommand(usize),
}

/// Replay `script` with a deterministic clock.
pub fn run_script(
    app: &AppGraph,
    request: Option<&TaskRequest>,
    script: &AuthoringScript,
) -> Result<TaskPackage, ScriptError> {
    if script.app_id != app.app_id {
        return Err(ScriptError::WrongApp { script: script.app_id.clone(), app: app.app_id.clone() });
    }
    let begin = AuthoringSession::begin(app.clone(), request.cloned())
        .map_err(|source| ScriptError::Command { index: 0, source })?;
    let mut session = begin.with_clock(SteppingClock::default()).with_author(script.author_id.clone());
    if let Some(id) = &script.task_id {
        session = session.with_task_id(id.clone());
    }
    let mut package = None;
    for (index, cmd) in script.commands.iter().enumerate() {
        if package.is_some() {
            return Err(ScriptError::TrailingCommand(index));
        }
        let wrap = |source| ScriptError::Command { index, source };
        match cmd {
            AuthoringCommand::Finalize { title, description } => {
                package = Some(session.finalize_task(title.as_deref(), description.as_deref()).map_err(wrap)?);
            }
            other => apply(&mut session, other).map_err(wrap)?,
        }
    }
    package.ok_or(ScriptError::NotFinalized)
}

/// Apply a non-finalizing command to a live session.
pub fn apply(session: &mut AuthoringSession, cmd: &AuthoringCommand) -> Result<(), AuthoringError> {
    match cmd {
        AuthoringCommand::Describe { text } => session.record_screen_description(text),
        AuthoringCommand::Review { accept } => session.review_description(*accept),
        AuthoringCommand::MarkSensitive { node } => session.mark_sensitive(node),
        AuthoringCommand::Act { node, action } => session.demonstrate_action(node, action.clone()),
        AuthoringCommand::Prompts { prompts } => session.provide_edit_prompts(prompts),
        AuthoringCommand::Finalize { .. } => Err(AuthoringError::WrongPhase(session.phase())),
    }
}

/// Parse one line of the interactive authoring shell.
///
/// ```text
/// describe <text> | accept | retry | click <node> | long <node>
/// type <node> <text> | scroll <node> [back] | sensitive <node>
/// prompts <p1>; <p2> | finish [<title> | <description>]
/// ```
pub fn parse_command(line: &str) -> Result<AuthoringCommand, String> {
    let line = line.trim();
    let (word, rest) = line.split_once(' ').unwrap_or((line, ""));
    let rest = rest.trim();
    let node = || {
        let id = rest.split_whitespace().next().ok_or_else(|| format!("{word} needs a node id"))?;
        Ok::<NodeId, String>(NodeId::from(id))
    };
    let cmd = match word {
        "describe" if !rest.is_empty() => AuthoringCommand::Describe { text: rest.into() },
        "accept" => AuthoringCommand::Review { accept: true },
        "retry" => AuthoringCommand::Review { accept: false },
        "click" => AuthoringCommand::Act { node: node()?, action: ActionKind::Click },
        "long" => AuthoringCommand::Act { node: node()?, action: ActionKind::LongClick },
        "type" => {
            let (id, value) = rest.split_once(' ').ok_or("type needs a node id and text")?;
            AuthoringCommand::Act { node: id.into(), action: ActionKind::set_text(value.trim()) }
        }
        "scroll" => {
            let back = rest.split_whitespace().nth(1) == Some("back");
            let action = if back { ActionKind::ScrollBackward } else { ActionKind::ScrollForward };
            AuthoringCommand::Act { node: node()?, action }
        }
        "sensitive" => AuthoringCommand::MarkSensitive { node: node()? },
        "prompts" => AuthoringCommand::Prompts {
            prompts: rest.split(';').map(|p| p.trim().to_string()).collect(),
        },
        "finish" => {
            let (title, description) = match rest.split_once('|') {
                Some((t, d)) => (Some(t.trim().to_string()), Some(d.trim().to_string())),
                None if rest.is_empty() => (None, None),
                None => (Some(rest.to_string()), None),
            };
            AuthoringCommand::Finalize { title, description }
        }
        _ => return Err(format!("unknown command: {line}")),
    };
    Ok(cmd)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shell_lines_parse() {
        assert_eq!(
            parse_command("type name Brenda Silva").unwrap(),
            AuthoringCommand::Act { node: "name".into(), action: ActionKind::set_text("Brenda Silva") }
        );
        assert_eq!(
            parse_command("scroll list back").unwrap(),
            AuthoringCommand::Act { node: "list".into(), action: ActionKind::ScrollBackward }
        );
        assert_eq!(
            parse_command("finish Add new contact | Create a contact").unwrap(),
            AuthoringCommand::Finalize {
                title: Some("Add new contact".into()),
                description: Some("Create a contact".into())
            }
        );
        assert!(parse_command("describe").is_err());
        assert!(parse_command("jump x").is_err());
    }

    #[test]
    fn commands_use_tagged_json() {
        let cmd: AuthoringCommand =
            serde_json::from_str(r#"{"cmd":"act","node":"save","action":{"type":"click"}}"#).unwrap();
        assert_eq!(cmd, AuthoringCommand::Act { node: "save".into(), action: ActionKind::Click });
    }
}

//! Spoken phrases. Agents in [`crate::sim`] parse these back, so the
//! templates and their parsers live side by side.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::authoring::StepRecord;
use crate::matching::SectorLabel;
use crate::model::ActionType;

pub const LONG_PRESS_INSTRUCTION: &str = "To long press with the screen reader, double tap and hold \
     on the target until you hear a second sound, then release.";
pub const NO_LAYOUT_DESCRIPTION: &str = "There is no description of this screen.";
pub const RESUME_ANY_STEP: &str =
    "You can resume the task from any previous step, or restart it from More Options.";
pub const SUCCESS_MESSAGE_PREFIX: &str = "Task completed successfully";

const SELECT: &str = "Select";
const LONG_PRESS: &str = "Long press";

fn verb(kind: ActionType) -> &'static str {
    match kind {
        ActionType::LongClick => LONG_PRESS,
        _ => SELECT,
    }
}

fn lower_first(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_lowercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Target announcement for a step: the interaction then the target label,
/// preceded by the fields to fill when the step edited any.
pub fn announce_target(step: &StepRecord) -> String {
    let verb = verb(step.interaction.action_type());
    let label = step.clicked_view.spoken_label();
    match step.edit_prompts.len() {
        0 => format!("{verb} {label}"),
        n => {
            let prompts: Vec<&str> = step.edit_prompts.iter().map(|p| p.prompt.as_str()).collect();
            let head = if n == 1 {
                String::from("There is 1 text field to fill.")
            } else {
                format!("There are {n} text fields to fill.")
            };
            format!("{head} Then {} {label}. Enter: {}", lower_first(verb), prompts.join("; "))
        }
    }
}

pub fn edit_box_detail(sub_index: usize, prompt: &str) -> String {
    if sub_index == 0 {
        format!("First write {prompt}")
    } else {
        format!("Next write {prompt}")
    }
}

pub fn target_position(label: &str, sector: SectorLabel) -> String {
    format!("The target {label} is at the {sector}")
}

pub fn scrollable(caption: &str) -> String {
    format!("Navigate in the list that has {caption}")
}

pub fn swipe_scroll(caption: &str) -> String {
    format!("Find {caption} and navigate the list by swiping from left to right until you find the target")
}

pub fn target_not_found(label: &str) -> String {
    format!("The target {label} is not on this screen. Try to look elsewhere.")
}

pub fn resume_from(label: &str, sector: SectorLabel) -> String {
    format!("You can resume the task from the step {label} that is currently at the {sector}")
}

pub fn success_message(title: &str) -> String {
    format!("{SUCCESS_MESSAGE_PREFIX}: {title}")
}

/// What a listener can recover from a target announcement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeardAnnouncement {
    pub long_press: bool,
    pub label: String,
    pub fields_to_fill: usize,
}

/// Parse a phrase produced by [`announce_target`].
pub fn parse_announcement(text: &str) -> Option<HeardAnnouncement> {
    if let Some(rest) = text.strip_prefix("There ") {
        let (count, rest) = rest
            .strip_prefix("is ")
            .or_else(|| rest.strip_prefix("are "))?
            .split_once(' ')?;
        let fields_to_fill = count.parse().ok()?;
        let (_, then) = rest.split_once(" Then ")?;
        let (head, _) = then.rsplit_once(". Enter: ")?;
        let (long_press, label) = split_verb(head, true)?;
        return Some(HeardAnnouncement { long_press, label: label.to_string(), fields_to_fill });
    }
    let (long_press, label) = split_verb(text, false)?;
    Some(HeardAnnouncement { long_press, label: label.to_string(), fields_to_fill: 0 })
}

fn split_verb(text: &str, lowered: bool) -> Option<(bool, &str)> {
    let (select, long) = if lowered { ("select ", "long press ") } else { ("Select ", "Long press ") };
    if let Some(label) = text.strip_prefix(long) {
        Some((true, label))
    } else {
        text.strip_prefix(select).map(|label| (false, label))
    }
}

/// Caption named by a scrollable or swipe-scroll hint.
pub fn parse_scroll_caption(text: &str) -> Option<&str> {
    text.strip_prefix("Navigate in the list that has ").or_else(|| {
        text.strip_prefix("Find ")?
            .strip_suffix(" and navigate the list by swiping from left to right until you find the target")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_announcement_shapes() {
        let plain = parse_announcement("Select Create Contact").unwrap();
        assert_eq!(plain.label, "Create Contact");
        assert!(!plain.long_press);
        let edit = parse_announcement(
            "There are 2 text fields to fill. Then select Save. Enter: the new contact name; the contact number",
        )
        .unwrap();
        assert_eq!(edit.label, "Save");
        assert_eq!(edit.fields_to_fill, 2);
        let long = parse_announcement("There is 1 text field to fill. Then long press Send. Enter: x").unwrap();
        assert!(long.long_press);
        assert_eq!(long.label, "Send");
        assert!(parse_announcement("Beep").is_none());
    }

    #[test]
    fn scroll_captions_round_trip() {
        assert_eq!(parse_scroll_caption(&scrollable("Leagues")), Some("Leagues"));
        assert_eq!(parse_scroll_caption(&swipe_scroll("Leagues")), Some("Leagues"));
    }
}

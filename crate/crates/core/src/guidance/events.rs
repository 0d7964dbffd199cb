use alloc::string::String;
use core::fmt;

use serde::{Deserialize, Serialize};

/// The nine hint types, in cycling order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HintType {
    /// EditBox detail.
    A,
    /// Long click instruction.
    B,
    /// Target position.
    C,
    /// Scrollable.
    D,
    /// Swipe scroll.
    E,
    /// Target not found.
    F,
    /// Layout description.
    G,
    /// Repeat.
    H,
    /// Recover.
    I,
}

impl HintType {
    pub const ALL: [HintType; 9] = [
        HintType::A,
        HintType::B,
        HintType::C,
        HintType::D,
        HintType::E,
        HintType::F,
        HintType::G,
        HintType::H,
        HintType::I,
    ];

    pub const fn index(self) -> usize {
        self as usize
    }

    /// Next type in the cycle; I wraps to A.
    pub const fn next(self) -> HintType {
        Self::ALL[(self as usize + 1) % 9]
    }

    pub const fn name(self) -> &'static str {
        match self {
            HintType::A => "EditBox Detail",
            HintType::B => "Long Click Instruction",
            HintType::C => "Target Position",
            HintType::D => "Scrollable",
            HintType::E => "Swipe Scroll",
            HintType::F => "Target Not Found",
            HintType::G => "Layout Description",
            HintType::H => "Repeat",
            HintType::I => "Recover",
        }
    }

    pub const fn letter(self) -> char {
        (b'A' + self as u8) as char
    }
}

impl fmt::Display for HintType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OverlayKind {
    Blocking,
    HintBar,
}

/// Something the user perceives during a playthrough.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GuidanceEvent {
    Announcement { text: String },
    Beep,
    Bop,
    HintSpoken { hint: HintType, text: String },
    OverlayShown { kind: OverlayKind },
    OverlayRemoved,
    RecoveryAnnounced { step_index: usize, text: String },
    SuccessMessage { text: String },
    SuccessTune,
    Exited,
    Restarted,
}

/// An event with its position in the playthrough log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoggedEvent {
    pub seq: u64,
    #[serde(flatten)]
    pub event: GuidanceEvent,
}

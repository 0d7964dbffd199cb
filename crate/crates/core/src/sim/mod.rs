//! A simulated phone: screen-reader navigation over an [`AppGraph`], seeded
//! user agents, and episodes tying them to the guidance engine.
//!
//! [`AppGraph`]: crate::model::AppGraph

mod agent;
mod device;
mod episode;

pub use agent::{agent_policy_step, Agent, Observation, Policy, TYPED_TEXT};
pub use device::{DeviceEvent, NavAction, SimDevice};
pub use episode::{path_covers, run_episode, Condition, Episode, EpisodeEnd, EpisodeResult, PathChecker};

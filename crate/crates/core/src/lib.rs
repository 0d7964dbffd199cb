//! Turns recorded demonstrations over accessibility trees into step-by-step
//! nonvisual guidance.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the experiment
//! harness and the command line live in the `walkthrough` crate.
//!
//! - [`model`]: accessibility trees, app graphs, closest-text resolution.
//! - [`authoring`]: the demonstration state machine producing [`TaskPackage`]s.
//! - [`matching`]: locating authored targets on a live screen.
//! - [`guidance`]: the playthrough state machine with cues and hints A to I.
//! - [`sim`]: a simulated screen-reader device, scripted agents and episodes.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod authoring;
pub mod error;
pub mod guidance;
pub mod matching;
pub mod model;
pub mod sim;

pub use authoring::{StepRecord, TaskPackage, TaskRequest, ViewSnapshot};
pub use error::{AuthoringError, ModelError, NavError, PlaythroughError, SectorError};
pub use model::{ActionKind, ActionType, AppGraph, Bounds, NodeId, ScreenTree, ViewNode};

//! Locating authored targets on a live screen.
//!
//! Candidates share package name, class name and normalized closest text with
//! the authored view. Ties are broken by nearest area, then nearest tree
//! depth, then document order. On-screen position never takes part.

use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::authoring::{StepRecord, ViewSnapshot};
use crate::error::SectorError;
use crate::model::{normalize_text, Bounds, NodeId, ScreenTree, TreeIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreaker {
    Size,
    Depth,
    DomOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchOutcome {
    pub node_id: Option<NodeId>,
    pub rank_trace: Vec<TieBreaker>,
    pub candidate_count: usize,
}

impl MatchOutcome {
    pub fn not_found() -> Self {
        Self { node_id: None, rank_trace: Vec::new(), candidate_count: 0 }
    }

    pub fn is_found(&self) -> bool {
        self.node_id.is_some()
    }
}

/// Resolve `target` among the interactive views of `tree`.
pub fn find_target(tree: &ScreenTree, target: &ViewSnapshot) -> MatchOutcome {
    find_target_in(&tree.index(), target)
}

/// [`find_target`] over a prebuilt index.
pub fn find_target_in(index: &TreeIndex<'_>, target: &ViewSnapshot) -> MatchOutcome {
    let key = normalize_text(&target.closest_text);
    if key.is_empty() && target.flags.any() {
        // a flagged view without a label has nothing stable to match on
        return MatchOutcome::not_found();
    }
    let candidates = (0..index.len())
        .filter(|&i| {
            let node = index.node(i);
            node.is_interactive()
                && node.package_name == target.package_name
                && node.class_name == target.class_name
                && normalize_text(index.closest_text(i)) == key
        })
        .collect();
    rank(index, candidates, target)
}

/// Visible editable field matching `field` (same keys and tie-breaks as
/// [`find_target`]). Edit fields are usually not clickable, so they are
/// looked up separately.
pub fn find_edit_field(index: &TreeIndex<'_>, field: &ViewSnapshot) -> MatchOutcome {
    let key = normalize_text(&field.closest_text);
    let candidates = (0..index.len())
        .filter(|&i| {
            let node = index.node(i);
            node.visible
                && node.capabilities.is_editable()
                && node.package_name == field.package_name
                && node.class_name == field.class_name
                && normalize_text(index.closest_text(i)) == key
        })
        .collect();
    rank(index, candidates, field)
}

fn rank(index: &TreeIndex<'_>, mut candidates: Vec<usize>, target: &ViewSnapshot) -> MatchOutcome {
    let candidate_count = candidates.len();
    let mut rank_trace = Vec::new();
    let target_area = target.bounds.area();
    let target_depth = target.depth as i64;

    if candidates.len() > 1 {
        rank_trace.push(TieBreaker::Size);
        keep_min(&mut candidates, |i| (index.node(i).bounds.area() - target_area).abs());
    }
    if candidates.len() > 1 {
        rank_trace.push(TieBreaker::Depth);
        keep_min(&mut candidates, |i| (index.entry(i).depth as i64 - target_depth).abs());
    }
    if candidates.len() > 1 {
        rank_trace.push(TieBreaker::DomOrder);
        // positions are pre-order ranks and `candidates` is ascending
        candidates.truncate(1);
    }
    MatchOutcome {
        node_id: candidates.first().map(|&i| index.node(i).id.clone()),
        rank_trace,
        candidate_count,
    }
}

fn keep_min(candidates: &mut Vec<usize>, metric: impl Fn(usize) -> i64) {
    if let Some(best) = candidates.iter().map(|&i| metric(i)).min() {
        candidates.retain(|&i| metric(i) == best);
    }
}

/// Most recent step before `upto` whose target is on `tree`.
pub fn find_previous_target(
    tree: &ScreenTree,
    steps: &[StepRecord],
    upto: usize,
) -> Option<(usize, NodeId)> {
    let index = tree.index();
    (0..upto.min(steps.len()))
        .rev()
        .find_map(|i| find_target_in(&index, &steps[i].clicked_view).node_id.map(|n| (i, n)))
}

/// Visible scrollable view whose closest text equals the captured one.
pub fn find_scroll_container(tree: &ScreenTree, scrolled: &ViewSnapshot) -> Option<NodeId> {
    find_scroll_container_in(&tree.index(), scrolled)
}

pub fn find_scroll_container_in(index: &TreeIndex<'_>, scrolled: &ViewSnapshot) -> Option<NodeId> {
    let key = normalize_text(&scrolled.closest_text);
    if key.is_empty() {
        return None;
    }
    let candidates = (0..index.len())
        .filter(|&i| {
            let node = index.node(i);
            node.visible
                && node.capabilities.is_scrollable()
                && normalize_text(index.closest_text(i)) == key
        })
        .collect();
    rank(index, candidates, scrolled).node_id
}

/// One of nine screen regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectorLabel {
    TopLeftCorner,
    TopRightCorner,
    BottomLeftCorner,
    BottomRightCorner,
    TopEdge,
    LeftEdge,
    RightEdge,
    BottomEdge,
    Center,
}

impl SectorLabel {
    /// Labels in priority order with their (column, row) in the 3x3 grid.
    pub const PRIORITY: [(SectorLabel, u8, u8); 9] = [
        (SectorLabel::TopLeftCorner, 0, 0),
        (SectorLabel::TopRightCorner, 2, 0),
        (SectorLabel::BottomLeftCorner, 0, 2),
        (SectorLabel::BottomRightCorner, 2, 2),
        (SectorLabel::TopEdge, 1, 0),
        (SectorLabel::LeftEdge, 0, 1),
        (SectorLabel::RightEdge, 2, 1),
        (SectorLabel::BottomEdge, 1, 2),
        (SectorLabel::Center, 1, 1),
    ];

    pub const fn phrase(self) -> &'static str {
        match self {
            SectorLabel::TopLeftCorner => "top left corner",
            SectorLabel::TopRightCorner => "top right corner",
            SectorLabel::BottomLeftCorner => "bottom left corner",
            SectorLabel::BottomRightCorner => "bottom right corner",
            SectorLabel::TopEdge => "top edge",
            SectorLabel::LeftEdge => "left edge",
            SectorLabel::RightEdge => "right edge",
            SectorLabel::BottomEdge => "bottom edge",
            SectorLabel::Center => "center",
        }
    }
}

impl fmt::Display for SectorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.phrase())
    }
}

/// Label the highest-priority third-of-screen cell that `bounds` overlaps.
pub fn sector_label(bounds: Bounds, screen_w: i32, screen_h: i32) -> Result<SectorLabel, SectorError> {
    if screen_w <= 0
        || screen_h <= 0
        || !bounds.is_well_formed()
        || !bounds.fits_within(screen_w, screen_h)
    {
        return Err(SectorError::OutsideScreen(bounds, screen_w, screen_h));
    }
    // band k covers [k*size/3, (k+1)*size/3); compare in thirds to stay exact
    let overlaps = |lo: i32, hi: i32, size: i32, band: u8| {
        let (lo, hi, size, band) = (lo as i64 * 3, hi as i64 * 3, size as i64, band as i64);
        lo < (band + 1) * size && hi > band * size
    };
    SectorLabel::PRIORITY
        .iter()
        .find(|(_, col, row)| {
            overlaps(bounds.left, bounds.right, screen_w, *col)
                && overlaps(bounds.top, bounds.bottom, screen_h, *row)
        })
        .map(|(label, _, _)| *label)
        .ok_or(SectorError::OutsideScreen(bounds, screen_w, screen_h))
}

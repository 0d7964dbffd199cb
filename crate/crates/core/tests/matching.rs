mod support;

use std::time::{Duration, Instant};

use proptest::prelude::*;
use support::{flatten, oracle_closest_text, oracle_find_target, oracle_snapshot, random_screen};
use walkthrough_core::authoring::ViewSnapshot;
use walkthrough_core::matching::find_target;
use walkthrough_core::{NodeId, ScreenTree, ViewNode};

const TREES: u64 = 1000;

fn interactive_ids(tree: &ScreenTree) -> Vec<NodeId> {
    flatten(tree)
        .iter()
        .filter(|f| f.node.is_interactive())
        .map(|f| f.node.id.clone())
        .collect()
}

#[test]
fn closest_text_agrees_with_level_order_search() {
    for seed in 0..TREES {
        let tree = random_screen(seed, 3);
        for f in flatten(&tree) {
            assert_eq!(tree.closest_text(&f.node.id).unwrap(), oracle_closest_text(&f), "seed {seed}, node {}", f.node.id);
        }
    }
}

#[test]
fn capture_agrees_with_reference_snapshot() {
    for seed in 0..200 {
        let tree = random_screen(seed, 2);
        let index = tree.index();
        for at in 0..index.len() {
            let id = &index.node(at).id;
            assert_eq!(ViewSnapshot::capture(&index, at), oracle_snapshot(&tree, id), "seed {seed}");
        }
    }
}

#[test]
fn find_target_agrees_with_exhaustive_ranking() {
    let mut matcher_time = Duration::ZERO;
    let mut tie_breaks = [0usize; 3];
    let mut checked = 0;
    for seed in 0..TREES {
        let tree = random_screen(seed, 4);
        for id in interactive_ids(&tree) {
            let target = oracle_snapshot(&tree, &id);
            let start = Instant::now();
            let got = find_target(&tree, &target);
            matcher_time += start.elapsed();
            let (winner, trace, count) = oracle_find_target(&tree, &target);
            assert_eq!(got.node_id, winner, "seed {seed}, target {id}");
            assert_eq!(got.rank_trace, trace, "seed {seed}, target {id}");
            assert_eq!(got.candidate_count, count, "seed {seed}, target {id}");
            tie_breaks[trace.len().saturating_sub(1).min(2)] += usize::from(!trace.is_empty());
            checked += 1;
        }
    }
    assert!(matcher_time < Duration::from_secs(5), "matcher took {matcher_time:?}");
    assert!(checked > 5000);
    // the planted copies must actually exercise every tie-break level
    assert!(tie_breaks.iter().all(|&n| n > 0), "{tie_breaks:?}");
}

#[test]
fn labelless_flagged_targets_have_no_candidates() {
    let mut tree = random_screen(11, 0);
    tree.root.children.push(
        ViewNode::new("bare", "android.widget.Switch", "com.example.app", walkthrough_core::Bounds::new(0, 0, 10, 10))
            .capability(walkthrough_core::model::Capability::Clickable),
    );
    tree.root.text = None;
    tree.root.content_description = None;
    let mut target = oracle_snapshot(&tree, &"bare".into());
    assert_eq!(target.closest_text, "");
    assert_eq!(find_target(&tree, &target).candidate_count, 1);
    target.flags.dynamic = true;
    let out = find_target(&tree, &target);
    assert_eq!((out.node_id, out.candidate_count), (None, 0));
}

fn shifted(node: &ViewNode, dx: i32, dy: i32) -> ViewNode {
    let mut n = node.clone();
    n.bounds = n.bounds.translated(dx, dy);
    n.children = node.children.iter().map(|c| shifted(c, dx, dy)).collect();
    n
}

proptest! {
    #[test]
    fn moving_the_whole_screen_keeps_the_match(seed in 0u64..5000, dx in -500i32..500, dy in -500i32..500, pick in 0usize..64) {
        let tree = random_screen(seed, 3);
        let ids = interactive_ids(&tree);
        prop_assume!(!ids.is_empty());
        let id = &ids[pick % ids.len()];
        let target = oracle_snapshot(&tree, id);
        let before = find_target(&tree, &target);
        let mut moved = tree.clone();
        moved.root = shifted(&tree.root, dx, dy);
        let mut moved_target = target.clone();
        moved_target.bounds = target.bounds.translated(dx, dy);
        prop_assert_eq!(find_target(&moved, &moved_target), before.clone());
        // the captured position is never used: moving only the target changes nothing
        prop_assert_eq!(find_target(&tree, &moved_target), before);
    }

    #[test]
    fn interactive_views_follow_document_order(seed in 0u64..5000) {
        let tree = random_screen(seed, 2);
        let order: Vec<NodeId> = flatten(&tree).iter().map(|f| f.node.id.clone()).collect();
        let views = tree.interactive_views();
        let mut positions = views.iter().map(|id| order.iter().position(|o| o == id).unwrap());
        let mut last = None;
        for p in positions.by_ref() {
            prop_assert!(last.is_none_or(|l| p > l));
            last = Some(p);
        }
        prop_assert_eq!(views, interactive_ids(&tree));
    }
}

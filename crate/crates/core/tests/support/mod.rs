//! Random screens and brute-force reference implementations shared by the
//! integration tests. The oracles here are written from the rules, not from
//! the library code: recursion instead of indexes, level-by-level search
//! instead of a queue, floating point thirds instead of integer scaling.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use walkthrough_core::authoring::ViewSnapshot;
use walkthrough_core::matching::{SectorLabel, TieBreaker};
use walkthrough_core::model::Capability;
use walkthrough_core::{Bounds, NodeId, ScreenTree, ViewNode};

pub const W: i32 = 1080;
pub const H: i32 = 1920;

const CLASSES: [&str; 4] = ["android.widget.Button", "android.widget.ImageButton", "android.widget.TextView", "android.widget.FrameLayout"];
const PACKAGES: [&str; 2] = ["com.example.app", "com.example.other"];
const WORDS: [&str; 6] = ["Save", "save ", "Share", "  Open  menu", "open menu", "Next"];

/// Seeded random screen with `planted` extra copies of existing interactive
/// nodes dropped elsewhere in the tree, to force tie-breaks.
pub fn random_screen(seed: u64, planted: usize) -> ScreenTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut next_id = 0usize;
    let mut root = random_node(&mut rng, 0, &mut next_id);
    root.bounds = Bounds::new(0, 0, W, H);
    for _ in 0..planted {
        let mut interactive = Vec::new();
        collect(&root, &mut |n| {
            if n.visible && n.capabilities.is_clickable() {
                interactive.push(n.clone());
            }
        });
        if interactive.is_empty() {
            break;
        }
        let mut copy = interactive[rng.gen_range(0..interactive.len())].clone();
        copy.children.clear();
        copy.id = NodeId::new(format!("n{next_id}"));
        next_id += 1;
        if rng.gen_bool(0.3) {
            // same label on a different area
            let b = copy.bounds;
            copy.bounds = Bounds::new(b.left, b.top, b.left + (b.right - b.left) / 2 + 1, b.bottom);
        }
        insert_somewhere(&mut root, copy, &mut rng);
    }
    ScreenTree {
        screen_id: format!("s{seed}"),
        title: "Random".into(),
        activity: "RandomActivity".into(),
        package_name: PACKAGES[0].into(),
        screen_width: W,
        screen_height: H,
        root,
    }
}

fn random_bounds(rng: &mut ChaCha8Rng) -> Bounds {
    // few distinct sizes so equal areas are common
    let w = [120, 240, 360][rng.gen_range(0..3)];
    let h = [100, 200][rng.gen_range(0..2)];
    let l = rng.gen_range(0..=(W - w));
    let t = rng.gen_range(0..=(H - h));
    Bounds::new(l, t, l + w, t + h)
}

fn random_node(rng: &mut ChaCha8Rng, depth: usize, next_id: &mut usize) -> ViewNode {
    let id = format!("n{next_id}");
    *next_id += 1;
    let class = CLASSES[rng.gen_range(0..CLASSES.len())];
    let pkg = PACKAGES[usize::from(rng.gen_bool(0.1))];
    let mut node = ViewNode::new(id, class, pkg, random_bounds(rng));
    if rng.gen_bool(0.35) {
        node = node.text(WORDS[rng.gen_range(0..WORDS.len())]);
    } else if rng.gen_bool(0.1) {
        node = node.text("   ");
    }
    if rng.gen_bool(0.25) {
        node = node.description(WORDS[rng.gen_range(0..WORDS.len())]);
    }
    for (cap, p) in [
        (Capability::Clickable, 0.45),
        (Capability::LongClickable, 0.1),
        (Capability::Focusable, 0.5),
        (Capability::Scrollable, 0.05),
    ] {
        if rng.gen_bool(p) {
            node = node.capability(cap);
        }
    }
    if rng.gen_bool(0.1) {
        node = node.hidden();
    }
    if depth < 4 {
        let kids = rng.gen_range(0..=if depth == 0 { 5 } else { 3 });
        for _ in 0..kids {
            let child = random_node(rng, depth + 1, next_id);
            node = node.child(child);
        }
    }
    node
}

fn collect<'a>(node: &'a ViewNode, f: &mut impl FnMut(&'a ViewNode)) {
    f(node);
    for c in &node.children {
        collect(c, f);
    }
}

fn insert_somewhere(root: &mut ViewNode, node: ViewNode, rng: &mut ChaCha8Rng) {
    let mut count = 0;
    collect(root, &mut |_| count += 1);
    let target = rng.gen_range(0..count);
    let mut seen = 0;
    fn walk(n: &mut ViewNode, target: usize, seen: &mut usize, node: &mut Option<ViewNode>) {
        if *seen == target {
            if let Some(x) = node.take() {
                n.children.push(x);
            }
            return;
        }
        *seen += 1;
        for c in &mut n.children {
            walk(c, target, seen, node);
            if node.is_none() {
                return;
            }
        }
    }
    walk(root, target, &mut seen, &mut Some(node));
}

fn own(n: &ViewNode) -> Option<&str> {
    [n.text.as_deref(), n.content_description.as_deref()]
        .into_iter()
        .flatten()
        .find(|s| !s.trim().is_empty())
}

pub fn normalize(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

/// Node, its ancestors (root first) and its depth, in document order.
pub struct Flat<'a> {
    pub node: &'a ViewNode,
    pub ancestors: Vec<&'a ViewNode>,
}

pub fn flatten(tree: &ScreenTree) -> Vec<Flat<'_>> {
    fn go<'a>(n: &'a ViewNode, path: &mut Vec<&'a ViewNode>, out: &mut Vec<Flat<'a>>) {
        out.push(Flat { node: n, ancestors: path.clone() });
        path.push(n);
        for c in &n.children {
            go(c, path, out);
        }
        path.pop();
    }
    let mut out = Vec::new();
    go(&tree.root, &mut Vec::new(), &mut out);
    out
}

/// Own label, else the first labelled descendant level by level, else the
/// nearest labelled ancestor.
pub fn oracle_closest_text(flat: &Flat<'_>) -> String {
    if let Some(l) = own(flat.node) {
        return l.to_string();
    }
    let mut level: Vec<&ViewNode> = flat.node.children.iter().collect();
    while !level.is_empty() {
        if let Some(l) = level.iter().find_map(|n| own(n)) {
            return l.to_string();
        }
        level = level.iter().flat_map(|n| n.children.iter()).collect();
    }
    flat.ancestors.iter().rev().find_map(|a| own(a)).unwrap_or("").to_string()
}

pub fn oracle_snapshot(tree: &ScreenTree, id: &NodeId) -> ViewSnapshot {
    let flat = flatten(tree);
    let f = flat.iter().find(|f| &f.node.id == id).expect("node exists");
    ViewSnapshot {
        class_name: f.node.class_name.clone(),
        package_name: f.node.package_name.clone(),
        text: f.node.text.clone(),
        content_description: f.node.content_description.clone(),
        closest_text: oracle_closest_text(f),
        bounds: f.node.bounds,
        depth: f.ancestors.len(),
        capabilities: f.node.capabilities,
        visible: f.node.visible,
        flags: Default::default(),
    }
}

/// Expected (winner, rank trace, candidate count) by sorting every candidate.
pub fn oracle_find_target(tree: &ScreenTree, target: &ViewSnapshot) -> (Option<NodeId>, Vec<TieBreaker>, usize) {
    let key = normalize(&target.closest_text);
    if key.is_empty() && (target.flags.sensitive || target.flags.dynamic) {
        return (None, vec![], 0);
    }
    let flat = flatten(tree);
    let cands: Vec<(i64, i64, usize, &ViewNode)> = flat
        .iter()
        .enumerate()
        .filter(|(_, f)| {
            let n = f.node;
            let caps = n.capabilities;
            n.visible
                && (caps.contains(Capability::Clickable) || caps.contains(Capability::LongClickable))
                && n.package_name == target.package_name
                && n.class_name == target.class_name
                && normalize(&oracle_closest_text(f)) == key
        })
        .map(|(order, f)| {
            let area = |b: Bounds| (b.right - b.left) as i64 * (b.bottom - b.top) as i64;
            let da = (area(f.node.bounds) - area(target.bounds)).abs();
            let dd = (f.ancestors.len() as i64 - target.depth as i64).abs();
            (da, dd, order, f.node)
        })
        .collect();
    let count = cands.len();
    let mut trace = vec![];
    if count > 1 {
        trace.push(TieBreaker::Size);
        let best = cands.iter().map(|c| c.0).min().unwrap();
        let same_size: Vec<_> = cands.iter().filter(|c| c.0 == best).collect();
        if same_size.len() > 1 {
            trace.push(TieBreaker::Depth);
            let best_d = same_size.iter().map(|c| c.1).min().unwrap();
            if same_size.iter().filter(|c| c.1 == best_d).count() > 1 {
                trace.push(TieBreaker::DomOrder);
            }
        }
    }
    let winner = cands.iter().min_by_key(|c| (c.0, c.1, c.2)).map(|c| c.3.id.clone());
    (winner, trace, count)
}

/// Sector by intersecting the element with each third of the screen,
/// then picking corners before edges before the center.
pub fn oracle_sector(b: Bounds, w: i32, h: i32) -> SectorLabel {
    let third = |size: i32, k: i32| (size as f64 * k as f64 / 3.0, size as f64 * (k + 1) as f64 / 3.0);
    let hit = |lo: i32, hi: i32, size: i32, k: i32| {
        let (a, z) = third(size, k);
        (lo as f64) < z && (hi as f64) > a
    };
    let cell = |c: i32, r: i32| hit(b.left, b.right, w, c) && hit(b.top, b.bottom, h, r);
    let order = [
        ((0, 0), SectorLabel::TopLeftCorner),
        ((2, 0), SectorLabel::TopRightCorner),
        ((0, 2), SectorLabel::BottomLeftCorner),
        ((2, 2), SectorLabel::BottomRightCorner),
        ((1, 0), SectorLabel::TopEdge),
        ((0, 1), SectorLabel::LeftEdge),
        ((2, 1), SectorLabel::RightEdge),
        ((1, 2), SectorLabel::BottomEdge),
        ((1, 1), SectorLabel::Center),
    ];
    order.iter().find(|((c, r), _)| cell(*c, *r)).map(|(_, s)| *s).expect("a screen element touches some third")
}

/// Every 50x50 grid element: each grid cell spanned 1..=3 cells wide and tall.
pub fn grid_elements() -> Vec<Bounds> {
    let (cw, ch) = (W / 50, H / 50);
    let mut out = Vec::new();
    for gx in 0..50 {
        for gy in 0..50 {
            let span_x = 1 + (gx * 7 + gy) % 3;
            let span_y = 1 + (gy * 5 + gx) % 3;
            let r = ((gx + span_x) * cw).min(W);
            let bo = ((gy + span_y) * ch).min(H);
            out.push(Bounds::new(gx * cw, gy * ch, r, bo));
        }
    }
    out
}

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{NodeId, Violation, ViewNode};
use crate::error::ModelError;

/// One screen's accessibility tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenTree {
    pub screen_id: String,
    pub title: String,
    pub activity: String,
    pub package_name: String,
    pub screen_width: i32,
    pub screen_height: i32,
    pub root: ViewNode,
}

impl ScreenTree {
    pub fn index(&self) -> TreeIndex<'_> {
        TreeIndex::new(self)
    }

    pub fn find_node(&self, id: &NodeId) -> Option<&ViewNode> {
        fn walk<'a>(node: &'a ViewNode, id: &NodeId) -> Option<&'a ViewNode> {
            if &node.id == id {
                return Some(node);
            }
            node.children.iter().find_map(|c| walk(c, id))
        }
        walk(&self.root, id)
    }

    /// Label associated with a node: its own text or description, else the
    /// nearest labelled descendant (breadth-first), else the nearest labelled
    /// ancestor. Empty when nothing in the tree qualifies.
    pub fn closest_text(&self, id: &NodeId) -> Result<String, ModelError> {
        let index = self.index();
        let at = index.position(id).ok_or_else(|| ModelError::UnknownNode(id.clone()))?;
        Ok(index.closest_text(at).to_string())
    }

    /// Visible clickable or long-clickable nodes in pre-order.
    pub fn interactive_views(&self) -> Vec<NodeId> {
        self.index()
            .preorder()
            .filter(|n| n.node.is_interactive())
            .map(|n| n.node.id.clone())
            .collect()
    }

    pub fn node_depth(&self, id: &NodeId) -> Result<usize, ModelError> {
        let index = self.index();
        index
            .position(id)
            .map(|at| index.entry(at).depth)
            .ok_or_else(|| ModelError::UnknownNode(id.clone()))
    }

    /// Invariant violations of this tree on its own: id uniqueness, bounds
    /// shape and containment, and editable implying focusable.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = BTreeMap::new();
        for entry in self.index().preorder() {
            let node = entry.node;
            let at = || (self.screen_id.clone(), node.id.clone());
            if seen.insert(node.id.as_str(), ()).is_some() {
                let (screen, node) = at();
                out.push(Violation::DuplicateNodeId { screen, node });
            }
            if !node.bounds.is_well_formed() {
                let (screen, node) = at();
                out.push(Violation::MalformedBounds { screen, node });
            } else if !node.bounds.fits_within(self.screen_width, self.screen_height) {
                let (screen, node) = at();
                out.push(Violation::BoundsOutsideScreen { screen, node });
            }
            if node.capabilities.is_editable() && !node.capabilities.is_focusable() {
                let (screen, node) = at();
                out.push(Violation::EditableNotFocusable { screen, node });
            }
        }
        out
    }
}

/// A node in pre-order position with its structural context.
#[derive(Debug, Clone, Copy)]
pub struct IndexedNode<'a> {
    pub node: &'a ViewNode,
    pub parent: Option<usize>,
    pub depth: usize,
}

/// Flattened pre-order view of a tree. Positions are pre-order ranks.
#[derive(Debug, Clone)]
pub struct TreeIndex<'a> {
    tree: &'a ScreenTree,
    entries: Vec<IndexedNode<'a>>,
    children: Vec<Vec<usize>>,
    by_id: BTreeMap<&'a str, usize>,
}

impl<'a> TreeIndex<'a> {
    pub fn new(tree: &'a ScreenTree) -> Self {
        let mut index = Self {
            tree,
            entries: Vec::new(),
            children: Vec::new(),
            by_id: BTreeMap::new(),
        };
        let mut stack: Vec<(&ViewNode, Option<usize>, usize)> = alloc::vec![(&tree.root, None, 0)];
        while let Some((node, parent, depth)) = stack.pop() {
            let at = index.entries.len();
            index.entries.push(IndexedNode { node, parent, depth });
            index.children.push(Vec::new());
            if let Some(p) = parent {
                index.children[p].push(at);
            }
            // first occurrence wins for duplicated ids
            index.by_id.entry(node.id.as_str()).or_insert(at);
            for child in node.children.iter().rev() {
                stack.push((child, Some(at), depth + 1));
            }
        }
        index
    }

    pub fn tree(&self) -> &'a ScreenTree {
        self.tree
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, id: &NodeId) -> Option<usize> {
        self.by_id.get(id.as_str()).copied()
    }

    pub fn entry(&self, at: usize) -> &IndexedNode<'a> {
        &self.entries[at]
    }

    pub fn node(&self, at: usize) -> &'a ViewNode {
        self.entries[at].node
    }

    pub fn children(&self, at: usize) -> &[usize] {
        &self.children[at]
    }

    pub fn preorder(&self) -> impl Iterator<Item = &IndexedNode<'a>> + '_ {
        self.entries.iter()
    }

    /// Nearest-first ancestor positions.
    pub fn ancestors(&self, at: usize) -> impl Iterator<Item = usize> + '_ {
        core::iter::successors(self.entries[at].parent, move |&p| self.entries[p].parent)
    }

    /// Whether `at` lies strictly inside the subtree rooted at `ancestor`.
    pub fn is_descendant(&self, at: usize, ancestor: usize) -> bool {
        self.ancestors(at).any(|a| a == ancestor)
    }

    pub fn closest_text(&self, at: usize) -> &'a str {
        if let Some(label) = self.node(at).own_label() {
            return label;
        }
        let mut queue: VecDeque<usize> = self.children[at].iter().copied().collect();
        while let Some(next) = queue.pop_front() {
            if let Some(label) = self.node(next).own_label() {
                return label;
            }
            queue.extend(self.children[next].iter().copied());
        }
        self.ancestors(at)
            .find_map(|a| self.node(a).own_label())
            .unwrap_or("")
    }
}

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{ActionType, NodeId, ScreenTree, Violation};

/// A deterministic edge of the app graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub screen: String,
    pub node: NodeId,
    pub action: ActionType,
    pub target: String,
}

/// Declared meaning of an editable field, for documentation of fixtures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditEffect {
    pub screen: String,
    pub node: NodeId,
    pub meaning: String,
}

type TransitionKey = (String, NodeId, ActionType);

/// A synthetic application: screens plus deterministic transitions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "RawAppGraph", into = "RawAppGraph")]
pub struct AppGraph {
    pub app_id: String,
    pub package_name: String,
    pub entry_screen: String,
    screens: BTreeMap<String, ScreenTree>,
    transitions: BTreeMap<TransitionKey, String>,
    edit_effects: BTreeMap<(String, NodeId), String>,
    // duplicates dropped while building the maps, reported by `violations`
    duplicates: Vec<Violation>,
}

impl AppGraph {
    pub fn new(
        app_id: impl Into<String>,
        package_name: impl Into<String>,
        entry_screen: impl Into<String>,
    ) -> Self {
        Self {
            app_id: app_id.into(),
            package_name: package_name.into(),
            entry_screen: entry_screen.into(),
            screens: BTreeMap::new(),
            transitions: BTreeMap::new(),
            edit_effects: BTreeMap::new(),
            duplicates: Vec::new(),
        }
    }

    pub fn add_screen(&mut self, screen: ScreenTree) -> &mut Self {
        if self.screens.contains_key(&screen.screen_id) {
            self.duplicates.push(Violation::DuplicateScreen(screen.screen_id));
        } else {
            self.screens.insert(screen.screen_id.clone(), screen);
        }
        self
    }

    /// Swap in a new version of an existing screen, returning the old one.
    pub fn replace_screen(&mut self, screen: ScreenTree) -> Option<ScreenTree> {
        self.screens.insert(screen.screen_id.clone(), screen)
    }

    pub fn add_transition(
        &mut self,
        screen: impl Into<String>,
        node: impl Into<NodeId>,
        action: ActionType,
        target: impl Into<String>,
    ) -> &mut Self {
        match self.transitions.entry((screen.into(), node.into(), action)) {
            Entry::Occupied(e) => {
                let (screen, node, action) = e.key().clone();
                self.duplicates.push(Violation::DuplicateTransition { screen, node, action });
            }
            Entry::Vacant(e) => {
                e.insert(target.into());
            }
        }
        self
    }

    pub fn add_edit_effect(
        &mut self,
        screen: impl Into<String>,
        node: impl Into<NodeId>,
        meaning: impl Into<String>,
    ) -> &mut Self {
        self.edit_effects.insert((screen.into(), node.into()), meaning.into());
        self
    }

    pub fn screen(&self, id: &str) -> Option<&ScreenTree> {
        self.screens.get(id)
    }

    pub fn entry(&self) -> Option<&ScreenTree> {
        self.screen(&self.entry_screen)
    }

    pub fn screens(&self) -> impl Iterator<Item = &ScreenTree> {
        self.screens.values()
    }

    pub fn screen_count(&self) -> usize {
        self.screens.len()
    }

    /// Destination of `action` on `node`, if the graph defines one.
    pub fn transition(&self, screen: &str, node: &NodeId, action: ActionType) -> Option<&str> {
        // BTreeMap lookups need an owned key; screens and ids are short.
        self.transitions
            .get(&(String::from(screen), node.clone(), action))
            .map(String::as_str)
    }

    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        self.transitions.iter().map(|((screen, node, action), target)| Transition {
            screen: screen.clone(),
            node: node.clone(),
            action: *action,
            target: target.clone(),
        })
    }

    pub fn edit_meaning(&self, screen: &str, node: &NodeId) -> Option<&str> {
        self.edit_effects
            .get(&(String::from(screen), node.clone()))
            .map(String::as_str)
    }

    /// Every invariant violation, in a stable order. Empty means valid.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = self.duplicates.clone();
        if !self.screens.contains_key(&self.entry_screen) {
            out.push(Violation::MissingEntryScreen(self.entry_screen.clone()));
        }
        for screen in self.screens.values() {
            out.extend(screen.violations());
        }
        for ((screen, node, action), target) in &self.transitions {
            let Some(tree) = self.screens.get(screen) else {
                out.push(Violation::UnknownTransitionScreen(screen.clone()));
                continue;
            };
            match tree.find_node(node) {
                None => out.push(Violation::UnknownTransitionNode {
                    screen: screen.clone(),
                    node: node.clone(),
                }),
                Some(view) if !action.permitted_by(&view.capabilities) => {
                    out.push(Violation::CapabilityMismatch {
                        screen: screen.clone(),
                        node: node.clone(),
                        action: *action,
                    })
                }
                Some(_) => {}
            }
            if !self.screens.contains_key(target) {
                out.push(Violation::UnknownTransitionTarget {
                    screen: screen.clone(),
                    node: node.clone(),
                    target: target.clone(),
                });
            }
        }
        for (screen, node) in self.edit_effects.keys() {
            let editable = self
                .screens
                .get(screen)
                .and_then(|t| t.find_node(node))
                .is_some_and(|n| n.capabilities.is_editable());
            if !editable {
                out.push(Violation::EditEffectNotEditable {
                    screen: screen.clone(),
                    node: node.clone(),
                });
            }
        }
        out
    }
}

/// On-disk shape: sorted lists instead of maps keyed by tuples.
#[derive(Serialize, Deserialize)]
struct RawAppGraph {
    app_id: String,
    package_name: String,
    entry_screen: String,
    screens: Vec<ScreenTree>,
    #[serde(default)]
    transitions: Vec<Transition>,
    #[serde(default)]
    edit_effects: Vec<EditEffect>,
}

impl From<RawAppGraph> for AppGraph {
    fn from(raw: RawAppGraph) -> Self {
        let mut graph = AppGraph::new(raw.app_id, raw.package_name, raw.entry_screen);
        for s in raw.screens {
            graph.add_screen(s);
        }
        for t in raw.transitions {
            graph.add_transition(t.screen, t.node, t.action, t.target);
        }
        for e in raw.edit_effects {
            graph.add_edit_effect(e.screen, e.node, e.meaning);
        }
        graph
    }
}

impl From<AppGraph> for RawAppGraph {
    fn from(g: AppGraph) -> Self {
        let transitions = g.transitions().collect();
        RawAppGraph {
            app_id: g.app_id,
            package_name: g.package_name,
            entry_screen: g.entry_screen,
            screens: g.screens.into_values().collect(),
            transitions,
            edit_effects: g
                .edit_effects
                .into_iter()
                .map(|((screen, node), meaning)| EditEffect { screen, node, meaning })
                .collect(),
        }
    }
}

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use super::Bounds;

/// Identifier of a view, unique within one [`ScreenTree`](super::ScreenTree).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        Self(s.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Capability {
    Clickable,
    LongClickable,
    Scrollable,
    Editable,
    Focusable,
}

impl Capability {
    pub const ALL: [Capability; 5] = [
        Capability::Clickable,
        Capability::LongClickable,
        Capability::Scrollable,
        Capability::Editable,
        Capability::Focusable,
    ];

    const fn bit(self) -> u8 {
        1 << self as u8
    }
}

/// Set of interaction capabilities. Serialized as a list in canonical order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Capability>", into = "Vec<Capability>")]
pub struct Capabilities(u8);

impl Capabilities {
    pub const fn empty() -> Self {
        Self(0)
    }

    pub const fn with(self, cap: Capability) -> Self {
        Self(self.0 | cap.bit())
    }

    pub const fn contains(&self, cap: Capability) -> bool {
        self.0 & cap.bit() != 0
    }

    pub fn insert(&mut self, cap: Capability) {
        self.0 |= cap.bit();
    }

    pub const fn is_clickable(&self) -> bool {
        self.contains(Capability::Clickable)
    }

    pub const fn is_long_clickable(&self) -> bool {
        self.contains(Capability::LongClickable)
    }

    pub const fn is_scrollable(&self) -> bool {
        self.contains(Capability::Scrollable)
    }

    pub const fn is_editable(&self) -> bool {
        self.contains(Capability::Editable)
    }

    pub const fn is_focusable(&self) -> bool {
        self.contains(Capability::Focusable)
    }

    pub fn iter(&self) -> impl Iterator<Item = Capability> + '_ {
        Capability::ALL.into_iter().filter(|c| self.contains(*c))
    }
}

impl FromIterator<Capability> for Capabilities {
    fn from_iter<I: IntoIterator<Item = Capability>>(iter: I) -> Self {
        let mut caps = Self::empty();
        for c in iter {
            caps.insert(c);
        }
        caps
    }
}

impl From<Vec<Capability>> for Capabilities {
    fn from(v: Vec<Capability>) -> Self {
        v.into_iter().collect()
    }
}

impl From<Capabilities> for Vec<Capability> {
    fn from(c: Capabilities) -> Self {
        c.iter().collect()
    }
}

fn is_true(b: &bool) -> bool {
    *b
}

fn default_true() -> bool {
    true
}

/// One element of an accessibility tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViewNode {
    pub id: NodeId,
    pub class_name: String,
    pub package_name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub content_description: Option<String>,
    pub bounds: Bounds,
    #[serde(default)]
    pub capabilities: Capabilities,
    #[serde(default = "default_true", skip_serializing_if = "is_true")]
    pub visible: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<ViewNode>,
}

impl ViewNode {
    pub fn new(
        id: impl Into<String>,
        class_name: impl Into<String>,
        package_name: impl Into<String>,
        bounds: Bounds,
    ) -> Self {
        Self {
            id: NodeId::new(id),
            class_name: class_name.into(),
            package_name: package_name.into(),
            text: None,
            content_description: None,
            bounds,
            capabilities: Capabilities::empty(),
            visible: true,
            children: Vec::new(),
        }
    }

    pub fn text(mut self, text: impl Into<String>) -> Self {
        self.text = Some(text.into());
        self
    }

    pub fn description(mut self, cd: impl Into<String>) -> Self {
        self.content_description = Some(cd.into());
        self
    }

    pub fn capability(mut self, cap: Capability) -> Self {
        self.capabilities.insert(cap);
        self
    }

    pub fn hidden(mut self) -> Self {
        self.visible = false;
        self
    }

    pub fn child(mut self, child: ViewNode) -> Self {
        self.children.push(child);
        self
    }

    pub fn with_children(mut self, children: impl IntoIterator<Item = ViewNode>) -> Self {
        self.children.extend(children);
        self
    }

    /// First non-blank of `text`, then `content_description`.
    pub fn own_label(&self) -> Option<&str> {
        [self.text.as_deref(), self.content_description.as_deref()]
            .into_iter()
            .flatten()
            .find(|s| !s.trim().is_empty())
    }

    /// Visible and clickable or long-clickable.
    pub fn is_interactive(&self) -> bool {
        self.visible && (self.capabilities.is_clickable() || self.capabilities.is_long_clickable())
    }
}

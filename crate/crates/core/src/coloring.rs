use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// Color labels start at 1.
pub type Color = u32;

/// A total edge coloring, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeColoring {
    colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn new(colors: Vec<Color>) -> Self {
        EdgeColoring { colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, e: usize) -> Color {
        self.colors[e]
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.colors
    }

    pub fn palette(&self) -> BTreeSet<Color> {
        self.colors.iter().copied().collect()
    }

    pub fn palette_size(&self) -> usize {
        self.palette().len()
    }

    /// Relabels every color through `f`.
    pub fn map(&self, f: impl Fn(Color) -> Color) -> Self {
        EdgeColoring {
            colors: self.colors.iter().map(|&c| f(c)).collect(),
        }
    }
}

impl From<Vec<Color>> for EdgeColoring {
    fn from(colors: Vec<Color>) -> Self {
        EdgeColoring::new(colors)
    }
}

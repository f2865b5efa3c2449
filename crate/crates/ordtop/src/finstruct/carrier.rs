use std::collections::HashSet;

use serde::Serialize;

use super::{PointSet, StructError};

/// Largest carrier accepted from text/JSON input and by the direct operations.
pub const MAX_POINTS: usize = 20;

/// Ordered list of distinct point labels.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct Carrier {
    names: Vec<String>,
}

/// Characters allowed in a point label besides ASCII alphanumerics.
const LABEL_EXTRA: &[char] = &['_', '.', '+', '\'', '|'];

pub fn is_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || LABEL_EXTRA.contains(&c))
}

impl Carrier {
    /// Up to `PointSet::CAPACITY` points; derived carriers (power sets, products)
    /// may exceed `MAX_POINTS`.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, StructError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(StructError::EmptyCarrier);
        }
        if names.len() > PointSet::CAPACITY {
            return Err(StructError::TooLarge {
                n: names.len(),
                max: PointSet::CAPACITY,
            });
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !is_label(name) {
                return Err(StructError::BadLabel(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(StructError::DuplicateLabel(name.clone()));
            }
        }
        Ok(Carrier { names })
    }

    /// Labels `a, b, c, ...`; past `z` the labels continue as `p26, p27, ...`.
    pub fn standard(n: usize) -> Self {
        assert!((1..=PointSet::CAPACITY).contains(&n), "carrier size {n} out of range");
        let names = (0..n)
            .map(|i| {
                if i < 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("p{i}")
                }
            })
            .collect();
        Carrier { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// `{a b}` rendering used by the text format.
    pub fn render(&self, s: PointSet) -> String {
        let inner: Vec<&str> = s.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", inner.join(" "))
    }

    /// `a+b` rendering, usable as a label of a derived carrier.
    pub fn join_label(&self, s: PointSet) -> String {
        let inner: Vec<&str> = s.iter().map(|i| self.name(i)).collect();
        if inner.is_empty() {
            "0".to_string()
        } else {
            inner.join("+")
        }
    }
}

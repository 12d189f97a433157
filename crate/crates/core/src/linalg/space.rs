//! Finite-dimensional spaces with labeled bases.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Basis labels: atoms, duals and tensor tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Atom(String),
    Dual(Box<Label>),
    Tuple(Vec<Label>),
}

impl Label {
    pub fn atom(s: impl Into<String>) -> Label {
        Label::Atom(s.into())
    }

    pub fn dual(&self) -> Label {
        match self {
            Label::Dual(x) => (**x).clone(),
            x => Label::Dual(Box::new(x.clone())),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(s) => write!(f, "{s}"),
            Label::Dual(x) => write!(f, "{x}*"),
            Label::Tuple(xs) => {
                write!(f, "(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "⊗")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct VectorSpace {
    pub labels: Vec<Label>,
}

impl VectorSpace {
    pub fn new(labels: Vec<Label>) -> Self {
        VectorSpace { labels }
    }

    pub fn numbered(prefix: &str, n: usize) -> Self {
        VectorSpace { labels: (0..n).map(|i| Label::atom(format!("{prefix}{i}"))).collect() }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn dual(&self) -> Self {
        VectorSpace { labels: self.labels.iter().map(Label::dual).collect() }
    }

    /// Basis order: first factor most significant.
    pub fn tensor(&self, other: &VectorSpace) -> Self {
        let mut labels = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.labels {
            for b in &other.labels {
                labels.push(Label::Tuple(vec![a.clone(), b.clone()]));
            }
        }
        VectorSpace { labels }
    }
}

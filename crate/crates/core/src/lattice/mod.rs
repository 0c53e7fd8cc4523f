//! The subsumption lattice of conjunctions of (negated) concept names, least
//! common subsumers in ALE and good common subsumers w.r.t. a background TBox.

mod hierarchy;
mod lcs;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::dl::Concept;
use crate::fca::FcaError;
use crate::reasoner::ReasonerError;

pub use hierarchy::{build_hierarchy, min_subsuming_conjunction, ConjunctionHierarchy, Literal};
pub use lcs::{gcs, lcs_ale};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("not an ALE concept: {0}")]
    NotAle(String),
    #[error("not a conjunction of (negated) concept names: {0}")]
    NotLiteralConjunction(String),
    #[error("concept name {0} is not part of the hierarchy")]
    UnknownName(String),
    #[error(transparent)]
    Reasoner(#[from] ReasonerError),
    #[error(transparent)]
    Fca(#[from] FcaError),
}

/// A conjunction of concept names and negated concept names. A conjunction
/// containing some name both positively and negatively is `Bottom`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LiteralConjunction {
    Bottom,
    Literals {
        positives: BTreeSet<String>,
        negatives: BTreeSet<String>,
    },
}

impl LiteralConjunction {
    pub fn top() -> Self {
        Self::Literals {
            positives: BTreeSet::new(),
            negatives: BTreeSet::new(),
        }
    }

    pub fn new<P, N>(positives: P, negatives: N) -> Self
    where
        P: IntoIterator,
        P::Item: Into<String>,
        N: IntoIterator,
        N::Item: Into<String>,
    {
        let positives: BTreeSet<String> = positives.into_iter().map(Into::into).collect();
        let negatives: BTreeSet<String> = negatives.into_iter().map(Into::into).collect();
        if positives.intersection(&negatives).next().is_some() {
            Self::Bottom
        } else {
            Self::Literals {
                positives,
                negatives,
            }
        }
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Self::Bottom)
    }

    pub fn literals(&self) -> Vec<Literal> {
        match self {
            Self::Bottom => Vec::new(),
            Self::Literals {
                positives,
                negatives,
            } => positives
                .iter()
                .map(|n| Literal::positive(n.clone()))
                .chain(negatives.iter().map(|n| Literal::negative(n.clone())))
                .collect(),
        }
    }

    pub fn from_literals(literals: impl IntoIterator<Item = Literal>) -> Self {
        let (pos, neg): (Vec<Literal>, Vec<Literal>) = literals.into_iter().partition(|l| l.positive);
        Self::new(
            pos.into_iter().map(|l| l.name),
            neg.into_iter().map(|l| l.name),
        )
    }

    /// Read a concept that is a conjunction of (negated) names, `top` or
    /// `bottom`.
    pub fn from_concept(c: &Concept) -> Result<Self, LatticeError> {
        let mut literals = Vec::new();
        let conjuncts: &[Concept] = match c {
            Concept::And(cs) => cs,
            other => std::slice::from_ref(other),
        };
        for d in conjuncts {
            match d {
                Concept::Top => {}
                Concept::Bottom => return Ok(Self::Bottom),
                Concept::Atomic(n) => literals.push(Literal::positive(n.clone())),
                Concept::Not(inner) => match &**inner {
                    Concept::Atomic(n) => literals.push(Literal::negative(n.clone())),
                    _ => return Err(LatticeError::NotLiteralConjunction(c.to_string())),
                },
                _ => return Err(LatticeError::NotLiteralConjunction(c.to_string())),
            }
        }
        Ok(Self::from_literals(literals))
    }

    pub fn to_concept(&self) -> Concept {
        match self {
            Self::Bottom => Concept::Bottom,
            Self::Literals { .. } => Concept::and(self.literals().iter().map(Literal::to_concept)),
        }
    }
}

impl fmt::Display for LiteralConjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_concept())
    }
}

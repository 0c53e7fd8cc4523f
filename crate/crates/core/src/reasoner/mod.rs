//! Decision procedures over ALC knowledge bases: satisfiability, subsumption,
//! ABox consistency and three-valued instance checking.

mod tableau;

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::dl::{ABox, Concept, DlError, Interpretation, TBox};

use tableau::Tableau;

pub const DEFAULT_NODE_BUDGET: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReasonerError {
    #[error("tableau node budget of {limit} exhausted")]
    BudgetExhausted { limit: usize },
    #[error("the knowledge base is inconsistent")]
    InconsistentKb,
    #[error(transparent)]
    Dl(#[from] DlError),
}

/// A model together with a distinguished domain element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub model: Interpretation,
    pub element: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Entailed,
    Refuted,
    Unknown,
}

/// Outcome of an instance query `C(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntailmentVerdict {
    pub verdict: Verdict,
    /// A model of the query's ABox fragment where `a` is in `C`; absent when
    /// refuted.
    pub model_with: Option<Interpretation>,
    /// A model of the query's ABox fragment where `a` is not in `C`; absent
    /// when entailed.
    pub model_without: Option<Interpretation>,
}

/// Reasoner over a fixed TBox. Every query runs an independent tableau, so a
/// reasoner can be shared freely between threads.
#[derive(Clone, Debug)]
pub struct Reasoner {
    tbox: TBox,
    budget: usize,
}

impl Reasoner {
    pub fn new(tbox: TBox) -> Result<Self, ReasonerError> {
        tbox.check_acyclic()?;
        Ok(Self {
            tbox,
            budget: DEFAULT_NODE_BUDGET,
        })
    }

    /// Limit on completion-graph nodes plus branching steps per query.
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn tbox(&self) -> &TBox {
        &self.tbox
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    fn tableau(&self) -> Tableau<'_> {
        Tableau::new(&self.tbox, self.budget)
    }

    pub fn satisfiable(&self, c: &Concept) -> Result<bool, ReasonerError> {
        Ok(self.satisfiable_witness(c)?.is_some())
    }

    /// A model of the TBox with an element in `c`, if there is one.
    pub fn satisfiable_witness(&self, c: &Concept) -> Result<Option<Witness>, ReasonerError> {
        let model = self
            .tableau()
            .run(&ABox::new(), &[], std::slice::from_ref(c))?;
        Ok(model.map(|m| Witness {
            element: m.roots[0],
            model: m.interpretation,
        }))
    }

    /// `c ⊑ d` with respect to the TBox.
    pub fn subsumes(&self, c: &Concept, d: &Concept) -> Result<bool, ReasonerError> {
        Ok(self.non_subsumption_witness(c, d)?.is_none())
    }

    /// An element in `c` but not in `d`, if `c ⊑ d` fails.
    pub fn non_subsumption_witness(&self, c: &Concept, d: &Concept) -> Result<Option<Witness>, ReasonerError> {
        self.satisfiable_witness(&Concept::and([c.clone(), Concept::not(d.clone())]))
    }

    pub fn equivalent(&self, c: &Concept, d: &Concept) -> Result<bool, ReasonerError> {
        Ok(self.subsumes(c, d)? && self.subsumes(d, c)?)
    }

    pub fn abox_consistent(&self, abox: &ABox) -> Result<bool, ReasonerError> {
        Ok(self.abox_model(abox)?.is_some())
    }

    /// A common model of the TBox and `abox`, if there is one.
    pub fn abox_model(&self, abox: &ABox) -> Result<Option<Interpretation>, ReasonerError> {
        Ok(self.tableau().run(abox, &[], &[])?.map(|m| m.interpretation))
    }

    /// Three-valued instance check. Fails with
    /// [`ReasonerError::InconsistentKb`] when the knowledge base has no model.
    pub fn instance_check(&self, abox: &ABox, individual: &str, c: &Concept) -> Result<EntailmentVerdict, ReasonerError> {
        if !self.abox_consistent(abox)? {
            return Err(ReasonerError::InconsistentKb);
        }
        self.instance_check_consistent(abox, individual, c)
    }

    /// Instance check for an ABox already known to be consistent with the
    /// TBox. Only the connected component of `individual` is consulted.
    pub fn instance_check_consistent(
        &self,
        abox: &ABox,
        individual: &str,
        c: &Concept,
    ) -> Result<EntailmentVerdict, ReasonerError> {
        let fragment = component(abox, individual);
        let with = self.model_with(&fragment, individual, c.clone())?;
        let without = self.model_with(&fragment, individual, Concept::not(c.clone()))?;
        let verdict = match (&with, &without) {
            (Some(_), None) => Verdict::Entailed,
            (None, Some(_)) => Verdict::Refuted,
            (Some(_), Some(_)) => Verdict::Unknown,
            // only possible for an inconsistent fragment
            (None, None) => return Err(ReasonerError::InconsistentKb),
        };
        Ok(EntailmentVerdict {
            verdict,
            model_with: with,
            model_without: without,
        })
    }

    fn model_with(&self, abox: &ABox, individual: &str, c: Concept) -> Result<Option<Interpretation>, ReasonerError> {
        let extra = [(c, individual.to_owned())];
        Ok(self.tableau().run(abox, &extra, &[])?.map(|m| m.interpretation))
    }
}

/// The assertions about individuals connected to `individual` through role
/// assertions in either direction.
pub fn component(abox: &ABox, individual: &str) -> ABox {
    let mut seen = BTreeSet::from([individual.to_owned()]);
    let mut todo = VecDeque::from([individual.to_owned()]);
    while let Some(a) = todo.pop_front() {
        for (_, x, y) in abox.role_assertions() {
            let other = if *x == a {
                y
            } else if *y == a {
                x
            } else {
                continue;
            };
            if seen.insert(other.clone()) {
                todo.push_back(other.clone());
            }
        }
    }
    let mut out = ABox::new();
    for (c, a) in abox.concept_assertions() {
        if seen.contains(a) {
            out.assert_concept(c.clone(), a.clone());
        }
    }
    for (r, a, b) in abox.role_assertions() {
        if seen.contains(a) {
            out.assert_role(r.clone(), a.clone(), b.clone());
        }
    }
    out
}

pub fn satisfiable(tbox: &TBox, c: &Concept) -> Result<bool, ReasonerError> {
    Reasoner::new(tbox.clone())?.satisfiable(c)
}

pub fn subsumes(tbox: &TBox, c: &Concept, d: &Concept) -> Result<bool, ReasonerError> {
    Reasoner::new(tbox.clone())?.subsumes(c, d)
}

pub fn abox_consistent(tbox: &TBox, abox: &ABox) -> Result<bool, ReasonerError> {
    Reasoner::new(tbox.clone())?.abox_consistent(abox)
}

pub fn instance_check(
    tbox: &TBox,
    abox: &ABox,
    individual: &str,
    c: &Concept,
) -> Result<EntailmentVerdict, ReasonerError> {
    Reasoner::new(tbox.clone())?.instance_check(abox, individual, c)
}

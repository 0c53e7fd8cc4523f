//! Attribute exploration over a partial context.
//!
//! Premises are visited in lectic order among the sets closed under the
//! accepted implications. A premise `P` yields a question whenever its certain
//! conclusion is larger than `P`; the question always offers the maximal
//! unrefuted conclusion. A counterexample shrinks that conclusion and the same
//! premise is asked again until it is accepted or nothing is left to ask.

use crate::fca::{implication_closure, lectic_successor, AttributeOrder, AttributeSet, Implication};

use super::{PartialContext, PartialError, PartialObjectDescription};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Question {
    pub premise: AttributeSet,
    pub conclusion: AttributeSet,
}

impl Question {
    pub fn implication(&self) -> Implication {
        Implication::new(self.premise.clone(), self.conclusion.clone())
    }

    /// `{a, b} -> {c}` with attribute names.
    pub fn render(&self, attributes: &[String]) -> String {
        format!(
            "{} -> {}",
            render_set(&self.premise, attributes),
            render_set(&self.conclusion, attributes)
        )
    }
}

pub fn render_set(set: &AttributeSet, attributes: &[String]) -> String {
    let names: Vec<&str> = set.iter().map(|i| attributes[i].as_str()).collect();
    format!("{{{}}}", names.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Ask(Question),
    Complete,
}

/// Immutable exploration snapshot. Every transition returns a new state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplorationState {
    pctx: PartialContext,
    accepted: Vec<Implication>,
    cursor: Option<AttributeSet>,
    order: AttributeOrder,
}

impl ExplorationState {
    pub fn new(pctx: PartialContext, order: AttributeOrder) -> Result<Self, PartialError> {
        Self::with_background(pctx, order, Vec::new())
    }

    /// Start an exploration that already knows `background` implications.
    pub fn with_background(
        pctx: PartialContext,
        order: AttributeOrder,
        background: Vec<Implication>,
    ) -> Result<Self, PartialError> {
        let n = pctx.universe();
        if order.universe() != n {
            return Err(PartialError::Input(format!(
                "order spans {} attributes, context has {n}",
                order.universe()
            )));
        }
        if let Some(imp) = background.iter().find(|imp| pctx.refutes(imp)) {
            return Err(PartialError::RefutedImplication(imp.clone()));
        }
        let cursor = Some(implication_closure(&background, &AttributeSet::empty(n)));
        Ok(Self {
            pctx,
            accepted: background,
            cursor,
            order,
        }
        .settled())
    }

    pub fn context(&self) -> &PartialContext {
        &self.pctx
    }

    pub fn accepted(&self) -> &[Implication] {
        &self.accepted
    }

    pub fn order(&self) -> &AttributeOrder {
        &self.order
    }

    /// Premise that will be examined next; `None` once exploration is complete.
    pub fn cursor(&self) -> Option<&AttributeSet> {
        self.cursor.as_ref()
    }

    pub fn is_complete(&self) -> bool {
        self.next_undecided() == Step::Complete
    }

    fn close(&self, set: &AttributeSet) -> AttributeSet {
        implication_closure(&self.accepted, set)
    }

    /// Lectically smallest premise at or after the cursor that still has an
    /// undecided conclusion.
    pub fn next_undecided(&self) -> Step {
        let mut premise = self.cursor.clone();
        while let Some(p) = premise {
            let conclusion = self.pctx.certain_conclusion(&p);
            if conclusion != p {
                return Step::Ask(Question {
                    conclusion: conclusion.difference(&p),
                    premise: p,
                });
            }
            premise = lectic_successor(|s| self.close(s), &p, &self.order);
        }
        Step::Complete
    }

    /// Advance the cursor past premises with nothing left to ask.
    fn settled(mut self) -> Self {
        self.cursor = match self.next_undecided() {
            Step::Ask(q) => Some(q.premise),
            Step::Complete => None,
        };
        self
    }

    fn check_current(&self, question: &Question) -> Result<(), PartialError> {
        match self.next_undecided() {
            Step::Ask(current) if current == *question => Ok(()),
            Step::Ask(current) => Err(PartialError::StaleQuestion {
                expected: current.render(self.pctx.attributes()),
                got: question.render(self.pctx.attributes()),
            }),
            Step::Complete => Err(PartialError::AlreadyComplete),
        }
    }

    /// Accept the current question.
    pub fn apply_yes(&self, question: &Question) -> Result<Self, PartialError> {
        self.check_current(question)?;
        let mut next = self.clone();
        next.accepted.push(question.implication());
        next.cursor = lectic_successor(|s| next.close(s), &question.premise, &next.order);
        Ok(next.settled())
    }

    /// Reject the current question with a counterexample.
    pub fn apply_no(
        &self,
        question: &Question,
        counterexample: PartialObjectDescription,
    ) -> Result<Self, PartialError> {
        self.check_current(question)?;
        validate_refutation(&self.pctx, question, &counterexample)?;
        self.add_pod(counterexample)
    }

    /// Add a pod outside the question/answer flow. The pod must not contradict
    /// the accepted implications.
    pub fn add_pod(&self, pod: PartialObjectDescription) -> Result<Self, PartialError> {
        if pod.contradicts(&self.accepted) {
            let closed = implication_closure(&self.accepted, &pod.positives);
            let implication = self
                .accepted
                .iter()
                .find(|imp| imp.premise.is_subset(&closed) && imp.conclusion.intersects(&pod.negatives))
                .map(|imp| {
                    Question {
                        premise: imp.premise.clone(),
                        conclusion: imp.conclusion.clone(),
                    }
                    .render(self.pctx.attributes())
                });
            return Err(PartialError::ContradictsAccepted {
                id: pod.id,
                implication,
            });
        }
        let mut next = self.clone();
        next.pctx.add_pod(pod)?;
        Ok(next.settled())
    }

    /// Accept an implication that was not necessarily asked (replayed or
    /// background knowledge). Enumeration restarts from the first premise.
    pub fn add_implication(&self, imp: Implication) -> Result<Self, PartialError> {
        if self.pctx.refutes(&imp) {
            return Err(PartialError::RefutedImplication(imp));
        }
        let mut next = self.clone();
        next.accepted.push(imp);
        next.cursor = Some(next.close(&AttributeSet::empty(next.pctx.universe())));
        Ok(next.settled())
    }

    /// Continue under a different attribute order, starting over from the
    /// first premise with everything learned so far retained.
    pub fn with_order(&self, order: AttributeOrder) -> Result<Self, PartialError> {
        Self::with_background(self.pctx.clone(), order, self.accepted.clone())
    }

    /// Replace the partial context by one carrying at least as much
    /// information (e.g. after re-deriving pods from a knowledge base).
    pub fn with_context(&self, pctx: PartialContext) -> Result<Self, PartialError> {
        if !pctx.refines(&self.pctx) {
            return Err(PartialError::Input(
                "replacement context does not refine the current one".into(),
            ));
        }
        if let Some(imp) = self.accepted.iter().find(|imp| pctx.refutes(imp)) {
            return Err(PartialError::RefutedImplication(imp.clone()));
        }
        let mut next = self.clone();
        next.pctx = pctx;
        Ok(next.settled())
    }
}

/// Check that `pod` refutes `question`, naming what is missing otherwise.
pub fn validate_refutation(
    pctx: &PartialContext,
    question: &Question,
    pod: &PartialObjectDescription,
) -> Result<(), PartialError> {
    if pod.universe() != pctx.universe() {
        return Err(PartialError::Input(format!(
            "counterexample {} spans {} attributes",
            pod.id,
            pod.universe()
        )));
    }
    if pod.refutes(&question.implication()) {
        return Ok(());
    }
    let missing_premise = pctx.attribute_names(&question.premise.difference(&pod.positives));
    let unrefuted_conclusion = if question.conclusion.intersects(&pod.negatives) {
        Vec::new()
    } else {
        pctx.attribute_names(&question.conclusion)
    };
    Err(PartialError::NotRefuting {
        id: pod.id.clone(),
        missing_premise,
        unrefuted_conclusion,
    })
}

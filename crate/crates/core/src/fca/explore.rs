//! Classical attribute exploration and the canonical (stem) base.

use super::closure::lectic_successor;
use super::{implication_closure, AttributeOrder, AttributeSet, FcaError, FormalContext, Implication};

/// Consecutive invalid counterexamples tolerated before exploration gives up.
pub const MAX_INVALID_ANSWERS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpertAnswer {
    Accept,
    /// A new object whose row refutes the question.
    Reject { object: String, row: AttributeSet },
}

/// Someone (or something) that can judge implications over the attributes of
/// a context.
pub trait Expert {
    fn ask(&mut self, context: &FormalContext, question: &Implication) -> ExpertAnswer;
}

impl<F> Expert for F
where
    F: FnMut(&FormalContext, &Implication) -> ExpertAnswer,
{
    fn ask(&mut self, context: &FormalContext, question: &Implication) -> ExpertAnswer {
        self(context, question)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ExploreOptions {
    /// Lectic order; identity when `None`.
    pub order: Option<AttributeOrder>,
    /// Implications known to hold in advance. They are never asked and are
    /// not part of the returned implications.
    pub background: Vec<Implication>,
}

#[derive(Clone, Debug)]
pub struct Exploration {
    pub implications: Vec<Implication>,
    pub context: FormalContext,
    pub questions_asked: usize,
}

pub fn explore(ctx: FormalContext, expert: &mut impl Expert) -> Result<Exploration, FcaError> {
    explore_with(ctx, expert, ExploreOptions::default())
}

pub fn explore_with(
    mut ctx: FormalContext,
    expert: &mut impl Expert,
    options: ExploreOptions,
) -> Result<Exploration, FcaError> {
    let n = ctx.universe();
    let order = options.order.unwrap_or_else(|| AttributeOrder::identity(n));
    if order.universe() != n {
        return Err(FcaError::InvalidOrder(format!(
            "order spans {} attributes, context has {n}",
            order.universe()
        )));
    }
    let mut known = options.background;
    let background_len = known.len();
    let mut asked = 0;

    let mut premise = Some(implication_closure(&known, &AttributeSet::empty(n)));
    while let Some(p) = premise {
        let mut invalid = 0;
        loop {
            let closure = ctx.attribute_closure(&p);
            if closure == p {
                break;
            }
            let question = Implication::new(p.clone(), closure.difference(&p));
            asked += 1;
            match expert.ask(&ctx, &question) {
                ExpertAnswer::Accept => {
                    known.push(question);
                    break;
                }
                ExpertAnswer::Reject { object, row } => {
                    match validate_counterexample(&ctx, &known, &question, &object, &row) {
                        Ok(()) => {
                            ctx.add_object(object, row)?;
                            invalid = 0;
                        }
                        Err(reason) => {
                            log::warn!("counterexample {object} rejected: {reason}");
                            invalid += 1;
                            if invalid >= MAX_INVALID_ANSWERS {
                                return Err(FcaError::Expert(format!(
                                    "{invalid} invalid counterexamples in a row; last: {reason}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        premise = lectic_successor(|s| implication_closure(&known, s), &p, &order);
    }

    Ok(Exploration {
        implications: known.split_off(background_len),
        context: ctx,
        questions_asked: asked,
    })
}

fn validate_counterexample(
    ctx: &FormalContext,
    known: &[Implication],
    question: &Implication,
    object: &str,
    row: &AttributeSet,
) -> Result<(), String> {
    if row.universe() != ctx.universe() {
        return Err(format!("row spans {} attributes", row.universe()));
    }
    if ctx.object_index(object).is_some() {
        return Err(format!("object name {object} already used"));
    }
    if question.respected_by(row) {
        return Err("row does not refute the question".into());
    }
    if let Some(imp) = known.iter().find(|imp| !imp.respected_by(row)) {
        return Err(format!("row violates accepted implication {imp:?}"));
    }
    Ok(())
}

/// The Duquenne–Guigues (stem) base of `ctx`, with premises in lectic order
/// under `order` and conclusions `P'' \ P`.
pub fn stem_base_with_order(ctx: &FormalContext, order: &AttributeOrder) -> Vec<Implication> {
    let n = ctx.universe();
    let mut base: Vec<Implication> = Vec::new();
    let mut premise = Some(AttributeSet::empty(n));
    while let Some(p) = premise {
        let closure = ctx.attribute_closure(&p);
        if closure != p {
            base.push(Implication::new(p.clone(), closure.difference(&p)));
        }
        premise = lectic_successor(|s| implication_closure(&base, s), &p, order);
    }
    base
}

pub fn stem_base(ctx: &FormalContext) -> Vec<Implication> {
    stem_base_with_order(ctx, &AttributeOrder::identity(ctx.universe()))
}

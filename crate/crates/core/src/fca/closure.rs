//! Lectic enumeration of closed sets (next closure).

use super::{implication_closure, AttributeOrder, AttributeSet, FcaError, FormalContext, Implication};

/// A closure operator over a finite attribute universe.
pub trait ClosureOperator {
    fn universe(&self) -> usize;
    fn close(&self, set: &AttributeSet) -> AttributeSet;
}

impl ClosureOperator for FormalContext {
    fn universe(&self) -> usize {
        FormalContext::universe(self)
    }

    fn close(&self, set: &AttributeSet) -> AttributeSet {
        self.attribute_closure(set)
    }
}

/// Closure under a list of implications.
pub struct ImplicationClosure<'a> {
    pub universe: usize,
    pub implications: &'a [Implication],
}

impl ClosureOperator for ImplicationClosure<'_> {
    fn universe(&self) -> usize {
        self.universe
    }

    fn close(&self, set: &AttributeSet) -> AttributeSet {
        implication_closure(self.implications, set)
    }
}

/// Adapter turning any function into a closure operator.
pub struct FnClosure<F> {
    pub universe: usize,
    pub close: F,
}

impl<F: Fn(&AttributeSet) -> AttributeSet> ClosureOperator for FnClosure<F> {
    fn universe(&self) -> usize {
        self.universe
    }

    fn close(&self, set: &AttributeSet) -> AttributeSet {
        (self.close)(set)
    }
}

/// Lectically next set closed under `close`, after `current`.
///
/// `current` need not itself be closed; the result is the smallest closed set
/// lectically greater than it. No contract checks are made.
pub(crate) fn lectic_successor(
    close: impl Fn(&AttributeSet) -> AttributeSet,
    current: &AttributeSet,
    order: &AttributeOrder,
) -> Option<AttributeSet> {
    let n = order.universe();
    let mut prefix = current.clone();
    for rank in (0..n).rev() {
        let attr = order.attribute_at(rank);
        if prefix.remove(attr) {
            continue;
        }
        let mut probe = prefix.clone();
        probe.insert(attr);
        let candidate = close(&probe);
        if adds_nothing_below(&candidate, &prefix, rank, order) {
            return Some(candidate);
        }
    }
    None
}

fn adds_nothing_below(
    candidate: &AttributeSet,
    prefix: &AttributeSet,
    rank: usize,
    order: &AttributeOrder,
) -> bool {
    candidate
        .difference(prefix)
        .iter()
        .all(|a| order.rank(a) >= rank)
}

/// Next closed set in lectic order.
///
/// `current = None` is the start marker and yields the closure of the empty
/// set. Returns `Ok(None)` after the last closed set (the full universe).
/// The operator is probed for extensivity, idempotency and monotonicity on the
/// sets it is evaluated on; a failed probe is a [`FcaError::ContractViolation`].
pub fn next_closed<C: ClosureOperator + ?Sized>(
    op: &C,
    current: Option<&AttributeSet>,
    order: &AttributeOrder,
) -> Result<Option<AttributeSet>, FcaError> {
    let n = op.universe();
    if order.universe() != n {
        return Err(FcaError::InvalidOrder(format!(
            "order spans {} attributes, closure operator {n}",
            order.universe()
        )));
    }
    let checked_close = |set: &AttributeSet| -> Result<AttributeSet, FcaError> {
        let closed = op.close(set);
        if !set.is_subset(&closed) {
            return Err(FcaError::ContractViolation(format!(
                "closure of {set:?} is {closed:?}, not extensive"
            )));
        }
        let again = op.close(&closed);
        if again != closed {
            return Err(FcaError::ContractViolation(format!(
                "closure not idempotent on {closed:?} (got {again:?})"
            )));
        }
        Ok(closed)
    };

    let Some(current) = current else {
        return checked_close(&AttributeSet::empty(n)).map(Some);
    };
    if current.universe() != n {
        return Err(FcaError::Input("current set over wrong universe".into()));
    }
    if checked_close(current)? != *current {
        return Err(FcaError::NotClosed(format!("{current:?}")));
    }

    let mut prefix = current.clone();
    for rank in (0..n).rev() {
        let attr = order.attribute_at(rank);
        if prefix.remove(attr) {
            continue;
        }
        let mut probe = prefix.clone();
        probe.insert(attr);
        let candidate = checked_close(&probe)?;
        if !op.close(&prefix).is_subset(&candidate) {
            return Err(FcaError::ContractViolation(format!(
                "closure not monotone between {prefix:?} and {probe:?}"
            )));
        }
        if adds_nothing_below(&candidate, &prefix, rank, order) {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// All closed sets of `op` in lectic order.
pub fn closed_sets<C: ClosureOperator + ?Sized>(
    op: &C,
    order: &AttributeOrder,
) -> Result<Vec<AttributeSet>, FcaError> {
    let mut out = Vec::new();
    let mut current = next_closed(op, None, order)?;
    while let Some(set) = current {
        current = next_closed(op, Some(&set), order)?;
        out.push(set);
    }
    Ok(out)
}

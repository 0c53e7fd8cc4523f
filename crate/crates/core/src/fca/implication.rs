use std::collections::VecDeque;

use super::AttributeSet;

/// An attribute implication `premise -> conclusion`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Implication {
    pub premise: AttributeSet,
    pub conclusion: AttributeSet,
}

impl Implication {
    pub fn new(premise: AttributeSet, conclusion: AttributeSet) -> Self {
        assert_eq!(premise.universe(), conclusion.universe());
        Self { premise, conclusion }
    }

    pub fn universe(&self) -> usize {
        self.premise.universe()
    }

    /// True when `set` satisfies the implication (premise not contained, or
    /// conclusion contained).
    pub fn respected_by(&self, set: &AttributeSet) -> bool {
        !self.premise.is_subset(set) || self.conclusion.is_subset(set)
    }

    pub fn is_trivial(&self) -> bool {
        self.conclusion.is_subset(&self.premise)
    }
}

/// Least superset of `seed` respecting every implication.
///
/// Forward chaining with per-implication counters of unsatisfied premise
/// attributes, so each implication fires at most once.
pub fn implication_closure(implications: &[Implication], seed: &AttributeSet) -> AttributeSet {
    let n = seed.universe();
    let mut closed = seed.clone();
    let mut missing: Vec<usize> = Vec::with_capacity(implications.len());
    let mut watchers: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut ready = VecDeque::new();

    for (k, imp) in implications.iter().enumerate() {
        debug_assert_eq!(imp.universe(), n);
        let mut count = 0;
        for a in imp.premise.iter() {
            if !closed.contains(a) {
                count += 1;
                watchers[a].push(k);
            }
        }
        missing.push(count);
        if count == 0 {
            ready.push_back(k);
        }
    }

    while let Some(k) = ready.pop_front() {
        for a in implications[k].conclusion.iter() {
            if closed.insert(a) {
                for &w in &watchers[a] {
                    missing[w] -= 1;
                    if missing[w] == 0 {
                        ready.push_back(w);
                    }
                }
            }
        }
    }
    closed
}

/// Whether `imp` follows from `implications`.
pub fn follows(implications: &[Implication], imp: &Implication) -> bool {
    imp.conclusion
        .is_subset(&implication_closure(implications, &imp.premise))
}

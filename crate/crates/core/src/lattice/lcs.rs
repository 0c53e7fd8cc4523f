//! Least common subsumers in ALE (TBox-free) and good common subsumers
//! w.r.t. a background TBox, both computed on normalized description trees.

use std::collections::{BTreeMap, BTreeSet};

use crate::dl::Concept;
use crate::reasoner::Reasoner;

use super::{ConjunctionHierarchy, LatticeError, Literal, LiteralConjunction};

/// Normalized ALE description tree: value restrictions merged per role and
/// propagated into the existential fillers, inconsistency collapsed to
/// `bottom`, existentials subsumed by a sibling removed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct Tree {
    bottom: bool,
    pos: BTreeSet<String>,
    neg: BTreeSet<String>,
    exists: Vec<(String, Tree)>,
    forall: BTreeMap<String, Tree>,
}

#[derive(Default)]
struct Raw {
    bottom: bool,
    pos: BTreeSet<String>,
    neg: BTreeSet<String>,
    exists: Vec<(String, Concept)>,
    forall: BTreeMap<String, Vec<Concept>>,
}

impl Tree {
    fn bottom() -> Self {
        Self {
            bottom: true,
            ..Self::default()
        }
    }

    fn is_top(&self) -> bool {
        !self.bottom
            && self.pos.is_empty()
            && self.neg.is_empty()
            && self.exists.is_empty()
            && self.forall.is_empty()
    }

    fn from_concept(c: &Concept) -> Result<Self, LatticeError> {
        let mut raw = Raw::default();
        collect(c, c, &mut raw)?;
        Self::normalize(raw)
    }

    fn normalize(raw: Raw) -> Result<Self, LatticeError> {
        if raw.bottom || raw.pos.intersection(&raw.neg).next().is_some() {
            return Ok(Self::bottom());
        }
        let mut forall = BTreeMap::new();
        for (r, fillers) in &raw.forall {
            let t = Self::from_concept(&Concept::and(fillers.iter().cloned()))?;
            if !t.is_top() {
                forall.insert(r.clone(), t);
            }
        }
        let mut exists = Vec::new();
        for (r, filler) in &raw.exists {
            let mut parts = vec![filler.clone()];
            parts.extend(raw.forall.get(r).into_iter().flatten().cloned());
            let t = Self::from_concept(&Concept::and(parts))?;
            if t.bottom {
                return Ok(Self::bottom());
            }
            exists.push((r.clone(), t));
        }
        let mut t = Self {
            bottom: false,
            pos: raw.pos,
            neg: raw.neg,
            exists,
            forall,
        };
        t.prune_exists(|a, b| Ok(a.subsumed_by(b)))?;
        Ok(t)
    }

    /// Drop `∃r.E` when a sibling `∃r.F` has `F ⊑ E`; among equivalent
    /// siblings the first one is kept. Survivors are sorted.
    fn prune_exists(
        &mut self,
        mut sub: impl FnMut(&Tree, &Tree) -> Result<bool, LatticeError>,
    ) -> Result<(), LatticeError> {
        let n = self.exists.len();
        let mut keep = vec![true; n];
        for i in 0..n {
            for j in 0..n {
                if i == j || !keep[j] || self.exists[i].0 != self.exists[j].0 {
                    continue;
                }
                let (ei, ej) = (&self.exists[i].1, &self.exists[j].1);
                if sub(ej, ei)? && (j < i || !sub(ei, ej)?) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let mut it = keep.into_iter();
        self.exists.retain(|_| it.next().unwrap());
        self.exists
            .sort_by(|a, b| (&a.0, a.1.to_concept()).cmp(&(&b.0, b.1.to_concept())));
        Ok(())
    }

    /// Structural subsumption `self ⊑ other` on normalized trees.
    fn subsumed_by(&self, other: &Tree) -> bool {
        if self.bottom {
            return true;
        }
        if other.bottom {
            return false;
        }
        other.pos.is_subset(&self.pos)
            && other.neg.is_subset(&self.neg)
            && other
                .forall
                .iter()
                .all(|(r, f)| self.forall.get(r).is_some_and(|g| g.subsumed_by(f)))
            && other.exists.iter().all(|(r, e)| {
                self.exists
                    .iter()
                    .any(|(s, d)| s == r && d.subsumed_by(e))
            })
    }

    fn to_concept(&self) -> Concept {
        if self.bottom {
            return Concept::Bottom;
        }
        let mut parts: Vec<Concept> = Vec::new();
        parts.extend(self.pos.iter().map(|n| Concept::atomic(n.clone())));
        parts.extend(self.neg.iter().map(|n| Concept::not(Concept::atomic(n.clone()))));
        parts.extend(
            self.exists
                .iter()
                .map(|(r, t)| Concept::exists(r.clone(), t.to_concept())),
        );
        parts.extend(
            self.forall
                .iter()
                .map(|(r, t)| Concept::forall(r.clone(), t.to_concept())),
        );
        Concept::and(parts)
    }
}

fn collect(c: &Concept, whole: &Concept, raw: &mut Raw) -> Result<(), LatticeError> {
    match c {
        Concept::Top => {}
        Concept::Bottom => raw.bottom = true,
        Concept::Atomic(n) => {
            raw.pos.insert(n.clone());
        }
        Concept::Not(inner) => match &**inner {
            Concept::Atomic(n) => {
                raw.neg.insert(n.clone());
            }
            _ => return Err(LatticeError::NotAle(whole.to_string())),
        },
        Concept::And(cs) => {
            for d in cs {
                collect(d, whole, raw)?;
            }
        }
        Concept::Or(_) => return Err(LatticeError::NotAle(whole.to_string())),
        Concept::Exists(r, d) => raw.exists.push((r.clone(), (**d).clone())),
        Concept::Forall(r, d) => raw.forall.entry(r.clone()).or_default().push((**d).clone()),
    }
    Ok(())
}

fn lcs_tree(a: &Tree, b: &Tree) -> Tree {
    if a.bottom {
        return b.clone();
    }
    if b.bottom {
        return a.clone();
    }
    let mut forall = BTreeMap::new();
    for (r, fa) in &a.forall {
        if let Some(fb) = b.forall.get(r) {
            let t = lcs_tree(fa, fb);
            if !t.is_top() {
                forall.insert(r.clone(), t);
            }
        }
    }
    let mut exists = Vec::new();
    for (r, ea) in &a.exists {
        for (s, eb) in &b.exists {
            if r == s {
                exists.push((r.clone(), lcs_tree(ea, eb)));
            }
        }
    }
    Tree {
        bottom: false,
        pos: a.pos.intersection(&b.pos).cloned().collect(),
        neg: a.neg.intersection(&b.neg).cloned().collect(),
        exists,
        forall,
    }
}

/// Least common subsumer of two ALE concepts, treating every name as
/// primitive.
pub fn lcs_ale(c: &Concept, d: &Concept) -> Result<Concept, LatticeError> {
    let t = lcs_tree(&Tree::from_concept(c)?, &Tree::from_concept(d)?);
    // renormalize to drop redundant existentials of the product
    Ok(Tree::from_concept(&t.to_concept())?.to_concept())
}

/// A common subsumer of `c` and `d` w.r.t. the reasoner's TBox that is at
/// least as specific as [`lcs_ale`]: at every node the literal parts are
/// replaced by the least literal conjunction (per `h`) subsuming both, and
/// unsatisfiable subtrees give way to the other side. Redundant literals and
/// existentials are pruned at the end.
pub fn gcs(
    reasoner: &Reasoner,
    h: &ConjunctionHierarchy,
    c: &Concept,
    d: &Concept,
) -> Result<Concept, LatticeError> {
    let a = Tree::from_concept(c)?;
    let b = Tree::from_concept(d)?;
    let mut t = gcs_tree(reasoner, h, &a, &b)?;
    prune_tree(reasoner, h, &mut t)?;
    Ok(t.to_concept())
}

fn split_literals(h: &ConjunctionHierarchy, t: &Tree) -> (LiteralConjunction, BTreeSet<Literal>) {
    let known: BTreeSet<&str> = h.names().iter().map(String::as_str).collect();
    let mut inside = Vec::new();
    let mut outside = BTreeSet::new();
    let lits = t
        .pos
        .iter()
        .map(|n| Literal::positive(n.clone()))
        .chain(t.neg.iter().map(|n| Literal::negative(n.clone())));
    for l in lits {
        if known.contains(l.name.as_str()) {
            inside.push(l);
        } else {
            outside.insert(l);
        }
    }
    (LiteralConjunction::from_literals(inside), outside)
}

fn set_literals(t: &mut Tree, lits: impl IntoIterator<Item = Literal>) {
    t.pos.clear();
    t.neg.clear();
    for l in lits {
        if l.positive {
            t.pos.insert(l.name);
        } else {
            t.neg.insert(l.name);
        }
    }
}

fn gcs_tree(reasoner: &Reasoner, h: &ConjunctionHierarchy, a: &Tree, b: &Tree) -> Result<Tree, LatticeError> {
    if a.bottom || !reasoner.satisfiable(&a.to_concept())? {
        return Ok(b.clone());
    }
    if b.bottom || !reasoner.satisfiable(&b.to_concept())? {
        return Ok(a.clone());
    }
    let (ha, oa) = split_literals(h, a);
    let (hb, ob) = split_literals(h, b);
    let common = h.least_common_conjunction(&ha, &hb)?;
    let mut forall = BTreeMap::new();
    for (r, fa) in &a.forall {
        if let Some(fb) = b.forall.get(r) {
            let t = gcs_tree(reasoner, h, fa, fb)?;
            if !t.is_top() {
                forall.insert(r.clone(), t);
            }
        }
    }
    let mut exists = Vec::new();
    for (r, ea) in &a.exists {
        for (s, eb) in &b.exists {
            if r == s {
                exists.push((r.clone(), gcs_tree(reasoner, h, ea, eb)?));
            }
        }
    }
    let mut t = Tree {
        exists,
        forall,
        ..Tree::default()
    };
    set_literals(
        &mut t,
        common.literals().into_iter().chain(oa.intersection(&ob).cloned()),
    );
    Ok(t)
}

fn prune_tree(reasoner: &Reasoner, h: &ConjunctionHierarchy, t: &mut Tree) -> Result<(), LatticeError> {
    if t.bottom {
        return Ok(());
    }
    for (_, e) in t.exists.iter_mut() {
        prune_tree(reasoner, h, e)?;
    }
    for f in t.forall.values_mut() {
        prune_tree(reasoner, h, f)?;
    }
    let (inside, outside) = split_literals(h, t);
    let inside = h.prune(&inside)?;
    set_literals(t, inside.literals().into_iter().chain(outside));
    t.prune_exists(|x, y| Ok(reasoner.subsumes(&x.to_concept(), &y.to_concept())?))
}

use std::cell::RefCell;
use std::fmt;

use crate::dl::{Concept, Interpretation, TBox};
use crate::fca::{
    closed_sets, ensure_unique, explore_with, implication_closure, AttributeOrder, AttributeSet,
    ExpertAnswer, ExploreOptions, FormalContext, Implication, ImplicationClosure,
};
use crate::reasoner::Reasoner;

use super::{LatticeError, LiteralConjunction};

/// A concept name or its negation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub name: String,
    pub positive: bool,
}

impl Literal {
    pub fn positive(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            positive: true,
        }
    }

    pub fn negative(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            positive: false,
        }
    }

    pub fn to_concept(&self) -> Concept {
        let a = Concept::atomic(self.name.clone());
        if self.positive {
            a
        } else {
            Concept::not(a)
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            f.write_str(&self.name)
        } else {
            write!(f, "not {}", self.name)
        }
    }
}

/// Subsumption between conjunctions of literals over a fixed set of names,
/// computed once by attribute exploration and then decided without the
/// reasoner.
///
/// Attribute `2k` is the name `names[k]`, attribute `2k + 1` its negation.
#[derive(Clone, Debug)]
pub struct ConjunctionHierarchy {
    names: Vec<String>,
    background: Vec<Implication>,
    base: Vec<Implication>,
    context: FormalContext,
    questions_asked: usize,
}

/// Explore the literal conjunctions over `names` w.r.t. `tbox`.
pub fn build_hierarchy(tbox: &TBox, names: &[String]) -> Result<ConjunctionHierarchy, LatticeError> {
    ConjunctionHierarchy::build(&Reasoner::new(tbox.clone())?, names)
}

/// Closure of `c` under the hierarchy: `c` together with every literal it
/// entails, or `Bottom`.
pub fn min_subsuming_conjunction(
    h: &ConjunctionHierarchy,
    c: &LiteralConjunction,
) -> Result<LiteralConjunction, LatticeError> {
    h.close(c)
}

impl ConjunctionHierarchy {
    pub fn build(reasoner: &Reasoner, names: &[String]) -> Result<Self, LatticeError> {
        ensure_unique("concept name", names)?;
        let n = 2 * names.len();
        let attributes: Vec<String> = names
            .iter()
            .flat_map(|a| [Literal::positive(a.clone()), Literal::negative(a.clone())])
            .map(|l| l.to_string())
            .collect();
        let background: Vec<Implication> = (0..names.len())
            .map(|k| Implication::new(AttributeSet::from_indices(n, [2 * k, 2 * k + 1]), AttributeSet::full(n)))
            .collect();

        let failure: RefCell<Option<LatticeError>> = RefCell::new(None);
        let mut witnesses = 0usize;
        let mut expert = |_: &FormalContext, q: &Implication| -> ExpertAnswer {
            if failure.borrow().is_some() {
                return ExpertAnswer::Accept;
            }
            let lhs = literal_concept(names, &q.premise);
            let rhs = literal_concept(names, &q.conclusion);
            match reasoner.non_subsumption_witness(&lhs, &rhs) {
                Ok(None) => ExpertAnswer::Accept,
                Ok(Some(w)) => {
                    witnesses += 1;
                    ExpertAnswer::Reject {
                        object: format!("w{witnesses}"),
                        row: literal_row(names, &w.model, w.element),
                    }
                }
                Err(e) => {
                    // the result is discarded; accepting just ends the run
                    *failure.borrow_mut() = Some(e.into());
                    ExpertAnswer::Accept
                }
            }
        };
        let options = ExploreOptions {
            order: None,
            background: background.clone(),
        };
        let result = explore_with(FormalContext::new(attributes)?, &mut expert, options);
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        let exploration = result?;
        Ok(Self {
            names: names.to_vec(),
            background,
            base: exploration.implications,
            context: exploration.context,
            questions_asked: exploration.questions_asked,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Literal attribute names: `A`, `not A`, `B`, `not B`, ...
    pub fn attributes(&self) -> &[String] {
        self.context.attributes()
    }

    /// Accepted implications (without the `{A, not A} -> ⊥` background).
    pub fn base(&self) -> &[Implication] {
        &self.base
    }

    /// Counterexample rows collected during exploration.
    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn questions_asked(&self) -> usize {
        self.questions_asked
    }

    fn all_implications(&self) -> Vec<Implication> {
        self.background.iter().chain(&self.base).cloned().collect()
    }

    fn attribute_of(&self, l: &Literal) -> Result<usize, LatticeError> {
        let k = self
            .names
            .iter()
            .position(|n| *n == l.name)
            .ok_or_else(|| LatticeError::UnknownName(l.name.clone()))?;
        Ok(2 * k + usize::from(!l.positive))
    }

    fn to_set(&self, c: &LiteralConjunction) -> Result<Option<AttributeSet>, LatticeError> {
        if c.is_bottom() {
            return Ok(None);
        }
        let mut set = AttributeSet::empty(2 * self.names.len());
        for l in c.literals() {
            set.insert(self.attribute_of(&l)?);
        }
        Ok(Some(set))
    }

    fn from_set(&self, set: &AttributeSet) -> LiteralConjunction {
        LiteralConjunction::from_literals(set.iter().map(|i| self.literal(i)))
    }

    fn literal(&self, i: usize) -> Literal {
        let name = self.names[i / 2].clone();
        if i.is_multiple_of(2) {
            Literal::positive(name)
        } else {
            Literal::negative(name)
        }
    }

    /// Closure of a literal set; `Bottom` if it is unsatisfiable.
    pub fn close(&self, c: &LiteralConjunction) -> Result<LiteralConjunction, LatticeError> {
        match self.to_set(c)? {
            None => Ok(LiteralConjunction::Bottom),
            Some(set) => Ok(self.from_set(&implication_closure(&self.all_implications(), &set))),
        }
    }

    /// Whether `c ⊑_T d` for literal conjunctions.
    pub fn subsumes(&self, c: &LiteralConjunction, d: &LiteralConjunction) -> Result<bool, LatticeError> {
        let closed = self.close(c)?;
        if closed.is_bottom() {
            return Ok(true);
        }
        let Some(closed) = self.to_set(&closed)? else {
            return Ok(true);
        };
        Ok(match self.to_set(d)? {
            None => false,
            Some(d) => d.is_subset(&closed),
        })
    }

    /// The smallest literal conjunction subsuming both `a` and `b`.
    pub fn least_common_conjunction(
        &self,
        a: &LiteralConjunction,
        b: &LiteralConjunction,
    ) -> Result<LiteralConjunction, LatticeError> {
        let ca = self.close(a)?;
        let cb = self.close(b)?;
        match (self.to_set(&ca)?, self.to_set(&cb)?) {
            (None, _) => Ok(cb),
            (_, None) => Ok(ca),
            (Some(x), Some(y)) => Ok(self.from_set(&x.intersection(&y))),
        }
    }

    /// Drop literals entailed by the remaining ones, in literal order.
    pub fn prune(&self, c: &LiteralConjunction) -> Result<LiteralConjunction, LatticeError> {
        let Some(mut set) = self.to_set(c)? else {
            return Ok(LiteralConjunction::Bottom);
        };
        let imps = self.all_implications();
        for i in set.clone().iter() {
            let mut rest = set.clone();
            rest.remove(i);
            if implication_closure(&imps, &rest).contains(i) {
                set = rest;
            }
        }
        Ok(self.from_set(&set))
    }

    fn render(&self, set: &AttributeSet) -> Concept {
        self.from_set(set).to_concept()
    }

    /// The base as ontology `gci` lines.
    pub fn to_gci_text(&self) -> String {
        let mut out = String::new();
        for imp in &self.base {
            let rhs = if self.from_set(&imp.premise.union(&imp.conclusion)).is_bottom() {
                Concept::Bottom
            } else {
                self.render(&imp.conclusion)
            };
            out.push_str(&format!("gci {} => {}\n", self.render(&imp.premise), rhs));
        }
        out
    }

    /// Hasse diagram of the closed literal sets in Graphviz dot; edges point
    /// from the more general to the more specific conjunction.
    pub fn to_dot(&self) -> Result<String, LatticeError> {
        let imps = self.all_implications();
        let op = ImplicationClosure {
            universe: 2 * self.names.len(),
            implications: &imps,
        };
        let sets = closed_sets(&op, &AttributeOrder::identity(op.universe))?;
        let mut out = String::from("digraph hierarchy {\n");
        for (i, s) in sets.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", self.render(s)));
        }
        for (i, a) in sets.iter().enumerate() {
            for (j, b) in sets.iter().enumerate() {
                if i == j || !a.is_subset(b) || a == b {
                    continue;
                }
                let covered = sets
                    .iter()
                    .any(|c| c != a && c != b && a.is_subset(c) && c.is_subset(b));
                if !covered {
                    out.push_str(&format!("  n{i} -> n{j};\n"));
                }
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

fn literal_concept(names: &[String], set: &AttributeSet) -> Concept {
    Concept::and(set.iter().map(|i| {
        let a = Concept::atomic(names[i / 2].clone());
        if i % 2 == 0 {
            a
        } else {
            Concept::not(a)
        }
    }))
}

/// The literals over `names` satisfied by element `e`.
fn literal_row(names: &[String], model: &Interpretation, e: usize) -> AttributeSet {
    AttributeSet::from_indices(
        2 * names.len(),
        names.iter().enumerate().map(|(k, a)| {
            let holds = model.concept(a).is_some_and(|ext| ext.contains(&e));
            2 * k + usize::from(!holds)
        }),
    )
}

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{ABox, Concept, DlError, TBox};

/// Extension of a concept: a set of domain element indices.
pub type Extension = BTreeSet<usize>;

/// A finite interpretation. Domain elements are named and addressed by index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Interpretation {
    domain: Vec<String>,
    concepts: BTreeMap<String, Extension>,
    roles: BTreeMap<String, BTreeSet<(usize, usize)>>,
    individuals: BTreeMap<String, usize>,
}

impl Interpretation {
    pub fn new(domain: Vec<String>) -> Result<Self, DlError> {
        let mut seen = BTreeSet::new();
        if let Some(dup) = domain.iter().find(|d| !seen.insert(d.as_str())) {
            return Err(DlError::Interpretation(format!("duplicate domain element {dup}")));
        }
        Ok(Self {
            domain,
            ..Self::default()
        })
    }

    /// Domain `e0, e1, ...` of the given size.
    pub fn with_size(n: usize) -> Self {
        Self {
            domain: (0..n).map(|i| format!("e{i}")).collect(),
            ..Self::default()
        }
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.domain.iter().position(|d| d == name)
    }

    pub fn element_name(&self, e: usize) -> &str {
        &self.domain[e]
    }

    /// Append a fresh element and return its index.
    pub fn add_element(&mut self, name: impl Into<String>) -> Result<usize, DlError> {
        let name = name.into();
        if self.element(&name).is_some() {
            return Err(DlError::Interpretation(format!("duplicate domain element {name}")));
        }
        self.domain.push(name);
        Ok(self.domain.len() - 1)
    }

    fn check(&self, e: usize) -> Result<(), DlError> {
        if e < self.domain.len() {
            Ok(())
        } else {
            Err(DlError::Interpretation(format!(
                "element {e} outside a domain of size {}",
                self.domain.len()
            )))
        }
    }

    /// Map `name` explicitly, possibly to the empty set.
    pub fn declare_concept(&mut self, name: impl Into<String>) {
        self.concepts.entry(name.into()).or_default();
    }

    pub fn add_to_concept(&mut self, name: impl Into<String>, e: usize) -> Result<(), DlError> {
        self.check(e)?;
        self.concepts.entry(name.into()).or_default().insert(e);
        Ok(())
    }

    pub fn add_edge(&mut self, role: impl Into<String>, a: usize, b: usize) -> Result<(), DlError> {
        self.check(a)?;
        self.check(b)?;
        self.roles.entry(role.into()).or_default().insert((a, b));
        Ok(())
    }

    pub fn map_individual(&mut self, individual: impl Into<String>, e: usize) -> Result<(), DlError> {
        self.check(e)?;
        self.individuals.insert(individual.into(), e);
        Ok(())
    }

    pub fn concept(&self, name: &str) -> Option<&Extension> {
        self.concepts.get(name)
    }

    pub fn role(&self, role: &str) -> Option<&BTreeSet<(usize, usize)>> {
        self.roles.get(role)
    }

    pub fn individual(&self, name: &str) -> Option<usize> {
        self.individuals.get(name).copied()
    }

    pub fn concepts(&self) -> &BTreeMap<String, Extension> {
        &self.concepts
    }

    pub fn roles(&self) -> &BTreeMap<String, BTreeSet<(usize, usize)>> {
        &self.roles
    }

    pub fn individuals(&self) -> &BTreeMap<String, usize> {
        &self.individuals
    }

    /// Concept names in `c` that this interpretation does not map.
    pub fn unmapped_names(&self, c: &Concept) -> Vec<String> {
        c.concept_names()
            .into_iter()
            .filter(|n| !self.concepts.contains_key(*n))
            .map(str::to_owned)
            .collect()
    }

    /// Extension of `c`. Unmapped concept names and roles denote the empty
    /// set; unmapped concept names are logged as a warning.
    pub fn eval(&self, c: &Concept) -> Extension {
        let unmapped = self.unmapped_names(c);
        if !unmapped.is_empty() {
            log::warn!("unmapped concept names treated as empty: {}", unmapped.join(", "));
        }
        self.eval_inner(c)
    }

    fn eval_inner(&self, c: &Concept) -> Extension {
        match c {
            Concept::Top => (0..self.domain.len()).collect(),
            Concept::Bottom => Extension::new(),
            Concept::Atomic(n) => self.concepts.get(n).cloned().unwrap_or_default(),
            Concept::Not(d) => {
                let inner = self.eval_inner(d);
                (0..self.domain.len()).filter(|e| !inner.contains(e)).collect()
            }
            Concept::And(cs) => {
                let mut it = cs.iter();
                let mut acc = it.next().map(|d| self.eval_inner(d)).unwrap_or_else(|| self.eval_inner(&Concept::Top));
                for d in it {
                    let next = self.eval_inner(d);
                    acc.retain(|e| next.contains(e));
                }
                acc
            }
            Concept::Or(cs) => cs.iter().flat_map(|d| self.eval_inner(d)).collect(),
            Concept::Exists(r, d) => {
                let filler = self.eval_inner(d);
                self.roles
                    .get(r)
                    .into_iter()
                    .flatten()
                    .filter(|(_, b)| filler.contains(b))
                    .map(|&(a, _)| a)
                    .collect()
            }
            Concept::Forall(r, d) => {
                let filler = self.eval_inner(d);
                let bad: Extension = self
                    .roles
                    .get(r)
                    .into_iter()
                    .flatten()
                    .filter(|(_, b)| !filler.contains(b))
                    .map(|&(a, _)| a)
                    .collect();
                (0..self.domain.len()).filter(|e| !bad.contains(e)).collect()
            }
        }
    }

    pub fn satisfies_concept(&self, c: &Concept, e: usize) -> bool {
        self.eval_inner(c).contains(&e)
    }

    /// Axioms of `tbox` that fail in this interpretation.
    pub fn tbox_violations(&self, tbox: &TBox) -> Vec<Violation> {
        let mut out = Vec::new();
        for (name, def) in tbox.definitions() {
            let lhs = self.eval_inner(&Concept::atomic(name.clone()));
            let rhs = self.eval_inner(def);
            if lhs != rhs {
                out.push(Violation::Definition {
                    name: name.clone(),
                    only_name: self.names(lhs.difference(&rhs)),
                    only_definition: self.names(rhs.difference(&lhs)),
                });
            }
        }
        for (index, gci) in tbox.gcis().iter().enumerate() {
            let sub = self.eval_inner(&gci.sub);
            let sup = self.eval_inner(&gci.sup);
            let witnesses = self.names(sub.difference(&sup));
            if !witnesses.is_empty() {
                out.push(Violation::Gci {
                    index,
                    sub: gci.sub.clone(),
                    sup: gci.sup.clone(),
                    witnesses,
                });
            }
        }
        out
    }

    /// Assertions of `abox` that fail in this interpretation, including
    /// individuals it does not map.
    pub fn abox_violations(&self, abox: &ABox) -> Vec<Violation> {
        let mut out = Vec::new();
        for ind in abox.individuals() {
            if !self.individuals.contains_key(&ind) {
                out.push(Violation::UnmappedIndividual(ind));
            }
        }
        for (c, a) in abox.concept_assertions() {
            if let Some(e) = self.individual(a) {
                if !self.satisfies_concept(c, e) {
                    out.push(Violation::ConceptAssertion {
                        concept: c.clone(),
                        individual: a.clone(),
                    });
                }
            }
        }
        for (r, a, b) in abox.role_assertions() {
            if let (Some(x), Some(y)) = (self.individual(a), self.individual(b)) {
                if !self.roles.get(r).is_some_and(|edges| edges.contains(&(x, y))) {
                    out.push(Violation::RoleAssertion {
                        role: r.clone(),
                        a: a.clone(),
                        b: b.clone(),
                    });
                }
            }
        }
        out
    }

    pub fn models_tbox(&self, tbox: &TBox) -> bool {
        self.tbox_violations(tbox).is_empty()
    }

    pub fn models_abox(&self, abox: &ABox) -> bool {
        self.abox_violations(abox).is_empty()
    }

    fn names<'a>(&self, it: impl Iterator<Item = &'a usize>) -> Vec<String> {
        it.map(|&e| self.domain[e].clone()).collect()
    }
}

/// An axiom or assertion that an interpretation fails to satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Definition {
        name: String,
        only_name: Vec<String>,
        only_definition: Vec<String>,
    },
    Gci {
        index: usize,
        sub: Concept,
        sup: Concept,
        witnesses: Vec<String>,
    },
    ConceptAssertion {
        concept: Concept,
        individual: String,
    },
    RoleAssertion {
        role: String,
        a: String,
        b: String,
    },
    UnmappedIndividual(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Definition {
                name,
                only_name,
                only_definition,
            } => write!(
                f,
                "definition of {name} fails: {only_name:?} only in the name, {only_definition:?} only in the definition"
            ),
            Violation::Gci {
                sub, sup, witnesses, ..
            } => write!(f, "gci {sub} => {sup} fails for {witnesses:?}"),
            Violation::ConceptAssertion { concept, individual } => {
                write!(f, "assertion {concept} ({individual}) fails")
            }
            Violation::RoleAssertion { role, a, b } => write!(f, "assertion {role} ({a}, {b}) fails"),
            Violation::UnmappedIndividual(a) => write!(f, "individual {a} is not mapped"),
        }
    }
}

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Concept, DlError};

/// A general concept inclusion `sub ⊑ sup`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gci {
    pub sub: Concept,
    pub sup: Concept,
}

/// Acyclic concept definitions plus general concept inclusions.
///
/// Definitions keep insertion order so that the canonical writer is stable.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TBox {
    definitions: Vec<(String, Concept)>,
    index: HashMap<String, usize>,
    gcis: Vec<Gci>,
}

impl TBox {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add `name ≡ concept`. Cycles are only detected by [`TBox::check_acyclic`],
    /// since definitions may be added in any order.
    pub fn define(&mut self, name: impl Into<String>, concept: Concept) -> Result<(), DlError> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(DlError::DuplicateDefinition { name, line: None });
        }
        self.index.insert(name.clone(), self.definitions.len());
        self.definitions.push((name, concept));
        Ok(())
    }

    pub fn add_gci(&mut self, sub: Concept, sup: Concept) {
        self.gcis.push(Gci { sub, sup });
    }

    pub fn definitions(&self) -> &[(String, Concept)] {
        &self.definitions
    }

    pub fn definition(&self, name: &str) -> Option<&Concept> {
        self.index.get(name).map(|&i| &self.definitions[i].1)
    }

    pub fn is_defined(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn gcis(&self) -> &[Gci] {
        &self.gcis
    }

    pub fn is_empty(&self) -> bool {
        self.definitions.is_empty() && self.gcis.is_empty()
    }

    /// Fails with the first dependency cycle found, as a closed path
    /// `[A, B, ..., A]`.
    pub fn check_acyclic(&self) -> Result<(), DlError> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; self.definitions.len()];
        let mut path = Vec::new();
        for start in 0..self.definitions.len() {
            if let Some(cycle) = self.dfs(start, &mut state, &mut path) {
                return Err(DlError::Cycle(cycle));
            }
        }
        Ok(())
    }

    fn dfs(&self, i: usize, state: &mut [u8], path: &mut Vec<usize>) -> Option<Vec<String>> {
        match state[i] {
            2 => return None,
            1 => {
                let from = path.iter().position(|&j| j == i).unwrap();
                let mut cycle: Vec<String> =
                    path[from..].iter().map(|&j| self.definitions[j].0.clone()).collect();
                cycle.push(self.definitions[i].0.clone());
                return Some(cycle);
            }
            _ => {}
        }
        state[i] = 1;
        path.push(i);
        for dep in self.definitions[i].1.concept_names() {
            if let Some(&j) = self.index.get(dep) {
                if let Some(cycle) = self.dfs(j, state, path) {
                    return Some(cycle);
                }
            }
        }
        path.pop();
        state[i] = 2;
        None
    }

    /// Replace defined names by their definitions until only primitive names
    /// remain. Requires an acyclic TBox.
    pub fn unfold(&self, concept: &Concept) -> Concept {
        let mut memo = HashMap::new();
        self.unfold_memo(concept, &mut memo)
    }

    fn unfold_memo(&self, c: &Concept, memo: &mut HashMap<String, Concept>) -> Concept {
        match c {
            Concept::Top | Concept::Bottom => c.clone(),
            Concept::Atomic(name) => {
                if let Some(done) = memo.get(name) {
                    return done.clone();
                }
                match self.definition(name) {
                    Some(def) => {
                        let unfolded = self.unfold_memo(def, memo);
                        memo.insert(name.clone(), unfolded.clone());
                        unfolded
                    }
                    None => c.clone(),
                }
            }
            Concept::Not(d) => Concept::not(self.unfold_memo(d, memo)),
            Concept::And(cs) => Concept::and(cs.iter().map(|d| self.unfold_memo(d, memo))),
            Concept::Or(cs) => Concept::or(cs.iter().map(|d| self.unfold_memo(d, memo))),
            Concept::Exists(r, d) => Concept::exists(r.clone(), self.unfold_memo(d, memo)),
            Concept::Forall(r, d) => Concept::forall(r.clone(), self.unfold_memo(d, memo)),
        }
    }

    /// Names that occur in the TBox without being defined.
    pub fn primitive_names(&self) -> BTreeSet<String> {
        let mut names = BTreeSet::new();
        for (_, c) in &self.definitions {
            names.extend(c.concept_names().into_iter().map(str::to_owned));
        }
        for g in &self.gcis {
            names.extend(g.sub.concept_names().into_iter().map(str::to_owned));
            names.extend(g.sup.concept_names().into_iter().map(str::to_owned));
        }
        names.retain(|n| !self.is_defined(n));
        names
    }
}

/// Concept and role assertions about named individuals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ABox {
    concept_assertions: Vec<(Concept, String)>,
    role_assertions: Vec<(String, String, String)>,
}

impl ABox {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add `concept(individual)`; exact duplicates are ignored.
    pub fn assert_concept(&mut self, concept: Concept, individual: impl Into<String>) {
        let entry = (concept, individual.into());
        if !self.concept_assertions.contains(&entry) {
            self.concept_assertions.push(entry);
        }
    }

    /// Add `role(a, b)`; exact duplicates are ignored.
    pub fn assert_role(&mut self, role: impl Into<String>, a: impl Into<String>, b: impl Into<String>) {
        let entry = (role.into(), a.into(), b.into());
        if !self.role_assertions.contains(&entry) {
            self.role_assertions.push(entry);
        }
    }

    pub fn concept_assertions(&self) -> &[(Concept, String)] {
        &self.concept_assertions
    }

    pub fn role_assertions(&self) -> &[(String, String, String)] {
        &self.role_assertions
    }

    pub fn is_empty(&self) -> bool {
        self.concept_assertions.is_empty() && self.role_assertions.is_empty()
    }

    /// Individuals in order of first mention: concept assertions first, then
    /// role assertions.
    pub fn individuals(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mentioned = self
            .concept_assertions
            .iter()
            .map(|(_, a)| a)
            .chain(self.role_assertions.iter().flat_map(|(_, a, b)| [a, b]));
        for name in mentioned {
            if seen.insert(name.as_str()) {
                out.push(name.clone());
            }
        }
        out
    }

    pub fn has_individual(&self, name: &str) -> bool {
        self.concept_assertions.iter().any(|(_, a)| a == name)
            || self.role_assertions.iter().any(|(_, a, b)| a == name || b == name)
    }

    /// Concepts asserted for `individual`, in assertion order.
    pub fn concepts_of(&self, individual: &str) -> Vec<&Concept> {
        self.concept_assertions
            .iter()
            .filter(|(_, a)| a == individual)
            .map(|(c, _)| c)
            .collect()
    }
}

/// A TBox and an ABox.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    pub tbox: TBox,
    pub abox: ABox,
}

impl KnowledgeBase {
    pub fn new(tbox: TBox, abox: ABox) -> Self {
        Self { tbox, abox }
    }

    /// Every concept name and role name mentioned anywhere, sorted.
    pub fn signature(&self) -> (BTreeSet<String>, BTreeSet<String>) {
        let mut concepts = BTreeSet::new();
        let mut roles = BTreeSet::new();
        let mut add = |c: &Concept| {
            concepts.extend(c.concept_names().into_iter().map(str::to_owned));
            roles.extend(c.role_names().into_iter().map(str::to_owned));
        };
        for (name, c) in self.tbox.definitions() {
            add(&Concept::atomic(name.clone()));
            add(c);
        }
        for g in self.tbox.gcis() {
            add(&g.sub);
            add(&g.sup);
        }
        for (c, _) in self.abox.concept_assertions() {
            add(c);
        }
        for (r, _, _) in self.abox.role_assertions() {
            roles.insert(r.clone());
        }
        (concepts, roles)
    }

    /// Role successors per individual as recorded in the ABox.
    pub fn role_graph(&self) -> BTreeMap<&str, Vec<(&str, &str)>> {
        let mut out: BTreeMap<&str, Vec<(&str, &str)>> = BTreeMap::new();
        for (r, a, b) in self.abox.role_assertions() {
            out.entry(a.as_str()).or_default().push((r.as_str(), b.as_str()));
        }
        out
    }
}

//! Completion-graph tableau for ALC over NNF concepts.
//!
//! Concepts are interned; labels hold interned ids. Defined names are unfolded
//! lazily in both directions, GCIs are internalized into every node and, only
//! when present, subset blocking against ancestors guarantees termination.
//! Disjunctions are explored depth-first with semantic branching, after unit
//! propagation has resolved every disjunction with a single open disjunct.

use std::collections::{BTreeSet, HashMap};

use crate::dl::{ABox, Concept, Interpretation, TBox};

use super::ReasonerError;

type Id = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Top,
    Bottom,
    Atom(u32),
    NegAtom(u32),
    And(Vec<Id>),
    Or(Vec<Id>),
    Some(u32, Id),
    All(u32, Id),
}

#[derive(Clone, Default)]
struct Interner {
    nodes: Vec<Node>,
    ids: HashMap<Node, Id>,
    names: Vec<String>,
    name_ids: HashMap<String, u32>,
    roles: Vec<String>,
    role_ids: HashMap<String, u32>,
    negations: HashMap<Id, Id>,
}

impl Interner {
    fn node(&mut self, n: Node) -> Id {
        if let Some(&id) = self.ids.get(&n) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(n.clone());
        self.ids.insert(n, id);
        id
    }

    fn name(&mut self, s: &str) -> u32 {
        if let Some(&i) = self.name_ids.get(s) {
            return i;
        }
        let i = self.names.len() as u32;
        self.names.push(s.to_owned());
        self.name_ids.insert(s.to_owned(), i);
        i
    }

    fn role(&mut self, s: &str) -> u32 {
        if let Some(&i) = self.role_ids.get(s) {
            return i;
        }
        let i = self.roles.len() as u32;
        self.roles.push(s.to_owned());
        self.role_ids.insert(s.to_owned(), i);
        i
    }

    /// Intern the NNF of `c`.
    fn concept(&mut self, c: &Concept) -> Id {
        let c = c.nnf();
        self.nnf(&c)
    }

    fn nnf(&mut self, c: &Concept) -> Id {
        let n = match c {
            Concept::Top => Node::Top,
            Concept::Bottom => Node::Bottom,
            Concept::Atomic(a) => Node::Atom(self.name(a)),
            Concept::Not(inner) => match &**inner {
                Concept::Atomic(a) => Node::NegAtom(self.name(a)),
                other => return self.concept(&Concept::not(other.clone())),
            },
            Concept::And(cs) => Node::And(self.children(cs)),
            Concept::Or(cs) => Node::Or(self.children(cs)),
            Concept::Exists(r, d) => {
                let r = self.role(r);
                Node::Some(r, self.nnf(d))
            }
            Concept::Forall(r, d) => {
                let r = self.role(r);
                Node::All(r, self.nnf(d))
            }
        };
        self.node(n)
    }

    fn children(&mut self, cs: &[Concept]) -> Vec<Id> {
        let mut ids: Vec<Id> = cs.iter().map(|c| self.nnf(c)).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    fn neg(&mut self, id: Id) -> Id {
        if let Some(&n) = self.negations.get(&id) {
            return n;
        }
        let n = match self.nodes[id as usize].clone() {
            Node::Top => Node::Bottom,
            Node::Bottom => Node::Top,
            Node::Atom(a) => Node::NegAtom(a),
            Node::NegAtom(a) => Node::Atom(a),
            Node::And(cs) => Node::Or(self.neg_all(&cs)),
            Node::Or(cs) => Node::And(self.neg_all(&cs)),
            Node::Some(r, d) => Node::All(r, self.neg(d)),
            Node::All(r, d) => Node::Some(r, self.neg(d)),
        };
        let n = self.node(n);
        self.negations.insert(id, n);
        self.negations.insert(n, id);
        n
    }

    fn neg_all(&mut self, cs: &[Id]) -> Vec<Id> {
        let mut out: Vec<Id> = cs.iter().map(|&c| self.neg(c)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[derive(Clone, Debug)]
struct GNode {
    label: BTreeSet<Id>,
    parent: Option<usize>,
    individual: Option<String>,
    edges: Vec<(u32, usize)>,
}

#[derive(Clone, Debug, Default)]
struct Graph {
    nodes: Vec<GNode>,
    queue: Vec<(usize, Id)>,
    disjunctions: Vec<(usize, Id)>,
    existentials: Vec<(usize, Id)>,
    clash: bool,
}

/// A clash-free, complete completion graph turned into a model.
pub(crate) struct Model {
    pub interpretation: Interpretation,
    /// Domain element of each seeded root, in seeding order.
    pub roots: Vec<usize>,
}

enum Outcome {
    Clash,
    Complete(Graph),
    Branch(Graph, usize, Vec<Id>),
}

/// One tableau run. Not shared between queries.
pub(crate) struct Tableau<'t> {
    tbox: &'t TBox,
    interner: Interner,
    unfold_pos: HashMap<u32, Id>,
    unfold_neg: HashMap<u32, Id>,
    universal: Option<Id>,
    budget: usize,
    spent: usize,
}

impl<'t> Tableau<'t> {
    pub fn new(tbox: &'t TBox, budget: usize) -> Self {
        let mut interner = Interner::default();
        let mut unfold_pos = HashMap::new();
        let mut unfold_neg = HashMap::new();
        for (name, def) in tbox.definitions() {
            let a = interner.name(name);
            let pos = interner.concept(def);
            let neg = interner.neg(pos);
            unfold_pos.insert(a, pos);
            unfold_neg.insert(a, neg);
        }
        let universal = if tbox.gcis().is_empty() {
            None
        } else {
            let c = Concept::and(
                tbox.gcis()
                    .iter()
                    .map(|g| Concept::or([Concept::not(g.sub.clone()), g.sup.clone()])),
            );
            Some(interner.concept(&c))
        };
        Self {
            tbox,
            interner,
            unfold_pos,
            unfold_neg,
            universal,
            budget,
            spent: 0,
        }
    }

    fn charge(&mut self) -> Result<(), ReasonerError> {
        self.spent += 1;
        if self.spent > self.budget {
            Err(ReasonerError::BudgetExhausted { limit: self.budget })
        } else {
            Ok(())
        }
    }

    /// Decide whether `abox` plus one anonymous root per concept in `roots`
    /// has a model of the TBox. Returns the model on success.
    pub fn run(&mut self, abox: &ABox, extra: &[(Concept, String)], roots: &[Concept]) -> Result<Option<Model>, ReasonerError> {
        let mut g = Graph::default();
        let mut by_name: HashMap<String, usize> = HashMap::new();
        let mut individuals = abox.individuals();
        for (_, a) in extra {
            if !individuals.contains(a) {
                individuals.push(a.clone());
            }
        }
        for a in &individuals {
            let x = self.new_node(&mut g, None, Some(a.clone()))?;
            by_name.insert(a.clone(), x);
        }
        for (c, a) in abox.concept_assertions().iter().chain(extra) {
            let id = self.interner.concept(c);
            self.add(&mut g, by_name[a], id);
        }
        for (r, a, b) in abox.role_assertions() {
            let r = self.interner.role(r);
            self.add_edge(&mut g, by_name[a], r, by_name[b]);
        }
        let mut root_nodes = Vec::new();
        for c in roots {
            let x = self.new_node(&mut g, None, None)?;
            let id = self.interner.concept(c);
            self.add(&mut g, x, id);
            root_nodes.push(x);
        }
        match self.search(g)? {
            None => Ok(None),
            Some(g) => Ok(Some(self.model(&g, &root_nodes, &individuals, &by_name))),
        }
    }

    fn search(&mut self, initial: Graph) -> Result<Option<Graph>, ReasonerError> {
        struct Frame {
            graph: Graph,
            node: usize,
            options: Vec<Id>,
            next: usize,
        }
        let mut stack: Vec<Frame> = Vec::new();
        let mut current = Some(initial);
        loop {
            let g = match current.take() {
                Some(g) => g,
                None => {
                    let Some(frame) = stack.last_mut() else {
                        return Ok(None);
                    };
                    if frame.next >= frame.options.len() {
                        stack.pop();
                        continue;
                    }
                    let i = frame.next;
                    frame.next += 1;
                    let mut g = frame.graph.clone();
                    let x = frame.node;
                    let options = frame.options.clone();
                    if frame.next >= frame.options.len() {
                        // last alternative: no need to keep the snapshot
                        stack.pop();
                    }
                    self.charge()?;
                    for &earlier in &options[..i] {
                        let n = self.interner.neg(earlier);
                        self.add(&mut g, x, n);
                    }
                    self.add(&mut g, x, options[i]);
                    g
                }
            };
            match self.expand(g)? {
                Outcome::Clash => {}
                Outcome::Complete(g) => return Ok(Some(g)),
                Outcome::Branch(graph, node, options) => stack.push(Frame {
                    graph,
                    node,
                    options,
                    next: 0,
                }),
            }
        }
    }

    fn new_node(&mut self, g: &mut Graph, parent: Option<usize>, individual: Option<String>) -> Result<usize, ReasonerError> {
        self.charge()?;
        let x = g.nodes.len();
        g.nodes.push(GNode {
            label: BTreeSet::new(),
            parent,
            individual,
            edges: Vec::new(),
        });
        if let Some(u) = self.universal {
            self.add(g, x, u);
        }
        Ok(x)
    }

    fn add(&mut self, g: &mut Graph, x: usize, c: Id) {
        if g.nodes[x].label.insert(c) {
            g.queue.push((x, c));
        }
    }

    fn add_edge(&mut self, g: &mut Graph, x: usize, r: u32, y: usize) {
        if g.nodes[x].edges.contains(&(r, y)) {
            return;
        }
        g.nodes[x].edges.push((r, y));
        let fillers: Vec<Id> = g.nodes[x]
            .label
            .iter()
            .filter_map(|&c| match self.interner.nodes[c as usize] {
                Node::All(s, d) if s == r => Some(d),
                _ => None,
            })
            .collect();
        for d in fillers {
            self.add(g, y, d);
        }
    }

    fn propagate(&mut self, g: &mut Graph) {
        while let Some((x, c)) = g.queue.pop() {
            if g.clash {
                return;
            }
            match self.interner.nodes[c as usize].clone() {
                Node::Top => {}
                Node::Bottom => g.clash = true,
                Node::Atom(a) => {
                    let neg = self.interner.node(Node::NegAtom(a));
                    if g.nodes[x].label.contains(&neg) {
                        g.clash = true;
                    } else if let Some(&d) = self.unfold_pos.get(&a) {
                        self.add(g, x, d);
                    }
                }
                Node::NegAtom(a) => {
                    let pos = self.interner.node(Node::Atom(a));
                    if g.nodes[x].label.contains(&pos) {
                        g.clash = true;
                    } else if let Some(&d) = self.unfold_neg.get(&a) {
                        self.add(g, x, d);
                    }
                }
                Node::And(cs) => {
                    for d in cs {
                        self.add(g, x, d);
                    }
                }
                Node::Or(_) => g.disjunctions.push((x, c)),
                Node::Some(..) => g.existentials.push((x, c)),
                Node::All(r, d) => {
                    let succ: Vec<usize> = g.nodes[x]
                        .edges
                        .iter()
                        .filter(|(s, _)| *s == r)
                        .map(|&(_, y)| y)
                        .collect();
                    for y in succ {
                        self.add(g, y, d);
                    }
                }
            }
        }
    }

    /// Saturate deterministically, then either branch, generate a successor,
    /// or report completion.
    fn expand(&mut self, mut g: Graph) -> Result<Outcome, ReasonerError> {
        loop {
            self.propagate(&mut g);
            if g.clash {
                return Ok(Outcome::Clash);
            }
            // unit propagation over pending disjunctions
            let mut branch: Option<(usize, Vec<Id>)> = None;
            let mut progressed = false;
            let pending = std::mem::take(&mut g.disjunctions);
            let mut keep = Vec::with_capacity(pending.len());
            for (x, c) in pending {
                if progressed || g.clash {
                    keep.push((x, c));
                    continue;
                }
                let Node::Or(options) = self.interner.nodes[c as usize].clone() else {
                    unreachable!()
                };
                let label = &g.nodes[x].label;
                if options.iter().any(|o| label.contains(o)) {
                    continue;
                }
                let open: Vec<Id> = options
                    .iter()
                    .copied()
                    .filter(|&o| {
                        let n = self.interner.neg(o);
                        !g.nodes[x].label.contains(&n) && self.interner.nodes[o as usize] != Node::Bottom
                    })
                    .collect();
                match open.len() {
                    0 => g.clash = true,
                    1 => {
                        self.add(&mut g, x, open[0]);
                        progressed = true;
                    }
                    _ => {
                        if branch.is_none() {
                            branch = Some((x, open));
                        }
                        keep.push((x, c));
                    }
                }
            }
            g.disjunctions = keep;
            if g.clash {
                return Ok(Outcome::Clash);
            }
            if progressed {
                continue;
            }
            if let Some((x, options)) = branch {
                return Ok(Outcome::Branch(g, x, options));
            }
            // generating rule, applied once everything else is saturated
            match self.next_existential(&g) {
                Some((x, r, d)) => {
                    let y = self.new_node(&mut g, Some(x), None)?;
                    self.add(&mut g, y, d);
                    self.add_edge(&mut g, x, r, y);
                }
                None => return Ok(Outcome::Complete(g)),
            }
        }
    }

    fn next_existential(&self, g: &Graph) -> Option<(usize, u32, Id)> {
        for &(x, c) in &g.existentials {
            let Node::Some(r, d) = self.interner.nodes[c as usize] else {
                unreachable!()
            };
            let satisfied = g.nodes[x]
                .edges
                .iter()
                .any(|&(s, y)| s == r && g.nodes[y].label.contains(&d));
            if !satisfied && self.blocker(g, x).is_none() {
                return Some((x, r, d));
            }
        }
        None
    }

    /// Ancestor whose label includes the label of anonymous node `x`.
    fn blocker(&self, g: &Graph, x: usize) -> Option<usize> {
        if self.universal.is_none() || g.nodes[x].individual.is_some() {
            return None;
        }
        let mut a = g.nodes[x].parent;
        while let Some(y) = a {
            if g.nodes[x].label.is_subset(&g.nodes[y].label) {
                return Some(y);
            }
            a = g.nodes[y].parent;
        }
        None
    }

    fn model(
        &self,
        g: &Graph,
        roots: &[usize],
        individuals: &[String],
        by_name: &HashMap<String, usize>,
    ) -> Model {
        let domain: Vec<String> = g
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| n.individual.clone().unwrap_or_else(|| format!("_{i}")))
            .collect();
        let mut interp = Interpretation::new(domain).expect("node names are unique");
        for name in &self.interner.names {
            if !self.tbox.is_defined(name) {
                interp.declare_concept(name.clone());
            }
        }
        for (x, node) in g.nodes.iter().enumerate() {
            for &c in &node.label {
                if let Node::Atom(a) = self.interner.nodes[c as usize] {
                    let name = &self.interner.names[a as usize];
                    if !self.tbox.is_defined(name) {
                        interp.add_to_concept(name.clone(), x).unwrap();
                    }
                }
            }
            let source = self.blocker(g, x).unwrap_or(x);
            for &(r, y) in &g.nodes[source].edges {
                interp
                    .add_edge(self.interner.roles[r as usize].clone(), x, y)
                    .unwrap();
            }
        }
        for a in individuals {
            interp.map_individual(a.clone(), by_name[a]).unwrap();
        }
        // defined names denote their definitions
        let mut defined = Vec::new();
        for (name, _) in self.tbox.definitions() {
            let ext = interp.eval(&self.tbox.unfold(&Concept::atomic(name.clone())));
            defined.push((name.clone(), ext));
        }
        for (name, ext) in defined {
            interp.declare_concept(name.clone());
            for e in ext {
                interp.add_to_concept(name.clone(), e).unwrap();
            }
        }
        Model {
            interpretation: interp,
            roots: roots.to_vec(),
        }
    }
}

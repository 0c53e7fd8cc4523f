use serde::Serialize;

use crate::dl::{is_name, ABox, Concept, KnowledgeBase};
use crate::fca::{implication_closure, AttributeOrder, AttributeSet, Implication};
use crate::io::{write_ontology, write_pcxt};
use crate::partial::{
    validate_refutation, ExplorationState, PartialContext, PartialError, PartialObjectDescription, Question,
    Step,
};
use crate::reasoner::{component, Reasoner, ReasonerError, Verdict};

use super::snapshot;
use super::{Answer, CompletionError, Event, SessionQuestion, Status};

type Result<T> = std::result::Result<T, CompletionError>;

pub(crate) fn conjunction_concept<S: AsRef<str>>(names: &[S]) -> Concept {
    Concept::and(names.iter().map(|n| Concept::atomic(n.as_ref())))
}

pub(crate) fn conjunction<S: AsRef<str>>(names: &[S]) -> String {
    conjunction_concept(names).to_string()
}

/// The partial context induced by `abox` over `names`: one pod per
/// individual, with `+` for entailed names, `-` for entailed negations and
/// `?` otherwise.
pub fn induced_partial_context(
    reasoner: &Reasoner,
    abox: &ABox,
    names: &[String],
) -> Result<PartialContext> {
    induce(reasoner, abox, names, &abox.individuals())
}

fn induce(reasoner: &Reasoner, abox: &ABox, names: &[String], individuals: &[String]) -> Result<PartialContext> {
    if !reasoner.abox_consistent(abox)? {
        return Err(CompletionError::Inconsistent(
            "the knowledge base is inconsistent".into(),
        ));
    }
    let mut pctx = PartialContext::new(names.to_vec())?;
    for ind in individuals {
        pctx.add_pod(induce_pod(reasoner, abox, names, ind)?)?;
    }
    Ok(pctx)
}

fn induce_pod(reasoner: &Reasoner, abox: &ABox, names: &[String], individual: &str) -> Result<PartialObjectDescription> {
    let n = names.len();
    let mut pos = AttributeSet::empty(n);
    let mut neg = AttributeSet::empty(n);
    for (j, name) in names.iter().enumerate() {
        match reasoner
            .instance_check_consistent(abox, individual, &Concept::atomic(name))?
            .verdict
        {
            Verdict::Entailed => {
                pos.insert(j);
            }
            Verdict::Refuted => {
                neg.insert(j);
            }
            Verdict::Unknown => {}
        }
    }
    Ok(PartialObjectDescription::new(individual, pos, neg)?)
}

/// An event removed during replay, with the reason it no longer applies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DroppedEvent {
    pub event: Event,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UndoReport {
    pub undone: Event,
    pub dropped: Vec<DroppedEvent>,
}

/// The completed (or partially completed) knowledge base and its context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Export {
    pub ontology: String,
    pub context: String,
}

/// An interactive completion run. The state is a pure function of the
/// initial knowledge base, the names, the initial order and the event log.
#[derive(Clone, Debug)]
pub struct CompletionSession {
    budget: usize,
    initial: KnowledgeBase,
    names: Vec<String>,
    initial_order: Vec<String>,
    kb: KnowledgeBase,
    reasoner: Reasoner,
    individuals: Vec<String>,
    state: ExplorationState,
    log: Vec<Event>,
    auto_accepted: usize,
    paused: bool,
}

impl CompletionSession {
    /// Start completion of `kb` over `names`. `order` defaults to the order
    /// of `names`; questions visit premises in lectic order w.r.t. it.
    pub fn start(kb: KnowledgeBase, names: Vec<String>, order: Option<Vec<String>>, budget: usize) -> Result<Self> {
        if names.is_empty() {
            return Err(CompletionError::Input("at least one concept name is required".into()));
        }
        if let Some(bad) = names.iter().find(|n| !is_name(n)) {
            return Err(CompletionError::Input(format!("{bad:?} is not a concept name")));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(CompletionError::Input(format!("concept name {n} is listed twice")));
            }
        }
        let order = order.unwrap_or_else(|| names.clone());
        let attribute_order = order_of(&names, &order)?;
        let reasoner = Reasoner::new(kb.tbox.clone())?.with_budget(budget);
        let individuals = kb.abox.individuals();
        let pctx = induce(&reasoner, &kb.abox, &names, &individuals)?;
        let state = ExplorationState::new(pctx, attribute_order)?;
        let mut session = Self {
            budget,
            initial: kb.clone(),
            names,
            initial_order: order,
            kb,
            reasoner,
            individuals,
            state,
            log: Vec::new(),
            auto_accepted: 0,
            paused: false,
        };
        session.settle()?;
        Ok(session)
    }

    /// Rebuild a session by replaying `events`. Events that no longer apply
    /// are skipped and reported.
    pub(crate) fn replay(
        initial: KnowledgeBase,
        names: Vec<String>,
        order: Vec<String>,
        budget: usize,
        events: &[Event],
    ) -> Result<(Self, Vec<(usize, DroppedEvent)>)> {
        let mut session = Self::start(initial, names, Some(order), budget)?;
        let mut dropped = Vec::new();
        for (i, event) in events.iter().enumerate() {
            let mut next = session.clone();
            match next.apply_event(event) {
                Ok(()) => session = next,
                Err(CompletionError::Reasoner(e @ ReasonerError::BudgetExhausted { .. })) => return Err(e.into()),
                Err(e) => dropped.push((
                    i,
                    DroppedEvent {
                        event: event.clone(),
                        reason: e.to_string(),
                    },
                )),
            }
        }
        Ok((session, dropped))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn initial_kb(&self) -> &KnowledgeBase {
        &self.initial
    }

    pub fn initial_order(&self) -> &[String] {
        &self.initial_order
    }

    pub fn kb(&self) -> &KnowledgeBase {
        &self.kb
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn reasoner(&self) -> &Reasoner {
        &self.reasoner
    }

    pub fn state(&self) -> &ExplorationState {
        &self.state
    }

    pub fn context(&self) -> &PartialContext {
        self.state.context()
    }

    pub fn log(&self) -> &[Event] {
        &self.log
    }

    /// Accepted implications, including those the TBox already entailed.
    pub fn accepted(&self) -> &[Implication] {
        self.state.accepted()
    }

    /// Questions answered without asking because the TBox entails them.
    pub fn auto_accepted(&self) -> usize {
        self.auto_accepted
    }

    /// Current attribute order, most significant first.
    pub fn order(&self) -> Vec<String> {
        self.state.order().as_slice().iter().map(|&i| self.names[i].clone()).collect()
    }

    pub fn has_individual(&self, name: &str) -> bool {
        self.individuals.iter().any(|i| i == name)
    }

    pub fn status(&self) -> Status {
        if self.paused {
            Status::Paused
        } else if self.state.cursor().is_none() {
            Status::Complete
        } else {
            Status::Running
        }
    }

    pub fn is_complete(&self) -> bool {
        self.state.cursor().is_none()
    }

    fn next_id(&self) -> u64 {
        self.log.len() as u64 + 1
    }

    fn question_view(&self, q: &Question) -> SessionQuestion {
        SessionQuestion {
            id: self.next_id(),
            premise: self.context().attribute_names(&q.premise),
            conclusion: self.context().attribute_names(&q.conclusion),
        }
    }

    /// The pending question, `None` once completion has finished.
    pub fn current_question(&self) -> Result<Option<SessionQuestion>> {
        if self.paused {
            return Err(CompletionError::Paused);
        }
        Ok(self.pending().map(|q| self.question_view(&q)))
    }

    fn pending(&self) -> Option<Question> {
        match self.state.next_undecided() {
            Step::Ask(q) => Some(q),
            Step::Complete => None,
        }
    }

    fn expect_question(&self, id: u64) -> Result<Question> {
        if self.paused {
            return Err(CompletionError::Paused);
        }
        let q = self.pending().ok_or(CompletionError::Complete)?;
        let expected = self.next_id();
        if id != expected {
            return Err(CompletionError::StaleQuestion { expected, got: id });
        }
        Ok(q)
    }

    /// Run `f` on a copy and keep the result only if it succeeds.
    fn transact<T>(&mut self, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        let mut next = self.clone();
        let out = f(&mut next)?;
        *self = next;
        Ok(out)
    }

    pub fn answer(&mut self, id: u64, answer: Answer) -> Result<()> {
        match answer {
            Answer::Yes => self.answer_yes(id),
            Answer::No {
                individual,
                positives,
                negatives,
            } => self.answer_no(id, &individual, &positives, &negatives),
        }
    }

    /// Accept question `id`: the TBox gains `⊓premise ⊑ ⊓conclusion`.
    pub fn answer_yes(&mut self, id: u64) -> Result<()> {
        let q = self.expect_question(id)?;
        self.transact(|s| s.accept(&q))
    }

    /// Reject question `id` with a fresh individual described by literals.
    pub fn answer_no<S: AsRef<str>>(&mut self, id: u64, individual: &str, positives: &[S], negatives: &[S]) -> Result<()> {
        let q = self.expect_question(id)?;
        let positives: Vec<String> = positives.iter().map(|s| s.as_ref().to_owned()).collect();
        let negatives: Vec<String> = negatives.iter().map(|s| s.as_ref().to_owned()).collect();
        self.transact(|s| s.reject(&q, individual, positives, negatives))
    }

    /// Move the least significant attribute of the current premise (the last
    /// attribute for an empty premise) to the front of the order and restart
    /// enumeration with everything learned so far. The same question may
    /// come back.
    pub fn postpone(&mut self) -> Result<()> {
        if self.paused {
            return Err(CompletionError::Paused);
        }
        let q = self.pending().ok_or(CompletionError::Complete)?;
        let by_rank = self.state.order().as_slice();
        let moved = self
            .state
            .order()
            .max_member(&q.premise)
            .unwrap_or(by_rank[by_rank.len() - 1]);
        let mut order = vec![self.names[moved].clone()];
        order.extend(by_rank.iter().filter(|&&a| a != moved).map(|&a| self.names[a].clone()));
        self.transact(|s| s.apply_event(&Event::Reorder { order }))
    }

    /// Remove event `index` and replay the rest of the log, dropping events
    /// that no longer apply.
    pub fn undo(&mut self, index: usize) -> Result<UndoReport> {
        if self.paused {
            return Err(CompletionError::Paused);
        }
        if index >= self.log.len() {
            return Err(CompletionError::EventIndex {
                index,
                len: self.log.len(),
            });
        }
        let mut events = self.log.clone();
        let undone = events.remove(index);
        let (next, dropped) = Self::replay(
            self.initial.clone(),
            self.names.clone(),
            self.initial_order.clone(),
            self.budget,
            &events,
        )?;
        *self = next;
        Ok(UndoReport {
            undone,
            dropped: dropped.into_iter().map(|(_, d)| d).collect(),
        })
    }

    /// Stop accepting answers and return the snapshot to resume from.
    pub fn pause(&mut self) -> Result<String> {
        if self.paused {
            return Err(CompletionError::Paused);
        }
        self.paused = true;
        Ok(self.snapshot())
    }

    pub fn snapshot(&self) -> String {
        snapshot::write(self)
    }

    /// Rebuild a session from a snapshot. Every logged event must replay.
    pub fn resume(text: &str, budget: usize) -> Result<Self> {
        snapshot::read(text, budget)
    }

    pub fn export(&self) -> Export {
        Export {
            ontology: write_ontology(&self.kb),
            context: write_pcxt(self.context()),
        }
    }

    fn set_of(&self, names: &[String]) -> Result<AttributeSet> {
        Ok(self.context().attribute_set(names)?)
    }

    fn induce_all(&self) -> Result<PartialContext> {
        induce(&self.reasoner, &self.kb.abox, &self.names, &self.individuals)
    }

    /// Auto-accept questions whose implication the TBox already entails.
    fn settle(&mut self) -> Result<()> {
        while let Some(q) = self.pending() {
            let premise = conjunction_concept(&self.context().attribute_names(&q.premise));
            let conclusion = conjunction_concept(&self.context().attribute_names(&q.conclusion));
            if !self.reasoner.subsumes(&premise, &conclusion)? {
                break;
            }
            self.state = self.state.apply_yes(&q)?;
            self.auto_accepted += 1;
        }
        Ok(())
    }

    fn add_gci(&mut self, imp: &Implication) -> Result<()> {
        let premise = conjunction_concept(&self.context().attribute_names(&imp.premise));
        let conclusion = conjunction_concept(&self.context().attribute_names(&imp.conclusion));
        self.kb.tbox.add_gci(premise, conclusion);
        self.reasoner = Reasoner::new(self.kb.tbox.clone())?.with_budget(self.budget);
        if !self.reasoner.abox_consistent(&self.kb.abox)? {
            return Err(CompletionError::Inconsistent(
                "accepting this implication makes the knowledge base inconsistent".into(),
            ));
        }
        Ok(())
    }

    fn accept(&mut self, q: &Question) -> Result<()> {
        self.add_gci(&q.implication())?;
        self.state = self.state.apply_yes(q)?;
        self.refresh()?;
        self.log.push(Event::Yes {
            premise: self.context().attribute_names(&q.premise),
            conclusion: self.context().attribute_names(&q.conclusion),
        });
        self.settle()
    }

    /// Re-derive the induced context after the TBox changed.
    fn refresh(&mut self) -> Result<()> {
        let pctx = self.induce_all()?;
        self.state = self.state.with_context(pctx)?;
        Ok(())
    }

    /// Add the individual's literal assertions and return its induced pod.
    fn add_counterexample(&mut self, individual: &str, positives: &[String], negatives: &[String]) -> Result<PartialObjectDescription> {
        if !is_name(individual) {
            return Err(CompletionError::Input(format!("{individual:?} is not an individual name")));
        }
        if self.has_individual(individual) {
            return Err(CompletionError::NameClash(individual.to_owned()));
        }
        // validates names and overlap
        PartialObjectDescription::new(individual, self.set_of(positives)?, self.set_of(negatives)?)?;
        for name in positives {
            self.kb.abox.assert_concept(Concept::atomic(name), individual);
        }
        for name in negatives {
            self.kb.abox.assert_concept(Concept::not(Concept::atomic(name)), individual);
        }
        if !self.reasoner.abox_consistent(&component(&self.kb.abox, individual))? {
            return Err(CompletionError::Inconsistent(format!(
                "counterexample {individual} contradicts the TBox"
            )));
        }
        self.individuals.push(individual.to_owned());
        induce_pod(&self.reasoner, &self.kb.abox, &self.names, individual)
    }

    fn reject(&mut self, q: &Question, individual: &str, positives: Vec<String>, negatives: Vec<String>) -> Result<()> {
        if !is_name(individual) {
            return Err(CompletionError::Input(format!("{individual:?} is not an individual name")));
        }
        let given = PartialObjectDescription::new(individual, self.set_of(&positives)?, self.set_of(&negatives)?)?;
        validate_refutation(self.context(), q, &given)?;
        let pod = self.add_counterexample(individual, &positives, &negatives)?;
        // an isolated consistent individual leaves other pods unchanged
        self.state = self.state.apply_no(q, pod)?;
        self.log.push(Event::No {
            premise: self.context().attribute_names(&q.premise),
            conclusion: self.context().attribute_names(&q.conclusion),
            individual: individual.to_owned(),
            positives: self.context().attribute_names(&given.positives),
            negatives: self.context().attribute_names(&given.negatives),
        });
        self.settle()
    }

    /// Apply a logged event. An event matching the pending question is
    /// applied as an answer; otherwise its content is added directly.
    fn apply_event(&mut self, event: &Event) -> Result<()> {
        match event {
            Event::Yes { premise, conclusion } => {
                let q = Question {
                    premise: self.set_of(premise)?,
                    conclusion: self.set_of(conclusion)?,
                };
                if self.pending().as_ref() == Some(&q) {
                    return self.accept(&q);
                }
                let imp = q.implication();
                if self.context().refutes(&imp) {
                    return Err(PartialError::RefutedImplication(imp).into());
                }
                self.add_gci(&imp)?;
                self.state = self.state.add_implication(imp)?;
                self.refresh()?;
                self.log.push(event.clone());
                self.settle()
            }
            Event::No {
                premise,
                conclusion,
                individual,
                positives,
                negatives,
            } => {
                let q = Question {
                    premise: self.set_of(premise)?,
                    conclusion: self.set_of(conclusion)?,
                };
                if self.pending().as_ref() == Some(&q) {
                    return self.reject(&q, individual, positives.clone(), negatives.clone());
                }
                let pod = self.add_counterexample(individual, positives, negatives)?;
                self.state = self.state.add_pod(pod)?;
                self.log.push(event.clone());
                self.settle()
            }
            Event::Reorder { order } => {
                self.state = self.state.with_order(order_of(&self.names, order)?)?;
                self.log.push(event.clone());
                self.settle()
            }
        }
    }

    /// Implication `premise -> conclusion` follows from the accepted ones.
    pub fn follows<S: AsRef<str>>(&self, premise: &[S], conclusion: &[S]) -> Result<bool> {
        let p = self.context().attribute_set(premise)?;
        let c = self.context().attribute_set(conclusion)?;
        Ok(c.is_subset(&implication_closure(self.accepted(), &p)))
    }
}

fn order_of(names: &[String], order: &[String]) -> Result<AttributeOrder> {
    let mut by_rank = Vec::with_capacity(order.len());
    for o in order {
        let i = names
            .iter()
            .position(|n| n == o)
            .ok_or_else(|| CompletionError::Input(format!("order mentions unknown name {o}")))?;
        by_rank.push(i);
    }
    AttributeOrder::from_permutation(by_rank)
        .ok()
        .filter(|ord| ord.universe() == names.len())
        .ok_or_else(|| CompletionError::Input("order must list every concept name exactly once".into()))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::completion::{run_oracle, OracleExpert};
    use crate::fca::FormalContext;
    use crate::partial::testing::{SHORT, TABLE1_ROWS, TABLE3_EXTRA};
    use crate::reasoner::DEFAULT_NODE_BUDGET;

    pub(crate) fn names() -> Vec<String> {
        SHORT.iter().map(|s| s.to_string()).collect()
    }

    pub(crate) fn countries() -> KnowledgeBase {
        let mut kb = KnowledgeBase::default();
        for (ind, cells) in TABLE1_ROWS {
            for (name, c) in SHORT.iter().zip(cells.chars()) {
                let atom = Concept::atomic(*name);
                kb.abox.assert_concept(if c == '+' { atom } else { Concept::not(atom) }, ind);
            }
        }
        kb
    }

    pub(crate) fn table3_oracle() -> OracleExpert {
        let mut ctx = FormalContext::new(names()).unwrap();
        for (ind, cells) in TABLE1_ROWS.iter().chain(&TABLE3_EXTRA) {
            let row = AttributeSet::from_indices(5, cells.char_indices().filter(|(_, c)| *c == '+').map(|(i, _)| i));
            ctx.add_object(ind.to_string(), row).unwrap();
        }
        OracleExpert::from_context(ctx)
    }

    fn session() -> CompletionSession {
        CompletionSession::start(countries(), names(), None, DEFAULT_NODE_BUDGET).unwrap()
    }

    #[test]
    fn induced_context_is_table1() {
        let s = session();
        let text = write_pcxt(s.context());
        let rows: Vec<&str> = text.lines().skip(5 + 6 + 5).collect();
        assert_eq!(rows, TABLE1_ROWS.iter().map(|r| r.1).collect::<Vec<_>>());
        assert_eq!(s.status(), Status::Running);
    }

    #[test]
    fn open_world_leaves_unknowns() {
        let kb = crate::io::read_ontology("assert A (a)\n").unwrap();
        let r = Reasoner::new(kb.tbox.clone()).unwrap();
        let pctx = induced_partial_context(&r, &kb.abox, &["A".into(), "B".into()]).unwrap();
        assert_eq!(write_pcxt(&pctx), "BP\n\n1\n2\n\na\nA\nB\n+?\n");
        let empty = induced_partial_context(&r, &ABox::new(), &["A".into()]).unwrap();
        assert!(empty.pods().is_empty());
    }

    #[test]
    fn identity_order_reproduces_the_worked_run() {
        let mut s = session();
        let transcript: Vec<String> = run_oracle(&mut s, &table3_oracle())
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(
            transcript,
            [
                "{G8, Mediterranean} -> {EU, European}? yes",
                "{European, G8} -> {EU}? no: Russia",
                "{EU} -> {European, G8}? no: Cyprus",
                "{EU, G8} -> {European}? yes",
                "{EU, European} -> {G8}? no: Spain",
                "{Asian, G8} -> {European}? no: Japan",
                "{Asian, EU} -> {Mediterranean}? yes",
                "{Asian, EU, European, Mediterranean} -> {G8}? yes",
            ]
        );
        assert_eq!(s.status(), Status::Complete);
        assert_eq!(s.kb().tbox.gcis().len(), 4);
        let first = &s.kb().tbox.gcis()[0];
        assert_eq!(
            (first.sub.to_string(), first.sup.to_string()),
            ("G8 and Mediterranean".to_string(), "EU and European".to_string())
        );
    }

    #[test]
    fn stale_and_invalid_answers_leave_state_unchanged() {
        let mut s = session();
        let q = s.current_question().unwrap().unwrap();
        let before = s.snapshot();
        assert!(matches!(s.answer_yes(q.id + 1), Err(CompletionError::StaleQuestion { .. })));
        // Syria is taken
        let err = s.answer_no(q.id, "Syria", &["G8", "Mediterranean"], &["EU"]).unwrap_err();
        assert!(matches!(err, CompletionError::NameClash(_)));
        // missing the premise attribute Mediterranean
        let err = s.answer_no(q.id, "X", &["G8"], &["EU"]).unwrap_err();
        assert!(matches!(err, CompletionError::Partial(PartialError::NotRefuting { .. })), "{err:?}");
        assert_eq!(s.snapshot(), before);
        assert_eq!(s.current_question().unwrap(), Some(q));
    }

    #[test]
    fn undo_last_no_reasks_and_redo_is_identical() {
        let mut s = session();
        let oracle = table3_oracle();
        for _ in 0..2 {
            let q = s.current_question().unwrap().unwrap();
            s.answer(q.id, oracle.answer(&s, &q)).unwrap();
        }
        let after = s.snapshot();
        let report = s.undo(1).unwrap();
        assert!(report.dropped.is_empty());
        assert!(!s.has_individual("Russia"));
        let q = s.current_question().unwrap().unwrap();
        assert_eq!(q.premise, ["European", "G8"]);
        s.answer(q.id, oracle.answer(&s, &q)).unwrap();
        assert_eq!(s.snapshot(), after);
    }

    #[test]
    fn undo_early_yes_still_completes() {
        let oracle = table3_oracle();
        let mut s = session();
        run_oracle(&mut s, &oracle).unwrap();
        s.undo(0).unwrap();
        run_oracle(&mut s, &oracle).unwrap();
        assert!(s.is_complete());
        for imp in s.accepted() {
            assert!(oracle.context().rows().iter().all(|r| imp.respected_by(r)));
        }
    }

    #[test]
    fn postpone_on_two_attributes_repeats_question() {
        let kb = KnowledgeBase::default();
        let mut s = CompletionSession::start(kb, vec!["A".into(), "B".into()], None, DEFAULT_NODE_BUDGET).unwrap();
        let q = s.current_question().unwrap().unwrap();
        assert!(q.premise.is_empty());
        s.postpone().unwrap();
        let again = s.current_question().unwrap().unwrap();
        assert_eq!((again.premise, again.conclusion), (q.premise, q.conclusion));
        assert_eq!(s.order(), ["B", "A"]);
        assert!(again.id > q.id);
    }

    #[test]
    fn pause_resume_matches_uninterrupted() {
        let oracle = table3_oracle();
        let mut full = session();
        run_oracle(&mut full, &oracle).unwrap();

        let mut s = session();
        for _ in 0..4 {
            let q = s.current_question().unwrap().unwrap();
            s.answer(q.id, oracle.answer(&s, &q)).unwrap();
        }
        let snap = s.pause().unwrap();
        assert!(matches!(s.current_question(), Err(CompletionError::Paused)));
        let mut resumed = CompletionSession::resume(&snap, DEFAULT_NODE_BUDGET).unwrap();
        let rest = run_oracle(&mut resumed, &oracle).unwrap();
        assert_eq!(rest.len(), 4);
        assert_eq!(resumed.snapshot(), full.snapshot());
        assert_eq!(resumed.kb(), full.kb());

        let tampered = snap.replace("Russia", "Rossia");
        assert!(CompletionSession::resume(&tampered, DEFAULT_NODE_BUDGET).is_err());
    }

    #[test]
    fn entailed_questions_are_not_asked() {
        let kb = crate::io::read_ontology("gci A => B\n").unwrap();
        let mut s = CompletionSession::start(kb, vec!["A".into(), "B".into()], None, DEFAULT_NODE_BUDGET).unwrap();
        let q = s.current_question().unwrap().unwrap();
        assert_eq!((q.premise.as_slice(), q.conclusion.as_slice()), (&[][..], &["A".to_string(), "B".to_string()][..]));
        s.answer_no(q.id, "x", &["B"], &["A"]).unwrap();
        // {B} -> {A} then... {A} -> {B} is entailed and skipped
        let asked: Vec<_> = std::iter::from_fn(|| {
            let q = s.current_question().unwrap()?;
            s.answer_no(q.id, &format!("y{}", q.id), &q.premise, &q.conclusion).ok()?;
            Some(q)
        })
        .collect();
        assert!(asked.iter().all(|q| q.premise != ["A"]));
        assert!(s.auto_accepted() >= 1);
    }
}

use std::fmt;

use crate::dl::{Concept, Interpretation};
use crate::fca::{AttributeSet, FormalContext};

use super::{Answer, CompletionError, CompletionSession, SessionQuestion};

/// A machine expert answering from a fully known context: an implication
/// holds iff no object refutes it.
#[derive(Clone, Debug)]
pub struct OracleExpert {
    ctx: FormalContext,
}

impl OracleExpert {
    pub fn from_context(ctx: FormalContext) -> Self {
        Self { ctx }
    }

    /// Objects are the domain elements (in domain order), rows their
    /// memberships in `names`.
    pub fn from_interpretation(interp: &Interpretation, names: &[String]) -> Self {
        let mut ctx = FormalContext::new(names.to_vec()).expect("names are distinct");
        let extensions: Vec<_> = names.iter().map(|n| interp.eval(&Concept::atomic(n))).collect();
        for (e, element) in interp.domain().iter().enumerate() {
            let row = AttributeSet::from_indices(
                names.len(),
                extensions.iter().enumerate().filter(|(_, ext)| ext.contains(&e)).map(|(j, _)| j),
            );
            ctx.add_object(element.clone(), row).expect("domain names are distinct");
        }
        Self { ctx }
    }

    pub fn context(&self) -> &FormalContext {
        &self.ctx
    }

    fn has<S: AsRef<str>>(&self, object: usize, names: &[S]) -> Vec<bool> {
        names
            .iter()
            .map(|n| {
                self.ctx
                    .attribute_index(n.as_ref())
                    .is_some_and(|j| self.ctx.incidence(object, j))
            })
            .collect()
    }

    fn refutes(&self, object: usize, q: &SessionQuestion) -> bool {
        self.has(object, &q.premise).iter().all(|&b| b) && !self.has(object, &q.conclusion).iter().all(|&b| b)
    }

    /// `Yes` iff the question holds in the context; otherwise the first
    /// refuting object as a fully decided counterexample. An object whose
    /// name is already an individual of the session is skipped in favour of
    /// a later refuting object; if every refuting object is taken, the first
    /// one is renamed with a numeric suffix.
    pub fn answer(&self, session: &CompletionSession, q: &SessionQuestion) -> Answer {
        let refuting: Vec<usize> = (0..self.ctx.objects().len()).filter(|&g| self.refutes(g, q)).collect();
        let Some(&first) = refuting.first() else {
            return Answer::Yes;
        };
        let (object, individual) = refuting
            .iter()
            .map(|&g| (g, self.ctx.objects()[g].clone()))
            .find(|(_, name)| !session.has_individual(name))
            .unwrap_or_else(|| {
                let base = &self.ctx.objects()[first];
                let name = (1..)
                    .map(|k| format!("{base}_{k}"))
                    .find(|n| !session.has_individual(n))
                    .expect("some suffix is free");
                (first, name)
            });
        let row = self.has(object, session.names());
        let pick = |want: bool| {
            session
                .names()
                .iter()
                .zip(&row)
                .filter(|(_, &b)| b == want)
                .map(|(n, _)| n.clone())
                .collect()
        };
        Answer::No {
            individual,
            positives: pick(true),
            negatives: pick(false),
        }
    }
}

/// One question with the answer it received.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptLine {
    pub question: SessionQuestion,
    pub answer: Answer,
}

impl fmt::Display for TranscriptLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.answer {
            Answer::Yes => write!(f, "{}? yes", self.question),
            Answer::No { individual, .. } => write!(f, "{}? no: {individual}", self.question),
        }
    }
}

/// Answer every question with `oracle` until completion finishes.
pub fn run_oracle(session: &mut CompletionSession, oracle: &OracleExpert) -> Result<Vec<TranscriptLine>, CompletionError> {
    let mut transcript = Vec::new();
    while let Some(question) = session.current_question()? {
        let answer = oracle.answer(session, &question);
        session.answer(question.id, answer.clone())?;
        transcript.push(TranscriptLine { question, answer });
    }
    Ok(transcript)
}

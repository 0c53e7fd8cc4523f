use crate::fca::{ensure_unique, implication_closure, AttributeSet, Implication};

use super::PartialError;

/// What is known about one object: attributes it certainly has and attributes
/// it certainly lacks. Everything else is unknown.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialObjectDescription {
    pub id: String,
    pub positives: AttributeSet,
    pub negatives: AttributeSet,
}

impl PartialObjectDescription {
    pub fn new(
        id: impl Into<String>,
        positives: AttributeSet,
        negatives: AttributeSet,
    ) -> Result<Self, PartialError> {
        let id = id.into();
        if positives.universe() != negatives.universe() {
            return Err(PartialError::Input(format!(
                "pod {id}: positive and negative sets over different universes"
            )));
        }
        if positives.intersects(&negatives) {
            return Err(PartialError::OverlappingPod {
                id,
                attributes: positives.intersection(&negatives).iter().collect(),
            });
        }
        Ok(Self {
            id,
            positives,
            negatives,
        })
    }

    /// A fully decided description of a complete row.
    pub fn decided(id: impl Into<String>, row: &AttributeSet) -> Self {
        Self {
            id: id.into(),
            positives: row.clone(),
            negatives: row.complement(),
        }
    }

    pub fn universe(&self) -> usize {
        self.positives.universe()
    }

    pub fn unknown(&self) -> AttributeSet {
        self.positives.union(&self.negatives).complement()
    }

    pub fn is_decided(&self) -> bool {
        self.unknown().is_empty()
    }

    /// `L -> R` is refuted when `L ⊆ A` and `R ∩ S ≠ ∅`.
    pub fn refutes(&self, imp: &Implication) -> bool {
        imp.premise.is_subset(&self.positives) && imp.conclusion.intersects(&self.negatives)
    }

    /// Whether this description contradicts `implications`: closing the known
    /// positives under them reaches a known negative.
    pub fn contradicts(&self, implications: &[Implication]) -> bool {
        implication_closure(implications, &self.positives).intersects(&self.negatives)
    }

    /// True when `self` carries at least the information of `other`.
    pub fn refines(&self, other: &Self) -> bool {
        self.id == other.id
            && other.positives.is_subset(&self.positives)
            && other.negatives.is_subset(&self.negatives)
    }
}

/// A set of partial object descriptions over an ordered attribute universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialContext {
    attributes: Vec<String>,
    pods: Vec<PartialObjectDescription>,
}

impl PartialContext {
    pub fn new(attributes: Vec<String>) -> Result<Self, PartialError> {
        ensure_unique("attribute", &attributes)?;
        Ok(Self {
            attributes,
            pods: Vec::new(),
        })
    }

    pub fn with_pods(
        attributes: Vec<String>,
        pods: impl IntoIterator<Item = PartialObjectDescription>,
    ) -> Result<Self, PartialError> {
        let mut ctx = Self::new(attributes)?;
        for pod in pods {
            ctx.add_pod(pod)?;
        }
        Ok(ctx)
    }

    pub fn add_pod(&mut self, pod: PartialObjectDescription) -> Result<(), PartialError> {
        if pod.universe() != self.universe() {
            return Err(PartialError::Input(format!(
                "pod {} spans {} attributes, context has {}",
                pod.id,
                pod.universe(),
                self.universe()
            )));
        }
        if self.pod(&pod.id).is_some() {
            return Err(PartialError::DuplicatePod(pod.id));
        }
        self.pods.push(pod);
        Ok(())
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn pods(&self) -> &[PartialObjectDescription] {
        &self.pods
    }

    pub fn pod(&self, id: &str) -> Option<&PartialObjectDescription> {
        self.pods.iter().find(|p| p.id == id)
    }

    pub fn universe(&self) -> usize {
        self.attributes.len()
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a == name)
    }

    pub fn attribute_set<S: AsRef<str>>(&self, names: &[S]) -> Result<AttributeSet, PartialError> {
        let mut set = AttributeSet::empty(self.universe());
        for name in names {
            let i = self
                .attribute_index(name.as_ref())
                .ok_or_else(|| PartialError::UnknownAttribute(name.as_ref().to_owned()))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn attribute_names(&self, set: &AttributeSet) -> Vec<String> {
        set.iter().map(|i| self.attributes[i].clone()).collect()
    }

    /// Some pod refutes `imp`.
    pub fn refutes(&self, imp: &Implication) -> bool {
        self.pods.iter().any(|p| p.refutes(imp))
    }

    /// The largest `R` such that `premise -> R` is not refuted: everything
    /// except attributes known to be absent from some pod containing the
    /// premise.
    pub fn certain_conclusion(&self, premise: &AttributeSet) -> AttributeSet {
        let mut excluded = AttributeSet::empty(self.universe());
        for pod in &self.pods {
            if premise.is_subset(&pod.positives) {
                excluded.union_with(&pod.negatives);
            }
        }
        excluded.complement()
    }

    /// Same pods (in order) with at least as much information each, plus
    /// possibly more pods at the end.
    pub fn refines(&self, other: &Self) -> bool {
        self.attributes == other.attributes
            && self.pods.len() >= other.pods.len()
            && self.pods.iter().zip(&other.pods).all(|(a, b)| a.refines(b))
    }
}

/// `imp` neither follows from `accepted` nor is refuted by `pctx`.
pub fn is_undecided(pctx: &PartialContext, accepted: &[Implication], imp: &Implication) -> bool {
    !imp.conclusion
        .is_subset(&implication_closure(accepted, &imp.premise))
        && !pctx.refutes(imp)
}

use std::collections::BTreeSet;
use std::fmt;

/// An ALC concept description.
///
/// Values built through the smart constructors ([`Concept::and`],
/// [`Concept::or`], ...) are canonical: conjunctions and disjunctions are
/// flattened, their operands sorted and deduplicated, and they always have at
/// least two operands. Structural equality of canonical values is equality up
/// to associativity, commutativity and idempotence of `and`/`or`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Concept {
    Top,
    Bottom,
    Atomic(String),
    Not(Box<Concept>),
    And(Vec<Concept>),
    Or(Vec<Concept>),
    Exists(String, Box<Concept>),
    Forall(String, Box<Concept>),
}

impl Concept {
    pub fn atomic(name: impl Into<String>) -> Self {
        Concept::Atomic(name.into())
    }

    pub fn not(c: Concept) -> Self {
        Concept::Not(Box::new(c))
    }

    pub fn exists(role: impl Into<String>, c: Concept) -> Self {
        Concept::Exists(role.into(), Box::new(c))
    }

    pub fn forall(role: impl Into<String>, c: Concept) -> Self {
        Concept::Forall(role.into(), Box::new(c))
    }

    /// Conjunction; `Top` for no operands.
    pub fn and(operands: impl IntoIterator<Item = Concept>) -> Self {
        Self::junction(operands, true)
    }

    /// Disjunction; `Bottom` for no operands.
    pub fn or(operands: impl IntoIterator<Item = Concept>) -> Self {
        Self::junction(operands, false)
    }

    fn junction(operands: impl IntoIterator<Item = Concept>, conjunctive: bool) -> Self {
        let mut flat = BTreeSet::new();
        for c in operands {
            match c {
                Concept::And(cs) if conjunctive => flat.extend(cs),
                Concept::Or(cs) if !conjunctive => flat.extend(cs),
                other => {
                    flat.insert(other);
                }
            }
        }
        let mut flat: Vec<Concept> = flat.into_iter().collect();
        match flat.len() {
            0 if conjunctive => Concept::Top,
            0 => Concept::Bottom,
            1 => flat.pop().unwrap(),
            _ if conjunctive => Concept::And(flat),
            _ => Concept::Or(flat),
        }
    }

    /// Rebuild bottom-up with the canonical constructors.
    pub fn canonical(&self) -> Concept {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) => self.clone(),
            Concept::Not(c) => Concept::not(c.canonical()),
            Concept::And(cs) => Concept::and(cs.iter().map(Concept::canonical)),
            Concept::Or(cs) => Concept::or(cs.iter().map(Concept::canonical)),
            Concept::Exists(r, c) => Concept::exists(r.clone(), c.canonical()),
            Concept::Forall(r, c) => Concept::forall(r.clone(), c.canonical()),
        }
    }

    /// Negation normal form: negation only in front of concept names.
    pub fn nnf(&self) -> Concept {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) => self.clone(),
            Concept::And(cs) => Concept::and(cs.iter().map(Concept::nnf)),
            Concept::Or(cs) => Concept::or(cs.iter().map(Concept::nnf)),
            Concept::Exists(r, c) => Concept::exists(r.clone(), c.nnf()),
            Concept::Forall(r, c) => Concept::forall(r.clone(), c.nnf()),
            Concept::Not(inner) => inner.negated_nnf(),
        }
    }

    /// NNF of `not self`.
    pub fn negated_nnf(&self) -> Concept {
        match self {
            Concept::Top => Concept::Bottom,
            Concept::Bottom => Concept::Top,
            Concept::Atomic(_) => Concept::not(self.clone()),
            Concept::Not(c) => c.nnf(),
            Concept::And(cs) => Concept::or(cs.iter().map(Concept::negated_nnf)),
            Concept::Or(cs) => Concept::and(cs.iter().map(Concept::negated_nnf)),
            Concept::Exists(r, c) => Concept::forall(r.clone(), c.negated_nnf()),
            Concept::Forall(r, c) => Concept::exists(r.clone(), c.negated_nnf()),
        }
    }

    pub fn is_nnf(&self) -> bool {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) => true,
            Concept::Not(c) => matches!(**c, Concept::Atomic(_)),
            Concept::And(cs) | Concept::Or(cs) => cs.iter().all(Concept::is_nnf),
            Concept::Exists(_, c) | Concept::Forall(_, c) => c.is_nnf(),
        }
    }

    /// Concept names occurring in `self`.
    pub fn concept_names(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.visit(&mut |c| {
            if let Concept::Atomic(n) = c {
                out.insert(n.as_str());
            }
        });
        out
    }

    /// Role names occurring in `self`.
    pub fn role_names(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.visit(&mut |c| {
            if let Concept::Exists(r, _) | Concept::Forall(r, _) = c {
                out.insert(r.as_str());
            }
        });
        out
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Concept)) {
        f(self);
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) => {}
            Concept::Not(c) | Concept::Exists(_, c) | Concept::Forall(_, c) => c.visit(f),
            Concept::And(cs) | Concept::Or(cs) => cs.iter().for_each(|c| c.visit(f)),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) => 0,
            Concept::Not(c) => c.depth(),
            Concept::And(cs) | Concept::Or(cs) => cs.iter().map(Concept::depth).max().unwrap_or(0),
            Concept::Exists(_, c) | Concept::Forall(_, c) => 1 + c.depth(),
        }
    }

    /// Whether `self` is in ALE: no disjunction, negation only on names, and
    /// no `Top`/`Bottom` under a negation.
    pub fn is_ale(&self) -> bool {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) => true,
            Concept::Not(c) => matches!(**c, Concept::Atomic(_)),
            Concept::Or(_) => false,
            Concept::And(cs) => cs.iter().all(Concept::is_ale),
            Concept::Exists(_, c) | Concept::Forall(_, c) => c.is_ale(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Concept::Or(_) => 1,
            Concept::And(_) => 2,
            Concept::Not(_) | Concept::Exists(..) | Concept::Forall(..) => 3,
            Concept::Top | Concept::Bottom | Concept::Atomic(_) => 4,
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Prints the ASCII concrete syntax (`and`, `or`, `not`, `some r.C`,
/// `all r.C`, `top`, `bottom`) with the minimal parentheses.
impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Concept::Top => f.write_str("top"),
            Concept::Bottom => f.write_str("bottom"),
            Concept::Atomic(n) => f.write_str(n),
            Concept::Not(c) => {
                f.write_str("not ")?;
                c.fmt_operand(f, 3)
            }
            Concept::And(cs) | Concept::Or(cs) => {
                let (sep, min) = if matches!(self, Concept::And(_)) {
                    (" and ", 3)
                } else {
                    (" or ", 2)
                };
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    c.fmt_operand(f, min)?;
                }
                Ok(())
            }
            Concept::Exists(r, c) => {
                write!(f, "some {r}.")?;
                c.fmt_operand(f, 3)
            }
            Concept::Forall(r, c) => {
                write!(f, "all {r}.")?;
                c.fmt_operand(f, 3)
            }
        }
    }
}

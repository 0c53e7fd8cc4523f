//! Brute-force reference implementations over plain bitmasks. Nothing here
//! calls into the closure, lectic or tableau code under test.

use std::collections::BTreeMap;

use kbcomplete::dl::{Concept, Interpretation};
use kbcomplete::fca::{AttributeSet, FormalContext, Implication};

pub fn mask_of(set: &AttributeSet) -> u64 {
    set.iter().fold(0, |m, i| m | 1 << i)
}

pub fn set_of(n: usize, mask: u64) -> AttributeSet {
    AttributeSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1))
}

pub fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

/// A complete context as one bitmask row per object.
#[derive(Clone, Debug)]
pub struct BitContext {
    pub n: usize,
    pub rows: Vec<u64>,
}

impl BitContext {
    pub fn of(ctx: &FormalContext) -> Self {
        let n = ctx.attributes().len();
        let rows = (0..ctx.objects().len())
            .map(|g| (0..n).filter(|&m| ctx.incidence(g, m)).fold(0, |r, m| r | 1 << m))
            .collect();
        Self { n, rows }
    }

    pub fn full(&self) -> u64 {
        full_mask(self.n)
    }

    /// `x''`: the attributes shared by every object having all of `x`.
    pub fn closure(&self, x: u64) -> u64 {
        self.rows.iter().filter(|&&r| x & !r == 0).fold(self.full(), |a, r| a & r)
    }

    pub fn holds(&self, premise: u64, conclusion: u64) -> bool {
        conclusion & !self.closure(premise) == 0
    }

    pub fn closed_sets(&self) -> Vec<u64> {
        (0..=self.full()).filter(|&x| self.closure(x) == x).collect()
    }

    /// Pseudo-intents, found by increasing cardinality straight from the
    /// recursive definition.
    pub fn pseudo_intents(&self) -> Vec<u64> {
        let mut candidates: Vec<u64> = (0..=self.full()).collect();
        candidates.sort_by_key(|x| (x.count_ones(), *x));
        let mut found: Vec<u64> = Vec::new();
        for x in candidates {
            if self.closure(x) == x {
                continue;
            }
            let respects = found
                .iter()
                .all(|&q| !(q & !x == 0 && q != x) || self.closure(q) & !x == 0);
            if respects {
                found.push(x);
            }
        }
        found
    }
}

/// `a` lectically precedes `b`: the first attribute (by rank) on which they
/// differ belongs to `b`.
pub fn lectic_less(a: u64, b: u64, by_rank: &[usize]) -> bool {
    let d = a ^ b;
    by_rank
        .iter()
        .find(|&&m| d >> m & 1 == 1)
        .is_some_and(|&m| b >> m & 1 == 1)
}

pub fn imp_masks(imps: &[Implication]) -> Vec<(u64, u64)> {
    imps.iter().map(|i| (mask_of(&i.premise), mask_of(&i.conclusion))).collect()
}

/// Naive fixpoint closure under implications.
pub fn imp_closure(imps: &[(u64, u64)], seed: u64) -> u64 {
    let mut x = seed;
    loop {
        let next = imps.iter().filter(|(p, _)| p & !x == 0).fold(x, |a, (_, c)| a | c);
        if next == x {
            return x;
        }
        x = next;
    }
}

/// A finite interpretation over at most 64 elements with bitmask extensions.
#[derive(Clone, Debug, Default)]
pub struct BitModel {
    pub size: usize,
    pub concepts: BTreeMap<String, u64>,
    /// Per role, the successor mask of every element.
    pub roles: BTreeMap<String, Vec<u64>>,
}

impl BitModel {
    pub fn of(interp: &Interpretation) -> Self {
        assert!(interp.len() <= 64, "model too large for the bitmask oracle");
        let concepts = interp
            .concepts()
            .iter()
            .map(|(n, ext)| (n.clone(), ext.iter().fold(0, |m, &e| m | 1 << e)))
            .collect();
        let roles = interp
            .roles()
            .iter()
            .map(|(r, edges)| {
                let mut succ = vec![0u64; interp.len()];
                for &(a, b) in edges {
                    succ[a] |= 1 << b;
                }
                (r.clone(), succ)
            })
            .collect();
        Self {
            size: interp.len(),
            concepts,
            roles,
        }
    }

    pub fn full(&self) -> u64 {
        full_mask(self.size)
    }

    pub fn eval(&self, c: &Concept) -> u64 {
        match c {
            Concept::Top => self.full(),
            Concept::Bottom => 0,
            Concept::Atomic(n) => self.concepts.get(n).copied().unwrap_or(0),
            Concept::Not(d) => self.full() & !self.eval(d),
            Concept::And(cs) => cs.iter().fold(self.full(), |a, d| a & self.eval(d)),
            Concept::Or(cs) => cs.iter().fold(0, |a, d| a | self.eval(d)),
            Concept::Exists(r, d) => {
                let inner = self.eval(d);
                self.elements_where(r, |succ| succ & inner != 0)
            }
            Concept::Forall(r, d) => {
                let inner = self.eval(d);
                self.elements_where(r, |succ| succ & !inner == 0)
            }
        }
    }

    fn elements_where(&self, role: &str, test: impl Fn(u64) -> bool) -> u64 {
        let succ = self.roles.get(role);
        (0..self.size)
            .filter(|&x| test(succ.map_or(0, |s| s[x])))
            .fold(0, |m, x| m | 1 << x)
    }

    pub fn models_gcis(&self, gcis: &[(Concept, Concept)]) -> bool {
        gcis.iter().all(|(sub, sup)| self.eval(sub) & !self.eval(sup) == 0)
    }
}

/// Search every interpretation of `names` and one `role` with up to
/// `max_size` elements for a model of `gcis` in which `c` is non-empty.
pub fn brute_force_model(
    names: &[&str],
    role: &str,
    max_size: usize,
    gcis: &[(Concept, Concept)],
    c: &Concept,
) -> Option<BitModel> {
    for size in 1..=max_size {
        let concept_bits = names.len() * size;
        let role_bits = size * size;
        for labels in 0u64..1 << concept_bits {
            let concepts: BTreeMap<String, u64> = names
                .iter()
                .enumerate()
                .map(|(k, n)| (n.to_string(), labels >> (k * size) & full_mask(size)))
                .collect();
            for edges in 0u64..1 << role_bits {
                let succ = (0..size).map(|x| edges >> (x * size) & full_mask(size)).collect();
                let model = BitModel {
                    size,
                    concepts: concepts.clone(),
                    roles: BTreeMap::from([(role.to_string(), succ)]),
                };
                if model.eval(c) != 0 && model.models_gcis(gcis) {
                    return Some(model);
                }
            }
        }
    }
    None
}

//! Seeded random inputs.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use kbcomplete::dl::{ABox, Concept, Interpretation, KnowledgeBase, TBox};
use kbcomplete::fca::{AttributeSet, FormalContext};
use kbcomplete::partial::{PartialContext, PartialObjectDescription};

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_row(rng: &mut ChaCha8Rng, n: usize, density: f64) -> AttributeSet {
    AttributeSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(density)))
}

/// A context with `objects` rows over attributes `a0..`.
pub fn random_context(rng: &mut ChaCha8Rng, objects: usize, attributes: usize) -> FormalContext {
    let density = rng.gen_range(0.2..0.8);
    let rows = (0..objects)
        .map(|g| (format!("g{g}"), random_row(rng, attributes, density)))
        .collect::<Vec<_>>();
    let mut ctx = FormalContext::new((0..attributes).map(|m| format!("a{m}")).collect()).unwrap();
    for (name, row) in rows {
        ctx.add_object(name, row).unwrap();
    }
    ctx
}

pub fn permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Distinct names drawn from a small alphabet that includes spaces and
/// punctuation, for the line-oriented context formats.
pub fn distinct_labels(rng: &mut ChaCha8Rng, count: usize) -> Vec<String> {
    const CHARS: &[u8] = b"abcXYZ019 _-.()+?";
    let mut out: Vec<String> = Vec::with_capacity(count);
    while out.len() < count {
        let len = rng.gen_range(1..8);
        let mut s: String = (0..len).map(|_| CHARS[rng.gen_range(0..CHARS.len())] as char).collect();
        // leading letter keeps the name from looking like a count line
        s.insert(0, 'n');
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

pub fn random_labelled_context(rng: &mut ChaCha8Rng) -> FormalContext {
    let (g, m) = (rng.gen_range(0..7), rng.gen_range(0..7));
    let mut ctx = FormalContext::new(distinct_labels(rng, m)).unwrap();
    for name in distinct_labels(rng, g) {
        let row = random_row(rng, m, 0.5);
        ctx.add_object(name, row).unwrap();
    }
    ctx
}

pub fn random_partial_context(rng: &mut ChaCha8Rng) -> PartialContext {
    let (g, m) = (rng.gen_range(0..7), rng.gen_range(0..7));
    let mut pctx = PartialContext::new(distinct_labels(rng, m)).unwrap();
    for name in distinct_labels(rng, g) {
        let (mut pos, mut neg) = (AttributeSet::empty(m), AttributeSet::empty(m));
        for a in 0..m {
            match rng.gen_range(0..3) {
                0 => pos.insert(a),
                1 => neg.insert(a),
                _ => false,
            };
        }
        pctx.add_pod(PartialObjectDescription::new(name, pos, neg).unwrap()).unwrap();
    }
    pctx
}

pub fn random_concept(rng: &mut ChaCha8Rng, depth: usize, names: &[&str], roles: &[&str]) -> Concept {
    let leaf = |rng: &mut ChaCha8Rng| match rng.gen_range(0..12) {
        0 => Concept::Top,
        1 => Concept::Bottom,
        2..=7 => Concept::atomic(*names.choose(rng).unwrap()),
        _ => Concept::not(Concept::atomic(*names.choose(rng).unwrap())),
    };
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng);
    }
    let sub = |rng: &mut ChaCha8Rng| random_concept(rng, depth - 1, names, roles);
    match rng.gen_range(0..6) {
        0 => Concept::not(sub(rng)),
        1 => {
            let k = rng.gen_range(2..4);
            Concept::and((0..k).map(|_| sub(rng)).collect::<Vec<_>>())
        }
        2 => {
            let k = rng.gen_range(2..4);
            Concept::or((0..k).map(|_| sub(rng)).collect::<Vec<_>>())
        }
        3 => Concept::exists(*roles.choose(rng).unwrap(), sub(rng)),
        4 => Concept::forall(*roles.choose(rng).unwrap(), sub(rng)),
        _ => leaf(rng),
    }
}

/// A knowledge base with acyclic definitions, GCIs and both kinds of
/// assertions.
pub fn random_kb(rng: &mut ChaCha8Rng) -> KnowledgeBase {
    const PRIMITIVES: [&str; 4] = ["P0", "P1", "Pa_b", "Q-1"];
    const ROLES: [&str; 2] = ["r", "has-part"];
    let mut tbox = TBox::new();
    let mut known: Vec<String> = PRIMITIVES.iter().map(|s| s.to_string()).collect();
    for d in 0..rng.gen_range(0..4) {
        let refs: Vec<&str> = known.iter().map(String::as_str).collect();
        let body = random_concept(rng, 2, &refs, &ROLES);
        let name = format!("D{d}");
        tbox.define(name.clone(), body).unwrap();
        known.push(name);
    }
    let refs: Vec<&str> = known.iter().map(String::as_str).collect();
    for _ in 0..rng.gen_range(0..3) {
        let (sub, sup) = (random_concept(rng, 2, &refs, &ROLES), random_concept(rng, 2, &refs, &ROLES));
        tbox.add_gci(sub, sup);
    }
    let mut abox = ABox::new();
    let individuals = ["a", "b2", "Sea_x", "c-d"];
    for _ in 0..rng.gen_range(0..5) {
        let c = random_concept(rng, 1, &refs, &ROLES);
        abox.assert_concept(c, *individuals.choose(rng).unwrap());
    }
    for _ in 0..rng.gen_range(0..3) {
        abox.assert_role(
            *ROLES.choose(rng).unwrap(),
            *individuals.choose(rng).unwrap(),
            *individuals.choose(rng).unwrap(),
        );
    }
    KnowledgeBase::new(tbox, abox)
}

/// An interpretation of `names` (and role `r`) over `size` elements.
pub fn random_interpretation(rng: &mut ChaCha8Rng, size: usize, names: &[&str]) -> Interpretation {
    let mut interp = Interpretation::with_size(size);
    for n in names {
        interp.declare_concept(*n);
        for e in 0..size {
            if rng.gen_bool(0.5) {
                interp.add_to_concept(*n, e).unwrap();
            }
        }
    }
    for a in 0..size {
        for b in 0..size {
            if rng.gen_bool(0.3) {
                interp.add_edge("r", a, b).unwrap();
            }
        }
    }
    interp
}

/// Replace, insert or delete a few characters.
pub fn mutate(rng: &mut ChaCha8Rng, text: &str, alphabet: &[char]) -> String {
    let mut chars: Vec<char> = text.chars().collect();
    for _ in 0..rng.gen_range(1..4) {
        let at = rng.gen_range(0..=chars.len());
        match rng.gen_range(0..3) {
            0 if at < chars.len() => chars[at] = *alphabet.choose(rng).unwrap(),
            1 if at < chars.len() => {
                chars.remove(at);
            }
            _ => chars.insert(at, *alphabet.choose(rng).unwrap()),
        }
    }
    chars.into_iter().collect()
}

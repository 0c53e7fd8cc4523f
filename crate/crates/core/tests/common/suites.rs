//! Property suites shared by the per-area test targets and the acceptance
//! runner. Each suite panics on the first violation and otherwise returns a
//! one-line summary.

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use kbcomplete::completion::{Answer, CompletionError, CompletionSession, Event, OracleExpert, SessionQuestion};
use kbcomplete::dl::{parse_concept, ABox, Concept, Interpretation, KnowledgeBase, TBox};
use kbcomplete::fca::{closed_sets, next_closed, stem_base_with_order, AttributeOrder, FormalContext};
use kbcomplete::io::{read_cxt, read_ontology, read_pcxt, write_cxt, write_ontology, write_pcxt};
use kbcomplete::lattice::{build_hierarchy, gcs, lcs_ale, min_subsuming_conjunction, LiteralConjunction};
use kbcomplete::partial::PartialContext;
use kbcomplete::reasoner::{Reasoner, Verdict, DEFAULT_NODE_BUDGET};

use super::gen;
use super::oracle::{imp_closure, imp_masks, lectic_less, mask_of, set_of, BitContext, BitModel};

pub const NAMES: [&str; 5] = ["AsianCountry", "EUmember", "EuropeanCountry", "G8member", "MediterraneanCountry"];
const SHORT: [&str; 5] = ["Asian", "EU", "European", "G8", "Mediterranean"];

pub const TABLE1: [(&str, &str); 6] = [
    ("Syria", "+---+"),
    ("Turkey", "+-+-+"),
    ("France", "-++++"),
    ("Germany", "-+++-"),
    ("Switzerland", "--+--"),
    ("USA", "---+-"),
];

pub const TABLE3_EXTRA: [(&str, &str); 4] = [
    ("Russia", "+-++-"),
    ("Cyprus", "++--+"),
    ("Spain", "-++-+"),
    ("Japan", "+--+-"),
];

/// The reference question sequence for the identity order, in short names,
/// with counterexamples.
const REFERENCE_RUN: [(&[&str], &[&str], Option<&str>); 8] = [
    (&["G8", "Mediterranean"], &["EU", "European"], None),
    (&["European", "G8"], &["EU"], Some("Russia")),
    (&["EU"], &["European", "G8"], Some("Cyprus")),
    (&["EU", "G8"], &["European"], None),
    (&["EU", "European"], &["G8"], Some("Spain")),
    (&["Asian", "G8"], &["European"], Some("Japan")),
    (&["Asian", "EU"], &["Mediterranean"], None),
    (&["Asian", "EU", "European", "Mediterranean"], &["G8"], None),
];

const FOUR_GCIS: [(&str, &str); 4] = [
    ("G8member and MediterraneanCountry", "EUmember and EuropeanCountry"),
    ("EUmember and G8member", "EuropeanCountry"),
    ("AsianCountry and EUmember", "MediterraneanCountry"),
    ("AsianCountry and EUmember and EuropeanCountry and MediterraneanCountry", "G8member"),
];

pub fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn cells_mask(cells: &str) -> u64 {
    cells.chars().enumerate().filter(|(_, c)| *c == '+').fold(0, |m, (i, _)| m | 1 << i)
}

fn table_rows(rows: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    rows.iter().map(|(g, c)| (g.to_string(), c.to_string())).collect()
}

/// Every pod as `(id, cells)` with `+`, `-` and `?` cells.
pub fn pod_rows(pctx: &PartialContext) -> Vec<(String, String)> {
    pctx.pods()
        .iter()
        .map(|p| {
            let cells = (0..pctx.universe())
                .map(|a| match (p.positives.contains(a), p.negatives.contains(a)) {
                    (true, _) => '+',
                    (_, true) => '-',
                    _ => '?',
                })
                .collect();
            (p.id.clone(), cells)
        })
        .collect()
}

fn names_mask(names: &[String], of: &[String]) -> u64 {
    of.iter()
        .map(|n| names.iter().position(|m| m == n).expect("question over session names"))
        .fold(0, |m, i| m | 1 << i)
}

fn names_of(names: &[String], mask: u64) -> Vec<String> {
    (0..names.len()).filter(|i| mask >> i & 1 == 1).map(|i| names[i].clone()).collect()
}

/// Whether some pod of the session refutes `premise -> conclusion`.
fn refuted(s: &CompletionSession, premise: u64, conclusion: u64) -> bool {
    s.context()
        .pods()
        .iter()
        .any(|p| premise & !mask_of(&p.positives) == 0 && conclusion & mask_of(&p.negatives) != 0)
}

/// `⊓premise ⊑ ⊓conclusion` under the session's current TBox.
fn tbox_entails(s: &CompletionSession, premise: u64, conclusion: u64) -> bool {
    let conj = |mask| Concept::and(names_of(s.names(), mask).into_iter().map(Concept::atomic).collect::<Vec<_>>());
    s.reasoner().subsumes(&conj(premise), &conj(conclusion)).unwrap()
}

/// The question is non-trivial, not refuted by the context and follows
/// neither from the accepted implications nor from the TBox.
fn assert_undecided(s: &CompletionSession, q: &SessionQuestion) {
    let names = s.names().to_vec();
    let (p, c) = (names_mask(&names, &q.premise), names_mask(&names, &q.conclusion));
    assert!(c != 0 && p & c == 0, "trivial question {q}");
    assert!(!refuted(s, p, c), "question {q} is already refuted");
    let acc = imp_masks(s.accepted());
    assert!(c & !imp_closure(&acc, p) != 0, "question {q} already follows");
    assert!(!s.follows(&q.premise, &q.conclusion).unwrap());
    assert!(!tbox_entails(s, p, c), "question {q} is entailed by the TBox");
}

/// Answer every question from `oracle`, checking each is undecided when asked.
pub fn drive(s: &mut CompletionSession, oracle: &OracleExpert, max_steps: usize) -> Vec<(SessionQuestion, Answer)> {
    let mut log = Vec::new();
    while let Some(q) = s.current_question().unwrap() {
        assert_undecided(s, &q);
        let a = oracle.answer(s, &q);
        s.answer(q.id, a.clone()).unwrap_or_else(|e| panic!("answer to {q} rejected: {e}"));
        log.push((q, a));
        assert!(log.len() <= max_steps, "no termination after {max_steps} answers");
    }
    log
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

/// Exhaustive scan: for every premise and every single conclusion attribute,
/// the implication follows from the accepted set iff it holds in `model`,
/// and otherwise the final context refutes it. Accepted implications hold.
fn assert_complete(s: &CompletionSession, model: &BitContext, check_tbox: bool) {
    let acc = imp_masks(s.accepted());
    for &(p, c) in &acc {
        assert!(model.holds(p, c), "accepted {p:b} -> {c:b} fails in the model");
    }
    for p in 0..=model.full() {
        let closed = imp_closure(&acc, p);
        for m in (0..model.n).filter(|m| p >> m & 1 == 0) {
            let holds = model.holds(p, 1 << m);
            assert_eq!(closed >> m & 1 == 1, holds, "premise {p:b}, attribute {m}");
            if !holds {
                assert!(refuted(s, p, 1 << m), "invalid {p:b} -> {m} is not refuted");
            }
            if check_tbox {
                assert_eq!(tbox_entails(s, p, 1 << m), holds, "TBox entailment of {p:b} -> {m}");
            }
        }
    }
}

fn countries_kb() -> KnowledgeBase {
    read_ontology(&fixture("countries.onto")).unwrap()
}

fn table3_context() -> FormalContext {
    let mut ctx = FormalContext::new(NAMES.iter().map(|s| s.to_string()).collect()).unwrap();
    for (g, cells) in TABLE1.iter().chain(&TABLE3_EXTRA) {
        ctx.add_object(g.to_string(), set_of(5, cells_mask(cells))).unwrap();
    }
    ctx
}

fn short(names: &[String]) -> Vec<String> {
    names
        .iter()
        .map(|n| SHORT[NAMES.iter().position(|m| m == n).unwrap()].to_string())
        .collect()
}

/// Oracle completion of the countries KB under every attribute order.
pub fn countries_suite() -> String {
    let names: Vec<String> = NAMES.iter().map(|s| s.to_string()).collect();
    let oracle = OracleExpert::from_context(table3_context());
    let model = BitContext::of(oracle.context());
    let table3 = table_rows(&[&TABLE1[..], &TABLE3_EXTRA[..]].concat());

    let start = CompletionSession::start(countries_kb(), names.clone(), None, DEFAULT_NODE_BUDGET).unwrap();
    let table1: Vec<_> = TABLE1.iter().map(|(g, c)| (g.to_string(), c.to_string())).collect();
    assert_eq!(pod_rows(start.context()), table1);

    let (mut multiset_matches, mut exact) = (0, false);
    for perm in permutations(5) {
        let order: Vec<String> = perm.iter().map(|&i| names[i].clone()).collect();
        let mut s = CompletionSession::start(countries_kb(), names.clone(), Some(order), DEFAULT_NODE_BUDGET).unwrap();
        let log = drive(&mut s, &oracle, 64);
        assert!(s.is_complete());
        let rows: BTreeSet<_> = pod_rows(s.context()).into_iter().collect();
        assert_eq!(rows, table3, "final context under order {perm:?}");
        for (sub, sup) in FOUR_GCIS {
            let (sub, sup) = (parse_concept(sub).unwrap(), parse_concept(sup).unwrap());
            assert!(s.reasoner().subsumes(&sub, &sup).unwrap(), "{sub} => {sup} under {perm:?}");
        }
        assert_complete(&s, &model, perm == [0, 1, 2, 3, 4]);

        let yes = log.iter().filter(|(_, a)| *a == Answer::Yes).count();
        if (yes, log.len() - yes) == (4, 4) {
            multiset_matches += 1;
        }
        if perm == [0, 1, 2, 3, 4] {
            let got: Vec<_> = log
                .iter()
                .map(|(q, a)| {
                    let ce = match a {
                        Answer::Yes => None,
                        Answer::No { individual, .. } => Some(individual.clone()),
                    };
                    (short(&q.premise), short(&q.conclusion), ce)
                })
                .collect();
            let want: Vec<_> = REFERENCE_RUN
                .iter()
                .map(|(p, c, ce)| {
                    let v = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
                    (v(p), v(c), ce.map(str::to_string))
                })
                .collect();
            exact = got == want;
        }
    }
    assert!(multiset_matches > 0, "no order matches the reference yes/no multiset");
    format!(
        "120 orders reach the completed context and entail the four GCIs; {multiset_matches} match the 4 yes / 4 no multiset; \
         declared order reproduces the reference sequence: {exact}"
    )
}

/// The good common subsumer worked example.
pub fn gcs_suite() -> String {
    let kb = read_ontology(&fixture("family.onto")).unwrap();
    let names: Vec<String> = kb.tbox.definitions().iter().map(|(n, _)| n.clone()).collect();
    let r = Reasoner::new(kb.tbox.clone()).unwrap();
    let h = build_hierarchy(&kb.tbox, &names).unwrap();
    let c = parse_concept("some has-child.(NoSon and DaughterHappyDoctor)").unwrap();
    let d = parse_concept("some has-child.(NoDaughter and SonRichDoctor)").unwrap();
    let expected = parse_concept("some has-child.(ChildrenDoctor and DaughterHappyDoctor and SonRichDoctor)").unwrap();

    let g = gcs(&r, &h, &c, &d).unwrap();
    assert!(r.subsumes(&g, &expected).unwrap() && r.subsumes(&expected, &g).unwrap(), "gcs {g}");
    assert!(r.subsumes(&c, &g).unwrap() && r.subsumes(&d, &g).unwrap());

    let lcs = lcs_ale(&c, &d).unwrap();
    assert_eq!(lcs, parse_concept("some has-child.top").unwrap());

    let left = min_subsuming_conjunction(&h, &LiteralConjunction::new(["NoSon", "DaughterHappyDoctor"], Vec::<&str>::new())).unwrap();
    assert_eq!(
        left,
        LiteralConjunction::new(["ChildrenDoctor", "DaughterHappyDoctor", "NoSon", "SonRichDoctor"], Vec::<&str>::new())
    );
    let right = min_subsuming_conjunction(&h, &LiteralConjunction::new(["NoDaughter", "SonRichDoctor"], Vec::<&str>::new())).unwrap();
    let least = h.least_common_conjunction(&left, &right).unwrap();
    assert_eq!(
        least,
        LiteralConjunction::new(["ChildrenDoctor", "DaughterHappyDoctor", "SonRichDoctor"], Vec::<&str>::new())
    );
    format!("gcs = {g}, lcs = {lcs}, least conjunction = {least}")
}

/// Subsumption and three-valued instance checks on the geography KB, with
/// every witness model verified independently.
pub fn geography_suite() -> String {
    let kb = read_ontology(&fixture("geography.onto")).unwrap();
    let r = Reasoner::new(kb.tbox.clone()).unwrap();
    let c = |s: &str| parse_concept(s).unwrap();
    let unfold = |s: &str| kb.tbox.unfold(&c(s));
    let country = c("Country");
    assert!(r.subsumes(&c("LandlockedCountry"), &country).unwrap());
    assert!(r.subsumes(&c("OceanCountry"), &country).unwrap());
    assert!(!r.subsumes(&country, &c("OceanCountry")).unwrap());

    let check_model = |m: &Interpretation, member: bool, concept: &str| {
        assert!(m.models_tbox(&kb.tbox), "witness violates the TBox");
        let bits = BitModel::of(m);
        for (assertion, ind) in kb.abox.concept_assertions() {
            if let Some(e) = m.individual(ind) {
                assert!(bits.eval(&kb.tbox.unfold(assertion)) >> e & 1 == 1, "{assertion}({ind}) fails");
            }
        }
        let e = m.individual("Portugal").expect("Portugal is interpreted");
        assert_eq!(bits.eval(&unfold(concept)) >> e & 1 == 1, member, "{concept}(Portugal)");
    };

    let ocean = r.instance_check(&kb.abox, "Portugal", &c("OceanCountry")).unwrap();
    assert_eq!(ocean.verdict, Verdict::Entailed);
    assert!(ocean.model_without.is_none());
    check_model(ocean.model_with.as_ref().expect("model with"), true, "OceanCountry");

    let land = r.instance_check(&kb.abox, "Portugal", &c("LandlockedCountry")).unwrap();
    assert_eq!(land.verdict, Verdict::Unknown);
    check_model(land.model_with.as_ref().expect("model with"), true, "LandlockedCountry");
    check_model(land.model_without.as_ref().expect("model without"), false, "LandlockedCountry");

    let w = r.satisfiable_witness(&c("LandlockedCountry")).unwrap().expect("satisfiable");
    assert!(w.model.models_tbox(&kb.tbox));
    assert!(BitModel::of(&w.model).eval(&unfold("LandlockedCountry")) >> w.element & 1 == 1);
    "Landlocked/Ocean ⊑ Country; Portugal: OceanCountry entailed, LandlockedCountry unknown (witnesses checked)".into()
}

/// Next closure and the stem base against brute force.
pub fn fca_suite(seed: u64, contexts: usize) -> String {
    let mut rng = gen::rng(seed);
    let mut closed_total = 0;
    let mut pseudo_total = 0;
    for _ in 0..contexts {
        let (g, m) = (rng.gen_range(0..=6), rng.gen_range(0..=6));
        let ctx = gen::random_context(&mut rng, g, m);
        let bits = BitContext::of(&ctx);
        let by_rank = gen::permutation(&mut rng, m);
        let order = AttributeOrder::from_permutation(by_rank.clone()).unwrap();

        let mut expected = bits.closed_sets();
        expected.sort_by(|&a, &b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if lectic_less(a, b, &by_rank) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        let listed: Vec<u64> = closed_sets(&ctx, &order).unwrap().iter().map(mask_of).collect();
        assert_eq!(listed, expected, "closed sets of {ctx:?} under {by_rank:?}");
        let mut stepped = Vec::new();
        let mut cur = next_closed(&ctx, None, &order).unwrap();
        while let Some(set) = cur {
            stepped.push(mask_of(&set));
            cur = next_closed(&ctx, Some(&set), &order).unwrap();
        }
        assert_eq!(stepped, expected);
        for w in stepped.windows(2) {
            assert!(lectic_less(w[0], w[1], &by_rank));
        }

        let base = stem_base_with_order(&ctx, &order);
        let masks = imp_masks(&base);
        for &(p, c) in &masks {
            assert!(bits.holds(p, c), "unsound {p:b} -> {c:b}");
        }
        for x in 0..=bits.full() {
            assert_eq!(imp_closure(&masks, x), bits.closure(x), "base closure of {x:b}");
        }
        let pseudo = bits.pseudo_intents();
        assert_eq!(base.len(), pseudo.len(), "stem base size of {ctx:?}");
        let premises: BTreeSet<u64> = masks.iter().map(|(p, _)| *p).collect();
        assert_eq!(premises, pseudo.iter().copied().collect());
        closed_total += expected.len();
        pseudo_total += pseudo.len();
    }
    format!("{contexts} contexts: {closed_total} closed sets and {pseudo_total} pseudo-intents matched brute force")
}

/// A random finite model, a censored literal ABox describing some of its
/// elements, sometimes a TBox of valid GCIs, and a random attribute order.
pub struct Scenario {
    pub kb: KnowledgeBase,
    pub names: Vec<String>,
    pub order: Vec<String>,
    pub model: BitContext,
    pub oracle: OracleExpert,
}

pub fn random_scenario(rng: &mut ChaCha8Rng, max_attributes: usize) -> Scenario {
    let n = rng.gen_range(1..=max_attributes);
    let size = rng.gen_range(1..=8);
    let names: Vec<String> = (0..n).map(|i| format!("C{i}")).collect();
    let density = rng.gen_range(0.2..0.8);
    let rows: Vec<u64> = (0..size)
        .map(|_| (0..n).filter(|_| rng.gen_bool(density)).fold(0, |m, a| m | 1 << a))
        .collect();
    let model = BitContext { n, rows };

    let mut interp = Interpretation::with_size(size);
    for (a, name) in names.iter().enumerate() {
        interp.declare_concept(name.clone());
        for (e, row) in model.rows.iter().enumerate() {
            if row >> a & 1 == 1 {
                interp.add_to_concept(name.clone(), e).unwrap();
            }
        }
    }
    let oracle = OracleExpert::from_interpretation(&interp, &names);

    let mut abox = ABox::new();
    let mut described = Vec::new();
    for (e, row) in model.rows.iter().enumerate() {
        if !rng.gen_bool(0.6) {
            continue;
        }
        let ind = interp.element_name(e).to_string();
        for (a, name) in names.iter().enumerate() {
            if rng.gen_bool(0.5) {
                let atom = Concept::atomic(name.clone());
                abox.assert_concept(if row >> a & 1 == 1 { atom } else { Concept::not(atom) }, ind.clone());
            }
        }
        described.push(ind);
    }
    if described.len() >= 2 && rng.gen_bool(0.3) {
        abox.assert_role("r", described[0].clone(), described[1].clone());
    }
    let mut tbox = TBox::new();
    if rng.gen_bool(0.5) {
        for _ in 0..rng.gen_range(1..=2) {
            let p = rng.gen_range(0..=model.full());
            let extra = model.closure(p) & !p;
            if let Some(m) = (0..n).find(|m| extra >> m & 1 == 1) {
                let sub = Concept::and(names_of(&names, p).into_iter().map(Concept::atomic).collect::<Vec<_>>());
                tbox.add_gci(sub, Concept::atomic(names[m].clone()));
            }
        }
    }
    let order = gen::permutation(rng, n).into_iter().map(|i| names[i].clone()).collect();
    Scenario {
        kb: KnowledgeBase::new(tbox, abox),
        names,
        order,
        model,
        oracle,
    }
}

impl Scenario {
    pub fn start(&self) -> CompletionSession {
        CompletionSession::start(self.kb.clone(), self.names.clone(), Some(self.order.clone()), DEFAULT_NODE_BUDGET)
            .unwrap()
    }
}

/// Oracle completion over random models with censored initial pods.
pub fn partial_suite(seed: u64, models: usize) -> String {
    let mut rng = gen::rng(seed);
    let (mut questions, mut with_tbox) = (0, 0);
    for _ in 0..models {
        let sc = random_scenario(&mut rng, 6);
        let mut s = sc.start();
        let initial = s.context().clone();
        let log = drive(&mut s, &sc.oracle, 1 << sc.names.len());
        assert!(s.is_complete());
        assert_complete(&s, &sc.model, true);
        // initial descriptions are only ever refined; every pod describes
        // some element of the model
        for p in initial.pods() {
            let now = s.context().pod(&p.id).expect("pods are never removed");
            assert!(now.refines(p), "pod {} lost information", p.id);
        }
        for p in s.context().pods() {
            let (pos, neg) = (mask_of(&p.positives), mask_of(&p.negatives));
            assert!(
                sc.model.rows.iter().any(|r| pos & !r == 0 && neg & r == 0),
                "pod {} matches no element",
                p.id
            );
        }
        questions += log.len();
        with_tbox += usize::from(!sc.kb.tbox.gcis().is_empty());
    }
    format!("{models} random models ({with_tbox} with background GCIs), {questions} questions, completeness verified exhaustively")
}

struct Scripted {
    postpones_left: usize,
    rng: ChaCha8Rng,
}

impl Scripted {
    fn new(seed: u64) -> Self {
        Self {
            postpones_left: 2,
            rng: gen::rng(seed),
        }
    }

    /// One step of a run: sometimes postpone, otherwise answer from the
    /// oracle. Returns false once complete.
    fn step(&mut self, s: &mut CompletionSession, oracle: &OracleExpert) -> bool {
        let Some(q) = s.current_question().unwrap() else {
            return false;
        };
        if self.postpones_left > 0 && self.rng.gen_bool(0.15) {
            self.postpones_left -= 1;
            let accepted = s.accepted().to_vec();
            let pods = s.context().clone();
            let log = s.log().to_vec();
            s.postpone().unwrap();
            // nothing is lost; restarting may auto-accept entailed questions
            assert_eq!(&s.accepted()[..accepted.len()], accepted, "postpone lost accepted implications");
            for imp in &s.accepted()[accepted.len()..] {
                assert!(tbox_entails(s, mask_of(&imp.premise), mask_of(&imp.conclusion)));
            }
            assert_eq!(s.context(), &pods, "postpone changed the pods");
            assert_eq!(&s.log()[..log.len()], log);
            assert!(matches!(s.log().last(), Some(Event::Reorder { .. })));
        } else {
            let a = oracle.answer(s, &q);
            s.answer(q.id, a).unwrap();
        }
        true
    }
}

/// Pause/resume, undo/redo and postpone mechanics.
pub fn session_suite(seed: u64, points: usize) -> String {
    let mut rng = gen::rng(seed);
    let countries_oracle = OracleExpert::from_context(table3_context());
    let mut redo_checks = 0;
    for k in 0..points {
        let sc = if k % 5 == 0 {
            let names: Vec<String> = NAMES.iter().map(|s| s.to_string()).collect();
            let order = gen::permutation(&mut rng, 5).into_iter().map(|i| names[i].clone()).collect();
            Scenario {
                kb: countries_kb(),
                names,
                order,
                model: BitContext::of(countries_oracle.context()),
                oracle: countries_oracle.clone(),
            }
        } else {
            random_scenario(&mut rng, 5)
        };
        let script_seed = rng.gen();

        let mut full = sc.start();
        let mut script = Scripted::new(script_seed);
        let mut steps = 0;
        while script.step(&mut full, &sc.oracle) {
            steps += 1;
        }

        let pause_at = rng.gen_range(0..=steps);
        let mut s = sc.start();
        let mut script = Scripted::new(script_seed);
        for i in 0.. {
            if i == pause_at {
                let snap = s.pause().unwrap();
                assert!(matches!(s.current_question(), Err(CompletionError::Paused)));
                s = CompletionSession::resume(&snap, DEFAULT_NODE_BUDGET).unwrap();
                assert_eq!(s.snapshot(), snap);
            }
            if !script.step(&mut s, &sc.oracle) {
                break;
            }
        }
        assert_eq!(write_ontology(s.kb()), write_ontology(full.kb()), "point {k}");
        assert_eq!(s.kb(), full.kb());
        assert_eq!(s.snapshot(), full.snapshot());

        // undo-then-redo of every event of every fourth run
        if k % 4 == 0 {
            let mut s = sc.start();
            while let Some(q) = s.current_question().unwrap() {
                let before = s.snapshot();
                let a = sc.oracle.answer(&s, &q);
                s.answer(q.id, a.clone()).unwrap();
                let after = s.snapshot();
                let report = s.undo(s.log().len() - 1).unwrap();
                assert!(report.dropped.is_empty());
                assert_eq!(s.snapshot(), before, "undo is not exact");
                assert_eq!(s.current_question().unwrap().as_ref(), Some(&q));
                s.answer(q.id, a).unwrap();
                assert_eq!(s.snapshot(), after, "redo is not exact");
                redo_checks += 1;
            }
        }
    }

    // two attributes, nothing known: postponing the first question hands
    // back the same question
    let mut repeats = 0;
    for names in [["A", "B"], ["B", "A"]] {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let mut s = CompletionSession::start(KnowledgeBase::default(), names, None, DEFAULT_NODE_BUDGET).unwrap();
        let q = s.current_question().unwrap().unwrap();
        s.postpone().unwrap();
        let again = s.current_question().unwrap().unwrap();
        if (&again.premise, &again.conclusion) == (&q.premise, &q.conclusion) {
            repeats += 1;
        }
        assert!(again.id > q.id);
    }
    assert_eq!(repeats, 2, "the degenerate session should repeat its question");
    format!("{points} pause points matched uninterrupted runs; {redo_checks} undo/redo round-trips bit-identical; postpone preserved state")
}

fn check_text_fixpoint<T: PartialEq + std::fmt::Debug>(
    parsed: T,
    write: impl Fn(&T) -> String,
    read: impl Fn(&str) -> Option<T>,
) {
    let canonical = write(&parsed);
    let again = read(&canonical).expect("canonical text parses");
    assert_eq!(again, parsed);
    assert_eq!(write(&again), canonical);
}

/// Canonical round-trips on generated and mutated inputs, and the table
/// fixtures.
pub fn format_suite(seed: u64, cases: usize) -> String {
    let mut rng = gen::rng(seed);
    let (mut fuzz_parsed, mut fuzz_total) = (0, 0);
    let cxt_alphabet: Vec<char> = "X.x\nB1 0n".chars().collect();
    let pcxt_alphabet: Vec<char> = "+-?\nP1 0n".chars().collect();
    let onto_alphabet: Vec<char> = " ()\n.:=>#andornotsomeallP0r,".chars().collect();

    for _ in 0..cases {
        let ctx = gen::random_labelled_context(&mut rng);
        let text = write_cxt(&ctx);
        assert_eq!(read_cxt(&text).unwrap(), ctx);
        check_text_fixpoint(ctx, write_cxt, |t| read_cxt(t).ok());
        let mutated = gen::mutate(&mut rng, &text, &cxt_alphabet);
        fuzz_total += 1;
        if let Ok(parsed) = read_cxt(&mutated) {
            fuzz_parsed += 1;
            check_text_fixpoint(parsed, write_cxt, |t| read_cxt(t).ok());
        }

        let pctx = gen::random_partial_context(&mut rng);
        let text = write_pcxt(&pctx);
        assert_eq!(read_pcxt(&text).unwrap(), pctx);
        check_text_fixpoint(pctx, write_pcxt, |t| read_pcxt(t).ok());
        let mutated = gen::mutate(&mut rng, &text, &pcxt_alphabet);
        fuzz_total += 1;
        if let Ok(parsed) = read_pcxt(&mutated) {
            fuzz_parsed += 1;
            check_text_fixpoint(parsed, write_pcxt, |t| read_pcxt(t).ok());
        }

        let kb = gen::random_kb(&mut rng);
        let text = write_ontology(&kb);
        assert_eq!(read_ontology(&text).unwrap(), kb, "{text}");
        check_text_fixpoint(kb, write_ontology, |t| read_ontology(t).ok());
        let mutated = gen::mutate(&mut rng, &text, &onto_alphabet);
        fuzz_total += 1;
        if let Ok(parsed) = read_ontology(&mutated) {
            fuzz_parsed += 1;
            check_text_fixpoint(parsed, write_ontology, |t| read_ontology(t).ok());
        }
    }

    let attrs: Vec<String> = NAMES.iter().map(|s| s.to_string()).collect();
    let table1_text = fixture("table1.pcxt");
    let t1 = read_pcxt(&table1_text).unwrap();
    assert_eq!(t1.attributes(), attrs.as_slice());
    let want: Vec<(String, String)> = TABLE1.iter().map(|(g, c)| (g.to_string(), c.to_string())).collect();
    assert_eq!(pod_rows(&t1), want);
    assert_eq!(write_pcxt(&t1), table1_text);

    let table3: Vec<(String, String)> = TABLE1
        .iter()
        .chain(&TABLE3_EXTRA)
        .map(|(g, c)| (g.to_string(), c.to_string()))
        .collect();
    let t3_text = fixture("table3.pcxt");
    let t3 = read_pcxt(&t3_text).unwrap();
    assert_eq!(t3.attributes(), attrs.as_slice());
    assert_eq!(pod_rows(&t3), table3);
    assert_eq!(write_pcxt(&t3), t3_text);

    let cxt_text = fixture("table3.cxt");
    let full = read_cxt(&cxt_text).unwrap();
    assert_eq!(full.attributes(), attrs.as_slice());
    let rows: Vec<(String, String)> = full
        .objects()
        .iter()
        .zip(full.rows())
        .map(|(g, r)| (g.clone(), (0..5).map(|a| if r.contains(a) { '+' } else { '-' }).collect()))
        .collect();
    assert_eq!(rows, table3);
    assert_eq!(write_cxt(&full), cxt_text);

    format!(
        "{cases} contexts, partial contexts and ontologies round-tripped; {fuzz_parsed}/{fuzz_total} mutated inputs parsed and \
         reached a canonical fixpoint; table fixtures match"
    )
}

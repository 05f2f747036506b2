//! Deterministic test corpus: a fixed sample program used across the
//! tests and docs, plus a seeded random-program generator for the
//! equivalence and benchmark suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::program::{AtomId, Program, Rule, RuleKind};

/// Six normal rules over atoms a,b,c,d (ids 2..=5) with one two-atom
/// component; its answer sets are {a,b,d} and {c}.
pub fn sample_program() -> Program {
    let mut p = Program::new(5);
    p.atoms.set_name(2, "a");
    p.atoms.set_name(3, "b");
    p.atoms.set_name(4, "c");
    p.atoms.set_name(5, "d");
    p.add_rule(Rule::normal(2, vec![3, 4], vec![])); // a :- b, c.
    p.add_rule(Rule::normal(2, vec![5], vec![])); // a :- d.
    p.add_rule(Rule::normal(3, vec![2], vec![5])); // b :- a, not d.
    p.add_rule(Rule::normal(3, vec![2], vec![4])); // b :- a, not c.
    p.add_rule(Rule::normal(4, vec![], vec![5])); // c :- not d.
    p.add_rule(Rule::normal(5, vec![], vec![4])); // d :- not c.
    p
}

/// [`sample_program`] in smodels wire format.
pub fn sample_smodels_text() -> String {
    "1 2 2 0 3 4\n\
     1 2 1 0 5\n\
     1 3 2 1 5 2\n\
     1 3 2 1 4 2\n\
     1 4 1 1 5\n\
     1 5 1 1 4\n\
     0\n\
     2 a\n\
     3 b\n\
     4 c\n\
     5 d\n\
     0\n\
     B+\n\
     0\n\
     B-\n\
     0\n\
     1\n"
        .to_string()
}

#[derive(Clone, Debug)]
pub struct GenConfig {
    /// Program atoms (beyond the reserved constraint head, id 1).
    pub max_atoms: u32,
    pub max_rules: usize,
    /// Reject instances whose translated enumeration space exceeds this.
    pub max_enumeration_bits: u32,
    /// Allow weighted rules recursing through their head's component.
    /// The ranking constraints cannot express those, so equivalence
    /// corpora keep this off.
    pub allow_recursive_weights: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { max_atoms: 6, max_rules: 12, max_enumeration_bits: 17, allow_recursive_weights: false }
    }
}

fn pick_atom(rng: &mut ChaCha8Rng, n_atoms: u32) -> AtomId {
    rng.gen_range(2..2 + n_atoms)
}

fn pick_body(rng: &mut ChaCha8Rng, n_atoms: u32, max_len: usize) -> (Vec<AtomId>, Vec<AtomId>) {
    let n_pos = rng.gen_range(0..=max_len);
    let n_neg = rng.gen_range(0..=max_len.saturating_sub(n_pos).min(2));
    let pos = (0..n_pos).map(|_| pick_atom(rng, n_atoms)).collect();
    let neg = (0..n_neg).map(|_| pick_atom(rng, n_atoms)).collect();
    (pos, neg)
}

/// One random ground program. Atom ids 2..=n+1 carry names a..; id 1 is
/// used as the head of integrity constraints and forced false. The same
/// seed always yields the same program.
pub fn random_program(seed: u64, cfg: &GenConfig) -> Program {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_program_with(&mut rng, cfg, None)
}

fn random_program_with(rng: &mut ChaCha8Rng, cfg: &GenConfig, force_kind: Option<RuleKind>) -> Program {
    let n_atoms = rng.gen_range(3..=cfg.max_atoms);
    let n_rules = rng.gen_range(1..=cfg.max_rules);
    let mut p = Program::new(n_atoms + 1);
    p.atoms.set_name(1, "bot");
    for i in 0..n_atoms {
        let name = char::from(b'a' + (i % 26) as u8);
        p.atoms.set_name(2 + i, name);
    }

    for r in 0..n_rules {
        let kind = match force_kind {
            Some(k) if r == 0 => k,
            _ => match rng.gen_range(0..100) {
                0..=54 => RuleKind::Normal,
                55..=69 => RuleKind::Choice,
                70..=84 => RuleKind::Cardinality,
                _ => RuleKind::Weight,
            },
        };
        match kind {
            RuleKind::Normal => {
                if rng.gen_bool(0.15) {
                    // Integrity constraint: head is the reserved false atom.
                    let (pos, neg) = pick_body(rng, n_atoms, 2);
                    if pos.is_empty() && neg.is_empty() {
                        continue;
                    }
                    p.add_rule(Rule::normal(1, pos, neg));
                    p.forced_false.insert(1);
                } else if rng.gen_bool(0.2) {
                    p.add_rule(Rule::fact(pick_atom(rng, n_atoms)));
                } else {
                    let (pos, neg) = pick_body(rng, n_atoms, 2);
                    p.add_rule(Rule::normal(pick_atom(rng, n_atoms), pos, neg));
                }
            }
            RuleKind::Choice => {
                let n_heads = rng.gen_range(1..=2);
                let mut heads: Vec<AtomId> = (0..n_heads).map(|_| pick_atom(rng, n_atoms)).collect();
                heads.sort_unstable();
                heads.dedup();
                let (pos, neg) = pick_body(rng, n_atoms, 2);
                p.add_rule(Rule::choice(heads, pos, neg));
            }
            RuleKind::Cardinality => {
                let (pos, neg) = pick_body(rng, n_atoms, 3);
                let len = (pos.len() + neg.len()) as u64;
                // Occasionally exceed the total, exercising the
                // validator's rule drop.
                let slack = u64::from(rng.gen_bool(0.1));
                let bound = rng.gen_range(0..=len + slack);
                p.add_rule(Rule::cardinality(pick_atom(rng, n_atoms), bound, pos, neg));
            }
            RuleKind::Weight => {
                let (pos, neg) = pick_body(rng, n_atoms, 3);
                let pos_w: Vec<(AtomId, u64)> = pos.iter().map(|&a| (a, rng.gen_range(1..=3))).collect();
                let neg_w: Vec<(AtomId, u64)> = neg.iter().map(|&a| (a, rng.gen_range(1..=3))).collect();
                let total: u64 =
                    pos_w.iter().map(|&(_, w)| w).sum::<u64>() + neg_w.iter().map(|&(_, w)| w).sum::<u64>();
                let slack = u64::from(rng.gen_bool(0.1));
                let bound = rng.gen_range(0..=total + slack);
                p.add_rule(Rule::weight(pick_atom(rng, n_atoms), bound, pos_w, neg_w));
            }
        }
    }
    if rng.gen_bool(0.1) {
        p.forced_true.insert(pick_atom(rng, n_atoms));
    }
    p
}

/// `count` random programs fit for exhaustive cross-checking: validated
/// (warned rules dropped), simplified, free of recursive weighted rules
/// unless allowed, and with a translated enumeration space within the
/// configured bits. Rule kinds are forced round-robin so every corpus
/// mixes normal, choice, cardinality and weight rules. Deterministic in
/// `seed`.
pub fn corpus(seed: u64, count: usize, cfg: &GenConfig) -> Vec<Program> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kinds = [RuleKind::Normal, RuleKind::Choice, RuleKind::Cardinality, RuleKind::Weight];
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < count * 200 + 10_000, "corpus generation rejected too many candidates");
        let raw = random_program_with(&mut rng, cfg, Some(kinds[out.len() % kinds.len()]));
        let checked = crate::program::validate(&raw);
        if checked.has_errors() {
            continue;
        }
        if !cfg.allow_recursive_weights
            && checked.diagnostics.iter().any(|d| d.message.contains("recursive"))
        {
            continue;
        }
        let program = crate::program::simplify(&checked.program);
        if program.herbrand_base().len() > 16 {
            continue;
        }
        let theory = crate::translate::translate(&program, crate::translate::Variant::WEAK);
        match crate::bvlogic::enumeration_bits(&theory) {
            Ok(bits) if bits <= cfg.max_enumeration_bits => out.push(program),
            _ => continue,
        }
    }
    out
}

//! Reference semantics engine: reduct, least model, answer-set and
//! supported-model enumeration by brute force. This is the ground truth
//! the translator is checked against; it makes no attempt to be fast
//! beyond parallelizing the candidate sweep.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::program::{AtomId, Program, Rule, RuleKind};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// An interpretation is the set of true atoms, a subset of the program's
/// Herbrand base.
pub type Interpretation = BTreeSet<AtomId>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("rule {0} contains negative literals; program is not positive")]
    NegativeLiteral(usize),
    #[error("rule {0} is a choice rule; not allowed here")]
    ChoiceRule(usize),
    #[error("rule {0} is not a normal rule")]
    NonNormalRule(usize),
    #[error("herbrand base has {atoms} atoms, enumeration cap is {cap}")]
    CapExceeded { atoms: usize, cap: u32 },
}

/// Reduce `p` with respect to `m`: rules whose negative body intersects
/// `m` are dropped, surviving rules lose their negative literals. A choice
/// rule contributes one positive rule per head atom that is in `m`. For
/// cardinality/weight rules the bound is lowered by the weight of each
/// satisfied negative literal, clamped at zero.
pub fn reduct(p: &Program, m: &Interpretation) -> Program {
    let mut out = p.clone();
    out.rules = Vec::new();
    for rule in &p.rules {
        match rule.kind {
            RuleKind::Normal => {
                if rule.neg_body.iter().all(|c| !m.contains(c)) {
                    out.rules.push(Rule::normal(rule.heads[0], rule.pos_body.clone(), Vec::new()));
                }
            }
            RuleKind::Choice => {
                if rule.neg_body.iter().all(|c| !m.contains(c)) {
                    for &head in &rule.heads {
                        if m.contains(&head) {
                            out.rules.push(Rule::normal(head, rule.pos_body.clone(), Vec::new()));
                        }
                    }
                }
            }
            RuleKind::Cardinality | RuleKind::Weight => {
                let npos = rule.pos_body.len();
                let satisfied_neg: u64 = rule
                    .neg_body
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !m.contains(c))
                    .map(|(j, _)| rule.literal_weight(npos + j))
                    .sum();
                let bound = rule.bound.saturating_sub(satisfied_neg);
                let mut reduced = rule.clone();
                reduced.bound = bound;
                reduced.neg_body = Vec::new();
                reduced.weights.truncate(if rule.kind == RuleKind::Weight { npos } else { 0 });
                out.rules.push(reduced);
            }
        }
    }
    out
}

fn positive_body_satisfied(rule: &Rule, m: &Interpretation) -> bool {
    match rule.kind {
        RuleKind::Normal | RuleKind::Choice => rule.pos_body.iter().all(|b| m.contains(b)),
        RuleKind::Cardinality | RuleKind::Weight => {
            let sum: u64 = rule
                .pos_body
                .iter()
                .enumerate()
                .filter(|(_, b)| m.contains(b))
                .map(|(i, _)| rule.literal_weight(i))
                .sum();
            sum >= rule.bound
        }
    }
}

/// Least model of a positive program: the least fixpoint of the one-step
/// consequence operator. Terminates within |Hb| rounds.
pub fn least_model(p: &Program) -> Result<Interpretation, OracleError> {
    for (i, rule) in p.rules.iter().enumerate() {
        if !rule.neg_body.is_empty() {
            return Err(OracleError::NegativeLiteral(i));
        }
        if rule.kind == RuleKind::Choice {
            return Err(OracleError::ChoiceRule(i));
        }
    }
    let mut m = Interpretation::new();
    loop {
        let mut changed = false;
        for rule in &p.rules {
            if positive_body_satisfied(rule, &m) && m.insert(rule.heads[0]) {
                changed = true;
            }
        }
        if !changed {
            return Ok(m);
        }
    }
}

/// `m` is an answer set iff it reproduces itself through the reduct and
/// respects the compute statements.
pub fn is_answer_set(p: &Program, m: &Interpretation) -> bool {
    if !p.forced_true.iter().all(|a| m.contains(a)) {
        return false;
    }
    if p.forced_false.iter().any(|a| m.contains(a)) {
        return false;
    }
    match least_model(&reduct(p, m)) {
        Ok(lm) => lm == *m,
        Err(_) => false,
    }
}

fn hb_vector(p: &Program) -> Vec<AtomId> {
    p.herbrand_base().into_iter().collect()
}

fn candidate(hb: &[AtomId], mask: u64) -> Interpretation {
    hb.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &a)| a)
        .collect()
}

fn sweep<F>(p: &Program, cap: u32, keep: F) -> Result<Vec<Interpretation>, OracleError>
where
    F: Fn(&Program, &Interpretation) -> bool + Sync,
{
    let hb = hb_vector(p);
    if hb.len() > cap as usize || hb.len() >= 63 {
        return Err(OracleError::CapExceeded { atoms: hb.len(), cap });
    }
    let total: u64 = 1 << hb.len();
    #[cfg(feature = "parallel")]
    {
        let chunks = total.min(256);
        let per = total.div_ceil(chunks);
        let found: Vec<Vec<Interpretation>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = c * per;
                let hi = ((c + 1) * per).min(total);
                (lo..hi)
                    .filter_map(|mask| {
                        let m = candidate(&hb, mask);
                        keep(p, &m).then_some(m)
                    })
                    .collect()
            })
            .collect();
        Ok(found.concat())
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok((0..total)
            .filter_map(|mask| {
                let m = candidate(&hb, mask);
                keep(p, &m).then_some(m)
            })
            .collect())
    }
}

fn sweep_seq<F>(p: &Program, cap: u32, keep: F) -> Result<Vec<Interpretation>, OracleError>
where
    F: Fn(&Program, &Interpretation) -> bool,
{
    let hb = hb_vector(p);
    if hb.len() > cap as usize || hb.len() >= 63 {
        return Err(OracleError::CapExceeded { atoms: hb.len(), cap });
    }
    let total: u64 = 1 << hb.len();
    Ok((0..total)
        .filter_map(|mask| {
            let m = candidate(&hb, mask);
            keep(p, &m).then_some(m)
        })
        .collect())
}

/// All answer sets of `p`, by checking every subset of the Herbrand base.
/// Results are ordered by the subset mask, which is deterministic.
pub fn enumerate_answer_sets(p: &Program, cap: u32) -> Result<Vec<Interpretation>, OracleError> {
    sweep(p, cap, is_answer_set)
}

/// Single-threaded variant of [`enumerate_answer_sets`].
pub fn enumerate_answer_sets_seq(p: &Program, cap: u32) -> Result<Vec<Interpretation>, OracleError> {
    sweep_seq(p, cap, is_answer_set)
}

fn is_supported_model(p: &Program, m: &Interpretation) -> bool {
    if !p.forced_true.iter().all(|a| m.contains(a)) {
        return false;
    }
    if p.forced_false.iter().any(|a| m.contains(a)) {
        return false;
    }
    let body_true = |rule: &Rule| {
        rule.pos_body.iter().all(|b| m.contains(b)) && rule.neg_body.iter().all(|c| !m.contains(c))
    };
    if !p.rules.iter().all(|r| !body_true(r) || m.contains(&r.heads[0])) {
        return false;
    }
    m.iter().all(|a| p.rules.iter().any(|r| r.heads[0] == *a && body_true(r)))
}

/// All supported models of a normal program: classical models where every
/// true atom has a rule with a satisfied body deriving it. Compute
/// statements are honored, matching the completion's unit literals.
pub fn enumerate_supported_models(p: &Program, cap: u32) -> Result<Vec<Interpretation>, OracleError> {
    for (i, rule) in p.rules.iter().enumerate() {
        if rule.kind != RuleKind::Normal {
            return Err(OracleError::NonNormalRule(i));
        }
    }
    sweep(p, cap, is_supported_model)
}

/// Single-threaded variant of [`enumerate_supported_models`].
pub fn enumerate_supported_models_seq(p: &Program, cap: u32) -> Result<Vec<Interpretation>, OracleError> {
    for (i, rule) in p.rules.iter().enumerate() {
        if rule.kind != RuleKind::Normal {
            return Err(OracleError::NonNormalRule(i));
        }
    }
    sweep_seq(p, cap, is_supported_model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::sample_program;

    fn interp(ids: &[AtomId]) -> Interpretation {
        ids.iter().copied().collect()
    }

    #[test]
    fn reduct_of_sample() {
        let p = sample_program();
        let red = reduct(&p, &interp(&[4]));
        let expected: BTreeSet<Rule> = [
            Rule::normal(2, vec![3, 4], vec![]),
            Rule::normal(3, vec![2], vec![]),
            Rule::normal(4, vec![], vec![]),
            Rule::normal(2, vec![5], vec![]),
        ]
        .into_iter()
        .collect();
        assert_eq!(red.rules.iter().cloned().collect::<BTreeSet<_>>(), expected);
        assert_eq!(least_model(&red).unwrap(), interp(&[4]));
    }

    #[test]
    fn reduct_of_positive_program_is_identity_on_rules() {
        let mut p = Program::new(3);
        p.add_rule(Rule::normal(1, vec![2], vec![]));
        p.add_rule(Rule::cardinality(3, 1, vec![1, 2], vec![]));
        let red = reduct(&p, &interp(&[1, 2]));
        assert_eq!(red.rules, p.rules);
    }

    #[test]
    fn reduct_of_weight_rule_lowers_bound() {
        // a1 <- 3 <= {a2=2, not a3=2} under M = {} becomes a1 <- 1 <= {a2=2}.
        let mut p = Program::new(3);
        p.add_rule(Rule::weight(1, 3, vec![(2, 2)], vec![(3, 2)]));
        let red = reduct(&p, &interp(&[]));
        assert_eq!(red.rules, vec![Rule::weight(1, 1, vec![(2, 2)], vec![])]);
    }

    #[test]
    fn least_model_of_sample_reduct() {
        let mut p = Program::new(5);
        p.add_rule(Rule::normal(2, vec![3, 4], vec![]));
        p.add_rule(Rule::normal(3, vec![2], vec![]));
        p.add_rule(Rule::fact(4));
        p.add_rule(Rule::normal(2, vec![5], vec![]));
        assert_eq!(least_model(&p).unwrap(), interp(&[4]));
    }

    #[test]
    fn least_model_of_empty_program() {
        assert_eq!(least_model(&Program::new(0)).unwrap(), interp(&[]));
    }

    #[test]
    fn least_model_through_weight_bound() {
        let mut p = Program::new(2);
        p.add_rule(Rule::weight(1, 1, vec![(2, 1)], vec![]));
        p.add_rule(Rule::fact(2));
        assert_eq!(least_model(&p).unwrap(), interp(&[1, 2]));
    }

    #[test]
    fn least_model_rejects_negative_literals() {
        let mut p = Program::new(2);
        p.add_rule(Rule::normal(1, vec![], vec![2]));
        assert_eq!(least_model(&p), Err(OracleError::NegativeLiteral(0)));
    }

    #[test]
    fn sample_answer_set_membership() {
        let p = sample_program();
        assert!(is_answer_set(&p, &interp(&[4])));
        assert!(is_answer_set(&p, &interp(&[2, 3, 5])));
        assert!(!is_answer_set(&p, &interp(&[2, 3, 4])));
    }

    #[test]
    fn empty_program_has_empty_answer_set() {
        assert!(is_answer_set(&Program::new(0), &interp(&[])));
    }

    #[test]
    fn sample_enumeration() {
        // Mask order over the sorted base puts {c} before {a,b,d}.
        let sets = enumerate_answer_sets(&sample_program(), 20).unwrap();
        assert_eq!(sets, vec![interp(&[4]), interp(&[2, 3, 5])]);
    }

    #[test]
    fn odd_loop_has_no_answer_sets() {
        let mut p = Program::new(1);
        p.add_rule(Rule::normal(1, vec![], vec![1]));
        assert!(enumerate_answer_sets(&p, 20).unwrap().is_empty());
    }

    #[test]
    fn unconstrained_choice_gives_both_answer_sets() {
        let mut p = Program::new(1);
        p.add_rule(Rule::choice(vec![1], vec![], vec![]));
        let sets = enumerate_answer_sets(&p, 20).unwrap();
        assert_eq!(sets, vec![interp(&[]), interp(&[1])]);
    }

    #[test]
    fn cap_is_enforced() {
        let mut p = Program::new(8);
        for a in 1..=8 {
            p.add_rule(Rule::fact(a));
        }
        assert_eq!(
            enumerate_answer_sets(&p, 4),
            Err(OracleError::CapExceeded { atoms: 8, cap: 4 })
        );
    }

    #[test]
    fn sample_supported_models() {
        let sets = enumerate_supported_models(&sample_program(), 20).unwrap();
        let expected: BTreeSet<Interpretation> =
            [interp(&[2, 3, 5]), interp(&[4]), interp(&[2, 3, 4])].into_iter().collect();
        assert_eq!(sets.into_iter().collect::<BTreeSet<_>>(), expected);
    }

    #[test]
    fn empty_program_has_one_supported_model() {
        let sets = enumerate_supported_models(&Program::new(0), 20).unwrap();
        assert_eq!(sets, vec![interp(&[])]);
    }

    #[test]
    fn positive_loop_supported_models() {
        let mut p = Program::new(2);
        p.add_rule(Rule::normal(1, vec![2], vec![]));
        p.add_rule(Rule::normal(2, vec![1], vec![]));
        let sets = enumerate_supported_models(&p, 20).unwrap();
        assert_eq!(sets, vec![interp(&[]), interp(&[1, 2])]);
    }

    #[test]
    fn supported_models_reject_extended_rules() {
        let mut p = Program::new(2);
        p.add_rule(Rule::cardinality(1, 1, vec![2], vec![]));
        assert_eq!(enumerate_supported_models(&p, 20), Err(OracleError::NonNormalRule(0)));
    }

    #[test]
    fn answer_sets_are_supported_on_normal_corpus() {
        for seed in 0..40u64 {
            let p = crate::corpus::random_program(seed, &Default::default());
            if p.rules.iter().any(|r| r.kind != RuleKind::Normal) || p.herbrand_base().len() > 10 {
                continue;
            }
            let answer: BTreeSet<Interpretation> =
                enumerate_answer_sets(&p, 10).unwrap().into_iter().collect();
            let supported: BTreeSet<Interpretation> =
                enumerate_supported_models(&p, 10).unwrap().into_iter().collect();
            assert!(answer.is_subset(&supported), "seed {seed}");
        }
    }

    #[test]
    fn least_model_is_monotone_in_rules() {
        for seed in 0..40u64 {
            let p = crate::corpus::random_program(seed, &Default::default());
            let positive = reduct(&p, &Interpretation::new());
            let base = least_model(&positive).unwrap();
            let mut extended = positive.clone();
            extended.add_rule(Rule::fact(1));
            let bigger = least_model(&extended).unwrap();
            assert!(base.is_subset(&bigger), "seed {seed}");
        }
    }

    #[test]
    fn membership_agrees_with_enumeration() {
        for seed in 0..25u64 {
            let p = crate::corpus::random_program(seed, &Default::default());
            let hb: Vec<AtomId> = p.herbrand_base().into_iter().collect();
            if hb.len() > 8 {
                continue;
            }
            let sets: BTreeSet<Interpretation> =
                enumerate_answer_sets(&p, 10).unwrap().into_iter().collect();
            for mask in 0..1u64 << hb.len() {
                let m: Interpretation = hb
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &a)| a)
                    .collect();
                assert_eq!(is_answer_set(&p, &m), sets.contains(&m), "seed {seed}");
            }
        }
    }

    #[test]
    fn parallel_and_sequential_enumeration_agree() {
        for seed in 0..10u64 {
            let p = crate::corpus::random_program(seed, &Default::default());
            if p.herbrand_base().len() > 10 {
                continue;
            }
            assert_eq!(
                enumerate_answer_sets(&p, 12).unwrap(),
                enumerate_answer_sets_seq(&p, 12).unwrap()
            );
        }
    }
}

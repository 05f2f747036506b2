//! Translation of ground programs into bit-vector theories.
//!
//! The theory is the union of two parts: the completion, which captures
//! supported models, and ranking constraints over per-atom bit vectors,
//! which exclude the unfounded ones. Every atom of a nontrivial component
//! of the positive dependency graph gets a rank vector `x_a` of width
//! ceil(log2(|S| + 1)); a true atom must either have external support or
//! an internal supporting rule whose in-component body atoms all rank
//! strictly below it. The weak constraints suffice for a sound and
//! complete translation; the strong local/global variants additionally
//! pin the rank vectors so that each answer set corresponds to exactly
//! one model.
//!
//! Cardinality and weight bodies are evaluated natively with a
//! cumulative-sum chain of vectors `s_1 .. s_{n+m}` wide enough that no
//! addition overflows, and the body holds iff the final sum reaches the
//! lower bound. Choice rules are normalized away first. Note that for a
//! weighted rule whose positive body meets its head's component, the
//! ranking constraints demand a rank decrease for every in-component body
//! atom even though the bound might be reachable without them, so such
//! programs can lose answer sets; `validate` warns about them.

use std::collections::BTreeMap;

use crate::bvlogic::{atom, conj, disj, eq, iff, implies, lt, not, BvTheory, Formula, Term, Width};
use crate::depgraph::{build_depgraph, compute_sccs, partition_defining_rules, SccInfo};
use crate::program::{AtomId, Program, Rule, RuleKind};

/// Which ranking constraints to emit: weak only (`W`), plus local strong
/// (`L`), global strong (`G`), or both (`LG`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Variant {
    pub strong_local: bool,
    pub strong_global: bool,
}

impl Variant {
    pub const WEAK: Variant = Variant { strong_local: false, strong_global: false };
    pub const LOCAL: Variant = Variant { strong_local: true, strong_global: false };
    pub const GLOBAL: Variant = Variant { strong_local: false, strong_global: true };
    pub const LOCAL_GLOBAL: Variant = Variant { strong_local: true, strong_global: true };

    pub const ALL: [Variant; 4] = [Self::WEAK, Self::LOCAL, Self::GLOBAL, Self::LOCAL_GLOBAL];

    pub fn is_strong(&self) -> bool {
        self.strong_local || self.strong_global
    }

    pub fn label(&self) -> &'static str {
        match (self.strong_local, self.strong_global) {
            (false, false) => "W",
            (true, false) => "L",
            (false, true) => "G",
            (true, true) => "LG",
        }
    }
}

/// Propositional symbol of a program atom.
pub fn atom_symbol(id: AtomId) -> String {
    format!("a{id}")
}

/// Replace every choice rule by its normal-rule image: a fresh body atom
/// `b` defined by the rule's body, and per head `a` the pair
/// `a <- b, not a'` / `a' <- not a` with a fresh complement atom `a'`.
/// Works rule by rule and is linear in the rule length.
pub fn normalize_choice(p: &Program) -> Program {
    let mut out = p.clone();
    out.rules = Vec::new();
    for rule in &p.rules {
        if rule.kind != RuleKind::Choice {
            out.rules.push(rule.clone());
            continue;
        }
        let body_atom = out.atoms.fresh();
        out.rules.push(Rule::normal(body_atom, rule.pos_body.clone(), rule.neg_body.clone()));
        for &head in &rule.heads {
            let complement = out.atoms.fresh();
            out.rules.push(Rule::normal(head, vec![body_atom], vec![complement]));
            out.rules.push(Rule::normal(complement, Vec::new(), vec![head]));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CompletionCase {
    /// No defining rules: the atom is false.
    Undefined,
    /// Some defining rule has an (always satisfied) empty body: unit atom.
    Unit,
    /// Exactly one defining rule.
    Single(usize),
    /// Two or more defining rules, each with a nonempty body.
    Multi,
}

fn body_trivially_true(rule: &Rule) -> bool {
    rule.body_is_empty() && (!rule.is_weighted() || rule.bound == 0)
}

fn completion_case(defs: &[usize], p: &Program) -> CompletionCase {
    if defs.is_empty() {
        return CompletionCase::Undefined;
    }
    if defs.iter().any(|&i| body_trivially_true(&p.rules[i])) {
        return CompletionCase::Unit;
    }
    match defs {
        [single] => CompletionCase::Single(*single),
        _ => CompletionCase::Multi,
    }
}

/// Cumulative-sum vectors of one weighted rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumChain {
    pub symbols: Vec<String>,
    pub width: Width,
}

/// Fresh symbols of a translation: `bd_<rule>` body atoms for rules of
/// multi-rule definitions and for every weighted rule, `ext_<atom>` /
/// `int_<atom>` / `x_<atom>` for atoms of nontrivial components, and the
/// `s_<rule>_<j>` sum chains. Rule numbering is 1-based over the rule
/// list, so the numbering is stable under translation reruns.
#[derive(Clone, Debug, Default)]
pub struct AuxSymbols {
    bd: BTreeMap<usize, String>,
    sums: BTreeMap<usize, SumChain>,
    ext: BTreeMap<AtomId, String>,
    int: BTreeMap<AtomId, String>,
    rank: BTreeMap<AtomId, (String, Width)>,
    defs: BTreeMap<AtomId, Vec<usize>>,
}

impl AuxSymbols {
    pub fn bd_symbol(&self, rule: usize) -> Option<&str> {
        self.bd.get(&rule).map(String::as_str)
    }

    pub fn sum_chain(&self, rule: usize) -> Option<&SumChain> {
        self.sums.get(&rule)
    }

    pub fn ext_symbol(&self, atom: AtomId) -> Option<&str> {
        self.ext.get(&atom).map(String::as_str)
    }

    pub fn int_symbol(&self, atom: AtomId) -> Option<&str> {
        self.int.get(&atom).map(String::as_str)
    }

    pub fn rank_vector(&self, atom: AtomId) -> Option<Term> {
        self.rank.get(&atom).map(|(name, w)| Term::var(name.clone(), *w))
    }

    fn defining_rules(&self, atom: AtomId) -> &[usize] {
        self.defs.get(&atom).map(Vec::as_slice).unwrap_or(&[])
    }
}

fn assert_no_choice(p: &Program) {
    assert!(
        p.rules.iter().all(|r| r.kind != RuleKind::Choice),
        "choice rules must be normalized before translation"
    );
}

fn ceil_log2(n: u64) -> Width {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Allocate the fresh symbols for `p` (choice-free) under `sccs`.
pub fn aux_symbols(p: &Program, sccs: &SccInfo) -> AuxSymbols {
    assert_no_choice(p);
    let mut aux = AuxSymbols::default();

    for a in p.herbrand_base() {
        aux.defs.insert(a, Vec::new());
    }
    for (i, rule) in p.rules.iter().enumerate() {
        aux.defs.get_mut(&rule.head()).expect("head in herbrand base").push(i);
    }

    for defs in aux.defs.values() {
        if completion_case(defs, p) == CompletionCase::Multi {
            for &i in defs {
                aux.bd.insert(i, format!("bd_{}", i + 1));
            }
        }
    }
    for (i, rule) in p.rules.iter().enumerate() {
        if rule.is_weighted() {
            aux.bd.entry(i).or_insert_with(|| format!("bd_{}", i + 1));
            let width = ceil_log2(rule.total_weight() + 1).max(1);
            let symbols = (1..=rule.body_len()).map(|j| format!("s_{}_{j}", i + 1)).collect();
            aux.sums.insert(i, SumChain { symbols, width });
        }
    }

    for (c, component) in sccs.components.iter().enumerate() {
        if !sccs.nontrivial[c] {
            continue;
        }
        let width = sccs.widths[c];
        for &a in component {
            aux.ext.insert(a, format!("ext_{a}"));
            aux.int.insert(a, format!("int_{a}"));
            aux.rank.insert(a, (format!("x_{a}"), width));
        }
    }
    aux
}

fn positive_literal(a: AtomId) -> Formula {
    atom(atom_symbol(a))
}

fn body_conjunction(rule: &Rule) -> Formula {
    let mut parts: Vec<Formula> = rule.pos_body.iter().map(|&b| positive_literal(b)).collect();
    parts.extend(rule.neg_body.iter().map(|&c| not(positive_literal(c))));
    conj(parts)
}

/// Formula standing for "the body of rule `i` holds": the `bd` atom when
/// one was introduced, the body conjunction otherwise (true for facts).
fn body_ref(p: &Program, aux: &AuxSymbols, i: usize) -> Formula {
    match aux.bd_symbol(i) {
        Some(sym) => atom(sym.to_string()),
        None => body_conjunction(&p.rules[i]),
    }
}

/// Completion of `p`: per atom, `not a` when it has no defining rules, a
/// unit when some defining body is empty, the body equivalence for a
/// single defining rule, or an equivalence with the disjunction of `bd`
/// atoms, each defined by its body. Weighted rules keep their `bd` atom
/// in the disjunction; its definition comes from [`encode_weight_body`].
/// Compute statements contribute unit literals.
pub fn clark_completion(p: &Program, aux: &AuxSymbols) -> Vec<Formula> {
    assert_no_choice(p);
    let mut out = Vec::new();
    for (&a, defs) in &aux.defs {
        match completion_case(defs, p) {
            CompletionCase::Undefined => out.push(not(positive_literal(a))),
            CompletionCase::Unit => out.push(positive_literal(a)),
            CompletionCase::Single(i) => {
                let body = if p.rules[i].is_weighted() {
                    atom(aux.bd_symbol(i).expect("weighted rule has bd").to_string())
                } else {
                    body_conjunction(&p.rules[i])
                };
                out.push(iff(positive_literal(a), body));
            }
            CompletionCase::Multi => {
                let refs: Vec<Formula> =
                    defs.iter().map(|&i| atom(aux.bd_symbol(i).expect("multi def has bd").to_string())).collect();
                out.push(iff(positive_literal(a), disj(refs)));
                for &i in defs {
                    if !p.rules[i].is_weighted() {
                        out.push(iff(atom(aux.bd_symbol(i).unwrap().to_string()), body_conjunction(&p.rules[i])));
                    }
                }
            }
        }
    }
    for &a in &p.forced_true {
        out.push(positive_literal(a));
    }
    for &a in &p.forced_false {
        out.push(not(positive_literal(a)));
    }
    out
}

/// Native encoding of one cardinality/weight body: the cumulative sums
/// `s_1 .. s_{n+m}` accumulate the weight of each satisfied literal
/// (positive literals first, then negative), and `bd` holds iff the final
/// sum reaches the bound. The chain width is chosen so the total weight
/// fits, hence no addition wraps.
pub fn encode_weight_body(p: &Program, rule_index: usize, aux: &AuxSymbols) -> Vec<Formula> {
    let rule = &p.rules[rule_index];
    assert!(rule.is_weighted(), "rule {rule_index} is not a cardinality/weight rule");
    let chain = aux.sum_chain(rule_index).expect("weighted rule has a sum chain");
    let k = chain.width;
    assert!(rule.bound < (1u64 << k), "bound must fit the chain width; validate input first");

    let mut out = Vec::new();
    let mut prev: Option<Term> = None;
    let mut sum = |idx: usize, guard: Formula, weight: u64, counts_when_true: bool, prev: &mut Option<Term>| {
        let s = Term::var(chain.symbols[idx].clone(), k);
        let carried = prev.clone().unwrap_or_else(|| Term::bin(0, k));
        let added = match prev.clone() {
            Some(t) => Term::add(t, Term::bin(weight, k)),
            None => Term::bin(weight, k),
        };
        let (on_true, on_false) = if counts_when_true { (added, carried) } else { (carried, added) };
        out.push(implies(guard.clone(), eq(s.clone(), on_true)));
        out.push(implies(not(guard), eq(s.clone(), on_false)));
        *prev = Some(s);
    };

    for (i, &b) in rule.pos_body.iter().enumerate() {
        sum(i, positive_literal(b), rule.literal_weight(i), true, &mut prev);
    }
    let npos = rule.pos_body.len();
    for (j, &c) in rule.neg_body.iter().enumerate() {
        sum(npos + j, positive_literal(c), rule.literal_weight(npos + j), false, &mut prev);
    }

    let total = prev.unwrap_or_else(|| Term::bin(0, k));
    let bd = atom(aux.bd_symbol(rule_index).expect("weighted rule has bd").to_string());
    out.push(iff(bd, not(lt(total, Term::bin(rule.bound, k)))));
    out
}

fn in_component_positive(rule: &Rule, sccs: &SccInfo, head: AtomId) -> Vec<AtomId> {
    let mut atoms: Vec<AtomId> =
        rule.pos_body.iter().copied().filter(|&b| sccs.same_component(b, head)).collect();
    atoms.sort_unstable();
    atoms.dedup();
    atoms
}

/// Weak ranking constraints for every atom of a nontrivial component:
/// `ext` holds iff some external defining body does; `int` holds iff some
/// internal body does with all in-component positive atoms ranked below;
/// a true atom needs one of the two, never both; and externally supported
/// atoms have rank zero (emitted only when external rules exist). Atoms
/// of singleton components need nothing beyond the completion.
pub fn weak_ranking(p: &Program, sccs: &SccInfo, aux: &AuxSymbols) -> Vec<Formula> {
    assert_no_choice(p);
    let mut out = Vec::new();
    for (c, component) in sccs.components.iter().enumerate() {
        if !sccs.nontrivial[c] {
            continue;
        }
        let (external, _) = partition_defining_rules(p, component);
        for &a in component {
            let x_a = aux.rank_vector(a).expect("nontrivial atom has a rank vector");
            let width = x_a.width();
            let ext_a = atom(aux.ext_symbol(a).unwrap().to_string());
            let int_a = atom(aux.int_symbol(a).unwrap().to_string());

            let ext_defs: Vec<usize> =
                aux.defining_rules(a).iter().copied().filter(|i| external.contains(i)).collect();
            let int_defs: Vec<usize> =
                aux.defining_rules(a).iter().copied().filter(|i| !external.contains(i)).collect();

            out.push(iff(ext_a.clone(), disj(ext_defs.iter().map(|&i| body_ref(p, aux, i)).collect())));
            let int_parts: Vec<Formula> = int_defs
                .iter()
                .map(|&i| {
                    let mut parts = vec![body_ref(p, aux, i)];
                    for b in in_component_positive(&p.rules[i], sccs, a) {
                        parts.push(lt(aux.rank_vector(b).unwrap(), x_a.clone()));
                    }
                    conj(parts)
                })
                .collect();
            out.push(iff(int_a.clone(), disj(int_parts)));
            out.push(implies(positive_literal(a), disj(vec![ext_a.clone(), int_a.clone()])));
            out.push(disj(vec![not(ext_a.clone()), not(int_a)]));
            if !ext_defs.is_empty() {
                out.push(implies(ext_a, eq(x_a, Term::bin(0, width))));
            }
        }
    }
    out
}

/// Local strong ranking constraints: for each internal defining rule, the
/// body forces some in-component positive atom to rank at most one below
/// the head.
pub fn strong_local(p: &Program, sccs: &SccInfo, aux: &AuxSymbols) -> Vec<Formula> {
    assert_no_choice(p);
    let mut out = Vec::new();
    for (c, component) in sccs.components.iter().enumerate() {
        if !sccs.nontrivial[c] {
            continue;
        }
        let (external, _) = partition_defining_rules(p, component);
        for &a in component {
            let x_a = aux.rank_vector(a).unwrap();
            let width = x_a.width();
            for &i in aux.defining_rules(a) {
                if external.contains(&i) {
                    continue;
                }
                let disjuncts: Vec<Formula> = in_component_positive(&p.rules[i], sccs, a)
                    .into_iter()
                    .map(|b| {
                        not(lt(Term::add(aux.rank_vector(b).unwrap(), Term::bin(1, width)), x_a.clone()))
                    })
                    .collect();
                out.push(implies(body_ref(p, aux, i), disj(disjuncts)));
            }
        }
    }
    out
}

/// Global strong ranking constraints: internal support pins the head's
/// rank to exactly one above some in-component body atom of a satisfied
/// internal rule.
pub fn strong_global(p: &Program, sccs: &SccInfo, aux: &AuxSymbols) -> Vec<Formula> {
    assert_no_choice(p);
    let mut out = Vec::new();
    for (c, component) in sccs.components.iter().enumerate() {
        if !sccs.nontrivial[c] {
            continue;
        }
        let (external, _) = partition_defining_rules(p, component);
        for &a in component {
            let x_a = aux.rank_vector(a).unwrap();
            let width = x_a.width();
            let int_defs: Vec<usize> =
                aux.defining_rules(a).iter().copied().filter(|i| !external.contains(i)).collect();
            if int_defs.is_empty() {
                continue;
            }
            let disjuncts: Vec<Formula> = int_defs
                .iter()
                .map(|&i| {
                    let successors: Vec<Formula> = in_component_positive(&p.rules[i], sccs, a)
                        .into_iter()
                        .map(|b| {
                            eq(x_a.clone(), Term::add(aux.rank_vector(b).unwrap(), Term::bin(1, width)))
                        })
                        .collect();
                    conj(vec![body_ref(p, aux, i), disj(successors)])
                })
                .collect();
            out.push(implies(atom(aux.int_symbol(a).unwrap().to_string()), disj(disjuncts)));
        }
    }
    out
}

/// Rank vectors of false atoms are cleared to zero, pruning duplicate
/// models of the same answer set. Emitted with the strong variants.
pub fn clear_false(p: &Program, sccs: &SccInfo, aux: &AuxSymbols) -> Vec<Formula> {
    assert_no_choice(p);
    let mut out = Vec::new();
    for (c, component) in sccs.components.iter().enumerate() {
        if !sccs.nontrivial[c] {
            continue;
        }
        for &a in component {
            let x_a = aux.rank_vector(a).unwrap();
            let width = x_a.width();
            out.push(implies(not(positive_literal(a)), eq(x_a, Term::bin(0, width))));
        }
    }
    out
}

/// Full translation: normalize choice rules, then take the union of the
/// completion, the native weight-body encodings, the weak ranking
/// constraints, and the strong constraints the variant selects. The
/// theory's projection is the Herbrand base of the input program.
pub fn translate(p: &Program, variant: Variant) -> BvTheory {
    let normalized = normalize_choice(p);
    let graph = build_depgraph(&normalized);
    let sccs = compute_sccs(&graph);
    let aux = aux_symbols(&normalized, &sccs);

    let mut theory = BvTheory::new();
    for a in normalized.herbrand_base() {
        theory.declare_prop(&atom_symbol(a));
    }
    for sym in aux.bd.values() {
        theory.declare_prop(sym);
    }
    for (c, component) in sccs.components.iter().enumerate() {
        if !sccs.nontrivial[c] {
            continue;
        }
        for &a in component {
            theory.declare_prop(aux.ext_symbol(a).unwrap());
            theory.declare_prop(aux.int_symbol(a).unwrap());
            theory.declare_vector(&format!("x_{a}"), sccs.widths[c]);
        }
    }
    for chain in aux.sums.values() {
        for sym in &chain.symbols {
            theory.declare_vector(sym, chain.width);
        }
    }

    for f in clark_completion(&normalized, &aux) {
        theory.assert_formula(f);
    }
    for (i, rule) in normalized.rules.iter().enumerate() {
        if rule.is_weighted() {
            for f in encode_weight_body(&normalized, i, &aux) {
                theory.assert_formula(f);
            }
        }
    }
    for f in weak_ranking(&normalized, &sccs, &aux) {
        theory.assert_formula(f);
    }
    if variant.strong_local {
        for f in strong_local(&normalized, &sccs, &aux) {
            theory.assert_formula(f);
        }
    }
    if variant.strong_global {
        for f in strong_global(&normalized, &sccs, &aux) {
            theory.assert_formula(f);
        }
    }
    if variant.is_strong() {
        for f in clear_false(&normalized, &sccs, &aux) {
            theory.assert_formula(f);
        }
    }

    theory.projection = p.herbrand_base().into_iter().map(atom_symbol).collect();
    theory
}

/// Completion plus weight-body encodings alone, without any ranking
/// constraints: its models are the supported models. Diagnostic surface.
pub fn completion_theory(p: &Program) -> BvTheory {
    let normalized = normalize_choice(p);
    let graph = build_depgraph(&normalized);
    let sccs = compute_sccs(&graph);
    let aux = aux_symbols(&normalized, &sccs);

    let mut theory = BvTheory::new();
    for a in normalized.herbrand_base() {
        theory.declare_prop(&atom_symbol(a));
    }
    for sym in aux.bd.values() {
        theory.declare_prop(sym);
    }
    for chain in aux.sums.values() {
        for sym in &chain.symbols {
            theory.declare_vector(sym, chain.width);
        }
    }
    for f in clark_completion(&normalized, &aux) {
        theory.assert_formula(f);
    }
    for (i, rule) in normalized.rules.iter().enumerate() {
        if rule.is_weighted() {
            for f in encode_weight_body(&normalized, i, &aux) {
                theory.assert_formula(f);
            }
        }
    }
    theory.projection = p.herbrand_base().into_iter().map(atom_symbol).collect();
    theory
}

//! Ground program data model, the smodels numeric reader/writer, and
//! structural simplification.
//!
//! The wire format is the whitespace-separated integer format produced by
//! smodels-compatible grounders, one rule per line:
//!
//! ```text
//! 1 h nb nn neg... pos...             normal rule
//! 2 h nb nn bound neg... pos...       cardinality rule (lower bound)
//! 3 k h1..hk nb nn neg... pos...      choice rule
//! 5 h bound nb nn neg... pos... w...  weight rule (neg weights, then pos)
//! 0                                   end of rules
//! id name                             symbol table, terminated by 0
//! B+ ids... 0                         compute: forced true
//! B- ids... 0                         compute: forced false
//! n                                   model count (read and ignored)
//! ```
//!
//! Minimize statements (type 6) are rejected with a diagnostic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Atom ids are positive; 0 is the wire-format terminator and never names
/// an atom.
pub type AtomId = u32;

/// Table of atoms 1..=len with optional symbol names. Unnamed atoms are
/// auxiliary/hidden.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtomTable {
    len: u32,
    names: BTreeMap<AtomId, String>,
}

impl AtomTable {
    pub fn with_len(len: u32) -> Self {
        AtomTable { len, names: BTreeMap::new() }
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, id: AtomId) -> bool {
        id >= 1 && id <= self.len
    }

    /// Grow the table so that `id` is a valid atom.
    pub fn ensure(&mut self, id: AtomId) {
        if id > self.len {
            self.len = id;
        }
    }

    /// Allocate a fresh unnamed atom.
    pub fn fresh(&mut self) -> AtomId {
        self.len += 1;
        self.len
    }

    pub fn set_name(&mut self, id: AtomId, name: impl Into<String>) {
        self.ensure(id);
        self.names.insert(id, name.into());
    }

    pub fn name(&self, id: AtomId) -> Option<&str> {
        self.names.get(&id).map(String::as_str)
    }

    /// Symbol name if present, `_<id>` otherwise.
    pub fn display_name(&self, id: AtomId) -> String {
        match self.names.get(&id) {
            Some(n) => n.clone(),
            None => format!("_{id}"),
        }
    }

    pub fn names(&self) -> impl Iterator<Item = (AtomId, &str)> {
        self.names.iter().map(|(id, n)| (*id, n.as_str()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    Normal,
    Choice,
    Cardinality,
    Weight,
}

/// A ground rule. `heads` is a singleton except for choice rules. `bound`
/// and `weights` are meaningful for cardinality/weight rules only;
/// `weights` runs parallel to `pos_body ++ neg_body`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rule {
    pub kind: RuleKind,
    pub heads: Vec<AtomId>,
    pub pos_body: Vec<AtomId>,
    pub neg_body: Vec<AtomId>,
    pub bound: u64,
    pub weights: Vec<u64>,
}

impl Rule {
    pub fn normal(head: AtomId, pos: Vec<AtomId>, neg: Vec<AtomId>) -> Rule {
        Rule { kind: RuleKind::Normal, heads: vec![head], pos_body: pos, neg_body: neg, bound: 0, weights: Vec::new() }
    }

    pub fn fact(head: AtomId) -> Rule {
        Rule::normal(head, Vec::new(), Vec::new())
    }

    pub fn choice(heads: Vec<AtomId>, pos: Vec<AtomId>, neg: Vec<AtomId>) -> Rule {
        Rule { kind: RuleKind::Choice, heads, pos_body: pos, neg_body: neg, bound: 0, weights: Vec::new() }
    }

    pub fn cardinality(head: AtomId, bound: u64, pos: Vec<AtomId>, neg: Vec<AtomId>) -> Rule {
        Rule { kind: RuleKind::Cardinality, heads: vec![head], pos_body: pos, neg_body: neg, bound, weights: Vec::new() }
    }

    pub fn weight(head: AtomId, bound: u64, pos: Vec<(AtomId, u64)>, neg: Vec<(AtomId, u64)>) -> Rule {
        let mut weights = Vec::with_capacity(pos.len() + neg.len());
        let pos_body: Vec<AtomId> = pos.iter().map(|&(a, _)| a).collect();
        let neg_body: Vec<AtomId> = neg.iter().map(|&(a, _)| a).collect();
        weights.extend(pos.iter().map(|&(_, w)| w));
        weights.extend(neg.iter().map(|&(_, w)| w));
        Rule { kind: RuleKind::Weight, heads: vec![head], pos_body, neg_body, bound, weights }
    }

    /// Head of a single-headed rule.
    pub fn head(&self) -> AtomId {
        debug_assert!(self.kind != RuleKind::Choice || self.heads.len() == 1);
        self.heads[0]
    }

    pub fn is_weighted(&self) -> bool {
        matches!(self.kind, RuleKind::Cardinality | RuleKind::Weight)
    }

    /// Weight of the i-th body literal, counting `pos_body ++ neg_body`.
    /// Cardinality rules weigh every literal 1.
    pub fn literal_weight(&self, i: usize) -> u64 {
        match self.kind {
            RuleKind::Weight => self.weights[i],
            _ => 1,
        }
    }

    pub fn body_len(&self) -> usize {
        self.pos_body.len() + self.neg_body.len()
    }

    pub fn body_is_empty(&self) -> bool {
        self.body_len() == 0
    }

    pub fn total_weight(&self) -> u64 {
        (0..self.body_len()).map(|i| self.literal_weight(i)).sum()
    }

    pub fn atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.heads.iter().chain(&self.pos_body).chain(&self.neg_body).copied()
    }
}

/// A ground program: atom table, rules, and the compute statements (B+
/// atoms must be true in every model, B- atoms false). Integrity
/// constraints are rules whose head atom is in `forced_false`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub atoms: AtomTable,
    pub rules: Vec<Rule>,
    pub forced_true: BTreeSet<AtomId>,
    pub forced_false: BTreeSet<AtomId>,
}

impl Program {
    pub fn new(atom_count: u32) -> Program {
        Program { atoms: AtomTable::with_len(atom_count), ..Default::default() }
    }

    pub fn add_rule(&mut self, rule: Rule) {
        for a in rule.atoms() {
            self.atoms.ensure(a);
        }
        self.rules.push(rule);
    }

    /// Atoms appearing in rules or compute statements.
    pub fn herbrand_base(&self) -> BTreeSet<AtomId> {
        let mut hb: BTreeSet<AtomId> = self.rules.iter().flat_map(|r| r.atoms().collect::<Vec<_>>()).collect();
        hb.extend(&self.forced_true);
        hb.extend(&self.forced_false);
        hb
    }
}

impl fmt::Display for Program {
    /// Plain-text writer for debugging; not part of the wire format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |id: &AtomId| self.atoms.display_name(*id);
        let lits = |rule: &Rule| -> Vec<String> {
            let mut out = Vec::new();
            for (i, a) in rule.pos_body.iter().enumerate() {
                match rule.kind {
                    RuleKind::Weight => out.push(format!("{}={}", name(a), rule.weights[i])),
                    _ => out.push(name(a)),
                }
            }
            for (j, c) in rule.neg_body.iter().enumerate() {
                match rule.kind {
                    RuleKind::Weight => {
                        out.push(format!("not {}={}", name(c), rule.weights[rule.pos_body.len() + j]))
                    }
                    _ => out.push(format!("not {}", name(c))),
                }
            }
            out
        };
        for rule in &self.rules {
            let body = lits(rule);
            match rule.kind {
                RuleKind::Normal => {
                    if body.is_empty() {
                        writeln!(f, "{}.", name(&rule.heads[0]))?;
                    } else {
                        writeln!(f, "{} :- {}.", name(&rule.heads[0]), body.join(", "))?;
                    }
                }
                RuleKind::Choice => {
                    let heads: Vec<String> = rule.heads.iter().map(name).collect();
                    if body.is_empty() {
                        writeln!(f, "{{{}}}.", heads.join(", "))?;
                    } else {
                        writeln!(f, "{{{}}} :- {}.", heads.join(", "), body.join(", "))?;
                    }
                }
                RuleKind::Cardinality => {
                    writeln!(f, "{} :- {} {{ {} }}.", name(&rule.heads[0]), rule.bound, body.join(", "))?;
                }
                RuleKind::Weight => {
                    writeln!(f, "{} :- {} [ {} ].", name(&rule.heads[0]), rule.bound, body.join(", "))?;
                }
            }
        }
        if !self.forced_true.is_empty() || !self.forced_false.is_empty() {
            let mut items: Vec<String> = self.forced_true.iter().map(&name).collect();
            items.extend(self.forced_false.iter().map(|a| format!("not {}", name(a))));
            writeln!(f, "compute {{ {} }}.", items.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("input is not valid UTF-8")]
    Utf8,
    #[error("line {line}: unknown rule type {code}")]
    UnknownRuleType { line: usize, code: i64 },
    #[error("line {line}: minimize unsupported")]
    MinimizeUnsupported { line: usize },
    #[error("line {line}: malformed integer '{token}'")]
    BadInteger { line: usize, token: String },
    #[error("line {line}: negative count or weight")]
    NegativeCount { line: usize },
    #[error("line {line}: atom id must be positive")]
    ZeroAtomId { line: usize },
    #[error("line {line}: rule line ends prematurely")]
    RuleTooShort { line: usize },
    #[error("line {line}: unexpected trailing tokens")]
    TrailingTokens { line: usize },
    #[error("line {line}: weight rule has {literals} literals but {weights} weights")]
    WeightCountMismatch { line: usize, literals: usize, weights: usize },
    #[error("line {line}: duplicate symbol entry for atom {id}")]
    DuplicateSymbol { line: usize, id: AtomId },
    #[error("line {line}: expected '{marker}' marker")]
    MissingMarker { line: usize, marker: &'static str },
    #[error("unexpected end of input while reading {section}")]
    UnexpectedEnd { section: &'static str },
}

struct Cursor<'a> {
    items: &'a [i64],
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn next(&mut self) -> Result<i64, ParseError> {
        let v = self.items.get(self.pos).copied().ok_or(ParseError::RuleTooShort { line: self.line })?;
        self.pos += 1;
        Ok(v)
    }

    fn atom(&mut self) -> Result<AtomId, ParseError> {
        let v = self.next()?;
        if v <= 0 {
            return Err(if v == 0 {
                ParseError::ZeroAtomId { line: self.line }
            } else {
                ParseError::NegativeCount { line: self.line }
            });
        }
        u32::try_from(v).map_err(|_| ParseError::BadInteger { line: self.line, token: v.to_string() })
    }

    fn count(&mut self) -> Result<usize, ParseError> {
        let v = self.next()?;
        if v < 0 {
            return Err(ParseError::NegativeCount { line: self.line });
        }
        Ok(v as usize)
    }

    fn nonneg(&mut self) -> Result<u64, ParseError> {
        let v = self.next()?;
        if v < 0 {
            return Err(ParseError::NegativeCount { line: self.line });
        }
        Ok(v as u64)
    }

    fn atoms(&mut self, n: usize) -> Result<Vec<AtomId>, ParseError> {
        (0..n).map(|_| self.atom()).collect()
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos != self.items.len() {
            return Err(ParseError::TrailingTokens { line: self.line });
        }
        Ok(())
    }
}

fn int_tokens(line: &str, line_no: usize) -> Result<Vec<i64>, ParseError> {
    line.split_whitespace()
        .map(|tok| tok.parse::<i64>().map_err(|_| ParseError::BadInteger { line: line_no, token: tok.to_string() }))
        .collect()
}

/// Decode a complete smodels-format document.
pub fn parse_smodels(input: &[u8]) -> Result<Program, ParseError> {
    let text = std::str::from_utf8(input).map_err(|_| ParseError::Utf8)?;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut program = Program::default();

    // Rules.
    loop {
        let (line_no, line) = lines.next().ok_or(ParseError::UnexpectedEnd { section: "rules" })?;
        if line.is_empty() {
            continue;
        }
        let items = int_tokens(line, line_no)?;
        if items == [0] {
            break;
        }
        let mut cur = Cursor { items: &items, pos: 0, line: line_no };
        let code = cur.next()?;
        let rule = match code {
            1 => {
                let head = cur.atom()?;
                let nb = cur.count()?;
                let nn = cur.count()?;
                if nn > nb {
                    return Err(ParseError::NegativeCount { line: line_no });
                }
                let neg = cur.atoms(nn)?;
                let pos = cur.atoms(nb - nn)?;
                Rule::normal(head, pos, neg)
            }
            2 => {
                let head = cur.atom()?;
                let nb = cur.count()?;
                let nn = cur.count()?;
                if nn > nb {
                    return Err(ParseError::NegativeCount { line: line_no });
                }
                let bound = cur.nonneg()?;
                let neg = cur.atoms(nn)?;
                let pos = cur.atoms(nb - nn)?;
                Rule::cardinality(head, bound, pos, neg)
            }
            3 => {
                let k = cur.count()?;
                let heads = cur.atoms(k)?;
                let nb = cur.count()?;
                let nn = cur.count()?;
                if nn > nb {
                    return Err(ParseError::NegativeCount { line: line_no });
                }
                let neg = cur.atoms(nn)?;
                let pos = cur.atoms(nb - nn)?;
                Rule::choice(heads, pos, neg)
            }
            5 => {
                let head = cur.atom()?;
                let bound = cur.nonneg()?;
                let nb = cur.count()?;
                let nn = cur.count()?;
                if nn > nb {
                    return Err(ParseError::NegativeCount { line: line_no });
                }
                let neg = cur.atoms(nn)?;
                let pos = cur.atoms(nb - nn)?;
                let remaining = items.len() - cur.pos;
                if remaining != nb {
                    return Err(ParseError::WeightCountMismatch { line: line_no, literals: nb, weights: remaining });
                }
                let w_neg: Vec<u64> = (0..nn).map(|_| cur.nonneg()).collect::<Result<_, _>>()?;
                let w_pos: Vec<u64> = (0..nb - nn).map(|_| cur.nonneg()).collect::<Result<_, _>>()?;
                Rule::weight(
                    head,
                    bound,
                    pos.into_iter().zip(w_pos).collect(),
                    neg.into_iter().zip(w_neg).collect(),
                )
            }
            6 => return Err(ParseError::MinimizeUnsupported { line: line_no }),
            _ => return Err(ParseError::UnknownRuleType { line: line_no, code }),
        };
        cur.finish()?;
        program.add_rule(rule);
    }

    // Symbol table.
    loop {
        let (line_no, line) = lines.next().ok_or(ParseError::UnexpectedEnd { section: "symbols" })?;
        if line.is_empty() {
            continue;
        }
        if line == "0" {
            break;
        }
        let (id_tok, name) = line.split_once(char::is_whitespace).ok_or(ParseError::RuleTooShort { line: line_no })?;
        let id: i64 = id_tok.parse().map_err(|_| ParseError::BadInteger { line: line_no, token: id_tok.to_string() })?;
        if id <= 0 {
            return Err(ParseError::ZeroAtomId { line: line_no });
        }
        let id = id as AtomId;
        if program.atoms.name(id).is_some() {
            return Err(ParseError::DuplicateSymbol { line: line_no, id });
        }
        program.atoms.set_name(id, name.trim());
    }

    // Compute statements.
    for (marker, section) in [("B+", "compute B+"), ("B-", "compute B-")] {
        let (line_no, line) = loop {
            let (n, l) = lines.next().ok_or(ParseError::UnexpectedEnd { section })?;
            if !l.is_empty() {
                break (n, l);
            }
        };
        if line != marker {
            return Err(ParseError::MissingMarker { line: line_no, marker: if marker == "B+" { "B+" } else { "B-" } });
        }
        'ids: loop {
            let (line_no, line) = lines.next().ok_or(ParseError::UnexpectedEnd { section })?;
            if line.is_empty() {
                continue;
            }
            for item in int_tokens(line, line_no)? {
                if item == 0 {
                    break 'ids;
                }
                if item < 0 {
                    return Err(ParseError::NegativeCount { line: line_no });
                }
                let id = item as AtomId;
                program.atoms.ensure(id);
                if marker == "B+" {
                    program.forced_true.insert(id);
                } else {
                    program.forced_false.insert(id);
                }
            }
        }
    }

    // Model count line: read and ignored.
    loop {
        let (line_no, line) = lines.next().ok_or(ParseError::UnexpectedEnd { section: "model count" })?;
        if line.is_empty() {
            continue;
        }
        int_tokens(line, line_no)?;
        break;
    }

    Ok(program)
}

/// Re-serialize a program in the smodels numeric format. Parsing the
/// output yields a structurally equal program.
pub fn emit_smodels(p: &Program) -> String {
    let mut out = String::new();
    for rule in &p.rules {
        let nb = rule.body_len();
        let nn = rule.neg_body.len();
        let mut items: Vec<u64> = Vec::new();
        match rule.kind {
            RuleKind::Normal => {
                items.push(1);
                items.push(rule.heads[0] as u64);
                items.extend([nb as u64, nn as u64]);
            }
            RuleKind::Cardinality => {
                items.push(2);
                items.push(rule.heads[0] as u64);
                items.extend([nb as u64, nn as u64, rule.bound]);
            }
            RuleKind::Choice => {
                items.push(3);
                items.push(rule.heads.len() as u64);
                items.extend(rule.heads.iter().map(|&h| h as u64));
                items.extend([nb as u64, nn as u64]);
            }
            RuleKind::Weight => {
                items.push(5);
                items.push(rule.heads[0] as u64);
                items.extend([rule.bound, nb as u64, nn as u64]);
            }
        }
        items.extend(rule.neg_body.iter().map(|&a| a as u64));
        items.extend(rule.pos_body.iter().map(|&a| a as u64));
        if rule.kind == RuleKind::Weight {
            // Wire order is neg weights then pos weights.
            items.extend(rule.weights[rule.pos_body.len()..].iter().copied());
            items.extend(rule.weights[..rule.pos_body.len()].iter().copied());
        }
        let rendered: Vec<String> = items.iter().map(u64::to_string).collect();
        out.push_str(&rendered.join(" "));
        out.push('\n');
    }
    out.push_str("0\n");
    for (id, name) in p.atoms.names() {
        out.push_str(&format!("{id} {name}\n"));
    }
    out.push_str("0\nB+\n");
    for id in &p.forced_true {
        out.push_str(&format!("{id}\n"));
    }
    out.push_str("0\nB-\n");
    for id in &p.forced_false {
        out.push_str(&format!("{id}\n"));
    }
    out.push_str("0\n1\n");
    out
}

fn dedup_keep_order(ids: &[AtomId]) -> Vec<AtomId> {
    let mut seen = BTreeSet::new();
    ids.iter().copied().filter(|a| seen.insert(*a)).collect()
}

/// Structural simplification: drops normal rules that are tautological
/// (head in own positive body) or have an unsatisfiable body (an atom both
/// positive and negative), and deduplicates body literals of normal and
/// choice rules. Cardinality and weight rules are preserved verbatim since
/// duplicate occurrences carry weight there. Idempotent and answer-set
/// preserving.
pub fn simplify(p: &Program) -> Program {
    let mut out = p.clone();
    out.rules = p
        .rules
        .iter()
        .filter_map(|rule| match rule.kind {
            RuleKind::Normal => {
                let pos = dedup_keep_order(&rule.pos_body);
                let neg = dedup_keep_order(&rule.neg_body);
                if pos.contains(&rule.heads[0]) {
                    return None;
                }
                if pos.iter().any(|a| neg.contains(a)) {
                    return None;
                }
                Some(Rule::normal(rule.heads[0], pos, neg))
            }
            RuleKind::Choice => {
                let mut r = rule.clone();
                r.pos_body = dedup_keep_order(&rule.pos_body);
                r.neg_body = dedup_keep_order(&rule.neg_body);
                Some(r)
            }
            RuleKind::Cardinality | RuleKind::Weight => Some(rule.clone()),
        })
        .collect();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub rule: Option<usize>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        match self.rule {
            Some(i) => write!(f, "{tag}: rule {}: {}", i + 1, self.message),
            None => write!(f, "{tag}: {}", self.message),
        }
    }
}

/// Result of [`validate`]: the cleaned program plus all diagnostics.
#[derive(Clone, Debug)]
pub struct Validated {
    pub program: Program,
    pub diagnostics: Vec<Diagnostic>,
}

impl Validated {
    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(|d| d.severity == Severity::Error)
    }
}

/// Check structural well-formedness. Dangling atom ids and zero weights
/// are errors; a cardinality/weight rule whose bound exceeds its total
/// weight can never fire and is dropped with a warning. Weight or
/// cardinality rules with a positive body atom in the same component as
/// their head get a warning: the ranking constraints do not cover
/// recursion through weighted bodies (see the module docs of
/// [`crate::translate`]).
pub fn validate(p: &Program) -> Validated {
    let mut diagnostics = Vec::new();
    let mut drop: BTreeSet<usize> = BTreeSet::new();

    for (i, rule) in p.rules.iter().enumerate() {
        for a in rule.atoms() {
            if !p.atoms.contains(a) {
                diagnostics.push(Diagnostic {
                    severity: Severity::Error,
                    rule: Some(i),
                    message: format!("dangling atom id {a} (table has {} atoms)", p.atoms.len()),
                });
            }
        }
        if rule.kind == RuleKind::Weight && rule.weights.contains(&0) {
            diagnostics.push(Diagnostic {
                severity: Severity::Error,
                rule: Some(i),
                message: "zero weight in weight rule".to_string(),
            });
        }
        if rule.is_weighted() && rule.bound > rule.total_weight() {
            diagnostics.push(Diagnostic {
                severity: Severity::Warning,
                rule: Some(i),
                message: format!(
                    "bound {} exceeds total body weight {}; rule can never fire and is dropped",
                    rule.bound,
                    rule.total_weight()
                ),
            });
            drop.insert(i);
        }
    }
    for a in p.forced_true.union(&p.forced_false) {
        if !p.atoms.contains(*a) {
            diagnostics.push(Diagnostic {
                severity: Severity::Error,
                rule: None,
                message: format!("compute statement references dangling atom id {a}"),
            });
        }
    }

    // Recursion through weighted bodies is outside what the ranking
    // constraints can express; flag it.
    let graph = crate::depgraph::build_depgraph(p);
    let sccs = crate::depgraph::compute_sccs(&graph);
    for (i, rule) in p.rules.iter().enumerate() {
        if !rule.is_weighted() || drop.contains(&i) {
            continue;
        }
        let head = rule.heads[0];
        if rule.pos_body.iter().any(|b| sccs.same_component(*b, head)) {
            diagnostics.push(Diagnostic {
                severity: Severity::Warning,
                rule: Some(i),
                message: "weighted rule is recursive (positive body atom shares the head's component); \
                          the bit-vector translation may reject valid answer sets"
                    .to_string(),
            });
        }
    }

    let mut program = p.clone();
    if !drop.is_empty() {
        program.rules = p
            .rules
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, r)| r.clone())
            .collect();
    }
    Validated { program, diagnostics }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{sample_program, sample_smodels_text};

    #[test]
    fn parse_normal_rule() {
        // `1 2 2 1 3 4` is "a2 <- a4, not a3".
        let text = "1 2 2 1 3 4\n0\n0\nB+\n0\nB-\n0\n1\n";
        let p = parse_smodels(text.as_bytes()).unwrap();
        assert_eq!(p.rules, vec![Rule::normal(2, vec![4], vec![3])]);
        assert_eq!(p.atoms.len(), 4);
    }

    /// Independent decoder for a single weight-rule line, written against
    /// the format grammar; keeps the parser honest.
    fn hand_decode_weight_line(line: &str) -> Rule {
        let v: Vec<u64> = line.split_whitespace().map(|t| t.parse().unwrap()).collect();
        assert_eq!(v[0], 5);
        let (head, bound, nb, nn) = (v[1] as AtomId, v[2], v[3] as usize, v[4] as usize);
        let neg: Vec<AtomId> = v[5..5 + nn].iter().map(|&x| x as AtomId).collect();
        let pos: Vec<AtomId> = v[5 + nn..5 + nb].iter().map(|&x| x as AtomId).collect();
        let w_neg = &v[5 + nb..5 + nb + nn];
        let w_pos = &v[5 + nb + nn..5 + 2 * nb];
        Rule::weight(
            head,
            bound,
            pos.iter().copied().zip(w_pos.iter().copied()).collect(),
            neg.iter().copied().zip(w_neg.iter().copied()).collect(),
        )
    }

    #[test]
    fn parse_weight_rule() {
        // "a2 <- 3 <= {a4=1, a5=2, not a3=2}"
        let line = "5 2 3 3 1 3 4 5 2 1 2";
        let text = format!("{line}\n0\n0\nB+\n0\nB-\n0\n1\n");
        let p = parse_smodels(text.as_bytes()).unwrap();
        let expected = Rule::weight(2, 3, vec![(4, 1), (5, 2)], vec![(3, 2)]);
        assert_eq!(p.rules, vec![expected.clone()]);
        assert_eq!(hand_decode_weight_line(line), expected);
    }

    #[test]
    fn parse_sample_round_trips_through_oracle() {
        let p = parse_smodels(sample_smodels_text().as_bytes()).unwrap();
        assert_eq!(p, sample_program());
        let sets: BTreeSet<BTreeSet<AtomId>> =
            crate::oracle::enumerate_answer_sets(&p, 20).unwrap().into_iter().collect();
        let expected: BTreeSet<BTreeSet<AtomId>> =
            [[2, 3, 5].into_iter().collect(), [4].into_iter().collect()].into_iter().collect();
        assert_eq!(sets, expected);
    }

    #[test]
    fn parse_rejects_minimize() {
        let text = "6 0 2 1 3 4 1 1\n0\n0\nB+\n0\nB-\n0\n1\n";
        let err = parse_smodels(text.as_bytes()).unwrap_err();
        assert_eq!(err, ParseError::MinimizeUnsupported { line: 1 });
    }

    #[test]
    fn parse_rejects_unknown_rule_type() {
        let err = parse_smodels("9 1 0 0\n0\n0\nB+\n0\nB-\n0\n1\n".as_bytes()).unwrap_err();
        assert_eq!(err, ParseError::UnknownRuleType { line: 1, code: 9 });
    }

    #[test]
    fn parse_rejects_truncated_stream() {
        let err = parse_smodels("1 2 2 1 3 4\n0\n0\nB+\n0\n".as_bytes()).unwrap_err();
        assert_eq!(err, ParseError::UnexpectedEnd { section: "compute B-" });
    }

    #[test]
    fn parse_rejects_weight_count_mismatch() {
        let err = parse_smodels("5 2 3 3 1 3 4 5 2 1\n0\n0\nB+\n0\nB-\n0\n1\n".as_bytes()).unwrap_err();
        assert_eq!(err, ParseError::WeightCountMismatch { line: 1, literals: 3, weights: 2 });
    }

    #[test]
    fn parse_rejects_negative_counts() {
        let err = parse_smodels("1 2 -1 0\n0\n0\nB+\n0\nB-\n0\n1\n".as_bytes()).unwrap_err();
        assert_eq!(err, ParseError::NegativeCount { line: 1 });
    }

    #[test]
    fn simplify_removes_tautology() {
        let mut p = Program::new(1);
        p.add_rule(Rule::normal(1, vec![1], vec![]));
        assert!(simplify(&p).rules.is_empty());
    }

    #[test]
    fn simplify_dedups_body_literals() {
        let mut p = Program::new(3);
        p.add_rule(Rule::normal(1, vec![2, 2], vec![]));
        p.add_rule(Rule::fact(3));
        let s = simplify(&p);
        assert_eq!(s.rules, vec![Rule::normal(1, vec![2], vec![]), Rule::fact(3)]);
    }

    #[test]
    fn simplify_drops_unsatisfiable_body() {
        let mut p = Program::new(2);
        p.add_rule(Rule::normal(1, vec![2], vec![2]));
        assert!(simplify(&p).rules.is_empty());
    }

    #[test]
    fn simplify_keeps_sample_unchanged() {
        let p = sample_program();
        assert_eq!(simplify(&p), p);
    }

    #[test]
    fn simplify_is_idempotent_on_corpus() {
        for seed in 0..40u64 {
            let p = crate::corpus::random_program(seed, &Default::default());
            let once = simplify(&p);
            assert_eq!(simplify(&once), once, "seed {seed}");
        }
    }

    #[test]
    fn simplify_preserves_answer_sets_on_corpus() {
        for seed in 0..40u64 {
            let p = crate::corpus::random_program(seed, &Default::default());
            if p.herbrand_base().len() > 8 {
                continue;
            }
            let before = crate::oracle::enumerate_answer_sets(&p, 10).unwrap();
            let after = crate::oracle::enumerate_answer_sets(&simplify(&p), 10).unwrap();
            assert_eq!(before, after, "seed {seed}");
        }
    }

    #[test]
    fn validate_accepts_well_formed_program() {
        let v = validate(&sample_program());
        assert!(v.diagnostics.is_empty());
        assert_eq!(v.program, sample_program());
    }

    #[test]
    fn validate_drops_overweight_bound() {
        let mut p = Program::new(3);
        p.add_rule(Rule::weight(1, 9, vec![(2, 2), (3, 3)], vec![]));
        p.add_rule(Rule::fact(2));
        let v = validate(&p);
        assert_eq!(v.diagnostics.len(), 1);
        assert_eq!(v.diagnostics[0].severity, Severity::Warning);
        assert_eq!(v.program.rules, vec![Rule::fact(2)]);
    }

    #[test]
    fn validate_reports_dangling_atom() {
        let mut p = Program::new(5);
        p.rules.push(Rule::normal(1, vec![99], vec![]));
        let v = validate(&p);
        assert!(v.has_errors());
        assert!(v.diagnostics[0].message.contains("dangling atom id 99"));
    }

    #[test]
    fn validate_reports_zero_weight() {
        let mut p = Program::new(2);
        p.add_rule(Rule::weight(1, 1, vec![(2, 0)], vec![]));
        let v = validate(&p);
        assert!(v.has_errors());
    }

    #[test]
    fn validate_warns_on_recursive_weight_rule() {
        let mut p = Program::new(2);
        p.add_rule(Rule::weight(1, 1, vec![(2, 1)], vec![]));
        p.add_rule(Rule::normal(2, vec![1], vec![]));
        let v = validate(&p);
        assert!(v.diagnostics.iter().any(|d| d.message.contains("recursive")));
        assert!(!v.has_errors());
    }

    #[test]
    fn emit_parse_identity_on_sample() {
        let p = sample_program();
        assert_eq!(parse_smodels(emit_smodels(&p).as_bytes()).unwrap(), p);
    }

    proptest::proptest! {
        #[test]
        fn emit_parse_identity_on_random_programs(seed in proptest::prelude::any::<u64>()) {
            let p = crate::corpus::random_program(seed, &Default::default());
            let back = parse_smodels(emit_smodels(&p).as_bytes()).unwrap();
            proptest::prop_assert_eq!(back, p);
        }
    }

    #[test]
    fn display_writer_is_readable() {
        let text = format!("{}", sample_program());
        assert!(text.contains("a :- b, c."));
        assert!(text.contains("b :- a, not d."));
    }
}

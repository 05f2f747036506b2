//! Bit-vector logic kernel: terms and formulas over propositional atoms
//! and fixed-width vector constants, evaluation, bounded model
//! enumeration, and SMT-LIB v2 text in the `QF_BV` subset the translator
//! needs (`bvadd`, `bvult`, `=`, `not`, `and`, `or`, `=>`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub type Width = u32;

/// A term denotes an unsigned value below 2^width. Addition is modular.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Term {
    Const { value: u64, width: Width },
    Var { name: String, width: Width },
    Add(Box<Term>, Box<Term>),
}

impl Term {
    /// `bin(value)` at the given width.
    pub fn bin(value: u64, width: Width) -> Term {
        assert!((1..=63).contains(&width), "vector width {width} out of range");
        assert!(value < 1u64 << width, "constant {value} does not fit in {width} bits");
        Term::Const { value, width }
    }

    pub fn var(name: impl Into<String>, width: Width) -> Term {
        assert!((1..=63).contains(&width), "vector width {width} out of range");
        Term::Var { name: name.into(), width }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(lhs: Term, rhs: Term) -> Term {
        assert_eq!(lhs.width(), rhs.width(), "operand widths differ");
        Term::Add(Box::new(lhs), Box::new(rhs))
    }

    pub fn width(&self) -> Width {
        match self {
            Term::Const { width, .. } | Term::Var { width, .. } => *width,
            Term::Add(lhs, _) => lhs.width(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Eq(Term, Term),
    Lt(Term, Term),
}

pub fn atom(name: impl Into<String>) -> Formula {
    Formula::Atom(name.into())
}

pub fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

pub fn implies(a: Formula, b: Formula) -> Formula {
    Formula::Implies(Box::new(a), Box::new(b))
}

pub fn iff(a: Formula, b: Formula) -> Formula {
    Formula::Iff(Box::new(a), Box::new(b))
}

pub fn eq(a: Term, b: Term) -> Formula {
    assert_eq!(a.width(), b.width(), "operand widths differ");
    Formula::Eq(a, b)
}

pub fn lt(a: Term, b: Term) -> Formula {
    assert_eq!(a.width(), b.width(), "operand widths differ");
    Formula::Lt(a, b)
}

/// Conjunction; the empty case is true and singletons collapse.
pub fn conj(mut parts: Vec<Formula>) -> Formula {
    match parts.len() {
        0 => Formula::True,
        1 => parts.pop().unwrap(),
        _ => Formula::And(parts),
    }
}

/// Disjunction; the empty case is false and singletons collapse.
pub fn disj(mut parts: Vec<Formula>) -> Formula {
    match parts.len() {
        0 => Formula::False,
        1 => parts.pop().unwrap(),
        _ => Formula::Or(parts),
    }
}

/// A theory: formulas plus the propositional and vector signatures. The
/// projection marks the propositional atoms that stand for source program
/// atoms; everything else is auxiliary.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BvTheory {
    pub formulas: Vec<Formula>,
    pub prop_signature: Vec<String>,
    pub vector_signature: Vec<(String, Width)>,
    pub projection: BTreeSet<String>,
}

impl BvTheory {
    pub fn new() -> BvTheory {
        BvTheory::default()
    }

    pub fn declare_prop(&mut self, name: &str) {
        if !self.prop_signature.iter().any(|n| n == name) {
            self.prop_signature.push(name.to_string());
        }
    }

    pub fn declare_vector(&mut self, name: &str, width: Width) {
        match self.vector_signature.iter().find(|(n, _)| n == name) {
            Some((_, w)) => assert_eq!(*w, width, "vector {name} redeclared at a different width"),
            None => self.vector_signature.push((name.to_string(), width)),
        }
    }

    pub fn assert_formula(&mut self, f: Formula) {
        self.formulas.push(f);
    }

    pub fn vector_width(&self, name: &str) -> Option<Width> {
        self.vector_signature.iter().find(|(n, _)| n == name).map(|(_, w)| *w)
    }
}

/// A model: the set of true atoms plus a total valuation of the vector
/// signature.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BvModel {
    pub true_atoms: BTreeSet<String>,
    pub vector_values: BTreeMap<String, u64>,
}

impl BvModel {
    pub fn project(&self, projection: &BTreeSet<String>) -> BTreeSet<String> {
        self.true_atoms.intersection(projection).cloned().collect()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("vector constant {0} has no value in this model")]
    UnassignedVector(String),
}

fn mask(width: Width) -> u64 {
    (1u64 << width) - 1
}

/// Value of a term under `m`; addition wraps at the term width.
pub fn eval_term(t: &Term, m: &BvModel) -> Result<u64, EvalError> {
    match t {
        Term::Const { value, .. } => Ok(*value),
        Term::Var { name, .. } => m
            .vector_values
            .get(name)
            .copied()
            .ok_or_else(|| EvalError::UnassignedVector(name.clone())),
        Term::Add(a, b) => Ok((eval_term(a, m)?.wrapping_add(eval_term(b, m)?)) & mask(t.width())),
    }
}

/// Truth of a formula under `m`. Atoms absent from `true_atoms` are false.
pub fn eval_formula(f: &Formula, m: &BvModel) -> Result<bool, EvalError> {
    Ok(match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(name) => m.true_atoms.contains(name),
        Formula::Not(g) => !eval_formula(g, m)?,
        Formula::And(parts) => {
            let mut all = true;
            for p in parts {
                all &= eval_formula(p, m)?;
            }
            all
        }
        Formula::Or(parts) => {
            let mut any = false;
            for p in parts {
                any |= eval_formula(p, m)?;
            }
            any
        }
        Formula::Implies(a, b) => !eval_formula(a, m)? || eval_formula(b, m)?,
        Formula::Iff(a, b) => eval_formula(a, m)? == eval_formula(b, m)?,
        Formula::Eq(a, b) => eval_term(a, m)? == eval_term(b, m)?,
        Formula::Lt(a, b) => eval_term(a, m)? < eval_term(b, m)?,
    })
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TheoryError {
    #[error("atom {0} is not declared in the propositional signature")]
    UndeclaredAtom(String),
    #[error("vector {0} is not declared in the vector signature")]
    UndeclaredVector(String),
    #[error("vector {name} used at width {used}, declared at {declared}")]
    VectorWidthClash { name: String, used: Width, declared: Width },
    #[error("operands of widths {0} and {1} cannot be combined")]
    WidthMismatch(Width, Width),
    #[error("duplicate declaration of {0}")]
    DuplicateSymbol(String),
    #[error("constant {value} does not fit in {width} bits")]
    ConstantOverflow { value: u64, width: Width },
    #[error("width {0} is outside the supported range 1..=63")]
    BadWidth(Width),
}

// ---------------------------------------------------------------------
// Compiled, index-based representation used by the enumerators.

#[derive(Clone, Debug)]
enum CTerm {
    Const(u64),
    Var(usize),
    Add(Box<CTerm>, Box<CTerm>, u64),
}

#[derive(Clone, Debug)]
enum CFormula {
    True,
    False,
    Atom(usize),
    Not(Box<CFormula>),
    And(Vec<CFormula>),
    Or(Vec<CFormula>),
    Implies(Box<CFormula>, Box<CFormula>),
    Iff(Box<CFormula>, Box<CFormula>),
    Eq(CTerm, CTerm),
    Lt(CTerm, CTerm),
}

struct SymbolIndex {
    props: Vec<String>,
    vecs: Vec<String>,
    widths: Vec<Width>,
}

fn compile_term(t: &Term, ids: &BTreeMap<&str, usize>, widths: &[Width]) -> Result<(CTerm, Width), TheoryError> {
    match t {
        Term::Const { value, width } => {
            if !(1..=63).contains(width) {
                return Err(TheoryError::BadWidth(*width));
            }
            if *value > mask(*width) {
                return Err(TheoryError::ConstantOverflow { value: *value, width: *width });
            }
            Ok((CTerm::Const(*value), *width))
        }
        Term::Var { name, width } => {
            let id = *ids.get(name.as_str()).ok_or_else(|| TheoryError::UndeclaredVector(name.clone()))?;
            if widths[id] != *width {
                return Err(TheoryError::VectorWidthClash { name: name.clone(), used: *width, declared: widths[id] });
            }
            Ok((CTerm::Var(id), *width))
        }
        Term::Add(a, b) => {
            let (ca, wa) = compile_term(a, ids, widths)?;
            let (cb, wb) = compile_term(b, ids, widths)?;
            if wa != wb {
                return Err(TheoryError::WidthMismatch(wa, wb));
            }
            Ok((CTerm::Add(Box::new(ca), Box::new(cb), mask(wa)), wa))
        }
    }
}

fn compile_formula(
    f: &Formula,
    props: &BTreeMap<&str, usize>,
    vecs: &BTreeMap<&str, usize>,
    widths: &[Width],
) -> Result<CFormula, TheoryError> {
    Ok(match f {
        Formula::True => CFormula::True,
        Formula::False => CFormula::False,
        Formula::Atom(name) => CFormula::Atom(
            *props.get(name.as_str()).ok_or_else(|| TheoryError::UndeclaredAtom(name.clone()))?,
        ),
        Formula::Not(g) => CFormula::Not(Box::new(compile_formula(g, props, vecs, widths)?)),
        Formula::And(parts) => CFormula::And(
            parts.iter().map(|p| compile_formula(p, props, vecs, widths)).collect::<Result<_, _>>()?,
        ),
        Formula::Or(parts) => CFormula::Or(
            parts.iter().map(|p| compile_formula(p, props, vecs, widths)).collect::<Result<_, _>>()?,
        ),
        Formula::Implies(a, b) => CFormula::Implies(
            Box::new(compile_formula(a, props, vecs, widths)?),
            Box::new(compile_formula(b, props, vecs, widths)?),
        ),
        Formula::Iff(a, b) => CFormula::Iff(
            Box::new(compile_formula(a, props, vecs, widths)?),
            Box::new(compile_formula(b, props, vecs, widths)?),
        ),
        Formula::Eq(a, b) => {
            let (ca, wa) = compile_term(a, vecs, widths)?;
            let (cb, wb) = compile_term(b, vecs, widths)?;
            if wa != wb {
                return Err(TheoryError::WidthMismatch(wa, wb));
            }
            CFormula::Eq(ca, cb)
        }
        Formula::Lt(a, b) => {
            let (ca, wa) = compile_term(a, vecs, widths)?;
            let (cb, wb) = compile_term(b, vecs, widths)?;
            if wa != wb {
                return Err(TheoryError::WidthMismatch(wa, wb));
            }
            CFormula::Lt(ca, cb)
        }
    })
}

fn compile(t: &BvTheory) -> Result<(SymbolIndex, Vec<CFormula>), TheoryError> {
    let mut prop_ids: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, name) in t.prop_signature.iter().enumerate() {
        if prop_ids.insert(name, i).is_some() {
            return Err(TheoryError::DuplicateSymbol(name.clone()));
        }
    }
    let mut vec_ids: BTreeMap<&str, usize> = BTreeMap::new();
    let mut widths = Vec::new();
    for (i, (name, w)) in t.vector_signature.iter().enumerate() {
        if !(1..=63).contains(w) {
            return Err(TheoryError::BadWidth(*w));
        }
        if vec_ids.insert(name, i).is_some() || prop_ids.contains_key(name.as_str()) {
            return Err(TheoryError::DuplicateSymbol(name.clone()));
        }
        widths.push(*w);
    }
    let formulas: Vec<CFormula> = t
        .formulas
        .iter()
        .map(|f| compile_formula(f, &prop_ids, &vec_ids, &widths))
        .collect::<Result<_, _>>()?;
    let ix = SymbolIndex { props: t.prop_signature.clone(), vecs: t.vector_signature.iter().map(|(n, _)| n.clone()).collect(), widths };
    Ok((ix, formulas))
}

/// Check that every symbol in the theory's formulas is declared with a
/// consistent width.
pub fn validate_theory(t: &BvTheory) -> Result<(), TheoryError> {
    compile(t).map(|_| ())
}

fn eval_cterm(t: &CTerm, vals: &[u64]) -> u64 {
    match t {
        CTerm::Const(v) => *v,
        CTerm::Var(i) => vals[*i],
        CTerm::Add(a, b, m) => (eval_cterm(a, vals).wrapping_add(eval_cterm(b, vals))) & m,
    }
}

fn eval_cformula(f: &CFormula, props: &[bool], vals: &[u64]) -> bool {
    match f {
        CFormula::True => true,
        CFormula::False => false,
        CFormula::Atom(i) => props[*i],
        CFormula::Not(g) => !eval_cformula(g, props, vals),
        CFormula::And(parts) => parts.iter().all(|p| eval_cformula(p, props, vals)),
        CFormula::Or(parts) => parts.iter().any(|p| eval_cformula(p, props, vals)),
        CFormula::Implies(a, b) => !eval_cformula(a, props, vals) || eval_cformula(b, props, vals),
        CFormula::Iff(a, b) => eval_cformula(a, props, vals) == eval_cformula(b, props, vals),
        CFormula::Eq(a, b) => eval_cterm(a, vals) == eval_cterm(b, vals),
        CFormula::Lt(a, b) => eval_cterm(a, vals) < eval_cterm(b, vals),
    }
}

fn cterm_vars(t: &CTerm, out: &mut BTreeSet<usize>) {
    match t {
        CTerm::Const(_) => {}
        CTerm::Var(i) => {
            out.insert(*i);
        }
        CTerm::Add(a, b, _) => {
            cterm_vars(a, out);
            cterm_vars(b, out);
        }
    }
}

fn cformula_syms(f: &CFormula, props: &mut BTreeSet<usize>, vecs: &mut BTreeSet<usize>) {
    match f {
        CFormula::True | CFormula::False => {}
        CFormula::Atom(i) => {
            props.insert(*i);
        }
        CFormula::Not(g) => cformula_syms(g, props, vecs),
        CFormula::And(parts) | CFormula::Or(parts) => {
            for p in parts {
                cformula_syms(p, props, vecs);
            }
        }
        CFormula::Implies(a, b) | CFormula::Iff(a, b) => {
            cformula_syms(a, props, vecs);
            cformula_syms(b, props, vecs);
        }
        CFormula::Eq(a, b) | CFormula::Lt(a, b) => {
            cterm_vars(a, vecs);
            cterm_vars(b, vecs);
        }
    }
}

#[derive(Clone, Debug)]
enum Step {
    /// Atom defined by an equivalence it is the lone left side of.
    Prop(usize, CFormula),
    /// Vector pinned by a complementary pair of guarded equations.
    Vector(usize, usize, CTerm, CTerm),
}

struct Plan {
    free_props: Vec<usize>,
    enum_vecs: Vec<usize>,
    steps: Vec<Step>,
    bits: u32,
}

/// Decide which symbols have to be enumerated and which follow from the
/// rest. Auxiliary atoms (not in the projection) defined by an `Iff` are
/// computed from their defining equivalence; vector constants pinned by a
/// complementary guarded pair `g -> (v = t1)`, `not g -> (v = t2)` — the
/// cumulative-sum chains of weight bodies — are computed from the guard.
/// Anything that cannot be ordered into such derivations stays
/// enumerated, so the result set always equals naive full enumeration.
fn build_plan(t: &BvTheory, ix: &SymbolIndex, formulas: &[CFormula], derive: bool) -> Plan {
    let n_props = ix.props.len();
    let n_vecs = ix.vecs.len();

    let mut prop_defs: BTreeMap<usize, CFormula> = BTreeMap::new();
    let mut vec_defs: BTreeMap<usize, (usize, CTerm, CTerm)> = BTreeMap::new();

    if derive {
        for f in formulas {
            if let CFormula::Iff(lhs, rhs) = f {
                if let CFormula::Atom(p) = **lhs {
                    if t.projection.contains(&ix.props[p]) || prop_defs.contains_key(&p) {
                        continue;
                    }
                    let (mut ps, mut vs) = (BTreeSet::new(), BTreeSet::new());
                    cformula_syms(rhs, &mut ps, &mut vs);
                    if !ps.contains(&p) {
                        prop_defs.insert(p, (**rhs).clone());
                    }
                }
            }
        }
        let mut guarded: BTreeMap<(usize, usize, bool), CTerm> = BTreeMap::new();
        for f in formulas {
            if let CFormula::Implies(g, c) = f {
                let guard = match &**g {
                    CFormula::Atom(a) => Some((*a, true)),
                    CFormula::Not(inner) => match &**inner {
                        CFormula::Atom(a) => Some((*a, false)),
                        _ => None,
                    },
                    _ => None,
                };
                if let (Some((gatom, polarity)), CFormula::Eq(CTerm::Var(v), rhs)) = (guard, &**c) {
                    let mut vs = BTreeSet::new();
                    cterm_vars(rhs, &mut vs);
                    if !vs.contains(v) {
                        guarded.entry((*v, gatom, polarity)).or_insert_with(|| rhs.clone());
                    }
                }
            }
        }
        for (&(v, g, polarity), rhs) in &guarded {
            if polarity && !vec_defs.contains_key(&v) {
                if let Some(neg_rhs) = guarded.get(&(v, g, false)) {
                    vec_defs.insert(v, (g, rhs.clone(), neg_rhs.clone()));
                }
            }
        }
    }

    let mut prop_known: Vec<bool> = (0..n_props).map(|p| !prop_defs.contains_key(&p)).collect();
    let mut vec_known: Vec<bool> = (0..n_vecs).map(|v| !vec_defs.contains_key(&v)).collect();
    let mut steps = Vec::new();
    let mut pending_props: BTreeSet<usize> = prop_defs.keys().copied().collect();
    let mut pending_vecs: BTreeSet<usize> = vec_defs.keys().copied().collect();

    loop {
        let mut progressed = false;
        for &v in pending_vecs.clone().iter() {
            let (g, on_true, on_false) = &vec_defs[&v];
            let mut vs = BTreeSet::new();
            cterm_vars(on_true, &mut vs);
            cterm_vars(on_false, &mut vs);
            if prop_known[*g] && vs.iter().all(|&x| vec_known[x]) {
                steps.push(Step::Vector(v, *g, on_true.clone(), on_false.clone()));
                vec_known[v] = true;
                pending_vecs.remove(&v);
                progressed = true;
            }
        }
        for &p in pending_props.clone().iter() {
            let rhs = &prop_defs[&p];
            let (mut ps, mut vs) = (BTreeSet::new(), BTreeSet::new());
            cformula_syms(rhs, &mut ps, &mut vs);
            if ps.iter().all(|&x| prop_known[x]) && vs.iter().all(|&x| vec_known[x]) {
                steps.push(Step::Prop(p, rhs.clone()));
                prop_known[p] = true;
                pending_props.remove(&p);
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }

    // Whatever could not be ordered is enumerated after all.
    let derived_props: BTreeSet<usize> = steps
        .iter()
        .filter_map(|s| match s {
            Step::Prop(p, _) => Some(*p),
            _ => None,
        })
        .collect();
    let derived_vecs: BTreeSet<usize> = steps
        .iter()
        .filter_map(|s| match s {
            Step::Vector(v, ..) => Some(*v),
            _ => None,
        })
        .collect();
    let free_props: Vec<usize> = (0..n_props).filter(|p| !derived_props.contains(p)).collect();
    let enum_vecs: Vec<usize> = (0..n_vecs).filter(|v| !derived_vecs.contains(v)).collect();
    let bits = free_props.len() as u32 + enum_vecs.iter().map(|&v| ix.widths[v]).sum::<u32>();
    Plan { free_props, enum_vecs, steps, bits }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumLimits {
    /// Maximum number of assignments the enumerator may walk.
    pub max_space: u64,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits { max_space: 1 << 24 }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("enumeration space 2^{bits} exceeds the cap of {cap} assignments")]
    SpaceExceeded { bits: u32, cap: u64 },
    #[error(transparent)]
    Malformed(#[from] TheoryError),
}

fn checked_space(bits: u32, limits: EnumLimits) -> Result<u64, EnumError> {
    if bits >= 63 || (1u64 << bits) > limits.max_space {
        return Err(EnumError::SpaceExceeded { bits, cap: limits.max_space });
    }
    Ok(1u64 << bits)
}

fn scan_range(
    formulas: &[CFormula],
    plan: &Plan,
    ix: &SymbolIndex,
    lo: u64,
    hi: u64,
    stop_at_first: bool,
) -> Vec<BvModel> {
    let mut props = vec![false; ix.props.len()];
    let mut vals = vec![0u64; ix.vecs.len()];
    let mut out = Vec::new();
    for assignment in lo..hi {
        let mut cursor = assignment;
        for &p in &plan.free_props {
            props[p] = cursor & 1 == 1;
            cursor >>= 1;
        }
        for &v in &plan.enum_vecs {
            vals[v] = cursor & mask(ix.widths[v]);
            cursor >>= ix.widths[v];
        }
        for step in &plan.steps {
            match step {
                Step::Prop(p, rhs) => props[*p] = eval_cformula(rhs, &props, &vals),
                Step::Vector(v, g, on_true, on_false) => {
                    vals[*v] = eval_cterm(if props[*g] { on_true } else { on_false }, &vals);
                }
            }
        }
        if formulas.iter().all(|f| eval_cformula(f, &props, &vals)) {
            let true_atoms: BTreeSet<String> = ix
                .props
                .iter()
                .enumerate()
                .filter(|(i, _)| props[*i])
                .map(|(_, n)| n.clone())
                .collect();
            let vector_values: BTreeMap<String, u64> =
                ix.vecs.iter().cloned().zip(vals.iter().copied()).collect();
            out.push(BvModel { true_atoms, vector_values });
            if stop_at_first {
                break;
            }
        }
    }
    out
}

fn enumerate_with(t: &BvTheory, limits: EnumLimits, derive: bool) -> Result<Vec<BvModel>, EnumError> {
    let (ix, formulas) = compile(t)?;
    let plan = build_plan(t, &ix, &formulas, derive);
    let space = checked_space(plan.bits, limits)?;
    #[cfg(feature = "parallel")]
    {
        let chunks = space.min(256);
        let per = space.div_ceil(chunks);
        let found: Vec<Vec<BvModel>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = c * per;
                let hi = ((c + 1) * per).min(space);
                scan_range(&formulas, &plan, &ix, lo, hi, false)
            })
            .collect();
        Ok(found.concat())
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(scan_range(&formulas, &plan, &ix, 0, space, false))
    }
}

/// All models of the theory, walking the assignments of free atoms and
/// unconstrained vectors and deriving everything the formulas pin down
/// (see [`build_plan`]'s description). The result equals naive full
/// enumeration; ordering follows the internal assignment order and is
/// deterministic.
pub fn enumerate_models(t: &BvTheory, limits: EnumLimits) -> Result<Vec<BvModel>, EnumError> {
    enumerate_with(t, limits, true)
}

/// Single-threaded variant of [`enumerate_models`].
pub fn enumerate_models_seq(t: &BvTheory, limits: EnumLimits) -> Result<Vec<BvModel>, EnumError> {
    let (ix, formulas) = compile(t)?;
    let plan = build_plan(t, &ix, &formulas, true);
    let space = checked_space(plan.bits, limits)?;
    Ok(scan_range(&formulas, &plan, &ix, 0, space, false))
}

/// Reference enumerator: assigns every declared symbol exhaustively with
/// no derivation. Exponentially slower; used to validate the planned
/// enumerator on tiny theories.
pub fn enumerate_models_naive(t: &BvTheory, limits: EnumLimits) -> Result<Vec<BvModel>, EnumError> {
    enumerate_with(t, limits, false)
}

/// First model in the deterministic assignment order, if any.
pub fn find_model(t: &BvTheory, limits: EnumLimits) -> Result<Option<BvModel>, EnumError> {
    let (ix, formulas) = compile(t)?;
    let plan = build_plan(t, &ix, &formulas, true);
    let space = checked_space(plan.bits, limits)?;
    Ok(scan_range(&formulas, &plan, &ix, 0, space, true).into_iter().next())
}

/// Number of assignments [`enumerate_models`] would walk.
pub fn enumeration_bits(t: &BvTheory) -> Result<u32, TheoryError> {
    let (ix, formulas) = compile(t)?;
    Ok(build_plan(t, &ix, &formulas, true).bits)
}

// ---------------------------------------------------------------------
// SMT-LIB v2 text.

fn fmt_term(t: &Term, out: &mut String) {
    match t {
        Term::Const { value, width } => {
            let _ = write!(out, "#b{:0w$b}", value, w = *width as usize);
        }
        Term::Var { name, .. } => out.push_str(name),
        Term::Add(a, b) => {
            out.push_str("(bvadd ");
            fmt_term(a, out);
            out.push(' ');
            fmt_term(b, out);
            out.push(')');
        }
    }
}

fn fmt_formula(f: &Formula, out: &mut String) {
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Atom(name) => out.push_str(name),
        Formula::Not(g) => {
            out.push_str("(not ");
            fmt_formula(g, out);
            out.push(')');
        }
        Formula::And(parts) | Formula::Or(parts) => {
            out.push_str(if matches!(f, Formula::And(_)) { "(and" } else { "(or" });
            for p in parts {
                out.push(' ');
                fmt_formula(p, out);
            }
            out.push(')');
        }
        Formula::Implies(a, b) => {
            out.push_str("(=> ");
            fmt_formula(a, out);
            out.push(' ');
            fmt_formula(b, out);
            out.push(')');
        }
        Formula::Iff(a, b) => {
            out.push_str("(= ");
            fmt_formula(a, out);
            out.push(' ');
            fmt_formula(b, out);
            out.push(')');
        }
        Formula::Eq(a, b) => {
            out.push_str("(= ");
            fmt_term(a, out);
            out.push(' ');
            fmt_term(b, out);
            out.push(')');
        }
        Formula::Lt(a, b) => {
            out.push_str("(bvult ");
            fmt_term(a, out);
            out.push(' ');
            fmt_term(b, out);
            out.push(')');
        }
    }
}

/// Deterministic SMT-LIB v2 rendering: `QF_BV` logic, one declaration per
/// symbol, one assert per formula, `(check-sat)` and optionally
/// `(get-model)` at the end. Byte-identical across runs for equal
/// theories.
pub fn emit_smtlib(t: &BvTheory, get_model: bool) -> String {
    let mut out = String::from("(set-logic QF_BV)\n");
    for name in &t.prop_signature {
        let _ = writeln!(out, "(declare-fun {name} () Bool)");
    }
    for (name, width) in &t.vector_signature {
        let _ = writeln!(out, "(declare-fun {name} () (_ BitVec {width}))");
    }
    for f in &t.formulas {
        out.push_str("(assert ");
        fmt_formula(f, &mut out);
        out.push_str(")\n");
    }
    out.push_str("(check-sat)\n");
    if get_model {
        out.push_str("(get-model)\n");
    }
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SmtParseError {
    #[error("line {0}: unbalanced parenthesis")]
    Unbalanced(usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unsupported command {0}")]
    UnsupportedCommand(String),
    #[error("unsupported logic {0}")]
    UnsupportedLogic(String),
    #[error("unsupported sort {0}")]
    UnsupportedSort(String),
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("operator {op} applied to {got} arguments")]
    Arity { op: String, got: usize },
    #[error("operator {0} mixes boolean and bit-vector operands")]
    MixedOperands(String),
    #[error("malformed bit-vector literal {0}")]
    BadLiteral(String),
    #[error("duplicate declaration of {0}")]
    Redeclared(String),
    #[error("expression is not well-formed: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum SExpr {
    Atom(String),
    List(Vec<SExpr>),
}

fn lex_sexprs(text: &str) -> Result<Vec<SExpr>, SmtParseError> {
    let mut stack: Vec<Vec<SExpr>> = vec![Vec::new()];
    let mut token = String::new();
    let mut line = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '\n' => {
                line += 1;
                if !token.is_empty() {
                    stack.last_mut().unwrap().push(SExpr::Atom(std::mem::take(&mut token)));
                }
            }
            ';' => {
                // Comment to end of line.
                if !token.is_empty() {
                    stack.last_mut().unwrap().push(SExpr::Atom(std::mem::take(&mut token)));
                }
                for d in chars.by_ref() {
                    if d == '\n' {
                        line += 1;
                        break;
                    }
                }
            }
            '(' => {
                if !token.is_empty() {
                    stack.last_mut().unwrap().push(SExpr::Atom(std::mem::take(&mut token)));
                }
                stack.push(Vec::new());
            }
            ')' => {
                if !token.is_empty() {
                    stack.last_mut().unwrap().push(SExpr::Atom(std::mem::take(&mut token)));
                }
                let list = stack.pop().ok_or(SmtParseError::Unbalanced(line))?;
                if stack.is_empty() {
                    return Err(SmtParseError::Unbalanced(line));
                }
                stack.last_mut().unwrap().push(SExpr::List(list));
            }
            c if c.is_whitespace() => {
                if !token.is_empty() {
                    stack.last_mut().unwrap().push(SExpr::Atom(std::mem::take(&mut token)));
                }
            }
            c => token.push(c),
        }
    }
    if !token.is_empty() {
        stack.last_mut().unwrap().push(SExpr::Atom(token));
    }
    if stack.len() != 1 {
        return Err(SmtParseError::UnexpectedEnd);
    }
    Ok(stack.pop().unwrap())
}

enum Expr {
    F(Formula),
    T(Term),
}

fn parse_expr(sx: &SExpr, theory: &BvTheory) -> Result<Expr, SmtParseError> {
    match sx {
        SExpr::Atom(a) => {
            if a == "true" {
                return Ok(Expr::F(Formula::True));
            }
            if a == "false" {
                return Ok(Expr::F(Formula::False));
            }
            if let Some(bits) = a.strip_prefix("#b") {
                let width = bits.len() as Width;
                if width == 0 || width > 63 || !bits.chars().all(|c| c == '0' || c == '1') {
                    return Err(SmtParseError::BadLiteral(a.clone()));
                }
                let value = u64::from_str_radix(bits, 2).map_err(|_| SmtParseError::BadLiteral(a.clone()))?;
                return Ok(Expr::T(Term::Const { value, width }));
            }
            if theory.prop_signature.iter().any(|n| n == a) {
                return Ok(Expr::F(atom(a.clone())));
            }
            if let Some(w) = theory.vector_width(a) {
                return Ok(Expr::T(Term::var(a.clone(), w)));
            }
            Err(SmtParseError::UnknownSymbol(a.clone()))
        }
        SExpr::List(items) => {
            let (head, args) = match items.split_first() {
                Some((SExpr::Atom(h), rest)) => (h.as_str(), rest),
                _ => return Err(SmtParseError::Malformed("expression head must be a symbol".into())),
            };
            let arity = |want: usize| {
                if args.len() == want {
                    Ok(())
                } else {
                    Err(SmtParseError::Arity { op: head.to_string(), got: args.len() })
                }
            };
            match head {
                "not" => {
                    arity(1)?;
                    match parse_expr(&args[0], theory)? {
                        Expr::F(f) => Ok(Expr::F(not(f))),
                        Expr::T(_) => Err(SmtParseError::MixedOperands("not".into())),
                    }
                }
                "and" | "or" => {
                    if args.len() < 2 {
                        return Err(SmtParseError::Arity { op: head.to_string(), got: args.len() });
                    }
                    let mut parts = Vec::with_capacity(args.len());
                    for a in args {
                        match parse_expr(a, theory)? {
                            Expr::F(f) => parts.push(f),
                            Expr::T(_) => return Err(SmtParseError::MixedOperands(head.to_string())),
                        }
                    }
                    Ok(Expr::F(if head == "and" { Formula::And(parts) } else { Formula::Or(parts) }))
                }
                "=>" => {
                    arity(2)?;
                    match (parse_expr(&args[0], theory)?, parse_expr(&args[1], theory)?) {
                        (Expr::F(a), Expr::F(b)) => Ok(Expr::F(implies(a, b))),
                        _ => Err(SmtParseError::MixedOperands("=>".into())),
                    }
                }
                "=" => {
                    arity(2)?;
                    match (parse_expr(&args[0], theory)?, parse_expr(&args[1], theory)?) {
                        (Expr::F(a), Expr::F(b)) => Ok(Expr::F(iff(a, b))),
                        (Expr::T(a), Expr::T(b)) => {
                            if a.width() != b.width() {
                                return Err(SmtParseError::Malformed("= operand widths differ".into()));
                            }
                            Ok(Expr::F(Formula::Eq(a, b)))
                        }
                        _ => Err(SmtParseError::MixedOperands("=".into())),
                    }
                }
                "bvult" | "bvadd" => {
                    arity(2)?;
                    match (parse_expr(&args[0], theory)?, parse_expr(&args[1], theory)?) {
                        (Expr::T(a), Expr::T(b)) => {
                            if a.width() != b.width() {
                                return Err(SmtParseError::Malformed(format!("{head} operand widths differ")));
                            }
                            if head == "bvult" {
                                Ok(Expr::F(Formula::Lt(a, b)))
                            } else {
                                Ok(Expr::T(Term::add(a, b)))
                            }
                        }
                        _ => Err(SmtParseError::MixedOperands(head.to_string())),
                    }
                }
                other => Err(SmtParseError::UnsupportedCommand(other.to_string())),
            }
        }
    }
}

/// Strict reader for the SMT-LIB subset [`emit_smtlib`] produces. The
/// projection of the returned theory is empty; callers that need
/// projection semantics set it themselves.
pub fn parse_smtlib(text: &str) -> Result<BvTheory, SmtParseError> {
    let items = lex_sexprs(text)?;
    let mut theory = BvTheory::new();
    for item in &items {
        let SExpr::List(parts) = item else {
            return Err(SmtParseError::Malformed("top-level atoms are not commands".into()));
        };
        let Some(SExpr::Atom(cmd)) = parts.first() else {
            return Err(SmtParseError::Malformed("command head must be a symbol".into()));
        };
        match cmd.as_str() {
            "set-logic" => match parts.get(1) {
                Some(SExpr::Atom(logic)) if logic == "QF_BV" => {}
                Some(SExpr::Atom(logic)) => return Err(SmtParseError::UnsupportedLogic(logic.clone())),
                _ => return Err(SmtParseError::Malformed("set-logic expects a symbol".into())),
            },
            "declare-fun" => {
                let (name, arg_list, sort) = match (parts.get(1), parts.get(2), parts.get(3)) {
                    (Some(SExpr::Atom(n)), Some(SExpr::List(a)), Some(s)) => (n, a, s),
                    _ => return Err(SmtParseError::Malformed("declare-fun expects name, args, sort".into())),
                };
                if !arg_list.is_empty() {
                    return Err(SmtParseError::Malformed("only zero-arity declarations are supported".into()));
                }
                let declared = theory.prop_signature.iter().any(|n| n == name)
                    || theory.vector_width(name).is_some();
                if declared {
                    return Err(SmtParseError::Redeclared(name.clone()));
                }
                match sort {
                    SExpr::Atom(s) if s == "Bool" => theory.declare_prop(name),
                    SExpr::List(s) => match s.as_slice() {
                        [SExpr::Atom(u), SExpr::Atom(bv), SExpr::Atom(w)] if u == "_" && bv == "BitVec" => {
                            let width: Width =
                                w.parse().map_err(|_| SmtParseError::UnsupportedSort(w.clone()))?;
                            if !(1..=63).contains(&width) {
                                return Err(SmtParseError::UnsupportedSort(w.clone()));
                            }
                            theory.declare_vector(name, width);
                        }
                        _ => return Err(SmtParseError::UnsupportedSort(format!("{s:?}"))),
                    },
                    SExpr::Atom(s) => return Err(SmtParseError::UnsupportedSort(s.clone())),
                }
            }
            "assert" => {
                if parts.len() != 2 {
                    return Err(SmtParseError::Arity { op: "assert".into(), got: parts.len() - 1 });
                }
                match parse_expr(&parts[1], &theory)? {
                    Expr::F(f) => theory.assert_formula(f),
                    Expr::T(_) => return Err(SmtParseError::Malformed("assert expects a formula".into())),
                }
            }
            "check-sat" | "get-model" => {}
            other => return Err(SmtParseError::UnsupportedCommand(other.to_string())),
        }
    }
    Ok(theory)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn model(atoms: &[&str], vecs: &[(&str, u64)]) -> BvModel {
        BvModel {
            true_atoms: atoms.iter().map(|s| s.to_string()).collect(),
            vector_values: vecs.iter().map(|(n, v)| (n.to_string(), *v)).collect(),
        }
    }

    /// Two 2-bit vectors and two atoms guarding opposite orderings.
    fn scheduling_theory() -> BvTheory {
        let mut t = BvTheory::new();
        t.declare_prop("a");
        t.declare_prop("b");
        t.declare_vector("x", 2);
        t.declare_vector("y", 2);
        t.projection = ["a".to_string(), "b".to_string()].into_iter().collect();
        t.assert_formula(implies(atom("a"), lt(Term::var("x", 2), Term::var("y", 2))));
        t.assert_formula(implies(atom("b"), lt(Term::var("y", 2), Term::var("x", 2))));
        t
    }

    #[test]
    fn modular_addition_wraps() {
        let t = Term::add(Term::bin(3, 2), Term::bin(2, 2));
        assert_eq!(eval_term(&t, &model(&[], &[])).unwrap(), 1);
    }

    #[test]
    fn variable_lookup() {
        let t = Term::var("x", 3);
        assert_eq!(eval_term(&t, &model(&[], &[("x", 2)])).unwrap(), 2);
        assert_eq!(
            eval_term(&t, &model(&[], &[])),
            Err(EvalError::UnassignedVector("x".to_string()))
        );
    }

    #[test]
    fn constants_evaluate_to_themselves() {
        assert_eq!(eval_term(&Term::bin(5, 3), &model(&[], &[])).unwrap(), 5);
    }

    #[test]
    fn vacuous_implication_holds() {
        let f = implies(atom("a"), lt(Term::var("x", 2), Term::var("y", 2)));
        assert!(eval_formula(&f, &model(&[], &[("x", 3), ("y", 0)])).unwrap());
    }

    #[test]
    fn opposite_orderings_cannot_hold_together() {
        let t = scheduling_theory();
        for x in 0..4 {
            for y in 0..4 {
                let m = model(&["a", "b"], &[("x", x), ("y", y)]);
                let all = t.formulas.iter().all(|f| eval_formula(f, &m).unwrap());
                assert!(!all, "x={x} y={y}");
            }
        }
    }

    #[test]
    fn comparison_of_constants() {
        assert!(eval_formula(&lt(Term::bin(1, 2), Term::bin(2, 2)), &model(&[], &[])).unwrap());
    }

    #[test]
    fn scheduling_theory_model_counts() {
        let models = enumerate_models(&scheduling_theory(), EnumLimits::default()).unwrap();
        let with = |atoms: &[&str]| {
            let set: BTreeSet<String> = atoms.iter().map(|s| s.to_string()).collect();
            models.iter().filter(|m| m.true_atoms == set).count()
        };
        assert_eq!(with(&["a", "b"]), 0);
        assert_eq!(with(&["a"]), 6);
        assert_eq!(with(&["b"]), 6);
        assert_eq!(with(&[]), 16);
    }

    #[test]
    fn empty_theory_with_signature_counts_assignments() {
        let mut t = BvTheory::new();
        t.declare_prop("a");
        t.declare_vector("x", 1);
        let models = enumerate_models(&t, EnumLimits::default()).unwrap();
        assert_eq!(models.len(), 4);
    }

    #[test]
    fn cap_is_enforced() {
        let t = scheduling_theory();
        let err = enumerate_models(&t, EnumLimits { max_space: 8 }).unwrap_err();
        assert_eq!(err, EnumError::SpaceExceeded { bits: 6, cap: 8 });
    }

    #[test]
    fn derived_atoms_match_naive_enumeration() {
        // d is auxiliary and defined by an equivalence; the planned
        // enumerator computes it instead of assigning it.
        let mut t = BvTheory::new();
        t.declare_prop("p");
        t.declare_prop("q");
        t.declare_prop("d");
        t.declare_vector("x", 2);
        t.projection = ["p".to_string(), "q".to_string()].into_iter().collect();
        t.assert_formula(iff(atom("d"), conj(vec![atom("p"), not(atom("q"))])));
        t.assert_formula(implies(atom("d"), lt(Term::var("x", 2), Term::bin(2, 2))));
        let fast: BTreeSet<BvModel> =
            enumerate_models(&t, EnumLimits::default()).unwrap().into_iter().collect();
        let naive: BTreeSet<BvModel> =
            enumerate_models_naive(&t, EnumLimits::default()).unwrap().into_iter().collect();
        assert_eq!(fast, naive);
        assert!(enumeration_bits(&t).unwrap() < 5);
    }

    #[test]
    fn derived_vectors_match_naive_enumeration() {
        // A two-step cumulative chain; both sums are pinned by p and q.
        let mut t = BvTheory::new();
        t.declare_prop("p");
        t.declare_prop("q");
        t.declare_vector("s1", 3);
        t.declare_vector("s2", 3);
        t.projection = ["p".to_string(), "q".to_string()].into_iter().collect();
        t.assert_formula(implies(atom("p"), eq(Term::var("s1", 3), Term::bin(2, 3))));
        t.assert_formula(implies(not(atom("p")), eq(Term::var("s1", 3), Term::bin(0, 3))));
        t.assert_formula(implies(atom("q"), eq(Term::var("s2", 3), Term::add(Term::var("s1", 3), Term::bin(3, 3)))));
        t.assert_formula(implies(not(atom("q")), eq(Term::var("s2", 3), Term::var("s1", 3))));
        assert_eq!(enumeration_bits(&t).unwrap(), 2);
        let fast: BTreeSet<BvModel> =
            enumerate_models(&t, EnumLimits::default()).unwrap().into_iter().collect();
        let naive: BTreeSet<BvModel> =
            enumerate_models_naive(&t, EnumLimits::default()).unwrap().into_iter().collect();
        assert_eq!(fast, naive);
        assert_eq!(fast.len(), 4);
    }

    #[test]
    fn self_referential_equivalence_is_not_derived() {
        let mut t = BvTheory::new();
        t.declare_prop("d");
        t.assert_formula(iff(atom("d"), not(atom("d"))));
        assert!(enumerate_models(&t, EnumLimits::default()).unwrap().is_empty());
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let t = scheduling_theory();
        let par = enumerate_models(&t, EnumLimits::default()).unwrap();
        let seq = enumerate_models_seq(&t, EnumLimits::default()).unwrap();
        assert_eq!(par, seq);
    }

    #[test]
    fn find_model_returns_first() {
        let t = scheduling_theory();
        let first = find_model(&t, EnumLimits::default()).unwrap().unwrap();
        let all = enumerate_models(&t, EnumLimits::default()).unwrap();
        assert_eq!(first, all[0]);
    }

    #[test]
    fn propositional_theories_are_classical() {
        let mut t = BvTheory::new();
        t.declare_prop("p");
        t.declare_prop("q");
        t.declare_vector("x", 2);
        t.assert_formula(disj(vec![atom("p"), atom("q")]));
        let models = enumerate_models(&t, EnumLimits::default()).unwrap();
        // Three satisfying propositional assignments, each with 4 vector values.
        assert_eq!(models.len(), 12);
        let projections: BTreeSet<BTreeSet<String>> =
            models.iter().map(|m| m.true_atoms.clone()).collect();
        assert_eq!(projections.len(), 3);
    }

    #[test]
    fn validate_rejects_undeclared_symbols() {
        let mut t = BvTheory::new();
        t.assert_formula(atom("ghost"));
        assert_eq!(validate_theory(&t), Err(TheoryError::UndeclaredAtom("ghost".to_string())));
    }

    #[test]
    fn emit_declares_and_asserts() {
        let mut t = BvTheory::new();
        t.declare_prop("a");
        t.assert_formula(atom("a"));
        let text = emit_smtlib(&t, false);
        assert!(text.contains("(declare-fun a () Bool)"));
        assert!(text.contains("(assert a)"));
        assert!(text.starts_with("(set-logic QF_BV)"));
        assert!(text.trim_end().ends_with("(check-sat)"));
    }

    #[test]
    fn emit_renders_vector_formulas() {
        let mut t = BvTheory::new();
        t.declare_prop("ext_1");
        t.declare_vector("x_1", 2);
        t.assert_formula(implies(atom("ext_1"), eq(Term::var("x_1", 2), Term::bin(0, 2))));
        let text = emit_smtlib(&t, false);
        assert!(text.contains("(assert (=> ext_1 (= x_1 #b00)))"));
    }

    #[test]
    fn emit_renders_comparisons() {
        let mut t = BvTheory::new();
        t.declare_vector("x_3", 2);
        t.declare_vector("x_2", 2);
        t.assert_formula(lt(Term::var("x_3", 2), Term::var("x_2", 2)));
        assert!(emit_smtlib(&t, false).contains("(bvult x_3 x_2)"));
    }

    #[test]
    fn smtlib_round_trip_preserves_models() {
        let t = scheduling_theory();
        let mut back = parse_smtlib(&emit_smtlib(&t, false)).unwrap();
        back.projection = t.projection.clone();
        assert_eq!(back.formulas, t.formulas);
        let a = enumerate_models(&t, EnumLimits::default()).unwrap();
        let b = enumerate_models(&back, EnumLimits::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reader_rejects_junk() {
        assert!(parse_smtlib("(set-logic QF_LIA)").is_err());
        assert!(parse_smtlib("(assert (xor a b))").is_err());
        assert!(parse_smtlib("(declare-fun x () (_ BitVec 99))").is_err());
        assert!(parse_smtlib("(assert q)").is_err());
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            Just(Formula::True),
            Just(Formula::False),
            Just(atom("p")),
            Just(atom("q")),
            Just(lt(Term::var("x", 2), Term::var("y", 2))),
            Just(eq(Term::add(Term::var("x", 2), Term::bin(1, 2)), Term::var("y", 2))),
        ];
        leaf.prop_recursive(3, 24, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::And(vec![a, b])),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::Or(vec![a, b])),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| implies(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| iff(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn iff_matches_equality_of_subevaluations(f in arb_formula(), g in arb_formula(),
                                                  p in any::<bool>(), q in any::<bool>(),
                                                  x in 0u64..4, y in 0u64..4) {
            let mut atoms = vec![];
            if p { atoms.push("p"); }
            if q { atoms.push("q"); }
            let m = model(&atoms, &[("x", x), ("y", y)]);
            let lhs = eval_formula(&iff(f.clone(), g.clone()), &m).unwrap();
            let rhs = eval_formula(&f, &m).unwrap() == eval_formula(&g, &m).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn round_trip_formula_text(f in arb_formula()) {
            let mut t = BvTheory::new();
            t.declare_prop("p");
            t.declare_prop("q");
            t.declare_vector("x", 2);
            t.declare_vector("y", 2);
            t.assert_formula(f);
            let back = parse_smtlib(&emit_smtlib(&t, false)).unwrap();
            prop_assert_eq!(back.formulas, t.formulas);
        }
    }
}

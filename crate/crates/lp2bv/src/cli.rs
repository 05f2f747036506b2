//! Command-line front end: smodels input in, SMT-LIB out, plus oracle,
//! self-check, and solve conveniences.

use std::collections::BTreeSet;
use std::io::Read;
use std::path::PathBuf;
use std::process::Command;

use clap::{Parser, ValueEnum};

use crate::bvlogic::{self, BvTheory, EnumLimits};
use crate::oracle::{self, Interpretation};
use crate::program::{self, Program, Severity};
use crate::translate::{self, Variant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Translate and print SMT-LIB text.
    Emit,
    /// Translate, enumerate theory models, compare against the oracle.
    Check,
    /// Enumerate answer sets with the reference oracle.
    Oracle,
    /// Translate, run a solver on the theory, print one answer set.
    Solve,
    /// Act as an SMT solver: enumerate a model of an SMT-LIB file.
    Smtsolve,
}

/// Translate ground answer-set programs into bit-vector theories.
#[derive(Debug, Parser)]
#[command(name = "lp2bv", version, about)]
pub struct Cli {
    /// Input file (smodels format; SMT-LIB for --mode smtsolve). Reads
    /// stdin when omitted or "-".
    pub input: Option<PathBuf>,

    /// Add local strong ranking constraints.
    #[arg(short = 'l')]
    pub strong_local: bool,

    /// Add global strong ranking constraints.
    #[arg(short = 'g')]
    pub strong_global: bool,

    #[arg(long, value_enum, default_value_t = Mode::Emit)]
    pub mode: Mode,

    /// Write the atom/symbol map (id<TAB>name<TAB>smt symbol) here.
    #[arg(long)]
    pub symbols: Option<PathBuf>,

    /// External solver command; "{file}" is replaced by the theory path.
    /// Without this, solve mode uses the internal enumerator.
    #[arg(long)]
    pub solver: Option<String>,

    /// Atom cap for oracle enumeration.
    #[arg(long, default_value_t = 20)]
    pub cap_atoms: u32,

    /// Assignment cap for theory model enumeration.
    #[arg(long, default_value_t = 1 << 24)]
    pub cap_space: u64,

    /// Append (get-model) to emitted SMT-LIB text.
    #[arg(long)]
    pub get_model: bool,

    /// Unsupported: choice rules are always normalized away.
    #[arg(long)]
    pub keep_choice: bool,
}

impl Cli {
    pub fn variant(&self) -> Variant {
        Variant { strong_local: self.strong_local, strong_global: self.strong_global }
    }
}

fn read_input(path: &Option<PathBuf>) -> std::io::Result<Vec<u8>> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read(p),
        _ => {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf)?;
            Ok(buf)
        }
    }
}

fn display_set(p: &Program, set: &Interpretation) -> String {
    let mut names: Vec<String> = set.iter().map(|&a| p.atoms.display_name(a)).collect();
    names.sort();
    format!("{{{}}}", names.join(","))
}

fn write_symbol_map(path: &PathBuf, p: &Program) -> std::io::Result<()> {
    let mut out = String::new();
    for id in p.herbrand_base() {
        let name = p.atoms.name(id).unwrap_or("");
        out.push_str(&format!("{id}\t{name}\t{}\n", translate::atom_symbol(id)));
    }
    std::fs::write(path, out)
}

/// Projected answer sets, ordered and rendered like oracle output.
fn render_answer_sets(p: &Program, sets: &[Interpretation]) -> Vec<String> {
    let mut lines: Vec<String> = sets.iter().map(|s| display_set(p, s)).collect();
    lines.sort();
    lines
}

#[derive(Debug, PartialEq, Eq)]
pub enum SolverOutcome {
    Unsat,
    Sat { true_atoms: BTreeSet<String>, omitted: Vec<String> },
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SolverParseError {
    #[error("solver produced no verdict line")]
    Empty,
    #[error("unrecognized solver verdict '{0}'")]
    BadVerdict(String),
}

/// Extract the projected atoms from solver output: the first line is the
/// verdict, and `(define-fun <name> () Bool <value>)` entries carry the
/// assignment. Projection atoms missing from the model are reported and
/// treated as false.
pub fn parse_solver_model(text: &str, projection: &BTreeSet<String>) -> Result<SolverOutcome, SolverParseError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let verdict = lines.next().ok_or(SolverParseError::Empty)?.trim();
    match verdict {
        "unsat" => Ok(SolverOutcome::Unsat),
        "sat" => {
            let mut true_atoms = BTreeSet::new();
            let mut seen = BTreeSet::new();
            let tokens: Vec<&str> = text
                .split(|c: char| c.is_whitespace() || c == '(' || c == ')')
                .filter(|t| !t.is_empty())
                .collect();
            let mut i = 0;
            while i + 3 < tokens.len() {
                if tokens[i] == "define-fun" && tokens[i + 2] == "Bool" {
                    let name = tokens[i + 1].to_string();
                    seen.insert(name.clone());
                    if tokens[i + 3] == "true" && projection.contains(&name) {
                        true_atoms.insert(name);
                    }
                    i += 4;
                } else {
                    i += 1;
                }
            }
            let omitted: Vec<String> = projection.difference(&seen).cloned().collect();
            Ok(SolverOutcome::Sat { true_atoms, omitted })
        }
        other => Err(SolverParseError::BadVerdict(other.to_string())),
    }
}

fn model_text(model: &bvlogic::BvModel, theory: &BvTheory) -> String {
    let mut out = String::from("sat\n(model\n");
    for name in &theory.prop_signature {
        let value = if model.true_atoms.contains(name) { "true" } else { "false" };
        out.push_str(&format!("  (define-fun {name} () Bool {value})\n"));
    }
    for (name, width) in &theory.vector_signature {
        let value = model.vector_values.get(name).copied().unwrap_or(0);
        out.push_str(&format!(
            "  (define-fun {name} () (_ BitVec {width}) #b{value:0w$b})\n",
            w = *width as usize
        ));
    }
    out.push_str(")\n");
    out
}

fn load_program(cli: &Cli) -> Result<Program, i32> {
    let bytes = read_input(&cli.input).map_err(|e| {
        eprintln!("error: cannot read input: {e}");
        1
    })?;
    let parsed = program::parse_smodels(&bytes).map_err(|e| {
        eprintln!("error: {e}");
        1
    })?;
    let checked = program::validate(&parsed);
    for d in &checked.diagnostics {
        eprintln!("{d}");
    }
    if checked.diagnostics.iter().any(|d| d.severity == Severity::Error) {
        return Err(1);
    }
    Ok(program::simplify(&checked.program))
}

fn run_solver(template: &str, file: &std::path::Path) -> Result<String, String> {
    let command = template.replace("{file}", &file.display().to_string());
    let output = Command::new("sh")
        .arg("-c")
        .arg(&command)
        .output()
        .map_err(|e| format!("cannot spawn '{command}': {e}"))?;
    if !output.status.success() && output.stdout.is_empty() {
        return Err(format!(
            "solver '{command}' failed: {}",
            String::from_utf8_lossy(&output.stderr).trim()
        ));
    }
    Ok(String::from_utf8_lossy(&output.stdout).into_owned())
}

pub fn run(cli: &Cli) -> i32 {
    if cli.keep_choice {
        eprintln!("error: --keep-choice is not supported; choice rules are always normalized before translation");
        return 1;
    }
    let limits = EnumLimits { max_space: cli.cap_space };

    if cli.mode == Mode::Smtsolve {
        let bytes = match read_input(&cli.input) {
            Ok(b) => b,
            Err(e) => {
                eprintln!("error: cannot read input: {e}");
                return 1;
            }
        };
        let text = match String::from_utf8(bytes) {
            Ok(t) => t,
            Err(_) => {
                eprintln!("error: SMT-LIB input is not UTF-8");
                return 1;
            }
        };
        let theory = match bvlogic::parse_smtlib(&text) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: {e}");
                return 1;
            }
        };
        return match bvlogic::find_model(&theory, limits) {
            Ok(Some(model)) => {
                print!("{}", model_text(&model, &theory));
                0
            }
            Ok(None) => {
                println!("unsat");
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        };
    }

    let simplified = match load_program(cli) {
        Ok(p) => p,
        Err(code) => return code,
    };

    match cli.mode {
        Mode::Oracle => {
            let sets = match oracle::enumerate_answer_sets(&simplified, cli.cap_atoms) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 1;
                }
            };
            for line in render_answer_sets(&simplified, &sets) {
                println!("{line}");
            }
            0
        }
        Mode::Emit => {
            let theory = translate::translate(&simplified, cli.variant());
            print!("{}", bvlogic::emit_smtlib(&theory, cli.get_model));
            if let Some(path) = &cli.symbols {
                if let Err(e) = write_symbol_map(path, &simplified) {
                    eprintln!("error: cannot write symbol map: {e}");
                    return 1;
                }
            }
            0
        }
        Mode::Check => {
            let variant = cli.variant();
            let theory = translate::translate(&simplified, variant);
            let answer_sets = match oracle::enumerate_answer_sets(&simplified, cli.cap_atoms) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 1;
                }
            };
            let models = match bvlogic::enumerate_models(&theory, limits) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 1;
                }
            };
            let expected: BTreeSet<BTreeSet<String>> = answer_sets
                .iter()
                .map(|s| s.iter().map(|&a| translate::atom_symbol(a)).collect())
                .collect();
            let projected: BTreeSet<BTreeSet<String>> =
                models.iter().map(|m| m.project(&theory.projection)).collect();
            if expected == projected {
                println!(
                    "PASS variant {}: {} answer sets, {} theory models, projections match",
                    variant.label(),
                    answer_sets.len(),
                    models.len()
                );
                0
            } else {
                println!("FAIL variant {}", variant.label());
                for missing in expected.difference(&projected) {
                    println!("  answer set missing from theory models: {missing:?}");
                }
                for spurious in projected.difference(&expected) {
                    println!("  spurious projection: {spurious:?}");
                }
                eprint!("{simplified}");
                2
            }
        }
        Mode::Solve => {
            let theory = translate::translate(&simplified, cli.variant());
            let outcome = if let Some(template) = &cli.solver {
                let dir = match tempfile::tempdir() {
                    Ok(d) => d,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return 3;
                    }
                };
                let file = dir.path().join("theory.smt2");
                if let Err(e) = std::fs::write(&file, bvlogic::emit_smtlib(&theory, true)) {
                    eprintln!("error: {e}");
                    return 3;
                }
                let text = match run_solver(template, &file) {
                    Ok(t) => t,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return 3;
                    }
                };
                match parse_solver_model(&text, &theory.projection) {
                    Ok(o) => o,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return 3;
                    }
                }
            } else {
                match bvlogic::find_model(&theory, limits) {
                    Ok(Some(model)) => SolverOutcome::Sat {
                        true_atoms: model.project(&theory.projection),
                        omitted: Vec::new(),
                    },
                    Ok(None) => SolverOutcome::Unsat,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return 1;
                    }
                }
            };
            match outcome {
                SolverOutcome::Unsat => {
                    println!("unsat");
                    0
                }
                SolverOutcome::Sat { true_atoms, omitted } => {
                    for name in omitted {
                        eprintln!("warning: solver model omits {name}; treating it as false");
                    }
                    let ids: Interpretation = simplified
                        .herbrand_base()
                        .into_iter()
                        .filter(|&a| true_atoms.contains(&translate::atom_symbol(a)))
                        .collect();
                    println!("{}", display_set(&simplified, &ids));
                    0
                }
            }
        }
        Mode::Smtsolve => unreachable!("handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solver_model_extracts_projection_atoms() {
        let projection: BTreeSet<String> = ["a2".to_string(), "a3".to_string()].into_iter().collect();
        let text = "sat\n(model\n  (define-fun a2 () Bool true)\n  (define-fun a3 () Bool false)\n  (define-fun bd_1 () Bool true)\n)\n";
        let outcome = parse_solver_model(text, &projection).unwrap();
        match outcome {
            SolverOutcome::Sat { true_atoms, omitted } => {
                assert_eq!(true_atoms, ["a2".to_string()].into_iter().collect());
                assert!(omitted.is_empty());
            }
            _ => panic!("expected sat"),
        }
    }

    #[test]
    fn solver_model_reports_omitted_atoms() {
        let projection: BTreeSet<String> = ["a2".to_string(), "a3".to_string()].into_iter().collect();
        let text = "sat\n(model\n  (define-fun a2 () Bool true)\n)\n";
        match parse_solver_model(text, &projection).unwrap() {
            SolverOutcome::Sat { true_atoms, omitted } => {
                assert_eq!(true_atoms, ["a2".to_string()].into_iter().collect());
                assert_eq!(omitted, vec!["a3".to_string()]);
            }
            _ => panic!("expected sat"),
        }
    }

    #[test]
    fn solver_unsat_is_recognized() {
        let projection = BTreeSet::new();
        assert_eq!(parse_solver_model("unsat\n", &projection).unwrap(), SolverOutcome::Unsat);
        assert!(parse_solver_model("maybe\n", &projection).is_err());
        assert!(parse_solver_model("", &projection).is_err());
    }
}

//! Command-line front end. `run` is pure apart from file access, so tests
//! drive it directly and compare the captured output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::coalgebra::{
    codifferential_from_ainfty, codifferential_from_linfty, symmetrize_derivation, symmetrize_structure,
    Coderivation,
};
use crate::error::Error;
use crate::family::{DefectWitness, MapFamily};
use crate::fixtures::{self, FixtureKind};
use crate::graded::SymmetryMode;
use crate::homotopy_assoc::{self as assoc, AInfinityStructure};
use crate::homotopy_lie::{self as lie, LInfinityStructure};
use crate::io::{self, Document, StructureDocument, StructureKind};
use crate::operad::{render, Preset, RenderStyle, Resolution};
use crate::random::{random_family, rng};

/// Degrees of the derivation generator swept when `--k` is not given.
pub const DEFAULT_K_WINDOW: [i64; 4] = [-1, 0, 1, 2];

#[derive(Parser, Debug)]
#[command(name = "shderiv", version, about = "Exact checks for A-infinity and L-infinity structures and their strong homotopy derivations")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Highest arity checked or generated.
    #[arg(long, global = true, env = "SHD_MAX_ARITY", default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_arity: u64,
    /// Degree of the derivation; commands that sweep degrees use -1, 0, 1, 2 when absent.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub k: Option<i64>,
    /// Seed for random instances.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyKind {
    Ainfty,
    Linfty,
    ShDerivation,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeriveMode {
    Inner,
    Tautological,
    Reservoir,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresetArg {
    Ass,
    Lie,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the structure (and derivation) relations up to the maximal arity.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum)]
        kind: VerifyKind,
    },
    /// Attach a strong homotopy derivation to a verified structure.
    Derive {
        path: PathBuf,
        #[arg(long, value_enum)]
        mode: DeriveMode,
        /// Element for the inner mode, as `label=coeff,label=coeff`.
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
    },
    /// Turn an A-infinity file (with optional derivation) into an L-infinity file.
    Symmetrize { path: PathBuf },
    /// Bracket of the derivations in two files over the same structure.
    Bracket { first: PathBuf, second: PathBuf },
    /// Differentials and the d^2 check of the derivation-extended resolutions.
    Operad {
        #[arg(value_enum)]
        preset: PresetArg,
        /// Print the differentials of x^n and xbar^n.
        #[arg(long, conflicts_with = "check_d2", required_unless_present = "check_d2")]
        print_diff: Option<usize>,
        /// Run the d^2 = 0 check on every generator.
        #[arg(long)]
        check_d2: bool,
    },
    /// Emit a built-in fixture as a structure file.
    Fixture {
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

enum Failure {
    /// A relation fails or a mathematical precondition is violated.
    Math(String),
    /// The input could not be read or does not fit the schema.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotClosed
            | Error::NotAssociative(_)
            | Error::DifferentialNotSquareZero(_)
            | Error::LeibnizFails(_)
            | Error::NotAntisymmetric(_)
            | Error::JacobiFails(_) => Failure::Math(format!("{e}\n")),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<String, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Verify { path, kind } => verify(&cli.config, path, *kind),
        Command::Derive { path, mode, element } => derive(&cli.config, path, *mode, element.as_deref()),
        Command::Symmetrize { path } => symmetrize(&cli.config, path),
        Command::Bracket { first, second } => bracket(&cli.config, first, second),
        Command::Operad {
            preset,
            print_diff,
            check_d2,
        } => operad(&cli.config, *preset, *print_diff, *check_d2),
        Command::Fixture { name, list } => fixture(name.as_deref(), *list),
    };
    let (code, body, err) = match result {
        Ok(body) => (EXIT_OK, body, String::new()),
        Err(Failure::Math(msg)) => (EXIT_MATH, msg, String::new()),
        Err(Failure::Input(msg)) => (EXIT_INPUT, String::new(), format!("error: {msg}\n")),
    };
    match (&cli.config.out, code) {
        (Some(path), EXIT_OK | EXIT_MATH) => match std::fs::write(path, &body) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: err,
            },
            Err(e) => Outcome {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr: format!("error: {}: {e}\n", path.display()),
            },
        },
        _ => Outcome {
            code,
            stdout: body,
            stderr: err,
        },
    }
}

fn read_structure(path: &Path) -> Result<StructureDocument, Failure> {
    Ok(io::read(path)?.into_structure()?)
}

fn max_arity(config: &RunConfig) -> usize {
    config.max_arity as usize
}

/// `Ok(report)` when every checked relation holds, `Err(Math)` with the
/// first failing arity and tuple otherwise.
fn check_structure(doc: &StructureDocument, n: usize, with_derivation: bool) -> CmdResult {
    let failure = doc.first_failure(n, with_derivation)?;
    let what = if with_derivation {
        format!("{} structure and degree {} derivation", doc.kind.name(), doc.derivation.as_ref().map_or(0, |d| d.degree))
    } else {
        format!("{} structure", doc.kind.name())
    };
    match failure {
        None => Ok(format!("PASS: {what}: all relations hold up to arity {n}\n")),
        Some(w) => Err(Failure::Math(failure_report(&what, &w))),
    }
}

fn failure_report(what: &str, w: &DefectWitness) -> String {
    format!(
        "FAIL: {what}\n  first failing arity: {}\n  basis tuple: ({})\n  {w}\n",
        w.arity,
        w.labels.join(", ")
    )
}

fn verify(config: &RunConfig, path: &Path, kind: VerifyKind) -> CmdResult {
    let doc = read_structure(path)?;
    let expected = match kind {
        VerifyKind::Ainfty => Some(StructureKind::AInfinity),
        VerifyKind::Linfty => Some(StructureKind::LInfinity),
        VerifyKind::ShDerivation => None,
    };
    if let Some(e) = expected.filter(|&e| e != doc.kind) {
        return Err(Failure::Input(format!("expected an {} file, found {}", e.name(), doc.kind.name())));
    }
    check_structure(&doc, max_arity(config), kind == VerifyKind::ShDerivation)
}

fn derive(config: &RunConfig, path: &Path, mode: DeriveMode, element: Option<&str>) -> CmdResult {
    let doc = read_structure(path)?;
    let n = max_arity(config);
    check_structure(&doc, n, false)?;
    let out = match mode {
        DeriveMode::Inner => {
            let a = io::parse_element(&doc.space, element.unwrap_or(""))?;
            let degree = match (a.degree(), config.k) {
                (Some(d), Some(k)) if d != k => {
                    return Err(Failure::Input(format!("element has degree {d} but --k is {k}")))
                }
                (Some(d), _) => d,
                (None, k) if a.is_zero() => k.unwrap_or(0),
                (None, _) => return Err(Error::InhomogeneousElement.into()),
            };
            match doc.kind {
                StructureKind::AInfinity => {
                    let m = doc.ainfty()?;
                    StructureDocument::from_ainfty(&m, Some(&assoc::inner_derivation(&m, &a, degree)?))
                }
                StructureKind::LInfinity => {
                    let l = doc.linfty()?;
                    StructureDocument::from_linfty(&l, Some(&lie::inner_derivation(&l, &a, degree)?))
                }
            }
        }
        DeriveMode::Tautological => match doc.kind {
            StructureKind::AInfinity => {
                let m = doc.ainfty()?;
                StructureDocument::from_ainfty(&m, Some(&assoc::tautological_derivation(&m)))
            }
            StructureKind::LInfinity => {
                let l = doc.linfty()?;
                StructureDocument::from_linfty(&l, Some(&lie::tautological_derivation(&l)))
            }
        },
        DeriveMode::Reservoir => {
            // The bracket with the codifferential raises the degree by one.
            let degree = config.k.unwrap_or(1) - 1;
            let mut r = rng(config.seed);
            let xi = random_family(&mut r, &doc.space, degree, n, 0.5);
            match doc.kind {
                StructureKind::AInfinity => {
                    let m = doc.ainfty()?;
                    let theta = codifferential_from_ainfty(&m)
                        .bracket(&Coderivation::tensor(xi), n)?
                        .to_derivation_a()?;
                    StructureDocument::from_ainfty(&m, Some(&theta))
                }
                StructureKind::LInfinity => {
                    let l = doc.linfty()?;
                    let sym = xi.maps().iter().map(|f| f.symmetrize(SymmetryMode::Symmetric)).collect();
                    let xi = Coderivation::symmetric(MapFamily::new(&doc.space, degree, sym)?)?;
                    let theta = codifferential_from_linfty(&l).bracket(&xi, n)?.to_derivation_l()?;
                    StructureDocument::from_linfty(&l, Some(&theta))
                }
            }
        }
    };
    check_structure(&out, n, true)?;
    Ok(io::to_json(&Document::Structure(out.with_note(format!("{} derivation", mode_name(mode))))))
}

fn mode_name(mode: DeriveMode) -> &'static str {
    match mode {
        DeriveMode::Inner => "inner",
        DeriveMode::Tautological => "tautological",
        DeriveMode::Reservoir => "reservoir",
    }
}

fn symmetrize(config: &RunConfig, path: &Path) -> CmdResult {
    let doc = read_structure(path)?;
    if doc.kind != StructureKind::AInfinity {
        return Err(Failure::Input(format!("expected an ainfty file, found {}", doc.kind.name())));
    }
    let n = max_arity(config);
    let with_derivation = doc.derivation.is_some();
    check_structure(&doc, n, with_derivation).map_err(|e| match e {
        Failure::Math(msg) => Failure::Math(format!("input rejected, it is not verified\n{msg}")),
        other => other,
    })?;
    let m = doc.ainfty()?;
    let l = symmetrize_structure(&m);
    let theta = match &doc.derivation {
        Some(_) => Some(symmetrize_derivation(&doc.derivation_a()?)?),
        None => None,
    };
    let out = StructureDocument::from_linfty(&l, theta.as_ref()).with_note("symmetrization");
    Ok(io::to_json(&Document::Structure(out)))
}

fn bracket(config: &RunConfig, first: &Path, second: &Path) -> CmdResult {
    let (a, b) = (read_structure(first)?, read_structure(second)?);
    if a.kind != b.kind || a.space != b.space || trimmed(&a) != trimmed(&b) {
        return Err(Error::StructureMismatch.into());
    }
    let n = max_arity(config);
    let out = match a.kind {
        StructureKind::AInfinity => {
            let m: AInfinityStructure = a.ainfty()?;
            let (x, y) = (a.derivation_a()?, b.derivation_a()?);
            let theta = Coderivation::from_derivation_a(&x)
                .bracket(&Coderivation::from_derivation_a(&y), n)?
                .to_derivation_a()?;
            StructureDocument::from_ainfty(&m, Some(&theta))
        }
        StructureKind::LInfinity => {
            let l: LInfinityStructure = a.linfty()?;
            let (x, y) = (a.derivation_l()?, b.derivation_l()?);
            let theta = Coderivation::from_derivation_l(&x)
                .bracket(&Coderivation::from_derivation_l(&y), n)?
                .to_derivation_l()?;
            StructureDocument::from_linfty(&l, Some(&theta))
        }
    };
    Ok(io::to_json(&Document::Structure(out.with_note("bracket of derivations"))))
}

/// Operations with trailing zero maps dropped, for structure comparison.
fn trimmed(doc: &StructureDocument) -> Vec<crate::graded::MultilinearMap> {
    let mut ops = doc.operations.clone();
    while ops.last().is_some_and(|f| f.is_zero()) {
        ops.pop();
    }
    ops
}

fn operad(config: &RunConfig, preset: PresetArg, print_diff: Option<usize>, check_d2: bool) -> CmdResult {
    let preset = match preset {
        PresetArg::Ass => Preset::Ass,
        PresetArg::Lie => Preset::Lie,
    };
    let ks: Vec<i64> = config.k.map_or(DEFAULT_K_WINDOW.to_vec(), |k| vec![k]);
    let mut out = String::new();
    if let Some(n) = print_diff {
        if n < 2 {
            return Err(Failure::Input(format!("--print-diff needs an arity of at least 2, got {n}")));
        }
        let style = match config.format {
            Some(Format::Text) => RenderStyle::Text,
            _ => RenderStyle::Latex,
        };
        for k in ks {
            let r = Resolution::new(preset, k, n)?;
            let _ = writeln!(out, "preset {preset}, k = {k}");
            for g in [r.x(n), r.xbar(n)] {
                let name = &r.signature().get(g).name;
                let _ = writeln!(out, "  d({name}) = {}", render(&r.differential(g), style));
            }
        }
        return Ok(out);
    }
    debug_assert!(check_d2);
    let style = match config.format {
        Some(Format::Latex) => RenderStyle::Latex,
        _ => RenderStyle::Text,
    };
    let mut passed = true;
    for k in ks {
        let report = Resolution::new(preset, k, max_arity(config).max(2))?.check_d_squared(None);
        passed &= report.passed();
        out.push_str(&report.render(style));
    }
    if passed {
        Ok(out)
    } else {
        Err(Failure::Math(out))
    }
}

fn fixture(name: Option<&str>, list: bool) -> CmdResult {
    if list {
        let mut out = String::new();
        for f in fixtures::all() {
            let kind = match f.kind {
                FixtureKind::Associative => "ainfty",
                FixtureKind::Lie => "linfty",
            };
            let _ = writeln!(out, "{:<14} {:<7} {}", f.name, kind, f.provenance);
        }
        return Ok(out);
    }
    let f = fixtures::by_name(name.unwrap_or_default())?;
    Ok(io::to_json(&Document::Structure(fixture_document(&f))))
}

/// The suspended structure of a fixture, annotated with its provenance.
pub fn fixture_document(f: &fixtures::Fixture) -> StructureDocument {
    let doc = match (f.ainfty(), f.linfty()) {
        (Some((_, m)), _) => StructureDocument::from_ainfty(&m, None),
        (_, Some((_, l))) => StructureDocument::from_linfty(&l, None),
        _ => unreachable!("every fixture is associative or Lie"),
    };
    doc.with_note(f.provenance)
}

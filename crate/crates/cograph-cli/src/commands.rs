//! Command-line surface.
//!
//! Exit codes: 0 success; 1 a verification failed (MacWilliams mismatch,
//! non-integral transform, expectation or route disagreement); 2 usage,
//! parse, or validation problems; 3 an enumeration budget was exceeded.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;

use cograph_core::dpoly::DPolyMatrix;
use cograph_core::realization::{build_trellis, Closure, NormalRealization, Sign};
use cograph_core::sumproduct::{spa_update_counted, spa_via_dual_counted, Message};
use cograph_core::wam::{
    cwam, dual_cwam_direct, hwam, macwilliams_transform, verify_macwilliams, WamMatrix,
};
use cograph_core::{Error as CoreError, DEFAULT_BUDGET};

use crate::format::{
    self, behavior_to_file, code_to_file, hwam_to_file, message_from_file, message_to_file,
    realization_from_file, realization_to_file, wam_to_file, CountsFile, FormatError, HwamFile,
    MessageFile, RealizationFile, SpaBothFile, WamFile,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Json(String),
    Format(FormatError),
    Core(CoreError),
    Check(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Json(m) | CliError::Check(m) => {
                write!(f, "{m}")
            }
            CliError::Format(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Format(e)
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<cograph_core::dpoly::ParseError> for CliError {
    fn from(e: cograph_core::dpoly::ParseError) -> Self {
        CliError::Core(CoreError::Parse(e))
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            CliError::Core(CoreError::Budget { .. }) => 3,
            CliError::Core(CoreError::NonIntegralTransform { .. }) => 1,
            _ => 2,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "cograph",
    version,
    about = "Normal graph realizations of linear codes over Z_p: duals with sign \
             inverters, exact weight adjacency matrices, MacWilliams checks, and \
             sum-product updates in either domain"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Build a conventional trellis realization from a polynomial generator matrix
    Build(BuildArgs),
    /// Dualize a realization: dual block codes plus a sign inverter per internal edge
    Dual(DualArgs),
    /// Compute a weight adjacency matrix for one constraint block
    Wam(WamArgs),
    /// Check the MacWilliams identity on constraint blocks
    Verify(VerifyArgs),
    /// Run one exact sum-product update across a constraint block
    Spa(SpaArgs),
    /// Enumerate the realized code or the full behavior
    Behavior(BehaviorArgs),
}

#[derive(clap::Args)]
pub struct BuildArgs {
    /// Field prime
    #[arg(long)]
    pub p: u32,
    /// Generator matrix over Z_p[D]: rows split by ';', entries by ',',
    /// e.g. "1+D^2, 1+D+D^2"
    #[arg(long)]
    pub generators: String,
    /// Number of trellis sections
    #[arg(long)]
    pub sections: usize,
    #[arg(long, value_enum)]
    pub closure: ClosureArg,
    /// Enumeration budget (max elements per code or group walk)
    #[arg(long)]
    pub budget: Option<u64>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy)]
pub enum ClosureArg {
    /// Pin boundary states to zero
    Zero,
    /// Wrap the last state variable around to the first section
    Tailbite,
    /// Keep the single section open (requires --sections 1)
    Section,
}

#[derive(clap::Args)]
pub struct DualArgs {
    /// Realization file
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct WamArgs {
    /// Realization file
    pub input: PathBuf,
    /// Constraint block id
    #[arg(long)]
    pub constraint: String,
    #[arg(long, value_enum)]
    pub kind: WamKindArg,
    #[arg(long, value_enum)]
    pub domain: WamDomainArg,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy)]
pub enum WamKindArg {
    /// Complete weight adjacency matrix
    Cwam,
    /// Hamming weight adjacency matrix
    Hwam,
}

#[derive(ValueEnum, Clone, Copy)]
pub enum WamDomainArg {
    /// The block code itself
    Primal,
    /// The orthogonal code, enumerated directly
    DualDirect,
    /// The orthogonal code, via the MacWilliams transform
    DualTransform,
}

#[derive(clap::Args)]
pub struct VerifyArgs {
    /// Realization file
    pub input: PathBuf,
    /// Check only this constraint block (default: all)
    #[arg(long)]
    pub constraint: Option<String>,
    /// Check every constraint block (the default when --constraint is absent)
    #[arg(long, conflicts_with = "constraint")]
    pub all: bool,
    /// Also compare against a stored weight adjacency matrix file
    #[arg(long, requires = "constraint")]
    pub expect_wam: Option<PathBuf>,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(clap::Args)]
pub struct SpaArgs {
    /// Realization file
    pub input: PathBuf,
    /// Constraint block id
    #[arg(long)]
    pub constraint: String,
    /// Message file for the left state group
    #[arg(long)]
    pub message: PathBuf,
    /// One message file per symbol port
    #[arg(long, num_args = 1..)]
    pub weights: Vec<PathBuf>,
    #[arg(long, value_enum)]
    pub path: SpaPathArg,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy)]
pub enum SpaPathArg {
    /// Accumulate over the block code
    Direct,
    /// Transform, accumulate over the orthogonal code, transform back
    Dual,
    /// Run both routes, compare exactly, and report multiplication counts
    Both,
}

#[derive(clap::Args)]
pub struct BehaviorArgs {
    /// Realization file
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub emit: EmitArg,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy)]
pub enum EmitArg {
    /// The code the realization presents on its symbol variables
    Code,
    /// Every valid configuration of all variables
    Behavior,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Dual(a) => cmd_dual(a),
        Command::Wam(a) => cmd_wam(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Spa(a) => cmd_spa(a),
        Command::Behavior(a) => cmd_behavior(a),
    }
}

fn budget_of(flag: Option<u64>) -> u128 {
    flag.map_or(DEFAULT_BUDGET, u128::from)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(format!("{}: {e}", path.display())))
}

fn read_realization(path: &Path) -> Result<NormalRealization, CliError> {
    let file: RealizationFile = read_json(path)?;
    Ok(realization_from_file(&file)?)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_build(a: BuildArgs) -> Result<(), CliError> {
    let p = cograph_core::algebra::Prime::new(a.p)?;
    let g = DPolyMatrix::parse(p, &a.generators)?;
    let closure = match a.closure {
        ClosureArg::Zero => Closure::ZeroBoundary,
        ClosureArg::Tailbite => Closure::TailBiting,
        ClosureArg::Section => Closure::SingleSection,
    };
    let r = build_trellis(&g, a.sections, closure, budget_of(a.budget))?;
    emit(&a.out, &format::to_json(&realization_to_file(&r)?))
}

fn cmd_dual(a: DualArgs) -> Result<(), CliError> {
    let r = read_realization(&a.input)?;
    let d = r.dualize()?;
    let mut inverters = 0usize;
    for c in &d.constraints {
        for (pi, port) in c.ports.iter().enumerate() {
            if port.sign == Sign::Minus {
                eprintln!("inverter: constraint {} port {} (variable {})", c.id, pi, d.vars[port.var].id);
                inverters += 1;
            }
        }
    }
    eprintln!("{inverters} sign inverter(s)");
    emit(&a.out, &format::to_json(&realization_to_file(&d)?))
}

/// Dual CWAM through the transform route: |B⊥| is determined by the stored
/// block code.
fn transform_route(r: &NormalRealization, constraint: &str, budget: u128) -> Result<WamMatrix, CliError> {
    let primal = cwam(r, constraint, budget)?;
    let ci = r.constraint_index(constraint)?;
    let dual_size = r.constraints[ci].code.dual().size()?;
    Ok(macwilliams_transform(&primal, dual_size)?)
}

fn cmd_wam(a: WamArgs) -> Result<(), CliError> {
    let r = read_realization(&a.input)?;
    let budget = budget_of(a.budget);
    let matrix = match a.domain {
        WamDomainArg::Primal => cwam(&r, &a.constraint, budget)?,
        WamDomainArg::DualDirect => dual_cwam_direct(&r, &a.constraint, budget)?,
        WamDomainArg::DualTransform => transform_route(&r, &a.constraint, budget)?,
    };
    match a.kind {
        WamKindArg::Cwam => emit(&a.out, &format::to_json(&wam_to_file(&matrix)?)),
        WamKindArg::Hwam => emit(&a.out, &format::to_json(&hwam_to_file(&hwam(&matrix)?)?)),
    }
}

/// Computes the matrix a stored expectation file describes and compares.
fn check_expectation(
    r: &NormalRealization,
    constraint: &str,
    path: &Path,
    budget: u128,
) -> Result<bool, CliError> {
    let value: serde_json::Value = read_json(path)?;
    let kind = value.get("kind").and_then(|k| k.as_str()).unwrap_or_default().to_string();
    let domain = value.get("domain").and_then(|d| d.as_str()).unwrap_or_default().to_string();
    let cwam_of = |dom: &str| -> Result<WamMatrix, CliError> {
        match dom {
            "primal" => Ok(cwam(r, constraint, budget)?),
            "dual" => transform_route(r, constraint, budget),
            other => Err(CliError::Usage(format!("unknown domain {other:?} in {}", path.display()))),
        }
    };
    match kind.as_str() {
        "cwam" => {
            let expected: WamFile = serde_json::from_value(value)
                .map_err(|e| CliError::Json(format!("{}: {e}", path.display())))?;
            Ok(wam_to_file(&cwam_of(&domain)?)? == expected)
        }
        "hwam" => {
            let expected: HwamFile = serde_json::from_value(value)
                .map_err(|e| CliError::Json(format!("{}: {e}", path.display())))?;
            Ok(hwam_to_file(&hwam(&cwam_of(&domain)?)?)? == expected)
        }
        other => Err(CliError::Usage(format!("unknown kind {other:?} in {}", path.display()))),
    }
}

/// Whether the dualized realization realizes exactly the dual of the
/// realized code, by full enumeration of both behaviors.
fn realizes_dual(r: &NormalRealization, budget: u128) -> Result<bool, CoreError> {
    let primal = r.code_of(budget)?;
    let dual_code = r.dualize()?.code_of(budget)?;
    Ok(dual_code.code_equal(&primal.dual()))
}

fn cmd_verify(a: VerifyArgs) -> Result<(), CliError> {
    let r = read_realization(&a.input)?;
    let budget = budget_of(a.budget);
    let targets: Vec<String> = match &a.constraint {
        Some(id) => {
            r.constraint_index(id)?;
            vec![id.clone()]
        }
        None => r.constraints.iter().map(|c| c.id.clone()).collect(),
    };
    if targets.is_empty() {
        println!("SKIP: no constraints to verify");
        return Ok(());
    }
    let mut failures = 0usize;
    for id in &targets {
        match verify_macwilliams(&r, id, budget) {
            Ok(report) if report.pass => {
                println!("PASS {id}: transform matches dual enumeration ({}x{})", report.rows, report.cols);
            }
            Ok(report) => {
                failures += 1;
                match report.mismatch {
                    Some(m) => println!(
                        "FAIL {id}: mismatch at ({},{}): transform {} vs dual {}",
                        m.row,
                        m.col,
                        m.via_transform.render("W"),
                        m.via_dual.render("W")
                    ),
                    None => println!("FAIL {id}"),
                }
            }
            Err(CoreError::NonIntegralTransform { row, col }) => {
                failures += 1;
                println!("FAIL {id}: transform not integral at ({row},{col})");
            }
            Err(e) => return Err(e.into()),
        }
    }
    // Realization-level check: dualizing must realize the dual code. Only
    // closed realizations qualify (a fragment's boundary states are open),
    // and only when full enumeration fits the budget.
    if a.constraint.is_none() {
        if r.validate().violations.is_empty() {
            match realizes_dual(&r, budget) {
                Ok(true) => println!("PASS realization: dualizing realizes the dual code"),
                Ok(false) => {
                    failures += 1;
                    println!("FAIL realization: dualized realization does not realize the dual code");
                }
                Err(CoreError::Budget { .. }) => {
                    println!("SKIP realization duality: enumeration exceeds budget");
                }
                Err(e) => return Err(e.into()),
            }
        } else {
            println!("SKIP realization duality: fragment has open boundary states");
        }
    }
    if let Some(path) = &a.expect_wam {
        let id = a.constraint.as_deref().expect("clap requires --constraint");
        if check_expectation(&r, id, path, budget)? {
            println!("PASS {id}: matches {}", path.display());
        } else {
            failures += 1;
            println!("FAIL {id}: differs from {}", path.display());
        }
    }
    if failures > 0 {
        return Err(CliError::Check(format!("{failures} verification failure(s)")));
    }
    Ok(())
}

fn cmd_spa(a: SpaArgs) -> Result<(), CliError> {
    let r = read_realization(&a.input)?;
    let budget = budget_of(a.budget);
    let load = |path: &Path| -> Result<Message, CliError> {
        let file: MessageFile = read_json(path)?;
        if file.group.p != r.p.get() {
            return Err(CliError::Usage(format!(
                "{}: message prime {} does not match realization prime {}",
                path.display(),
                file.group.p,
                r.p.get()
            )));
        }
        Ok(message_from_file(&file)?)
    };
    let m = load(&a.message)?;
    let fs_in: Vec<Message> =
        a.weights.iter().map(|p| load(p)).collect::<Result<_, _>>()?;
    match a.path {
        SpaPathArg::Direct => {
            let (out, _) = spa_update_counted(&r, &a.constraint, &m, &fs_in, budget)?;
            emit(&a.out, &format::to_json(&message_to_file(&out)?))
        }
        SpaPathArg::Dual => {
            let (out, _) = spa_via_dual_counted(&r, &a.constraint, &m, &fs_in, budget)?;
            emit(&a.out, &format::to_json(&message_to_file(&out)?))
        }
        SpaPathArg::Both => {
            let (direct, direct_muls) = spa_update_counted(&r, &a.constraint, &m, &fs_in, budget)?;
            let (via_dual, dual_muls) = spa_via_dual_counted(&r, &a.constraint, &m, &fs_in, budget)?;
            if direct != via_dual {
                return Err(CliError::Check(
                    "sum-product routes disagree: direct and dual-domain results differ".to_string(),
                ));
            }
            let payload = SpaBothFile {
                message: message_to_file(&direct)?,
                counts: CountsFile { direct_muls, dual_muls },
            };
            emit(&a.out, &format::to_json(&payload))
        }
    }
}

fn cmd_behavior(a: BehaviorArgs) -> Result<(), CliError> {
    let r = read_realization(&a.input)?;
    let budget = budget_of(a.budget);
    match a.emit {
        EmitArg::Code => {
            let c = r.code_of(budget)?;
            emit(&a.out, &format::to_json(&code_to_file(&c)?))
        }
        EmitArg::Behavior => {
            let b = r.full_behavior(budget)?;
            emit(&a.out, &format::to_json(&behavior_to_file(&b)?))
        }
    }
}

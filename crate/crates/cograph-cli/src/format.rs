//! JSON file formats for realizations, weight adjacency matrices, messages,
//! and enumeration output.
//!
//! Serialization is deterministic: field order is fixed by the structs,
//! matrix entries are row-major, polynomial terms are sorted, and rationals
//! are reduced. Group vectors travel as digit strings ("0121"), which limits
//! files to p ≤ 10; every coordinate is one decimal digit.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use cograph_core::algebra::{CycloRat, Group, GroupVector, Prime, Rational};
use cograph_core::code::LinearCode;
use cograph_core::realization::{
    Behavior, ConstraintBlock, NormalRealization, PortBinding, Sign, VarDecl, VarKind,
};
use cograph_core::sumproduct::{Message, MsgDomain};
use cograph_core::wam::{Domain, HwamMatrix, WamMatrix};

/// A file-format-level problem: bad digit strings, unknown identifiers,
/// values that do not fit the format.
#[derive(Debug)]
pub struct FormatError(pub String);

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for FormatError {}

fn err<T>(msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError(msg.into()))
}

/// Renders a JSON document the one canonical way: pretty-printed with a
/// trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

// ---------------------------------------------------------------- vectors

pub fn vector_to_digits(v: &GroupVector) -> Result<String, FormatError> {
    if v.p().get() > 10 {
        return err("digit strings only cover p ≤ 10");
    }
    Ok(v.coords().iter().map(|&c| char::from(b'0' + c as u8)).collect())
}

pub fn digits_to_vector(p: Prime, s: &str) -> Result<GroupVector, FormatError> {
    if p.get() > 10 {
        return err("digit strings only cover p ≤ 10");
    }
    let mut coords = Vec::with_capacity(s.len());
    for ch in s.chars() {
        let d = ch
            .to_digit(10)
            .ok_or_else(|| FormatError(format!("bad digit {ch:?} in vector {s:?}")))?;
        if d >= p.get() {
            return err(format!("digit {d} out of range for p={} in {s:?}", p.get()));
        }
        coords.push(d);
    }
    GroupVector::new(p, coords).map_err(|e| FormatError(e.to_string()))
}

// ----------------------------------------------------------- realizations

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct RealizationFile {
    pub p: u32,
    pub vars: Vec<VarFile>,
    pub constraints: Vec<ConstraintFile>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct VarFile {
    pub id: String,
    pub kind: String,
    pub dim: usize,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct ConstraintFile {
    pub id: String,
    pub generators: Vec<String>,
    pub ports: Vec<PortFile>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct PortFile {
    pub var: String,
    pub sign: i8,
}

pub fn realization_to_file(r: &NormalRealization) -> Result<RealizationFile, FormatError> {
    let vars = r
        .vars
        .iter()
        .map(|v| VarFile {
            id: v.id.clone(),
            kind: match v.kind {
                VarKind::Symbol => "symbol".to_string(),
                VarKind::State => "state".to_string(),
            },
            dim: v.dim,
        })
        .collect();
    let constraints = r
        .constraints
        .iter()
        .map(|c| {
            Ok(ConstraintFile {
                id: c.id.clone(),
                generators: c
                    .code
                    .generators()
                    .iter()
                    .map(vector_to_digits)
                    .collect::<Result<_, _>>()?,
                ports: c
                    .ports
                    .iter()
                    .map(|port| PortFile {
                        var: r.vars[port.var].id.clone(),
                        sign: port.sign.as_i8(),
                    })
                    .collect(),
            })
        })
        .collect::<Result<_, FormatError>>()?;
    Ok(RealizationFile { p: r.p.get(), vars, constraints })
}

pub fn realization_from_file(f: &RealizationFile) -> Result<NormalRealization, FormatError> {
    let p = Prime::new(f.p).map_err(|e| FormatError(e.to_string()))?;
    let mut vars = Vec::with_capacity(f.vars.len());
    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, v) in f.vars.iter().enumerate() {
        let kind = match v.kind.as_str() {
            "symbol" => VarKind::Symbol,
            "state" => VarKind::State,
            other => return err(format!("unknown variable kind {other:?}")),
        };
        if index.insert(v.id.as_str(), i).is_some() {
            return err(format!("duplicate variable id {:?}", v.id));
        }
        vars.push(VarDecl { id: v.id.clone(), kind, dim: v.dim });
    }
    let mut constraints = Vec::with_capacity(f.constraints.len());
    for c in &f.constraints {
        let width: usize = c
            .ports
            .iter()
            .map(|port| {
                index
                    .get(port.var.as_str())
                    .map(|&vi| vars[vi].dim)
                    .ok_or_else(|| FormatError(format!("unknown variable {:?}", port.var)))
            })
            .sum::<Result<usize, _>>()?;
        let gens = c
            .generators
            .iter()
            .map(|s| digits_to_vector(p, s))
            .collect::<Result<Vec<_>, _>>()?;
        for g in &gens {
            if g.len() != width {
                return err(format!(
                    "constraint {:?}: generator width {} does not match port width {}",
                    c.id,
                    g.len(),
                    width
                ));
            }
        }
        let code = LinearCode::new(p, width, gens).map_err(|e| FormatError(e.to_string()))?;
        let ports = c
            .ports
            .iter()
            .map(|port| {
                let sign = match port.sign {
                    1 => Sign::Plus,
                    -1 => Sign::Minus,
                    other => return err(format!("sign must be 1 or -1, got {other}")),
                };
                Ok(PortBinding { var: index[port.var.as_str()], sign })
            })
            .collect::<Result<_, FormatError>>()?;
        constraints.push(ConstraintBlock { id: c.id.clone(), code, ports });
    }
    Ok(NormalRealization { p, vars, constraints })
}

// ------------------------------------------------- weight adjacency files

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct WamFile {
    pub kind: String,
    pub domain: String,
    pub p: u32,
    pub symbol_coords: usize,
    /// Left-state labels in canonical order, one per matrix row.
    pub rows: Vec<String>,
    /// Right-state labels in canonical order, one per matrix column.
    pub cols: Vec<String>,
    /// Row-major; each entry is a sorted list of terms.
    pub entries: Vec<Vec<Vec<TermFile>>>,
}

/// coeff · Π_c slot_c^exps[c], with the coefficient in the cyclotomic power
/// basis: num[i] multiplies ω^i.
#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct TermFile {
    pub exps: Vec<u32>,
    pub coeff: CoeffFile,
}

/// An exact element of Q(ω): integer numerators over one common denominator,
/// num[i]/den multiplying ω^i. den is the positive least common denominator,
/// so the encoding is canonical.
#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct CoeffFile {
    pub den: String,
    pub num: Vec<String>,
}

fn coeff_file(c: &CycloRat) -> CoeffFile {
    let den: BigInt = c
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let num = c
        .coeffs()
        .iter()
        .map(|r| (r.numer() * (&den / r.denom())).to_string())
        .collect();
    CoeffFile { den: den.to_string(), num }
}

fn domain_name(d: Domain) -> String {
    match d {
        Domain::Primal => "primal".to_string(),
        Domain::Dual => "dual".to_string(),
    }
}

/// The first `count` elements of the group as digit strings, canonical order.
fn state_labels(g: &Group, count: usize) -> Result<Vec<String>, FormatError> {
    (0..count).map(|i| vector_to_digits(&g.element(i))).collect()
}

pub fn wam_to_file(m: &WamMatrix) -> Result<WamFile, FormatError> {
    let entries = (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| {
                    m.entry(r, c)
                        .terms()
                        .iter()
                        .map(|(exps, coeff)| TermFile {
                            exps: exps.clone(),
                            coeff: coeff_file(coeff),
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(WamFile {
        kind: "cwam".to_string(),
        domain: domain_name(m.domain()),
        p: m.p().get(),
        symbol_coords: m.symbol_coords(),
        rows: state_labels(&m.left(), m.rows())?,
        cols: state_labels(&m.right(), m.cols())?,
        entries,
    })
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct HwamFile {
    pub kind: String,
    pub domain: String,
    pub p: u32,
    pub symbol_coords: usize,
    /// Left-state labels in canonical order, one per matrix row.
    pub rows: Vec<String>,
    /// Right-state labels in canonical order, one per matrix column.
    pub cols: Vec<String>,
    /// Row-major; each entry lists integer coefficients by weight, constant
    /// term first.
    pub entries: Vec<Vec<Vec<String>>>,
}

pub fn hwam_to_file(m: &HwamMatrix) -> Result<HwamFile, FormatError> {
    let entries = (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| m.entry(r, c).coeffs().iter().map(|b| b.to_string()).collect())
                .collect()
        })
        .collect();
    Ok(HwamFile {
        kind: "hwam".to_string(),
        domain: domain_name(m.domain()),
        p: m.p().get(),
        symbol_coords: m.symbol_coords(),
        rows: state_labels(&m.left(), m.rows())?,
        cols: state_labels(&m.right(), m.cols())?,
        entries,
    })
}

// --------------------------------------------------------------- messages

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct GroupFile {
    pub p: u32,
    pub dim: usize,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct MessageFile {
    pub group: GroupFile,
    /// One reduced rational per group element, canonical element order.
    pub values: Vec<String>,
}

pub fn message_to_file(m: &Message) -> Result<MessageFile, FormatError> {
    if m.domain() != MsgDomain::Primal {
        return err("only primal-domain messages have a file form");
    }
    let values = m
        .values()
        .iter()
        .map(|c| {
            c.as_rational()
                .map(|r| r.to_string())
                .ok_or_else(|| FormatError("message value is not rational".to_string()))
        })
        .collect::<Result<_, _>>()?;
    let group = GroupFile { p: m.group().p().get(), dim: m.group().dim() };
    Ok(MessageFile { group, values })
}

pub fn message_from_file(f: &MessageFile) -> Result<Message, FormatError> {
    let p = Prime::new(f.group.p).map_err(|e| FormatError(e.to_string()))?;
    let values = f
        .values
        .iter()
        .map(|s| {
            Rational::from_str(s)
                .map_err(|e| FormatError(format!("bad rational {s:?}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Message::primal(p, f.group.dim, values).map_err(|e| FormatError(e.to_string()))
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct CountsFile {
    pub direct_muls: u64,
    pub dual_muls: u64,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct SpaBothFile {
    pub message: MessageFile,
    pub counts: CountsFile,
}

// ------------------------------------------------------------ enumeration

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct CodeFile {
    pub p: u32,
    pub n: usize,
    pub dim: usize,
    pub generators: Vec<String>,
}

pub fn code_to_file(c: &LinearCode) -> Result<CodeFile, FormatError> {
    Ok(CodeFile {
        p: c.p().get(),
        n: c.len(),
        dim: c.dim(),
        generators: c.generators().iter().map(vector_to_digits).collect::<Result<_, _>>()?,
    })
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct BehaviorFile {
    pub p: u32,
    pub vars: Vec<String>,
    /// One digit string per variable, configurations in enumeration order.
    pub configs: Vec<Vec<String>>,
}

pub fn behavior_to_file(b: &Behavior) -> Result<BehaviorFile, FormatError> {
    Ok(BehaviorFile {
        p: b.p.get(),
        vars: b.vars.iter().map(|v| v.id.clone()).collect(),
        configs: b
            .configs
            .iter()
            .map(|cfg| cfg.iter().map(vector_to_digits).collect())
            .collect::<Result<_, _>>()?,
    })
}

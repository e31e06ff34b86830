//! Normal graphical realizations: systems of local constraint codes glued
//! along shared variables, their behaviors, and dualization.
//!
//! Symbol variables are external (their configurations form the realized
//! code); state variables are internal glue. In a *normal* realization every
//! symbol variable has degree 1 and every state variable degree 2. Single
//! constraint blocks cut out of a larger system (see [`fragment`]) keep their
//! boundary states at degree 1 and deliberately fail the degree check while
//! remaining structurally sound.
//!
//! Stored constraint codes are always literal: dualization folds its sign
//! inverters directly into the generators, so the behavior is raw membership
//! of the port tuple in each stored code. Port signs record where inverters
//! sit, one per internal state edge and per dualization pass.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{checked_pow, Group, GroupVector, Prime};
use crate::code::LinearCode;
use crate::dpoly::DPolyMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarKind {
    Symbol,
    State,
}

/// Orientation of a port: `Minus` means the constraint reads the negated
/// variable. Purely descriptive — the stored generators already include it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarDecl {
    pub id: String,
    pub kind: VarKind,
    pub dim: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PortBinding {
    /// Index into the realization's variable list.
    pub var: usize,
    pub sign: Sign,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstraintBlock {
    pub id: String,
    pub code: LinearCode,
    /// Ports in coordinate order: the code's coordinates split into one
    /// contiguous span per port, each span `vars[port.var].dim` wide.
    pub ports: Vec<PortBinding>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalRealization {
    pub p: Prime,
    pub vars: Vec<VarDecl>,
    pub constraints: Vec<ConstraintBlock>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    DuplicateVar(String),
    DuplicateConstraint(String),
    ZeroDimVar(String),
    UnknownVar { constraint: String, port: usize },
    PrimeMismatch { constraint: String },
    LengthMismatch { constraint: String, expected: usize, got: usize },
    SymbolDegree { var: String, degree: usize },
    StateDegree { var: String, degree: usize },
    SignOnSymbol { constraint: String, port: usize },
}

impl Violation {
    /// Degree conditions are what separates a full normal realization from a
    /// structurally sound fragment.
    fn is_degree(&self) -> bool {
        matches!(self, Violation::SymbolDegree { .. } | Violation::StateDegree { .. })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVar(id) => write!(f, "variable '{id}' declared twice"),
            Violation::DuplicateConstraint(id) => write!(f, "constraint '{id}' declared twice"),
            Violation::ZeroDimVar(id) => {
                write!(f, "variable '{id}' has dimension 0 (omit it instead)")
            }
            Violation::UnknownVar { constraint, port } => {
                write!(f, "constraint '{constraint}' port {port} references an unknown variable")
            }
            Violation::PrimeMismatch { constraint } => {
                write!(f, "constraint '{constraint}' uses a different field characteristic")
            }
            Violation::LengthMismatch { constraint, expected, got } => write!(
                f,
                "constraint '{constraint}' ports cover {got} coordinates, its code has {expected}"
            ),
            Violation::SymbolDegree { var, degree } => {
                write!(f, "symbol variable '{var}' appears in {degree} ports, need exactly 1")
            }
            Violation::StateDegree { var, degree } => {
                write!(f, "state variable '{var}' appears in {degree} ports, need exactly 2")
            }
            Violation::SignOnSymbol { constraint, port } => {
                write!(f, "constraint '{constraint}' port {port} puts a sign on a symbol variable")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid normal realization");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Full configurations of a realization: one group vector per variable.
#[derive(Clone, Debug)]
pub struct Behavior {
    pub p: Prime,
    pub vars: Vec<VarDecl>,
    pub configs: Vec<Vec<GroupVector>>,
}

/// Coordinate layout of one constraint block, ports arranged as
/// `state* symbol* state*`. Blocks without symbol ports put every state on
/// the left; absent state ports mean a trivial (dimension-0) group on that
/// side.
pub(crate) struct BlockLayout {
    pub left: Group,
    pub right: Group,
    pub left_span: (usize, usize),
    pub symbol_spans: Vec<(usize, usize)>,
    pub right_span: (usize, usize),
}

impl NormalRealization {
    pub fn constraint_index(&self, id: &str) -> Result<usize> {
        self.constraints
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| Error::UnknownConstraint(id.to_string()))
    }

    /// Checks every well-formedness condition, degree conditions included.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (i, v) in self.vars.iter().enumerate() {
            if self.vars[..i].iter().any(|u| u.id == v.id) {
                violations.push(Violation::DuplicateVar(v.id.clone()));
            }
            if v.dim == 0 {
                violations.push(Violation::ZeroDimVar(v.id.clone()));
            }
        }
        let mut degree = vec![0usize; self.vars.len()];
        for (i, c) in self.constraints.iter().enumerate() {
            if self.constraints[..i].iter().any(|d| d.id == c.id) {
                violations.push(Violation::DuplicateConstraint(c.id.clone()));
            }
            if c.code.p() != self.p {
                violations.push(Violation::PrimeMismatch { constraint: c.id.clone() });
            }
            let mut width = 0;
            let mut all_known = true;
            for (pi, pt) in c.ports.iter().enumerate() {
                let Some(v) = self.vars.get(pt.var) else {
                    violations.push(Violation::UnknownVar { constraint: c.id.clone(), port: pi });
                    all_known = false;
                    continue;
                };
                degree[pt.var] += 1;
                width += v.dim;
                if v.kind == VarKind::Symbol && pt.sign == Sign::Minus {
                    violations.push(Violation::SignOnSymbol { constraint: c.id.clone(), port: pi });
                }
            }
            if all_known && width != c.code.len() {
                violations.push(Violation::LengthMismatch {
                    constraint: c.id.clone(),
                    expected: c.code.len(),
                    got: width,
                });
            }
        }
        for (vi, v) in self.vars.iter().enumerate() {
            match v.kind {
                VarKind::Symbol if degree[vi] != 1 => {
                    violations.push(Violation::SymbolDegree { var: v.id.clone(), degree: degree[vi] });
                }
                VarKind::State if degree[vi] != 2 => {
                    violations.push(Violation::StateDegree { var: v.id.clone(), degree: degree[vi] });
                }
                _ => {}
            }
        }
        ValidationReport { violations }
    }

    /// Everything except the degree conditions; fragments pass this.
    pub fn structural_ok(&self) -> Result<()> {
        let structural: Vec<Violation> =
            self.validate().violations.into_iter().filter(|v| !v.is_degree()).collect();
        if structural.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidRealization(ValidationReport { violations: structural }.to_string()))
        }
    }

    /// Coordinate span (start, width) of one port within its block's code.
    fn port_span(&self, ci: usize, pi: usize) -> (usize, usize) {
        let c = &self.constraints[ci];
        let mut off = 0;
        for (j, pt) in c.ports.iter().enumerate() {
            let d = self.vars[pt.var].dim;
            if j == pi {
                return (off, d);
            }
            off += d;
        }
        unreachable!("port index in range")
    }

    pub(crate) fn block_layout(&self, index: usize) -> Result<BlockLayout> {
        let c = &self.constraints[index];
        // 0 = leading states, 1 = symbols, 2 = trailing states.
        let mut phase = 0u8;
        let mut off = 0usize;
        let mut left_dim = 0;
        let mut right_dim = 0;
        let mut right_start = 0;
        let mut symbol_spans = Vec::new();
        for pt in &c.ports {
            let v = &self.vars[pt.var];
            match v.kind {
                VarKind::State if phase == 0 => left_dim += v.dim,
                VarKind::State => {
                    if phase == 1 {
                        phase = 2;
                        right_start = off;
                    }
                    right_dim += v.dim;
                }
                VarKind::Symbol => {
                    if phase == 2 {
                        return Err(Error::InvalidRealization(format!(
                            "constraint '{}': ports must be arranged states, symbols, states",
                            c.id
                        )));
                    }
                    phase = 1;
                    symbol_spans.push((off, v.dim));
                }
            }
            off += v.dim;
        }
        if right_dim == 0 {
            right_start = off;
        }
        Ok(BlockLayout {
            left: Group::new(self.p, left_dim),
            right: Group::new(self.p, right_dim),
            left_span: (0, left_dim),
            symbol_spans,
            right_span: (right_start, right_dim),
        })
    }

    /// Enumerates every configuration of every variable compatible with all
    /// constraints. The worst-case leaf count Π|C_i| · p^(unattached dims) is
    /// checked against `budget` before any work happens.
    pub fn full_behavior(&self, budget: u128) -> Result<Behavior> {
        self.structural_ok()?;
        let mut attached = vec![false; self.vars.len()];
        for c in &self.constraints {
            for pt in &c.ports {
                attached[pt.var] = true;
            }
        }
        let mut needed: u128 = 1;
        for c in &self.constraints {
            needed = needed.checked_mul(c.code.size()?).ok_or(Error::Overflow)?;
        }
        let loose_dims: usize = self
            .vars
            .iter()
            .enumerate()
            .filter(|&(i, _)| !attached[i])
            .map(|(_, v)| v.dim)
            .sum();
        needed = needed.checked_mul(checked_pow(self.p.get(), loose_dims)?).ok_or(Error::Overflow)?;
        if needed > budget {
            return Err(Error::Budget { needed, limit: budget });
        }

        // Codeword table plus (var, offset, width) spans per constraint.
        let mut tables = Vec::with_capacity(self.constraints.len());
        for c in &self.constraints {
            let words = c.code.enumerate(budget)?;
            let mut spans = Vec::with_capacity(c.ports.len());
            let mut off = 0;
            for pt in &c.ports {
                let d = self.vars[pt.var].dim;
                spans.push((pt.var, off, d));
                off += d;
            }
            tables.push((words, spans));
        }
        let loose: Vec<usize> = (0..self.vars.len()).filter(|&i| !attached[i]).collect();

        let mut assign: Vec<Option<GroupVector>> = vec![None; self.vars.len()];
        let mut configs = Vec::new();
        unify_constraints(self, &tables, &loose, 0, &mut assign, &mut configs);
        Ok(Behavior { p: self.p, vars: self.vars.clone(), configs })
    }

    /// The code the realization realizes: behavior projected onto the symbol
    /// variables in declaration order, canonicalized.
    pub fn code_of(&self, budget: u128) -> Result<LinearCode> {
        let behavior = self.full_behavior(budget)?;
        let sym: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.vars[i].kind == VarKind::Symbol)
            .collect();
        let n: usize = sym.iter().map(|&i| self.vars[i].dim).sum();
        let mut rows = Vec::with_capacity(behavior.configs.len());
        for cfg in &behavior.configs {
            let mut w = GroupVector::zero(self.p, 0);
            for &i in &sym {
                w = w.concat(&cfg[i])?;
            }
            rows.push(w);
        }
        LinearCode::new(self.p, n, rows)
    }

    /// The dual realization: each constraint code is replaced by its dual,
    /// and each internal (degree-2) state edge receives one sign inverter,
    /// folded into the generators at the edge's first port in declaration
    /// order. Symbol variables then range over the transformed domain; the
    /// realized code is the dual of the original (checked by tests, not
    /// assumed here).
    pub fn dualize(&self) -> Result<NormalRealization> {
        self.structural_ok()?;
        let mut occurrences: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.vars.len()];
        for (ci, c) in self.constraints.iter().enumerate() {
            for (pi, pt) in c.ports.iter().enumerate() {
                occurrences[pt.var].push((ci, pi));
            }
        }
        for (vi, v) in self.vars.iter().enumerate() {
            let deg = occurrences[vi].len();
            let ok = match v.kind {
                VarKind::Symbol => deg == 1,
                VarKind::State => deg == 1 || deg == 2,
            };
            if !ok {
                return Err(Error::InvalidRealization(format!(
                    "cannot dualize: variable '{}' appears in {} ports",
                    v.id, deg
                )));
            }
        }
        let mut blocks: Vec<ConstraintBlock> = self
            .constraints
            .iter()
            .map(|c| ConstraintBlock { id: c.id.clone(), code: c.code.dual(), ports: c.ports.clone() })
            .collect();
        for (vi, v) in self.vars.iter().enumerate() {
            if v.kind != VarKind::State || occurrences[vi].len() != 2 {
                continue;
            }
            // Declaration order puts a chain edge at the earlier section's
            // right port and a wrap-around edge at the first section's left
            // port; any single end per edge works.
            let (ci, pi) = occurrences[vi][0];
            let (start, len) = self.port_span(ci, pi);
            let negated: Vec<GroupVector> =
                blocks[ci].code.generators().iter().map(|g| g.negate_range(start, len)).collect();
            blocks[ci].code = LinearCode::new(self.p, blocks[ci].code.len(), negated)?;
            blocks[ci].ports[pi].sign = blocks[ci].ports[pi].sign.flip();
        }
        Ok(NormalRealization { p: self.p, vars: self.vars.clone(), constraints: blocks })
    }
}

/// One constraint's enumerated codewords plus its (var, offset, width) port
/// spans.
type ConstraintTable = (Vec<GroupVector>, Vec<(usize, usize, usize)>);

/// Depth-first unification: walk constraints in declaration order, each
/// codeword in enumeration order; assignments made by a codeword roll back
/// when it fails or after its subtree completes, so the traversal is
/// deterministic.
fn unify_constraints(
    r: &NormalRealization,
    tables: &[ConstraintTable],
    loose: &[usize],
    level: usize,
    assign: &mut Vec<Option<GroupVector>>,
    configs: &mut Vec<Vec<GroupVector>>,
) {
    if level == tables.len() {
        fill_loose(r, loose, 0, assign, configs);
        return;
    }
    let (words, spans) = &tables[level];
    'words: for w in words {
        let mut fresh: Vec<usize> = Vec::new();
        for &(var, off, dim) in spans {
            let val = w.slice(off, dim);
            match &assign[var] {
                Some(existing) => {
                    if *existing != val {
                        for &v in &fresh {
                            assign[v] = None;
                        }
                        continue 'words;
                    }
                }
                None => {
                    assign[var] = Some(val);
                    fresh.push(var);
                }
            }
        }
        unify_constraints(r, tables, loose, level + 1, assign, configs);
        for &v in &fresh {
            assign[v] = None;
        }
    }
}

/// Variables attached to no constraint range over their full group.
fn fill_loose(
    r: &NormalRealization,
    loose: &[usize],
    at: usize,
    assign: &mut Vec<Option<GroupVector>>,
    configs: &mut Vec<Vec<GroupVector>>,
) {
    if at == loose.len() {
        configs.push(assign.iter().map(|o| o.clone().expect("all variables assigned")).collect());
        return;
    }
    let var = loose[at];
    let g = Group::new(r.p, r.vars[var].dim);
    let size = g.size_usize().expect("budget-checked");
    for i in 0..size {
        assign[var] = Some(g.element(i));
        fill_loose(r, loose, at + 1, assign, configs);
    }
    assign[var] = None;
}

/// Wraps a single constraint code as a standalone block with boundary state
/// ports of the given widths on either side and one symbol port per entry of
/// `symbol_dims`. Boundary states have degree 1, so the result is a fragment,
/// not a full normal realization. Pass width 0 to omit a boundary.
pub fn fragment(
    p: Prime,
    code: LinearCode,
    left_dim: usize,
    symbol_dims: &[usize],
    right_dim: usize,
) -> Result<NormalRealization> {
    p.check_same(code.p())?;
    let width = left_dim + symbol_dims.iter().sum::<usize>() + right_dim;
    if width != code.len() {
        return Err(Error::DimensionMismatch { expected: code.len(), actual: width });
    }
    if symbol_dims.contains(&0) {
        return Err(Error::InvalidRealization("symbol ports need positive dimension".to_string()));
    }
    let mut vars = Vec::new();
    let mut ports = Vec::new();
    if left_dim > 0 {
        ports.push(PortBinding { var: vars.len(), sign: Sign::Plus });
        vars.push(VarDecl { id: "s0".to_string(), kind: VarKind::State, dim: left_dim });
    }
    for (i, &d) in symbol_dims.iter().enumerate() {
        ports.push(PortBinding { var: vars.len(), sign: Sign::Plus });
        vars.push(VarDecl { id: format!("a{i}"), kind: VarKind::Symbol, dim: d });
    }
    if right_dim > 0 {
        ports.push(PortBinding { var: vars.len(), sign: Sign::Plus });
        vars.push(VarDecl { id: "s1".to_string(), kind: VarKind::State, dim: right_dim });
    }
    Ok(NormalRealization {
        p,
        vars,
        constraints: vec![ConstraintBlock { id: "c0".to_string(), code, ports }],
    })
}

/// How the ends of a section chain are tied off.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Closure {
    /// States before the first and after the last section are pinned to zero
    /// and dropped, leaving a chain code on the symbols alone.
    ZeroBoundary,
    /// The last section feeds the first: one circular state chain.
    TailBiting,
    /// One section kept open as a fragment with both boundary states visible.
    SingleSection,
}

/// Builds the conventional trellis realization of the convolutional code with
/// feedback-free transfer matrix `g`, unrolled over `sections` time steps.
///
/// Input row i contributes deg_i memory cells; the section constraint code on
/// (left state, n outputs, right state) is spanned, for each input row and
/// each phase j of its impulse response, by the triple (cell marker j,
/// response coefficients at j, cell marker j+1), the markers at the ends
/// being zero.
pub fn build_trellis(
    g: &DPolyMatrix,
    sections: usize,
    closure: Closure,
    budget: u128,
) -> Result<NormalRealization> {
    let p = g.p();
    let k = g.rows();
    let n = g.cols();
    if k == 0 || n == 0 {
        return Err(Error::InvalidRealization("transfer matrix must be nonempty".to_string()));
    }
    if sections == 0 {
        return Err(Error::InvalidRealization("section count must be positive".to_string()));
    }
    if closure == Closure::SingleSection && sections != 1 {
        return Err(Error::InvalidRealization(
            "an open single section means exactly one section".to_string(),
        ));
    }
    let degs: Vec<usize> = (0..k)
        .map(|i| (0..n).map(|j| g.entry(i, j).degree()).max().unwrap_or(0))
        .collect();
    let nu: usize = degs.iter().sum();
    let state_space = checked_pow(p.get(), nu)?;
    if state_space > budget {
        return Err(Error::Budget { needed: state_space, limit: budget });
    }
    let offsets: Vec<usize> = degs
        .iter()
        .scan(0usize, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();

    let total = nu + n + nu;
    let mut gens = Vec::new();
    for i in 0..k {
        for j in 0..=degs[i] {
            let mut coords = vec![0u32; total];
            if j >= 1 {
                coords[offsets[i] + j - 1] = 1;
            }
            for col in 0..n {
                coords[nu + col] = g.entry(i, col).coeff(j);
            }
            if j < degs[i] {
                coords[nu + n + offsets[i] + j] = 1;
            }
            gens.push(GroupVector::new(p, coords)?);
        }
    }
    let section = LinearCode::new(p, total, gens)?;

    let zero_end = |code: &LinearCode, at_left: bool| -> Result<LinearCode> {
        if nu == 0 {
            return Ok(code.clone());
        }
        let start = if at_left { 0 } else { code.len() - nu };
        drop_range(&restrict_zero(code, start, nu)?, start, nu)
    };

    let l = sections;
    match closure {
        Closure::SingleSection => {
            let symbol_dims = [n];
            fragment(p, section, nu, &symbol_dims, nu)
        }
        Closure::ZeroBoundary => {
            let mut vars = Vec::new();
            let mut state_at = vec![None; l];
            let mut symbol_at = Vec::with_capacity(l);
            for (t, slot) in state_at.iter_mut().enumerate() {
                if t > 0 && nu > 0 {
                    *slot = Some(vars.len());
                    vars.push(VarDecl { id: format!("s{t}"), kind: VarKind::State, dim: nu });
                }
                symbol_at.push(vars.len());
                vars.push(VarDecl { id: format!("a{t}"), kind: VarKind::Symbol, dim: n });
            }
            let mut constraints = Vec::with_capacity(l);
            for t in 0..l {
                let mut code = section.clone();
                if t == 0 {
                    code = zero_end(&code, true)?;
                }
                if t == l - 1 {
                    code = zero_end(&code, false)?;
                }
                let mut ports = Vec::new();
                if let Some(v) = (t > 0).then(|| state_at[t]).flatten() {
                    ports.push(PortBinding { var: v, sign: Sign::Plus });
                }
                ports.push(PortBinding { var: symbol_at[t], sign: Sign::Plus });
                if t + 1 < l {
                    if let Some(v) = state_at[t + 1] {
                        ports.push(PortBinding { var: v, sign: Sign::Plus });
                    }
                }
                constraints.push(ConstraintBlock { id: format!("c{t}"), code, ports });
            }
            Ok(NormalRealization { p, vars, constraints })
        }
        Closure::TailBiting => {
            let mut vars = Vec::new();
            let mut state_at = vec![None; l];
            let mut symbol_at = Vec::with_capacity(l);
            for (t, slot) in state_at.iter_mut().enumerate() {
                if nu > 0 {
                    *slot = Some(vars.len());
                    vars.push(VarDecl { id: format!("s{t}"), kind: VarKind::State, dim: nu });
                }
                symbol_at.push(vars.len());
                vars.push(VarDecl { id: format!("a{t}"), kind: VarKind::Symbol, dim: n });
            }
            let mut constraints = Vec::with_capacity(l);
            for t in 0..l {
                let mut ports = Vec::new();
                if let Some(v) = state_at[t] {
                    ports.push(PortBinding { var: v, sign: Sign::Plus });
                }
                ports.push(PortBinding { var: symbol_at[t], sign: Sign::Plus });
                if let Some(v) = state_at[(t + 1) % l] {
                    ports.push(PortBinding { var: v, sign: Sign::Plus });
                }
                constraints.push(ConstraintBlock { id: format!("c{t}"), code: section.clone(), ports });
            }
            Ok(NormalRealization { p, vars, constraints })
        }
    }
}

/// The subcode whose words vanish on the coordinate window, found by dualizing
/// the window's column span in message space.
fn restrict_zero(code: &LinearCode, start: usize, len: usize) -> Result<LinearCode> {
    if len == 0 {
        return Ok(code.clone());
    }
    let p = code.p();
    let k = code.dim();
    let mut cols = Vec::with_capacity(len);
    for j in start..start + len {
        let coords: Vec<u32> = code.generators().iter().map(|g| g.coord(j)).collect();
        cols.push(GroupVector::new(p, coords)?);
    }
    let messages = LinearCode::new(p, k, cols)?.dual();
    let mut rows = Vec::with_capacity(messages.dim());
    for m in messages.generators() {
        let mut w = GroupVector::zero(p, code.len());
        for (i, g) in code.generators().iter().enumerate() {
            let c = m.coord(i);
            if c != 0 {
                w.add_scaled_assign(g, c);
            }
        }
        rows.push(w);
    }
    LinearCode::new(p, code.len(), rows)
}

/// Removes a coordinate window on which every generator is already zero.
fn drop_range(code: &LinearCode, start: usize, len: usize) -> Result<LinearCode> {
    let mut rows = Vec::with_capacity(code.dim());
    for g in code.generators() {
        debug_assert!(g.coords()[start..start + len].iter().all(|&c| c == 0));
        let mut coords = g.coords()[..start].to_vec();
        coords.extend_from_slice(&g.coords()[start + len..]);
        rows.push(GroupVector::new(code.p(), coords)?);
    }
    LinearCode::new(code.p(), code.len() - len, rows)
}

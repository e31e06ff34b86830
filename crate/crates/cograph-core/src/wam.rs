//! Weight adjacency matrices of constraint blocks and their MacWilliams
//! transforms, all in exact arithmetic.
//!
//! A block with left state group S_l, n symbol coordinates over Z_p, and
//! right state group S_r has a complete weight adjacency matrix (CWAM)
//! Λ[y][z] = Σ over codewords (y, a, z) of Π_i w_{a_i}: a |S_l| × |S_r|
//! matrix of homogeneous degree-n polynomials in the p indeterminates
//! w_0 … w_{p−1}. The MacWilliams transform of Λ is
//!
//! ```text
//! Λ̂[ŝ][t̂] = (|B⊥| / (pⁿ·|S_l|·|S_r|)) · Σ_{y,z} ω^{ŝ·y} ω^{−t̂·z} Λ[y][z]
//! ```
//!
//! with every w_c replaced by Σ_f ω^{c·f} W_f, and it equals the CWAM of the
//! dual block computed directly — with the dual's right state index negated,
//! matching the sign-inverter convention of dualization. Hamming weight
//! adjacency matrices (HWAMs) collapse the p indeterminates to 1 and w.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{checked_pow, dot, CycloRat, Group, Prime, Rational};
use crate::error::{Error, Result};
use crate::realization::NormalRealization;

/// Which variable alphabet a matrix or message lives over: the original
/// symbols or their character-transformed counterparts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Domain {
    Primal,
    Dual,
}

impl Domain {
    pub fn flip(self) -> Domain {
        match self {
            Domain::Primal => Domain::Dual,
            Domain::Dual => Domain::Primal,
        }
    }

    /// Conventional letter for the indeterminates of this domain.
    pub fn letter(self) -> &'static str {
        match self {
            Domain::Primal => "w",
            Domain::Dual => "W",
        }
    }
}

/// A polynomial in the p indeterminates w_0 … w_{p−1} (one per residue) with
/// exact cyclotomic-rational coefficients. Terms are keyed by their exponent
/// vector, so the representation is canonical and ordered.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightPoly {
    p: Prime,
    terms: BTreeMap<Vec<u32>, CycloRat>,
}

impl WeightPoly {
    pub fn zero(p: Prime) -> Self {
        WeightPoly { p, terms: BTreeMap::new() }
    }

    pub fn constant(p: Prime, c: CycloRat) -> Self {
        let mut out = Self::zero(p);
        out.add_term(vec![0; p.get() as usize], c);
        out
    }

    /// The monomial Π_i w_{values[i]} counting one symbol tuple.
    pub fn from_symbol_values(p: Prime, values: &[u32]) -> Self {
        let mut exps = vec![0u32; p.get() as usize];
        for &v in values {
            exps[v as usize] += 1;
        }
        let mut out = Self::zero(p);
        out.add_term(exps, CycloRat::one(p));
        out
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, CycloRat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·w^exps`, dropping the term if the total coefficient vanishes.
    pub fn add_term(&mut self, exps: Vec<u32>, c: CycloRat) {
        debug_assert_eq!(exps.len(), self.p.get() as usize);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c).expect("same prime");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &WeightPoly) -> Result<()> {
        self.p.check_same(other.p)?;
        for (exps, c) in &other.terms {
            self.add_term(exps.clone(), c.clone());
        }
        Ok(())
    }

    pub fn scaled(&self, r: &Rational) -> WeightPoly {
        self.scaled_cyclo(&CycloRat::from_rational(self.p, r.clone()))
    }

    pub fn scaled_cyclo(&self, c: &CycloRat) -> WeightPoly {
        let mut out = Self::zero(self.p);
        for (exps, t) in &self.terms {
            out.add_term(exps.clone(), t.mul(c).expect("same prime"));
        }
        out
    }

    pub fn mul(&self, other: &WeightPoly) -> Result<WeightPoly> {
        self.p.check_same(other.p)?;
        let mut out = Self::zero(self.p);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exps, c1.mul(c2)?);
            }
        }
        Ok(out)
    }

    /// Value with every indeterminate set to 1 (for a CWAM entry: the number
    /// of codewords it counts).
    pub fn eval_ones(&self) -> CycloRat {
        let mut acc = CycloRat::zero(self.p);
        for c in self.terms.values() {
            acc.add_assign(c).expect("same prime");
        }
        acc
    }

    /// True when every term has the given total degree (the zero polynomial
    /// is homogeneous of every degree).
    pub fn is_homogeneous(&self, degree: usize) -> bool {
        self.terms.keys().all(|e| e.iter().map(|&x| x as usize).sum::<usize>() == degree)
    }

    /// Human-readable rendering with the given indeterminate letter:
    /// `*`-joined factors per term, `+`-joined terms, unit coefficients
    /// omitted, multi-part coefficients parenthesized.
    pub fn render(&self, letter: &str) -> String {
        use core::fmt::Write as _;
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::with_capacity(self.terms.len());
        for (exps, c) in &self.terms {
            let coeff = c.to_string();
            let has_vars = exps.iter().any(|&e| e > 0);
            let mut factors: Vec<String> = Vec::new();
            if !has_vars || coeff != "1" {
                if coeff.contains(' ') {
                    factors.push(alloc::format!("({coeff})"));
                } else {
                    factors.push(coeff);
                }
            }
            for (v, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut f = String::new();
                let _ = write!(f, "{letter}{v}");
                if e > 1 {
                    let _ = write!(f, "^{e}");
                }
                factors.push(f);
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

/// A complete weight adjacency matrix: rows indexed by the left state group,
/// columns by the right, entries polynomials in the p residue indeterminates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WamMatrix {
    p: Prime,
    left: Group,
    right: Group,
    symbol_coords: usize,
    domain: Domain,
    entries: Vec<Vec<WeightPoly>>,
}

impl WamMatrix {
    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn left(&self) -> Group {
        self.left
    }

    pub fn right(&self) -> Group {
        self.right
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    /// Total symbol coordinates of the block; every entry is homogeneous of
    /// this degree.
    pub fn symbol_coords(&self) -> usize {
        self.symbol_coords
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn entry(&self, row: usize, col: usize) -> &WeightPoly {
        &self.entries[row][col]
    }
}

/// The CWAM of one constraint block, counting its stored code.
pub fn cwam(r: &NormalRealization, constraint: &str, budget: u128) -> Result<WamMatrix> {
    cwam_of(r, constraint, budget, false)
}

/// The dual block's CWAM computed the direct way: enumerate the orthogonal
/// code and count it, negating the right state index. This is the convention
/// under which dualization needs exactly one sign inverter per internal state
/// edge, and it is what the MacWilliams transform of the primal CWAM must
/// reproduce.
pub fn dual_cwam_direct(r: &NormalRealization, constraint: &str, budget: u128) -> Result<WamMatrix> {
    cwam_of(r, constraint, budget, true)
}

fn cwam_of(r: &NormalRealization, constraint: &str, budget: u128, dual: bool) -> Result<WamMatrix> {
    r.structural_ok()?;
    let ci = r.constraint_index(constraint)?;
    let layout = r.block_layout(ci)?;
    let block = &r.constraints[ci];
    let p = r.p;
    let stored;
    let code = if dual {
        stored = block.code.dual();
        &stored
    } else {
        &block.code
    };
    let words = code.enumerate(budget)?;
    let rows = layout.left.size_usize()?;
    let cols = layout.right.size_usize()?;
    let cells = (rows as u128).checked_mul(cols as u128).ok_or(Error::Overflow)?;
    if cells > budget {
        return Err(Error::Budget { needed: cells, limit: budget });
    }
    let mut entries = vec![vec![WeightPoly::zero(p); cols]; rows];
    let q = p.get() as usize;
    for w in &words {
        let y = w.slice(layout.left_span.0, layout.left_span.1);
        let z = w.slice(layout.right_span.0, layout.right_span.1);
        let row = layout.left.index_of(&y)?;
        let col = if dual {
            layout.right.index_of(&z.neg())?
        } else {
            layout.right.index_of(&z)?
        };
        let mut exps = vec![0u32; q];
        for &(start, len) in &layout.symbol_spans {
            for i in start..start + len {
                exps[w.coord(i) as usize] += 1;
            }
        }
        entries[row][col].add_term(exps, CycloRat::one(p));
    }
    let symbol_coords = layout.symbol_spans.iter().map(|&(_, len)| len).sum();
    Ok(WamMatrix {
        p,
        left: layout.left,
        right: layout.right,
        symbol_coords,
        domain: if dual { Domain::Dual } else { Domain::Primal },
        entries,
    })
}

/// The MacWilliams transform: substitutes each w_c by the character sum
/// Σ_f ω^{c·f} W_f, sandwiches with the character kernel on the left state
/// index and its conjugate on the right, and scales by
/// dual_size / (pⁿ·|S_l|·|S_r|). With `dual_size` the true size of the dual
/// block code, the scale equals 1/|B| and the result is the dual block's
/// CWAM. Every output coefficient must come out a nonnegative integer;
/// anything else reports which entry failed.
pub fn macwilliams_transform(m: &WamMatrix, dual_size: u128) -> Result<WamMatrix> {
    let p = m.p;
    let q = p.get() as usize;
    // Linear forms L_c = Σ_f ω^{c·f} W_f.
    let lin: Vec<WeightPoly> = (0..q)
        .map(|c| {
            let mut poly = WeightPoly::zero(p);
            for f in 0..q {
                let mut exps = vec![0u32; q];
                exps[f] = 1;
                poly.add_term(exps, CycloRat::omega_pow(p, (c * f) as i64));
            }
            poly
        })
        .collect();

    let rows = m.rows();
    let cols = m.cols();
    let mut substituted = Vec::with_capacity(rows);
    for row in &m.entries {
        let mut out_row = Vec::with_capacity(cols);
        for entry in row {
            let mut out = WeightPoly::zero(p);
            for (exps, coeff) in entry.terms() {
                let mut acc = WeightPoly::constant(p, coeff.clone());
                for (c, &e) in exps.iter().enumerate() {
                    for _ in 0..e {
                        acc = acc.mul(&lin[c])?;
                    }
                }
                out.add_assign(&acc)?;
            }
            out_row.push(out);
        }
        substituted.push(out_row);
    }

    // Left kernel pass: mid[s][z] = Σ_y ω^{s·y}·A[y][z].
    let yv: Vec<_> = (0..rows).map(|i| m.left.element(i)).collect();
    let zv: Vec<_> = (0..cols).map(|i| m.right.element(i)).collect();
    let mut mid = vec![vec![WeightPoly::zero(p); cols]; rows];
    for s in 0..rows {
        for (y, row) in substituted.iter().enumerate() {
            let chr = CycloRat::omega_pow(p, i64::from(dot(&yv[s], &yv[y])?));
            for (z, entry) in row.iter().enumerate() {
                if !entry.is_zero() {
                    mid[s][z].add_assign(&entry.scaled_cyclo(&chr))?;
                }
            }
        }
    }
    // Right conjugate pass plus the single deferred scale.
    let denom = BigInt::from(m.left.size()?)
        * BigInt::from(m.right.size()?)
        * BigInt::from(checked_pow(p.get(), m.symbol_coords)?);
    let scale = Rational::new(BigInt::from(dual_size), denom);
    let mut entries = vec![vec![WeightPoly::zero(p); cols]; rows];
    for s in 0..rows {
        for t in 0..cols {
            let mut acc = WeightPoly::zero(p);
            for z in 0..cols {
                if !mid[s][z].is_zero() {
                    let chr = CycloRat::omega_pow(p, -i64::from(dot(&zv[t], &zv[z])?));
                    acc.add_assign(&mid[s][z].scaled_cyclo(&chr))?;
                }
            }
            let scaled = acc.scaled(&scale);
            if !scaled.terms().values().all(CycloRat::is_nonneg_integer) {
                return Err(Error::NonIntegralTransform { row: s, col: t });
            }
            entries[s][t] = scaled;
        }
    }
    Ok(WamMatrix {
        p,
        left: m.left,
        right: m.right,
        symbol_coords: m.symbol_coords,
        domain: m.domain.flip(),
        entries,
    })
}

/// Outcome of checking the transform route against the direct dual route.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub pass: bool,
    pub rows: usize,
    pub cols: usize,
    pub mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug)]
pub struct Mismatch {
    pub row: usize,
    pub col: usize,
    pub via_transform: WeightPoly,
    pub via_dual: WeightPoly,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(
                f,
                "MacWilliams identity holds on the {}x{} weight adjacency matrix",
                self.rows, self.cols
            )
        } else if let Some(m) = &self.mismatch {
            write!(
                f,
                "mismatch at entry ({}, {}): transform gives {}, direct dual gives {}",
                m.row,
                m.col,
                m.via_transform.render("W"),
                m.via_dual.render("W")
            )
        } else {
            write!(f, "verification failed")
        }
    }
}

/// Computes the block's CWAM, transforms it, recomputes the dual CWAM from
/// the orthogonal code directly, and compares entry by entry.
pub fn verify_macwilliams(r: &NormalRealization, constraint: &str, budget: u128) -> Result<VerifyReport> {
    let primal = cwam(r, constraint, budget)?;
    let ci = r.constraint_index(constraint)?;
    let block = &r.constraints[ci];
    let dual_dim = block.code.len() - block.code.dim();
    let dual_size = checked_pow(r.p.get(), dual_dim)?;
    let transformed = macwilliams_transform(&primal, dual_size)?;
    let direct = dual_cwam_direct(r, constraint, budget)?;
    let rows = primal.rows();
    let cols = primal.cols();
    for row in 0..rows {
        for col in 0..cols {
            if transformed.entry(row, col) != direct.entry(row, col) {
                return Ok(VerifyReport {
                    pass: false,
                    rows,
                    cols,
                    mismatch: Some(Mismatch {
                        row,
                        col,
                        via_transform: transformed.entry(row, col).clone(),
                        via_dual: direct.entry(row, col).clone(),
                    }),
                });
            }
        }
    }
    Ok(VerifyReport { pass: true, rows, cols, mismatch: None })
}

/// A univariate polynomial with integer coefficients, ascending powers,
/// trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::new(coeffs)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs)
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        let mut acc = UniPoly::from_ints(&[1]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scaled(&self, c: &BigInt) -> UniPoly {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn render(&self, letter: &str) -> String {
        use core::fmt::Write as _;
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    out.push('-');
                }
                first = false;
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if d == 0 {
                let _ = write!(out, "{mag}");
            } else {
                if !mag.is_one() {
                    let _ = write!(out, "{mag}");
                }
                out.push_str(letter);
                if d > 1 {
                    let _ = write!(out, "^{d}");
                }
            }
        }
        out
    }
}

/// A Hamming weight adjacency matrix: the CWAM with w_0 ↦ 1 and every other
/// indeterminate ↦ w.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HwamMatrix {
    p: Prime,
    left: Group,
    right: Group,
    symbol_coords: usize,
    domain: Domain,
    entries: Vec<Vec<UniPoly>>,
}

impl HwamMatrix {
    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn left(&self) -> Group {
        self.left
    }

    pub fn right(&self) -> Group {
        self.right
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn symbol_coords(&self) -> usize {
        self.symbol_coords
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn entry(&self, row: usize, col: usize) -> &UniPoly {
        &self.entries[row][col]
    }
}

/// Collapses a CWAM to Hamming weights. Coefficients must be plain integers
/// (true for any real CWAM and for any transform that passed its check).
pub fn hwam(m: &WamMatrix) -> Result<HwamMatrix> {
    let mut entries = Vec::with_capacity(m.rows());
    for row in &m.entries {
        let mut out_row = Vec::with_capacity(m.cols());
        for entry in row {
            let mut coeffs = vec![BigInt::zero(); m.symbol_coords + 1];
            for (exps, c) in entry.terms() {
                let weight: usize = exps.iter().skip(1).map(|&e| e as usize).sum();
                let int = c.as_integer().ok_or(Error::NonRational)?;
                if weight >= coeffs.len() {
                    coeffs.resize(weight + 1, BigInt::zero());
                }
                coeffs[weight] += int;
            }
            out_row.push(UniPoly::new(coeffs));
        }
        entries.push(out_row);
    }
    Ok(HwamMatrix {
        p: m.p,
        left: m.left,
        right: m.right,
        symbol_coords: m.symbol_coords,
        domain: m.domain,
        entries,
    })
}

/// An HWAM after the classical dual substitution w ↦ (1−w)/(1+(q−1)w) with
/// denominators cleared: `entries[r][c]` is the substituted entry times
/// `scale` = (1+(q−1)w)ⁿ. For a dual HWAM Ĥ this recovers
/// dual_size · (primal HWAM), the matrix form of the classical identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubstitutedHwam {
    pub scale: UniPoly,
    pub entries: Vec<Vec<UniPoly>>,
}

pub fn hwam_dual_substitution(h: &HwamMatrix, q: u32) -> Result<SubstitutedHwam> {
    let n = h.symbol_coords;
    let one_minus = UniPoly::from_ints(&[1, -1]);
    let one_plus = UniPoly::new(vec![BigInt::one(), BigInt::from(q) - BigInt::one()]);
    // basis[d] = (1−w)^d (1+(q−1)w)^(n−d)
    let basis: Vec<UniPoly> = (0..=n).map(|d| one_minus.pow(d).mul(&one_plus.pow(n - d))).collect();
    let mut entries = Vec::with_capacity(h.rows());
    for row in &h.entries {
        let mut out_row = Vec::with_capacity(h.cols());
        for entry in row {
            if !entry.is_zero() && entry.degree() > n {
                return Err(Error::Inconsistent("entry degree exceeds the symbol coordinate count"));
            }
            let mut acc = UniPoly::zero();
            for (d, c) in entry.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&basis[d].scaled(c));
                }
            }
            out_row.push(acc);
        }
        entries.push(out_row);
    }
    Ok(SubstitutedHwam { scale: one_plus.pow(n), entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupVector;
    use crate::code::LinearCode;
    use crate::dpoly::DPolyMatrix;
    use crate::realization::{build_trellis, fragment, Closure};
    use crate::DEFAULT_BUDGET;

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    fn code(pp: u32, rows: &[&str]) -> LinearCode {
        let pr = p(pp);
        let n = rows.first().map_or(0, |r| r.len());
        let gens = rows
            .iter()
            .map(|r| {
                GroupVector::new(pr, r.bytes().map(|b| u32::from(b - b'0')).collect()).unwrap()
            })
            .collect();
        LinearCode::new(pr, n, gens).unwrap()
    }

    fn binary_section() -> NormalRealization {
        let m = DPolyMatrix::parse(p(2), "1+D^2, 1+D+D^2").unwrap();
        build_trellis(&m, 1, Closure::SingleSection, DEFAULT_BUDGET).unwrap()
    }

    fn ternary_section() -> NormalRealization {
        let m = DPolyMatrix::parse(p(3), "1+D^2, 2+D, 0; 1, 0, 2").unwrap();
        build_trellis(&m, 1, Closure::SingleSection, DEFAULT_BUDGET).unwrap()
    }

    /// Shorthand: a binary weight poly from (exp of w0, exp of w1) pairs with
    /// integer coefficients.
    fn wp2(terms: &[(u32, u32, i64)]) -> WeightPoly {
        let mut out = WeightPoly::zero(p(2));
        for &(e0, e1, c) in terms {
            out.add_term(vec![e0, e1], CycloRat::from_int(p(2), c));
        }
        out
    }

    #[test]
    fn cwam_of_stateless_zero_code_block() {
        let r = fragment(p(2), LinearCode::zero_code(p(2), 3), 0, &[3], 0).unwrap();
        let m = cwam(&r, "c0", DEFAULT_BUDGET).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert_eq!(*m.entry(0, 0), wp2(&[(3, 0, 1)]));
        assert_eq!(m.domain(), Domain::Primal);
        assert_eq!(m.symbol_coords(), 3);
    }

    #[test]
    fn cwam_of_binary_section_matches_worked_matrix() {
        let m = cwam(&binary_section(), "c0", DEFAULT_BUDGET).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 4));
        let w0w0 = wp2(&[(2, 0, 1)]);
        let w1w1 = wp2(&[(0, 2, 1)]);
        let w0w1 = wp2(&[(1, 1, 1)]);
        let zero = WeightPoly::zero(p(2));
        let expected = [
            [&w0w0, &w1w1, &zero, &zero],
            [&zero, &zero, &w0w1, &w0w1],
            [&w1w1, &w0w0, &zero, &zero],
            [&zero, &zero, &w0w1, &w0w1],
        ];
        for (r, row) in expected.iter().enumerate() {
            for (c, &cell) in row.iter().enumerate() {
                assert_eq!(m.entry(r, c), cell, "entry ({r},{c})");
            }
        }
        for r in 0..4 {
            for c in 0..4 {
                assert!(m.entry(r, c).is_homogeneous(2));
            }
        }
    }

    #[test]
    fn dual_cwam_direct_matches_worked_matrix() {
        let m = dual_cwam_direct(&binary_section(), "c0", DEFAULT_BUDGET).unwrap();
        assert_eq!(m.domain(), Domain::Dual);
        let w0w0 = wp2(&[(2, 0, 1)]);
        let w1w1 = wp2(&[(0, 2, 1)]);
        let w0w1 = wp2(&[(1, 1, 1)]);
        let zero = WeightPoly::zero(p(2));
        let expected = [
            [&w0w0, &zero, &w1w1, &zero],
            [&w1w1, &zero, &w0w0, &zero],
            [&zero, &w0w1, &zero, &w0w1],
            [&zero, &w0w1, &zero, &w0w1],
        ];
        for (r, row) in expected.iter().enumerate() {
            for (c, &cell) in row.iter().enumerate() {
                assert_eq!(m.entry(r, c), cell, "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn transform_reproduces_direct_dual_binary() {
        let r = binary_section();
        let primal = cwam(&r, "c0", DEFAULT_BUDGET).unwrap();
        let transformed = macwilliams_transform(&primal, 8).unwrap();
        assert_eq!(transformed.domain(), Domain::Dual);
        let direct = dual_cwam_direct(&r, "c0", DEFAULT_BUDGET).unwrap();
        for row in 0..4 {
            for col in 0..4 {
                assert_eq!(transformed.entry(row, col), direct.entry(row, col), "({row},{col})");
            }
        }
    }

    #[test]
    fn ternary_cwam_entries_and_counts() {
        let m = cwam(&ternary_section(), "c0", DEFAULT_BUDGET).unwrap();
        assert_eq!((m.rows(), m.cols()), (9, 9));
        // Self-loop entry at the zero state: the all-zero word plus the two
        // scalings of the second row's memoryless generator.
        let mut expect = WeightPoly::zero(p(3));
        expect.add_term(vec![3, 0, 0], CycloRat::from_int(p(3), 1));
        expect.add_term(vec![1, 1, 1], CycloRat::from_int(p(3), 2));
        assert_eq!(*m.entry(0, 0), expect);
        // Entries count all 81 codewords and are homogeneous of degree 3.
        let mut total = CycloRat::zero(p(3));
        for r in 0..9 {
            for c in 0..9 {
                total.add_assign(&m.entry(r, c).eval_ones()).unwrap();
                assert!(m.entry(r, c).is_homogeneous(3));
            }
        }
        assert_eq!(total, CycloRat::from_int(p(3), 81));
    }

    #[test]
    fn verify_passes_on_worked_sections() {
        let report = verify_macwilliams(&binary_section(), "c0", DEFAULT_BUDGET).unwrap();
        assert!(report.pass, "{report}");
        let report = verify_macwilliams(&ternary_section(), "c0", DEFAULT_BUDGET).unwrap();
        assert!(report.pass, "{report}");
        // Dual total count: 27 orthogonal words.
        let d = dual_cwam_direct(&ternary_section(), "c0", DEFAULT_BUDGET).unwrap();
        let mut total = CycloRat::zero(p(3));
        for r in 0..9 {
            for c in 0..9 {
                total.add_assign(&d.entry(r, c).eval_ones()).unwrap();
            }
        }
        assert_eq!(total, CycloRat::from_int(p(3), 27));
    }

    #[test]
    fn wrong_dual_size_fails_integrality() {
        let primal = cwam(&binary_section(), "c0", DEFAULT_BUDGET).unwrap();
        assert!(matches!(
            macwilliams_transform(&primal, 7),
            Err(Error::NonIntegralTransform { .. })
        ));
    }

    #[test]
    fn transform_twice_negates_indices_and_slots() {
        let r = ternary_section();
        let primal = cwam(&r, "c0", DEFAULT_BUDGET).unwrap();
        let once = macwilliams_transform(&primal, 27).unwrap();
        let twice = macwilliams_transform(&once, 81).unwrap();
        assert_eq!(twice.domain(), Domain::Primal);
        // Λ̂̂[s][t] = Λ[−s][−t] with every slot c renamed to −c.
        let q = 3usize;
        for s in 0..9 {
            for t in 0..9 {
                let mut permuted = WeightPoly::zero(p(3));
                for (exps, c) in primal
                    .entry(primal.left().neg_index(s), primal.right().neg_index(t))
                    .terms()
                {
                    let mut e2 = vec![0u32; q];
                    for (slot, &e) in exps.iter().enumerate() {
                        e2[(q - slot) % q] = e;
                    }
                    permuted.add_term(e2, c.clone());
                }
                assert_eq!(*twice.entry(s, t), permuted, "({s},{t})");
            }
        }
    }

    #[test]
    fn hwam_of_worked_section_and_its_dual() {
        let r = binary_section();
        let primal = hwam(&cwam(&r, "c0", DEFAULT_BUDGET).unwrap()).unwrap();
        let one = UniPoly::from_ints(&[1]);
        let w = UniPoly::from_ints(&[0, 1]);
        let w2 = UniPoly::from_ints(&[0, 0, 1]);
        let zero = UniPoly::zero();
        let expected = [
            [&one, &w2, &zero, &zero],
            [&zero, &zero, &w, &w],
            [&w2, &one, &zero, &zero],
            [&zero, &zero, &w, &w],
        ];
        for (r, row) in expected.iter().enumerate() {
            for (c, &cell) in row.iter().enumerate() {
                assert_eq!(primal.entry(r, c), cell);
            }
        }
        let transformed = macwilliams_transform(&cwam(&r, "c0", DEFAULT_BUDGET).unwrap(), 8).unwrap();
        let dual = hwam(&transformed).unwrap();
        assert_eq!(dual.domain(), Domain::Dual);
        let expected_dual = [
            [&one, &zero, &w2, &zero],
            [&w2, &zero, &one, &zero],
            [&zero, &w, &zero, &w],
            [&zero, &w, &zero, &w],
        ];
        for (r, row) in expected_dual.iter().enumerate() {
            for (c, &cell) in row.iter().enumerate() {
                assert_eq!(dual.entry(r, c), cell);
            }
        }
    }

    #[test]
    fn classical_identity_for_single_parity_check() {
        // C = even-weight words of length 3, C⊥ = repetition.
        let c = code(2, &["110", "011"]);
        let r = fragment(p(2), c, 0, &[3], 0).unwrap();
        let primal_h = hwam(&cwam(&r, "c0", DEFAULT_BUDGET).unwrap()).unwrap();
        assert_eq!(*primal_h.entry(0, 0), UniPoly::from_ints(&[1, 0, 3]));
        let dual_h =
            hwam(&macwilliams_transform(&cwam(&r, "c0", DEFAULT_BUDGET).unwrap(), 2).unwrap())
                .unwrap();
        assert_eq!(*dual_h.entry(0, 0), UniPoly::from_ints(&[1, 0, 0, 1]));
        // Clearing denominators in Ĥ((1−w)/(1+w)) recovers |C⊥|·H(w).
        let sub = hwam_dual_substitution(&dual_h, 2).unwrap();
        assert_eq!(sub.scale, UniPoly::from_ints(&[1, 3, 3, 1]));
        assert_eq!(sub.entries[0][0], UniPoly::from_ints(&[2, 0, 6]));
        assert_eq!(
            sub.entries[0][0],
            primal_h.entry(0, 0).scaled(&BigInt::from(2))
        );
    }

    #[test]
    fn classical_identity_for_zero_code() {
        let r = fragment(p(2), LinearCode::zero_code(p(2), 3), 0, &[3], 0).unwrap();
        let primal = cwam(&r, "c0", DEFAULT_BUDGET).unwrap();
        let dual_h = hwam(&macwilliams_transform(&primal, 8).unwrap()).unwrap();
        // Dual is the full space: (1+w)³.
        assert_eq!(*dual_h.entry(0, 0), UniPoly::from_ints(&[1, 3, 3, 1]));
        let sub = hwam_dual_substitution(&dual_h, 2).unwrap();
        assert_eq!(sub.entries[0][0], UniPoly::from_ints(&[8]));
    }

    #[test]
    fn hamming_code_dual_weight_enumerator() {
        let hamming = code(2, &["1000110", "0100101", "0010011", "0001111"]);
        let r = fragment(p(2), hamming, 0, &[7], 0).unwrap();
        let primal = cwam(&r, "c0", DEFAULT_BUDGET).unwrap();
        let transformed = macwilliams_transform(&primal, 8).unwrap();
        let dual_h = hwam(&transformed).unwrap();
        // The dual is the simplex code: seven words of weight 4.
        assert_eq!(*dual_h.entry(0, 0), UniPoly::from_ints(&[1, 0, 0, 0, 7]));
        let direct_h = hwam(&dual_cwam_direct(&r, "c0", DEFAULT_BUDGET).unwrap()).unwrap();
        assert_eq!(dual_h.entry(0, 0), direct_h.entry(0, 0));
    }

    #[test]
    fn hwam_transform_consistency_on_matrices() {
        // hwam(transform(Λ)) must equal the kernel sandwich of the classical
        // substitution applied to hwam(Λ): both routes collapse the complete
        // identity to Hamming weights.
        for r in [binary_section(), ternary_section()] {
            let pr = r.p;
            let q = pr.get();
            let primal = cwam(&r, "c0", DEFAULT_BUDGET).unwrap();
            let dual_dim = r.constraints[0].code.len() - r.constraints[0].code.dim();
            let dual_size = checked_pow(q, dual_dim).unwrap();
            let lhs = hwam(&macwilliams_transform(&primal, dual_size).unwrap()).unwrap();

            let sub = hwam_dual_substitution(&hwam(&primal).unwrap(), q).unwrap();
            // Sandwich with exact cyclotomic scalars, encoding w as the
            // residue-1 slot of a weight polynomial.
            let lift = |u: &UniPoly| {
                let mut out = WeightPoly::zero(pr);
                for (d, c) in u.coeffs().iter().enumerate() {
                    let mut exps = vec![0u32; q as usize];
                    exps[1] = d as u32;
                    out.add_term(
                        exps,
                        CycloRat::from_rational(pr, Rational::from_integer(c.clone())),
                    );
                }
                out
            };
            let rows = lhs.rows();
            let cols = lhs.cols();
            let left = primal.left();
            let right = primal.right();
            let denom = BigInt::from(left.size().unwrap())
                * BigInt::from(right.size().unwrap())
                * BigInt::from(checked_pow(q, primal.symbol_coords()).unwrap());
            let scale = Rational::new(BigInt::from(dual_size), denom);
            for s in 0..rows {
                for t in 0..cols {
                    let mut acc = WeightPoly::zero(pr);
                    for y in 0..rows {
                        for z in 0..cols {
                            let e = i64::from(
                                dot(&left.element(s), &left.element(y)).unwrap(),
                            ) - i64::from(dot(&right.element(t), &right.element(z)).unwrap());
                            let chr = CycloRat::omega_pow(pr, e);
                            acc.add_assign(&lift(&sub.entries[y][z]).scaled_cyclo(&chr)).unwrap();
                        }
                    }
                    let acc = acc.scaled(&scale);
                    assert_eq!(acc, lift(lhs.entry(s, t)), "({s},{t})");
                }
            }
        }
    }

    #[test]
    fn render_forms() {
        let m = cwam(&binary_section(), "c0", DEFAULT_BUDGET).unwrap();
        assert_eq!(m.entry(0, 0).render("w"), "w0^2");
        assert_eq!(m.entry(1, 2).render("w"), "w0*w1");
        assert_eq!(WeightPoly::zero(p(2)).render("w"), "0");
        let mut two_terms = WeightPoly::zero(p(3));
        two_terms.add_term(vec![3, 0, 0], CycloRat::from_int(p(3), 1));
        two_terms.add_term(vec![1, 1, 1], CycloRat::from_int(p(3), 2));
        assert_eq!(two_terms.render("w"), "2*w0*w1*w2 + w0^3");
        assert_eq!(UniPoly::from_ints(&[1, 0, 3]).render("w"), "1 + 3w^2");
        assert_eq!(UniPoly::from_ints(&[0, -1, 2]).render("w"), "-w + 2w^2");
        assert_eq!(UniPoly::zero().render("w"), "0");
    }
}

//! Polynomials in the delay operator D over Z_p, and matrices of them.
//!
//! These describe feedback-free convolutional encoders: row i, column j of a
//! `DPolyMatrix` is the transfer polynomial from input i to output j. The
//! text format is what the parser accepts and the renderer emits:
//!
//! ```text
//! matrix := row (';' row)*
//! row    := entry (',' entry)*
//! entry  := term ('+' term)*
//! term   := coeff | coeff dpart | dpart
//! dpart  := 'D' | 'D^' digits
//! coeff  := digits            -- value must already lie in [0, p)
//! ```
//!
//! Whitespace is ignored everywhere. A coefficient of 1 may be omitted
//! (`D^2`), an exponent of 1 may be omitted (`D`), but `D2` is rejected: the
//! caret is mandatory so a dropped `^` cannot silently change the degree.
//! Zero-coefficient terms are legal and claim their degree slot; writing the
//! same degree twice is an error.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Prime;

/// Degrees above this are rejected at parse time (they would only allocate).
const MAX_DEGREE: usize = 1 << 12;

/// A polynomial in D with coefficients in Z_p, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DPoly {
    p: Prime,
    /// coeffs[j] multiplies D^j; empty means the zero polynomial.
    coeffs: Vec<u32>,
}

impl DPoly {
    pub fn new(p: Prime, mut coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < p.get()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        DPoly { p, coeffs }
    }

    pub fn zero(p: Prime) -> Self {
        DPoly { p, coeffs: Vec::new() }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    /// Degree, with the convention that the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of D^j (0 beyond the stored length).
    pub fn coeff(&self, j: usize) -> u32 {
        self.coeffs.get(j).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Parses a single polynomial; offsets in errors are byte positions in `s`.
    pub fn parse(p: Prime, s: &str) -> Result<Self, ParseError> {
        parse_entry(p, s, 0, None)
    }
}

impl fmt::Display for DPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (j, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "D")?,
                (1, _) => write!(f, "{c}D")?,
                (_, 1) => write!(f, "D^{j}")?,
                (_, _) => write!(f, "{c}D^{j}")?,
            }
        }
        Ok(())
    }
}

/// A rows × cols matrix of D-polynomials, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DPolyMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    entries: Vec<DPoly>,
}

impl DPolyMatrix {
    pub fn new(p: Prime, rows: usize, cols: usize, entries: Vec<DPoly>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        debug_assert!(entries.iter().all(|e| e.p() == p));
        DPolyMatrix { p, rows, cols, entries }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &DPoly {
        &self.entries[r * self.cols + c]
    }

    /// Parses `;`-separated rows of `,`-separated entries. Error offsets are
    /// byte positions in the full input string.
    pub fn parse(p: Prime, s: &str) -> Result<Self, ParseError> {
        let mut entries = Vec::new();
        let mut cols = None;
        let mut rows = 0;
        for (row, (row_off, row_str)) in split_offsets(s, b';').into_iter().enumerate() {
            let pieces = split_offsets(row_str, b',');
            let got = pieces.len();
            if let Some(expected) = cols {
                if got != expected {
                    return Err(ParseError {
                        offset: row_off,
                        entry: None,
                        kind: ParseErrorKind::RaggedRow { expected, got },
                    });
                }
            } else {
                cols = Some(got);
            }
            for (col, (off, piece)) in pieces.into_iter().enumerate() {
                entries.push(parse_entry(p, piece, row_off + off, Some((row, col)))?);
            }
            rows += 1;
        }
        Ok(DPolyMatrix { p, rows, cols: cols.unwrap_or(0), entries })
    }
}

impl fmt::Display for DPolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(r, c))?;
            }
        }
        Ok(())
    }
}

/// Splits on a single-byte separator, keeping each piece's byte offset.
fn split_offsets(s: &str, sep: u8) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, &b) in s.as_bytes().iter().enumerate() {
        if b == sep {
            out.push((start, &s[start..i]));
            start = i + 1;
        }
    }
    out.push((start, &s[start..]));
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    /// Byte offset into the original input.
    pub offset: usize,
    /// Matrix position (row, col) when parsing a matrix entry.
    pub entry: Option<(usize, usize)>,
    pub kind: ParseErrorKind,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    /// Coefficients must be written already reduced into [0, p).
    CoeffTooLarge { value: u64, p: u32 },
    DuplicateDegree(usize),
    /// A digit directly after `D`; the exponent caret is mandatory.
    MissingCaret,
    EmptyEntry,
    RaggedRow { expected: usize, got: usize },
    ExponentTooLarge,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}", self.offset)?;
        if let Some((r, c)) = self.entry {
            write!(f, " (entry row {r}, column {c})")?;
        }
        write!(f, ": ")?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(ch) => write!(f, "unexpected character '{ch}'"),
            ParseErrorKind::UnexpectedEnd => write!(f, "input ended inside a term"),
            ParseErrorKind::CoeffTooLarge { value, p } => {
                write!(f, "coefficient {value} is not reduced modulo {p}")
            }
            ParseErrorKind::DuplicateDegree(d) => {
                write!(f, "degree {d} appears in more than one term")
            }
            ParseErrorKind::MissingCaret => {
                write!(f, "exponent needs a caret: write D^2, not D2")
            }
            ParseErrorKind::EmptyEntry => write!(f, "empty polynomial entry"),
            ParseErrorKind::RaggedRow { expected, got } => {
                write!(f, "row has {got} entries, expected {expected}")
            }
            ParseErrorKind::ExponentTooLarge => {
                write!(f, "exponent exceeds the supported maximum {MAX_DEGREE}")
            }
        }
    }
}

impl core::error::Error for ParseError {}

fn parse_entry(
    p: Prime,
    s: &str,
    base: usize,
    entry: Option<(usize, usize)>,
) -> Result<DPoly, ParseError> {
    let bytes = s.as_bytes();
    let err = |offset: usize, kind: ParseErrorKind| ParseError { offset: base + offset, entry, kind };
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    // digits → (value saturating at u64::MAX, next index)
    let read_digits = |i: &mut usize| -> u64 {
        let mut v: u64 = 0;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            v = v.saturating_mul(10).saturating_add(u64::from(bytes[*i] - b'0'));
            *i += 1;
        }
        v
    };

    skip_ws(&mut i);
    if i == bytes.len() {
        return Err(err(i, ParseErrorKind::EmptyEntry));
    }

    let mut by_degree: Vec<(usize, u32)> = Vec::new();
    loop {
        let term_start = i;
        let mut coeff: Option<u32> = None;
        if bytes[i].is_ascii_digit() {
            let v = read_digits(&mut i);
            if v >= u64::from(p.get()) {
                return Err(err(term_start, ParseErrorKind::CoeffTooLarge { value: v, p: p.get() }));
            }
            coeff = Some(v as u32);
            skip_ws(&mut i);
        }
        let degree;
        if i < bytes.len() && bytes[i] == b'D' {
            i += 1;
            skip_ws(&mut i);
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                skip_ws(&mut i);
                if i == bytes.len() {
                    return Err(err(i, ParseErrorKind::UnexpectedEnd));
                }
                if !bytes[i].is_ascii_digit() {
                    return Err(err(i, ParseErrorKind::UnexpectedChar(s[i..].chars().next().unwrap())));
                }
                let e = read_digits(&mut i);
                if e > MAX_DEGREE as u64 {
                    return Err(err(term_start, ParseErrorKind::ExponentTooLarge));
                }
                degree = e as usize;
            } else if i < bytes.len() && bytes[i].is_ascii_digit() {
                return Err(err(i, ParseErrorKind::MissingCaret));
            } else {
                degree = 1;
            }
        } else if coeff.is_some() {
            degree = 0;
        } else if i == bytes.len() {
            return Err(err(i, ParseErrorKind::UnexpectedEnd));
        } else {
            return Err(err(i, ParseErrorKind::UnexpectedChar(s[i..].chars().next().unwrap())));
        }
        if by_degree.iter().any(|&(d, _)| d == degree) {
            return Err(err(term_start, ParseErrorKind::DuplicateDegree(degree)));
        }
        by_degree.push((degree, coeff.unwrap_or(1)));

        skip_ws(&mut i);
        if i == bytes.len() {
            break;
        }
        if bytes[i] != b'+' {
            return Err(err(i, ParseErrorKind::UnexpectedChar(s[i..].chars().next().unwrap())));
        }
        i += 1;
        skip_ws(&mut i);
        if i == bytes.len() {
            return Err(err(i, ParseErrorKind::UnexpectedEnd));
        }
    }

    let max_deg = by_degree.iter().map(|&(d, _)| d).max().unwrap_or(0);
    let mut coeffs = vec![0u32; max_deg + 1];
    for (d, c) in by_degree {
        coeffs[d] = c;
    }
    Ok(DPoly::new(p, coeffs))
}

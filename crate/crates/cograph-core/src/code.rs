//! Linear codes over Z_p in canonical reduced-row-echelon form.
//!
//! A `LinearCode` is always stored canonically: the constructor row-reduces
//! the given spanning set, so two codes are equal as subsets of (Z_p)^n
//! exactly when their stored generator lists are equal. Zero rows vanish, so
//! `dim` is the honest rank.

use alloc::vec::Vec;

use crate::algebra::{checked_pow, GroupVector, Prime};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearCode {
    p: Prime,
    n: usize,
    /// RREF basis: pivot columns strictly increase, pivots are 1, and each
    /// pivot column is zero in every other row.
    gens: Vec<GroupVector>,
}

impl LinearCode {
    /// Builds the code spanned by `rows` (need not be independent or sorted).
    pub fn new(p: Prime, n: usize, rows: Vec<GroupVector>) -> Result<Self> {
        for r in &rows {
            p.check_same(r.p())?;
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, actual: r.len() });
            }
        }
        Ok(LinearCode { p, n, gens: rref(p, n, rows) })
    }

    /// The zero code {0} ⊆ (Z_p)^n.
    pub fn zero_code(p: Prime, n: usize) -> Self {
        LinearCode { p, n, gens: Vec::new() }
    }

    /// The full space (Z_p)^n.
    pub fn full_space(p: Prime, n: usize) -> Self {
        let gens = (0..n).map(|i| GroupVector::unit(p, n, i)).collect();
        LinearCode { p, n, gens }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    /// Canonical RREF generators.
    pub fn generators(&self) -> &[GroupVector] {
        &self.gens
    }

    /// Number of codewords, p^dim.
    pub fn size(&self) -> Result<u128> {
        checked_pow(self.p.get(), self.dim())
    }

    /// Membership test by reduction against the pivot rows.
    pub fn contains(&self, v: &GroupVector) -> Result<bool> {
        self.p.check_same(v.p())?;
        if v.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, actual: v.len() });
        }
        let mut rem = v.clone();
        for g in &self.gens {
            let piv = pivot_col(g).expect("stored rows are nonzero");
            let c = rem.coord(piv);
            if c != 0 {
                rem.add_scaled_assign(g, self.p.neg(c));
            }
        }
        Ok(rem.is_zero())
    }

    /// Set equality of codes (canonical forms compare directly).
    pub fn code_equal(&self, other: &LinearCode) -> bool {
        self == other
    }

    /// The dual code {u : u·c = 0 for all c ∈ C}, canonicalized.
    ///
    /// Null-space basis by the free-column method: for each non-pivot column
    /// f, the vector with 1 at f and −RREF[i][f] at the i-th pivot column.
    pub fn dual(&self) -> LinearCode {
        let pivots: Vec<usize> =
            self.gens.iter().map(|g| pivot_col(g).expect("nonzero row")).collect();
        let mut rows = Vec::with_capacity(self.n - pivots.len());
        for f in 0..self.n {
            if pivots.contains(&f) {
                continue;
            }
            let mut coords = alloc::vec![0u32; self.n];
            coords[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                coords[pc] = self.p.neg(self.gens[i].coord(f));
            }
            rows.push(GroupVector::new(self.p, coords).expect("reduced coords"));
        }
        LinearCode { p: self.p, n: self.n, gens: rref(self.p, self.n, rows) }
    }

    /// All codewords, as messages run through (Z_p)^dim in canonical order
    /// (first generator's coefficient varies fastest). Deterministic; errors
    /// if the codeword count exceeds `budget`.
    pub fn enumerate(&self, budget: u128) -> Result<Vec<GroupVector>> {
        let size = self.size()?;
        if size > budget {
            return Err(Error::Budget { needed: size, limit: budget });
        }
        let size = usize::try_from(size).map_err(|_| Error::Overflow)?;
        let mut out = Vec::with_capacity(size);
        let p = self.p.get() as usize;
        for msg in 0..size {
            let mut w = GroupVector::zero(self.p, self.n);
            let mut rem = msg;
            for g in &self.gens {
                let c = (rem % p) as u32;
                rem /= p;
                if c != 0 {
                    w.add_scaled_assign(g, c);
                }
            }
            out.push(w);
        }
        Ok(out)
    }
}

/// Column of the leading nonzero entry, or None for a zero row.
fn pivot_col(v: &GroupVector) -> Option<usize> {
    v.coords().iter().position(|&c| c != 0)
}

/// Gauss–Jordan reduction over Z_p; drops zero rows, sorts by pivot column.
fn rref(p: Prime, n: usize, mut rows: Vec<GroupVector>) -> Vec<GroupVector> {
    let mut out: Vec<GroupVector> = Vec::new();
    for col in 0..n {
        // Invariant: every pending row is zero on all columns before `col`,
        // because each earlier column with support got picked as a pivot and
        // was cleared from the rest.
        let Some(ri) = rows.iter().position(|r| r.coord(col) != 0) else {
            continue;
        };
        let mut piv = rows.swap_remove(ri);
        piv = piv.scaled(p.inv(piv.coord(col)));
        for r in rows.iter_mut().chain(out.iter_mut()) {
            let c = r.coord(col);
            if c != 0 {
                r.add_scaled_assign(&piv, p.neg(c));
            }
        }
        out.push(piv);
    }
    out
}

//! Prime-field vectors, exact cyclotomic rationals, and character transforms.
//!
//! Scalars produced by character sums live in Q(ω) for ω = exp(2πi/p). An
//! element is stored exactly as its coordinates in the power basis
//! 1, ω, …, ω^{p−2}, reduced modulo 1 + ω + … + ω^{p−1} = 0, with
//! arbitrary-precision rational coefficients. For p = 2 this degenerates to
//! the ordinary rationals.
//!
//! Index/vector conversions fix one canonical order for the elements of
//! (Z_p)^n throughout the crate: index `i` corresponds to the vector whose
//! j-th coordinate (j = 0 leftmost) is the j-th base-p digit of `i`, least
//! significant digit leftmost. For p = 2, n = 2 the order is 00, 10, 01, 11.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout:
/// always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Largest group size for which a dense transform matrix may be materialized.
const MAX_TRANSFORM_SIZE: usize = 1 << 12;

/// A validated prime field characteristic, with modular helpers.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Prime(u32);

impl Prime {
    /// Validates primality by trial division (characteristics are desk-scale).
    pub fn new(p: u32) -> Result<Prime> {
        if p < 2 {
            return Err(Error::NotPrime(p));
        }
        let mut d = 2u64;
        while d * d <= u64::from(p) {
            if u64::from(p) % d == 0 {
                return Err(Error::NotPrime(p));
            }
            d += 1;
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub(crate) fn check_same(self, other: Prime) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::PrimeMismatch { left: self.0, right: other.0 })
        }
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(b)) % u64::from(self.0)) as u32
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.0)) as u32
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    /// Multiplicative inverse of a nonzero residue, via Fermat exponentiation.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0));
        let mut base = u64::from(a % self.0);
        let mut exp = self.0 - 2;
        let m = u64::from(self.0);
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        acc as u32
    }
}

/// Checked p^k with a u128 result.
pub(crate) fn checked_pow(p: u32, k: usize) -> Result<u128> {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(u128::from(p)).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// An element of (Z_p)^n with coordinates reduced into [0, p).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupVector {
    p: Prime,
    coords: Vec<u32>,
}

impl GroupVector {
    pub fn new(p: Prime, coords: Vec<u32>) -> Result<Self> {
        for &c in &coords {
            if c >= p.get() {
                return Err(Error::CoordOutOfRange { value: c, p: p.get() });
            }
        }
        Ok(GroupVector { p, coords })
    }

    pub fn zero(p: Prime, n: usize) -> Self {
        GroupVector { p, coords: vec![0; n] }
    }

    /// Unit vector with a single 1 in the given coordinate.
    pub fn unit(p: Prime, n: usize, at: usize) -> Self {
        let mut coords = vec![0; n];
        coords[at] = 1;
        GroupVector { p, coords }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> u32 {
        self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn check_compatible(&self, other: &GroupVector) -> Result<()> {
        self.p.check_same(other.p)?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), actual: other.len() });
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupVector) -> Result<GroupVector> {
        self.check_compatible(other)?;
        let coords =
            self.coords.iter().zip(&other.coords).map(|(&a, &b)| self.p.add(a, b)).collect();
        Ok(GroupVector { p: self.p, coords })
    }

    pub fn neg(&self) -> GroupVector {
        let coords = self.coords.iter().map(|&a| self.p.neg(a)).collect();
        GroupVector { p: self.p, coords }
    }

    pub fn scaled(&self, c: u32) -> GroupVector {
        let coords = self.coords.iter().map(|&a| self.p.mul(a, c)).collect();
        GroupVector { p: self.p, coords }
    }

    /// Adds `c` times `other` in place; the staple of row reduction.
    pub fn add_scaled_assign(&mut self, other: &GroupVector, c: u32) {
        for (a, &b) in self.coords.iter_mut().zip(&other.coords) {
            *a = self.p.add(*a, self.p.mul(b, c));
        }
    }

    pub fn concat(&self, other: &GroupVector) -> Result<GroupVector> {
        self.p.check_same(other.p)?;
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        Ok(GroupVector { p: self.p, coords })
    }

    /// Copies the coordinate window `[start, start+len)` into a new vector.
    pub fn slice(&self, start: usize, len: usize) -> GroupVector {
        GroupVector { p: self.p, coords: self.coords[start..start + len].to_vec() }
    }

    /// Returns a copy with the coordinates in `[start, start+len)` negated.
    pub fn negate_range(&self, start: usize, len: usize) -> GroupVector {
        let mut coords = self.coords.clone();
        for c in &mut coords[start..start + len] {
            *c = self.p.neg(*c);
        }
        GroupVector { p: self.p, coords }
    }
}

/// Inner product Σ u_i v_i mod p.
pub fn dot(u: &GroupVector, v: &GroupVector) -> Result<u32> {
    u.check_compatible(v)?;
    let m = u64::from(u.p.get());
    let mut acc = 0u64;
    for (&a, &b) in u.coords.iter().zip(&v.coords) {
        acc = (acc + u64::from(a) * u64::from(b)) % m;
    }
    Ok(acc as u32)
}

impl fmt::Display for GroupVector {
    /// Digit-string rendering (`"0121"`) for p < 10, tuple rendering otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.get() < 10 {
            for &c in &self.coords {
                f.write_char(char::from(b'0' + c as u8))?;
            }
            Ok(())
        } else {
            write!(f, "(")?;
            for (i, &c) in self.coords.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
    }
}

/// The finite group (Z_p)^dim together with the crate's canonical element
/// order (index digits base p, least significant digit leftmost).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Group {
    p: Prime,
    dim: usize,
}

impl Group {
    pub fn new(p: Prime, dim: usize) -> Self {
        Group { p, dim }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> Result<u128> {
        checked_pow(self.p.get(), self.dim)
    }

    pub fn size_usize(&self) -> Result<usize> {
        usize::try_from(self.size()?).map_err(|_| Error::Overflow)
    }

    /// The `index`-th element in canonical order.
    pub fn element(&self, index: usize) -> GroupVector {
        let p = u128::from(self.p.get());
        let mut rem = index as u128;
        let mut coords = Vec::with_capacity(self.dim);
        for _ in 0..self.dim {
            coords.push((rem % p) as u32);
            rem /= p;
        }
        debug_assert_eq!(rem, 0, "index out of range for group");
        GroupVector { p: self.p, coords }
    }

    /// Canonical index of an element.
    pub fn index_of(&self, v: &GroupVector) -> Result<usize> {
        self.p.check_same(v.p)?;
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: v.len() });
        }
        let p = u128::from(self.p.get());
        let mut acc: u128 = 0;
        for &c in v.coords.iter().rev() {
            acc = acc * p + u128::from(c);
        }
        usize::try_from(acc).map_err(|_| Error::Overflow)
    }

    /// Index of the negation of the element at `index`.
    pub fn neg_index(&self, index: usize) -> usize {
        let v = self.element(index).neg();
        self.index_of(&v).expect("negation stays in the group")
    }

    /// All elements in canonical order. Checks the size against `budget`.
    pub fn elements(&self, budget: u128) -> Result<Vec<GroupVector>> {
        let size = self.size()?;
        if size > budget {
            return Err(Error::Budget { needed: size, limit: budget });
        }
        let n = size as usize;
        Ok((0..n).map(|i| self.element(i)).collect())
    }
}

/// An element of Q(ω), ω = exp(2πi/p), stored as p−1 exact rational
/// coordinates in the power basis 1, ω, …, ω^{p−2}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloRat {
    p: Prime,
    coeffs: Vec<Rational>,
}

impl CycloRat {
    pub fn zero(p: Prime) -> Self {
        CycloRat { p, coeffs: vec![Rational::zero(); (p.get() - 1) as usize] }
    }

    pub fn one(p: Prime) -> Self {
        Self::from_rational(p, Rational::one())
    }

    pub fn from_int(p: Prime, v: i64) -> Self {
        Self::from_rational(p, Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(p: Prime, r: Rational) -> Self {
        let mut c = Self::zero(p);
        c.coeffs[0] = r;
        c
    }

    /// ω^e for any signed exponent; exponents reduce mod p, and
    /// ω^{p−1} = −(1 + ω + … + ω^{p−2}).
    pub fn omega_pow(p: Prime, e: i64) -> Self {
        let r = e.rem_euclid(i64::from(p.get())) as usize;
        let deg = (p.get() - 1) as usize;
        let mut coeffs = vec![Rational::zero(); deg];
        if r < deg {
            coeffs[r] = Rational::one();
        } else {
            for c in &mut coeffs {
                *c = -Rational::one();
            }
        }
        CycloRat { p, coeffs }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    pub fn add(&self, other: &CycloRat) -> Result<CycloRat> {
        self.p.check_same(other.p)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloRat { p: self.p, coeffs })
    }

    pub fn add_assign(&mut self, other: &CycloRat) -> Result<()> {
        self.p.check_same(other.p)?;
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
        Ok(())
    }

    pub fn sub(&self, other: &CycloRat) -> Result<CycloRat> {
        self.p.check_same(other.p)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycloRat { p: self.p, coeffs })
    }

    pub fn neg(&self) -> CycloRat {
        CycloRat { p: self.p, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, r: &Rational) -> CycloRat {
        if r.is_zero() {
            return Self::zero(self.p);
        }
        CycloRat { p: self.p, coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }

    /// Exact product, reduced modulo Φ_p. Skips zero coefficients, so
    /// products of sparse values (single ω-powers) stay cheap.
    pub fn mul(&self, other: &CycloRat) -> Result<CycloRat> {
        self.p.check_same(other.p)?;
        let pu = self.p.get() as usize;
        // Degrees run up to 2(p−2); pad so index p−1 always exists.
        let mut acc = vec![Rational::zero(); 2 * pu - 2];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[i + j] += a * b;
            }
        }
        Ok(CycloRat { p: self.p, coeffs: reduce_power_basis(self.p, acc) })
    }

    /// Galois conjugation ω ↦ ω^{−1} (complex conjugation on Q(ω)).
    pub fn conj(&self) -> CycloRat {
        let pu = self.p.get() as usize;
        let mut acc = vec![Rational::zero(); pu];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc[(pu - i) % pu] += c;
            }
        }
        CycloRat { p: self.p, coeffs: reduce_power_basis(self.p, acc) }
    }

    /// The value as an ordinary rational, if its cyclotomic part vanishes.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.as_rational()?;
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    pub fn is_nonneg_integer(&self) -> bool {
        matches!(self.as_integer(), Some(n) if !n.is_negative())
    }
}

/// Reduces a raw power-basis accumulator (any length ≥ p) to the canonical
/// p−1 coordinates: exponents fold mod p, then ω^{p−1} is eliminated via
/// Φ_p(ω) = 0.
fn reduce_power_basis(p: Prime, mut acc: Vec<Rational>) -> Vec<Rational> {
    let pu = p.get() as usize;
    debug_assert!(acc.len() >= pu);
    for e in (pu..acc.len()).rev() {
        if !acc[e].is_zero() {
            let v = core::mem::take(&mut acc[e]);
            acc[e - pu] += v;
        }
    }
    let top = acc[pu - 1].clone();
    let mut out = Vec::with_capacity(pu - 1);
    for c in acc.drain(..pu - 1) {
        out.push(if top.is_zero() { c } else { c - &top });
    }
    out
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycloRat {
    /// Renders in the power basis with `z` for the root of unity,
    /// e.g. `1/2 - z + z^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if i == 0 {
                fmt_rational(&mag, f)?;
            } else {
                if !mag.is_one() {
                    fmt_rational(&mag, f)?;
                    write!(f, "*")?;
                }
                if i == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// The character ω^{f·t} pairing two group elements.
pub fn character(f: &GroupVector, t: &GroupVector) -> Result<CycloRat> {
    let d = dot(f, t)?;
    Ok(CycloRat::omega_pow(f.p(), i64::from(d)))
}

/// Dense character-sum kernel H with H[f][t] = ω^{f·t} over (Z_p)^n, rows and
/// columns in canonical element order. H is symmetric, H·H* = |G|·I, and
/// H^{-1} = H*/|G|.
pub struct TransformMatrix {
    group: Group,
    size: usize,
    entries: Vec<Vec<CycloRat>>,
}

impl TransformMatrix {
    pub fn new(p: Prime, dim: usize) -> Result<Self> {
        let group = Group::new(p, dim);
        let size = group.size_usize()?;
        if size > MAX_TRANSFORM_SIZE {
            return Err(Error::Budget { needed: size as u128, limit: MAX_TRANSFORM_SIZE as u128 });
        }
        let elems: Vec<GroupVector> = (0..size).map(|i| group.element(i)).collect();
        let mut entries = Vec::with_capacity(size);
        for f in &elems {
            let mut row = Vec::with_capacity(size);
            for t in &elems {
                row.push(character(f, t)?);
            }
            entries.push(row);
        }
        Ok(TransformMatrix { group, size, entries })
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, f: usize, t: usize) -> &CycloRat {
        &self.entries[f][t]
    }

    fn check_len(&self, v: &[CycloRat]) -> Result<()> {
        if v.len() != self.size {
            return Err(Error::DimensionMismatch { expected: self.size, actual: v.len() });
        }
        for c in v {
            self.group.p().check_same(c.p())?;
        }
        Ok(())
    }

    /// H·v.
    pub fn apply(&self, v: &[CycloRat]) -> Result<Vec<CycloRat>> {
        self.check_len(v)?;
        let mut out = Vec::with_capacity(self.size);
        for row in &self.entries {
            let mut acc = CycloRat::zero(self.group.p());
            for (h, x) in row.iter().zip(v) {
                if !x.is_zero() {
                    acc.add_assign(&h.mul(x)?)?;
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// H*·v (conjugated kernel, no scaling).
    pub fn apply_conj(&self, v: &[CycloRat]) -> Result<Vec<CycloRat>> {
        self.check_len(v)?;
        let mut out = Vec::with_capacity(self.size);
        for row in &self.entries {
            let mut acc = CycloRat::zero(self.group.p());
            for (h, x) in row.iter().zip(v) {
                if !x.is_zero() {
                    acc.add_assign(&h.conj().mul(x)?)?;
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// H^{-1}·v = H*·v / |G|; exact round-trip inverse of [`Self::apply`].
    pub fn apply_inverse(&self, v: &[CycloRat]) -> Result<Vec<CycloRat>> {
        let scale = Rational::new(BigInt::one(), BigInt::from(self.size));
        Ok(self.apply_conj(v)?.into_iter().map(|c| c.scale(&scale)).collect())
    }
}

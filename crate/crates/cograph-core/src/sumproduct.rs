//! Exact sum-product block updates, in the primal domain and through the
//! transformed (dual) domain.
//!
//! For a block code B on (left state s, symbols a, right state s'), the
//! update propagates a message m on the left state group to
//!
//! ```text
//! m'(s') = Σ over (s, a, s') ∈ B of m(s) · Π_i f_i(a_i)
//! ```
//!
//! The same result comes out of the dual route exactly — not approximately:
//! transform m and every f_i by the character kernel, run the identical
//! accumulation over the *orthogonal* code B⊥, then apply the kernel to the
//! result and divide by |B⊥|. When B⊥ is smaller than B the dual route does
//! fewer multiplications; both routes count theirs.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{CycloRat, Group, Prime, Rational, TransformMatrix};
use crate::error::{Error, Result};
use crate::realization::{fragment, NormalRealization};

/// Whether message values are in the original variable domain or already
/// character-transformed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MsgDomain {
    Primal,
    Transformed,
}

impl MsgDomain {
    fn expected_name(self) -> &'static str {
        match self {
            MsgDomain::Primal => "primal",
            MsgDomain::Transformed => "transformed",
        }
    }
}

/// A function on a finite group (Z_p)^dim: one exact value per element, in
/// canonical element order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Message {
    group: Group,
    values: Vec<CycloRat>,
    domain: MsgDomain,
}

impl Message {
    /// A primal-domain message from plain rational values.
    pub fn primal(p: Prime, dim: usize, values: Vec<Rational>) -> Result<Message> {
        let cyclo = values.into_iter().map(|r| CycloRat::from_rational(p, r)).collect();
        Self::from_values(Group::new(p, dim), cyclo, MsgDomain::Primal)
    }

    pub fn from_values(group: Group, values: Vec<CycloRat>, domain: MsgDomain) -> Result<Message> {
        let size = group.size_usize()?;
        if values.len() != size {
            return Err(Error::DimensionMismatch { expected: size, actual: values.len() });
        }
        for v in &values {
            group.p().check_same(v.p())?;
        }
        Ok(Message { group, values, domain })
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn values(&self) -> &[CycloRat] {
        &self.values
    }

    pub fn domain(&self) -> MsgDomain {
        self.domain
    }

    /// Character transform M = H·m, entering the transformed domain.
    pub fn transform(&self) -> Result<Message> {
        if self.domain != MsgDomain::Primal {
            return Err(Error::DomainTag { expected: "primal" });
        }
        let h = TransformMatrix::new(self.group.p(), self.group.dim())?;
        Ok(Message {
            group: self.group,
            values: h.apply(&self.values)?,
            domain: MsgDomain::Transformed,
        })
    }
}

/// The block update loop shared by both domains: the message rides the left
/// state, one factor per symbol port, accumulated onto the right state.
/// Returns the output message and the number of scalar multiplications.
fn block_update(
    r: &NormalRealization,
    constraint: &str,
    m: &Message,
    fs: &[Message],
    budget: u128,
    domain: MsgDomain,
) -> Result<(Message, u64)> {
    r.structural_ok()?;
    let ci = r.constraint_index(constraint)?;
    let layout = r.block_layout(ci)?;
    let p = r.p;
    if m.domain != domain {
        return Err(Error::DomainTag { expected: domain.expected_name() });
    }
    if m.group != layout.left {
        return Err(Error::DimensionMismatch {
            expected: layout.left.dim(),
            actual: m.group.dim(),
        });
    }
    if fs.len() != layout.symbol_spans.len() {
        return Err(Error::DimensionMismatch {
            expected: layout.symbol_spans.len(),
            actual: fs.len(),
        });
    }
    for (f, &(_, len)) in fs.iter().zip(&layout.symbol_spans) {
        if f.domain != domain {
            return Err(Error::DomainTag { expected: domain.expected_name() });
        }
        if f.group != Group::new(p, len) {
            return Err(Error::DimensionMismatch { expected: len, actual: f.group.dim() });
        }
    }

    let words = r.constraints[ci].code.enumerate(budget)?;
    let mut out = vec![CycloRat::zero(p); layout.right.size_usize()?];
    let mut count: u64 = 0;
    for w in &words {
        let s = layout.left.index_of(&w.slice(layout.left_span.0, layout.left_span.1))?;
        let mut acc = m.values[s].clone();
        for (f, &(start, len)) in fs.iter().zip(&layout.symbol_spans) {
            let a = f.group.index_of(&w.slice(start, len))?;
            acc = acc.mul(&f.values[a])?;
            count += 1;
        }
        let t = layout.right.index_of(&w.slice(layout.right_span.0, layout.right_span.1))?;
        out[t].add_assign(&acc)?;
    }
    Ok((Message { group: layout.right, values: out, domain }, count))
}

/// Primal-domain sum-product update across one constraint block.
pub fn spa_update(
    r: &NormalRealization,
    constraint: &str,
    m: &Message,
    fs: &[Message],
    budget: u128,
) -> Result<Message> {
    Ok(spa_update_counted(r, constraint, m, fs, budget)?.0)
}

/// Like [`spa_update`], also returning the multiplication count.
pub fn spa_update_counted(
    r: &NormalRealization,
    constraint: &str,
    m: &Message,
    fs: &[Message],
    budget: u128,
) -> Result<(Message, u64)> {
    block_update(r, constraint, m, fs, budget, MsgDomain::Primal)
}

/// The same accumulation loop run on a block of an already-dualized
/// realization, with every message in the transformed domain.
pub fn dual_spa_update(
    r: &NormalRealization,
    constraint: &str,
    m: &Message,
    fs: &[Message],
    budget: u128,
) -> Result<Message> {
    Ok(dual_spa_update_counted(r, constraint, m, fs, budget)?.0)
}

pub fn dual_spa_update_counted(
    r: &NormalRealization,
    constraint: &str,
    m: &Message,
    fs: &[Message],
    budget: u128,
) -> Result<(Message, u64)> {
    block_update(r, constraint, m, fs, budget, MsgDomain::Transformed)
}

/// Primal block update computed the dual way: transform the inputs, run the
/// accumulation over the orthogonal code, transform back and divide by its
/// size. Exactly equal to [`spa_update`]; the returned count covers only the
/// dual-domain accumulation, for comparison against the direct count.
pub fn spa_via_dual_counted(
    r: &NormalRealization,
    constraint: &str,
    m: &Message,
    fs: &[Message],
    budget: u128,
) -> Result<(Message, u64)> {
    r.structural_ok()?;
    let ci = r.constraint_index(constraint)?;
    let layout = r.block_layout(ci)?;
    let p = r.p;
    let dual_code = r.constraints[ci].code.dual();
    let dual_size = dual_code.size()?;
    let symbol_dims: Vec<usize> = layout.symbol_spans.iter().map(|&(_, len)| len).collect();
    let dual_block = fragment(p, dual_code, layout.left.dim(), &symbol_dims, layout.right.dim())?;

    let m_t = m.transform()?;
    let fs_t: Vec<Message> = fs.iter().map(Message::transform).collect::<Result<_>>()?;
    let (out_t, count) = dual_spa_update_counted(&dual_block, "c0", &m_t, &fs_t, budget)?;

    let h = TransformMatrix::new(p, layout.right.dim())?;
    let scale = Rational::new(BigInt::one(), BigInt::from(dual_size));
    let values = h.apply(out_t.values())?.into_iter().map(|c| c.scale(&scale)).collect();
    Ok((Message { group: layout.right, values, domain: MsgDomain::Primal }, count))
}

pub fn spa_via_dual(
    r: &NormalRealization,
    constraint: &str,
    m: &Message,
    fs: &[Message],
    budget: u128,
) -> Result<Message> {
    Ok(spa_via_dual_counted(r, constraint, m, fs, budget)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupVector;
    use crate::code::LinearCode;
    use crate::dpoly::DPolyMatrix;
    use crate::realization::{build_trellis, Closure};
    use crate::DEFAULT_BUDGET;

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
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

    /// Parity block on (s, a, s'): the three coordinates must sum to zero.
    fn parity_block() -> NormalRealization {
        fragment(p(2), code(2, &["011", "101"]), 1, &[1], 1).unwrap()
    }

    fn msg(pp: u32, dim: usize, vals: &[(i64, i64)]) -> Message {
        Message::primal(p(pp), dim, vals.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    #[test]
    fn transform_pairs() {
        let m = msg(2, 1, &[(3, 1), (5, 1)]);
        let t = m.transform().unwrap();
        assert_eq!(t.domain(), MsgDomain::Transformed);
        assert_eq!(t.values()[0], CycloRat::from_int(p(2), 8));
        assert_eq!(t.values()[1], CycloRat::from_int(p(2), -2));
        // Ternary: uniform transforms to (3, 0, 0).
        let u = msg(3, 1, &[(1, 1), (1, 1), (1, 1)]);
        let t = u.transform().unwrap();
        assert_eq!(t.values()[0], CycloRat::from_int(p(3), 3));
        assert!(t.values()[1].is_zero());
        assert!(t.values()[2].is_zero());
        // Transforming twice is refused.
        assert!(matches!(t.transform(), Err(Error::DomainTag { expected: "primal" })));
    }

    #[test]
    fn parity_block_update_formulas() {
        let r = parity_block();
        let m = msg(2, 1, &[(1, 2), (1, 3)]);
        let f = msg(2, 1, &[(2, 5), (7, 1)]);
        let (out, count) = spa_update_counted(&r, "c0", &m, core::slice::from_ref(&f), DEFAULT_BUDGET).unwrap();
        // m'(0) = m0·f0 + m1·f1, m'(1) = m0·f1 + m1·f0.
        let expect0 = rat(1, 2) * rat(2, 5) + rat(1, 3) * rat(7, 1);
        let expect1 = rat(1, 2) * rat(7, 1) + rat(1, 3) * rat(2, 5);
        assert_eq!(out.values()[0].as_rational(), Some(expect0));
        assert_eq!(out.values()[1].as_rational(), Some(expect1));
        assert_eq!(count, 4);

        let (via_dual, dual_count) =
            spa_via_dual_counted(&r, "c0", &m, &[f], DEFAULT_BUDGET).unwrap();
        assert_eq!(via_dual, out);
        assert_eq!(dual_count, 2);
    }

    #[test]
    fn indicator_message_counts_transitions() {
        let g = DPolyMatrix::parse(p(2), "1+D^2, 1+D+D^2").unwrap();
        let r = build_trellis(&g, 1, Closure::SingleSection, DEFAULT_BUDGET).unwrap();
        // Indicator of the zero state with a uniform symbol factor: the
        // output counts trellis transitions into each right state.
        let m = msg(2, 2, &[(1, 1), (0, 1), (0, 1), (0, 1)]);
        let f = msg(2, 2, &[(1, 1), (1, 1), (1, 1), (1, 1)]);
        let out = spa_update(&r, "c0", &m, core::slice::from_ref(&f), DEFAULT_BUDGET).unwrap();
        let expect: Vec<i64> = vec![1, 1, 0, 0];
        for (v, e) in out.values().iter().zip(expect) {
            assert_eq!(*v, CycloRat::from_int(p(2), e));
        }
        let via = spa_via_dual(&r, "c0", &m, &[f], DEFAULT_BUDGET).unwrap();
        assert_eq!(via, out);
    }

    #[test]
    fn dual_route_is_cheaper_when_the_dual_is_smaller() {
        let g = DPolyMatrix::parse(p(3), "1+D^2, 2+D, 0; 1, 0, 2").unwrap();
        let r = build_trellis(&g, 1, Closure::SingleSection, DEFAULT_BUDGET).unwrap();
        let m = msg(
            3,
            2,
            &[(1, 7), (2, 7), (3, 7), (1, 11), (2, 11), (3, 11), (1, 13), (2, 13), (3, 13)],
        );
        let vals: Vec<(i64, i64)> = (0..27).map(|i| (i + 1, 17)).collect();
        let f = msg(3, 3, &vals);
        let (direct, dc) = spa_update_counted(&r, "c0", &m, core::slice::from_ref(&f), DEFAULT_BUDGET).unwrap();
        let (via, vc) = spa_via_dual_counted(&r, "c0", &m, &[f], DEFAULT_BUDGET).unwrap();
        assert_eq!(direct, via);
        assert_eq!(dc, 81);
        assert_eq!(vc, 27);
    }

    #[test]
    fn boundary_block_without_left_states() {
        // First section of a zero-boundary chain: ports are (symbols, right
        // state); the left message lives on the trivial group.
        let g = DPolyMatrix::parse(p(2), "1+D^2, 1+D+D^2").unwrap();
        let r = build_trellis(&g, 2, Closure::ZeroBoundary, DEFAULT_BUDGET).unwrap();
        let m = msg(2, 0, &[(1, 1)]);
        let f = msg(2, 2, &[(1, 2), (1, 3), (1, 5), (1, 7)]);
        let direct = spa_update(&r, "c0", &m, core::slice::from_ref(&f), DEFAULT_BUDGET).unwrap();
        let via = spa_via_dual(&r, "c0", &m, &[f], DEFAULT_BUDGET).unwrap();
        assert_eq!(direct, via);
        assert_eq!(direct.group().dim(), 2);
    }

    #[test]
    fn multi_symbol_ports_take_one_factor_each() {
        // Two symbol ports of one coordinate each around a middle state.
        let r = NormalRealization {
            p: p(2),
            vars: vec![
                crate::realization::VarDecl {
                    id: "s0".into(),
                    kind: crate::realization::VarKind::State,
                    dim: 1,
                },
                crate::realization::VarDecl {
                    id: "a0".into(),
                    kind: crate::realization::VarKind::Symbol,
                    dim: 1,
                },
                crate::realization::VarDecl {
                    id: "a1".into(),
                    kind: crate::realization::VarKind::Symbol,
                    dim: 1,
                },
                crate::realization::VarDecl {
                    id: "s1".into(),
                    kind: crate::realization::VarKind::State,
                    dim: 1,
                },
            ],
            constraints: vec![crate::realization::ConstraintBlock {
                id: "c0".into(),
                code: code(2, &["1111", "0011"]),
                ports: (0..4)
                    .map(|var| crate::realization::PortBinding {
                        var,
                        sign: crate::realization::Sign::Plus,
                    })
                    .collect(),
            }],
        };
        let m = msg(2, 1, &[(2, 1), (3, 1)]);
        let f0 = msg(2, 1, &[(1, 2), (1, 3)]);
        let f1 = msg(2, 1, &[(5, 1), (7, 1)]);
        let (direct, dc) =
            spa_update_counted(&r, "c0", &m, &[f0.clone(), f1.clone()], DEFAULT_BUDGET).unwrap();
        let (via, vc) =
            spa_via_dual_counted(&r, "c0", &m, &[f0, f1], DEFAULT_BUDGET).unwrap();
        assert_eq!(direct, via);
        // 4 codewords × 2 ports direct; the dual code also has dimension 2.
        assert_eq!(dc, 8);
        assert_eq!(vc, 8);
    }

    #[test]
    fn mismatches_are_rejected() {
        let r = parity_block();
        let m = msg(2, 1, &[(1, 1), (2, 1)]);
        let f = msg(2, 1, &[(1, 1), (1, 1)]);
        // Wrong domain for the dual update.
        assert!(matches!(
            dual_spa_update(&r, "c0", &m, core::slice::from_ref(&f), DEFAULT_BUDGET),
            Err(Error::DomainTag { expected: "transformed" })
        ));
        // Wrong message group.
        let wide = msg(2, 2, &[(1, 1), (0, 1), (0, 1), (0, 1)]);
        assert!(matches!(
            spa_update(&r, "c0", &wide, core::slice::from_ref(&f), DEFAULT_BUDGET),
            Err(Error::DimensionMismatch { .. })
        ));
        // Wrong factor count.
        assert!(matches!(
            spa_update(&r, "c0", &m, &[], DEFAULT_BUDGET),
            Err(Error::DimensionMismatch { .. })
        ));
        // Unknown block.
        assert!(matches!(
            spa_update(&r, "zz", &m, &[f], DEFAULT_BUDGET),
            Err(Error::UnknownConstraint(_))
        ));
        // Message construction length check.
        assert!(Message::primal(p(2), 1, vec![rat(1, 1)]).is_err());
    }

    #[test]
    fn tiny_budget_is_an_error() {
        let r = parity_block();
        let m = msg(2, 1, &[(1, 1), (2, 1)]);
        let f = msg(2, 1, &[(1, 1), (1, 1)]);
        assert!(matches!(
            spa_update(&r, "c0", &m, &[f], 3),
            Err(Error::Budget { needed: 4, limit: 3 })
        ));
    }
}

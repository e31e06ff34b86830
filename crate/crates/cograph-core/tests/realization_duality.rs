//! Global coherence of realization dualization: dualizing the graph realizes
//! the dual code, with exactly one sign inverter per internal state edge.

use cograph_core::dpoly::DPolyMatrix;
use cograph_core::realization::{build_trellis, Closure, NormalRealization, Sign, VarKind};
use cograph_core::algebra::Prime;

const BUDGET: u128 = 1 << 27;

fn trellis(pp: u32, src: &str, sections: usize, closure: Closure) -> NormalRealization {
    let g = DPolyMatrix::parse(Prime::new(pp).unwrap(), src).unwrap();
    build_trellis(&g, sections, closure, BUDGET).unwrap()
}

/// Number of times each state variable appears on a port, with the count of
/// negative signs alongside.
fn state_port_stats(r: &NormalRealization) -> Vec<(usize, usize)> {
    let mut stats = vec![(0usize, 0usize); r.vars.len()];
    for c in &r.constraints {
        for port in &c.ports {
            stats[port.var].0 += 1;
            if port.sign == Sign::Minus {
                stats[port.var].1 += 1;
            }
        }
    }
    stats
}

#[test]
fn dualized_chains_realize_the_dual_code() {
    for &(pp, src) in &[(2u32, "1+D^2, 1+D+D^2"), (3u32, "1+D^2, 2+D, 0; 1, 0, 2")] {
        for sections in 1..=4usize {
            for &closure in &[Closure::ZeroBoundary, Closure::TailBiting] {
                let r = trellis(pp, src, sections, closure);
                let c = r.code_of(BUDGET).unwrap();
                let d = r.dualize().unwrap();
                let dc = d.code_of(BUDGET).unwrap();
                assert!(
                    dc.code_equal(&c.dual()),
                    "p={pp} sections={sections} closure={closure:?}"
                );
            }
        }
    }
}

#[test]
fn dualizing_twice_restores_code_and_signs() {
    for &(pp, src) in &[(2u32, "1+D^2, 1+D+D^2"), (3u32, "1+D^2, 2+D, 0; 1, 0, 2")] {
        for &closure in &[Closure::ZeroBoundary, Closure::TailBiting] {
            let r = trellis(pp, src, 3, closure);
            let back = r.dualize().unwrap().dualize().unwrap();
            assert!(back.code_of(BUDGET).unwrap().code_equal(&r.code_of(BUDGET).unwrap()));
            for c in &back.constraints {
                for port in &c.ports {
                    assert_eq!(port.sign, Sign::Plus);
                }
            }
            for (a, b) in r.constraints.iter().zip(&back.constraints) {
                assert!(a.code.code_equal(&b.code));
                assert_eq!(a.code.generators(), b.code.generators());
            }
        }
    }
}

#[test]
fn one_inverter_per_internal_edge() {
    for &(pp, src) in &[(2u32, "1+D^2, 1+D+D^2"), (3u32, "1+D^2, 2+D, 0; 1, 0, 2")] {
        for sections in 1..=4usize {
            for &closure in &[Closure::ZeroBoundary, Closure::TailBiting] {
                let r = trellis(pp, src, sections, closure);
                let d = r.dualize().unwrap();
                // Every port of the primal chain carries a plus sign.
                for (count, minus) in state_port_stats(&r) {
                    assert!(count <= 2);
                    assert_eq!(minus, 0);
                }
                // In the dual, each degree-2 state variable gets exactly one
                // inverted end; degree-1 boundary states stay plain.
                let stats = state_port_stats(&d);
                for (vi, var) in d.vars.iter().enumerate() {
                    let (count, minus) = stats[vi];
                    if var.kind != VarKind::State {
                        assert_eq!(minus, 0);
                        continue;
                    }
                    match count {
                        2 => assert_eq!(minus, 1, "p={pp} L={sections} {closure:?} {}", var.id),
                        _ => assert_eq!(minus, 0),
                    }
                }
            }
        }
    }
}

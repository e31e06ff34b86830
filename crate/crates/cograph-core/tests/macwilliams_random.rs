//! The transform route and the dual-enumeration route agree on randomized
//! constraint blocks over several primes.

use cograph_core::algebra::{GroupVector, Prime};
use cograph_core::code::LinearCode;
use cograph_core::realization::fragment;
use cograph_core::wam::verify_macwilliams;
use cograph_core::DEFAULT_BUDGET;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn transform_matches_dual_enumeration_on_random_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for trial in 0..50 {
        let pp = *[2u32, 3, 5].choose(&mut rng).unwrap();
        let p = Prime::new(pp).unwrap();
        let left = rng.gen_range(0usize..=2);
        let right = rng.gen_range(0usize..=2);
        // One or two symbol ports, three coordinates total at most.
        let symbol_dims: Vec<usize> = match rng.gen_range(0..3) {
            0 => vec![rng.gen_range(1usize..=3)],
            1 => vec![1, rng.gen_range(1usize..=2)],
            _ => vec![rng.gen_range(1usize..=2), 1],
        };
        let n = left + symbol_dims.iter().sum::<usize>() + right;
        let k = rng.gen_range(0usize..=n.min(4));
        let rows = (0..k)
            .map(|_| {
                GroupVector::new(p, (0..n).map(|_| rng.gen_range(0..pp)).collect()).unwrap()
            })
            .collect();
        let code = LinearCode::new(p, n, rows).unwrap();
        let r = fragment(p, code, left, &symbol_dims, right).unwrap();
        let report = verify_macwilliams(&r, "c0", DEFAULT_BUDGET).unwrap();
        assert!(
            report.pass,
            "trial {trial}: p={pp} left={left} right={right} dims={symbol_dims:?}\n{report}"
        );
    }
}

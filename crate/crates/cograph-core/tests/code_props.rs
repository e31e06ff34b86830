//! Randomized properties of linear codes and their duals.

use cograph_core::algebra::{dot, GroupVector, Prime};
use cograph_core::code::LinearCode;
use cograph_core::DEFAULT_BUDGET;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_code(rng: &mut ChaCha8Rng) -> LinearCode {
    let pp = *[2u32, 3, 5].choose(rng).unwrap();
    let p = Prime::new(pp).unwrap();
    let n = rng.gen_range(1usize..=8);
    let k = rng.gen_range(0usize..=n);
    let rows = (0..k)
        .map(|_| GroupVector::new(p, (0..n).map(|_| rng.gen_range(0..pp)).collect()).unwrap())
        .collect();
    LinearCode::new(p, n, rows).unwrap()
}

#[test]
fn dual_dimensions_and_orthogonality() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let c = random_code(&mut rng);
        let d = c.dual();
        assert_eq!(c.dim() + d.dim(), c.len());
        for g in c.generators() {
            for h in d.generators() {
                assert_eq!(dot(g, h).unwrap(), 0);
            }
        }
        // The double dual is the original code, generator for generator
        // (canonical form is unique).
        let dd = d.dual();
        assert!(dd.code_equal(&c));
        assert_eq!(dd.generators(), c.generators());
    }
}

#[test]
fn canonical_form_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..40 {
        let c = random_code(&mut rng);
        let again =
            LinearCode::new(c.p(), c.len(), c.generators().to_vec()).unwrap();
        assert_eq!(again.generators(), c.generators());
    }
}

#[test]
fn representation_changes_leave_the_code_fixed() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let c = random_code(&mut rng);
        let p = c.p();
        let mut rows: Vec<GroupVector> = c.generators().to_vec();
        if rows.is_empty() {
            continue;
        }
        // Scale rows by nonzero constants, add random multiples of other
        // rows, shuffle, and duplicate one row.
        for i in 0..rows.len() {
            let s = rng.gen_range(1..p.get());
            rows[i] = rows[i].scaled(s);
            let j = rng.gen_range(0..rows.len());
            if j != i {
                let m = rng.gen_range(0..p.get());
                let other = rows[j].clone();
                rows[i].add_scaled_assign(&other, m);
            }
        }
        rows.shuffle(&mut rng);
        rows.push(rows[0].clone());
        let again = LinearCode::new(p, c.len(), rows).unwrap();
        assert!(again.code_equal(&c));
        assert_eq!(again.generators(), c.generators());
    }
}

#[test]
fn enumeration_matches_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..40 {
        let c = random_code(&mut rng);
        let words = c.enumerate(DEFAULT_BUDGET).unwrap();
        assert_eq!(words.len() as u128, c.size().unwrap());
        for w in &words {
            assert!(c.contains(w).unwrap());
        }
        // Closure under addition on sampled pairs.
        if !words.is_empty() {
            for _ in 0..8 {
                let a = &words[rng.gen_range(0..words.len())];
                let b = &words[rng.gen_range(0..words.len())];
                assert!(c.contains(&a.add(b).unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn enumeration_agrees_with_brute_force_on_small_spaces() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let pp = *[2u32, 3].choose(&mut rng).unwrap();
        let p = Prime::new(pp).unwrap();
        let n = rng.gen_range(1usize..=4);
        let k = rng.gen_range(0usize..=n);
        let rows = (0..k)
            .map(|_| {
                GroupVector::new(p, (0..n).map(|_| rng.gen_range(0..pp)).collect()).unwrap()
            })
            .collect();
        let c = LinearCode::new(p, n, rows).unwrap();
        let everything = LinearCode::full_space(p, n).enumerate(DEFAULT_BUDGET).unwrap();
        let by_membership: Vec<&GroupVector> =
            everything.iter().filter(|v| c.contains(v).unwrap()).collect();
        let mut listed: Vec<GroupVector> = c.enumerate(DEFAULT_BUDGET).unwrap();
        listed.sort_by(|a, b| a.coords().cmp(b.coords()));
        let mut expected: Vec<GroupVector> = by_membership.into_iter().cloned().collect();
        expected.sort_by(|a, b| a.coords().cmp(b.coords()));
        assert_eq!(listed, expected);
    }
}

use gbm_core::fock::vacuum_expectation_dense;
use gbm_core::identities::{
    commutation_check, exclusion_check, one_color_words, wlim_double_creator_check, wlim_identity_check,
};
use gbm_core::rational::{frac, int};
use gbm_core::word::{rho_n, Letter, Word};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rayon::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn c(b: usize, i: u32) -> Letter {
    Letter::create(b, i)
}

fn a(b: usize, i: u32) -> Letter {
    Letter::annihilate(b, i)
}

#[test]
fn exclusion_worked_example() {
    let w = Word(vec![c(1, 1), a(1, 1), c(1, 1), c(1, 1)]);
    assert_eq!(w.profile_at(1, 1), 2);
    let x = Word::concat(&[&w.star(), &w]);
    assert!(rho_n(&x, -1).unwrap().is_zero());
    assert!(!rho_n(&x, 2).unwrap().is_zero());
}

#[test]
fn exclusion_up_to_length_eight() {
    let start = Instant::now();
    let cases = [(-1, 0), (-1, 1), (-2, 0), (-2, 1)];
    cases.par_iter().for_each(|&(n, b)| {
        let r = exclusion_check(n, b, 8, 2).unwrap();
        assert!(r.pass, "N={n} b={b}: {:?}", &r.failures[..r.failures.len().min(3)]);
        assert!(r.checked > 1000);
    });
    eprintln!("exclusion sweep {:?}", start.elapsed());
}

#[test]
fn exclusion_is_sharp() {
    // profile exactly |N| does not force zero
    let w = Word(vec![c(0, 1)]);
    assert_eq!(rho_n(&Word::concat(&[&w.star(), &w]), -1).unwrap(), int(1));
    let w = Word(vec![c(0, 1), c(0, 1)]);
    assert!(!rho_n(&Word::concat(&[&w.star(), &w]), -2).unwrap().is_zero());
    assert!(exclusion_check(2, 0, 3, 1).is_err());
}

#[test]
fn one_color_word_counts() {
    let ws = one_color_words(0, 3, 2);
    assert_eq!(ws.len(), 1 + 4 + 16 + 64);
    assert!(ws.iter().all(|w| w.letters().iter().all(|l| l.b == 0)));
}

fn random_word(rng: &mut ChaCha8Rng, lens: std::ops::RangeInclusive<usize>, indices: u32) -> Word {
    let len = rng.gen_range(lens);
    Word(
        (0..len)
            .map(|_| {
                let (b, i) = (rng.gen_range(0..2), rng.gen_range(1..=indices));
                if rng.gen_bool(0.6) {
                    c(b, i)
                } else {
                    a(b, i)
                }
            })
            .collect(),
    )
}

#[test]
fn commutation_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut nonzero = 0;
    let mut tried = 0;
    while tried < 60 {
        let w = random_word(&mut rng, 0..=4, 2);
        let mut bw = w.clone();
        bw.0.shuffle(&mut rng);
        let b = rng.gen_range(0..2);
        let n = [1i64, -1, 2, -2, 3][tried % 5];
        let Ok(r) = commutation_check(&w, &bw, b, rng.gen_range(1..=2), n) else {
            continue;
        };
        tried += 1;
        assert!(r.equal, "{w:?} {bw:?} b={b} N={n}: {r:?}");
        nonzero += usize::from(!r.lhs.is_zero());
    }
    assert!(nonzero >= 10);
}

#[test]
fn commutation_needs_its_hypothesis() {
    let w = Word(vec![c(0, 1), c(0, 1)]);
    assert!(commutation_check(&w, &w, 1, 1, 2).is_err());
    // among short words violating |w_b| >= |w_-b| the identity fails somewhere
    let mut violated = None;
    'search: for len in 1..=3 {
        for x in gbm_core::identities::one_color_words(0, len, 1).into_iter().chain(mixed_words(len)) {
            for b in 0..2 {
                if x.profile_total(b) >= x.profile_total(1 - b) {
                    continue;
                }
                let mid = Word(vec![a(b, 1), c(b, 1)]);
                for n in [2i64, -2] {
                    let lhs = rho_n(&Word::concat(&[&x.star(), &mid, &x]), n).unwrap();
                    let rhs = (int(1) + frac(x.profile_at(b, 1), n)) * rho_n(&Word::concat(&[&x.star(), &x]), n).unwrap();
                    if lhs != rhs {
                        violated = Some((x.clone(), b, n));
                        break 'search;
                    }
                }
            }
        }
    }
    assert!(violated.is_some());
}

fn mixed_words(len: usize) -> Vec<Word> {
    let alphabet = [c(0, 1), a(0, 1), c(1, 1), a(1, 1)];
    let mut out = vec![Word::default()];
    for _ in 0..len {
        out = out.iter().flat_map(|w| alphabet.iter().map(move |&l| { let mut v = w.0.clone(); v.push(l); Word(v) })).collect();
    }
    out
}

#[test]
fn rho_agrees_with_the_fock_model() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let w = random_word(&mut rng, 2..=6, 2);
        for n in [1i64, 2, 3] {
            assert_eq!(rho_n(&w, n).unwrap(), vacuum_expectation_dense(&w, n).unwrap(), "{w:?} N={n}");
        }
    }
}

#[test]
fn wlim_single_creator() {
    let w = Word(vec![c(1, 1)]);
    let r = wlim_identity_check(&w, &w, 1, 1, 2, 3).unwrap();
    assert_eq!((r.lhs.clone(), r.rhs.clone()), (frac(1, 4), frac(1, 4)));
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut done = 0;
    while done < 12 {
        let w = random_word(&mut rng, 1..=3, 2);
        let mut bw = w.clone();
        bw.0.shuffle(&mut rng);
        let b = rng.gen_range(0..2);
        let i = rng.gen_range(1..=2);
        let pad = (w.profile_total(1 - b) - w.profile_total(b)).max(2) as u32 + 1;
        let n = [2i64, -2, 3][done % 3];
        let Ok(r) = wlim_identity_check(&w, &bw, b, i, n, pad) else {
            continue;
        };
        done += 1;
        assert!(r.equal, "{w:?} {bw:?} b={b} i={i} N={n}: {r:?}");
    }
}

#[test]
fn wlim_rejects_bad_padding() {
    let w = Word(vec![c(1, 3)]);
    assert!(wlim_identity_check(&w, &w, 1, 1, 2, 2).is_err());
    let heavy = Word(vec![c(0, 1), c(0, 1), c(0, 1)]);
    assert!(wlim_identity_check(&heavy, &heavy, 1, 1, 2, 1).is_err());
}

#[test]
fn double_creator_bound() {
    let e = Word::default();
    let bw = Word(vec![c(1, 1), c(1, 1)]);
    for n in [2i64, -2, 3, -3] {
        for r in 1..=2u32 {
            let rep = wlim_double_creator_check(&e, &bw, 1, 1, n, 2 * r + 1, r).unwrap();
            assert!(rep.pass, "N={n} r={r}: {rep:?}");
            assert!(rep.count > 0);
        }
    }
    assert!(wlim_double_creator_check(&e, &bw, 1, 1, 2, 2, 1).is_err());
}

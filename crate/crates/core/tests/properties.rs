use std::collections::HashSet;

use itertools::Itertools;
use num_bigint::BigUint;
use proptest::prelude::*;

use codim::greedy::{apply_rearrangement, enumerate_chunk_preserving, left_greedy_form, Rearrangement};
use codim::mahonian::{factorial, mahonian_row, MahonianRow};
use codim::perm::{find_d_bad_witness, from_inversion_set, is_d_good, InversionSet, Permutation};
use codim::verify::greedy_form_violations;
use codim::Radius;

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn inversion_set_round_trips(p in permutation(12)) {
        let set = p.inversion_set();
        prop_assert!(set.check_axioms().is_ok());
        prop_assert_eq!(set.len(), p.word_length());
        prop_assert!(p.word_length() <= p.n() * (p.n() - 1) / 2);
        prop_assert_eq!(from_inversion_set(&set).unwrap(), p);
    }

    #[test]
    fn one_line_text_round_trips(p in permutation(15)) {
        prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
    }

    #[test]
    fn d_good_is_monotone_in_d(p in permutation(12), d in 2usize..12) {
        if is_d_good(&p, d).unwrap() {
            for e in d..=13 {
                prop_assert!(is_d_good(&p, e).unwrap());
            }
        }
        prop_assert_eq!(is_d_good(&p, d).unwrap(), find_d_bad_witness(&p, d).unwrap().is_none());
    }

    #[test]
    fn d_bad_permutations_are_long(p in permutation(14), d in 2usize..8) {
        if let Some(w) = find_d_bad_witness(&p, d).unwrap() {
            prop_assert!(w.windows(2).all(|x| x[0] < x[1] && p.at(x[0]) > p.at(x[1])));
            prop_assert!(p.word_length() >= d * (d - 1) / 2);
        }
    }

    #[test]
    fn greedy_form_structure(p in permutation(14)) {
        prop_assert_eq!(greedy_form_violations(&p), Vec::<String>::new());
        prop_assert_eq!(left_greedy_form(&p), left_greedy_form(&p));
    }

    #[test]
    fn rearrangement_is_concatenation(p in permutation(7), pieces in 1usize..5, seed in any::<u64>()) {
        let gf = left_greedy_form(&p);
        let decs = enumerate_chunk_preserving(&gf, pieces);
        if decs.is_empty() {
            return Ok(());
        }
        let dec = &decs[(seed as usize) % decs.len()];
        let joined: Vec<usize> = dec.spans().flat_map(|s| s.positions()).collect();
        prop_assert_eq!(joined, (1..=p.n()).collect::<Vec<_>>());
        prop_assert_eq!(apply_rearrangement(dec, &Rearrangement::identity(pieces)).unwrap(), p.clone());
        let words: Vec<Vec<usize>> = dec.spans().map(|s| s.positions().map(|i| p.at(i)).collect()).collect();
        for tau in Permutation::all(pieces) {
            let direct: Vec<usize> = tau.image().iter().flat_map(|&t| words[t - 1].clone()).collect();
            let applied = apply_rearrangement(dec, &Rearrangement(tau)).unwrap();
            prop_assert_eq!(applied.image(), direct.as_slice());
        }
    }

    #[test]
    fn ball_and_complement_partition(n in 1usize..20, num in -10i64..200, den in 1i64..4) {
        let radius = Radius::new(num, den);
        let row = mahonian_row(n).unwrap();
        prop_assert_eq!(row.ball(&radius) + row.ball_complement(&radius), factorial(n));
    }
}

/// Naive convolution with `1 + z + ... + z^{n-1}`, independent of the prefix-sum path.
fn convolve_block(prev: &[BigUint], width: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::from(0u8); prev.len() + width];
    for (k, c) in prev.iter().enumerate() {
        for t in 0..=width {
            out[k + t] += c;
        }
    }
    out
}

#[test]
fn rows_follow_the_sliding_recurrence() {
    let mut prev = mahonian_row(1).unwrap();
    for n in 2..=40 {
        let row = mahonian_row(n).unwrap();
        assert_eq!(row.coefficients(), convolve_block(prev.coefficients(), n - 1).as_slice(), "row {n}");
        row.check_invariants().unwrap();
        prev = row;
    }
}

#[test]
fn machine_word_rows_agree_with_big_rows() {
    for n in 1..=21 {
        let small: MahonianRow<u64> = codim::mahonian::mahonian_row_in(n).unwrap();
        let big = mahonian_row(n).unwrap();
        let widened: Vec<BigUint> = small.coefficients().iter().map(|&c| BigUint::from(c)).collect();
        assert_eq!(widened.as_slice(), big.coefficients());
    }
}

/// Exactly the inversion sets of permutations satisfy both axioms.
#[test]
fn axioms_characterise_inversion_sets() {
    for n in 1..=5 {
        let all_pairs: Vec<(usize, usize)> = (1..=n).tuple_combinations().collect();
        let genuine: HashSet<Vec<(usize, usize)>> =
            Permutation::all(n).map(|p| p.inversion_set().pairs().collect()).collect();
        let mut accepted = 0;
        for mask in 0u32..(1 << all_pairs.len()) {
            let pairs: Vec<_> = all_pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p).collect();
            let set = InversionSet::new(n, pairs.iter().copied()).unwrap();
            let ok = from_inversion_set(&set).is_ok();
            assert_eq!(ok, genuine.contains(&pairs), "n={n} {pairs:?}");
            accepted += ok as usize;
        }
        assert_eq!(accepted, (1..=n).product::<usize>());
    }
}

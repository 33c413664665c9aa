use std::collections::HashSet;

use onerel::oracles::sample::all_cyclically_reduced_words;
use onerel::presentation::canonical_key;
use onerel::{Generator, Letter, Word};
use proptest::prelude::*;

fn raw_word(rank: u32, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len).prop_map(|v| {
        v.into_iter()
            .map(|(g, s)| Letter::new(Generator(g), s))
            .collect()
    })
}

fn word(rank: u32, max_len: usize) -> impl Strategy<Value = Word> {
    raw_word(rank, max_len).prop_map(Word::reduce)
}

proptest! {
    #[test]
    fn reduce_is_idempotent(raw in raw_word(3, 24)) {
        let w = Word::reduce(raw);
        prop_assert_eq!(Word::reduce(w.letters().iter().copied()), w.clone());
        prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1].inverse()));
    }

    #[test]
    fn multiplication_is_associative(u in word(3, 10), v in word(3, 10), x in word(3, 10)) {
        prop_assert_eq!(u.multiply(&v).multiply(&x), u.multiply(&v.multiply(&x)));
    }

    #[test]
    fn inverse_cancels(u in word(3, 16)) {
        prop_assert!(u.multiply(&u.invert()).is_empty());
        prop_assert!(u.invert().multiply(&u).is_empty());
        prop_assert_eq!(u.invert().invert(), u);
    }

    #[test]
    fn exponent_sum_is_a_homomorphism(u in word(3, 12), v in word(3, 12), g in 0u32..3) {
        let g = Generator(g);
        prop_assert_eq!(u.multiply(&v).exponent_sum(g), u.exponent_sum(g) + v.exponent_sum(g));
    }

    #[test]
    fn cyclic_reduce_recombines(u in word(3, 16)) {
        let (conj, core) = u.cyclic_reduce();
        prop_assert!(core.is_cyclically_reduced());
        prop_assert_eq!(core.conjugate_by(&conj), u);
    }

    #[test]
    fn rotation_preserves_cyclic_core(u in word(2, 12), k in 0usize..12) {
        let core = u.cyclic_core();
        if !core.is_empty() {
            let r = core.rotate(k % core.len());
            prop_assert!(r.is_cyclically_reduced());
            prop_assert_eq!(canonical_key(2, &r), canonical_key(2, &core));
        }
    }
}

fn orbit(rank: u32, w: &Word) -> HashSet<Word> {
    let perms: Vec<Vec<u32>> = match rank {
        2 => vec![vec![0, 1], vec![1, 0]],
        3 => vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ],
        _ => unreachable!(),
    };
    let mut out = HashSet::new();
    for base in [w.clone(), w.invert()] {
        for k in 0..base.len() {
            let rot = base.rotate(k);
            for p in &perms {
                out.insert(rot.map_generators(|g| Generator(p[g.index()])));
            }
        }
    }
    out
}

fn key_matches_brute_force(rank: u32, max_len: usize) {
    let words = all_cyclically_reduced_words(rank as usize, max_len);
    let keys: Vec<_> = words
        .iter()
        .map(|w| canonical_key(rank as usize, w))
        .collect();
    for (i, u) in words.iter().enumerate() {
        let orb = orbit(rank, u);
        for (j, v) in words.iter().enumerate() {
            assert_eq!(keys[i] == keys[j], orb.contains(v), "{u:?} vs {v:?}");
        }
    }
}

#[test]
fn canonical_key_matches_brute_force_rank2() {
    key_matches_brute_force(2, 6);
}

#[test]
fn canonical_key_matches_brute_force_rank3() {
    key_matches_brute_force(3, 4);
}

//! Exhaustive and seeded-random word generators.

use rand::Rng;

use crate::words::{Generator, Letter, Word};

fn letters(rank: usize) -> Vec<Letter> {
    (0..rank as u32)
        .flat_map(|g| {
            [
                Letter::new(Generator(g), true),
                Letter::new(Generator(g), false),
            ]
        })
        .collect()
}

/// Every freely reduced word of length `≤ max_len`, shortest first, each
/// length in lexicographic letter order.
pub fn all_reduced_words(rank: usize, max_len: usize) -> Vec<Word> {
    let alphabet = letters(rank);
    let mut out = vec![Word::identity()];
    let mut frontier = vec![Word::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &alphabet {
                if w.last() == Some(l.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Nonempty cyclically reduced words of length `≤ max_len`.
pub fn all_cyclically_reduced_words(rank: usize, max_len: usize) -> Vec<Word> {
    all_reduced_words(rank, max_len)
        .into_iter()
        .filter(|w| !w.is_empty() && w.is_cyclically_reduced())
        .collect()
}

/// A reduced word whose length is uniform on `0..=max_len`.
pub fn random_reduced_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    let alphabet = letters(rank);
    let len = rng.random_range(0..=max_len);
    let mut w = Word::identity();
    while w.len() < len {
        let l = alphabet[rng.random_range(0..alphabet.len())];
        if w.last() != Some(l.inverse()) {
            w.push(l);
        }
    }
    w
}

/// A nonempty cyclically reduced word of length in `min_len..=max_len`
/// satisfying `accept`, by rejection sampling.
pub fn random_cyclically_reduced_word<R: Rng>(
    rng: &mut R,
    rank: usize,
    min_len: usize,
    max_len: usize,
    accept: impl Fn(&Word) -> bool,
) -> Word {
    let alphabet = letters(rank);
    loop {
        let len = rng.random_range(min_len.max(1)..=max_len);
        let mut w = Word::identity();
        while w.len() < len {
            let l = alphabet[rng.random_range(0..alphabet.len())];
            if w.last() != Some(l.inverse()) {
                w.push(l);
            }
        }
        if w.is_cyclically_reduced() && accept(&w) {
            return w;
        }
    }
}

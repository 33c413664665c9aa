//! Bounded search for a product of conjugates of `r^{±1}` equal to a target.

use std::collections::{HashMap, HashSet};

use crate::presentation::OneRelatorPresentation;
use crate::words::Word;

use super::sample::all_reduced_words;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NclCertificate {
    /// `(g, ε)` standing for `g · r^ε · g⁻¹`, multiplied left to right.
    pub factors: Vec<(Word, i8)>,
}

impl NclCertificate {
    pub fn product(&self, relator: &Word) -> Word {
        let mut out = Word::identity();
        for (g, e) in &self.factors {
            out.append(&relator.pow(i64::from(*e)).conjugate_by(g));
        }
        out
    }
}

/// Breadth-first over partial products of at most `max_factors` conjugates
/// `g r^{±1} g⁻¹` with `|g| ≤ conj_len`. `None` means not found within budget.
pub fn ncl_semidecide(
    p: &OneRelatorPresentation,
    w: &Word,
    conj_len: usize,
    max_factors: usize,
) -> Option<NclCertificate> {
    let r = p.relator();
    let mut seen_conj = HashSet::new();
    let mut conjugates: Vec<(Word, i8, Word)> = Vec::new();
    for g in all_reduced_words(p.rank(), conj_len) {
        for e in [1i8, -1] {
            let c = r.pow(i64::from(e)).conjugate_by(&g);
            if seen_conj.insert(c.clone()) {
                conjugates.push((g.clone(), e, c));
            }
        }
    }
    let widest = conjugates
        .iter()
        .map(|(_, _, c)| c.len())
        .max()
        .unwrap_or(0);

    let mut parent: HashMap<Word, Option<(Word, usize)>> = HashMap::new();
    parent.insert(Word::identity(), None);
    let mut level = vec![Word::identity()];
    let mut used = 0;
    loop {
        if parent.contains_key(w) {
            let mut factors = Vec::new();
            let mut cur = w.clone();
            while let Some(Some((prev, idx))) = parent.get(&cur) {
                let (g, e, _) = &conjugates[*idx];
                factors.push((g.clone(), *e));
                cur = prev.clone();
            }
            factors.reverse();
            let cert = NclCertificate { factors };
            assert_eq!(&cert.product(r), w, "certificate must reproduce its target");
            return Some(cert);
        }
        if used == max_factors {
            return None;
        }
        used += 1;
        let budget = w.len() + (max_factors - used) * widest;
        let mut next = Vec::new();
        for partial in &level {
            for (idx, (_, _, c)) in conjugates.iter().enumerate() {
                let prod = partial.multiply(c);
                if prod.len() > budget || parent.contains_key(&prod) {
                    continue;
                }
                parent.insert(prod.clone(), Some((partial.clone(), idx)));
                next.push(prod);
            }
        }
        if next.is_empty() {
            return None;
        }
        level = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{Alphabet, Generator, Letter};

    fn w(s: &str) -> Word {
        Word::reduce(s.chars().map(|c| {
            Letter::new(
                Generator(c.to_ascii_lowercase() as u32 - 97),
                c.is_ascii_lowercase(),
            )
        }))
    }

    fn comm() -> OneRelatorPresentation {
        OneRelatorPresentation::new(Alphabet::letters(2), w("abAB")).unwrap()
    }

    #[test]
    fn single_conjugate() {
        let target = w("abAB").conjugate_by(&w("a"));
        let cert = ncl_semidecide(&comm(), &target, 1, 1).unwrap();
        assert_eq!(cert.factors, vec![(w("a"), 1)]);
    }

    #[test]
    fn square_of_relator() {
        let cert = ncl_semidecide(&comm(), &w("abABabAB"), 0, 2).unwrap();
        assert_eq!(cert.factors, vec![(w(""), 1), (w(""), 1)]);
    }

    #[test]
    fn abelian_obstruction_stays_unknown() {
        assert_eq!(ncl_semidecide(&comm(), &w("ab"), 2, 2), None);
    }

    #[test]
    fn klein_bottle_relation() {
        let p = OneRelatorPresentation::new(Alphabet::letters(2), w("abaB")).unwrap();
        let target = w("baaBaa");
        let cert = ncl_semidecide(&p, &target, 2, 2).unwrap();
        assert_eq!(cert.product(p.relator()), target);
    }
}

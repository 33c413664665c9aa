//! One-relator presentations `⟨A | r⟩` with `r` nonempty and cyclically reduced.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::words::{Alphabet, Generator, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("relator reduces to the empty word")]
    EmptyRelator,
    #[error("relator uses generator id {0} outside the alphabet")]
    UnknownGenerator(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneRelatorPresentation {
    alphabet: Alphabet,
    relator: Word,
}

impl OneRelatorPresentation {
    /// Stores the cyclically reduced core of `relator`; the normal closure is unchanged.
    pub fn new(alphabet: Alphabet, relator: Word) -> Result<Self, PresentationError> {
        if let Some(g) = relator.max_generator() {
            if !alphabet.contains(g) {
                return Err(PresentationError::UnknownGenerator(g.0));
            }
        }
        let core = relator.cyclic_core();
        if core.is_empty() {
            return Err(PresentationError::EmptyRelator);
        }
        Ok(OneRelatorPresentation {
            alphabet,
            relator: core,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    pub fn support(&self) -> BTreeSet<Generator> {
        self.relator.support()
    }

    /// True when every generator occurs in the relator.
    pub fn is_full_support(&self) -> bool {
        self.support().len() == self.rank()
    }

    pub fn split_free_factor(&self) -> FreeFactorSplit {
        let active = self.support();
        let free_part = self
            .alphabet
            .generators()
            .filter(|g| !active.contains(g))
            .collect();
        FreeFactorSplit { active, free_part }
    }

    pub fn abelianization(&self) -> AbelianizationData {
        let exponent_vector: Vec<i64> = self
            .alphabet
            .generators()
            .map(|g| self.relator.exponent_sum(g))
            .collect();
        let gcd = exponent_vector.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        AbelianizationData {
            exponent_vector,
            gcd: gcd.unsigned_abs(),
        }
    }

    /// Restriction to the relator's support, renumbered `0..k` in id order.
    /// Returns the sub-presentation and the map from new ids to old ids.
    pub fn restrict_to_support(&self) -> (OneRelatorPresentation, Vec<Generator>) {
        let active: Vec<Generator> = self.support().into_iter().collect();
        let mut to_new = vec![u32::MAX; self.rank()];
        for (i, g) in active.iter().enumerate() {
            to_new[g.index()] = i as u32;
        }
        let names = active.iter().map(|&g| self.alphabet.name(g).to_string());
        let alphabet = Alphabet::new(names).expect("sub-alphabet of distinct names");
        let relator = self
            .relator
            .map_generators(|g| Generator(to_new[g.index()]));
        (OneRelatorPresentation { alphabet, relator }, active)
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        canonical_key(self.rank(), &self.relator)
    }
}

/// `G = ⟨active | r⟩ ∗ F(free_part)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeFactorSplit {
    pub active: BTreeSet<Generator>,
    pub free_part: BTreeSet<Generator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianizationData {
    pub exponent_vector: Vec<i64>,
    pub gcd: u64,
}

impl AbelianizationData {
    /// Necessary condition for `w =_G 1`: the exponent vector of `w` is an
    /// integer multiple of the relator's.
    pub fn admits(&self, w: &Word) -> bool {
        let v: Vec<i64> = (0..self.exponent_vector.len() as u32)
            .map(|i| w.exponent_sum(Generator(i)))
            .collect();
        if let Some(g) = w.max_generator() {
            if g.index() >= v.len() {
                return false;
            }
        }
        let r = &self.exponent_vector;
        let Some(pivot) = r.iter().position(|&x| x != 0) else {
            return v.iter().all(|&x| x == 0);
        };
        if v[pivot] % r[pivot] != 0 {
            return false;
        }
        let k = v[pivot] / r[pivot];
        v.iter().zip(r).all(|(&a, &b)| a == k * b)
    }
}

/// Invariant of a presentation under cyclic shifts, inversion of the relator
/// and permutations of the alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    rank: usize,
    letters: Vec<i32>,
}

/// Least representative over rotations × inversion × renamings. For a fixed
/// rotation the lexicographically least renaming numbers generators by first
/// appearance, so only `2|r|` candidates are compared.
pub fn canonical_key(rank: usize, relator: &Word) -> CanonicalKey {
    let core = relator.cyclic_core();
    let mut best: Option<Vec<i32>> = None;
    for base in [core.clone(), core.invert()] {
        for k in 0..base.len().max(1) {
            let rotated = base.rotate(k);
            let cand = first_appearance_encoding(&rotated);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    CanonicalKey {
        rank,
        letters: best.unwrap_or_default(),
    }
}

fn first_appearance_encoding(w: &Word) -> Vec<i32> {
    let mut order: Vec<Generator> = Vec::new();
    w.letters()
        .iter()
        .map(|l| {
            let id = match order.iter().position(|&g| g == l.gen()) {
                Some(i) => i,
                None => {
                    order.push(l.gen());
                    order.len() - 1
                }
            };
            Letter::new(Generator(id as u32), l.is_positive()).sort_key() as i32
        })
        .collect()
}

//! Free-group words over small integer generator ids.
//!
//! A [`Word`] is always stored freely reduced, so equality in the free group
//! is plain sequence equality.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Index of a generator inside some [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator(pub u32);

impl Generator {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A generator or its inverse, packed as a nonzero `i32` (`±(id + 1)`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    pub fn new(gen: Generator, positive: bool) -> Self {
        let v = gen.0 as i32 + 1;
        Letter(if positive { v } else { -v })
    }

    pub fn pos(gen: u32) -> Self {
        Letter::new(Generator(gen), true)
    }

    pub fn neg(gen: u32) -> Self {
        Letter::new(Generator(gen), false)
    }

    pub fn gen(self) -> Generator {
        Generator(self.0.unsigned_abs() - 1)
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.0 > 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Ordering key: generator id first, positive before inverse.
    pub(crate) fn sort_key(self) -> u32 {
        (self.gen().0 << 1) | u32::from(self.0 < 0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "g{}", self.gen().0)
        } else {
            write!(f, "g{}^-1", self.gen().0)
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        let mut letters: Vec<Letter> = Vec::new();
        for l in raw {
            push_reduced(&mut letters, l);
        }
        Word { letters }
    }

    pub fn letter(l: Letter) -> Self {
        Word { letters: vec![l] }
    }

    pub fn gen(g: Generator) -> Self {
        Word::letter(Letter::new(g, true))
    }

    /// `g^n`.
    pub fn power_of(g: Generator, n: i64) -> Self {
        let l = Letter::new(g, n >= 0);
        Word {
            letters: vec![l; n.unsigned_abs() as usize],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.reserve(other.len());
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Word { letters }
    }

    /// In-place right multiplication.
    pub fn append(&mut self, other: &Word) {
        for &l in &other.letters {
            push_reduced(&mut self.letters, l);
        }
    }

    pub fn push(&mut self, l: Letter) {
        push_reduced(&mut self.letters, l);
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out.append(&base);
        }
        out
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.multiply(self).multiply(&g.invert())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(a), Some(b)) => a != b.inverse(),
            _ => true,
        }
    }

    /// Splits `self` as `conjugator · core · conjugator⁻¹` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k] == self.letters[n - 1 - k].inverse() {
            k += 1;
        }
        let conj = Word {
            letters: self.letters[..k].to_vec(),
        };
        let core = Word {
            letters: self.letters[k..n - k].to_vec(),
        };
        (conj, core)
    }

    pub fn cyclic_core(&self) -> Word {
        self.cyclic_reduce().1
    }

    /// Rotation `w[k..] w[..k]`. Only meaningful on cyclically reduced words,
    /// where the result is again reduced.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::identity();
        }
        let k = k % self.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word::reduce(letters)
    }

    pub fn exponent_sum(&self, g: Generator) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen() == g)
            .map(|l| l.sign())
            .sum()
    }

    /// Number of occurrences of `g` with either sign.
    pub fn occurrences(&self, g: Generator) -> usize {
        self.letters.iter().filter(|l| l.gen() == g).count()
    }

    pub fn support(&self) -> BTreeSet<Generator> {
        self.letters.iter().map(|l| l.gen()).collect()
    }

    pub fn max_generator(&self) -> Option<Generator> {
        self.letters.iter().map(|l| l.gen()).max()
    }

    /// Applies a letter-wise substitution `g ↦ image(g)`; inverse letters map to inverse images.
    pub fn substitute(&self, mut image: impl FnMut(Generator) -> Word) -> Word {
        let mut out = Word::identity();
        for &l in &self.letters {
            let w = image(l.gen());
            if l.is_positive() {
                out.append(&w);
            } else {
                out.append(&w.invert());
            }
        }
        out
    }

    /// Letter-wise renaming; `map` must be injective for the result to stay meaningful.
    pub fn map_generators(&self, mut map: impl FnMut(Generator) -> Generator) -> Word {
        Word::reduce(
            self.letters
                .iter()
                .map(|&l| Letter::new(map(l.gen()), l.is_positive())),
        )
    }

    /// Maximal runs `(generator, exponent)`, e.g. `a a b⁻¹` → `[(a,2),(b,-1)]`.
    pub fn syllables(&self) -> Vec<(Generator, i64)> {
        let mut out: Vec<(Generator, i64)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((g, e)) if *g == l.gen() => *e += l.sign(),
                _ => out.push((l.gen(), l.sign())),
            }
        }
        out
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        f.debug_list().entries(self.letters.iter()).finish()
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word::reduce(iter)
    }
}

fn push_reduced(letters: &mut Vec<Letter>, l: Letter) {
    if letters.last() == Some(&l.inverse()) {
        letters.pop();
    } else {
        letters.push(l);
    }
}

/// True iff cyclically reduced `v` is a cyclic permutation of `u` or of `u⁻¹`.
pub fn cyclically_equal_up_to_inversion(u: &Word, v: &Word) -> bool {
    is_cyclic_permutation(u, v) || is_cyclic_permutation(&u.invert(), v)
}

fn is_cyclic_permutation(u: &Word, v: &Word) -> bool {
    if u.len() != v.len() {
        return false;
    }
    if u.is_empty() {
        return true;
    }
    let n = u.len();
    (0..n).any(|k| (0..n).all(|i| u.letters[(i + k) % n] == v.letters[i]))
}

/// Ordered list of distinct generator names; the position of a name is its [`Generator`] id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, AlphabetError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(AlphabetError::EmptyName);
            }
            if names[..i].contains(n) {
                return Err(AlphabetError::Duplicate(n.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    /// The first `n` lowercase letters `a, b, c, …`.
    pub fn letters(n: usize) -> Self {
        assert!(n <= 26);
        Alphabet {
            names: (0..n)
                .map(|i| ((b'a' + i as u8) as char).to_string())
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: Generator) -> &str {
        &self.names[g.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<Generator> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Generator(i as u32))
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..self.names.len() as u32).map(Generator)
    }

    pub fn contains(&self, g: Generator) -> bool {
        g.index() < self.names.len()
    }

    /// A name not yet in the alphabet, derived from `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut name = stem.to_string();
        while self.names.contains(&name) {
            name.push('\'');
        }
        name
    }

    /// Renders a word. Single-character alphabets use the compact form
    /// (`aB^2`, uppercase for inverses); otherwise names are space separated
    /// with `^k` powers. The identity prints as `1`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let compact = self
            .names
            .iter()
            .all(|n| n.len() == 1 && n.as_bytes()[0].is_ascii_lowercase());
        let mut parts = Vec::new();
        for (g, e) in w.syllables() {
            let name = self.name(g);
            if compact {
                let base = if e > 0 {
                    name.to_string()
                } else {
                    name.to_ascii_uppercase()
                };
                if e.abs() == 1 {
                    parts.push(base);
                } else {
                    parts.push(format!("{base}^{}", e.abs()));
                }
            } else if e == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        parts.join(if compact { "" } else { " " })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlphabetError {
    #[error("duplicate generator name `{0}`")]
    Duplicate(String),
    #[error("empty generator name")]
    EmptyName,
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: u32 = 0;
    const B: u32 = 1;
    const C: u32 = 2;

    fn w(packed: &[i32]) -> Word {
        Word::reduce(packed.iter().map(|&x| {
            if x > 0 {
                Letter::pos(x as u32 - 1)
            } else {
                Letter::neg((-x) as u32 - 1)
            }
        }))
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w(&[1, -1]), Word::identity());
        assert_eq!(w(&[1, 2, -2, 1]), w(&[1, 1]));
        assert_eq!(w(&[2, -1, 1, -2]), Word::identity());
        assert_eq!(w(&[1, 2, -2, 1]).len(), 2);
    }

    #[test]
    fn multiply_invert_examples() {
        assert_eq!(w(&[1, 2]).multiply(&w(&[-2, 1])), w(&[1, 1]));
        assert_eq!(w(&[1, 2]).invert(), w(&[-2, -1]));
        let u = w(&[1, 2, 1, 2]);
        assert!(u.multiply(&u.invert()).is_empty());
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(w(&[1, 2, -1]).cyclic_reduce(), (w(&[1]), w(&[2])));
        assert_eq!(
            w(&[1, 2, 1, 2]).cyclic_reduce(),
            (Word::identity(), w(&[1, 2, 1, 2]))
        );
        assert_eq!(w(&[1, 2, 3, -2, -1]).cyclic_reduce(), (w(&[1, 2]), w(&[3])));
        assert_eq!(
            Word::identity().cyclic_reduce(),
            (Word::identity(), Word::identity())
        );
    }

    #[test]
    fn cyclic_equality_examples() {
        assert!(cyclically_equal_up_to_inversion(&w(&[1, 2]), &w(&[2, 1])));
        assert!(cyclically_equal_up_to_inversion(&w(&[1, 2]), &w(&[-1, -2])));
        assert!(!cyclically_equal_up_to_inversion(&w(&[1, 2]), &w(&[1, -2])));
    }

    #[test]
    fn exponent_sum_and_support() {
        let comm = w(&[1, 2, -1, -2]);
        assert_eq!(comm.exponent_sum(Generator(A)), 0);
        assert_eq!(w(&[1, 1, -2, -2, -2]).exponent_sum(Generator(B)), -3);
        assert_eq!(Word::identity().exponent_sum(Generator(A)), 0);
        assert_eq!(
            w(&[1, 2, -1]).support(),
            [Generator(A), Generator(B)].into_iter().collect()
        );
        assert!(Word::identity().support().is_empty());
        assert_eq!(
            Word::power_of(Generator(C), 5).support(),
            [Generator(C)].into_iter().collect()
        );
    }

    #[test]
    fn format_compact_and_spaced() {
        let ab = Alphabet::letters(2);
        assert_eq!(ab.format_word(&w(&[1, 2, -1, -2, -2])), "abAB^2");
        assert_eq!(ab.format_word(&Word::identity()), "1");
        let sub = Alphabet::new(["b_0", "b_1"]).unwrap();
        assert_eq!(sub.format_word(&w(&[2, -1, -1])), "b_1 b_0^-2");
    }

    #[test]
    fn alphabet_rejects_duplicates() {
        assert_eq!(
            Alphabet::new(["a", "a"]),
            Err(AlphabetError::Duplicate("a".into()))
        );
        assert_eq!(Alphabet::letters(2).fresh_name("a"), "a'");
    }
}

//! Fixed workloads shared by the benchmarks in `benches/`.

use onerel::oracles::sample::all_reduced_words;
use onerel::{Alphabet, Generator, Letter, OneRelatorPresentation, Word};

pub struct Workload {
    pub name: &'static str,
    pub presentation: OneRelatorPresentation,
    pub words: Vec<Word>,
}

fn word(s: &str) -> Word {
    Word::reduce(s.chars().map(|c| {
        Letter::new(
            Generator(c.to_ascii_lowercase() as u32 - 'a' as u32),
            c.is_ascii_lowercase(),
        )
    }))
}

/// Every reduced word up to `max_len` over the group's generators.
pub fn workload(name: &'static str, rank: usize, relator: &str, max_len: usize) -> Workload {
    Workload {
        name,
        presentation: OneRelatorPresentation::new(Alphabet::letters(rank), word(relator))
            .expect("valid relator"),
        words: all_reduced_words(rank, max_len),
    }
}

pub fn word_problem_workloads() -> Vec<Workload> {
    vec![
        workload("z2", 2, "abAB", 6),
        workload("bs12", 2, "abABB", 6),
        workload("klein", 2, "abaB", 6),
        workload("trefoil", 2, "aaBBB", 6),
        workload("bs23", 2, "abbABBB", 5),
        workload("abc", 3, "abAcBC", 4),
    ]
}

//! Primitive elements of the free group on `{a, b}`.

use num_integer::Integer;

use crate::words::{Generator, Word};

const A: Generator = Generator(0);
const B: Generator = Generator(1);

/// The twelve non-permutation Whitehead automorphisms of `F(a, b)`: for a
/// multiplier `x ∈ {b, b⁻¹}` acting on `a`, `a ↦ a x`, `a ↦ x⁻¹ a` or
/// `a ↦ x⁻¹ a x`, and symmetrically with the roles of `a` and `b` swapped.
fn whitehead_moves() -> Vec<(Generator, Word)> {
    let mut out = Vec::new();
    for (moved, other) in [(A, B), (B, A)] {
        for x in [Word::gen(other), Word::gen(other).invert()] {
            let y = Word::gen(moved);
            out.push((moved, y.multiply(&x)));
            out.push((moved, x.invert().multiply(&y)));
            out.push((moved, x.invert().multiply(&y).multiply(&x)));
        }
    }
    out
}

/// Whether `w` belongs to some free basis of `F(a, b)`. Greedy cyclic-length
/// reduction by Whitehead moves; primitive iff a single letter is reached.
pub fn is_primitive_rank2(w: &Word) -> bool {
    assert!(
        w.max_generator().is_none_or(|g| g.0 <= 1),
        "rank-2 words only"
    );
    let (p, q) = (w.exponent_sum(A), w.exponent_sum(B));
    if p.gcd(&q) != 1 {
        return false;
    }
    let moves = whitehead_moves();
    let mut cur = w.cyclic_core();
    while cur.len() > 1 {
        let shorter = moves.iter().find_map(|(g, img)| {
            let v = cur
                .substitute(|h| if h == *g { img.clone() } else { Word::gen(h) })
                .cyclic_core();
            (v.len() < cur.len()).then_some(v)
        });
        match shorter {
            Some(v) => cur = v,
            None => return false,
        }
    }
    cur.len() == 1
}

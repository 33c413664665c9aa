//! One step of the Magnus hierarchy.
//!
//! A presentation whose relator uses every generator is either a base case
//! (one generator), has a generator `t` of exponent sum zero (the relator is
//! rewritten over `b_i = t^i b t^-i` and the group becomes an HNN extension
//! of a shorter one-relator group), or has no such generator, in which case
//! `a ↦ y x^-β, b ↦ x^α` embeds it into a group where `x` has exponent sum
//! zero.

use std::sync::Arc;

use serde::Serialize;

use crate::presentation::{OneRelatorPresentation, PresentationError};
use crate::words::{Alphabet, Generator, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BreakdownError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// `b_i = t^i b t^-i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubscriptedGen {
    pub base: Generator,
    pub subscript: i64,
}

/// Subscript range of one base generator inside the rewritten relator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Column {
    pub base: Generator,
    pub min: i64,
    pub max: i64,
    first_id: u32,
}

impl Column {
    fn id(&self, subscript: i64) -> Option<Generator> {
        (self.min..=self.max)
            .contains(&subscript)
            .then(|| Generator(self.first_id + (subscript - self.min) as u32))
    }
}

/// Zero-exponent rewriting. The group is the HNN extension of `base` with
/// stable letter `t`, where `t · b_i · t⁻¹ = b_{i+1}` identifies the lower
/// subgroup (all `b_i` with `i < max`) with the upper one (`i > min`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCaseData {
    pub stable: Generator,
    pub pivot: Generator,
    parent_rank: usize,
    columns: Vec<Column>,
    column_of: Vec<Option<usize>>,
    base: OneRelatorPresentation,
}

impl ZeroCaseData {
    /// The base group `⟨b_i (min ≤ i ≤ max) | R⟩`.
    pub fn base(&self) -> &OneRelatorPresentation {
        &self.base
    }

    pub fn rewritten_relator(&self) -> &Word {
        self.base.relator()
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn parent_rank(&self) -> usize {
        self.parent_rank
    }

    pub fn ranges(&self) -> Vec<(Generator, i64, i64)> {
        self.columns
            .iter()
            .map(|c| (c.base, c.min, c.max))
            .collect()
    }

    pub fn subscripted(&self, g: Generator, subscript: i64) -> Option<Generator> {
        let col = self.column_of.get(g.index()).copied().flatten()?;
        self.columns[col].id(subscript)
    }

    /// Base-group id → `(base generator, subscript)`.
    pub fn describe(&self, id: Generator) -> SubscriptedGen {
        for c in &self.columns {
            let width = (c.max - c.min + 1) as u32;
            if id.0 >= c.first_id && id.0 < c.first_id + width {
                return SubscriptedGen {
                    base: c.base,
                    subscript: c.min + i64::from(id.0 - c.first_id),
                };
            }
        }
        panic!("generator {id:?} outside the base alphabet")
    }

    /// Generators of the lower associated subgroup (`i < max`).
    pub fn lower_generators(&self) -> Vec<Generator> {
        self.columns
            .iter()
            .flat_map(|c| (c.min..c.max).filter_map(|i| c.id(i)))
            .collect()
    }

    /// Generators of the upper associated subgroup (`i > min`).
    pub fn upper_generators(&self) -> Vec<Generator> {
        self.columns
            .iter()
            .flat_map(|c| (c.min + 1..=c.max).filter_map(|i| c.id(i)))
            .collect()
    }

    /// Whole columns of the given parent generators.
    pub fn column_generators(&self, parents: &[Generator]) -> Vec<Generator> {
        self.columns
            .iter()
            .filter(|c| parents.contains(&c.base))
            .flat_map(|c| (c.min..=c.max).filter_map(|i| c.id(i)))
            .collect()
    }

    /// `b_i ↦ b_{i+by}`; `None` if some subscript leaves its column.
    pub fn shift(&self, w: &Word, by: i64) -> Option<Word> {
        let mut out = Vec::with_capacity(w.len());
        for l in w.letters() {
            let s = self.describe(l.gen());
            let g = self.subscripted(s.base, s.subscript + by)?;
            out.push(Letter::new(g, l.is_positive()));
        }
        Some(Word::reduce(out))
    }

    /// `b_i ↦ t^i b t^-i`, back into the parent alphabet.
    pub fn substitute_back(&self, w: &Word) -> Word {
        w.substitute(|g| {
            let s = self.describe(g);
            Word::gen(s.base).conjugate_by(&Word::power_of(self.stable, s.subscript))
        })
    }

    /// Rewrites a parent word as `h_0 t^{e_1} h_1 … t^{e_k} h_k` with each
    /// `h_j` in the base. A letter `g` becomes `t^-c g_c t^c` where `c` is the
    /// current `t`-height clamped into the column of `g`.
    pub fn to_hnn(&self, w: &Word) -> HnnWord {
        let t_id = Generator(self.base.rank() as u32);
        let mut flat = Word::identity();
        let mut height = 0i64;
        for l in w.letters() {
            if l.gen() == self.stable {
                height += l.sign();
                flat.push(Letter::new(t_id, l.is_positive()));
                continue;
            }
            let col = &self.columns[self.column_of[l.gen().index()].expect("generator in relator")];
            // g = t^-c g_c t^c; choosing c near the current height lets the
            // t-letters already emitted cancel
            let c = height.clamp(col.min, col.max);
            let t_pow = Word::power_of(t_id, c);
            flat.append(&t_pow.invert());
            flat.push(Letter::new(col.id(c).unwrap(), l.is_positive()));
            flat.append(&t_pow);
        }
        HnnWord::from_flat(&flat, t_id)
    }

    /// Base word over `SubscriptedGen` notation, for display.
    pub fn subscripted_letters(&self, w: &Word) -> Vec<(SubscriptedGen, bool)> {
        w.letters()
            .iter()
            .map(|l| (self.describe(l.gen()), l.is_positive()))
            .collect()
    }
}

/// `head · t^{e_1} · w_1 · t^{e_2} · w_2 ⋯` with every `e_j = ±1` and each
/// `w_j` a word over the base alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HnnWord {
    pub head: Word,
    pub tail: Vec<(bool, Word)>,
}

impl HnnWord {
    /// Splits a word over `base ∪ {t}` (with `t` the id `t_id`) into syllables.
    pub fn from_flat(flat: &Word, t_id: Generator) -> Self {
        let mut out = HnnWord::default();
        for l in flat.letters() {
            if l.gen() == t_id {
                out.tail.push((l.is_positive(), Word::identity()));
            } else {
                match out.tail.last_mut() {
                    Some((_, w)) => w.push(*l),
                    None => out.head.push(*l),
                }
            }
        }
        out
    }

    pub fn t_length(&self) -> usize {
        self.tail.len()
    }

    pub fn t_exponent(&self) -> i64 {
        self.tail.iter().map(|(p, _)| if *p { 1 } else { -1 }).sum()
    }

    /// Concatenation back into a word over `base ∪ {t}`.
    pub fn flatten(&self, t_id: Generator) -> Word {
        let mut out = self.head.clone();
        for (p, w) in &self.tail {
            out.push(Letter::new(t_id, *p));
            out.append(w);
        }
        out
    }

    pub fn total_len(&self) -> usize {
        self.head.len() + self.tail.iter().map(|(_, w)| w.len() + 1).sum::<usize>()
    }
}

/// `a ↦ y x^-β`, `b ↦ x^α`, other generators fixed. `y` reuses the id of `a`
/// and `x` the id of `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingData {
    pub src_a: Generator,
    pub src_b: Generator,
    pub alpha: i64,
    pub beta: i64,
    image: OneRelatorPresentation,
}

impl EmbeddingData {
    pub fn x(&self) -> Generator {
        self.src_b
    }

    pub fn y(&self) -> Generator {
        self.src_a
    }

    pub fn image_presentation(&self) -> &OneRelatorPresentation {
        &self.image
    }

    /// `ψ(w)`.
    pub fn translate(&self, w: &Word) -> Word {
        let (a, b, x, y) = (self.src_a, self.src_b, self.x(), self.y());
        w.substitute(|g| {
            if g == a {
                Word::gen(y).multiply(&Word::power_of(x, -self.beta))
            } else if g == b {
                Word::power_of(x, self.alpha)
            } else {
                Word::gen(g)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BreakdownStep {
    /// Empty relator support; unreachable for valid presentations.
    BaseFree,
    /// `⟨g | g^n⟩`.
    BaseSingleGen {
        gen: Generator,
        exponent: i64,
    },
    ZeroCase(Arc<ZeroCaseData>),
    NonZeroCase(Arc<EmbeddingData>),
}

fn require_full_support(p: &OneRelatorPresentation) -> Result<(), BreakdownError> {
    if p.is_full_support() {
        Ok(())
    } else {
        Err(BreakdownError::PreconditionViolated(
            "some generator does not occur in the relator".into(),
        ))
    }
}

/// Deterministic classification; ties go to the smallest generator id.
pub fn classify(p: &OneRelatorPresentation) -> Result<BreakdownStep, BreakdownError> {
    require_full_support(p)?;
    let support: Vec<Generator> = p.support().into_iter().collect();
    match support.len() {
        0 => return Ok(BreakdownStep::BaseFree),
        1 => {
            return Ok(BreakdownStep::BaseSingleGen {
                gen: support[0],
                exponent: p.relator().exponent_sum(support[0]),
            })
        }
        _ => {}
    }
    let r = p.relator();
    if let Some(&t) = support.iter().find(|&&g| r.exponent_sum(g) == 0) {
        return Ok(BreakdownStep::ZeroCase(Arc::new(rewrite_zero_case(p, t)?)));
    }
    Ok(BreakdownStep::NonZeroCase(Arc::new(embed_nonzero_case(
        p, support[0], support[1],
    )?)))
}

/// Rewrites the relator over subscripted generators. Heights are `t`-prefix
/// sums of the relator as stored.
pub fn rewrite_zero_case(
    p: &OneRelatorPresentation,
    t: Generator,
) -> Result<ZeroCaseData, BreakdownError> {
    require_full_support(p)?;
    let r = p.relator();
    if !p.alphabet().contains(t) || r.occurrences(t) == 0 {
        return Err(BreakdownError::PreconditionViolated(
            "stable letter must occur in the relator".into(),
        ));
    }
    if r.exponent_sum(t) != 0 {
        return Err(BreakdownError::PreconditionViolated(
            "stable letter must have exponent sum zero".into(),
        ));
    }
    if p.rank() < 2 {
        return Err(BreakdownError::PreconditionViolated(
            "zero case needs at least two generators".into(),
        ));
    }
    let (_, scanned) = rewrite_word_to_subscripted(r, t);
    let mut ranges: Vec<Option<(i64, i64)>> = vec![None; p.rank()];
    for (s, _) in &scanned {
        let e = &mut ranges[s.base.index()];
        *e = Some(match *e {
            None => (s.subscript, s.subscript),
            Some((lo, hi)) => (lo.min(s.subscript), hi.max(s.subscript)),
        });
    }
    let mut columns = Vec::new();
    let mut column_of = vec![None; p.rank()];
    let mut names = Vec::new();
    let mut next = 0u32;
    for g in p.alphabet().generators() {
        if g == t {
            continue;
        }
        let (min, max) = ranges[g.index()].expect("full support");
        column_of[g.index()] = Some(columns.len());
        for i in min..=max {
            names.push(format!("{}_{}", p.alphabet().name(g), i));
        }
        columns.push(Column {
            base: g,
            min,
            max,
            first_id: next,
        });
        next += (max - min + 1) as u32;
    }
    let pivot = columns[0].base;
    let relator = Word::reduce(scanned.iter().map(|(s, pos)| {
        let col = &columns[column_of[s.base.index()].unwrap()];
        Letter::new(col.id(s.subscript).unwrap(), *pos)
    }));
    debug_assert!(relator.is_cyclically_reduced());
    let alphabet = Alphabet::new(names).expect("distinct subscripted names");
    let base = OneRelatorPresentation::new(alphabet, relator).map_err(|e| match e {
        PresentationError::EmptyRelator | PresentationError::UnknownGenerator(_) => {
            BreakdownError::PreconditionViolated(e.to_string())
        }
    })?;
    Ok(ZeroCaseData {
        stable: t,
        pivot,
        parent_rank: p.rank(),
        columns,
        column_of,
        base,
    })
}

pub fn embed_nonzero_case(
    p: &OneRelatorPresentation,
    a: Generator,
    b: Generator,
) -> Result<EmbeddingData, BreakdownError> {
    require_full_support(p)?;
    let r = p.relator();
    if a == b || !p.alphabet().contains(a) || !p.alphabet().contains(b) {
        return Err(BreakdownError::PreconditionViolated(
            "embedding needs two distinct generators".into(),
        ));
    }
    let (alpha, beta) = (r.exponent_sum(a), r.exponent_sum(b));
    if alpha == 0 || beta == 0 {
        return Err(BreakdownError::PreconditionViolated(
            "embedding needs nonzero exponent sums".into(),
        ));
    }
    let mut names: Vec<String> = p.alphabet().names().to_vec();
    let y = p.alphabet().fresh_name("y");
    names[a.index()] = y;
    let x = Alphabet::new(names.clone()).unwrap().fresh_name("x");
    names[b.index()] = x;
    let mut data = EmbeddingData {
        src_a: a,
        src_b: b,
        alpha,
        beta,
        image: p.clone(),
    };
    let image_relator = data.translate(r);
    data.image = OneRelatorPresentation::new(Alphabet::new(names).unwrap(), image_relator)
        .map_err(|e| BreakdownError::PreconditionViolated(e.to_string()))?;
    Ok(data)
}

/// Scans `w`, tracking the `t`-height, and emits `g_height` for each non-`t`
/// letter. Returns `(σ_t(w), letters)`.
pub fn rewrite_word_to_subscripted(w: &Word, t: Generator) -> (i64, Vec<(SubscriptedGen, bool)>) {
    let mut height = 0i64;
    let mut out = Vec::new();
    for l in w.letters() {
        if l.gen() == t {
            height += l.sign();
        } else {
            out.push((
                SubscriptedGen {
                    base: l.gen(),
                    subscript: height,
                },
                l.is_positive(),
            ));
        }
    }
    (height, out)
}

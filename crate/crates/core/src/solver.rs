//! Word problem and Magnus-subgroup membership for one-relator groups.
//!
//! Everything reduces to one recursive question, "is `w` in the subgroup
//! generated by `S`?", answered with a witness word over `S`. The word
//! problem is the case `S = ∅`.
//!
//! * Generators missing from the relator split off as a free factor and are
//!   handled through free-product normal forms.
//! * One generator: `⟨g | g^n⟩` is cyclic.
//! * A generator `t` of exponent sum zero exhibits the group as an HNN
//!   extension of a one-relator group with a shorter relator; words are put
//!   in pinch-free form (Britton) and membership of the pieces is asked in the
//!   base group.
//! * Otherwise the group embeds in one that has such a generator.
//!
//! Whenever `S` omits a generator of the relator, `⟨S⟩` is free on `S`, so
//! witnesses are unique reduced words; several steps below rely on that.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::breakdown::{
    classify, embed_nonzero_case, rewrite_zero_case, BreakdownError, BreakdownStep, EmbeddingData,
    HnnWord, ZeroCaseData,
};
use crate::presentation::{OneRelatorPresentation, PresentationError};
use crate::words::{Alphabet, Generator, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SolverLimits {
    pub max_depth: usize,
    pub max_word_len: usize,
    pub max_subscript_span: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits {
            max_depth: 32,
            max_word_len: 1 << 20,
            max_subscript_span: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("resource exhausted: {0}")]
    ResourceExhausted(String),
    #[error("unknown generator id {0}")]
    UnknownGenerator(u32),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl From<BreakdownError> for SolveError {
    fn from(e: BreakdownError) -> Self {
        SolveError::Internal(e.to_string())
    }
}

impl From<PresentationError> for SolveError {
    fn from(e: PresentationError) -> Self {
        match e {
            PresentationError::UnknownGenerator(g) => SolveError::UnknownGenerator(g),
            PresentationError::EmptyRelator => SolveError::InvalidInput(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, SolveError>;

/// A word over the queried generators, equal in the group to the query word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MembershipWitness {
    pub expression: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Trivial,
    NonTrivial,
    Member(MembershipWitness),
    NotMember,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolverStats {
    pub max_depth_reached: usize,
    pub memo_hits: u64,
    pub memo_misses: u64,
    pub membership_calls: u64,
    pub words_allocated: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum StepChoice {
    Zero(Generator),
    Embed(Generator, Generator),
}

#[derive(Clone)]
enum CachedStep {
    Zero(Arc<ZeroCaseData>),
    Embed(Arc<EmbeddingData>),
}

type GenSet = BTreeSet<Generator>;

/// Decision procedures with a breakdown memo. Single owner; create one per thread.
pub struct Solver {
    limits: SolverLimits,
    memo: Option<HashMap<(OneRelatorPresentation, StepChoice), CachedStep>>,
    stats: SolverStats,
}

impl Solver {
    pub fn new(limits: SolverLimits) -> Self {
        Solver {
            limits,
            memo: Some(HashMap::new()),
            stats: SolverStats::default(),
        }
    }

    pub fn without_memo(limits: SolverLimits) -> Self {
        Solver {
            limits,
            memo: None,
            stats: SolverStats::default(),
        }
    }

    pub fn limits(&self) -> &SolverLimits {
        &self.limits
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    /// `Trivial` iff `w` lies in the normal closure of the relator.
    pub fn word_problem(&mut self, p: &OneRelatorPresentation, w: &Word) -> Result<Verdict> {
        check_alphabet(p, w)?;
        if w.is_empty() {
            return Ok(Verdict::Trivial);
        }
        if !p.abelianization().admits(w) {
            return Ok(Verdict::NonTrivial);
        }
        Ok(match self.member(p, w, &GenSet::new(), 0)? {
            Some(_) => Verdict::Trivial,
            None => Verdict::NonTrivial,
        })
    }

    pub fn is_trivial(&mut self, p: &OneRelatorPresentation, w: &Word) -> Result<bool> {
        Ok(self.word_problem(p, w)? == Verdict::Trivial)
    }

    /// Membership of `w` in `⟨subset⟩`, with a witness over `subset`. The
    /// witness is freely reduced; when `subset` omits a generator of the
    /// relator it is the unique such word.
    pub fn magnus_membership(
        &mut self,
        p: &OneRelatorPresentation,
        w: &Word,
        subset: &[Generator],
    ) -> Result<Verdict> {
        check_alphabet(p, w)?;
        if let Some(g) = subset.iter().find(|g| !p.alphabet().contains(**g)) {
            return Err(SolveError::UnknownGenerator(g.0));
        }
        let s: GenSet = subset.iter().copied().collect();
        Ok(match self.member(p, w, &s, 0)? {
            Some(expression) => Verdict::Member(MembershipWitness { expression }),
            None => Verdict::NotMember,
        })
    }

    /// Removes every pinch `t·u·t⁻¹` (`u` in the lower subgroup) and
    /// `t⁻¹·u·t` (`u` in the upper subgroup), left to right.
    pub fn britton_reduce(&mut self, z: &ZeroCaseData, q: HnnWord) -> Result<HnnWord> {
        self.britton(z, q, 0)
    }

    /// The breakdown steps the word problem would take, as a tree.
    pub fn hierarchy_tree(&mut self, p: &OneRelatorPresentation) -> Result<HierarchyNode> {
        self.tree(p, 0)
    }

    fn tree(&mut self, p: &OneRelatorPresentation, depth: usize) -> Result<HierarchyNode> {
        self.enter(depth)?;
        let (active, free_generators) = if p.is_full_support() {
            (p.clone(), Vec::new())
        } else {
            let split = p.split_free_factor();
            let free = split
                .free_part
                .iter()
                .map(|&g| p.alphabet().name(g).to_string())
                .collect();
            (p.restrict_to_support().0, free)
        };
        let step = classify(&active)?;
        let mut children = Vec::new();
        match &step {
            BreakdownStep::ZeroCase(z) => {
                self.check_span(z)?;
                children.push(self.tree(z.base(), depth + 1)?);
            }
            BreakdownStep::NonZeroCase(e) => {
                self.check_len(e.image_presentation().relator())?;
                children.push(self.tree(e.image_presentation(), depth)?);
            }
            BreakdownStep::BaseFree | BreakdownStep::BaseSingleGen { .. } => {}
        }
        Ok(HierarchyNode {
            presentation: active,
            free_generators,
            step,
            children,
        })
    }

    fn enter(&mut self, depth: usize) -> Result<()> {
        if depth > self.limits.max_depth {
            return Err(SolveError::ResourceExhausted(format!(
                "hierarchy depth exceeds {}",
                self.limits.max_depth
            )));
        }
        self.stats.max_depth_reached = self.stats.max_depth_reached.max(depth);
        Ok(())
    }

    fn check_len(&mut self, w: &Word) -> Result<()> {
        self.stats.words_allocated += 1;
        if w.len() > self.limits.max_word_len {
            return Err(SolveError::ResourceExhausted(format!(
                "word length {} exceeds {}",
                w.len(),
                self.limits.max_word_len
            )));
        }
        Ok(())
    }

    fn check_span(&self, z: &ZeroCaseData) -> Result<()> {
        for c in z.columns() {
            if (c.max - c.min) as usize > self.limits.max_subscript_span {
                return Err(SolveError::ResourceExhausted(format!(
                    "subscript span {} exceeds {}",
                    c.max - c.min,
                    self.limits.max_subscript_span
                )));
            }
        }
        Ok(())
    }

    fn step(&mut self, p: &OneRelatorPresentation, choice: StepChoice) -> Result<CachedStep> {
        let key = (p.clone(), choice);
        if let Some(memo) = &self.memo {
            if let Some(hit) = memo.get(&key) {
                self.stats.memo_hits += 1;
                return Ok(hit.clone());
            }
        }
        self.stats.memo_misses += 1;
        let step = match key.1 {
            StepChoice::Zero(t) => {
                let z = rewrite_zero_case(p, t)?;
                self.check_span(&z)?;
                CachedStep::Zero(Arc::new(z))
            }
            StepChoice::Embed(a, b) => {
                let e = embed_nonzero_case(p, a, b)?;
                self.check_len(e.image_presentation().relator())?;
                CachedStep::Embed(Arc::new(e))
            }
        };
        if let Some(memo) = &mut self.memo {
            memo.insert(key, step.clone());
        }
        Ok(step)
    }

    fn zero_case(&mut self, p: &OneRelatorPresentation, t: Generator) -> Result<Arc<ZeroCaseData>> {
        match self.step(p, StepChoice::Zero(t))? {
            CachedStep::Zero(z) => Ok(z),
            CachedStep::Embed(_) => unreachable!(),
        }
    }

    fn embedding(
        &mut self,
        p: &OneRelatorPresentation,
        a: Generator,
        b: Generator,
    ) -> Result<Arc<EmbeddingData>> {
        match self.step(p, StepChoice::Embed(a, b))? {
            CachedStep::Embed(e) => Ok(e),
            CachedStep::Zero(_) => unreachable!(),
        }
    }

    /// General membership: the relator may omit generators.
    fn member(
        &mut self,
        p: &OneRelatorPresentation,
        w: &Word,
        s: &GenSet,
        depth: usize,
    ) -> Result<Option<Word>> {
        self.stats.membership_calls += 1;
        self.check_len(w)?;
        if s.len() == p.rank() {
            return Ok(Some(w.clone()));
        }
        if w.is_empty() {
            return Ok(Some(Word::identity()));
        }
        if p.is_full_support() {
            return self.member_active(p, w, s, depth);
        }

        let (k, to_old) = p.restrict_to_support();
        let mut to_new = vec![None; p.rank()];
        for (i, g) in to_old.iter().enumerate() {
            to_new[g.index()] = Some(Generator(i as u32));
        }
        let is_active = |g: Generator| to_new[g.index()].is_some();

        // free-product syllables: (in the relator's factor?, word over old ids)
        let mut syl: Vec<(bool, Word)> = Vec::new();
        for &l in w.letters() {
            let act = is_active(l.gen());
            match syl.last_mut() {
                Some((a, word)) if *a == act => word.push(l),
                _ => syl.push((act, Word::letter(l))),
            }
        }
        let to_k = |u: &Word| u.map_generators(|g| to_new[g.index()].unwrap());
        let mut trivial_cache: HashMap<Word, bool> = HashMap::new();
        loop {
            let mut hit = None;
            for (i, (act, u)) in syl.iter().enumerate() {
                if !*act {
                    continue;
                }
                let trivial = match trivial_cache.get(u) {
                    Some(&t) => t,
                    None => {
                        let t = self
                            .member_active(&k, &to_k(u), &GenSet::new(), depth)?
                            .is_some();
                        trivial_cache.insert(u.clone(), t);
                        t
                    }
                };
                if trivial {
                    hit = Some(i);
                    break;
                }
            }
            let Some(i) = hit else { break };
            syl.remove(i);
            // neighbours at i-1 and i are now both free syllables
            if i > 0 && i < syl.len() {
                let right = syl.remove(i).1;
                syl[i - 1].1.append(&right);
                self.check_len(&syl[i - 1].1)?;
                if syl[i - 1].1.is_empty() {
                    syl.remove(i - 1);
                    if i >= 2 && i - 1 < syl.len() {
                        let right = syl.remove(i - 1).1;
                        syl[i - 2].1.append(&right);
                        self.check_len(&syl[i - 2].1)?;
                    }
                }
            }
        }

        let s_k: GenSet = s.iter().filter_map(|g| to_new[g.index()]).collect();
        let mut witness = Word::identity();
        for (act, u) in &syl {
            if *act {
                match self.member_active(&k, &to_k(u), &s_k, depth)? {
                    Some(v) => witness.append(&v.map_generators(|g| to_old[g.index()])),
                    None => return Ok(None),
                }
            } else if u.letters().iter().all(|l| s.contains(&l.gen())) {
                witness.append(u);
            } else {
                return Ok(None);
            }
        }
        self.check_len(&witness)?;
        Ok(Some(witness))
    }

    /// Membership when every generator occurs in the relator.
    fn member_active(
        &mut self,
        p: &OneRelatorPresentation,
        w: &Word,
        s: &GenSet,
        depth: usize,
    ) -> Result<Option<Word>> {
        self.enter(depth)?;
        if s.len() == p.rank() {
            return Ok(Some(w.clone()));
        }
        if w.is_empty() {
            return Ok(Some(Word::identity()));
        }
        let r = p.relator();
        if s.is_empty() && !p.abelianization().admits(w) {
            return Ok(None);
        }
        if p.rank() == 1 {
            // s = ∅ here: ⟨g | g^n⟩ is cyclic of order |n|
            let n = r.exponent_sum(Generator(0));
            return Ok((w.exponent_sum(Generator(0)) % n == 0).then(Word::identity));
        }

        let zero: Vec<Generator> = p
            .alphabet()
            .generators()
            .filter(|&g| r.exponent_sum(g) == 0)
            .collect();

        if zero.is_empty() {
            // a ↦ y x^-β, b ↦ x^α with b ∈ S and a ∉ S, so that ⟨S⟩ extended by
            // the root x of b is the Magnus subgroup on the same ids.
            let (a, b) = match s.first() {
                None => (Generator(0), Generator(1)),
                Some(&b) => {
                    let a = p.alphabet().generators().find(|g| !s.contains(g)).unwrap();
                    (a, b)
                }
            };
            return self.member_via_embedding(p, w, s, a, b, depth);
        }

        if let Some(&t) = zero.iter().find(|g| s.contains(g)) {
            return self.member_with_stable(p, w, s, t, depth);
        }

        let t = zero[0];
        if w.exponent_sum(t) != 0 {
            return Ok(None);
        }
        let z = self.zero_case(p, t)?;

        // ⟨S⟩ sits inside the base after conjugating by t^c when every column
        // of S contains the subscript c.
        let common = s.iter().try_fold((i64::MIN, i64::MAX), |(lo, hi), &g| {
            let c = &z.columns()[column_index(&z, g)];
            let (lo, hi) = (lo.max(c.min), hi.min(c.max));
            (lo <= hi).then_some((lo, hi))
        });
        if let Some((lo, _)) = common {
            let c = if s.is_empty() { 0 } else { lo };
            let t_pow = Word::power_of(t, c);
            let conj = t_pow.multiply(w).multiply(&t_pow.invert());
            let q = self.britton(&z, z.to_hnn(&conj), depth)?;
            if q.t_length() > 0 {
                return Ok(None);
            }
            let s_base: GenSet = s.iter().map(|&g| z.subscripted(g, c).unwrap()).collect();
            let v = self.member(z.base(), &q.head, &s_base, depth + 1)?;
            return Ok(v.map(|v| v.map_generators(|g| z.describe(g).base)));
        }

        let mut with_t = s.clone();
        with_t.insert(t);
        if with_t.len() < p.rank() {
            // ⟨S ∪ {t}⟩ is free on S ∪ {t}: w ∈ ⟨S⟩ iff its witness avoids t
            let v = self.member_with_stable(p, w, &with_t, t, depth)?;
            return Ok(v.filter(|v| v.occurrences(t) == 0));
        }

        // S is everything but t and every generator of S has nonzero exponent
        // sum; embedding with a, b ∈ S gives a group where x ∈ S has exponent
        // sum zero.
        let mut it = s.iter().copied();
        let (a, b) = (it.next().unwrap(), it.next().unwrap());
        self.member_via_embedding(p, w, s, a, b, depth)
    }

    /// Translates through the root-adjoining embedding. Requires `b ∈ S` or `S = ∅`.
    /// Ids are reused (`y` ↔ `a`, `x` ↔ `b`), so the target subset keeps the same ids.
    fn member_via_embedding(
        &mut self,
        p: &OneRelatorPresentation,
        w: &Word,
        s: &GenSet,
        a: Generator,
        b: Generator,
        depth: usize,
    ) -> Result<Option<Word>> {
        let e = self.embedding(p, a, b)?;
        let image = e.translate(w);
        self.check_len(&image)?;
        let Some(v) = self.member(e.image_presentation(), &image, s, depth)? else {
            return Ok(None);
        };
        // back in G * <x | x^α = b>: y = a x^β, then x^{kα} = b^k
        let v = v.substitute(|g| {
            if g == a {
                Word::gen(a).multiply(&Word::power_of(b, e.beta))
            } else {
                Word::gen(g)
            }
        });
        let mut out = Word::identity();
        for (g, exp) in v.syllables() {
            if g == b {
                if exp % e.alpha != 0 {
                    return Err(SolveError::Internal(format!(
                        "root power {exp} not divisible by {}",
                        e.alpha
                    )));
                }
                out.append(&Word::power_of(b, exp / e.alpha));
            } else {
                out.append(&Word::power_of(g, exp));
            }
        }
        Ok(Some(out))
    }

    /// Membership in `⟨S⟩` with the stable letter `t ∈ S`. `⟨S⟩` is the HNN
    /// extension of `M = ⟨S-columns⟩ ≤ base` along the same shift, so a
    /// pinch-free form of `w` lies in it iff its syllables can be pushed
    /// through the stable letters one at a time: `h_0 ∈ M·A`, where `A` is
    /// the associated subgroup that may slide past `t^{e_1}`.
    fn member_with_stable(
        &mut self,
        p: &OneRelatorPresentation,
        w: &Word,
        s: &GenSet,
        t: Generator,
        depth: usize,
    ) -> Result<Option<Word>> {
        let z = self.zero_case(p, t)?;
        let parents: Vec<Generator> = s.iter().copied().filter(|&g| g != t).collect();
        let m_gens: GenSet = z.column_generators(&parents).into_iter().collect();
        let lower: GenSet = z.lower_generators().into_iter().collect();
        let upper: GenSet = z.upper_generators().into_iter().collect();

        let mut cur = self.britton(&z, z.to_hnn(w), depth)?;
        let mut witness = Word::identity();
        let mut tail = std::mem::take(&mut cur.tail).into_iter();
        let mut head = cur.head;
        loop {
            let Some((positive, next)) = tail.next() else {
                let Some(m) = self.member(z.base(), &head, &m_gens, depth + 1)? else {
                    return Ok(None);
                };
                witness.append(&z.substitute_back(&m));
                break;
            };
            let slide = if positive { &upper } else { &lower };
            let both: GenSet = m_gens.union(slide).copied().collect();
            let Some(v) = self.member(z.base(), &head, &both, depth + 1)? else {
                return Ok(None);
            };
            let split = v
                .letters()
                .iter()
                .position(|l| !m_gens.contains(&l.gen()))
                .unwrap_or(v.len());
            let (pre, rest) = v.letters().split_at(split);
            if rest.iter().any(|l| !slide.contains(&l.gen())) {
                return Ok(None);
            }
            witness.append(&z.substitute_back(&Word::reduce(pre.iter().copied())));
            witness.push(Letter::new(t, positive));
            // u t = t φ⁻¹(u) for u upper, u t⁻¹ = t⁻¹ φ(u) for u lower
            let rest = Word::reduce(rest.iter().copied());
            let moved = z
                .shift(&rest, if positive { -1 } else { 1 })
                .ok_or_else(|| SolveError::Internal("slide left its column".into()))?;
            head = moved.multiply(&next);
            self.check_len(&head)?;
        }
        self.check_len(&witness)?;
        Ok(Some(witness))
    }

    fn britton(&mut self, z: &ZeroCaseData, q: HnnWord, depth: usize) -> Result<HnnWord> {
        let lower: GenSet = z.lower_generators().into_iter().collect();
        let upper: GenSet = z.upper_generators().into_iter().collect();
        let mut out = HnnWord {
            head: q.head,
            tail: Vec::with_capacity(q.tail.len()),
        };
        for (positive, w) in q.tail {
            if let Some((prev, h)) = out.tail.last() {
                if *prev != positive {
                    // t h t⁻¹ with h lower ↦ shift up; t⁻¹ h t with h upper ↦ shift down
                    let (gens, by) = if *prev { (&lower, 1) } else { (&upper, -1) };
                    if let Some(x) = self.member(z.base(), h, gens, depth + 1)? {
                        let shifted = z
                            .shift(&x, by)
                            .ok_or_else(|| SolveError::Internal("pinch left its column".into()))?;
                        out.tail.pop();
                        let target = match out.tail.last_mut() {
                            Some((_, u)) => u,
                            None => &mut out.head,
                        };
                        target.append(&shifted);
                        target.append(&w);
                        self.check_len(target)?;
                        continue;
                    }
                }
            }
            out.tail.push((positive, w));
        }
        Ok(out)
    }
}

fn column_index(z: &ZeroCaseData, g: Generator) -> usize {
    z.columns()
        .iter()
        .position(|c| c.base == g)
        .expect("non-stable generator has a column")
}

fn check_alphabet(p: &OneRelatorPresentation, w: &Word) -> Result<()> {
    match w.max_generator() {
        Some(g) if !p.alphabet().contains(g) => Err(SolveError::UnknownGenerator(g.0)),
        _ => Ok(()),
    }
}

/// `true` iff `r` lies in the normal closure of `s` in the free group on `alphabet`.
pub fn is_root(solver: &mut Solver, s: &Word, r: &Word, alphabet: &Alphabet) -> Result<bool> {
    let p = OneRelatorPresentation::new(alphabet.clone(), s.clone())?;
    solver.is_trivial(&p, r)
}

/// One node of the hierarchy: the presentation after splitting off free
/// generators, its classification, and the presentations it descends to.
#[derive(Clone, Debug)]
pub struct HierarchyNode {
    pub presentation: OneRelatorPresentation,
    pub free_generators: Vec<String>,
    pub step: BreakdownStep,
    pub children: Vec<HierarchyNode>,
}

impl HierarchyNode {
    pub fn case_name(&self) -> &'static str {
        match self.step {
            BreakdownStep::BaseFree => "base-free",
            BreakdownStep::BaseSingleGen { .. } => "base-single-generator",
            BreakdownStep::ZeroCase(_) => "zero-exponent",
            BreakdownStep::NonZeroCase(_) => "embedding",
        }
    }

    /// Number of zero-exponent descents on the longest branch.
    pub fn descent_depth(&self) -> usize {
        let below = self
            .children
            .iter()
            .map(|c| c.descent_depth())
            .max()
            .unwrap_or(0);
        below + usize::from(matches!(self.step, BreakdownStep::ZeroCase(_)))
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(|c| c.node_count()).sum::<usize>()
    }

    /// Pre-order traversal.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a HierarchyNode)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }
}

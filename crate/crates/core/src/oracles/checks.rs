//! Desk-scale property suites over the solver, each producing a line report.

use std::fmt;
use std::thread;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::presentation::OneRelatorPresentation;
use crate::solver::{is_root, SolveError, Solver, SolverLimits, Verdict};
use crate::words::{cyclically_equal_up_to_inversion, Alphabet, Generator, Word};

use super::primitive::is_primitive_rank2;
use super::psl2::{free_at_length, psl2_eval, ProjectiveMatrix, M_A, M_B};
use super::sample::{
    all_cyclically_reduced_words, random_cyclically_reduced_word, random_reduced_word,
};
use super::smith::smith_invariants;

pub const DEFAULT_SEED: u64 = 0x6d61_676e_7573;

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub name: String,
    pub lines: Vec<String>,
    pub checked: usize,
    pub violations: Vec<String>,
    pub exhausted: Vec<String>,
}

impl CheckReport {
    fn new(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.exhausted.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check {}", self.name)?;
        for l in &self.lines {
            writeln!(f, "  {l}")?;
        }
        writeln!(f, "  checked: {}", self.checked)?;
        writeln!(f, "  violations: {}", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "    {v}")?;
        }
        writeln!(f, "  resource-exhausted: {}", self.exhausted.len())?;
        for e in &self.exhausted {
            writeln!(f, "    {e}")?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Runs `f` on each item with one solver per shard; results keep input order.
fn sharded<T: Sync, U: Send>(
    items: &[T],
    jobs: usize,
    limits: SolverLimits,
    f: impl Fn(&mut Solver, &T) -> U + Sync,
) -> Vec<U> {
    let jobs = jobs.max(1);
    let chunk = items.len().div_ceil(jobs).max(1);
    thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                scope.spawn(move || {
                    let mut solver = Solver::new(limits);
                    part.iter().map(|x| f(&mut solver, x)).collect::<Vec<U>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("check shard panicked"))
            .collect()
    })
}

/// `None` if the membership verdict is consistent: a witness must use only
/// generators of `subset` and equal `w` in the group.
pub fn witness_violation(
    solver: &mut Solver,
    p: &OneRelatorPresentation,
    w: &Word,
    subset: &[Generator],
    verdict: &Verdict,
) -> Result<Option<String>, SolveError> {
    let Verdict::Member(wit) = verdict else {
        return Ok(None);
    };
    let a = p.alphabet();
    let show = |x: &Word| a.format_word(x);
    if !wit.expression.support().iter().all(|g| subset.contains(g)) {
        return Ok(Some(format!(
            "witness {} for {} leaves the subset in <{}>",
            show(&wit.expression),
            show(w),
            show(p.relator())
        )));
    }
    let diff = w.multiply(&wit.expression.invert());
    if !solver.is_trivial(p, &diff)? {
        return Ok(Some(format!(
            "witness {} differs from {} in <{}>",
            show(&wit.expression),
            show(w),
            show(p.relator())
        )));
    }
    Ok(None)
}

/// Mutual roots are cyclically equal up to inversion.
pub fn check_conjugacy_theorem(max_len: usize, limits: SolverLimits, jobs: usize) -> CheckReport {
    let mut report = CheckReport::new("conjugacy");
    let alphabet = Alphabet::letters(2);
    let words = all_cyclically_reduced_words(2, max_len);
    let n = words.len();
    // rows[i][j]: is words[j] a consequence of words[i]
    let rows = sharded(&words, jobs, limits, |solver, s| {
        words
            .iter()
            .map(|r| is_root(solver, s, r, &alphabet))
            .collect::<Vec<_>>()
    });
    let mut mutual = 0;
    for i in 0..n {
        for j in i..n {
            report.checked += 1;
            let (fwd, back) = (&rows[i][j], &rows[j][i]);
            let pair = || {
                format!(
                    "({}, {})",
                    alphabet.format_word(&words[i]),
                    alphabet.format_word(&words[j])
                )
            };
            match (fwd, back) {
                (Err(e), _) | (_, Err(e)) => report.exhausted.push(format!("{}: {e}", pair())),
                (Ok(true), Ok(true)) => {
                    mutual += 1;
                    if !cyclically_equal_up_to_inversion(&words[i], &words[j]) {
                        report
                            .violations
                            .push(format!("{} are mutual roots", pair()));
                    }
                }
                _ => {}
            }
        }
    }
    report.lines.push(format!(
        "words: {n} cyclically reduced over {{a,b}}, length <= {max_len}"
    ));
    report
        .lines
        .push(format!("mutually rooted pairs: {mutual}"));
    report
}

/// Roots of `abAB` are primitive or conjugate to `(abAB)^{±1}`.
pub fn check_commutator_roots(max_len: usize, limits: SolverLimits) -> CheckReport {
    let mut report = CheckReport::new("commutator-roots");
    let alphabet = Alphabet::letters(2);
    let (a, b) = (Word::gen(Generator(0)), Word::gen(Generator(1)));
    let comm = a.multiply(&b).multiply(&a.invert()).multiply(&b.invert());
    let mut solver = Solver::new(limits);
    let mut roots = 0;
    for s in all_cyclically_reduced_words(2, max_len) {
        report.checked += 1;
        match is_root(&mut solver, &s, &comm, &alphabet) {
            Err(e) => report
                .exhausted
                .push(format!("{}: {e}", alphabet.format_word(&s))),
            Ok(false) => {}
            Ok(true) => {
                roots += 1;
                if !is_primitive_rank2(&s) && !cyclically_equal_up_to_inversion(&s, &comm) {
                    report.violations.push(format!(
                        "{} is a root but neither primitive nor conjugate",
                        alphabet.format_word(&s)
                    ));
                }
            }
        }
    }
    report.lines.push(format!("roots found: {roots}"));
    report
}

/// Words over `{a, b}` stay free in `⟨a, b, c | r⟩` when `r` involves `c`.
pub fn check_freiheitssatz(
    seed: u64,
    relators: usize,
    words_per_relator: usize,
    limits: SolverLimits,
    jobs: usize,
) -> CheckReport {
    let mut report = CheckReport::new("freiheitssatz");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(Word, Vec<Word>)> = (0..relators)
        .map(|_| {
            let r = random_cyclically_reduced_word(&mut rng, 3, 3, 6, |w| w.support().len() == 3);
            let ws = (0..words_per_relator)
                .map(|_| random_reduced_word(&mut rng, 2, 10))
                .collect();
            (r, ws)
        })
        .collect();
    let alphabet = Alphabet::letters(3);
    let basis = [Generator(0), Generator(1)];
    let results = sharded(&cases, jobs, limits, |solver, (r, ws)| {
        let p = OneRelatorPresentation::new(alphabet.clone(), r.clone()).expect("nonempty relator");
        let mut violations = Vec::new();
        let mut exhausted = Vec::new();
        for w in ws {
            let outcome = (|| -> Result<Option<String>, SolveError> {
                let trivial = solver.is_trivial(&p, w)?;
                if trivial != w.is_empty() {
                    return Ok(Some(format!("solve says trivial={trivial}")));
                }
                let v = solver.magnus_membership(&p, w, &basis)?;
                match &v {
                    Verdict::Member(wit) if wit.expression == *w => {}
                    _ => return Ok(Some("not its own unique witness in <a,b>".into())),
                }
                witness_violation(solver, &p, w, &basis, &v)
            })();
            let tag = || format!("<{}> {}", alphabet.format_word(r), alphabet.format_word(w));
            match outcome {
                Ok(None) => {}
                Ok(Some(msg)) => violations.push(format!("{}: {msg}", tag())),
                Err(e) => exhausted.push(format!("{}: {e}", tag())),
            }
        }
        (violations, exhausted)
    });
    for (v, e) in results {
        report.violations.extend(v);
        report.exhausted.extend(e);
    }
    report.checked = relators * words_per_relator;
    report.lines.push(format!(
        "seed {seed}: {relators} relators over {{a,b,c}} of length <= 6, {words_per_relator} words over {{a,b}} of length <= 10 each"
    ));
    report
}

/// Membership verdicts carry valid witnesses, over a fixed set of groups and
/// seeded random words and subsets.
pub fn check_witnesses(seed: u64, samples: usize, limits: SolverLimits) -> CheckReport {
    let mut report = CheckReport::new("witnesses");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups: [(usize, &[i32]); 6] = [
        (2, &[1, 2, -1, -2]),
        (2, &[1, 2, -1, -2, -2]),
        (2, &[1, 2, 1, -2]),
        (2, &[1, 1, -2, -2, -2]),
        (3, &[1, 2, 3]),
        (3, &[1, 2, -1, 3, 3, -2]),
    ];
    let mut solver = Solver::new(limits);
    let mut members = 0;
    for (rank, packed) in groups {
        let alphabet = Alphabet::letters(rank);
        let r = Word::reduce(
            packed
                .iter()
                .map(|&x| crate::words::Letter::new(Generator(x.unsigned_abs() - 1), x > 0)),
        );
        let p = OneRelatorPresentation::new(alphabet.clone(), r).expect("valid relator");
        for _ in 0..samples {
            let mask = rand::Rng::random_range(&mut rng, 0..(1u32 << rank));
            let subset: Vec<Generator> = (0..rank as u32)
                .filter(|i| mask >> i & 1 == 1)
                .map(Generator)
                .collect();
            // bias towards members: a product of subset letters, conjugated by a relator copy
            let w = if subset.is_empty() {
                random_reduced_word(&mut rng, rank, 8)
            } else {
                let inner = random_reduced_word(&mut rng, subset.len(), 6)
                    .map_generators(|g| subset[g.index()]);
                let pad = random_reduced_word(&mut rng, rank, 3);
                p.relator().conjugate_by(&pad).multiply(&inner)
            };
            report.checked += 1;
            let outcome = solver.magnus_membership(&p, &w, &subset).and_then(|v| {
                members += usize::from(matches!(v, Verdict::Member(_)));
                witness_violation(&mut solver, &p, &w, &subset, &v)
            });
            match outcome {
                Ok(None) => {}
                Ok(Some(msg)) => report.violations.push(msg),
                Err(e) => report
                    .exhausted
                    .push(format!("{}: {e}", alphabet.format_word(&w))),
            }
        }
    }
    report
        .lines
        .push(format!("seed {seed}: members with witnesses: {members}"));
    report
}

fn is_rotation(u: &Word, v: &Word) -> bool {
    u.len() == v.len() && (0..u.len().max(1)).any(|k| u.rotate(k) == *v)
}

/// Every node of every hierarchy over `rank` generators with relator length
/// `≤ max_len`: zero-exponent children are strictly shorter and substitute
/// back to a cyclic permutation of the parent relator, embedding images have
/// exponent sum zero in the new letter, and the number of zero-exponent
/// descents is at most `|r|`.
pub fn check_hierarchy(rank: usize, max_len: usize, limits: SolverLimits) -> CheckReport {
    use crate::breakdown::BreakdownStep;

    let mut report = CheckReport::new("hierarchy");
    let alphabet = Alphabet::letters(rank);
    let mut solver = Solver::new(limits);
    let (mut nodes, mut deepest) = (0, 0);
    for r in all_cyclically_reduced_words(rank, max_len) {
        report.checked += 1;
        let p = OneRelatorPresentation::new(alphabet.clone(), r.clone()).expect("nonempty relator");
        let tree = match solver.hierarchy_tree(&p) {
            Ok(t) => t,
            Err(e) => {
                report
                    .exhausted
                    .push(format!("{}: {e}", alphabet.format_word(&r)));
                continue;
            }
        };
        let mut bad = Vec::new();
        tree.walk(&mut |node| {
            let parent = node.presentation.relator();
            let show = || node.presentation.alphabet().format_word(parent);
            match &node.step {
                BreakdownStep::ZeroCase(z) => {
                    let child = z.base().relator();
                    if child.len() >= parent.len() {
                        bad.push(format!("{}: child relator not shorter", show()));
                    }
                    if !is_rotation(&z.substitute_back(child).cyclic_core(), parent) {
                        bad.push(format!("{}: substitution does not round-trip", show()));
                    }
                }
                BreakdownStep::NonZeroCase(e) => {
                    let image = e.image_presentation().relator();
                    if image.exponent_sum(e.x()) != 0 {
                        bad.push(format!(
                            "{}: embedding image has nonzero exponent sum",
                            show()
                        ));
                    }
                }
                _ => {}
            }
        });
        if tree.descent_depth() > r.len() {
            bad.push(format!(
                "{}: depth {} exceeds length",
                alphabet.format_word(&r),
                tree.descent_depth()
            ));
        }
        nodes += tree.node_count();
        deepest = deepest.max(tree.descent_depth());
        report.violations.extend(bad);
    }
    report.lines.push(format!(
        "relators over {rank} generators of length <= {max_len}; {nodes} nodes, deepest descent {deepest}"
    ));
    report
}

/// `PSL₂(ℤ) = ⟨a, b | a², b³⟩`: orders of the generators, the commutator
/// pair, freeness of the commutator subgroup at desk scale and the order-6
/// abelianization.
pub fn check_modular_group(free_len: usize) -> CheckReport {
    let mut report = CheckReport::new("modular-group");
    let mut check = |ok: bool, what: String| {
        report.checked += 1;
        report
            .lines
            .push(format!("{} {what}", if ok { "ok  " } else { "FAIL" }));
        if !ok {
            report.violations.push(what);
        }
    };
    let (a, b) = (Generator(0), Generator(1));
    let w = |gs: &[(Generator, bool)]| {
        Word::reduce(gs.iter().map(|&(g, pos)| crate::words::Letter::new(g, pos)))
    };
    check(
        psl2_eval(&Word::power_of(a, 2)).is_identity()
            && psl2_eval(&Word::power_of(b, 3)).is_identity(),
        format!(
            "M_a^2 = M_b^3 = 1 with M_a = {} and M_b = {}",
            M_A.mobius(),
            M_B.mobius()
        ),
    );
    let beta0 = psl2_eval(&w(&[(a, true), (b, true), (a, false), (b, false)]));
    let beta0_inv = psl2_eval(&w(&[(b, true), (a, true), (b, false), (a, false)]));
    let expected = [
        ProjectiveMatrix::new(2, 1, 1, 1).expect("det 1"),
        ProjectiveMatrix::new(1, -1, -1, 2).expect("det 1"),
    ];
    let pair_ok = (beta0 == expected[0] && beta0_inv == expected[1])
        || (beta0 == expected[1] && beta0_inv == expected[0]);
    check(
        pair_ok,
        format!(
            "{{abAB, baBA}} evaluate to {{{}, {}}}",
            beta0.mobius(),
            beta0_inv.mobius()
        ),
    );
    check(
        beta0.mul(&beta0_inv).is_identity(),
        "abAB and baBA are mutually inverse".into(),
    );
    let beta1 = psl2_eval(&w(&[(a, true), (b, false), (a, false), (b, true)]));
    check(
        free_at_length(beta0, beta1, free_len),
        format!("no relation of length <= {free_len} between abAB and aBAb"),
    );
    let inv = smith_invariants(&[vec![2, 0], vec![0, 3]]);
    check(
        inv == vec![1, 6],
        format!("abelianization invariants {inv:?}: cyclic of order 6"),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let limits = SolverLimits::default();
        let r = check_conjugacy_theorem(2, limits, 2);
        assert!(r.passed(), "{r}");
        assert!(check_commutator_roots(3, limits).passed());
        assert!(check_freiheitssatz(1, 5, 5, limits, 2).passed());
        assert!(check_witnesses(1, 10, limits).passed());
        let h = check_hierarchy(2, 4, limits);
        assert!(h.passed(), "{h}");
        let m = check_modular_group(6);
        assert!(m.passed(), "{m}");
        assert!(m.to_string().ends_with("PASS"));
    }

    #[test]
    fn sharding_is_deterministic() {
        let a = check_conjugacy_theorem(3, SolverLimits::default(), 1);
        let b = check_conjugacy_theorem(3, SolverLimits::default(), 4);
        assert_eq!(a.to_string(), b.to_string());
    }
}

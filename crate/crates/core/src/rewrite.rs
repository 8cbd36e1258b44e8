//! The rewriting system on `{c} ∪ blocks` whose normal forms are exactly the
//! Jones normal forms.
//!
//! Seven length-two rules, each oriented left to right:
//!
//! | id | left side          | condition                       | right side            |
//! |----|--------------------|---------------------------------|-----------------------|
//! | 1  | `h[j,i] h[l,k]`    | `i ≥ l+2`                       | `h[l,k] h[j,i]`       |
//! | 2  | `h[j,i] h[l,k]`    | `j ≥ k`, `|i−l| = 1`            | `h[j,k]`              |
//! | 3  | `h[j,i] h[i,k]`    |                                 | `c h[j,k]`            |
//! | 4  | `h[j,i] c`         |                                 | `c h[j,i]`            |
//! | 5  | `h[j,i] h[l,k]`    | `i+2 ≤ l`, `j ≥ l`, `i ≥ k`     | `h[l−2,k] h[j,i+2]`   |
//! | 6  | `h[j,i] h[l,k]`    | `i+2 ≤ l`, `j < l`, `i ≥ k`     | `h[j,k] h[l,i+2]`     |
//! | 7  | `h[j,i] h[l,k]`    | `i+2 ≤ l`, `j ≥ l`, `i < k`     | `h[l−2,i] h[j,k]`     |

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::words::{as_jnf, chi_of, Color, Jnf, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rewriting did not terminate within {bound} steps")]
    FuelExhausted { bound: u64 },
}

/// A matched left-hand side and its right-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleMatch {
    pub rule: u8,
    rhs: [Letter; 2],
    rhs_len: u8,
}

impl RuleMatch {
    fn one(rule: u8, x: Letter) -> Self {
        RuleMatch {
            rule,
            rhs: [x, Letter::C],
            rhs_len: 1,
        }
    }

    fn two(rule: u8, x: Letter, y: Letter) -> Self {
        RuleMatch {
            rule,
            rhs: [x, y],
            rhs_len: 2,
        }
    }

    pub fn replacement(&self) -> &[Letter] {
        &self.rhs[..self.rhs_len as usize]
    }
}

/// Rule applicable to the adjacent pair `x y`, if any.
pub fn match_pair(x: Letter, y: Letter) -> Option<RuleMatch> {
    use Letter::{Block, C};
    let (j, i) = match x {
        C => return None,
        Block(j, i) => (j, i),
    };
    let (l, k) = match y {
        C => return Some(RuleMatch::two(4, C, x)),
        Block(l, k) => (l, k),
    };
    if i >= l + 2 {
        return Some(RuleMatch::two(1, y, x));
    }
    if j >= k && i.abs_diff(l) == 1 {
        return Some(RuleMatch::one(2, Block(j, k)));
    }
    if i == l {
        return Some(RuleMatch::two(3, C, Block(j, k)));
    }
    if i + 2 <= l {
        if j >= l && i >= k {
            return Some(RuleMatch::two(5, Block(l - 2, k), Block(j, i + 2)));
        }
        if j < l && i >= k {
            return Some(RuleMatch::two(6, Block(j, k), Block(l, i + 2)));
        }
        if j >= l && i < k {
            return Some(RuleMatch::two(7, Block(l - 2, i), Block(j, k)));
        }
    }
    None
}

/// Rule whose left-hand side starts at `position`.
pub fn applicable_rule(word: &Word, position: usize) -> Option<RuleMatch> {
    let letters = word.letters();
    if position + 1 >= letters.len() {
        return None;
    }
    match_pair(letters[position], letters[position + 1])
}

/// One logged rewrite `before => after` at `position`, with the
/// characteristic number of the whole word on either side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: u8,
    pub position: usize,
    pub before: Word,
    pub after: Word,
    pub chi_before: i64,
    pub chi_after: i64,
}

impl RewriteStep {
    pub fn chi_delta(&self) -> i64 {
        self.chi_after - self.chi_before
    }
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rule={} pos={} {} => {} chi:{}->{}",
            self.rule, self.position, self.before, self.after, self.chi_before, self.chi_after
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationTrace {
    pub input: Word,
    pub steps: Vec<RewriteStep>,
    pub output: Jnf,
}

impl NormalizationTrace {
    /// Re-applies the logged steps to the input; `true` if they land on the output.
    pub fn replays(&self) -> bool {
        let mut letters = self.input.letters().to_vec();
        for step in &self.steps {
            let p = step.position;
            let end = p + step.before.len();
            if end > letters.len() || letters[p..end] != *step.before.letters() {
                return false;
            }
            letters.splice(p..end, step.after.letters().iter().copied());
        }
        Word::new(letters) == self.output.to_word()
    }
}

impl fmt::Display for NormalizationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            writeln!(f, "{step}")?;
        }
        write!(f, "{}", self.output)
    }
}

/// Picks which redex to rewrite next.
pub trait Strategy {
    /// `positions` is non-empty and sorted; returns an index into it.
    fn choose(&mut self, positions: &[usize]) -> usize;

    /// Leftmost strategies only need the first redex.
    fn leftmost_only(&self) -> bool {
        false
    }
}

/// Leftmost redex first; ties cannot occur since at most one rule matches a pair.
#[derive(Clone, Copy, Debug, Default)]
pub struct Leftmost;

impl Strategy for Leftmost {
    fn choose(&mut self, _positions: &[usize]) -> usize {
        0
    }

    fn leftmost_only(&self) -> bool {
        true
    }
}

/// Uniformly random redex from a seeded generator.
#[derive(Clone, Debug)]
pub struct RandomRedex(ChaCha8Rng);

impl RandomRedex {
    pub fn new(seed: u64) -> Self {
        RandomRedex(ChaCha8Rng::seed_from_u64(seed))
    }
}

impl Strategy for RandomRedex {
    fn choose(&mut self, positions: &[usize]) -> usize {
        self.0.random_range(0..positions.len())
    }
}

/// `64·(len+1)³` steps.
pub fn fuel_bound(len: usize) -> u64 {
    let l = len as u64 + 1;
    64 * l * l * l
}

#[derive(Clone, Copy)]
struct Counters {
    c: i64,
    blue: i64,
    red: i64,
}

impl Counters {
    fn of(letters: &[Letter]) -> Self {
        let r = chi_of(letters);
        Counters {
            c: r.c_count as i64,
            blue: r.blue as i64,
            red: r.red as i64,
        }
    }

    fn add(&mut self, letters: &[Letter], sign: i64) {
        for l in letters {
            match l.color() {
                None => self.c += sign,
                Some(Color::Blue) => self.blue += sign,
                Some(Color::Red) => self.red += sign,
                Some(Color::White) => {}
            }
        }
    }

    fn chi(&self) -> i64 {
        self.c - (self.blue - self.red).abs()
    }
}

fn run<S, F>(word: &Word, strategy: &mut S, mut observe: F) -> Result<Jnf, RewriteError>
where
    S: Strategy + ?Sized,
    F: FnMut(usize, &RuleMatch, &[Letter], i64, i64),
{
    let mut letters = word.letters().to_vec();
    let bound = fuel_bound(letters.len());
    let mut counters = Counters::of(&letters);
    let mut steps = 0u64;
    let mut positions = Vec::new();
    // Pairs left of `scan_from` are known to be irreducible under Leftmost.
    let mut scan_from = 0usize;
    loop {
        let pick = if strategy.leftmost_only() {
            (scan_from..letters.len().saturating_sub(1))
                .find_map(|p| match_pair(letters[p], letters[p + 1]).map(|m| (p, m)))
        } else {
            positions.clear();
            positions.extend(
                (0..letters.len().saturating_sub(1))
                    .filter(|&p| match_pair(letters[p], letters[p + 1]).is_some()),
            );
            if positions.is_empty() {
                None
            } else {
                let p = positions[strategy.choose(&positions)];
                match_pair(letters[p], letters[p + 1]).map(|m| (p, m))
            }
        };
        let Some((p, m)) = pick else { break };
        steps += 1;
        if steps > bound {
            return Err(RewriteError::FuelExhausted { bound });
        }
        let chi_before = counters.chi();
        counters.add(&letters[p..p + 2], -1);
        counters.add(m.replacement(), 1);
        let chi_after = counters.chi();
        observe(p, &m, &letters[p..p + 2], chi_before, chi_after);
        letters.splice(p..p + 2, m.replacement().iter().copied());
        scan_from = p.saturating_sub(1);
    }
    Ok(as_jnf(&Word::new(letters)).expect("irreducible words are Jones normal forms"))
}

/// Normal form under the leftmost strategy, without a log.
pub fn normal_form(word: &Word) -> Result<Jnf, RewriteError> {
    run(word, &mut Leftmost, |_, _, _, _, _| {})
}

/// Leftmost normalization with a full step log.
pub fn normalize(word: &Word) -> Result<NormalizationTrace, RewriteError> {
    normalize_with(word, &mut Leftmost)
}

pub fn normalize_with<S: Strategy + ?Sized>(
    word: &Word,
    strategy: &mut S,
) -> Result<NormalizationTrace, RewriteError> {
    let mut steps = Vec::new();
    let output = run(
        word,
        strategy,
        |position, m, before, chi_before, chi_after| {
            steps.push(RewriteStep {
                rule: m.rule,
                position,
                before: Word::new(before.to_vec()),
                after: Word::new(m.replacement().to_vec()),
                chi_before,
                chi_after,
            })
        },
    )?;
    Ok(NormalizationTrace {
        input: word.clone(),
        steps,
        output,
    })
}

pub fn equal_in_kn(w1: &Word, w2: &Word) -> Result<bool, RewriteError> {
    Ok(normal_form(w1)? == normal_form(w2)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub input: Word,
    pub leftmost: Jnf,
    pub random: Jnf,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub trials: usize,
    pub divergences: Vec<Divergence>,
    /// Steps whose χ change fell outside `{0, 2}`.
    pub chi_violations: Vec<RewriteStep>,
    pub steps_checked: usize,
    pub max_steps_leftmost: usize,
    pub max_steps_random: usize,
}

impl ConfluenceReport {
    pub fn is_clean(&self) -> bool {
        self.divergences.is_empty() && self.chi_violations.is_empty()
    }

    /// Normalizes `word` under both strategies and records the outcome.
    pub fn check(&mut self, word: &Word, seed: u64) -> Result<(), RewriteError> {
        let left = normalize(word)?;
        let random = normalize_with(word, &mut RandomRedex::new(seed))?;
        self.trials += 1;
        self.max_steps_leftmost = self.max_steps_leftmost.max(left.steps.len());
        self.max_steps_random = self.max_steps_random.max(random.steps.len());
        for step in left.steps.iter().chain(&random.steps) {
            self.steps_checked += 1;
            if !matches!(step.chi_delta(), 0 | 2) {
                self.chi_violations.push(step.clone());
            }
        }
        if left.output != random.output {
            self.divergences.push(Divergence {
                input: word.clone(),
                leftmost: left.output,
                random: random.output,
            });
        }
        Ok(())
    }
}

/// Per-trial seed derived from the run seed.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Random word over `{c} ∪ blocks` of degree `n`, length in `0..=max_len`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, n: usize, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| {
            if n < 2 || rng.random_ratio(1, 6) {
                Letter::C
            } else {
                let j = rng.random_range(1..n);
                // Favor singletons so long words resemble generator words.
                let i = if rng.random_bool(0.5) {
                    j
                } else {
                    rng.random_range(1..=j)
                };
                Letter::Block(j, i)
            }
        })
        .collect()
}

/// Normalizes `trials` random words under two strategies and compares.
pub fn fuzz_confluence(
    n: usize,
    trials: usize,
    max_len: usize,
    seed: u64,
) -> Result<ConfluenceReport, RewriteError> {
    let mut report = ConfluenceReport::default();
    for t in 0..trials as u64 {
        let s = trial_seed(seed, t);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let word = random_word(&mut rng, n, max_len);
        report.check(&word, s.rotate_left(17))?;
    }
    Ok(report)
}

/// Exhaustive variant over every word of length `≤ max_len` in `alphabet`.
pub fn exhaustive_confluence(
    alphabet: &[Letter],
    max_len: usize,
    seed: u64,
) -> Result<ConfluenceReport, RewriteError> {
    let mut report = ConfluenceReport::default();
    for (t, word) in crate::words::all_words(alphabet, max_len).enumerate() {
        report.check(&word, trial_seed(seed, t as u64))?;
    }
    Ok(report)
}

/// Compact summary line, e.g. for CLI output.
pub fn summary(report: &ConfluenceReport) -> String {
    alloc::format!(
        "trials={} divergences={} chi_violations={} steps={} max_steps={}/{}",
        report.trials,
        report.divergences.len(),
        report.chi_violations.len(),
        report.steps_checked,
        report.max_steps_leftmost,
        report.max_steps_random
    )
}

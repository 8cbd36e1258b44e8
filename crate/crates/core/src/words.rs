//! Words over the block alphabet `{c} ∪ {h[j,i] : j ≥ i}`.
//!
//! A [`Word`] is the rewriting substrate; a [`Jnf`] is the canonical shape
//! `c^ℓ h[b₁,a₁]…h[b_k,a_k]` with both index sequences strictly increasing.
//! Inverse blocks `h[i,j]` (`i < j`) only exist at the text level and are
//! expanded into singletons by [`parse`].

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// One letter of the internal alphabet.
///
/// `Block(j, i)` stands for `h_j h_{j-1} … h_i` and requires `j ≥ i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    C,
    Block(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Blue,
    Red,
}

/// Color of the block `h[j,i]`, determined by the parity of its endpoints.
pub fn block_color(j: usize, i: usize) -> Color {
    match (j % 2, i % 2) {
        (1, 1) => Color::Blue,
        (0, 0) => Color::Red,
        _ => Color::White,
    }
}

impl Letter {
    /// Singleton block `h_i`.
    pub fn h(i: usize) -> Self {
        Letter::Block(i, i)
    }

    /// `None` for the scalar `c`.
    pub fn color(self) -> Option<Color> {
        match self {
            Letter::C => None,
            Letter::Block(j, i) => Some(block_color(j, i)),
        }
    }

    fn check(self, n: usize) -> Result<(), WordError> {
        match self {
            Letter::C => Ok(()),
            Letter::Block(j, i) => {
                if j < i {
                    return Err(WordError::Descending { j, i });
                }
                for index in [i, j] {
                    if index == 0 || index >= n {
                        return Err(WordError::IndexOutOfRange { index, n });
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::C => f.write_str("c"),
            Letter::Block(j, i) => write!(f, "h[{j},{i}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("index {index} out of range [1, {}] for degree {n}", n.saturating_sub(1))]
    IndexOutOfRange { index: usize, n: usize },
    #[error("block h[{j},{i}] is not descending")]
    Descending { j: usize, i: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at token {position}: {token:?}")]
    Syntax { position: usize, token: String },
    #[error("`1` must be the only token of a word")]
    MixedIdentity,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A finite sequence of letters; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Builds a word and checks every index against degree `n`.
    pub fn checked(letters: Vec<Letter>, n: usize) -> Result<Self, WordError> {
        let w = Word(letters);
        w.check(n)?;
        Ok(w)
    }

    /// Word `h_{i_1} h_{i_2} …` over the original generators.
    pub fn from_generators(indices: &[usize]) -> Self {
        Word(indices.iter().map(|&i| Letter::h(i)).collect())
    }

    pub fn check(&self, n: usize) -> Result<(), WordError> {
        self.0.iter().try_for_each(|l| l.check(n))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Largest strand index used, or 0 for words without blocks.
    pub fn max_index(&self) -> usize {
        self.0
            .iter()
            .map(|l| match l {
                Letter::C => 0,
                Letter::Block(j, _) => *j,
            })
            .max()
            .unwrap_or(0)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, letter) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// Canonical text of a word; `parse(&render(w), n) == w`.
pub fn render(word: &Word) -> String {
    use alloc::string::ToString;
    word.to_string()
}

/// Like [`render`], but writes each run `h_i h_{i+1} … h_k` (k > i) as the
/// inverse block `h[i,k]`. Parses back to the same word.
pub fn render_compact(word: &Word) -> String {
    use alloc::string::ToString;
    let letters = word.letters();
    if letters.is_empty() {
        return "1".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut k = 0;
    while k < letters.len() {
        if let Letter::Block(i, j) = letters[k] {
            if i == j {
                let mut end = k;
                while end + 1 < letters.len() && letters[end + 1] == Letter::h(i + end + 1 - k) {
                    end += 1;
                }
                if end > k {
                    parts.push(alloc::format!("h[{},{}]", i, i + end - k));
                    k = end + 1;
                    continue;
                }
            }
        }
        parts.push(letters[k].to_string());
        k += 1;
    }
    parts.join(" ")
}

/// Parses the whitespace-separated word grammar
/// `word := "1" | token+`, `token := "c" | "h" INT | "h[" INT "," INT "]"`.
pub fn parse(text: &str, n: usize) -> Result<Word, ParseError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() || tokens == ["1"] {
        return Ok(Word::identity());
    }
    let mut letters = Vec::new();
    for (position, token) in tokens.iter().enumerate() {
        let syntax = || ParseError::Syntax {
            position,
            token: String::from(*token),
        };
        if *token == "1" {
            return Err(ParseError::MixedIdentity);
        }
        if *token == "c" {
            letters.push(Letter::C);
            continue;
        }
        let rest = token.strip_prefix('h').ok_or_else(syntax)?;
        if let Some(inner) = rest.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(syntax)?;
            let (x, y) = inner.split_once(',').ok_or_else(syntax)?;
            let x = parse_index(x).ok_or_else(syntax)?;
            let y = parse_index(y).ok_or_else(syntax)?;
            if x >= y {
                letters.push(Letter::Block(x, y));
            } else {
                letters.extend((x..=y).map(Letter::h));
            }
        } else {
            let i = parse_index(rest).ok_or_else(syntax)?;
            letters.push(Letter::h(i));
        }
    }
    Ok(Word::checked(letters, n)?)
}

fn parse_index(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Letter counts behind the characteristic number.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ChiReport {
    pub c_count: usize,
    pub blue: usize,
    pub red: usize,
    pub chi: i64,
}

impl ChiReport {
    pub fn from_counts(c_count: usize, blue: usize, red: usize) -> Self {
        let chi = c_count as i64 - (blue as i64 - red as i64).abs();
        ChiReport {
            c_count,
            blue,
            red,
            chi,
        }
    }
}

/// `χ(w) = #c − |#blue − #red|`.
pub fn chi(word: &Word) -> ChiReport {
    chi_of(word.letters())
}

pub(crate) fn chi_of(letters: &[Letter]) -> ChiReport {
    let (mut c, mut blue, mut red) = (0, 0, 0);
    for l in letters {
        match l.color() {
            None => c += 1,
            Some(Color::Blue) => blue += 1,
            Some(Color::Red) => red += 1,
            Some(Color::White) => {}
        }
    }
    ChiReport::from_counts(c, blue, red)
}

/// Jones normal form `c^ell h[b₁,a₁]…h[b_k,a_k]`; `blocks` holds the `(b, a)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Jnf {
    pub ell: usize,
    pub blocks: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum JnfError {
    #[error("c at position {0} follows a block")]
    ScalarAfterBlock(usize),
    #[error("lower indices not increasing at position {0}")]
    LowerNotIncreasing(usize),
    #[error("upper indices not increasing at position {0}")]
    UpperNotIncreasing(usize),
}

impl Jnf {
    pub fn identity() -> Self {
        Jnf::default()
    }

    pub fn is_identity(&self) -> bool {
        self.ell == 0 && self.blocks.is_empty()
    }

    /// `c^ℓ` with no blocks.
    pub fn is_pure_scalar(&self) -> bool {
        self.ell > 0 && self.blocks.is_empty()
    }

    pub fn to_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.ell + self.blocks.len());
        letters.extend(core::iter::repeat_n(Letter::C, self.ell));
        letters.extend(self.blocks.iter().map(|&(b, a)| Letter::Block(b, a)));
        Word(letters)
    }

    pub fn chi(&self) -> ChiReport {
        let (mut blue, mut red) = (0, 0);
        for &(b, a) in &self.blocks {
            match block_color(b, a) {
                Color::Blue => blue += 1,
                Color::Red => red += 1,
                Color::White => {}
            }
        }
        ChiReport::from_counts(self.ell, blue, red)
    }
}

impl fmt::Display for Jnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

pub fn is_jnf(word: &Word) -> bool {
    as_jnf(word).is_ok()
}

pub fn as_jnf(word: &Word) -> Result<Jnf, JnfError> {
    let mut ell = 0;
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    for (pos, letter) in word.letters().iter().enumerate() {
        match *letter {
            Letter::C if blocks.is_empty() => ell += 1,
            Letter::C => return Err(JnfError::ScalarAfterBlock(pos)),
            Letter::Block(b, a) => {
                if let Some(&(pb, pa)) = blocks.last() {
                    if a <= pa {
                        return Err(JnfError::LowerNotIncreasing(pos));
                    }
                    if b <= pb {
                        return Err(JnfError::UpperNotIncreasing(pos));
                    }
                }
                blocks.push((b, a));
            }
        }
    }
    Ok(Jnf { ell, blocks })
}

/// Every J.n.f. of degree `n` with `ell ≤ max_exp`, each exactly once.
///
/// Order: by exponent, then by number of blocks, then lexicographically.
pub fn enumerate_jnf(n: usize, max_exp: usize) -> Vec<Jnf> {
    let mut shapes = Vec::new();
    if n >= 1 {
        let mut current = Vec::new();
        let top = n - 1;
        for k in 0..=top {
            extend_shapes(top, k, 1, 1, &mut current, &mut shapes);
        }
    }
    let mut out = Vec::with_capacity(shapes.len() * (max_exp + 1));
    for ell in 0..=max_exp {
        out.extend(shapes.iter().map(|blocks| Jnf {
            ell,
            blocks: Clone::clone(blocks),
        }));
    }
    out
}

fn extend_shapes(
    top: usize,
    remaining: usize,
    min_a: usize,
    min_b: usize,
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for a in min_a..=top {
        for b in min_b.max(a)..=top {
            current.push((b, a));
            extend_shapes(top, remaining - 1, a + 1, b + 1, current, out);
            current.pop();
        }
    }
}

/// `c` together with every singleton `h_i`, `1 ≤ i < n`.
pub fn generator_alphabet(n: usize) -> Vec<Letter> {
    core::iter::once(Letter::C)
        .chain((1..n).map(Letter::h))
        .collect()
}

/// `c` together with every block `h[j,i]`, `1 ≤ i ≤ j < n`.
pub fn block_alphabet(n: usize) -> Vec<Letter> {
    let mut out = alloc::vec![Letter::C];
    for j in 1..n {
        for i in 1..=j {
            out.push(Letter::Block(j, i));
        }
    }
    out
}

/// All words of length `≤ max_len` over `alphabet`, shortest first.
pub fn all_words(alphabet: &[Letter], max_len: usize) -> impl Iterator<Item = Word> + '_ {
    (0..=max_len).flat_map(move |len| {
        let total = alphabet.len().checked_pow(len as u32).unwrap_or(0);
        let total = if len == 0 { 1 } else { total };
        (0..total).map(move |mut code| {
            let mut letters = Vec::with_capacity(len);
            for _ in 0..len {
                letters.push(alphabet[code % alphabet.len()]);
                code /= alphabet.len();
            }
            Word(letters)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse("h3 h2 h1", 4).unwrap(),
            Word::new(vec![Letter::h(3), Letter::h(2), Letter::h(1)])
        );
        assert_eq!(
            parse("h[3,1]", 4).unwrap(),
            Word::new(vec![Letter::Block(3, 1)])
        );
        assert_eq!(
            parse("h[1,3]", 4).unwrap(),
            Word::new(vec![Letter::h(1), Letter::h(2), Letter::h(3)])
        );
        assert_eq!(parse("1", 3).unwrap(), Word::identity());
        assert_eq!(parse("   ", 3).unwrap(), Word::identity());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse("h3", 3),
            Err(ParseError::Word(WordError::IndexOutOfRange {
                index: 3,
                n: 3
            }))
        ));
        assert!(matches!(
            parse("h0", 3),
            Err(ParseError::Word(WordError::IndexOutOfRange { .. }))
        ));
        assert!(matches!(parse("x", 3), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("h[2,1", 3), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse("h[2 ,1]", 3),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(parse("h+1", 3), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("1 h1", 3), Err(ParseError::MixedIdentity)));
    }

    #[test]
    fn colors() {
        assert_eq!(block_color(3, 1), Color::Blue);
        assert_eq!(block_color(4, 2), Color::Red);
        assert_eq!(block_color(2, 1), Color::White);
        assert_eq!(Letter::C.color(), None);
    }

    #[test]
    fn chi_examples() {
        let w = Word::new(vec![Letter::C, Letter::Block(3, 1)]);
        assert_eq!(chi(&w), ChiReport::from_counts(1, 1, 0));
        assert_eq!(chi(&w).chi, 0);
        assert_eq!(chi(&Word::identity()), ChiReport::default());
        let w = parse("h2 h4 h1", 5).unwrap();
        assert_eq!(chi(&w).chi, -1);
    }

    #[test]
    fn jnf_shape() {
        let ok = Word::new(vec![Letter::C, Letter::Block(3, 1), Letter::Block(4, 4)]);
        assert!(is_jnf(&ok));
        let bad = Word::new(vec![Letter::Block(3, 1), Letter::C]);
        assert_eq!(as_jnf(&bad), Err(JnfError::ScalarAfterBlock(1)));
        let bad = Word::new(vec![Letter::Block(2, 1), Letter::Block(2, 2)]);
        assert_eq!(as_jnf(&bad), Err(JnfError::UpperNotIncreasing(1)));
        assert!(is_jnf(&Word::identity()));
    }

    #[test]
    fn render_examples() {
        assert_eq!(render(&Word::identity()), "1");
        let w = Word::new(vec![Letter::C, Letter::C, Letter::Block(3, 1)]);
        assert_eq!(render(&w), "c c h[3,1]");
        assert_eq!(render(&Word::new(vec![Letter::h(2)])), "h[2,2]");
    }

    #[test]
    fn enumerate_small() {
        let jnfs = enumerate_jnf(3, 0);
        assert_eq!(jnfs.len(), 5);
        let expected = [
            Jnf::identity(),
            Jnf {
                ell: 0,
                blocks: vec![(1, 1)],
            },
            Jnf {
                ell: 0,
                blocks: vec![(2, 2)],
            },
            Jnf {
                ell: 0,
                blocks: vec![(2, 1)],
            },
            Jnf {
                ell: 0,
                blocks: vec![(1, 1), (2, 2)],
            },
        ];
        for e in &expected {
            assert!(jnfs.contains(e), "missing {e}");
        }
        assert_eq!(enumerate_jnf(4, 0).len(), 14);
        for n in 2..7 {
            assert_eq!(enumerate_jnf(n, 1).len(), 2 * enumerate_jnf(n, 0).len());
        }
        let mut all = enumerate_jnf(5, 2);
        let before = all.len();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), before);
        assert!(all.iter().all(|j| is_jnf(&j.to_word())));
    }

    #[test]
    fn inverse_block_colors_alternate() {
        for (x, y) in [(1, 4), (2, 5), (2, 3), (1, 6)] {
            let w = parse(&alloc::format!("h[{x},{y}]"), 8).unwrap();
            assert_eq!(w.len(), y - x + 1);
            for (k, l) in w.letters().iter().enumerate() {
                let expected = if (x + k) % 2 == 1 {
                    Color::Blue
                } else {
                    Color::Red
                };
                assert_eq!(l.color(), Some(expected));
            }
        }
    }

    #[test]
    fn all_words_counts() {
        let alpha = generator_alphabet(3);
        assert_eq!(all_words(&alpha, 2).count(), 1 + 3 + 9);
        assert_eq!(block_alphabet(4).len(), 1 + 6);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn letter(n: usize) -> impl Strategy<Value = Letter> {
            prop_oneof![
                Just(Letter::C),
                (1..n)
                    .prop_flat_map(|j| (Just(j), 1..=j))
                    .prop_map(|(j, i)| Letter::Block(j, i)),
            ]
        }

        fn word(n: usize) -> impl Strategy<Value = Word> {
            proptest::collection::vec(letter(n), 0..12).prop_map(Word::new)
        }

        #[test]
        fn compact_rendering() {
            let w = parse("h1 h2 c h3 h3 h4 h[2,1]", 5).unwrap();
            assert_eq!(render_compact(&w), "h[1,2] c h[3,3] h[3,4] h[2,1]");
            assert_eq!(render_compact(&Word::identity()), "1");
        }

        proptest! {
            #[test]
            fn render_parse_roundtrip(w in word(7)) {
                prop_assert_eq!(parse(&render(&w), 7).unwrap(), w);
            }

            #[test]
            fn compact_parse_roundtrip(w in word(7)) {
                prop_assert_eq!(parse(&render_compact(&w), 7).unwrap(), w);
            }

            #[test]
            fn counters_additive(u in word(6), v in word(6)) {
                let (a, b, ab) = (chi(&u), chi(&v), chi(&u.concat(&v)));
                prop_assert_eq!(ab.c_count, a.c_count + b.c_count);
                prop_assert_eq!(ab.blue, a.blue + b.blue);
                prop_assert_eq!(ab.red, a.red + b.red);
            }
        }
    }
}

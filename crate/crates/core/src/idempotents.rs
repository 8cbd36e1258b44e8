//! Idempotents of `K_n` and the subsemigroup they generate.
//!
//! Membership is decided from the characteristic number of the normal form;
//! members come with a certificate, an explicit product of the length-two
//! idempotents `h[i+1,i]` and `h[i,i+1]`, which is checked against the
//! diagram model before it is handed out.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use thiserror::Error;

use crate::diagrams::{self, DiagramError, KElement, PlanarDiagram};
use crate::rewrite::{normal_form, RewriteError};
use crate::words::{block_color, enumerate_jnf, ChiReport, Color, Jnf, Letter, Word};

/// `Down(i)` is the block `h[i+1,i]`, `Up(i)` the inverse block `h[i,i+1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EPrimeGen {
    Down(usize),
    Up(usize),
}

impl EPrimeGen {
    pub fn letters(self) -> Vec<Letter> {
        match self {
            EPrimeGen::Down(i) => vec![Letter::Block(i + 1, i)],
            EPrimeGen::Up(i) => vec![Letter::h(i), Letter::h(i + 1)],
        }
    }

    pub fn word(self) -> Word {
        Word::new(self.letters())
    }
}

impl fmt::Display for EPrimeGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EPrimeGen::Down(i) => write!(f, "h[{},{}]", i + 1, i),
            EPrimeGen::Up(i) => write!(f, "h[{},{}]", i, i + 1),
        }
    }
}

/// The length-two idempotents of degree `n`, `2(n−2)` of them.
pub fn eprime(n: usize) -> Vec<EPrimeGen> {
    (1..n.saturating_sub(1))
        .flat_map(|i| [EPrimeGen::Down(i), EPrimeGen::Up(i)])
        .collect()
}

/// A product of [`EPrimeGen`]s; the empty product certifies the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub generators: Vec<EPrimeGen>,
}

impl Certificate {
    pub fn is_empty_product(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn word(&self) -> Word {
        self.generators.iter().flat_map(|g| g.letters()).collect()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return f.write_str("1");
        }
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Reason {
    Identity,
    Member,
    ChiNegative,
    ChiOdd,
    /// `c^ℓ` with `ℓ ≥ 1`: χ may be even and non-negative, yet no non-empty
    /// product of idempotents has the identity diagram.
    PureScalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub member: bool,
    pub chi: ChiReport,
    pub reason: Reason,
    pub normal_form: Jnf,
}

pub fn verdict_for(jnf: &Jnf) -> MembershipVerdict {
    let chi = jnf.chi();
    let reason = if jnf.is_identity() {
        Reason::Identity
    } else if chi.chi < 0 {
        Reason::ChiNegative
    } else if chi.chi % 2 != 0 {
        Reason::ChiOdd
    } else if jnf.is_pure_scalar() {
        Reason::PureScalar
    } else {
        Reason::Member
    };
    MembershipVerdict {
        member: matches!(reason, Reason::Identity | Reason::Member),
        chi,
        reason,
        normal_form: jnf.clone(),
    }
}

pub fn is_member(word: &Word) -> Result<MembershipVerdict, RewriteError> {
    Ok(verdict_for(&normal_form(word)?))
}

/// The bare "χ non-negative and even" predicate, without the pure-scalar exception.
pub fn chi_predicate(jnf: &Jnf) -> bool {
    let chi = jnf.chi().chi;
    chi >= 0 && chi % 2 == 0
}

/// Bit string over the non-white blocks: `false` is the majority color.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BinaryWord(pub Vec<bool>);

impl BinaryWord {
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|ch| match ch {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(BinaryWord)
    }

    /// `|u|₀ − |u|₁`.
    pub fn excess(&self) -> i64 {
        self.0.iter().map(|&b| if b { -1 } else { 1 }).sum()
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Balanced,
    Zeros,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub kind: FactorKind,
    pub range: Range<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("binary word has more ones than zeros (excess {0})")]
pub struct NegativeExcess(pub i64);

/// Splits `u` into balanced factors and single `0`s (as many as the excess),
/// with every balanced factor cut at each internal point where its prefix is
/// balanced.
pub fn factor_balanced(u: &BinaryWord) -> Result<Vec<Factor>, NegativeExcess> {
    let mut excess = u.excess();
    if excess < 0 {
        return Err(NegativeExcess(excess));
    }
    let bits = &u.0;
    let mut coarse = Vec::new();
    let mut start = 0;
    while start < bits.len() {
        if excess == 0 {
            coarse.push(start..bits.len());
            break;
        }
        if !bits[start] {
            coarse.push(start..start);
            excess -= 1;
            start += 1;
            continue;
        }
        let mut balance = 0i64;
        let mut end = start;
        loop {
            balance += if bits[end] { -1 } else { 1 };
            end += 1;
            if balance == 0 {
                break;
            }
        }
        coarse.push(start..end);
        start = end;
    }
    let mut out = Vec::new();
    for range in coarse {
        if range.is_empty() {
            out.push(Factor {
                kind: FactorKind::Zeros,
                range: range.start..range.start + 1,
            });
            continue;
        }
        let mut balance = 0i64;
        let mut piece = range.start;
        for p in range.clone() {
            balance += if bits[p] { -1 } else { 1 };
            if balance == 0 {
                out.push(Factor {
                    kind: FactorKind::Balanced,
                    range: piece..p + 1,
                });
                piece = p + 1;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("{0} is not in the idempotent generated subsemigroup ({1:?})")]
    NotAMember(Jnf, Reason),
    #[error("certificate {certificate} evaluates to {got}, expected {expected}")]
    VerificationFailed {
        certificate: Certificate,
        expected: KElement,
        got: KElement,
    },
    #[error("unbalanced segment {0:?} during decomposition")]
    Unbalanced(Vec<(usize, usize)>),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// `h[j,i]` (or the inverse block when `j < i`) of opposite-parity endpoints
/// as a product of length-two idempotents, pairing adjacent letters.
fn white(j: usize, i: usize, out: &mut Vec<EPrimeGen>) {
    debug_assert!(j % 2 != i % 2);
    if j > i {
        out.extend((i..j).rev().step_by(2).map(EPrimeGen::Down));
    } else {
        out.extend((j..i).step_by(2).map(EPrimeGen::Up));
    }
}

/// `H[j,i]`: the block `h[j,i]` when `j ≥ i`, nothing otherwise.
fn white_or_empty(j: usize, i: usize, out: &mut Vec<EPrimeGen>) {
    if j >= i {
        white(j, i, out);
    }
}

/// `H[i,j]` for inverse blocks: `h_i…h_j` when `i ≤ j`, nothing otherwise.
fn inverse_white_or_empty(i: usize, j: usize, out: &mut Vec<EPrimeGen>) {
    if i <= j {
        white(i, j, out);
    }
}

/// `h_k h_l` with `k`, `l` of opposite parity.
fn parity_pair(k: usize, l: usize, out: &mut Vec<EPrimeGen>) {
    if k == l + 1 {
        out.push(EPrimeGen::Down(l));
    } else if l == k + 1 {
        out.push(EPrimeGen::Up(k));
    } else if k > l {
        // h_k h_l = h[k,l] h[l+2,k]
        white(k, l, out);
        white(l + 2, k, out);
    } else {
        // h_k h_l = h[l,k+2] h[k,l]
        white(l, k + 2, out);
        white(k, l, out);
    }
}

/// `c·h[j,i]` for a blue or red block.
fn scalar_times_block(j: usize, i: usize, out: &mut Vec<EPrimeGen>) {
    debug_assert!(j % 2 == i % 2);
    if j == i {
        if i > 1 {
            // h[i,i-1] h[i-1,i] = c h_i
            out.extend([EPrimeGen::Down(i - 1), EPrimeGen::Up(i - 1)]);
        } else {
            // h[1,2] h[2,1] = c h_1
            out.extend([EPrimeGen::Up(1), EPrimeGen::Down(1)]);
        }
    } else {
        // h[j,j-1] h[j-1,j] h[j-1,i] = c h[j,i]
        out.extend([EPrimeGen::Down(j - 1), EPrimeGen::Up(j - 1)]);
        white(j - 1, i, out);
    }
}

enum Segment<'a> {
    /// A majority-color block that absorbs one `c`.
    Scalar((usize, usize)),
    /// A lone white block or a run that cannot be split further.
    Tight(&'a [(usize, usize)]),
}

/// Cuts a `c`-free block sequence into tight runs and stand-alone
/// majority-color blocks. `majority` is the color mapped to `0`.
fn segments(
    blocks: &[(usize, usize)],
    majority: Color,
) -> Result<Vec<Segment<'_>>, DecomposeError> {
    let non_white: Vec<usize> = (0..blocks.len())
        .filter(|&p| block_color(blocks[p].0, blocks[p].1) != Color::White)
        .collect();
    let bits = BinaryWord(
        non_white
            .iter()
            .map(|&p| block_color(blocks[p].0, blocks[p].1) != majority)
            .collect(),
    );
    let factors =
        factor_balanced(&bits).map_err(|_| DecomposeError::Unbalanced(blocks.to_vec()))?;
    let mut out = Vec::new();
    let mut cursor = 0;
    for factor in factors {
        let first = non_white[factor.range.start];
        let last = non_white[factor.range.end - 1];
        out.extend(
            blocks[cursor..first]
                .iter()
                .map(|b| Segment::Tight(core::slice::from_ref(b))),
        );
        match factor.kind {
            FactorKind::Zeros => out.push(Segment::Scalar(blocks[first])),
            FactorKind::Balanced => out.push(Segment::Tight(&blocks[first..=last])),
        }
        cursor = last + 1;
    }
    out.extend(
        blocks[cursor..]
            .iter()
            .map(|b| Segment::Tight(core::slice::from_ref(b))),
    );
    Ok(out)
}

/// Decomposes a `c`-free J.n.f. with as many blue as red blocks.
fn balanced(blocks: &[(usize, usize)], out: &mut Vec<EPrimeGen>) -> Result<(), DecomposeError> {
    for segment in segments(blocks, Color::Blue)? {
        match segment {
            Segment::Tight(run) => tight(run, out)?,
            Segment::Scalar(_) => return Err(DecomposeError::Unbalanced(blocks.to_vec())),
        }
    }
    Ok(())
}

/// A tight run: a single white block, or a run whose outer blocks are
/// non-white of opposite colors. Shaves the bottoms off the longest prefix
/// whose lower indices climb by one and recurses on what is left.
fn tight(run: &[(usize, usize)], out: &mut Vec<EPrimeGen>) -> Result<(), DecomposeError> {
    let r = run.len();
    let (b1, a1) = run[0];
    if r == 1 {
        if block_color(b1, a1) != Color::White {
            return Err(DecomposeError::Unbalanced(run.to_vec()));
        }
        white(b1, a1, out);
        return Ok(());
    }
    let q = 1 + run.windows(2).take_while(|w| w[1].1 == w[0].1 + 1).count();
    let aq = run[q - 1].1;
    let shaved = |s: usize| {
        let (b, a) = run[s];
        (b > a).then_some((b, a + 1))
    };
    let inner_with = |tail: &[(usize, usize)]| -> Vec<(usize, usize)> {
        (1..q)
            .filter_map(shaved)
            .chain(tail.iter().copied())
            .collect()
    };
    if q % 2 == 1 {
        let (br, ar) = run[r - 1];
        white_or_empty(b1, a1 + 1, out);
        balanced(&inner_with(&run[q..r - 1]), out)?;
        white_or_empty(br, ar + 1, out);
        parity_pair(ar, a1, out);
        inverse_white_or_empty(a1 + 1, aq, out);
    } else {
        white_or_empty(b1, a1 + 1, out);
        balanced(&inner_with(&run[q..]), out)?;
        inverse_white_or_empty(a1, aq, out);
    }
    Ok(())
}

/// Wraps `c²` around a non-empty certificate.
fn absorb_c_squared(gens: &mut Vec<EPrimeGen>) {
    let front = match gens[0] {
        // c² h[i+1,i] = h[i+1,i] h[i,i+1] h[i+1,i]
        EPrimeGen::Down(i) => [EPrimeGen::Down(i), EPrimeGen::Up(i)],
        EPrimeGen::Up(i) => [EPrimeGen::Up(i), EPrimeGen::Down(i)],
    };
    gens.splice(0..0, front);
}

/// Certificate for a J.n.f. that satisfies the membership test, unverified.
pub fn certificate_for(jnf: &Jnf) -> Result<Certificate, DecomposeError> {
    let verdict = verdict_for(jnf);
    if !verdict.member {
        return Err(DecomposeError::NotAMember(jnf.clone(), verdict.reason));
    }
    let chi = verdict.chi;
    let mut gens = Vec::new();
    if !jnf.is_identity() {
        let majority = if chi.blue >= chi.red {
            Color::Blue
        } else {
            Color::Red
        };
        for segment in segments(&jnf.blocks, majority)? {
            match segment {
                Segment::Scalar((j, i)) => scalar_times_block(j, i, &mut gens),
                Segment::Tight(run) => tight(run, &mut gens)?,
            }
        }
        for _ in 0..chi.chi / 2 {
            absorb_c_squared(&mut gens);
        }
    }
    Ok(Certificate { generators: gens })
}

/// Normalizes `word`, builds its certificate and checks it in the diagram model.
pub fn decompose(word: &Word, n: usize) -> Result<Certificate, DecomposeError> {
    let jnf = normal_form(word)?;
    let cert = certificate_for(&jnf)?;
    let expected = diagrams::eval(&jnf.to_word(), n)?;
    let got = diagrams::eval(&cert.word(), n)?;
    if got != expected {
        return Err(DecomposeError::VerificationFailed {
            certificate: cert,
            expected,
            got,
        });
    }
    Ok(cert)
}

/// Exponent-zero diagrams mapped to their normal forms.
#[derive(Clone, Debug)]
pub struct DiagramIndex {
    n: usize,
    map: BTreeMap<PlanarDiagram, Jnf>,
}

impl DiagramIndex {
    pub fn new(n: usize) -> Result<Self, DiagramError> {
        let mut map = BTreeMap::new();
        for jnf in enumerate_jnf(n, 0) {
            let e = diagrams::eval(&jnf.to_word(), n)?;
            map.insert(e.diagram, jnf);
        }
        Ok(DiagramIndex { n, map })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn jnf_of(&self, element: &KElement) -> Option<Jnf> {
        self.map.get(&element.diagram).map(|j| Jnf {
            ell: element.exp as usize,
            blocks: j.blocks.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IdempotentError {
    #[error("idempotent diagram {0} has no normal form")]
    Unindexed(PlanarDiagram),
    #[error("{0} is idempotent as a diagram but not as a word")]
    WordMismatch(Jnf),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// All idempotents of `K_n` as J.n.f.s. Found among diagrams with
/// `α² = α` and no loops, then cross-checked by word normalization.
pub fn enumerate_idempotents(n: usize) -> Result<Vec<Jnf>, IdempotentError> {
    let index = DiagramIndex::new(n)?;
    let mut out = Vec::new();
    for d in diagrams::enumerate(n) {
        let (sq, loops) = diagrams::multiply(&d, &d)?;
        if loops == 0 && sq == d {
            let jnf = index
                .jnf_of(&KElement {
                    exp: 0,
                    diagram: d.clone(),
                })
                .ok_or(IdempotentError::Unindexed(d))?;
            let w = jnf.to_word();
            if normal_form(&w.concat(&w))? != jnf {
                return Err(IdempotentError::WordMismatch(jnf));
            }
            out.push(jnf);
        }
    }
    out.sort_by(|x, y| (x.blocks.len(), &x.blocks).cmp(&(y.blocks.len(), &y.blocks)));
    Ok(out)
}

/// Breadth-first closure of `{1} ∪ E'_n` under right multiplication by
/// `E'_n`, keeping elements with exponent at most `max_exp`. Exponents never
/// decrease along a product, so the truncation is exact.
pub fn closure_bfs(n: usize, max_exp: u64) -> Result<BTreeSet<Jnf>, IdempotentError> {
    let index = DiagramIndex::new(n)?;
    let gens: Vec<KElement> = eprime(n)
        .into_iter()
        .map(|g| diagrams::eval(&g.word(), n))
        .collect::<Result<_, _>>()?;
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    for start in core::iter::once(KElement::identity(n)).chain(gens.iter().cloned()) {
        if seen.insert(start.clone()) {
            queue.push_back(start);
        }
    }
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = diagrams::kmul(&x, g)?;
            if y.exp <= max_exp && !seen.contains(&y) {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    seen.into_iter()
        .map(|e| {
            index
                .jnf_of(&e)
                .ok_or(IdempotentError::Unindexed(e.diagram))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse;
    use alloc::string::ToString;

    fn bw(s: &str) -> BinaryWord {
        BinaryWord::parse(s).unwrap()
    }

    fn pieces(s: &str) -> Vec<(FactorKind, alloc::string::String)> {
        factor_balanced(&bw(s))
            .unwrap()
            .into_iter()
            .map(|f| (f.kind, s[f.range].to_string()))
            .collect()
    }

    #[test]
    fn eprime_generators() {
        assert_eq!(eprime(3), [EPrimeGen::Down(1), EPrimeGen::Up(1)]);
        assert_eq!(eprime(3)[1].to_string(), "h[1,2]");
        assert_eq!(eprime(5).len(), 6);
        for n in 3..8 {
            for g in eprime(n) {
                let w = g.word();
                assert_eq!(
                    normal_form(&w.concat(&w)).unwrap(),
                    normal_form(&w).unwrap()
                );
            }
        }
    }

    #[test]
    fn factor_examples() {
        assert!(pieces("").is_empty());
        assert_eq!(
            pieces("010"),
            [
                (FactorKind::Zeros, "0".into()),
                (FactorKind::Balanced, "10".into())
            ]
        );
        assert_eq!(
            pieces("0101"),
            [
                (FactorKind::Balanced, "01".into()),
                (FactorKind::Balanced, "01".into())
            ]
        );
        assert_eq!(factor_balanced(&bw("011")), Err(NegativeExcess(-1)));
    }

    #[test]
    fn membership_examples() {
        let v = is_member(&parse("c h[3,1]", 4).unwrap()).unwrap();
        assert!(v.member);
        assert_eq!(v.chi.chi, 0);
        let v = is_member(&parse("c", 4).unwrap()).unwrap();
        assert_eq!((v.member, v.reason), (false, Reason::ChiOdd));
        let v = is_member(&parse("c c", 4).unwrap()).unwrap();
        assert_eq!((v.member, v.reason), (false, Reason::PureScalar));
        let v = is_member(&parse("1", 4).unwrap()).unwrap();
        assert_eq!((v.member, v.reason), (true, Reason::Identity));
        let v = is_member(&parse("h1", 4).unwrap()).unwrap();
        assert_eq!(v.reason, Reason::ChiNegative);
    }

    fn cert(s: &str, n: usize) -> alloc::string::String {
        decompose(&parse(s, n).unwrap(), n).unwrap().to_string()
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(cert("h[5,2]", 6), "h[5,4] h[3,2]");
        assert_eq!(cert("c h[3,1]", 4), "h[3,2] h[2,3] h[2,1]");
        assert_eq!(cert("h[3,1] h[4,4]", 5), "h[3,2] h[4,3] h[2,1] h[3,4]");
        assert_eq!(cert("1", 4), "1");
        assert_eq!(cert("c h1", 3), "h[1,2] h[2,1]");
        assert_eq!(cert("c h2", 3), "h[2,1] h[1,2]");
        assert_eq!(cert("c c c h[2,1] h[3,3]", 5).split(' ').count(), 2 + 3);
        assert!(matches!(
            decompose(&parse("c c", 4).unwrap(), 4),
            Err(DecomposeError::NotAMember(_, Reason::PureScalar))
        ));
        assert!(matches!(
            decompose(&parse("h2", 4).unwrap(), 4),
            Err(DecomposeError::NotAMember(_, Reason::ChiNegative))
        ));
    }

    #[test]
    fn decompose_red_majority() {
        // two red blocks, no blue: needs two c's
        let w = parse("c c h[2,2] h[4,4]", 6).unwrap();
        assert!(is_member(&w).unwrap().member);
        decompose(&w, 6).unwrap();
    }

    #[test]
    fn decompose_all_members_small() {
        for n in 3..=6 {
            for jnf in enumerate_jnf(n, 3) {
                if verdict_for(&jnf).member {
                    decompose(&jnf.to_word(), n).unwrap_or_else(|e| panic!("{jnf}: {e}"));
                }
            }
        }
    }

    #[test]
    fn idempotents_small() {
        let e3 = enumerate_idempotents(3).unwrap();
        let names: Vec<_> = e3.iter().map(|j| j.to_string()).collect();
        assert_eq!(names, ["1", "h[2,1]", "h[1,1] h[2,2]"]);
        for n in 3..=6 {
            for jnf in enumerate_idempotents(n).unwrap() {
                let chi = jnf.chi();
                assert_eq!(chi.c_count, 0);
                assert_eq!(chi.blue, chi.red);
            }
        }
        assert_eq!(enumerate_idempotents(2).unwrap(), [Jnf::identity()]);
    }

    #[test]
    fn closure_matches_predicate_n4() {
        let closure = closure_bfs(4, 3).unwrap();
        assert!(closure.contains(&Jnf::identity()));
        for jnf in enumerate_jnf(4, 3) {
            assert_eq!(closure.contains(&jnf), verdict_for(&jnf).member, "{jnf}");
        }
        assert!(closure.iter().all(chi_predicate));
    }
}

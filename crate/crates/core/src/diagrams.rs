//! Planar Brauer diagrams and the Kauffman monoid as pairs `(c^k, α)`.
//!
//! Points are numbered `1..=n` on the top row and `n+1..=2n` on the bottom
//! row (`i'` is `n+i`). Internally a diagram stores, for every point, the
//! point it is joined to (0-based), which is canonical.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::words::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("hook index {i} out of range [1, {}]", n.saturating_sub(1))]
    HookOutOfRange { i: usize, n: usize },
    #[error("point {point} out of range for degree {n}")]
    PointOutOfRange { point: usize, n: usize },
    #[error("not a perfect matching: point {0} is covered {1} times")]
    NotAMatching(usize, usize),
    #[error("chords {0:?} and {1:?} cross")]
    Crossing((usize, usize), (usize, usize)),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanarDiagram {
    n: usize,
    mate: Vec<usize>,
}

/// Position of a (0-based) point on the boundary circle `1,…,n,n',…,1'`.
fn circle_position(n: usize, p: usize) -> usize {
    if p < n {
        p
    } else {
        3 * n - 1 - p
    }
}

fn chords_cross(x: (usize, usize), y: (usize, usize)) -> bool {
    let (a, b) = (x.0.min(x.1), x.0.max(x.1));
    let (c, d) = (y.0.min(y.1), y.0.max(y.1));
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Checks a list of 1-based point pairs for being a non-crossing perfect matching.
pub fn is_planar(n: usize, pairs: &[(usize, usize)]) -> Result<bool, DiagramError> {
    let mut cover = vec![0usize; 2 * n];
    for &(x, y) in pairs {
        for p in [x, y] {
            if p == 0 || p > 2 * n {
                return Err(DiagramError::PointOutOfRange { point: p, n });
            }
            cover[p - 1] += 1;
        }
    }
    if let Some((p, &k)) = cover.iter().enumerate().find(|(_, &k)| k != 1) {
        return Err(DiagramError::NotAMatching(p + 1, k));
    }
    Ok(first_crossing(n, pairs).is_none())
}

fn first_crossing(n: usize, pairs: &[(usize, usize)]) -> Option<((usize, usize), (usize, usize))> {
    let on_circle =
        |&(x, y): &(usize, usize)| (circle_position(n, x - 1), circle_position(n, y - 1));
    for (s, x) in pairs.iter().enumerate() {
        for y in &pairs[s + 1..] {
            if chords_cross(on_circle(x), on_circle(y)) {
                return Some((*x, *y));
            }
        }
    }
    None
}

impl PlanarDiagram {
    pub fn identity(n: usize) -> Self {
        let mate = (0..2 * n)
            .map(|p| if p < n { p + n } else { p - n })
            .collect();
        PlanarDiagram { n, mate }
    }

    /// The hook `δ_i`: `{i,i+1}`, `{i',(i+1)'}` and vertical strands elsewhere.
    pub fn hook(i: usize, n: usize) -> Result<Self, DiagramError> {
        if i == 0 || i >= n {
            return Err(DiagramError::HookOutOfRange { i, n });
        }
        let mut d = Self::identity(n);
        let (t, b) = (i - 1, n + i - 1);
        d.mate[t] = t + 1;
        d.mate[t + 1] = t;
        d.mate[b] = b + 1;
        d.mate[b + 1] = b;
        Ok(d)
    }

    /// Builds a diagram from 1-based pairs (`n+i` for `i'`), rejecting
    /// anything that is not a non-crossing perfect matching.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, DiagramError> {
        if !is_planar(n, pairs)? {
            let (x, y) = first_crossing(n, pairs).expect("crossing exists");
            return Err(DiagramError::Crossing(x, y));
        }
        let mut mate = vec![0; 2 * n];
        for &(x, y) in pairs {
            mate[x - 1] = y - 1;
            mate[y - 1] = x - 1;
        }
        Ok(PlanarDiagram { n, mate })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Canonical sorted pair list, 1-based, smaller point first.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..2 * self.n)
            .filter(|&p| p < self.mate[p])
            .map(|p| (p + 1, self.mate[p] + 1))
            .collect()
    }

    /// 0-based partner of a 0-based point.
    pub fn mate(&self, point: usize) -> usize {
        self.mate[point]
    }

    /// Whether 1-based points `x` and `y` lie in the same block.
    pub fn joins(&self, x: usize, y: usize) -> bool {
        self.mate.get(x - 1) == Some(&(y - 1))
    }

    /// Number of strands joining the top row to the bottom row.
    pub fn through_strands(&self) -> usize {
        (0..self.n).filter(|&p| self.mate[p] >= self.n).count()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }
}

impl fmt::Debug for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        let point = |p: usize, f: &mut fmt::Formatter<'_>| {
            if p <= n {
                write!(f, "{p}")
            } else {
                write!(f, "{}'", p - n)
            }
        };
        f.write_str("{")?;
        for (k, (x, y)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            point(x, f)?;
            f.write_str("-")?;
            point(y, f)?;
        }
        f.write_str("}")
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(size: usize) -> Self {
        UnionFind {
            parent: (0..size).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx] = ry;
        }
    }
}

/// Stacks `a` on top of `b`. Returns the product and the number of closed
/// loops formed in the middle.
pub fn multiply(
    a: &PlanarDiagram,
    b: &PlanarDiagram,
) -> Result<(PlanarDiagram, usize), DiagramError> {
    let n = a.n;
    if b.n != n {
        return Err(DiagramError::DegreeMismatch(n, b.n));
    }
    // Stacked points: a-top [0,n), a-bottom [n,2n), b-top [2n,3n), b-bottom [3n,4n).
    let mut uf = UnionFind::new(4 * n);
    for p in 0..2 * n {
        uf.union(p, a.mate[p]);
        uf.union(2 * n + p, 2 * n + b.mate[p]);
    }
    for i in 0..n {
        uf.union(n + i, 2 * n + i);
    }
    let outer = |p: usize| if p < n { p } else { 3 * n + (p - n) };
    let mut first_outer = vec![usize::MAX; 4 * n];
    let mut mate = vec![0; 2 * n];
    for p in 0..2 * n {
        let root = uf.find(outer(p));
        match first_outer[root] {
            usize::MAX => first_outer[root] = p,
            q => {
                mate[p] = q;
                mate[q] = p;
            }
        }
    }
    let mut seen = vec![false; 4 * n];
    let mut loops = 0;
    for p in n..3 * n {
        let root = uf.find(p);
        if first_outer[root] == usize::MAX && !seen[root] {
            seen[root] = true;
            loops += 1;
        }
    }
    let product = PlanarDiagram { n, mate };
    debug_assert!(first_crossing(n, &product.pairs()).is_none());
    Ok((product, loops))
}

/// An element `(c^exp, diagram)` of the Kauffman monoid.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KElement {
    pub exp: u64,
    pub diagram: PlanarDiagram,
}

impl KElement {
    pub fn identity(n: usize) -> Self {
        KElement {
            exp: 0,
            diagram: PlanarDiagram::identity(n),
        }
    }

    pub fn degree(&self) -> usize {
        self.diagram.n
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(c^{}, {})", self.exp, self.diagram)
    }
}

/// `(c^k, α)(c^ℓ, β) = (c^{k+ℓ+τ(α,β)}, αβ)`.
pub fn kmul(x: &KElement, y: &KElement) -> Result<KElement, DiagramError> {
    let (diagram, loops) = multiply(&x.diagram, &y.diagram)?;
    Ok(KElement {
        exp: x.exp + y.exp + loops as u64,
        diagram,
    })
}

/// Image of a word under `c ↦ (c, 1)`, `h_i ↦ (1, δ_i)`.
pub fn eval(word: &Word, n: usize) -> Result<KElement, DiagramError> {
    let mut acc = KElement::identity(n);
    for letter in word.letters() {
        match *letter {
            Letter::C => acc.exp += 1,
            Letter::Block(j, i) => {
                for k in (i..=j).rev() {
                    let (d, loops) = multiply(&acc.diagram, &PlanarDiagram::hook(k, n)?)?;
                    acc.diagram = d;
                    acc.exp += loops as u64;
                }
            }
        }
    }
    Ok(acc)
}

/// All non-crossing perfect matchings of the `2n` boundary points, sorted.
pub fn enumerate(n: usize) -> Vec<PlanarDiagram> {
    let mut out = Vec::new();
    let mut opens = Vec::with_capacity(2 * n);
    let mut mate = vec![0; 2 * n];
    dyck(n, 0, 0, &mut opens, &mut mate, &mut out);
    out.sort();
    out
}

/// Walks the circle; an open parenthesis starts a chord, a close ends the
/// most recent open one.
fn dyck(
    n: usize,
    pos: usize,
    opened: usize,
    stack: &mut Vec<usize>,
    mate: &mut Vec<usize>,
    out: &mut Vec<PlanarDiagram>,
) {
    if pos == 2 * n {
        out.push(PlanarDiagram {
            n,
            mate: mate.clone(),
        });
        return;
    }
    let point = |pos: usize| circle_position(n, pos);
    if opened < n {
        stack.push(pos);
        dyck(n, pos + 1, opened + 1, stack, mate, out);
        stack.pop();
    }
    if let Some(start) = stack.pop() {
        let (x, y) = (point(start), point(pos));
        mate[x] = y;
        mate[y] = x;
        dyck(n, pos + 1, opened, stack, mate, out);
        stack.push(start);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse;

    fn hook(i: usize, n: usize) -> PlanarDiagram {
        PlanarDiagram::hook(i, n).unwrap()
    }

    #[test]
    fn identity_and_hooks() {
        assert_eq!(PlanarDiagram::identity(3).pairs(), [(1, 4), (2, 5), (3, 6)]);
        assert_eq!(hook(1, 3).pairs(), [(1, 2), (3, 6), (4, 5)]);
        assert_eq!(hook(2, 3).pairs(), [(1, 4), (2, 3), (5, 6)]);
        assert!(PlanarDiagram::hook(3, 3).is_err());
        assert!(PlanarDiagram::hook(0, 3).is_err());
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(multiply(&hook(1, 3), &hook(1, 3)).unwrap(), (hook(1, 3), 1));
        let (d, loops) = multiply(&hook(1, 3), &hook(2, 3)).unwrap();
        assert_eq!(loops, 0);
        // {1-2, 3-1', 2'-3'}
        assert_eq!(d.pairs(), [(1, 2), (3, 4), (5, 6)]);
        for d in enumerate(4) {
            assert_eq!(
                multiply(&PlanarDiagram::identity(4), &d).unwrap(),
                (d.clone(), 0)
            );
            assert_eq!(multiply(&d, &PlanarDiagram::identity(4)).unwrap(), (d, 0));
        }
    }

    #[test]
    fn loops_from_nested_cups() {
        let x = eval(&parse("h1 h3 h2", 4).unwrap(), 4).unwrap();
        let y = eval(&parse("h2 h1 h3", 4).unwrap(), 4).unwrap();
        let xy = kmul(&x, &y).unwrap();
        assert_eq!(
            xy,
            eval(&parse("h1 h3 h2 h2 h1 h3", 4).unwrap(), 4).unwrap()
        );
        assert_eq!(xy.exp, 2);
    }

    #[test]
    fn kmul_examples() {
        let k = |exp, diagram| KElement { exp, diagram };
        let h1 = k(0, hook(1, 3));
        assert_eq!(kmul(&h1, &h1).unwrap(), k(1, hook(1, 3)));
        let one = k(1, PlanarDiagram::identity(3));
        assert_eq!(kmul(&one, &one).unwrap(), k(2, PlanarDiagram::identity(3)));
        let h2 = k(0, hook(2, 3));
        let p = kmul(&h1, &h2).unwrap();
        assert_eq!(p.exp, 0);
        assert_eq!(p.diagram.pairs(), [(1, 2), (3, 4), (5, 6)]);
    }

    #[test]
    fn eval_examples() {
        let e = |s: &str| eval(&parse(s, 3).unwrap(), 3).unwrap();
        assert_eq!(
            e("c"),
            KElement {
                exp: 1,
                diagram: PlanarDiagram::identity(3)
            }
        );
        assert_eq!(
            e("h1 h1"),
            KElement {
                exp: 1,
                diagram: hook(1, 3)
            }
        );
        assert_eq!(e("h1 h1"), e("c h1"));
        assert_eq!(e("1"), KElement::identity(3));
    }

    #[test]
    fn enumerate_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| enumerate(n).len()).collect();
        assert_eq!(counts, [1, 2, 5, 14, 42, 132, 429]);
        let two = enumerate(2);
        assert_eq!(two[0].pairs(), [(1, 2), (3, 4)]);
        assert_eq!(two[1].pairs(), [(1, 3), (2, 4)]);
        for n in 1..=6 {
            let all = enumerate(n);
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            assert!(all.iter().all(|d| is_planar(n, &d.pairs()).unwrap()));
        }
    }

    #[test]
    fn planarity_checks() {
        assert!(is_planar(2, &[(1, 3), (2, 4)]).unwrap());
        assert!(!is_planar(2, &[(1, 4), (2, 3)]).unwrap());
        assert!(is_planar(2, &[(1, 2), (3, 4)]).unwrap());
        assert!(matches!(
            is_planar(2, &[(1, 2), (1, 3)]),
            Err(DiagramError::NotAMatching(..))
        ));
        assert!(matches!(
            is_planar(2, &[(1, 2), (3, 5)]),
            Err(DiagramError::PointOutOfRange { .. })
        ));
        assert!(matches!(
            PlanarDiagram::from_pairs(2, &[(1, 4), (2, 3)]),
            Err(DiagramError::Crossing(..))
        ));
        assert_eq!(
            PlanarDiagram::from_pairs(3, &hook(2, 3).pairs()).unwrap(),
            hook(2, 3)
        );
    }

    #[test]
    fn degree_mismatch() {
        assert!(multiply(&hook(1, 3), &hook(1, 4)).is_err());
    }
}

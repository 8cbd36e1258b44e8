//! Green's structure of the white blocks and inverse blocks.
//!
//! The white blocks `h[i,j]` (opposite-parity `i`, `j`) split into two
//! classes by the parity of `i`; in each, `i` indexes the R-class and `j`
//! the L-class. This module builds eggbox views and principal factors of
//! both classes and checks the rank and idempotent rank by exhaustive
//! search.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::diagrams::{self, DiagramError, KElement, PlanarDiagram};
use crate::idempotents::{verdict_for, DiagramIndex, IdempotentError};
use crate::rewrite::{normal_form, RewriteError};
use crate::words::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassId {
    /// First index odd.
    D1,
    /// First index even.
    D2,
}

impl ClassId {
    fn first_parity(self) -> usize {
        match self {
            ClassId::D1 => 1,
            ClassId::D2 => 0,
        }
    }

    pub fn of(first: usize) -> Self {
        if first % 2 == 1 {
            ClassId::D1
        } else {
            ClassId::D2
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassId::D1 => "D1",
            ClassId::D2 => "D2",
        })
    }
}

/// The white block `h[first,second]`; an inverse block when `first < second`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DClassElement {
    pub first: usize,
    pub second: usize,
}

impl DClassElement {
    pub fn new(first: usize, second: usize, n: usize) -> Option<Self> {
        let ok = first >= 1 && second >= 1 && first < n && second < n && first % 2 != second % 2;
        ok.then_some(DClassElement { first, second })
    }

    pub fn class(self) -> ClassId {
        ClassId::of(self.first)
    }

    pub fn is_idempotent(self) -> bool {
        self.first.abs_diff(self.second) == 1
    }

    pub fn word(self) -> Word {
        if self.first >= self.second {
            Word::new(vec![Letter::Block(self.first, self.second)])
        } else {
            (self.first..=self.second).map(Letter::h).collect()
        }
    }
}

impl fmt::Display for DClassElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h[{},{}]", self.first, self.second)
    }
}

/// Reads a normal form back as a white block or white inverse block.
pub fn as_dclass_element(jnf: &crate::words::Jnf) -> Option<DClassElement> {
    if jnf.ell != 0 || jnf.blocks.is_empty() {
        return None;
    }
    let (first, second) = if let [(b, a)] = jnf.blocks[..] {
        (b, a)
    } else {
        let stairway = jnf.blocks.windows(2).all(|w| w[1].1 == w[0].1 + 1)
            && jnf.blocks.iter().all(|&(b, a)| b == a);
        if !stairway {
            return None;
        }
        (jnf.blocks[0].1, jnf.blocks[jnf.blocks.len() - 1].1)
    };
    (first % 2 != second % 2).then_some(DClassElement { first, second })
}

/// Elements of one class, sorted by `(first, second)`.
pub fn class_elements(which: ClassId, n: usize) -> Vec<DClassElement> {
    let mut out = Vec::new();
    for first in (1..n).filter(|i| i % 2 == which.first_parity()) {
        for second in (1..n).filter(|j| j % 2 != first % 2) {
            out.push(DClassElement { first, second });
        }
    }
    out
}

pub fn dclasses(n: usize) -> (Vec<DClassElement>, Vec<DClassElement>) {
    (
        class_elements(ClassId::D1, n),
        class_elements(ClassId::D2, n),
    )
}

/// Rows are R-classes (first index), columns L-classes (second index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EggboxView {
    pub which: ClassId,
    pub n: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub idempotent: Vec<Vec<bool>>,
}

impl EggboxView {
    pub fn new(which: ClassId, n: usize) -> Self {
        let rows: Vec<usize> = (1..n).filter(|i| i % 2 == which.first_parity()).collect();
        let cols: Vec<usize> = (1..n).filter(|j| j % 2 != which.first_parity()).collect();
        let idempotent = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| i.abs_diff(j) == 1).collect())
            .collect();
        EggboxView {
            which,
            n,
            rows,
            cols,
            idempotent,
        }
    }

    pub fn idempotent_count(&self) -> usize {
        self.idempotent.iter().flatten().filter(|&&e| e).count()
    }

    pub fn cells(&self) -> impl Iterator<Item = (DClassElement, bool)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(r, &first)| {
            self.cols
                .iter()
                .enumerate()
                .map(move |(c, &second)| (DClassElement { first, second }, self.idempotent[r][c]))
        })
    }
}

impl fmt::Display for EggboxView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} (n={}): {} R-classes x {} L-classes, {} idempotents",
            self.which,
            self.n,
            self.rows.len(),
            self.cols.len(),
            self.idempotent_count()
        )?;
        let width = alloc::format!("h[{},{}]*", self.n, self.n).len();
        let rule: alloc::string::String =
            core::iter::repeat_n('-', (width + 3) * self.cols.len() + 1).collect();
        writeln!(f, "{rule}")?;
        for (r, &first) in self.rows.iter().enumerate() {
            f.write_str("|")?;
            for (c, &second) in self.cols.iter().enumerate() {
                let mark = if self.idempotent[r][c] { "*" } else { "" };
                let cell = alloc::format!("h[{first},{second}]{mark}");
                write!(f, " {cell:<width$} |")?;
            }
            writeln!(f)?;
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("degree {0} is below 3")]
    DegreeTooSmall(usize),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(&'static str),
    #[error("product {0} ⋆ {1} leaves the class")]
    NotClosed(DClassElement, DClassElement),
    #[error("the idempotents of the class do not generate it")]
    NotIdempotentGenerated,
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Idempotent(#[from] IdempotentError),
}

/// A class with an adjoined zero; `table[x][y]` is `None` for zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalFactor {
    pub which: ClassId,
    pub n: usize,
    pub elements: Vec<DClassElement>,
    pub table: Vec<Vec<Option<usize>>>,
}

/// Largest class the bitmask searches handle.
pub const MAX_FACTOR_ELEMENTS: usize = 64;

impl PrincipalFactor {
    /// Multiplies every ordered pair as words and keeps the product when its
    /// normal form is again a white (inverse) block of the same class.
    pub fn new(which: ClassId, n: usize) -> Result<Self, StructureError> {
        if n < 3 {
            return Err(StructureError::DegreeTooSmall(n));
        }
        let elements = class_elements(which, n);
        let mut table = vec![vec![None; elements.len()]; elements.len()];
        for (x, ex) in elements.iter().enumerate() {
            for (y, ey) in elements.iter().enumerate() {
                let jnf = normal_form(&ex.word().concat(&ey.word()))?;
                table[x][y] = match as_dclass_element(&jnf) {
                    Some(p) if p.class() == which => Some(
                        elements
                            .binary_search(&p)
                            .map_err(|_| StructureError::NotClosed(*ex, *ey))?,
                    ),
                    _ => None,
                };
            }
        }
        Ok(PrincipalFactor {
            which,
            n,
            elements,
            table,
        })
    }

    pub fn product(&self, x: Option<usize>, y: Option<usize>) -> Option<usize> {
        self.table[x?][y?]
    }

    pub fn r_classes(&self) -> usize {
        let mut firsts: Vec<usize> = self.elements.iter().map(|e| e.first).collect();
        firsts.dedup();
        firsts.len()
    }

    pub fn l_classes(&self) -> usize {
        let mut seconds: Vec<usize> = self.elements.iter().map(|e| e.second).collect();
        seconds.sort_unstable();
        seconds.dedup();
        seconds.len()
    }

    /// Indices of elements `e` with `e ⋆ e = e`.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&e| self.table[e][e] == Some(e))
            .collect()
    }

    fn full_mask(&self) -> u64 {
        if self.elements.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.elements.len()) - 1
        }
    }

    /// Non-zero elements of the subsemigroup generated by `gens` (a bitmask).
    pub fn generated(&self, gens: u64) -> u64 {
        let mut reach = gens;
        let mut stack: Vec<usize> = (0..self.elements.len())
            .filter(|&e| gens >> e & 1 == 1)
            .collect();
        let gen_list = stack.clone();
        while let Some(x) = stack.pop() {
            for &g in &gen_list {
                if let Some(p) = self.table[x][g] {
                    if reach >> p & 1 == 0 {
                        reach |= 1 << p;
                        stack.push(p);
                    }
                }
            }
        }
        reach
    }

    /// Whether `gens` generates every element; zero then comes along
    /// whenever some product vanishes.
    pub fn generates(&self, gens: u64) -> bool {
        self.generated(gens) == self.full_mask()
    }

    fn mask_to_elements(&self, mask: u64) -> Vec<DClassElement> {
        (0..self.elements.len())
            .filter(|&e| mask >> e & 1 == 1)
            .map(|e| self.elements[e])
            .collect()
    }
}

/// Limits for the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest degree for subset searches over principal factors.
    pub subset_max_n: usize,
    /// Largest degree for the quadratic diagram-pair scan.
    pub incomparable_max_n: usize,
    /// Upper bound on subsets examined per search.
    pub max_subsets: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            subset_max_n: 8,
            incomparable_max_n: 7,
            max_subsets: 50_000_000,
        }
    }
}

/// Calls `visit` on each `k`-subset of `0..len` as a bitmask, in
/// lexicographic order, until it returns `true`.
fn for_each_subset(len: usize, k: usize, mut visit: impl FnMut(u64) -> bool) -> bool {
    fn go(
        start: usize,
        len: usize,
        k: usize,
        mask: u64,
        visit: &mut dyn FnMut(u64) -> bool,
    ) -> bool {
        if k == 0 {
            return visit(mask);
        }
        for e in start..=len - k {
            if go(e + 1, len, k - 1, mask | 1 << e, visit) {
                return true;
            }
        }
        false
    }
    k <= len && go(0, len, k, 0, &mut visit)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    pub witness: Vec<DClassElement>,
    pub subsets_examined: u64,
}

/// Smallest generating set of the principal factor, by exhaustive search in
/// lexicographic order.
pub fn rank_pf(pf: &PrincipalFactor, budget: &SearchBudget) -> Result<RankResult, StructureError> {
    let len = pf.elements.len();
    if len > MAX_FACTOR_ELEMENTS {
        return Err(StructureError::BudgetExceeded(
            "class too large for bitmask search",
        ));
    }
    let idem_mask = pf.idempotents().iter().fold(0u64, |m, &e| m | 1 << e);
    if !pf.generates(idem_mask) {
        return Err(StructureError::NotIdempotentGenerated);
    }
    let mut examined = 0u64;
    for k in 1..=len {
        let mut found = None;
        let mut over = false;
        for_each_subset(len, k, |mask| {
            examined += 1;
            if examined > budget.max_subsets {
                over = true;
                return true;
            }
            if pf.generates(mask) {
                found = Some(mask);
                return true;
            }
            false
        });
        if over {
            return Err(StructureError::BudgetExceeded("rank subset search"));
        }
        if let Some(mask) = found {
            return Ok(RankResult {
                rank: k,
                witness: pf.mask_to_elements(mask),
                subsets_examined: examined,
            });
        }
    }
    Err(StructureError::NotIdempotentGenerated)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdrankResult {
    pub idrank: usize,
    pub witness: Vec<DClassElement>,
    /// Exactly one generating set of idempotents is minimal under inclusion.
    pub unique_minimal: bool,
    /// The full set of idempotents is that unique minimal set.
    pub all_idempotents_needed: bool,
}

/// Smallest idempotent generating set, checking every subset of the
/// idempotents of the class.
pub fn idrank_pf(
    pf: &PrincipalFactor,
    budget: &SearchBudget,
) -> Result<IdrankResult, StructureError> {
    let idem = pf.idempotents();
    if idem.len() > 30 || (1u64 << idem.len()) > budget.max_subsets {
        return Err(StructureError::BudgetExceeded("idempotent subset search"));
    }
    let to_mask = |sub: u64| {
        (0..idem.len())
            .filter(|&t| sub >> t & 1 == 1)
            .fold(0u64, |m, t| m | 1 << idem[t])
    };
    let generating: Vec<u64> = (0..1u64 << idem.len())
        .filter(|&sub| pf.generates(to_mask(sub)))
        .collect();
    let full = (1u64 << idem.len()) - 1;
    if !generating.contains(&full) {
        return Err(StructureError::NotIdempotentGenerated);
    }
    let minimal: Vec<u64> = generating
        .iter()
        .copied()
        .filter(|&s| !generating.iter().any(|&t| t != s && t & s == t))
        .collect();
    let best = *minimal
        .iter()
        .min_by_key(|s| (s.count_ones(), **s))
        .expect("full set generates");
    Ok(IdrankResult {
        idrank: best.count_ones() as usize,
        witness: pf.mask_to_elements(to_mask(best)),
        unique_minimal: minimal.len() == 1,
        all_idempotents_needed: minimal == [full],
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncomparabilityReport {
    pub n: usize,
    /// Members of the subsemigroup among exponent-zero elements.
    pub members: usize,
    /// `(y, z)` with `h[1,2] = y h[2,1] z`, both members.
    pub witnesses_d1_below_d2: Vec<(PlanarDiagram, PlanarDiagram)>,
    /// `(y, z)` with `h[2,1] = y h[1,2] z`, both members.
    pub witnesses_d2_below_d1: Vec<(PlanarDiagram, PlanarDiagram)>,
    /// Every `z` (over all of `K_n`) completing `h[1,2] = y h[2,1] z`.
    pub completing_z: Vec<PlanarDiagram>,
    /// All of them contain the blocks `{2,3}` and `{2',3'}`.
    pub all_contain_hooks: bool,
    /// Every completing `z` that contains those two blocks equals `h_2`.
    pub hooked_z_equal_h2: bool,
}

impl IncomparabilityReport {
    pub fn passed(&self) -> bool {
        self.witnesses_d1_below_d2.is_empty()
            && self.witnesses_d2_below_d1.is_empty()
            && (self.n < 4 || (self.hooked_z_equal_h2 && !self.completing_z.is_empty()))
    }
}

/// Looks for `h[1,2] = y·h[2,1]·z` and `h[2,1] = y·h[1,2]·z` with `y`, `z` in
/// the subsemigroup. Any such factorization has exponent zero throughout,
/// so `y` and `z` range over the exponent-zero elements.
pub fn verify_incomparable(
    n: usize,
    budget: &SearchBudget,
) -> Result<IncomparabilityReport, StructureError> {
    if n < 3 {
        return Err(StructureError::DegreeTooSmall(n));
    }
    if n > budget.incomparable_max_n {
        return Err(StructureError::BudgetExceeded("incomparability scan"));
    }
    let index = DiagramIndex::new(n)?;
    let all: Vec<KElement> = diagrams::enumerate(n)
        .into_iter()
        .map(|d| KElement { exp: 0, diagram: d })
        .collect();
    let member: Vec<bool> = all
        .iter()
        .map(|e| index.jnf_of(e).is_some_and(|j| verdict_for(&j).member))
        .collect();
    let up = diagrams::eval(
        &DClassElement {
            first: 1,
            second: 2,
        }
        .word(),
        n,
    )?;
    let down = diagrams::eval(
        &DClassElement {
            first: 2,
            second: 1,
        }
        .word(),
        n,
    )?;
    let h2 = PlanarDiagram::hook(2, n)?;

    let mut report = IncomparabilityReport {
        n,
        members: member.iter().filter(|&&m| m).count(),
        witnesses_d1_below_d2: Vec::new(),
        witnesses_d2_below_d1: Vec::new(),
        completing_z: Vec::new(),
        all_contain_hooks: true,
        hooked_z_equal_h2: true,
    };
    for (middle, target, into_d1) in [(&down, &up, true), (&up, &down, false)] {
        for (yi, y) in all.iter().enumerate() {
            let ym = diagrams::kmul(y, middle)?;
            if ym.exp != 0 {
                continue;
            }
            for (zi, z) in all.iter().enumerate() {
                let p = diagrams::kmul(&ym, z)?;
                if p != *target {
                    continue;
                }
                if into_d1 {
                    report.completing_z.push(z.diagram.clone());
                }
                if member[yi] && member[zi] {
                    let pair = (y.diagram.clone(), z.diagram.clone());
                    if into_d1 {
                        report.witnesses_d1_below_d2.push(pair);
                    } else {
                        report.witnesses_d2_below_d1.push(pair);
                    }
                }
            }
        }
    }
    report.completing_z.sort();
    report.completing_z.dedup();
    for z in &report.completing_z {
        let hooks = z.joins(2, 3) && z.joins(n + 2, n + 3);
        report.all_contain_hooks &= hooks;
        if hooks {
            report.hooked_z_equal_h2 &= *z == h2;
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub n: usize,
    pub rank_d1: usize,
    pub rank_d2: usize,
    pub idrank_d1: usize,
    pub idrank_d2: usize,
    pub rank_total: usize,
    pub idrank_total: usize,
    /// `(#R, #L)` per class.
    pub shape_d1: (usize, usize),
    pub shape_d2: (usize, usize),
    pub witness_rank_d1: Vec<DClassElement>,
    pub witness_rank_d2: Vec<DClassElement>,
    pub witness_idrank_d1: Vec<DClassElement>,
    pub witness_idrank_d2: Vec<DClassElement>,
    pub unique_minimal: bool,
}

impl RankReport {
    pub fn expected_rank(n: usize) -> usize {
        2 * (n / 2)
    }

    pub fn expected_idrank(n: usize) -> usize {
        2 * n - 4
    }

    /// Ranks counted over semigroup generating sets, which need the identity.
    pub fn semigroup_rank(&self) -> usize {
        self.rank_total + 1
    }

    pub fn semigroup_idrank(&self) -> usize {
        self.idrank_total + 1
    }

    pub fn matches_formulas(&self) -> bool {
        self.rank_total == Self::expected_rank(self.n)
            && self.idrank_total == Self::expected_idrank(self.n)
            && self.rank_d1 == self.shape_d1.0.max(self.shape_d1.1)
            && self.rank_d2 == self.shape_d2.0.max(self.shape_d2.1)
            && self.unique_minimal
    }
}

pub fn verify_main2(n: usize, budget: &SearchBudget) -> Result<RankReport, StructureError> {
    if n < 3 {
        return Err(StructureError::DegreeTooSmall(n));
    }
    if n > budget.subset_max_n {
        return Err(StructureError::BudgetExceeded("rank verification degree"));
    }
    let d1 = PrincipalFactor::new(ClassId::D1, n)?;
    let d2 = PrincipalFactor::new(ClassId::D2, n)?;
    let (r1, r2) = (rank_pf(&d1, budget)?, rank_pf(&d2, budget)?);
    let (i1, i2) = (idrank_pf(&d1, budget)?, idrank_pf(&d2, budget)?);
    Ok(RankReport {
        n,
        rank_d1: r1.rank,
        rank_d2: r2.rank,
        idrank_d1: i1.idrank,
        idrank_d2: i2.idrank,
        rank_total: r1.rank + r2.rank,
        idrank_total: i1.idrank + i2.idrank,
        shape_d1: (d1.r_classes(), d1.l_classes()),
        shape_d2: (d2.r_classes(), d2.l_classes()),
        witness_rank_d1: r1.witness,
        witness_rank_d2: r2.witness,
        witness_idrank_d1: i1.witness,
        witness_idrank_d2: i2.witness,
        unique_minimal: i1.unique_minimal
            && i2.unique_minimal
            && i1.all_idempotents_needed
            && i2.all_idempotents_needed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse;

    #[test]
    fn class_sizes() {
        let (d1, d2) = dclasses(5);
        assert_eq!((d1.len(), d2.len()), (4, 4));
        let e = EggboxView::new(ClassId::D1, 10);
        assert_eq!((e.rows.len(), e.cols.len()), (5, 4));
        assert_eq!(e.idempotent_count(), 8);
        let e = EggboxView::new(ClassId::D2, 10);
        assert_eq!((e.rows.len(), e.cols.len()), (4, 5));
        assert_eq!(e.idempotent_count(), 8);
    }

    #[test]
    fn reading_back_dclass_elements() {
        let j = |s: &str| normal_form(&parse(s, 8).unwrap()).unwrap();
        assert_eq!(
            as_dclass_element(&j("h[4,1]")),
            Some(DClassElement {
                first: 4,
                second: 1
            })
        );
        assert_eq!(
            as_dclass_element(&j("h[1,4]")),
            Some(DClassElement {
                first: 1,
                second: 4
            })
        );
        assert_eq!(as_dclass_element(&j("h[3,1]")), None);
        assert_eq!(as_dclass_element(&j("h[1,3]")), None);
        assert_eq!(as_dclass_element(&j("c h[2,1]")), None);
        assert_eq!(as_dclass_element(&j("h1 h4")), None);
    }

    #[test]
    fn principal_factor_products() {
        let pf = PrincipalFactor::new(ClassId::D1, 5).unwrap();
        let idx = |f, s| {
            pf.elements.iter().position(|e| {
                *e == DClassElement {
                    first: f,
                    second: s,
                }
            })
        };
        // h[1,2] h[2,1] = c h1
        let d2 = PrincipalFactor::new(ClassId::D2, 5).unwrap();
        let i12 = d2
            .elements
            .iter()
            .position(|e| e.first == 2 && e.second == 1)
            .unwrap();
        assert_eq!(d2.table[i12][i12], Some(i12));
        let (a, b) = (idx(1, 2).unwrap(), idx(3, 4).unwrap());
        assert_eq!(pf.table[a][b], idx(1, 4));
        assert_eq!(pf.table[idx(1, 4).unwrap()][a], None);
        for e in pf.idempotents() {
            assert!(pf.elements[e].is_idempotent());
        }
        assert_eq!(pf.idempotents().len(), 3);
        for x in 0..pf.elements.len() {
            for y in 0..pf.elements.len() {
                if let Some(p) = pf.table[x][y] {
                    assert_eq!(pf.elements[p].first, pf.elements[x].first);
                    assert_eq!(pf.elements[p].second, pf.elements[y].second);
                }
            }
        }
    }

    #[test]
    fn ranks_small() {
        let budget = SearchBudget::default();
        for (n, expected) in [(5, 2), (6, 3), (7, 3)] {
            let pf = PrincipalFactor::new(ClassId::D1, n).unwrap();
            assert_eq!(rank_pf(&pf, &budget).unwrap().rank, expected, "n={n}");
        }
        let pf = PrincipalFactor::new(ClassId::D1, 5).unwrap();
        let r = idrank_pf(&pf, &budget).unwrap();
        assert_eq!(r.idrank, 3);
        assert!(r.unique_minimal && r.all_idempotents_needed);
        // without h[1,2] the R-class of 1 keeps only h[1,4], which is not idempotent
        let h12 = pf
            .elements
            .iter()
            .position(|e| e.first == 1 && e.second == 2)
            .unwrap();
        let rest = pf
            .idempotents()
            .iter()
            .filter(|&&e| e != h12)
            .fold(0u64, |m, &e| m | 1 << e);
        assert_eq!(pf.generated(rest) >> h12 & 1, 0);
    }

    #[test]
    fn rank_report_small() {
        let budget = SearchBudget::default();
        for (n, rank, idrank) in [(3, 2, 2), (4, 4, 4), (5, 4, 6)] {
            let r = verify_main2(n, &budget).unwrap();
            assert_eq!((r.rank_total, r.idrank_total), (rank, idrank));
            assert!(r.matches_formulas());
        }
        assert!(matches!(
            verify_main2(2, &budget),
            Err(StructureError::DegreeTooSmall(2))
        ));
        assert!(matches!(
            verify_main2(9, &budget),
            Err(StructureError::BudgetExceeded(_))
        ));
    }

    #[test]
    fn incomparable_n4() {
        let r = verify_incomparable(4, &SearchBudget::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.completing_z, [PlanarDiagram::hook(2, 4).unwrap()]);
    }

    #[test]
    fn eggbox_text() {
        let text = alloc::format!("{}", EggboxView::new(ClassId::D1, 5));
        assert!(text.starts_with("D1 (n=5): 2 R-classes x 2 L-classes, 3 idempotents"));
        assert!(text.contains("h[1,2]*"));
        assert!(text.contains("h[3,4]*"));
        assert!(!text.contains("h[1,4]*"));
    }
}

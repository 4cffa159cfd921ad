//! Solvers parameterized by the number `k` of non-solid cells.
//!
//! A shortest cover that is not a ⊙-prefix only occurs at ambiguous
//! positions, of which there are at most `k²`, and has a minimal covering set
//! of size at most `2k`. The general solver tries those covering sets with
//! [`TestCover`]; the partial-word solver splits on how many don't-cares the
//! occurrences leave and needs far fewer candidates.

use crate::cover::{odot_prefix_best, Algorithm, CoverResult, Limits, Odometer};
use crate::error::{Error, Result};
use crate::istring::IString;
use crate::lcp::LcpIndex;

/// `{z - z' + 1 : z >= z' in Z} ∩ [1, n]`, ascending.
pub fn ambiguous_positions(t: &IString) -> Vec<usize> {
    let zs = t.nonsolid_positions();
    let mut out: Vec<usize> = zs
        .iter()
        .enumerate()
        .flat_map(|(w, &z)| zs[..=w].iter().map(move |&y| z - y + 1))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

const NONE: u16 = u16::MAX;

/// For every subset `X` of the non-solid cells, the lowest-rank symbol in
/// all of them, if any.
///
/// Built as `best[mask(c)] = min c` over the symbols, where `mask(c)` is the
/// set of non-solid cells containing `c`, followed by a minimum over
/// supersets. `O(2^k k + σk)` time.
#[derive(Clone, Debug)]
pub struct SolidColumnTable {
    zs: Vec<usize>,
    entries: Vec<u16>,
}

impl SolidColumnTable {
    pub fn build(t: &IString, max_k: usize) -> Result<Self> {
        let zs = t.nonsolid_positions().to_vec();
        let k = zs.len();
        if k > max_k || k >= usize::BITS as usize - 1 {
            return Err(Error::budget(
                "column table over 2^k subsets",
                1u128 << k.min(127),
                1u128 << max_k.min(127),
            ));
        }
        let mut entries = vec![NONE; 1 << k];
        for c in 0..t.sigma() {
            let mask = zs
                .iter()
                .enumerate()
                .filter(|(_, &z)| t.cell(z).contains(c as u8))
                .fold(0usize, |m, (w, _)| m | 1 << w);
            entries[mask] = entries[mask].min(c as u16);
        }
        for bit in 0..k {
            for mask in 0..1usize << k {
                if mask & 1 << bit == 0 {
                    entries[mask] = entries[mask].min(entries[mask | 1 << bit]);
                }
            }
        }
        Ok(SolidColumnTable { zs, entries })
    }

    /// Lowest common symbol of the cells at the given non-solid positions.
    pub fn common_symbol(&self, positions: &[usize]) -> Result<Option<u8>> {
        let mut mask = 0usize;
        for &p in positions {
            let w = self.zs.binary_search(&p).map_err(|_| {
                Error::InvalidArgument(format!("position {p} is solid"))
            })?;
            mask |= 1 << w;
        }
        Ok(self.entry(mask))
    }

    pub fn entry(&self, mask: usize) -> Option<u8> {
        match self.entries[mask] {
            NONE => None,
            c => Some(c as u8),
        }
    }
}

/// How non-solid columns are resolved.
#[derive(Clone, Debug)]
enum Columns {
    /// Non-solid cells are the full alphabet.
    Partial,
    Table(SolidColumnTable),
    /// Intersect the cells directly.
    Direct,
}

/// `TestCover(P)`: decides whether some string of length
/// `m = n + 1 - max P` has every position of `P` as an occurrence and `P` as
/// a covering set, returning the lexicographically smallest one.
#[derive(Clone, Debug)]
pub struct TestCover<'a> {
    idx: &'a LcpIndex,
    columns: Columns,
}

impl<'a> TestCover<'a> {
    /// Partial words need no table; general strings get one when
    /// `k <= limits.column_table_k` and intersect cells directly otherwise.
    pub fn prepare(idx: &'a LcpIndex, limits: &Limits) -> Self {
        let t = idx.text();
        let columns = if t.is_partial_word() {
            Columns::Partial
        } else if t.k() <= limits.column_table_k {
            SolidColumnTable::build(t, limits.column_table_k)
                .map(Columns::Table)
                .unwrap_or(Columns::Direct)
        } else {
            Columns::Direct
        };
        TestCover { idx, columns }
    }

    /// Forces direct intersection; used to cross-check the table.
    pub fn direct(idx: &'a LcpIndex) -> Self {
        TestCover {
            idx,
            columns: Columns::Direct,
        }
    }

    pub fn test(&self, p: &[usize]) -> Result<Option<Vec<u8>>> {
        let t = self.idx.text();
        let n = t.len();
        if p.is_empty() || p.windows(2).any(|w| w[0] >= w[1]) || p[p.len() - 1] > n {
            return Err(Error::InvalidArgument(
                "P must be nonempty, strictly ascending and within 1..=n".into(),
            ));
        }
        let m = n + 1 - p[p.len() - 1];
        if p[0] != 1 || p.windows(2).any(|w| w[1] - w[0] > m) {
            return Ok(None);
        }
        if p.iter().any(|&i| self.idx.lcp_capped(1, i, m) < m) {
            return Ok(None);
        }
        let mut witness: Vec<u8> = Vec::with_capacity(m);
        let mut cells = Vec::with_capacity(p.len());
        let holes = t.nonsolid_upto(m);
        let mut next_hole = holes.iter().peekable();
        for z in 1..=m {
            if next_hole.peek() == Some(&&z) {
                next_hole.next();
                cells.clear();
                cells.extend(p.iter().map(|&i| i + z - 1));
                match self.column(&cells)? {
                    Some(c) => witness.push(c),
                    None => return Ok(None),
                }
            } else {
                witness.push(t.solid_rank(z).expect("solid cell"));
            }
        }
        Ok(Some(witness))
    }

    /// Lowest symbol common to the cells at `positions`.
    fn column(&self, positions: &[usize]) -> Result<Option<u8>> {
        let t = self.idx.text();
        if let Some(c) = positions.iter().find_map(|&q| t.solid_rank(q)) {
            return Ok(positions.iter().all(|&q| t.cell(q).contains(c)).then_some(c));
        }
        match &self.columns {
            Columns::Partial => Ok(Some(0)),
            Columns::Table(table) => table.common_symbol(positions),
            Columns::Direct => Ok(positions
                .iter()
                .fold(t.alphabet().full_set(), |acc, &q| acc.intersect(&t.cell(q)))
                .first()),
        }
    }
}

/// Calls `visit` on every chain `1 = x_1 < ... < x_r = a` drawn from
/// `cands` (ascending, ending with `a`) with consecutive gaps at most `m`,
/// at most `max_size` elements, and no removable element.
fn minimal_chains(
    cands: &[usize],
    m: usize,
    max_size: usize,
    budget: &mut Budget,
    visit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    fn go(
        cands: &[usize],
        m: usize,
        max_size: usize,
        chain: &mut Vec<usize>,
        budget: &mut Budget,
        visit: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        budget.spend(1)?;
        let a = *cands.last().unwrap();
        let last = *chain.last().unwrap();
        if last == a {
            return visit(chain);
        }
        if chain.len() == max_size {
            return Ok(());
        }
        let floor = match chain.len() {
            1 => last,
            len => last.max(chain[len - 2] + m),
        };
        let lo = cands.partition_point(|&x| x <= floor);
        let hi = cands.partition_point(|&x| x <= last + m);
        for w in lo..hi {
            chain.push(cands[w]);
            go(cands, m, max_size, chain, budget, visit)?;
            chain.pop();
        }
        Ok(())
    }
    if cands.first() != Some(&1) {
        return Ok(());
    }
    let mut chain = vec![1];
    go(cands, m, max_size, &mut chain, budget, visit)
}

struct Budget {
    used: u128,
    limit: u128,
}

impl Budget {
    fn spend(&mut self, amount: u128) -> Result<()> {
        self.used += amount;
        if self.used > self.limit {
            return Err(Error::budget("covering-set candidates", self.used, self.limit));
        }
        Ok(())
    }
}

/// Exact shortest cover for any indeterminate string: the best ⊙-prefix
/// cover, compared with `TestCover` over minimal covering sets of size at
/// most `2k` inside the ambiguous positions.
pub fn fpt_solve_general(idx: &LcpIndex, limits: &Limits) -> Result<CoverResult> {
    let t = idx.text();
    let n = t.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let mut best = odot_prefix_best(idx)?;
    let amb = ambiguous_positions(t);
    let tester = TestCover::prepare(idx, limits);
    let mut budget = Budget {
        used: 0,
        limit: limits.max_subsets,
    };
    for &a in amb.iter().rev() {
        let m = n + 1 - a;
        if m > best.bound() {
            break;
        }
        if idx.lcp_capped(1, a, m) < m {
            continue;
        }
        let cands: Vec<usize> = amb
            .iter()
            .copied()
            .take_while(|&i| i <= a)
            .filter(|&i| i == 1 || i == a || idx.lcp_capped(1, i, m) >= m)
            .collect();
        minimal_chains(&cands, m, 2 * t.k(), &mut budget, &mut |p| {
            if let Some(w) = tester.test(p)? {
                best.offer(w);
            }
            Ok(())
        })?;
    }
    Ok(best
        .finish(idx, Algorithm::FptGeneral)
        .expect("T always covers itself"))
}

/// Exact shortest cover for a partial word.
///
/// For each candidate length `m`, let `U = T[1..m]` and `P` the ambiguous
/// occurrences `j` where `U ⊙ j` keeps at most `⌊√k⌋` don't-cares. A cover
/// with an occurrence in `P` is found by filling those don't-cares with
/// symbols seen in the same column; otherwise its covering set avoids `P`,
/// has at most `⌈2√k⌉` elements, and is found with `TestCover`.
pub fn fpt_solve_partial(idx: &LcpIndex, limits: &Limits) -> Result<CoverResult> {
    let t = idx.text();
    let n = t.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if !t.is_partial_word() {
        return Err(Error::NotPartialWord);
    }
    let mut best = odot_prefix_best(idx)?;
    let k = t.k();
    let root = (k as f64).sqrt().floor() as usize;
    let pair_bound = (2.0 * (k as f64).sqrt()).ceil() as usize;
    let amb = ambiguous_positions(t);
    let tester = TestCover::prepare(idx, limits);
    let mut budget = Budget {
        used: 0,
        limit: limits.max_subsets,
    };
    const HOLE: u8 = u8::MAX;

    for &a in amb.iter().rev() {
        let m = n + 1 - a;
        if m > best.bound() {
            break;
        }
        if idx.lcp_capped(1, a, m) < m {
            continue;
        }
        let occ: Vec<usize> = amb
            .iter()
            .copied()
            .take_while(|&j| j <= a)
            .filter(|&j| idx.lcp_capped(1, j, m) >= m)
            .collect();
        let zs = t.nonsolid_upto(m);
        // column values of U ⊙ j at the non-solid cells of U
        let vals: Vec<Vec<u8>> = occ
            .iter()
            .map(|&j| {
                zs.iter()
                    .map(|&z| t.solid_rank(j + z - 1).unwrap_or(HOLE))
                    .collect()
            })
            .collect();
        let few: Vec<bool> = vals
            .iter()
            .map(|v| v.iter().filter(|&&c| c == HOLE).count() <= root)
            .collect();

        // columns see the symbols of every occurrence, plus the lowest rank
        let menus: Vec<Vec<u8>> = (0..zs.len())
            .map(|col| {
                let mut menu: Vec<u8> = vals.iter().map(|v| v[col]).filter(|&c| c != HOLE).collect();
                menu.push(0);
                menu.sort_unstable();
                menu.dedup();
                menu
            })
            .collect();

        let mut fill = Vec::new();
        let mut tried = std::collections::HashSet::new();
        for (w, v) in vals.iter().enumerate() {
            if !few[w] {
                continue;
            }
            let holes: Vec<usize> = (0..zs.len()).filter(|&col| v[col] == HOLE).collect();
            let odometer = Odometer::new(holes.iter().map(|&col| menus[col].clone()).collect());
            budget.spend(odometer.total)?;
            let mut s = v.clone();
            for index in 0..odometer.total {
                odometer.nth(index, &mut fill);
                for (&col, &c) in holes.iter().zip(&fill) {
                    s[col] = c;
                }
                if !tried.insert(s.clone()) {
                    continue;
                }
                let mut prev = 0;
                let mut gap = 0;
                for (j, vj) in occ.iter().zip(&vals) {
                    if vj.iter().zip(&s).all(|(&x, &y)| x == HOLE || x == y) {
                        gap = gap.max(j - prev);
                        prev = *j;
                    }
                }
                gap = gap.max(n + 1 - prev);
                if gap <= m {
                    let mut cols = s.iter();
                    let witness = (1..=m)
                        .map(|z| t.solid_rank(z).unwrap_or_else(|| *cols.next().unwrap()))
                        .collect();
                    best.offer(witness);
                }
            }
        }

        if !few[0] && !few[occ.len() - 1] {
            let cands: Vec<usize> = occ
                .iter()
                .zip(&few)
                .filter(|(_, &f)| !f)
                .map(|(&j, _)| j)
                .collect();
            minimal_chains(&cands, m, pair_bound.max(2), &mut budget, &mut |p| {
                if let Some(w) = tester.test(p)? {
                    best.offer(w);
                }
                Ok(())
            })?;
        }
    }
    Ok(best
        .finish(idx, Algorithm::FptPartial)
        .expect("T always covers itself"))
}

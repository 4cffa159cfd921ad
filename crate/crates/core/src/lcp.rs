//! Longest-common-prefix queries between suffixes of an i-string.
//!
//! Every non-solid cell is replaced by its own sentinel symbol, giving a solid
//! string `T$` over `Σ ∪ {$1..$k}`. A suffix array with an LCP array and a
//! sparse-table RMQ answers `lcp_{T$}(i, j)` in constant time. An LCP query in
//! `T` then repeatedly jumps over the solid run reported by `T$` and steps one
//! cell at a time across sentinels, so it does at most `O(k)` iterations.

use crate::error::{Error, Result};
use crate::istring::{IString, IntersectionTable};
use crate::symbols::SymbolSet;

/// Suffix array of `s`, by prefix doubling with radix sorting.
pub fn suffix_array(s: &[u32]) -> Vec<usize> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    let mut sa: Vec<usize> = (0..n).collect();
    sa.sort_unstable_by_key(|&i| s[i]);
    let mut rank = vec![0usize; n];
    for w in 1..n {
        rank[sa[w]] = rank[sa[w - 1]] + usize::from(s[sa[w]] != s[sa[w - 1]]);
    }
    let mut second = Vec::with_capacity(n);
    let mut next = vec![0usize; n];
    let mut count = vec![0usize; n + 1];
    let mut step = 1;
    while rank[sa[n - 1]] < n - 1 {
        // order by the rank of i + step, suffixes running off the end first
        second.clear();
        second.extend(n.saturating_sub(step)..n);
        second.extend(sa.iter().filter(|&&p| p >= step).map(|&p| p - step));

        count.iter_mut().for_each(|c| *c = 0);
        for &r in &rank {
            count[r + 1] += 1;
        }
        for r in 1..=n {
            count[r] += count[r - 1];
        }
        for &p in &second {
            sa[count[rank[p]]] = p;
            count[rank[p]] += 1;
        }

        let key = |p: usize| (rank[p], if p + step < n { rank[p + step] + 1 } else { 0 });
        next[sa[0]] = 0;
        for w in 1..n {
            next[sa[w]] = next[sa[w - 1]] + usize::from(key(sa[w]) != key(sa[w - 1]));
        }
        std::mem::swap(&mut rank, &mut next);
        step *= 2;
    }
    sa
}

/// Kasai's algorithm: `lcp[r] = lcp(sa[r-1], sa[r])`, with `lcp[0] = 0`.
pub fn lcp_array(s: &[u32], sa: &[usize]) -> Vec<u32> {
    let n = s.len();
    let mut rank = vec![0usize; n];
    for (r, &p) in sa.iter().enumerate() {
        rank[p] = r;
    }
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] > 0 {
            let j = sa[rank[i] - 1];
            while i + h < n && j + h < n && s[i + h] == s[j + h] {
                h += 1;
            }
            lcp[rank[i]] = h as u32;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

/// Range-minimum over a fixed array; O(n log n) build, O(1) query.
#[derive(Clone, Debug)]
pub struct SparseTable {
    n: usize,
    levels: Vec<Vec<u32>>,
}

impl SparseTable {
    pub fn new(values: &[u32]) -> Self {
        let n = values.len();
        let mut levels = vec![values.to_vec()];
        let mut len = 1;
        while 2 * len <= n {
            let prev = levels.last().unwrap();
            let row: Vec<u32> = (0..=n - 2 * len)
                .map(|i| prev[i].min(prev[i + len]))
                .collect();
            levels.push(row);
            len *= 2;
        }
        SparseTable { n, levels }
    }

    /// Minimum of `values[lo..=hi]`.
    #[inline]
    pub fn min(&self, lo: usize, hi: usize) -> u32 {
        debug_assert!(lo <= hi && hi < self.n);
        let level = (hi - lo + 1).ilog2() as usize;
        let row = &self.levels[level];
        row[lo].min(row[hi + 1 - (1 << level)])
    }
}

/// Constant-time LCP between suffixes of a solid integer string.
#[derive(Clone, Debug)]
pub struct SolidLcp {
    rank: Vec<u32>,
    rmq: SparseTable,
}

impl SolidLcp {
    pub fn new(s: &[u32]) -> Self {
        let sa = suffix_array(s);
        let lcp = lcp_array(s, &sa);
        let mut rank = vec![0u32; s.len()];
        for (r, &p) in sa.iter().enumerate() {
            rank[p] = r as u32;
        }
        SolidLcp {
            rank,
            rmq: SparseTable::new(&lcp),
        }
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    /// LCP of the suffixes starting at 0-based offsets `i` and `j`.
    #[inline]
    pub fn query(&self, i: usize, j: usize) -> usize {
        if i == j {
            return self.rank.len() - i;
        }
        let (a, b) = (self.rank[i] as usize, self.rank[j] as usize);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.rmq.min(lo + 1, hi) as usize
    }
}

/// The stepping loop shared by both index flavours; positions are 1-based.
#[inline]
fn stepping_lcp(
    mut i: usize,
    mut j: usize,
    n: usize,
    cap: usize,
    solid: &SolidLcp,
    matches: impl Fn(usize, usize) -> bool,
) -> usize {
    let mut res = 0;
    while res < cap && i <= n && j <= n && matches(i, j) {
        let p = solid.query(i - 1, j - 1).max(1);
        i += p;
        j += p;
        res += p;
    }
    res.min(cap)
}

/// A symbol of the sentinel-solidified string `T$`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolidifiedSymbol {
    /// A solid cell, by alphabet rank.
    Symbol(u8),
    /// The sentinel replacing the `n`-th non-solid cell (1-based).
    Sentinel(usize),
}

/// LCP index of one i-string.
#[derive(Clone, Debug)]
pub struct LcpIndex {
    text: IString,
    solidified: Vec<u32>,
    solid: SolidLcp,
}

impl LcpIndex {
    pub fn build(text: &IString) -> Self {
        let sigma = text.sigma() as u32;
        let mut sentinel = sigma;
        let solidified: Vec<u32> = (1..=text.len())
            .map(|i| match text.solid_rank(i) {
                Some(r) => u32::from(r),
                None => {
                    sentinel += 1;
                    sentinel - 1
                }
            })
            .collect();
        let solid = SolidLcp::new(&solidified);
        LcpIndex {
            text: text.clone(),
            solidified,
            solid,
        }
    }

    pub fn text(&self) -> &IString {
        &self.text
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    /// The solidified string `T$`.
    pub fn solidified(&self) -> Vec<SolidifiedSymbol> {
        let sigma = self.text.sigma() as u32;
        self.solidified
            .iter()
            .map(|&c| {
                if c < sigma {
                    SolidifiedSymbol::Symbol(c as u8)
                } else {
                    SolidifiedSymbol::Sentinel((c - sigma) as usize + 1)
                }
            })
            .collect()
    }

    /// `lcp_{T$}(i, j)`.
    pub fn solid_lcp(&self, i: usize, j: usize) -> usize {
        self.solid.query(i - 1, j - 1)
    }

    /// Length of the longest common matching prefix of `T[i..n]` and
    /// `T[j..n]`. Positions past `n` give 0.
    #[inline]
    pub fn lcp(&self, i: usize, j: usize) -> usize {
        self.lcp_capped(i, j, usize::MAX)
    }

    /// `min(cap, lcp(i, j))`, stopping as soon as `cap` is reached.
    #[inline]
    pub fn lcp_capped(&self, i: usize, j: usize, cap: usize) -> usize {
        if i == 0 || j == 0 {
            return 0;
        }
        stepping_lcp(i, j, self.text.len(), cap, &self.solid, |a, b| {
            self.text.eq_at(a, b)
        })
    }

    /// `lcp(1, i)` for every `i` in `1..=n`; entry 0 is unused.
    pub fn prefix_lcps(&self) -> Vec<usize> {
        let n = self.text.len();
        let mut out = vec![0; n + 1];
        for (i, v) in out.iter_mut().enumerate().skip(1) {
            *v = self.lcp(1, i);
        }
        out
    }

    /// `Occ(T[1..m], T)`.
    pub fn prefix_occurrences(&self, m: usize) -> Vec<usize> {
        let n = self.text.len();
        if m > n {
            return Vec::new();
        }
        (1..=n + 1 - m)
            .filter(|&j| self.lcp_capped(1, j, m) >= m)
            .collect()
    }

    /// `lcp(S, T[i..n])` for a solid string `S` matching `T[1..|S|]`.
    ///
    /// Computed from `lcp(1, i)` plus a check of the non-solid cells of the
    /// prefix, where `S` may have picked a symbol absent at `T[i + z - 1]`.
    #[inline]
    pub fn solid_prefix_lcp(&self, s: &[u8], i: usize, prefix_lcp: usize) -> usize {
        let mut reach = prefix_lcp.min(s.len());
        for &z in self.text.nonsolid_upto(reach) {
            if !self.text.cell(i + z - 1).contains(s[z - 1]) {
                reach = z - 1;
                break;
            }
        }
        reach
    }

    /// `Occ(T[1..m], T)` split into solid and non-solid occurrences, with the
    /// solid ones grouped by `T[1..b] ⊙ j`.
    pub fn classify_prefix_occurrences(&self, b: usize, e: usize) -> Result<OccurrenceClassification> {
        classify(self, b, e)
    }
}

/// Occurrences of a prefix `U = T[1..b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccurrenceClassification {
    pub b: usize,
    pub e: usize,
    /// `SolidOcc(U, T)`, ascending.
    pub solid: Vec<usize>,
    /// `NonSolidOcc(U, T)`, ascending.
    pub nonsolid: Vec<usize>,
    /// Partition of `solid` by the value of `U ⊙ j`, ordered by that value.
    pub classes: Vec<OccurrenceClass>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccurrenceClass {
    /// Symbols of `U ⊙ j` at the non-solid positions of `U`, in order.
    pub key: Vec<u8>,
    /// Ascending members.
    pub members: Vec<usize>,
    /// Member maximizing `lcp(T[1..e], T[j..n])`, the smallest on ties.
    pub representative: usize,
    /// `lcp(T[1..e], T[representative..n])`.
    pub reach: usize,
}

impl OccurrenceClass {
    /// `T[1..reach] ⊙ representative` as ranks.
    pub fn extended_prefix(&self, text: &IString) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.reach);
        let mut key = self.key.iter();
        for z in 1..=self.reach {
            match text.solid_rank(z) {
                Some(r) => out.push(r),
                None => out.push(*key.next().expect("key covers the non-solid cells of U")),
            }
        }
        out
    }
}

fn classify(idx: &LcpIndex, b: usize, e: usize) -> Result<OccurrenceClassification> {
    let t = idx.text();
    let n = t.len();
    for v in [b, e] {
        if v == 0 || v > n {
            return Err(Error::OutOfRange { position: v, len: n });
        }
    }
    if b > e || t.nonsolid_upto(e).len() != t.nonsolid_upto(b).len() {
        return Err(Error::InvalidArgument(format!(
            "T[{}..{}] must be solid with b <= e",
            b + 1,
            e
        )));
    }
    let holes = t.nonsolid_upto(b);
    let mut solid = Vec::new();
    let mut nonsolid = Vec::new();
    let mut keys: Vec<Vec<u8>> = Vec::new();
    'outer: for j in 1..=n + 1 - b {
        if idx.lcp_capped(1, j, b) < b {
            continue;
        }
        let mut key = Vec::with_capacity(holes.len());
        for &z in holes {
            match t.meet(z, j + z - 1).solid_rank() {
                Some(r) => key.push(r),
                None => {
                    nonsolid.push(j);
                    continue 'outer;
                }
            }
        }
        solid.push(j);
        keys.push(key);
    }

    let order = radix_order(&keys, t.sigma());
    let mut classes: Vec<OccurrenceClass> = Vec::new();
    for w in order {
        let j = solid[w];
        let reach = idx.lcp_capped(1, j, e);
        match classes.last_mut() {
            Some(c) if c.key == keys[w] => {
                c.members.push(j);
                if reach > c.reach {
                    c.reach = reach;
                    c.representative = j;
                }
            }
            _ => classes.push(OccurrenceClass {
                key: keys[w].clone(),
                members: vec![j],
                representative: j,
                reach,
            }),
        }
    }
    Ok(OccurrenceClassification {
        b,
        e,
        solid,
        nonsolid,
        classes,
    })
}

/// Stable LSD radix sort of equal-length keys; returns the index order.
fn radix_order(keys: &[Vec<u8>], sigma: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    let width = keys.first().map_or(0, Vec::len);
    let mut buf = vec![0usize; keys.len()];
    let mut count = vec![0usize; sigma + 1];
    for col in (0..width).rev() {
        count.iter_mut().for_each(|c| *c = 0);
        for &w in &order {
            count[keys[w][col] as usize + 1] += 1;
        }
        for s in 1..=sigma {
            count[s] += count[s - 1];
        }
        for &w in &order {
            let slot = &mut count[keys[w][col] as usize];
            buf[*slot] = w;
            *slot += 1;
        }
        std::mem::swap(&mut order, &mut buf);
    }
    order
}

const SEPARATOR: u32 = u32::MAX;
const NONSOLID_TAG: u32 = 1 << 16;

/// `Occ(S, T)`: every `j` with `S ≈ T[j..j+|S|-1]`, ascending.
///
/// Indexes `S # T` with a fresh separator and steps LCP queries from the
/// start of `S` against each text position.
pub fn occurrences(pattern: &IString, text: &IString) -> Result<Vec<usize>> {
    if pattern.alphabet() != text.alphabet() {
        return Err(Error::InvalidArgument(
            "pattern and text use different alphabets".into(),
        ));
    }
    let (m, n) = (pattern.len(), text.len());
    if m > n {
        return Ok(Vec::new());
    }
    if m == 0 {
        return Ok((1..=n).collect());
    }

    let mut cells: Vec<SymbolSet> = Vec::with_capacity(m + n + 1);
    cells.extend_from_slice(pattern.cells());
    cells.push(SymbolSet::EMPTY);
    cells.extend_from_slice(text.cells());

    let nonsolid: Vec<usize> = (0..cells.len())
        .filter(|&p| p != m && !cells[p].is_solid())
        .collect();
    let (table, class_of) = IntersectionTable::build(nonsolid.iter().map(|&p| cells[p]));

    let sigma = text.sigma() as u32;
    let mut codes = vec![0u32; cells.len()];
    let mut solidified = vec![0u32; cells.len()];
    for (p, cell) in cells.iter().enumerate() {
        if let Some(r) = cell.solid_rank() {
            codes[p] = u32::from(r);
            solidified[p] = u32::from(r);
        }
    }
    codes[m] = SEPARATOR;
    solidified[m] = sigma + nonsolid.len() as u32;
    for (w, (&p, &class)) in nonsolid.iter().zip(&class_of).enumerate() {
        codes[p] = NONSOLID_TAG + class;
        solidified[p] = sigma + w as u32;
    }
    let solid = SolidLcp::new(&solidified);

    let matches = |i: usize, j: usize| {
        let (a, b) = (codes[i - 1], codes[j - 1]);
        if a == SEPARATOR || b == SEPARATOR {
            return false;
        }
        if a == b {
            return true;
        }
        match (a < NONSOLID_TAG, b < NONSOLID_TAG) {
            (true, true) => false,
            (true, false) => cells[j - 1].contains(a as u8),
            (false, true) => cells[i - 1].contains(b as u8),
            (false, false) => table.nonempty(a - NONSOLID_TAG, b - NONSOLID_TAG),
        }
    };
    let total = cells.len();
    Ok((1..=n + 1 - m)
        .filter(|&j| stepping_lcp(1, m + 1 + j, total, m, &solid, matches) >= m)
        .collect())
}

//! Shortest covers built on the `ShortestCover(S, L)` subroutine.
//!
//! The subroutine takes a solid prefix `S` of `T` and candidate positions
//! `L`, buckets the positions by `dist[i] = lcp(S, T[i..n])`, and deletes the
//! buckets in increasing order from a linked list terminated by `n + 1`. The
//! first time the largest gap in the list is at most the current bucket value,
//! that gap is the length of the shortest cover that is a prefix of `S` and
//! has a covering set inside `L`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::istring::IString;
use crate::lcp::LcpIndex;

/// Which solver produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Simple,
    OdotPrefix,
    FptGeneral,
    FptPartial,
    Oracle,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Simple => "simple",
            Algorithm::OdotPrefix => "odot",
            Algorithm::FptGeneral => "fpt",
            Algorithm::FptPartial => "partial",
            Algorithm::Oracle => "oracle",
        }
    }
}

/// A shortest cover together with a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverResult {
    pub length: usize,
    /// The cover, as alphabet ranks.
    pub witness: Vec<u8>,
    /// Ascending occurrence positions of `witness` whose windows cover `T`,
    /// greedily minimized.
    pub covering_set: Vec<usize>,
    pub algorithm: Algorithm,
}

impl CoverResult {
    pub fn witness_text(&self, text: &IString) -> String {
        text.alphabet().render(&self.witness)
    }
}

/// Enumeration and table budgets shared by the solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Solid prefixes enumerated by [`simple_solve`].
    pub max_prefixes: u128,
    /// Covering-set candidates and fillings tried by the FPT solvers.
    pub max_subsets: u128,
    /// Largest `k` for which the per-subset column table is built.
    pub column_table_k: usize,
    /// Solid strings enumerated by the brute-force oracle.
    pub oracle_budget: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_prefixes: 1 << 20,
            max_subsets: 1 << 24,
            column_table_k: 20,
            oracle_budget: 1 << 22,
        }
    }
}

/// `max{ i_{t+1} - i_t }` over an ascending list.
pub fn maxgap(positions: &[usize]) -> Result<usize> {
    if positions.len() < 2 {
        return Err(Error::InvalidArgument(
            "maxgap needs at least two positions".into(),
        ));
    }
    Ok(positions.windows(2).map(|w| w[1] - w[0]).max().unwrap())
}

/// Doubly linked ascending position list with its largest gap.
///
/// The first and last entries are anchors and cannot be removed, so the
/// maintained maximum gap only grows under deletions and always equals the
/// recomputed value. The backing arrays are reused across [`reset`] calls.
///
/// [`reset`]: GapList::reset
#[derive(Clone, Debug, Default)]
pub struct GapList {
    prev: Vec<usize>,
    next: Vec<usize>,
    present: Vec<bool>,
    first: usize,
    last: usize,
    maxgap: usize,
}

impl GapList {
    /// A list over `positions`, which must be strictly ascending with at
    /// least two entries.
    pub fn new(positions: &[usize]) -> Result<Self> {
        let mut list = GapList::default();
        list.reset(positions)?;
        Ok(list)
    }

    pub fn reset(&mut self, positions: &[usize]) -> Result<()> {
        if positions.len() < 2 || positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "gap list needs two or more strictly ascending positions".into(),
            ));
        }
        let top = *positions.last().unwrap() + 1;
        if self.prev.len() < top {
            self.prev.resize(top, 0);
            self.next.resize(top, 0);
            self.present.resize(top, false);
        }
        // clear the previous content
        if self.last > self.first {
            let mut x = self.first;
            while x != self.last {
                self.present[x] = false;
                x = self.next[x];
            }
            self.present[self.last] = false;
        }
        for w in positions.windows(2) {
            self.next[w[0]] = w[1];
            self.prev[w[1]] = w[0];
        }
        for &p in positions {
            self.present[p] = true;
        }
        self.first = positions[0];
        self.last = *positions.last().unwrap();
        self.maxgap = maxgap(positions)?;
        Ok(())
    }

    #[inline]
    pub fn maxgap(&self) -> usize {
        self.maxgap
    }

    pub fn first(&self) -> usize {
        self.first
    }

    pub fn contains(&self, x: usize) -> bool {
        self.present.get(x).copied().unwrap_or(false)
    }

    /// Unlinks an interior element. Returns `false` (and does nothing) for an
    /// anchor or an absent element.
    #[inline]
    pub fn remove(&mut self, x: usize) -> bool {
        if x == self.first || x == self.last || !self.contains(x) {
            return false;
        }
        let (p, q) = (self.prev[x], self.next[x]);
        self.next[p] = q;
        self.prev[q] = p;
        self.present[x] = false;
        self.maxgap = self.maxgap.max(q - p);
        true
    }

    /// Current content, ascending.
    pub fn to_vec(&self) -> Vec<usize> {
        let mut out = vec![self.first];
        let mut x = self.first;
        while x != self.last {
            x = self.next[x];
            out.push(x);
        }
        out
    }
}

/// The processing phase of `ShortestCover(S, L)`.
///
/// `list` is `L` ascending; `groups` lists `(j, L_j)` for the distinct `dist`
/// values `j` in increasing order.
fn process_buckets<'a>(
    n: usize,
    list: &[usize],
    groups: impl Iterator<Item = (usize, &'a [usize])>,
    scratch: &mut GapList,
    buf: &mut Vec<usize>,
) -> Option<usize> {
    if list.first() != Some(&1) {
        return None;
    }
    buf.clear();
    buf.extend_from_slice(list);
    buf.push(n + 1);
    scratch.reset(buf).ok()?;
    for (j, bucket) in groups {
        let g = scratch.maxgap();
        if g <= j {
            return Some(g);
        }
        for &x in bucket {
            if x == 1 {
                return None;
            }
            scratch.remove(x);
        }
    }
    None
}

/// Splits `(dist, position)` pairs, already sorted by dist, into groups.
fn groups_of(sorted: &[(usize, usize)], members: &mut Vec<usize>) -> Vec<(usize, usize, usize)> {
    members.clear();
    let mut groups = Vec::new();
    for (w, &(d, p)) in sorted.iter().enumerate() {
        if w == 0 || sorted[w - 1].0 != d {
            groups.push((d, members.len(), members.len()));
        }
        members.push(p);
        groups.last_mut().unwrap().2 = members.len();
    }
    groups
}

fn check_prefix(text: &IString, s: &[u8]) -> Result<()> {
    if s.len() > text.len() {
        return Err(Error::InvalidArgument("S is longer than T".into()));
    }
    for (z, &c) in s.iter().enumerate() {
        if !text.cell(z + 1).contains(c) {
            return Err(Error::InvalidArgument(format!(
                "S does not match T at position {}",
                z + 1
            )));
        }
    }
    Ok(())
}

fn check_positions(n: usize, l: &[usize]) -> Result<()> {
    if l.windows(2).any(|w| w[0] >= w[1]) || l.iter().any(|&p| p == 0 || p > n) {
        return Err(Error::InvalidArgument(
            "L must be strictly ascending within 1..=n".into(),
        ));
    }
    Ok(())
}

/// `ShortestCover(S, L)`: the length of the shortest cover of `T` that is a
/// prefix of the solid prefix `s` and has a covering set inside `l`.
pub fn shortest_cover_restricted(idx: &LcpIndex, s: &[u8], l: &[usize]) -> Result<Option<usize>> {
    let t = idx.text();
    check_prefix(t, s)?;
    check_positions(t.len(), l)?;
    let mut pairs: Vec<(usize, usize)> = l
        .iter()
        .map(|&i| {
            let plcp = idx.lcp_capped(1, i, s.len());
            (idx.solid_prefix_lcp(s, i, plcp), i)
        })
        .collect();
    pairs.sort_unstable();
    let mut members = Vec::new();
    let groups = groups_of(&pairs, &mut members);
    let mut scratch = GapList::default();
    let mut buf = Vec::new();
    Ok(process_buckets(
        t.len(),
        l,
        groups.iter().map(|&(d, a, b)| (d, &members[a..b])),
        &mut scratch,
        &mut buf,
    ))
}

/// One `(S, L)` instance of [`shortest_cover_batch`], with
/// `S = T[1..len] ⊙ anchor` given by its descriptor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchInstance {
    pub len: usize,
    pub anchor: usize,
    pub positions: Vec<usize>,
}

impl BatchInstance {
    /// Materializes `T[1..m] ⊙ anchor` for `m <= len`.
    pub fn prefix(&self, text: &IString, m: usize) -> Vec<u8> {
        (1..=m)
            .map(|z| match text.solid_rank(z) {
                Some(r) => r,
                None => text
                    .meet(z, self.anchor + z - 1)
                    .first()
                    .expect("anchor is an occurrence"),
            })
            .collect()
    }
}

/// Runs `ShortestCover(S, L)` for a collection of ⊙-prefix instances.
///
/// `dist` values come from one text LCP query plus a check of the non-solid
/// cells of `T[1..len]`; all `(dist, instance, position)` triples are then
/// bucket sorted together, and the instances are processed one after another
/// on a shared list.
pub fn shortest_cover_batch(idx: &LcpIndex, batch: &[BatchInstance]) -> Result<Vec<Option<usize>>> {
    let t = idx.text();
    let (n, k) = (t.len(), t.k());
    if batch.len() > n.max(1) {
        return Err(Error::InvalidArgument(format!(
            "batch of {} instances exceeds n = {n}",
            batch.len()
        )));
    }
    let total: usize = batch.iter().map(|b| b.positions.len()).sum();
    if total > n * (k * k + 2) {
        return Err(Error::InvalidArgument(format!(
            "batch lists hold {total} positions, more than n(k^2+2)"
        )));
    }

    // descriptors: symbols of S at the non-solid cells of T[1..len]
    let mut holes: Vec<Vec<(usize, u8)>> = Vec::with_capacity(batch.len());
    for inst in batch {
        check_positions(n, &inst.positions)?;
        if inst.len == 0 || inst.anchor == 0 || inst.anchor + inst.len - 1 > n {
            return Err(Error::OutOfRange {
                position: inst.anchor + inst.len,
                len: n,
            });
        }
        if idx.lcp_capped(1, inst.anchor, inst.len) < inst.len {
            return Err(Error::NotAnOccurrence {
                position: inst.anchor,
                length: inst.len,
            });
        }
        let mut h = Vec::new();
        for &z in t.nonsolid_upto(inst.len) {
            let r = t.meet(z, inst.anchor + z - 1).solid_rank().ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "T[1..{}] ⊙ {} is not solid",
                    inst.len, inst.anchor
                ))
            })?;
            h.push((z, r));
        }
        holes.push(h);
    }

    // dist values, then one counting sort by dist and a stable one by instance
    let mut triples: Vec<(usize, u32, usize)> = Vec::with_capacity(total);
    for (w, inst) in batch.iter().enumerate() {
        for &i in &inst.positions {
            let mut reach = idx.lcp_capped(1, i, inst.len);
            for &(z, r) in &holes[w] {
                if z > reach {
                    break;
                }
                if !t.cell(i + z - 1).contains(r) {
                    reach = z - 1;
                    break;
                }
            }
            triples.push((reach, w as u32, i));
        }
    }
    let by_dist = counting_sort(&triples, n + 1, |t| t.0);
    let sorted = counting_sort(&by_dist, batch.len(), |t| t.1 as usize);

    let mut results = Vec::with_capacity(batch.len());
    let mut scratch = GapList::default();
    let mut buf = Vec::new();
    let mut members = Vec::new();
    let mut pairs = Vec::new();
    let mut start = 0;
    for (w, inst) in batch.iter().enumerate() {
        let end = start + inst.positions.len();
        pairs.clear();
        pairs.extend(sorted[start..end].iter().map(|&(d, _, i)| (d, i)));
        debug_assert!(sorted[start..end].iter().all(|x| x.1 as usize == w));
        let groups = groups_of(&pairs, &mut members);
        results.push(process_buckets(
            n,
            &inst.positions,
            groups.iter().map(|&(d, a, b)| (d, &members[a..b])),
            &mut scratch,
            &mut buf,
        ));
        start = end;
    }
    Ok(results)
}

fn counting_sort<T: Copy>(items: &[T], buckets: usize, key: impl Fn(&T) -> usize) -> Vec<T> {
    let mut count = vec![0usize; buckets + 1];
    for it in items {
        count[key(it) + 1] += 1;
    }
    for b in 1..=buckets {
        count[b] += count[b - 1];
    }
    let mut out = items.to_vec();
    for it in items {
        let slot = &mut count[key(it)];
        out[*slot] = *it;
        *slot += 1;
    }
    out
}

/// Occurrences of a solid prefix `w` of `T`, via the index.
pub fn solid_prefix_occurrences(idx: &LcpIndex, w: &[u8]) -> Vec<usize> {
    let n = idx.len();
    let m = w.len();
    if m == 0 || m > n {
        return Vec::new();
    }
    (1..=n + 1 - m)
        .filter(|&i| {
            let plcp = idx.lcp_capped(1, i, m);
            plcp >= m && idx.solid_prefix_lcp(w, i, plcp) >= m
        })
        .collect()
}

/// Greedy minimal covering set from ascending occurrences of a length-`m`
/// string, or `None` when the occurrences leave a gap.
pub fn minimal_covering_set(n: usize, m: usize, occurrences: &[usize]) -> Option<Vec<usize>> {
    if m == 0 || occurrences.first() != Some(&1) {
        return None;
    }
    let mut chosen = vec![1];
    let mut covered = m;
    let mut w = 1;
    while covered < n {
        let mut pick = None;
        while w < occurrences.len() && occurrences[w] <= covered + 1 {
            pick = Some(occurrences[w]);
            w += 1;
        }
        let x = pick?;
        chosen.push(x);
        covered = x + m - 1;
    }
    Some(chosen)
}

/// Packages a witness known to be a cover.
pub(crate) fn certify(idx: &LcpIndex, witness: Vec<u8>, algorithm: Algorithm) -> CoverResult {
    let occ = solid_prefix_occurrences(idx, &witness);
    let covering_set = minimal_covering_set(idx.len(), witness.len(), &occ)
        .expect("solver returned a witness that is not a cover");
    CoverResult {
        length: witness.len(),
        witness,
        covering_set,
        algorithm,
    }
}

/// Running minimum of `(length, witness)`; ties go to the lexicographically
/// smallest witness by rank.
#[derive(Clone, Debug, Default)]
pub(crate) struct Best {
    pub(crate) found: Option<(usize, Vec<u8>)>,
}

impl Best {
    pub(crate) fn bound(&self) -> usize {
        self.found.as_ref().map_or(usize::MAX, |f| f.0)
    }

    pub(crate) fn offer(&mut self, witness: Vec<u8>) {
        let len = witness.len();
        let better = match &self.found {
            None => true,
            Some((l, w)) => (len, &witness) < (*l, w),
        };
        if better {
            self.found = Some((len, witness));
        }
    }

    pub(crate) fn merge(mut self, other: Best) -> Best {
        if let Some((_, w)) = other.found {
            self.offer(w);
        }
        self
    }

    pub(crate) fn finish(self, idx: &LcpIndex, algorithm: Algorithm) -> Option<CoverResult> {
        self.found.map(|(_, w)| certify(idx, w, algorithm))
    }
}

/// The shortest cover of length at least `⌈n/2⌉`: such a string is a cover
/// exactly when it occurs both as a prefix and as a suffix. The witness takes
/// the lowest-rank symbol of each `T[z] ∩ T[n-m+z]`.
pub fn long_cover_search(idx: &LcpIndex) -> Option<CoverResult> {
    long_cover_witness(idx).map(|w| certify(idx, w, Algorithm::Simple))
}

pub(crate) fn long_cover_witness(idx: &LcpIndex) -> Option<Vec<u8>> {
    let t = idx.text();
    let n = t.len();
    if n == 0 {
        return None;
    }
    (n.div_ceil(2)..=n)
        .find(|&m| idx.lcp_capped(1, n - m + 1, m) >= m)
        .map(|m| {
            (1..=m)
                .map(|z| t.meet(z, n - m + z).first().expect("prefix matches suffix"))
                .collect()
        })
}

/// Enumerates the solid strings matching a list of cells; the last cell
/// varies fastest, so the order is lexicographic by rank.
pub(crate) struct Odometer {
    choices: Vec<Vec<u8>>,
    radix: Vec<u128>,
    pub(crate) total: u128,
}

impl Odometer {
    pub(crate) fn new(choices: Vec<Vec<u8>>) -> Self {
        let mut radix = vec![1u128; choices.len()];
        let mut total: u128 = 1;
        for (w, c) in choices.iter().enumerate().rev() {
            radix[w] = total;
            total = total.saturating_mul(c.len() as u128);
        }
        Odometer {
            choices,
            radix,
            total,
        }
    }

    /// The `index`-th combination.
    pub(crate) fn nth(&self, mut index: u128, out: &mut Vec<u8>) {
        out.clear();
        for (w, c) in self.choices.iter().enumerate() {
            let digit = index / self.radix[w];
            index %= self.radix[w];
            out.push(c[digit as usize]);
        }
    }
}

/// Exact shortest cover by enumerating the solid prefixes of length
/// `⌊n/2⌋` (at most `σ^{k/2}` after orienting `T`) and running
/// `ShortestCover(S, {1..n})` on each, plus the long-cover check.
pub fn simple_solve(idx: &LcpIndex, max_prefixes: u128) -> Result<CoverResult> {
    let t = idx.text();
    let n = t.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let half = n / 2;
    let front = t.nonsolid_upto(half).len();
    let back = t.nonsolid_positions().len() - t.nonsolid_upto(n - half).len();

    let reversed_idx;
    let (work, flip) = if back < front {
        reversed_idx = LcpIndex::build(&t.reverse());
        (&reversed_idx, true)
    } else {
        (idx, false)
    };

    let mut best = Best::default();
    if half > 0 {
        let wt = work.text();
        let holes = wt.nonsolid_upto(half);
        let odometer = Odometer::new(holes.iter().map(|&z| wt.cell(z).iter().collect()).collect());
        if odometer.total > max_prefixes {
            return Err(Error::budget(
                "solid prefixes of length n/2",
                odometer.total,
                max_prefixes,
            ));
        }
        let plcp: Vec<usize> = (0..=n)
            .map(|i| if i == 0 { 0 } else { work.lcp_capped(1, i, half) })
            .collect();
        let all: Vec<usize> = (1..=n).collect();

        struct Scratch {
            prefix: Vec<u8>,
            fill: Vec<u8>,
            count: Vec<usize>,
            members: Vec<usize>,
            groups: Vec<(usize, usize, usize)>,
            dist: Vec<usize>,
            list: GapList,
            buf: Vec<usize>,
        }
        let new_scratch = || Scratch {
            prefix: Vec::new(),
            fill: Vec::new(),
            count: vec![0; half + 2],
            members: vec![0; n],
            groups: Vec::new(),
            dist: vec![0; n + 1],
            list: GapList::default(),
            buf: Vec::new(),
        };

        best = (0..odometer.total as u64)
            .into_par_iter()
            .map_init(new_scratch, |sc, index| {
                odometer.nth(u128::from(index), &mut sc.fill);
                sc.prefix.clear();
                let mut fill = sc.fill.iter();
                for z in 1..=half {
                    sc.prefix
                        .push(wt.solid_rank(z).unwrap_or_else(|| *fill.next().unwrap()));
                }
                // bucket positions 1..=n by dist with a counting sort
                sc.count.iter_mut().for_each(|c| *c = 0);
                for (i, &pl) in plcp.iter().enumerate().take(n + 1).skip(1) {
                    let d = work.solid_prefix_lcp(&sc.prefix, i, pl);
                    sc.dist[i] = d;
                    sc.count[d + 1] += 1;
                }
                sc.groups.clear();
                for d in 0..=half {
                    let (a, b) = (sc.count[d], sc.count[d] + sc.count[d + 1]);
                    if b > a {
                        sc.groups.push((d, a, b));
                    }
                    sc.count[d + 1] = b;
                }
                let mut fill_at: Vec<usize> = sc.groups.iter().map(|g| g.1).collect();
                let mut g_of = vec![0usize; half + 1];
                for (w, g) in sc.groups.iter().enumerate() {
                    g_of[g.0] = w;
                }
                for i in 1..=n {
                    let w = g_of[sc.dist[i]];
                    sc.members[fill_at[w]] = i;
                    fill_at[w] += 1;
                }
                let found = process_buckets(
                    n,
                    &all,
                    sc.groups.iter().map(|&(d, a, b)| (d, &sc.members[a..b])),
                    &mut sc.list,
                    &mut sc.buf,
                );
                let mut local = Best::default();
                if let Some(g) = found {
                    let mut w = sc.prefix[..g].to_vec();
                    if flip {
                        w.reverse();
                    }
                    local.offer(w);
                }
                local
            })
            .reduce(Best::default, Best::merge);
    }
    if let Some(w) = long_cover_witness(idx) {
        best.offer(w);
    }
    Ok(best
        .finish(idx, Algorithm::Simple)
        .expect("T always covers itself"))
}

/// The intervals of prefix lengths with a constant number of non-solid
/// cells, as `(b, e)` with `T[b+1..e]` solid.
pub(crate) fn constant_hole_intervals(t: &IString) -> Vec<(usize, usize)> {
    let n = t.len();
    let zs = t.nonsolid_positions();
    let mut out = Vec::with_capacity(zs.len() + 1);
    for c in 0..=zs.len() {
        let start = if c == 0 { 1 } else { zs[c - 1] };
        let end = if c < zs.len() { zs[c] - 1 } else { n };
        if start <= end {
            out.push((start, end));
        }
    }
    out
}

/// The shortest cover among the ⊙-prefixes `T[1..m] ⊙ i`, merged with the
/// long-cover check. `None` only for an empty text.
pub fn odot_prefix_solve(idx: &LcpIndex) -> Result<Option<CoverResult>> {
    Ok(odot_prefix_best(idx)?.finish(idx, Algorithm::OdotPrefix))
}

pub(crate) fn odot_prefix_best(idx: &LcpIndex) -> Result<Best> {
    let t = idx.text();
    let mut best = Best::default();
    if t.is_empty() {
        return Ok(best);
    }
    for (b, e) in constant_hole_intervals(t) {
        let occ = idx.classify_prefix_occurrences(b, e)?;
        let batch: Vec<BatchInstance> = occ
            .classes
            .iter()
            .map(|class| BatchInstance {
                len: class.reach,
                anchor: class.representative,
                positions: merge_sorted(&class.members, &occ.nonsolid),
            })
            .collect();
        for (inst, found) in batch.iter().zip(shortest_cover_batch(idx, &batch)?) {
            if let Some(g) = found {
                if g <= best.bound() {
                    best.offer(inst.prefix(t, g));
                }
            }
        }
    }
    if let Some(w) = long_cover_witness(idx) {
        best.offer(w);
    }
    Ok(best)
}

pub(crate) fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        if y == b.len() || (x < a.len() && a[x] < b[y]) {
            out.push(a[x]);
            x += 1;
        } else {
            out.push(b[y]);
            y += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(text: &str) -> IString {
        IString::parse(&format!("#alphabet=ab\n{text}")).unwrap()
    }

    fn enc(t: &IString, s: &str) -> Vec<u8> {
        t.alphabet().encode(s).unwrap()
    }

    #[test]
    fn maxgap_examples() {
        assert_eq!(maxgap(&[1, 3, 7, 8]).unwrap(), 4);
        assert_eq!(maxgap(&(1..=9).collect::<Vec<_>>()).unwrap(), 1);
        assert_eq!(maxgap(&[1, 5, 10, 14, 19]).unwrap(), 5);
        assert!(maxgap(&[3]).is_err());
    }

    #[test]
    fn gap_list_tracks_maximum() {
        let mut g = GapList::new(&[1, 2, 4, 5, 9, 10]).unwrap();
        assert_eq!(g.maxgap(), 4);
        assert!(g.remove(4));
        assert_eq!(g.maxgap(), 4);
        assert!(g.remove(5));
        assert_eq!(g.maxgap(), 7);
        assert!(!g.remove(1));
        assert!(!g.remove(10));
        assert!(!g.remove(5));
        assert_eq!(g.to_vec(), vec![1, 2, 9, 10]);
        g.reset(&[1, 3]).unwrap();
        assert_eq!(g.to_vec(), vec![1, 3]);
        assert!(!g.contains(9));
        assert!(GapList::new(&[2, 2]).is_err());
    }

    #[test]
    fn restricted_worked_example() {
        let t = ab("bb?abb?abb?babbb??");
        let idx = LcpIndex::build(&t);
        let got = shortest_cover_restricted(&idx, &enc(&t, "bbbabb"), &[1, 5, 9, 10, 14, 15, 16]);
        assert_eq!(got.unwrap(), Some(5));
        let none = shortest_cover_restricted(&idx, &enc(&t, "bba"), &[1, 2, 5, 6, 9, 11, 15, 16]);
        assert_eq!(none.unwrap(), None);
        // the cover and its certificate
        let occ = solid_prefix_occurrences(&idx, &enc(&t, "bbbab"));
        assert_eq!(
            minimal_covering_set(18, 5, &occ).unwrap(),
            vec![1, 5, 10, 14]
        );
    }

    #[test]
    fn restricted_classical_string() {
        let t = ab("ababa");
        let idx = LcpIndex::build(&t);
        let s = enc(&t, "ababa");
        assert_eq!(
            shortest_cover_restricted(&idx, &s, &[1, 2, 3, 4, 5]).unwrap(),
            Some(3)
        );
        // without position 1 nothing can cover
        assert_eq!(
            shortest_cover_restricted(&idx, &s, &[2, 3, 4, 5]).unwrap(),
            None
        );
        assert!(shortest_cover_restricted(&idx, &enc(&t, "bb"), &[1]).is_err());
        assert!(shortest_cover_restricted(&idx, &s, &[3, 1]).is_err());
    }

    #[test]
    fn batch_worked_example() {
        let t = ab("bb?abb?abb?babbb??");
        let idx = LcpIndex::build(&t);
        let batch = vec![
            BatchInstance {
                len: 3,
                anchor: 2,
                positions: vec![1, 2, 5, 6, 9, 11, 15, 16],
            },
            BatchInstance {
                len: 6,
                anchor: 10,
                positions: vec![1, 5, 9, 10, 14, 15, 16],
            },
        ];
        assert_eq!(shortest_cover_batch(&idx, &batch).unwrap(), vec![None, Some(5)]);
        assert_eq!(t.alphabet().render(&batch[1].prefix(&t, 5)), "bbbab");
        assert!(shortest_cover_batch(&idx, &[]).unwrap().is_empty());
        let bad = BatchInstance {
            len: 3,
            anchor: 1,
            positions: vec![1],
        };
        assert!(shortest_cover_batch(&idx, &[bad]).is_err());
    }

    #[test]
    fn long_cover_examples() {
        let t = ab("a?b");
        let r = long_cover_search(&LcpIndex::build(&t)).unwrap();
        assert_eq!((r.length, r.witness_text(&t)), (2, "ab".to_string()));
        assert_eq!(r.covering_set, vec![1, 2]);

        let s = IString::parse("abcabd").unwrap();
        let r = long_cover_search(&LcpIndex::build(&s)).unwrap();
        assert_eq!(r.length, 6);
        assert_eq!(r.covering_set, vec![1]);

        let sample = ab("bb??abb??ba?");
        let r = long_cover_search(&LcpIndex::build(&sample)).unwrap();
        assert_eq!((r.length, r.witness_text(&sample)), (6, "bbabab".to_string()));
        assert_eq!(r.covering_set, vec![1, 7]);
    }

    #[test]
    fn simple_solve_examples() {
        let sample = ab("bb??abb??ba?");
        let r = simple_solve(&LcpIndex::build(&sample), 1 << 20).unwrap();
        assert_eq!((r.length, r.witness_text(&sample)), (4, "bbaa".to_string()));
        assert_eq!(r.algorithm, Algorithm::Simple);

        let rem = ab("a?b");
        let r = simple_solve(&LcpIndex::build(&rem), 16).unwrap();
        assert_eq!((r.length, r.witness_text(&rem)), (2, "ab".to_string()));

        let unary = IString::parse("aaaa").unwrap();
        let r = simple_solve(&LcpIndex::build(&unary), 16).unwrap();
        assert_eq!((r.length, r.covering_set), (1, vec![1, 2, 3, 4]));

        let wide = IString::parse("#alphabet=abcd\n??????????ab??????????").unwrap();
        let err = simple_solve(&LcpIndex::build(&wide), 1).unwrap_err();
        assert!(err.is_resource_refusal());
    }

    #[test]
    fn odot_prefix_examples() {
        let t = ab("bb?abb?abb?babbb??");
        let r = odot_prefix_solve(&LcpIndex::build(&t)).unwrap().unwrap();
        assert_eq!(r.length, 5);
        assert_eq!(r.witness_text(&t), "bbbab");
        assert_eq!(r.covering_set, vec![1, 5, 10, 14]);

        let sample = ab("bb??abb??ba?");
        let r = odot_prefix_solve(&LcpIndex::build(&sample)).unwrap().unwrap();
        // bbaa is not a ⊙-prefix, so only bbab is reachable here
        assert_eq!((r.length, r.witness_text(&sample)), (4, "bbab".to_string()));
    }

    #[test]
    fn intervals_follow_non_solid_cells() {
        let t = ab("bb?abb?abb?babbb??");
        assert_eq!(
            constant_hole_intervals(&t),
            vec![(1, 2), (3, 6), (7, 10), (11, 16), (17, 17), (18, 18)]
        );
        assert_eq!(constant_hole_intervals(&ab("?a")), vec![(1, 2)]);
    }
}

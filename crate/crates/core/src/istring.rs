//! The indeterminate-string data model.
//!
//! An [`IString`] is a sequence of nonempty [`SymbolSet`]s over an
//! [`Alphabet`]. A cell is *solid* when its set holds exactly one symbol.
//! Positions in every public method are 1-based.
//!
//! Text grammar: a plain character is a solid cell, `[abc]` is the set
//! `{a,b,c}`, and `?` is the whole alphabet. An optional first line
//! `#alphabet=abc` fixes the alphabet and its rank order; without it the
//! alphabet is the set of characters that appear, in ascending code-point
//! order. Whitespace in the body is ignored.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::symbols::{Alphabet, SymbolSet, MAX_SIGMA};

/// Cell codes below this value are solid ranks; the rest are
/// `NONSOLID_BASE + class` for an interned non-solid set.
const NONSOLID_BASE: u32 = 1 << 16;

/// Pairwise intersections of the non-solid sets of a string.
///
/// Non-solid cells are first grouped into classes of equal sets, then every
/// pair of classes gets the interned label of its intersection. Equal
/// intersections share a label, so `label(i, j) == label(i', j')` exactly
/// when `T[i] ∩ T[j] == T[i'] ∩ T[j']`.
#[derive(Clone, Debug, Default)]
pub struct IntersectionTable {
    classes: Vec<SymbolSet>,
    labels: Vec<u32>,
    label_sets: Vec<SymbolSet>,
}

impl IntersectionTable {
    /// Interns `sets` and returns the table together with the class of each
    /// input set, in input order.
    pub fn build<I: IntoIterator<Item = SymbolSet>>(sets: I) -> (Self, Vec<u32>) {
        let mut class_ids: HashMap<SymbolSet, u32> = HashMap::new();
        let mut classes = Vec::new();
        let class_of: Vec<u32> = sets
            .into_iter()
            .map(|s| {
                *class_ids.entry(s).or_insert_with(|| {
                    classes.push(s);
                    (classes.len() - 1) as u32
                })
            })
            .collect();

        let d = classes.len();
        let mut label_ids: HashMap<SymbolSet, u32> = HashMap::new();
        let mut label_sets = Vec::new();
        let mut labels = vec![0u32; d * d];
        for a in 0..d {
            for b in a..d {
                let inter = classes[a].intersect(&classes[b]);
                let label = *label_ids.entry(inter).or_insert_with(|| {
                    label_sets.push(inter);
                    (label_sets.len() - 1) as u32
                });
                labels[a * d + b] = label;
                labels[b * d + a] = label;
            }
        }
        (
            IntersectionTable {
                classes,
                labels,
                label_sets,
            },
            class_of,
        )
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_set(&self, class: u32) -> SymbolSet {
        self.classes[class as usize]
    }

    #[inline]
    pub fn label(&self, a: u32, b: u32) -> u32 {
        self.labels[a as usize * self.classes.len() + b as usize]
    }

    #[inline]
    pub fn label_set(&self, label: u32) -> SymbolSet {
        self.label_sets[label as usize]
    }

    #[inline]
    pub fn nonempty(&self, a: u32, b: u32) -> bool {
        !self.label_set(self.label(a, b)).is_empty()
    }
}

/// Options for [`IString::parse_with`].
#[derive(Clone, Debug)]
pub struct ParseOptions {
    /// Alphabet to use when the text carries no `#alphabet=` header.
    pub alphabet: Option<Alphabet>,
    /// Largest accepted alphabet (at most [`MAX_SIGMA`]).
    pub max_sigma: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            alphabet: None,
            max_sigma: MAX_SIGMA,
        }
    }
}

/// An indeterminate string. Immutable after construction.
#[derive(Clone)]
pub struct IString {
    alphabet: Alphabet,
    cells: Vec<SymbolSet>,
    codes: Vec<u32>,
    nonsolid: Vec<usize>,
    table: IntersectionTable,
}

impl IString {
    /// Builds an i-string from explicit cells. Every cell must be a nonempty
    /// subset of the alphabet.
    pub fn from_cells(alphabet: Alphabet, cells: Vec<SymbolSet>) -> Result<Self> {
        let full = alphabet.full_set();
        for (i, c) in cells.iter().enumerate() {
            if c.is_empty() || !c.is_subset(&full) {
                return Err(Error::InvalidArgument(format!(
                    "cell {} is empty or outside the alphabet",
                    i + 1
                )));
            }
        }
        Ok(Self::assemble(alphabet, cells))
    }

    /// A solid string given by ranks.
    pub fn from_solid(alphabet: Alphabet, ranks: &[u8]) -> Result<Self> {
        let cells = ranks.iter().map(|&r| SymbolSet::singleton(r)).collect();
        Self::from_cells(alphabet, cells)
    }

    fn assemble(alphabet: Alphabet, cells: Vec<SymbolSet>) -> Self {
        let nonsolid: Vec<usize> = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_solid())
            .map(|(i, _)| i + 1)
            .collect();
        let (table, class_of) =
            IntersectionTable::build(nonsolid.iter().map(|&p| cells[p - 1]));
        let mut codes: Vec<u32> = cells
            .iter()
            .map(|c| c.solid_rank().map_or(0, u32::from))
            .collect();
        for (&p, &class) in nonsolid.iter().zip(&class_of) {
            codes[p - 1] = NONSOLID_BASE + class;
        }
        IString {
            alphabet,
            cells,
            codes,
            nonsolid,
            table,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with(text, &ParseOptions::default())
    }

    pub fn parse_with(text: &str, options: &ParseOptions) -> Result<Self> {
        parse(text, options)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Number of non-solid cells.
    pub fn k(&self) -> usize {
        self.nonsolid.len()
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.size()
    }

    pub fn cells(&self) -> &[SymbolSet] {
        &self.cells
    }

    /// Sorted 1-based positions of the non-solid cells.
    pub fn nonsolid_positions(&self) -> &[usize] {
        &self.nonsolid
    }

    /// Non-solid positions `z` with `z <= m`.
    pub fn nonsolid_upto(&self, m: usize) -> &[usize] {
        let end = self.nonsolid.partition_point(|&z| z <= m);
        &self.nonsolid[..end]
    }

    pub fn table(&self) -> &IntersectionTable {
        &self.table
    }

    /// True when every non-solid cell is the whole alphabet.
    pub fn is_partial_word(&self) -> bool {
        let full = self.alphabet.full_set();
        self.nonsolid.iter().all(|&p| self.cells[p - 1] == full)
    }

    pub fn is_solid(&self) -> bool {
        self.nonsolid.is_empty()
    }

    #[inline]
    pub fn cell(&self, i: usize) -> SymbolSet {
        self.cells[i - 1]
    }

    #[inline]
    pub fn solid_rank(&self, i: usize) -> Option<u8> {
        let code = self.codes[i - 1];
        (code < NONSOLID_BASE).then_some(code as u8)
    }

    #[inline]
    pub(crate) fn class_at(&self, i: usize) -> Option<u32> {
        let code = self.codes[i - 1];
        (code >= NONSOLID_BASE).then(|| code - NONSOLID_BASE)
    }

    /// Interned label of `T[i] ∩ T[j]` for two non-solid positions.
    pub fn intersection_label(&self, i: usize, j: usize) -> Result<Option<u32>> {
        self.check(i)?;
        self.check(j)?;
        Ok(match (self.class_at(i), self.class_at(j)) {
            (Some(a), Some(b)) => Some(self.table.label(a, b)),
            _ => None,
        })
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len() {
            Err(Error::OutOfRange {
                position: i,
                len: self.len(),
            })
        } else {
            Ok(())
        }
    }

    /// `T[i] ∩ T[j] ≠ ∅`, in constant time.
    #[inline]
    pub(crate) fn eq_at(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.codes[i - 1], self.codes[j - 1]);
        if a == b {
            return true;
        }
        match (a < NONSOLID_BASE, b < NONSOLID_BASE) {
            (true, true) => false,
            (true, false) => self.cells[j - 1].contains(a as u8),
            (false, true) => self.cells[i - 1].contains(b as u8),
            (false, false) => self.table.nonempty(a - NONSOLID_BASE, b - NONSOLID_BASE),
        }
    }

    /// `T[i] ∩ T[j]`, using the interned table when both cells are non-solid.
    #[inline]
    pub(crate) fn meet(&self, i: usize, j: usize) -> SymbolSet {
        match (self.class_at(i), self.class_at(j)) {
            (Some(a), Some(b)) => self.table.label_set(self.table.label(a, b)),
            _ => self.cells[i - 1].intersect(&self.cells[j - 1]),
        }
    }

    pub fn symbols_match(&self, i: usize, j: usize) -> Result<bool> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.eq_at(i, j))
    }

    /// `T[i..i+len-1] ≈ T[j..j+len-1]`.
    pub fn match_factors(&self, i: usize, j: usize, len: usize) -> Result<bool> {
        if len == 0 {
            return Ok(true);
        }
        for start in [i, j] {
            if start == 0 || start + len - 1 > self.len() {
                return Err(Error::OutOfRange {
                    position: start + len - 1,
                    len: self.len(),
                });
            }
        }
        Ok((0..len).all(|d| self.eq_at(i + d, j + d)))
    }

    /// `T[1..m] ⊙ i`: the positionwise intersection of the prefix of length
    /// `m` with the factor starting at `i`.
    pub fn odot(&self, m: usize, i: usize) -> Result<IString> {
        if m > self.len() {
            return Err(Error::OutOfRange {
                position: m,
                len: self.len(),
            });
        }
        let prefix = IString::assemble(self.alphabet.clone(), self.cells[..m].to_vec());
        self.restrict(&prefix, i)
    }

    /// `U ⊙ i` for an arbitrary pattern `U` occurring at `i`.
    pub fn restrict(&self, pattern: &IString, i: usize) -> Result<IString> {
        let m = pattern.len();
        if i == 0 || i + m - 1 > self.len() {
            return Err(Error::OutOfRange {
                position: i + m.max(1) - 1,
                len: self.len(),
            });
        }
        let mut cells = Vec::with_capacity(m);
        for d in 0..m {
            let inter = pattern.cells[d].intersect(&self.cells[i - 1 + d]);
            if inter.is_empty() {
                return Err(Error::NotAnOccurrence {
                    position: i,
                    length: m,
                });
            }
            cells.push(inter);
        }
        Ok(IString::assemble(self.alphabet.clone(), cells))
    }

    pub fn reverse(&self) -> IString {
        let cells = self.cells.iter().rev().copied().collect();
        IString::assemble(self.alphabet.clone(), cells)
    }

    /// Ranks of a solid string, or `None` when some cell is non-solid.
    pub fn solid_ranks(&self) -> Option<Vec<u8>> {
        self.is_solid()
            .then(|| self.codes.iter().map(|&c| c as u8).collect())
    }

    /// Canonical text with an `#alphabet=` header line.
    pub fn to_text(&self) -> String {
        format!(
            "#alphabet={}\n{}",
            self.alphabet.symbols().iter().collect::<String>(),
            self
        )
    }
}

impl PartialEq for IString {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.cells == other.cells
    }
}

impl Eq for IString {}

impl fmt::Display for IString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let full = self.alphabet.full_set();
        for cell in &self.cells {
            if let Some(r) = cell.solid_rank() {
                write!(f, "{}", self.alphabet.symbol(r))?;
            } else if *cell == full {
                f.write_str("?")?;
            } else {
                f.write_str("[")?;
                for r in cell.iter() {
                    write!(f, "{}", self.alphabet.symbol(r))?;
                }
                f.write_str("]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IString({:?}, \"{}\")", self.alphabet, self)
    }
}

enum RawCell {
    Symbol(char),
    Set(Vec<char>),
    Any,
}

fn parse(text: &str, options: &ParseOptions) -> Result<IString> {
    let (header, body, body_offset) = split_header(text)?;
    let alphabet = match (header, &options.alphabet) {
        (Some(h), Some(given)) if h.symbols() != given.symbols() => {
            return Err(Error::InvalidAlphabet(
                "header alphabet differs from the supplied one".into(),
            ))
        }
        (Some(h), _) => Some(h),
        (None, given) => given.clone(),
    };
    if let Some(a) = &alphabet {
        if a.size() > options.max_sigma {
            return Err(Error::AlphabetTooLarge {
                size: a.size(),
                limit: options.max_sigma,
            });
        }
    }

    let raw = tokenize(body, body_offset)?;
    if raw.is_empty() {
        return Err(Error::EmptyInput);
    }

    let alphabet = match alphabet {
        Some(a) => a,
        None => {
            let mut seen: Vec<char> = Vec::new();
            for cell in &raw {
                match cell {
                    RawCell::Symbol(c) => seen.push(*c),
                    RawCell::Set(cs) => seen.extend(cs),
                    RawCell::Any => {}
                }
            }
            seen.sort_unstable();
            seen.dedup();
            if seen.is_empty() {
                return Err(Error::InvalidAlphabet(
                    "no symbol appears; declare the alphabet with #alphabet=".into(),
                ));
            }
            Alphabet::with_limit(seen, options.max_sigma)?
        }
    };

    let rank = |c: char| alphabet.rank(c).ok_or(Error::UnknownSymbol(c));
    let mut cells = Vec::with_capacity(raw.len());
    for cell in raw {
        cells.push(match cell {
            RawCell::Symbol(c) => SymbolSet::singleton(rank(c)?),
            RawCell::Set(cs) => cs.into_iter().map(rank).collect::<Result<SymbolSet>>()?,
            RawCell::Any => alphabet.full_set(),
        });
    }
    Ok(IString::assemble(alphabet, cells))
}

fn split_header(text: &str) -> Result<(Option<Alphabet>, &str, usize)> {
    let trimmed = text.trim_start();
    let lead = text.len() - trimmed.len();
    if !trimmed.starts_with('#') {
        return Ok((None, text, 0));
    }
    let line_end = trimmed.find('\n').unwrap_or(trimmed.len());
    let line = trimmed[..line_end].trim_end();
    let symbols = line.strip_prefix("#alphabet=").ok_or_else(|| Error::Parse {
        offset: lead,
        message: format!("unknown header line {line:?}"),
    })?;
    let alphabet = Alphabet::new(symbols.chars())?;
    Ok((Some(alphabet), &trimmed[line_end..], lead + line_end))
}

fn tokenize(body: &str, base: usize) -> Result<Vec<RawCell>> {
    let mut cells = Vec::new();
    let mut chars = body.char_indices();
    while let Some((off, c)) = chars.next() {
        let offset = base + off;
        match c {
            c if c.is_whitespace() => {}
            '?' => cells.push(RawCell::Any),
            '[' => {
                let mut set = Vec::new();
                loop {
                    match chars.next() {
                        Some((_, ']')) => break,
                        Some((_, c)) if c.is_whitespace() => {}
                        Some((o, c @ ('[' | '?' | '#'))) => {
                            return Err(Error::Parse {
                                offset: base + o,
                                message: format!("{c:?} is not allowed inside a set"),
                            })
                        }
                        Some((_, c)) => set.push(c),
                        None => {
                            return Err(Error::Parse {
                                offset,
                                message: "unclosed '['".into(),
                            })
                        }
                    }
                }
                if set.is_empty() {
                    return Err(Error::Parse {
                        offset,
                        message: "empty symbol set".into(),
                    });
                }
                cells.push(RawCell::Set(set));
            }
            ']' | '#' => {
                return Err(Error::Parse {
                    offset,
                    message: format!("unexpected {c:?}"),
                })
            }
            c => cells.push(RawCell::Symbol(c)),
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(text: &str) -> IString {
        IString::parse(&format!("#alphabet=ab\n{text}")).unwrap()
    }

    #[test]
    fn parses_sample_word() {
        let t = ab("bb??abb??ba?");
        assert_eq!(t.len(), 12);
        assert_eq!(t.k(), 5);
        assert!(t.is_partial_word());
        assert_eq!(t.nonsolid_positions(), &[3, 4, 8, 9, 12]);
    }

    #[test]
    fn parses_remark_word() {
        let t = ab("a?b");
        assert_eq!((t.len(), t.k()), (3, 1));
        assert!(t.is_partial_word());
    }

    #[test]
    fn bracket_set_is_not_partial_over_three_symbols() {
        let t = IString::parse("a[bc]").unwrap();
        assert_eq!(t.sigma(), 3);
        assert_eq!((t.len(), t.k()), (2, 1));
        assert!(!t.is_partial_word());
    }

    #[test]
    fn inferred_alphabet_is_sorted() {
        let t = IString::parse("bb??a").unwrap();
        assert_eq!(t.alphabet().symbols(), &['a', 'b']);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(IString::parse("   \n "), Err(Error::EmptyInput));
        assert!(matches!(IString::parse("a[]b"), Err(Error::Parse { .. })));
        assert!(matches!(IString::parse("a[bc"), Err(Error::Parse { .. })));
        assert!(matches!(IString::parse("ab]"), Err(Error::Parse { .. })));
        assert_eq!(
            IString::parse("#alphabet=ab\nabc"),
            Err(Error::UnknownSymbol('c'))
        );
        assert!(matches!(IString::parse("???"), Err(Error::InvalidAlphabet(_))));
        let opts = ParseOptions {
            alphabet: None,
            max_sigma: 2,
        };
        assert!(matches!(
            IString::parse_with("abc", &opts),
            Err(Error::AlphabetTooLarge { .. })
        ));
    }

    #[test]
    fn whitespace_and_singleton_sets() {
        let t = IString::parse("#alphabet=ab\n a [a] \n [ab]\n").unwrap();
        assert_eq!(t.to_string(), "aa?");
        assert_eq!(t.k(), 1);
    }

    #[test]
    fn example_match_relation() {
        // A = a{b,c}, B = a{a,b}, C = aa as factors of one string.
        let t = IString::parse("#alphabet=abc\na[bc]a[ab]aa").unwrap();
        assert!(t.match_factors(1, 3, 2).unwrap());
        assert!(t.match_factors(3, 5, 2).unwrap());
        assert!(!t.match_factors(1, 5, 2).unwrap());
        assert!(!t.symbols_match(2, 6).unwrap());
        assert!(t.symbols_match(2, 4).unwrap());
        assert!(t.symbols_match(2, 2).unwrap());
        assert!(t.symbols_match(0, 1).is_err());
        assert!(t.symbols_match(1, 7).is_err());
    }

    #[test]
    fn match_factors_on_sample() {
        let t = ab("bb??abb??ba?");
        assert!(t.match_factors(1, 6, 4).unwrap());
        assert!(!t.match_factors(1, 6, 5).unwrap());
        assert!(t.match_factors(3, 9, 0).unwrap());
        assert!(t.match_factors(9, 1, 5).is_err());
    }

    #[test]
    fn odot_examples() {
        let t = ab("bb??abb??baa");
        let u = ab("b?a?");
        assert_eq!(t.restrict(&u, 1).unwrap().to_string(), "bba?");
        assert_eq!(t.restrict(&u, 6).unwrap().to_string(), "bba?");
        assert_eq!(t.restrict(&u, 2).unwrap().to_string(), "b?aa");
        assert_eq!(t.restrict(&u, 3).unwrap().to_string(), "b?ab");
        assert_eq!(t.restrict(&u, 7).unwrap().to_string(), "b?ab");
        let solid = t.restrict(&u, 9).unwrap();
        assert_eq!(solid.to_string(), "bbaa");
        assert!(solid.is_solid());
        assert!(matches!(
            t.restrict(&u, 4),
            Err(Error::NotAnOccurrence { .. })
        ));
        assert_eq!(t.odot(4, 9).unwrap().to_string(), "bbaa");
        assert_eq!(t.odot(2, 1).unwrap().to_string(), "bb");
    }

    #[test]
    fn reverse_and_text_round_trip() {
        let t = ab("a?b");
        assert_eq!(t.reverse().to_string(), "b?a");
        let p = ab("ab?ba");
        assert_eq!(p.reverse(), p);
        let g = IString::parse("#alphabet=cab\nc[ab]?a[bc]").unwrap();
        assert_eq!(IString::parse(&g.to_text()).unwrap(), g);
        assert_eq!(g.to_string(), "c[ab]?a[cb]");
    }

    #[test]
    fn intersection_labels_are_interned() {
        let t = IString::parse("#alphabet=abcd\n[ab][abc][bc][ab]d").unwrap();
        // {a,b}∩{a,b,c} = {a,b} = {a,b}∩{a,b}
        assert_eq!(
            t.intersection_label(1, 2).unwrap(),
            t.intersection_label(1, 4).unwrap()
        );
        assert_ne!(
            t.intersection_label(1, 3).unwrap(),
            t.intersection_label(1, 2).unwrap()
        );
        assert_eq!(t.intersection_label(1, 5).unwrap(), None);
    }
}

//! Alphabets and fixed-width symbol sets.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Hard upper bound on the alphabet size; a [`SymbolSet`] is 256 bits wide.
pub const MAX_SIGMA: usize = 256;

/// Characters with a meaning in the text grammar; they cannot be symbols.
const RESERVED: &[char] = &['[', ']', '?', '#'];

/// An ordered list of distinct symbols. The position of a symbol in the list
/// is its rank, and ranks order witnesses lexicographically.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
    ranks: HashMap<char, u8>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self> {
        Self::with_limit(symbols, MAX_SIGMA)
    }

    /// Builds an alphabet, rejecting it when it has more than `limit`
    /// symbols (`limit` itself is clamped to [`MAX_SIGMA`]).
    pub fn with_limit<I: IntoIterator<Item = char>>(symbols: I, limit: usize) -> Result<Self> {
        let limit = limit.min(MAX_SIGMA);
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if symbols.len() > limit {
            return Err(Error::AlphabetTooLarge {
                size: symbols.len(),
                limit,
            });
        }
        let mut ranks = HashMap::with_capacity(symbols.len());
        for (rank, &c) in symbols.iter().enumerate() {
            if c.is_whitespace() || RESERVED.contains(&c) {
                return Err(Error::InvalidAlphabet(format!(
                    "{c:?} is reserved by the text grammar"
                )));
            }
            if ranks.insert(c, rank as u8).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Alphabet { symbols, ranks })
    }

    /// `a`, `b`, `c`, ... then `A`..`Z` and `0`..`9`.
    pub fn latin(size: usize) -> Result<Self> {
        let pool: Vec<char> = ('a'..='z').chain('A'..='Z').chain('0'..='9').collect();
        if size > pool.len() {
            return Err(Error::AlphabetTooLarge {
                size,
                limit: pool.len(),
            });
        }
        Self::new(pool.into_iter().take(size))
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn rank(&self, c: char) -> Option<u8> {
        self.ranks.get(&c).copied()
    }

    pub fn symbol(&self, rank: u8) -> char {
        self.symbols[rank as usize]
    }

    /// Encodes a solid string into ranks.
    pub fn encode(&self, text: &str) -> Result<Vec<u8>> {
        text.chars()
            .map(|c| self.rank(c).ok_or(Error::UnknownSymbol(c)))
            .collect()
    }

    /// Renders a rank sequence back into characters.
    pub fn render(&self, ranks: &[u8]) -> String {
        ranks.iter().map(|&r| self.symbol(r)).collect()
    }

    pub fn full_set(&self) -> SymbolSet {
        SymbolSet::full(self.size())
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({:?})", self.symbols.iter().collect::<String>())
    }
}

/// A set of alphabet ranks stored as a 256-bit vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SymbolSet([u64; 4]);

impl SymbolSet {
    pub const EMPTY: SymbolSet = SymbolSet([0; 4]);

    pub fn singleton(rank: u8) -> Self {
        let mut s = Self::EMPTY;
        s.insert(rank);
        s
    }

    /// The set `{0, .., size-1}`.
    pub fn full(size: usize) -> Self {
        let mut words = [0u64; 4];
        for (w, word) in words.iter_mut().enumerate() {
            let lo = w * 64;
            if size >= lo + 64 {
                *word = u64::MAX;
            } else if size > lo {
                *word = (1u64 << (size - lo)) - 1;
            }
        }
        SymbolSet(words)
    }

    pub fn insert(&mut self, rank: u8) {
        self.0[(rank >> 6) as usize] |= 1u64 << (rank & 63);
    }

    #[inline]
    pub fn contains(&self, rank: u8) -> bool {
        self.0[(rank >> 6) as usize] >> (rank & 63) & 1 == 1
    }

    #[inline]
    pub fn intersect(&self, other: &SymbolSet) -> SymbolSet {
        SymbolSet([
            self.0[0] & other.0[0],
            self.0[1] & other.0[1],
            self.0[2] & other.0[2],
            self.0[3] & other.0[3],
        ])
    }

    #[inline]
    pub fn intersects(&self, other: &SymbolSet) -> bool {
        !self.intersect(other).is_empty()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    #[inline]
    pub fn is_solid(&self) -> bool {
        self.count() == 1
    }

    pub fn is_subset(&self, other: &SymbolSet) -> bool {
        self.intersect(other) == *self
    }

    /// Lowest rank in the set.
    pub fn first(&self) -> Option<u8> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| (i * 64) as u8 + w.trailing_zeros() as u8)
    }

    /// The single member of a solid set.
    pub fn solid_rank(&self) -> Option<u8> {
        if self.is_solid() {
            self.first()
        } else {
            None
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..4usize).flat_map(move |w| {
            let mut word = self.0[w];
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros();
                word &= word - 1;
                Some((w * 64) as u8 + bit as u8)
            })
        })
    }
}

impl fmt::Debug for SymbolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<u8> for SymbolSet {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        let mut s = SymbolSet::EMPTY;
        for r in iter {
            s.insert(r);
        }
        s
    }
}

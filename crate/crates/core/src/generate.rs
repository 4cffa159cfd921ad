//! Seeded random instances.
//!
//! Every generator draws from `ChaCha8Rng::seed_from_u64(seed)` with the
//! stream set to the instance index, so instance `i` of a corpus can be
//! regenerated alone from `(seed, i)`.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::istring::IString;
use crate::reduction::CnfFormula;
use crate::symbols::{Alphabet, SymbolSet};

/// The generator for instance `index` of the corpus named by `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Shape of a random i-string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceParams {
    pub n: usize,
    /// Exact number of non-solid cells.
    pub k: usize,
    pub sigma: usize,
    /// Non-solid cells are `?` rather than random subsets.
    pub partial: bool,
    /// When set, solid cells repeat a random block of this length, which
    /// makes short covers likely.
    pub period: Option<usize>,
}

impl InstanceParams {
    pub fn new(n: usize, k: usize, sigma: usize, partial: bool) -> Self {
        InstanceParams {
            n,
            k,
            sigma,
            partial,
            period: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        if self.k > self.n {
            return Err(Error::InvalidArgument(format!(
                "k = {} exceeds n = {}",
                self.k, self.n
            )));
        }
        if self.sigma < 2 && self.k > 0 {
            return Err(Error::InvalidArgument(
                "non-solid cells need an alphabet of two or more symbols".into(),
            ));
        }
        if self.period == Some(0) {
            return Err(Error::InvalidArgument("period must be positive".into()));
        }
        Ok(())
    }
}

/// A random i-string over `a, b, c, ...`.
pub fn random_istring<R: Rng>(params: &InstanceParams, rng: &mut R) -> Result<IString> {
    params.validate()?;
    let alphabet = Alphabet::latin(params.sigma)?;
    let sigma = params.sigma;
    let base: Vec<u8> = match params.period {
        Some(p) => (0..p).map(|_| rng.gen_range(0..sigma) as u8).collect(),
        None => Vec::new(),
    };
    let mut cells: Vec<SymbolSet> = (0..params.n)
        .map(|i| {
            let r = if base.is_empty() {
                rng.gen_range(0..sigma) as u8
            } else {
                base[i % base.len()]
            };
            SymbolSet::singleton(r)
        })
        .collect();
    let mut holes: Vec<usize> = sample(rng, params.n, params.k).into_vec();
    holes.sort_unstable();
    for z in holes {
        cells[z] = if params.partial {
            SymbolSet::full(sigma)
        } else {
            let size = rng.gen_range(2..=sigma);
            sample(rng, sigma, size).iter().map(|r| r as u8).collect()
        };
    }
    IString::from_cells(alphabet, cells)
}

/// A random CNF formula with `m` clauses over `p` variables, each clause on
/// `1..=max_width` distinct variables with random signs.
pub fn random_cnf<R: Rng>(p: usize, m: usize, max_width: usize, rng: &mut R) -> Result<CnfFormula> {
    if p == 0 || max_width == 0 {
        return Err(Error::InvalidArgument("p and max_width must be positive".into()));
    }
    let clauses = (0..m)
        .map(|_| {
            let width = rng.gen_range(1..=max_width.min(p));
            sample(rng, p, width)
                .iter()
                .map(|v| {
                    let v = v as i32 + 1;
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    CnfFormula::new(p, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let params = InstanceParams::new(12, 5, 2, true);
        let a = random_istring(&params, &mut instance_rng(7, 3)).unwrap();
        let b = random_istring(&params, &mut instance_rng(7, 3)).unwrap();
        let c = random_istring(&params, &mut instance_rng(7, 4)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.to_string(), c.to_string());
        assert_eq!((a.len(), a.k()), (12, 5));
        assert!(a.is_partial_word());
    }

    #[test]
    fn general_cells_are_proper_subsets_or_full() {
        let params = InstanceParams::new(40, 10, 4, false);
        let t = random_istring(&params, &mut instance_rng(1, 0)).unwrap();
        assert_eq!(t.k(), 10);
        for &z in t.nonsolid_positions() {
            assert!(t.cell(z).count() >= 2);
        }
    }

    #[test]
    fn periodic_text() {
        let params = InstanceParams {
            period: Some(3),
            ..InstanceParams::new(9, 0, 3, true)
        };
        let t = random_istring(&params, &mut instance_rng(0, 0)).unwrap();
        let s = t.to_string();
        assert_eq!(s[..3], s[3..6]);
    }

    #[test]
    fn invalid_params() {
        let mut rng = instance_rng(0, 0);
        assert!(random_istring(&InstanceParams::new(3, 4, 2, true), &mut rng).is_err());
        assert!(random_istring(&InstanceParams::new(3, 1, 1, true), &mut rng).is_err());
        assert!(random_istring(&InstanceParams::new(0, 0, 2, true), &mut rng).is_err());
    }

    #[test]
    fn cnf_shape() {
        let f = random_cnf(4, 6, 3, &mut instance_rng(5, 0)).unwrap();
        assert_eq!((f.vars(), f.clauses().len()), (4, 6));
        assert!(f.clauses().iter().all(|c| (1..=3).contains(&c.len())));
    }
}

//! From CNF-SAT to shortest covers of binary partial words.
//!
//! A CNF formula over `p` variables becomes a family of words in
//! `{0,1,◇}^p`; the formula is satisfiable exactly when some vector in
//! `{0,1,◇}^p` mismatches every word. That family is then encoded as a binary
//! partial word `T` whose shortest cover has length `d = 4p + 3` when a
//! mismatching vector `V` exists, namely `11 h(V) 0`, and is longer
//! otherwise.

use std::fmt;

use serde::Serialize;

use crate::cover::Limits;
use crate::error::{Error, Result};
use crate::istring::IString;
use crate::oracle;
use crate::symbols::{Alphabet, SymbolSet};

/// A cell of a word over `{0, 1, ◇}`. The derived order is `0 < 1 < ◇`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tri {
    Zero,
    One,
    Hole,
}

impl Tri {
    pub(crate) fn from_digit(d: u8) -> Tri {
        match d {
            0 => Tri::Zero,
            1 => Tri::One,
            _ => Tri::Hole,
        }
    }

    pub fn from_char(c: char) -> Option<Tri> {
        match c {
            '0' => Some(Tri::Zero),
            '1' => Some(Tri::One),
            '?' => Some(Tri::Hole),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Tri::Zero => '0',
            Tri::One => '1',
            Tri::Hole => '?',
        }
    }

    /// The match relation: equal, or one side is a hole.
    pub fn matches(self, other: Tri) -> bool {
        self == other || self == Tri::Hole || other == Tri::Hole
    }

    /// Parses a word written with `0`, `1` and `?`.
    pub fn parse_word(s: &str) -> Result<Vec<Tri>> {
        s.chars()
            .map(|c| Tri::from_char(c).ok_or(Error::UnknownSymbol(c)))
            .collect()
    }

    pub fn render_word(w: &[Tri]) -> String {
        w.iter().map(|t| t.to_char()).collect()
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A CNF formula with variables `1..=vars`; literal `-v` is the negation
/// of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    /// Literals must name variables in `1..=vars`. Repeated literals inside a
    /// clause are dropped and each clause is sorted by variable.
    pub fn new(vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        let mut out = Vec::with_capacity(clauses.len());
        for (c, mut clause) in clauses.into_iter().enumerate() {
            for &lit in &clause {
                if lit == 0 || lit.unsigned_abs() as usize > vars {
                    return Err(Error::InvalidArgument(format!(
                        "clause {} has literal {lit} outside 1..={vars}",
                        c + 1
                    )));
                }
            }
            clause.sort_by_key(|&l| (l.unsigned_abs(), l));
            clause.dedup();
            out.push(clause);
        }
        Ok(CnfFormula { vars, clauses: out })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                s.push_str(&format!("{lit} "));
            }
            s.push_str("0\n");
        }
        s
    }

    /// Whether an assignment (`assignment[v-1]` for variable `v`) satisfies
    /// every clause.
    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
        })
    }
}

/// How strictly [`parse_dimacs`] treats deviations from the format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DimacsMode {
    /// Header required, counts and ranges must agree.
    #[default]
    Strict,
    /// Missing header, wrong counts, out-of-range variables and a trailing
    /// `%` section are accepted with warnings.
    Lenient,
}

/// Parses DIMACS CNF. Returns the formula and any warnings issued in
/// lenient mode.
pub fn parse_dimacs(text: &str, mode: DimacsMode) -> Result<(CnfFormula, Vec<String>)> {
    let strict = mode == DimacsMode::Strict;
    let mut warnings = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut max_var = 0usize;
    let err = |line: usize, message: String| Error::Dimacs { line, message };

    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            if strict {
                return Err(err(lineno, "unexpected '%' line".into()));
            }
            warnings.push(format!("line {lineno}: stopped reading at '%'"));
            break;
        }
        if trimmed.starts_with('p') {
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(err(lineno, format!("malformed header {trimmed:?}")));
            }
            if header.is_some() {
                return Err(err(lineno, "second header".into()));
            }
            if !clauses.is_empty() || !current.is_empty() {
                return Err(err(lineno, "header after clauses".into()));
            }
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| err(lineno, format!("bad count {s:?}")))
            };
            header = Some((parse(fields[2])?, parse(fields[3])?));
            continue;
        }
        if header.is_none() && strict {
            return Err(err(lineno, "clause before the 'p cnf' header".into()));
        }
        for tok in trimmed.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| err(lineno, format!("bad literal {tok:?}")))?;
            if lit == 0 {
                let clause = std::mem::take(&mut current);
                if let Some(clause) = screen_clause(clause, clauses.len() + 1, lineno, strict, &mut warnings)? {
                    clauses.push(clause);
                }
                continue;
            }
            let var = lit.unsigned_abs() as usize;
            if let Some((vars, _)) = header {
                if var > vars {
                    if strict {
                        return Err(err(lineno, format!("variable {var} exceeds {vars}")));
                    }
                    warnings.push(format!("line {lineno}: variable {var} exceeds the header"));
                }
            }
            max_var = max_var.max(var);
            current.push(lit);
        }
    }
    if !current.is_empty() {
        if strict {
            return Err(err(text.lines().count(), "last clause is not terminated by 0".into()));
        }
        warnings.push("last clause is not terminated by 0".into());
        let lineno = text.lines().count();
        if let Some(clause) = screen_clause(current, clauses.len() + 1, lineno, strict, &mut warnings)? {
            clauses.push(clause);
        }
    }
    let vars = match header {
        Some((vars, count)) => {
            if count != clauses.len() {
                if strict {
                    return Err(err(
                        0,
                        format!("header declares {count} clauses, found {}", clauses.len()),
                    ));
                }
                warnings.push(format!(
                    "header declares {count} clauses, found {}",
                    clauses.len()
                ));
            }
            vars.max(max_var)
        }
        None => {
            if strict {
                return Err(err(0, "missing 'p cnf' header".into()));
            }
            warnings.push("missing 'p cnf' header".into());
            max_var
        }
    };
    Ok((CnfFormula::new(vars, clauses)?, warnings))
}

/// Strict mode rejects repeated and complementary literals; lenient mode
/// drops repeats and whole tautological clauses with a warning.
fn screen_clause(
    mut clause: Vec<i32>,
    index: usize,
    line: usize,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<Option<Vec<i32>>> {
    clause.sort_by_key(|&l| (l.unsigned_abs(), l));
    for w in clause.windows(2) {
        if w[0] == w[1] {
            if strict {
                return Err(Error::Dimacs {
                    line,
                    message: format!("literal {} repeated in clause {index}", w[0]),
                });
            }
            warnings.push(format!("line {line}: dropped repeated literal {}", w[0]));
        } else if w[0] == -w[1] {
            let var = w[0].unsigned_abs() as usize;
            if strict {
                return Err(Error::TautologicalClause { clause: index, var });
            }
            warnings.push(format!("line {line}: dropped tautological clause {index}"));
            return Ok(None);
        }
    }
    clause.dedup();
    Ok(Some(clause))
}

/// Words of length `p` over `{0,1,◇}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MismatchInstance {
    pub p: usize,
    pub words: Vec<Vec<Tri>>,
}

impl MismatchInstance {
    pub fn new(p: usize, words: Vec<Vec<Tri>>) -> Result<Self> {
        if let Some(w) = words.iter().find(|w| w.len() != p) {
            return Err(Error::InvalidArgument(format!(
                "word {} has length {}, expected {p}",
                Tri::render_word(w),
                w.len()
            )));
        }
        Ok(MismatchInstance { p, words })
    }

    /// Whether `v` mismatches every word.
    pub fn is_solution(&self, v: &[Tri]) -> bool {
        v.len() == self.p
            && self
                .words
                .iter()
                .all(|w| w.iter().zip(v).any(|(a, b)| !a.matches(*b)))
    }
}

/// `x_j ∈ C` gives `0` at `j`, `¬x_j ∈ C` gives `1`, and every other cell is
/// `◇`; an assignment satisfies `C` exactly when its vector mismatches the
/// word.
pub fn cnf_to_mismatch(formula: &CnfFormula) -> Result<MismatchInstance> {
    let p = formula.vars();
    let mut words = Vec::with_capacity(formula.clauses().len());
    for (c, clause) in formula.clauses().iter().enumerate() {
        let mut w = vec![Tri::Hole; p];
        for &lit in clause {
            let v = lit.unsigned_abs() as usize;
            let cell = if lit > 0 { Tri::Zero } else { Tri::One };
            if w[v - 1] != Tri::Hole && w[v - 1] != cell {
                return Err(Error::TautologicalClause {
                    clause: c + 1,
                    var: v,
                });
            }
            w[v - 1] = cell;
        }
        words.push(w);
    }
    MismatchInstance::new(p, words)
}

/// Inverse of [`cnf_to_mismatch`].
pub fn mismatch_to_cnf(instance: &MismatchInstance) -> CnfFormula {
    let clauses = instance
        .words
        .iter()
        .map(|w| {
            w.iter()
                .enumerate()
                .filter_map(|(j, t)| match t {
                    Tri::Zero => Some(j as i32 + 1),
                    Tri::One => Some(-(j as i32 + 1)),
                    Tri::Hole => None,
                })
                .collect()
        })
        .collect();
    CnfFormula::new(instance.p, clauses).expect("literals are in range")
}

/// Reads an assignment off a mismatching vector; holes become `false`.
pub fn vector_to_assignment(v: &[Tri]) -> Vec<bool> {
    v.iter().map(|&t| t == Tri::One).collect()
}

fn repeat(cell: Tri, count: usize) -> impl Iterator<Item = Tri> {
    std::iter::repeat_n(cell, count)
}

/// `h(0) = 0100`, `h(1) = 0001`, `h(◇) = 0000`.
pub fn h_morphism(v: &[Tri]) -> Vec<Tri> {
    use Tri::{One as I, Zero as O};
    v.iter()
        .flat_map(|t| match t {
            Tri::Zero => [O, I, O, O],
            Tri::One => [O, O, O, I],
            Tri::Hole => [O, O, O, O],
        })
        .collect()
}

/// `μ(0) = ◇◇0◇`, `μ(1) = 0◇◇◇`, `μ(◇) = 0◇0◇`.
pub fn mu_morphism(w: &[Tri]) -> Vec<Tri> {
    use Tri::{Hole as H, Zero as O};
    w.iter()
        .flat_map(|t| match t {
            Tri::Zero => [H, H, O, H],
            Tri::One => [O, H, H, H],
            Tri::Hole => [O, H, O, H],
        })
        .collect()
}

const PI: [Tri; 4] = [Tri::Zero, Tri::Hole, Tri::Zero, Tri::Hole];

/// Target cover length `4p + 3`.
pub fn cover_length(p: usize) -> usize {
    4 * p + 3
}

/// `β_j = 11 π^{p-1} 0 ◇^{4j+1} 000 ◇^d` for `1 <= j <= p`.
pub fn build_beta(j: usize, p: usize) -> Result<Vec<Tri>> {
    if p == 0 || j == 0 || j > p {
        return Err(Error::InvalidArgument(format!("beta index {j} outside 1..={p}")));
    }
    let d = cover_length(p);
    let mut out = vec![Tri::One, Tri::One];
    for _ in 1..p {
        out.extend(PI);
    }
    out.push(Tri::Zero);
    out.extend(repeat(Tri::Hole, 4 * j + 1));
    out.extend(repeat(Tri::Zero, 3));
    out.extend(repeat(Tri::Hole, d));
    Ok(out)
}

/// `γ_W = 11 μ(W^R) 010 ◇^d`.
pub fn build_gamma(w: &[Tri], p: usize) -> Result<Vec<Tri>> {
    if w.len() != p || p == 0 {
        return Err(Error::InvalidArgument(format!(
            "gamma needs a word of length {p}"
        )));
    }
    let reversed: Vec<Tri> = w.iter().rev().copied().collect();
    let mut out = vec![Tri::One, Tri::One];
    out.extend(mu_morphism(&reversed));
    out.extend([Tri::Zero, Tri::One, Tri::Zero]);
    out.extend(repeat(Tri::Hole, cover_length(p)));
    Ok(out)
}

/// Start offsets (1-based) and lengths of the gadgets inside `T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionLayout {
    pub p: usize,
    pub m: usize,
    pub d: usize,
    pub length: usize,
    pub prefix: Segment,
    pub beta: Vec<Segment>,
    pub gamma: Vec<Segment>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub start: usize,
    pub len: usize,
}

/// The reduced partial word over the alphabet `01`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub text: IString,
    pub layout: ReductionLayout,
}

pub fn binary_alphabet() -> Alphabet {
    Alphabet::new("01".chars()).expect("valid alphabet")
}

/// Lifts a `{0,1,◇}` word to a partial word over `01`.
pub fn tri_to_istring(w: &[Tri]) -> Result<IString> {
    let cells = w
        .iter()
        .map(|t| match t {
            Tri::Zero => SymbolSet::singleton(0),
            Tri::One => SymbolSet::singleton(1),
            Tri::Hole => SymbolSet::full(2),
        })
        .collect();
    IString::from_cells(binary_alphabet(), cells)
}

/// `T = 11 π^p 0 β_1 ... β_p γ_{W_1} ... γ_{W_m}`.
pub fn build_reduction(instance: &MismatchInstance) -> Result<Reduction> {
    let p = instance.p;
    if p == 0 {
        return Err(Error::InvalidArgument("the reduction needs p >= 1".into()));
    }
    let d = cover_length(p);
    let mut cells = vec![Tri::One, Tri::One];
    for _ in 0..p {
        cells.extend(PI);
    }
    cells.push(Tri::Zero);
    let prefix = Segment { start: 1, len: d };
    let push = |cells: &mut Vec<Tri>, gadget: Vec<Tri>| {
        let seg = Segment {
            start: cells.len() + 1,
            len: gadget.len(),
        };
        cells.extend(gadget);
        seg
    };
    let mut beta = Vec::with_capacity(p);
    for j in 1..=p {
        beta.push(push(&mut cells, build_beta(j, p)?));
    }
    let mut gamma = Vec::with_capacity(instance.words.len());
    for w in &instance.words {
        gamma.push(push(&mut cells, build_gamma(w, p)?));
    }
    let layout = ReductionLayout {
        p,
        m: instance.words.len(),
        d,
        length: cells.len(),
        prefix,
        beta,
        gamma,
    };
    Ok(Reduction {
        text: tri_to_istring(&cells)?,
        layout,
    })
}

/// The cover `11 h(V) 0` as ranks over `01`.
pub fn encode_cover(v: &[Tri]) -> Vec<u8> {
    let mut out = vec![1, 1];
    out.extend(h_morphism(v).iter().map(|t| u8::from(*t == Tri::One)));
    out.push(0);
    out
}

/// Inverts [`encode_cover`] blockwise; `None` if `s` is not of that shape.
pub fn decode_cover(s: &[u8], p: usize) -> Option<Vec<Tri>> {
    if s.len() != cover_length(p) || s[..2] != [1, 1] || s[s.len() - 1] != 0 {
        return None;
    }
    s[2..s.len() - 1]
        .chunks(4)
        .map(|block| match block {
            [0, 1, 0, 0] => Some(Tri::Zero),
            [0, 0, 0, 1] => Some(Tri::One),
            [0, 0, 0, 0] => Some(Tri::Hole),
            _ => None,
        })
        .collect()
}

/// Outcome of checking one instance end to end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCheck {
    pub solutions: Vec<Vec<Tri>>,
    /// Lengths `<= d` that admit a cover.
    pub short_lengths: Vec<usize>,
    /// Length-`d` covers, decoded.
    pub decoded: Vec<Option<Vec<Tri>>>,
    /// Every solution `V` yields the cover `11 h(V) 0`.
    pub solutions_are_covers: bool,
    /// No cover is shorter than `d`, and one of length `d` exists exactly when
    /// a solution does.
    pub length_matches: bool,
    /// Every length-`d` cover decodes to a solution.
    pub covers_decode: bool,
}

impl ReductionCheck {
    pub fn passed(&self) -> bool {
        self.solutions_are_covers && self.length_matches && self.covers_decode
    }
}

/// Checks the reduction on one instance with exhaustive search. The fast
/// solvers are useless here (the reduced word has `k = Θ(n)`), so lengths up
/// to `d` are enumerated with the oracle under `limits.oracle_budget`.
pub fn verify_reduction(instance: &MismatchInstance, limits: &Limits) -> Result<ReductionCheck> {
    let red = build_reduction(instance)?;
    let t = &red.text;
    let d = red.layout.d;
    let solutions = oracle::brute_universal_mismatch(&instance.words, instance.p, limits.oracle_budget)?;
    let solutions_are_covers = solutions
        .iter()
        .all(|v| oracle::is_cover(&encode_cover(v), t));
    let (short_lengths, first) = oracle::covers_upto(t, d, limits.oracle_budget)?;
    let length_matches = short_lengths.iter().all(|&m| m == d)
        && short_lengths.contains(&d) == !solutions.is_empty();
    let at_d = if short_lengths.first() == Some(&d) {
        first
    } else {
        Vec::new()
    };
    let decoded: Vec<Option<Vec<Tri>>> = at_d.iter().map(|s| decode_cover(s, instance.p)).collect();
    let covers_decode = decoded
        .iter()
        .all(|v| v.as_ref().is_some_and(|v| instance.is_solution(v)));
    Ok(ReductionCheck {
        solutions,
        short_lengths,
        decoded,
        solutions_are_covers,
        length_matches,
        covers_decode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<Tri> {
        Tri::parse_word(s).unwrap()
    }

    #[test]
    fn morphisms() {
        assert_eq!(Tri::render_word(&h_morphism(&w("01?"))), "010000010000");
        assert_eq!(Tri::render_word(&mu_morphism(&w("01?"))), "??0?0???0?0?");
        assert_eq!(Tri::render_word(&mu_morphism(&w("1"))), "0???");
    }

    #[test]
    fn gadget_lengths() {
        for p in 1..6 {
            let d = cover_length(p);
            for j in 1..=p {
                assert_eq!(build_beta(j, p).unwrap().len(), 2 * d + 4 * j);
            }
            assert_eq!(build_gamma(&vec![Tri::Hole; p], p).unwrap().len(), 2 * d + 2);
        }
        assert!(build_beta(0, 2).is_err());
        assert!(build_gamma(&w("01"), 3).is_err());
    }

    #[test]
    fn smallest_reduction() {
        let red = build_reduction(&MismatchInstance::new(1, vec![]).unwrap()).unwrap();
        assert_eq!(red.layout.d, 7);
        assert_eq!(red.text.len(), 25);
        assert_eq!(red.text.to_string(), "110?0?0110?????000???????");
        assert!(red.text.is_partial_word());
    }

    #[test]
    fn cnf_words() {
        let f = CnfFormula::new(3, vec![vec![1, -3], vec![2]]).unwrap();
        let inst = cnf_to_mismatch(&f).unwrap();
        assert_eq!(inst.words, vec![w("0?1"), w("?0?")]);
        assert_eq!(mismatch_to_cnf(&inst), f);
        let taut = CnfFormula::new(2, vec![vec![1], vec![2, -2]]).unwrap();
        assert_eq!(
            cnf_to_mismatch(&taut),
            Err(Error::TautologicalClause { clause: 2, var: 2 })
        );
    }

    #[test]
    fn cover_round_trip() {
        let v = w("1?0");
        let s = encode_cover(&v);
        assert_eq!(s.len(), 15);
        assert_eq!(decode_cover(&s, 3), Some(v));
        assert_eq!(decode_cover(&s, 2), None);
        let mut bad = s.clone();
        bad[3] = 1;
        assert_eq!(decode_cover(&bad, 3), None);
    }

    #[test]
    fn dimacs_modes() {
        let text = "c example\np cnf 3 2\n1 -3 0\n2 0\n";
        let (f, warn) = parse_dimacs(text, DimacsMode::Strict).unwrap();
        assert_eq!((f.vars(), f.clauses().len(), warn.len()), (3, 2, 0));

        let sloppy = "1 -3 0\n2 4 0\n%\n0\n";
        assert!(parse_dimacs(sloppy, DimacsMode::Strict).is_err());
        let (f, warn) = parse_dimacs(sloppy, DimacsMode::Lenient).unwrap();
        assert_eq!(f.vars(), 4);
        assert_eq!(f.clauses(), &[vec![1, -3], vec![2, 4]]);
        assert_eq!(warn.len(), 2);

        assert!(parse_dimacs("p cnf 2 1\n1 3 0\n", DimacsMode::Strict).is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 0\n", DimacsMode::Strict).is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 x 0\n", DimacsMode::Lenient).is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 2\n", DimacsMode::Strict).is_err());
        let taut = "p cnf 2 2\n1 -1 0\n2 0\n";
        assert_eq!(
            parse_dimacs(taut, DimacsMode::Strict).unwrap_err(),
            Error::TautologicalClause { clause: 1, var: 1 }
        );
        let (g, warn) = parse_dimacs(taut, DimacsMode::Lenient).unwrap();
        assert_eq!((g.clauses(), warn.len()), (&[vec![2]][..], 2));
        assert!(parse_dimacs("p cnf 2 1\n2 2 0\n", DimacsMode::Strict).is_err());
        let (round, _) = parse_dimacs(&f.to_dimacs(), DimacsMode::Strict).unwrap();
        assert_eq!(round, f);
    }

    #[test]
    fn verify_tiny_instances() {
        let limits = Limits::default();
        let yes = MismatchInstance::new(1, vec![w("0")]).unwrap();
        let r = verify_reduction(&yes, &limits).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.short_lengths, vec![7]);
        assert_eq!(r.decoded, vec![Some(w("1"))]);

        let no = MismatchInstance::new(1, vec![w("0"), w("1")]).unwrap();
        let r = verify_reduction(&no, &limits).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.short_lengths.is_empty());
    }
}

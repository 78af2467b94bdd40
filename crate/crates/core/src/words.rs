//! Ordered alphabets, linear words and scattered-subword counting.

use std::collections::HashMap;
use std::fmt;
use std::ops::Index;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::UnitriangularMatrix;
use crate::rational::Rational;

/// Position of a letter in its alphabet; the alphabet order is the order of
/// these indices.
pub type Symbol = u8;

/// A totally ordered, non-empty set of opaque symbol tokens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if symbols.len() > Symbol::MAX as usize {
            return Err(Error::AlphabetSize { expected: "at most 255".into(), actual: symbols.len() });
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::UnknownSymbol(s.clone()));
            }
            if index.insert(s.clone(), i as Symbol).is_some() {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// Parses a comma-separated list such as `a,b,c`, smallest symbol first.
    pub fn parse(list: &str) -> Result<Self> {
        if list.trim().is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Self::new(list.split(',').map(|s| s.trim().to_string()))
    }

    /// `{a < b < ...}` with the first `n` lowercase latin letters.
    pub fn latin(n: usize) -> Self {
        assert!((1..=26).contains(&n));
        Self::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, name: &str) -> Result<Symbol> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.symbols[s as usize]
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word. Single-character alphabets read one symbol per
    /// character; otherwise symbols are whitespace separated.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let symbols = if self.single_char() {
            text.chars().map(|c| self.symbol(c.encode_utf8(&mut [0; 4]))).collect::<Result<Vec<_>>>()?
        } else {
            text.split_whitespace().map(|t| self.symbol(t)).collect::<Result<Vec<_>>>()?
        };
        Ok(Word(symbols))
    }

    pub fn render(&self, w: &Word) -> String {
        let sep = if self.single_char() { "" } else { " " };
        w.0.iter().map(|&s| self.name(s)).collect::<Vec<_>>().join(sep)
    }

    /// Checks that every letter of `w` belongs to this alphabet.
    pub fn check(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|&&s| s as usize >= self.len()) {
            Some(&s) => Err(Error::SymbolOutOfRange { index: s as usize, size: self.len() }),
            None => Ok(()),
        }
    }

    pub(crate) fn require_size(&self, expected: usize) -> Result<()> {
        if self.len() == expected {
            Ok(())
        } else {
            Err(Error::AlphabetSize { expected: expected.to_string(), actual: self.len() })
        }
    }

    /// The ladder word `a_i a_{i+1} ... a_j` (zero-based, inclusive).
    pub fn ladder(&self, i: usize, j: usize) -> Word {
        Word((i..=j).map(|k| k as Symbol).collect())
    }

    /// All words of length `n`, in lexicographic order.
    pub fn words(&self, n: usize) -> WordsOfLength {
        WordsOfLength { size: self.len() as Symbol, next: Some(vec![0; n]) }
    }
}

/// Iterator over `Σ^n` in lexicographic order.
pub struct WordsOfLength {
    size: Symbol,
    next: Option<Vec<Symbol>>,
}

impl Iterator for WordsOfLength {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut pos = succ.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            if succ[pos] + 1 < self.size {
                succ[pos] += 1;
                succ[pos + 1..].iter_mut().for_each(|s| *s = 0);
                self.next = Some(succ);
                break;
            }
        }
        Some(Word(cur))
    }
}

/// A finite sequence of symbols; the empty word is `Word::empty()`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// Number of occurrences of the letter `a`.
    pub fn letter_count(&self, a: Symbol) -> usize {
        self.0.iter().filter(|&&s| s == a).count()
    }
}

impl Index<usize> for Word {
    type Output = Symbol;
    fn index(&self, i: usize) -> &Symbol {
        &self.0[i]
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // latin letters for indices below 26; that covers every debug use
        let s: String = self
            .0
            .iter()
            .map(|&c| if c < 26 { (b'a' + c) as char } else { '?' })
            .collect();
        write!(f, "{s:?}")
    }
}

/// Letter counts of a word, in alphabet order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParikhVector(pub Vec<usize>);

impl fmt::Display for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `|w|_v`: occurrences of `v` in `w` as a scattered subword. `|w|_λ = 1`.
pub fn count_subword(w: &Word, v: &Word) -> BigUint {
    match count_subword_u64(w.symbols(), v.symbols()) {
        Some(n) => BigUint::from(n),
        None => count_subword_big(w.symbols(), v.symbols()),
    }
}

// dp[j] = occurrences of v[..j] in the prefix of w read so far
fn count_subword_u64(w: &[Symbol], v: &[Symbol]) -> Option<u64> {
    if v.len() > w.len() {
        return Some(0);
    }
    let mut dp = vec![0u64; v.len() + 1];
    dp[0] = 1;
    for &c in w {
        for j in (1..=v.len()).rev() {
            if v[j - 1] == c {
                dp[j] = dp[j].checked_add(dp[j - 1])?;
            }
        }
    }
    Some(dp[v.len()])
}

fn count_subword_big(w: &[Symbol], v: &[Symbol]) -> BigUint {
    let mut dp = vec![BigUint::zero(); v.len() + 1];
    dp[0] = BigUint::one();
    for &c in w {
        for j in (1..=v.len()).rev() {
            if v[j - 1] == c {
                let prev = dp[j - 1].clone();
                dp[j] += prev;
            }
        }
    }
    dp.pop().unwrap()
}

pub fn parikh_vector(alphabet: &Alphabet, w: &Word) -> ParikhVector {
    let mut counts = vec![0usize; alphabet.len()];
    for &c in w.symbols() {
        counts[c as usize] += 1;
    }
    ParikhVector(counts)
}

/// Integer ladder counts `|w|_{a_i..a_j}` for `0 <= i <= j < s`, as a
/// `s x s` upper table indexed `[i][j]`.
pub(crate) fn ladder_counts(s: usize, w: &[Symbol]) -> Vec<Vec<BigUint>> {
    // Right-multiplying by the letter matrix of a_k adds column k into
    // column k+1 of the (s+1)x(s+1) Parikh matrix.
    let mut cols: Vec<Vec<u64>> = vec![vec![0; s + 1]; s + 1];
    for (i, col) in cols.iter_mut().enumerate() {
        col[i] = 1;
    }
    let mut overflow = false;
    'outer: for &c in w {
        let k = c as usize;
        for i in 0..=k {
            match cols[k + 1][i].checked_add(cols[k][i]) {
                Some(x) => cols[k + 1][i] = x,
                None => {
                    overflow = true;
                    break 'outer;
                }
            }
        }
    }
    if !overflow {
        return (0..s)
            .map(|i| (0..s).map(|j| if j >= i { BigUint::from(cols[j + 1][i]) } else { BigUint::zero() }).collect())
            .collect();
    }
    let mut cols: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); s + 1]; s + 1];
    for (i, col) in cols.iter_mut().enumerate() {
        col[i] = BigUint::one();
    }
    for &c in w {
        let k = c as usize;
        for i in 0..=k {
            let add = cols[k][i].clone();
            cols[k + 1][i] += add;
        }
    }
    (0..s)
        .map(|i| (0..s).map(|j| if j >= i { cols[j + 1][i].clone() } else { BigUint::zero() }).collect())
        .collect()
}

/// `Ψ_Σ(w)`: entry `(i, j+1)` (zero-based `(i, j+1)` too) is `|w|_{a_i..a_j}`.
pub fn parikh_matrix(alphabet: &Alphabet, w: &Word) -> UnitriangularMatrix {
    let s = alphabet.len();
    let table = ladder_counts(s, w.symbols());
    let mut m = UnitriangularMatrix::identity(s + 1);
    for (i, row) in table.into_iter().enumerate() {
        for (j, n) in row.into_iter().enumerate().skip(i) {
            m.set(i, j + 1, Rational::from(n));
        }
    }
    m
}

pub fn mirror(w: &Word) -> Word {
    Word(w.0.iter().rev().copied().collect())
}

/// Erases every letter outside `gamma`, given by symbol names.
pub fn project(alphabet: &Alphabet, w: &Word, gamma: &[&str]) -> Result<Word> {
    let keep = gamma
        .iter()
        .map(|g| alphabet.symbol(g).map_err(|_| Error::NotASubAlphabet(g.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(project_symbols(w, &keep))
}

pub fn project_symbols(w: &Word, keep: &[Symbol]) -> Word {
    Word(w.0.iter().copied().filter(|c| keep.contains(c)).collect())
}

/// `|mi(w)|_abc = |w|_a|w|_b|w|_c - |w|_a|w|_bc - |w|_ab|w|_c + |w|_abc` for
/// ternary `w`.
pub fn inverse_identity_check(alphabet: &Alphabet, w: &Word) -> Result<bool> {
    alphabet.require_size(3)?;
    let c = |v: &[Symbol]| BigInt::from(count_subword(w, &Word::from(v)));
    let lhs = BigInt::from(count_subword(&mirror(w), &Word(vec![0, 1, 2])));
    let rhs = c(&[0]) * c(&[1]) * c(&[2]) - c(&[0]) * c(&[1, 2]) - c(&[0, 1]) * c(&[2]) + c(&[0, 1, 2]);
    Ok(lhs == rhs)
}

/// All permutations of `0..s`, lexicographic.
pub fn permutations(s: usize) -> Vec<Vec<Symbol>> {
    let mut perm: Vec<Symbol> = (0..s as Symbol).collect();
    let mut out = vec![perm.clone()];
    loop {
        let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return out;
        };
        let j = (i..perm.len()).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
        out.push(perm.clone());
    }
}

/// Sum over all orderings of the alphabet of `|w|_{σ}` equals the product of
/// the letter counts.
pub fn permutation_identity_check(alphabet: &Alphabet, w: &Word) -> bool {
    let sum: BigUint = permutations(alphabet.len()).into_iter().map(|p| count_subword(w, &Word(p))).sum();
    let product: BigUint = parikh_vector(alphabet, w).0.into_iter().map(BigUint::from).product();
    sum == product
}

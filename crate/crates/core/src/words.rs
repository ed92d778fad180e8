//! Words, permutations and the monotone segments they are built from.
//!
//! A [`Word`] is a finite sequence of pairwise distinct positive letters in
//! one-line notation. A [`Permutation`] is a word whose letter set is exactly
//! `{1, ..., n}`. The monotone constructors [`eta`] and [`delta`] return
//! [`Element`]s rather than words so that the "zero word" convention for
//! empty ranges is the zero of the free module.

use std::borrow::Borrow;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use smallvec::SmallVec;

use crate::algebra::Element;
use crate::error::{Error, Result};

/// A single letter. Letters are bounded by [`max_degree`].
pub type Letter = u8;

/// Letters stored inline up to this length before spilling to the heap.
pub(crate) type Letters = SmallVec<[Letter; 16]>;

const DEFAULT_MAX_DEGREE: usize = 32;

/// Environment variable overriding the global degree cap.
pub const MAX_DEGREE_ENV: &str = "MR_MAX_DEGREE";

/// Largest letter (and so largest permutation degree) accepted anywhere.
///
/// Read once from `MR_MAX_DEGREE`, defaulting to 32 and clamped to the
/// letter type's range.
pub fn max_degree() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MAX_DEGREE_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v >= 1)
            .map(|v| v.min(Letter::MAX as usize))
            .unwrap_or(DEFAULT_MAX_DEGREE)
    })
}

/// Set of letters as a 256-bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
pub(crate) struct LetterSet([u64; 4]);

impl LetterSet {
    pub(crate) fn of(letters: &[Letter]) -> Self {
        let mut s = LetterSet::default();
        for &l in letters {
            s.insert(l);
        }
        s
    }

    /// Inserts `l`, returning false if it was already present.
    pub(crate) fn insert(&mut self, l: Letter) -> bool {
        let (i, bit) = ((l >> 6) as usize, 1u64 << (l & 63));
        let fresh = self.0[i] & bit == 0;
        self.0[i] |= bit;
        fresh
    }

    pub(crate) fn union(self, other: Self) -> Self {
        let mut out = self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a |= b;
        }
        out
    }

    pub(crate) fn is_disjoint(self, other: Self) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| a & b == 0)
    }
}

/// A finite sequence of pairwise distinct positive letters.
///
/// Ordering is lexicographic on the letter sequence, with a proper prefix
/// sorting first; the empty word is the least word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Letters);

impl Word {
    /// The empty word.
    pub fn empty() -> Self {
        Word(Letters::new())
    }

    /// Builds a word, checking that letters are positive, distinct and within
    /// the degree cap.
    pub fn new(letters: &[Letter]) -> Result<Self> {
        let cap = max_degree();
        let mut seen = LetterSet::default();
        for &l in letters {
            if l == 0 || l as usize > cap {
                return Err(Error::LetterOutOfRange {
                    letter: l as i64,
                    max: cap,
                });
            }
            if !seen.insert(l) {
                return Err(Error::RepeatedLetter(l));
            }
        }
        Ok(Word(Letters::from_slice(letters)))
    }

    /// Builds a word from wide integers (used by the text and FFI surfaces).
    pub fn from_ints(letters: &[i64]) -> Result<Self> {
        let cap = max_degree();
        let narrowed = letters
            .iter()
            .map(|&l| {
                if l < 1 || l as u64 > cap as u64 {
                    Err(Error::LetterOutOfRange {
                        letter: l,
                        max: cap,
                    })
                } else {
                    Ok(l as Letter)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(&narrowed)
    }

    /// Caller guarantees the invariants.
    pub(crate) fn from_letters_unchecked(letters: &[Letter]) -> Self {
        Word(Letters::from_slice(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub(crate) fn letter_set(&self) -> LetterSet {
        LetterSet::of(&self.0)
    }

    /// Adds `m` to every letter.
    pub fn shift(&self, m: usize) -> Result<Word> {
        let cap = max_degree();
        let mut out = Letters::with_capacity(self.len());
        for &l in self.letters() {
            let shifted = l as usize + m;
            if shifted > cap {
                return Err(Error::LetterOutOfRange {
                    letter: shifted as i64,
                    max: cap,
                });
            }
            out.push(shifted as Letter);
        }
        Ok(Word(out))
    }

    /// Concatenation; fails if the two words share a letter.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if !self.letter_set().is_disjoint(other.letter_set()) {
            return Err(Error::LetterCollision {
                left: self.to_string(),
                right: other.to_string(),
            });
        }
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Ok(Word(out))
    }

    /// True when the word is a permutation of `{1, ..., len}`.
    pub fn is_permutation(&self) -> bool {
        let n = self.len();
        self.letters().iter().all(|&l| (l as usize) <= n)
    }
}

impl Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl fmt::Display for Word {
    /// Compact digits when every letter is a single digit, otherwise
    /// comma-separated (a lone letter gets a trailing comma). The empty word
    /// renders as `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("e");
        }
        if self.letters().iter().all(|&l| l <= 9) {
            for l in self.letters() {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters().iter().map(|l| l.to_string()).collect();
            if parts.len() == 1 {
                write!(f, "{},", parts[0])
            } else {
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `e` for the empty word, comma-separated integers, or a digit
    /// string of at most nine letters.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "e" || s == "∅" {
            return Ok(Word::empty());
        }
        if s.is_empty() {
            return Err(Error::Parse(
                "empty word text; use `e` for the empty word".into(),
            ));
        }
        if s.contains(',') {
            let mut letters = Vec::new();
            let parts: Vec<&str> = s.split(',').collect();
            for (i, part) in parts.iter().enumerate() {
                let part = part.trim();
                if part.is_empty() && i + 1 == parts.len() && i > 0 {
                    break;
                }
                let v: i64 = part
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad letter `{part}` in `{s}`")))?;
                letters.push(v);
            }
            return Word::from_ints(&letters);
        }
        if !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("`{s}` is not a word")));
        }
        if s.len() > 9 {
            return Err(Error::Parse(format!(
                "digit string `{s}` is ambiguous at length {}; use comma syntax",
                s.len()
            )));
        }
        let letters: Vec<i64> = s.bytes().map(|b| (b - b'0') as i64).collect();
        Word::from_ints(&letters)
    }
}

/// A word of length `n` using each of `1..=n` exactly once.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation(Word);

impl Permutation {
    pub fn empty() -> Self {
        Permutation(Word::empty())
    }

    pub fn new(letters: &[Letter]) -> Result<Self> {
        Permutation::from_word(Word::new(letters)?)
    }

    pub fn from_word(word: Word) -> Result<Self> {
        if word.is_permutation() {
            Ok(Permutation(word))
        } else {
            Err(Error::NotPermutation(word.to_string()))
        }
    }

    pub fn identity(n: usize) -> Result<Self> {
        let letters: Vec<i64> = (1..=n as i64).collect();
        Ok(Permutation(Word::from_ints(&letters)?))
    }

    /// Every permutation of degree `n`, in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        use itertools::Itertools;
        (1..=n as Letter)
            .permutations(n)
            .map(|p| Permutation(Word::from_letters_unchecked(&p)))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    pub fn letters(&self) -> &[Letter] {
        self.0.letters()
    }

    /// `st(σ_1 ⋯ σ_i)`.
    pub fn prefix_standardized(&self, i: usize) -> Permutation {
        standardize_letters(&self.letters()[..i])
    }

    /// `st(σ_{i+1} ⋯ σ_n)`.
    pub fn suffix_standardized(&self, i: usize) -> Permutation {
        standardize_letters(&self.letters()[i..])
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.0)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::from_word(s.parse()?)
    }
}

/// The unique permutation order-isomorphic to `w`, where equal letters are
/// ranked left to right (so `113` standardizes to `123`).
pub fn standardize(w: &[u64]) -> Result<Permutation> {
    if let Some(&bad) = w.iter().find(|&&l| l == 0) {
        return Err(Error::LetterOutOfRange {
            letter: bad as i64,
            max: max_degree(),
        });
    }
    if w.len() > max_degree() {
        return Err(Error::DegreeTooLarge {
            degree: w.len(),
            max: max_degree(),
        });
    }
    let mut idx: Vec<usize> = (0..w.len()).collect();
    idx.sort_by_key(|&i| (w[i], i));
    let mut out = vec![0 as Letter; w.len()];
    for (rank, &i) in idx.iter().enumerate() {
        out[i] = (rank + 1) as Letter;
    }
    Ok(Permutation(Word::from_letters_unchecked(&out)))
}

/// Standardization of a repeat-free letter slice.
pub(crate) fn standardize_letters(w: &[Letter]) -> Permutation {
    let mut idx: SmallVec<[usize; 16]> = (0..w.len()).collect();
    idx.sort_unstable_by_key(|&i| w[i]);
    let mut out: Letters = smallvec::smallvec![0; w.len()];
    for (rank, &i) in idx.iter().enumerate() {
        out[i] = (rank + 1) as Letter;
    }
    Permutation(Word(out))
}

/// Adds `m` to every entry of a raw sequence (repeats allowed); the result is
/// meant as input to [`standardize`].
pub fn shift_raw(w: &[u64], m: u64) -> Vec<u64> {
    w.iter().map(|&l| l + m).collect()
}

fn monotone(
    letters: impl Iterator<Item = i64>,
    empty_case: bool,
    zero_case: bool,
) -> Result<Element> {
    if zero_case {
        return Ok(Element::zero());
    }
    if empty_case {
        return Ok(Element::one());
    }
    let letters: Vec<i64> = letters.collect();
    // a word containing a letter below 1 is the zero element
    if letters.iter().any(|&l| l < 1) {
        return Ok(Element::zero());
    }
    Ok(Element::from_word(Word::from_ints(&letters)?))
}

/// `η_{k,l}`: the increasing word `k(k+1)⋯l`, the empty word when
/// `k = l + 1`, and zero when `k ≥ l + 2`.
pub fn eta(k: i64, l: i64) -> Result<Element> {
    monotone(k..=l, k == l + 1, k >= l + 2)
}

/// `δ_{l,k}`: the decreasing word `l(l−1)⋯k`, the empty word when
/// `k = l + 1`, and zero when `k ≥ l + 2`.
pub fn delta(l: i64, k: i64) -> Result<Element> {
    monotone((k..=l).rev(), k == l + 1, k >= l + 2)
}

/// A single word given by integer letters; any letter below 1 makes it zero.
pub fn word_element(letters: &[i64]) -> Result<Element> {
    if letters.iter().any(|&l| l < 1) {
        return Ok(Element::zero());
    }
    Ok(Element::from_word(Word::from_ints(letters)?))
}

/// `σ_{A,n} = δ_A η_Ā`: the decreasing word on `A` followed by the increasing
/// word on its complement in `[n]`.
pub fn sigma_a(n: usize, a: &[usize]) -> Result<Permutation> {
    if n == 0 || n > max_degree() {
        return Err(Error::DegreeTooLarge {
            degree: n,
            max: max_degree(),
        });
    }
    if a.is_empty() {
        return Err(Error::InvalidSet("A must be nonempty".into()));
    }
    let mut marked = vec![false; n + 1];
    for &x in a {
        if x == 0 || x > n {
            return Err(Error::InvalidSet(format!("{x} is not in [{n}]")));
        }
        marked[x] = true;
    }
    let mut letters: Vec<Letter> = (1..=n)
        .rev()
        .filter(|&x| marked[x])
        .map(|x| x as Letter)
        .collect();
    letters.extend((1..=n).filter(|&x| !marked[x]).map(|x| x as Letter));
    Ok(Permutation(Word::from_letters_unchecked(&letters)))
}

/// `σ_{{a,b},n}` for `1 ≤ b < a ≤ n`.
pub fn sigma_pair(n: usize, a: usize, b: usize) -> Result<Permutation> {
    if !(1 <= b && b < a && a <= n) {
        return Err(Error::InvalidSpec { n, a, b });
    }
    sigma_a(n, &[a, b])
}

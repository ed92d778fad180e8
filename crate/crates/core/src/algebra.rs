//! The free module of integer combinations of words.
//!
//! [`Element`] carries concatenation, the shuffle product, the shifted
//! shuffle product of permutations and the last-letter components
//! `x_j` / `x_j^*`. Coefficient arithmetic is checked; overflow surfaces as
//! [`Error::Overflow`].

use std::cell::RefCell;
use std::collections::hash_map::Entry;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Letter, LetterSet, Permutation, Word};

/// Calls `f` on every interleaving of `u` and `v`, in the order of the left
/// recursion `au ⧢ bv = a(u ⧢ bv) + b(au ⧢ v)`.
pub(crate) fn for_each_shuffle(u: &[Letter], v: &[Letter], f: &mut impl FnMut(&[Letter])) {
    fn rec(u: &[Letter], v: &[Letter], buf: &mut Vec<Letter>, f: &mut impl FnMut(&[Letter])) {
        if u.is_empty() || v.is_empty() {
            let mark = buf.len();
            buf.extend_from_slice(u);
            buf.extend_from_slice(v);
            f(buf);
            buf.truncate(mark);
            return;
        }
        buf.push(u[0]);
        rec(&u[1..], v, buf, f);
        buf.pop();
        buf.push(v[0]);
        rec(u, &v[1..], buf, f);
        buf.pop();
    }
    let mut buf = Vec::with_capacity(u.len() + v.len());
    rec(u, v, &mut buf, f);
}

const SHUFFLE_CACHE_ENTRIES: usize = 1 << 14;
const SHUFFLE_CACHE_MAX_RESULT: usize = 1 << 10;

type ShuffleMemo = FxHashMap<(Word, Word), Rc<[Word]>>;

thread_local! {
    static SHUFFLE_CACHE: RefCell<ShuffleMemo> =
        RefCell::new(FxHashMap::default());
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Word-pair shuffle memoized per thread. Large products bypass the cache.
fn shuffle_words(u: &Word, v: &Word, f: &mut impl FnMut(&[Letter])) {
    if binomial(u.len() + v.len(), u.len()) > SHUFFLE_CACHE_MAX_RESULT {
        for_each_shuffle(u.letters(), v.letters(), f);
        return;
    }
    let key = (u.clone(), v.clone());
    let cached = SHUFFLE_CACHE.with(|c| c.borrow().get(&key).cloned());
    let words = match cached {
        Some(w) => w,
        None => {
            let mut out = Vec::new();
            for_each_shuffle(u.letters(), v.letters(), &mut |w| {
                out.push(Word::from_letters_unchecked(w))
            });
            let words: Rc<[Word]> = out.into();
            SHUFFLE_CACHE.with(|c| {
                let mut c = c.borrow_mut();
                if c.len() >= SHUFFLE_CACHE_ENTRIES {
                    c.clear();
                }
                c.insert(key, words.clone());
            });
            words
        }
    };
    for w in words.iter() {
        f(w.letters());
    }
}

/// A finite integer combination of words. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Element {
    terms: FxHashMap<Word, i64>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    /// The empty word with coefficient one.
    pub fn one() -> Self {
        Element::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Element::monomial(w, 1)
    }

    pub fn monomial(w: Word, c: i64) -> Self {
        let mut e = Element::zero();
        if c != 0 {
            e.terms.insert(w, c);
        }
        e
    }

    pub fn from_permutation(p: &Permutation) -> Self {
        Element::from_word(p.as_word().clone())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, i64)>) -> Result<Self> {
        let mut e = Element::zero();
        for (w, c) in terms {
            e.add_term(w.letters(), c)?;
        }
        Ok(e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct words with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn coeff_of(&self, letters: &[Letter]) -> i64 {
        self.terms.get(letters).copied().unwrap_or(0)
    }

    /// Terms in arbitrary order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    /// Terms in lexicographic word order.
    pub fn sorted_terms(&self) -> Vec<(&Word, i64)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_unstable_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    /// Sum of absolute coefficients, i.e. the term count with multiplicity.
    pub fn weight(&self) -> u64 {
        self.terms.values().map(|c| c.unsigned_abs()).sum()
    }

    /// Common word length, if every term has the same length.
    pub fn degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Word::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Adds `c` to the coefficient of `w`.
    pub fn add_term(&mut self, w: &[Letter], c: i64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        if let Some(slot) = self.terms.get_mut(w) {
            let sum = slot.checked_add(c).ok_or(Error::Overflow)?;
            if sum == 0 {
                self.terms.remove(w);
            } else {
                *slot = sum;
            }
        } else {
            self.terms.insert(Word::from_letters_unchecked(w), c);
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &Element) -> Result<()> {
        for (w, c) in other.terms() {
            match self.terms.entry(w.clone()) {
                Entry::Occupied(mut e) => {
                    let sum = e.get().checked_add(c).ok_or(Error::Overflow)?;
                    if sum == 0 {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
                Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.scale(-1)?)
    }

    pub fn scale(&self, c: i64) -> Result<Element> {
        if c == 0 {
            return Ok(Element::zero());
        }
        let mut out = Element::zero();
        out.terms.reserve(self.len());
        for (w, k) in self.terms() {
            out.terms
                .insert(w.clone(), k.checked_mul(c).ok_or(Error::Overflow)?);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Result<Element> {
        self.scale(-1)
    }

    fn letter_union(&self) -> LetterSet {
        self.terms
            .keys()
            .fold(LetterSet::default(), |acc, w| acc.union(w.letter_set()))
    }

    /// Rejects any pair of support words sharing a letter.
    fn check_disjoint(&self, other: &Element) -> Result<()> {
        if self.letter_union().is_disjoint(other.letter_union()) {
            return Ok(());
        }
        for u in self.support() {
            let us = u.letter_set();
            for v in other.support() {
                if !us.is_disjoint(v.letter_set()) {
                    return Err(Error::LetterCollision {
                        left: u.to_string(),
                        right: v.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Bilinear concatenation.
    pub fn concat(&self, other: &Element) -> Result<Element> {
        self.check_disjoint(other)?;
        let mut out = Element::zero();
        let mut buf = Vec::new();
        for (u, cu) in self.terms() {
            for (v, cv) in other.terms() {
                buf.clear();
                buf.extend_from_slice(u.letters());
                buf.extend_from_slice(v.letters());
                out.add_term(&buf, cu.checked_mul(cv).ok_or(Error::Overflow)?)?;
            }
        }
        Ok(out)
    }

    /// Bilinear shuffle product; the empty word is its unit.
    pub fn shuffle(&self, other: &Element) -> Result<Element> {
        self.check_disjoint(other)?;
        let mut out = Element::zero();
        for (u, cu) in self.terms() {
            for (v, cv) in other.terms() {
                let c = cu.checked_mul(cv).ok_or(Error::Overflow)?;
                let mut status = Ok(());
                shuffle_words(u, v, &mut |w| {
                    if status.is_ok() {
                        status = out.add_term(w, c);
                    }
                });
                status?;
            }
        }
        Ok(out)
    }

    /// `x_j`: the terms whose last letter is `j`.
    pub fn component_last(&self, j: Letter) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.last() == Some(j))
                .map(|(w, &c)| (w.clone(), c))
                .collect(),
        }
    }

    /// `x_j^*`: drops the final letter `j` from every term.
    pub fn strip_last(&self, j: Letter) -> Result<Element> {
        let mut out = Element::zero();
        for (w, c) in self.terms() {
            if w.last() != Some(j) {
                return Err(Error::MissingSuffix {
                    word: w.to_string(),
                    letter: j,
                });
            }
            out.terms
                .insert(Word::from_letters_unchecked(&w.letters()[..w.len() - 1]), c);
        }
        Ok(out)
    }

    /// `x_j^*` of the terms of `x` ending in `j`.
    pub fn component_stripped(&self, j: Letter) -> Element {
        self.component_last(j)
            .strip_last(j)
            .expect("every term of the component ends in j")
    }

    /// Rendering of the first `limit` words on which `self` and `other`
    /// differ, as `word: left vs right`.
    pub fn diff_summary(&self, other: &Element, limit: usize) -> Vec<String> {
        let mut words: Vec<&Word> = self.support().chain(other.support()).collect();
        words.sort_unstable();
        words.dedup();
        words
            .into_iter()
            .filter(|w| self.coeff(w) != other.coeff(w))
            .take(limit)
            .map(|w| format!("{w}: {} vs {}", self.coeff(w), other.coeff(w)))
            .collect()
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.sorted_terms()
            .into_iter()
            .map(|(w, c)| TermRecord {
                word: w.letters().iter().map(|&l| l as u32).collect(),
                coeff: c,
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<Element> {
        let mut e = Element::zero();
        for r in records {
            let letters: Vec<i64> = r.word.iter().map(|&l| l as i64).collect();
            e.add_term(Word::from_ints(&letters)?.letters(), r.coeff)?;
        }
        Ok(e)
    }
}

/// Structured form of one term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub word: Vec<u32>,
    pub coeff: i64,
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        Element::from_records(&records).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Element {
    /// `-132 +231 -312`; magnitudes other than one as `+2·1423`; zero as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(if c < 0 { "-" } else { "+" })?;
            if c.unsigned_abs() != 1 {
                write!(f, "{}·", c.unsigned_abs())?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl FromStr for Element {
    type Err = Error;

    /// Parses the text rendering produced by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut e = Element::zero();
        if s == "0" {
            return Ok(e);
        }
        for tok in s.split_whitespace() {
            let (sign, rest) = match tok.as_bytes().first() {
                Some(b'+') => (1, &tok[1..]),
                Some(b'-') => (-1, &tok[1..]),
                _ => return Err(Error::Parse(format!("term `{tok}` needs a sign"))),
            };
            let (mag, word) = match rest.split_once('·').or_else(|| rest.split_once('*')) {
                Some((m, w)) => {
                    let m: i64 = m
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad magnitude in `{tok}`")))?;
                    (m, w)
                }
                None => (1, rest),
            };
            let w: Word = word.parse()?;
            e.add_term(w.letters(), sign * mag)?;
        }
        Ok(e)
    }
}

/// `p ⊻ q`: the shuffle of `p` with `q` shifted by `|p|`.
pub fn shifted_shuffle(p: &Permutation, q: &Permutation) -> Element {
    let shifted: Vec<Letter> = q
        .letters()
        .iter()
        .map(|&l| l + p.degree() as Letter)
        .collect();
    let mut out = Element::zero();
    for_each_shuffle(p.letters(), &shifted, &mut |w| {
        out.add_term(w, 1)
            .expect("shuffle of distinct words has unit coefficients")
    });
    out
}

/// Bilinear extension of `⊻` to combinations of permutations.
pub fn product(x: &Element, y: &Element) -> Result<Element> {
    let mut out = Element::zero();
    let mut shifted = Vec::new();
    for (u, cu) in x.terms() {
        if !u.is_permutation() {
            return Err(Error::NotPermutation(u.to_string()));
        }
        for (v, cv) in y.terms() {
            if !v.is_permutation() {
                return Err(Error::NotPermutation(v.to_string()));
            }
            if u.len() + v.len() > crate::words::max_degree() {
                return Err(Error::DegreeTooLarge {
                    degree: u.len() + v.len(),
                    max: crate::words::max_degree(),
                });
            }
            let c = cu.checked_mul(cv).ok_or(Error::Overflow)?;
            shifted.clear();
            shifted.extend(v.letters().iter().map(|&l| l + u.len() as Letter));
            let mut status = Ok(());
            for_each_shuffle(u.letters(), &shifted, &mut |w| {
                if status.is_ok() {
                    status = out.add_term(w, c);
                }
            });
            status?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;

    fn el(s: &str) -> Element {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Element {
        Element::from_word(s.parse().unwrap())
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Interleavings by brute force: choose which positions hold `u`.
    fn interleavings(u: &[Letter], v: &[Letter]) -> Vec<Vec<Letter>> {
        let n = u.len() + v.len();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != u.len() {
                continue;
            }
            let (mut i, mut j) = (0, 0);
            let mut word = Vec::new();
            for pos in 0..n {
                if mask & (1 << pos) != 0 {
                    word.push(u[i]);
                    i += 1;
                } else {
                    word.push(v[j]);
                    j += 1;
                }
            }
            out.push(word);
        }
        out
    }

    #[test]
    fn add_examples() {
        assert!(el("+21").add(&el("-21")).unwrap().is_zero());
        assert_eq!(el("+12").add(&el("+12")).unwrap(), el("+2·12"));
        assert_eq!(
            el("+231 -132").add(&el("-312")).unwrap(),
            el("+231 -132 -312")
        );
    }

    #[test]
    fn overflow_is_reported() {
        let big = Element::monomial("12".parse().unwrap(), i64::MAX);
        assert_eq!(big.add(&el("+12")), Err(Error::Overflow));
        assert_eq!(big.scale(2), Err(Error::Overflow));
        assert_eq!(
            big.shuffle(&Element::monomial("3".parse().unwrap(), 2)),
            Err(Error::Overflow)
        );
    }

    #[test]
    fn scale_examples() {
        let x = el("+12 -21");
        assert_eq!(x.scale(-1).unwrap(), el("-12 +21"));
        assert!(x.scale(0).unwrap().is_zero());
        // (−1)^{n+1} with n = 3
        assert_eq!(w("23").scale((-1i64).pow(4)).unwrap(), w("23"));
    }

    #[test]
    fn concat_examples() {
        let s = w("13").add(&w("31")).unwrap();
        assert_eq!(s.concat(&w("2")).unwrap(), el("+132 +312"));
        assert_eq!(s.concat(&Element::one()).unwrap(), s);
        assert!(s.concat(&Element::zero()).unwrap().is_zero());
        assert!(matches!(
            w("12").concat(&w("2")),
            Err(Error::LetterCollision { .. })
        ));
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(
            w("12").shuffle(&w("34")).unwrap(),
            el("+1234 +1324 +1342 +3124 +3142 +3412")
        );
        assert_eq!(w("4312").shuffle(&Element::one()).unwrap(), w("4312"));
        assert_eq!(w("2").shuffle(&w("43")).unwrap(), el("+243 +423 +432"));
        assert!(w("12").shuffle(&w("23")).is_err());
    }

    #[test]
    fn shuffle_matches_brute_force() {
        let pairs = [
            ("12", "34"),
            ("531", "42"),
            ("7", "123456"),
            ("e", "21"),
            ("2413", "5768"),
        ];
        for (a, b) in pairs {
            let u: Word = a.parse().unwrap();
            let v: Word = b.parse().unwrap();
            let mut expect = Element::zero();
            for word in interleavings(u.letters(), v.letters()) {
                expect.add_term(&word, 1).unwrap();
            }
            let got = Element::from_word(u.clone())
                .shuffle(&Element::from_word(v.clone()))
                .unwrap();
            assert_eq!(got, expect, "{a} ⧢ {b}");
            assert_eq!(got.len(), binomial(u.len() + v.len(), u.len()));
            assert!(got.terms().all(|(_, c)| c == 1));
        }
    }

    #[test]
    fn shifted_shuffle_examples() {
        assert_eq!(
            shifted_shuffle(&perm("21"), &perm("12")),
            el("+2134 +2314 +2341 +3214 +3241 +3421")
        );
        assert_eq!(
            shifted_shuffle(&Permutation::empty(), &perm("312")),
            w("312")
        );
        assert_eq!(
            shifted_shuffle(&perm("1"), &perm("21")),
            el("+132 +312 +321")
        );
        let s = shifted_shuffle(&perm("231"), &perm("21"));
        assert_eq!(s.len(), 10);
        assert_eq!(s.degree(), Some(5));
    }

    #[test]
    fn components() {
        let s213 = el("+231 -132 -312");
        assert_eq!(s213.component_last(1), w("231"));
        assert!(s213.component_last(3).is_zero());
        assert_eq!(s213.component_stripped(2), el("-13 -31"));
        assert_eq!(w("5").strip_last(5).unwrap(), Element::one());
        assert!(matches!(
            s213.strip_last(2),
            Err(Error::MissingSuffix { .. })
        ));
        assert!(s213.component_last(7).is_zero());
        let mut total = Element::zero();
        for j in 1..=3 {
            total.add_assign(&s213.component_last(j)).unwrap();
        }
        assert_eq!(total, s213);
    }

    #[test]
    fn text_and_records() {
        let x = el("+2·1423 -312 +e");
        assert_eq!(x.to_string(), "+e +2·1423 -312");
        assert_eq!(Element::zero().to_string(), "0");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(
            json,
            r#"[{"word":[],"coeff":1},{"word":[1,4,2,3],"coeff":2},{"word":[3,1,2],"coeff":-1}]"#
        );
        let back: Element = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn product_rejects_non_permutations() {
        assert!(product(&w("13"), &w("1")).is_err());
        assert_eq!(
            product(&w("21"), &w("12")).unwrap(),
            shifted_shuffle(&perm("21"), &perm("12"))
        );
    }
}

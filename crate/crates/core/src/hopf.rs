//! Coproduct, counit and the recursive antipode.
//!
//! The antipode is evaluated with
//! `S(σ) = −Σ_{i<n} S(st(σ_1⋯σ_i)) ⊻ st(σ_{i+1}⋯σ_n)`, `S(∅) = ∅`.
//! Every standardized prefix of a standardized prefix of `σ` is itself a
//! standardized prefix of `σ`, so the values needed are exactly
//! `S(st(σ_1⋯σ_i))` for `i = 0..n`; [`AntipodeCache`] fills them in by
//! increasing degree with no recursion.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use rustc_hash::FxHashMap;

use crate::algebra::{for_each_shuffle, product, Element};
use crate::error::{Error, Result};
use crate::words::{Letter, Permutation, Word};

/// Integer combination of ordered pairs of permutations.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: HashMap<(Permutation, Permutation), i64>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn add_term(&mut self, left: Permutation, right: Permutation, c: i64) -> Result<()> {
        let key = (left, right);
        let sum = self
            .terms
            .get(&key)
            .copied()
            .unwrap_or(0)
            .checked_add(c)
            .ok_or(Error::Overflow)?;
        if sum == 0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, left: &Permutation, right: &Permutation) -> i64 {
        self.terms
            .get(&(left.clone(), right.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// Terms in lexicographic pair order.
    pub fn sorted_terms(&self) -> Vec<(&Permutation, &Permutation, i64)> {
        let mut v: Vec<_> = self.terms.iter().map(|((l, r), &c)| (l, r, c)).collect();
        v.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        v
    }
}

impl fmt::Display for TensorElement {
    /// `1·(e⊗2314) 1·(1⊗213) …`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(l, r, c)| format!("{c}·({l}⊗{r})"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement({self})")
    }
}

/// `Δ(σ) = Σ_i st(σ_1⋯σ_i) ⊗ st(σ_{i+1}⋯σ_n)`.
pub fn coproduct(p: &Permutation) -> TensorElement {
    let mut out = TensorElement::zero();
    for i in 0..=p.degree() {
        out.add_term(p.prefix_standardized(i), p.suffix_standardized(i), 1)
            .expect("deconcatenations are distinct");
    }
    out
}

/// Coefficient of the empty word.
pub fn counit(x: &Element) -> i64 {
    x.coeff(&Word::empty())
}

/// Shared memo table of antipodes keyed by permutation.
///
/// Safe to share across threads; a value read after insertion is always the
/// final one since entries are never replaced.
#[derive(Default)]
pub struct AntipodeCache {
    table: RwLock<FxHashMap<Permutation, Arc<Element>>>,
    generated: AtomicU64,
}

impl AntipodeCache {
    pub fn new() -> Self {
        AntipodeCache::default()
    }

    fn get(&self, p: &Permutation) -> Option<Arc<Element>> {
        self.table
            .read()
            .expect("antipode cache poisoned")
            .get(p)
            .cloned()
    }

    fn insert(&self, p: Permutation, value: Element) -> Arc<Element> {
        let mut table = self.table.write().expect("antipode cache poisoned");
        table.entry(p).or_insert_with(|| Arc::new(value)).clone()
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("antipode cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Words produced by shifted shuffles so far, before any cancellation.
    pub fn generated_terms(&self) -> u64 {
        self.generated.load(Ordering::Relaxed)
    }

    /// `S(σ)`.
    pub fn antipode(&self, p: &Permutation) -> Result<Arc<Element>> {
        if let Some(hit) = self.get(p) {
            return Ok(hit);
        }
        let mut prefixes: Vec<Arc<Element>> = Vec::with_capacity(p.degree() + 1);
        for i in 0..=p.degree() {
            let q = p.prefix_standardized(i);
            let value = match self.get(&q) {
                Some(v) => v,
                None => {
                    let v = self.expand(&q, &prefixes)?;
                    self.insert(q, v)
                }
            };
            prefixes.push(value);
        }
        Ok(prefixes.pop().expect("at least S(∅)"))
    }

    /// One step of the recursion; `prefixes[i]` holds `S(st(q_1⋯q_i))`.
    fn expand(&self, q: &Permutation, prefixes: &[Arc<Element>]) -> Result<Element> {
        let n = q.degree();
        if n == 0 {
            return Ok(Element::one());
        }
        let mut out = Element::zero();
        let mut generated = 0u64;
        let mut shifted: Vec<Letter> = Vec::with_capacity(n);
        for (i, s_prefix) in prefixes.iter().enumerate().take(n) {
            let suffix = q.suffix_standardized(i);
            shifted.clear();
            shifted.extend(suffix.letters().iter().map(|&l| l + i as Letter));
            for (w, c) in s_prefix.terms() {
                let neg = c.checked_neg().ok_or(Error::Overflow)?;
                let mut status = Ok(());
                for_each_shuffle(w.letters(), &shifted, &mut |t| {
                    generated += 1;
                    if status.is_ok() {
                        status = out.add_term(t, neg);
                    }
                });
                status?;
            }
        }
        self.generated.fetch_add(generated, Ordering::Relaxed);
        Ok(out)
    }

    /// Linear extension of `S` to combinations of permutations.
    pub fn antipode_element(&self, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (w, c) in x.terms() {
            let p = Permutation::from_word(w.clone())?;
            out.add_assign(&self.antipode(&p)?.scale(c)?)?;
        }
        Ok(out)
    }
}

/// `S(σ)` computed with a fresh cache.
pub fn antipode(p: &Permutation) -> Result<Element> {
    let cache = AntipodeCache::new();
    let s = cache.antipode(p)?;
    Ok(Arc::try_unwrap(s).unwrap_or_else(|s| (*s).clone()))
}

/// Checks `Σ_i S(st(σ_1⋯σ_i)) ⊻ st(σ_{i+1}⋯σ_n) = ε(σ)·∅` and the mirrored
/// identity `Σ_i st(σ_1⋯σ_i) ⊻ S(st(σ_{i+1}⋯σ_n)) = ε(σ)·∅`.
pub fn check_antipode_axiom_with(cache: &AntipodeCache, p: &Permutation) -> Result<bool> {
    let unit = if p.degree() == 0 {
        Element::one()
    } else {
        Element::zero()
    };
    let mut left = Element::zero();
    let mut right = Element::zero();
    for i in 0..=p.degree() {
        let pre = p.prefix_standardized(i);
        let suf = p.suffix_standardized(i);
        let s_pre = cache.antipode(&pre)?;
        left.add_assign(&product(&s_pre, &Element::from_permutation(&suf))?)?;
        let s_suf = cache.antipode(&suf)?;
        right.add_assign(&product(&Element::from_permutation(&pre), &s_suf)?)?;
    }
    Ok(left == unit && right == unit)
}

pub fn check_antipode_axiom(p: &Permutation) -> Result<bool> {
    check_antipode_axiom_with(&AntipodeCache::new(), p)
}

/// `(Δ⊗id)Δ(σ) = (id⊗Δ)Δ(σ)`.
pub fn check_coassociativity(p: &Permutation) -> bool {
    type Triple = (Permutation, Permutation, Permutation);
    let mut left: HashMap<Triple, i64> = HashMap::new();
    let mut right: HashMap<Triple, i64> = HashMap::new();
    for (a, b, c) in coproduct(p).sorted_terms() {
        for (a1, a2, c1) in coproduct(a).sorted_terms() {
            *left.entry((a1.clone(), a2.clone(), b.clone())).or_default() += c * c1;
        }
        for (b1, b2, c2) in coproduct(b).sorted_terms() {
            *right
                .entry((a.clone(), b1.clone(), b2.clone()))
                .or_default() += c * c2;
        }
    }
    left.retain(|_, c| *c != 0);
    right.retain(|_, c| *c != 0);
    left == right
}

/// For each degree up to `max_n`: how many permutations satisfy `S(S(σ)) = σ`.
/// Recorded for information only.
pub fn involution_census(max_n: usize) -> Result<Vec<(usize, usize, usize)>> {
    let cache = AntipodeCache::new();
    let mut out = Vec::new();
    for n in 0..=max_n {
        let mut fixed = 0;
        let mut total = 0;
        for p in Permutation::all(n) {
            total += 1;
            let s = cache.antipode(&p)?;
            if cache.antipode_element(&s)? == Element::from_permutation(&p) {
                fixed += 1;
            }
        }
        out.push((n, total, fixed));
    }
    Ok(out)
}

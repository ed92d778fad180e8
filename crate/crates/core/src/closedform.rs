//! Cancellation-free closed forms for `S(σ_A)` with `A = {a, b}`.
//!
//! Every formula is kept as a list of signed shuffle sets ([`FormulaTerm`])
//! rather than a flat expansion, so the cancellation audit can inspect how
//! the sets overlap. Each set is built from [`eta`], [`delta`], shuffle and
//! concatenation; the zero and empty-word conventions of the monotone words
//! take care of every boundary collapse.
//!
//! Terms are grouped by the summand of the displayed formula they come from.
//! A sum such as `Σ_{k=4}^{b} (−1)^{n+k}(kη_{2,k−1} ⧢ δ_{n,k+1})` is one group
//! holding one term per `k`.

use std::fmt;

use serde::Serialize;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::words::{delta, eta, sigma_pair, word_element, Permutation};

/// Which closed formula governs a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseId {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
    L,
    M,
    N,
    /// `A = {n−1, n}`, `j = 1`.
    TopA,
    /// `A = {n−1, n}`, `j = 2`.
    TopB,
    /// `A = {n−1, n}`, `3 ≤ j ≤ n−2`.
    TopC,
    /// `A = {n−1, n}`, `j = n−1`.
    TopD,
    /// `A = {n−1, n}`, `j = n`.
    TopE,
    /// Cancellation-free rewrite of case (h) at `j ∈ {3, 4}`.
    HPrime,
}

impl CaseId {
    /// The fourteen cases of the two-letter theorem, in order.
    pub const PAIR_CASES: [CaseId; 14] = [
        CaseId::A,
        CaseId::B,
        CaseId::C,
        CaseId::D,
        CaseId::E,
        CaseId::F,
        CaseId::G,
        CaseId::H,
        CaseId::I,
        CaseId::J,
        CaseId::K,
        CaseId::L,
        CaseId::M,
        CaseId::N,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            CaseId::A => "a",
            CaseId::B => "b",
            CaseId::C => "c",
            CaseId::D => "d",
            CaseId::E => "e",
            CaseId::F => "f",
            CaseId::G => "g",
            CaseId::H => "h",
            CaseId::I => "i",
            CaseId::J => "j",
            CaseId::K => "k",
            CaseId::L => "l",
            CaseId::M => "m",
            CaseId::N => "n",
            CaseId::TopA => "top-a",
            CaseId::TopB => "top-b",
            CaseId::TopC => "top-c",
            CaseId::TopD => "top-d",
            CaseId::TopE => "top-e",
            CaseId::HPrime => "h'",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.tag())
    }
}

/// `σ_{{a,b},n}` with `1 ≤ b < a ≤ n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SigmaSpec {
    n: usize,
    a: usize,
    b: usize,
}

impl SigmaSpec {
    pub fn new(n: usize, a: usize, b: usize) -> Result<Self> {
        if !(1 <= b && b < a && a <= n) || n > crate::words::max_degree() {
            return Err(Error::InvalidSpec { n, a, b });
        }
        Ok(SigmaSpec { n, a, b })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn a(self) -> usize {
        self.a
    }

    pub fn b(self) -> usize {
        self.b
    }

    pub fn permutation(self) -> Permutation {
        sigma_pair(self.n, self.a, self.b).expect("spec is validated")
    }

    /// Every spec with `min_n ≤ n ≤ max_n`, ordered by `(n, a, b)`.
    pub fn range(min_n: usize, max_n: usize) -> impl Iterator<Item = SigmaSpec> {
        (min_n.max(2)..=max_n)
            .flat_map(|n| (2..=n).flat_map(move |a| (1..a).map(move |b| SigmaSpec { n, a, b })))
    }

    /// `Σ_{n=2}^{max_n} n(n−1)/2`.
    pub fn count(max_n: usize) -> usize {
        (2..=max_n).map(|n| n * (n - 1) / 2).sum()
    }

    /// Recognizes `σ_{{a,b},n}`: a descent `a > b` followed by the increasing
    /// word on the remaining letters.
    pub fn detect(p: &Permutation) -> Option<SigmaSpec> {
        let l = p.letters();
        if l.len() < 2 || l[0] <= l[1] {
            return None;
        }
        let spec = SigmaSpec::new(l.len(), l[0] as usize, l[1] as usize).ok()?;
        (spec.permutation() == *p).then_some(spec)
    }
}

impl fmt::Display for SigmaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, a={}, b={})", self.n, self.a, self.b)
    }
}

/// One signed shuffle set of a formula.
#[derive(Clone, Debug)]
pub struct FormulaTerm {
    /// Index of the displayed summand this set belongs to.
    pub group: usize,
    /// Sign inside the outer factor.
    pub sign: i64,
    pub label: String,
    /// The shuffle set itself, every coefficient `+1`.
    pub set: Element,
}

/// A component formula: `outer · Σ sign·set`.
#[derive(Clone, Debug)]
pub struct CaseFormula {
    pub case: CaseId,
    pub outer: i64,
    pub terms: Vec<FormulaTerm>,
}

/// What to perturb in a single case formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MutationTarget {
    Outer,
    Group(usize),
}

/// A deliberate single-sign error injected into one case formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Mutation {
    pub case: CaseId,
    pub target: MutationTarget,
}

impl CaseFormula {
    fn new(case: CaseId, outer: i64) -> Self {
        CaseFormula {
            case,
            outer,
            terms: Vec::new(),
        }
    }

    fn push(&mut self, group: usize, sign: i64, label: impl Into<String>, set: Element) {
        self.terms.push(FormulaTerm {
            group,
            sign,
            label: label.into(),
            set,
        });
    }

    /// Effective sign of each term including the outer factor.
    pub fn signed_terms(&self) -> impl Iterator<Item = (i64, &FormulaTerm)> {
        self.terms.iter().map(move |t| (self.outer * t.sign, t))
    }

    pub fn evaluate(&self) -> Result<Element> {
        let mut out = Element::zero();
        for (sign, t) in self.signed_terms() {
            out.add_assign(&t.set.scale(sign)?)?;
        }
        Ok(out)
    }

    /// Number of displayed summands.
    pub fn groups(&self) -> usize {
        self.terms.iter().map(|t| t.group + 1).max().unwrap_or(0)
    }

    /// Applies `m` if it targets this formula's case.
    pub fn mutate(&mut self, m: &Mutation) {
        if m.case != self.case {
            return;
        }
        match m.target {
            MutationTarget::Outer => self.outer = -self.outer,
            MutationTarget::Group(g) => {
                for t in self.terms.iter_mut().filter(|t| t.group == g) {
                    t.sign = -t.sign;
                }
            }
        }
    }
}

fn sign(exponent: i64) -> i64 {
    if exponent.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn letter(x: i64) -> Result<Element> {
    word_element(&[x])
}

fn cat(parts: &[Element]) -> Result<Element> {
    parts
        .iter()
        .try_fold(Element::one(), |acc, p| acc.concat(p))
}

fn sh(parts: &[Element]) -> Result<Element> {
    parts
        .iter()
        .try_fold(Element::one(), |acc, p| acc.shuffle(p))
}

/// Decision table for the fourteen cases.
pub fn classify(spec: SigmaSpec, j: usize) -> Result<CaseId> {
    let (n, a, b) = (spec.n, spec.a, spec.b);
    if j < 1 || j > n {
        return Err(Error::OutOfRange(format!("j={j} must lie in 1..={n}")));
    }
    Ok(match j {
        1 => match b {
            1 => CaseId::A,
            2 => CaseId::B,
            _ => CaseId::C,
        },
        2 => match b {
            1 if a == 2 => CaseId::D,
            1 => CaseId::E,
            2 => CaseId::F,
            _ => CaseId::G,
        },
        _ if j < b => CaseId::H,
        _ if j == b => CaseId::I,
        _ if j == b + 1 => {
            if a == b + 1 {
                CaseId::J
            } else {
                CaseId::K
            }
        }
        _ if j < a => CaseId::L,
        _ if j == a => CaseId::M,
        _ => CaseId::N,
    })
}

// Shared summands. `j` is the component letter.

/// `1 ⧢ (j−1)η_{2,j−2} ⧢ δ_{n,j+1}`
fn one_hook_low(n: i64, j: i64) -> Result<Element> {
    sh(&[
        letter(1)?,
        cat(&[letter(j - 1)?, eta(2, j - 2)?])?,
        delta(n, j + 1)?,
    ])
}

/// `δ_{j−1,j−2}η_{1,j−3} ⧢ δ_{n,j+1}`
fn descent_low(n: i64, j: i64) -> Result<Element> {
    sh(&[
        cat(&[delta(j - 1, j - 2)?, eta(1, j - 3)?])?,
        delta(n, j + 1)?,
    ])
}

/// `1 ⧢ (j+1)η_{2,j−1} ⧢ δ_{n,j+2}`
fn one_hook_high(n: i64, j: i64) -> Result<Element> {
    sh(&[
        letter(1)?,
        cat(&[letter(j + 1)?, eta(2, j - 1)?])?,
        delta(n, j + 2)?,
    ])
}

/// `δ_{j+2,j+1}η_{1,j−1} ⧢ δ_{n,j+3}`
fn descent_high(n: i64, j: i64) -> Result<Element> {
    sh(&[
        cat(&[delta(j + 2, j + 1)?, eta(1, j - 1)?])?,
        delta(n, j + 3)?,
    ])
}

/// `1 ⧢ (3 ⧢ δ_{n,5})4`
fn one_three_four(n: i64) -> Result<Element> {
    sh(&[
        letter(1)?,
        cat(&[sh(&[letter(3)?, delta(n, 5)?])?, letter(4)?])?,
    ])
}

/// `kη_{2,k−1} ⧢ δ_{n,k+1}`
fn hook_tail(n: i64, k: i64) -> Result<Element> {
    sh(&[cat(&[letter(k)?, eta(2, k - 1)?])?, delta(n, k + 1)?])
}

/// The formula for `S(σ_A)_j^*`, before evaluation.
pub fn case_formula(spec: SigmaSpec, j: usize) -> Result<CaseFormula> {
    let case = classify(spec, j)?;
    let (n, a, b, j) = (spec.n as i64, spec.a as i64, spec.b as i64, j as i64);
    let mut f;
    match case {
        CaseId::A => {
            f = CaseFormula::new(case, sign(n + 1));
            f.push(
                0,
                1,
                "(2⧢δ[n,4])3",
                cat(&[sh(&[letter(2)?, delta(n, 4)?])?, letter(3)?])?,
            );
        }
        CaseId::B => {
            f = CaseFormula::new(case, sign(n));
            f.push(
                0,
                1,
                "(32⧢δ[n,5])4",
                cat(&[sh(&[word_element(&[3, 2])?, delta(n, 5)?])?, letter(4)?])?,
            );
        }
        CaseId::C => {
            f = CaseFormula::new(case, 1);
            let head = cat(&[
                sh(&[cat(&[letter(b + 1)?, eta(2, b - 1)?])?, delta(n, b + 2)?])?,
                letter(b)?,
            ])?;
            f.push(0, sign(n + b + 1), "[(b+1)η[2,b-1]⧢δ[n,b+2]]b", head);
            for k in 4..=b {
                f.push(
                    1,
                    sign(n + k),
                    format!("{k}η[2,{}]⧢δ[n,{}]", k - 1, k + 1),
                    hook_tail(n, k)?,
                );
            }
        }
        CaseId::D => {
            f = CaseFormula::new(case, sign(n));
            f.push(0, 1, "1⧢δ[n,3]", sh(&[letter(1)?, delta(n, 3)?])?);
        }
        CaseId::E => {
            f = CaseFormula::new(case, sign(n));
            f.push(0, 1, "1⧢δ[n,3]", sh(&[letter(1)?, delta(n, 3)?])?);
            f.push(
                1,
                1,
                "31⧢δ[n,4]",
                sh(&[word_element(&[3, 1])?, delta(n, 4)?])?,
            );
        }
        CaseId::F => {
            f = CaseFormula::new(case, sign(n + 1));
            f.push(0, 1, "1⧢(3⧢δ[n,5])4", one_three_four(n)?);
        }
        CaseId::G => {
            f = CaseFormula::new(case, sign(n + 1));
            f.push(0, 1, "1⧢(3⧢δ[n,5])4", one_three_four(n)?);
            f.push(
                1,
                1,
                "431⧢δ[n,5]",
                sh(&[word_element(&[4, 3, 1])?, delta(n, 5)?])?,
            );
        }
        CaseId::H | CaseId::I | CaseId::J | CaseId::K => {
            f = CaseFormula::new(case, sign(n + j + 1));
            f.push(0, 1, "1⧢(j-1)η[2,j-2]⧢δ[n,j+1]", one_hook_low(n, j)?);
            f.push(1, -1, "δ[j-1,j-2]η[1,j-3]⧢δ[n,j+1]", descent_low(n, j)?);
            match case {
                CaseId::H => {
                    f.push(2, 1, "1⧢(j+1)η[2,j-1]⧢δ[n,j+2]", one_hook_high(n, j)?);
                    f.push(3, 1, "δ[j+2,j+1]η[1,j-1]⧢δ[n,j+3]", descent_high(n, j)?);
                }
                CaseId::I => {
                    f.push(2, 1, "1⧢(j+1)η[2,j-1]⧢δ[n,j+2]", one_hook_high(n, j)?);
                }
                CaseId::K => {
                    let set = sh(&[
                        cat(&[letter(j + 1)?, letter(j - 1)?, eta(1, j - 2)?])?,
                        delta(n, j + 2)?,
                    ])?;
                    f.push(2, -1, "(j+1)(j-1)η[1,j-2]⧢δ[n,j+2]", set);
                }
                _ => {}
            }
        }
        CaseId::L | CaseId::M => {
            f = CaseFormula::new(case, sign(n + j));
            let low = cat(&[
                letter(j - 1)?,
                letter(b)?,
                eta(1, b - 1)?,
                eta(b + 1, j - 2)?,
            ])?;
            f.push(
                0,
                1,
                "(j-1)bη[1,b-1]η[b+1,j-2]⧢δ[n,j+1]",
                sh(&[low, delta(n, j + 1)?])?,
            );
            if case == CaseId::L {
                let high = cat(&[
                    letter(j + 1)?,
                    letter(b)?,
                    eta(1, b - 1)?,
                    eta(b + 1, j - 1)?,
                ])?;
                f.push(
                    1,
                    1,
                    "(j+1)bη[1,b-1]η[b+1,j-1]⧢δ[n,j+2]",
                    sh(&[high, delta(n, j + 2)?])?,
                );
            }
        }
        CaseId::N => {
            f = CaseFormula::new(case, 1);
        }
        _ => unreachable!("classify only yields pair cases"),
    }
    // `a` only matters through classification.
    let _ = a;
    Ok(f)
}

/// `S(σ_A)_j^*` from its closed formula.
pub fn closed_component(spec: SigmaSpec, j: usize) -> Result<Element> {
    case_formula(spec, j)?.evaluate()
}

/// `Σ_j S(σ_A)_j^* j`.
pub fn closed_antipode(spec: SigmaSpec) -> Result<Element> {
    closed_antipode_mutated(spec, None)
}

/// As [`closed_antipode`], with an optional injected sign error.
pub fn closed_antipode_mutated(spec: SigmaSpec, mutation: Option<&Mutation>) -> Result<Element> {
    let mut out = Element::zero();
    for j in 1..=spec.n {
        let mut f = case_formula(spec, j)?;
        if let Some(m) = mutation {
            f.mutate(m);
        }
        out.add_assign(&f.evaluate()?.concat(&letter(j as i64)?)?)?;
    }
    Ok(out)
}

/// Every single-sign mutation of the pair-case formulas: the outer factor of
/// each case and each displayed summand.
pub fn all_sign_mutations() -> Vec<Mutation> {
    let groups = |c: CaseId| match c {
        CaseId::A | CaseId::B | CaseId::D | CaseId::F | CaseId::M => 1,
        CaseId::C | CaseId::E | CaseId::G | CaseId::J | CaseId::L => 2,
        CaseId::I | CaseId::K => 3,
        CaseId::H => 4,
        _ => 0,
    };
    let mut out = Vec::new();
    for case in CaseId::PAIR_CASES {
        if case == CaseId::N {
            continue;
        }
        out.push(Mutation {
            case,
            target: MutationTarget::Outer,
        });
        for g in 0..groups(case) {
            out.push(Mutation {
                case,
                target: MutationTarget::Group(g),
            });
        }
    }
    out
}

/// Formula for `S(σ_{{n−1,n}})_j^*`, `n ≥ 4`.
pub fn top_pair_formula(n: usize, j: usize) -> Result<CaseFormula> {
    if n < 4 {
        return Err(Error::OutOfRange(format!(
            "top pair formulas need n >= 4, got {n}"
        )));
    }
    if j < 1 || j > n {
        return Err(Error::OutOfRange(format!("j={j} must lie in 1..={n}")));
    }
    let (n, j) = (n as i64, j as i64);
    let mut f;
    if j == 1 {
        f = CaseFormula::new(CaseId::TopA, 1);
        f.push(0, 1, "nη[2,n-1]", cat(&[letter(n)?, eta(2, n - 1)?])?);
        for k in 4..n {
            f.push(
                1,
                sign(n + k),
                format!("{k}η[2,{}]⧢δ[n,{}]", k - 1, k + 1),
                hook_tail(n, k)?,
            );
        }
    } else if j == 2 {
        f = CaseFormula::new(CaseId::TopB, sign(n + 1));
        f.push(0, 1, "1⧢(3⧢δ[n,5])4", one_three_four(n)?);
        f.push(
            1,
            1,
            "431⧢δ[n,5]",
            sh(&[word_element(&[4, 3, 1])?, delta(n, 5)?])?,
        );
    } else if j == n {
        f = CaseFormula::new(CaseId::TopE, 1);
        f.push(
            0,
            1,
            "δ[n-1,n-2]η[1,n-3]",
            cat(&[delta(n - 1, n - 2)?, eta(1, n - 3)?])?,
        );
        f.push(
            1,
            -1,
            "1⧢(n-1)η[2,n-2]",
            sh(&[letter(1)?, cat(&[letter(n - 1)?, eta(2, n - 2)?])?])?,
        );
    } else if j == n - 1 {
        f = CaseFormula::new(CaseId::TopD, 1);
        f.push(
            0,
            1,
            "1⧢nη[2,n-2]",
            sh(&[letter(1)?, cat(&[letter(n)?, eta(2, n - 2)?])?])?,
        );
        f.push(
            1,
            1,
            "1⧢(n-2)η[2,n-3]⧢n",
            sh(&[
                letter(1)?,
                cat(&[letter(n - 2)?, eta(2, n - 3)?])?,
                letter(n)?,
            ])?,
        );
        f.push(
            2,
            -1,
            "δ[n-2,n-3]η[1,n-4]⧢n",
            sh(&[cat(&[delta(n - 2, n - 3)?, eta(1, n - 4)?])?, letter(n)?])?,
        );
    } else {
        f = CaseFormula::new(CaseId::TopC, sign(n + j + 1));
        f.push(0, 1, "1⧢(j-1)η[2,j-2]⧢δ[n,j+1]", one_hook_low(n, j)?);
        f.push(1, -1, "δ[j-1,j-2]η[1,j-3]⧢δ[n,j+1]", descent_low(n, j)?);
        f.push(2, 1, "1⧢(j+1)η[2,j-1]⧢δ[n,j+2]", one_hook_high(n, j)?);
        f.push(3, 1, "δ[j+2,j+1]η[1,j-1]⧢δ[n,j+3]", descent_high(n, j)?);
    }
    Ok(f)
}

pub fn top_pair_component(n: usize, j: usize) -> Result<Element> {
    top_pair_formula(n, j)?.evaluate()
}

/// Cancellation-free rewrite of case (h) for `j ∈ {3, 4}` with `j ≤ b − 1`.
pub fn h_prime_formula(spec: SigmaSpec, j: usize) -> Result<CaseFormula> {
    if !(j == 3 || j == 4) || j + 1 > spec.b {
        return Err(Error::OutOfRange(format!(
            "h' needs j in {{3,4}} and j <= b-1, got j={j}, b={}",
            spec.b
        )));
    }
    let n = spec.n as i64;
    let mut f;
    if j == 3 {
        f = CaseFormula::new(CaseId::HPrime, sign(n));
        f.push(
            0,
            1,
            "12⧢δ[n,4]",
            sh(&[word_element(&[1, 2])?, delta(n, 4)?])?,
        );
        f.push(
            1,
            1,
            "1⧢42⧢δ[n,5]",
            sh(&[letter(1)?, word_element(&[4, 2])?, delta(n, 5)?])?,
        );
        f.push(
            2,
            1,
            "5412⧢δ[n,6]",
            sh(&[word_element(&[5, 4, 1, 2])?, delta(n, 6)?])?,
        );
    } else {
        f = CaseFormula::new(CaseId::HPrime, sign(n + 1));
        f.push(
            0,
            1,
            "132⧢δ[n,5]",
            sh(&[word_element(&[1, 3, 2])?, delta(n, 5)?])?,
        );
        f.push(
            0,
            1,
            "312⧢δ[n,5]",
            sh(&[word_element(&[3, 1, 2])?, delta(n, 5)?])?,
        );
        f.push(
            1,
            1,
            "1⧢523⧢δ[n,6]",
            sh(&[letter(1)?, word_element(&[5, 2, 3])?, delta(n, 6)?])?,
        );
        f.push(
            2,
            1,
            "65123⧢δ[n,7]",
            sh(&[word_element(&[6, 5, 1, 2, 3])?, delta(n, 7)?])?,
        );
    }
    Ok(f)
}

/// Expanded sum formula for `S(σ_{{a}})` (equivalently `b = 1`), `1 < a ≤ n`.
pub fn single_marked_sum(n: usize, a: usize) -> Result<Element> {
    if !(1 < a && a <= n) {
        return Err(Error::OutOfRange(format!(
            "need 1 < a <= n, got a={a}, n={n}"
        )));
    }
    let (n, a) = (n as i64, a as i64);
    let mut out =
        cat(&[sh(&[letter(2)?, delta(n, 4)?])?, word_element(&[3, 1])?])?.scale(sign(n - 1))?;
    let last = cat(&[
        sh(&[cat(&[letter(a - 1)?, eta(1, a - 2)?])?, delta(n, a + 1)?])?,
        letter(a)?,
    ])?;
    out.add_assign(&last.scale(sign(n + a))?)?;
    for j in 2..a {
        let low = cat(&[
            sh(&[cat(&[letter(j - 1)?, eta(1, j - 2)?])?, delta(n, j + 1)?])?,
            letter(j)?,
        ])?;
        let high = cat(&[
            sh(&[cat(&[letter(j + 1)?, eta(1, j - 1)?])?, delta(n, j + 2)?])?,
            letter(j)?,
        ])?;
        out.add_assign(&low.add(&high)?.scale(sign(n + j))?)?;
    }
    Ok(out)
}

/// Expanded sum formula for `S(σ_{{a,2}})`, `2 < a ≤ n`.
pub fn two_marked_sum(n: usize, a: usize) -> Result<Element> {
    if !(2 < a && a <= n) {
        return Err(Error::OutOfRange(format!(
            "need 2 < a <= n, got a={a}, n={n}"
        )));
    }
    let (n, a) = (n as i64, a as i64);
    let first = cat(&[
        sh(&[word_element(&[3, 2])?, delta(n, 5)?])?,
        word_element(&[4, 1])?,
    ])?
    .add(&cat(&[
        sh(&[word_element(&[1, 2])?, delta(n, 4)?])?,
        letter(3)?,
    ])?)?;
    let mut out = first.scale(sign(n))?;
    out.add_assign(&cat(&[one_three_four(n)?, letter(2)?])?.scale(sign(n - 1))?)?;
    for j in 3..a {
        let up = cat(&[
            sh(&[
                cat(&[letter(j + 1)?, word_element(&[2, 1])?, eta(3, j - 1)?])?,
                delta(n, j + 2)?,
            ])?,
            letter(j)?,
        ])?;
        let down = cat(&[
            sh(&[
                cat(&[letter(j)?, word_element(&[2, 1])?, eta(3, j - 1)?])?,
                delta(n, j + 2)?,
            ])?,
            letter(j + 1)?,
        ])?;
        out.add_assign(&up.sub(&down)?.scale(sign(n + j))?)?;
    }
    Ok(out)
}

/// The alternating shuffle identities used to telescope the recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ShuffleIdentity {
    /// `Σ_{i=k}^{n−1} (−1)^i δ_{i,k+1} ⧢ η_{i+1,n} = (−1)^{n+1} δ_{n,k+1}`,
    /// parameters `(k, n)` with `0 ≤ k ≤ n−1`.
    DeltaEta,
    /// `(−1)^k δ_{k,j}η_{k+1,n} + Σ_{i=k+1}^{n−1} (−1)^i (δ_{k,j} ⧢ δ_{i,k+2})(k+1) ⧢ η_{i+1,n}
    ///  = (−1)^{n+1} (δ_{k,j} ⧢ δ_{n,k+2})(k+1)`, parameters `(j, k, n)` with
    /// `1 ≤ j ≤ k ≤ n−1`.
    BracketedDelta,
    /// `(−1)^k (k+1)η_{2,k}η_{k+2,n} + Σ_{i=k+1}^{n−1} (−1)^i [(k+1)η_{2,k−1} ⧢ δ_{i,k+2}]k ⧢ η_{i+1,n}
    ///  = (−1)^{n+1} [(k+1)η_{2,k−1} ⧢ δ_{n,k+2}]k`, parameters `(k, n)` with
    /// `2 ≤ k ≤ n−1`.
    HookEta,
}

impl ShuffleIdentity {
    pub const ALL: [ShuffleIdentity; 3] = [
        ShuffleIdentity::DeltaEta,
        ShuffleIdentity::BracketedDelta,
        ShuffleIdentity::HookEta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ShuffleIdentity::DeltaEta => "delta-eta",
            ShuffleIdentity::BracketedDelta => "bracketed-delta",
            ShuffleIdentity::HookEta => "hook-eta",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            ShuffleIdentity::BracketedDelta => 3,
            _ => 2,
        }
    }

    /// Every admissible parameter tuple with `n ≤ max_n`.
    pub fn parameters(self, max_n: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for n in 1..=max_n {
            match self {
                ShuffleIdentity::DeltaEta => out.extend((0..n).map(|k| vec![k, n])),
                ShuffleIdentity::BracketedDelta => {
                    for k in 1..n {
                        out.extend((1..=k).map(|j| vec![j, k, n]));
                    }
                }
                ShuffleIdentity::HookEta => out.extend((2..n).map(|k| vec![k, n])),
            }
        }
        out
    }
}

impl std::str::FromStr for ShuffleIdentity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ShuffleIdentity::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity `{s}`")))
    }
}

/// Both sides of an identity, fully expanded.
pub fn identity_sides(kind: ShuffleIdentity, params: &[i64]) -> Result<(Element, Element)> {
    if params.len() != kind.arity() {
        return Err(Error::OutOfRange(format!(
            "{} takes {} parameters",
            kind.name(),
            kind.arity()
        )));
    }
    let bad = || {
        Error::OutOfRange(format!(
            "{} parameters {params:?} out of range",
            kind.name()
        ))
    };
    match kind {
        ShuffleIdentity::DeltaEta => {
            let (k, n) = (params[0], params[1]);
            if !(0 <= k && k < n) {
                return Err(bad());
            }
            let mut lhs = Element::zero();
            for i in k..n {
                lhs.add_assign(&sh(&[delta(i, k + 1)?, eta(i + 1, n)?])?.scale(sign(i))?)?;
            }
            let rhs = delta(n, k + 1)?.scale(sign(n + 1))?;
            Ok((lhs, rhs))
        }
        ShuffleIdentity::BracketedDelta => {
            let (j, k, n) = (params[0], params[1], params[2]);
            if !(1 <= j && j <= k && k < n) {
                return Err(bad());
            }
            let mut lhs = cat(&[delta(k, j)?, eta(k + 1, n)?])?.scale(sign(k))?;
            for i in k + 1..n {
                let inner = cat(&[sh(&[delta(k, j)?, delta(i, k + 2)?])?, letter(k + 1)?])?;
                lhs.add_assign(&sh(&[inner, eta(i + 1, n)?])?.scale(sign(i))?)?;
            }
            let rhs = cat(&[sh(&[delta(k, j)?, delta(n, k + 2)?])?, letter(k + 1)?])?
                .scale(sign(n + 1))?;
            Ok((lhs, rhs))
        }
        ShuffleIdentity::HookEta => {
            let (k, n) = (params[0], params[1]);
            if !(2 <= k && k < n) {
                return Err(bad());
            }
            let mut lhs = cat(&[letter(k + 1)?, eta(2, k)?, eta(k + 2, n)?])?.scale(sign(k))?;
            for i in k + 1..n {
                let inner = cat(&[
                    sh(&[cat(&[letter(k + 1)?, eta(2, k - 1)?])?, delta(i, k + 2)?])?,
                    letter(k)?,
                ])?;
                lhs.add_assign(&sh(&[inner, eta(i + 1, n)?])?.scale(sign(i))?)?;
            }
            let rhs = cat(&[
                sh(&[cat(&[letter(k + 1)?, eta(2, k - 1)?])?, delta(n, k + 2)?])?,
                letter(k)?,
            ])?
            .scale(sign(n + 1))?;
            Ok((lhs, rhs))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::antipode;

    fn el(s: &str) -> Element {
        s.parse().unwrap()
    }

    fn spec(n: usize, a: usize, b: usize) -> SigmaSpec {
        SigmaSpec::new(n, a, b).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(spec(4, 4, 3), 4).unwrap(), CaseId::J);
        assert_eq!(classify(spec(5, 5, 1), 3).unwrap(), CaseId::L);
        assert_eq!(classify(spec(6, 3, 2), 5).unwrap(), CaseId::N);
        assert!(classify(spec(4, 4, 3), 0).is_err());
        assert!(classify(spec(4, 4, 3), 5).is_err());
        assert!(SigmaSpec::new(4, 3, 3).is_err());
        assert!(SigmaSpec::new(4, 5, 1).is_err());
    }

    /// The reference table for `b, j ≤ 5`, as `(b, j, [(a_lo, a_hi, case)])`
    /// where `a_hi = None` means unbounded.
    #[test]
    fn classify_matches_reference_table() {
        use CaseId::*;
        type Row = (usize, usize, &'static [(usize, Option<usize>, CaseId)]);
        let table: &[Row] = &[
            (1, 1, &[(2, None, A)]),
            (1, 2, &[(2, Some(2), D), (3, None, E)]),
            (1, 3, &[(2, Some(2), N), (3, Some(3), M), (4, None, L)]),
            (1, 4, &[(2, Some(3), N), (4, Some(4), M), (5, None, L)]),
            (1, 5, &[(2, Some(4), N), (5, Some(5), M), (6, None, L)]),
            (2, 1, &[(3, None, B)]),
            (2, 2, &[(3, None, F)]),
            (2, 3, &[(3, Some(3), J), (4, None, K)]),
            (2, 4, &[(3, Some(3), N), (4, Some(4), M), (5, None, L)]),
            (2, 5, &[(3, Some(4), N), (5, Some(5), M), (6, None, L)]),
            (3, 1, &[(4, None, C)]),
            (3, 2, &[(4, None, G)]),
            (3, 3, &[(4, None, I)]),
            (3, 4, &[(4, Some(4), J), (5, None, K)]),
            (3, 5, &[(4, Some(4), N), (5, Some(5), M), (6, None, L)]),
            (4, 1, &[(5, None, C)]),
            (4, 2, &[(5, None, G)]),
            (4, 3, &[(5, None, H)]),
            (4, 4, &[(5, None, I)]),
            (4, 5, &[(5, Some(5), J), (6, None, K)]),
            (5, 1, &[(6, None, C)]),
            (5, 2, &[(6, None, G)]),
            (5, 3, &[(6, None, H)]),
            (5, 4, &[(6, None, H)]),
            (5, 5, &[(6, None, I)]),
        ];
        let mut checked = 0;
        for &(b, j, ranges) in table {
            for n in 2..=10 {
                for a in b + 1..=n {
                    if j > n {
                        continue;
                    }
                    let expect = ranges
                        .iter()
                        .find(|(lo, hi, _)| a >= *lo && hi.is_none_or(|h| a <= h))
                        .map(|r| r.2)
                        .unwrap();
                    assert_eq!(
                        classify(spec(n, a, b), j).unwrap(),
                        expect,
                        "n={n} a={a} b={b} j={j}"
                    );
                    checked += 1;
                }
            }
        }
        assert!(checked > 500);
    }

    #[test]
    fn component_examples() {
        assert_eq!(closed_component(spec(3, 2, 1), 1).unwrap(), el("+23"));
        assert_eq!(closed_component(spec(4, 2, 1), 1).unwrap(), el("-243 -423"));
        // (1⧢2−21)⧢4 + 1⧢42
        let expect = el("+12")
            .shuffle(&el("+4"))
            .unwrap()
            .add(&el("+1").shuffle(&el("+42")).unwrap())
            .unwrap();
        assert_eq!(closed_component(spec(4, 4, 3), 3).unwrap(), expect);
        assert!(closed_component(spec(6, 3, 2), 5).unwrap().is_zero());
    }

    #[test]
    fn closed_antipode_examples() {
        assert_eq!(closed_antipode(spec(2, 2, 1)).unwrap(), el("+12"));
        assert_eq!(
            closed_antipode(spec(4, 4, 3)).unwrap(),
            antipode(&"4312".parse().unwrap()).unwrap()
        );
        assert_eq!(
            closed_antipode(spec(5, 4, 2)).unwrap(),
            antipode(&spec(5, 4, 2).permutation()).unwrap()
        );
    }

    #[test]
    fn top_pair_examples() {
        assert_eq!(top_pair_component(4, 4).unwrap(), el("-132 -312"));
        assert_eq!(top_pair_component(4, 1).unwrap(), el("+423"));
        assert_eq!(
            top_pair_component(5, 3).unwrap(),
            closed_component(spec(5, 5, 4), 3).unwrap()
        );
        assert!(top_pair_component(3, 1).is_err());
        assert!(top_pair_component(4, 5).is_err());
    }

    #[test]
    fn sum_formula_examples() {
        assert_eq!(
            single_marked_sum(3, 2).unwrap(),
            antipode(&"213".parse().unwrap()).unwrap()
        );
        assert_eq!(
            single_marked_sum(4, 4).unwrap(),
            antipode(&"4123".parse().unwrap()).unwrap()
        );
        assert_eq!(
            two_marked_sum(4, 3).unwrap(),
            antipode(&"3214".parse().unwrap()).unwrap()
        );
        assert_eq!(two_marked_sum(3, 3).unwrap(), el("-123"));
        assert!(single_marked_sum(3, 1).is_err());
        assert!(two_marked_sum(4, 2).is_err());
    }

    #[test]
    fn identity_examples() {
        let (l, r) = identity_sides(ShuffleIdentity::DeltaEta, &[2, 4]).unwrap();
        assert_eq!(l, el("-43"));
        assert_eq!(r, el("-43"));
        let (l, r) = identity_sides(ShuffleIdentity::BracketedDelta, &[3, 3, 4]).unwrap();
        assert_eq!(l, el("-34"));
        assert_eq!(r, el("-34"));
        let (l, r) = identity_sides(ShuffleIdentity::DeltaEta, &[0, 1]).unwrap();
        assert_eq!((l, r), (el("+1"), el("+1")));
        // the empty sum at k = n would not match (−1)^{n+1}∅
        assert!(identity_sides(ShuffleIdentity::DeltaEta, &[4, 4]).is_err());
        assert!(identity_sides(ShuffleIdentity::HookEta, &[1, 4]).is_err());
        assert!(identity_sides(ShuffleIdentity::HookEta, &[2]).is_err());
    }

    #[test]
    fn detect_sigma_shapes() {
        assert_eq!(
            SigmaSpec::detect(&"4312".parse().unwrap()),
            Some(spec(4, 4, 3))
        );
        assert_eq!(
            SigmaSpec::detect(&"21".parse().unwrap()),
            Some(spec(2, 2, 1))
        );
        assert_eq!(SigmaSpec::detect(&"4321".parse().unwrap()), None);
        assert_eq!(SigmaSpec::detect(&"1234".parse().unwrap()), None);
        assert_eq!(SigmaSpec::detect(&"e".parse().unwrap()), None);
    }

    #[test]
    fn mutation_flips_only_target_case() {
        let s = spec(4, 4, 3);
        let m = Mutation {
            case: CaseId::G,
            target: MutationTarget::Group(1),
        };
        let clean = closed_antipode(s).unwrap();
        let hit = closed_antipode_mutated(s, Some(&m)).unwrap();
        assert_ne!(clean, hit);
        let miss = Mutation {
            case: CaseId::H,
            target: MutationTarget::Outer,
        };
        assert_eq!(closed_antipode_mutated(s, Some(&miss)).unwrap(), clean);
    }
}

//! Exhaustive verification campaigns.
//!
//! Every campaign enumerates its instances, checks each independently (in
//! parallel), and compares the number of checks against a count predicted in
//! closed form. Failures are data: a campaign only returns `Err` when its
//! parameters are out of range.

use std::fmt::{self, Write as _};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Element;
use crate::closedform::{
    case_formula, closed_antipode_mutated, closed_component, h_prime_formula, identity_sides,
    single_marked_sum, top_pair_component, two_marked_sum, CaseFormula, CaseId, Mutation,
    ShuffleIdentity, SigmaSpec,
};
use crate::error::{Error, Result};
use crate::hopf::{check_antipode_axiom_with, check_coassociativity, AntipodeCache};
use crate::notation::parse_expression;
use crate::words::{delta, eta, Letter, Permutation};

/// Differing basis terms listed per failure.
pub const DIFF_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// Which check failed, e.g. `equivalence` or `overlap`.
    pub kind: String,
    pub instance: String,
    pub expected: String,
    pub actual: String,
    /// First [`DIFF_LIMIT`] differing terms as `word: expected vs actual`.
    pub diff: Vec<String>,
}

impl Failure {
    pub fn new(
        kind: &str,
        instance: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
    ) -> Self {
        Failure {
            kind: kind.to_string(),
            instance: instance.into(),
            expected: expected.into(),
            actual: actual.into(),
            diff: Vec::new(),
        }
    }

    fn mismatch(
        kind: &str,
        instance: impl Into<String>,
        expected: &Element,
        actual: &Element,
    ) -> Self {
        Failure {
            diff: expected.diff_summary(actual, DIFF_LIMIT),
            ..Failure::new(kind, instance, head(expected), head(actual))
        }
    }
}

/// At most [`DIFF_LIMIT`] terms of `e`, with a count when truncated.
fn head(e: &Element) -> String {
    let terms = e.sorted_terms();
    if terms.len() <= DIFF_LIMIT {
        return e.to_string();
    }
    let shown: Element =
        Element::from_terms(terms[..DIFF_LIMIT].iter().map(|(w, c)| ((*w).clone(), *c)))
            .expect("subset of a valid element");
    format!("{shown} … ({} terms)", terms.len())
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub campaign: String,
    pub range: String,
    pub checked: usize,
    pub predicted: usize,
    pub failures: Vec<Failure>,
    /// Seconds; `None` in deterministic renderings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures_of(&self, kind: &str) -> impl Iterator<Item = &Failure> + '_ {
        let kind = kind.to_string();
        self.failures.iter().filter(move |f| f.kind == kind)
    }

    pub fn without_timing(mut self) -> Self {
        self.wall_time = None;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "campaign: {}", self.campaign)?;
        writeln!(f, "range: {}", self.range)?;
        writeln!(
            f,
            "checked: {} (predicted {})",
            self.checked, self.predicted
        )?;
        writeln!(f, "failures: {}", self.failures.len())?;
        for fail in &self.failures {
            writeln!(f, "  [{}] {}", fail.kind, fail.instance)?;
            writeln!(f, "    expected: {}", fail.expected)?;
            writeln!(f, "    actual:   {}", fail.actual)?;
            for d in &fail.diff {
                writeln!(f, "      {d}")?;
            }
        }
        if let Some(t) = self.wall_time {
            writeln!(f, "wall_time: {t:.3}s")?;
        }
        write!(f, "status: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Runs `check` over `items` in parallel, one count per item.
fn run<T, F>(
    campaign: &str,
    range: String,
    predicted: usize,
    items: Vec<T>,
    check: F,
) -> VerificationReport
where
    T: Sync + fmt::Display,
    F: Fn(&T) -> Result<Vec<Failure>> + Sync,
{
    let start = Instant::now();
    let results: Vec<Vec<Failure>> = items
        .par_iter()
        .map(|item| {
            check(item).unwrap_or_else(|e| {
                vec![Failure::new(
                    "error",
                    item.to_string(),
                    "a value",
                    e.to_string(),
                )]
            })
        })
        .collect();
    let mut failures: Vec<Failure> = results.into_iter().flatten().collect();
    if items.len() != predicted {
        failures.push(Failure::new(
            "count",
            "instance count",
            predicted.to_string(),
            items.len().to_string(),
        ));
    }
    VerificationReport {
        campaign: campaign.to_string(),
        range,
        checked: items.len(),
        predicted,
        failures,
        wall_time: Some(start.elapsed().as_secs_f64()),
    }
}

fn check_eq(
    kind: &str,
    instance: impl fmt::Display,
    expected: &Element,
    actual: &Element,
) -> Vec<Failure> {
    if expected == actual {
        Vec::new()
    } else {
        vec![Failure::mismatch(
            kind,
            instance.to_string(),
            expected,
            actual,
        )]
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn binomial2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Closed form against the recursive oracle for every σ_{{a,b},n}.
pub fn sweep_oracle_equivalence(max_n: usize) -> Result<VerificationReport> {
    sweep_oracle_equivalence_with(max_n, None)
}

/// As [`sweep_oracle_equivalence`] with an injected sign error in one case.
pub fn sweep_oracle_equivalence_with(
    max_n: usize,
    mutation: Option<Mutation>,
) -> Result<VerificationReport> {
    if !(2..=12).contains(&max_n) {
        return Err(Error::OutOfRange(format!(
            "equivalence needs 2 <= max_n <= 12, got {max_n}"
        )));
    }
    let cache = AntipodeCache::new();
    let specs: Vec<SigmaSpec> = SigmaSpec::range(2, max_n).collect();
    Ok(run(
        "equivalence",
        format!("2 <= n <= {max_n}"),
        SigmaSpec::count(max_n),
        specs,
        |s| {
            let oracle = cache.antipode(&s.permutation())?;
            let closed = closed_antipode_mutated(*s, mutation.as_ref())?;
            Ok(check_eq("equivalence", s, &oracle, &closed))
        },
    ))
}

/// `(n, a, b, [cell for j = 1..=4])`, transcribed unexpanded.
pub const TABLE2: [(usize, usize, usize, [&str; 4]); 10] = [
    (2, 2, 1, ["0", "1", "0", "0"]),
    (3, 2, 1, ["23", "−(1⧢3)", "0", "0"]),
    (3, 3, 1, ["23", "−(1⧢3+31)", "21", "0"]),
    (3, 3, 2, ["0", "0", "−12", "0"]),
    (4, 2, 1, ["−(2⧢4)3", "1⧢43", "0", "0"]),
    (4, 3, 1, ["−(2⧢4)3", "1⧢43+31⧢4", "−(21⧢4)", "0"]),
    (4, 4, 1, ["−(2⧢4)3", "1⧢43+31⧢4", "−(21⧢4+412)", "312"]),
    (4, 3, 2, ["324", "−(1⧢34)", "(1⧢2−21)⧢4", "0"]),
    (4, 4, 2, ["324", "−(1⧢34)", "(1⧢2−21)⧢4−421", "321"]),
    (
        4,
        4,
        3,
        ["423", "−(1⧢34+431)", "(1⧢2−21)⧢4+1⧢42", "−(1⧢32−321)"],
    ),
];

struct Cell {
    spec: SigmaSpec,
    j: usize,
    text: &'static str,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} j={}", self.spec, self.j)
    }
}

/// Every cell of the small-degree component table against the closed form.
/// Cells with `j > n` are compared against the recursive component instead.
pub fn check_table2() -> Result<VerificationReport> {
    let mut cells = Vec::new();
    for (n, a, b, row) in TABLE2 {
        for (i, text) in row.into_iter().enumerate() {
            cells.push(Cell {
                spec: SigmaSpec::new(n, a, b)?,
                j: i + 1,
                text,
            });
        }
    }
    let cache = AntipodeCache::new();
    Ok(run(
        "table2",
        "n in {2,3,4}, j in 1..=4".into(),
        40,
        cells,
        |c| {
            let expected = parse_expression(c.text)?;
            let actual = if c.j <= c.spec.n() {
                closed_component(c.spec, c.j)?
            } else {
                cache
                    .antipode(&c.spec.permutation())?
                    .component_stripped(c.j as Letter)
            };
            Ok(check_eq("table2", c, &expected, &actual))
        },
    ))
}

struct Perm(Permutation);

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Convolution identities and coassociativity for every permutation of
/// degree `1..=max_n`.
pub fn sweep_axioms(max_n: usize) -> Result<VerificationReport> {
    if !(1..=6).contains(&max_n) {
        return Err(Error::OutOfRange(format!(
            "axioms need 1 <= max_n <= 6, got {max_n}"
        )));
    }
    let perms: Vec<Perm> = (1..=max_n).flat_map(Permutation::all).map(Perm).collect();
    let predicted = (1..=max_n).map(factorial).sum();
    let cache = AntipodeCache::new();
    Ok(run(
        "axioms",
        format!("1 <= n <= {max_n}"),
        predicted,
        perms,
        |p| {
            let mut out = Vec::new();
            if !check_antipode_axiom_with(&cache, &p.0)? {
                out.push(Failure::new(
                    "convolution",
                    p.to_string(),
                    "ε(σ)·∅ on both sides",
                    "mismatch",
                ));
            }
            if !check_coassociativity(&p.0) {
                out.push(Failure::new(
                    "coassociativity",
                    p.to_string(),
                    "(Δ⊗id)Δ = (id⊗Δ)Δ",
                    "mismatch",
                ));
            }
            Ok(out)
        },
    ))
}

enum LemmaCheck {
    Increasing(usize),
    Decreasing(usize),
    Identity(ShuffleIdentity, Vec<i64>),
    ZeroTail {
        perm: Permutation,
        i: usize,
        j: usize,
    },
    TopPair {
        n: usize,
        j: usize,
    },
    Rewrite {
        spec: SigmaSpec,
        j: usize,
    },
}

impl fmt::Display for LemmaCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaCheck::Increasing(n) => write!(f, "S(η[1,{n}])"),
            LemmaCheck::Decreasing(n) => write!(f, "S(δ[{n},1])"),
            LemmaCheck::Identity(k, p) => write!(f, "{} {p:?}", k.name()),
            LemmaCheck::ZeroTail { perm, i, j } => write!(f, "zero tail σ={perm} i={i} j={j}"),
            LemmaCheck::TopPair { n, j } => write!(f, "top pair n={n} j={j}"),
            LemmaCheck::Rewrite { spec, j } => write!(f, "h' {spec} j={j}"),
        }
    }
}

/// Monotone antipodes (n ≤ 8), the alternating identities (n ≤ max_n),
/// zero tail components (n ≤ 7), the top-pair formulas (4 ≤ n ≤ 8) and the
/// (h′) rewrites (n ≤ 8), each capped by `max_n`.
pub fn sweep_lemmas(max_n: usize) -> Result<VerificationReport> {
    if !(1..=9).contains(&max_n) {
        return Err(Error::OutOfRange(format!(
            "lemmas need 1 <= max_n <= 9, got {max_n}"
        )));
    }
    let mono = max_n.min(8);
    let zero = max_n.min(7);
    let mut checks = Vec::new();
    let mut predicted = 0;
    for n in 1..=mono {
        checks.push(LemmaCheck::Increasing(n));
        checks.push(LemmaCheck::Decreasing(n));
    }
    predicted += 2 * mono;
    for kind in ShuffleIdentity::ALL {
        for p in kind.parameters(max_n as i64) {
            checks.push(LemmaCheck::Identity(kind, p));
        }
    }
    predicted += (1..=max_n)
        .map(|n| n + binomial2(n) + n.saturating_sub(2))
        .sum::<usize>();
    for n in 2..=zero {
        for i in 2..=n {
            for head in Permutation::all(i - 1) {
                let letters: Vec<Letter> = head
                    .letters()
                    .iter()
                    .copied()
                    .chain(i as Letter..=n as Letter)
                    .collect();
                let perm = Permutation::new(&letters)?;
                for j in i..=n {
                    checks.push(LemmaCheck::ZeroTail {
                        perm: perm.clone(),
                        i,
                        j,
                    });
                }
            }
            predicted += factorial(i - 1) * (n - i + 1);
        }
    }
    for n in 4..=mono {
        for j in 1..=n {
            checks.push(LemmaCheck::TopPair { n, j });
        }
        predicted += n;
    }
    for spec in SigmaSpec::range(2, mono) {
        for j in [3, 4] {
            if j < spec.b() {
                checks.push(LemmaCheck::Rewrite { spec, j });
            }
        }
    }
    predicted += (2..=mono)
        .map(|n| binomial2(n.saturating_sub(3)) + binomial2(n.saturating_sub(4)))
        .sum::<usize>();

    let cache = AntipodeCache::new();
    Ok(run(
        "lemmas",
        format!("n <= {max_n}"),
        predicted,
        checks,
        |c| {
            let name = c.to_string();
            Ok(match c {
                LemmaCheck::Increasing(n) => {
                    let n = *n as i64;
                    let p = Permutation::identity(n as usize)?;
                    let expected = delta(n, 1)?.scale(if n % 2 == 0 { 1 } else { -1 })?;
                    check_eq("monotone", name, &expected, &*cache.antipode(&p)?)
                }
                LemmaCheck::Decreasing(n) => {
                    let n = *n as i64;
                    let letters: Vec<Letter> = (1..=n as Letter).rev().collect();
                    let p = Permutation::new(&letters)?;
                    let expected = eta(1, n)?.scale(if n % 2 == 0 { 1 } else { -1 })?;
                    check_eq("monotone", name, &expected, &*cache.antipode(&p)?)
                }
                LemmaCheck::Identity(kind, p) => {
                    let (lhs, rhs) = identity_sides(*kind, p)?;
                    check_eq("identity", name, &rhs, &lhs)
                }
                LemmaCheck::ZeroTail { perm, j, .. } => {
                    let comp = cache.antipode(perm)?.component_last(*j as Letter);
                    check_eq("zero-tail", name, &Element::zero(), &comp)
                }
                LemmaCheck::TopPair { n, j } => {
                    let spec = SigmaSpec::new(*n, *n, n - 1)?;
                    let top = top_pair_component(*n, *j)?;
                    let mut out =
                        check_eq("top-pair", name.clone(), &closed_component(spec, *j)?, &top);
                    let oracle = cache
                        .antipode(&spec.permutation())?
                        .component_stripped(*j as Letter);
                    out.extend(check_eq("top-pair", name, &oracle, &top));
                    out
                }
                LemmaCheck::Rewrite { spec, j } => {
                    let rewrite = h_prime_formula(*spec, *j)?;
                    let mut out = check_eq(
                        "rewrite",
                        name.clone(),
                        &closed_component(*spec, *j)?,
                        &rewrite.evaluate()?,
                    );
                    if let Some(w) = mixed_sign_words(&rewrite).first() {
                        out.push(Failure::new(
                            "rewrite-coherence",
                            name,
                            "no cancellation",
                            format!("{w} cancels"),
                        ));
                    }
                    out
                }
            })
        },
    ))
}

struct SumCheck {
    b: usize,
    n: usize,
    a: usize,
}

impl fmt::Display for SumCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b={} sum (n={}, a={})", self.b, self.n, self.a)
    }
}

/// The expanded sum formulas for `b ∈ {1, 2}` against the recursive oracle.
pub fn sweep_sum_formulas(max_n: usize) -> Result<VerificationReport> {
    if !(2..=9).contains(&max_n) {
        return Err(Error::OutOfRange(format!(
            "sum formulas need 2 <= max_n <= 9, got {max_n}"
        )));
    }
    let mut checks = Vec::new();
    for n in 2..=max_n {
        checks.extend((2..=n).map(|a| SumCheck { b: 1, n, a }));
        checks.extend((3..=n).map(|a| SumCheck { b: 2, n, a }));
    }
    let predicted = (2..=max_n).map(|n| 2 * n - 3).sum();
    let cache = AntipodeCache::new();
    Ok(run(
        "sums",
        format!("2 <= n <= {max_n}"),
        predicted,
        checks,
        |c| {
            let spec = SigmaSpec::new(c.n, c.a, c.b)?;
            let sum = if c.b == 1 {
                single_marked_sum(c.n, c.a)?
            } else {
                two_marked_sum(c.n, c.a)?
            };
            Ok(check_eq(
                "sum",
                c,
                &*cache.antipode(&spec.permutation())?,
                &sum,
            ))
        },
    ))
}

/// Words that receive contributions of both signs from the formula's sets.
pub fn mixed_sign_words(f: &CaseFormula) -> Vec<String> {
    let mut pos = std::collections::BTreeSet::new();
    let mut neg = std::collections::BTreeSet::new();
    for (s, t) in f.signed_terms() {
        let side = if s > 0 { &mut pos } else { &mut neg };
        side.extend(t.set.support().cloned());
    }
    pos.intersection(&neg).map(|w| w.to_string()).collect()
}

/// `(group_i, group_j, shared words)` for every overlapping pair of sets.
pub fn set_overlaps(f: &CaseFormula) -> Vec<(usize, usize, Vec<String>)> {
    let mut out = Vec::new();
    for (x, s) in f.terms.iter().enumerate() {
        for t in &f.terms[x + 1..] {
            let mut shared: Vec<String> = s
                .set
                .support()
                .filter(|w| t.set.coeff(w) != 0)
                .map(|w| w.to_string())
                .collect();
            if !shared.is_empty() {
                shared.sort();
                out.push((s.group, t.group, shared));
            }
        }
    }
    out
}

/// Components allowed to cancel internally.
pub fn is_documented_exception(case: CaseId, j: usize) -> bool {
    case == CaseId::K || (matches!(case, CaseId::H | CaseId::I | CaseId::J) && (j == 3 || j == 4))
}

enum AuditCheck {
    Coefficients(SigmaSpec),
    Component(SigmaSpec, usize),
}

impl fmt::Display for AuditCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuditCheck::Coefficients(s) => write!(f, "{s}"),
            AuditCheck::Component(s, j) => write!(f, "{s} j={j}"),
        }
    }
}

/// Inspects the closed form for cancellations.
///
/// Failure kinds:
/// - `coefficients`: a final coefficient outside `{−1, +1}`;
/// - `overlap`: two sets of one component share a word (outside the
///   exceptions);
/// - `sign-coherence`: some word gets contributions of both signs (outside
///   the exceptions);
/// - `k-overlap`: in case (k) the first and last sets do not meet in exactly
///   `δ_{n,j+1}(j−1)η_{1,j−2}` with opposite signs.
pub fn audit_cancellation(max_n: usize) -> Result<VerificationReport> {
    if !(2..=10).contains(&max_n) {
        return Err(Error::OutOfRange(format!(
            "cancellation audit needs 2 <= max_n <= 10, got {max_n}"
        )));
    }
    let mut checks = Vec::new();
    for s in SigmaSpec::range(2, max_n) {
        checks.push(AuditCheck::Coefficients(s));
        checks.extend((1..=s.n()).map(|j| AuditCheck::Component(s, j)));
    }
    let predicted = (2..=max_n).map(|n| binomial2(n) * (n + 1)).sum();
    Ok(run(
        "cancellation",
        format!("2 <= n <= {max_n}"),
        predicted,
        checks,
        |c| {
            let name = c.to_string();
            let mut out = Vec::new();
            match c {
                AuditCheck::Coefficients(s) => {
                    let e = closed_antipode_mutated(*s, None)?;
                    let bad: Vec<String> = e
                        .sorted_terms()
                        .into_iter()
                        .filter(|(_, c)| c.abs() != 1)
                        .map(|(w, c)| format!("{w}: {c}"))
                        .collect();
                    if !bad.is_empty() {
                        let mut f = Failure::new(
                            "coefficients",
                            name,
                            "all ±1",
                            format!("{} terms with |c| > 1", bad.len()),
                        );
                        f.diff = bad.into_iter().take(DIFF_LIMIT).collect();
                        out.push(f);
                    }
                }
                AuditCheck::Component(s, j) => {
                    let f = case_formula(*s, *j)?;
                    let label = format!("{name} case {}", f.case);
                    if !is_documented_exception(f.case, *j) {
                        let overlaps = set_overlaps(&f);
                        if !overlaps.is_empty() {
                            let mut fail = Failure::new(
                                "overlap",
                                label.clone(),
                                "disjoint sets",
                                format!("{} overlapping pairs", overlaps.len()),
                            );
                            fail.diff = overlaps
                                .iter()
                                .take(DIFF_LIMIT)
                                .map(|(x, y, w)| {
                                    format!("groups {x},{y}: {} words, e.g. {}", w.len(), w[0])
                                })
                                .collect();
                            out.push(fail);
                        }
                        let mixed = mixed_sign_words(&f);
                        if !mixed.is_empty() {
                            let mut fail = Failure::new(
                                "sign-coherence",
                                label.clone(),
                                "no cancellation",
                                format!("{} words cancel", mixed.len()),
                            );
                            fail.diff = mixed.into_iter().take(DIFF_LIMIT).collect();
                            out.push(fail);
                        }
                    }
                    if f.case == CaseId::K {
                        out.extend(check_k_overlap(*s, *j, &f, &label)?);
                    }
                }
            }
            Ok(out)
        },
    ))
}

/// The sets `1⧢(j−1)η_{2,j−2}⧢δ_{n,j+1}` and `(j+1)(j−1)η_{1,j−2}⧢δ_{n,j+2}`
/// meet in the single word `δ_{n,j+1}(j−1)η_{1,j−2}`, with opposite signs.
fn check_k_overlap(s: SigmaSpec, j: usize, f: &CaseFormula, label: &str) -> Result<Vec<Failure>> {
    let (n, ji) = (s.n() as i64, j as i64);
    let predicted = delta(n, ji + 1)?
        .concat(&crate::words::word_element(&[ji - 1])?)?
        .concat(&eta(1, ji - 2)?)?;
    let first = f.terms.iter().find(|t| t.group == 0);
    let last = f.terms.iter().find(|t| t.group == 2);
    let (Some(first), Some(last)) = (first, last) else {
        return Ok(vec![Failure::new(
            "k-overlap",
            label,
            "two sets",
            "missing",
        )]);
    };
    let mut shared = Element::zero();
    for w in first.set.support().filter(|w| last.set.coeff(w) != 0) {
        shared.add_term(w.letters(), 1)?;
    }
    let mut out = Vec::new();
    if shared != predicted {
        out.push(Failure::mismatch("k-overlap", label, &predicted, &shared));
    }
    if first.sign * last.sign != -1 {
        out.push(Failure::new(
            "k-overlap",
            label,
            "opposite signs",
            "same sign",
        ));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub instances: usize,
    pub recursive_secs: Option<f64>,
    /// Terms produced by the recursion before cancellation.
    pub recursive_terms: Option<u64>,
    pub closed_secs: Option<f64>,
    /// Words in the closed form's shuffle sets before summation.
    pub closed_terms: Option<u64>,
    /// Distinct words in the final antipodes.
    pub final_terms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn without_timing(mut self) -> Self {
        for r in &mut self.rows {
            r.recursive_secs = None;
            r.closed_secs = None;
        }
        self
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
        let secs = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.4}"));
        let mut s = String::new();
        writeln!(
            s,
            "{:>3} {:>5} {:>12} {:>10} {:>12} {:>10} {:>10}",
            "n", "specs", "rec_terms", "rec_s", "closed_terms", "closed_s", "final"
        )?;
        for r in &self.rows {
            writeln!(
                s,
                "{:>3} {:>5} {:>12} {:>10} {:>12} {:>10} {:>10}",
                r.n,
                r.instances,
                opt(r.recursive_terms),
                secs(r.recursive_secs),
                opt(r.closed_terms),
                secs(r.closed_secs),
                r.final_terms
            )?;
        }
        f.write_str(s.trim_end())
    }
}

/// Recursive oracle vs closed form over all σ_{{a,b},n} at each degree.
pub fn benchmark(max_n_recursive: usize, max_n_closed: usize) -> Result<BenchReport> {
    let cap = crate::words::max_degree();
    if max_n_recursive < 2 || max_n_closed < 2 || max_n_recursive > 12 || max_n_closed > cap {
        return Err(Error::OutOfRange(format!(
            "bench needs 2 <= recursive cap <= 12 and 2 <= closed cap <= {cap}, got {max_n_recursive}, {max_n_closed}"
        )));
    }
    let mut rows = Vec::new();
    for n in 2..=max_n_recursive.max(max_n_closed) {
        let specs: Vec<SigmaSpec> = SigmaSpec::range(n, n).collect();
        let mut row = BenchRow {
            n,
            instances: specs.len(),
            recursive_secs: None,
            recursive_terms: None,
            closed_secs: None,
            closed_terms: None,
            final_terms: 0,
        };
        if n <= max_n_recursive {
            let cache = AntipodeCache::new();
            let start = Instant::now();
            let mut finals = 0;
            for s in &specs {
                finals += cache.antipode(&s.permutation())?.len() as u64;
            }
            row.recursive_secs = Some(start.elapsed().as_secs_f64());
            row.recursive_terms = Some(cache.generated_terms());
            row.final_terms = finals;
        }
        if n <= max_n_closed {
            let start = Instant::now();
            let mut words = 0u64;
            let mut finals = 0u64;
            for s in &specs {
                let mut total = Element::zero();
                for j in 1..=n {
                    let f = case_formula(*s, j)?;
                    words += f.terms.iter().map(|t| t.set.len() as u64).sum::<u64>();
                    total.add_assign(
                        &f.evaluate()?
                            .concat(&crate::words::word_element(&[j as i64])?)?,
                    )?;
                }
                finals += total.len() as u64;
            }
            row.closed_secs = Some(start.elapsed().as_secs_f64());
            row.closed_terms = Some(words);
            row.final_terms = finals;
        }
        rows.push(row);
    }
    Ok(BenchReport { rows })
}

/// Every campaign at its default cap.
pub fn run_all(max_n: Option<usize>) -> Result<Vec<VerificationReport>> {
    Ok(vec![
        sweep_oracle_equivalence(max_n.unwrap_or(8))?,
        check_table2()?,
        sweep_axioms(max_n.unwrap_or(5).min(6))?,
        sweep_lemmas(max_n.unwrap_or(9).min(9))?,
        sweep_sum_formulas(max_n.unwrap_or(7).min(9))?,
        audit_cancellation(max_n.unwrap_or(8).min(10))?,
    ])
}

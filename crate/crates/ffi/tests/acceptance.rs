//! One line per acceptance criterion. Exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use ssym::closedform::all_sign_mutations;
use ssym::verify::{self, VerificationReport};
use ssym::words::word_element;
use ssym::{antipode, SigmaSpec};

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn timed(budget: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let t = start.elapsed();
    o.detail = format!(
        "{} ({:.3}s, budget {}s)",
        o.detail,
        t.as_secs_f64(),
        budget.as_secs()
    );
    if t > budget {
        o.pass = false;
        o.detail.push_str(" over budget");
    }
    o
}

fn from_report(r: &VerificationReport) -> Outcome {
    Outcome {
        pass: r.passed() && r.checked == r.predicted,
        detail: format!("{} checks, {} failures", r.checked, r.failures.len()),
    }
}

fn table() -> Outcome {
    let r = verify::check_table2().unwrap();
    let mut o = from_report(&r);
    o.detail = format!("{} cells, {} mismatches", r.checked, r.failures.len());
    o
}

fn example_4312() -> Outcome {
    let l = |w: &[i64]| word_element(w).unwrap();
    let grouped = l(&[4, 3, 1, 2])
        .scale(-1)
        .unwrap()
        .add(&l(&[1]).shuffle(&l(&[4, 2, 3])).unwrap())
        .unwrap()
        .sub(&l(&[1, 2]).shuffle(&l(&[3, 4])).unwrap())
        .unwrap()
        .add(&l(&[1, 2, 3]).shuffle(&l(&[4])).unwrap())
        .unwrap();
    let s = antipode(&"4312".parse().unwrap()).unwrap();
    let matches = s == grouped;
    let unit = s.terms().all(|(_, c)| c.abs() == 1);
    let count = s.len();
    Outcome {
        pass: matches && count == 18 && unit,
        detail: format!(
            "grouped form {}; {count} basis terms (18 required); coefficients ±1: {unit}; S(4312) = {s}",
            if matches { "matches" } else { "differs" }
        ),
    }
}

fn equivalence() -> Outcome {
    let r = verify::sweep_oracle_equivalence(8).unwrap();
    let mut o = from_report(&r);
    o.detail = format!(
        "{} of {} instances equal, {} failures (pairs b < a <= n for 2 <= n <= 8 number {}, not 196)",
        r.checked - r.failures.len(),
        r.checked,
        r.failures.len(),
        SigmaSpec::count(8)
    );
    o
}

fn sums() -> Outcome {
    from_report(&verify::sweep_sum_formulas(7).unwrap())
}

fn axioms() -> Outcome {
    let r = verify::sweep_axioms(5).unwrap();
    let mut o = from_report(&r);
    o.pass &= r.checked == 153;
    o.detail = format!("{} permutations, {} failures", r.checked, r.failures.len());
    o
}

fn lemmas() -> Outcome {
    from_report(&verify::sweep_lemmas(9).unwrap())
}

fn cancellation() -> Outcome {
    let r = verify::audit_cancellation(8).unwrap();
    let coeff = r.failures_of("coefficients").count();
    let overlap = r.failures_of("overlap").count();
    let coherence = r.failures_of("sign-coherence").count();
    let k = r.failures_of("k-overlap").count();
    let example = r
        .failures_of("coefficients")
        .next()
        .map(|f| format!("{} has {}", f.instance, f.diff[0]));
    Outcome {
        pass: r.passed(),
        detail: format!(
            "{} specs with a coefficient outside ±1 (first: {}); {overlap} components with same-sign set overlaps \
             outside the exceptions; {coherence} components with opposite-sign overlaps; {k} case (k) overlap mismatches",
            coeff,
            example.unwrap_or_else(|| "none".into())
        ),
    }
}

fn mutations() -> Outcome {
    let all = all_sign_mutations();
    let survived: Vec<_> = all
        .iter()
        .filter(|m| {
            verify::sweep_oracle_equivalence_with(6, Some(**m))
                .unwrap()
                .passed()
        })
        .collect();
    Outcome {
        pass: survived.is_empty(),
        detail: format!(
            "{} of {} single-sign mutations caught at n <= 6",
            all.len() - survived.len(),
            all.len()
        ),
    }
}

fn main() {
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        ("small-degree component table", secs(1), table),
        ("S(4312) expansion", secs(1), example_4312),
        (
            "closed form = recursive oracle, n <= 8",
            secs(300),
            equivalence,
        ),
        ("sum formulas for b = 1, 2, n <= 7", secs(60), sums),
        ("Hopf axioms, n <= 5", secs(60), axioms),
        ("lemma suite", secs(300), lemmas),
        ("cancellation audit, n <= 8", secs(300), cancellation),
        ("mutation sensitivity", secs(300), mutations),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.into_iter().enumerate() {
        let o = timed(budget, f);
        failed += usize::from(!o.pass);
        println!(
            "criterion {} [{}] {name}: {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Acceptance suite. Prints one PASS/FAIL line per criterion, plus any
//! findings, and exits nonzero if a criterion fails.
//!
//! Run with `cargo test -p fibprod --test acceptance`.

use std::time::{Duration, Instant};

use fibprod::bfile::{self, Source};
use fibprod::oeis::{self, Outcome, Resolver};
use fibprod_core::genfunc::{check_catalan_functional_equation, oracle_product, GfName, GfSpec};
use fibprod_core::identities::{check_family, check_master, check_symbolic, IdentityFamily, MasterWeight};
use fibprod_core::numerics::{frac, rat, ten_pow_neg, BigFloat};
use fibprod_core::sequences::{catalan, fib_convolution, fib_fast, fib_matrix, harmonic, ConvolutionMode};
use fibprod_core::sums::{evaluate_sum, reference_sums, Constant};
use fibprod_core::{Error, FibTable, Rational, SequenceParams, TruncSeries};
use num_traits::{Signed, ToPrimitive};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Criterion = (&'static str, fn() -> Verdict);

const FIXTURES: [(i64, i64); 6] = [(1, 1), (2, 1), (1, 2), (3, 1), (1, -1), (1, -2)];
const INDEX_MAX: i64 = 40;
const RANDOM_PAIRS: usize = 500;
const SAMPLES_PER_FAMILY: usize = 12;
const SYMBOLIC_MAX: i64 = 12;
const RATIONAL_ORDER: usize = 64;
const TRANSCENDENTAL_ORDER: usize = 32;
const SUM_DIGITS: u32 = 8;
const OEIS_PREFIX: usize = 20;
const FIB_BIG: u64 = 1_000_000;
const LADDER_N: u64 = 1 << 20;

struct Verdict {
    pass: bool,
    detail: String,
    findings: Vec<String>,
}

fn fixture(a: i64, b: i64) -> SequenceParams {
    SequenceParams::from_ints(a, b).expect("fixture pairs are valid")
}

fn within(start: Instant, limit: Duration) -> (bool, String) {
    let t = start.elapsed();
    (t <= limit, format!("{:.2}s of {}s", t.as_secs_f64(), limit.as_secs()))
}

/// A random valid instance of `family` whose largest index is at most
/// `INDEX_MAX`.
fn random_instance(rng: &mut StdRng, family: IdentityFamily) -> Vec<i64> {
    let half = INDEX_MAX / 2;
    match family {
        IdentityFamily::Addition | IdentityFamily::TwoFold => {
            // F(m + 1) and F(n + m) both appear
            let n = rng.gen_range(1..INDEX_MAX - 1);
            vec![n, rng.gen_range(1..=INDEX_MAX - n - 1)]
        }
        IdentityFamily::Doubling => vec![rng.gen_range(1..=half)],
        IdentityFamily::Shift => {
            let n = rng.gen_range(1..INDEX_MAX);
            let m = rng.gen_range(1..=INDEX_MAX - n);
            vec![n, m, rng.gen_range(0..=m)]
        }
        IdentityFamily::MultipleAngle => {
            let m = rng.gen_range(1..=half);
            let n = rng.gen_range(2..=INDEX_MAX / m);
            vec![m, n, rng.gen_range(0..=INDEX_MAX - m * n)]
        }
        IdentityFamily::Johnson => {
            let p = rng.gen_range(1..=INDEX_MAX);
            let q = rng.gen_range(1..=INDEX_MAX);
            let c = rng.gen_range(1..=INDEX_MAX);
            let d = p + q - c;
            if !(1..=INDEX_MAX).contains(&d) {
                return random_instance(rng, family);
            }
            let lo = p.min(q).min(c).min(d);
            vec![p, q, c, d, rng.gen_range(0..=lo)]
        }
    }
}

fn random_params(rng: &mut StdRng) -> SequenceParams {
    loop {
        let a = frac(rng.gen_range(-20..=20), rng.gen_range(1..=6));
        let b = frac(rng.gen_range(-20..=20), rng.gen_range(1..=6));
        if let Ok(p) = SequenceParams::new(a, b) {
            return p;
        }
    }
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_f1b0);
    let families = IdentityFamily::ALL;
    let (mut checked, mut failures) = (0usize, Vec::new());
    let mut record = |p: &SequenceParams, t: &FibTable, f: IdentityFamily, args: &[i64]| match check_family(t, f, args)
    {
        Ok(r) => {
            checked += 1;
            if !r.passed() {
                failures.push(format!("({p}) {r}"));
            }
        }
        Err(e) => failures.push(format!("({p}) {f} {args:?}: {e}")),
    };
    for (a, b) in FIXTURES {
        let p = fixture(a, b);
        let t = FibTable::new(p.clone());
        for f in families {
            // the whole grid up to 12, then random instances up to the index bound
            for args in f.instances(12) {
                record(&p, &t, f, &args);
            }
            for _ in 0..4 * SAMPLES_PER_FAMILY {
                record(&p, &t, f, &random_instance(&mut rng, f));
            }
        }
    }
    for _ in 0..RANDOM_PAIRS {
        let p = random_params(&mut rng);
        let t = FibTable::new(p.clone());
        for f in families {
            for _ in 0..SAMPLES_PER_FAMILY {
                record(&p, &t, f, &random_instance(&mut rng, f));
            }
        }
    }
    let (fast, time) = within(start, Duration::from_secs(10));
    let mut detail = format!(
        "{checked} exact instances over 6 fixture + {RANDOM_PAIRS} random rational pairs, indices <= {INDEX_MAX}, {} failures, {time}",
        failures.len()
    );
    if let Some(f) = failures.first() {
        detail.push_str(&format!("; first: {f}"));
    }
    Verdict { pass: failures.is_empty() && fast, detail, findings: vec![] }
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let (mut checked, mut failures) = (0usize, Vec::new());
    for f in IdentityFamily::ALL {
        for args in f.instances(SYMBOLIC_MAX) {
            match check_symbolic(f, &args) {
                Ok(r) if r.passed() => checked += 1,
                Ok(r) => failures.push(r.to_string()),
                Err(e) => failures.push(format!("{f} {args:?}: {e}")),
            }
        }
    }
    let (fast, time) = within(start, Duration::from_secs(30));
    Verdict {
        pass: failures.is_empty() && fast,
        detail: format!(
            "{checked} polynomial identities in Z[a,b], arguments <= {SYMBOLIC_MAX}, {} failures, {time}",
            failures.len()
        ),
        findings: failures.into_iter().take(3).collect(),
    }
}

fn criterion_3() -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    let weights = [MasterWeight::One, MasterWeight::Fib, MasterWeight::Catalan, MasterWeight::Reciprocal];
    for (a, b) in FIXTURES {
        let t = FibTable::new(fixture(a, b));
        for w in weights {
            for k in 0..=3 {
                for m in 0..=3 {
                    for n in 0..=24 {
                        match check_master(&t, |i| w.weight(&t, i), k, m, n) {
                            Ok(r) if r.passed() => checked += 1,
                            Ok(r) => failures.push(format!("({a},{b}) {w:?} {r}")),
                            Err(e) => failures.push(format!("({a},{b}) {w:?}: {e}")),
                        }
                        if w == MasterWeight::One {
                            // (n+1)F(kn+2m) = sum L(ki+m)F(k(n-i)+m), summed here directly
                            let lhs = rat(n + 1) * t.fib(k * n + 2 * m);
                            let rhs: Rational = (0..=n).map(|i| t.lucas(k * i + m) * t.fib(k * (n - i) + m)).sum();
                            checked += 1;
                            if lhs != rhs {
                                failures.push(format!("({a},{b}) corollary k={k} m={m} n={n}"));
                            }
                        }
                    }
                }
            }
        }
    }
    // the closed-form convolution, and the displayed m = 0, k = 1 instances
    let mut findings = Vec::new();
    for (a, b, den) in [(1, 1, 5), (2, 1, 8), (1, 2, 9)] {
        let p = fixture(a, b);
        let t = FibTable::new(p.clone());
        assert_eq!(p.discriminant(), &rat(den));
        let mut display_holds = true;
        for n in 0..=24i64 {
            let direct: Rational = (0..=n).map(|i| t.fib(i) * t.fib(n - i)).sum();
            let closed = (rat(n - 1) * t.fib(n + 1) + rat(b) * rat(n + 1) * t.fib(n - 1)) / rat(den);
            checked += 2;
            if direct != closed || fib_convolution(&p, n as u64, ConvolutionMode::Closed) != closed {
                failures.push(format!("convolution ({a},{b}) n={n}"));
            }
            // printed: sum F(i)^2 L(n-i) F(n-i) = F(n)((n-1)F(n+1) + (n+1)F(n-1))/den
            let lhs: Rational = (0..=n).map(|i| t.fib(i) * t.fib(i) * t.lucas(n - i) * t.fib(n - i)).sum();
            if lhs != t.fib(n) * &closed {
                failures.push(format!("master with p(n) closed form ({a},{b}) n={n}"));
            }
            let printed = t.fib(n) * (rat(n - 1) * t.fib(n + 1) + rat(n + 1) * t.fib(n - 1)) / rat(den);
            display_holds &= lhs == printed;
        }
        if !display_holds {
            findings.push(format!(
                "displayed convolution product for ({a},{b}) over {den} omits the factor b on (n+1)F(n-1); \
                 it fails while the general closed form holds"
            ));
        }
    }
    // the displayed Fibonacci convolution ((n-1)F(n) + (n+1)F(n-1))/5
    let t = FibTable::new(fixture(1, 1));
    let n = 2;
    let direct: Rational = (0..=n).map(|i| t.fib(i) * t.fib(n - i)).sum();
    let printed = (rat(n - 1) * t.fib(n) + rat(n + 1) * t.fib(n - 1)) / rat(5);
    if direct != printed {
        findings.push(format!(
            "displayed Fibonacci convolution ((n-1)F(n) + (n+1)F(n-1))/5 gives {printed} at n=2, true value {direct}; \
             (n-1)F(n+1) is meant"
        ));
    }
    Verdict {
        pass: failures.is_empty(),
        detail: format!(
            "{checked} exact checks: master for r in {{1, F, C, 1/n}}, k,m <= 3, n <= 24 on 6 fixtures; \
             (n+1) corollary; convolution over 5, 8, 9; {} failures",
            failures.len()
        ),
        findings: findings.into_iter().chain(failures.into_iter().take(3)).collect(),
    }
}

fn series(cs: &[i64], order: usize) -> TruncSeries {
    TruncSeries::from_poly(&cs.iter().map(|&c| rat(c)).collect::<Vec<_>>(), order)
}

/// `sqrt(inner)/x` where `inner` has valuation 2; built two orders high.
fn sqrt_over_x(inner: &TruncSeries, order: usize) -> TruncSeries {
    let root = inner.sqrt().expect("even valuation");
    root.shift_down(1).expect("valuation 1").truncate(order)
}

/// The four printed closed forms of the multisection examples, expanded
/// literally, and the products they are claimed to generate.
fn literal_examples(order: usize) -> Vec<(String, TruncSeries, TruncSeries)> {
    let n2 = order + 2;
    let ln = |s: TruncSeries| s.log().expect("constant term 1");
    let over = |num: TruncSeries, den: TruncSeries| num.div(&den).expect("unit constant");
    let prod = |a: i64, b: i64, w: char, lucas: bool, m: u64, j: u64| {
        let t = FibTable::new(fixture(a, b));
        let s = move |n: u64| if lucas { t.lucas((m * n + j) as i64) } else { t.fib((m * n + j) as i64) };
        let weight = move |n: u64| if w == 'H' { harmonic(n) } else { Rational::from_integer(catalan(n)) };
        oracle_product(weight, s, order)
    };
    let mut out = Vec::new();

    // ((8x+7)log((1-x)/(1-16x)) + (24x-9)log(16x^2-17x+1)) / (96x^2-102x+6)
    let n = order;
    let q = ln(over(series(&[1, -1], n), series(&[1, -16], n)));
    let num = series(&[7, 8], n).mul(&q).add(&series(&[-9, 24], n).mul(&ln(series(&[1, -17, 16], n))));
    out.push(("H(n)F(4n+3) at (1,2)".into(), over(num, series(&[6, -102, 96], n)), prod(1, 2, 'H', false, 4, 3)));

    // sqrt(sqrt(16x^2+4x+1) - 2x - 1) / (sqrt(6) x)
    let inner = series(&[1, 4, 16], n2).sqrt().unwrap().sub(&series(&[1, 2], n2)).scale(&frac(1, 6));
    out.push(("C(n)F(4n+1) at (1,-1)".into(), sqrt_over_x(&inner, n), prod(1, -1, 'C', false, 4, 1)));

    // (3x log((1-x)/(1-4x)) + (5x-2)log(4x^2-5x+1)) / (8x^2-10x+2)
    let q = ln(over(series(&[1, -1], n), series(&[1, -4], n)));
    let num = series(&[0, 3], n).mul(&q).add(&series(&[-2, 5], n).mul(&ln(series(&[1, -5, 4], n))));
    out.push(("H(n)L(2n) at (1,2)".into(), over(num, series(&[2, -10, 8], n)), prod(1, 2, 'H', true, 2, 0)));

    // sqrt(sqrt(128x^2+16x+1) - 8x - 1) / (sqrt(8) x)
    let inner = series(&[1, 16, 128], n2).sqrt().unwrap().sub(&series(&[1, 8], n2)).scale(&frac(1, 8));
    let ex4 = sqrt_over_x(&inner, n);
    out.push(("C(n)L(3n+1) at (1,-2)".into(), ex4.clone(), prod(1, -2, 'C', true, 3, 1)));
    out.push(("C(n)L(3n+1) at (2,-2)".into(), ex4, prod(2, -2, 'C', true, 3, 1)));
    out
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    let mut specs = Vec::new();
    for (a, b) in FIXTURES {
        let p = fixture(a, b);
        for name in GfName::ALL {
            let order = if name.is_transcendental() { TRANSCENDENTAL_ORDER } else { RATIONAL_ORDER };
            let base = GfSpec::new(name, p.clone(), order);
            if name.is_multisection() {
                for m in 1..=4 {
                    for j in 0..m {
                        specs.push(base.clone().with_stride(m, j));
                    }
                }
            } else if name.takes_shift() {
                specs.extend((0..=3).map(|j| base.clone().with_shift(j)));
            } else {
                specs.push(base);
            }
        }
    }
    // the worked examples, by their stated product
    for (a, b, name, m, j) in
        [(1, 2, GfName::HF, 4, 3), (1, -1, GfName::CF, 4, 1), (1, 2, GfName::HL, 2, 0), (1, -2, GfName::CL, 3, 1)]
    {
        specs.push(GfSpec::new(name, fixture(a, b), TRANSCENDENTAL_ORDER).with_stride(m, j));
    }
    let (mut matched, mut skipped, mut failures) = (0usize, Vec::new(), Vec::new());
    for spec in &specs {
        match (spec.build(), spec.oracle()) {
            (Ok(s), Ok(o)) if s == o => matched += 1,
            (Ok(_), Ok(_)) => failures.push(format!("{spec}: closed form differs from oracle")),
            (Err(e @ (Error::UnsupportedDomain(_) | Error::UnsupportedDerivedParams(_))), _) => {
                skipped.push(format!("{spec}: {e}"))
            }
            (Err(e), _) | (_, Err(e)) => failures.push(format!("{spec}: {e}")),
        }
    }
    // pinned readings: U6 = F(j+1)U4 + bF(j)U5 and V1 = sum C(n)F(n+1)x^n
    let p = fixture(2, 1);
    let t = FibTable::new(p.clone());
    let v1 = GfSpec::new(GfName::V(1), p.clone(), TRANSCENDENTAL_ORDER).build().unwrap();
    if v1 != oracle_product(|n| Rational::from_integer(catalan(n)), |n| t.fib(n as i64 + 1), TRANSCENDENTAL_ORDER) {
        failures.push("V1 is not C(n)F(n+1)".into());
    }
    let u6 = GfSpec::new(GfName::U(6), p.clone(), TRANSCENDENTAL_ORDER).with_shift(2).build().unwrap();
    if u6 != oracle_product(harmonic, |n| t.fib(n as i64 + 3), TRANSCENDENTAL_ORDER) {
        failures.push("U6 at j=2 is not H(n)F(n+3)".into());
    }

    let mut findings = Vec::new();
    let mut literal_ok = 0;
    for (label, closed, product) in literal_examples(TRANSCENDENTAL_ORDER) {
        if closed == product {
            literal_ok += 1;
            if label.ends_with("(2,-2)") {
                findings
                    .push(format!("printed closed form of example 4 (labelled a=1, b=-2) generates {label} instead"));
            }
        } else {
            let at = closed.coeffs().iter().zip(product.coeffs()).position(|(x, y)| x != y).unwrap();
            findings.push(format!(
                "printed closed form for {label} differs at coefficient {at}: {} vs {}",
                closed.coeff(at),
                product.coeff(at)
            ));
        }
    }
    let (fast, time) = within(start, Duration::from_secs(60));
    let detail = format!(
        "{matched} generating functions equal their oracle (order {RATIONAL_ORDER} rational, {TRANSCENDENTAL_ORDER} log/sqrt), \
         {} inadmissible skipped, {} failures; U6 and V1 readings pinned; {literal_ok} of 5 literal example expansions \
         agree; {time}",
        skipped.len(),
        failures.len()
    );
    Verdict { pass: failures.is_empty() && fast, detail, findings: findings.into_iter().chain(failures).collect() }
}

fn criterion_5() -> Verdict {
    let n = 32;
    let mut failures = Vec::new();
    for (a, b) in FIXTURES {
        let p = fixture(a, b);
        match check_catalan_functional_equation(&p, n) {
            Ok(r) if r.passed() => {}
            Ok(_) => failures.push(format!("({a},{b}) closed forms")),
            Err(e) => failures.push(format!("({a},{b}): {e}")),
        }
        // the same relation between the termwise series
        let v1 = GfSpec::new(GfName::V(1), p.clone(), n).oracle().unwrap();
        let v2 = GfSpec::new(GfName::V(2), p, n).oracle().unwrap();
        let rhs = TruncSeries::constant(rat(1), n).add(&v1.mul(&v2).shift_up(1).truncate(n));
        if v1 != rhs {
            failures.push(format!("({a},{b}) oracle series"));
        }
    }
    Verdict {
        pass: failures.is_empty(),
        detail: format!(
            "V1 = 1 + x V1 V2 to order {n} on 6 fixtures, closed forms and oracle series; {} failures",
            failures.len()
        ),
        findings: failures,
    }
}

fn f64_constant(c: Constant) -> f64 {
    let (s2, s5, s7, s10) = (2f64.sqrt(), 5f64.sqrt(), 7f64.sqrt(), 10f64.sqrt());
    match c {
        Constant::GoldenHarmonic => 3.0 / s5 * ((3.0 + s5) / (3.0 - s5)).ln() + 4f64.ln(),
        Constant::PellHarmonic => -0.75 * (s2 * ((2.0 - s2) / (2.0 + s2)).ln() + (2.0f64 / 9.0).ln()),
        Constant::GoldenCatalan => 4.0 * (1.0 - 3.0 / s10),
        Constant::PellCatalan => 8.0 - 2.0 * (13.0 + s7).sqrt(),
    }
}

fn criterion_6() -> Verdict {
    let tol = ten_pow_neg(SUM_DIGITS);
    let mut pass = true;
    let mut parts = Vec::new();
    for r in reference_sums() {
        let start = Instant::now();
        let e = match evaluate_sum(&r.params(), r.family, &r.x, SUM_DIGITS) {
            Ok(e) => e,
            Err(err) => {
                pass = false;
                parts.push(format!("{}: {err}", r.name));
                continue;
            }
        };
        let c = r.constant.evaluate(SUM_DIGITS + 6).unwrap();
        let gap = (&BigFloat::exact(e.partial_sum.clone()) - &c).abs();
        let float_gap = (c.midpoint().to_f64().unwrap() - f64_constant(r.constant)).abs();
        let (fast, time) = within(start, Duration::from_secs(10));
        let ok = e.verdict && gap.hi() <= &tol && e.tail_bound < tol && float_gap < 1e-12 && fast;
        pass &= ok;
        parts.push(format!(
            "{}: |partial - constant| <= {:.1e}, tail <= {:.1e}, N={}, {time}{}",
            r.name,
            gap.hi().to_f64().unwrap(),
            e.tail_bound.to_f64().unwrap(),
            e.terms_used,
            if ok { "" } else { " FAILED" }
        ));
    }
    Verdict { pass, detail: format!("tolerance 1e-8; {}", parts.join("; ")), findings: vec![] }
}

fn criterion_7() -> Verdict {
    let cache = tempfile::tempdir().unwrap();
    let resolver = Resolver { fetch: false, cache_dir: cache.path().to_path_buf(), local: None };
    let (mut matched, mut failures, mut findings) = (0usize, Vec::new(), Vec::new());
    let bindings = oeis::table_bindings();
    for b in &bindings {
        let report = resolver.resolve(&b.id).and_then(|f| oeis::compare(&f, b, OEIS_PREFIX));
        match report {
            Ok(r) if r.passed() => matched += 1,
            Ok(r) => {
                // the (8, 1) Lucas column repeats A086902 and is expected to fail
                let listed_twice = bindings.iter().filter(|o| o.id == b.id).count() > 1;
                if listed_twice && matches!(r.outcome, Outcome::Mismatch { .. }) {
                    findings.push(format!("{r} (entry listed for two parameter pairs)"));
                } else {
                    failures.push(r.to_string());
                }
            }
            Err(e) => failures.push(format!("{b}: {e}")),
        }
    }
    for b in oeis::product_bindings() {
        match resolver.resolve(&b.id) {
            Ok(f) => findings.push(oeis::compare(&f, &b, OEIS_PREFIX).unwrap().to_string()),
            Err(_) => findings.push(format!("{b}: hypothesis not tested offline (no bundled b-file)")),
        }
    }
    // the fixtures themselves must be well formed
    let parse_ok = bindings.iter().all(|b| {
        bfile::parse(&b.id, oeis::bundled(&b.id).unwrap(), Source::Bundled)
            .map(|f| f.entries.len() >= OEIS_PREFIX)
            .unwrap_or(false)
    });
    Verdict {
        pass: failures.is_empty() && parse_ok && matched + findings.iter().filter(|f| f.contains("MISMATCH")).count() == bindings.len(),
        detail: format!(
            "{matched} of {} table bindings match {OEIS_PREFIX}-term bundled prefixes, {} reported as findings, {} unexplained failures",
            bindings.len(),
            bindings.len() - matched - failures.len(),
            failures.len()
        ),
        findings: findings.into_iter().chain(failures).collect(),
    }
}

fn criterion_8() -> Verdict {
    let p = fixture(1, 1);
    let start = Instant::now();
    let big = fib_fast(&p, FIB_BIG);
    let (fast, time) = within(start, Duration::from_secs(5));
    // last nine digits by plain iteration mod 10^9
    let modulus = 1_000_000_000u64;
    let (mut x, mut y) = (0u64, 1u64);
    for _ in 0..FIB_BIG {
        (x, y) = (y, (x + y) % modulus);
    }
    let tail_ok = (big.to_integer() % modulus).to_u64() == Some(x);
    let digits = big.to_integer().abs().to_string().len();
    // F(n) has floor(n log10(phi) - log10(sqrt 5)) + 1 digits
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let expected_digits = (FIB_BIG as f64 * phi.log10() - 5f64.sqrt().log10()).floor() as usize + 1;
    let ladder_ok = fib_fast(&p, LADDER_N) == fib_matrix(&p, LADDER_N);
    let pell = fixture(2, 1);
    let ladder_pell = fib_fast(&pell, 4099) == fib_matrix(&pell, 4099);
    Verdict {
        pass: fast && tail_ok && digits == expected_digits && ladder_ok && ladder_pell,
        detail: format!(
            "F(10^6) has {digits} digits (expected {expected_digits}), last nine digits {}, in {time}; matrix ladder at 2^20 {}",
            if tail_ok { "agree" } else { "DISAGREE" },
            if ladder_ok { "agrees" } else { "DISAGREES" }
        ),
        findings: vec![],
    }
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; a listing
    // request expects no output.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [Criterion; 8] = [
        ("identity suite", criterion_1),
        ("symbolic suite", criterion_2),
        ("master identity", criterion_3),
        ("generating functions", criterion_4),
        ("functional equation", criterion_5),
        ("numeric sums", criterion_6),
        ("OEIS fixtures", criterion_7),
        ("performance", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("criterion {} ({name}): {} | {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        for f in &o.findings {
            println!("    finding: {f}");
        }
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} of 8 criteria pass", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

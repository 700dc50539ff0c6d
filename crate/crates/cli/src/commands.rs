use std::io::Write;

use fibprod_core::genfunc::{check_catalan_functional_equation, describe, GfName, GfSpec};
use fibprod_core::identities::{
    check_family, check_master, check_triangle, IdentityFamily, IdentityReport, MasterWeight, SymmetricTriangle,
    TermSource,
};
use fibprod_core::numerics::rat;
use fibprod_core::sequences::{fib_convolution, ConvolutionMode, SymbolicTable};
use fibprod_core::sums::{evaluate_sum, reference_sums, summary, Family};
use fibprod_core::{BigFloat, Error, FibTable, Rational, SeqKind, SequenceParams, TruncSeries};
use serde_json::{json, Value};

use crate::config::{parse_rational, RunConfig};
use crate::oeis::{self, Binding, Resolver, Target};
use crate::output::{self, plain, structured, Format};
use crate::{Cli, CliError, Command, Mode, OnOff};

type Res<T> = Result<T, CliError>;

/// Everything a command needs after global flags and config are merged.
struct Ctx<'a> {
    cfg: RunConfig,
    cli: &'a Cli,
    out: &'a mut dyn Write,
}

fn io(e: std::io::Error) -> CliError {
    CliError::Environment(format!("write failed: {e}"))
}

impl Ctx<'_> {
    fn format(&self) -> Format {
        self.cli.global.format
    }

    fn order(&self) -> usize {
        self.cli.global.order.unwrap_or(self.cfg.order)
    }

    fn digits(&self) -> Res<u32> {
        match self.cli.global.digits.unwrap_or(self.cfg.digits) {
            0 => Err(CliError::Usage("--digits must be positive".into())),
            d => Ok(d),
        }
    }

    /// Profile first, then `--a` / `--b` on top.
    fn params(&self) -> Res<SequenceParams> {
        let g = &self.cli.global;
        let name = g.profile.as_deref().unwrap_or(&self.cfg.default_profile);
        let base = self.cfg.profile(name)?;
        let pick = |flag: &Option<String>, default: &Rational| -> Res<Rational> {
            match flag {
                Some(s) => parse_rational(s).map_err(CliError::Usage),
                None => Ok(default.clone()),
            }
        };
        let a = pick(&g.a, base.a())?;
        let b = pick(&g.b, base.b())?;
        Ok(SequenceParams::new(a, b)?)
    }

    fn emit(&mut self, text: &str) -> Res<()> {
        self.out.write_all(text.as_bytes()).map_err(io)
    }

    fn emit_json(&mut self, v: &Value) -> Res<()> {
        let text = serde_json::to_string_pretty(v).expect("JSON values always serialize");
        writeln!(self.out, "{text}").map_err(io)
    }
}

fn params_json(p: &SequenceParams) -> Value {
    json!({ "a": structured(p.a()), "b": structured(p.b()) })
}

fn usage<E: std::fmt::Display>(what: &str) -> impl FnOnce(E) -> CliError + '_ {
    move |e| CliError::Usage(format!("{what}: {e}"))
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Res<()> {
    let mut cfg = match &cli.global.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(f) = cli.global.fetch {
        cfg.fetch = f == OnOff::On;
    }
    let mut ctx = Ctx { cfg, cli, out };
    match &cli.command {
        Command::Seq(a) => seq(&mut ctx, &a.kind, a.from, a.to),
        Command::Coeffs(a) => coeffs(&mut ctx, &a.name, a.j, a.m, a.oracle),
        Command::Verify(a) => verify(&mut ctx, a),
        Command::Sum(a) => sum(&mut ctx, &a.family, &a.x),
        Command::Oeis(a) => oeis_cmd(&mut ctx, a),
    }
}

fn seq(ctx: &mut Ctx, kind: &str, from: i64, to: i64) -> Res<()> {
    let kind: SeqKind = kind.parse().map_err(usage("sequence"))?;
    if from > to {
        return Err(CliError::Usage(format!("empty range {from}..={to}")));
    }
    let params = if kind.needs_params() { Some(ctx.params()?) } else { None };
    let rows: Vec<(i64, Rational)> =
        (from..=to).map(|n| Ok((n, kind.term(params.as_ref(), n)?))).collect::<Res<_>>()?;
    match ctx.format() {
        Format::Plain => ctx.emit(&output::plain_rows(&rows)),
        Format::Structured => {
            let p = params.as_ref().map_or(Value::Null, params_json);
            ctx.emit_json(&json!({ "kind": kind.to_string(), "params": p, "rows": output::structured_rows(&rows) }))
        }
    }
}

fn gf_spec(ctx: &Ctx, name: &str, j: u64, m: u64) -> Res<GfSpec> {
    let gf: GfName = name.parse().map_err(usage("generating function"))?;
    let spec = GfSpec::new(gf, ctx.params()?, ctx.order());
    Ok(if gf.is_multisection() { spec.with_stride(m, j) } else { spec.with_shift(j) })
}

fn series_rows(s: &TruncSeries) -> Vec<(i64, Rational)> {
    s.coeffs().iter().enumerate().map(|(n, c)| (n as i64, c.clone())).collect()
}

/// First index where two series differ.
fn first_difference(x: &TruncSeries, y: &TruncSeries) -> Option<usize> {
    x.coeffs().iter().zip(y.coeffs()).position(|(p, q)| p != q)
}

fn with_name(spec: &GfSpec) -> impl FnOnce(Error) -> CliError + '_ {
    move |e| {
        let mut c = CliError::from(e);
        match &mut c {
            CliError::Usage(m) | CliError::Mismatch(m) | CliError::Environment(m) => *m = format!("{spec}: {m}"),
        }
        c
    }
}

fn coeffs(ctx: &mut Ctx, name: &str, j: u64, m: u64, oracle: bool) -> Res<()> {
    let spec = gf_spec(ctx, name, j, m)?;
    let series = spec.build().map_err(with_name(&spec))?;
    let check = if oracle { Some(spec.oracle().map_err(with_name(&spec))?) } else { None };
    let diff = check.as_ref().and_then(|o| first_difference(&series, o));
    match ctx.format() {
        Format::Plain => {
            ctx.emit(&output::plain_rows(&series_rows(&series)))?;
            if let Some(o) = &check {
                let line = match diff {
                    None => format!("# oracle: match to order {}\n", spec.order),
                    Some(i) => format!(
                        "# oracle: MISMATCH at coefficient {i}: closed form {}, oracle {}\n# oracle series: {}\n",
                        plain(series.coeff(i)),
                        plain(o.coeff(i)),
                        describe(o)
                    ),
                };
                ctx.emit(&line)?;
            }
        }
        Format::Structured => {
            let mut v = json!({
                "name": spec.name.to_string(),
                "params": params_json(&spec.params),
                "j": spec.j,
                "m": spec.m,
                "order": spec.order,
                "coefficients": output::structured_rows(&series_rows(&series)),
            });
            if let Some(o) = &check {
                v["oracle"] = output::structured_rows(&series_rows(o));
                v["match"] = json!(diff.is_none());
                v["first_mismatch"] = json!(diff);
            }
            ctx.emit_json(&v)?;
        }
    }
    match diff {
        Some(i) => Err(CliError::Mismatch(format!("{spec}: closed form and oracle differ at coefficient {i}"))),
        None => Ok(()),
    }
}

/// Tally of a verification run.
#[derive(Default)]
struct Tally {
    name: String,
    checked: usize,
    skipped: Vec<String>,
    failures: Vec<(String, String, String)>,
    failure_text: Vec<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), ..Default::default() }
    }

    fn record<T: std::fmt::Display + PartialEq>(&mut self, r: &IdentityReport<T>) {
        self.checked += 1;
        if !r.passed() {
            self.failures.push((r.name().to_string(), r.lhs().to_string(), r.rhs().to_string()));
            self.failure_text.push(r.to_string());
        }
    }

    /// Instances that violate a check's own preconditions are skipped;
    /// anything else is an error.
    fn outcome<T: std::fmt::Display + PartialEq>(&mut self, r: fibprod_core::Result<IdentityReport<T>>) -> Res<()> {
        match r {
            Ok(r) => self.record(&r),
            Err(e @ (Error::Precondition(_) | Error::UnsupportedInstance(_) | Error::ConstraintViolation(_))) => {
                self.skipped.push(e.to_string())
            }
            Err(e) => return Err(e.into()),
        }
        Ok(())
    }

    fn finish(self, ctx: &mut Ctx) -> Res<()> {
        let failed = self.failures.len();
        match ctx.format() {
            Format::Plain => {
                let mut text = String::new();
                for f in &self.failure_text {
                    text.push_str(f);
                    text.push('\n');
                }
                text.push_str(&format!(
                    "{}: {} checked, {} passed, {} failed, {} skipped\n",
                    self.name,
                    self.checked,
                    self.checked - failed,
                    failed,
                    self.skipped.len()
                ));
                ctx.emit(&text)?;
            }
            Format::Structured => {
                let fails: Vec<Value> = self
                    .failures
                    .iter()
                    .zip(&self.failure_text)
                    .map(|((n, l, r), t)| json!({ "identity": n, "lhs": l, "rhs": r, "report": t }))
                    .collect();
                ctx.emit_json(&json!({
                    "name": self.name,
                    "checked": self.checked,
                    "passed": self.checked - failed,
                    "failed": failed,
                    "skipped": self.skipped.len(),
                    "failures": fails,
                }))?;
            }
        }
        if failed > 0 {
            Err(CliError::Mismatch(format!("{}: {failed} of {} instances failed", self.name, self.checked)))
        } else {
            Ok(())
        }
    }
}

/// Replaces the right side with `rhs + 1`.
fn perturbed<S: TermSource>(src: &S, r: IdentityReport<S::Value>) -> IdentityReport<S::Value> {
    let rhs = r.rhs().clone() + src.int(1);
    IdentityReport::new(r.name().to_string(), r.instance().to_vec(), r.lhs().clone(), rhs)
}

fn run_family<S: TermSource>(src: &S, family: IdentityFamily, max: i64, perturb: bool, tally: &mut Tally) -> Res<()> {
    for (i, args) in family.instances(max).iter().enumerate() {
        let r = check_family(src, family, args);
        let r = if perturb && i == 0 { r.map(|r| perturbed(src, r)) } else { r };
        tally.outcome(r)?;
    }
    Ok(())
}

fn verify(ctx: &mut Ctx, a: &crate::VerifyArgs) -> Res<()> {
    if let Ok(family) = a.name.parse::<IdentityFamily>() {
        let mut tally = Tally::new(format!("{family} ({} mode, arguments <= {})", mode_name(a.mode), a.max));
        match a.mode {
            Mode::Rational => run_family(&FibTable::new(ctx.params()?), family, a.max, a.perturb, &mut tally)?,
            Mode::Symbolic => run_family(&SymbolicTable::new(), family, a.max, a.perturb, &mut tally)?,
        }
        return tally.finish(ctx);
    }
    if a.mode == Mode::Symbolic {
        return Err(CliError::Usage(format!("symbolic mode applies only to the identity families, not `{}`", a.name)));
    }
    match a.name.as_str() {
        "master" => verify_master(ctx, a),
        "convolution" => verify_convolution(ctx, a),
        "triangle" => verify_triangle(ctx, a),
        "functional-equation" => {
            let r = check_catalan_functional_equation(&ctx.params()?, ctx.order())?;
            let r = if a.perturb {
                let rhs = r.rhs().add(&TruncSeries::constant(rat(1), ctx.order()));
                IdentityReport::new(r.name().to_string(), r.instance().to_vec(), r.lhs().clone(), rhs)
            } else {
                r
            };
            let mut tally = Tally::new(format!("functional-equation (order {})", ctx.order()));
            tally.checked += 1;
            if !r.passed() {
                let at = first_difference(r.lhs(), r.rhs()).unwrap_or(0);
                tally.failures.push((r.name().into(), describe(r.lhs()), describe(r.rhs())));
                tally.failure_text.push(format!("{}: sides differ at coefficient {at}", r.name()));
            }
            tally.finish(ctx)
        }
        other => match other.parse::<GfName>() {
            Ok(_) => verify_gf(ctx, a),
            Err(_) => Err(CliError::Usage(format!(
                "unknown identity `{other}`; expected one of {}, master, convolution, triangle, \
                 functional-equation, or a generating function name",
                IdentityFamily::ALL.map(|f| f.name()).join(", ")
            ))),
        },
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Rational => "rational",
        Mode::Symbolic => "symbolic",
    }
}

fn verify_master(ctx: &mut Ctx, a: &crate::VerifyArgs) -> Res<()> {
    let weights = match &a.weight {
        Some(w) => vec![w.parse::<MasterWeight>().map_err(usage("weight"))?],
        None => vec![MasterWeight::One, MasterWeight::Fib, MasterWeight::Catalan, MasterWeight::Reciprocal],
    };
    let table = FibTable::new(ctx.params()?);
    let mut tally = Tally::new(format!("master (k <= {}, m <= {}, n <= {})", a.k_max, a.m_max, a.n_max));
    let mut first = a.perturb;
    for w in weights {
        for k in 0..=a.k_max {
            for m in 0..=a.m_max {
                for n in 0..=a.n_max {
                    let r = check_master(&table, |i| w.weight(&table, i), k, m, n);
                    let r = if std::mem::take(&mut first) { r.map(|r| perturbed(&table, r)) } else { r };
                    tally.outcome(r)?;
                }
            }
        }
    }
    tally.finish(ctx)
}

fn verify_convolution(ctx: &mut Ctx, a: &crate::VerifyArgs) -> Res<()> {
    let p = ctx.params()?;
    let mut tally = Tally::new(format!("convolution (n <= {})", a.n_max));
    for n in 0..=a.n_max.max(0) as u64 {
        let lhs = fib_convolution(&p, n, ConvolutionMode::Direct);
        let mut rhs = fib_convolution(&p, n, ConvolutionMode::Closed);
        if a.perturb && n == 0 {
            rhs += rat(1);
        }
        tally.record(&IdentityReport::new("convolution", vec![("n".into(), rat(n as i64))], lhs, rhs));
    }
    tally.finish(ctx)
}

fn verify_triangle(ctx: &mut Ctx, a: &crate::VerifyArgs) -> Res<()> {
    let rows = a.n_max.max(0) as u64;
    let t = match a.triangle.as_str() {
        "pascal" => SymmetricTriangle::pascal(rows),
        "central-binomial-squared" => SymmetricTriangle::central_binomial_squared(rows),
        "eulerian" => SymmetricTriangle::eulerian(rows),
        other => return Err(CliError::Usage(format!("unknown triangle `{other}`"))),
    };
    let table = FibTable::new(ctx.params()?);
    let mut tally = Tally::new(format!("triangle:{} (k <= {}, m <= {}, n <= {})", t.name(), a.k_max, a.m_max, a.n_max));
    let mut first = a.perturb;
    for k in 0..=a.k_max {
        for m in 0..=a.m_max {
            for n in 0..=a.n_max {
                let r = check_triangle(&table, &t, k, m, n);
                let r = if std::mem::take(&mut first) { r.map(|r| perturbed(&table, r)) } else { r };
                tally.outcome(r)?;
            }
        }
    }
    tally.finish(ctx)
}

fn verify_gf(ctx: &mut Ctx, a: &crate::VerifyArgs) -> Res<()> {
    let spec = gf_spec(ctx, &a.name, a.j, a.m)?;
    let built = spec.build().map_err(with_name(&spec))?;
    let mut oracle = spec.oracle().map_err(with_name(&spec))?;
    if a.perturb {
        oracle = oracle.add(&TruncSeries::constant(rat(1), spec.order));
    }
    let mut tally = Tally::new(spec.to_string());
    tally.checked += 1;
    if let Some(i) = first_difference(&built, &oracle) {
        tally.failures.push((spec.name.to_string(), describe(&built), describe(&oracle)));
        tally.failure_text.push(format!(
            "{spec}: closed form {} vs oracle {} at coefficient {i}",
            plain(built.coeff(i)),
            plain(oracle.coeff(i))
        ));
    }
    tally.finish(ctx)
}

fn decimal(b: &BigFloat, digits: u32) -> String {
    b.to_decimal(digits)
}

fn sum(ctx: &mut Ctx, family: &str, x: &str) -> Res<()> {
    let family: Family = family.parse().map_err(usage("family"))?;
    let x = parse_rational(x).map_err(CliError::Usage)?;
    let params = ctx.params()?;
    let digits = ctx.digits()?;
    let e = evaluate_sum(&params, family, &x, digits)?;
    let reference = reference_sums().into_iter().find(|r| r.family == family && r.x == x && r.params() == params);
    let constant = match &reference {
        Some(r) => Some((r.constant.formula(), r.constant.evaluate(digits + 4)?)),
        None => None,
    };
    // a published constant must sit within the tail bound of the partial sum
    let constant_ok = constant.as_ref().map(|(_, c)| {
        let gap = (&BigFloat::exact(e.partial_sum.clone()) - c).abs();
        gap.hi() <= &(&e.tail_bound + c.width())
    });
    match ctx.format() {
        Format::Plain => {
            let mut text = summary(&e, digits);
            text.push('\n');
            if let (Some((f, c)), Some(ok)) = (&constant, constant_ok) {
                text.push_str(&format!(
                    "published constant {f} = {}: {}\n",
                    decimal(c, digits + 2),
                    if ok { "agrees" } else { "DISAGREES" }
                ));
            }
            ctx.emit(&text)?;
        }
        Format::Structured => {
            let mut v = json!({
                "family": family.name(),
                "params": params_json(&params),
                "x": structured(&x),
                "digits": digits,
                "partial_sum": structured(&e.partial_sum),
                "partial_sum_decimal": decimal(&BigFloat::exact(e.partial_sum.clone()), digits + 2),
                "terms_used": e.terms_used,
                "tail_bound": structured(&e.tail_bound),
                "ratio": structured(&e.ratio),
                "ratio_index": e.ratio_index,
                "closed_form": { "lo": structured(e.closed_form.lo()), "hi": structured(e.closed_form.hi()),
                                 "decimal": decimal(&e.closed_form, digits + 2) },
                "max_difference": structured(e.max_difference()),
                "verdict": e.verdict,
            });
            if let (Some((f, c)), Some(ok)) = (&constant, constant_ok) {
                v["published_constant"] = json!({ "formula": f, "decimal": decimal(c, digits + 2), "agrees": ok });
            }
            ctx.emit_json(&v)?;
        }
    }
    if !e.verdict || constant_ok == Some(false) {
        return Err(CliError::Mismatch(format!("{} at x={x}: partial sum and closed form disagree", family.name())));
    }
    Ok(())
}

fn oeis_cmd(ctx: &mut Ctx, a: &crate::OeisArgs) -> Res<()> {
    if a.prefix == 0 {
        return Err(CliError::Usage("--prefix must be positive".into()));
    }
    let resolver = Resolver { fetch: ctx.cfg.fetch, cache_dir: ctx.cfg.cache_dir.clone(), local: a.bfile.clone() };
    let bindings: Vec<Binding> = match (&a.id, a.all) {
        (None, false) => return Err(CliError::Usage("give an A-number or --all".into())),
        (None, true) => oeis::table_bindings().into_iter().chain(oeis::product_bindings()).collect(),
        (Some(id), _) => match &a.kind {
            Some(kind) => {
                let target = match kind.as_str() {
                    "fib" | "F" => Target::Fib,
                    "lucas" | "L" => Target::Lucas,
                    other => return Err(CliError::Usage(format!("--kind must be fib or lucas, not `{other}`"))),
                };
                let p = ctx.params()?;
                vec![Binding { id: id.clone(), target, a: p.a().clone(), b: p.b().clone(), shift: a.shift }]
            }
            None => {
                let found = oeis::bindings_for(id);
                if found.is_empty() {
                    return Err(CliError::Usage(format!(
                        "no known binding for {id}; pass --kind fib|lucas with --a/--b to test one"
                    )));
                }
                found
            }
        },
    };
    let mut lines = Vec::new();
    let mut records = Vec::new();
    let (mut mismatches, mut unavailable) = (0, Vec::new());
    for b in &bindings {
        match resolver.resolve(&b.id).and_then(|f| oeis::compare(&f, b, a.prefix)) {
            Ok(rep) => {
                if !rep.passed() {
                    mismatches += 1;
                }
                lines.push(rep.to_string());
                records.push(json!({ "binding": b.to_string(), "source": rep.source.to_string(),
                                     "match": rep.passed(), "report": rep.to_string() }));
            }
            // with --all, a missing file is reported and the run continues
            Err(e @ CliError::Environment(_)) if a.all => {
                lines.push(format!("{b}: UNAVAILABLE ({e})"));
                records.push(json!({ "binding": b.to_string(), "match": Value::Null, "report": e.to_string() }));
                unavailable.push(e);
            }
            Err(e) => return Err(e),
        }
    }
    match ctx.format() {
        Format::Plain => ctx.emit(&lines.iter().map(|l| format!("{l}\n")).collect::<String>())?,
        Format::Structured => ctx.emit_json(&json!({ "prefix": a.prefix, "results": records }))?,
    }
    if mismatches > 0 {
        Err(CliError::Mismatch(format!("{mismatches} of {} bindings did not match", bindings.len())))
    } else if let Some(e) = unavailable.into_iter().next() {
        Err(e)
    } else {
        Ok(())
    }
}

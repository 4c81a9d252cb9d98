use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde::Serialize;

use polspec::exactnum::{is_prime, parse_bigint, NormalizedValuation};
use polspec::polygons::{hodge_polygon, newton_polygon, np_ge_hp, NpHpComparison, Polygon, PolygonJson};
use polspec::varieties::{ModelDescriptor, VarietyModel};
use polspec::verify::{full_report, Status};
use polspec::zeta::{lefschetz_number, zeta_functional_equation, zeta_series_consistency, ZetaFunction};
use polspec::Error;

use crate::svg::render;
use crate::Output;

pub const INPUT_SCHEMA: &str = include_str!("../../../docs/schema.json");
pub const REPORT_SCHEMA: &str = include_str!("../../../docs/report.schema.json");

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }
}

/// Input-side errors exit with 2, anything raised after the model is built
/// with 3.
fn input_error(e: Error) -> CliError {
    CliError::usage(e.to_string())
}

fn internal_error(e: Error) -> CliError {
    CliError::internal(e.to_string())
}

type CmdResult = Result<u8, CliError>;

fn load(path: &Path) -> Result<VarietyModel, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let descriptor = ModelDescriptor::from_json(&text).map_err(input_error)?;
    descriptor.build().map_err(input_error)
}

fn parse_prime(s: &str) -> Result<BigInt, CliError> {
    let p = parse_bigint(s.trim()).map_err(input_error)?;
    if !is_prime(&p) {
        return Err(CliError::usage(format!("{p} is not prime")));
    }
    Ok(p)
}

fn default_primes(q: &BigInt) -> Vec<BigInt> {
    let mut dividing = Vec::new();
    let mut coprime = Vec::new();
    let mut p = BigInt::from(2);
    while &p <= q || coprime.len() < 2 {
        if is_prime(&p) {
            if (q % &p) == BigInt::from(0) {
                dividing.push(p.clone());
            } else if coprime.len() < 2 {
                coprime.push(p.clone());
            }
        }
        p += 1;
    }
    dividing.extend(coprime);
    dividing
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::internal(format!("cannot write {}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}

pub fn verify(
    out: &Output,
    input: &Path,
    primes: Option<&[String]>,
    precision: u32,
    report_path: Option<&Path>,
) -> CmdResult {
    let model = load(input)?;
    let primes = match primes {
        Some(list) => list.iter().map(|s| parse_prime(s)).collect::<Result<Vec<_>, _>>()?,
        None => default_primes(model.q()),
    };
    if precision < 30 {
        return Err(CliError::usage(format!("precision {precision} is below 30 digits")));
    }
    let report = full_report(&model, &primes, precision).map_err(internal_error)?;
    let json = report.to_json();
    if let Some(path) = report_path {
        write_file(path, &json)?;
    }
    if out.json_only {
        println!("{json}");
    }

    let mut lines = vec![format!(
        "model: {:?}, d = {}, q = {}, betti = {:?}, primes = {}",
        report.model.kind,
        report.model.dimension,
        report.model.q,
        report.model.betti,
        report.primes.join(",")
    )];
    for w in &report.model.warnings {
        lines.push(format!("warning: {w}"));
    }
    let count = |s: Status| report.checks.iter().filter(|c| c.status == s).count();
    lines.push(format!(
        "checks: {} pass, {} fail, {} not applicable, {} incomparable",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::NotApplicable),
        count(Status::Incomparable)
    ));
    for c in report.checks.iter().filter(|c| c.status == Status::Fail) {
        let place = match (&c.degree, &c.prime) {
            (Some(i), Some(p)) => format!(" H^{i} at {p}"),
            (Some(i), None) => format!(" H^{i}"),
            _ => String::new(),
        };
        let note = if c.check.is_advisory() { " (advisory)" } else { "" };
        lines.push(format!(
            "FAIL {}{place}{note}: {}",
            c.check.as_str(),
            serde_json::Value::Object(c.witness.clone())
        ));
    }
    lines.push(if report.passed() { "verdict: pass".into() } else { "verdict: fail".into() });
    out.human(&lines.join("\n"));
    Ok(if report.passed() { 0 } else { 1 })
}

#[derive(Serialize)]
struct PolygonsOutput {
    prime: String,
    degree: u32,
    normalizer: u64,
    newton: PolygonJson,
    hodge: Option<PolygonJson>,
    comparison: Option<NpHpComparison>,
}

pub fn polygons(out: &Output, input: &Path, prime: &str, degree: u32, svg_path: Option<&Path>) -> CmdResult {
    let model = load(input)?;
    let prime = parse_prime(prime)?;
    let top = 2 * model.dimension();
    if degree > top {
        return Err(CliError::usage(format!("degree {degree} is outside 0..={top}")));
    }
    let action = model.action(degree).expect("degree in range");
    if action.betti == 0 {
        return Err(CliError::usage(format!("H^{degree} is zero; there is no polygon")));
    }
    let v = NormalizedValuation::new(prime.clone(), model.q().clone()).map_err(input_error)?;
    let np = newton_polygon(&action.charpoly, &v).map_err(internal_error)?;
    let hp = model.hodge(degree).map(|h| hodge_polygon(degree, h)).transpose().map_err(internal_error)?;
    let result = PolygonsOutput {
        prime: prime.to_string(),
        degree,
        normalizer: v.normalizer(),
        newton: np.to_json(),
        hodge: hp.as_ref().map(Polygon::to_json),
        comparison: (v.divides_q()).then(|| hp.as_ref().map(|hp| np_ge_hp(&np, hp))).flatten(),
    };
    if let Some(path) = svg_path {
        let title = format!("H^{degree}, prime {prime}");
        write_file(path, &render(&result.newton, result.hodge.as_ref(), &title))?;
    }
    if out.json_only || !out.quiet {
        println!("{}", to_json(&result));
    }
    Ok(0)
}

#[derive(Serialize)]
struct ZetaOutput {
    numerator: Vec<String>,
    denominator: Vec<String>,
    chi: i64,
    functional_equation: Option<FunctionalEquationOutput>,
    not_applicable: Option<String>,
    order: usize,
    lefschetz_numbers: Vec<String>,
    series_consistent: bool,
}

#[derive(Serialize)]
struct FunctionalEquationOutput {
    holds: bool,
    sign: Option<i8>,
    expected_sign: i8,
    mu: u32,
}

pub fn zeta(out: &Output, input: &Path, order: usize) -> CmdResult {
    let model = load(input)?;
    if order == 0 {
        return Err(CliError::usage("--order must be at least 1"));
    }
    let z = ZetaFunction::of(&model);
    let (functional_equation, not_applicable) = match zeta_functional_equation(&model) {
        Ok(r) => (
            Some(FunctionalEquationOutput {
                holds: r.holds,
                sign: r.sign,
                expected_sign: r.expected_sign,
                mu: r.mu,
            }),
            None,
        ),
        Err(Error::NotApplicable(reason)) => (None, Some(reason)),
        Err(e) => return Err(internal_error(e)),
    };
    let lefschetz_numbers = (1..=order)
        .map(|n| lefschetz_number(&model, n).map(|x| x.to_string()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(internal_error)?;
    let series_consistent = zeta_series_consistency(&model, order).map_err(internal_error)?;
    let failed = !series_consistent
        || not_applicable.is_some()
        || functional_equation
            .as_ref()
            .is_some_and(|f| !f.holds || f.sign != Some(f.expected_sign));
    let result = ZetaOutput {
        numerator: z.numerator.to_strings(),
        denominator: z.denominator.to_strings(),
        chi: z.chi,
        functional_equation,
        not_applicable,
        order,
        lefschetz_numbers,
        series_consistent,
    };
    if out.json_only {
        println!("{}", to_json(&result));
    } else if !out.quiet {
        println!("Z(t) = ({}) / ({})", z.numerator, z.denominator);
        println!("chi = {}", z.chi);
        match (&result.functional_equation, &result.not_applicable) {
            (Some(f), _) => println!(
                "functional equation: {} (sign {}, expected {}, mu = {})",
                if f.holds { "holds" } else { "fails" },
                f.sign.map_or("none".to_string(), |s| s.to_string()),
                f.expected_sign,
                f.mu
            ),
            (None, Some(reason)) => println!("functional equation: not applicable ({reason})"),
            (None, None) => {}
        }
        println!("N_1..N_{order} = {}", result.lefschetz_numbers.join(", "));
        println!("series check to order {order}: {}", if series_consistent { "pass" } else { "fail" });
    }
    Ok(if failed { 1 } else { 0 })
}

pub fn schema(report: bool) -> CmdResult {
    print!("{}", if report { REPORT_SCHEMA } else { INPUT_SCHEMA });
    Ok(0)
}

//! Command-line front end: `gen`, `analyze`, `verify` and `hamilton`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{format_rational, RationalMatrix};
use crate::boundary::{binomial_identities, is_boundary, mqk_boundary_sum, mqk_eigenvalues, mqk_pi_closed_form, products};
use crate::doubles::{bipartite_double, diameter_report, verify_distance_relations};
use crate::drg::{
    check_distance_regular, distance_matrix_mismatches, distance_polynomials, hoffman_report, mqk_intersection_array,
    odd_intersection_array, IntersectionArray, MATRIX_IDENTITY_MAX_ORDER,
};
use crate::families::{odd_graph, verify_mqk_fold, verify_mqk_isomorphism, Family, FamilySpec};
use crate::graph::Graph;
use crate::hamilton::{find_hamilton_cycle, is_hamilton_cycle, HamiltonResult, HamiltonStatus, DEFAULT_BUDGET};
use crate::spectral::{
    char_poly_spectrum, double_char_poly_sides, double_spectrum, eigenspace_basis, extended_char_poly_sides,
    hypercube_spectrum, integer_spectrum, lift_eigenvector, mqk_spectrum, odd_spectrum, verify_lift, LiftSign,
    Spectrum, CHAR_POLY_MAX_ORDER,
};

pub const REPORT_SCHEMA: u32 = 1;

/// Largest order for eigenvector lifting and graph-level boundary checks.
const LIFT_MAX_ORDER: usize = 256;

#[derive(Debug, Parser)]
#[command(name = "middle-cube", version, about = "Exact spectral and metric checks for middle cube graphs")]
pub struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Output format for `gen`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Edges)]
    pub format: Format,
    /// Node expansion budget for `hamilton`.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Comma-separated checks for `analyze` (default: all).
    #[arg(long, global = true, value_enum, value_delimiter = ',')]
    pub checks: Option<Vec<Check>>,
    /// Add per-check wall times to `analyze` reports.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a family member as an edge list, DOT or JSON.
    Gen { spec: String },
    /// Run analysis checks and print a JSON report.
    Analyze { target: String },
    /// Check one identity and print both sides.
    Verify { theorem: Theorem, target: String },
    /// Search for a Hamilton cycle.
    Hamilton { target: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Edges,
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Spectrum,
    Drg,
    Boundary,
    Antipodal,
    Diameter,
    Hoffman,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Spectrum,
        Check::Drg,
        Check::Boundary,
        Check::Antipodal,
        Check::Diameter,
        Check::Hoffman,
    ];
}

/// Parses a comma-separated list such as `spectrum,drg`.
pub fn parse_checks(csv: &str) -> Result<Vec<Check>, CliError> {
    csv.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Check::from_str(s, true).map_err(|_| CliError(format!("unknown check {s:?}"))))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    DoubleCharpoly,
    ExtendedCharpoly,
    DoubleSpectrum,
    EigenvectorLift,
    DistanceRelations,
    DiameterBound,
    MqkIsomorphism,
    HoffmanIdentity,
    BoundaryIdentities,
}

/// Usage or input problems; these exit with status 2.
#[derive(Debug, Error)]
#[error("{0}")]
pub struct CliError(pub String);

fn input_error(e: impl std::fmt::Display) -> CliError {
    CliError(e.to_string())
}

/// Text to emit and the exit status: 0 success, 1 a check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: u8,
}

impl Outcome {
    fn new(output: String, ok: bool) -> Self {
        Self {
            output,
            code: u8::from(!ok),
        }
    }
}

/// A graph together with the family it came from, if any.
pub struct Target {
    pub name: String,
    pub spec: Option<FamilySpec>,
    pub graph: Graph,
}

/// Reads `family:param` specs, falling back to an edge-list file path.
pub fn load_target(text: &str) -> Result<Target, CliError> {
    match text.parse::<FamilySpec>() {
        Ok(spec) => Ok(Target {
            name: spec.to_string(),
            spec: Some(spec),
            graph: spec.build().map_err(input_error)?,
        }),
        Err(spec_err) => {
            let path = Path::new(text);
            if !path.is_file() {
                return Err(CliError(format!("{spec_err}, and no file named {text:?} exists")));
            }
            let data = std::fs::read_to_string(path).map_err(|e| CliError(format!("{text}: {e}")))?;
            let graph = Graph::parse_edge_list(&data).map_err(|e| CliError(format!("{text}: {e}")))?;
            Ok(Target {
                name: text.to_string(),
                spec: None,
                graph,
            })
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Gen { spec } => cmd_gen(spec, cli.format),
        Command::Analyze { target } => {
            let checks = cli.checks.clone().unwrap_or_else(|| Check::ALL.to_vec());
            cmd_analyze(&load_target(target)?, &checks, cli.timing)
        }
        Command::Verify { theorem, target } => cmd_verify(*theorem, &load_target(target)?),
        Command::Hamilton { target } => cmd_hamilton(&load_target(target)?, cli.budget),
    }
}

pub fn cmd_gen(spec: &str, format: Format) -> Result<Outcome, CliError> {
    let spec: FamilySpec = spec.parse().map_err(input_error)?;
    let g = spec.build().map_err(input_error)?;
    let output = match format {
        Format::Edges => g.to_edge_list(),
        Format::Dot => g.to_dot(),
        Format::Json => to_json(&g.to_json()),
    };
    Ok(Outcome::new(output, true))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct CheckEntry {
    name: Check,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

type CheckResult = Result<(bool, Value), String>;

fn closed_form_spectrum(spec: Option<FamilySpec>) -> Option<Spectrum> {
    let spec = spec?;
    match spec.family {
        Family::MiddleCube => mqk_spectrum(spec.parameter).ok(),
        Family::Odd => odd_spectrum(spec.parameter).ok(),
        Family::Hypercube => hypercube_spectrum(spec.parameter).ok(),
        Family::Petersen => odd_spectrum(3).ok(),
        _ => None,
    }
}

fn closed_form_array(spec: Option<FamilySpec>) -> Option<IntersectionArray> {
    let spec = spec?;
    match spec.family {
        Family::MiddleCube => mqk_intersection_array(spec.parameter).ok(),
        Family::Odd => odd_intersection_array(spec.parameter).ok(),
        Family::Petersen => odd_intersection_array(3).ok(),
        _ => None,
    }
}

fn mq_parameter(spec: Option<FamilySpec>) -> Option<u32> {
    spec.filter(|s| s.family == Family::MiddleCube && s.parameter >= 2)
        .map(|s| s.parameter)
}

fn check_spectrum(t: &Target) -> CheckResult {
    let g = &t.graph;
    let sp = integer_spectrum(g).map_err(|e| e.to_string())?;
    let consistent = sp.is_consistent_with(g);
    let closed = closed_form_spectrum(t.spec).map(|c| c == sp);
    let by_char_poly = (g.order() <= CHAR_POLY_MAX_ORDER)
        .then(|| char_poly_spectrum(g).map(|c| c == sp))
        .transpose()
        .map_err(|e| e.to_string())?;
    let passed = consistent && closed != Some(false) && by_char_poly != Some(false);
    Ok((
        passed,
        json!({
            "spectrum": sp,
            "consistent": consistent,
            "closed_form_agrees": closed,
            "char_poly_agrees": by_char_poly,
        }),
    ))
}

fn check_drg(t: &Target) -> CheckResult {
    let cert = check_distance_regular(&t.graph).map_err(|e| e.to_string())?;
    let closed = match (&cert.array, closed_form_array(t.spec)) {
        (Some(found), Some(expected)) => Some(*found == expected),
        _ => None,
    };
    let passed = cert.is_drg && closed != Some(false);
    Ok((passed, json!({ "certificate": cert, "closed_form_agrees": closed })))
}

fn check_boundary(t: &Target) -> CheckResult {
    let report = is_boundary(&t.graph).map_err(|e| e.to_string())?;
    let passed = report.is_boundary && report.conventions_agree;
    Ok((passed, serde_json::to_value(&report).expect("serializes")))
}

fn check_antipodal(t: &Target) -> CheckResult {
    let cert = t.graph.antipodal_certificate().map_err(|e| e.to_string())?;
    let fold = mq_parameter(t.spec).map(|k| verify_mqk_fold(k).is_ok());
    let passed = cert.is_antipodal && fold != Some(false);
    Ok((passed, json!({ "certificate": cert, "fold_matches_odd_graph": fold })))
}

fn check_diameter(t: &Target) -> CheckResult {
    let g = &t.graph;
    let diameter = g.diameter().map_err(|e| e.to_string())?;
    if g.is_bipartite() {
        // The graph may itself be a double; compare against O_k when known.
        let via_odd = match mq_parameter(t.spec) {
            Some(k) => {
                let r = odd_graph(k)
                    .map_err(|e| e.to_string())
                    .and_then(|o| diameter_report(&o).map_err(|e| e.to_string()))?;
                Some(r.double_diameter == diameter && diameter == 2 * k as usize - 1)
            }
            None => None,
        };
        Ok((
            via_odd != Some(false),
            json!({ "diameter": diameter, "bipartite": true, "matches_double_of_odd_graph": via_odd }),
        ))
    } else {
        let report = diameter_report(g).map_err(|e| e.to_string())?;
        Ok((report.passed(), json!({ "diameter": diameter, "bipartite": false, "double": report })))
    }
}

fn check_hoffman(t: &Target) -> CheckResult {
    let g = &t.graph;
    let cert = check_distance_regular(g).map_err(|e| e.to_string())?;
    let array = cert
        .array
        .ok_or_else(|| "graph is not distance-regular".to_string())?;
    let polys = distance_polynomials(&array);
    let report = hoffman_report(g, &polys).map_err(|e| e.to_string())?;
    let mismatches = (g.order() <= MATRIX_IDENTITY_MAX_ORDER)
        .then(|| distance_matrix_mismatches(g, &polys))
        .transpose()
        .map_err(|e| e.to_string())?;
    let distance_ok = mismatches.as_ref().map(Vec::is_empty);
    Ok((
        report.passed() && distance_ok != Some(false),
        json!({
            "polynomials": polys,
            "hoffman": report,
            "distance_matrices_agree": distance_ok,
            "mismatched_levels": mismatches,
        }),
    ))
}

fn run_check(check: Check, t: &Target) -> CheckResult {
    match check {
        Check::Spectrum => check_spectrum(t),
        Check::Drg => check_drg(t),
        Check::Boundary => check_boundary(t),
        Check::Antipodal => check_antipodal(t),
        Check::Diameter => check_diameter(t),
        Check::Hoffman => check_hoffman(t),
    }
}

pub fn cmd_analyze(t: &Target, checks: &[Check], timing: bool) -> Result<Outcome, CliError> {
    let g = &t.graph;
    let results: Vec<(CheckEntry, f64)> = checks
        .par_iter()
        .map(|&check| {
            let start = Instant::now();
            let result = run_check(check, t);
            let elapsed = start.elapsed().as_secs_f64() * 1000.0;
            let entry = match result {
                Ok((passed, detail)) => CheckEntry {
                    name: check,
                    passed,
                    detail: Some(detail),
                    error: None,
                },
                Err(error) => CheckEntry {
                    name: check,
                    passed: false,
                    detail: None,
                    error: Some(error),
                },
            };
            (entry, elapsed)
        })
        .collect();
    let all_passed = results.iter().all(|(e, _)| e.passed);
    let mut report = json!({
        "schema": REPORT_SCHEMA,
        "target": t.name,
        "order": g.order(),
        "size": g.size(),
        "regular_degree": g.regular_degree(),
        "bipartite": g.is_bipartite(),
        "diameter": g.diameter().ok(),
        "all_passed": all_passed,
    });
    let timings: serde_json::Map<String, Value> = results
        .iter()
        .map(|(e, ms)| (serde_json::to_value(e.name).unwrap().as_str().unwrap().to_string(), json!(ms)))
        .collect();
    report["checks"] = json!(results.into_iter().map(|(e, _)| e).collect::<Vec<_>>());
    if timing {
        report["timing_ms"] = Value::Object(timings);
    }
    Ok(Outcome::new(to_json(&report), all_passed))
}

/// Printed form of a verification: labelled lines and the verdict.
struct Verification {
    lines: Vec<(String, String)>,
    holds: bool,
}

impl Verification {
    fn new() -> Self {
        Self {
            lines: Vec::new(),
            holds: true,
        }
    }

    fn line(&mut self, label: impl Into<String>, value: impl ToString) -> &mut Self {
        self.lines.push((label.into(), value.to_string()));
        self
    }

    fn require(&mut self, ok: bool) -> &mut Self {
        self.holds &= ok;
        self
    }
}

pub fn cmd_verify(theorem: Theorem, t: &Target) -> Result<Outcome, CliError> {
    let g = &t.graph;
    let mut v = Verification::new();
    match theorem {
        Theorem::DoubleCharpoly => {
            let (lhs, rhs) = double_char_poly_sides(g).map_err(input_error)?;
            v.line("charpoly(double)", &lhs)
                .line("(-1)^n phi(x) phi(-x)", &rhs)
                .require(lhs == rhs);
        }
        Theorem::ExtendedCharpoly => {
            let (lhs, rhs) = extended_char_poly_sides(g).map_err(input_error)?;
            v.line("charpoly(extended double)", &lhs)
                .line("(-1)^n phi(x-1) phi(-x-1)", &rhs)
                .require(lhs == rhs);
        }
        Theorem::DoubleSpectrum => {
            let lhs = integer_spectrum(&bipartite_double(g).graph).map_err(input_error)?;
            let rhs = double_spectrum(&integer_spectrum(g).map_err(input_error)?).map_err(input_error)?;
            v.line("spectrum(double)", &lhs)
                .line("doubled spectrum", &rhs)
                .require(lhs == rhs);
        }
        Theorem::EigenvectorLift => verify_lifts(g, &mut v)?,
        Theorem::DistanceRelations => {
            let r = verify_distance_relations(g);
            v.line("pairs checked", r.pairs_checked);
            if let Some(c) = &r.counterexample {
                v.line("counterexample", serde_json::to_string(c).expect("serializes"));
            }
            v.require(r.holds);
        }
        Theorem::DiameterBound => {
            let r = diameter_report(g).map_err(input_error)?;
            v.line("D", r.source_diameter)
                .line("D~", r.double_diameter)
                .line("2D+1", 2 * r.source_diameter + 1)
                .line("equality", r.equality_holds)
                .line(
                    "certificate vertex",
                    r.certificate_vertex.map_or("none".into(), |c| c.to_string()),
                )
                .require(r.passed());
        }
        Theorem::MqkIsomorphism => {
            let k = match t.spec {
                Some(s) if matches!(s.family, Family::MiddleCube | Family::Odd) => s.parameter,
                Some(s) if s.family == Family::Petersen => 3,
                _ => return Err(CliError("mqk-isomorphism needs a middle-cube:k or odd:k target".into())),
            };
            let result = verify_mqk_isomorphism(k);
            v.line("k", k)
                .line("double(O_k) order", 2 * odd_graph(k).map_err(input_error)?.order())
                .line("map", result.as_ref().map_or_else(|e| e.to_string(), |m| format!("{m:?}")))
                .require(result.is_ok());
        }
        Theorem::HoffmanIdentity => {
            let array = check_distance_regular(g)
                .map_err(input_error)?
                .array
                .ok_or_else(|| CliError("target is not distance-regular".into()))?;
            let report = hoffman_report(g, &distance_polynomials(&array)).map_err(input_error)?;
            v.line("H(x)", &report.hoffman)
                .line(
                    "H(A) = J",
                    report.matrix_identity.map_or("skipped (above size cap)".into(), |b| b.to_string()),
                )
                .line("H(k)", format_rational(&report.value_at_degree))
                .line("n", report.order)
                .require(report.passed());
        }
        Theorem::BoundaryIdentities => verify_boundary(t, &mut v)?,
    }
    let mut out = format!("theorem: {}\ntarget: {}\n", theorem_name(theorem), t.name);
    for (label, value) in &v.lines {
        let _ = writeln!(out, "{label}: {value}");
    }
    let _ = writeln!(out, "holds: {}", v.holds);
    Ok(Outcome::new(out, v.holds))
}

fn theorem_name(t: Theorem) -> String {
    t.to_possible_value().expect("named").get_name().to_string()
}

fn verify_lifts(g: &Graph, v: &mut Verification) -> Result<(), CliError> {
    if g.order() > LIFT_MAX_ORDER {
        return Err(CliError(format!(
            "order {} exceeds the eigenvector lift cap of {LIFT_MAX_ORDER}",
            g.order()
        )));
    }
    let sp = integer_spectrum(g).map_err(input_error)?;
    let n = g.order();
    for (lambda, m) in sp.pairs() {
        let basis = eigenspace_basis(g, lambda);
        let mut exact = basis.len() == *m;
        let mut rows = Vec::with_capacity(2 * basis.len());
        for b in &basis {
            exact &= verify_lift(g, b).map_err(input_error)?.all();
            rows.push(lift_eigenvector(b, LiftSign::Plus).charges);
            rows.push(lift_eigenvector(b, LiftSign::Minus).charges);
        }
        let rank = RationalMatrix::from_fn(rows.len(), 2 * n, |i, j| rows[i][j].clone()).rank();
        v.line(
            format!("lambda {}", format_rational(lambda)),
            format!(
                "basis {}, lifts exact {}, lifted rank {} of {}",
                basis.len(),
                exact,
                rank,
                2 * m
            ),
        )
        .require(exact && rank == 2 * m);
    }
    if !sp.is_rational() {
        v.line("residual (not lifted)", sp.residual());
    }
    Ok(())
}

fn verify_boundary(t: &Target, v: &mut Verification) -> Result<(), CliError> {
    match mq_parameter(t.spec) {
        Some(k) => {
            let closed: Vec<String> = (0..2 * k)
                .map(|i| mqk_pi_closed_form(k, i).map(|p| p.to_string()))
                .collect::<Result<_, _>>()
                .map_err(input_error)?;
            let direct = products(&mqk_eigenvalues(k)).map_err(input_error)?.pi;
            let direct: Vec<String> = direct.iter().map(format_rational).collect();
            let sum = mqk_boundary_sum(k).map_err(input_error)?;
            let ids = binomial_identities(k);
            let order = t.graph.order();
            v.line("pi (closed form)", closed.join(", "))
                .line("pi (products)", direct.join(", "))
                .line("sum pi_0/pi_i", format_rational(&sum.full))
                .line("order", order)
                .line(
                    "binomial identity 1",
                    format!("{} = {}", format_rational(&ids.first[0]), format_rational(&ids.first[1])),
                )
                .line(
                    "binomial identity 2",
                    format!("{} = {}", format_rational(&ids.second[0]), format_rational(&ids.second[1])),
                )
                .require(closed == direct && sum.full == crate::algebra::rational(order as i64) && ids.hold());
            if order <= LIFT_MAX_ORDER {
                let r = is_boundary(&t.graph).map_err(input_error)?;
                v.line("graph sum", format_rational(&r.sum))
                    .require(r.is_boundary && r.conventions_agree);
            }
        }
        None => {
            let r = is_boundary(&t.graph).map_err(input_error)?;
            v.line("sum pi_0/pi_i", format_rational(&r.sum))
                .line("order", r.order)
                .line(
                    "P(l_0) + 1",
                    r.alternating_at_largest
                        .as_ref()
                        .map_or("n/a".into(), |p| format_rational(&(p + crate::algebra::rational(1)))),
                )
                .require(r.is_boundary && r.conventions_agree);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct HamiltonReport<'a> {
    schema: u32,
    target: &'a str,
    budget: u64,
    #[serde(flatten)]
    result: &'a HamiltonResult,
    valid: Option<bool>,
}

pub fn cmd_hamilton(t: &Target, budget: u64) -> Result<Outcome, CliError> {
    Ok(hamilton_outcome(t, budget).1)
}

/// Runs the search once and returns the raw result alongside its report.
pub fn hamilton_outcome(t: &Target, budget: u64) -> (HamiltonResult, Outcome) {
    let result = find_hamilton_cycle(&t.graph, budget);
    let valid = result.cycle.as_ref().map(|c| is_hamilton_cycle(&t.graph, c));
    let ok = match result.status {
        HamiltonStatus::Found => valid == Some(true),
        HamiltonStatus::ProvenNone => true,
        HamiltonStatus::NotFoundWithinBudget => false,
    };
    let report = HamiltonReport {
        schema: REPORT_SCHEMA,
        target: &t.name,
        budget,
        result: &result,
        valid,
    };
    let outcome = Outcome::new(to_json(&report), ok);
    (result, outcome)
}

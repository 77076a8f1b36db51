//! The four command-line operations as pure functions from input text to
//! output text, so they can be driven by the binary, by tests and by the
//! browser demo alike.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::io::{parse_problem, Problem, ProblemDocument, ProblemKind, SolutionDocument};
use crate::linalg::{in_span, Matrix, Vector};
use crate::optimizer::{
    complete_solution_with, enumerate_all_selections, enumerate_selections, objective,
    selection_count, selection_generators, verify_optimal, SolveOptions,
};
use crate::plot::{plot_solution, PlotOptions};
use crate::schedule::{
    check_schedule, compact_generators, latest_schedule, solve_schedule_with, span_seminorm,
    ConstraintFamily, ScheduleInstance,
};
use crate::semifield::{MaxPlus, Semifield};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    /// I/O failure, or `verify` rejected a candidate.
    pub const FAILURE: i32 = 1;
    pub const INVALID: i32 = 2;
    pub const INFEASIBLE: i32 = 3;
    pub const BUDGET: i32 = 4;
}

/// Exit code for an error returned by one of the commands.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InfeasiblePrecedence { .. }
        | Error::InfeasibleDeadline
        | Error::SpectralConditionViolated { .. } => exit::INFEASIBLE,
        Error::EnumerationBudgetExceeded { .. } => exit::BUDGET,
        _ => exit::INVALID,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CommandOptions {
    pub solve: SolveOptions,
    /// Merge collinear generator columns of schedule solutions.
    pub compact: bool,
}

/// Solves the problem and returns the solution document as JSON.
pub fn cmd_solve(input: &str, opts: &CommandOptions) -> Result<String> {
    Ok(solve_document(&parse_problem(input)?, opts)?.to_json())
}

pub fn solve_document(doc: &ProblemDocument, opts: &CommandOptions) -> Result<SolutionDocument> {
    match &doc.problem {
        Problem::Span { .. } => {
            let sol = complete_solution_with(&doc.problem.span_problem()?, &opts.solve)?;
            let mut out = SolutionDocument::from_span(doc, &sol);
            // S₀ has no dependent columns, so in particular no collinear ones.
            out.compact = opts.compact;
            Ok(out)
        }
        Problem::Schedule { .. } => {
            let mut sol = solve_schedule_with(&doc.problem.schedule_instance()?, &opts.solve)?;
            if opts.compact {
                sol = compact_generators(&sol);
            }
            Ok(SolutionDocument::from_schedule(doc, &sol, opts.compact))
        }
    }
}

/// What `verify` checks against the problem.
#[derive(Debug, Clone)]
pub enum Candidates {
    /// A document produced by `solve`.
    Solution(Box<SolutionDocument>),
    /// Candidate vectors: `x` for span problems; start times `x` with optional
    /// finish times `y` (default `Ax`) for schedules.
    Vectors { xs: Vec<Vector>, ys: Vec<Vector> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub lines: Vec<String>,
    pub passed: bool,
}

impl VerifyReport {
    fn new() -> Self {
        VerifyReport {
            lines: Vec::new(),
            passed: true,
        }
    }

    fn record(&mut self, ok: bool, what: String) {
        self.passed &= ok;
        self.lines.push(format!("{}: {what}", if ok { "pass" } else { "FAIL" }));
    }

    pub fn to_text(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        let _ = writeln!(out, "{}", if self.passed { "verified" } else { "rejected" });
        out
    }
}

pub fn cmd_verify(input: &str, candidates: &Candidates, opts: &CommandOptions) -> Result<VerifyReport> {
    let doc = parse_problem(input)?;
    let mut report = VerifyReport::new();
    match candidates {
        Candidates::Vectors { xs, ys } => {
            if xs.is_empty() {
                return Err(Error::Validation("no candidate vectors given".into()));
            }
            if !ys.is_empty() && ys.len() != xs.len() {
                return Err(Error::Validation(format!(
                    "{} start-time vectors but {} finish-time vectors",
                    xs.len(),
                    ys.len()
                )));
            }
            for (k, x) in xs.iter().enumerate() {
                match &doc.problem {
                    Problem::Span { .. } => verify_span_vector(&doc, x, &mut report)?,
                    Problem::Schedule { .. } => {
                        let inst = doc.problem.schedule_instance()?;
                        let y = match ys.get(k) {
                            Some(y) => y.clone(),
                            None => inst.a().mul_vec(x)?,
                        };
                        verify_schedule_vectors(&inst, opts, x, &y, &mut report)?;
                    }
                }
            }
        }
        Candidates::Solution(sol) => verify_solution(&doc, sol, opts, &mut report)?,
    }
    Ok(report)
}

fn verify_span_vector(doc: &ProblemDocument, x: &Vector, report: &mut VerifyReport) -> Result<()> {
    let prob = doc.problem.span_problem()?;
    if x.dim() != prob.q().dim() {
        return Err(Error::shape("verify", prob.a().shape(), (x.dim(), 1)));
    }
    let ok = verify_optimal(&prob, x)?;
    let value = objective(&prob, x)?;
    report.record(ok, format!("x = {x}: objective {value}, minimum {}", prob.delta()));
    Ok(())
}

fn verify_schedule_vectors(
    inst: &ScheduleInstance,
    opts: &CommandOptions,
    x: &Vector,
    y: &Vector,
    report: &mut VerifyReport,
) -> Result<()> {
    let delta = solve_schedule_with(inst, &opts.solve)?.delta;
    let checks = check_schedule(inst, x, y)?;
    let mut what = format!("x = {x}, y = {y}: span {}, minimum {delta}", checks.span);
    for (fam, row) in checks.violations() {
        let _ = write!(what, "; {fam} row {} violated", row + 1);
    }
    report.record(checks.all_pass() && checks.span == delta, what);
    Ok(())
}

fn same_span(a: &Matrix, b: &Matrix) -> Result<bool> {
    for c in b.columns() {
        if !in_span(a, &c)? {
            return Ok(false);
        }
    }
    for c in a.columns() {
        if !in_span(b, &c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn verify_solution(
    doc: &ProblemDocument,
    sol: &SolutionDocument,
    opts: &CommandOptions,
    report: &mut VerifyReport,
) -> Result<()> {
    let kind = doc.problem.kind();
    report.record(sol.kind == kind, format!("document kind {:?}", sol.kind));
    if sol.kind != kind {
        return Ok(());
    }
    report.record(
        sol.input_sha256 == doc.sha256(),
        format!("input hash {}", sol.input_sha256),
    );

    let prob = doc.problem.span_problem()?;
    report.record(
        sol.delta == *prob.delta(),
        format!("minimum {} (recomputed {})", sol.delta, prob.delta()),
    );
    if sol.generators.rows() != prob.q().dim() {
        return Err(Error::shape("verify", prob.a().shape(), sol.generators.shape()));
    }
    for (j, c) in sol.generators.columns().enumerate() {
        let ok = verify_optimal(&prob, &c)? && objective(&prob, &c)? == *prob.delta();
        report.record(ok, format!("generator {} = {c} attains the minimum", j + 1));
    }
    let reference = complete_solution_with(&prob, &opts.solve)?;
    let reference = reference.generators.generators();
    match kind {
        ProblemKind::Span => report.record(
            same_span(&sol.generators, reference)?,
            "generators span the complete solution set".into(),
        ),
        ProblemKind::Schedule => {
            // Compaction may drop columns of S₀ whose images under the
            // precedence closure are redundant, so completeness is judged on x.
            let inst = doc.problem.schedule_instance()?;
            let x_gen = sol
                .x_generators
                .as_ref()
                .ok_or_else(|| Error::Validation("schedule solution lacks `x_generators`".into()))?;
            report.record(
                same_span(x_gen, &inst.precedence_star().mul(reference)?)?,
                "x generators span all optimal start times".into(),
            );
            verify_schedule_solution(&inst, sol, report)?;
        }
    }
    Ok(())
}

fn verify_schedule_solution(
    inst: &ScheduleInstance,
    sol: &SolutionDocument,
    report: &mut VerifyReport,
) -> Result<()> {
    let missing = |name: &str| Error::Validation(format!("schedule solution lacks `{name}`"));
    let x_gen = sol.x_generators.as_ref().ok_or_else(|| missing("x_generators"))?;
    let y_gen = sol.y_generators.as_ref().ok_or_else(|| missing("y_generators"))?;
    let bound = sol.coeff_bound.as_ref().ok_or_else(|| missing("coeff_bound"))?;
    if x_gen.shape() != y_gen.shape() || x_gen.rows() != inst.n() || bound.dim() != x_gen.cols() {
        return Err(Error::shape("verify", x_gen.shape(), y_gen.shape()));
    }

    report.record(inst.a().mul(x_gen)? == *y_gen, "y generators equal A times x generators".into());
    report.record(
        same_span(&inst.precedence_star().mul(&sol.generators)?, x_gen)?,
        "x generators span the precedence closure of the generators".into(),
    );
    for (j, (x, y)) in x_gen.columns().zip(y_gen.columns()).enumerate() {
        let checks = check_schedule(inst, &x, &y)?;
        let ok = checks
            .violations()
            .iter()
            .all(|(fam, _)| *fam == ConstraintFamily::LateFinish)
            && span_seminorm(&y)? == sol.delta;
        report.record(ok, format!("generator pair {} meets precedence with span {}", j + 1, checks.span));
    }
    let deadline = crate::inequality::solve_upper_bound(y_gen, inst.f())?;
    report.record(
        bound.le(&deadline),
        format!("coefficient bound {bound} respects the deadlines"),
    );

    let latest = crate::schedule::ScheduleSolution {
        delta: sol.delta.clone(),
        s0: sol.generators.clone(),
        x_generators: x_gen.clone(),
        y_generators: y_gen.clone(),
        coeff_bound: bound.clone(),
        d: inst.d(),
        enumerated_count: sol.statistics.visited,
        pruned_count: sol.statistics.pruned,
    };
    let (x, y) = latest_schedule(&latest)?;
    let checks = check_schedule(inst, &x, &y)?;
    report.record(
        checks.all_pass() && checks.span == sol.delta,
        format!("latest schedule x = {x}, y = {y} is feasible with span {}", checks.span),
    );
    Ok(())
}

/// Lists the selection matrices of the sparsified matrix with the generators
/// each one contributes. With `exhaustive`, every member of the family is
/// listed and those skipped by pruning are marked.
pub fn cmd_enumerate(input: &str, opts: &CommandOptions) -> Result<String> {
    let doc = parse_problem(input)?;
    let prob = doc.problem.span_problem()?;
    let sparse = prob.sparse();
    let mut out = String::new();
    if doc.problem.kind() == ProblemKind::Schedule {
        out.push_str("reduced span problem D = A(B + CA)*, p = 1, q^- = 1^T D\n");
    }
    let _ = writeln!(out, "minimum: {}", prob.delta());
    let _ = writeln!(out, "sparsified: {sparse}");

    let pruned: Vec<_> = enumerate_selections(sparse, prob.p()).collect();
    let listed: Vec<_> = if opts.solve.exhaustive {
        enumerate_all_selections(sparse, prob.p()).collect()
    } else {
        pruned.clone()
    };
    let budget = opts.solve.budget;
    if listed.len() > budget {
        return Err(Error::EnumerationBudgetExceeded {
            budget,
            partial: listed.into_iter().take(budget).collect(),
        });
    }
    for (k, sel) in listed.iter().enumerate() {
        let cols: Vec<String> = sel.chosen_col.iter().map(|j| (j + 1).to_string()).collect();
        let mark = if pruned.contains(sel) { "" } else { " (pruned)" };
        let _ = writeln!(out, "selection {}: columns [{}]{mark}", k + 1, cols.join(", "));
        let _ = writeln!(out, "  A1 = {}", sel.materialize(sparse));
        let _ = writeln!(out, "  S1 = {}", selection_generators(sel, &prob)?.generators());
    }
    let total = selection_count(sparse);
    let _ = writeln!(
        out,
        "visited {} of {total} selections, {} pruned",
        pruned.len(),
        total.saturating_sub(pruned.len() as u128)
    );
    Ok(out)
}

pub fn cmd_plot(input: &str, opts: &CommandOptions, window: (f64, f64)) -> Result<String> {
    let doc = parse_problem(input)?;
    let prob = doc.problem.span_problem()?;
    plot_solution(
        &prob,
        &PlotOptions {
            window,
            solve: opts.solve,
        },
    )
}

/// Parses a candidate vector given on the command line, e.g. `"1 2"` or `"[1, -inf]"`.
pub fn parse_vector(text: &str) -> Result<Vector> {
    text.parse::<Vector<MaxPlus>>()
        .map_err(|e| Error::Validation(format!("bad vector {text:?}: {e}")))
        .and_then(|v| {
            v.iter().try_for_each(MaxPlus::validate)?;
            Ok(v)
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{"kind": "span", "A": [[2, 0], [4, 1]], "p": [5, 2], "q": [1, 2]}"#;
    const SCHEDULE: &str = r#"{
        "kind": "schedule",
        "A": [[3, -1, "-inf"], [-2, 2, 0], [-1, "-inf", 4]],
        "B": [["-inf", "-inf", -3], [2, "-inf", 0], [1, -2, "-inf"]],
        "C": [["-inf", "-inf", "-inf"], [0, "-inf", -3], [-1, "-inf", "-inf"]],
        "f": [7, 7, 7]
    }"#;

    fn vectors(xs: &[&str]) -> Candidates {
        Candidates::Vectors {
            xs: xs.iter().map(|s| parse_vector(s).unwrap()).collect(),
            ys: Vec::new(),
        }
    }

    #[test]
    fn solve_and_verify_round_trip() {
        let opts = CommandOptions::default();
        for input in [SMALL, SCHEDULE] {
            let out = cmd_solve(input, &opts).unwrap();
            assert_eq!(out, cmd_solve(input, &opts).unwrap());
            let sol = crate::io::parse_solution(&out).unwrap();
            let report = cmd_verify(input, &Candidates::Solution(Box::new(sol)), &opts).unwrap();
            assert!(report.passed, "{}", report.to_text());
        }
    }

    #[test]
    fn verify_rejects_tampered_solution() {
        let opts = CommandOptions::default();
        let mut sol = crate::io::parse_solution(&cmd_solve(SMALL, &opts).unwrap()).unwrap();
        sol.generators = "0 -1; 1 0".parse().unwrap();
        assert!(!cmd_verify(SMALL, &Candidates::Solution(Box::new(sol)), &opts).unwrap().passed);
    }

    #[test]
    fn verify_vectors() {
        let opts = CommandOptions::default();
        let report = cmd_verify(SMALL, &vectors(&["1 2", "0 5"]), &opts).unwrap();
        assert!(!report.passed);
        assert!(report.lines[0].starts_with("pass"));
        assert!(report.lines[1].starts_with("FAIL") && report.lines[1].contains("objective 3"));

        let report = cmd_verify(SCHEDULE, &vectors(&["1 5 3"]), &opts).unwrap();
        assert!(report.passed, "{}", report.to_text());

        let lowered = Candidates::Vectors {
            xs: vec![parse_vector("1 5 3").unwrap()],
            ys: vec![parse_vector("3 7 7").unwrap()],
        };
        let report = cmd_verify(SCHEDULE, &lowered, &opts).unwrap();
        assert!(report.lines[0].contains("start-finish row 1 violated"));

        assert!(matches!(
            cmd_verify(SMALL, &vectors(&["1 2 3"]), &opts),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn enumerate_listings() {
        let opts = CommandOptions::default();
        let out = cmd_enumerate(SMALL, &opts).unwrap();
        assert!(out.contains("selection 1: columns [1, 1]\n"));
        assert!(!out.contains("selection 2"));
        assert!(out.contains("visited 1 of 2 selections, 1 pruned"));

        let exhaustive = CommandOptions {
            solve: SolveOptions {
                exhaustive: true,
                ..SolveOptions::default()
            },
            ..opts
        };
        let out = cmd_enumerate(SMALL, &exhaustive).unwrap();
        assert!(out.contains("selection 2: columns [1, 2] (pruned)"));
        assert!(out.contains("S1 = [[0, -1], [-2, 0]]"));

        let out = cmd_enumerate(SCHEDULE, &opts).unwrap();
        assert!(out.contains("selection 1: columns [1, 1, 1]"));
        assert!(out.contains("selection 2: columns [2, 2, 2]"));

        let single = r#"{"kind": "span", "A": [[1], [2]], "p": [0, 0], "q": [0]}"#;
        assert_eq!(cmd_enumerate(single, &opts).unwrap().matches("selection ").count(), 1);
    }

    #[test]
    fn exit_codes() {
        let opts = CommandOptions::default();
        assert_eq!(exit_code(&cmd_solve("", &opts).unwrap_err()), exit::INVALID);
        let cyclic = r#"{"kind": "schedule", "A": [[0]], "B": [[1]], "C": [["-inf"]], "f": [3]}"#;
        assert_eq!(exit_code(&cmd_solve(cyclic, &opts).unwrap_err()), exit::INFEASIBLE);
        let tight = CommandOptions {
            solve: SolveOptions {
                budget: 1,
                exhaustive: false,
            },
            ..opts
        };
        assert_eq!(exit_code(&cmd_solve(SCHEDULE, &tight).unwrap_err()), exit::BUDGET);
        assert_eq!(exit_code(&cmd_enumerate(SCHEDULE, &tight).unwrap_err()), exit::BUDGET);
        assert_eq!(
            cmd_plot(SCHEDULE, &opts, (-10.0, 10.0)).unwrap_err(),
            Error::UnsupportedDimension(3)
        );
    }

    #[test]
    fn compact_schedule_output() {
        let opts = CommandOptions {
            compact: true,
            ..CommandOptions::default()
        };
        let out = cmd_solve(SCHEDULE, &opts).unwrap();
        assert!(out.contains("\"coeff_bound\": [1, 5]"), "{out}");
        let sol = crate::io::parse_solution(&out).unwrap();
        assert!(cmd_verify(SCHEDULE, &Candidates::Solution(Box::new(sol)), &opts).unwrap().passed);
    }
}

//! Just-in-time scheduling: make activities finish as simultaneously as
//! possible under start-finish, start-start, finish-start and late-finish
//! constraints.
//!
//! With start times `x` and finish times `y` the constraints read
//!
//! ```text
//! Ax = y,   Bx <= x,   Cy <= x,   y <= f
//! ```
//!
//! and the objective is the span seminorm `𝟏ᵀy (y⁻𝟏)` of the finish times.
//! Substituting `y = Ax` merges the two precedence families into
//! `(B ⊕ CA)x <= x`, whose solutions are `x = (B ⊕ CA)* u`. The remaining
//! problem is a span problem in `u` with matrix `D = A(B ⊕ CA)*`, `p = 𝟏` and
//! `q⁻ = 𝟏ᵀD`, solved by [`complete_solution_with`]; the deadline becomes an
//! upper bound on the coefficients.

use std::fmt;

use crate::error::{Error, Result};
use crate::inequality::solve_upper_bound;
use crate::linalg::{collinear, Matrix, Vector};
use crate::optimizer::{complete_solution_with, SolveOptions, SpanProblem};
use crate::semifield::{MaxPlus, Scalar, Semifield};

/// Validated scheduling data; all matrices are `n × n` over max-plus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleInstance {
    a: Matrix,
    b: Matrix,
    c: Matrix,
    f: Vector,
    star: Matrix,
    trace: Scalar,
}

impl ScheduleInstance {
    /// Start-finish lags `a`, start-start lags `b`, finish-start lags `c` and
    /// late finish times `f`.
    ///
    /// `A` and `f` must be regular and `Tr(B ⊕ CA) <= 𝟙`; a larger trace means a
    /// precedence cycle with positive total lag.
    pub fn new(a: Matrix, b: Matrix, c: Matrix, f: Vector) -> Result<Self> {
        let n = f.dim();
        for (name, m) in [("A", &a), ("B", &b), ("C", &c)] {
            if m.shape() != (n, n) {
                return Err(Error::ShapeMismatch {
                    op: name,
                    left: m.shape(),
                    right: (n, n),
                });
            }
        }
        if !a.is_regular() {
            return Err(Error::NotRegularMatrix("A".into()));
        }
        if !f.is_regular() {
            return Err(Error::NotRegularVector("f".into()));
        }
        let g = b.add(&c.mul(&a)?)?;
        let trace = g.trace_closure()?;
        if MaxPlus::lt(&MaxPlus::one(), &trace) {
            return Err(Error::InfeasiblePrecedence { trace });
        }
        let star = g.kleene_star()?;
        Ok(ScheduleInstance {
            a,
            b,
            c,
            f,
            star,
            trace,
        })
    }

    pub fn n(&self) -> usize {
        self.f.dim()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    pub fn f(&self) -> &Vector {
        &self.f
    }

    /// `Tr(B ⊕ CA)`.
    pub fn precedence_trace(&self) -> &Scalar {
        &self.trace
    }

    /// `(B ⊕ CA)*`.
    pub fn precedence_star(&self) -> &Matrix {
        &self.star
    }

    /// `D = A(B ⊕ CA)*`.
    pub fn d(&self) -> Matrix {
        self.a.mul(&self.star).expect("square matrices of equal order")
    }

    /// The span problem `(D, 𝟏, q)` with `q⁻ = 𝟏ᵀD`.
    pub fn reduced_problem(&self) -> SpanProblem {
        let d = self.d();
        let n = self.n();
        let q = d.left_mul_vec(&Vector::ones(n)).expect("square").conj();
        SpanProblem::new(d, Vector::ones(n), q).expect("D is regular when A is")
    }
}

/// All optimal schedules: `x = X v`, `y = Y v` for regular `v <= coeff_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleSolution {
    /// Minimum span of the finish times.
    pub delta: Scalar,
    /// Complete solution of the reduced span problem.
    pub s0: Matrix,
    /// `X = (B ⊕ CA)* S₀`.
    pub x_generators: Matrix,
    /// `Y = D S₀ = A X`.
    pub y_generators: Matrix,
    /// `(f⁻Y)⁻`.
    pub coeff_bound: Vector,
    pub d: Matrix,
    pub enumerated_count: usize,
    pub pruned_count: u128,
}

pub fn solve_schedule(inst: &ScheduleInstance) -> Result<ScheduleSolution> {
    solve_schedule_with(inst, &SolveOptions::default())
}

pub fn solve_schedule_with(inst: &ScheduleInstance, opts: &SolveOptions) -> Result<ScheduleSolution> {
    let prob = inst.reduced_problem();
    let sol = complete_solution_with(&prob, opts)?;
    let s0 = sol.generators.generators().clone();
    let x_generators = inst.star.mul(&s0)?;
    let y_generators = prob.a().mul(&s0)?;
    let coeff_bound = solve_upper_bound(&y_generators, &inst.f)?;
    if !coeff_bound.is_regular() {
        return Err(Error::InfeasibleDeadline);
    }
    Ok(ScheduleSolution {
        delta: sol.delta,
        s0,
        x_generators,
        y_generators,
        coeff_bound,
        d: prob.a().clone(),
        enumerated_count: sol.enumerated_count,
        pruned_count: sol.pruned_count,
    })
}

/// Start and finish times for coefficients `v`.
pub fn instantiate(sol: &ScheduleSolution, v: &Vector) -> Result<(Vector, Vector)> {
    if v.dim() != sol.coeff_bound.dim() {
        return Err(Error::shape("instantiate", sol.x_generators.shape(), (v.dim(), 1)));
    }
    if !v.is_regular() {
        return Err(Error::NotRegularVector("v".into()));
    }
    if let Some(k) = (0..v.dim()).find(|&k| MaxPlus::lt(&sol.coeff_bound[k], &v[k])) {
        return Err(Error::CoefficientOutOfBound(k));
    }
    Ok((sol.x_generators.mul_vec(v)?, sol.y_generators.mul_vec(v)?))
}

/// The componentwise latest optimal schedule, obtained at `v = coeff_bound`.
pub fn latest_schedule(sol: &ScheduleSolution) -> Result<(Vector, Vector)> {
    if !sol.coeff_bound.is_regular() {
        return Err(Error::InfeasibleDeadline);
    }
    instantiate(sol, &sol.coeff_bound)
}

/// `max_i y_i - min_i y_i`.
pub fn span_seminorm(y: &Vector) -> Result<Scalar> {
    if !y.is_regular() {
        return Err(Error::NotRegularVector("y".into()));
    }
    Ok(MaxPlus::mul(&y.sum(), &y.conj().sum()))
}

/// Drops every column of `X` that is a scalar multiple of an earlier one and
/// folds its bound into the kept column: if `x_k = λ x_c` then `v_k x_k`
/// contributes at most `b_k λ` to the coefficient of `x_c`.
///
/// The span of schedules is unchanged.
pub fn compact_generators(sol: &ScheduleSolution) -> ScheduleSolution {
    let cols: Vec<Vector> = sol.x_generators.columns().collect();
    let mut kept: Vec<usize> = Vec::new();
    let mut bound: Vec<Scalar> = Vec::new();
    for (k, col) in cols.iter().enumerate() {
        match kept.iter().position(|&c| collinear(&cols[c], col)) {
            Some(slot) => {
                let lambda = ratio(col, &cols[kept[slot]]);
                let folded = MaxPlus::mul(&sol.coeff_bound[k], &lambda);
                bound[slot] = MaxPlus::add(&bound[slot], &folded);
            }
            None => {
                kept.push(k);
                bound.push(sol.coeff_bound[k].clone());
            }
        }
    }
    let pick = |m: &Matrix| m.select_columns(&kept).expect("indices are in range");
    ScheduleSolution {
        delta: sol.delta.clone(),
        s0: pick(&sol.s0),
        x_generators: pick(&sol.x_generators),
        y_generators: pick(&sol.y_generators),
        coeff_bound: Vector::new(bound).expect("at least one column is kept"),
        d: sol.d.clone(),
        enumerated_count: sol.enumerated_count,
        pruned_count: sol.pruned_count,
    }
}

/// `λ` with `a = λ b` for collinear nonzero `a`, `b`.
fn ratio(a: &Vector, b: &Vector) -> Scalar {
    a.iter()
        .zip(b.iter())
        .find(|(x, y)| x.is_finite() && y.is_finite())
        .map(|(x, y)| MaxPlus::mul(x, &MaxPlus::conj(y)))
        .expect("collinear nonzero vectors share a finite component")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstraintFamily {
    /// `max_j(a_ij + x_j) = y_i`
    StartFinish,
    /// `max_j(b_ij + x_j) <= x_i`
    StartStart,
    /// `max_j(c_ij + y_j) <= x_i`
    FinishStart,
    /// `y_i <= f_i`
    LateFinish,
}

impl ConstraintFamily {
    pub const ALL: [ConstraintFamily; 4] = [
        ConstraintFamily::StartFinish,
        ConstraintFamily::StartStart,
        ConstraintFamily::FinishStart,
        ConstraintFamily::LateFinish,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstraintFamily::StartFinish => "start-finish",
            ConstraintFamily::StartStart => "start-start",
            ConstraintFamily::FinishStart => "finish-start",
            ConstraintFamily::LateFinish => "late-finish",
        }
    }
}

impl fmt::Display for ConstraintFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-row outcome of each constraint family for a concrete schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleReport {
    pub rows: Vec<(ConstraintFamily, Vec<bool>)>,
    /// Span seminorm of `y`.
    pub span: Scalar,
}

impl ScheduleReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|(_, r)| r.iter().all(|&ok| ok))
    }

    /// `(family, row)` of every violated constraint.
    pub fn violations(&self) -> Vec<(ConstraintFamily, usize)> {
        self.rows
            .iter()
            .flat_map(|(fam, r)| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &ok)| !ok)
                    .map(move |(i, _)| (*fam, i))
            })
            .collect()
    }
}

/// Evaluates all four constraint families row by row. Violations are reported,
/// not returned as errors; only malformed input is an error.
pub fn check_schedule(inst: &ScheduleInstance, x: &Vector, y: &Vector) -> Result<ScheduleReport> {
    let n = inst.n();
    if x.dim() != n || y.dim() != n {
        return Err(Error::shape("check schedule", (n, n), (x.dim(), y.dim())));
    }
    if !x.is_regular() {
        return Err(Error::NotRegularVector("x".into()));
    }
    let span = span_seminorm(y)?;
    let ax = inst.a.mul_vec(x)?;
    let bx = inst.b.mul_vec(x)?;
    let cy = inst.c.mul_vec(y)?;
    let rows = ConstraintFamily::ALL
        .iter()
        .map(|&fam| {
            let r = (0..n)
                .map(|i| match fam {
                    ConstraintFamily::StartFinish => ax[i] == y[i],
                    ConstraintFamily::StartStart => MaxPlus::le(&bx[i], &x[i]),
                    ConstraintFamily::FinishStart => MaxPlus::le(&cy[i], &x[i]),
                    ConstraintFamily::LateFinish => MaxPlus::le(&y[i], &inst.f[i]),
                })
                .collect();
            (fam, r)
        })
        .collect();
    Ok(ScheduleReport { rows, span })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Matrix {
        s.parse().unwrap()
    }

    fn v(s: &str) -> Vector {
        s.parse().unwrap()
    }

    fn example() -> ScheduleInstance {
        ScheduleInstance::new(
            m("3 -1 -inf; -2 2 0; -1 -inf 4"),
            m("-inf -inf -3; 2 -inf 0; 1 -2 -inf"),
            m("-inf -inf -inf; 0 -inf -3; -1 -inf -inf"),
            v("7 7 7"),
        )
        .unwrap()
    }

    fn single() -> ScheduleInstance {
        ScheduleInstance::new(m("0"), m("-inf"), m("-inf"), v("5")).unwrap()
    }

    #[test]
    fn example_reduction() {
        let inst = example();
        assert_eq!(inst.precedence_trace(), &Scalar::int(-1));
        assert_eq!(inst.precedence_star(), &m("0 -5 -3; 3 0 1; 2 -2 0"));
        assert_eq!(inst.d(), m("3 -1 0; 5 2 3; 6 2 4"));
        assert_eq!(inst.reduced_problem().q(), &v("-6 -2 -4"));
    }

    #[test]
    fn example_solution() {
        let sol = solve_schedule(&example()).unwrap();
        assert_eq!(sol.delta, Scalar::int(3));
        assert_eq!(sol.s0, m("0 -inf -2 -inf; -inf 0 -inf 2; -inf -inf 0 0"));
        assert_eq!(sol.x_generators, m("0 -5 -2 -3; 3 0 1 2; 2 -2 0 0"));
        assert_eq!(sol.y_generators, m("3 -1 1 1; 5 2 3 4; 6 2 4 4"));
        assert_eq!(sol.coeff_bound, v("1 5 3 3"));
        assert_eq!(example().a().mul(&sol.x_generators).unwrap(), sol.y_generators);

        let (x, y) = latest_schedule(&sol).unwrap();
        assert_eq!((x.clone(), y.clone()), (v("1 5 3"), v("4 7 7")));
        assert_eq!(instantiate(&sol, &v("1 5 3 3")).unwrap(), (x, y));
    }

    #[test]
    fn example_compaction() {
        let sol = compact_generators(&solve_schedule(&example()).unwrap());
        assert_eq!(sol.x_generators, m("0 -5; 3 0; 2 -2"));
        assert_eq!(sol.y_generators, m("3 -1; 5 2; 6 2"));
        assert_eq!(sol.coeff_bound, v("1 5"));
        assert_eq!(latest_schedule(&sol).unwrap(), (v("1 5 3"), v("4 7 7")));
        // The folded bound is the deadline bound of the kept columns.
        assert_eq!(
            solve_upper_bound(&sol.y_generators, example().f()).unwrap(),
            sol.coeff_bound
        );
    }

    #[test]
    fn shifted_coefficients_shift_the_schedule() {
        let sol = solve_schedule(&example()).unwrap();
        let (x, y) = instantiate(&sol, &sol.coeff_bound.scale(&Scalar::int(-1))).unwrap();
        assert_eq!((x, y.clone()), (v("0 4 2"), v("3 6 6")));
        assert_eq!(span_seminorm(&y).unwrap(), Scalar::int(3));
    }

    #[test]
    fn instantiate_rejects_bad_coefficients() {
        let sol = solve_schedule(&example()).unwrap();
        assert_eq!(
            instantiate(&sol, &v("1 6 3 3")).unwrap_err(),
            Error::CoefficientOutOfBound(1)
        );
        assert!(matches!(
            instantiate(&sol, &v("1 -inf 3 3")),
            Err(Error::NotRegularVector(_))
        ));
        assert!(instantiate(&sol, &v("1 5")).is_err());
    }

    #[test]
    fn single_activity() {
        let sol = solve_schedule(&single()).unwrap();
        assert_eq!(sol.delta, MaxPlus::one());
        assert_eq!(latest_schedule(&sol).unwrap(), (v("5"), v("5")));
    }

    #[test]
    fn instance_validation() {
        let err = ScheduleInstance::new(
            m("3 -1 -inf; -2 2 0; -1 -inf 4"),
            m("1 -inf -3; 2 -inf 0; 1 -2 -inf"),
            m("-inf -inf -inf; 0 -inf -3; -1 -inf -inf"),
            v("7 7 7"),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InfeasiblePrecedence { .. }));

        let z = Matrix::zeros(2, 2);
        let free = ScheduleInstance::new(m("1 2; 0 -inf"), z.clone(), z.clone(), v("3 3")).unwrap();
        assert_eq!(free.precedence_star(), &Matrix::identity(2));

        assert!(matches!(
            ScheduleInstance::new(m("1 -inf; 0 -inf"), z.clone(), z.clone(), v("3 3")),
            Err(Error::NotRegularMatrix(_))
        ));
        assert!(matches!(
            ScheduleInstance::new(m("1 2; 0 3"), z.clone(), z.clone(), v("3 -inf")),
            Err(Error::NotRegularVector(_))
        ));
        assert!(matches!(
            ScheduleInstance::new(m("1 2; 0 3"), Matrix::zeros(3, 3), z, v("3 3")),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn seminorm() {
        assert_eq!(span_seminorm(&v("4 7 7")).unwrap(), Scalar::int(3));
        assert_eq!(span_seminorm(&v("2 2 2")).unwrap(), MaxPlus::one());
        assert_eq!(span_seminorm(&v("0 5")).unwrap(), Scalar::int(5));
        assert!(span_seminorm(&v("0 -inf")).is_err());
    }

    #[test]
    fn schedule_checks() {
        let inst = example();
        let report = check_schedule(&inst, &v("1 5 3"), &v("4 7 7")).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.span, Scalar::int(3));

        let report = check_schedule(&inst, &v("1 5 3"), &v("3 7 7")).unwrap();
        assert_eq!(report.violations(), vec![(ConstraintFamily::StartFinish, 0)]);

        let z = Matrix::zeros(3, 3);
        let loose =
            ScheduleInstance::new(Matrix::identity(3), z.clone(), z, v("1000 1000 1000")).unwrap();
        let x = v("-3 8 1/2");
        assert!(check_schedule(&loose, &x, &x).unwrap().all_pass());
    }
}

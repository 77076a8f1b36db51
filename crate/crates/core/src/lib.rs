//! Exact max-plus linear algebra and span-seminorm minimisation.
//!
//! The core problem is: given `A`, `p` and `q`, find every regular `x` minimising
//! `q⁻x (Ax)⁻p`. The [`optimizer`] module returns the minimum together with a
//! finite generator matrix whose tropical span is the full solution set, and
//! [`schedule`] applies it to just-in-time project scheduling.
//!
//! ```
//! use tropspan::{complete_solution, Matrix, Scalar, SpanProblem, Vector};
//!
//! let a: Matrix = "2 0; 4 1".parse().unwrap();
//! let prob = SpanProblem::new(a, "5 2".parse().unwrap(), "1 2".parse().unwrap()).unwrap();
//! let sol = complete_solution(&prob).unwrap();
//! assert_eq!(sol.delta, Scalar::int(2));
//! assert_eq!(sol.generators.generators(), &"0 -1; -inf 0".parse::<Matrix>().unwrap());
//! ```

pub mod commands;
pub mod error;
pub mod inequality;
pub mod io;
pub mod linalg;
pub mod optimizer;
pub mod plot;
pub mod schedule;
pub mod semifield;

pub use error::{Error, Result};
pub use inequality::{
    interval_to_generators, membership, solve_subinvariant, solve_upper_bound, GeneratorSet,
    IntervalSet,
};
pub use linalg::{
    collinear, conj_transpose, delta, in_span, kleene_star, mat_add, mat_mul,
    reduce_to_independent, residual, trace_closure, Matrix, Vector,
};
pub use optimizer::{
    complete_solution, complete_solution_with, enumerate_all_selections, enumerate_selections,
    extended_interval, extended_solution, minimum_value, objective, selection_count,
    selection_generators, sparsify, verify_optimal, CompleteSolution, SelectionMatrix,
    SolveOptions, SpanProblem, DEFAULT_BUDGET,
};
pub use semifield::{MaxPlus, MaxTimes, MinPlus, MinTimes, Scalar, Semifield, SemifieldTag};
pub use schedule::{
    check_schedule, compact_generators, instantiate, latest_schedule, solve_schedule,
    solve_schedule_with, span_seminorm, ConstraintFamily, ScheduleInstance, ScheduleReport,
    ScheduleSolution,
};
pub use io::{parse_problem, parse_solution, Problem, ProblemDocument, ProblemKind, SolutionDocument};
